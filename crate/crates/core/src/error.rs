use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("undefined resultant: zero polynomial")]
    ZeroPolynomial,
    #[error("discriminant of a constant polynomial")]
    ConstantPolynomial,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("polynomial vanishes modulo {0}")]
    VanishesModP(u64),
    #[error("modulus polynomial is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("zero element")]
    ZeroElement,
    #[error("not certified prime: {0}")]
    NotCertifiedPrime(String),
    #[error("order not maximal at {0}")]
    NotMaximal(u64),
    #[error("sign undecidable at precision cap: {0}")]
    SignUndecidable(String),
    #[error("negative entry for phi_{0}")]
    NegativePhi(String),
    #[error("infeasible linear program")]
    Infeasible,
    #[error("unbounded linear program")]
    Unbounded,
    #[error("certificate invalid: {0}")]
    CertificateInvalid(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
