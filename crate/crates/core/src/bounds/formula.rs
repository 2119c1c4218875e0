//! The explicit Brauer-Siegel formula and the basic inequality.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Signed;
use serde::{Serialize, Serializer};

use crate::arith::Real;
use crate::error::{Error, Result};
use crate::tower::Arch;

/// Index into A = {R, C; 2, 3, 4, 5, 7, ...}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Alpha {
    Arch(Arch),
    Q(u64),
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Alpha::Arch(Arch::Real) => write!(f, "R"),
            Alpha::Arch(Arch::Complex) => write!(f, "C"),
            Alpha::Q(q) => write!(f, "{q}"),
        }
    }
}

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Sparse phi vector. Absent entries are zero.
#[derive(Clone, Debug, Default, Serialize)]
pub struct PhiVector {
    pub entries: BTreeMap<Alpha, Real>,
}

impl PhiVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, a: Alpha, v: Real) -> &mut Self {
        self.entries.insert(a, v);
        self
    }

    pub fn with(mut self, a: Alpha, v: Real) -> Self {
        self.set(a, v);
        self
    }

    pub fn get(&self, a: Alpha) -> Real {
        self.entries.get(&a).cloned().unwrap_or_else(|| Real::from_int(0))
    }

    fn check(&self) -> Result<()> {
        for (a, v) in &self.entries {
            if v.lo().is_negative() {
                return Err(Error::NegativePhi(a.to_string()));
            }
        }
        Ok(())
    }
}

/// log(q/(q-1)).
pub fn log_q_ratio(q: u64) -> Real {
    Real::from_ratio(q as i64, q as i64 - 1).ln()
}

/// 1 + sum phi_q log(q/(q-1)) - phi_R log 2 - phi_C log 2pi.
pub fn bs_ratio(phi: &PhiVector) -> Result<Real> {
    phi.check()?;
    let mut acc = Real::from_int(1);
    for (a, v) in &phi.entries {
        let term = match a {
            Alpha::Q(q) => v * &log_q_ratio(*q),
            Alpha::Arch(Arch::Real) => -(v * &Real::from_int(2).ln()),
            Alpha::Arch(Arch::Complex) => -(v * &(&Real::from_int(2) * &Real::pi()).ln()),
        };
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Form of the finite-place coefficient in a basic inequality:
/// log q / (q^s - 1) with s = 1/2 (GRH) or s = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FiniteExponent {
    Half,
    One,
}

/// Coefficients of a basic inequality sum a_q phi_q + c_R phi_R + c_C phi_C <= 1.
#[derive(Clone, Debug, Serialize)]
pub struct InequalityCoefficients {
    pub name: String,
    pub finite: FiniteExponent,
    pub arch_real: Real,
    pub arch_complex: Real,
}

impl InequalityCoefficients {
    /// The GRH instance: c_R = log 2 sqrt(2 pi) + pi/4 + gamma/2 and
    /// c_C = log 8 pi + gamma.
    pub fn grh() -> Self {
        let pi = Real::pi();
        let gamma = Real::euler_gamma();
        let two = Real::from_int(2);
        let log2 = two.ln();
        let log2pi = (&two * &pi).ln();
        let arch_real = &(&(&log2 + &(&log2pi / &two)) + &(&pi / &Real::from_int(4))) + &(&gamma / &two);
        let arch_complex = &(&Real::from_int(8) * &pi).ln() + &gamma;
        InequalityCoefficients {
            name: "grh".into(),
            finite: FiniteExponent::Half,
            arch_real,
            arch_complex,
        }
    }

    pub fn finite_coeff(&self, q: u64) -> Real {
        let qr = Real::from_int(q as i64);
        let denom = match self.finite {
            FiniteExponent::Half => &qr.sqrt() - &Real::from_int(1),
            FiniteExponent::One => &qr - &Real::from_int(1),
        };
        &qr.ln() / &denom
    }

    pub fn arch_coeff(&self, a: Arch) -> &Real {
        match a {
            Arch::Real => &self.arch_real,
            Arch::Complex => &self.arch_complex,
        }
    }
}

pub fn basic_inequality_lhs(phi: &PhiVector, c: &InequalityCoefficients) -> Result<Real> {
    phi.check()?;
    let mut acc = Real::from_int(0);
    for (a, v) in &phi.entries {
        let k = match a {
            Alpha::Q(q) => c.finite_coeff(*q),
            Alpha::Arch(x) => c.arch_coeff(*x).clone(),
        };
        acc = &acc + &(v * &k);
    }
    Ok(acc)
}
