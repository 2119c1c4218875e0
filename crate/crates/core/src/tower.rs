//! Infinitude certificates for tamely ramified 2-towers and the resulting
//! limits on the genus per degree.

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::arith::Real;
use crate::error::{Error, Result};
use crate::field::order::OrderElement;
use crate::field::places::{decompose, Splitting};
use crate::field::primes::{resolve_prime, verify_prime_element, PrimeIdeal, PrimeRef};
use crate::field::quadratic::{find_witness, is_totally_positive, ExtensionKind, QuadraticExtension, Witness};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamificationData {
    pub t: usize,
    pub rho: usize,
    pub r1: usize,
    pub r2: usize,
    pub delta_ell: usize,
    pub ell: u64,
}

impl RamificationData {
    /// Read off t and rho from a verified extension, with ell = 2 (every
    /// field contains -1).
    pub fn from_extension(ext: &QuadraticExtension) -> Self {
        let (r1, r2) = ext.base.signature();
        RamificationData {
            t: ext.t(),
            rho: ext.rho,
            r1,
            r2,
            delta_ell: 1,
            ell: 2,
        }
    }
}

/// t - r1 - r2 + rho - delta_ell.
pub fn dgt_lower_bound(r: &RamificationData) -> i64 {
    r.t as i64 - r.r1 as i64 - r.r2 as i64 + r.rho as i64 - r.delta_ell as i64
}

/// 2 + 2 sqrt(r1 + r2 + theta).
pub fn gs_threshold(r1: usize, r2: usize, theta: usize) -> Real {
    &Real::from_int(2) + &(&Real::from_int(2) * &Real::from_int((r1 + r2 + theta) as i64).sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Infinite,
    Inconclusive,
}

/// A place of K in T.
#[derive(Clone, Debug, Serialize)]
pub struct TPlace {
    pub description: String,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub norm: BigInt,
}

#[derive(Clone, Debug, Serialize)]
pub struct GSCertificate {
    pub d_lower: i64,
    pub theta: usize,
    pub threshold: Real,
    pub verdict: Verdict,
    pub t_places: Vec<TPlace>,
}

/// Compare a lower bound for d(G_T) against the threshold for K with
/// signature (r1, r2).
pub fn gs_certificate(d_lower: i64, r1: usize, r2: usize, theta: usize, t_places: Vec<TPlace>) -> GSCertificate {
    let threshold = gs_threshold(r1, r2, theta);
    let verdict = if threshold.le(&Real::from_int(d_lower)) {
        Verdict::Infinite
    } else {
        Verdict::Inconclusive
    };
    GSCertificate {
        d_lower,
        theta,
        threshold,
        verdict,
        t_places,
    }
}

/// An element whose square root adds ramification at one new prime.
#[derive(Clone, Debug)]
pub struct AugmentationSpec {
    pub aug: OrderElement,
    pub new_prime: OrderElement,
    pub old_primes: Vec<PrimeRef>,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AugmentationResult {
    pub new_prime: PrimeIdeal,
    pub old_primes: Vec<PrimeIdeal>,
    pub witness: Witness,
    pub splitting: Splitting,
    pub t_places: Vec<TPlace>,
}

impl AugmentationResult {
    /// Sum of log N over T.
    pub fn t_norm_log_sum(&self) -> Real {
        self.t_places
            .iter()
            .fold(Real::from_int(0), |acc, p| &acc + &Real::from_bigint(&p.norm).ln())
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::CertificateInvalid(msg.into())
}

/// Check that k(sqrt aug)/k ramifies exactly at one prime not dividing eta
/// together with primes that already ramify in K, so K(sqrt aug)/K is
/// ramified exactly at the places of K above the new prime.
pub fn verify_tame_augmentation(ext: &QuadraticExtension, spec: &AugmentationSpec) -> Result<AugmentationResult> {
    let k = &ext.base;
    let new = verify_prime_element(k, &spec.new_prime)
        .map_err(|e| invalid(format!("new prime: {e}")))?;
    if ext.divides_eta(&new) {
        return Err(invalid(format!("{new} already ramifies in K")));
    }
    if new.p == 2 {
        return Err(invalid("new prime lies above 2, ramification is wild"));
    }
    let mut old = Vec::new();
    for o in &spec.old_primes {
        let q = resolve_prime(k, o).map_err(|e| invalid(format!("old prime: {e}")))?;
        if !ext.divides_eta(&q) {
            return Err(invalid(format!("{q} does not divide eta")));
        }
        if old.contains(&q) || q == new {
            return Err(invalid(format!("{q} listed twice")));
        }
        old.push(q);
    }
    let witness = match &spec.witness {
        Some(w) if w.holds(k, &spec.aug) => w.clone(),
        Some(_) => return Err(invalid("supplied witness does not satisfy aug = rho^2 + 4 sigma")),
        None => find_witness(k, &spec.aug).ok_or_else(|| invalid("aug is not a square mod 4"))?,
    };
    // (aug) is exactly the product of the listed primes
    let mut prod = new.norm();
    for q in old.iter() {
        if !q.contains(&spec.aug) {
            return Err(invalid(format!("aug not in {q}")));
        }
        prod *= q.norm();
    }
    if !new.contains(&spec.aug) {
        return Err(invalid(format!("aug not in {new}")));
    }
    if k.norm(&spec.aug)?.abs() != prod {
        return Err(invalid("norm of aug differs from the product of the listed primes"));
    }
    if ext.kind == ExtensionKind::TotallyReal && !is_totally_positive(k, &spec.aug)? {
        return Err(invalid("aug is not totally positive, the tower would not stay totally real"));
    }
    let splitting = decompose(ext, &new)?;
    let n = new.norm();
    let t_places = match splitting {
        Splitting::Split => vec![
            TPlace { description: format!("{new}, first place of K"), norm: n.clone() },
            TPlace { description: format!("{new}, second place of K"), norm: n },
        ],
        Splitting::Inert => vec![TPlace {
            description: format!("{new}, inert in K"),
            norm: &n * &n,
        }],
        Splitting::Ramified => return Err(invalid(format!("{new} ramifies in K"))),
    };
    Ok(AugmentationResult {
        new_prime: new,
        old_primes: old,
        witness,
        splitting,
        t_places,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GenusLimit {
    pub g: Real,
    pub n: usize,
    pub t_norm_log_sum: Real,
    pub ratio_bound: Real,
}

/// g/n + sum_T log N / (2n).
pub fn genus_ratio_limit(g: &Real, n: usize, t_norms: &[BigInt]) -> GenusLimit {
    let s = t_norms
        .iter()
        .fold(Real::from_int(0), |acc, q| &acc + &Real::from_bigint(q).ln());
    let nn = Real::from_int(n as i64);
    let ratio = &(g / &nn) + &(&s / &(&Real::from_int(2) * &nn));
    GenusLimit {
        g: g.clone(),
        n,
        t_norm_log_sum: s,
        ratio_bound: ratio,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Arch {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiInterval {
    pub alpha: Arch,
    pub lo: Real,
    pub hi: Real,
}

/// Archimedean phi intervals of the tower: totally complex towers give
/// phi_C in [1/(2 ratio), n/(2g)], totally real ones phi_R in
/// [1/ratio, n/g].
pub fn phi_intervals(limit: &GenusLimit, kind: ExtensionKind) -> Result<Vec<PhiInterval>> {
    let one = Real::from_int(1);
    let two = Real::from_int(2);
    let g_over_n = &limit.g / &Real::from_int(limit.n as i64);
    let zero = || PhiInterval {
        alpha: Arch::Real,
        lo: Real::from_int(0),
        hi: Real::from_int(0),
    };
    match kind {
        ExtensionKind::TotallyComplex => Ok(vec![
            zero(),
            PhiInterval {
                alpha: Arch::Complex,
                lo: &one / &(&two * &limit.ratio_bound),
                hi: &one / &(&two * &g_over_n),
            },
        ]),
        ExtensionKind::TotallyReal => Ok(vec![
            PhiInterval {
                alpha: Arch::Real,
                lo: &one / &limit.ratio_bound,
                hi: &one / &g_over_n,
            },
            PhiInterval {
                alpha: Arch::Complex,
                ..zero()
            },
        ]),
        ExtensionKind::Mixed => Err(Error::Invalid("mixed signature towers are not supported".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lower_bounds() {
        let r = RamificationData { t: 8, rho: 4, r1: 4, r2: 1, delta_ell: 1, ell: 2 };
        assert_eq!(dgt_lower_bound(&r), 6);
        let r = RamificationData { t: 0, rho: 0, r1: 1, r2: 0, delta_ell: 0, ell: 2 };
        assert_eq!(dgt_lower_bound(&r), -1);
    }

    #[test]
    fn thresholds() {
        assert!((gs_threshold(0, 6, 0).to_f64() - 6.898979485566356).abs() < 1e-12);
        assert_eq!(gs_threshold(0, 0, 0).to_f64(), 2.0);
        assert!((gs_threshold(12, 0, 0).to_f64() - 8.928203230275509).abs() < 1e-12);
        assert_eq!(gs_certificate(7, 0, 6, 0, vec![]).verdict, Verdict::Infinite);
        assert_eq!(gs_certificate(7, 0, 6, 1, vec![]).verdict, Verdict::Inconclusive);
        // exact square root: 2 + 2*2 = 6 is reached with equality
        assert_eq!(gs_certificate(6, 4, 0, 0, vec![]).verdict, Verdict::Infinite);
    }

    #[test]
    fn genus_limit() {
        let g = Real::parse_decimal("25.349").unwrap();
        let l = genus_ratio_limit(&g, 12, &[]);
        assert_eq!(l.ratio_bound.mid(), (&g / &Real::from_int(12)).mid());
        let l9 = genus_ratio_limit(&g, 12, &[BigInt::from(9)]);
        assert!(l.ratio_bound.lt(&l9.ratio_bound));
        let n = Real::from_int(12);
        let pt = phi_intervals(&genus_ratio_limit(&n, 12, &[]), ExtensionKind::TotallyComplex).unwrap();
        assert_eq!(pt[1].lo.mid(), pt[1].hi.mid());
    }
}
