//! Residue of the Dedekind zeta function at s = 1 and its upper bound.

use num_bigint::BigInt;
use serde::Serialize;

use crate::arith::Real;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct KappaInvariants {
    pub r1: u32,
    pub r2: u32,
    pub h: u64,
    pub regulator: Real,
    pub w: u64,
    #[serde(serialize_with = "crate::ser::bigint")]
    pub disc: BigInt,
}

/// (e log D / (2(n-1)))^(n-1).
pub fn kappa_upper_bound(n: u32, d: &BigInt) -> Result<Real> {
    if n < 2 {
        return Err(Error::Invalid(format!("degree {n} below 2")));
    }
    if d < &BigInt::from(3) {
        return Err(Error::Invalid(format!("discriminant {d} below 3")));
    }
    let base = &(&Real::e() * &Real::from_bigint(d).ln()) / &Real::from_int(2 * (n as i64 - 1));
    Ok(base.powi(n - 1))
}

/// 2^r1 (2 pi)^r2 h R / (w sqrt D).
pub fn residue_from_invariants(k: &KappaInvariants) -> Result<Real> {
    if k.h == 0 || k.w == 0 || !k.regulator.is_positive() || k.disc <= BigInt::from(0) {
        return Err(Error::Invalid("invariants must be positive".into()));
    }
    let two = Real::from_int(2);
    let num = &(&(&two.powi(k.r1) * &(&two * &Real::pi()).powi(k.r2)) * &Real::from_int(k.h as i64)) * &k.regulator;
    let den = &Real::from_int(k.w as i64) * &Real::from_bigint(&k.disc).sqrt();
    Ok(&num / &den)
}
