//! Quadratic extensions K = k(sqrt(eta)) of a monogenic base field.

use num_bigint::BigInt;
use num_integer::{Integer};
use num_traits::Signed;
use serde::Serialize;

use super::order::{FieldOrder, OrderElement};
use super::primes::{squarefree_prime_divisors, PrimeIdeal};
use crate::arith::{isolate_real_roots, sign_at_root, Real};
use crate::error::{Error, Result};

/// Interval width cap for sign certification at real embeddings.
pub const SIGN_CAP_BITS: u32 = 256;

/// A pair (beta, gamma) with x = beta^2 + 4 gamma.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub beta: OrderElement,
    pub gamma: OrderElement,
}

impl Witness {
    pub fn holds(&self, k: &FieldOrder, x: &OrderElement) -> bool {
        let b2 = k.mul(&self.beta, &self.beta);
        let four = num_bigint::BigInt::from(4);
        let g4 = OrderElement {
            coords: self.gamma.coords.iter().map(|c| c * &four).collect(),
        };
        &k.add(&b2, &g4) == x
    }
}

/// Search the 2^n residues beta mod 2 for x = beta^2 mod 4.
pub fn find_witness(k: &FieldOrder, x: &OrderElement) -> Option<Witness> {
    let n = k.degree();
    let four = BigInt::from(4);
    for mask in 0u64..(1u64 << n) {
        let beta = OrderElement {
            coords: (0..n).map(|i| BigInt::from((mask >> i) & 1)).collect(),
        };
        let d = k.sub(x, &k.mul(&beta, &beta));
        if d.coords.iter().all(|c| c.is_multiple_of(&four)) {
            let gamma = OrderElement {
                coords: d.coords.iter().map(|c| c / &four).collect(),
            };
            return Some(Witness { beta, gamma });
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelativeDisc {
    /// Absolute norm of the relative discriminant ideal.
    #[serde(serialize_with = "crate::ser::bigint")]
    pub norm: BigInt,
    pub witness: Option<Witness>,
    /// Prime ideals of k dividing the radicand.
    pub divisors: Vec<PrimeIdeal>,
}

/// Relative discriminant of k(sqrt x)/k for squarefree `(x)`. When x is a
/// square mod 4 the discriminant is (x); otherwise (4x) is reported.
pub fn relative_quadratic_discriminant(k: &FieldOrder, x: &OrderElement) -> Result<RelativeDisc> {
    let divisors = squarefree_prime_divisors(k, x)?;
    let nx = k.norm(x)?.abs();
    let witness = find_witness(k, x);
    let norm = match witness {
        Some(_) => nx,
        None => nx * num_traits::pow(BigInt::from(4), k.degree()),
    };
    Ok(RelativeDisc {
        norm,
        witness,
        divisors,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtensionKind {
    TotallyComplex,
    TotallyReal,
    Mixed,
}

/// Signs of `x` at the real embeddings of k, left to right.
pub fn real_signs(k: &FieldOrder, x: &OrderElement) -> Result<Vec<i8>> {
    let roots = isolate_real_roots(k.poly())?;
    roots
        .iter()
        .map(|iv| match sign_at_root(k.poly(), iv, &x.to_poly(), SIGN_CAP_BITS)? {
            0 => Err(Error::SignUndecidable(format!("{x} vanishes at a real place"))),
            s => Ok(s),
        })
        .collect()
}

pub fn is_totally_positive(k: &FieldOrder, x: &OrderElement) -> Result<bool> {
    Ok(real_signs(k, x)?.iter().all(|&s| s > 0))
}

/// K = k(sqrt eta) with its verified invariants.
#[derive(Clone, Debug)]
pub struct QuadraticExtension {
    pub base: FieldOrder,
    pub eta: OrderElement,
    pub rel: RelativeDisc,
    pub abs_disc: BigInt,
    pub genus: Real,
    pub signs: Vec<i8>,
    pub kind: ExtensionKind,
    /// Signature (r1, r2) of K.
    pub signature: (usize, usize),
    /// Real places of k ramified in K.
    pub rho: usize,
}

impl QuadraticExtension {
    pub fn new(base: FieldOrder, eta: OrderElement) -> Result<Self> {
        if eta.is_zero() {
            return Err(Error::ZeroElement);
        }
        let rel = relative_quadratic_discriminant(&base, &eta)?;
        let (abs_disc, genus) = absolute_disc_and_genus(&base, &rel.norm);
        let signs = real_signs(&base, &eta)?;
        let (r1, r2) = base.signature();
        let pos = signs.iter().filter(|&&s| s > 0).count();
        let neg = signs.len() - pos;
        let kind = if pos == 0 {
            ExtensionKind::TotallyComplex
        } else if neg == 0 && r2 == 0 {
            ExtensionKind::TotallyReal
        } else {
            ExtensionKind::Mixed
        };
        debug_assert_eq!(signs.len(), r1);
        Ok(QuadraticExtension {
            base,
            eta,
            rel,
            abs_disc,
            genus,
            signs,
            kind,
            signature: (2 * pos, neg + 2 * r2),
            rho: neg,
        })
    }

    pub fn degree(&self) -> usize {
        2 * self.base.degree()
    }

    pub fn witness(&self) -> Option<&Witness> {
        self.rel.witness.as_ref()
    }

    /// Number of primes of k ramified in K.
    pub fn t(&self) -> usize {
        self.rel.divisors.len()
    }

    pub fn divides_eta(&self, q: &PrimeIdeal) -> bool {
        self.rel.divisors.contains(q)
    }
}

/// |d_K| = N(D_{K/k}) d_k^2 and g_K = log sqrt |d_K|.
pub fn absolute_disc_and_genus(k: &FieldOrder, rel_norm: &BigInt) -> (BigInt, Real) {
    let d = (rel_norm * k.disc() * k.disc()).abs();
    let g = Real::from_bigint(&d).ln() * Real::from_ratio(1, 2);
    (d, g)
}

/// N(a) N(b) not a rational square proves that k(sqrt a) and k(sqrt b)
/// differ. `Some(false)` when they differ, `None` when the norm test
/// cannot decide.
pub fn same_extension_by_norm(k: &FieldOrder, a: &OrderElement, b: &OrderElement) -> Result<Option<bool>> {
    let m = k.norm(a)? * k.norm(b)?;
    if m.is_negative() {
        return Ok(Some(false));
    }
    let r = m.sqrt();
    if &r * &r == m {
        Ok(None)
    } else {
        Ok(Some(false))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::IntPoly;

    #[test]
    fn trivial_radicand() {
        let k = FieldOrder::new(IntPoly::from_i64(&[-2, 0, 1])).unwrap();
        let w = find_witness(&k, &k.one()).unwrap();
        assert!(w.holds(&k, &k.one()));
        assert!(w.gamma.is_zero());
        let ext = QuadraticExtension::new(k, OrderElement { coords: vec![1.into(), 0.into()] }).unwrap();
        assert_eq!(ext.kind, ExtensionKind::TotallyReal);
        assert_eq!(ext.signature, (4, 0));
    }

    #[test]
    fn quadratic_over_rationals() {
        // degree-one base: Q(sqrt 5) has discriminant 5, Q(sqrt 3) has 12
        let q = FieldOrder::new(IntPoly::from_i64(&[0, 1])).unwrap();
        let five = q.element_i64(&[5]).unwrap();
        let rel = relative_quadratic_discriminant(&q, &five).unwrap();
        assert_eq!(rel.norm, BigInt::from(5));
        let (d, _) = absolute_disc_and_genus(&q, &rel.norm);
        assert_eq!(d, BigInt::from(5));
        let three = q.element_i64(&[3]).unwrap();
        let rel = relative_quadratic_discriminant(&q, &three).unwrap();
        assert_eq!(rel.norm, BigInt::from(12));
        let m3 = q.element_i64(&[-3]).unwrap();
        let ext = QuadraticExtension::new(q, m3).unwrap();
        assert_eq!(ext.kind, ExtensionKind::TotallyComplex);
        assert_eq!(ext.signature, (0, 1));
        assert_eq!(ext.rho, 1);
    }

    #[test]
    fn norm_test() {
        let q = FieldOrder::new(IntPoly::from_i64(&[0, 1])).unwrap();
        let a = q.element_i64(&[5]).unwrap();
        let b = q.element_i64(&[20]).unwrap();
        let c = q.element_i64(&[7]).unwrap();
        assert_eq!(same_extension_by_norm(&q, &a, &b).unwrap(), None);
        assert_eq!(same_extension_by_norm(&q, &a, &c).unwrap(), Some(false));
    }
}
