//! Decomposition of small primes in K = k(sqrt eta) and the tally N_q(K).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::order::FieldOrder;
use super::primes::{primes_above, PrimeIdeal};
use super::quadratic::QuadraticExtension;
use crate::arith::modpoly::{inverse_mod, is_prime_u64, trace_gf2};
use crate::arith::{is_square_in_residue_field, Quadratic};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Splitting {
    Split,
    Inert,
    Ramified,
}

/// How a prime of k decomposes in K.
#[derive(Clone, Debug, Serialize)]
pub struct PlaceDecomposition {
    pub below: PrimeIdeal,
    pub splitting: Splitting,
}

impl PlaceDecomposition {
    /// (number of places of K, their e, their f) over Q.
    pub fn places(&self) -> (usize, usize, usize) {
        let (e, f) = (self.below.e, self.below.f);
        match self.splitting {
            Splitting::Split => (2, e, f),
            Splitting::Inert => (1, e, 2 * f),
            Splitting::Ramified => (1, 2 * e, f),
        }
    }

    /// Norm of each place of K above `below`.
    pub fn place_norm(&self) -> BigInt {
        let (_, _, f) = self.places();
        num_traits::pow(BigInt::from(self.below.p), f)
    }
}

/// Decide the splitting of a prime of k in K. Odd primes use the
/// quadratic character of eta in the residue field; primes above 2 use
/// the Artin-Schreier form of x^2 - beta x - gamma from the witness.
pub fn decompose(ext: &QuadraticExtension, q: &PrimeIdeal) -> Result<Splitting> {
    if ext.divides_eta(q) || q.contains(&ext.eta) {
        return Ok(Splitting::Ramified);
    }
    if q.p != 2 {
        return Ok(match is_square_in_residue_field(&q.g, &q.residue(&ext.eta))? {
            Quadratic::Square => Splitting::Split,
            Quadratic::Nonsquare => Splitting::Inert,
            Quadratic::Zero => Splitting::Ramified,
        });
    }
    let w = ext
        .witness()
        .ok_or_else(|| Error::Invalid("splitting above 2 needs eta to be a square mod 4".into()))?;
    // eta a unit at q forces beta to be a unit there
    let binv = inverse_mod(&q.residue(&w.beta), &q.g)
        .ok_or_else(|| Error::Invalid("witness beta vanishes above 2".into()))?;
    let c = q.residue(&w.gamma).mul_mod(&binv.mul_mod(&binv, &q.g), &q.g);
    Ok(if trace_gf2(&c, &q.g) == 0 {
        Splitting::Split
    } else {
        Splitting::Inert
    })
}

pub fn decompose_prime(ext: &QuadraticExtension, p: u64) -> Result<Vec<PlaceDecomposition>> {
    primes_above(&ext.base, p)?
        .into_iter()
        .map(|below| {
            let splitting = decompose(ext, &below)?;
            Ok(PlaceDecomposition { below, splitting })
        })
        .collect()
}

/// N_q(K) for prime powers q up to a bound, with the archimedean counts.
#[derive(Clone, Debug, Serialize)]
pub struct PlaceTally {
    pub bound: u64,
    pub counts: BTreeMap<u64, usize>,
    pub n_real: usize,
    pub n_complex: usize,
    /// Full decomposition data for every rational prime up to the bound.
    pub primes: BTreeMap<u64, Vec<PlaceDecomposition>>,
}

impl PlaceTally {
    pub fn count(&self, q: u64) -> usize {
        self.counts.get(&q).copied().unwrap_or(0)
    }

    /// Sum of e*f over the places of K above p; the fundamental identity
    /// makes this [K:Q].
    pub fn degree_sum(&self, p: u64) -> Option<usize> {
        self.primes.get(&p).map(|ds| {
            ds.iter()
                .map(|d| {
                    let (c, e, f) = d.places();
                    c * e * f
                })
                .sum()
        })
    }
}

pub fn place_tally(ext: &QuadraticExtension, bound: u64) -> Result<PlaceTally> {
    let mut counts = BTreeMap::new();
    let mut primes = BTreeMap::new();
    for p in (2..=bound).filter(|&p| is_prime_u64(p)) {
        let ds = decompose_prime(ext, p)?;
        for d in &ds {
            let (c, _, _) = d.places();
            if let Some(q) = d.place_norm().to_u64().filter(|&q| q <= bound) {
                *counts.entry(q).or_insert(0) += c;
            }
        }
        primes.insert(p, ds);
    }
    Ok(PlaceTally {
        bound,
        counts,
        n_real: ext.signature.0,
        n_complex: ext.signature.1,
        primes,
    })
}

/// Does any factor of f mod p have a root, by brute force over F_p.
pub fn has_root_mod_p(k: &FieldOrder, p: u64) -> bool {
    let f = crate::arith::ModPoly::from_int_poly(k.poly(), p);
    (0..p).any(|x| f.eval(x) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::IntPoly;

    fn gauss() -> QuadraticExtension {
        // Q(i) over Q
        let q = FieldOrder::new(IntPoly::from_i64(&[0, 1])).unwrap();
        let m1 = q.element_i64(&[-1]).unwrap();
        QuadraticExtension::new(q, m1).unwrap()
    }

    #[test]
    fn gaussian_splitting() {
        let ext = gauss();
        // no witness for -1 mod 4, so 2 cannot be decided this way
        assert!(decompose_prime(&ext, 2).is_err());
        assert_eq!(decompose_prime(&ext, 5).unwrap()[0].splitting, Splitting::Split);
        assert_eq!(decompose_prime(&ext, 7).unwrap()[0].splitting, Splitting::Inert);
    }

    #[test]
    fn golden_ratio_field_over_q() {
        // Q(sqrt 5): 2 inert, 5 ramified, 11 split, 3 inert
        let q = FieldOrder::new(IntPoly::from_i64(&[0, 1])).unwrap();
        let five = q.element_i64(&[5]).unwrap();
        let ext = QuadraticExtension::new(q, five).unwrap();
        let t = place_tally(&ext, 30).unwrap();
        assert_eq!(t.count(4), 1);
        assert_eq!(t.count(5), 1);
        assert_eq!(t.count(11), 2);
        assert_eq!(t.count(9), 1);
        assert_eq!(t.count(2), 0);
        assert_eq!(t.count(19), 2);
        for p in [2, 3, 5, 7, 11, 13] {
            assert_eq!(t.degree_sum(p), Some(2));
        }
    }

    #[test]
    fn small_bound_has_no_finite_places() {
        let q = FieldOrder::new(IntPoly::from_i64(&[0, 1])).unwrap();
        let five = q.element_i64(&[5]).unwrap();
        let ext = QuadraticExtension::new(q, five).unwrap();
        let t = place_tally(&ext, 1).unwrap();
        assert!(t.counts.is_empty());
        assert_eq!((t.n_real, t.n_complex), (2, 0));
    }
}
