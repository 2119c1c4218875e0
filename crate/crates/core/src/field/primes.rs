//! Prime ideals of a monogenic order via Kummer-Dedekind, with Dedekind's
//! maximality criterion, and certification of prime elements.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::order::{FieldOrder, OrderElement};
use crate::arith::modpoly::factor_integer;
use crate::arith::{factor_mod_p, IntPoly, ModFactorization, ModPoly};
use crate::error::{Error, Result};

/// The prime ideal (p, g(xi)) with ramification index `e` and residue
/// degree `f`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    pub p: u64,
    pub g: ModPoly,
    pub e: usize,
    pub f: usize,
}

impl PrimeIdeal {
    pub fn norm(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.p), self.f)
    }

    /// Image of `x` in the residue field F_p[x]/(g).
    pub fn residue(&self, x: &OrderElement) -> ModPoly {
        ModPoly::from_bigints(&x.coords, self.p).rem(&self.g)
    }

    pub fn contains(&self, x: &OrderElement) -> bool {
        self.residue(x).is_zero()
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.p, self.g.to_int_poly().to_string().replace('x', "xi"))
    }
}

impl Serialize for PrimeIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PrimeIdeal", 4)?;
        st.serialize_field("ideal", &self.to_string())?;
        st.serialize_field("norm", &self.norm().to_string())?;
        st.serialize_field("e", &self.e)?;
        st.serialize_field("f", &self.f)?;
        st.end()
    }
}

/// Dedekind's criterion: with f = prod g_i^e_i + p F, the order is
/// p-maximal iff no repeated factor g_i divides F mod p.
pub fn dedekind_criterion(k: &FieldOrder, p: u64) -> Result<ModFactorization> {
    let fac = factor_mod_p(k.poly(), p)?;
    if fac.is_squarefree() {
        return Ok(fac);
    }
    let mut lift = IntPoly::one();
    for (g, m) in &fac.factors {
        for _ in 0..*m {
            lift = &lift * &g.to_int_poly();
        }
    }
    let diff = k.poly() - &lift;
    let pb = BigInt::from(p);
    let big_f = IntPoly::new(diff.coeffs().iter().map(|c| c / &pb).collect());
    debug_assert!(diff.coeffs().iter().all(|c| (c % &pb).is_zero()));
    let fbar = ModPoly::from_int_poly(&big_f, p);
    for (g, m) in &fac.factors {
        if *m > 1 && fbar.rem(g).is_zero() {
            return Err(Error::NotMaximal(p));
        }
    }
    Ok(fac)
}

/// Check maximality of the order at every prime whose square divides the
/// polynomial discriminant. Returns the primes checked.
pub fn verify_maximal(k: &FieldOrder) -> Result<Vec<u64>> {
    let mut checked = Vec::new();
    for (q, m) in factor_integer(k.disc())? {
        let q = q
            .to_u64()
            .ok_or_else(|| Error::Invalid(format!("prime {q} too large")))?;
        if m >= 2 {
            dedekind_criterion(k, q)?;
        }
        checked.push(q);
    }
    Ok(checked)
}

/// All prime ideals above `p`, after checking p-maximality.
pub fn primes_above(k: &FieldOrder, p: u64) -> Result<Vec<PrimeIdeal>> {
    let fac = dedekind_criterion(k, p)?;
    Ok(fac
        .factors
        .into_iter()
        .map(|(g, e)| PrimeIdeal {
            p,
            f: g.degree().unwrap_or(0),
            g,
            e,
        })
        .collect())
}

fn prime_power(n: &BigInt) -> Option<(u64, usize)> {
    let fac = factor_integer(n).ok()?;
    match fac.as_slice() {
        [(p, m)] => Some((p.to_u64()?, *m as usize)),
        _ => None,
    }
}

/// Certify that `(x)` is a prime ideal: |N(x)| = p^m and `x` lies in a
/// prime above p of residue degree m.
pub fn verify_prime_element(k: &FieldOrder, x: &OrderElement) -> Result<PrimeIdeal> {
    let n = k.norm(x)?.abs();
    if n.is_one() {
        return Err(Error::NotCertifiedPrime(format!("{x} is a unit")));
    }
    let (p, m) = prime_power(&n)
        .ok_or_else(|| Error::NotCertifiedPrime(format!("norm {n} is not a prime power")))?;
    primes_above(k, p)?
        .into_iter()
        .find(|q| q.f == m && q.contains(x))
        .ok_or_else(|| Error::NotCertifiedPrime(format!("no prime of norm {n} contains {x}")))
}

/// A prime of k named by a generator or by its Kummer-Dedekind pair (p, g).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeRef {
    Element(OrderElement),
    Ideal(u64, ModPoly),
}

pub fn resolve_prime(k: &FieldOrder, r: &PrimeRef) -> Result<PrimeIdeal> {
    match r {
        PrimeRef::Element(x) => verify_prime_element(k, x),
        PrimeRef::Ideal(p, g) => {
            let g = g.monic();
            primes_above(k, *p)?
                .into_iter()
                .find(|q| q.g == g)
                .ok_or_else(|| Error::NotCertifiedPrime(format!("({p}, {}) is not a prime of k", g.to_int_poly())))
        }
    }
}

/// Prime divisors of `(x)`, each with valuation one. Fails with
/// `NotSquarefree` when the norm count shows a repeated prime.
pub fn squarefree_prime_divisors(k: &FieldOrder, x: &OrderElement) -> Result<Vec<PrimeIdeal>> {
    let n = k.norm(x)?;
    let mut out = Vec::new();
    for (p, v) in factor_integer(&n)? {
        let p = p
            .to_u64()
            .ok_or_else(|| Error::Invalid(format!("prime {p} too large")))?;
        let hits: Vec<PrimeIdeal> = primes_above(k, p)?
            .into_iter()
            .filter(|q| q.contains(x))
            .collect();
        // sum of f * v_P over P | p equals v_p(N), and each v_P >= 1
        let fsum: usize = hits.iter().map(|q| q.f).sum();
        if fsum != v as usize {
            return Err(Error::NotSquarefree);
        }
        out.extend(hits);
    }
    Ok(out)
}

/// Sum of e * f over the primes above p; equals the degree.
pub fn local_degree_sum(primes: &[PrimeIdeal]) -> usize {
    primes.iter().map(|q| q.e * q.f).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k1() -> FieldOrder {
        FieldOrder::new(IntPoly::from_i64(&[1, -1, -7, -4, 1, 0, 1])).unwrap()
    }

    #[test]
    fn maximal_at_disc_primes() {
        let k = k1();
        assert_eq!(verify_maximal(&k).unwrap(), vec![23, 35509]);
        for p in [23, 35509] {
            dedekind_criterion(&k, p).unwrap();
        }
    }

    #[test]
    fn non_maximal_detected() {
        // Z[sqrt 5] has index 2 in the maximal order
        let k = FieldOrder::new(IntPoly::from_i64(&[-5, 0, 1])).unwrap();
        assert_eq!(dedekind_criterion(&k, 2), Err(Error::NotMaximal(2)));
        // Z[i] is maximal at 2
        let g = FieldOrder::new(IntPoly::from_i64(&[1, 0, 1])).unwrap();
        assert!(dedekind_criterion(&g, 2).is_ok());
    }

    #[test]
    fn degree_sums() {
        let k = k1();
        for p in [2, 3, 5, 7, 23, 97] {
            assert_eq!(local_degree_sum(&primes_above(&k, p).unwrap()), 6);
        }
    }

    #[test]
    fn prime_elements() {
        let k = k1();
        let pi29 = k.element_high_first(&[11, -8, 17, -56, -35, 16].map(BigInt::from)).unwrap();
        let q = verify_prime_element(&k, &pi29).unwrap();
        assert_eq!((q.p, q.f), (29, 1));
        let unit = k.one();
        assert!(matches!(verify_prime_element(&k, &unit), Err(Error::NotCertifiedPrime(_))));
        // f is irreducible mod 2, so 2 stays prime; 3 does not
        let two = k.element_i64(&[2, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(verify_prime_element(&k, &two).unwrap().f, 6);
        let three = k.element_i64(&[3, 0, 0, 0, 0, 0]).unwrap();
        assert!(matches!(verify_prime_element(&k, &three), Err(Error::NotCertifiedPrime(_))));
    }

    #[test]
    fn squarefree_divisors() {
        let k = k1();
        let pi29 = k.element_high_first(&[11, -8, 17, -56, -35, 16].map(BigInt::from)).unwrap();
        assert_eq!(squarefree_prime_divisors(&k, &pi29).unwrap().len(), 1);
        let sq = k.mul(&pi29, &pi29);
        assert_eq!(squarefree_prime_divisors(&k, &sq), Err(Error::NotSquarefree));
        assert!(squarefree_prime_divisors(&k, &k.one()).unwrap().is_empty());
    }
}
