//! Polynomials over a prime field F_p and their factorization.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::intpoly::IntPoly;
use crate::error::{Error, Result};

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    powmod_u64(a, p - 2, p)
}

/// Deterministic Miller-Rabin, exact for all 64-bit inputs.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Polynomial over F_p, coefficients lowest degree first, reduced into
/// `0..p`, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        ModPoly { p, coeffs }
    }

    pub fn from_int_poly(a: &IntPoly, p: u64) -> Self {
        Self::from_bigints(a.coeffs(), p)
    }

    pub fn from_bigints(c: &[BigInt], p: u64) -> Self {
        let pb = BigInt::from(p);
        Self::new(
            p,
            c.iter()
                .map(|x| x.mod_floor(&pb).to_u64().unwrap_or(0))
                .collect(),
        )
    }

    pub fn zero(p: u64) -> Self {
        ModPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Lift to integer coefficients in `0..p`.
    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.leading(), self.p);
        self.scale(inv)
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(self.p, self.coeffs.iter().map(|&c| mulmod(c, k, self.p)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            self.p,
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).copied().unwrap_or(0);
                    let b = o.coeffs.get(i).copied().unwrap_or(0);
                    (a + b) % self.p
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(
            self.p,
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).copied().unwrap_or(0);
                    let b = o.coeffs.get(i).copied().unwrap_or(0);
                    (a + self.p - b) % self.p
                })
                .collect(),
        )
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.p);
        }
        let mut c = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, c)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        if self.deg() < d.deg() || self.is_zero() {
            return (Self::zero(p), self.clone());
        }
        let inv = inv_mod(d.leading(), p);
        let dd = d.deg();
        let mut r = self.coeffs.clone();
        let mut q = vec![0u64; self.deg() - dd + 1];
        while r.len() > dd {
            let top = *r.last().unwrap_or(&0);
            let k = r.len() - 1 - dd;
            if top != 0 {
                let c = mulmod(top, inv, p);
                q[k] = c;
                for (i, &dc) in d.coeffs.iter().enumerate() {
                    r[k + i] = (r[k + i] + p - mulmod(c, dc, p)) % p;
                }
            }
            r.pop();
        }
        (Self::new(p, q), Self::new(p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Monic gcd; the gcd of two zero polynomials is zero.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulmod(c, i as u64 % self.p, self.p))
                .collect(),
        )
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mulmod(acc, x, self.p) + c) % self.p)
    }

    pub fn mul_mod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Self) -> Self {
        let mut r = Self::one(self.p).rem(m);
        let mut b = self.rem(m);
        for i in 0..e.bits() {
            if e.bit(i) {
                r = r.mul_mod(&b, m);
            }
            b = b.mul_mod(&b, m);
        }
        r
    }

    /// For a polynomial whose derivative vanishes, the p-th root
    /// `sum c_{ip} x^i` (coefficients are fixed by Frobenius on F_p).
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        Self::new(self.p, self.coeffs.iter().step_by(p).copied().collect())
    }

    /// Squarefree decomposition of a monic polynomial: pairs `(g_i, i)` with
    /// `self = prod g_i^i`, each `g_i` squarefree, pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(ModPoly, usize)> {
        let mut out = Vec::new();
        self.sqf_rec(1, &mut out);
        out.sort_by_key(|(_, m)| *m);
        out
    }

    fn sqf_rec(&self, mult: usize, out: &mut Vec<(ModPoly, usize)>) {
        let f = self.monic();
        if f.deg() == 0 {
            return;
        }
        let d = f.derivative();
        if d.is_zero() {
            f.pth_root().sqf_rec(mult * self.p as usize, out);
            return;
        }
        let mut c = f.gcd(&d);
        let mut w = f.div_rem(&c).0;
        let mut i = 1;
        while w.deg() > 0 {
            let y = w.gcd(&c);
            let z = w.div_rem(&y).0;
            if z.deg() > 0 {
                out.push((z, i * mult));
            }
            i += 1;
            w = y;
            c = c.div_rem(&w).0;
        }
        if c.deg() > 0 {
            c.pth_root().sqf_rec(mult * self.p as usize, out);
        }
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(d, h_d)` where `h_d` is the product of all irreducible
    /// factors of degree `d`.
    pub fn distinct_degree(&self) -> Vec<(usize, ModPoly)> {
        let p = self.p;
        let mut f = self.monic();
        let mut out = Vec::new();
        let x = Self::x(p);
        let pb = BigUint::from(p);
        let mut h = x.rem(&f);
        let mut d = 0;
        while f.deg() >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(&pb, &f);
            let g = f.gcd(&h.sub(&x));
            if g.deg() > 0 {
                f = f.div_rem(&g).0;
                h = h.rem(&f);
                out.push((d, g));
            }
        }
        if f.deg() > 0 {
            out.push((f.deg(), f));
        }
        out
    }

    /// Split a product of distinct irreducibles, all of degree `d`, into its
    /// factors (Cantor-Zassenhaus with a deterministic sequence of trial
    /// polynomials).
    pub fn equal_degree(&self, d: usize) -> Vec<ModPoly> {
        let f = self.monic();
        if f.deg() == d {
            return vec![f];
        }
        let p = self.p;
        let n = f.deg();
        let q = BigUint::from(p).pow(d as u32);
        let mut seed = 0u64;
        loop {
            let t = trial_poly(seed, p, n);
            seed += 1;
            if t.deg() == 0 {
                continue;
            }
            let s = if p == 2 {
                // trace map t + t^2 + ... + t^(2^(d-1))
                let mut acc = t.rem(&f);
                let mut pw = acc.clone();
                for _ in 1..d {
                    pw = pw.mul_mod(&pw, &f);
                    acc = acc.add(&pw);
                }
                acc
            } else {
                let e: BigUint = (&q - 1u32) / 2u32;
                t.pow_mod(&e, &f).sub(&Self::one(p))
            };
            let g = f.gcd(&s);
            if g.deg() > 0 && g.deg() < n {
                let h = f.div_rem(&g).0;
                let mut out = g.equal_degree(d);
                out.extend(h.equal_degree(d));
                return out;
            }
        }
    }

    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        let dd = self.monic().distinct_degree();
        dd.len() == 1 && dd[0].0 == n && self.gcd(&self.derivative()).deg() == 0
    }
}

fn trial_poly(seed: u64, p: u64, n: usize) -> ModPoly {
    // base-p digits of seed + p: x, x + 1, ..., then higher degrees
    let mut c = Vec::new();
    let mut s = seed + p;
    while s > 0 && c.len() < n {
        c.push(s % p);
        s /= p;
    }
    ModPoly::new(p, c)
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.to_int_poly(), self.p)
    }
}

/// Factorization of an integer polynomial modulo a prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModFactorization {
    pub p: u64,
    /// Monic irreducible factors with their multiplicities, ordered by
    /// degree then coefficients.
    pub factors: Vec<(ModPoly, usize)>,
}

impl ModFactorization {
    /// Multiset of `(degree, multiplicity)`.
    pub fn degrees(&self) -> Vec<(usize, usize)> {
        self.factors.iter().map(|(g, m)| (g.deg(), *m)).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|(_, m)| *m == 1)
    }
}

/// Factor `a` modulo the prime `p`: squarefree decomposition, then
/// distinct-degree and equal-degree splitting of each part.
pub fn factor_mod_p(a: &IntPoly, p: u64) -> Result<ModFactorization> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let f = ModPoly::from_int_poly(a, p);
    if f.is_zero() {
        return Err(Error::VanishesModP(p));
    }
    let mut factors = Vec::new();
    for (part, mult) in f.monic().squarefree_decomposition() {
        for (d, h) in part.distinct_degree() {
            for g in h.equal_degree(d) {
                factors.push((g, mult));
            }
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.deg().cmp(&b.deg()).then(a.coeffs.cmp(&b.coeffs)));
    Ok(ModFactorization { p, factors })
}

/// Degrees with multiplicity of the irreducible factors of `a` mod `p`.
pub fn factor_degrees_mod_p(a: &IntPoly, p: u64) -> Result<Vec<(usize, usize)>> {
    Ok(factor_mod_p(a, p)?.degrees())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Quadratic {
    Square,
    Nonsquare,
    Zero,
}

/// Decide whether `e` is a square in the residue field F_p[x]/(g). Only
/// meaningful for odd `p`; in characteristic 2 every element is a square.
pub fn is_square_in_residue_field(g: &ModPoly, e: &ModPoly) -> Result<Quadratic> {
    let p = g.modulus();
    if !g.is_irreducible() {
        return Err(Error::ReducibleModulus(p));
    }
    let e = e.rem(g);
    if e.is_zero() {
        return Ok(Quadratic::Zero);
    }
    if p == 2 {
        return Ok(Quadratic::Square);
    }
    let q = BigUint::from(p).pow(g.deg() as u32);
    let r = e.pow_mod(&((q - 1u32) / 2u32), g);
    Ok(if r.is_one() {
        Quadratic::Square
    } else {
        Quadratic::Nonsquare
    })
}

/// Absolute trace F_{2^d} -> F_2 of `c` in F_2[x]/(g).
pub fn trace_gf2(c: &ModPoly, g: &ModPoly) -> u64 {
    debug_assert_eq!(g.modulus(), 2);
    let d = g.deg();
    let mut pw = c.rem(g);
    let mut acc = pw.clone();
    for _ in 1..d {
        pw = pw.mul_mod(&pw, g);
        acc = acc.add(&pw);
    }
    acc.coeffs.first().copied().unwrap_or(0)
}

/// Inverse of a nonzero `a` in F_p[x]/(g) for irreducible `g`.
pub fn inverse_mod(a: &ModPoly, g: &ModPoly) -> Option<ModPoly> {
    let p = g.modulus();
    let (mut r0, mut r1) = (g.clone(), a.rem(g));
    let (mut s0, mut s1) = (ModPoly::zero(p), ModPoly::one(p));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = s0.sub(&q.mul(&s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.deg() != 0 || r0.is_zero() {
        return None;
    }
    let inv = inv_mod(r0.leading(), p);
    Some(s0.scale(inv).rem(g))
}

/// Plain integer factorization by trial division with a primality test
/// on the cofactor. Fails if a composite cofactor above the trial bound
/// remains.
pub fn factor_integer(n: &BigInt) -> Result<Vec<(BigInt, u32)>> {
    let mut m = num_traits::Signed::abs(n);
    if m.is_zero() {
        return Err(Error::Invalid("cannot factor zero".into()));
    }
    let mut out = Vec::new();
    let mut d = 2u64;
    const TRIAL: u64 = 2_000_000;
    while d <= TRIAL {
        let db = BigInt::from(d);
        if &db * &db > m {
            break;
        }
        let mut e = 0;
        while (&m % &db).is_zero() {
            m /= &db;
            e += 1;
        }
        if e > 0 {
            out.push((db, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !m.is_one() {
        match m.to_u64() {
            Some(v) if is_prime_u64(v) => out.push((m, 1)),
            Some(v) if (d as u128) * (d as u128) > v as u128 => out.push((m, 1)),
            _ => {
                return Err(Error::Invalid(format!(
                    "cofactor {m} not resolved by trial division"
                )))
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f1() -> IntPoly {
        IntPoly::from_i64(&[1, -1, -7, -4, 1, 0, 1])
    }

    #[test]
    fn x2_plus_1_mod_5_splits() {
        let a = IntPoly::from_i64(&[1, 0, 1]);
        assert_eq!(factor_degrees_mod_p(&a, 5).unwrap(), vec![(1, 1), (1, 1)]);
    }

    #[test]
    fn example_poly_mod_7_has_linear_factor() {
        let d = factor_degrees_mod_p(&f1(), 7).unwrap();
        assert!(d.iter().any(|&(deg, _)| deg == 1));
    }

    #[test]
    fn example_poly_mod_3_has_one_root() {
        // brute force over F_3
        let roots: Vec<u64> = (0..3)
            .filter(|&r| ModPoly::from_int_poly(&f1(), 3).eval(r) == 0)
            .collect();
        assert_eq!(roots.len(), 1);
        let d = factor_degrees_mod_p(&f1(), 3).unwrap();
        assert_eq!(d.iter().filter(|&&(deg, _)| deg == 1).count(), 1);
    }

    #[test]
    fn non_prime_and_vanishing_inputs() {
        assert_eq!(factor_mod_p(&f1(), 9), Err(Error::NotPrime(9)));
        let a = IntPoly::from_i64(&[7, 14]);
        assert_eq!(factor_mod_p(&a, 7), Err(Error::VanishesModP(7)));
    }

    #[test]
    fn repeated_factors_are_found() {
        // (x+1)^3 (x^2+1) mod 3, and x^3 - 1 = (x-1)^3 mod 3 (inseparable)
        let a = &(&IntPoly::from_i64(&[1, 1]) * &IntPoly::from_i64(&[1, 1]))
            * &(&IntPoly::from_i64(&[1, 1]) * &IntPoly::from_i64(&[1, 0, 1]));
        let fz = factor_mod_p(&a, 3).unwrap();
        assert_eq!(fz.degrees(), vec![(1, 3), (2, 1)]);
        let b = IntPoly::from_i64(&[-1, 0, 0, 1]);
        assert_eq!(factor_mod_p(&b, 3).unwrap().degrees(), vec![(1, 3)]);
    }

    #[test]
    fn square_test_small_cases() {
        let g = ModPoly::new(5, vec![0, 1]);
        assert_eq!(
            is_square_in_residue_field(&g, &ModPoly::new(5, vec![4])).unwrap(),
            Quadratic::Square
        );
        assert_eq!(
            is_square_in_residue_field(&g, &ModPoly::new(5, vec![2])).unwrap(),
            Quadratic::Nonsquare
        );
        assert_eq!(
            is_square_in_residue_field(&g, &ModPoly::zero(5)).unwrap(),
            Quadratic::Zero
        );
        let reducible = ModPoly::new(5, vec![4, 0, 1]);
        assert_eq!(
            is_square_in_residue_field(&reducible, &ModPoly::one(5)),
            Err(Error::ReducibleModulus(5))
        );
    }

    #[test]
    fn integer_factorization() {
        let n = BigInt::from(-816707);
        let f = factor_integer(&n).unwrap();
        assert_eq!(f, vec![(BigInt::from(23), 1), (BigInt::from(35509), 1)]);
    }

    #[test]
    fn primality() {
        assert!(is_prime_u64(35509));
        assert!(!is_prime_u64(35509 * 23));
        assert!(is_prime_u64(2));
        assert!(!is_prime_u64(1));
    }
}
