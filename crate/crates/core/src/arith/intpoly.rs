//! Dense univariate polynomials over the integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer polynomial, coefficients lowest degree first. Trailing zeros are
/// never stored, so the zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Build from coefficients written highest degree first, the way
    /// polynomials are usually printed.
    pub fn from_high_first(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().rev().cloned().collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_one()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Primitive part with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|a| a / &c).collect())
    }

    fn div_exact(&self, d: &BigInt) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .map(|c| {
                    debug_assert!((c % d).is_zero());
                    c / d
                })
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from(c.clone()))
    }

    /// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
    pub fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        assert!(!b.is_zero(), "pseudo-remainder by zero polynomial");
        if self.is_zero() || self.deg() < b.deg() {
            return self.clone();
        }
        let db = b.deg();
        let lb = b.leading();
        let delta = self.deg() - db + 1;
        let mut r = self.scale(&num_traits::pow(lb.clone(), delta));
        // division by b is exact over Z after the scaling
        while !r.is_zero() && r.deg() >= db {
            let dr = r.deg();
            let q = r.leading() / &lb;
            let mut c = r.coeffs;
            for (i, bc) in b.coeffs.iter().enumerate() {
                c[dr - db + i] -= &q * bc;
            }
            r = IntPoly::new(c);
        }
        r
    }

    /// Remainder modulo a monic polynomial.
    pub fn rem_monic(&self, m: &IntPoly) -> IntPoly {
        assert!(m.is_monic(), "rem_monic needs a monic modulus");
        let dm = m.deg();
        let mut c = self.coeffs.clone();
        while c.len() > dm {
            let top = c.pop().unwrap_or_default();
            if top.is_zero() {
                continue;
            }
            let off = c.len() - dm;
            for (i, mc) in m.coeffs.iter().take(dm).enumerate() {
                c[off + i] -= &top * mc;
            }
        }
        IntPoly::new(c)
    }

    /// Greatest common divisor over Q, returned primitive with positive
    /// leading coefficient.
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.is_zero() {
            return b;
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).deg() == 0
    }

    /// Resultant, equal to the determinant of the Sylvester matrix with the
    /// rows of `self` on top. Computed with the subresultant PRS.
    pub fn resultant(&self, other: &IntPoly) -> Result<BigInt> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (da, db) = (self.deg(), other.deg());
        if da == 0 {
            return Ok(num_traits::pow(self.leading(), db));
        }
        if db == 0 {
            return Ok(num_traits::pow(other.leading(), da));
        }
        let ca = self.content();
        let cb = other.content();
        let mut a = self.div_exact(&ca);
        let mut b = other.div_exact(&cb);
        let t = num_traits::pow(ca, db) * num_traits::pow(cb, da);
        let mut s = BigInt::one();
        if a.deg() < b.deg() {
            std::mem::swap(&mut a, &mut b);
            if da % 2 == 1 && db % 2 == 1 {
                s = -s;
            }
        }
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = a.deg() - b.deg();
            if a.deg() % 2 == 1 && b.deg() % 2 == 1 {
                s = -s;
            }
            let r = a.pseudo_rem(&b);
            if r.is_zero() {
                return Ok(BigInt::zero());
            }
            a = b;
            let denom = &g * num_traits::pow(h.clone(), delta);
            b = r.div_exact(&denom);
            g = a.leading();
            h = if delta == 0 {
                h
            } else {
                let num = num_traits::pow(g.clone(), delta);
                let den = num_traits::pow(h.clone(), delta - 1);
                num / den
            };
            if b.deg() == 0 {
                let da = a.deg();
                let lb = b.leading();
                let hh = if da == 0 {
                    h
                } else {
                    num_traits::pow(lb, da) / num_traits::pow(h, da - 1)
                };
                return Ok(s * t * hh);
            }
        }
    }

    /// `(-1)^(n(n-1)/2) Res(a, a') / lc(a)`.
    pub fn discriminant(&self) -> Result<BigInt> {
        let n = match self.degree() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(n) => n,
        };
        let r = self.resultant(&self.derivative())?;
        let q = r / self.leading();
        Ok(if (n * (n - 1) / 2) % 2 == 1 { -q } else { q })
    }

    /// Bound `B` with every complex root of modulus strictly below `B`.
    pub fn cauchy_bound(&self) -> BigRational {
        let lc = BigRational::from(self.leading().abs());
        let m = self
            .coeffs
            .iter()
            .take(self.deg())
            .map(|c| BigRational::from(c.abs()) / &lc)
            .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
        m + BigRational::one()
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{a}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPoly::new(c)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64(c)
    }

    #[test]
    fn linear_resultant_sign() {
        // det [[1, -2], [1, -3]] = -1
        assert_eq!(p(&[-2, 1]).resultant(&p(&[-3, 1])).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn resultant_with_x_is_constant_term() {
        let f = p(&[1, -1, -7, -4, 1, 0, 1]);
        // Res(f, x) = (-1)^6 f(0)
        assert_eq!(f.resultant(&IntPoly::x()).unwrap(), BigInt::from(1));
    }

    #[test]
    fn shared_factor_gives_zero() {
        let a = p(&[-1, 0, 1]);
        assert_eq!(a.resultant(&a).unwrap(), BigInt::zero());
    }

    #[test]
    fn zero_input_is_an_error() {
        assert_eq!(IntPoly::zero().resultant(&p(&[1, 1])), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn quadratic_discriminant() {
        assert_eq!(p(&[1, 0, 1]).discriminant().unwrap(), BigInt::from(-4));
        assert_eq!(p(&[-1, 1, 1]).discriminant().unwrap(), BigInt::from(5));
        assert_eq!(p(&[7]).discriminant(), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn non_monic_discriminant() {
        // 2x^2 + 3x + 1: b^2 - 4ac = 1
        assert_eq!(p(&[1, 3, 2]).discriminant().unwrap(), BigInt::from(1));
    }

    #[test]
    fn rem_monic_reduces() {
        let f = p(&[1, 0, 1]);
        // x^3 = -x mod x^2 + 1
        assert_eq!(p(&[0, 0, 0, 1]).rem_monic(&f), p(&[0, -1]));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(p(&[1, -1, -7, -4, 1, 0, 1]).to_string(), "x^6 + x^4 - 4x^3 - 7x^2 - x + 1");
    }

    #[test]
    fn gcd_detects_square_factor() {
        let a = &p(&[-1, 1]) * &p(&[-1, 1]);
        let a = &a * &p(&[2, 1]);
        assert!(!a.is_squarefree());
        assert_eq!(a.gcd(&a.derivative()), p(&[-1, 1]));
    }
}
