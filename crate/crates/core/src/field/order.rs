//! Monogenic orders Z[xi] and their elements.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{sturm_real_root_count, IntPoly, ModPoly};
use crate::error::{Error, Result};

/// The order Z[xi] = Z[x]/(f) for a monic irreducible `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldOrder {
    poly: IntPoly,
    r1: usize,
    r2: usize,
    disc: BigInt,
}

impl FieldOrder {
    pub fn new(poly: IntPoly) -> Result<Self> {
        let n = poly.degree().ok_or(Error::ZeroPolynomial)?;
        if n == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if !poly.is_monic() {
            return Err(Error::Invalid("defining polynomial must be monic".into()));
        }
        let r1 = sturm_real_root_count(&poly)?;
        let disc = poly.discriminant()?;
        Ok(FieldOrder {
            poly,
            r1,
            r2: (n - r1) / 2,
            disc,
        })
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.poly.degree().unwrap_or(0)
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.r1, self.r2)
    }

    /// Discriminant of the defining polynomial. Equals the field
    /// discriminant once the order is known to be maximal.
    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<OrderElement> {
        if coords.len() != self.degree() {
            return Err(Error::Invalid(format!(
                "element has {} coordinates, expected {}",
                coords.len(),
                self.degree()
            )));
        }
        Ok(OrderElement { coords })
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<OrderElement> {
        self.element(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Element from coefficients written highest power first.
    pub fn element_high_first(&self, coords: &[BigInt]) -> Result<OrderElement> {
        self.element(coords.iter().rev().cloned().collect())
    }

    pub fn one(&self) -> OrderElement {
        let mut c = vec![BigInt::zero(); self.degree()];
        c[0] = BigInt::one();
        OrderElement { coords: c }
    }

    pub fn zero(&self) -> OrderElement {
        OrderElement {
            coords: vec![BigInt::zero(); self.degree()],
        }
    }

    pub fn from_poly(&self, a: &IntPoly) -> OrderElement {
        let r = a.rem_monic(&self.poly);
        OrderElement {
            coords: (0..self.degree()).map(|i| r.coeff(i)).collect(),
        }
    }

    pub fn mul(&self, a: &OrderElement, b: &OrderElement) -> OrderElement {
        self.from_poly(&(&a.to_poly() * &b.to_poly()))
    }

    pub fn add(&self, a: &OrderElement, b: &OrderElement) -> OrderElement {
        OrderElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect(),
        }
    }

    pub fn sub(&self, a: &OrderElement, b: &OrderElement) -> OrderElement {
        OrderElement {
            coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect(),
        }
    }

    /// Norm down to Q, computed as Res(f, e).
    pub fn norm(&self, e: &OrderElement) -> Result<BigInt> {
        if e.is_zero() {
            return Err(Error::ZeroElement);
        }
        self.poly.resultant(&e.to_poly())
    }

    pub fn product(&self, es: &[OrderElement]) -> Result<OrderElement> {
        let (first, rest) = es
            .split_first()
            .ok_or_else(|| Error::Invalid("empty product".into()))?;
        Ok(rest.iter().fold(first.clone(), |acc, e| self.mul(&acc, e)))
    }

    /// Multiplication-by-`e` matrix in the power basis, column j holding
    /// the coordinates of `e * xi^j`.
    fn mul_matrix(&self, e: &OrderElement) -> Vec<Vec<BigInt>> {
        let n = self.degree();
        let mut cols = Vec::with_capacity(n);
        let mut cur = e.clone();
        let xi = self.from_poly(&IntPoly::x());
        for _ in 0..n {
            cols.push(cur.coords.clone());
            cur = self.mul(&cur, &xi);
        }
        (0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect()
    }

    /// The quotient `a / b` if it lies in the order.
    pub fn div_exact(&self, a: &OrderElement, b: &OrderElement) -> Result<Option<OrderElement>> {
        if b.is_zero() {
            return Err(Error::ZeroElement);
        }
        let m = self.mul_matrix(b);
        let x = solve_rational(&m, &a.coords).ok_or(Error::ZeroElement)?;
        if x.iter().all(|q| q.is_integer()) {
            Ok(Some(OrderElement {
                coords: x.into_iter().map(|q| q.to_integer()).collect(),
            }))
        } else {
            Ok(None)
        }
    }

    /// `a == b * u` for some unit `u` of the order.
    pub fn associates(&self, a: &OrderElement, b: &OrderElement) -> Result<bool> {
        match self.div_exact(a, b)? {
            Some(u) => Ok(self.norm(&u)?.abs().is_one()),
            None => Ok(false),
        }
    }

    /// Reduction of `e` into F_p[x] (not yet reduced modulo a factor).
    pub fn reduce_mod_p(&self, e: &OrderElement, p: u64) -> ModPoly {
        ModPoly::from_bigints(&e.coords, p)
    }
}

/// Gaussian elimination over Q for a square nonsingular system.
fn solve_rational(m: &[Vec<BigInt>], rhs: &[BigInt]) -> Option<Vec<BigRational>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .zip(rhs)
        .map(|(row, r)| {
            let mut v: Vec<BigRational> = row.iter().map(|x| BigRational::from(x.clone())).collect();
            v.push(BigRational::from(r.clone()));
            v
        })
        .collect();
    for c in 0..n {
        let piv = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, piv);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let k = a[r][c].clone();
                for j in c..=n {
                    let t = &a[c][j] * &k;
                    a[r][j] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|mut row| row.pop().unwrap_or_default()).collect())
}

/// Element of Z[xi], coordinates in the basis 1, xi, ..., xi^(n-1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct OrderElement {
    #[serde(serialize_with = "crate::ser::bigints")]
    pub coords: Vec<BigInt>,
}

impl OrderElement {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn to_poly(&self) -> IntPoly {
        IntPoly::new(self.coords.clone())
    }

    pub fn neg(&self) -> OrderElement {
        OrderElement {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn high_first(&self) -> Vec<BigInt> {
        self.coords.iter().rev().cloned().collect()
    }

    /// Coordinate-wise reduction mod 2, as 0/1.
    pub fn parity(&self) -> Vec<u8> {
        self.coords
            .iter()
            .map(|c| if c.is_odd() { 1 } else { 0 })
            .collect()
    }
}

impl fmt::Display for OrderElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.to_poly().to_string().replace('x', "xi");
        write!(f, "{s}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k1() -> FieldOrder {
        FieldOrder::new(IntPoly::from_i64(&[1, -1, -7, -4, 1, 0, 1])).unwrap()
    }

    #[test]
    fn invariants() {
        let k = k1();
        assert_eq!(k.signature(), (4, 1));
        assert_eq!(k.disc(), &BigInt::from(-816707));
    }

    #[test]
    fn norms() {
        let k = k1();
        assert_eq!(k.norm(&k.one()).unwrap(), BigInt::one());
        assert_eq!(k.norm(&k.zero()), Err(Error::ZeroElement));
        // xi has norm f(0) = 1 since n is even
        let xi = k.element_i64(&[0, 1, 0, 0, 0, 0]).unwrap();
        assert_eq!(k.norm(&xi).unwrap(), BigInt::one());
        let two = k.element_i64(&[2, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(k.norm(&two).unwrap(), BigInt::from(64));
    }

    #[test]
    fn division() {
        let k = k1();
        let a = k.element_i64(&[1, 2, 0, -1, 0, 3]).unwrap();
        let b = k.element_i64(&[-2, 0, 1, 0, 0, 1]).unwrap();
        let ab = k.mul(&a, &b);
        assert_eq!(k.div_exact(&ab, &b).unwrap(), Some(a.clone()));
        let two = k.element_i64(&[2, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!(k.div_exact(&k.one(), &two).unwrap(), None);
        let xi = k.element_i64(&[0, 1, 0, 0, 0, 0]).unwrap();
        assert!(k.associates(&k.mul(&a, &xi), &a).unwrap());
        assert!(!k.associates(&ab, &a).unwrap());
    }

    #[test]
    fn wrong_length_rejected() {
        assert!(k1().element_i64(&[1, 2]).is_err());
    }
}
