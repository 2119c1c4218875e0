//! Sturm sequences, real root isolation and certified sign evaluation at
//! real algebraic points.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::intpoly::IntPoly;
use crate::error::{Error, Result};

/// Sturm chain of a squarefree polynomial, with every member scaled by a
/// positive constant so signs are preserved.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(a: &IntPoly) -> Result<Self> {
        if a.degree().unwrap_or(0) == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if !a.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let mut chain = vec![a.clone(), a.derivative()];
        loop {
            let n = chain.len();
            let (p0, p1) = (&chain[n - 2], &chain[n - 1]);
            if p1.degree().unwrap_or(0) == 0 {
                break;
            }
            let delta = p0.degree().unwrap_or(0) - p1.degree().unwrap_or(0) + 1;
            let mut r = p0.pseudo_rem(p1);
            // prem multiplies by lc^delta; undo a negative factor
            if p1.leading().is_negative() && delta % 2 == 1 {
                r = -&r;
            }
            let r = -&r;
            if r.is_zero() {
                break;
            }
            let c = r.content();
            chain.push(IntPoly::new(r.coeffs().iter().map(|x| x / &c).collect()));
        }
        Ok(SturmChain { chain })
    }

    fn variations<I: Iterator<Item = i8>>(signs: I) -> usize {
        let mut last = 0i8;
        let mut v = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                v += 1;
            }
            last = s;
        }
        v
    }

    fn sign_of(q: &BigRational) -> i8 {
        if q.is_positive() {
            1
        } else if q.is_negative() {
            -1
        } else {
            0
        }
    }

    pub fn variations_at(&self, x: &BigRational) -> usize {
        Self::variations(self.chain.iter().map(|p| Self::sign_of(&p.eval_rational(x))))
    }

    fn variations_at_infinity(&self, positive: bool) -> usize {
        Self::variations(self.chain.iter().map(|p| {
            let s = if p.leading().is_positive() { 1 } else { -1 };
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if !positive && odd {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots.
    pub fn count_all(&self) -> usize {
        self.variations_at_infinity(false) - self.variations_at_infinity(true)
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count_in(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }
}

pub fn sturm_real_root_count(a: &IntPoly) -> Result<usize> {
    Ok(SturmChain::new(a)?.count_all())
}

/// An isolating interval `(lo, hi]` holding exactly one real root, with
/// `a(lo)` and `a(hi)` both nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Isolate every real root of a squarefree polynomial by Sturm bisection.
/// Intervals come back sorted left to right.
pub fn isolate_real_roots(a: &IntPoly) -> Result<Vec<RootInterval>> {
    let chain = SturmChain::new(a)?;
    let b = a.cauchy_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = chain.count_in(&lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 && !a.eval_rational(&hi).is_zero() {
            out.push(RootInterval { lo, hi });
            continue;
        }
        let mut mid = (&lo + &hi) * half();
        // keep split points off the roots
        let mut nudge = (&hi - &lo) / BigRational::from_integer(BigInt::from(7));
        while a.eval_rational(&mid).is_zero() {
            mid += &nudge;
            nudge *= half();
        }
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

/// Halve an isolating interval, keeping the half with the root.
pub fn refine(a: &IntPoly, iv: &RootInterval) -> RootInterval {
    let mid = (&iv.lo + &iv.hi) * half();
    let fm = a.eval_rational(&mid);
    if fm.is_zero() {
        let eps = (&iv.hi - &iv.lo) / BigRational::from_integer(BigInt::from(1024));
        return RootInterval {
            lo: &mid - &eps,
            hi: &mid + &eps,
        };
    }
    let flo = a.eval_rational(&iv.lo);
    if flo.is_positive() != fm.is_positive() {
        RootInterval { lo: iv.lo.clone(), hi: mid }
    } else {
        RootInterval { lo: mid, hi: iv.hi.clone() }
    }
}

/// Rigorous range enclosure of `e` over `[lo, hi]`, via a Taylor expansion
/// at the midpoint with absolute-value remainder terms.
pub fn range_enclosure(e: &IntPoly, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
    let mid = (lo + hi) * half();
    let r = (hi - lo) * half();
    let c = e.eval_rational(&mid);
    let mut spread = BigRational::zero();
    let mut deriv = e.clone();
    let mut fact = BigRational::one();
    let mut rk = BigRational::one();
    let n = e.degree().unwrap_or(0);
    for k in 1..=n {
        deriv = deriv.derivative();
        fact *= BigRational::from_integer(BigInt::from(k));
        rk *= &r;
        spread += deriv.eval_rational(&mid).abs() / &fact * &rk;
    }
    (&c - &spread, c + spread)
}

/// Sign of `e(alpha)` where `alpha` is the root of `a` isolated by `iv`.
/// Refines the interval until the enclosure of `e` excludes zero, giving up
/// once the interval is narrower than `2^-cap_bits`.
pub fn sign_at_root(a: &IntPoly, iv: &RootInterval, e: &IntPoly, cap_bits: u32) -> Result<i8> {
    if e.is_zero() {
        return Ok(0);
    }
    let cap = BigRational::new(BigInt::one(), BigInt::one() << cap_bits);
    let mut iv = iv.clone();
    loop {
        let (l, h) = range_enclosure(e, &iv.lo, &iv.hi);
        if l.is_positive() {
            return Ok(1);
        }
        if h.is_negative() {
            return Ok(-1);
        }
        if &iv.hi - &iv.lo < cap {
            return Err(Error::SignUndecidable(format!("{e} at a root of {a}")));
        }
        iv = refine(a, &iv);
    }
}
