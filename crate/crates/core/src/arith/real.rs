//! Certified real numbers as closed intervals with rational endpoints.
//!
//! Every transcendental value carries an enclosure that is rigorous: the
//! true value always lies in `[lo, hi]`. Endpoints are kept dyadic at
//! `WORK_BITS` bits after transcendental steps so denominators stay small.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Working precision in bits (about 96 decimal digits).
pub const WORK_BITS: u64 = 320;
const GUARD_BITS: u64 = 32;

/// Euler-Mascheroni constant to 90 decimal places.
const EULER_GAMMA_DIGITS: &str =
    "577215664901532860606512090082402431042159335939923598805767234884867726777664670936947063";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Real {
    lo: BigRational,
    hi: BigRational,
}

fn pow2(bits: u64) -> BigInt {
    BigInt::one() << (bits as usize)
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

/// Fixed-point enclosure: the true value lies in `[(v - err)/2^bits, (v + err)/2^bits]`.
struct Fixed {
    v: BigInt,
    err: BigInt,
    bits: u64,
}

impl Fixed {
    fn into_real(self) -> Real {
        let s = pow2(self.bits);
        Real::new(
            BigRational::new(&self.v - &self.err, s.clone()),
            BigRational::new(&self.v + &self.err, s),
        )
    }
}

/// `atanh(z)` for rational `0 <= z <= 1/2`.
fn atanh_fixed(z: &BigRational, bits: u64) -> Fixed {
    let s = pow2(bits);
    let (zn, zd) = (z.numer().clone(), z.denom().clone());
    let z2n = &zn * &zn;
    let z2d = &zd * &zd;
    let mut pw = floor_div(&(&s * &zn), &zd);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !pw.is_zero() {
        sum += floor_div(&pw, &BigInt::from(2 * k + 1));
        pw = floor_div(&(&pw * &z2n), &z2d);
        k += 1;
    }
    // each truncated power is low by at most k ulps, each term by k + 1;
    // the tail after pw hits zero is below k + 1 ulps in total
    let err = BigInt::from((k + 2) * (k + 2) + 4);
    Fixed { v: sum, err, bits }
}

/// `atan(1/m)` for integer `m >= 2`.
fn atan_inv_fixed(m: u64, bits: u64) -> Fixed {
    let s = pow2(bits);
    let mb = BigInt::from(m);
    let m2 = &mb * &mb;
    let mut pw = floor_div(&s, &mb);
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !pw.is_zero() {
        let t = floor_div(&pw, &BigInt::from(2 * k + 1));
        if k % 2 == 0 {
            sum += t;
        } else {
            sum -= t;
        }
        pw = floor_div(&pw, &m2);
        k += 1;
    }
    let err = BigInt::from(2 * k + 4);
    Fixed { v: sum, err, bits }
}

fn ln2_fixed(bits: u64) -> Fixed {
    let a = atanh_fixed(&BigRational::new(1.into(), 3.into()), bits);
    Fixed { v: a.v * 2, err: a.err * 2, bits }
}

/// Enclosure of `ln x` for rational `x > 0`.
fn ln_rational(x: &BigRational) -> Real {
    assert!(x.is_positive(), "logarithm of a non-positive number");
    if x.is_one() {
        return Real::from_int(0);
    }
    let bits = WORK_BITS + GUARD_BITS;
    // x = 2^k * y with 1 <= y < 2
    let mut k = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = BigRational::from_integer(2.into());
    let scale = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(pow2(k as u64))
        } else {
            BigRational::new(1.into(), pow2((-k) as u64))
        }
    };
    let mut y = x / scale(k);
    while y >= two {
        y /= &two;
        k += 1;
    }
    while y < BigRational::one() {
        y *= &two;
        k -= 1;
    }
    let z = (&y - BigRational::one()) / (&y + BigRational::one());
    let az = atanh_fixed(&z, bits);
    let l2 = ln2_fixed(bits);
    let kb = BigInt::from(k);
    let v = &kb * &l2.v + &az.v * 2;
    let err = kb.abs() * &l2.err + &az.err * 2;
    Fixed { v, err, bits }.into_real().rounded()
}

/// Enclosure of `sqrt x` for rational `x >= 0`; exact for rational squares.
fn sqrt_rational(x: &BigRational) -> Real {
    assert!(!x.is_negative(), "square root of a negative number");
    let (n, d) = (x.numer(), x.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    if &(&rn * &rn) == n && &(&rd * &rd) == d {
        return Real::exact(BigRational::new(rn, rd));
    }
    let bits = WORK_BITS + GUARD_BITS;
    let s2 = pow2(2 * bits);
    let lo_arg = floor_div(&(n * &s2), d);
    let hi_arg = ceil_div(&(n * &s2), d);
    let lo = lo_arg.sqrt();
    let hi = hi_arg.sqrt() + 1;
    let s = pow2(bits);
    Real::new(BigRational::new(lo, s.clone()), BigRational::new(hi, s)).rounded()
}

impl Real {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "inverted interval");
        Real { lo, hi }
    }

    pub fn exact(q: BigRational) -> Self {
        Real { lo: q.clone(), hi: q }
    }

    pub fn from_int(n: i64) -> Self {
        Self::exact(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: &BigInt) -> Self {
        Self::exact(BigRational::from_integer(n.clone()))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::exact(BigRational::new(n.into(), d.into()))
    }

    /// Parse a decimal literal such as `0.22687` or `-1.5e-3` exactly.
    pub fn parse_decimal(s: &str) -> Option<Self> {
        parse_decimal_rational(s).map(Self::exact)
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    /// Certainly `self < other`.
    pub fn lt(&self, other: &Real) -> bool {
        self.hi < other.lo
    }

    /// Certainly `self <= other`.
    pub fn le(&self, other: &Real) -> bool {
        self.hi <= other.lo
    }

    pub fn to_f64(&self) -> f64 {
        self.mid().to_f64().unwrap_or(f64::NAN)
    }

    /// Round both endpoints outward to dyadics with `WORK_BITS` fractional
    /// bits. No-op for exact values, whose denominators stay exact.
    pub fn rounded(self) -> Self {
        if self.is_exact() {
            return self;
        }
        let s = pow2(WORK_BITS);
        let lo = floor_div(&(self.lo.numer() * &s), self.lo.denom());
        let hi = ceil_div(&(self.hi.numer() * &s), self.hi.denom());
        Real {
            lo: BigRational::new(lo, s.clone()),
            hi: BigRational::new(hi, s),
        }
    }

    pub fn ln(&self) -> Self {
        assert!(self.is_positive(), "logarithm of an interval reaching zero");
        if self.is_exact() {
            return ln_rational(&self.lo);
        }
        Real::new(ln_rational(&self.lo).lo, ln_rational(&self.hi).hi)
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.lo.is_negative(), "square root of a negative interval");
        if self.is_exact() {
            return sqrt_rational(&self.lo);
        }
        Real::new(sqrt_rational(&self.lo).lo, sqrt_rational(&self.hi).hi)
    }

    pub fn pi() -> Self {
        let bits = WORK_BITS + GUARD_BITS;
        let a = atan_inv_fixed(5, bits);
        let b = atan_inv_fixed(239, bits);
        Fixed {
            v: a.v * 16 - b.v * 4,
            err: a.err * 16 + b.err * 4,
            bits,
        }
        .into_real()
        .rounded()
    }

    pub fn e() -> Self {
        let bits = WORK_BITS + GUARD_BITS;
        let mut t = pow2(bits);
        let mut sum = BigInt::zero();
        let mut k = 0u64;
        while !t.is_zero() {
            sum += &t;
            k += 1;
            t = floor_div(&t, &BigInt::from(k));
        }
        Fixed {
            v: sum,
            err: BigInt::from(k + 4),
            bits,
        }
        .into_real()
        .rounded()
    }

    /// Euler-Mascheroni constant, enclosed from a 90-digit literal.
    pub fn euler_gamma() -> Self {
        let den = num_traits::pow(BigInt::from(10), EULER_GAMMA_DIGITS.len());
        let num: BigInt = EULER_GAMMA_DIGITS.parse().expect("digits");
        Real::new(
            BigRational::new(num.clone(), den.clone()),
            BigRational::new(num + 1, den),
        )
    }

    pub fn recip(&self) -> Self {
        assert!(
            self.lo.is_positive() || self.hi.is_negative(),
            "reciprocal of an interval containing zero"
        );
        Real::new(self.hi.recip(), self.lo.recip())
    }

    pub fn powi(&self, n: u32) -> Self {
        (0..n).fold(Real::from_int(1), |acc, _| &acc * self)
    }

    pub fn max(&self, o: &Real) -> Self {
        Real::new(self.lo.clone().max(o.lo.clone()), self.hi.clone().max(o.hi.clone()))
    }

    /// Outward decimal enclosure with `sig` significant digits on each side.
    pub fn decimal_enclosure(&self, sig: u32) -> (BigRational, BigRational) {
        (
            round_decimal(&self.lo, sig, false),
            round_decimal(&self.hi, sig, true),
        )
    }

    /// Midpoint as a decimal string with `places` digits after the point.
    pub fn fmt_fixed(&self, places: usize) -> String {
        format_rational(&self.mid(), places)
    }
}

/// Round `q` to `sig` significant decimal digits, up or down.
pub fn round_decimal(q: &BigRational, sig: u32, up: bool) -> BigRational {
    if q.is_zero() {
        return q.clone();
    }
    let f = q.to_f64().unwrap_or(0.0).abs();
    let mag = if f > 0.0 { f.log10().floor() as i64 } else { 0 };
    let exp = sig as i64 - 1 - mag;
    let ten = BigRational::from_integer(10.into());
    let scale = if exp >= 0 {
        num_traits::pow(ten, exp as usize)
    } else {
        num_traits::pow(ten, (-exp) as usize).recip()
    };
    let scaled = q * &scale;
    let r = if up { scaled.ceil() } else { scaled.floor() };
    r / scale
}

pub fn format_rational(q: &BigRational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), places);
    let n = q.numer() * &scale;
    let d = q.denom();
    // round half away from zero
    let (qq, r) = n.abs().div_rem(d);
    let mut v = qq;
    if &(r * 2) >= d {
        v += 1;
    }
    let neg = q.is_negative() && !v.is_zero();
    let s = v.to_string();
    let s = if s.len() <= places {
        format!("{}{}", "0".repeat(places + 1 - s.len()), s)
    } else {
        s
    };
    let (int, frac) = s.split_at(s.len() - places);
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    out.push_str(int);
    if places > 0 {
        out.push('.');
        out.push_str(frac);
    }
    out
}

pub fn parse_decimal_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().ok()?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = match mant.split_once('.') {
        Some((a, b)) => (a, b),
        None => (mant, ""),
    };
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{ip}{fp}0").parse::<BigInt>().ok()? / 10;
    let e = exp - fp.len() as i64;
    let ten = BigInt::from(10);
    let mut q = if e >= 0 {
        BigRational::from_integer(digits * num_traits::pow(ten, e as usize))
    } else {
        BigRational::new(digits, num_traits::pow(ten, (-e) as usize))
    };
    if neg {
        q = -q;
    }
    Some(q)
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let places = f.precision().unwrap_or(12);
        write!(f, "{}", self.fmt_fixed(places))
    }
}

impl Add for &Real {
    type Output = Real;
    fn add(self, o: &Real) -> Real {
        Real::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, o: &Real) -> Real {
        Real::new(&self.lo - &o.hi, &self.hi - &o.lo)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::new(-&self.hi, -&self.lo)
    }
}

impl Mul for &Real {
    type Output = Real;
    fn mul(self, o: &Real) -> Real {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().cloned().unwrap_or_default();
        let hi = c.iter().max().cloned().unwrap_or_default();
        let exact = self.is_exact() && o.is_exact();
        let r = Real::new(lo, hi);
        if exact {
            r
        } else {
            r.rounded()
        }
    }
}

impl Div for &Real {
    type Output = Real;
    fn div(self, o: &Real) -> Real {
        self * &o.recip()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Real {
            type Output = Real;
            fn $m(self, o: Real) -> Real {
                (&self).$m(&o)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $m(self, o: &Real) -> Real {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

impl From<i64> for Real {
    fn from(n: i64) -> Self {
        Real::from_int(n)
    }
}

impl From<BigRational> for Real {
    fn from(q: BigRational) -> Self {
        Real::exact(q)
    }
}

impl serde::Serialize for Real {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.fmt_fixed(30))
    }
}

// Sign of a rational, used by callers that branch on exact values.
pub fn sign(q: &BigRational) -> Sign {
    if q.is_positive() {
        Sign::Plus
    } else if q.is_negative() {
        Sign::Minus
    } else {
        Sign::NoSign
    }
}
