//! Line-oriented `key = value` input documents.
//!
//! Grammar:
//!
//! ```text
//! document  := line*
//! line      := blank | comment | key "=" value
//! comment   := "#" anything
//! key       := [A-Za-z0-9_.']+
//! ```
//!
//! Values are interpreted by key. Polynomials and field elements are
//! written in `x` or `xi`, e.g. `671xi^5-467xi^4+994xi^3-3360xi^2-2314xi+961`.
//! Integer expectations accept products of powers: `-23*35509`,
//! `7*13*19^2`. Element references name another key (`pi.19`) or give a
//! prime ideal directly as `(p, g)` with `g` monic in `x`.
//!
//! Recognized keys:
//!
//! | key | meaning |
//! |-----|---------|
//! | `poly` | defining polynomial of k |
//! | `eta`, `eta_sign` | radicand as given, and a sign applied to it (default 1) |
//! | `eta.factors` | names of prime elements whose product is the radicand |
//! | `pi.<n>`, `pi.<n>'` | prime elements; `<n>` is the expected norm |
//! | `beta`, `gamma` | witness with radicand = beta^2 + 4 gamma |
//! | `eta_alt` | an alternative radicand to compare by norm |
//! | `aug`, `aug.new`, `aug.old`, `aug.rho`, `aug.sigma` | augmentation element, its new prime, the primes already dividing the radicand, optional witness |
//! | `aug.product` | names whose product must equal `aug` exactly |
//! | `ell`, `bound` | tower prime (only 2) and the norm cutoff for place counts |
//! | `unit_fallback` | `true` to accept factorizations up to a unit |
//! | `expect.<step>`, `tol.<step>` | expected value and tolerance of a report step |

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{IntPoly, ModPoly};
use crate::error::{Error, Result};
use crate::field::order::{FieldOrder, OrderElement};
use crate::field::primes::PrimeRef;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct InputDocument {
    pub entries: Vec<Entry>,
    index: BTreeMap<String, usize>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut doc = InputDocument::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| perr(i + 1, "expected KEY = VALUE"))?;
            let key = k.trim().to_string();
            if key.is_empty()
                || !key
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '\''))
            {
                return Err(perr(i + 1, format!("bad key {key:?}")));
            }
            if doc.index.contains_key(&key) {
                return Err(perr(i + 1, format!("duplicate key {key}")));
            }
            doc.index.insert(key.clone(), doc.entries.len());
            doc.entries.push(Entry {
                key,
                value: v.trim().to_string(),
                line: i + 1,
            });
        }
        Ok(doc)
    }

    pub fn entry(&self, key: &str) -> Option<&Entry> {
        self.index.get(key).map(|&i| &self.entries[i])
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entry(key).map(|e| e.value.as_str())
    }

    fn require(&self, key: &str) -> Result<&Entry> {
        self.entry(key)
            .ok_or_else(|| Error::Invalid(format!("missing key {key}")))
    }

    pub fn poly(&self, key: &str) -> Result<IntPoly> {
        let e = self.require(key)?;
        parse_poly(&e.value).map_err(|m| perr(e.line, m))
    }

    pub fn element(&self, k: &FieldOrder, key: &str) -> Result<OrderElement> {
        let e = self.require(key)?;
        let p = parse_poly(&e.value).map_err(|m| perr(e.line, m))?;
        if p.degree().is_some_and(|d| d >= k.degree()) {
            return Err(perr(e.line, "element degree must be below the field degree"));
        }
        Ok(k.from_poly(&p))
    }

    pub fn opt_element(&self, k: &FieldOrder, key: &str) -> Result<Option<OrderElement>> {
        if self.entry(key).is_some() {
            self.element(k, key).map(Some)
        } else {
            Ok(None)
        }
    }

    /// Whitespace or comma separated names.
    pub fn names(&self, key: &str) -> Vec<String> {
        self.get(key)
            .map(|v| {
                v.split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(str::to_string)
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn integer(&self, key: &str) -> Result<Option<BigInt>> {
        match self.entry(key) {
            None => Ok(None),
            Some(e) => parse_int_expr(&e.value).map(Some).map_err(|m| perr(e.line, m)),
        }
    }

    pub fn u64_or(&self, key: &str, default: u64) -> Result<u64> {
        match self.entry(key) {
            None => Ok(default),
            Some(e) => e.value.parse().map_err(|_| perr(e.line, "expected an unsigned integer")),
        }
    }

    pub fn flag(&self, key: &str) -> bool {
        matches!(self.get(key), Some("true" | "yes" | "1"))
    }

    /// `expect.*` entries with the prefix stripped.
    pub fn expectations(&self) -> BTreeMap<String, String> {
        self.prefixed("expect.")
    }

    pub fn tolerances(&self) -> BTreeMap<String, String> {
        self.prefixed("tol.")
    }

    fn prefixed(&self, pre: &str) -> BTreeMap<String, String> {
        self.entries
            .iter()
            .filter_map(|e| e.key.strip_prefix(pre).map(|k| (k.to_string(), e.value.clone())))
            .collect()
    }

    /// A list of prime references; `(p, g)` groups may contain spaces.
    pub fn prime_refs(&self, k: &FieldOrder, key: &str) -> Result<Vec<PrimeRef>> {
        let Some(v) = self.get(key) else { return Ok(Vec::new()) };
        let mut toks = Vec::new();
        let mut cur = String::new();
        let mut depth = 0;
        for c in v.chars() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if depth == 0 && (c.is_whitespace() || c == ',') {
                if !cur.is_empty() {
                    toks.push(std::mem::take(&mut cur));
                }
            } else {
                cur.push(c);
            }
        }
        if !cur.is_empty() {
            toks.push(cur);
        }
        toks.iter().map(|t| self.prime_ref(k, t)).collect()
    }

    /// Resolve a prime reference: a key naming an element or `(p, g)`.
    pub fn prime_ref(&self, k: &FieldOrder, s: &str) -> Result<PrimeRef> {
        if let Some(inner) = s.strip_prefix('(').and_then(|t| t.strip_suffix(')')) {
            let (p, g) = inner
                .split_once(',')
                .ok_or_else(|| Error::Invalid(format!("bad prime ideal {s}")))?;
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|_| Error::Invalid(format!("bad prime in {s}")))?;
            let g = parse_poly(g.trim()).map_err(Error::Invalid)?;
            return Ok(PrimeRef::Ideal(p, ModPoly::from_int_poly(&g, p).monic()));
        }
        Ok(PrimeRef::Element(self.element(k, s)?))
    }
}

/// Parse a polynomial in `x` or `xi` with integer coefficients.
pub fn parse_poly(s: &str) -> std::result::Result<IntPoly, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let t = t.replace("xi", "x");
    if t.is_empty() {
        return Err("empty polynomial".into());
    }
    let b = t.as_bytes();
    let mut coeffs: BTreeMap<usize, BigInt> = BTreeMap::new();
    let mut i = 0;
    while i < b.len() {
        let mut sign = BigInt::one();
        if b[i] == b'+' || b[i] == b'-' {
            if b[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        } else if i > 0 {
            return Err(format!("expected + or - at {:?}", &t[i..]));
        }
        let start = i;
        while i < b.len() && b[i].is_ascii_digit() {
            i += 1;
        }
        let c: BigInt = if i > start {
            t[start..i].parse().map_err(|_| "bad coefficient".to_string())?
        } else {
            BigInt::one()
        };
        if i < b.len() && b[i] == b'*' {
            i += 1;
        }
        let mut exp = 0usize;
        if i < b.len() && b[i] == b'x' {
            i += 1;
            exp = 1;
            if i < b.len() && b[i] == b'^' {
                i += 1;
                let s0 = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                exp = t[s0..i].parse().map_err(|_| "bad exponent".to_string())?;
            }
        } else if i == start {
            return Err(format!("expected a term at {:?}", &t[start..]));
        }
        *coeffs.entry(exp).or_insert_with(BigInt::zero) += sign * c;
    }
    let n = coeffs.keys().max().copied().unwrap_or(0);
    Ok(IntPoly::new(
        (0..=n).map(|d| coeffs.get(&d).cloned().unwrap_or_default()).collect(),
    ))
}

/// Parse `[-]a^e*b^f*...`.
pub fn parse_int_expr(s: &str) -> std::result::Result<BigInt, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let (neg, body) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t.as_str()),
    };
    let mut acc = BigInt::one();
    for f in body.split('*') {
        let (base, exp) = match f.split_once('^') {
            Some((b, e)) => (b, e.parse::<usize>().map_err(|_| format!("bad exponent in {f}"))?),
            None => (f, 1),
        };
        let b: BigInt = base.parse().map_err(|_| format!("bad integer {base:?}"))?;
        acc *= num_traits::pow(b, exp);
    }
    Ok(if neg { -acc } else { acc })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials() {
        assert_eq!(parse_poly("x^6+x^4-4x^3-7x^2-x+1").unwrap(), IntPoly::from_i64(&[1, -1, -7, -4, 1, 0, 1]));
        assert_eq!(parse_poly("-9xi^5 + 6xi^4 - 13xi^3 + 44xi^2 + 31xi - 12").unwrap(), IntPoly::from_i64(&[-12, 31, 44, -13, 6, -9]));
        assert_eq!(parse_poly("7").unwrap(), IntPoly::from_i64(&[7]));
        assert_eq!(parse_poly("x-x").unwrap(), IntPoly::zero());
        assert!(parse_poly("3y").is_err());
        assert!(parse_poly("").is_err());
    }

    #[test]
    fn integers() {
        assert_eq!(parse_int_expr("-23*35509").unwrap(), BigInt::from(-816707));
        assert_eq!(parse_int_expr("7*13*19^2").unwrap(), BigInt::from(7 * 13 * 361));
        assert!(parse_int_expr("7*a").is_err());
    }

    #[test]
    fn documents() {
        let d = InputDocument::parse("# c\npoly = x^2+1\n\nexpect.disc = -4 # tail\n").unwrap();
        assert_eq!(d.get("poly"), Some("x^2+1"));
        assert_eq!(d.expectations().get("disc").map(String::as_str), Some("-4"));
        assert!(matches!(InputDocument::parse("poly x"), Err(Error::Parse { line: 1, .. })));
        assert!(InputDocument::parse("a = 1\na = 2").is_err());
        let k = FieldOrder::new(d.poly("poly").unwrap()).unwrap();
        assert!(matches!(d.prime_ref(&k, "(5, x-2)").unwrap(), PrimeRef::Ideal(5, _)));
    }
}
