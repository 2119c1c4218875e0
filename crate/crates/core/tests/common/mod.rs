//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;

use towerbs::field::{FieldOrder, OrderElement};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn f(x: &BigRational) -> f64 {
    x.numer().to_f64().unwrap() / x.denom().to_f64().unwrap()
}

/// Solve a small dense system by partial pivoting; None when singular.
fn solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs()))?;
        if a[p][c].abs() < 1e-12 {
            return None;
        }
        a.swap(c, p);
        b.swap(c, p);
        for r in 0..n {
            if r != c {
                let k = a[r][c] / a[c][c];
                for j in c..n {
                    a[r][j] -= k * a[c][j];
                }
                b[r] -= k * b[c];
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

fn subsets(n: usize, s: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, s: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == s {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, s, &mut Vec::new(), &mut out);
    out
}

/// max c.x over {A x <= b, 0 <= x <= u} by enumerating every vertex:
/// s active rows, s basic variables, the rest at a bound.
pub fn vertex_max(c: &[f64], a: &[Vec<f64>], b: &[f64], u: &[f64]) -> f64 {
    let (n, m) = (c.len(), a.len());
    let mut best = f64::NEG_INFINITY;
    for s in 0..=m.min(n) {
        for rows in subsets(m, s) {
            for basic in subsets(n, s) {
                let free: Vec<usize> = (0..n).filter(|j| !basic.contains(j)).collect();
                for mask in 0u64..(1u64 << free.len()) {
                    let mut x = vec![0.0; n];
                    for (t, &j) in free.iter().enumerate() {
                        if mask >> t & 1 == 1 {
                            x[j] = u[j];
                        }
                    }
                    if s > 0 {
                        let sys: Vec<Vec<f64>> = rows.iter().map(|&r| basic.iter().map(|&j| a[r][j]).collect()).collect();
                        let rhs: Vec<f64> = rows
                            .iter()
                            .map(|&r| b[r] - free.iter().map(|&j| a[r][j] * x[j]).sum::<f64>())
                            .collect();
                        let Some(xb) = solve(sys, rhs) else { continue };
                        for (&j, v) in basic.iter().zip(xb) {
                            x[j] = v;
                        }
                    }
                    let ok = x.iter().zip(u).all(|(&v, &cap)| v >= -1e-10 && v <= cap + 1e-10)
                        && a.iter().zip(b).all(|(row, &bi)| row.iter().zip(&x).map(|(p, v)| p * v).sum::<f64>() <= bi + 1e-10);
                    if ok {
                        best = best.max(c.iter().zip(&x).map(|(p, v)| p * v).sum());
                    }
                }
            }
        }
    }
    best
}

/// L(1, chi_-4) = 1 - 1/3 + 1/5 - ..., averaging two consecutive partial
/// sums to cancel the leading error term.
pub fn leibniz(terms: usize) -> f64 {
    let mut s = 0.0;
    let mut prev = 0.0;
    for k in 0..terms {
        prev = s;
        let t = 1.0 / (2 * k + 1) as f64;
        s += if k % 2 == 0 { t } else { -t };
    }
    (s + prev) / 2.0
}

pub fn random_element<R: Rng>(k: &FieldOrder, rng: &mut R, span: i64) -> OrderElement {
    loop {
        let coords: Vec<BigInt> = (0..k.degree()).map(|_| BigInt::from(rng.gen_range(-span..=span))).collect();
        let e = k.element(coords).unwrap();
        if !e.is_zero() {
            return e;
        }
    }
}
