//! Dense two-phase simplex over exact rationals with Bland's rule.
//!
//! Solves: maximize c.x subject to A x <= b, x >= 0.

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub x: Vec<BigRational>,
    pub objective: BigRational,
    /// Dual value of each row, all nonnegative.
    pub duals: Vec<BigRational>,
    /// b - A x for each row.
    pub slacks: Vec<BigRational>,
}

struct Tableau {
    t: Vec<Vec<BigRational>>,
    obj: Vec<BigRational>,
    basis: Vec<usize>,
    allowed: Vec<bool>,
}

impl Tableau {
    fn width(&self) -> usize {
        self.obj.len() - 1
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.t[r][c].recip();
        for v in self.t[r].iter_mut() {
            *v *= &inv;
        }
        let prow = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let k = row[c].clone();
                for (v, p) in row.iter_mut().zip(&prow) {
                    if !p.is_zero() {
                        *v -= &k * p;
                    }
                }
            }
        }
        if !self.obj[c].is_zero() {
            let k = self.obj[c].clone();
            for (v, p) in self.obj.iter_mut().zip(&prow) {
                if !p.is_zero() {
                    *v -= &k * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Run Bland's rule to optimality on the current objective row.
    fn run(&mut self) -> Result<()> {
        let w = self.width();
        loop {
            let enter = (0..w).find(|&j| self.allowed[j] && self.obj[j].is_negative());
            let Some(c) = enter else { return Ok(()) };
            let mut best: Option<(usize, BigRational)> = None;
            for (i, row) in self.t.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[w] / &row[c];
                    let better = match &best {
                        None => true,
                        Some((bi, br)) => ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi]),
                    };
                    if better {
                        best = Some((i, ratio));
                    }
                }
            }
            let (r, _) = best.ok_or(Error::Unbounded)?;
            self.pivot(r, c);
        }
    }

    fn set_objective(&mut self, cost: &[BigRational]) {
        // obj[j] = z_j - c_j with z = c_B B^-1 A
        let w = self.width();
        let mut obj: Vec<BigRational> = (0..=w)
            .map(|j| if j < w { -cost[j].clone() } else { BigRational::zero() })
            .collect();
        for (i, &b) in self.basis.iter().enumerate() {
            if !cost[b].is_zero() {
                for (v, a) in obj.iter_mut().zip(&self.t[i]) {
                    *v += &cost[b] * a;
                }
            }
        }
        self.obj = obj;
    }
}

pub fn maximize(c: &[BigRational], a: &[Vec<BigRational>], b: &[BigRational]) -> Result<LpSolution> {
    let n = c.len();
    let m = a.len();
    if b.len() != m || a.iter().any(|r| r.len() != n) {
        return Err(Error::Invalid("inconsistent LP dimensions".into()));
    }
    let flipped: Vec<usize> = (0..m).filter(|&i| b[i].is_negative()).collect();
    let n_art = flipped.len();
    let w = n + m + n_art;
    let zero = BigRational::zero();
    let one = BigRational::from_integer(1.into());
    let mut t = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = vec![zero.clone(); w + 1];
        let s = if b[i].is_negative() { -one.clone() } else { one.clone() };
        for j in 0..n {
            row[j] = &a[i][j] * &s;
        }
        row[n + i] = s.clone();
        row[w] = &b[i] * &s;
        if let Some(k) = flipped.iter().position(|&f| f == i) {
            row[n + m + k] = one.clone();
            basis.push(n + m + k);
        } else {
            basis.push(n + i);
        }
        t.push(row);
    }
    let mut tab = Tableau {
        t,
        obj: vec![zero.clone(); w + 1],
        basis,
        allowed: vec![true; w],
    };
    if n_art > 0 {
        let cost: Vec<BigRational> = (0..w)
            .map(|j| if j >= n + m { -one.clone() } else { zero.clone() })
            .collect();
        tab.set_objective(&cost);
        tab.run()?;
        if tab.obj[w].is_negative() {
            return Err(Error::Infeasible);
        }
        // drive zero-level artificials out of the basis
        for r in 0..m {
            if tab.basis[r] >= n + m {
                if let Some(c) = (0..n + m).find(|&j| !tab.t[r][j].is_zero()) {
                    tab.pivot(r, c);
                }
            }
        }
        for j in n + m..w {
            tab.allowed[j] = false;
        }
    }
    let mut cost = vec![zero.clone(); w];
    cost[..n].clone_from_slice(c);
    tab.set_objective(&cost);
    tab.run()?;

    let mut x = vec![zero.clone(); n];
    for (r, &bv) in tab.basis.iter().enumerate() {
        if bv < n {
            x[bv] = tab.t[r][w].clone();
        }
    }
    let duals: Vec<BigRational> = (0..m).map(|i| tab.obj[n + i].clone()).collect();
    let slacks: Vec<BigRational> = (0..m)
        .map(|i| {
            let ax = a[i].iter().zip(&x).fold(zero.clone(), |acc, (p, q)| acc + p * q);
            &b[i] - ax
        })
        .collect();
    Ok(LpSolution {
        objective: tab.obj[w].clone(),
        x,
        duals,
        slacks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn v(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn textbook() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
        let s = maximize(&v(&[3, 5]), &[v(&[1, 0]), v(&[0, 2]), v(&[3, 2])], &v(&[4, 12, 18])).unwrap();
        assert_eq!(s.x, v(&[2, 6]));
        assert_eq!(s.objective, q(36, 1));
        assert_eq!(s.duals, vec![q(0, 1), q(3, 2), q(1, 1)]);
        assert_eq!(s.slacks, v(&[2, 0, 0]));
    }

    #[test]
    fn phase_one() {
        // x + y >= 2 written as -x - y <= -2; max -x - 2y -> x = 2
        let s = maximize(&v(&[-1, -2]), &[v(&[-1, -1]), v(&[1, 0])], &v(&[-2, 5])).unwrap();
        assert_eq!(s.x, v(&[2, 0]));
        assert_eq!(s.objective, q(-2, 1));
    }

    #[test]
    fn infeasible_and_unbounded() {
        assert_eq!(maximize(&v(&[1]), &[v(&[1]), v(&[-1])], &v(&[1, -2])), Err(Error::Infeasible));
        assert_eq!(maximize(&v(&[1, 0]), &[v(&[0, 1])], &v(&[1])), Err(Error::Unbounded));
    }

    #[test]
    fn degenerate_cycling_example() {
        // Beale's example cycles under the textbook rule, not under Bland's
        let c = vec![q(3, 4), q(-150, 1), q(1, 50), q(-6, 1)];
        let a = vec![
            vec![q(1, 4), q(-60, 1), q(-1, 25), q(9, 1)],
            vec![q(1, 2), q(-90, 1), q(-1, 50), q(3, 1)],
            vec![q(0, 1), q(0, 1), q(1, 1), q(0, 1)],
        ];
        let s = maximize(&c, &a, &v(&[0, 0, 1])).unwrap();
        assert_eq!(s.objective, q(1, 20));
    }
}
