//! Linear-programming upper bound for the Brauer-Siegel ratio of a tower.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::formula::{bs_ratio, log_q_ratio, Alpha, InequalityCoefficients, PhiVector};
use super::simplex::{maximize, LpSolution};
use crate::arith::real::format_rational;
use crate::arith::Real;
use crate::error::{Error, Result};
use crate::field::places::PlaceTally;
use crate::tower::{Arch, PhiInterval};

/// Significant digits kept when transcendental coefficients enter the LP.
pub const LP_DIGITS: u32 = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    /// Every coefficient rounded so the optimum can only grow.
    Outward,
    /// The opposite direction, for auditing rounding sensitivity.
    Inward,
}

#[derive(Clone, Debug, Serialize)]
pub struct LpRow {
    pub name: String,
    #[serde(skip)]
    pub coeffs: Vec<BigRational>,
    #[serde(skip)]
    pub rhs: BigRational,
}

/// maximize constant + objective.phi subject to rows.
#[derive(Clone, Debug, Serialize)]
pub struct LpModel {
    pub vars: Vec<u64>,
    #[serde(skip)]
    pub objective: Vec<BigRational>,
    #[serde(skip)]
    pub constant: BigRational,
    pub rows: Vec<LpRow>,
}

/// Archimedean data of the tower fed into the LP.
#[derive(Clone, Debug)]
pub struct ArchBounds {
    pub real: (Real, Real),
    pub complex: (Real, Real),
}

impl ArchBounds {
    pub fn from_intervals(ivs: &[PhiInterval]) -> Self {
        let mut out = ArchBounds {
            real: (Real::from_int(0), Real::from_int(0)),
            complex: (Real::from_int(0), Real::from_int(0)),
        };
        for iv in ivs {
            let slot = match iv.alpha {
                Arch::Real => &mut out.real,
                Arch::Complex => &mut out.complex,
            };
            *slot = (iv.lo.clone(), iv.hi.clone());
        }
        out
    }

    /// Degenerate interval [c, c] for phi_C.
    pub fn complex_point(c: Real) -> Self {
        ArchBounds {
            real: (Real::from_int(0), Real::from_int(0)),
            complex: (c.clone(), c),
        }
    }
}

fn up(r: &Real, mode: Rounding) -> BigRational {
    let (lo, hi) = r.decimal_enclosure(LP_DIGITS);
    match mode {
        Rounding::Outward => hi,
        Rounding::Inward => lo,
    }
}

fn down(r: &Real, mode: Rounding) -> BigRational {
    let flip = match mode {
        Rounding::Outward => Rounding::Inward,
        Rounding::Inward => Rounding::Outward,
    };
    up(r, flip)
}

fn smallest_prime_factor(q: u64) -> u64 {
    (2..=q).find(|d| q % d == 0).unwrap_or(q)
}

fn exponent_of(q: u64, p: u64) -> u64 {
    let (mut m, mut x) = (0, q);
    while x % p == 0 {
        x /= p;
        m += 1;
    }
    m
}

/// Assemble the LP: one variable per prime power q <= bound with a place
/// of K of norm q; rows are the basic inequality (archimedean part at the
/// lower endpoints), caps phi_q <= N_q/g, and per-prime
/// sum m phi_{p^m} <= phi_R + 2 phi_C at the upper endpoints.
pub fn build_model(
    tally: &PlaceTally,
    arch: &ArchBounds,
    g: &Real,
    bound: u64,
    ineq: &InequalityCoefficients,
    mode: Rounding,
) -> LpModel {
    let vars: Vec<u64> = tally
        .counts
        .iter()
        .filter(|(&q, &c)| q <= bound && c > 0)
        .map(|(&q, _)| q)
        .collect();
    let n = vars.len();
    let zero = BigRational::zero();
    let two = Real::from_int(2);
    let objective = vars.iter().map(|&q| up(&log_q_ratio(q), mode)).collect();
    let constant = up(
        &(&(&Real::from_int(1) - &(&arch.real.0 * &two.ln())) - &(&arch.complex.0 * &(&two * &Real::pi()).ln())),
        mode,
    );
    let mut rows = Vec::new();
    let bi_rhs = &(&Real::from_int(1) - &(&arch.real.0 * &ineq.arch_real)) - &(&arch.complex.0 * &ineq.arch_complex);
    rows.push(LpRow {
        name: "basic inequality".into(),
        coeffs: vars.iter().map(|&q| down(&ineq.finite_coeff(q), mode)).collect(),
        rhs: up(&bi_rhs, mode),
    });
    for (j, &q) in vars.iter().enumerate() {
        let mut coeffs = vec![zero.clone(); n];
        coeffs[j] = BigRational::from_integer(1.into());
        let cap = &Real::from_int(tally.count(q) as i64) / g;
        rows.push(LpRow {
            name: format!("cap {q}"),
            coeffs,
            rhs: up(&cap, mode),
        });
    }
    let per_prime_rhs = up(&(&arch.real.1 + &(&two * &arch.complex.1)), mode);
    let mut primes: BTreeMap<u64, Vec<BigRational>> = BTreeMap::new();
    for (j, &q) in vars.iter().enumerate() {
        let p = smallest_prime_factor(q);
        let row = primes.entry(p).or_insert_with(|| vec![zero.clone(); n]);
        row[j] = BigRational::from_integer(exponent_of(q, p).into());
    }
    for (p, coeffs) in primes {
        rows.push(LpRow {
            name: format!("prime {p}"),
            coeffs,
            rhs: per_prime_rhs.clone(),
        });
    }
    LpModel {
        vars,
        objective,
        constant,
        rows,
    }
}

pub fn solve_model(model: &LpModel) -> Result<LpSolution> {
    let a: Vec<Vec<BigRational>> = model.rows.iter().map(|r| r.coeffs.clone()).collect();
    let b: Vec<BigRational> = model.rows.iter().map(|r| r.rhs.clone()).collect();
    maximize(&model.objective, &a, &b)
}

/// Proof that no prime power above the cutoff could raise the optimum:
/// with y the dual of the basic inequality, log(q/(q-1)) < 1/(q-1) <=
/// y log q/(sqrt q - 1) whenever y >= 1/((sqrt q + 1) log q), and the
/// right side decreases in q.
#[derive(Clone, Debug, Serialize)]
pub struct ExclusionCertificate {
    pub cutoff: u64,
    pub dual_basic_inequality: String,
    pub required: String,
    pub valid: bool,
}

pub fn exclusion_certificate(sol: &LpSolution, bound: u64) -> ExclusionCertificate {
    let y = sol.duals.first().cloned().unwrap_or_default();
    let q = Real::from_int(bound as i64 + 1);
    let need = (&(&q.sqrt() + &Real::from_int(1)) * &q.ln()).recip();
    ExclusionCertificate {
        cutoff: bound,
        dual_basic_inequality: format_rational(&y, 12),
        required: need.fmt_fixed(12),
        valid: &y >= need.hi(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BsBounds {
    pub bsl: Real,
    pub bsu: Real,
    pub optimum: PhiVector,
    pub binding: Vec<String>,
    pub exclusion: ExclusionCertificate,
    /// Every positive phi_q sits at its cap or the basic inequality binds.
    pub complementary_slackness: bool,
    /// |bsu(outward) - bsu(inward)|.
    pub rounding_gap: String,
    #[serde(skip)]
    pub rounding_gap_value: BigRational,
}

/// BSL from the archimedean upper endpoints alone.
pub fn lower_bound(arch: &ArchBounds) -> Result<Real> {
    let phi = PhiVector::new()
        .with(Alpha::Arch(Arch::Real), arch.real.1.clone())
        .with(Alpha::Arch(Arch::Complex), arch.complex.1.clone());
    bs_ratio(&phi)
}

pub fn lp_upper_bound(
    tally: &PlaceTally,
    arch: &ArchBounds,
    g: &Real,
    bound: u64,
    ineq: &InequalityCoefficients,
) -> Result<BsBounds> {
    let model = build_model(tally, arch, g, bound, ineq, Rounding::Outward);
    let sol = solve_model(&model)?;
    let inward_model = build_model(tally, arch, g, bound, ineq, Rounding::Inward);
    let inward = solve_model(&inward_model)?;
    let bsu_q = &model.constant + &sol.objective;
    let gap = (&bsu_q - (&inward_model.constant + &inward.objective)).abs();

    let mut optimum = PhiVector::new();
    for (q, x) in model.vars.iter().zip(&sol.x) {
        if x.is_positive() {
            optimum.set(Alpha::Q(*q), Real::exact(x.clone()));
        }
    }
    optimum.set(Alpha::Arch(Arch::Real), arch.real.0.clone());
    optimum.set(Alpha::Arch(Arch::Complex), arch.complex.0.clone());

    let binding: Vec<String> = model
        .rows
        .iter()
        .zip(&sol.slacks)
        .filter(|(_, s)| s.is_zero())
        .map(|(r, _)| r.name.clone())
        .collect();
    let bi_binds = sol.slacks.first().is_some_and(|s| s.is_zero());
    let complementary_slackness = model.vars.iter().enumerate().all(|(j, _)| {
        let x = &sol.x[j];
        x.is_zero() || sol.slacks[1 + j].is_zero() || bi_binds
    });
    let bsl = lower_bound(arch)?;
    if bsl.hi() > &bsu_q {
        return Err(Error::Invalid("lower bound exceeds upper bound".into()));
    }
    Ok(BsBounds {
        bsl,
        bsu: Real::exact(bsu_q),
        optimum,
        binding,
        exclusion: exclusion_certificate(&sol, bound),
        complementary_slackness,
        rounding_gap: format_rational(&gap, 30),
        rounding_gap_value: gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn empty_tally() -> PlaceTally {
        PlaceTally {
            bound: 100,
            counts: BTreeMap::new(),
            n_real: 0,
            n_complex: 12,
            primes: BTreeMap::new(),
        }
    }

    #[test]
    fn no_finite_places() {
        let c = Real::parse_decimal("0.2").unwrap();
        let arch = ArchBounds::complex_point(c.clone());
        let b = lp_upper_bound(&empty_tally(), &arch, &Real::from_int(25), 100, &InequalityCoefficients::grh()).unwrap();
        let expect = 1.0 - 0.2 * (2.0 * std::f64::consts::PI).ln();
        assert!((b.bsu.to_f64() - expect).abs() < 1e-15);
        assert!((b.bsl.to_f64() - expect).abs() < 1e-15);
        assert!(b.bsl.le(&b.bsu));
    }

    #[test]
    fn single_variable_hits_cap_or_budget() {
        let mut t = empty_tally();
        t.counts.insert(7, 1);
        let arch = ArchBounds::complex_point(Real::parse_decimal("0.2").unwrap());
        let b = lp_upper_bound(&t, &arch, &Real::from_int(25), 100, &InequalityCoefficients::grh()).unwrap();
        let phi7 = b.optimum.get(Alpha::Q(7)).to_f64();
        assert!((phi7 - 0.04).abs() < 1e-12);
        assert!(b.binding.contains(&"cap 7".to_string()));
        assert!(b.complementary_slackness);
    }

    #[test]
    fn helpers() {
        assert_eq!(smallest_prime_factor(49), 7);
        assert_eq!(exponent_of(64, 2), 6);
    }
}
