mod common;

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{f, leibniz, q, random_element, vertex_max};
use towerbs::arith::{factor_mod_p, is_square_in_residue_field, isolate_real_roots, sturm_real_root_count, IntPoly, ModPoly, Quadratic, Real};
use towerbs::bounds::lp::{build_model, solve_model, ArchBounds, Rounding};
use towerbs::bounds::simplex::maximize;
use towerbs::bounds::{bs_ratio, residue_from_invariants, Alpha, InequalityCoefficients, KappaInvariants, PhiVector};
use towerbs::field::FieldOrder;
use towerbs::input::InputDocument;
use towerbs::pipeline::{bundled, cmd_verify};
use towerbs::tower::Arch;

fn poly_strategy(max_deg: usize) -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-9i64..=9, 2..=max_deg + 1)
        .prop_filter("nonconstant", |c| c.last().is_some_and(|&l| l != 0))
        .prop_map(|c| IntPoly::from_i64(&c))
}

fn field(e: u8) -> FieldOrder {
    let d = InputDocument::parse(bundled(e).unwrap()).unwrap();
    FieldOrder::new(d.poly("poly").unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn resultant_symmetry(a in poly_strategy(5), b in poly_strategy(5)) {
        let (m, n) = (a.degree().unwrap(), b.degree().unwrap());
        let ab = a.resultant(&b).unwrap();
        let ba = b.resultant(&a).unwrap();
        prop_assert_eq!(if m * n % 2 == 0 { ab } else { -ab }, ba);
    }

    #[test]
    fn discriminant_of_product(a in poly_strategy(4), b in poly_strategy(4)) {
        let r = a.resultant(&b).unwrap();
        let lhs = (&a * &b).discriminant().unwrap();
        prop_assert_eq!(lhs, a.discriminant().unwrap() * b.discriminant().unwrap() * &r * &r);
    }

    #[test]
    fn sturm_counts_constructed_roots(
        roots in prop::collection::btree_set(-20i64..=20, 0..6),
        c in 1i64..50,
        halves in any::<bool>(),
    ) {
        // prod (2x - r) or (x - r), times x^2 + c with no real roots
        let mut p = IntPoly::from_i64(&[c, 0, 1]);
        for &r in &roots {
            let lin = if halves { IntPoly::from_i64(&[-r, 2]) } else { IntPoly::from_i64(&[-r, 1]) };
            p = &p * &lin;
        }
        prop_assert_eq!(sturm_real_root_count(&p).unwrap(), roots.len());
        let ivs = isolate_real_roots(&p).unwrap();
        prop_assert_eq!(ivs.len(), roots.len());
        for (iv, &r) in ivs.iter().zip(&roots) {
            let x = if halves { q(r, 2) } else { q(r, 1) };
            prop_assert!(iv.lo < x && x <= iv.hi);
        }
    }

    #[test]
    fn factor_degrees_sum(a in poly_strategy(8), pi in 0usize..6) {
        let p = [2u64, 3, 5, 7, 11, 13][pi];
        let m = ModPoly::from_int_poly(&a, p);
        prop_assume!(m.degree().is_some_and(|d| d > 0));
        let fac = factor_mod_p(&a, p).unwrap();
        let total: usize = fac.factors.iter().map(|(g, e)| g.degree().unwrap() * e).sum();
        prop_assert_eq!(total, m.degree().unwrap());
        let mut prod = ModPoly::one(p);
        for (g, e) in &fac.factors {
            prop_assert!(g.is_irreducible());
            for _ in 0..*e {
                prod = prod.mul(g);
            }
        }
        prop_assert_eq!(prod, m.monic());
    }

    #[test]
    fn bs_ratio_monotone(v in 0u32..1000, dv in 1u32..1000, qi in 0usize..5) {
        let qq = [2u64, 3, 7, 9, 49][qi];
        let base = Real::from_ratio(v as i64, 1000);
        let more = Real::from_ratio((v + dv) as i64, 1000);
        let at = |x: &Real, a: Alpha| bs_ratio(&PhiVector::new().with(a, x.clone())).unwrap();
        prop_assert!(at(&base, Alpha::Q(qq)).lt(&at(&more, Alpha::Q(qq))));
        prop_assert!(at(&more, Alpha::Arch(Arch::Real)).lt(&at(&base, Alpha::Arch(Arch::Real))));
        prop_assert!(at(&more, Alpha::Arch(Arch::Complex)).lt(&at(&base, Alpha::Arch(Arch::Complex))));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn simplex_matches_vertex_enumeration(
        n in 1usize..=8,
        seed in any::<u64>(),
        m in 1usize..=3,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let c: Vec<BigRational> = (0..n).map(|_| q(rng.gen_range(-5..40), 11)).collect();
        let a: Vec<Vec<BigRational>> = (0..m).map(|_| (0..n).map(|_| q(rng.gen_range(-3..30), 7)).collect()).collect();
        let b: Vec<BigRational> = (0..m).map(|_| q(rng.gen_range(1..60), 3)).collect();
        let u: Vec<BigRational> = (0..n).map(|_| q(rng.gen_range(1..10), 5)).collect();
        let mut rows = a.clone();
        let mut rhs = b.clone();
        for (j, cap) in u.iter().enumerate() {
            let mut r = vec![q(0, 1); n];
            r[j] = q(1, 1);
            rows.push(r);
            rhs.push(cap.clone());
        }
        let exact = maximize(&c, &rows, &rhs).unwrap();
        let fl = |v: &[BigRational]| v.iter().map(f).collect::<Vec<f64>>();
        let oracle = vertex_max(&fl(&c), &a.iter().map(|r| fl(r)).collect::<Vec<_>>(), &fl(&b), &fl(&u));
        prop_assert!((f(&exact.objective) - oracle).abs() < 1e-9);
        // weak duality at the returned duals
        let dual_obj = exact.duals.iter().zip(&rhs).fold(q(0, 1), |s, (y, bi)| s + y * bi);
        prop_assert_eq!(dual_obj, exact.objective);
    }
}

#[test]
fn square_test_matches_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    use rand::Rng;
    for (p, d) in [(3u64, 1usize), (3, 2), (3, 3), (3, 5), (5, 2), (5, 3), (7, 1), (7, 2), (7, 3), (11, 2), (13, 2), (17, 2)] {
        if p.pow(d as u32) > 343 {
            continue;
        }
        let g = loop {
            let mut c: Vec<u64> = (0..d).map(|_| rng.gen_range(0..p)).collect();
            c.push(1);
            let g = ModPoly::new(p, c);
            if g.is_irreducible() {
                break g;
            }
        };
        let elems: Vec<ModPoly> = (0..p.pow(d as u32))
            .map(|mut i| {
                let mut c = Vec::new();
                for _ in 0..d {
                    c.push(i % p);
                    i /= p;
                }
                ModPoly::new(p, c)
            })
            .collect();
        let squares: BTreeSet<Vec<u64>> = elems.iter().map(|e| e.mul_mod(e, &g).coeffs().to_vec()).collect();
        for e in &elems {
            let want = if e.is_zero() {
                Quadratic::Zero
            } else if squares.contains(e.coeffs()) {
                Quadratic::Square
            } else {
                Quadratic::Nonsquare
            };
            assert_eq!(is_square_in_residue_field(&g, e).unwrap(), want, "p={p} d={d} e={e:?}");
        }
    }
}

#[test]
fn norm_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for e in [1, 2] {
        let k = field(e);
        for _ in 0..100 {
            let a = random_element(&k, &mut rng, 60);
            let b = random_element(&k, &mut rng, 60);
            assert_eq!(k.norm(&k.mul(&a, &b)).unwrap(), k.norm(&a).unwrap() * k.norm(&b).unwrap());
        }
    }
}

#[test]
fn fundamental_identity_in_both_towers() {
    for e in [1, 2] {
        let doc = InputDocument::parse(bundled(e).unwrap()).unwrap();
        let v = cmd_verify("t", &doc, &InequalityCoefficients::grh()).unwrap();
        let t = v.tally.unwrap();
        assert_eq!(t.primes.len(), 25);
        for &p in t.primes.keys() {
            assert_eq!(t.degree_sum(p), Some(12), "p = {p} in example {e}");
        }
    }
}

#[test]
fn residues_against_series() {
    let inv = |r1, r2, h, w, d: i64| KappaInvariants { r1, r2, h, regulator: Real::from_int(1), w, disc: BigInt::from(d) };
    let rat = residue_from_invariants(&inv(1, 0, 1, 2, 1)).unwrap();
    assert!(rat.contains(&BigRational::from_integer(1.into())));
    let g = residue_from_invariants(&inv(0, 1, 1, 4, 4)).unwrap();
    assert!((g.to_f64() - leibniz(4000)).abs() < 1e-6);
}

#[test]
fn rounding_direction_audit() {
    // outward and inward 60-digit models of example 1 agree far below 1e-20
    let doc = InputDocument::parse(bundled(1).unwrap()).unwrap();
    let v = cmd_verify("t", &doc, &InequalityCoefficients::grh()).unwrap();
    let ext = v.ext.unwrap();
    let tally = v.tally.unwrap();
    let b = v.bounds.unwrap();
    let limit = towerbs::tower::genus_ratio_limit(&ext.genus, 12, &[BigInt::from(9)]);
    let arch = ArchBounds::from_intervals(&towerbs::tower::phi_intervals(&limit, ext.kind).unwrap());
    let grh = InequalityCoefficients::grh();
    let out = build_model(&tally, &arch, &ext.genus, 100, &grh, Rounding::Outward);
    let inw = build_model(&tally, &arch, &ext.genus, 100, &grh, Rounding::Inward);
    let so = &out.constant + solve_model(&out).unwrap().objective;
    let si = &inw.constant + solve_model(&inw).unwrap().objective;
    assert!(si <= so);
    let tiny = BigRational::new(1.into(), num_traits::pow(BigInt::from(10), 20));
    assert!(&so - &si < tiny);
    assert_eq!(b.bsu.mid(), so);
}
