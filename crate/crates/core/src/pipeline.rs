//! End-to-end verification of an input document.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde_json::json;

use crate::bounds::lp::{lp_upper_bound, ArchBounds, BsBounds};
use crate::bounds::table::interval_cell;
use crate::bounds::{Alpha, InequalityCoefficients};
use crate::error::{Error, Result};
use crate::field::order::{FieldOrder, OrderElement};
use crate::field::places::{place_tally, PlaceTally};
use crate::field::primes::{verify_maximal, verify_prime_element, PrimeRef};
use crate::field::quadratic::{same_extension_by_norm, ExtensionKind, QuadraticExtension, Witness};
use crate::input::{parse_int_expr, InputDocument};
use crate::report::{Deviation, Report};
use crate::tower::{
    dgt_lower_bound, genus_ratio_limit, gs_certificate, phi_intervals, verify_tame_augmentation, Arch,
    AugmentationSpec, RamificationData, Verdict,
};

pub const EXAMPLE1: &str = include_str!("../data/example1.txt");
pub const EXAMPLE2: &str = include_str!("../data/example2.txt");

pub fn bundled(example: u8) -> Option<&'static str> {
    match example {
        1 => Some(EXAMPLE1),
        2 => Some(EXAMPLE2),
        _ => None,
    }
}

/// Everything computed while verifying a document.
pub struct Verified {
    pub report: Report,
    pub ext: Option<QuadraticExtension>,
    pub tally: Option<PlaceTally>,
    pub bounds: Option<BsBounds>,
}

impl Verified {
    fn stop(report: Report) -> Self {
        Verified { report, ext: None, tally: None, bounds: None }
    }
}

fn kind_name(k: ExtensionKind) -> &'static str {
    match k {
        ExtensionKind::TotallyComplex => "totally_complex",
        ExtensionKind::TotallyReal => "totally_real",
        ExtensionKind::Mixed => "mixed",
    }
}

struct Expect {
    values: BTreeMap<String, String>,
    tols: BTreeMap<String, String>,
}

impl Expect {
    fn str(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    /// Integer expectations normalized to decimal.
    fn int(&self, key: &str) -> Result<Option<String>> {
        self.str(key)
            .map(|s| parse_int_expr(s).map(|n| n.to_string()).map_err(Error::Invalid))
            .transpose()
    }

    fn f64(&self, key: &str) -> Result<Option<f64>> {
        self.str(key)
            .map(|s| s.parse().map_err(|_| Error::Invalid(format!("expect.{key}: not a number"))))
            .transpose()
    }

    fn tol(&self, key: &str) -> Result<f64> {
        match self.tols.get(key) {
            None => Ok(1e-4),
            Some(s) => s.parse().map_err(|_| Error::Invalid(format!("tol.{key}: not a number"))),
        }
    }
}

/// Expected norm encoded in a prime name: `pi.19'` -> 19.
fn subscript_norm(name: &str) -> Option<u64> {
    name.strip_prefix("pi.")?.trim_end_matches('\'').parse().ok()
}

/// Run the full verification. Malformed documents are errors; failed
/// checks are recorded as failing steps.
pub fn cmd_verify(label: &str, doc: &InputDocument, ineq: &InequalityCoefficients) -> Result<Verified> {
    let ex = Expect { values: doc.expectations(), tols: doc.tolerances() };
    let mut r = Report::new(label);

    let k = match FieldOrder::new(doc.poly("poly")?) {
        Ok(k) => k,
        Err(e) => {
            r.fail("discriminant", e.to_string());
            return Ok(Verified::stop(r));
        }
    };
    r.exact("discriminant", k.disc(), ex.int("disc")?.as_deref());
    match verify_maximal(&k) {
        Ok(ps) => r.info("maximal order", format!("index 1 at {ps:?}")),
        Err(e) => {
            r.fail("maximal order", e.to_string());
            return Ok(Verified::stop(r));
        }
    }
    let (r1, r2) = k.signature();
    r.exact("signature", format!("{r1},{r2}"), ex.str("signature"));

    // radicand
    let printed = doc.element(&k, "eta")?;
    let sign = doc.integer("eta_sign")?.unwrap_or_else(|| 1.into());
    let eta = match sign.to_i64() {
        Some(1) => printed.clone(),
        Some(-1) => {
            r.notes.push("the radicand is -eta: the listed factors and witness multiply to -eta, and -eta is negative at every real place".into());
            printed.neg()
        }
        _ => return Err(Error::Invalid("eta_sign must be 1 or -1".into())),
    };

    // prime elements
    let mut names: Vec<String> = doc.names("eta.factors");
    for e in &doc.entries {
        if e.key.starts_with("pi.") && !names.contains(&e.key) {
            names.push(e.key.clone());
        }
    }
    let mut certified = Vec::new();
    let mut bad = Vec::new();
    for n in &names {
        let x = doc.element(&k, n)?;
        match verify_prime_element(&k, &x) {
            Ok(q) if subscript_norm(n).is_none_or(|m| q.norm() == BigInt::from(m)) => certified.push((n.clone(), q)),
            Ok(q) => bad.push(format!("{n} has norm {}", q.norm())),
            Err(e) => bad.push(format!("{n}: {e}")),
        }
    }
    if !names.is_empty() {
        let mut distinct = true;
        for (i, (_, a)) in certified.iter().enumerate() {
            if certified[..i].iter().any(|(_, b)| a == b) {
                distinct = false;
            }
        }
        let listed: Vec<String> = certified.iter().map(|(n, q)| format!("{n}={q}")).collect();
        let pass = bad.is_empty() && distinct;
        r.push(crate::report::Step {
            name: "prime elements".into(),
            computed: format!("{} certified: {}", certified.len(), listed.join(" ")),
            expected: Some(format!("{} certified, distinct, norms as subscripted", names.len())),
            tolerance: Some("exact".into()),
            pass,
            note: (!pass).then(|| if bad.is_empty() { "repeated prime".into() } else { bad.join("; ") }),
        });
    }
    let eta_norm = k.norm(&eta)?.abs();
    r.exact("eta norm", &eta_norm, ex.int("eta_norm")?.as_deref());

    let factors = doc.names("eta.factors");
    if !factors.is_empty() {
        let xs: Vec<OrderElement> = factors.iter().map(|n| doc.element(&k, n)).collect::<Result<_>>()?;
        let prod = k.product(&xs)?;
        let (computed, pass) = if prod == eta {
            ("exact equality".to_string(), true)
        } else if doc.flag("unit_fallback") && k.associates(&prod, &eta)? {
            ("equal up to a unit".to_string(), true)
        } else {
            (format!("product {prod} differs from radicand {eta}"), false)
        };
        r.push(crate::report::Step {
            name: "product identity".into(),
            computed,
            expected: Some("exact equality".into()),
            tolerance: Some("exact".into()),
            pass,
            note: None,
        });
    }
    if let Some(alt) = doc.opt_element(&k, "eta_alt")? {
        let v = same_extension_by_norm(&k, &alt, &eta)?;
        r.info(
            "alternative radicand",
            match v {
                Some(false) => "N(eta_alt) N(eta) is not a square: different extension",
                _ => "norm test inconclusive",
            },
        );
    }

    // relative and absolute discriminant
    let ext = match QuadraticExtension::new(k.clone(), eta.clone()) {
        Ok(e) => e,
        Err(e) => {
            r.fail("relative discriminant", e.to_string());
            return Ok(Verified::stop(r));
        }
    };
    if let (Some(b), Some(g)) = (doc.opt_element(&k, "beta")?, doc.opt_element(&k, "gamma")?) {
        let w = Witness { beta: b, gamma: g };
        r.exact("witness", w.holds(&k, &eta), Some("true"));
    }
    let d_desc = if ext.rel.witness.is_some() { "(eta)" } else { "4^n (eta)" };
    r.info("relative discriminant", format!("{d_desc}, norm {}, t = {}", ext.rel.norm, ext.t()));
    r.exact("absolute discriminant", &ext.abs_disc, ex.int("abs_disc")?.as_deref());
    let genus_tol = ex.tol("genus")?;
    r.approx("genus", ext.genus.to_f64(), 5, ex.f64("genus")?, genus_tol);
    r.exact("extension kind", kind_name(ext.kind), ex.str("kind"));
    r.info("signature of K", format!("{},{}; rho = {}", ext.signature.0, ext.signature.1, ext.rho));

    // GS certificate
    let ram = RamificationData::from_extension(&ext);
    let d_empty = dgt_lower_bound(&ram);
    r.push(crate::report::Step {
        name: "d(G_empty) lower bound".into(),
        computed: d_empty.to_string(),
        expected: ex.str("dG_empty").map(str::to_string),
        tolerance: ex.str("dG_empty").map(|_| "exact".into()),
        pass: ex.str("dG_empty").is_none_or(|e| e == d_empty.to_string()),
        note: Some(format!(
            "{} - {} - {} + {} - {}",
            ram.t, ram.r1, ram.r2, ram.rho, ram.delta_ell
        )),
    });
    let (kr1, kr2) = ext.signature;
    let cert0 = gs_certificate(d_empty, kr1, kr2, 0, Vec::new());
    r.approx("GS threshold theta=0", cert0.threshold.to_f64(), 5, ex.f64("gs_threshold")?, ex.tol("gs_threshold")?);
    r.info(
        "GS threshold theta=1",
        format!("{:.5} (reported only)", gs_certificate(d_empty, kr1, kr2, 1, Vec::new()).threshold.to_f64()),
    );

    let mut t_places = Vec::new();
    let mut d_t = d_empty;
    if doc.entry("aug").is_some() {
        let aug = doc.element(&k, "aug")?;
        let prod_names = doc.names("aug.product");
        if !prod_names.is_empty() {
            let xs: Vec<OrderElement> = prod_names.iter().map(|n| doc.element(&k, n)).collect::<Result<_>>()?;
            r.exact("augmentation product", k.product(&xs)? == aug, Some("true"));
        }
        let new_prime = match doc.prime_ref(&k, doc.get("aug.new").unwrap_or_default())? {
            PrimeRef::Element(x) => x,
            PrimeRef::Ideal(..) => return Err(Error::Invalid("aug.new must name an element".into())),
        };
        let witness = match (doc.opt_element(&k, "aug.rho")?, doc.opt_element(&k, "aug.sigma")?) {
            (Some(beta), Some(gamma)) => Some(Witness { beta, gamma }),
            _ => None,
        };
        let spec = AugmentationSpec {
            aug,
            new_prime,
            old_primes: doc.prime_refs(&k, "aug.old")?,
            witness,
        };
        match verify_tame_augmentation(&ext, &spec) {
            Ok(a) => {
                let norms: Vec<String> = a.t_places.iter().map(|p| p.norm.to_string()).collect();
                r.info(
                    "augmentation",
                    format!("new prime {} ({:?} in K), T-place norms [{}]", a.new_prime, a.splitting, norms.join(", ")),
                );
                if let Some(e) = ex.int("t_norm")? {
                    let single = (a.t_places.len() == 1).then(|| a.t_places[0].norm.to_string());
                    r.exact("T-place norm", single.unwrap_or_else(|| norms.join(",")), Some(&e));
                }
                d_t = d_empty + 1;
                t_places = a.t_places;
            }
            Err(e) => r.fail("augmentation", e.to_string()),
        }
        r.exact("d(G_T) lower bound", d_t, ex.str("dG_T"));
    }
    let cert = gs_certificate(d_t, kr1, kr2, 0, t_places.clone());
    let verdict = |v: Verdict| if v == Verdict::Infinite { "infinite" } else { "inconclusive" };
    r.exact("GS verdict theta=0", verdict(cert.verdict), ex.str("verdict"));
    let cert1 = gs_certificate(d_t, kr1, kr2, 1, t_places.clone());
    r.info("GS verdict theta=1", format!("{} (reported only)", verdict(cert1.verdict)));

    // phi intervals
    let n = ext.degree();
    let t_norms: Vec<BigInt> = t_places.iter().map(|p| p.norm.clone()).collect();
    let limit = genus_ratio_limit(&ext.genus, n, &t_norms);
    let ivs = match phi_intervals(&limit, ext.kind) {
        Ok(v) => v,
        Err(e) => {
            r.fail("phi intervals", e.to_string());
            return Ok(Verified { report: r, ext: Some(ext), tally: None, bounds: None });
        }
    };
    let active = if ext.kind == ExtensionKind::TotallyReal { Arch::Real } else { Arch::Complex };
    for iv in ivs.iter().filter(|iv| iv.alpha == active) {
        let a = if active == Arch::Real { "R" } else { "C" };
        for (end, v) in [("lo", &iv.lo), ("hi", &iv.hi)] {
            let key = format!("phi_{a}.{end}");
            r.approx(&key, v.to_f64(), 6, ex.f64(&key)?, ex.tol(&key)?);
        }
    }

    // bounds
    let bound = doc.u64_or("bound", 100)?;
    let tally = place_tally(&ext, bound)?;
    let small: Vec<String> = tally
        .counts
        .iter()
        .filter(|(_, &c)| c > 0)
        .map(|(q, c)| format!("{q}:{c}"))
        .collect();
    r.info("place tally", small.join(" "));
    let arch = ArchBounds::from_intervals(&ivs);
    let b = match lp_upper_bound(&tally, &arch, &ext.genus, bound, ineq) {
        Ok(b) => b,
        Err(e) => {
            r.fail("BSU", e.to_string());
            return Ok(Verified { report: r, ext: Some(ext), tally: Some(tally), bounds: None });
        }
    };
    r.approx("BSL", b.bsl.to_f64(), 6, ex.f64("bsl")?, ex.tol("bsl")?);
    let bsu_tol = ex.tol("bsu")?;
    let bsu_expected = ex.f64("bsu")?;
    if !r.approx("BSU", b.bsu.to_f64(), 6, bsu_expected, bsu_tol) {
        let e = bsu_expected.unwrap_or_default();
        r.deviations.push(Deviation {
            step: "BSU".into(),
            expected: format!("{e} +/- {bsu_tol}"),
            computed: format!("{:.6}", b.bsu.to_f64()),
            diagnosis: bsu_diagnosis(&ext, &tally, bound, ineq, e, bsu_tol)?,
        });
    }
    for (key, _) in ex.values.iter().filter(|(k, _)| k.starts_with("phi.")) {
        let q: u64 = key[4..].parse().map_err(|_| Error::Invalid(format!("expect.{key}")))?;
        let v = b.optimum.get(Alpha::Q(q)).to_f64();
        r.approx(&format!("optimum {key}"), v, 6, ex.f64(key)?, ex.tol(key)?);
    }
    r.info("binding constraints", b.binding.join(", "));
    r.exact("exclusion certificate", b.exclusion.valid, Some("true"));
    r.exact("complementary slackness", b.complementary_slackness, Some("true"));
    let gap_ok = b.rounding_gap_value < num_rational::BigRational::new(1.into(), num_traits::pow(BigInt::from(10), 20));
    r.push(crate::report::Step {
        name: "rounding audit".into(),
        computed: b.rounding_gap.clone(),
        expected: Some("< 1e-20".into()),
        tolerance: None,
        pass: gap_ok,
        note: None,
    });
    r.exact("table cell", interval_cell(&b), ex.str("table_cell"));

    r.details = json!({
        "disc": k.disc().to_string(),
        "relative_disc_norm": ext.rel.norm.to_string(),
        "abs_disc": ext.abs_disc.to_string(),
        "genus": ext.genus.fmt_fixed(10),
        "gs": [cert, cert1],
        "phi_intervals": ivs,
        "tally": tally.counts.iter().map(|(q, c)| (q.to_string(), c)).collect::<BTreeMap<_, _>>(),
        "bounds": b,
    });
    Ok(Verified { report: r, ext: Some(ext), tally: Some(tally), bounds: Some(b) })
}

/// When BSU misses its target, find which T-norm sums log q (one place of
/// norm q) would land the LP inside the band.
fn bsu_diagnosis(
    ext: &QuadraticExtension,
    tally: &PlaceTally,
    bound: u64,
    ineq: &InequalityCoefficients,
    target: f64,
    tol: f64,
) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut hits = Vec::new();
    for q in 2..=bound {
        if crate::arith::modpoly::factor_integer(&BigInt::from(q))?.len() != 1 {
            continue;
        }
        let limit = genus_ratio_limit(&ext.genus, ext.degree(), &[BigInt::from(q)]);
        let arch = ArchBounds::from_intervals(&phi_intervals(&limit, ext.kind)?);
        let v = lp_upper_bound(tally, &arch, &ext.genus, bound, ineq)?.bsu.to_f64();
        if (v - target).abs() <= tol {
            hits.push(format!("{q} (BSU {v:.6})"));
        }
    }
    if hits.is_empty() {
        out.push(format!("no single T-place of norm q <= {bound} reaches the band"));
    } else {
        out.push(format!("T-place norms q <= {bound} that reach the band: {}", hits.join(", ")));
    }
    let eta_primes: Vec<String> = ext.rel.divisors.iter().map(|p| p.to_string()).collect();
    out.push(format!("primes already ramified in K/k: {}", eta_primes.join(" ")));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subscripts() {
        assert_eq!(subscript_norm("pi.19'"), Some(19));
        assert_eq!(subscript_norm("pi.3"), Some(3));
        assert_eq!(subscript_norm("x"), None);
    }

    #[test]
    fn bundled_documents_parse() {
        for e in [1, 2] {
            let d = InputDocument::parse(bundled(e).unwrap()).unwrap();
            assert!(d.get("poly").is_some());
        }
        assert!(bundled(3).is_none());
    }
}
