//! Python bindings for `towerbs`.
//!
//! Elements are passed as polynomial strings in `xi` (or `x`), e.g.
//! `"-9xi^5+6xi^4-13xi^3+44xi^2+31xi-12"`. Reports come back as JSON text.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use towerbs::arith::Real;
use towerbs::bounds::table::{emit_table, TableConfig, TableInput};
use towerbs::bounds::{self, Alpha, InequalityCoefficients, PhiVector};
use towerbs::field::order::{FieldOrder, OrderElement};
use towerbs::field::quadratic::{ExtensionKind, QuadraticExtension};
use towerbs::field::{place_tally, verify_prime_element};
use towerbs::input::{parse_poly, InputDocument};
use towerbs::pipeline::{bundled, cmd_verify};
use towerbs::tower::Arch;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn element(k: &FieldOrder, s: &str) -> PyResult<OrderElement> {
    let p = parse_poly(s).map_err(err)?;
    if p.degree().is_some_and(|d| d >= k.degree()) {
        return Err(err("element degree must be below the field degree"));
    }
    Ok(k.from_poly(&p))
}

/// A monogenic order Z[xi] with xi a root of a monic integer polynomial.
#[pyclass(module = "towerbs_py", frozen)]
struct Field {
    inner: FieldOrder,
}

#[pymethods]
impl Field {
    #[new]
    fn new(poly: &str) -> PyResult<Self> {
        let p = parse_poly(poly).map_err(err)?;
        Ok(Field { inner: FieldOrder::new(p).map_err(err)? })
    }

    #[getter]
    fn degree(&self) -> usize {
        self.inner.degree()
    }

    #[getter]
    fn signature(&self) -> (usize, usize) {
        self.inner.signature()
    }

    #[getter]
    fn disc(&self) -> BigInt {
        self.inner.disc().clone()
    }

    fn norm(&self, x: &str) -> PyResult<BigInt> {
        self.inner.norm(&element(&self.inner, x)?).map_err(err)
    }

    fn mul(&self, a: &str, b: &str) -> PyResult<String> {
        Ok(self.inner.mul(&element(&self.inner, a)?, &element(&self.inner, b)?).to_string())
    }

    /// The prime ideal generated by `x` as "(p, g)", or ValueError.
    fn prime_ideal(&self, x: &str) -> PyResult<String> {
        Ok(verify_prime_element(&self.inner, &element(&self.inner, x)?).map_err(err)?.to_string())
    }

    fn __repr__(&self) -> String {
        format!("Field({})", self.inner.poly())
    }
}

/// K = k(sqrt(eta)).
#[pyclass(module = "towerbs_py", frozen)]
struct Extension {
    inner: QuadraticExtension,
}

#[pymethods]
impl Extension {
    #[new]
    fn new(field: &Field, eta: &str) -> PyResult<Self> {
        let e = element(&field.inner, eta)?;
        Ok(Extension { inner: QuadraticExtension::new(field.inner.clone(), e).map_err(err)? })
    }

    #[getter]
    fn abs_disc(&self) -> BigInt {
        self.inner.abs_disc.clone()
    }

    #[getter]
    fn genus(&self) -> f64 {
        self.inner.genus.to_f64()
    }

    #[getter]
    fn t(&self) -> usize {
        self.inner.t()
    }

    #[getter]
    fn signature(&self) -> (usize, usize) {
        self.inner.signature
    }

    #[getter]
    fn kind(&self) -> &'static str {
        match self.inner.kind {
            ExtensionKind::TotallyComplex => "totally_complex",
            ExtensionKind::TotallyReal => "totally_real",
            ExtensionKind::Mixed => "mixed",
        }
    }

    /// {q: number of places of K of norm q} for q <= bound.
    fn splitting(&self, bound: u64) -> PyResult<BTreeMap<u64, usize>> {
        let t = place_tally(&self.inner, bound).map_err(err)?;
        Ok(t.counts.into_iter().filter(|(_, c)| *c > 0).collect())
    }
}

fn phi_vector(phi: BTreeMap<String, f64>) -> PyResult<PhiVector> {
    let mut v = PhiVector::new();
    for (k, x) in phi {
        let a = match k.as_str() {
            "R" => Alpha::Arch(Arch::Real),
            "C" => Alpha::Arch(Arch::Complex),
            q => Alpha::Q(q.parse().map_err(|_| err(format!("bad index {q}")))?),
        };
        let r = Real::parse_decimal(&x.to_string()).ok_or_else(|| err(format!("bad value {x}")))?;
        v.set(a, r);
    }
    Ok(v)
}

/// Brauer-Siegel ratio of a phi vector keyed by "R", "C" or a prime power.
#[pyfunction]
fn bs_ratio(phi: BTreeMap<String, f64>) -> PyResult<f64> {
    Ok(bounds::bs_ratio(&phi_vector(phi)?).map_err(err)?.to_f64())
}

/// Left side of the GRH basic inequality.
#[pyfunction]
fn basic_inequality_lhs(phi: BTreeMap<String, f64>) -> PyResult<f64> {
    Ok(bounds::basic_inequality_lhs(&phi_vector(phi)?, &InequalityCoefficients::grh()).map_err(err)?.to_f64())
}

/// Verify an input document; returns the JSON report.
#[pyfunction]
fn verify_document(text: &str) -> PyResult<String> {
    let doc = InputDocument::parse(text).map_err(err)?;
    Ok(cmd_verify("document", &doc, &InequalityCoefficients::grh()).map_err(err)?.report.to_json())
}

/// Verify a bundled example (1 or 2); returns the JSON report.
#[pyfunction]
fn verify_example(n: u8) -> PyResult<String> {
    let text = bundled(n).ok_or_else(|| err(format!("no example {n}")))?;
    let doc = InputDocument::parse(text).map_err(err)?;
    Ok(cmd_verify(&format!("example {n}"), &doc, &InequalityCoefficients::grh()).map_err(err)?.report.to_json())
}

/// Text of a bundled example document.
#[pyfunction]
fn example_document(n: u8) -> PyResult<&'static str> {
    bundled(n).ok_or_else(|| err(format!("no example {n}")))
}

/// The summary table built from both bundled examples.
#[pyfunction]
fn table() -> PyResult<String> {
    let mut inputs = Vec::new();
    for n in [1u8, 2] {
        let doc = InputDocument::parse(bundled(n).unwrap_or_default()).map_err(err)?;
        let v = cmd_verify(&format!("example {n}"), &doc, &InequalityCoefficients::grh()).map_err(err)?;
        if let (Some(ext), Some(b)) = (v.ext, v.bounds) {
            inputs.push(TableInput { label: format!("example {n}"), kind: ext.kind, bounds: b });
        }
    }
    Ok(emit_table(&inputs, &TableConfig::default_literals()).text)
}

#[pymodule]
fn towerbs_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Field>()?;
    m.add_class::<Extension>()?;
    m.add_function(wrap_pyfunction!(bs_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(basic_inequality_lhs, m)?)?;
    m.add_function(wrap_pyfunction!(verify_document, m)?)?;
    m.add_function(wrap_pyfunction!(verify_example, m)?)?;
    m.add_function(wrap_pyfunction!(example_document, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    Ok(())
}
