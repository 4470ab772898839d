//! Python bindings: complexes are wrapped in a `Complex` class, reports
//! come back as plain dicts and lists so the Python side needs no extra
//! types.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use koszul::chiral::{
    build_chiral_janus, build_weight_complex, tensor_decomposition_check, verify_homotopy,
    ChiralKind, ChiralSpec,
};
use koszul::classical::{
    koszul_complex, sphere_complex, KoszulSpec, KoszulVariant, SphereSide, SphereSpec,
};
use koszul::complex::GradedComplex;
use koszul::io::{complex_from_json, complex_to_json};
use koszul::multivar::{
    build_multivar_complex, local_cohomology_check, power_koszul, power_koszul_zero,
    MultivarVariant, PowerKoszulSpec,
};
use koszul::verify::{run_suite_with, vn_dimension_series, Suite};

fn err(e: koszul::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

#[pyclass(frozen)]
struct Complex {
    inner: GradedComplex,
}

#[pymethods]
impl Complex {
    /// Degree window (a, b).
    #[getter]
    fn window(&self) -> (i64, i64) {
        self.inner.window()
    }

    #[getter]
    fn left_closed(&self) -> bool {
        self.inner.left_closed()
    }

    #[getter]
    fn right_closed(&self) -> bool {
        self.inner.right_closed()
    }

    fn dims(&self) -> BTreeMap<i64, usize> {
        self.inner.dims()
    }

    fn labels(&self, degree: i64) -> Vec<String> {
        self.inner.labels(degree).to_vec()
    }

    fn trusted_degrees(&self) -> Vec<i64> {
        self.inner.trusted_degrees()
    }

    fn check_d_squared(&self) -> bool {
        self.inner.check_d_squared().pass()
    }

    /// Cohomology dimensions on trusted degrees.
    fn cohomology(&self) -> PyResult<BTreeMap<i64, usize>> {
        Ok(self.inner.cohomology(false).map_err(err)?.dims)
    }

    /// Representatives as `{degree: [[(coefficient, label), ...], ...]}`
    /// with coefficients rendered as `p/q` strings.
    fn representatives(&self) -> PyResult<BTreeMap<i64, Vec<Vec<(String, String)>>>> {
        let h = self.inner.cohomology(true).map_err(err)?;
        Ok(h.reps
            .into_iter()
            .map(|(i, vs)| {
                let vs = vs
                    .into_iter()
                    .map(|v| v.into_iter().map(|(c, l)| (c.to_string(), l)).collect())
                    .collect();
                (i, vs)
            })
            .collect())
    }

    fn is_acyclic(&self) -> PyResult<bool> {
        Ok(self.inner.cohomology(false).map_err(err)?.is_acyclic())
    }

    fn to_json(&self) -> String {
        complex_to_json(&self.inner)
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Complex> {
        Ok(Complex { inner: complex_from_json(s).map_err(err)? })
    }

    fn __repr__(&self) -> String {
        let (a, b) = self.inner.window();
        format!("Complex(window=({a}, {b}))")
    }
}

fn parse_chiral_kind(kind: &str) -> PyResult<ChiralKind> {
    match kind {
        "plain" => Ok(ChiralKind::Plain),
        "localized" => Ok(ChiralKind::Localized),
        "quotient" => Ok(ChiralKind::Quotient),
        "vn-only" => Ok(ChiralKind::VnOnly),
        _ => Err(PyValueError::new_err(format!("unknown chiral variant {kind:?}"))),
    }
}

#[pyfunction]
fn sphere(n: u32) -> PyResult<Complex> {
    Ok(Complex { inner: sphere_complex(&SphereSpec::Finite { n }).map_err(err)? })
}

#[pyfunction]
fn sphere_infinite(side: &str, window: (i64, i64)) -> PyResult<Complex> {
    let side = match side {
        "plus" => SphereSide::Plus,
        "minus" => SphereSide::Minus,
        "both" => SphereSide::Both,
        _ => return Err(PyValueError::new_err(format!("unknown side {side:?}"))),
    };
    Ok(Complex { inner: sphere_complex(&SphereSpec::Infinite { side, window }).map_err(err)? })
}

#[pyfunction]
#[pyo3(name = "koszul")]
fn koszul_line(variant: &str, window: (i64, i64)) -> PyResult<Complex> {
    let variant = match variant {
        "delta-plus" => KoszulVariant::DeltaPlus,
        "delta-minus" => KoszulVariant::DeltaMinus,
        "janus" => KoszulVariant::Janus,
        "loc-poly" => KoszulVariant::LocPoly,
        "loc-laurent" => KoszulVariant::LocLaurent,
        _ => return Err(PyValueError::new_err(format!("unknown koszul variant {variant:?}"))),
    };
    Ok(Complex { inner: koszul_complex(&KoszulSpec { variant, window }).map_err(err)? })
}

#[pyfunction]
#[pyo3(signature = (kind, weight, zero_window=4, vars=1))]
fn chiral(kind: &str, weight: i64, zero_window: i64, vars: u32) -> PyResult<Complex> {
    let kind = parse_chiral_kind(kind)?;
    let zero_window = if matches!(kind, ChiralKind::VnOnly) { 0 } else { zero_window };
    let spec = ChiralSpec::new(kind, weight, zero_window, vars).map_err(err)?;
    Ok(Complex { inner: build_weight_complex(&spec).map_err(err)? })
}

#[pyfunction]
#[pyo3(signature = (weight, zero_window=4, vars=1))]
fn chiral_janus(weight: i64, zero_window: i64, vars: u32) -> PyResult<Complex> {
    Ok(Complex { inner: build_chiral_janus(weight, zero_window, vars).map_err(err)? })
}

#[pyfunction]
#[pyo3(signature = (variant, weight, zero_window=4, vars=2))]
fn multivar(variant: &str, weight: i64, zero_window: i64, vars: u32) -> PyResult<Complex> {
    let variant = match variant {
        "plain" => MultivarVariant::Plain,
        "dual" => MultivarVariant::Dual,
        _ => return Err(PyValueError::new_err(format!("unknown multivar variant {variant:?}"))),
    };
    Ok(Complex {
        inner: build_multivar_complex(variant, weight, zero_window, vars).map_err(err)?,
    })
}

#[pyfunction]
#[pyo3(signature = (exponents, weight=0, zero_window=2))]
fn power_koszul_complex(exponents: Vec<i64>, weight: i64, zero_window: i64) -> PyResult<Complex> {
    let spec = PowerKoszulSpec::new(exponents, weight, zero_window).map_err(err)?;
    Ok(Complex { inner: power_koszul(&spec).map_err(err)? })
}

#[pyfunction]
#[pyo3(signature = (vars=1, weight=0, zero_window=2))]
fn power_koszul_zero_control(vars: u32, weight: i64, zero_window: i64) -> PyResult<Complex> {
    Ok(Complex { inner: power_koszul_zero(vars, weight, zero_window).map_err(err)? })
}

/// Certify `d g1 + g1 d = N id`; returns `(pass, dimension, first_failure)`.
#[pyfunction]
#[pyo3(signature = (kind, weight, zero_window=0, vars=1))]
fn homotopy_certificate(
    kind: &str,
    weight: i64,
    zero_window: i64,
    vars: u32,
) -> PyResult<(bool, usize, Option<String>)> {
    let spec = ChiralSpec::new(parse_chiral_kind(kind)?, weight, zero_window, vars).map_err(err)?;
    let cert = verify_homotopy(&spec).map_err(err)?;
    Ok((cert.pass(), cert.dimension, cert.first_failure))
}

#[pyfunction]
fn tensor_decomposition(weight: i64, zero_window: i64) -> PyResult<bool> {
    Ok(tensor_decomposition_check(weight, zero_window).map_err(err)?.pass())
}

/// Concentration, transition injectivity and the saturated dual count;
/// returns `(pass, top_dimension, dual_basis_count)`.
#[pyfunction]
#[pyo3(signature = (vars, m_max, weight=0, zero_window=2))]
fn local_cohomology(
    vars: u32,
    m_max: i64,
    weight: i64,
    zero_window: i64,
) -> PyResult<(bool, usize, usize)> {
    let r = local_cohomology_check(vars, m_max, weight, zero_window).map_err(err)?;
    Ok((r.pass(), r.top_dimension_at_window, r.dual_basis_count))
}

#[pyfunction]
fn dimension_series(vars: u32, max_n: usize) -> Vec<u64> {
    vn_dimension_series(vars, max_n)
}

/// Run a named suite; returns `[(name, pass, detail), ...]`.
#[pyfunction]
#[pyo3(signature = (suite="all", max_weight=3, max_n=5))]
fn run_suite(suite: &str, max_weight: i64, max_n: u32) -> PyResult<Vec<(String, bool, String)>> {
    let suite = match suite {
        "all" => Suite::All,
        "spheres" => Suite::Spheres,
        "koszul" => Suite::Koszul,
        "chiral" => Suite::Chiral,
        "multivar" => Suite::Multivar,
        _ => return Err(PyValueError::new_err(format!("unknown suite {suite:?}"))),
    };
    let report = run_suite_with(suite, max_weight, max_n);
    Ok(report.results.into_iter().map(|r| (r.name, r.pass, r.detail)).collect())
}

#[pymodule]
fn koszul_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Complex>()?;
    m.add_function(wrap_pyfunction!(sphere, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_infinite, m)?)?;
    m.add_function(wrap_pyfunction!(koszul_line, m)?)?;
    m.add_function(wrap_pyfunction!(chiral, m)?)?;
    m.add_function(wrap_pyfunction!(chiral_janus, m)?)?;
    m.add_function(wrap_pyfunction!(multivar, m)?)?;
    m.add_function(wrap_pyfunction!(power_koszul_complex, m)?)?;
    m.add_function(wrap_pyfunction!(power_koszul_zero_control, m)?)?;
    m.add_function(wrap_pyfunction!(homotopy_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(tensor_decomposition, m)?)?;
    m.add_function(wrap_pyfunction!(local_cohomology, m)?)?;
    m.add_function(wrap_pyfunction!(dimension_series, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
