//! Python bindings: the exact scalar type plus the classification, bound,
//! threshold, and verification entry points, returning plain dicts/lists.

use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::Value;

use kextremal::algebra::{parse_rational, Rational, Scalar as CoreScalar};
use kextremal::identities::{run_all, TrialConfig};
use kextremal::isoparametric::{
    enumerate_tori as core_enumerate_tori, extremality_residual, solve_g3, solve_g4, solve_g6,
};
use kextremal::pinching::{
    c1, c1_prime, c2, c3, epsilon as core_epsilon, sobolev_constants, verdict, EpsilonInputs,
    EpsilonVariant,
};
use kextremal::tensors::{catalog, PrincipalSpectrum};

fn value_err<E: std::fmt::Display>(err: E) -> PyErr {
    PyValueError::new_err(err.to_string())
}

fn json_to_py(py: Python<'_>, value: &Value) -> PyResult<Py<PyAny>> {
    Ok(match value {
        Value::Null => py.None(),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().unbind().into_any(),
        Value::Number(num) => {
            if let Some(i) = num.as_i64() {
                i.into_pyobject(py)?.unbind().into_any()
            } else {
                num.as_f64()
                    .unwrap_or(f64::NAN)
                    .into_pyobject(py)?
                    .unbind()
                    .into_any()
            }
        }
        Value::String(s) => s.into_pyobject(py)?.unbind().into_any(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.unbind().into_any()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (key, item) in map {
                dict.set_item(key, json_to_py(py, item)?)?;
            }
            dict.unbind().into_any()
        }
    })
}

fn serialize_to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let json = serde_json::to_value(value).map_err(value_err)?;
    json_to_py(py, &json)
}

fn parse_k(text: &str) -> PyResult<Rational> {
    let k = parse_rational(text).map_err(value_err)?;
    if k < Rational::from_integer(1.into()) {
        return Err(PyValueError::new_err(format!(
            "exponent k must satisfy k >= 1 (got {text})"
        )));
    }
    Ok(k)
}

/// Exact scalar in a quadratic extension of the rationals, with a tagged
/// float fallback.
#[pyclass(name = "Scalar", skip_from_py_object)]
#[derive(Clone)]
struct PyScalar {
    inner: CoreScalar,
}

#[pymethods]
impl PyScalar {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyScalar {
            inner: text.parse().map_err(value_err)?,
        })
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Scalar({:?})", self.inner.to_string())
    }

    fn __float__(&self) -> f64 {
        self.inner.to_f64()
    }

    fn __add__(&self, other: &PyScalar) -> PyScalar {
        PyScalar { inner: &self.inner + &other.inner }
    }

    fn __sub__(&self, other: &PyScalar) -> PyScalar {
        PyScalar { inner: &self.inner - &other.inner }
    }

    fn __mul__(&self, other: &PyScalar) -> PyScalar {
        PyScalar { inner: &self.inner * &other.inner }
    }

    fn __truediv__(&self, other: &PyScalar) -> PyResult<PyScalar> {
        self.inner
            .try_div(&other.inner)
            .map(|inner| PyScalar { inner })
            .map_err(|e| PyZeroDivisionError::new_err(e.to_string()))
    }

    fn __neg__(&self) -> PyScalar {
        PyScalar { inner: -self.inner.clone() }
    }

    fn __eq__(&self, other: &PyScalar) -> bool {
        self.inner == other.inner
    }

    fn __lt__(&self, other: &PyScalar) -> bool {
        self.inner.compare(&other.inner) == std::cmp::Ordering::Less
    }

    fn is_exact(&self) -> bool {
        self.inner.is_exact()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn sqrt(&self) -> PyResult<PyScalar> {
        self.inner
            .sqrt()
            .map(|inner| PyScalar { inner })
            .map_err(value_err)
    }
}

/// All admissible product tori for (n, k); k is a rational string like "3/2".
#[pyfunction]
fn enumerate_tori(py: Python<'_>, n: u32, k: &str) -> PyResult<Py<PyAny>> {
    let k = parse_k(k)?;
    serialize_to_py(py, &core_enumerate_tori(n, &k))
}

/// Classification for g distinct principal curvatures; mult is [m] or [m1, m2].
#[pyfunction]
fn classify(py: Python<'_>, g: u32, mult: Vec<u32>, k: &str) -> PyResult<Py<PyAny>> {
    let k = parse_k(k)?;
    match (g, mult.as_slice()) {
        (3, [m]) => serialize_to_py(py, &solve_g3(*m, &k).map_err(value_err)?),
        (4, [m1, m2]) => serialize_to_py(py, &solve_g4(*m1, *m2, &k).map_err(value_err)?),
        (6, [m]) => serialize_to_py(py, &solve_g6(*m, &k).map_err(value_err)?),
        _ => Err(PyValueError::new_err(format!(
            "unsupported (g, multiplicities) = ({g}, {mult:?})"
        ))),
    }
}

/// Extremality residual of a spectrum given as [(lambda, mult), ...].
#[pyfunction]
fn residual(spectrum: Vec<(String, u32)>, k: &str) -> PyResult<PyScalar> {
    let k = parse_k(k)?;
    let entries = spectrum
        .into_iter()
        .map(|(lambda, mult)| Ok((lambda.parse().map_err(value_err)?, mult)))
        .collect::<PyResult<Vec<(CoreScalar, u32)>>>()?;
    let spectrum = PrincipalSpectrum::new(entries);
    extremality_residual(&spectrum, &k)
        .map(|inner| PyScalar { inner })
        .map_err(value_err)
}

/// The four pinching bounds for (n, p, H, rho, k); c2 is None when n < 4.
#[pyfunction]
fn bounds(py: Python<'_>, n: u32, p: u32, h: &str, rho: &str, k: &str) -> PyResult<Py<PyAny>> {
    let k = parse_k(k)?;
    let h: CoreScalar = h.parse().map_err(value_err)?;
    let rho: CoreScalar = rho.parse().map_err(value_err)?;
    let dict = PyDict::new(py);
    dict.set_item("c1", serialize_to_py(py, &c1(n, p, &h, &rho, &k).map_err(value_err)?)?)?;
    dict.set_item(
        "c1_prime",
        serialize_to_py(py, &c1_prime(n, &h, &rho, &k).map_err(value_err)?)?,
    )?;
    let b2 = if n >= 4 {
        Some(c2(n, &h, &rho, &k).map_err(value_err)?)
    } else {
        None
    };
    dict.set_item("c2", serialize_to_py(py, &b2)?)?;
    dict.set_item("c3", serialize_to_py(py, &c3(n, p, &h, &k).map_err(value_err)?)?)?;
    Ok(dict.unbind().into_any())
}

/// Pinching report plus Euler-Lagrange residuals for a catalog model tag.
#[pyfunction]
fn model_check(py: Python<'_>, tag: &str, k: &str) -> PyResult<Py<PyAny>> {
    let k = parse_k(k)?;
    let model = catalog::from_tag(tag, &k).map_err(value_err)?;
    let report = verdict(&model, &k).map_err(value_err)?;
    let residuals = model.form().reduced_el_residual(&k).map_err(value_err)?;
    let dict = PyDict::new(py);
    dict.set_item("report", serialize_to_py(py, &report)?)?;
    dict.set_item("el_residuals", serialize_to_py(py, &residuals)?)?;
    dict.set_item(
        "extremal",
        residuals.iter().all(kextremal::algebra::Scalar::is_zero),
    )?;
    Ok(dict.unbind().into_any())
}

/// Integral-theorem threshold; variant in {sec, sec-n, ricci, scal, scal-lowk}.
#[pyfunction]
fn epsilon(
    py: Python<'_>,
    variant: &str,
    n: u32,
    p: u32,
    k: &str,
    h0_sq: f64,
    delta0: f64,
) -> PyResult<Py<PyAny>> {
    let variant = match variant {
        "sec" => EpsilonVariant::Sec,
        "sec-n" => EpsilonVariant::SecN,
        "ricci" => EpsilonVariant::Ricci,
        "scal" => EpsilonVariant::Scal,
        "scal-lowk" => EpsilonVariant::ScalLowk,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown variant `{other}`"
            )))
        }
    };
    let report = core_epsilon(&EpsilonInputs {
        variant,
        n,
        p,
        k: parse_k(k)?,
        h0_sq,
        delta0,
    })
    .map_err(value_err)?;
    serialize_to_py(py, &report)
}

/// Sobolev-type inequality constants (A, B, C(n), omega_n) for (n, t).
#[pyfunction]
fn sobolev(py: Python<'_>, n: u32, t: f64) -> PyResult<Py<PyAny>> {
    serialize_to_py(py, &sobolev_constants(n, t).map_err(value_err)?)
}

/// Run every lemma and identity suite; returns one report dict per tag.
#[pyfunction]
#[pyo3(signature = (trials=1000, seed=0, n_max=6, p_max=4, tolerance=1e-9))]
fn verify_lemmas(
    py: Python<'_>,
    trials: u64,
    seed: u64,
    n_max: usize,
    p_max: usize,
    tolerance: f64,
) -> PyResult<Py<PyAny>> {
    if trials == 0 {
        return Err(PyValueError::new_err("trials must be at least 1"));
    }
    let config = TrialConfig {
        trials,
        n_max: n_max.max(2),
        p_max: p_max.max(1),
        seed,
        entry_bound: 1.0,
        tolerance,
    };
    serialize_to_py(py, &run_all(&config))
}

#[pymodule]
fn kextremal_py(_py: Python<'_>, m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyScalar>()?;
    m.add_function(wrap_pyfunction!(enumerate_tori, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(residual, m)?)?;
    m.add_function(wrap_pyfunction!(bounds, m)?)?;
    m.add_function(wrap_pyfunction!(model_check, m)?)?;
    m.add_function(wrap_pyfunction!(epsilon, m)?)?;
    m.add_function(wrap_pyfunction!(sobolev, m)?)?;
    m.add_function(wrap_pyfunction!(verify_lemmas, m)?)?;
    Ok(())
}
