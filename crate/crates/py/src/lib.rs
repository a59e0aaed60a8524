//! Python bindings. Numbers cross the boundary as `fractions.Fraction`;
//! inputs may be ints, floats (taken at their exact binary value), strings
//! such as `"3/4"` or `"1.5"`, or fractions.

use frechet1d::matrix::{decide_static, exact_distance};
use frechet1d::scaling::{decide_under_scaling, optimize_scaling};
use frechet1d::translation::{decide_under_translation, optimize_translation};
use frechet1d::{compute_extended_signature, Scalar};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyFloat};

fn scalar(x: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    if x.is_instance_of::<PyBool>() {
        return Err(PyValueError::new_err("expected a number, got a bool"));
    }
    if x.is_instance_of::<PyFloat>() {
        let v: f64 = x.extract()?;
        return Scalar::from_f64(v).ok_or_else(|| PyValueError::new_err(format!("not a finite number: {v}")));
    }
    let text = x.str()?.to_string();
    text.trim().parse().map_err(|e: frechet1d::Error| PyValueError::new_err(e.to_string()))
}

fn fraction<'py>(py: Python<'py>, v: &Scalar) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?.getattr("Fraction")?.call1((v.to_string(),))
}

fn value_error(e: frechet1d::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// An exact 1D time series with at least two vertices.
#[pyclass(frozen, name = "TimeSeries")]
struct TimeSeries(frechet1d::TimeSeries);

#[pymethods]
impl TimeSeries {
    #[new]
    fn new(values: Vec<Bound<'_, PyAny>>) -> PyResult<Self> {
        let v = values.iter().map(scalar).collect::<PyResult<Vec<_>>>()?;
        frechet1d::TimeSeries::new(v).map(TimeSeries).map_err(value_error)
    }

    fn values<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyAny>>> {
        self.0.values().iter().map(|v| fraction(py, v)).collect()
    }

    fn translate(&self, t: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(TimeSeries(self.0.translate(&scalar(t)?)))
    }

    fn scale(&self, s: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0.scale(&scalar(s)?).map(TimeSeries).map_err(value_error)
    }

    fn reverse(&self) -> Self {
        TimeSeries(self.0.reverse())
    }

    /// Indices of the extended δ-signature (0-based).
    fn signature(&self, delta: &Bound<'_, PyAny>) -> PyResult<Vec<usize>> {
        Ok(compute_extended_signature(&self.0, &scalar(delta)?).indices)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        let v: Vec<String> = self.0.values().iter().map(|x| x.to_string()).collect();
        format!("TimeSeries([{}])", v.join(", "))
    }
}

fn delta(d: &Bound<'_, PyAny>) -> PyResult<Scalar> {
    let d = scalar(d)?;
    if d.is_negative() {
        return Err(PyValueError::new_err("delta must be nonnegative"));
    }
    Ok(d)
}

/// Is `d_F(p, q) <= delta`?
#[pyfunction]
fn decide(p: &TimeSeries, q: &TimeSeries, delta: &Bound<'_, PyAny>) -> PyResult<bool> {
    Ok(decide_static(&p.0, &q.0, &self::delta(delta)?))
}

/// `d_F(p, q)` as a Fraction.
#[pyfunction]
fn distance<'py>(py: Python<'py>, p: &TimeSeries, q: &TimeSeries) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, &exact_distance(&p.0, &q.0))
}

fn maybe<'py>(py: Python<'py>, w: Option<Scalar>) -> PyResult<Option<Bound<'py, PyAny>>> {
    w.map(|w| fraction(py, &w)).transpose()
}

/// A translation `t` with `d_F(p, q + t) <= delta`, or None.
#[pyfunction]
fn decide_translation<'py>(
    py: Python<'py>,
    p: &TimeSeries,
    q: &TimeSeries,
    delta: &Bound<'_, PyAny>,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    let d = self::delta(delta)?;
    maybe(py, py.detach(|| decide_under_translation(&p.0, &q.0, &d).1))
}

/// `(min_t d_F(p, q + t), t)`.
#[pyfunction]
fn translation_distance<'py>(
    py: Python<'py>,
    p: &TimeSeries,
    q: &TimeSeries,
) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let (d, t) = py.detach(|| optimize_translation(&p.0, &q.0));
    Ok((fraction(py, &d)?, fraction(py, &t)?))
}

/// A scale `s >= 0` with `d_F(p, s·q) <= delta`, or None.
#[pyfunction]
fn decide_scaling<'py>(
    py: Python<'py>,
    p: &TimeSeries,
    q: &TimeSeries,
    delta: &Bound<'_, PyAny>,
) -> PyResult<Option<Bound<'py, PyAny>>> {
    let d = self::delta(delta)?;
    maybe(py, py.detach(|| decide_under_scaling(&p.0, &q.0, &d).1))
}

/// `(min_{s >= 0} d_F(p, s·q), s)`; scaling is applied to `q` only.
#[pyfunction]
fn scaling_distance<'py>(
    py: Python<'py>,
    p: &TimeSeries,
    q: &TimeSeries,
) -> PyResult<(Bound<'py, PyAny>, Bound<'py, PyAny>)> {
    let (d, s) = py.detach(|| optimize_scaling(&p.0, &q.0));
    Ok((fraction(py, &d)?, fraction(py, &s)?))
}

#[pymodule]
#[pyo3(name = "frechet1d")]
fn frechet1d_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<TimeSeries>()?;
    m.add_function(wrap_pyfunction!(decide, m)?)?;
    m.add_function(wrap_pyfunction!(distance, m)?)?;
    m.add_function(wrap_pyfunction!(decide_translation, m)?)?;
    m.add_function(wrap_pyfunction!(translation_distance, m)?)?;
    m.add_function(wrap_pyfunction!(decide_scaling, m)?)?;
    m.add_function(wrap_pyfunction!(scaling_distance, m)?)?;
    Ok(())
}
