//! Python bindings for the exact vertex-operator realization.
//!
//! Scalars, Fock vectors and the realization are wrapped as classes; the
//! verification entry points return the JSON report decoded into a dict.

use num_bigint::BigInt;
use pyo3::exceptions::{PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyAny;

use svo::fock::{grade, parse_vector, FockVector};
use svo::lattice::check_quasi_cocycle_axioms;
use svo::qscalar::{self, ExactScalar, HalfExponent};
use svo::qseries::{self, TruncatedSeries};
use svo::verify::{self as core_verify, CheckConfig, Relation, VerificationReport, Verifier};
use svo::vertex::{parse_operators, BracketSpec, Normalization, Realization, Sign, ZConvention};

fn err(e: svo::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Accepts an int or a string such as "1/2" or "-3/2".
fn half(obj: &Bound<'_, PyAny>) -> PyResult<HalfExponent> {
    if let Ok(v) = obj.extract::<i64>() {
        return Ok(HalfExponent::int(v));
    }
    let s: String = obj
        .extract()
        .map_err(|_| PyValueError::new_err("exponent must be an int or a string like '1/2'"))?;
    HalfExponent::parse(&s).ok_or_else(|| PyValueError::new_err(format!("not a half-integer: {s:?}")))
}

fn fraction(py: Python<'_>, num: BigInt, den: BigInt) -> PyResult<Py<PyAny>> {
    let frac = py.import("fractions")?.getattr("Fraction")?;
    Ok(frac.call1((num, den))?.unbind())
}

fn report_dict(py: Python<'_>, rep: &VerificationReport) -> PyResult<Py<PyAny>> {
    let json = py.import("json")?;
    Ok(json.call_method1("loads", (rep.to_json(),))?.unbind())
}

/// An element of Q(q^(1/4)).
#[pyclass(name = "Scalar", module = "symplectic_vo", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyScalar(ExactScalar);

fn scalar_arg(obj: &Bound<'_, PyAny>) -> PyResult<ExactScalar> {
    if let Ok(s) = obj.cast::<PyScalar>() {
        return Ok(s.get().0.clone());
    }
    if let Ok(v) = obj.extract::<BigInt>() {
        return Ok(ExactScalar::from_bigint(v));
    }
    if let Ok(s) = obj.extract::<String>() {
        return s.parse().map_err(err);
    }
    Err(PyValueError::new_err("expected a Scalar, an int or a scalar literal"))
}

#[pymethods]
impl PyScalar {
    #[new]
    #[pyo3(signature = (value = None))]
    fn new(value: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        match value {
            None => Ok(PyScalar(ExactScalar::zero())),
            Some(v) => scalar_arg(v).map(PyScalar),
        }
    }

    /// q raised to a half-integer power.
    #[staticmethod]
    fn q(e: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyScalar(ExactScalar::q_pow(half(e)?)))
    }

    /// q^(k/4).
    #[staticmethod]
    fn q_quarter(k: i64) -> Self {
        PyScalar(ExactScalar::q_quarter_pow(k))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Value at q = 1 as a Fraction.
    fn classical_limit(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let r = self.0.classical_limit().map_err(err)?;
        fraction(py, r.numer().clone(), r.denom().clone())
    }

    /// The bar involution q -> q^-1.
    fn bar(&self) -> Self {
        PyScalar(self.0.bar())
    }

    fn inverse(&self) -> PyResult<Self> {
        self.0.inv().map(PyScalar).map_err(|e| PyZeroDivisionError::new_err(e.to_string()))
    }

    fn __add__(&self, o: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyScalar(&self.0 + &scalar_arg(o)?))
    }

    fn __radd__(&self, o: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__add__(o)
    }

    fn __sub__(&self, o: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyScalar(&self.0 - &scalar_arg(o)?))
    }

    fn __rsub__(&self, o: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyScalar(&scalar_arg(o)? - &self.0))
    }

    fn __mul__(&self, o: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyScalar(&self.0 * &scalar_arg(o)?))
    }

    fn __rmul__(&self, o: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__mul__(o)
    }

    fn __truediv__(&self, o: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.0
            .checked_div(&scalar_arg(o)?)
            .map(PyScalar)
            .map_err(|e| PyZeroDivisionError::new_err(e.to_string()))
    }

    fn __neg__(&self) -> Self {
        PyScalar(-&self.0)
    }

    fn __pow__(&self, e: i64, _m: Option<&Bound<'_, PyAny>>) -> PyResult<Self> {
        if e < 0 && self.0.is_zero() {
            return Err(PyZeroDivisionError::new_err("zero to a negative power"));
        }
        Ok(PyScalar(self.0.pow(e)))
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Scalar('{}')", self.0)
    }
}

/// A finite combination of Fock monomials with scalar coefficients.
#[pyclass(name = "FockVector", module = "symplectic_vo", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyFockVector(FockVector);

#[pymethods]
impl PyFockVector {
    #[new]
    #[pyo3(signature = (literal, rank = None))]
    fn new(literal: &str, rank: Option<usize>) -> PyResult<Self> {
        parse_vector(literal, rank).map(PyFockVector).map_err(err)
    }

    #[staticmethod]
    fn vacuum(rank: usize) -> Self {
        PyFockVector(FockVector::vacuum(rank))
    }

    #[getter]
    fn rank(&self) -> Option<usize> {
        self.0.rank()
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Term strings in canonical order.
    fn terms(&self) -> Vec<String> {
        self.0.term_strings()
    }

    /// Degree of a homogeneous vector as a Fraction.
    fn grade(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let g = grade(&self.0).map_err(err)?;
        fraction(py, BigInt::from(*g.numer()), BigInt::from(*g.denom()))
    }

    fn __add__(&self, o: &Self) -> Self {
        PyFockVector(self.0.add(&o.0))
    }

    fn __sub__(&self, o: &Self) -> Self {
        PyFockVector(self.0.sub(&o.0))
    }

    fn __neg__(&self) -> Self {
        PyFockVector(self.0.neg())
    }

    fn __mul__(&self, c: &Bound<'_, PyAny>) -> PyResult<Self> {
        Ok(PyFockVector(self.0.scale(&scalar_arg(c)?)))
    }

    fn __rmul__(&self, c: &Bound<'_, PyAny>) -> PyResult<Self> {
        self.__mul__(c)
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __bool__(&self) -> bool {
        !self.0.is_zero()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("FockVector('{}')", self.0)
    }
}

fn sign(s: &str) -> PyResult<Sign> {
    match s {
        "+" => Ok(Sign::Plus),
        "-" => Ok(Sign::Minus),
        _ => Err(PyValueError::new_err(format!("sign must be '+' or '-', got {s:?}"))),
    }
}

/// The level-one realization on the Fock space of rank n.
#[pyclass(name = "Realization", module = "symplectic_vo", frozen)]
struct PyRealization(Realization);

#[pymethods]
impl PyRealization {
    #[new]
    #[pyo3(signature = (rank, normalization = "repaired", convention = "uniform"))]
    fn new(rank: usize, normalization: &str, convention: &str) -> PyResult<Self> {
        let norm = match normalization {
            "repaired" => Normalization::Repaired,
            "literal" => Normalization::Literal,
            other => return Err(PyValueError::new_err(format!("unknown normalization {other:?}"))),
        };
        let z = match convention {
            "uniform" => ZConvention::Uniform,
            "displayed" => ZConvention::Displayed,
            other => return Err(PyValueError::new_err(format!("unknown convention {other:?}"))),
        };
        Realization::with_options(rank, z, norm).map(PyRealization).map_err(err)
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    /// Applies an operator product literal; the rightmost factor acts first.
    fn act(&self, op: &str, v: &PyFockVector) -> PyResult<PyFockVector> {
        let ops = parse_operators(op).map_err(err)?;
        self.0.apply_product(&ops, &v.0).map(PyFockVector).map_err(err)
    }

    /// The mode x^(+-)_(i,k).
    fn x(&self, sign_: &str, i: usize, k: i64, v: &PyFockVector) -> PyResult<PyFockVector> {
        self.0.apply_x_mode(sign(sign_)?, i, k, &v.0).map(PyFockVector).map_err(err)
    }

    /// K_i^p.
    fn k(&self, i: usize, v: &PyFockVector, p: Option<i64>) -> PyResult<PyFockVector> {
        self.0.apply_k(i, p.unwrap_or(1), &v.0).map(PyFockVector).map_err(err)
    }

    /// The Chevalley generator e_i for i = 1..n.
    fn e(&self, i: usize, v: &PyFockVector) -> PyResult<PyFockVector> {
        self.0.chevalley_e(i, &v.0).map(PyFockVector).map_err(err)
    }

    /// e_0 with the default bracket.
    fn e0(&self, v: &PyFockVector) -> PyResult<PyFockVector> {
        let spec = BracketSpec::default_for(self.0.rank());
        self.0.apply_e0(&v.0, &spec).map(PyFockVector).map_err(err)
    }
}

/// A q-series truncated at a half-integer order.
#[pyclass(name = "Series", module = "symplectic_vo", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PySeries(TruncatedSeries);

#[pymethods]
impl PySeries {
    fn coeff(&self, e: &Bound<'_, PyAny>) -> PyResult<PyScalar> {
        qseries::series_coeff(&self.0, half(e)?).map(PyScalar).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Series('{}')", self.0)
    }
}

#[pyfunction]
fn q_int(m: i64, base: &Bound<'_, PyAny>) -> PyResult<PyScalar> {
    qscalar::q_int(m, half(base)?).map(PyScalar).map_err(err)
}

#[pyfunction]
fn q_int_frac(a: &Bound<'_, PyAny>, n: i64) -> PyResult<PyScalar> {
    Ok(PyScalar(qscalar::q_int_frac(half(a)?, n)))
}

#[pyfunction]
fn q_factorial(m: i64, base: &Bound<'_, PyAny>) -> PyResult<PyScalar> {
    qscalar::q_factorial(m, half(base)?).map(PyScalar).map_err(err)
}

#[pyfunction]
fn q_binom(m: i64, r: i64, base: &Bound<'_, PyAny>) -> PyResult<PyScalar> {
    qscalar::q_binom(m, r, half(base)?).map(PyScalar).map_err(err)
}

#[pyfunction]
fn qpow_exp(a: &Bound<'_, PyAny>, order: &Bound<'_, PyAny>) -> PyResult<PySeries> {
    qseries::qpow_exp(half(a)?, half(order)?).map(PySeries).map_err(err)
}

#[pyfunction]
fn qpow_product(a: &Bound<'_, PyAny>, order: &Bound<'_, PyAny>) -> PyResult<PySeries> {
    qseries::qpow_product(half(a)?, half(order)?).map(PySeries).map_err(err)
}

/// which: "1", "2", "3", "ope", "qpow" or "all".
#[pyfunction]
#[pyo3(signature = (which = "all"))]
fn check_identities(py: Python<'_>, which: &str) -> PyResult<Py<PyAny>> {
    let rep = match which {
        "1" => core_verify::check_identity1(),
        "2" => core_verify::check_identity2(),
        "3" => core_verify::check_identity3(),
        "ope" => core_verify::check_ope_factors(),
        "qpow" => core_verify::check_qpow(),
        "all" => core_verify::check_all_identities(),
        other => return Err(PyValueError::new_err(format!("unknown identity {other:?}"))),
    };
    report_dict(py, &rep)
}

#[pyfunction]
fn check_cocycle(py: Python<'_>, rank: usize) -> PyResult<Py<PyAny>> {
    let rep = check_quasi_cocycle_axioms(rank).map_err(err)?;
    report_dict(py, &rep)
}

fn config(
    rank: usize,
    relation: &str,
    mode_min: i64,
    mode_max: i64,
    max_level: usize,
    vectors: Option<Vec<PyRef<'_, PyFockVector>>>,
) -> PyResult<CheckConfig> {
    let rel: Relation = relation.parse().map_err(err)?;
    let mut cfg = CheckConfig::new(rank).with_window(mode_min, mode_max).with_relation(rel);
    cfg.max_level = max_level;
    if let Some(vs) = vectors {
        cfg = cfg.with_vectors(vs.iter().map(|v| v.0.clone()).collect());
    }
    Ok(cfg)
}

/// Sweeps the mode-form relations; the GIL is released during the sweep.
#[pyfunction]
#[pyo3(signature = (rank, relation = "all", mode_min = -1, mode_max = 1, max_level = 2, vectors = None))]
fn verify_relations(
    py: Python<'_>,
    rank: usize,
    relation: &str,
    mode_min: i64,
    mode_max: i64,
    max_level: usize,
    vectors: Option<Vec<PyRef<'_, PyFockVector>>>,
) -> PyResult<Py<PyAny>> {
    let cfg = config(rank, relation, mode_min, mode_max, max_level, vectors)?;
    let rep = py
        .detach(|| Verifier::new(&cfg).and_then(|v| v.relations()))
        .map_err(err)?;
    report_dict(py, &rep)
}

/// Highest weight vectors together with the Lemma.
#[pyfunction]
#[pyo3(signature = (rank, mode_max = 1))]
fn verify_hwv(py: Python<'_>, rank: usize, mode_max: i64) -> PyResult<Py<PyAny>> {
    let cfg = CheckConfig::new(rank).with_window(-1, mode_max.max(-1));
    let v = Verifier::new(&cfg).map_err(err)?;
    let mut rep = v.hwv().map_err(err)?;
    rep.merge(v.lemma().map_err(err)?);
    report_dict(py, &rep)
}

#[pymodule]
#[pyo3(name = "symplectic_vo")]
fn py_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyScalar>()?;
    m.add_class::<PyFockVector>()?;
    m.add_class::<PyRealization>()?;
    m.add_class::<PySeries>()?;
    m.add_function(wrap_pyfunction!(q_int, m)?)?;
    m.add_function(wrap_pyfunction!(q_int_frac, m)?)?;
    m.add_function(wrap_pyfunction!(q_factorial, m)?)?;
    m.add_function(wrap_pyfunction!(q_binom, m)?)?;
    m.add_function(wrap_pyfunction!(qpow_exp, m)?)?;
    m.add_function(wrap_pyfunction!(qpow_product, m)?)?;
    m.add_function(wrap_pyfunction!(check_identities, m)?)?;
    m.add_function(wrap_pyfunction!(check_cocycle, m)?)?;
    m.add_function(wrap_pyfunction!(verify_relations, m)?)?;
    m.add_function(wrap_pyfunction!(verify_hwv, m)?)?;
    Ok(())
}
