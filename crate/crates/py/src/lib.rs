//! Python bindings for the duality workbench: the two object types,
//! the duality functors and round trips, the primality/separation
//! operations, the encodings, and the acceptance battery.
//!
//! Reports that the core library serializes (validation, classification,
//! witness searches, the suite) cross the boundary as plain Python
//! dicts/lists so scripts can poke at them without a schema.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList, PyString};
use serde_json::Value as JsonValue;

use stonework::error::Error;
use stonework::io::{self, OperatorForm, Parsed};
use stonework::topology::SoberMode;
use stonework::{dot, duality, encoding, lattices, order, spectrum as spec, suite, topology};

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_mode(mode: &str) -> PyResult<SoberMode> {
    match mode {
        "standard" => Ok(SoberMode::Standard),
        "strict-literal" => Ok(SoberMode::StrictLiteral),
        other => Err(PyValueError::new_err(format!(
            "mode must be \"standard\" or \"strict-literal\", got {other:?}"
        ))),
    }
}

/// Serialized report component -> Python object.
fn json_to_py<'py>(py: Python<'py>, v: &JsonValue) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        JsonValue::Null => py.None().into_bound(py),
        JsonValue::Bool(b) => PyBool::new(py, *b).to_owned().into_any(),
        JsonValue::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_pyobject(py)?.into_any()
            } else if let Some(u) = n.as_u64() {
                u.into_pyobject(py)?.into_any()
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any()
            }
        }
        JsonValue::String(s) => PyString::new(py, s).into_any(),
        JsonValue::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_any()
        }
        JsonValue::Object(map) => {
            let dict = PyDict::new(py);
            for (k, val) in map {
                dict.set_item(k, json_to_py(py, val)?)?;
            }
            dict.into_any()
        }
    })
}

fn report_to_py<'py, T: serde::Serialize>(py: Python<'py>, t: &T) -> PyResult<Bound<'py, PyAny>> {
    let value = serde_json::to_value(t)
        .map_err(|e| PyValueError::new_err(format!("report serialization failed: {e}")))?;
    json_to_py(py, &value)
}

fn map_from_pairs(pairs: Vec<(u64, u64)>) -> PyResult<order::ElementMap> {
    order::ElementMap::new(pairs).map_err(err)
}

/// A distributive-or-not c-poset: a finite poset with a closure
/// operator presented as an enumeration-operator code set.
#[pyclass(name = "CPoset", frozen)]
struct PyCPoset {
    inner: order::CPoset,
}

#[pymethods]
impl PyCPoset {
    /// Parses a cposet JSON document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match io::parse_str(text).map_err(err)? {
            Parsed::CPoset(inner) => Ok(PyCPoset { inner }),
            other => Err(PyValueError::new_err(format!(
                "expected a cposet document, found kind {:?}",
                other.kind()
            ))),
        }
    }

    fn __repr__(&self) -> String {
        format!("CPoset(n={})", self.inner.n())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn n(&self) -> usize {
        self.inner.n()
    }

    fn names(&self) -> Vec<u64> {
        self.inner.names().to_vec()
    }

    fn is_distributive(&self) -> PyResult<bool> {
        order::is_distributive(&self.inner).map_err(err)
    }

    /// Prime ideals, each as a sorted list of carrier names.
    fn primes(&self) -> PyResult<Vec<Vec<u64>>> {
        let primes = order::enumerate_primes(&self.inner).map_err(err)?;
        Ok(primes
            .iter()
            .map(|&m| self.inner.names_of_mask(m).into_iter().collect())
            .collect())
    }

    /// The prime spectrum as a space with base.
    fn spectrum(&self) -> PyResult<PySpace> {
        let sp = spec::spectrum(&self.inner).map_err(err)?;
        Ok(PySpace {
            inner: sp.into_space(),
        })
    }

    /// The counit round trip: `{"xi": [...], "passed": bool, "iso": {...}}`.
    fn counit<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let rep = duality::counit_map(&self.inner).map_err(err)?;
        let dict = PyDict::new(py);
        dict.set_item("xi", rep.xi.pairs().to_vec())?;
        dict.set_item("passed", rep.iso.passed())?;
        dict.set_item("iso", report_to_py(py, &rep.iso)?)?;
        Ok(dict.into_any())
    }

    /// The five closure–spectrum laws, as a report dict.
    fn lphi<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let rep = spec::check_lphi(&self.inner).map_err(err)?;
        report_to_py(py, &rep)
    }

    fn to_json(&self) -> String {
        io::to_json(&io::cposet_document(&self.inner, OperatorForm::Codes))
    }

    /// DOT order diagram.
    fn dot(&self) -> String {
        dot::poset_dot(self.inner.poset())
    }
}

/// A finite T0 space presented by a pool of base sets and an index map.
#[pyclass(name = "Space", frozen)]
struct PySpace {
    inner: topology::Space,
}

#[pymethods]
impl PySpace {
    /// Parses a space JSON document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match io::parse_str(text).map_err(err)? {
            Parsed::Space(inner) => Ok(PySpace { inner }),
            other => Err(PyValueError::new_err(format!(
                "expected a space document, found kind {:?}",
                other.kind()
            ))),
        }
    }

    fn __repr__(&self) -> String {
        format!(
            "Space(points={}, base_sets={})",
            self.inner.n_points(),
            self.inner.n_base()
        )
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn points(&self) -> Vec<u64> {
        self.inner.point_names().to_vec()
    }

    /// Base sets in index order, each as a sorted list of point names.
    fn base(&self) -> Vec<Vec<u64>> {
        (0..self.inner.n_base())
            .map(|i| {
                stonework::mask::elems(self.inner.beta_set(i))
                    .map(|p| self.inner.point_name(p))
                    .collect()
            })
            .collect()
    }

    /// Structural + conformance checks as a report dict.
    fn validate<'py>(&self, py: Python<'py>, mode: &str) -> PyResult<Bound<'py, PyAny>> {
        let rep = topology::validate_space(&self.inner, parse_mode(mode)?).map_err(err)?;
        let out = report_to_py(py, &rep)?;
        out.downcast::<PyDict>()
            .map_err(|e| PyValueError::new_err(e.to_string()))?
            .set_item("passed", rep.passed())?;
        Ok(out)
    }

    /// Classification flags and subcategory cells as a dict.
    fn classify<'py>(&self, py: Python<'py>, mode: &str) -> PyResult<Bound<'py, PyAny>> {
        let cls = topology::classify(&self.inner, parse_mode(mode)?).map_err(err)?;
        report_to_py(py, &cls)
    }

    /// The base c-poset (the object half of the space-to-order functor).
    fn dual(&self) -> PyResult<PyCPoset> {
        Ok(PyCPoset {
            inner: duality::functor_P_obj(&self.inner).map_err(err)?,
        })
    }

    /// The unit round trip: `{"f_x": [...], "passed": True}`.
    fn unit<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let rep = duality::unit_map(&self.inner).map_err(err)?;
        let dict = PyDict::new(py);
        dict.set_item("f_x", rep.forward.point_map.pairs().to_vec())?;
        dict.set_item("f_x_inverse", rep.inverse.point_map.pairs().to_vec())?;
        dict.set_item("passed", true)?;
        Ok(dict.into_any())
    }

    /// `f_∧` witness table search result as a dict.
    fn meet_witness<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report_to_py(py, &lattices::find_meet_witness(&self.inner))
    }

    /// `f_∨` witness table search result as a dict.
    fn join_witness<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        report_to_py(py, &lattices::find_join_witness(&self.inner))
    }

    /// Deduplicated-base copy plus the index translation `u`.
    fn injectivize(&self) -> PyResult<(PySpace, Vec<(u64, u64)>)> {
        let (space, u) = stonework::presentations::injectivize_base(&self.inner).map_err(err)?;
        Ok((PySpace { inner: space }, u.pairs().to_vec()))
    }

    fn to_json(&self) -> String {
        io::to_json(&io::space_document(&self.inner))
    }

    /// DOT: specialization order plus base-inclusion diagram.
    fn dot(&self) -> String {
        dot::space_dot(&self.inner)
    }
}

/// Cantor pairing code of `(x, y)`.
#[pyfunction]
fn pair(x: u64, y: u64) -> PyResult<u64> {
    encoding::pair(x, y).map_err(err)
}

/// Inverse of `pair`.
#[pyfunction]
fn unpair(code: u64) -> (u64, u64) {
    encoding::unpair(code)
}

/// Canonical code of a finite set of naturals below 64.
#[pyfunction]
fn set_encode(elements: Vec<u64>) -> PyResult<u64> {
    encoding::set_encode(elements).map_err(err)
}

/// The finite set coded by `code`, as a sorted list.
#[pyfunction]
fn set_decode(code: u64) -> Vec<u64> {
    encoding::set_decode(code)
}

/// Smallest prime ideal containing `ideal` and missing the
/// down-directed `filter`, both given as carrier-name lists.
#[pyfunction]
fn prime_separation(p: &PyCPoset, ideal: Vec<u64>, filter: Vec<u64>) -> PyResult<Vec<u64>> {
    let i = p
        .inner
        .mask_of_names(&ideal.into_iter().collect())
        .map_err(err)?;
    let f = p
        .inner
        .mask_of_names(&filter.into_iter().collect())
        .map_err(err)?;
    let q = order::prime_separation(&p.inner, i, f).map_err(err)?;
    Ok(p.inner.names_of_mask(q).into_iter().collect())
}

/// Strictness check of a carrier map, as a report dict.
#[pyfunction]
fn check_strict<'py>(
    py: Python<'py>,
    pairs: Vec<(u64, u64)>,
    p0: &PyCPoset,
    p1: &PyCPoset,
) -> PyResult<Bound<'py, PyAny>> {
    let g = map_from_pairs(pairs)?;
    let rep = order::check_strict(&p0.inner, &p1.inner, &g).map_err(err)?;
    report_to_py(py, &rep)
}

/// Spectrality check of a point map, as a report dict.
#[pyfunction]
fn check_spectral<'py>(
    py: Python<'py>,
    pairs: Vec<(u64, u64)>,
    x0: &PySpace,
    x1: &PySpace,
) -> PyResult<Bound<'py, PyAny>> {
    let f = map_from_pairs(pairs)?;
    let rep = topology::check_spectral(&f, &x0.inner, &x1.inner).map_err(err)?;
    report_to_py(py, &rep)
}

/// Runs the acceptance battery; returns the full report as a dict.
#[pyfunction]
fn run_suite<'py>(py: Python<'py>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let rep = suite::run_suite(seed).map_err(err)?;
    report_to_py(py, &rep)
}

#[pymodule]
fn stonework_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCPoset>()?;
    m.add_class::<PySpace>()?;
    m.add_function(wrap_pyfunction!(pair, m)?)?;
    m.add_function(wrap_pyfunction!(unpair, m)?)?;
    m.add_function(wrap_pyfunction!(set_encode, m)?)?;
    m.add_function(wrap_pyfunction!(set_decode, m)?)?;
    m.add_function(wrap_pyfunction!(prime_separation, m)?)?;
    m.add_function(wrap_pyfunction!(check_strict, m)?)?;
    m.add_function(wrap_pyfunction!(check_spectral, m)?)?;
    m.add_function(wrap_pyfunction!(run_suite, m)?)?;
    Ok(())
}
