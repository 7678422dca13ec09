//! Python bindings: quivers, polynomials, labeled posets, DT transforms
//! and the verification suites.

use std::collections::BTreeMap;

use num_rational::BigRational;
use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use clusterdt::families;
use clusterdt::poly::VarId;
use clusterdt::poset as cposet;
use clusterdt::seedtrack::{self, SearchConfig, SearchMode, SearchOutcome};

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn mode(name: &str) -> PyResult<SearchMode> {
    match name {
        "green" => Ok(SearchMode::MaximalGreen),
        "reddening" => Ok(SearchMode::Reddening),
        other => Err(PyValueError::new_err(format!("unknown mode `{other}`"))),
    }
}

#[pyclass(name = "Quiver", module = "clusterdt", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyQuiver {
    inner: clusterdt::Quiver,
}

#[pymethods]
impl PyQuiver {
    /// Mutable vertices labelled by `labels`; arrows `(from, to, mult)` by label.
    #[new]
    fn new(labels: Vec<u32>, arrows: Vec<(u32, u32, i64)>) -> PyResult<Self> {
        Ok(PyQuiver { inner: clusterdt::Quiver::from_labeled_arrows(&labels, &arrows).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(err)?;
        Ok(PyQuiver { inner: clusterdt::Quiver::from_json(&v).map_err(err)? })
    }

    /// The quiver `Q_n` on the triples `(a,b,c)` with `a+b+c = n-3`.
    #[staticmethod]
    fn qn(n: usize) -> PyResult<Self> {
        if n < 3 {
            return Err(PyValueError::new_err("n must be at least 3"));
        }
        Ok(PyQuiver { inner: families::qn_quiver(n) })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn names(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    fn eps(&self, i: usize, j: usize) -> PyResult<i64> {
        if i >= self.inner.n() || j >= self.inner.n() {
            return Err(PyValueError::new_err("vertex out of range"));
        }
        Ok(self.inner.eps(i, j))
    }

    /// Position of a vertex name.
    fn position(&self, name: &str) -> PyResult<usize> {
        self.inner.position_of_name(name).ok_or_else(|| PyKeyError::new_err(name.to_string()))
    }

    /// Mutates along positions.
    fn mutate(&self, seq: Vec<usize>) -> PyResult<Self> {
        Ok(PyQuiver { inner: self.inner.mutate_seq(&seq).map_err(err)? })
    }

    fn is_acyclic(&self) -> bool {
        self.inner.is_acyclic()
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Quiver({})", self.inner.to_json())
    }
}

#[pyclass(name = "Polynomial", module = "clusterdt", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyPolynomial {
    inner: clusterdt::Polynomial,
}

#[pymethods]
impl PyPolynomial {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        Ok(PyPolynomial { inner: text.parse().map_err(err)? })
    }

    #[getter]
    fn n_terms(&self) -> usize {
        self.inner.n_terms()
    }

    fn coefficient_sum(&self) -> String {
        self.inner.coefficient_sum().to_string()
    }

    /// Exact value at integer points, keyed by variable id.
    fn eval(&self, point: BTreeMap<u32, i64>) -> PyResult<(String, String)> {
        let pt = point
            .into_iter()
            .map(|(k, v)| (VarId(k), num_rational_from(v)))
            .collect();
        let r = self.inner.eval(&pt).map_err(err)?;
        Ok((r.numer().to_string(), r.denom().to_string()))
    }

    fn __add__(&self, other: &Self) -> Self {
        PyPolynomial { inner: &self.inner + &other.inner }
    }

    fn __mul__(&self, other: &Self) -> Self {
        PyPolynomial { inner: &self.inner * &other.inner }
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.inner == other.inner
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial('{}')", self.inner)
    }
}

fn num_rational_from(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

#[pyclass(name = "Poset", module = "clusterdt", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyPoset {
    inner: cposet::LabeledPoset,
}

#[pymethods]
impl PyPoset {
    /// Labels are `"X3"` or `"0"`; covers are `(upper, lower)` pairs.
    #[new]
    fn new(labels: Vec<String>, covers: Vec<(usize, usize)>) -> PyResult<Self> {
        let labels = labels.iter().map(|s| s.parse::<cposet::Label>()).collect::<Result<Vec<_>, _>>().map_err(err)?;
        Ok(PyPoset { inner: cposet::LabeledPoset::new(labels, &covers).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(err)?;
        Ok(PyPoset { inner: cposet::LabeledPoset::from_json(&v).map_err(err)? })
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.inner.labels().iter().map(|l| l.to_string()).collect()
    }

    #[getter]
    fn covers(&self) -> Vec<(usize, usize)> {
        self.inner.covers().to_vec()
    }

    fn ideal_function(&self) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial { inner: cposet::ideal_function(&self.inner).map_err(err)? })
    }

    fn count_ideals(&self) -> String {
        cposet::count_ideals(&self.inner).to_string()
    }

    fn opposite(&self) -> Self {
        PyPoset { inner: self.inner.opposite() }
    }

    fn truncate_zeros(&self) -> PyResult<Self> {
        Ok(PyPoset { inner: cposet::truncate_zeros(&self.inner).map_err(err)? })
    }

    /// Attaches `(piece, multiplicity)` pairs above every element labelled `X<at>`.
    fn attach(&self, at: u32, pieces: Vec<(PyPoset, usize)>) -> PyResult<Self> {
        let ps: Vec<_> = pieces.into_iter().map(|(p, m)| (p.inner, m)).collect();
        Ok(PyPoset { inner: cposet::attach(&self.inner, VarId(at), &ps).map_err(err)? })
    }

    fn relabel(&self, map: BTreeMap<u32, u32>) -> Self {
        let m = map.into_iter().map(|(a, b)| (VarId(a), VarId(b))).collect();
        PyPoset { inner: cposet::relabel(&self.inner, &m) }
    }

    fn is_isomorphic(&self, other: &Self) -> bool {
        cposet::find_poset_isomorphism(&self.inner, &other.inner).is_some()
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn to_dot(&self) -> String {
        self.inner.to_dot()
    }
}

/// Reddening sequence as positions, or `None`.
#[pyfunction]
#[pyo3(signature = (quiver, depth = 12, mode = "reddening", node_limit = None))]
fn search(quiver: &PyQuiver, depth: usize, mode: &str, node_limit: Option<u64>) -> PyResult<Option<Vec<usize>>> {
    let cfg = SearchConfig { max_depth: depth, mode: self::mode(mode)?, node_limit };
    Ok(match seedtrack::search_reddening_with(&quiver.inner, cfg) {
        SearchOutcome::Found(s) => Some(s),
        _ => None,
    })
}

/// DT F-polynomials indexed by initial vertex. Searches for a sequence
/// when none is given.
#[pyfunction]
#[pyo3(signature = (quiver, seq = None, depth = 12))]
fn dt_transform(quiver: &PyQuiver, seq: Option<Vec<usize>>, depth: usize) -> PyResult<Vec<PyPolynomial>> {
    let seq = match seq {
        Some(s) => s,
        None => seedtrack::search_reddening(&quiver.inner, depth, SearchMode::Reddening)
            .ok_or_else(|| PyValueError::new_err(format!("no reddening sequence up to depth {depth}")))?,
    };
    let r = seedtrack::dt_transform(&quiver.inner, &seq).map_err(err)?;
    Ok(r.f.into_iter().map(|inner| PyPolynomial { inner }).collect())
}

#[pyfunction]
fn qn_maximal_green(n: usize) -> Vec<usize> {
    families::qn_maximal_green(n)
}

#[pyfunction]
fn ascendant_tree(quiver: &PyQuiver, vertex: usize) -> PyResult<PyPoset> {
    Ok(PyPoset { inner: families::ascendant_tree(&quiver.inner, vertex).map_err(err)? })
}

#[pyfunction]
fn lift3d_poset(n: usize, a: i64, b: i64, c: i64) -> PyResult<PyPoset> {
    Ok(PyPoset { inner: families::lift3d_poset(n, a, b, c).map_err(err)? })
}

/// Runs one verification suite; returns `(passed, report)`.
#[pyfunction]
#[pyo3(signature = (suite, seed = 0, slow = false, n = None))]
fn verify(suite: &str, seed: u64, slow: bool, n: Option<usize>) -> PyResult<(bool, String)> {
    let opts = clusterdt::verify::VerifyOptions { seed, slow, n };
    let r = clusterdt::verify::run_suite(suite, &opts)
        .ok_or_else(|| PyKeyError::new_err(format!("unknown suite `{suite}`")))?;
    Ok((r.passed(), r.to_string()))
}

#[pymodule]
#[pyo3(name = "clusterdt")]
fn clusterdt_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyQuiver>()?;
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyPoset>()?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(dt_transform, m)?)?;
    m.add_function(wrap_pyfunction!(qn_maximal_green, m)?)?;
    m.add_function(wrap_pyfunction!(ascendant_tree, m)?)?;
    m.add_function(wrap_pyfunction!(lift3d_poset, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("SUITES", clusterdt::verify::SUITES.to_vec())?;
    Ok(())
}
