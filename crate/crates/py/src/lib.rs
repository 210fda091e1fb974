//! Python bindings. Built as the `pgmip` extension module.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use pgmip::canon::{self, DEFAULT_BRUTE_CAP};
use pgmip::group::DEFAULT_TABLE_CAP;
use pgmip::invariants::{self, FingerprintOptions, Path};
use pgmip::{params, BlackBoxGroup, Elem, PGroup2};

fn err(e: pgmip::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Parameter tuple (p, m, n1, n2, s1, s2).
#[pyclass(name = "Tuple5", module = "pgmip", frozen, eq, ord, hash, from_py_object)]
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PyTuple5(pub params::Tuple5);

#[pymethods]
impl PyTuple5 {
    #[new]
    fn new(p: u64, m: u32, n1: u32, n2: u32, s1: u32, s2: u32) -> PyResult<Self> {
        params::Tuple5::new(p, m, n1, n2, s1, s2).map(Self).map_err(err)
    }

    #[staticmethod]
    fn parse(p: u64, shape: &str) -> PyResult<Self> {
        params::Tuple5::parse_shape(p, shape).map(Self).map_err(err)
    }

    #[getter]
    fn p(&self) -> u64 {
        self.0.p
    }
    #[getter]
    fn m(&self) -> u32 {
        self.0.m
    }
    #[getter]
    fn n1(&self) -> u32 {
        self.0.n1
    }
    #[getter]
    fn n2(&self) -> u32 {
        self.0.n2
    }
    #[getter]
    fn s1(&self) -> u32 {
        self.0.s1
    }
    #[getter]
    fn s2(&self) -> u32 {
        self.0.s2
    }

    fn total(&self) -> u32 {
        self.0.total()
    }

    fn is_admissible(&self) -> bool {
        params::is_admissible(&self.0)
    }

    fn is_constructible(&self) -> bool {
        self.0.is_constructible()
    }

    fn as_tuple(&self) -> (u64, u32, u32, u32, u32, u32) {
        let t = &self.0;
        (t.p, t.m, t.n1, t.n2, t.s1, t.s2)
    }

    fn __repr__(&self) -> String {
        format!("Tuple5({})", self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }
}

#[pyfunction]
fn is_admissible(t: &PyTuple5) -> bool {
    params::is_admissible(&t.0)
}

#[pyfunction]
fn enumerate_admissible(p: u64, max_total: u32) -> PyResult<Vec<PyTuple5>> {
    let ts = params::enumerate_admissible(p, max_total).map_err(err)?;
    Ok(ts.into_iter().map(PyTuple5).collect())
}

/// Admissible (s1, s2) for a fixed shape.
#[pyfunction]
fn region(p: u64, m: u32, n1: u32, n2: u32) -> PyResult<Vec<(u32, u32)>> {
    params::region(p, m, n1, n2).map_err(err)
}

/// Normal-form arithmetic on a^x b1^y b2^z, elements passed as (x, y, z).
#[pyclass(name = "NormalForm", module = "pgmip", frozen)]
pub struct PyNormalForm(PGroup2);

fn elem(e: (u64, u64, u64)) -> Elem {
    Elem::new(e.0, e.1, e.2)
}

fn tup3(e: Elem) -> (u64, u64, u64) {
    (e.x, e.y, e.z)
}

impl PyNormalForm {
    fn check(&self, e: (u64, u64, u64)) -> PyResult<Elem> {
        let e = elem(e);
        if self.0.is_valid(&e) {
            Ok(e)
        } else {
            Err(PyValueError::new_err("exponent out of range"))
        }
    }
}

#[pymethods]
impl PyNormalForm {
    #[new]
    fn new(t: &PyTuple5) -> PyResult<Self> {
        PGroup2::new(t.0).map(Self).map_err(err)
    }

    fn tuple(&self) -> PyTuple5 {
        PyTuple5(*self.0.tuple())
    }

    fn order(&self) -> u64 {
        self.0.order()
    }

    fn generators(&self) -> [(u64, u64, u64); 3] {
        [tup3(self.0.a()), tup3(self.0.b1()), tup3(self.0.b2())]
    }

    fn mul(&self, g: (u64, u64, u64), h: (u64, u64, u64)) -> PyResult<(u64, u64, u64)> {
        Ok(tup3(self.0.mul(&self.check(g)?, &self.check(h)?)))
    }

    fn pow(&self, g: (u64, u64, u64), k: u64) -> PyResult<(u64, u64, u64)> {
        Ok(tup3(self.0.pow(&self.check(g)?, k)))
    }

    fn inv(&self, g: (u64, u64, u64)) -> PyResult<(u64, u64, u64)> {
        Ok(tup3(self.0.inv(&self.check(g)?)))
    }

    fn commutator(&self, g: (u64, u64, u64), h: (u64, u64, u64)) -> PyResult<(u64, u64, u64)> {
        Ok(tup3(self.0.commutator(&self.check(g)?, &self.check(h)?)))
    }

    fn element_order(&self, g: (u64, u64, u64)) -> PyResult<u64> {
        Ok(self.0.element_order(&self.check(g)?))
    }

    fn index_of(&self, g: (u64, u64, u64)) -> PyResult<u64> {
        Ok(self.0.index_of(&self.check(g)?))
    }

    #[pyo3(signature = (cap = DEFAULT_TABLE_CAP))]
    fn table(&self, cap: usize) -> PyResult<PyGroup> {
        self.0.multiplication_table(cap).map(PyGroup).map_err(err)
    }
}

/// Finite group given by a multiplication table, identity at index 0.
#[pyclass(name = "Group", module = "pgmip", frozen)]
pub struct PyGroup(BlackBoxGroup);

impl PyGroup {
    fn index(&self, g: usize) -> PyResult<usize> {
        if g < self.0.order() {
            Ok(g)
        } else {
            Err(PyValueError::new_err(format!("element {g} out of range")))
        }
    }
}

#[pymethods]
impl PyGroup {
    /// Validates identity, Latin square and associativity.
    #[new]
    fn new(n: usize, table: Vec<u32>) -> PyResult<Self> {
        BlackBoxGroup::from_table(n, table).map(Self).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (t, cap = DEFAULT_TABLE_CAP))]
    fn construct(t: &PyTuple5, cap: usize) -> PyResult<Self> {
        PGroup2::new(t.0)
            .and_then(|g| g.multiplication_table(cap))
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn load(path: std::path::PathBuf) -> PyResult<Self> {
        BlackBoxGroup::load(path).map(Self).map_err(err)
    }

    fn save(&self, path: std::path::PathBuf) -> PyResult<()> {
        self.0.save(path).map_err(err)
    }

    fn order(&self) -> usize {
        self.0.order()
    }

    fn __len__(&self) -> usize {
        self.0.order()
    }

    fn table(&self) -> Vec<u32> {
        self.0.table().to_vec()
    }

    fn mul(&self, g: usize, h: usize) -> PyResult<usize> {
        Ok(self.0.mul(self.index(g)?, self.index(h)?))
    }

    fn inv(&self, g: usize) -> PyResult<usize> {
        Ok(self.0.inv(self.index(g)?))
    }

    fn pow(&self, g: usize, k: u64) -> PyResult<usize> {
        Ok(self.0.pow(self.index(g)?, k))
    }

    fn element_orders(&self) -> Vec<usize> {
        self.0.element_orders()
    }

    fn exponent(&self) -> usize {
        self.0.exponent()
    }

    fn is_abelian(&self) -> bool {
        self.0.is_abelian()
    }

    fn abelian_invariants(&self) -> PyResult<Vec<u32>> {
        self.0.abelian_invariants().map_err(err)
    }

    /// `perm[old] = new`; `perm[0]` must be 0.
    fn relabel(&self, perm: Vec<usize>) -> PyResult<Self> {
        let n = self.0.order();
        let mut seen = vec![false; n];
        for &i in &perm {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(PyValueError::new_err("not a permutation"));
            }
        }
        if perm.len() != n || perm[0] != 0 {
            return Err(PyValueError::new_err("permutation must fix 0 and cover the group"));
        }
        Ok(Self(self.0.relabel(&perm)))
    }

    fn random_relabel(&self, seed: u64) -> Self {
        Self(self.0.random_relabel(seed))
    }

    fn __repr__(&self) -> String {
        format!("Group(order={})", self.0.order())
    }
}

#[pyfunction]
fn canonical_tuple(g: &PyGroup) -> PyResult<PyTuple5> {
    canon::canonical_tuple(&g.0).map(PyTuple5).map_err(err)
}

/// Canonical tuple plus a generating pair realizing it.
#[pyfunction]
fn canonicalize(g: &PyGroup) -> PyResult<(PyTuple5, (usize, usize))> {
    let c = canon::canonicalize(&g.0).map_err(err)?;
    Ok((PyTuple5(c.tuple), (c.witness.g1, c.witness.g2)))
}

#[pyfunction]
fn relations_isomorphic(g: &PyGroup, t: &PyTuple5) -> bool {
    canon::relations_isomorphic(&g.0, &t.0)
}

#[pyfunction]
#[pyo3(signature = (g, h, cap = DEFAULT_BRUTE_CAP))]
fn brute_isomorphic(py: Python<'_>, g: &PyGroup, h: &PyGroup, cap: usize) -> PyResult<bool> {
    py.detach(|| canon::brute_isomorphic(&g.0, &h.0, cap)).map_err(err)
}

/// Isomorphism fingerprint.
#[pyclass(name = "Fingerprint", module = "pgmip", frozen, eq)]
#[derive(PartialEq)]
pub struct PyFingerprint {
    inner: invariants::Fingerprint,
    #[pyo3(get)]
    path: &'static str,
}

#[pymethods]
impl PyFingerprint {
    #[getter]
    fn p(&self) -> u64 {
        self.inner.p
    }
    #[getter]
    fn order(&self) -> u32 {
        self.inner.order
    }
    #[getter]
    fn abelianization(&self) -> (u32, u32) {
        self.inner.abelianization
    }
    #[getter]
    fn exponent(&self) -> u32 {
        self.inner.exponent
    }
    #[getter]
    fn d(&self) -> Vec<u32> {
        self.inner.d.clone()
    }
    #[getter]
    fn x(&self) -> Vec<usize> {
        self.inner.x.clone()
    }

    /// Name of the first differing component, or None.
    fn first_difference(&self, other: &PyFingerprint) -> Option<String> {
        self.inner
            .first_difference(&other.inner)
            .map(|c| format!("{c:?}").to_lowercase())
    }

    fn __repr__(&self) -> String {
        let f = &self.inner;
        format!(
            "Fingerprint(order={}, abelianization={:?}, exponent={}, d={:?}, x={:?})",
            f.order, f.abelianization, f.exponent, f.d, f.x
        )
    }
}

fn path_name(p: Path) -> &'static str {
    match p {
        Path::Direct => "direct",
        Path::Formula => "formula",
    }
}

#[pyfunction]
#[pyo3(signature = (t, formula_only = false))]
fn fingerprint(py: Python<'_>, t: &PyTuple5, formula_only: bool) -> PyResult<PyFingerprint> {
    let mut opts = FingerprintOptions::for_prime(t.0.p);
    opts.formula_only = formula_only;
    let (inner, path) = py
        .detach(|| invariants::fingerprint_with(&t.0, &opts))
        .map_err(err)?;
    Ok(PyFingerprint {
        inner,
        path: path_name(path),
    })
}

#[pyfunction]
fn fingerprint_table(py: Python<'_>, g: &PyGroup) -> PyResult<PyFingerprint> {
    let inner = py
        .detach(|| invariants::fingerprint_table(&g.0, false))
        .map_err(err)?;
    Ok(PyFingerprint {
        inner,
        path: "direct",
    })
}

/// Returns (u, predicted, holds) for an admissible tuple.
#[pyfunction]
fn u_invariant(py: Python<'_>, t: &PyTuple5) -> PyResult<(u32, u32, bool)> {
    let fp = py
        .detach(|| invariants::fingerprint_with(&t.0, &FingerprintOptions::for_prime(t.0.p)))
        .map_err(err)?
        .0;
    let c = invariants::u_invariant(&t.0, &fp.d);
    Ok((c.u, c.predicted, c.holds))
}

/// Summary of an injectivity sweep.
#[pyclass(name = "Report", module = "pgmip", frozen)]
pub struct PyReport {
    #[pyo3(get)]
    tuples: usize,
    #[pyo3(get)]
    collisions: Vec<(PyTuple5, PyTuple5)>,
    #[pyo3(get)]
    u_failures: Vec<PyTuple5>,
    #[pyo3(get)]
    exponent_failures: Vec<PyTuple5>,
    #[pyo3(get)]
    passed: bool,
}

#[pymethods]
impl PyReport {
    fn __repr__(&self) -> String {
        format!(
            "Report(tuples={}, collisions={}, passed={})",
            self.tuples,
            self.collisions.len(),
            if self.passed { "True" } else { "False" }
        )
    }
}

#[pyfunction]
#[pyo3(signature = (p, max_total, formula_only = false, drop_x = false))]
fn verify(py: Python<'_>, p: u64, max_total: u32, formula_only: bool, drop_x: bool) -> PyResult<PyReport> {
    let mut opts = FingerprintOptions::for_prime(p);
    opts.formula_only = formula_only;
    opts.drop_x = drop_x;
    let r = py
        .detach(|| invariants::verify_injectivity(p, max_total, &opts))
        .map_err(err)?;
    let wrap = |v: Vec<params::Tuple5>| v.into_iter().map(PyTuple5).collect();
    Ok(PyReport {
        tuples: r.records.len(),
        collisions: r
            .collisions
            .iter()
            .map(|(a, b)| (PyTuple5(*a), PyTuple5(*b)))
            .collect(),
        u_failures: wrap(r.u_failures()),
        exponent_failures: wrap(r.exponent_failures()),
        passed: r.passed(),
    })
}

#[pymodule]
#[pyo3(name = "pgmip")]
fn pgmip_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTuple5>()?;
    m.add_class::<PyNormalForm>()?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyFingerprint>()?;
    m.add_class::<PyReport>()?;
    m.add_function(wrap_pyfunction!(is_admissible, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_admissible, m)?)?;
    m.add_function(wrap_pyfunction!(region, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_tuple, m)?)?;
    m.add_function(wrap_pyfunction!(canonicalize, m)?)?;
    m.add_function(wrap_pyfunction!(relations_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(brute_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(fingerprint, m)?)?;
    m.add_function(wrap_pyfunction!(fingerprint_table, m)?)?;
    m.add_function(wrap_pyfunction!(u_invariant, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add("DEFAULT_TABLE_CAP", DEFAULT_TABLE_CAP)?;
    m.add("DEFAULT_BRUTE_CAP", DEFAULT_BRUTE_CAP)?;
    Ok(())
}
