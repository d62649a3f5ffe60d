//! Python bindings: `Poset`, `PolyMap` and `Window` classes plus the
//! fixture registry and random generators. Exact rationals cross the
//! boundary as `fractions.Fraction`.

use std::collections::BTreeMap;

use num_rational::Ratio;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use posetric::complex::random::{random_map, random_ranked_poset, SeedSurface};
use posetric::fixtures::{self, Fixture};
use posetric::{curvature, invariants, CurvatureKind, PosetDensity, Rational};

fn err(e: posetric::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn frac(r: Rational) -> Ratio<i64> {
    Ratio::new(r.numer(), r.denom())
}

fn verification_dict<'py>(
    py: Python<'py>,
    v: &invariants::Verification,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("theorem", &v.theorem)?;
    d.set_item("lhs", frac(v.lhs))?;
    d.set_item("rhs", frac(v.rhs))?;
    d.set_item("holds", v.holds)?;
    d.set_item("witnesses", &v.witnesses)?;
    Ok(d)
}

fn classification_dict<'py>(
    py: Python<'py>,
    c: &invariants::ClassificationResult,
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("predicate", &c.predicate)?;
    d.set_item("verdict", c.verdict)?;
    let witnesses = PyList::empty(py);
    for w in &c.witnesses {
        let wd = PyDict::new(py);
        wd.set_item("condition", &w.condition)?;
        wd.set_item("elements", &w.elements)?;
        wd.set_item("detail", &w.detail)?;
        witnesses.append(wd)?;
    }
    d.set_item("witnesses", witnesses)?;
    Ok(d)
}

/// A finite poset given by its Hasse diagram.
#[pyclass(name = "Poset", frozen)]
struct PyPoset {
    inner: posetric::Poset,
}

impl PyPoset {
    fn rf(&self) -> PyResult<posetric::RankFunction> {
        self.inner.rank().map_err(err)
    }
}

#[pymethods]
impl PyPoset {
    #[new]
    fn new(elements: Vec<String>, covers: Vec<(String, String)>) -> PyResult<Self> {
        Ok(PyPoset {
            inner: posetric::Poset::build(elements, covers).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyPoset {
            inner: posetric::Poset::from_json(text).map_err(PyValueError::new_err)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn elements(&self) -> Vec<String> {
        self.inner.elements().map(str::to_string).collect()
    }

    fn covers(&self) -> Vec<(String, String)> {
        self.inner.cover_pairs()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!("Poset({} elements)", self.inner.len())
    }

    /// Maximum rank of the (unique) rank function.
    fn rank(&self) -> PyResult<usize> {
        Ok(self.rf()?.max_rank())
    }

    fn rank_of(&self, element: &str) -> PyResult<usize> {
        self.rf()?.rank_of(&self.inner, element).map_err(err)
    }

    fn f_vector(&self) -> PyResult<Vec<usize>> {
        Ok(self.rf()?.f_vector())
    }

    fn level_sets(&self) -> PyResult<Vec<Vec<String>>> {
        let rf = self.rf()?;
        Ok(rf
            .level_sets(&self.inner)
            .into_iter()
            .map(|lvl| lvl.into_iter().map(str::to_string).collect())
            .collect())
    }

    fn leq(&self, a: &str, b: &str) -> PyResult<bool> {
        self.inner.leq(a, b).map_err(err)
    }

    fn interval_cardinality(&self, a: &str, b: &str) -> PyResult<usize> {
        self.inner.interval_cardinality(a, b).map_err(err)
    }

    /// Local counts at an element: dict with keys a, b, u, d, n.
    fn local_counts<'py>(&self, py: Python<'py>, element: &str) -> PyResult<Bound<'py, PyDict>> {
        let c = self.inner.local_counts(&self.rf()?, element).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("a", c.a)?;
        d.set_item("b", c.b)?;
        d.set_item("u", c.u)?;
        d.set_item("d", c.d)?;
        d.set_item("n", c.n)?;
        Ok(d)
    }

    /// (shared_upper, shared_lower, count) with the element itself excluded
    /// from both sets.
    fn parallel_neighbors(&self, element: &str) -> PyResult<(Vec<String>, Vec<String>, usize)> {
        let pn = self
            .inner
            .parallel_neighbors(&self.rf()?, element)
            .map_err(err)?;
        Ok((
            pn.shared_upper.into_iter().collect(),
            pn.shared_lower.into_iter().collect(),
            pn.count,
        ))
    }

    fn counting_identities<'py>(
        &self,
        py: Python<'py>,
        rank: usize,
    ) -> PyResult<Bound<'py, PyDict>> {
        let ids = self.inner.counting_identities(&self.rf()?, rank);
        let d = PyDict::new(py);
        for (name, check) in [
            ("covers", ids.covers),
            ("upward", ids.upward),
            ("downward", ids.downward),
        ] {
            d.set_item(name, (check.lhs, check.rhs, check.holds()))?;
        }
        d.set_item("holds", ids.all_hold())?;
        Ok(d)
    }

    fn r0(&self, vertex: &str) -> PyResult<Ratio<i64>> {
        Ok(frac(
            curvature::r0(&self.inner, &self.rf()?, vertex).map_err(err)?,
        ))
    }

    fn r1(&self, edge: &str) -> PyResult<Ratio<i64>> {
        Ok(frac(
            curvature::r1(&self.inner, &self.rf()?, edge).map_err(err)?,
        ))
    }

    fn r2(&self, face: &str) -> PyResult<Ratio<i64>> {
        Ok(frac(
            curvature::r2(&self.inner, &self.rf()?, face).map_err(err)?,
        ))
    }

    /// Combinatorial Ricci curvature of an edge.
    fn ric(&self, edge: &str) -> PyResult<i64> {
        curvature::ric(&self.inner, &self.rf()?, edge).map_err(err)
    }

    /// Forman-style curvature A + B − N at any element.
    fn forman(&self, element: &str) -> PyResult<i64> {
        curvature::forman(&self.inner, &self.rf()?, element).map_err(err)
    }

    /// Stone vertex curvature, surface form.
    fn stone(&self, vertex: &str) -> PyResult<Ratio<i64>> {
        Ok(frac(
            curvature::stone_star_surface(&self.inner, &self.rf()?, vertex).map_err(err)?,
        ))
    }

    /// Stone vertex curvature, poset form.
    fn stone_general(&self, vertex: &str) -> PyResult<Ratio<i64>> {
        Ok(frac(
            curvature::stone_star_general(&self.inner, &self.rf()?, vertex).map_err(err)?,
        ))
    }

    /// Averages of R1, A1, B1 over the rank-1 level.
    fn averages<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let avg = curvature::averages(&self.inner, &self.rf()?).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("r1", frac(avg.r1))?;
        d.set_item("a1", frac(avg.a1))?;
        d.set_item("b1", frac(avg.b1))?;
        Ok(d)
    }

    /// (covered, lhs) for the sufficiently-covered inequality.
    fn is_sufficiently_covered(&self) -> PyResult<(bool, Ratio<i64>)> {
        let c = curvature::is_sufficiently_covered(&self.inner, &self.rf()?).map_err(err)?;
        Ok((c.covered, frac(c.lhs)))
    }

    fn ranked_euler_char(&self) -> PyResult<i64> {
        Ok(invariants::ranked_euler_char(&self.rf()?))
    }

    fn order_complex_euler(&self) -> i64 {
        invariants::order_complex_euler(&self.inner)
    }

    fn order_complex_f_vector(&self) -> Vec<usize> {
        invariants::order_complex(&self.inner).f_vector()
    }

    fn verify_gauss_bonnet<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let v = invariants::verify_gauss_bonnet(&self.inner, &self.rf()?).map_err(err)?;
        verification_dict(py, &v)
    }

    fn verify_gauss_bonnet_ric<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let v = invariants::verify_gauss_bonnet_ric(&self.inner, &self.rf()?).map_err(err)?;
        verification_dict(py, &v)
    }

    fn is_almost_polyhedral<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let c = invariants::is_almost_polyhedral(&self.inner, &self.rf()?).map_err(err)?;
        classification_dict(py, &c)
    }

    fn is_polyhedral_map_poset<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let c = invariants::is_polyhedral_map_poset(&self.inner, &self.rf()?).map_err(err)?;
        classification_dict(py, &c)
    }

    fn positive_average_check<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = invariants::positive_average_check(&self.inner, &self.rf()?).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("sufficiently_covered", r.sufficiently_covered)?;
        d.set_item("coverage_lhs", frac(r.coverage_lhs))?;
        d.set_item("r1_average", frac(r.r1_average))?;
        d.set_item("chi_gr", r.chi_gr)?;
        d.set_item("implication_holds", r.implication_holds)?;
        match r.ric_variant {
            Some(ric) => {
                let rd = PyDict::new(py);
                rd.set_item("ric_average", frac(ric.ric_average))?;
                rd.set_item("implication_holds", ric.implication_holds)?;
                d.set_item("ric_variant", rd)?;
            }
            None => d.set_item("ric_variant", py.None())?,
        }
        Ok(d)
    }

    /// Full curvature report as a JSON string (same schema as the CLI).
    #[pyo3(signature = (kinds = vec!["r0".into(), "r1".into(), "r2".into(), "ric".into()]))]
    fn curvature_report_json(&self, kinds: Vec<String>) -> PyResult<String> {
        let kinds: Vec<CurvatureKind> = kinds
            .iter()
            .map(|k| CurvatureKind::parse(k).map_err(err))
            .collect::<PyResult<_>>()?;
        let report = curvature::full_report(&self.inner, &self.rf()?, &kinds, None).map_err(err)?;
        serde_json::to_string_pretty(&report).map_err(|e| PyValueError::new_err(e.to_string()))
    }
}

/// A polygonal map of a closed surface, as cyclic vertex sequences.
#[pyclass(name = "PolyMap", frozen)]
struct PyPolyMap {
    inner: posetric::PolyMap,
}

#[pymethods]
impl PyPolyMap {
    #[new]
    fn new(faces: Vec<Vec<String>>) -> PyResult<Self> {
        Ok(PyPolyMap {
            inner: posetric::PolyMap::new(faces).map_err(err)?,
        })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyPolyMap {
            inner: posetric::PolyMap::from_json(text).map_err(PyValueError::new_err)?,
        })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn faces(&self) -> Vec<Vec<String>> {
        self.inner.face_cycles()
    }

    fn vertices(&self) -> Vec<String> {
        self.inner.vertex_names().map(str::to_string).collect()
    }

    fn f_vector(&self) -> (usize, usize, usize) {
        self.inner.f_vector()
    }

    fn euler_characteristic(&self) -> i64 {
        self.inner.euler_characteristic()
    }

    fn vertex_degree(&self, vertex: &str) -> PyResult<usize> {
        self.inner.vertex_degree(vertex).map_err(err)
    }

    fn min_face_size(&self) -> usize {
        self.inner.min_face_size()
    }

    fn face_poset(&self) -> PyPoset {
        PyPoset {
            inner: self.inner.face_poset().0,
        }
    }

    fn dual(&self) -> PyResult<PyPolyMap> {
        Ok(PyPolyMap {
            inner: self.inner.dual().map_err(err)?,
        })
    }

    fn is_isomorphic(&self, other: &PyPolyMap) -> bool {
        self.inner.is_isomorphic(&other.inner)
    }

    fn orientable(&self) -> bool {
        invariants::orientable(&self.inner)
    }

    fn verify_stone_gauss_bonnet<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let v = invariants::verify_stone_gauss_bonnet(&self.inner).map_err(err)?;
        verification_dict(py, &v)
    }

    fn negativity<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let r = invariants::negativity_criterion(&self.inner).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("all_negative", r.all_negative)?;
        d.set_item("min_face_size", r.min_face_size)?;
        d.set_item("iff_holds", r.iff_holds)?;
        Ok(d)
    }

    fn __repr__(&self) -> String {
        let (v, e, f) = self.inner.f_vector();
        format!("PolyMap(V={v}, E={e}, F={f})")
    }
}

/// A finite window of an infinite repeating poset; curvature is faithful
/// at interior elements only.
#[pyclass(name = "Window", frozen)]
struct PyWindow {
    inner: posetric::Window,
}

#[pymethods]
impl PyWindow {
    #[getter]
    fn poset(&self) -> PyPoset {
        PyPoset {
            inner: self.inner.poset.clone(),
        }
    }

    #[getter]
    fn interior(&self) -> Vec<String> {
        self.inner.interior.iter().cloned().collect()
    }

    #[getter]
    fn designated(&self) -> BTreeMap<String, String> {
        self.inner.designated.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "Window({} elements, {} interior)",
            self.inner.poset.len(),
            self.inner.interior.len()
        )
    }
}

/// Resolve a fixture by name (same registry as the CLI --fixture flag).
#[pyfunction]
fn fixture(py: Python<'_>, name: &str) -> PyResult<Py<PyAny>> {
    Ok(match fixtures::by_name(name).map_err(err)? {
        Fixture::Map(m) => Py::new(py, PyPolyMap { inner: m })?.into_any(),
        Fixture::Poset(p) => Py::new(py, PyPoset { inner: p })?.into_any(),
        Fixture::Window(w) => Py::new(py, PyWindow { inner: w })?.into_any(),
    })
}

/// Seeded random ranked poset of rank 2.
#[pyfunction]
#[pyo3(signature = (seed, n0, n1, n2, vertex_density = 0.5, edge_density = 0.5))]
fn random_poset(
    seed: u64,
    n0: usize,
    n1: usize,
    n2: usize,
    vertex_density: f64,
    edge_density: f64,
) -> PyResult<PyPoset> {
    Ok(PyPoset {
        inner: random_ranked_poset(
            seed,
            n0,
            n1,
            n2,
            PosetDensity {
                vertex_cover: vertex_density,
                edge_cover: edge_density,
            },
        )
        .map_err(err)?,
    })
}

/// Seeded random triangulation of the sphere or torus.
#[pyfunction]
#[pyo3(signature = (seed, surface = "sphere", divisions = 5, flips = 15))]
fn random_surface_map(
    seed: u64,
    surface: &str,
    divisions: usize,
    flips: usize,
) -> PyResult<PyPolyMap> {
    let surface = match surface {
        "sphere" => SeedSurface::Sphere,
        "torus" => SeedSurface::Torus,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown surface `{other}`, expected sphere or torus"
            )))
        }
    };
    Ok(PyPolyMap {
        inner: random_map(seed, surface, divisions, flips).map_err(err)?,
    })
}

#[pyfunction]
fn tetrahedron() -> PyPolyMap {
    PyPolyMap {
        inner: posetric::tetrahedron(),
    }
}

#[pyfunction]
fn cube() -> PyPolyMap {
    PyPolyMap {
        inner: posetric::cube(),
    }
}

#[pyfunction]
fn icosahedron() -> PyPolyMap {
    PyPolyMap {
        inner: posetric::icosahedron(),
    }
}

#[pyfunction]
fn torus_grid(m: usize, n: usize) -> PyResult<PyPolyMap> {
    Ok(PyPolyMap {
        inner: posetric::torus_grid(m, n).map_err(err)?,
    })
}

#[pymodule]
fn posetric_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<PyPoset>()?;
    m.add_class::<PyPolyMap>()?;
    m.add_class::<PyWindow>()?;
    m.add_function(wrap_pyfunction!(fixture, m)?)?;
    m.add_function(wrap_pyfunction!(random_poset, m)?)?;
    m.add_function(wrap_pyfunction!(random_surface_map, m)?)?;
    m.add_function(wrap_pyfunction!(tetrahedron, m)?)?;
    m.add_function(wrap_pyfunction!(cube, m)?)?;
    m.add_function(wrap_pyfunction!(icosahedron, m)?)?;
    m.add_function(wrap_pyfunction!(torus_grid, m)?)?;
    Ok(())
}
