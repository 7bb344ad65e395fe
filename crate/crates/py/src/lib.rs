//! Python bindings: complexes, the two constructions, homology and certification.
//!
//! Structured results (homology profiles, reports, certificates) cross the
//! boundary as JSON and come out as plain dicts.

use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use sphereprod::certify::{self as certs, Target};
use sphereprod::crosspoly;
use sphereprod::homology;
use sphereprod::io::{ComplexDocument, Format};
use sphereprod::verify::{self, DEFAULT_BUDGET};
use sphereprod::{balanced, Coloring, Error, Face, Permutation, VertexId};

create_exception!(
    sphereprod,
    BudgetExceeded,
    PyRuntimeError,
    "A search budget or group cap ran out."
);

fn to_py(e: Error) -> PyErr {
    if e.is_resource_limit() {
        BudgetExceeded::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn json_to_py<'py>(py: Python<'py>, value: &impl serde::Serialize) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn face(labels: Vec<String>) -> PyResult<Face> {
    Face::new(labels).map_err(to_py)
}

fn labels(f: &Face) -> Vec<String> {
    f.iter().map(|v| v.to_string()).collect()
}

/// A finite simplicial complex given by its facets.
#[pyclass(name = "SimplicialComplex", module = "sphereprod", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyComplex {
    doc: ComplexDocument,
}

impl PyComplex {
    fn wrap(doc: ComplexDocument) -> Self {
        PyComplex { doc }
    }
}

#[pymethods]
impl PyComplex {
    #[new]
    #[pyo3(signature = (facets, name = String::new()))]
    fn new(facets: Vec<Vec<String>>, name: String) -> PyResult<Self> {
        let faces = facets.into_iter().map(face).collect::<PyResult<Vec<_>>>()?;
        let complex = sphereprod::SimplicialComplex::from_facets(faces).map_err(to_py)?;
        Ok(Self::wrap(ComplexDocument::new(name, complex)))
    }

    /// Parses the plain or JSON encoding (detected from the text).
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        ComplexDocument::parse(text, Format::sniff(text))
            .map(Self::wrap)
            .map_err(to_py)
    }

    #[staticmethod]
    fn read(path: &str) -> PyResult<Self> {
        ComplexDocument::read(path).map(Self::wrap).map_err(to_py)
    }

    #[getter]
    fn name(&self) -> &str {
        &self.doc.name
    }

    #[getter]
    fn dim(&self) -> isize {
        self.doc.complex.dim()
    }

    fn facets(&self) -> Vec<Vec<String>> {
        self.doc.complex.facets().iter().map(labels).collect()
    }

    fn vertices(&self) -> Vec<String> {
        self.doc.complex.vertices().iter().map(|v| v.to_string()).collect()
    }

    /// `[f_0, f_1, …]` without the empty face.
    fn f_vector(&self) -> Vec<u64> {
        self.doc.complex.f_vector().nonempty().to_vec()
    }

    fn euler_characteristic(&self) -> i64 {
        self.doc.complex.f_vector().euler_characteristic()
    }

    fn coloring(&self) -> Option<BTreeMap<String, u32>> {
        let c = self.doc.coloring.as_ref()?;
        Some(c.assignment().iter().map(|(v, &k)| (v.to_string(), k)).collect())
    }

    fn involution(&self) -> Option<BTreeMap<String, String>> {
        let p = self.doc.involution.as_ref()?;
        Some(
            p.mapping()
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect(),
        )
    }

    fn link(&self, face_labels: Vec<String>) -> PyResult<Self> {
        let l = self.doc.complex.link(&face(face_labels)?).map_err(to_py)?;
        Ok(Self::wrap(ComplexDocument::new("", l)))
    }

    fn skeleton(&self, k: isize) -> PyResult<Self> {
        let s = self.doc.complex.skeleton(k).map_err(to_py)?;
        Ok(Self::wrap(ComplexDocument::new("", s)))
    }

    /// Integral homology as `{"groups": [{"dim", "rank", "torsion"}, …]}`.
    #[pyo3(signature = (reduced = true))]
    fn homology<'py>(&self, py: Python<'py>, reduced: bool) -> PyResult<Bound<'py, PyAny>> {
        let h = py
            .detach(|| homology::homology(&self.doc.complex, reduced))
            .map_err(to_py)?;
        json_to_py(py, &h)
    }

    /// Betti numbers by dimension, zeros omitted.
    #[pyo3(signature = (reduced = true))]
    fn betti(&self, py: Python<'_>, reduced: bool) -> PyResult<BTreeMap<isize, u64>> {
        let h = py
            .detach(|| homology::homology(&self.doc.complex, reduced))
            .map_err(to_py)?;
        Ok(h.nonzero_betti())
    }

    #[pyo3(signature = (coloring = None))]
    fn check_balanced<'py>(
        &self,
        py: Python<'py>,
        coloring: Option<BTreeMap<String, u32>>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let given = coloring.map(Coloring::from_pairs);
        let c = given.as_ref().or(self.doc.coloring.as_ref());
        json_to_py(py, &verify::check_balanced(&self.doc.complex, c))
    }

    #[pyo3(signature = (involution = None))]
    fn check_cs<'py>(
        &self,
        py: Python<'py>,
        involution: Option<BTreeMap<String, String>>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let alpha = match involution {
            Some(m) => Permutation::from_pairs(m.into_iter().map(|(a, b)| (VertexId::new(a), VertexId::new(b))))
                .map_err(to_py)?,
            None => self
                .doc
                .involution
                .clone()
                .ok_or_else(|| PyValueError::new_err("no involution given and none attached"))?,
        };
        json_to_py(py, &verify::check_cs(&self.doc.complex, &alpha))
    }

    fn check_pseudomanifold<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        json_to_py(py, &verify::check_closed_pseudomanifold(&self.doc.complex))
    }

    /// A vertex map onto `other`, or `None` when the complexes are not isomorphic.
    #[pyo3(signature = (other, budget = DEFAULT_BUDGET))]
    fn isomorphism(
        &self,
        py: Python<'_>,
        other: &PyComplex,
        budget: u64,
    ) -> PyResult<Option<BTreeMap<String, String>>> {
        let found = py
            .detach(|| verify::find_isomorphism(&self.doc.complex, &other.doc.complex, budget))
            .map_err(to_py)?;
        Ok(found.map(|m| {
            m.mapping()
                .iter()
                .map(|(a, b)| (a.to_string(), b.to_string()))
                .collect()
        }))
    }

    fn to_plain(&self) -> String {
        self.doc.to_plain()
    }

    fn to_json(&self) -> String {
        self.doc.to_json()
    }

    #[pyo3(signature = (path, format = "json"))]
    fn write(&self, path: &str, format: &str) -> PyResult<String> {
        let format: Format = format.parse().map_err(to_py)?;
        self.doc.write(path, format).map_err(to_py)
    }

    fn __len__(&self) -> usize {
        self.doc.complex.facets().len()
    }

    fn __eq__(&self, other: &PyComplex) -> bool {
        self.doc.complex == other.doc.complex
    }

    fn __repr__(&self) -> String {
        format!(
            "SimplicialComplex(name={:?}, f={:?})",
            self.doc.name,
            self.doc.complex.f_vector().nonempty()
        )
    }
}

fn first_document(target: Target) -> PyResult<PyComplex> {
    let docs = certs::build(&target).map_err(to_py)?;
    docs.into_iter()
        .next()
        .map(PyComplex::wrap)
        .ok_or_else(|| PyRuntimeError::new_err("build produced nothing"))
}

/// Boundary of the d-dimensional cross-polytope, with coloring and antipode.
#[pyfunction]
fn cross_polytope(d: usize) -> PyResult<PyComplex> {
    first_document(Target::CrossPolytope { d })
}

/// The complex B(i, d) of facets with at most i sign switches.
#[pyfunction]
fn b_complex(i: usize, d: usize) -> PyResult<PyComplex> {
    first_document(Target::BComplex { i, d })
}

/// Centrally symmetric S^2 x S^(d-3) on 2d + 2 vertices.
#[pyfunction]
fn cs_product(py: Python<'_>, d: usize) -> PyResult<PyComplex> {
    py.detach(|| first_document(Target::CsProduct { d }))
}

/// Balanced S^2 x S^(d-3) on 4d vertices, with its coloring.
#[pyfunction]
fn balanced_product(py: Python<'_>, d: usize) -> PyResult<PyComplex> {
    py.detach(|| {
        let sigma = balanced::build_sigma(d).map_err(to_py)?;
        Ok(PyComplex::wrap(
            ComplexDocument::new(format!("sigma-{d}"), sigma.complex).with_coloring(sigma.coloring),
        ))
    })
}

/// Checks the belt shelling of Γ_0 ∪ … ∪ Γ_i; returns the restriction faces.
#[pyfunction]
fn check_shelling(py: Python<'_>, d: usize, i: usize) -> PyResult<Vec<Vec<String>>> {
    py.detach(|| {
        let complex = crosspoly::gamma_union(i, d)?;
        let order = crosspoly::lemma_shelling_order(i, d)?;
        crosspoly::verify_shelling(&complex, &order)
    })
    .map(|cert| cert.restrictions.iter().map(labels).collect())
    .map_err(to_py)
}

fn target_from(name: &str, params: Option<&Bound<'_, PyDict>>) -> PyResult<Target> {
    let get = |key: &str| -> PyResult<Option<usize>> {
        match params.map(|p| p.get_item(key)).transpose()?.flatten() {
            Some(v) => Ok(Some(v.extract()?)),
            None => Ok(None),
        }
    };
    let need = |key: &str| -> PyResult<usize> {
        get(key)?.ok_or_else(|| PyValueError::new_err(format!("{name} needs {key}=")))
    };
    Ok(match name {
        "cross-polytope" => Target::CrossPolytope { d: need("d")? },
        "b-complex" => Target::BComplex {
            i: need("i")?,
            d: need("d")?,
        },
        "shelling" => Target::Shelling {
            d: need("d")?,
            i: need("i")?,
        },
        "cycle" => Target::Cycle { d: need("d")? },
        "cs-product" => Target::CsProduct { d: need("d")? },
        "cs-symmetry" => Target::CsSymmetry { d: need("d")? },
        "balanced-product" => Target::BalancedProduct {
            d: need("d")?,
            intermediates: false,
        },
        "inductive" => Target::Inductive {
            i: need("i")?,
            d: need("d")?,
        },
        "inductive-circle" => Target::InductiveCircle { d: need("d")? },
        "engine" => Target::Engine {
            samples: get("samples")?.unwrap_or(1000),
            seed: get("seed")?.unwrap_or(0) as u64,
        },
        other => return Err(PyValueError::new_err(format!("unknown target {other:?}"))),
    })
}

/// Runs the full check suite for a target, e.g. `certify("cs-product", d=5)`.
#[pyfunction]
#[pyo3(signature = (target, **params))]
fn certify<'py>(py: Python<'py>, target: &str, params: Option<&Bound<'py, PyDict>>) -> PyResult<Bound<'py, PyAny>> {
    let t = target_from(target, params)?;
    let cert = py.detach(|| certs::certify(&t)).map_err(to_py)?;
    json_to_py(py, &cert)
}

#[pymodule(name = "sphereprod")]
fn sphereprod_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyComplex>()?;
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_function(wrap_pyfunction!(cross_polytope, m)?)?;
    m.add_function(wrap_pyfunction!(b_complex, m)?)?;
    m.add_function(wrap_pyfunction!(cs_product, m)?)?;
    m.add_function(wrap_pyfunction!(balanced_product, m)?)?;
    m.add_function(wrap_pyfunction!(check_shelling, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use pyo3::ffi::c_str;

    fn with_module(script: &std::ffi::CStr) {
        Python::initialize();
        Python::attach(|py| {
            let m = PyModule::new(py, "sphereprod").unwrap();
            sphereprod_module(&m).unwrap();
            let globals = PyDict::new(py);
            globals.set_item("sp", m).unwrap();
            if let Err(e) = py.run(script, Some(&globals), None) {
                e.display(py);
                panic!("script failed");
            }
        });
    }

    #[test]
    fn complexes_round_trip_through_python() {
        with_module(c_str!(
            r#"
c = sp.cross_polytope(4)
assert c.f_vector() == [8, 24, 32, 16]
assert c.betti() == {3: 1}
assert sp.SimplicialComplex.parse(c.to_json()).involution() == c.involution()
assert len(c.link(["x1"])) == 8
"#
        ));
    }

    #[test]
    fn errors_map_to_python_exceptions() {
        with_module(c_str!(
            r#"
try:
    sp.SimplicialComplex([])
    raise AssertionError
except ValueError:
    pass
try:
    sp.certify("b-complex", d=5)
    raise AssertionError
except ValueError as e:
    assert "needs i=" in str(e)
try:
    sp.b_complex(2, 6).isomorphism(sp.b_complex(2, 6), budget=1)
    raise AssertionError
except sp.BudgetExceeded:
    pass
"#
        ));
    }

    #[test]
    fn certify_returns_plain_dicts() {
        with_module(c_str!(
            r#"
cert = sp.certify("shelling", d=5, i=2)
assert cert["passed"] is True
assert any(r["check"] == "shelling" for r in cert["reports"])
"#
        ));
    }
}
