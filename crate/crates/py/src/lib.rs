use ::permgen as core;
use core::builder;
use core::cohomology::{self, GfpModule, ModuleSpec};
use core::report;
use core::{crowns, genset, structure, verify, Error, Limits, PermGroup, Permutation};
use pyo3::create_exception;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(permgen, ParseError, PyValueError);
create_exception!(permgen, ResourceLimitError, PyRuntimeError);

fn to_py(e: Error) -> PyErr {
    if e.is_parse_error() {
        ParseError::new_err(e.to_string())
    } else if e.is_resource_limit() {
        ResourceLimitError::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

fn loads<'py>(py: Python<'py>, text: &str) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (text,))
}

fn to_json<T: serde::Serialize>(x: &T) -> String {
    serde_json::to_string(x).expect("serializable")
}

/// A permutation group built from an expression.
#[pyclass(name = "Group", module = "permgen", frozen)]
struct PyGroup {
    id: String,
    group: PermGroup,
    limits: Limits,
}

#[pymethods]
impl PyGroup {
    #[new]
    #[pyo3(signature = (expr, max_order=None, seed=None))]
    fn new(expr: &str, max_order: Option<u128>, seed: Option<u64>) -> PyResult<Self> {
        let mut limits = Limits::default();
        if let Some(x) = max_order {
            limits.max_order = x;
        }
        if let Some(x) = seed {
            limits.seed = x;
        }
        let e = builder::parse(expr).map_err(to_py)?;
        let group = builder::evaluate(&e, &limits).map_err(to_py)?;
        Ok(PyGroup {
            id: e.to_string(),
            group,
            limits,
        })
    }

    /// Group generated by permutations given as 0-based image lists.
    #[staticmethod]
    fn from_generators(degree: usize, generators: Vec<Vec<u32>>) -> PyResult<Self> {
        let gens = generators
            .into_iter()
            .map(Permutation::from_images)
            .collect::<Result<Vec<_>, _>>()
            .map_err(to_py)?;
        let group = PermGroup::new(degree, gens).map_err(to_py)?;
        Ok(PyGroup {
            id: format!("<{} generators on {degree} points>", group.generators().len()),
            group,
            limits: Limits::default(),
        })
    }

    #[getter]
    fn id(&self) -> &str {
        &self.id
    }

    #[getter]
    fn order(&self) -> u128 {
        self.group.order()
    }

    #[getter]
    fn degree(&self) -> usize {
        self.group.degree()
    }

    /// Generators as 0-based image lists.
    #[getter]
    fn generators(&self) -> Vec<Vec<u32>> {
        self.group.generators().iter().map(|x| x.images().to_vec()).collect()
    }

    fn contains(&self, images: Vec<u32>) -> PyResult<bool> {
        let p = Permutation::from_images(images).map_err(to_py)?;
        Ok(p.degree() == self.group.degree() && self.group.contains(&p))
    }

    fn is_soluble(&self) -> bool {
        core::group::is_soluble(&self.group)
    }

    fn d(&self, py: Python<'_>) -> PyResult<usize> {
        py.detach(|| genset::d(&self.group, &self.limits)).map_err(to_py)
    }

    /// `m(G)` together with a witness set of 0-based image lists.
    fn m(&self, py: Python<'_>) -> PyResult<(usize, Vec<Vec<u32>>)> {
        let s = py
            .detach(|| genset::m(&self.group, &self.limits))
            .map_err(to_py)?;
        Ok((s.len(), s.elements.iter().map(|x| x.images().to_vec()).collect()))
    }

    /// Sizes `k` in `[d, m]` that have an independent generating set.
    fn spectrum(&self, py: Python<'_>) -> PyResult<Vec<usize>> {
        let p = py
            .detach(|| genset::spectrum(&self.group, &self.limits))
            .map_err(to_py)?;
        Ok(p.spectrum.keys().copied().collect())
    }

    fn frattini_order(&self) -> PyResult<u128> {
        Ok(structure::frattini(&self.group, &self.limits).map_err(to_py)?.order())
    }

    fn socle_order(&self) -> PyResult<u128> {
        Ok(structure::socle(&self.group, &self.limits).map_err(to_py)?.order())
    }

    /// Chief factors bottom-up as dicts.
    fn chief_factors<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let r = report::report_group(&self.id, &self.group, &self.limits);
        loads(py, &to_json(&r.chief_factors))
    }

    /// Full report as a dict following the JSON schema.
    fn report<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let r = py.detach(|| report::report_group(&self.id, &self.group, &self.limits));
        loads(py, &r.canonical_json())
    }

    /// One of "md-equal", "nonsoluble", "soluble".
    fn verify<'py>(&self, py: Python<'py>, theorem: &str) -> PyResult<Bound<'py, PyAny>> {
        let (g, l) = (&self.group, &self.limits);
        let v = py
            .detach(|| match theorem {
                "md-equal" => Some(verify::verify_md_equal(g, l)),
                "nonsoluble" => Some(verify::verify_nonsoluble(g, l)),
                "soluble" => Some(verify::verify_soluble_cases(g, l)),
                _ => None,
            })
            .ok_or_else(|| PyValueError::new_err(format!("unknown theorem `{theorem}`")))?
            .map_err(to_py)?;
        loads(py, &to_json(&v))
    }

    /// Number of generating `m`-tuples.
    fn eulerian(&self, m: u32) -> PyResult<i128> {
        crowns::eulerian(&self.group, m, &self.limits).map_err(to_py)
    }

    /// Crown-based power of size `k` over the socle.
    fn crown_power(&self, k: usize) -> PyResult<PyGroup> {
        let a = structure::socle(&self.group, &self.limits).map_err(to_py)?;
        let group = crowns::crown_power(&self.group, &a, k, &self.limits).map_err(to_py)?;
        Ok(PyGroup {
            id: format!("CROWN({}, {k})", self.id),
            group,
            limits: self.limits.clone(),
        })
    }

    /// `dim H¹(G, M)` for the module given by one matrix per generator.
    fn h1(&self, prime: u32, matrices: Vec<Vec<Vec<u32>>>) -> PyResult<usize> {
        let dim = matrices.first().map_or(0, Vec::len);
        let spec = ModuleSpec { prime, dim, matrices };
        let m = GfpModule::from_spec(&self.group, &spec, &self.limits).map_err(to_py)?;
        cohomology::h1_dimension(&self.group, &m, &self.limits).map_err(to_py)
    }

    fn __repr__(&self) -> String {
        format!("Group({:?}, order={})", self.id, self.group.order())
    }
}

/// Canonical text of an expression.
#[pyfunction]
fn parse(expr: &str) -> PyResult<String> {
    Ok(builder::parse(expr).map_err(to_py)?.to_string())
}

/// Reports for every `.grp` file in a directory, as dicts.
#[pyfunction]
#[pyo3(signature = (directory, slow=false, threads=0))]
fn run_corpus<'py>(py: Python<'py>, directory: &str, slow: bool, threads: usize) -> PyResult<Bound<'py, PyAny>> {
    let opts = report::CorpusOptions {
        slow,
        threads,
        ..Default::default()
    };
    let reports = py
        .detach(|| report::run_corpus(std::path::Path::new(directory), &opts))
        .map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    let canonical: Vec<serde_json::Value> = reports
        .iter()
        .map(|r| serde_json::from_str(&r.canonical_json()).expect("valid json"))
        .collect();
    loads(py, &to_json(&canonical))
}

#[pymodule]
#[pyo3(name = "permgen")]
fn permgen_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGroup>()?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(run_corpus, m)?)?;
    m.add("ParseError", m.py().get_type::<ParseError>())?;
    m.add("ResourceLimitError", m.py().get_type::<ResourceLimitError>())?;
    Ok(())
}
