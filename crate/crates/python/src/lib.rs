//! Python bindings. Positions are 0-based here, as in the Rust API.

use pyo3::exceptions::{PyIndexError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use serde_json::{json, Value};

use sympunct::code::StabilizerCode;
use sympunct::distance::{self, EnumBudget, MinWeightReport, DEFAULT_WORD_CAP};
use sympunct::error::Error;
use sympunct::experiment::{self, DedupeMode, EnumerateOptions, Tier};
use sympunct::gfp::{FpMatrix, PrimeField, Residue};
use sympunct::search::{self, HittingMode, OrbitGroup};
use sympunct::symplectic::ProjPair;
use sympunct::{fixtures, griesmer, io, puncture};

fn py_err(e: Error) -> PyErr {
    match e {
        Error::InvalidIndex { .. } => PyIndexError::new_err(e.to_string()),
        Error::BudgetExceeded { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn to_py<'py>(py: Python<'py>, v: &Value) -> PyResult<Bound<'py, PyAny>> {
    Ok(match v {
        Value::Null => py.None().into_bound(py),
        Value::Bool(b) => b.into_pyobject(py)?.to_owned().into_any(),
        Value::Number(n) => match (n.as_u64(), n.as_i64()) {
            (Some(u), _) => u.into_pyobject(py)?.into_any(),
            (None, Some(i)) => i.into_pyobject(py)?.into_any(),
            _ => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any(),
        Value::Array(a) => {
            let items = a.iter().map(|x| to_py(py, x)).collect::<PyResult<Vec<_>>>()?;
            PyList::new(py, items)?.into_any()
        }
        Value::Object(o) => {
            let d = PyDict::new(py);
            for (k, x) in o {
                d.set_item(k, to_py(py, x)?)?;
            }
            d.into_any()
        }
    })
}

fn budget(workers: Option<usize>, max_vectors: u64) -> EnumBudget {
    let b = EnumBudget::new(max_vectors);
    match workers {
        Some(w) => b.with_workers(w),
        None => b,
    }
}

fn report_value(r: &MinWeightReport, with_words: bool) -> Value {
    let mut v = json!({
        "d": r.d,
        "pure": r.pure,
        "stabilizer_min_weight": r.stabilizer_min_weight,
        "word_count": r.word_count,
        "overflow": r.overflow,
        "complete": r.complete,
        "enumerated": r.enumerated,
    });
    if with_words {
        v["words"] = json!(r.words.iter().map(|w| w.to_row()).collect::<Vec<_>>());
    }
    v
}

fn group(name: &str) -> PyResult<OrbitGroup> {
    match name {
        "identity" => Ok(OrbitGroup::Identity),
        "cyclic" => Ok(OrbitGroup::Cyclic),
        _ => Err(PyValueError::new_err(format!("unknown orbit group '{name}'"))),
    }
}

type Avoidance = (usize, (Residue, Residue), usize);

/// A qudit stabilizer code `[[n, k]]_p` in symplectic form.
#[pyclass(name = "StabilizerCode", module = "pysympunct", frozen)]
struct PyCode {
    inner: StabilizerCode,
}

fn wrap(inner: StabilizerCode) -> PyCode {
    PyCode { inner }
}

#[pymethods]
impl PyCode {
    /// Builds a code from stabilizer rows `(a|b)` of length `2n`.
    #[new]
    #[pyo3(signature = (p, rows, n=None))]
    fn new(p: u32, rows: Vec<Vec<u64>>, n: Option<usize>) -> PyResult<Self> {
        let f = PrimeField::new(p).map_err(py_err)?;
        let cols = match (n, rows.first()) {
            (Some(n), _) => 2 * n,
            (None, Some(r)) => r.len(),
            (None, None) => return Err(PyValueError::new_err("n is required when there are no rows")),
        };
        let m = FpMatrix::from_rows(f, cols, &rows).map_err(py_err)?;
        StabilizerCode::from_stabilizer_matrix(m).map(wrap).map_err(py_err)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        io::parse_code(text).map(wrap).map_err(py_err)
    }

    #[staticmethod]
    fn from_file(path: std::path::PathBuf) -> PyResult<Self> {
        let text = std::fs::read_to_string(&path).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
        Self::parse(&text)
    }

    /// One of `qutrit_5_2_2`, `qutrit_15_3_5`, `qubit_21_5_6`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        fixtures::by_name(name)
            .map(wrap)
            .ok_or_else(|| PyValueError::new_err(format!("unknown fixture '{name}'")))
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn k(&self) -> usize {
        self.inner.k()
    }

    fn stabilizer(&self) -> Vec<Vec<Residue>> {
        self.inner.stab().row_iter().map(|r| r.to_vec()).collect()
    }

    fn extension(&self) -> Vec<Vec<Residue>> {
        self.inner.ext().row_iter().map(|r| r.to_vec()).collect()
    }

    fn centralizer(&self) -> Vec<Vec<Residue>> {
        self.inner.centralizer().row_iter().map(|r| r.to_vec()).collect()
    }

    fn to_text(&self) -> String {
        io::write_code(&self.inner)
    }

    /// sha256 of the canonical stabilizer form.
    fn hash(&self) -> String {
        experiment::code_hash(&self.inner)
    }

    fn __eq__(&self, other: &PyCode) -> bool {
        self.inner.canonical_key() == other.inner.canonical_key()
    }

    fn __repr__(&self) -> String {
        format!(
            "StabilizerCode([[{}, {}]]_{})",
            self.inner.n(),
            self.inner.k(),
            self.inner.p()
        )
    }

    fn puncture(&self, index: usize, alpha: Residue, beta: Residue) -> PyResult<Self> {
        puncture::puncture_with_case(&self.inner, index, (alpha, beta))
            .map(|(c, _)| wrap(c))
            .map_err(py_err)
    }

    fn shorten(&self, indices: Vec<usize>) -> PyResult<Self> {
        puncture::shorten(&self.inner, &indices).map(wrap).map_err(py_err)
    }

    #[pyo3(signature = (workers=None, max_vectors=1 << 36))]
    fn distance<'py>(&self, py: Python<'py>, workers: Option<usize>, max_vectors: u64) -> PyResult<Bound<'py, PyAny>> {
        let b = budget(workers, max_vectors);
        let r = py.detach(|| distance::min_distance(&self.inner, &b)).map_err(py_err)?;
        to_py(py, &report_value(&r, false))
    }

    #[pyo3(signature = (cap=DEFAULT_WORD_CAP, workers=None, max_vectors=1 << 36))]
    fn min_weight_words<'py>(
        &self,
        py: Python<'py>,
        cap: usize,
        workers: Option<usize>,
        max_vectors: u64,
    ) -> PyResult<Bound<'py, PyAny>> {
        let b = budget(workers, max_vectors);
        let r = py
            .detach(|| distance::min_weight_words(&self.inner, &b, cap))
            .map_err(py_err)?;
        to_py(py, &report_value(&r, true))
    }

    /// `(index, (alpha, beta), guaranteed_d)` for every single puncture that keeps the distance.
    fn search_avoid(&self, py: Python<'_>) -> PyResult<Vec<Avoidance>> {
        let code = &self.inner;
        py.detach(|| {
            let r = distance::min_weight_words(code, &EnumBudget::default(), DEFAULT_WORD_CAP)?;
            search::find_avoidance(code, &r)
        })
        .map(|v| {
            v.into_iter()
                .map(|a| (a.index, a.pair.as_tuple(), a.guaranteed_d))
                .collect()
        })
        .map_err(py_err)
    }

    /// Witness pairs for puncturing `indices` together, or None.
    fn tuple_witness(&self, py: Python<'_>, indices: Vec<usize>) -> PyResult<Option<Vec<(Residue, Residue)>>> {
        let code = &self.inner;
        py.detach(|| {
            let r = distance::min_weight_words(code, &EnumBudget::default(), DEFAULT_WORD_CAP)?;
            search::tuple_criterion(code, &r, &indices)
        })
        .map(|tc| tc.witness.map(|w| w.into_iter().map(ProjPair::as_tuple).collect()))
        .map_err(py_err)
    }

    #[pyo3(signature = (exact=false, max_size=None))]
    fn hitting_set(&self, py: Python<'_>, exact: bool, max_size: Option<usize>) -> PyResult<Vec<usize>> {
        let code = &self.inner;
        let mode = if exact { HittingMode::Exact } else { HittingMode::Greedy };
        py.detach(|| {
            let r = distance::centralizer_min_weight_words(code, &EnumBudget::default(), DEFAULT_WORD_CAP)?;
            search::find_hitting_set(&r, mode, max_size.unwrap_or(code.n()))
        })
        .map(|h| h.indices)
        .map_err(py_err)
    }

    fn griesmer<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        let c = &self.inner;
        let d = py
            .detach(|| distance::min_distance(c, &EnumBudget::default()))
            .map_err(py_err)?
            .d;
        to_py(py, &json!(griesmer::griesmer_bound(c.n(), c.k(), d, c.p())))
    }

    /// Returns `(reduced_code, trace)`.
    fn griesmer_reduce<'py>(&self, py: Python<'py>) -> PyResult<(Self, Bound<'py, PyAny>)> {
        let (c, trace) = py
            .detach(|| griesmer::griesmer_reduce(&self.inner, &EnumBudget::default()))
            .map_err(py_err)?;
        Ok((wrap(c), to_py(py, &json!(trace))?))
    }

    #[pyo3(signature = (t, orbit="identity", dedupe="combos", long_tier=false, checkpoint=None))]
    fn enumerate_punctures<'py>(
        &self,
        py: Python<'py>,
        t: usize,
        orbit: &str,
        dedupe: &str,
        long_tier: bool,
        checkpoint: Option<std::path::PathBuf>,
    ) -> PyResult<Bound<'py, PyAny>> {
        let mut opts = EnumerateOptions::new(t);
        opts.group = group(orbit)?;
        opts.dedupe = match dedupe {
            "combos" => DedupeMode::Combos,
            "canonical" => DedupeMode::Canonical,
            _ => return Err(PyValueError::new_err(format!("unknown dedupe mode '{dedupe}'"))),
        };
        opts.tier = if long_tier { Tier::Long } else { Tier::Short };
        opts.checkpoint = checkpoint;
        let h = py
            .detach(|| experiment::enumerate_punctures(&self.inner, &opts))
            .map_err(py_err)?;
        to_py(py, &json!(h))
    }
}

#[pyfunction]
fn griesmer_bound(n: usize, k: usize, d: usize, p: u32) -> (u64, bool) {
    let v = griesmer::griesmer_bound(n, k, d, p);
    (v.bound_value, v.satisfied)
}

/// Orbit representatives of the `t`-subsets of `0..n`.
#[pyfunction]
#[pyo3(signature = (n, t, orbit="cyclic"))]
fn orbit_reps(n: usize, t: usize, orbit: &str) -> PyResult<Vec<Vec<usize>>> {
    search::orbit_reps(n, t, &group(orbit)?).map_err(py_err)
}

#[pymodule]
fn pysympunct(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCode>()?;
    m.add_function(wrap_pyfunction!(griesmer_bound, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_reps, m)?)?;
    Ok(())
}
