//! Python bindings. Representations are wrapped as `Rep`; richer results
//! travel as JSON strings in the same format the CLI emits.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use sympdeg_core::coxeter::evaluate;
use sympdeg_core::oracle::{rank_seq_bruteforce, realize_epsilon_form, realize_matrices};
use sympdeg_core::pbw::{
    check_lemma_ui, dynkin_face_contains, find_interior_point, lagrangian_fixed_points,
    u_iprime_word, w_i_word, CRootVector, PbwSubset,
};
use sympdeg_core::render::sym_path_table;
use sympdeg_core::symdegen::{is_epsilon_rep, EpsilonRep, SymmetricType};
use sympdeg_core::{degen, rep, symdegen, Error, RankSequence, Representation};

create_exception!(sympdeg, SympdegError, PyException);

fn err(e: Error) -> PyErr {
    SympdegError::new_err(format!("{}: {e}", e.name()))
}

fn json_err(e: serde_json::Error) -> PyErr {
    err(Error::InvalidInput(e.to_string()))
}

#[pyclass(name = "Rep", module = "sympdeg", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyRep(Representation);

#[pymethods]
impl PyRep {
    /// `Rep(n, [(i, j, m), ...])`
    #[new]
    #[pyo3(signature = (n, triples=Vec::new()))]
    fn new(n: usize, triples: Vec<(usize, usize, u32)>) -> PyResult<Self> {
        Representation::from_triples(n, triples).map(PyRep).map_err(err)
    }

    #[staticmethod]
    fn from_ranks(rows: Vec<Vec<u32>>) -> PyResult<Self> {
        let r = RankSequence::from_rows(rows).map_err(err)?;
        rep::rep_of(&r).map(PyRep).map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(PyRep).map_err(json_err)
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0).expect("serializable")
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    fn triples(&self) -> Vec<(usize, usize, u32)> {
        self.0.iter().map(|(s, m)| (s.i, s.j, m)).collect()
    }

    fn ranks(&self) -> Vec<Vec<u32>> {
        rep::ranks_of(&self.0).rows().to_vec()
    }

    fn dim_vector(&self) -> Vec<u32> {
        self.0.dim_vector().entries().to_vec()
    }

    fn dual(&self) -> Self {
        PyRep(rep::dual(&self.0))
    }

    fn direct_sum(&self, other: &PyRep) -> PyResult<Self> {
        self.0.direct_sum(&other.0).map(PyRep).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Rep({})", self.0)
    }
}

fn sym_of(ty: Option<&str>, n: usize) -> PyResult<SymmetricType> {
    match ty {
        Some(t) => SymmetricType::from_name(t, n).map_err(err),
        None => Ok(SymmetricType::split_for(n)),
    }
}

fn eps_pair(m: &PyRep, n: &PyRep, ty: Option<&str>) -> PyResult<(EpsilonRep, EpsilonRep)> {
    let sym = sym_of(ty, m.0.n())?;
    Ok((
        EpsilonRep::new(m.0.clone(), sym).map_err(err)?,
        EpsilonRep::new(n.0.clone(), sym).map_err(err)?,
    ))
}

fn subset(n: usize, csv: &str) -> PyResult<PbwSubset> {
    PbwSubset::parse(n, csv).map_err(err)
}

#[pyfunction]
fn hom(m: &PyRep, n: &PyRep) -> PyResult<u64> {
    rep::hom_dim(&m.0, &n.0).map_err(err)
}

#[pyfunction]
fn ext(m: &PyRep, n: &PyRep) -> PyResult<u64> {
    rep::ext_dim(&m.0, &n.0).map_err(err)
}

#[pyfunction]
fn degenerates(m: &PyRep, n: &PyRep) -> PyResult<bool> {
    degen::degenerates(&m.0, &n.0).map_err(err)
}

/// `[(move, rep), ...]` from `m` to `n`.
#[pyfunction]
fn degeneration_path(m: &PyRep, n: &PyRep) -> PyResult<Vec<(String, PyRep)>> {
    let path = degen::degeneration_path(&m.0, &n.0).map_err(err)?;
    Ok(path.into_iter().map(|s| (s.mv.to_string(), PyRep(s.rep))).collect())
}

#[pyfunction]
#[pyo3(signature = (rep, ty=None))]
fn is_epsilon(rep: &PyRep, ty: Option<&str>) -> PyResult<bool> {
    Ok(is_epsilon_rep(&rep.0, sym_of(ty, rep.0.n())?))
}

#[pyfunction]
#[pyo3(signature = (m, n, ty=None))]
fn sym_degenerates(m: &PyRep, n: &PyRep, ty: Option<&str>) -> PyResult<bool> {
    let (a, b) = eps_pair(m, n, ty)?;
    symdegen::sym_degenerates(&a, &b).map_err(err)
}

/// The symmetric degeneration sequence as JSON.
#[pyfunction]
#[pyo3(signature = (m, n, ty=None))]
fn sym_path(m: &PyRep, n: &PyRep, ty: Option<&str>) -> PyResult<String> {
    let (a, b) = eps_pair(m, n, ty)?;
    let path = symdegen::sym_degeneration_path(&a, &b).map_err(err)?;
    Ok(serde_json::to_string(&path).expect("serializable"))
}

#[pyfunction]
#[pyo3(signature = (m, n, ty=None))]
fn sym_table(m: &PyRep, n: &PyRep, ty: Option<&str>) -> PyResult<String> {
    let (a, b) = eps_pair(m, n, ty)?;
    let path = symdegen::sym_degeneration_path(&a, &b).map_err(err)?;
    Ok(sym_path_table(&path))
}

/// Ranks of a scrambled matrix realization; equal to `rep.ranks()`.
#[pyfunction]
#[pyo3(signature = (rep, seed=0))]
fn realized_ranks(rep: &PyRep, seed: u64) -> Vec<Vec<u32>> {
    let real = realize_matrices(&rep.0).scrambled(seed);
    rank_seq_bruteforce(&real).rows().to_vec()
}

/// Builds and checks an explicit ε-form; raises on failure.
#[pyfunction]
#[pyo3(signature = (rep, ty=None, seed=0))]
fn verify_form(rep: &PyRep, ty: Option<&str>, seed: u64) -> PyResult<()> {
    let e = EpsilonRep::new(rep.0.clone(), sym_of(ty, rep.0.n())?).map_err(err)?;
    realize_epsilon_form(&e)
        .map_err(err)?
        .scrambled(seed)
        .verify()
        .map_err(|m| err(Error::AlgorithmStuck(m)))
}

/// `(w_i, u_i')` as words and one-line notation.
#[pyfunction]
fn pbw_words(n: usize, subset_csv: &str) -> PyResult<((String, Vec<i64>), (String, Vec<i64>))> {
    let p = subset(n, subset_csv)?;
    let (w, u) = (w_i_word(&p), u_iprime_word(&p));
    Ok((
        (w.to_string(), evaluate(&w).one_line()),
        (u.to_string(), evaluate(&u).one_line()),
    ))
}

#[pyfunction]
fn pbw_interior(n: usize, subset_csv: &str) -> PyResult<String> {
    let d = find_interior_point(&subset(n, subset_csv)?).map_err(err)?;
    Ok(d.to_json().to_string())
}

#[pyfunction]
#[pyo3(signature = (n, subset_csv, point, strict=false))]
fn pbw_face_contains(n: usize, subset_csv: &str, point: &str, strict: bool) -> PyResult<bool> {
    let p = subset(n, subset_csv)?;
    let v: serde_json::Value = serde_json::from_str(point).map_err(json_err)?;
    let d = CRootVector::from_json(&v).map_err(err)?;
    Ok(dynkin_face_contains(&p, &d, strict))
}

#[pyfunction]
fn pbw_fixed_points(n: usize, subset_csv: &str) -> PyResult<Vec<Vec<Vec<usize>>>> {
    let p = subset(n, subset_csv)?;
    Ok(lagrangian_fixed_points(&p)
        .into_iter()
        .map(|fp| fp.sets.into_iter().map(|s| s.into_iter().collect()).collect())
        .collect())
}

#[pyfunction]
fn pbw_lemma_ui(n: usize, subset_csv: &str) -> PyResult<String> {
    let report = check_lemma_ui(&subset(n, subset_csv)?);
    Ok(serde_json::to_string(&report).expect("serializable"))
}

#[pymodule]
fn sympdeg(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SympdegError", m.py().get_type::<SympdegError>())?;
    m.add_class::<PyRep>()?;
    m.add_function(wrap_pyfunction!(hom, m)?)?;
    m.add_function(wrap_pyfunction!(ext, m)?)?;
    m.add_function(wrap_pyfunction!(degenerates, m)?)?;
    m.add_function(wrap_pyfunction!(degeneration_path, m)?)?;
    m.add_function(wrap_pyfunction!(is_epsilon, m)?)?;
    m.add_function(wrap_pyfunction!(sym_degenerates, m)?)?;
    m.add_function(wrap_pyfunction!(sym_path, m)?)?;
    m.add_function(wrap_pyfunction!(sym_table, m)?)?;
    m.add_function(wrap_pyfunction!(realized_ranks, m)?)?;
    m.add_function(wrap_pyfunction!(verify_form, m)?)?;
    m.add_function(wrap_pyfunction!(pbw_words, m)?)?;
    m.add_function(wrap_pyfunction!(pbw_interior, m)?)?;
    m.add_function(wrap_pyfunction!(pbw_face_contains, m)?)?;
    m.add_function(wrap_pyfunction!(pbw_fixed_points, m)?)?;
    m.add_function(wrap_pyfunction!(pbw_lemma_ui, m)?)?;
    Ok(())
}
