//! Python bindings. Triples cross the boundary as JSON strings in the same
//! schema the command-line tool reads and writes.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use serde_json::json;

use solvsph_core::build::{build_subalgebra, check_sphericity, is_weight_basis, verify_closure};
use solvsph_core::combdata::{check_reduced, codims, largest_torus, validate as validate_triple};
use solvsph_core::enumerate::{d as count_d, d0 as count_d0, emit_table, enumerate_reduced, enumerate_valid};
use solvsph_core::transform::{elementary_transform, orbit as orbit_graph, regular_active_simple_roots};
use solvsph_core::{CombTriple, RootSystem, Support};

create_exception!(solvsph, SolvsphError, PyException);

fn err(e: impl std::fmt::Display) -> PyErr {
    SolvsphError::new_err(e.to_string())
}

fn system(label: &str) -> PyResult<RootSystem> {
    RootSystem::from_label(label).map_err(err)
}

fn triple(s: &str) -> PyResult<CombTriple> {
    serde_json::from_str(s).map_err(err)
}

fn dump(v: &impl serde::Serialize) -> PyResult<String> {
    serde_json::to_string(v).map_err(err)
}

#[pyfunction]
fn positive_roots(label: &str) -> PyResult<Vec<Vec<i32>>> {
    Ok(system(label)?.positive_roots().iter().map(|r| r.0.clone()).collect())
}

#[pyfunction]
fn cartan_matrix(label: &str) -> PyResult<Vec<Vec<i64>>> {
    Ok(system(label)?.cartan_matrix())
}

#[pyfunction]
fn structure_constant(label: &str, a: Vec<i32>, b: Vec<i32>) -> PyResult<i64> {
    let rs = system(label)?;
    let (a, b) = (solvsph_core::Root(a), solvsph_core::Root(b));
    if !rs.is_root(&a) || !rs.is_root(&b) {
        return Err(err("arguments must be roots"));
    }
    Ok(rs.structure_constant(&a, &b))
}

/// Report for (A), (D), (E), (C), (T) with the largest torus, plus (A'), (D'), (E').
#[pyfunction]
fn validate(label: &str, triple_json: &str) -> PyResult<String> {
    let (rs, t) = (system(label)?, triple(triple_json)?);
    let base = validate_triple(&rs, &t, None);
    if !base.admissible() {
        return dump(&base);
    }
    let mut rep = validate_triple(&rs, &t, Some(&largest_torus(&rs, &t)));
    let red = check_reduced(&rs, &t);
    rep.a_prime = red.a_prime;
    rep.d_prime = red.d_prime;
    rep.e_prime = red.e_prime;
    dump(&rep)
}

#[pyfunction]
fn is_reduced(label: &str, triple_json: &str) -> PyResult<bool> {
    Ok(check_reduced(&system(label)?, &triple(triple_json)?).ok())
}

#[pyfunction]
fn codimensions(label: &str, triple_json: &str) -> PyResult<(usize, usize)> {
    codims(&system(label)?, &triple(triple_json)?).map_err(err)
}

#[pyfunction]
fn regular_centers(label: &str, triple_json: &str) -> PyResult<Vec<usize>> {
    regular_active_simple_roots(&system(label)?, &triple(triple_json)?).map_err(err)
}

#[pyfunction]
fn transform(label: &str, triple_json: &str, center: usize) -> PyResult<String> {
    let t = elementary_transform(&system(label)?, &triple(triple_json)?, center).map_err(err)?;
    dump(&t)
}

#[pyfunction]
#[pyo3(signature = (label, triple_json, reduced=false))]
fn orbit(label: &str, triple_json: &str, reduced: bool) -> PyResult<String> {
    let g = orbit_graph(&system(label)?, &triple(triple_json)?, reduced).map_err(err)?;
    dump(&g.to_json())
}

/// Subalgebra with the largest torus, and its closure and sphericity verdicts.
#[pyfunction]
fn build(label: &str, triple_json: &str) -> PyResult<String> {
    let (rs, t) = (system(label)?, triple(triple_json)?);
    let model = build_subalgebra(&rs, &t, &largest_torus(&rs, &t)).map_err(err)?;
    let mut v = model.to_json();
    v["closed"] = json!(verify_closure(&rs, &model));
    v["s_invariant"] = json!(is_weight_basis(&rs, &model));
    v["spherical"] = json!(check_sphericity(&rs, &model));
    dump(&v)
}

/// One JSON object per triple; `support` is a list of 0-based simple-root indices.
#[pyfunction]
#[pyo3(signature = (label, support=None, reduced=true))]
fn enumerate(label: &str, support: Option<Vec<usize>>, reduced: bool) -> PyResult<Vec<String>> {
    let rs = system(label)?;
    let s: Support = match support {
        Some(idx) => {
            if let Some(i) = idx.iter().find(|&&i| i >= rs.rank()) {
                return Err(err(format!("support index {i} out of range")));
            }
            idx.iter().fold(0, |s, &i| s | 1 << i)
        }
        None => rs.full_support(),
    };
    let cat = if reduced {
        enumerate_reduced(&rs, s)
    } else {
        enumerate_valid(&rs, s)
    }
    .map_err(err)?;
    cat.json_lines().map(|v| dump(&v)).collect()
}

/// `(d0, d)`.
#[pyfunction]
fn counts(label: &str) -> PyResult<(usize, usize)> {
    let rs = system(label)?;
    Ok((count_d0(&rs).map_err(err)?, count_d(&rs).map_err(err)?))
}

#[pyfunction]
#[pyo3(signature = (labels, format="text"))]
fn table(labels: Vec<String>, format: &str) -> PyResult<String> {
    let systems = labels.iter().map(|l| system(l)).collect::<PyResult<Vec<_>>>()?;
    let t = emit_table(&systems).map_err(err)?;
    match format {
        "text" => Ok(t.to_text()),
        "csv" => Ok(t.to_csv()),
        "json" => dump(&t.to_json()),
        other => Err(err(format!("unknown format {other:?}"))),
    }
}

#[pymodule]
fn solvsph(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("SolvsphError", m.py().get_type::<SolvsphError>())?;
    m.add_function(wrap_pyfunction!(positive_roots, m)?)?;
    m.add_function(wrap_pyfunction!(cartan_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(structure_constant, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(is_reduced, m)?)?;
    m.add_function(wrap_pyfunction!(codimensions, m)?)?;
    m.add_function(wrap_pyfunction!(regular_centers, m)?)?;
    m.add_function(wrap_pyfunction!(transform, m)?)?;
    m.add_function(wrap_pyfunction!(orbit, m)?)?;
    m.add_function(wrap_pyfunction!(build, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    m.add_function(wrap_pyfunction!(counts, m)?)?;
    m.add_function(wrap_pyfunction!(table, m)?)?;
    Ok(())
}
