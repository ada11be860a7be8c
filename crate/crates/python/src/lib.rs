//! Python module `spslab`. Lattices cross the boundary as lattice JSON
//! strings; structured results are returned as JSON strings too.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use serde_json::json;

use spslab_core::constructions::{
    grid, multifork_decompose, multifork_insert, s_lattice, theorem2_h, theorem2_l,
};
use spslab_core::corpus::enumerate_corpus;
use spslab_core::diagram::RectDiagram;
use spslab_core::io::{con_json, LatticeJson, PosetJson};
use spslab_core::lamps::{lamp_poset, quadruple};
use spslab_core::properties::{check_all, patch_characterize};
use spslab_core::render::{render, Format, RenderStyle};
use spslab_core::{Error, FiniteLattice};

fn to_py(e: Error) -> PyErr {
    match e {
        Error::IsoFailure(_)
        | Error::ReplayMismatch(_)
        | Error::EquivalenceViolation(_)
        | Error::GreyCellNotFound(_)
        | Error::LayoutContradiction(_)
        | Error::MissingShield(..)
        | Error::DecompositionFailed(_) => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn parse(text: &str) -> PyResult<LatticeJson> {
    serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))
}

fn lattice(text: &str) -> PyResult<FiniteLattice> {
    parse(text)?.to_lattice().map_err(to_py)
}

fn diagram(text: &str) -> PyResult<RectDiagram> {
    parse(text)?.to_diagram().map_err(to_py)
}

fn dump<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serialisable")
}

/// Lattice JSON of the grid with chains of lengths `m` and `n`.
#[pyfunction]
fn build_grid(m: usize, n: usize) -> PyResult<String> {
    Ok(dump(&LatticeJson::from_diagram(
        &grid(m, n).map_err(to_py)?,
    )))
}

/// Lattice JSON of B2 with a rank-`t` multifork.
#[pyfunction]
fn build_st(t: usize) -> PyResult<String> {
    Ok(dump(&LatticeJson::from_diagram(
        &s_lattice(t).map_err(to_py)?,
    )))
}

#[pyfunction]
#[pyo3(signature = (lattice_json, cell_top, rank = 1))]
fn multifork(lattice_json: &str, cell_top: &str, rank: usize) -> PyResult<String> {
    let d = diagram(lattice_json)?;
    let top = d.lattice().index_of(cell_top).map_err(to_py)?;
    let ins = multifork_insert(&d, top, rank).map_err(to_py)?;
    Ok(dump(&LatticeJson::from_diagram(&ins.diagram)))
}

/// Variant "H" is the glued sum, "L" the patch construction.
#[pyfunction]
#[pyo3(signature = (lattices, variant = "L"))]
fn theorem2(lattices: Vec<String>, variant: &str) -> PyResult<String> {
    match variant {
        "H" | "h" => {
            let parts = lattices
                .iter()
                .map(|s| lattice(s))
                .collect::<PyResult<Vec<_>>>()?;
            let refs: Vec<&FiniteLattice> = parts.iter().collect();
            Ok(dump(&LatticeJson::from_lattice(
                &theorem2_h(&refs).map_err(to_py)?,
            )))
        }
        "L" | "l" => {
            let parts = lattices
                .iter()
                .map(|s| diagram(s))
                .collect::<PyResult<Vec<_>>>()?;
            let refs: Vec<&RectDiagram> = parts.iter().collect();
            let b = theorem2_l(&refs).map_err(to_py)?;
            Ok(dump(&LatticeJson::from_diagram(&b.diagram)))
        }
        other => Err(PyValueError::new_err(format!(
            "variant must be H or L, not {other}"
        ))),
    }
}

/// Lattice JSON with coordinates filled in.
#[pyfunction]
fn layout(lattice_json: &str) -> PyResult<String> {
    Ok(dump(&LatticeJson::from_diagram(&diagram(lattice_json)?)))
}

#[pyfunction]
fn con_size(lattice_json: &str) -> PyResult<usize> {
    Ok(con_json(&lattice(lattice_json)?).con_size)
}

/// `{"con_size": n, "jir_poset": {"elements": [...], "covers": [...]}}`
#[pyfunction]
fn con(lattice_json: &str) -> PyResult<String> {
    Ok(dump(&con_json(&lattice(lattice_json)?)))
}

/// `{"lamps": [{"kind", "foot", "peak", "tubes", "quadruple"}], "order": poset}`
#[pyfunction]
fn lamps(lattice_json: &str) -> PyResult<String> {
    let d = diagram(lattice_json)?;
    let lp = lamp_poset(&d).map_err(to_py)?;
    let rows: Vec<_> = lp
        .lamps
        .iter()
        .map(|lamp| {
            let q = quadruple(&d, lamp);
            json!({
                "kind": lamp.kind.to_string(),
                "foot": d.name(lamp.foot),
                "peak": d.name(lamp.peak),
                "tubes": lamp.tubes.len(),
                "quadruple": [q.p, q.q, q.r, q.s],
            })
        })
        .collect();
    Ok(dump(
        &json!({"lamps": rows, "order": PosetJson::from(&lp.order)}),
    ))
}

#[pyfunction]
fn is_patch(lattice_json: &str) -> PyResult<bool> {
    let d = diagram(lattice_json)?;
    Ok(patch_characterize(d.lattice(), Some(&d))
        .map_err(to_py)?
        .is_patch)
}

/// Theorems 3 and 4 and the 3P3C property on Jir(Con L), as JSON.
#[pyfunction]
fn check(lattice_json: &str) -> PyResult<String> {
    let l = lattice(lattice_json)?;
    Ok(dump(&check_all(&spslab_core::jir_con_poset(&l), None)))
}

/// C1-diagram violations, empty for a valid diagram.
#[pyfunction]
fn validate(lattice_json: &str) -> PyResult<Vec<String>> {
    let d = diagram(lattice_json)?;
    Ok(d.validate_c1().iter().map(|v| v.to_string()).collect())
}

/// Insertion script `{"grid": [m, n], "steps": [...]}`.
#[pyfunction]
fn decompose(lattice_json: &str) -> PyResult<String> {
    let d = diagram(lattice_json)?;
    Ok(dump(&multifork_decompose(&d).map_err(to_py)?))
}

#[pyfunction]
#[pyo3(signature = (lattice_json, tikz = false))]
fn render_diagram(lattice_json: &str, tikz: bool) -> PyResult<String> {
    let d = diagram(lattice_json)?;
    let format = if tikz { Format::Tikz } else { Format::Svg };
    render(&d, format, &RenderStyle::default()).map_err(to_py)
}

/// Sizes of the enumerated slim rectangular lattices with at most
/// `max_size` elements.
#[pyfunction]
fn corpus_sizes(max_size: usize) -> Vec<usize> {
    enumerate_corpus(max_size)
        .items
        .iter()
        .map(|i| i.diagram.len())
        .collect()
}

#[pymodule]
fn spslab(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(build_grid, m)?)?;
    m.add_function(wrap_pyfunction!(build_st, m)?)?;
    m.add_function(wrap_pyfunction!(multifork, m)?)?;
    m.add_function(wrap_pyfunction!(theorem2, m)?)?;
    m.add_function(wrap_pyfunction!(layout, m)?)?;
    m.add_function(wrap_pyfunction!(con_size, m)?)?;
    m.add_function(wrap_pyfunction!(con, m)?)?;
    m.add_function(wrap_pyfunction!(lamps, m)?)?;
    m.add_function(wrap_pyfunction!(is_patch, m)?)?;
    m.add_function(wrap_pyfunction!(check, m)?)?;
    m.add_function(wrap_pyfunction!(validate, m)?)?;
    m.add_function(wrap_pyfunction!(decompose, m)?)?;
    m.add_function(wrap_pyfunction!(render_diagram, m)?)?;
    m.add_function(wrap_pyfunction!(corpus_sizes, m)?)?;
    Ok(())
}
