use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{grid, multifork_insert};
use crate::diagram::{recognize_oriented, RectDiagram};
use crate::error::{Error, Result};
use crate::iso::{canonical_form, is_isomorphic, CanonicalForm};
use crate::lamps::{lamp_poset, Lamp};
use crate::lattice::FiniteLattice;

/// Join coordinates `(j, i)` of a cell top at the time of insertion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CellLocator(pub usize, pub usize);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScriptStep {
    pub cell: CellLocator,
    pub rank: usize,
}

/// A grid `(m, n)` followed by multifork insertions; serialises as
/// `{"grid":[m,n],"steps":[{"cell":[j,i],"rank":k},...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertionScript {
    pub grid: (usize, usize),
    pub steps: Vec<ScriptStep>,
}

pub fn replay(script: &InsertionScript) -> Result<RectDiagram> {
    let (m, n) = script.grid;
    let mut d = grid(m, n)?;
    for (s, step) in script.steps.iter().enumerate() {
        let CellLocator(j, i) = step.cell;
        let top = d.at_coords(j, i).ok_or_else(|| {
            Error::Invalid(format!(
                "step {s}: no element at join coordinates ({j}, {i})"
            ))
        })?;
        d = multifork_insert(&d, top, step.rank)?.diagram;
    }
    Ok(d)
}

/// Removes the strips carrying `lamp`, returning the smaller diagram and
/// the step that restores `d` up to isomorphism.
fn peel(d: &RectDiagram, lamp: &Lamp) -> Option<(RectDiagram, ScriptStep)> {
    let l = d.lattice();
    let k = lamp.tubes.len();
    let (jq, iq) = d.join_coords(lamp.foot);
    if jq == 0 || iq == 0 || d.join_coords(lamp.peak) != (jq + k, iq + k) {
        return None;
    }
    let strip = |c: usize, start: usize| c >= start && c < start + k;
    let keep: Vec<usize> = (0..l.len())
        .filter(|&x| {
            let (j, i) = d.join_coords(x);
            !strip(j, jq) && !strip(i, iq)
        })
        .collect();
    let reduced = FiniteLattice::from_poset(l.poset().induced(&keep)).ok()?;
    let hint = reduced.index_of(d.name(d.left_corner())).ok()?;
    let corners = recognize_oriented(&reduced, Some(hint)).ok()?;
    if reduced.name(corners.right) != d.name(d.right_corner()) {
        return None;
    }
    let reduced = RectDiagram::c1_layout(reduced, corners).ok()?;
    let top = reduced.lattice().index_of(d.name(lamp.peak)).ok()?;
    if reduced.join_coords(top) != (jq, iq) {
        return None;
    }
    let back = multifork_insert(&reduced, top, k).ok()?;
    is_isomorphic(back.diagram.lattice(), l)?;
    Some((
        reduced,
        ScriptStep {
            cell: CellLocator(jq, iq),
            rank: k,
        },
    ))
}

fn search(
    d: &RectDiagram,
    dead: &mut HashSet<CanonicalForm>,
    steps: &mut Vec<ScriptStep>,
    base: &mut (usize, usize),
) -> Result<bool> {
    let lp = lamp_poset(d)?;
    let mut internal: Vec<usize> = (0..lp.lamps.len())
        .filter(|&i| lp.lamps[i].is_internal())
        .collect();
    if internal.is_empty() {
        *base = d.dims();
        return Ok(true);
    }
    let form = canonical_form(d.lattice().poset());
    if dead.contains(&form) {
        return Ok(false);
    }
    internal.sort_by_key(|&i| {
        let minimal = lp.order.lower_covers(i).is_empty();
        (!minimal, d.pos(lp.lamps[i].foot).0)
    });
    for i in internal {
        if let Some((smaller, step)) = peel(d, &lp.lamps[i]) {
            steps.push(step);
            if search(&smaller, dead, steps, base)? {
                return Ok(true);
            }
            steps.pop();
        }
    }
    dead.insert(form);
    Ok(false)
}

/// Finds a grid and a sequence of multifork insertions producing `d`.
pub fn multifork_decompose(d: &RectDiagram) -> Result<InsertionScript> {
    let mut steps = Vec::new();
    let mut base = (0, 0);
    if !search(d, &mut HashSet::new(), &mut steps, &mut base)? {
        return Err(Error::DecompositionFailed(format!(
            "no removable lamp sequence for a {}-element diagram",
            d.len()
        )));
    }
    steps.reverse();
    Ok(InsertionScript { grid: base, steps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{grid_name, s_lattice};

    #[test]
    fn s_lattices_decompose_to_one_step() {
        for t in [1, 3] {
            let d = s_lattice(t).unwrap();
            let script = multifork_decompose(&d).unwrap();
            assert_eq!(script.grid, (1, 1));
            assert_eq!(
                script.steps,
                vec![ScriptStep {
                    cell: CellLocator(1, 1),
                    rank: t
                }]
            );
        }
        let g = grid(2, 3).unwrap();
        assert!(multifork_decompose(&g).unwrap().steps.is_empty());
    }

    #[test]
    fn two_step_round_trip() {
        let g = grid(2, 2).unwrap();
        let top = g.lattice().index_of(&grid_name(2, 2)).unwrap();
        let once = multifork_insert(&g, top, 1).unwrap().diagram;
        let cell = once
            .cells()
            .into_iter()
            .find(|c| c.distributive && once.join_coords(c.top) == (1, 1))
            .unwrap();
        let twice = multifork_insert(&once, cell.top, 2).unwrap().diagram;
        let script = multifork_decompose(&twice).unwrap();
        assert_eq!(script.steps.len(), 2);
        let rebuilt = replay(&script).unwrap();
        assert!(is_isomorphic(rebuilt.lattice(), twice.lattice()).is_some());
    }

    #[test]
    fn script_json_shape() {
        let script = InsertionScript {
            grid: (1, 1),
            steps: vec![ScriptStep {
                cell: CellLocator(1, 1),
                rank: 1,
            }],
        };
        let text = serde_json::to_string(&script).unwrap();
        assert_eq!(text, r#"{"grid":[1,1],"steps":[{"cell":[1,1],"rank":1}]}"#);
        let back: InsertionScript = serde_json::from_str(&text).unwrap();
        assert_eq!(back, script);
    }
}
