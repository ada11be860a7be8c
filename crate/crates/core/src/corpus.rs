//! Breadth-first enumeration of slim rectangular lattices up to a size bound.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::constructions::{grid, multifork_insert, CellLocator, InsertionScript, ScriptStep};
use crate::diagram::RectDiagram;
use crate::iso::{canonical_form, CanonicalForm};

#[derive(Clone, Debug)]
pub struct CorpusItem {
    pub diagram: RectDiagram,
    /// How this item was generated.
    pub script: InsertionScript,
    pub form: CanonicalForm,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub max_size: usize,
    /// Ordered by size, then canonical form.
    pub items: Vec<CorpusItem>,
}

fn children(item: &CorpusItem, max_size: usize) -> Vec<CorpusItem> {
    let d = &item.diagram;
    let mut out = Vec::new();
    for cell in d.cells().into_iter().filter(|c| c.distributive) {
        let (j, i) = d.join_coords(cell.top);
        for k in 1.. {
            // The smallest possible growth already exceeds the bound.
            if d.len() + k * (k + 1) / 2 + 2 * k > max_size {
                break;
            }
            let Ok(ins) = multifork_insert(d, cell.top, k) else {
                break;
            };
            if ins.diagram.len() > max_size {
                break;
            }
            let mut script = item.script.clone();
            script.steps.push(ScriptStep {
                cell: CellLocator(j, i),
                rank: k,
            });
            let form = canonical_form(ins.diagram.lattice().poset());
            out.push(CorpusItem {
                diagram: ins.diagram,
                script,
                form,
            });
        }
    }
    out
}

/// All slim rectangular lattices with at most `max_size` elements, one per
/// isomorphism class (mirror images are identified).
pub fn enumerate_corpus(max_size: usize) -> Corpus {
    let mut seen: HashSet<CanonicalForm> = HashSet::new();
    let mut items: Vec<CorpusItem> = Vec::new();
    let mut frontier: Vec<CorpusItem> = Vec::new();
    for m in 1..max_size {
        for n in 1..max_size {
            if (m + 1) * (n + 1) > max_size {
                continue;
            }
            let d = grid(m, n).expect("grid dimensions are positive");
            frontier.push(CorpusItem {
                form: canonical_form(d.lattice().poset()),
                diagram: d,
                script: InsertionScript {
                    grid: (m, n),
                    steps: Vec::new(),
                },
            });
        }
    }
    while !frontier.is_empty() {
        frontier.sort_by(|a, b| (a.diagram.len(), &a.form).cmp(&(b.diagram.len(), &b.form)));
        let mut fresh = Vec::new();
        for item in frontier {
            if seen.insert(item.form.clone()) {
                fresh.push(item);
            }
        }
        frontier = fresh
            .par_iter()
            .flat_map_iter(|item| children(item, max_size))
            .filter(|c| !seen.contains(&c.form))
            .collect();
        items.extend(fresh);
    }
    items.sort_by(|a, b| (a.diagram.len(), &a.form).cmp(&(b.diagram.len(), &b.form)));
    Corpus { max_size, items }
}
