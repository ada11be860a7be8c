use std::collections::{BTreeSet, HashSet};

use crate::diagram::{recognize_oriented, RectDiagram, SlopeClass};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::poset::FinitePoset;

/// Result of one multifork insertion. Element names refer to the new
/// diagram; names of old elements are unchanged.
#[derive(Clone, Debug)]
pub struct Insertion {
    pub diagram: RectDiagram,
    /// Lower-left boundary edge of the old diagram that received new elements.
    pub left_edge: (String, String),
    pub right_edge: (String, String),
    /// New elements on the lower-left and lower-right boundary, bottom to top.
    pub left_boundary: Vec<String>,
    pub right_boundary: Vec<String>,
    /// Cells crossed by the two staircases together.
    pub traversed: usize,
    pub added: usize,
    pub peak: String,
    /// Feet of the new tubes, left to right.
    pub tube_feet: Vec<String>,
    pub foot: String,
}

struct Builder {
    names: Vec<String>,
    taken: HashSet<String>,
    covers: BTreeSet<(usize, usize)>,
    counter: usize,
}

impl Builder {
    fn fresh(&mut self) -> usize {
        loop {
            let name = format!("v{}", self.counter);
            self.counter += 1;
            if self.taken.insert(name.clone()) {
                self.names.push(name);
                return self.names.len() - 1;
            }
        }
    }

    /// Replaces the cover `lo ≺ hi` by a chain of `k` new elements.
    fn subdivide(&mut self, lo: usize, hi: usize, k: usize) -> Vec<usize> {
        self.covers.remove(&(lo, hi));
        let chain: Vec<usize> = (0..k).map(|_| self.fresh()).collect();
        let mut prev = lo;
        for &c in &chain {
            self.covers.insert((prev, c));
            prev = c;
        }
        self.covers.insert((prev, hi));
        chain
    }
}

/// Inserts a rank-`k` multifork into the distributive 4-cell with top `top`.
///
/// The cell `{o, a, b, t}` gets a chain `l₁ ≺ ⋯ ≺ l_k` on `[o, a]`, a chain
/// `r₁ ≺ ⋯ ≺ r_k` on `[o, b]` and a triangle `f_{i,j}` (`1 ≤ i ≤ j ≤ k`) with
/// `f_{i,j} ≺ f_{i+1,j}`, `f_{i,j} ≺ f_{i,j−1}`, `f_{i,i} ≺ t`,
/// `l_{k+1−j} ≺ f_{1,j}` and `r_i ≺ f_{i,k}`. The two new side chains are then
/// pushed down-left and down-right through neighbouring cells until they
/// reach the lower boundary.
pub fn multifork_insert(d: &RectDiagram, top: usize, k: usize) -> Result<Insertion> {
    if k == 0 {
        return Err(Error::ZeroRank);
    }
    let cell = d.distributive_cell(top)?;
    let l = d.lattice();
    let names: Vec<String> = (0..l.len()).map(|x| l.name(x).to_string()).collect();
    let mut b = Builder {
        taken: names.iter().cloned().collect(),
        names,
        covers: l.edges().into_iter().collect(),
        counter: l.len(),
    };
    let (o, a, r, t) = (cell.bottom, cell.left, cell.right, cell.top);
    let ls = b.subdivide(o, a, k);
    let rs = b.subdivide(o, r, k);
    // fan[i][j] holds f_{i+1, j+1}; only i <= j is used.
    let mut fan = vec![vec![usize::MAX; k]; k];
    for j in 0..k {
        for i in 0..=j {
            fan[i][j] = b.fresh();
        }
    }
    for j in 0..k {
        for i in 0..=j {
            let f = fan[i][j];
            if i < j {
                b.covers.insert((f, fan[i + 1][j]));
            }
            if j > i {
                b.covers.insert((f, fan[i][j - 1]));
            }
            if i == j {
                b.covers.insert((f, t));
            }
        }
        b.covers.insert((ls[k - 1 - j], fan[0][j]));
        b.covers.insert((rs[j], fan[j][k - 1]));
    }

    let mut traversed = 0;
    let mut walk =
        |b: &mut Builder, mut lo: usize, mut hi: usize, mut ys: Vec<usize>, left: bool| {
            let on_side = |x: usize| {
                if left {
                    d.on_lower_left(x)
                } else {
                    d.on_lower_right(x)
                }
            };
            while !(on_side(lo) && on_side(hi)) {
                let lows = d.lower_covers(hi);
                let at = lows
                    .iter()
                    .position(|&x| x == lo)
                    .expect("lo covered by hi");
                let side = if left {
                    at.checked_sub(1).map(|p| lows[p])
                } else {
                    lows.get(at + 1).copied()
                };
                let side = side.ok_or_else(|| {
                    Error::Invalid(format!(
                        "staircase stuck at [{}, {}]",
                        l.name(lo),
                        l.name(hi)
                    ))
                })?;
                let base = l.meet(lo, side);
                if !l.is_cover(base, lo) || !l.is_cover(base, side) {
                    return Err(Error::Invalid(format!(
                        "staircase cell below [{}, {}] is not a 4-cell",
                        l.name(lo),
                        l.name(hi)
                    )));
                }
                let xs = b.subdivide(base, side, k);
                for s in 0..k {
                    b.covers.insert((xs[s], ys[s]));
                }
                traversed += 1;
                lo = base;
                hi = side;
                ys = xs;
            }
            Ok(((lo, hi), ys))
        };
    let ((ll, lh), left_new) = walk(&mut b, o, a, ls.clone(), true)?;
    let ((rl, rh), right_new) = walk(&mut b, o, r, rs.clone(), false)?;

    let added = b.names.len() - l.len();
    let expected = k * (k + 1) / 2 + 2 * k + k * traversed;
    if added != expected {
        return Err(Error::Invalid(format!(
            "multifork added {added} elements, expected {expected}"
        )));
    }
    let covers: Vec<(usize, usize)> = b.covers.iter().copied().collect();
    let poset = FinitePoset::from_indexed(b.names.clone(), &covers)?;
    let lattice = FiniteLattice::from_poset(poset)?;
    let hint = lattice.index_of(l.name(d.left_corner()))?;
    let corners = recognize_oriented(&lattice, Some(hint))?;
    if lattice.name(corners.right) != l.name(d.right_corner()) {
        return Err(Error::Invalid("multifork moved a corner".into()));
    }
    let diagram = RectDiagram::c1_layout(lattice, corners)?;
    if let Some(v) = diagram.validate_c1().first() {
        return Err(Error::Invalid(format!("multifork result: {v}")));
    }
    let nl = diagram.lattice();
    let t_new = nl.index_of(l.name(t))?;
    let steep_into_t = nl
        .lower_covers(t_new)
        .iter()
        .filter(|&&x| nl.is_mir(x) && diagram.classify_edge(x, t_new) == SlopeClass::Steep)
        .count();
    if steep_into_t != k {
        return Err(Error::Invalid(format!(
            "new lamp has {steep_into_t} tubes, expected {k}"
        )));
    }
    let name = |x: usize| b.names[x].clone();
    Ok(Insertion {
        left_edge: (l.name(ll).to_string(), l.name(lh).to_string()),
        right_edge: (l.name(rl).to_string(), l.name(rh).to_string()),
        left_boundary: left_new.iter().map(|&x| name(x)).collect(),
        right_boundary: right_new.iter().map(|&x| name(x)).collect(),
        traversed,
        added,
        peak: l.name(t).to_string(),
        tube_feet: (0..k).map(|i| name(fan[i][i])).collect(),
        foot: name(fan[0][k - 1]),
        diagram,
    })
}
