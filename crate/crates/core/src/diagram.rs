//! Slim rectangular lattices and their exact-coordinate diagrams.

use std::collections::HashMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{orient, segments_intersect, Point};
use crate::lattice::FiniteLattice;

/// Corners and the four boundary chains, each listed bottom to top.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Corners {
    pub left: usize,
    pub right: usize,
    /// From 0 to the left corner.
    pub lower_left: Vec<usize>,
    /// From 0 to the right corner.
    pub lower_right: Vec<usize>,
    /// From the left corner to 1.
    pub upper_left: Vec<usize>,
    /// From the right corner to 1.
    pub upper_right: Vec<usize>,
}

fn chain_of(l: &FiniteLattice, set: &FixedBitSet) -> Option<Vec<usize>> {
    let elems: Vec<usize> = set.ones().collect();
    elems
        .windows(2)
        .all(|w| l.is_cover(w[0], w[1]))
        .then_some(elems)
}

/// Finds the corners of a slim rectangular lattice. The side is chosen by
/// comparing the identifier sequences of the two lower chains; the
/// lexicographically smaller one is the lower-left chain.
pub fn recognize_rectangular(l: &FiniteLattice) -> Result<Corners> {
    recognize_oriented(l, None)
}

/// As [`recognize_rectangular`], with the left corner forced when
/// `left_hint` names one of the two corners.
pub fn recognize_oriented(l: &FiniteLattice, left_hint: Option<usize>) -> Result<Corners> {
    let bad = |msg: String| Err(Error::NotRectangular(msg));
    if !l.is_semimodular() {
        return bad("not semimodular".into());
    }
    if let Some([a, b, c]) = l.find_m3() {
        return bad(format!(
            "M3 sublattice on {}, {}, {}",
            l.name(a),
            l.name(b),
            l.name(c)
        ));
    }
    let (bottom, top) = (l.bottom(), l.top());
    let cands: Vec<usize> = (0..l.len())
        .filter(|&x| x != bottom && x != top && l.is_jir(x) && l.is_mir(x))
        .collect();
    if cands.len() != 2 {
        return bad(format!(
            "expected two doubly irreducible corners, found {}",
            cands.len()
        ));
    }
    let (c1, c2) = (cands[0], cands[1]);
    if l.join(c1, c2) != top || l.meet(c1, c2) != bottom {
        return bad(format!(
            "corners {} and {} are not complementary",
            l.name(c1),
            l.name(c2)
        ));
    }
    let mut chains = Vec::new();
    for c in [c1, c2] {
        let down = chain_of(l, l.poset().down_set(c));
        let up = chain_of(l, l.poset().up_set(c));
        match (down, up) {
            (Some(d), Some(u)) => chains.push((d, u)),
            _ => {
                return bad(format!(
                    "the ideal or filter of {} is not a chain",
                    l.name(c)
                ))
            }
        }
    }
    let mut lower = FixedBitSet::with_capacity(l.len());
    lower.union_with(l.poset().down_set(c1));
    lower.union_with(l.poset().down_set(c2));
    lower.set(bottom, false);
    for x in 0..l.len() {
        if l.is_jir(x) != lower.contains(x) {
            return bad(format!(
                "join-irreducibles are not the two lower boundary chains (at {})",
                l.name(x)
            ));
        }
    }
    let names = |v: &[usize]| v.iter().map(|&x| l.name(x).to_string()).collect::<Vec<_>>();
    let first_left = match left_hint {
        Some(h) if h == c1 => true,
        Some(h) if h == c2 => false,
        _ => names(&chains[0].0) <= names(&chains[1].0),
    };
    let (left, right) = if first_left { (0, 1) } else { (1, 0) };
    let (ll, ul) = chains[left].clone();
    let (lr, ur) = chains[right].clone();
    Ok(Corners {
        left: cands[left],
        right: cands[right],
        lower_left: ll,
        lower_right: lr,
        upper_left: ul,
        upper_right: ur,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SlopeClass {
    Normal,
    Steep,
    Invalid,
}

impl fmt::Display for SlopeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SlopeClass::Normal => "normal",
            SlopeClass::Steep => "steep",
            SlopeClass::Invalid => "invalid",
        })
    }
}

/// Class of an upward edge vector.
pub fn classify_vector(dx: i64, dy: i64) -> SlopeClass {
    if dy <= 0 {
        SlopeClass::Invalid
    } else if dx.abs() == dy {
        SlopeClass::Normal
    } else if dx.abs() < dy {
        SlopeClass::Steep
    } else {
        SlopeClass::Invalid
    }
}

/// A covering square: `bottom ≺ left, right ≺ top` with `left` and `right`
/// consecutive among the upper covers of `bottom`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cell4 {
    pub bottom: usize,
    pub left: usize,
    pub right: usize,
    pub top: usize,
    pub distributive: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum C1Violation {
    SharedPosition(String, String),
    Slope {
        lower: String,
        upper: String,
        expected: SlopeClass,
        found: SlopeClass,
    },
    BoundaryLength {
        lower: String,
        upper: String,
    },
    Comparability {
        u: String,
        v: String,
        ordered: bool,
    },
    Crossing {
        first: (String, String),
        second: (String, String),
    },
}

impl fmt::Display for C1Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            C1Violation::SharedPosition(a, b) => write!(f, "{a} and {b} share a position"),
            C1Violation::Slope {
                lower,
                upper,
                expected,
                found,
            } => write!(f, "edge [{lower}, {upper}] is {found}, expected {expected}"),
            C1Violation::BoundaryLength { lower, upper } => {
                write!(
                    f,
                    "lower boundary edge [{lower}, {upper}] has a different length"
                )
            }
            C1Violation::Comparability { u, v, ordered } => {
                if *ordered {
                    write!(f, "{u} < {v} but the geometry says incomparable")
                } else {
                    write!(
                        f,
                        "{u} and {v} are incomparable but the geometry says {u} < {v}"
                    )
                }
            }
            C1Violation::Crossing { first, second } => write!(
                f,
                "edges [{}, {}] and [{}, {}] cross",
                first.0, first.1, second.0, second.1
            ),
        }
    }
}

/// A slim rectangular lattice with integer positions and cover lists in
/// left-to-right order.
#[derive(Clone, Debug)]
pub struct RectDiagram {
    lattice: FiniteLattice,
    corners: Corners,
    join_coords: Vec<(usize, usize)>,
    by_coords: HashMap<(usize, usize), usize>,
    pos: Vec<Point>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
}

impl RectDiagram {
    /// Recognises corners and lays the lattice out.
    pub fn from_lattice(l: FiniteLattice) -> Result<Self> {
        let corners = recognize_rectangular(&l)?;
        Self::c1_layout(l, corners)
    }

    /// Layout by join coordinates: `u = e_j ∨ f_i` with `e_j`, `f_i` the
    /// largest elements of the lower-left and lower-right chains below `u`,
    /// placed at `j·(−1, 1) + i·(1, 1)`.
    pub fn c1_layout(l: FiniteLattice, corners: Corners) -> Result<Self> {
        let join_coords = join_coordinates(&l, &corners)?;
        let pos = join_coords
            .iter()
            .map(|&(j, i)| (i as i64 - j as i64, i as i64 + j as i64))
            .collect();
        Ok(Self::assemble(l, corners, join_coords, pos))
    }

    /// Uses the given positions instead of the computed layout; they are
    /// checked by [`RectDiagram::validate_c1`], not here.
    pub fn with_positions(l: FiniteLattice, corners: Corners, pos: Vec<Point>) -> Result<Self> {
        if pos.len() != l.len() {
            return Err(Error::Invalid(format!(
                "{} positions for {} elements",
                pos.len(),
                l.len()
            )));
        }
        let join_coords = join_coordinates(&l, &corners)?;
        Ok(Self::assemble(l, corners, join_coords, pos))
    }

    fn assemble(
        lattice: FiniteLattice,
        corners: Corners,
        join_coords: Vec<(usize, usize)>,
        pos: Vec<Point>,
    ) -> Self {
        let n = lattice.len();
        let by_coords = join_coords
            .iter()
            .enumerate()
            .map(|(x, &c)| (c, x))
            .collect();
        // Slope dx/dy compared by cross multiplication; dy > 0 on valid edges.
        let slope_cmp = |a: Point, b: Point| {
            let (ax, ay) = (a.0 as i128, a.1.max(1) as i128);
            let (bx, by) = (b.0 as i128, b.1.max(1) as i128);
            (ax * by).cmp(&(bx * ay))
        };
        let mut upper = Vec::with_capacity(n);
        let mut lower = Vec::with_capacity(n);
        for x in 0..n {
            let p = pos[x];
            let mut ups = lattice.upper_covers(x).to_vec();
            ups.sort_by(|&a, &b| {
                slope_cmp(
                    (pos[a].0 - p.0, pos[a].1 - p.1),
                    (pos[b].0 - p.0, pos[b].1 - p.1),
                )
            });
            let mut downs = lattice.lower_covers(x).to_vec();
            downs.sort_by(|&a, &b| {
                slope_cmp(
                    (p.0 - pos[b].0, p.1 - pos[b].1),
                    (p.0 - pos[a].0, p.1 - pos[a].1),
                )
            });
            upper.push(ups);
            lower.push(downs);
        }
        Self {
            lattice,
            corners,
            join_coords,
            by_coords,
            pos,
            upper,
            lower,
        }
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn into_lattice(self) -> FiniteLattice {
        self.lattice
    }

    pub fn corners(&self) -> &Corners {
        &self.corners
    }

    pub fn left_corner(&self) -> usize {
        self.corners.left
    }

    pub fn right_corner(&self) -> usize {
        self.corners.right
    }

    pub fn len(&self) -> usize {
        self.lattice.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lattice.is_empty()
    }

    pub fn name(&self, x: usize) -> &str {
        self.lattice.name(x)
    }

    pub fn pos(&self, x: usize) -> Point {
        self.pos[x]
    }

    pub fn positions(&self) -> &[Point] {
        &self.pos
    }

    /// Light coordinates `(λ, μ) = (x − y, x + y)`.
    pub fn light(&self, x: usize) -> Point {
        let (px, py) = self.pos[x];
        (px - py, px + py)
    }

    pub fn lambda(&self, x: usize) -> i64 {
        self.light(x).0
    }

    pub fn mu(&self, x: usize) -> i64 {
        self.light(x).1
    }

    /// Indices `(j, i)` of the largest lower-left and lower-right chain
    /// elements below `x`.
    pub fn join_coords(&self, x: usize) -> (usize, usize) {
        self.join_coords[x]
    }

    pub fn at_coords(&self, j: usize, i: usize) -> Option<usize> {
        self.by_coords.get(&(j, i)).copied()
    }

    /// Upper covers, left to right.
    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    /// Lower covers, left to right.
    pub fn lower_covers(&self, x: usize) -> &[usize] {
        &self.lower[x]
    }

    pub fn classify_edge(&self, lower: usize, upper: usize) -> SlopeClass {
        let (a, b) = (self.pos[lower], self.pos[upper]);
        classify_vector(b.0 - a.0, b.1 - a.1)
    }

    /// Whether `x` lies on the upper-left or upper-right boundary chain.
    pub fn on_upper_boundary(&self, x: usize) -> bool {
        self.lattice.leq(self.corners.left, x) || self.lattice.leq(self.corners.right, x)
    }

    pub fn on_lower_left(&self, x: usize) -> bool {
        self.lattice.leq(x, self.corners.left)
    }

    pub fn on_lower_right(&self, x: usize) -> bool {
        self.lattice.leq(x, self.corners.right)
    }

    /// Lower boundary chain lengths `(m, n)`: left and right.
    pub fn dims(&self) -> (usize, usize) {
        (
            self.corners.lower_left.len() - 1,
            self.corners.lower_right.len() - 1,
        )
    }

    /// Checks the diagram conventions: steep edges are exactly the internal
    /// neon tubes, all other edges have normal slope, lower boundary edges
    /// have equal length, `u < v` holds exactly when `v` is higher and the
    /// line through them is steep or normal, and edges meet only at shared
    /// endpoints.
    pub fn validate_c1(&self) -> Vec<C1Violation> {
        let l = &self.lattice;
        let n = l.len();
        let name = |x: usize| l.name(x).to_string();
        let mut out = Vec::new();
        let mut seen: HashMap<Point, usize> = HashMap::new();
        for x in 0..n {
            if let Some(&y) = seen.get(&self.pos[x]) {
                out.push(C1Violation::SharedPosition(name(y), name(x)));
            } else {
                seen.insert(self.pos[x], x);
            }
        }
        let edges = l.edges();
        for &(a, b) in &edges {
            let internal_tube = l.is_mir(a) && !self.on_upper_boundary(a);
            let expected = if internal_tube {
                SlopeClass::Steep
            } else {
                SlopeClass::Normal
            };
            let found = self.classify_edge(a, b);
            if found != expected {
                out.push(C1Violation::Slope {
                    lower: name(a),
                    upper: name(b),
                    expected,
                    found,
                });
            }
        }
        let len2 = |a: usize, b: usize| {
            let (p, q) = (self.pos[a], self.pos[b]);
            let (dx, dy) = ((q.0 - p.0) as i128, (q.1 - p.1) as i128);
            dx * dx + dy * dy
        };
        let boundary: Vec<(usize, usize)> = [&self.corners.lower_left, &self.corners.lower_right]
            .iter()
            .flat_map(|c| c.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>())
            .collect();
        if let Some(&(a0, b0)) = boundary.first() {
            let unit = len2(a0, b0);
            for &(a, b) in &boundary {
                if len2(a, b) != unit {
                    out.push(C1Violation::BoundaryLength {
                        lower: name(a),
                        upper: name(b),
                    });
                }
            }
        }
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                let (p, q) = (self.pos[u], self.pos[v]);
                let dy = q.1 - p.1;
                let geometric = dy > 0 && (q.0 - p.0).abs() <= dy;
                let ordered = l.lt(u, v);
                if geometric != ordered {
                    out.push(C1Violation::Comparability {
                        u: name(u),
                        v: name(v),
                        ordered,
                    });
                }
            }
        }
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[i + 1..] {
                let shared = [a, b].iter().find(|&&x| x == c || x == d).copied();
                let crossing = match shared {
                    Some(s) => {
                        let e = if a == s { b } else { a };
                        let f = if c == s { d } else { c };
                        let (ps, pe, pf) = (self.pos[s], self.pos[e], self.pos[f]);
                        
                        orient(ps, pe, pf) == 0
                            && (pe.0 - ps.0) as i128 * (pf.0 - ps.0) as i128
                                + (pe.1 - ps.1) as i128 * (pf.1 - ps.1) as i128
                                > 0
                    }
                    None => segments_intersect(self.pos[a], self.pos[b], self.pos[c], self.pos[d]),
                };
                if crossing {
                    out.push(C1Violation::Crossing {
                        first: (name(a), name(b)),
                        second: (name(c), name(d)),
                    });
                }
            }
        }
        out
    }

    /// All 4-cells; a cell is distributive when the ideal of its top is.
    pub fn cells(&self) -> Vec<Cell4> {
        let mut out = Vec::new();
        for o in 0..self.len() {
            for w in self.upper[o].windows(2) {
                let top = self.lattice.join(w[0], w[1]);
                out.push(Cell4 {
                    bottom: o,
                    left: w[0],
                    right: w[1],
                    top,
                    distributive: self.lattice.ideal_is_distributive(top),
                });
            }
        }
        out
    }

    /// The distributive cell whose top is `top`.
    pub fn distributive_cell(&self, top: usize) -> Result<Cell4> {
        let lows = &self.lower[top];
        if lows.len() != 2 {
            if lows.len() > 2 && self.cells().iter().any(|c| c.top == top) {
                return Err(Error::NotDistributiveCell(self.name(top).to_string()));
            }
            return Err(Error::NotACell(self.name(top).to_string()));
        }
        let (left, right) = (lows[0], lows[1]);
        let bottom = self.lattice.meet(left, right);
        if !self.lattice.is_cover(bottom, left) || !self.lattice.is_cover(bottom, right) {
            return Err(Error::NotACell(self.name(top).to_string()));
        }
        if !self.lattice.ideal_is_distributive(top) {
            return Err(Error::NotDistributiveCell(self.name(top).to_string()));
        }
        Ok(Cell4 {
            bottom,
            left,
            right,
            top,
            distributive: true,
        })
    }
}

fn join_coordinates(l: &FiniteLattice, c: &Corners) -> Result<Vec<(usize, usize)>> {
    let mut ll = FixedBitSet::with_capacity(l.len());
    let mut lr = FixedBitSet::with_capacity(l.len());
    ll.extend(c.lower_left.iter().copied());
    lr.extend(c.lower_right.iter().copied());
    let mut out = Vec::with_capacity(l.len());
    for u in 0..l.len() {
        let down = l.poset().down_set(u);
        let j = down.intersection(&ll).count() - 1;
        let i = down.intersection(&lr).count() - 1;
        if l.join(c.lower_left[j], c.lower_right[i]) != u {
            return Err(Error::LayoutContradiction(l.name(u).to_string()));
        }
        out.push((j, i));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s7() -> FiniteLattice {
        FiniteLattice::new(
            &["0", "l", "r", "m", "a", "b", "1"],
            &[
                ("0", "l"),
                ("0", "r"),
                ("l", "a"),
                ("l", "m"),
                ("r", "m"),
                ("r", "b"),
                ("a", "1"),
                ("m", "1"),
                ("b", "1"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn s7_layout() {
        let d = RectDiagram::from_lattice(s7()).unwrap();
        let at = |s: &str| d.pos(d.lattice().index_of(s).unwrap());
        assert_eq!(d.name(d.left_corner()), "a");
        assert_eq!(at("m"), (0, 2));
        assert_eq!(at("1"), (0, 4));
        assert_eq!(at("a"), (-2, 2));
        assert_eq!(at("l"), (-1, 1));
        assert!(d.validate_c1().is_empty());
        let idx = |s: &str| d.lattice().index_of(s).unwrap();
        assert_eq!(d.classify_edge(idx("m"), idx("1")), SlopeClass::Steep);
        assert_eq!(d.classify_edge(idx("a"), idx("1")), SlopeClass::Normal);
        let top_covers: Vec<&str> = d
            .lower_covers(idx("1"))
            .iter()
            .map(|&x| d.name(x))
            .collect();
        assert_eq!(top_covers, ["a", "m", "b"]);
        let cells = d.cells();
        assert_eq!(cells.len(), 3);
        assert_eq!(cells.iter().filter(|c| c.distributive).count(), 1);
        assert!(d.distributive_cell(idx("m")).is_ok());
        assert!(matches!(
            d.distributive_cell(idx("1")),
            Err(Error::NotDistributiveCell(_))
        ));
        assert!(matches!(
            d.distributive_cell(idx("a")),
            Err(Error::NotACell(_))
        ));
    }

    #[test]
    fn perturbed_position_is_reported() {
        let d = RectDiagram::from_lattice(s7()).unwrap();
        let mut pos = d.positions().to_vec();
        let m = d.lattice().index_of("m").unwrap();
        pos[m] = (1, 2);
        let bad =
            RectDiagram::with_positions(d.lattice().clone(), d.corners().clone(), pos).unwrap();
        let v = bad.validate_c1();
        assert!(v.contains(&C1Violation::Slope {
            lower: "r".into(),
            upper: "m".into(),
            expected: SlopeClass::Normal,
            found: SlopeClass::Steep,
        }));
        assert!(v
            .iter()
            .any(|x| matches!(x, C1Violation::Comparability { .. })));
    }

    #[test]
    fn chain_is_not_rectangular() {
        assert!(matches!(
            recognize_rectangular(&FiniteLattice::chain(3)),
            Err(Error::NotRectangular(_))
        ));
    }
}
