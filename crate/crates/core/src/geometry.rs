//! Exact planar geometry on integer and rational points.

use std::cmp::Ordering;

use num_rational::Ratio;
use num_traits::Zero;

pub type Q = Ratio<i128>;
pub type Point = (i64, i64);
pub type RPoint = (Q, Q);

pub fn rp(p: Point) -> RPoint {
    (Q::from_integer(p.0 as i128), Q::from_integer(p.1 as i128))
}

/// Twice the signed area of `(a, b, c)`; positive for a left turn.
pub fn orient(a: Point, b: Point, c: Point) -> i128 {
    let (ax, ay) = (a.0 as i128, a.1 as i128);
    let (bx, by) = (b.0 as i128, b.1 as i128);
    let (cx, cy) = (c.0 as i128, c.1 as i128);
    (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
}

fn orient_q(a: &RPoint, b: &RPoint, c: &RPoint) -> Q {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn on_segment_q(a: &RPoint, b: &RPoint, p: &RPoint) -> bool {
    orient_q(a, b, p).is_zero()
        && p.0 >= a.0.min(b.0)
        && p.0 <= a.0.max(b.0)
        && p.1 >= a.1.min(b.1)
        && p.1 <= a.1.max(b.1)
}

pub fn on_segment(a: Point, b: Point, p: Point) -> bool {
    orient(a, b, p) == 0
        && p.0 >= a.0.min(b.0)
        && p.0 <= a.0.max(b.0)
        && p.1 >= a.1.min(b.1)
        && p.1 <= a.1.max(b.1)
}

/// Whether closed segments `[a, b]` and `[c, d]` share a point.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = orient(c, d, a).signum();
    let d2 = orient(c, d, b).signum();
    let d3 = orient(a, b, c).signum();
    let d4 = orient(a, b, d).signum();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    on_segment(c, d, a) || on_segment(c, d, b) || on_segment(a, b, c) || on_segment(a, b, d)
}

/// A closed polygon with integer vertices. Consecutive duplicates and
/// collinear middle vertices are dropped; positive-area polygons are stored
/// counter-clockwise. A polygon of zero area is a point or a segment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    vertices: Vec<Point>,
}

impl Polygon {
    pub fn new(raw: &[Point]) -> Self {
        let mut v: Vec<Point> = Vec::with_capacity(raw.len());
        for &p in raw {
            if v.last() != Some(&p) {
                v.push(p);
            }
        }
        while v.len() > 1 && v.first() == v.last() {
            v.pop();
        }
        let area2: i128 = (0..v.len())
            .map(|i| {
                let a = v[i];
                let b = v[(i + 1) % v.len()];
                a.0 as i128 * b.1 as i128 - b.0 as i128 * a.1 as i128
            })
            .sum();
        if area2 == 0 {
            return Self::degenerate(&v);
        }
        if area2 < 0 {
            v.reverse();
        }
        loop {
            let n = v.len();
            let drop = (0..n).find(|&i| {
                let prev = v[(i + n - 1) % n];
                let next = v[(i + 1) % n];
                orient(prev, v[i], next) == 0
                    && (v[i].0 - prev.0) as i128 * (next.0 - v[i].0) as i128
                        + (v[i].1 - prev.1) as i128 * (next.1 - v[i].1) as i128
                        >= 0
            });
            match drop {
                Some(i) if n > 3 => {
                    v.remove(i);
                }
                _ => break,
            }
        }
        Self { vertices: v }
    }

    // Collinear points collapse to the segment between the extreme ones.
    fn degenerate(v: &[Point]) -> Self {
        if v.is_empty() {
            return Self {
                vertices: Vec::new(),
            };
        }
        let lo = *v.iter().min().unwrap();
        let hi = *v.iter().max().unwrap();
        let vertices = if lo == hi { vec![lo] } else { vec![lo, hi] };
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn is_degenerate(&self) -> bool {
        self.vertices.len() < 3
    }

    pub fn edges(&self) -> Vec<(Point, Point)> {
        let n = self.vertices.len();
        match n {
            0 => Vec::new(),
            1 => vec![(self.vertices[0], self.vertices[0])],
            2 => vec![(self.vertices[0], self.vertices[1])],
            _ => (0..n)
                .map(|i| (self.vertices[i], self.vertices[(i + 1) % n]))
                .collect(),
        }
    }

    pub fn on_boundary(&self, p: &RPoint) -> bool {
        self.edges()
            .iter()
            .any(|&(a, b)| on_segment_q(&rp(a), &rp(b), p))
    }

    pub fn contains(&self, p: Point) -> bool {
        self.contains_q(&rp(p))
    }

    /// Closed containment.
    pub fn contains_q(&self, p: &RPoint) -> bool {
        if self.on_boundary(p) {
            return true;
        }
        if self.is_degenerate() {
            return false;
        }
        // Crossing number with a rightward ray and half-open edges.
        let mut inside = false;
        for (a, b) in self.edges() {
            let (a, b) = (rp(a), rp(b));
            if (a.1 > p.1) != (b.1 > p.1) {
                let t = (p.1 - a.1) / (b.1 - a.1);
                let x = a.0 + t * (b.0 - a.0);
                if x > p.0 {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Directions `v` such that `p + εv` lies in the polygon for all small
    /// `ε > 0`, as a closed arc; `None` if `p` is not in the polygon.
    fn arc_at(&self, p: Point) -> Option<Arc> {
        if self.is_degenerate() || !self.contains(p) {
            return None;
        }
        let n = self.vertices.len();
        if let Some(i) = self.vertices.iter().position(|&v| v == p) {
            let next = self.vertices[(i + 1) % n];
            let prev = self.vertices[(i + n - 1) % n];
            return Some(Arc::Between(sub(next, p), sub(prev, p)));
        }
        for (a, b) in self.edges() {
            if on_segment(a, b, p) {
                let d = sub(b, a);
                return Some(Arc::Between(d, (-d.0, -d.1)));
            }
        }
        Some(Arc::Full)
    }
}

fn sub(a: Point, b: Point) -> Point {
    (a.0 - b.0, a.1 - b.1)
}

fn cross(a: Point, b: Point) -> i128 {
    a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128
}

fn dot(a: Point, b: Point) -> i128 {
    a.0 as i128 * b.0 as i128 + a.1 as i128 * b.1 as i128
}

/// Closed arc of directions, counter-clockwise from the first to the second.
#[derive(Clone, Copy, Debug)]
enum Arc {
    Full,
    Between(Point, Point),
}

// Angle of `v` measured counter-clockwise from `base`, compared exactly.
fn angle_from(base: Point, a: Point, b: Point) -> Ordering {
    let half = |v: Point| {
        let c = cross(base, v);
        if c > 0 || (c == 0 && dot(base, v) > 0) {
            0
        } else {
            1
        }
    };
    let (ha, hb) = (half(a), half(b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    // Same half-plane: a before b when b is to the left of a.
    0.cmp(&cross(a, b).signum())
}

fn same_direction(a: Point, b: Point) -> bool {
    cross(a, b) == 0 && dot(a, b) > 0
}

impl Arc {
    fn contains(&self, v: Point) -> bool {
        match *self {
            Arc::Full => true,
            Arc::Between(start, end) => {
                same_direction(start, v) || angle_from(start, v, end) != Ordering::Greater
            }
        }
    }
}

/// Whether `p` lies in the topological interior of the union of `polys`.
/// Degenerate polygons have empty interior and contribute nothing.
pub fn in_union_interior(polys: &[Polygon], p: Point) -> bool {
    let arcs: Vec<Arc> = polys.iter().filter_map(|q| q.arc_at(p)).collect();
    if arcs.iter().any(|a| matches!(a, Arc::Full)) {
        return true;
    }
    if arcs.is_empty() {
        return false;
    }
    let mut dirs: Vec<Point> = Vec::new();
    for arc in &arcs {
        if let Arc::Between(s, e) = *arc {
            dirs.push(s);
            dirs.push(e);
        }
    }
    let base = dirs[0];
    dirs.sort_by(|&a, &b| {
        if same_direction(a, b) {
            Ordering::Equal
        } else if same_direction(a, base) {
            Ordering::Less
        } else if same_direction(b, base) {
            Ordering::Greater
        } else {
            angle_from(base, a, b)
        }
    });
    dirs.dedup_by(|a, b| same_direction(*a, *b));
    let covered = |v: Point| arcs.iter().any(|a| a.contains(v));
    let k = dirs.len();
    for i in 0..k {
        let d1 = dirs[i];
        let d2 = dirs[(i + 1) % k];
        if !covered(d1) {
            return false;
        }
        // A direction strictly inside the open gap from d1 to d2.
        let mid = if k > 1 && cross(d1, d2) > 0 {
            (d1.0 + d2.0, d1.1 + d2.1)
        } else {
            (-d1.1, d1.0)
        };
        if !covered(mid) {
            return false;
        }
        if k == 1 {
            return covered((-d1.0, -d1.1)) && covered((d1.1, -d1.0));
        }
    }
    true
}

/// Closed containment in a union.
pub fn in_union(polys: &[Polygon], p: Point) -> bool {
    polys.iter().any(|q| q.contains(p))
}

/// Whether the closed set `inner` is contained in the closed union of
/// `outer`, decided exactly on the vertical slab decomposition of all edges.
pub fn region_within(inner: &Polygon, outer: &[Polygon]) -> bool {
    let mut edges: Vec<(RPoint, RPoint)> = inner
        .edges()
        .into_iter()
        .map(|(a, b)| (rp(a), rp(b)))
        .collect();
    for q in outer {
        edges.extend(q.edges().into_iter().map(|(a, b)| (rp(a), rp(b))));
    }
    let mut xs: Vec<Q> = Vec::new();
    for (a, b) in &edges {
        xs.push(a.0);
        xs.push(b.0);
    }
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            if let Some(x) = crossing_x(&edges[i], &edges[j]) {
                xs.push(x);
            }
        }
    }
    xs.sort();
    xs.dedup();
    let mut samples = xs.clone();
    for w in xs.windows(2) {
        samples.push((w[0] + w[1]) / Q::from_integer(2));
    }
    let in_outer = |p: &RPoint| outer.iter().any(|q| q.contains_q(p));
    for x in samples {
        let mut ys: Vec<Q> = Vec::new();
        for (a, b) in &edges {
            if a.0 == b.0 {
                if a.0 == x {
                    ys.push(a.1);
                    ys.push(b.1);
                }
            } else if (a.0 <= x && x <= b.0) || (b.0 <= x && x <= a.0) {
                let t = (x - a.0) / (b.0 - a.0);
                ys.push(a.1 + t * (b.1 - a.1));
            }
        }
        ys.sort();
        ys.dedup();
        let mut points: Vec<Q> = ys.clone();
        for w in ys.windows(2) {
            points.push((w[0] + w[1]) / Q::from_integer(2));
        }
        for y in points {
            let p = (x, y);
            if inner.contains_q(&p) && !in_outer(&p) {
                return false;
            }
        }
    }
    true
}

// x-coordinate of the proper or touching intersection of two segments, when
// they meet in a single point.
fn crossing_x(e: &(RPoint, RPoint), f: &(RPoint, RPoint)) -> Option<Q> {
    let (a, b) = e;
    let (c, d) = f;
    let r = (b.0 - a.0, b.1 - a.1);
    let s = (d.0 - c.0, d.1 - c.1);
    let denom = r.0 * s.1 - r.1 * s.0;
    if denom.is_zero() {
        return None;
    }
    let qp = (c.0 - a.0, c.1 - a.1);
    let t = (qp.0 * s.1 - qp.1 * s.0) / denom;
    let u = (qp.0 * r.1 - qp.1 * r.0) / denom;
    let zero = Q::zero();
    let one = Q::from_integer(1);
    if t < zero || t > one || u < zero || u > one {
        return None;
    }
    Some(a.0 + t * r.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> Polygon {
        Polygon::new(&[(0, 0), (0, 2), (2, 2), (2, 0)])
    }

    #[test]
    fn normalisation() {
        let p = Polygon::new(&[(0, 0), (1, 0), (2, 0), (2, 2), (2, 2), (0, 2)]);
        assert_eq!(p.vertices(), &[(0, 0), (2, 0), (2, 2), (0, 2)]);
        let seg = Polygon::new(&[(0, 0), (0, 3), (0, 1)]);
        assert!(seg.is_degenerate());
        assert_eq!(seg.vertices(), &[(0, 0), (0, 3)]);
    }

    #[test]
    fn closed_and_open_membership() {
        let sq = square();
        assert!(sq.contains((0, 1)));
        assert!(sq.contains((1, 1)));
        assert!(!sq.contains((3, 1)));
        assert!(in_union_interior(std::slice::from_ref(&sq), (1, 1)));
        assert!(!in_union_interior(std::slice::from_ref(&sq), (0, 1)));
        assert!(!in_union_interior(std::slice::from_ref(&sq), (0, 0)));
        // Two squares sharing a side: the shared side is interior to the union.
        let right = Polygon::new(&[(2, 0), (4, 0), (4, 2), (2, 2)]);
        assert!(in_union_interior(&[sq.clone(), right.clone()], (2, 1)));
        assert!(!in_union_interior(&[sq.clone(), right.clone()], (2, 2)));
        // Four squares around a common corner.
        let quads = [
            Polygon::new(&[(0, 0), (1, 0), (1, 1), (0, 1)]),
            Polygon::new(&[(0, 0), (0, 1), (-1, 1), (-1, 0)]),
            Polygon::new(&[(0, 0), (-1, 0), (-1, -1), (0, -1)]),
            Polygon::new(&[(0, 0), (0, -1), (1, -1), (1, 0)]),
        ];
        assert!(in_union_interior(&quads, (0, 0)));
        assert!(!in_union_interior(&quads[..3], (0, 0)));
        let seg = Polygon::new(&[(0, 0), (0, 2)]);
        assert!(!in_union_interior(&[seg], (0, 1)));
    }

    #[test]
    fn reflex_vertex_arc() {
        // L-shape with its reflex corner at (1, 1).
        let l = Polygon::new(&[(0, 0), (2, 0), (2, 1), (1, 1), (1, 2), (0, 2)]);
        assert!(!in_union_interior(std::slice::from_ref(&l), (1, 1)));
        let patch = Polygon::new(&[(1, 1), (2, 1), (2, 2), (1, 2)]);
        assert!(in_union_interior(&[l, patch], (1, 1)));
    }

    #[test]
    fn containment_of_regions() {
        let sq = square();
        let inner = Polygon::new(&[(0, 0), (1, 1), (0, 2)]);
        assert!(region_within(&inner, std::slice::from_ref(&sq)));
        let poke = Polygon::new(&[(0, 0), (3, 1), (0, 2)]);
        assert!(!region_within(&poke, std::slice::from_ref(&sq)));
        let diag = Polygon::new(&[(0, 0), (2, 2)]);
        assert!(region_within(&diag, std::slice::from_ref(&sq)));
        // Two halves of the square cover it only together.
        let lo = Polygon::new(&[(0, 0), (2, 0), (2, 2)]);
        let hi = Polygon::new(&[(0, 0), (2, 2), (0, 2)]);
        assert!(region_within(&sq, &[lo.clone(), hi]));
        assert!(!region_within(&sq, &[lo]));
    }

    #[test]
    fn segment_intersection() {
        assert!(segments_intersect((0, 0), (2, 2), (0, 2), (2, 0)));
        assert!(segments_intersect((0, 0), (2, 2), (1, 1), (3, 0)));
        assert!(!segments_intersect((0, 0), (1, 1), (2, 2), (3, 3)));
        assert!(segments_intersect((0, 0), (2, 2), (1, 1), (3, 3)));
    }
}
