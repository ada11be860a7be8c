//! Neon tubes, lamps, their light regions and the order on lamps.

use std::collections::BTreeMap;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::congruence::{jir_con, principal_congruence, JirCon};
use crate::diagram::{RectDiagram, SlopeClass};
use crate::error::{Error, Result};
use crate::geometry::{in_union, in_union_interior, on_segment, region_within, Point, Polygon};
use crate::poset::FinitePoset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TubeKind {
    Boundary,
    Internal,
}

/// An edge `[x, x*]` with `x` meet-irreducible.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NeonTube {
    pub foot: usize,
    pub peak: usize,
    pub kind: TubeKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LampKind {
    LeftBoundary,
    RightBoundary,
    Internal,
}

impl fmt::Display for LampKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LampKind::LeftBoundary => "left-boundary",
            LampKind::RightBoundary => "right-boundary",
            LampKind::Internal => "internal",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lamp {
    pub kind: LampKind,
    pub peak: usize,
    pub foot: usize,
    /// Left to right.
    pub tubes: Vec<NeonTube>,
}

impl Lamp {
    pub fn is_internal(&self) -> bool {
        self.kind == LampKind::Internal
    }
}

/// `(λ(peak), λ(foot), μ(foot), μ(peak))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Quadruple {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
}

impl Quadruple {
    /// Kind read off from which of the inequalities `p ≤ q < r ≤ s` are strict.
    pub fn kind(&self) -> Option<LampKind> {
        let Quadruple { p, q, r, s } = *self;
        if !(p <= q && q < r && r <= s) {
            return None;
        }
        match (p < q, r < s) {
            (true, true) => Some(LampKind::Internal),
            (false, true) => Some(LampKind::LeftBoundary),
            (true, false) => Some(LampKind::RightBoundary),
            (false, false) => None,
        }
    }
}

/// Light regions of a lamp in `(λ, μ)` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LitRegion {
    pub left: Polygon,
    pub right: Polygon,
    /// Foot, leftmost tube foot, peak, rightmost tube foot; a segment when
    /// the lamp has a single tube.
    pub body: Polygon,
    /// Left and right roofs, each from the peak to the lower boundary.
    pub roofs: [(Point, Point); 2],
}

impl LitRegion {
    /// The closure of the lit set is bordered by the roofs, the floors and
    /// the lower boundary, so it contains the body between the two halves.
    pub fn parts(&self) -> [Polygon; 3] {
        [self.left.clone(), self.body.clone(), self.right.clone()]
    }

    pub fn closure_contains(&self, p: Point) -> bool {
        in_union(&self.parts(), p)
    }

    pub fn on_roof(&self, p: Point) -> bool {
        self.roofs.iter().any(|&(a, b)| on_segment(a, b, p))
    }

    /// The lit set: light travels down from the tubes, so the roofs bound
    /// it from above without belonging to it.
    pub fn contains(&self, p: Point) -> bool {
        self.closure_contains(p) && !self.on_roof(p)
    }

    /// Open lit set.
    pub fn interior_contains(&self, p: Point) -> bool {
        in_union_interior(&self.parts(), p)
    }
}

fn slope_word(s: SlopeClass) -> &'static str {
    match s {
        SlopeClass::Normal => "normal",
        SlopeClass::Steep => "steep",
        SlopeClass::Invalid => "invalid",
    }
}

/// One tube per meet-irreducible element. The kind is read both from the
/// slope and from membership in the upper boundary; they must agree.
pub fn neon_tubes(d: &RectDiagram) -> Result<Vec<NeonTube>> {
    let l = d.lattice();
    let irr = l.irreducibles();
    let mut out = Vec::with_capacity(irr.mir.len());
    for &x in &irr.mir {
        let peak = irr.star[x].unwrap();
        let slope = d.classify_edge(x, peak);
        let boundary = d.on_upper_boundary(x);
        let kind = match (slope, boundary) {
            (SlopeClass::Normal, true) => TubeKind::Boundary,
            (SlopeClass::Steep, false) => TubeKind::Internal,
            _ => {
                return Err(Error::KindMismatch {
                    foot: l.name(x).to_string(),
                    peak: l.name(peak).to_string(),
                    slope: slope_word(slope),
                    boundary: if boundary { "boundary" } else { "internal" },
                })
            }
        };
        out.push(NeonTube {
            foot: x,
            peak,
            kind,
        });
    }
    Ok(out)
}

/// Boundary tubes become single lamps; internal tubes are grouped by peak
/// and the foot is the meet of their feet. Lamps are listed by foot.
pub fn lamps(d: &RectDiagram) -> Result<Vec<Lamp>> {
    let l = d.lattice();
    let mut out = Vec::new();
    let mut by_peak: BTreeMap<usize, Vec<NeonTube>> = BTreeMap::new();
    for tube in neon_tubes(d)? {
        match tube.kind {
            TubeKind::Boundary => {
                let kind = if l.leq(d.left_corner(), tube.foot) {
                    LampKind::LeftBoundary
                } else {
                    LampKind::RightBoundary
                };
                out.push(Lamp {
                    kind,
                    peak: tube.peak,
                    foot: tube.foot,
                    tubes: vec![tube],
                });
            }
            TubeKind::Internal => by_peak.entry(tube.peak).or_default().push(tube),
        }
    }
    for (peak, mut tubes) in by_peak {
        tubes.sort_by_key(|t| d.pos(t.foot).0);
        let foot = l.meet_all(tubes.iter().map(|t| t.foot));
        out.push(Lamp {
            kind: LampKind::Internal,
            peak,
            foot,
            tubes,
        });
    }
    out.sort_by_key(|lamp| lamp.foot);
    Ok(out)
}

pub fn quadruple(d: &RectDiagram, lamp: &Lamp) -> Quadruple {
    let (p, s) = d.light(lamp.peak);
    let (q, r) = d.light(lamp.foot);
    Quadruple { p, q, r, s }
}

/// `q_I ≤ p_J` and `s_I ≤ r_J`.
pub fn left_of(qi: &Quadruple, qj: &Quadruple) -> bool {
    qi.q <= qj.p && qi.s <= qj.r
}

pub fn lit_region(d: &RectDiagram, lamp: &Lamp) -> LitRegion {
    let Quadruple { p, q, r, s } = quadruple(d, lamp);
    let first = d.light(lamp.tubes[0].foot);
    let last = d.light(lamp.tubes[lamp.tubes.len() - 1].foot);
    let left = Polygon::new(&[(p, s), (p, 0), (q, 0), (q, r), first]);
    let right = Polygon::new(&[(p, s), (0, s), (0, r), (q, r), last]);
    let body = Polygon::new(&[(q, r), first, (p, s), last]);
    LitRegion {
        left,
        right,
        body,
        roofs: [((p, s), (p, 0)), ((p, s), (0, s))],
    }
}

/// The four relations on lamps, each deciding whether `(I, J)` belongs to it.
pub struct Relations<'a> {
    d: &'a RectDiagram,
    lamps: &'a [Lamp],
    regions: Vec<LitRegion>,
}

impl<'a> Relations<'a> {
    pub fn new(d: &'a RectDiagram, lamps: &'a [Lamp]) -> Self {
        let regions = lamps.iter().map(|lamp| lit_region(d, lamp)).collect();
        Self { d, lamps, regions }
    }

    pub fn region(&self, i: usize) -> &LitRegion {
        &self.regions[i]
    }

    /// Body of `I` inside the closure of the lit set of `J`.
    pub fn rho_geom(&self, i: usize, j: usize) -> bool {
        i != j
            && self.lamps[i].is_internal()
            && region_within(&self.regions[i].body, &self.regions[j].parts())
    }

    /// Foot of `I` in the lit set of `J`.
    pub fn rho_foot(&self, i: usize, j: usize) -> bool {
        i != j
            && self.lamps[i].is_internal()
            && self.regions[j].contains(self.d.light(self.lamps[i].foot))
    }

    /// Foot of `I` in the open lit set of `J`.
    pub fn rho_infoot(&self, i: usize, j: usize) -> bool {
        i != j
            && self.lamps[i].is_internal()
            && self.regions[j].interior_contains(self.d.light(self.lamps[i].foot))
    }

    /// `I` internal, `peak I ≤ peak J` and `foot I ≰ foot J`.
    pub fn rho_alg(&self, i: usize, j: usize) -> bool {
        let l = self.d.lattice();
        let (a, b) = (&self.lamps[i], &self.lamps[j]);
        a.is_internal() && l.leq(a.peak, b.peak) && !l.leq(a.foot, b.foot)
    }
}

/// Lamps ordered by the reflexive transitive closure of the algebraic
/// relation. Poset element `i` is `lamps[i]`, named by its foot.
#[derive(Clone, Debug)]
pub struct LampPoset {
    pub lamps: Vec<Lamp>,
    pub order: FinitePoset,
}

pub fn lamp_poset(d: &RectDiagram) -> Result<LampPoset> {
    let ls = lamps(d)?;
    let rel = Relations::new(d, &ls);
    let n = ls.len();
    let mut up = vec![FixedBitSet::with_capacity(n); n];
    for (i, row) in up.iter_mut().enumerate() {
        row.insert(i);
        for j in 0..n {
            if rel.rho_alg(i, j) {
                row.insert(j);
            }
        }
    }
    // Warshall closure on rows.
    for k in 0..n {
        let via = up[k].clone();
        for row in up.iter_mut() {
            if row.contains(k) {
                row.union_with(&via);
            }
        }
    }
    let names: Vec<String> = ls
        .iter()
        .map(|lamp| d.name(lamp.foot).to_string())
        .collect();
    let order = FinitePoset::from_up_sets(names, up)?;
    let mut slots: Vec<Option<Lamp>> = vec![None; n];
    for lamp in ls {
        let at = order.index_of(d.name(lamp.foot))?;
        slots[at] = Some(lamp);
    }
    let sorted: Vec<Lamp> = slots.into_iter().map(Option::unwrap).collect();
    let rel = Relations::new(d, &sorted);
    for (a, b) in order.covers() {
        if !rel.rho_alg(a, b) {
            return Err(Error::Invalid(format!(
                "cover {} < {} of the lamp order is not in the relation",
                order.name(a),
                order.name(b)
            )));
        }
    }
    Ok(LampPoset {
        lamps: sorted,
        order,
    })
}

/// Checks that `I ↦ con(foot I, peak I)` is an order isomorphism onto the
/// join-irreducible congruences; returns the image index of each lamp.
pub fn lamp_jir_isomorphism(d: &RectDiagram, lp: &LampPoset) -> Result<(Vec<usize>, JirCon)> {
    let l = d.lattice();
    let jc = jir_con(l);
    if jc.poset.len() != lp.lamps.len() {
        return Err(Error::IsoFailure(format!(
            "{} lamps but {} join-irreducible congruences",
            lp.lamps.len(),
            jc.poset.len()
        )));
    }
    let mut image = Vec::with_capacity(lp.lamps.len());
    let mut hit = FixedBitSet::with_capacity(jc.poset.len());
    for lamp in &lp.lamps {
        let theta = principal_congruence(l, lamp.foot, lamp.peak);
        let idx = jc.find(&theta).ok_or_else(|| {
            Error::IsoFailure(format!(
                "con({}, {}) is not join-irreducible",
                l.name(lamp.foot),
                l.name(lamp.peak)
            ))
        })?;
        if hit.contains(idx) {
            return Err(Error::IsoFailure(format!(
                "two lamps map to {}",
                jc.poset.name(idx)
            )));
        }
        hit.insert(idx);
        image.push(idx);
    }
    let n = lp.lamps.len();
    for a in 0..n {
        for b in 0..n {
            if lp.order.leq(a, b) != jc.poset.leq(image[a], image[b]) {
                return Err(Error::IsoFailure(format!(
                    "lamps {} and {}: order {} vs congruences {}",
                    lp.order.name(a),
                    lp.order.name(b),
                    lp.order.leq(a, b),
                    jc.poset.leq(image[a], image[b])
                )));
            }
        }
    }
    Ok((image, jc))
}

/// Shield edges `(lower end, peak)` of an internal lamp: the normal-slope
/// lower covers of the peak to the lower left and lower right.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shields {
    pub left: (usize, usize),
    pub right: (usize, usize),
}

pub fn shield(d: &RectDiagram, lamp: &Lamp) -> Result<Shields> {
    let peak_name = || d.name(lamp.peak).to_string();
    if !lamp.is_internal() {
        return Err(Error::Invalid(format!(
            "lamp with foot {} is not internal",
            d.name(lamp.foot)
        )));
    }
    let top = d.pos(lamp.peak);
    let find = |sign: i64| {
        d.lower_covers(lamp.peak).iter().copied().find(|&w| {
            let (wx, wy) = d.pos(w);
            let (dx, dy) = (top.0 - wx, top.1 - wy);
            dy > 0 && dx == sign * dy
        })
    };
    let left = find(1).ok_or_else(|| Error::MissingShield(peak_name(), "left"))?;
    let right = find(-1).ok_or_else(|| Error::MissingShield(peak_name(), "right"))?;
    Ok(Shields {
        left: (left, lamp.peak),
        right: (right, lamp.peak),
    })
}

/// The shield lengths exceed the widths of the corresponding lit strips:
/// with shield vectors `(c, c)` and `(−c, c)`, `2c > s − r` on the left and
/// `2c > q − p` on the right.
pub fn shield_invariant_holds(d: &RectDiagram, lamp: &Lamp) -> Result<bool> {
    let sh = shield(d, lamp)?;
    let qd = quadruple(d, lamp);
    let top = d.pos(lamp.peak);
    let cl = top.1 - d.pos(sh.left.0).1;
    let cr = top.1 - d.pos(sh.right.0).1;
    Ok(2 * cl > qd.s - qd.r && 2 * cr > qd.q - qd.p)
}

/// Pairs of distinct lamps with a common lower cover in the lamp order
/// that are not left of one another in either direction.
pub fn key_lemma_violations(d: &RectDiagram, lp: &LampPoset) -> Vec<(usize, usize)> {
    let quads: Vec<Quadruple> = lp.lamps.iter().map(|lamp| quadruple(d, lamp)).collect();
    let n = lp.lamps.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let common = lp
                .order
                .lower_covers(a)
                .iter()
                .any(|c| lp.order.lower_covers(b).contains(c));
            if common && !left_of(&quads[a], &quads[b]) && !left_of(&quads[b], &quads[a]) {
                out.push((a, b));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{grid, s_lattice};

    fn lamp_by_foot<'a>(lp: &'a LampPoset, foot: &str) -> (usize, &'a Lamp) {
        let i = lp.order.index_of(foot).unwrap();
        (i, &lp.lamps[i])
    }

    #[test]
    fn s7_lamps() {
        let d = s_lattice(1).unwrap();
        let lp = lamp_poset(&d).unwrap();
        assert_eq!(lp.lamps.len(), 3);
        let w_foot = d
            .name(lp.lamps.iter().find(|l| l.is_internal()).unwrap().foot)
            .to_string();
        let (w, wl) = lamp_by_foot(&lp, &w_foot);
        assert_eq!(
            quadruple(&d, wl),
            Quadruple {
                p: -4,
                q: -2,
                r: 2,
                s: 4
            }
        );
        let u = (0..3)
            .find(|&i| lp.lamps[i].kind == LampKind::LeftBoundary)
            .unwrap();
        let v = (0..3)
            .find(|&i| lp.lamps[i].kind == LampKind::RightBoundary)
            .unwrap();
        assert_eq!(
            quadruple(&d, &lp.lamps[u]),
            Quadruple {
                p: -4,
                q: -4,
                r: 0,
                s: 4
            }
        );
        assert!(lp.order.lt(w, u) && lp.order.lt(w, v));
        let rel = Relations::new(&d, &lp.lamps);
        assert!(
            rel.rho_alg(w, u) && rel.rho_foot(w, u) && rel.rho_infoot(w, u) && rel.rho_geom(w, u)
        );
        assert!(!rel.rho_alg(u, w));
        let region = lit_region(&d, wl);
        assert_eq!(region.left.vertices().len(), 4);
        assert!(lit_region(&d, &lp.lamps[u]).left.is_degenerate());
        assert!(shield_invariant_holds(&d, wl).unwrap());
        assert!(key_lemma_violations(&d, &lp).is_empty());
        let (image, jc) = lamp_jir_isomorphism(&d, &lp).unwrap();
        assert_eq!(jc.poset.len(), 3);
        assert_eq!(image.len(), 3);
    }

    #[test]
    fn grid_lamps_are_boundary() {
        let d = grid(2, 3).unwrap();
        let lp = lamp_poset(&d).unwrap();
        assert_eq!(lp.lamps.len(), 5);
        assert_eq!(lp.order.cover_count(), 0);
        let left = lp
            .lamps
            .iter()
            .filter(|l| l.kind == LampKind::LeftBoundary)
            .count();
        assert_eq!(left, 3);
        assert!(lamp_jir_isomorphism(&d, &lp).is_ok());
    }

    #[test]
    fn rank_two_left_region_is_a_pentagon() {
        let d = s_lattice(2).unwrap();
        let lp = lamp_poset(&d).unwrap();
        let w = lp.lamps.iter().find(|l| l.is_internal()).unwrap();
        let region = lit_region(&d, w);
        assert_eq!(region.left.vertices().len(), 5);
        assert!(region.left.vertices().contains(&(-4, 2)));
        assert_eq!(
            quadruple(&d, w),
            Quadruple {
                p: -6,
                q: -2,
                r: 2,
                s: 6
            }
        );
    }
}
