use std::collections::HashSet;

use super::{glued_sum, grid, multifork_decompose, multifork_insert, product, s_lattice};
use super::{CellLocator, InsertionScript};
use crate::congruence::{con_lattice, jir_con_poset};
use crate::diagram::RectDiagram;
use crate::error::{Error, Result};
use crate::iso::{is_isomorphic, posets_isomorphic};
use crate::lamps::{lamp_poset, lamps, lit_region, LampKind};
use crate::lattice::FiniteLattice;
use crate::poset::FinitePoset;

/// Sizes compared when checking `Con(L₁ ∔ ⋯ ∔ Lₙ) ≅ Con L₁ × ⋯ × Con Lₙ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductCheck {
    pub con_size: usize,
    pub product_size: usize,
    pub isomorphic: bool,
}

pub fn glued_product_check(parts: &[&FiniteLattice]) -> Result<ProductCheck> {
    let h = glued_sum(parts)?;
    let con_h = con_lattice(&h).lattice;
    let cons: Vec<FiniteLattice> = parts.iter().map(|l| con_lattice(l).lattice).collect();
    let prod = product(&cons.iter().collect::<Vec<_>>())?;
    Ok(ProductCheck {
        con_size: con_h.len(),
        product_size: prod.len(),
        isomorphic: is_isomorphic(&con_h, &prod).is_some(),
    })
}

/// The glued sum of the inputs, returned only after its congruence lattice
/// has been checked against the product of theirs.
pub fn theorem2_h(parts: &[&FiniteLattice]) -> Result<FiniteLattice> {
    let check = glued_product_check(parts)?;
    if !check.isomorphic {
        return Err(Error::IsoFailure(format!(
            "Con of the glued sum has {} elements, the product {}",
            check.con_size, check.product_size
        )));
    }
    glued_sum(parts)
}

/// A patch lattice built from slim rectangular inputs.
#[derive(Clone, Debug)]
pub struct PatchBuild {
    pub diagram: RectDiagram,
    pub t: usize,
    /// Left and right boundary lamp counts of each input.
    pub boundary_counts: Vec<(usize, usize)>,
    pub scripts: Vec<InsertionScript>,
    /// Peaks of the lamps belonging to each input: its forks, then the
    /// lamps of the replayed insertions.
    pub groups: Vec<Vec<String>>,
    /// Peaks of the boundary lamps `U`, `V` and of the big internal lamp `W`.
    pub u_peak: String,
    pub v_peak: String,
    pub w_peak: String,
}

struct Fork {
    peak: String,
    foot: String,
}

/// Host strip index for each scratch strip, split after a rank-`k`
/// insertion into strip `s`.
fn split_strip(map: &[usize], s: usize, k: usize) -> Vec<usize> {
    let h = map[s];
    let mut out = map[..s].to_vec();
    out.extend(h..=h + k);
    out.extend(map[s + 1..].iter().map(|&x| x + k));
    out
}

pub fn theorem2_l(parts: &[&RectDiagram]) -> Result<PatchBuild> {
    if parts.is_empty() {
        return Err(Error::Empty);
    }
    let mut counts = Vec::new();
    let mut scripts = Vec::new();
    for part in parts {
        if part.len() < 3 {
            return Err(Error::Invalid("inputs need at least three elements".into()));
        }
        let ls = lamps(part)?;
        let left = ls
            .iter()
            .filter(|l| l.kind == LampKind::LeftBoundary)
            .count();
        let right = ls
            .iter()
            .filter(|l| l.kind == LampKind::RightBoundary)
            .count();
        counts.push((left, right));
        scripts.push(multifork_decompose(part)?);
    }
    let t = counts.iter().map(|(a, b)| a + b).sum::<usize>() + 2;
    let mut host = s_lattice(t)?;
    let base = lamps(&host)?;
    let peak_of = |kind: LampKind| {
        base.iter()
            .find(|l| l.kind == kind)
            .map(|l| host.name(l.peak).to_string())
            .expect("S_t has one lamp of each kind")
    };
    let (u_peak, v_peak, w_peak) = (
        peak_of(LampKind::LeftBoundary),
        peak_of(LampKind::RightBoundary),
        peak_of(LampKind::Internal),
    );
    let w = base.iter().find(|l| l.is_internal()).unwrap();
    let middle: Vec<String> = w.tubes[1..t - 1]
        .iter()
        .map(|tube| host.name(tube.foot).to_string())
        .collect();
    let mut forks = Vec::new();
    for name in middle {
        let top = host.lattice().index_of(&name)?;
        let ins = multifork_insert(&host, top, 1)?;
        forks.push(Fork {
            peak: ins.peak,
            foot: ins.foot,
        });
        host = ins.diagram;
    }

    let mut groups = Vec::new();
    let mut next = 0;
    for (idx, part) in parts.iter().enumerate() {
        let (nl, nr) = counts[idx];
        let xs = &forks[next..next + nl];
        let ys = &forks[next + nl..next + nl + nr];
        next += nl + nr;
        let script = &scripts[idx];
        let (m, n) = script.grid;
        if (m, n) != (nr, nl) {
            return Err(Error::ReplayMismatch(format!(
                "input {}: grid {m}x{n} but {nl} left and {nr} right boundary lamps",
                idx + 1
            )));
        }
        let coords = |name: &str| -> Result<(usize, usize)> {
            Ok(host.join_coords(host.lattice().index_of(name)?))
        };
        // Scratch strip s (from 1) covers coordinates s − 1 to s; entry 0 is unused.
        let mut jmap = vec![0; m + 1];
        for s in 1..=m {
            let y = &ys[m - s];
            jmap[s] = coords(&y.peak)?.0;
            if coords(&y.foot)?.0 + 1 != jmap[s] {
                return Err(Error::GreyCellNotFound(format!(
                    "fork {} spans several strips",
                    y.peak
                )));
            }
        }
        let mut imap = vec![0; n + 1];
        for s in 1..=n {
            let x = &xs[s - 1];
            imap[s] = coords(&x.peak)?.1;
            if coords(&x.foot)?.1 + 1 != imap[s] {
                return Err(Error::GreyCellNotFound(format!(
                    "fork {} spans several strips",
                    x.peak
                )));
            }
        }
        for &hj in &jmap[1..] {
            for &hi in &imap[1..] {
                let top = host.at_coords(hj, hi).ok_or_else(|| {
                    Error::GreyCellNotFound(format!("no element at ({hj}, {hi})"))
                })?;
                let cell = host
                    .distributive_cell(top)
                    .map_err(|e| Error::GreyCellNotFound(format!("input {}: {e}", idx + 1)))?;
                if host.join_coords(cell.bottom) != (hj - 1, hi - 1) {
                    return Err(Error::GreyCellNotFound(format!(
                        "cell below {} is not a unit cell",
                        host.name(top)
                    )));
                }
            }
        }

        let mut peaks: Vec<String> = xs.iter().chain(ys).map(|f| f.peak.clone()).collect();
        let mut scratch = grid(m, n)?;
        for (s, step) in script.steps.iter().enumerate() {
            let CellLocator(j, i) = step.cell;
            let k = step.rank;
            let mismatch = |what: String| {
                Error::ReplayMismatch(format!("input {}, step {s}: {what}", idx + 1))
            };
            let s_top = scratch
                .at_coords(j, i)
                .ok_or_else(|| mismatch(format!("no scratch element at ({j}, {i})")))?;
            if j == 0 || i == 0 || j >= jmap.len() || i >= imap.len() {
                return Err(mismatch(format!("({j}, {i}) is not a cell top")));
            }
            let (hj, hi) = (jmap[j], imap[i]);
            let h_top = host.at_coords(hj, hi).ok_or_else(|| {
                Error::GreyCellNotFound(format!("no host element at ({hj}, {hi})"))
            })?;
            let s_ins = multifork_insert(&scratch, s_top, k)?;
            let h_ins = multifork_insert(&host, h_top, k)
                .map_err(|e| Error::GreyCellNotFound(format!("host cell ({hj}, {hi}): {e}")))?;
            let at =
                |d: &RectDiagram, name: &str| d.join_coords(d.lattice().index_of(name).unwrap());
            for r in 0..k {
                let ok = at(&s_ins.diagram, &s_ins.left_boundary[r]) == (j + r, 0)
                    && at(&s_ins.diagram, &s_ins.right_boundary[r]) == (0, i + r)
                    && at(&h_ins.diagram, &h_ins.left_boundary[r]) == (hj + r, 0)
                    && at(&h_ins.diagram, &h_ins.right_boundary[r]) == (0, hi + r);
                if !ok {
                    return Err(mismatch("staircases left their strips".into()));
                }
            }
            jmap = split_strip(&jmap, j, k);
            imap = split_strip(&imap, i, k);
            peaks.push(h_ins.peak);
            scratch = s_ins.diagram;
            host = h_ins.diagram;
        }
        if is_isomorphic(scratch.lattice(), part.lattice()).is_none() {
            return Err(Error::ReplayMismatch(format!(
                "input {}: scratch replay does not rebuild it",
                idx + 1
            )));
        }
        groups.push(peaks);
    }

    let build = PatchBuild {
        diagram: host,
        t,
        boundary_counts: counts,
        scripts,
        groups,
        u_peak,
        v_peak,
        w_peak,
    };
    verify_patch_build(&build, parts)?;
    Ok(build)
}

/// The expected `Jir(Con L)`: the disjoint union of the inputs' posets with
/// `W ≺ U`, `W ≺ V` on top.
pub fn expected_jir_con(parts: &[&RectDiagram]) -> Result<FinitePoset> {
    let mut sum: Option<FinitePoset> = None;
    for (k, part) in parts.iter().enumerate() {
        let p = jir_con_poset(part.lattice()).renamed(|s| format!("{}:{s}", k + 1))?;
        sum = Some(match sum {
            None => p,
            Some(acc) => acc.cardinal_sum(&p)?,
        });
    }
    let top = FinitePoset::new(&["W", "U", "V"], &[("W", "U"), ("W", "V")])?;
    sum.ok_or(Error::Empty)?.ordinal_sum(&top)
}

fn verify_patch_build(b: &PatchBuild, parts: &[&RectDiagram]) -> Result<()> {
    let d = &b.diagram;
    let l = d.lattice();
    let fail = |msg: String| Err(Error::ReplayMismatch(msg));
    if !l.is_cover(d.left_corner(), l.top()) || !l.is_cover(d.right_corner(), l.top()) {
        return fail("result is not a patch lattice".into());
    }
    let lp = lamp_poset(d)?;
    let by_peak = |name: &str| {
        let x = l.index_of(name).ok()?;
        lp.lamps.iter().position(|lamp| lamp.peak == x)
    };
    let w = by_peak(&b.w_peak).ok_or_else(|| Error::Invalid("W is gone".into()))?;
    for (i, lamp) in lp.lamps.iter().enumerate() {
        if lamp.is_internal() && i != w && !lp.order.lt(i, w) {
            return fail(format!(
                "lamp with peak {} is not below W",
                l.name(lamp.peak)
            ));
        }
    }
    let lit = lit_region(d, &lp.lamps[w]);
    for lamp in &lp.lamps {
        if lamp.is_internal() && lamp.peak != lp.lamps[w].peak && !lit.contains(d.light(lamp.foot))
        {
            return fail(format!("foot {} is not lit by W", l.name(lamp.foot)));
        }
    }
    let mut seen = HashSet::new();
    for (group, part) in b.groups.iter().zip(parts) {
        let mut idx = Vec::new();
        for peak in group {
            let i =
                by_peak(peak).ok_or_else(|| Error::Invalid(format!("no lamp with peak {peak}")))?;
            if !seen.insert(i) {
                return fail(format!("lamp with peak {peak} is in two groups"));
            }
            idx.push(i);
        }
        if !posets_isomorphic(&lp.order.induced(&idx), &lamp_poset(part)?.order) {
            return fail("a lamp group differs from the lamps of its input".into());
        }
    }
    if !posets_isomorphic(&jir_con_poset(l), &expected_jir_con(parts)?) {
        return Err(Error::IsoFailure(
            "Jir(Con L) differs from the disjoint union plus {U, V, W}".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::grid;
    use crate::lattice::count_downsets;

    #[test]
    fn glued_products() {
        let b2 = grid(1, 1).unwrap();
        let s7 = s_lattice(1).unwrap();
        let g12 = grid(1, 2).unwrap();
        let c = glued_product_check(&[b2.lattice(), b2.lattice()]).unwrap();
        assert_eq!((c.con_size, c.isomorphic), (16, true));
        let c = glued_product_check(&[s7.lattice(), g12.lattice()]).unwrap();
        assert_eq!((c.con_size, c.product_size, c.isomorphic), (40, 40, true));
        assert_eq!(theorem2_h(&[s7.lattice()]).unwrap().len(), 7);
    }

    #[test]
    fn patch_from_s7_and_b2() {
        let s7 = s_lattice(1).unwrap();
        let b = theorem2_l(&[&s7]).unwrap();
        assert_eq!(b.t, 4);
        assert_eq!(count_downsets(&jir_con_poset(b.diagram.lattice())), 9);
        let b2 = grid(1, 1).unwrap();
        let b = theorem2_l(&[&b2]).unwrap();
        assert_eq!(count_downsets(&jir_con_poset(b.diagram.lattice())), 8);
    }

    #[test]
    fn two_inputs() {
        let s7 = s_lattice(1).unwrap();
        let g = grid(1, 2).unwrap();
        let b = theorem2_l(&[&g, &s7]).unwrap();
        assert_eq!(b.t, 7);
        assert_eq!(b.groups.len(), 2);
        assert_eq!(b.groups[1].len(), 3);
    }
}
