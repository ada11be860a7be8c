//! Isomorphism tests and canonical forms for posets and lattices.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::lattice::FiniteLattice;
use crate::poset::FinitePoset;

/// Stable colouring of the cover digraph obtained by iterated refinement.
/// Colours are canonical: they only depend on the isomorphism type of the
/// poset together with the initial colouring.
fn refine(p: &FinitePoset, mut color: Vec<u32>) -> Vec<u32> {
    let n = p.len();
    let mut classes = count_classes(&color);
    loop {
        let sigs: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut up: Vec<u32> = p.upper_covers(v).iter().map(|&w| color[w]).collect();
                let mut down: Vec<u32> = p.lower_covers(v).iter().map(|&w| color[w]).collect();
                up.sort_unstable();
                down.sort_unstable();
                (color[v], up, down)
            })
            .collect();
        color = rank(&sigs);
        let next = count_classes(&color);
        if next == classes {
            return color;
        }
        classes = next;
    }
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap() as u32)
        .collect()
}

fn count_classes(color: &[u32]) -> usize {
    let mut c = color.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

fn initial_colors(p: &FinitePoset) -> Vec<u32> {
    let keys: Vec<(usize, usize, usize)> = (0..p.len())
        .map(|v| {
            (
                p.height(v),
                p.down_set(v).count_ones(..),
                p.up_set(v).count_ones(..),
            )
        })
        .collect();
    rank(&keys)
}

/// Canonical code of a poset: two posets have equal codes iff they are
/// isomorphic. Intended for small posets with few automorphisms.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    pub size: usize,
    pub covers: Vec<(u32, u32)>,
}

pub fn canonical_form(p: &FinitePoset) -> CanonicalForm {
    let color = refine(p, initial_colors(p));
    let mut best: Option<CanonicalForm> = None;
    search_canonical(p, color, &mut best);
    best.expect("search visits at least one leaf")
}

fn search_canonical(p: &FinitePoset, color: Vec<u32>, best: &mut Option<CanonicalForm>) {
    let n = p.len();
    let mut size: HashMap<u32, usize> = HashMap::new();
    for &c in &color {
        *size.entry(c).or_default() += 1;
    }
    let target = (0..n as u32).find(|c| size.get(c).copied().unwrap_or(0) > 1);
    match target {
        None => {
            let mut covers: Vec<(u32, u32)> =
                p.covers().map(|(a, b)| (color[a], color[b])).collect();
            covers.sort_unstable();
            let form = CanonicalForm { size: n, covers };
            if best.as_ref().is_none_or(|b| form < *b) {
                *best = Some(form);
            }
        }
        Some(cell) => {
            for v in (0..n).filter(|&v| color[v] == cell) {
                let keys: Vec<(u32, bool)> = (0..n).map(|u| (color[u], u != v)).collect();
                let next = refine(p, rank(&keys));
                search_canonical(p, next, best);
            }
        }
    }
}

/// An order isomorphism `p -> q` as a vector of target indices, found by
/// backtracking over refinement colour classes.
pub fn poset_isomorphism(p: &FinitePoset, q: &FinitePoset) -> Option<Vec<usize>> {
    if p.len() != q.len() || p.cover_count() != q.cover_count() {
        return None;
    }
    // Refine both posets together so that colours are comparable.
    let joint = p
        .cardinal_sum(&q.renamed(|s| format!("\u{0}{s}")).ok()?)
        .ok()?;
    let n = p.len();
    let joint_color = refine(&joint, initial_colors(&joint));
    let index_p: Vec<usize> = (0..n).map(|i| joint.index_of(p.name(i)).unwrap()).collect();
    let index_q: Vec<usize> = (0..n)
        .map(|i| joint.index_of(&format!("\u{0}{}", q.name(i))).unwrap())
        .collect();
    let cp: Vec<u32> = index_p.iter().map(|&i| joint_color[i]).collect();
    let cq: Vec<u32> = index_q.iter().map(|&i| joint_color[i]).collect();
    let mut hp = cp.clone();
    let mut hq = cq.clone();
    hp.sort_unstable();
    hq.sort_unstable();
    if hp != hq {
        return None;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = FixedBitSet::with_capacity(n);
    extend_iso(p, q, &cp, &cq, 0, &mut map, &mut used).then_some(map)
}

fn extend_iso(
    p: &FinitePoset,
    q: &FinitePoset,
    cp: &[u32],
    cq: &[u32],
    i: usize,
    map: &mut Vec<usize>,
    used: &mut FixedBitSet,
) -> bool {
    if i == p.len() {
        return true;
    }
    for t in 0..q.len() {
        if used.contains(t) || cq[t] != cp[i] {
            continue;
        }
        let consistent =
            (0..i).all(|k| p.leq(k, i) == q.leq(map[k], t) && p.leq(i, k) == q.leq(t, map[k]));
        if !consistent {
            continue;
        }
        map[i] = t;
        used.insert(t);
        if extend_iso(p, q, cp, cq, i + 1, map, used) {
            return true;
        }
        used.set(t, false);
    }
    map[i] = usize::MAX;
    false
}

pub fn posets_isomorphic(p: &FinitePoset, q: &FinitePoset) -> bool {
    poset_isomorphism(p, q).is_some()
}

/// A lattice isomorphism `a -> b`. Built from an isomorphism of the
/// join-irreducible posets, extended by joins and then checked in full.
pub fn is_isomorphic(a: &FiniteLattice, b: &FiniteLattice) -> Option<Vec<usize>> {
    if a.len() != b.len() || a.poset().cover_count() != b.poset().cover_count() {
        return None;
    }
    let ja: Vec<usize> = (0..a.len()).filter(|&x| a.is_jir(x)).collect();
    let jb: Vec<usize> = (0..b.len()).filter(|&x| b.is_jir(x)).collect();
    if ja.len() != jb.len() {
        return None;
    }
    let pa = a.poset().induced(&ja);
    let pb = b.poset().induced(&jb);
    let ka = jir_keys(a, &ja, &pa);
    let kb = jir_keys(b, &jb, &pb);
    let mut map_j = vec![usize::MAX; pa.len()];
    let mut used = FixedBitSet::with_capacity(pb.len());
    let mut found = None;
    search_jir(
        a, b, &pa, &pb, &ka, &kb, 0, &mut map_j, &mut used, &mut found,
    );
    found
}

// Height in Jir plus the sizes of the principal ideal and filter in the whole
// lattice; all are preserved by lattice isomorphisms.
fn jir_keys(l: &FiniteLattice, js: &[usize], p: &FinitePoset) -> Vec<(usize, usize, usize)> {
    (0..p.len())
        .map(|i| {
            let j = l.index_of(p.name(i)).unwrap();
            debug_assert!(js.contains(&j));
            (
                p.height(i),
                l.poset().down_set(j).count_ones(..),
                l.poset().up_set(j).count_ones(..),
            )
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn search_jir(
    a: &FiniteLattice,
    b: &FiniteLattice,
    pa: &FinitePoset,
    pb: &FinitePoset,
    ka: &[(usize, usize, usize)],
    kb: &[(usize, usize, usize)],
    i: usize,
    map: &mut Vec<usize>,
    used: &mut FixedBitSet,
    found: &mut Option<Vec<usize>>,
) -> bool {
    if i == pa.len() {
        if let Some(full) = extend_by_joins(a, b, pa, pb, map) {
            *found = Some(full);
            return true;
        }
        return false;
    }
    for t in 0..pb.len() {
        if used.contains(t) || ka[i] != kb[t] {
            continue;
        }
        let ok =
            (0..i).all(|k| pa.leq(k, i) == pb.leq(map[k], t) && pa.leq(i, k) == pb.leq(t, map[k]));
        if !ok {
            continue;
        }
        map[i] = t;
        used.insert(t);
        if search_jir(a, b, pa, pb, ka, kb, i + 1, map, used, found) {
            return true;
        }
        used.set(t, false);
    }
    false
}

fn extend_by_joins(
    a: &FiniteLattice,
    b: &FiniteLattice,
    pa: &FinitePoset,
    pb: &FinitePoset,
    map_j: &[usize],
) -> Option<Vec<usize>> {
    let n = a.len();
    let jir_a: Vec<usize> = (0..pa.len())
        .map(|i| a.index_of(pa.name(i)).unwrap())
        .collect();
    let jir_b: Vec<usize> = (0..pb.len())
        .map(|i| b.index_of(pb.name(i)).unwrap())
        .collect();
    let mut f = vec![0usize; n];
    let mut hit = FixedBitSet::with_capacity(n);
    for (x, fx) in f.iter_mut().enumerate() {
        *fx = b.join_all(
            (0..pa.len())
                .filter(|&i| a.leq(jir_a[i], x))
                .map(|i| jir_b[map_j[i]]),
        );
        if hit.contains(*fx) {
            return None;
        }
        hit.insert(*fx);
    }
    let mut image = FixedBitSet::with_capacity(n);
    for x in 0..n {
        image.clear();
        for y in a.poset().up_set(x).ones() {
            image.insert(f[y]);
        }
        if image != *b.poset().up_set(f[x]) {
            return None;
        }
    }
    Some(f)
}
