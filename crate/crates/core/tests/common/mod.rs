//! Test-side builders and brute-force oracles shared by the integration
//! tests. Nothing here calls the library routine it is used to check.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use spslab_core::constructions::{grid, multifork_insert, s_lattice};
use spslab_core::diagram::RectDiagram;
use spslab_core::io::read_lattice_json;
use spslab_core::{FiniteLattice, FinitePoset};

pub fn fixture(name: &str) -> RectDiagram {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name);
    read_lattice_json(&path)
        .and_then(|j| j.to_diagram())
        .unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn lattice(elements: &[&str], covers: &[(&str, &str)]) -> FiniteLattice {
    FiniteLattice::new(elements, covers).unwrap()
}

pub fn poset(elements: &[&str], covers: &[(&str, &str)]) -> FinitePoset {
    FinitePoset::new(elements, covers).unwrap()
}

pub fn m3() -> FiniteLattice {
    lattice(
        &["0", "a", "b", "c", "1"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("0", "c"),
            ("a", "1"),
            ("b", "1"),
            ("c", "1"),
        ],
    )
}

pub fn n5() -> FiniteLattice {
    lattice(
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "b"), ("b", "1"), ("0", "c"), ("c", "1")],
    )
}

pub fn b3() -> FiniteLattice {
    let el = ["0", "a", "b", "c", "ab", "ac", "bc", "1"];
    lattice(
        &el,
        &[
            ("0", "a"),
            ("0", "b"),
            ("0", "c"),
            ("a", "ab"),
            ("a", "ac"),
            ("b", "ab"),
            ("b", "bc"),
            ("c", "ac"),
            ("c", "bc"),
            ("ab", "1"),
            ("ac", "1"),
            ("bc", "1"),
        ],
    )
}

/// Grid (2, 2) with a rank-2 multifork in its lower cell.
pub fn fork2() -> RectDiagram {
    let g = grid(2, 2).unwrap();
    let top = g.at_coords(1, 1).unwrap();
    multifork_insert(&g, top, 2).unwrap().diagram
}

/// The six inputs used for the glued-sum and patch constructions.
pub fn theorem2_inputs() -> Vec<(&'static str, RectDiagram)> {
    vec![
        ("B2", grid(1, 1).unwrap()),
        ("grid(1,2)", grid(1, 2).unwrap()),
        ("grid(2,2)", grid(2, 2).unwrap()),
        ("S7", s_lattice(1).unwrap()),
        ("S(2)", s_lattice(2).unwrap()),
        ("fork2", fork2()),
    ]
}

pub fn leq_table(l: &FiniteLattice) -> Vec<Vec<bool>> {
    (0..l.len())
        .map(|a| (0..l.len()).map(|b| l.leq(a, b)).collect())
        .collect()
}

/// Join and meet tables found by scanning all bounds.
pub fn op_tables(leq: &[Vec<bool>]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let n = leq.len();
    let least = |cands: Vec<usize>, up: bool| {
        *cands
            .iter()
            .find(|&&c| {
                cands
                    .iter()
                    .all(|&d| if up { leq[c][d] } else { leq[d][c] })
            })
            .expect("bounds exist")
    };
    let mut join = vec![vec![0; n]; n];
    let mut meet = vec![vec![0; n]; n];
    for a in 0..n {
        for b in 0..n {
            join[a][b] = least((0..n).filter(|&c| leq[a][c] && leq[b][c]).collect(), true);
            meet[a][b] = least((0..n).filter(|&c| leq[c][a] && leq[c][b]).collect(), false);
        }
    }
    (join, meet)
}

/// Relabels blocks in order of first appearance.
pub fn normalise(labels: &[u32]) -> Vec<u32> {
    let mut map: Vec<(u32, u32)> = Vec::new();
    labels
        .iter()
        .map(|&x| match map.iter().find(|p| p.0 == x) {
            Some(p) => p.1,
            None => {
                let k = map.len() as u32;
                map.push((x, k));
                k
            }
        })
        .collect()
}

/// Every partition of the lattice that is compatible with join and meet.
pub fn brute_force_congruences(l: &FiniteLattice) -> BTreeSet<Vec<u32>> {
    let n = l.len();
    let (join, meet) = op_tables(&leq_table(l));
    let mut out = BTreeSet::new();
    let mut rgs = vec![0u32; n];
    fn rec(
        k: usize,
        max: u32,
        rgs: &mut Vec<u32>,
        join: &[Vec<usize>],
        meet: &[Vec<usize>],
        out: &mut BTreeSet<Vec<u32>>,
    ) {
        let n = rgs.len();
        if k == n {
            let ok = (0..n).all(|a| {
                (0..n).all(|b| {
                    rgs[a] != rgs[b]
                        || (0..n).all(|c| {
                            rgs[join[a][c]] == rgs[join[b][c]] && rgs[meet[a][c]] == rgs[meet[b][c]]
                        })
                })
            });
            if ok {
                out.insert(rgs.clone());
            }
            return;
        }
        for v in 0..=max + 1 {
            if k == 0 && v > 0 {
                break;
            }
            rgs[k] = v;
            rec(k + 1, max.max(v), rgs, join, meet, out);
        }
    }
    if n > 0 {
        rec(0, 0, &mut rgs, &join, &meet, &mut out);
    }
    out
}

/// All injective maps from `pattern` to `host` that are order embeddings
/// sending covers to covers, with tagged elements sent to maximal elements
/// when `tags` is set.
pub fn brute_force_embeddings(
    pattern: &FinitePoset,
    tagged: &[bool],
    host: &FinitePoset,
    tags: bool,
) -> BTreeSet<Vec<usize>> {
    let k = pattern.len();
    let n = host.len();
    let p_leq: Vec<Vec<bool>> = (0..k)
        .map(|a| (0..k).map(|b| pattern.leq(a, b)).collect())
        .collect();
    let h_leq: Vec<Vec<bool>> = (0..n)
        .map(|a| (0..n).map(|b| host.leq(a, b)).collect())
        .collect();
    let cover = |leq: &Vec<Vec<bool>>, a: usize, b: usize| {
        a != b && leq[a][b] && (0..leq.len()).all(|c| c == a || c == b || !(leq[a][c] && leq[c][b]))
    };
    let h_max: Vec<bool> = (0..n)
        .map(|a| (0..n).all(|b| a == b || !h_leq[a][b]))
        .collect();
    let mut out = BTreeSet::new();
    let mut map = Vec::with_capacity(k);
    let mut used = vec![false; n];
    fn rec(
        map: &mut Vec<usize>,
        used: &mut [bool],
        k: usize,
        accept: &dyn Fn(&[usize]) -> bool,
        out: &mut BTreeSet<Vec<usize>>,
    ) {
        if map.len() == k {
            if accept(map) {
                out.insert(map.clone());
            }
            return;
        }
        for y in 0..used.len() {
            if !used[y] {
                used[y] = true;
                map.push(y);
                rec(map, used, k, accept, out);
                map.pop();
                used[y] = false;
            }
        }
    }
    let accept = |f: &[usize]| {
        (0..k).all(|a| {
            (!tags || !tagged[a] || h_max[f[a]])
                && (0..k).all(|b| {
                    p_leq[a][b] == h_leq[f[a]][f[b]]
                        && (!cover(&p_leq, a, b) || cover(&h_leq, f[a], f[b]))
                })
        })
    };
    rec(&mut map, &mut used, k, &accept, &mut out);
    out
}

/// The geometric comparability law: `u < v` exactly when `v` is higher and
/// the segment from `u` to `v` is steep or of normal slope.
pub fn geometry_law_violations(d: &RectDiagram) -> usize {
    let l = d.lattice();
    let mut bad = 0;
    for u in 0..d.len() {
        for v in 0..d.len() {
            if u == v {
                continue;
            }
            let (ux, uy) = d.pos(u);
            let (vx, vy) = d.pos(v);
            let geometric = vy > uy && (vx - ux).abs() <= vy - uy;
            if geometric != l.lt(u, v) {
                bad += 1;
            }
        }
    }
    bad
}
