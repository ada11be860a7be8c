mod common;

use std::sync::OnceLock;

use proptest::prelude::*;

use common::normalise;
use spslab_core::congruence::{con_lattice, jir_con_poset};
use spslab_core::constructions::{grid, multifork_insert, product};
use spslab_core::corpus::{enumerate_corpus, Corpus};
use spslab_core::io::LatticeJson;
use spslab_core::iso::{canonical_form, is_isomorphic, posets_isomorphic};
use spslab_core::lamps::lamp_poset;
use spslab_core::lattice::downset_lattice;
use spslab_core::{FiniteLattice, FinitePoset};

fn corpus() -> &'static Corpus {
    static C: OnceLock<Corpus> = OnceLock::new();
    C.get_or_init(|| enumerate_corpus(16))
}

/// A poset on `n` points whose order is the transitive closure of the
/// chosen pairs `i < j`.
fn arb_poset(max: usize) -> impl Strategy<Value = FinitePoset> {
    (1..=max).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let mut rel = vec![vec![false; n]; n];
            for i in 0..n {
                rel[i][i] = true;
                for j in i + 1..n {
                    rel[i][j] = bits[i * n + j];
                }
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if rel[i][k] && rel[k][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
            let names = (0..n).map(|i| format!("p{i}")).collect();
            FinitePoset::from_relation(names, |a, b| rel[a][b]).unwrap()
        })
    })
}

fn relabel(l: &FiniteLattice, perm: &[usize]) -> FiniteLattice {
    let names: Vec<String> = (0..l.len()).map(|i| format!("e{}", perm[i])).collect();
    let covers: Vec<(String, String)> = l
        .edges()
        .into_iter()
        .map(|(a, b)| (names[a].clone(), names[b].clone()))
        .collect();
    FiniteLattice::new(&names, &covers).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn birkhoff_round_trip(p in arb_poset(6)) {
        let d = downset_lattice(&p);
        prop_assert!(d.is_distributive());
        prop_assert!(posets_isomorphic(&d.jir_poset(), &p));
    }

    #[test]
    fn con_of_distributive_is_boolean(p in arb_poset(5)) {
        let d = downset_lattice(&p);
        prop_assert_eq!(con_lattice(&d).len(), 1 << p.len());
        prop_assert_eq!(jir_con_poset(&d).maximal().len(), p.len());
    }

    #[test]
    fn isomorphism_ignores_labels(pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        let items = &corpus().items;
        let l = items[pick.index(items.len())].diagram.lattice();
        let mut perm: Vec<usize> = (0..l.len()).collect();
        let mut s = seed | 1;
        for i in (1..perm.len()).rev() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            perm.swap(i, (s % (i as u64 + 1)) as usize);
        }
        let other = relabel(l, &perm);
        prop_assert_eq!(canonical_form(l.poset()), canonical_form(other.poset()));
        let iso = is_isomorphic(l, &other);
        prop_assert!(iso.is_some());
        let f = iso.unwrap();
        for a in 0..l.len() {
            for b in 0..l.len() {
                prop_assert_eq!(l.leq(a, b), other.leq(f[a], f[b]));
            }
        }
    }

    #[test]
    fn congruences_are_closed_under_join_and_meet(pick in any::<prop::sample::Index>()) {
        let items = &corpus().items;
        let l = items[pick.index(items.len())].diagram.lattice();
        let cl = con_lattice(l);
        let all: std::collections::BTreeSet<Vec<u32>> =
            cl.congruences.iter().map(|c| normalise(c.labels())).collect();
        for a in &cl.congruences {
            prop_assert!(a.is_compatible(l));
            for b in &cl.congruences {
                prop_assert!(all.contains(&normalise(a.join(b).labels())));
                prop_assert!(all.contains(&normalise(a.meet(b).labels())));
            }
        }
    }

    #[test]
    fn lamps_match_congruences(pick in any::<prop::sample::Index>()) {
        let items = &corpus().items;
        let d = &items[pick.index(items.len())].diagram;
        let lp = lamp_poset(d).unwrap();
        prop_assert!(posets_isomorphic(&lp.order, &jir_con_poset(d.lattice())));
    }

    #[test]
    fn insertion_adds_one_lamp(pick in any::<prop::sample::Index>(), cell in any::<prop::sample::Index>(), k in 1usize..=2) {
        let items = &corpus().items;
        let d = &items[pick.index(items.len())].diagram;
        let cells: Vec<_> = d.cells().into_iter().filter(|c| c.distributive).collect();
        prop_assume!(!cells.is_empty());
        let c = cells[cell.index(cells.len())];
        let ins = multifork_insert(d, c.top, k).unwrap();
        let e = &ins.diagram;
        prop_assert!(e.validate_c1().is_empty());
        prop_assert!(e.lattice().is_slim() && e.lattice().is_semimodular());
        let before = lamp_poset(d).unwrap().lamps.len();
        let after = lamp_poset(e).unwrap();
        prop_assert_eq!(after.lamps.len(), before + 1);
        let peak = e.lattice().index_of(&ins.peak).unwrap();
        let new = after.lamps.iter().find(|l| l.is_internal() && l.peak == peak).unwrap();
        prop_assert_eq!(new.tubes.len(), k);
    }

    #[test]
    fn json_round_trip(pick in any::<prop::sample::Index>()) {
        let items = &corpus().items;
        let d = &items[pick.index(items.len())].diagram;
        let text = serde_json::to_string(&LatticeJson::from_diagram(d)).unwrap();
        let back: LatticeJson = serde_json::from_str(&text).unwrap();
        let e = back.to_diagram().unwrap();
        prop_assert_eq!(e.lattice(), d.lattice());
        prop_assert_eq!(e.positions(), d.positions());
    }

    #[test]
    fn product_of_grids(m in 1usize..=3, n in 1usize..=3) {
        let a = FiniteLattice::chain(m + 1);
        let b = FiniteLattice::chain(n + 1);
        let p = product(&[&a, &b]).unwrap();
        prop_assert_eq!(p.len(), a.len() * b.len());
        prop_assert!(is_isomorphic(&p, grid(m, n).unwrap().lattice()).is_some());
    }
}
