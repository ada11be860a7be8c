mod common;

use common::{fixture, poset};
use spslab_core::congruence::{con_lattice, jir_con_poset};
use spslab_core::constructions::{multifork_decompose, replay, s_lattice, theorem2_l};
use spslab_core::corpus::enumerate_corpus;
use spslab_core::io::LatticeJson;
use spslab_core::iso::{is_isomorphic, posets_isomorphic};
use spslab_core::lamps::{
    lamp_jir_isomorphism, lamp_poset, left_of, quadruple, shield, LampKind, LampPoset,
};
use spslab_core::properties::{corollary62_report, patch_characterize, Verdict};
use spslab_core::render::{render, Format, RenderStyle};

fn by_foot(lp: &LampPoset, d: &spslab_core::diagram::RectDiagram, foot: &str) -> usize {
    let x = d.lattice().index_of(foot).unwrap();
    lp.lamps.iter().position(|l| l.foot == x).unwrap()
}

#[test]
fn s7_fixture() {
    let d = fixture("s7.json");
    let l = d.lattice();
    assert_eq!(l.len(), 7);
    assert!(d.validate_c1().is_empty());
    assert_eq!(
        (l.name(d.left_corner()), l.name(d.right_corner())),
        ("cl", "cr")
    );
    assert!(patch_characterize(l, Some(&d)).unwrap().is_patch);
    assert_eq!(con_lattice(l).len(), 5);
    let vee = poset(&["w", "u", "v"], &[("w", "u"), ("w", "v")]);
    assert!(posets_isomorphic(&jir_con_poset(l), &vee));
    assert!(is_isomorphic(l, s_lattice(1).unwrap().lattice()).is_some());
    let steep: Vec<_> = l
        .edges()
        .into_iter()
        .filter(|&(a, b)| d.pos(b).0 == d.pos(a).0)
        .map(|(a, b)| (l.name(a).to_string(), l.name(b).to_string()))
        .collect();
    assert_eq!(steep, [("m".to_string(), "1".to_string())]);
    let svg = render(&d, Format::Svg, &RenderStyle::default()).unwrap();
    assert_eq!(svg.matches("<line").count(), 9);
}

#[test]
fn s7_with_m_moved_breaks_the_diagram() {
    let text = std::fs::read_to_string(
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/s7.json"),
    )
    .unwrap();
    let mut json: LatticeJson = serde_json::from_str(&text).unwrap();
    json.coords.as_mut().unwrap().insert("m".into(), (1, 2));
    let bad = json.to_diagram().unwrap();
    let found: Vec<String> = bad.validate_c1().iter().map(|v| v.to_string()).collect();
    assert!(found.iter().any(|v| v.contains("[r, m]")), "{found:?}");
    assert!(found.iter().any(|v| v.contains("geometry")), "{found:?}");
}

#[test]
fn figure2_census() {
    let d = fixture("figure2.json");
    assert!(d.validate_c1().is_empty());
    let lp = lamp_poset(&d).unwrap();
    let count = |k: LampKind| lp.lamps.iter().filter(|l| l.kind == k).count();
    assert_eq!(lp.lamps.len(), 16);
    assert_eq!(count(LampKind::LeftBoundary), 5);
    assert_eq!(count(LampKind::RightBoundary), 6);
    assert_eq!(count(LampKind::Internal), 5);
    let name = |x: usize| d.name(x).to_string();
    let mut feet: Vec<String> = lp.lamps.iter().map(|l| name(l.foot)).collect();
    feet.sort();
    let want = [
        "a", "b", "c", "d", "e", "p1", "p2", "p3", "p4", "p5", "q1", "q2", "q3", "q4", "q5", "q6",
    ];
    assert_eq!(feet, want);
    let tubes = |f: &str| lp.lamps[by_foot(&lp, &d, f)].tubes.len();
    assert!(["a", "b", "c"].iter().all(|f| tubes(f) >= 2));
    assert_eq!((tubes("d"), tubes("e")), (1, 1));
    let (_, jc) = lamp_jir_isomorphism(&d, &lp).unwrap();
    assert!(posets_isomorphic(&lp.order, &jc.poset));
    assert_eq!(jc.poset.len(), 16);
}

#[test]
fn figure2_shields_and_left_of() {
    let d = fixture("figure2.json");
    let lp = lamp_poset(&d).unwrap();
    let lamp = |f: &str| &lp.lamps[by_foot(&lp, &d, f)];
    let pair = |(a, b): (usize, usize)| (d.name(a).to_string(), d.name(b).to_string());
    assert_eq!(d.name(lamp("a").peak), "g");
    assert_eq!(d.name(lamp("b").peak), "h");
    assert_eq!(d.name(lamp("c").peak), "z");
    let sa = shield(&d, lamp("a")).unwrap();
    assert_eq!(pair(sa.right), ("h".into(), "g".into()));
    let sb = shield(&d, lamp("b")).unwrap();
    assert_eq!(pair(sb.left), ("f".into(), "h".into()));
    let se = shield(&d, lamp("e")).unwrap();
    assert_eq!(d.name(se.left.0), "y");
    let q = |f: &str| quadruple(&d, lamp(f));
    assert!(left_of(&q("e"), &q("d")));
    assert!(left_of(&q("p1"), &q("c")));
    assert!(!left_of(&q("p2"), &q("c")));
    assert!(!left_of(&q("a"), &q("b")));
}

#[test]
fn figure2_roofs_and_floors_of_c() {
    let d = fixture("figure2.json");
    let lp = lamp_poset(&d).unwrap();
    let c = &lp.lamps[by_foot(&lp, &d, "c")];
    let q = quadruple(&d, c);
    let at = |lam: i64, mu: i64| {
        (0..d.len())
            .find(|&e| d.light(e) == (lam, mu))
            .map(|e| d.name(e).to_string())
    };
    assert_eq!(at(q.p, 0).as_deref(), Some("t"));
    assert_eq!(at(0, q.s).as_deref(), Some("s"));
    assert_eq!(at(q.q, 0).as_deref(), Some("y"));
    assert_eq!(at(0, q.r).as_deref(), Some("r"));
}

#[test]
fn figure2_round_trips_through_decomposition() {
    let d = fixture("figure2.json");
    let script = multifork_decompose(&d).unwrap();
    assert_eq!(script.grid, (6, 5));
    let back = replay(&script).unwrap();
    assert!(is_isomorphic(back.lattice(), d.lattice()).is_some());
}

#[test]
fn corollary62_on_s7_patch_construction() {
    let s7 = s_lattice(1).unwrap();
    let b = theorem2_l(&[&s7]).unwrap();
    let c = corollary62_report(b.diagram.lattice(), Some(&b.diagram)).unwrap();
    assert_eq!(c.d0.len(), 6);
    assert_eq!(c.d0.jir_poset().maximal().len(), 1);
    assert!(c.report.passed(), "{:?}", c.report.checks);
}

#[test]
fn corollary62_on_corpus_patch_lattices() {
    let corpus = enumerate_corpus(18);
    let mut patches = 0;
    for item in &corpus.items {
        let d = &item.diagram;
        let pc = patch_characterize(d.lattice(), Some(d)).unwrap();
        if !pc.is_patch {
            continue;
        }
        patches += 1;
        let c = corollary62_report(d.lattice(), Some(d)).unwrap();
        for check in &c.report.checks {
            assert_eq!(
                check.verdict,
                Verdict::Pass,
                "{} on size {}",
                check.name,
                d.len()
            );
        }
    }
    assert!(patches > 5, "{patches}");
}

#[test]
fn figure2_is_not_a_patch_lattice() {
    let d = fixture("figure2.json");
    let pc = patch_characterize(d.lattice(), Some(&d)).unwrap();
    assert!(!pc.is_patch);
    assert!(pc.d0.is_none());
    assert_eq!(con_lattice(d.lattice()).len(), 4096);
}
