//! Batch verification of the lamp, congruence and diagram invariants over a
//! corpus.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::congruence::jir_con_poset;
use crate::constructions::{multifork_decompose, replay, InsertionScript};
use crate::corpus::Corpus;
use crate::diagram::RectDiagram;
use crate::error::Error;
use crate::iso::is_isomorphic;
use crate::lamps::{
    key_lemma_violations, lamp_jir_isomorphism, lamp_poset, shield_invariant_holds, Relations,
};
use crate::properties::{check_3p3c, check_thm3, check_thm4, patch_characterize, PatternPoset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(into = "&'static str")]
pub enum Suite {
    Diagram,
    LampIso,
    Rho,
    KeyLemma,
    Shields,
    Thm3,
    Thm4,
    ThreePendantThreeCrown,
    Patch,
    Decompose,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Diagram,
        Suite::LampIso,
        Suite::Rho,
        Suite::KeyLemma,
        Suite::Shields,
        Suite::Thm3,
        Suite::Thm4,
        Suite::ThreePendantThreeCrown,
        Suite::Patch,
        Suite::Decompose,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Diagram => "diagram",
            Suite::LampIso => "lamp-iso",
            Suite::Rho => "rho",
            Suite::KeyLemma => "key-lemma",
            Suite::Shields => "shields",
            Suite::Thm3 => "thm3",
            Suite::Thm4 => "thm4",
            Suite::ThreePendantThreeCrown => "3p3c",
            Suite::Patch => "patch",
            Suite::Decompose => "decompose",
        }
    }
}

impl From<Suite> for &'static str {
    fn from(s: Suite) -> Self {
        s.as_str()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Position in the corpus.
    pub item: usize,
    pub size: usize,
    pub suite: Suite,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub suite: Suite,
    pub checked: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub max_size: usize,
    pub items: usize,
    pub suites: Vec<SuiteSummary>,
    /// Ordered by item, then suite.
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs `suites` on one diagram. `script`, when given, must replay to a
/// lattice isomorphic to `d`. Returns `(suite, detail)` for each failure.
pub fn verify_diagram(
    d: &RectDiagram,
    script: Option<&InsertionScript>,
    suites: &[Suite],
    r: Option<&PatternPoset>,
) -> Vec<(Suite, String)> {
    let mut out = Vec::new();
    let l = d.lattice();
    let lamp_suite = suites.iter().copied().find(|s| {
        matches!(
            s,
            Suite::LampIso | Suite::Rho | Suite::KeyLemma | Suite::Shields
        )
    });
    let lp = match lamp_suite.map(|s| (s, lamp_poset(d))) {
        Some((_, Ok(lp))) => Some(lp),
        Some((s, Err(e))) => {
            out.push((s, format!("lamp poset: {e}")));
            None
        }
        None => None,
    };
    let jir = jir_con_poset(l);
    for &suite in suites {
        let mut fail = |detail: String| out.push((suite, detail));
        match suite {
            Suite::Diagram => {
                if !l.is_semimodular() || !l.is_slim() {
                    fail("not slim and semimodular".into());
                }
                if let Some(v) = d.validate_c1().first() {
                    fail(v.to_string());
                }
            }
            Suite::LampIso => {
                if let Some(lp) = &lp {
                    if let Err(e) = lamp_jir_isomorphism(d, lp) {
                        fail(e.to_string());
                    }
                }
            }
            Suite::Rho => {
                let Some(lp) = &lp else { continue };
                let rel = Relations::new(d, &lp.lamps);
                let n = lp.lamps.len();
                'pairs: for i in 0..n {
                    for j in 0..n {
                        let v = [
                            rel.rho_geom(i, j),
                            rel.rho_foot(i, j),
                            rel.rho_infoot(i, j),
                            rel.rho_alg(i, j),
                        ];
                        if v.iter().any(|&x| x != v[0]) {
                            fail(format!(
                                "lamps with feet {} and {}: geom/foot/infoot/alg = {v:?}",
                                d.name(lp.lamps[i].foot),
                                d.name(lp.lamps[j].foot)
                            ));
                            break 'pairs;
                        }
                    }
                }
            }
            Suite::KeyLemma => {
                let Some(lp) = &lp else { continue };
                if let Some(&(a, b)) = key_lemma_violations(d, lp).first() {
                    fail(format!(
                        "lamps with feet {} and {} share a lower cover but neither is left of the other",
                        d.name(lp.lamps[a].foot),
                        d.name(lp.lamps[b].foot)
                    ));
                }
            }
            Suite::Shields => {
                let Some(lp) = &lp else { continue };
                for lamp in lp.lamps.iter().filter(|l| l.is_internal()) {
                    match shield_invariant_holds(d, lamp) {
                        Ok(true) => {}
                        Ok(false) => {
                            fail(format!("shield too short at peak {}", d.name(lamp.peak)));
                            break;
                        }
                        Err(e) => {
                            fail(e.to_string());
                            break;
                        }
                    }
                }
            }
            Suite::Thm3 | Suite::Thm4 | Suite::ThreePendantThreeCrown => {
                let checks = match suite {
                    Suite::Thm3 => check_thm3(&jir),
                    Suite::Thm4 => check_thm4(&jir, r),
                    _ => vec![check_3p3c(&jir)],
                };
                for c in checks.iter().filter(|c| c.verdict.is_fail()) {
                    fail(format!(
                        "{}: {}",
                        c.name,
                        serde_json::to_string(&c.verdict).unwrap_or_default()
                    ));
                }
            }
            Suite::Patch => {
                if let Err(e) = patch_characterize(l, Some(d)) {
                    fail(e.to_string());
                }
            }
            Suite::Decompose => {
                if let Some(s) = script {
                    match replay(s) {
                        Ok(g) if is_isomorphic(g.lattice(), l).is_some() => {}
                        Ok(_) => fail("generating script does not replay to the item".into()),
                        Err(e) => fail(format!("generating script: {e}")),
                    }
                }
                match multifork_decompose(d).and_then(|s| replay(&s)) {
                    Ok(g) if is_isomorphic(g.lattice(), l).is_some() => {}
                    Ok(_) => fail("decomposition does not replay to the item".into()),
                    Err(e) => fail(e.to_string()),
                }
            }
        }
    }
    out
}

/// Runs `suites` over every corpus item in parallel; the report does not
/// depend on the number of workers.
pub fn verify_corpus(
    corpus: &Corpus,
    suites: &[Suite],
    r: Option<&PatternPoset>,
) -> VerificationReport {
    let mut suites = suites.to_vec();
    suites.sort();
    suites.dedup();
    let violations: Vec<Violation> = corpus
        .items
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, item)| {
            verify_diagram(&item.diagram, Some(&item.script), &suites, r)
                .into_iter()
                .map(move |(suite, detail)| Violation {
                    item: i,
                    size: item.diagram.len(),
                    suite,
                    detail,
                })
        })
        .collect();
    let summaries = suites
        .iter()
        .map(|&s| {
            let mut bad: Vec<usize> = violations
                .iter()
                .filter(|v| v.suite == s)
                .map(|v| v.item)
                .collect();
            bad.dedup();
            SuiteSummary {
                suite: s,
                checked: corpus.items.len(),
                violations: bad.len(),
            }
        })
        .collect();
    VerificationReport {
        max_size: corpus.max_size,
        items: corpus.items.len(),
        suites: summaries,
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::s_lattice;
    use crate::corpus::enumerate_corpus;

    #[test]
    fn small_corpus_is_clean_and_deterministic() {
        let c = enumerate_corpus(14);
        let a = verify_corpus(&c, &Suite::ALL, None);
        assert!(a.passed(), "{:?}", a.violations);
        let b = verify_corpus(&c, &Suite::ALL, None);
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn corrupted_positions_are_reported() {
        let s7 = s_lattice(1).unwrap();
        let mut pos = s7.positions().to_vec();
        let m = s7.lattice().index_of("m").unwrap_or(3);
        pos[m].1 += 2;
        let bad =
            RectDiagram::with_positions(s7.lattice().clone(), s7.corners().clone(), pos).unwrap();
        let found = verify_diagram(&bad, None, &[Suite::Diagram], None);
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].0, Suite::Diagram);
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
