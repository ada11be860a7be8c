//! Pattern posets, cover-preserving embeddings, and checkers for the known
//! necessary conditions on congruence lattices of SPS lattices.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::congruence::{con_lattice, jir_con_poset};
use crate::diagram::{recognize_rectangular, RectDiagram};
use crate::error::{Error, Result};
use crate::lattice::FiniteLattice;
use crate::poset::FinitePoset;

#[derive(Clone, Debug)]
pub struct PatternPoset {
    pub name: String,
    pub poset: FinitePoset,
    /// Elements that must be sent to maximal elements of the host when
    /// tags are respected.
    pub max_tags: Vec<bool>,
}

impl PatternPoset {
    pub fn new<S: AsRef<str>>(name: &str, poset: FinitePoset, tagged: &[S]) -> Result<Self> {
        let mut max_tags = vec![false; poset.len()];
        for t in tagged {
            max_tags[poset.index_of(t.as_ref())?] = true;
        }
        Ok(PatternPoset {
            name: name.to_string(),
            poset,
            max_tags,
        })
    }

    pub fn tagged(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.max_tags.len()).filter(|&i| self.max_tags[i])
    }
}

/// The three-pendant three-crown `R₃`: `bᵢ ≺ aⱼ` for `i ≠ j`, and the
/// pendant `cᵢ` is covered by `aᵢ` and `bᵢ`. The `aᵢ` are tagged.
pub fn r3() -> PatternPoset {
    let names: Vec<String> = ["a", "b", "c"]
        .iter()
        .flat_map(|p| (0..3).map(move |i| format!("{p}{i}")))
        .collect();
    let mut covers = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                covers.push((format!("b{i}"), format!("a{j}")));
            }
        }
        covers.push((format!("c{i}"), format!("a{i}")));
        covers.push((format!("c{i}"), format!("b{i}")));
    }
    let poset = FinitePoset::new(&names, &covers).expect("R3 is a poset");
    PatternPoset::new("R3", poset, &["a0", "a1", "a2"]).expect("tags exist")
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EmbedOptions {
    /// Tagged pattern elements must map to maximal host elements.
    pub respect_tags: bool,
    /// Stop after this many embeddings.
    pub limit: Option<usize>,
}

/// Whether `map` is injective, an order embedding, sends covers to host
/// covers and (optionally) tagged elements to maximal elements.
pub fn is_cover_preserving_embedding(
    pattern: &PatternPoset,
    host: &FinitePoset,
    map: &[usize],
    respect_tags: bool,
) -> bool {
    let p = &pattern.poset;
    if map.len() != p.len() || map.iter().any(|&y| y >= host.len()) {
        return false;
    }
    for a in 0..p.len() {
        if respect_tags && pattern.max_tags[a] && !host.upper_covers(map[a]).is_empty() {
            return false;
        }
        for b in 0..p.len() {
            if a != b && map[a] == map[b] {
                return false;
            }
            if p.leq(a, b) != host.leq(map[a], map[b]) {
                return false;
            }
            if p.is_cover(a, b) && !host.is_cover(map[a], map[b]) {
                return false;
            }
        }
    }
    true
}

// Pattern elements in an order where each one after the first of its
// component has a cover-neighbour placed earlier.
fn search_order(p: &FinitePoset) -> Vec<(usize, Option<(usize, bool)>)> {
    let n = p.len();
    let degree = |x: usize| p.upper_covers(x).len() + p.lower_covers(x).len();
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let start = (0..n)
            .filter(|&x| !placed[x])
            .max_by_key(|&x| (degree(x), std::cmp::Reverse(x)))
            .unwrap();
        placed[start] = true;
        order.push((start, None));
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            // `true` when the new element is an upper cover of its anchor.
            let next = p
                .upper_covers(x)
                .iter()
                .map(|&y| (y, true))
                .chain(p.lower_covers(x).iter().map(|&y| (y, false)));
            for (y, up) in next {
                if !placed[y] {
                    placed[y] = true;
                    order.push((y, Some((x, up))));
                    queue.push_back(y);
                }
            }
        }
    }
    order
}

struct Search<'a> {
    pattern: &'a PatternPoset,
    host: &'a FinitePoset,
    opts: EmbedOptions,
    order: Vec<(usize, Option<(usize, bool)>)>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    out: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn fits(&self, x: usize, y: usize) -> bool {
        let (p, h) = (&self.pattern.poset, self.host);
        if self.used[y] {
            return false;
        }
        if self.opts.respect_tags && self.pattern.max_tags[x] && !h.upper_covers(y).is_empty() {
            return false;
        }
        if h.upper_covers(y).len() < p.upper_covers(x).len()
            || h.lower_covers(y).len() < p.lower_covers(x).len()
            || h.up_set(y).count_ones(..) < p.up_set(x).count_ones(..)
            || h.down_set(y).count_ones(..) < p.down_set(x).count_ones(..)
        {
            return false;
        }
        for (a, fa) in self.map.iter().enumerate() {
            let Some(fa) = *fa else { continue };
            if p.leq(a, x) != h.leq(fa, y) || p.leq(x, a) != h.leq(y, fa) {
                return false;
            }
            if (p.is_cover(a, x) && !h.is_cover(fa, y)) || (p.is_cover(x, a) && !h.is_cover(y, fa))
            {
                return false;
            }
        }
        true
    }

    fn run(&mut self, depth: usize) -> bool {
        if self.opts.limit.is_some_and(|l| self.out.len() >= l) {
            return true;
        }
        if depth == self.order.len() {
            let map: Vec<usize> = self.map.iter().map(|m| m.unwrap()).collect();
            assert!(
                is_cover_preserving_embedding(
                    self.pattern,
                    self.host,
                    &map,
                    self.opts.respect_tags
                ),
                "embedding search produced an invalid map"
            );
            self.out.push(map);
            return false;
        }
        let (x, anchor) = self.order[depth];
        let mut candidates: Vec<usize> = match anchor {
            Some((a, true)) => self.host.upper_covers(self.map[a].unwrap()).to_vec(),
            Some((a, false)) => self.host.lower_covers(self.map[a].unwrap()).to_vec(),
            None => (0..self.host.len()).collect(),
        };
        candidates.sort_unstable();
        for y in candidates {
            if !self.fits(x, y) {
                continue;
            }
            self.map[x] = Some(y);
            self.used[y] = true;
            let stop = self.run(depth + 1);
            self.map[x] = None;
            self.used[y] = false;
            if stop {
                return true;
            }
        }
        false
    }
}

/// All cover-preserving embeddings of `pattern` into `host`, as maps from
/// pattern indices to host indices, in a deterministic order.
pub fn cover_preserving_embeddings(
    pattern: &PatternPoset,
    host: &FinitePoset,
    opts: EmbedOptions,
) -> Vec<Vec<usize>> {
    let mut s = Search {
        pattern,
        host,
        opts,
        order: search_order(&pattern.poset),
        map: vec![None; pattern.poset.len()],
        used: vec![false; host.len()],
        out: Vec::new(),
    };
    if pattern.poset.len() <= host.len() {
        s.run(0);
    }
    s.out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Witness {
    Elements(Vec<String>),
    Embedding(Vec<(String, String)>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail { witness: Witness },
    Skipped { reason: String },
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }

    fn elements(host: &FinitePoset, xs: &[usize]) -> Verdict {
        Verdict::Fail {
            witness: Witness::Elements(xs.iter().map(|&x| host.name(x).to_string()).collect()),
        }
    }

    fn embedding(pattern: &PatternPoset, host: &FinitePoset, map: &[usize]) -> Verdict {
        Verdict::Fail {
            witness: Witness::Embedding(
                map.iter()
                    .enumerate()
                    .map(|(a, &b)| (pattern.poset.name(a).to_string(), host.name(b).to_string()))
                    .collect(),
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    #[serde(flatten)]
    pub verdict: Verdict,
}

impl Check {
    fn new(name: &str, verdict: Verdict) -> Self {
        Check {
            name: name.to_string(),
            verdict,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PropertyReport {
    pub checks: Vec<Check>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| !c.verdict.is_fail())
    }

    pub fn get(&self, name: &str) -> Option<&Verdict> {
        self.checks
            .iter()
            .find(|c| c.name == name)
            .map(|c| &c.verdict)
    }
}

fn at_most_two_covers(jir: &FinitePoset) -> Verdict {
    match (0..jir.len()).find(|&x| jir.upper_covers(x).len() > 2) {
        Some(x) => {
            let mut w = vec![x];
            w.extend_from_slice(jir.upper_covers(x));
            Verdict::elements(jir, &w)
        }
        None => Verdict::Pass,
    }
}

fn common_lower_cover(jir: &FinitePoset, a: usize, b: usize) -> Option<usize> {
    jir.lower_covers(a)
        .iter()
        .copied()
        .find(|u| jir.lower_covers(b).contains(u))
}

/// (i) at least two maximal elements; (ii) at most two upper covers each.
pub fn check_thm3(jir: &FinitePoset) -> Vec<Check> {
    let max = jir.maximal();
    let first = if max.len() >= 2 {
        Verdict::Pass
    } else {
        Verdict::elements(jir, &max)
    };
    vec![
        Check::new("thm3(i)", first),
        Check::new("thm3(ii)", at_most_two_covers(jir)),
    ]
}

// Two-colours the graph on the maximal elements whose edges join elements
// with a common lower cover; on failure returns an odd cycle.
fn split_maximal(jir: &FinitePoset) -> std::result::Result<(), Vec<usize>> {
    let max = jir.maximal();
    let k = max.len();
    let adjacent = |a: usize, b: usize| common_lower_cover(jir, max[a], max[b]).is_some();
    let mut colour: Vec<Option<bool>> = vec![None; k];
    let mut parent: Vec<Option<usize>> = vec![None; k];
    for s in 0..k {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            for b in 0..k {
                if b == a || !adjacent(a, b) {
                    continue;
                }
                match colour[b] {
                    None => {
                        colour[b] = Some(!colour[a].unwrap());
                        parent[b] = Some(a);
                        queue.push_back(b);
                    }
                    Some(c) if c == colour[a].unwrap() => {
                        let path = |mut v: usize| {
                            let mut p = vec![v];
                            while let Some(u) = parent[v] {
                                p.push(u);
                                v = u;
                            }
                            p
                        };
                        let (pa, pb) = (path(a), path(b));
                        let meet = *pa.iter().find(|v| pb.contains(v)).unwrap();
                        let mut cycle: Vec<usize> =
                            pa.iter().copied().take_while(|&v| v != meet).collect();
                        cycle.push(meet);
                        let back: Vec<usize> =
                            pb.iter().copied().take_while(|&v| v != meet).collect();
                        cycle.extend(back.into_iter().rev());
                        return Err(cycle.into_iter().map(|i| max[i]).collect());
                    }
                    Some(_) => {}
                }
            }
        }
    }
    if k < 2 {
        return Err(max);
    }
    Ok(())
}

/// The four conditions of Theorem 4. Condition (ii) needs the pattern `R`
/// and is skipped without one.
pub fn check_thm4(jir: &FinitePoset, r: Option<&PatternPoset>) -> Vec<Check> {
    let first = match split_maximal(jir) {
        Ok(()) => Verdict::Pass,
        Err(w) => Verdict::elements(jir, &w),
    };
    let second = match r {
        None => Verdict::Skipped {
            reason: "no pattern R supplied".into(),
        },
        Some(r) => {
            let opts = EmbedOptions {
                respect_tags: true,
                limit: Some(1),
            };
            match cover_preserving_embeddings(r, jir, opts).first() {
                Some(map) => Verdict::embedding(r, jir, map),
                None => Verdict::Pass,
            }
        }
    };
    let max = jir.maximal();
    let mut third = Verdict::Pass;
    'outer: for &y in &max {
        for &x in jir.lower_covers(y) {
            if jir.upper_covers(x).len() < 2 {
                third = Verdict::elements(jir, &[x, y]);
                break 'outer;
            }
        }
    }
    let mut fourth = Verdict::Pass;
    'outer: for &z in &max {
        let below = jir.lower_covers(z);
        for (i, &x) in below.iter().enumerate() {
            for &y in &below[i + 1..] {
                if let Some(u) = common_lower_cover(jir, x, y) {
                    fourth = Verdict::elements(jir, &[u, x, y, z]);
                    break 'outer;
                }
            }
        }
    }
    vec![
        Check::new("thm4(i)", first),
        Check::new("thm4(ii)", second),
        Check::new("thm4(iii)", third),
        Check::new("thm4(iv)", fourth),
    ]
}

/// Three-pendant three-crown property: no cover-preserving embedding of `R₃`.
pub fn check_3p3c(jir: &FinitePoset) -> Check {
    let r = r3();
    let opts = EmbedOptions {
        respect_tags: false,
        limit: Some(1),
    };
    let verdict = match cover_preserving_embeddings(&r, jir, opts).first() {
        Some(map) => Verdict::embedding(&r, jir, map),
        None => Verdict::Pass,
    };
    Check::new("3p3c", verdict)
}

/// Theorems 3 and 4 and the three-pendant three-crown property on `Jir(Con L)`.
pub fn check_all(jir: &FinitePoset, r: Option<&PatternPoset>) -> PropertyReport {
    let start = Instant::now();
    let mut checks = check_thm3(jir);
    checks.extend(check_thm4(jir, r));
    checks.push(check_3p3c(jir));
    PropertyReport {
        checks,
        elapsed: start.elapsed(),
    }
}

/// The element `z` with `D = ↓z ∔ B₂`, if `D` splits that way.
pub fn split_top_b2(d: &FiniteLattice) -> Option<usize> {
    let coatoms = d.lower_covers(d.top());
    let &[c1, c2] = coatoms else {
        return None;
    };
    let z = d.meet(c1, c2);
    if !d.is_cover(z, c1) || !d.is_cover(z, c2) {
        return None;
    }
    (0..d.len())
        .all(|x| x == c1 || x == c2 || x == d.top() || d.leq(x, z))
        .then_some(z)
}

#[derive(Clone, Debug)]
pub struct PatchCharacterization {
    /// Both corners are coatoms.
    pub is_patch: bool,
    /// Number of maximal elements of `Jir(Con L)`.
    pub max_count: usize,
    /// `D₀` with `Con L ≅ D₀ ∔ B₂`, when it exists.
    pub d0: Option<FiniteLattice>,
}

/// Evaluates the three equivalent descriptions of slim patch lattices and
/// fails if they disagree.
pub fn patch_characterize(
    l: &FiniteLattice,
    d: Option<&RectDiagram>,
) -> Result<PatchCharacterization> {
    let (left, right) = match d {
        Some(d) => (d.left_corner(), d.right_corner()),
        None => {
            let c = recognize_rectangular(l)?;
            (c.left, c.right)
        }
    };
    let is_patch = l.is_cover(left, l.top()) && l.is_cover(right, l.top());
    let max_count = jir_con_poset(l).maximal().len();
    let con = con_lattice(l).lattice;
    let d0 = split_top_b2(&con).map(|z| con.ideal(z));
    if is_patch != (max_count == 2) || is_patch != d0.is_some() {
        return Err(Error::EquivalenceViolation(format!(
            "patch: {is_patch}, maximal elements of Jir(Con L): {max_count}, Con L = D0 + B2: {}",
            d0.is_some()
        )));
    }
    Ok(PatchCharacterization {
        is_patch,
        max_count,
        d0,
    })
}

#[derive(Clone, Debug)]
pub struct Corollary62 {
    pub d0: FiniteLattice,
    pub report: PropertyReport,
}

/// For a slim patch lattice, extracts `D₀` with `Con L = D₀ ∔ B₂` and checks
/// (ii) at most two covers, (iii) no two distinct maximal elements with a
/// common lower cover, and (iv) the three-pendant three-crown property, all
/// on `Jir(D₀)`.
pub fn corollary62_report(l: &FiniteLattice, d: Option<&RectDiagram>) -> Result<Corollary62> {
    let start = Instant::now();
    let pc = patch_characterize(l, d)?;
    let Some(d0) = pc.d0 else {
        return Err(Error::Invalid("not a patch lattice".into()));
    };
    let jir = d0.jir_poset();
    let max = jir.maximal();
    let mut third = Verdict::Pass;
    'outer: for (i, &a) in max.iter().enumerate() {
        for &b in &max[i + 1..] {
            if let Some(u) = common_lower_cover(&jir, a, b) {
                third = Verdict::elements(&jir, &[u, a, b]);
                break 'outer;
            }
        }
    }
    let mut fourth = check_3p3c(&jir);
    fourth.name = "6.2(iv)".into();
    let checks = vec![
        Check::new("6.2(i)", Verdict::Pass),
        Check::new("6.2(ii)", at_most_two_covers(&jir)),
        Check::new("6.2(iii)", third),
        fourth,
    ];
    Ok(Corollary62 {
        d0,
        report: PropertyReport {
            checks,
            elapsed: start.elapsed(),
        },
    })
}
