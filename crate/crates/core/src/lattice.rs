//! Finite lattices with precomputed meet and join tables.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::poset::FinitePoset;

#[derive(Clone, Debug)]
pub struct FiniteLattice {
    poset: FinitePoset,
    meet: Vec<u32>,
    join: Vec<u32>,
}

/// Join- and meet-irreducible elements. `star[x]` is the unique upper cover
/// of a meet-irreducible `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibleSets {
    pub jir: Vec<usize>,
    pub mir: Vec<usize>,
    pub star: Vec<Option<usize>>,
}

impl FiniteLattice {
    pub fn new<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        Self::from_poset(FinitePoset::new(elements, covers)?)
    }

    /// Checks that every pair has a supremum and an infimum and fills the tables.
    pub fn from_poset(poset: FinitePoset) -> Result<Self> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        let not_lattice = |a: usize, b: usize, kind| Error::NotALattice {
            a: poset.name(a).to_string(),
            b: poset.name(b).to_string(),
            kind,
        };
        let max = poset.maximal();
        if max.len() > 1 {
            return Err(not_lattice(max[0], max[1], "join"));
        }
        let min = poset.minimal();
        if min.len() > 1 {
            return Err(not_lattice(min[0], min[1], "meet"));
        }
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        let mut common = FixedBitSet::with_capacity(n);
        for x in 0..n {
            join[x * n + x] = x as u32;
            meet[x * n + x] = x as u32;
            for y in 0..x {
                common.clone_from(poset.up_set(x));
                common.intersect_with(poset.up_set(y));
                let z = common.minimum().ok_or_else(|| not_lattice(y, x, "join"))?;
                if common.count_ones(..) != poset.up_set(z).count_ones(..) {
                    return Err(not_lattice(y, x, "join"));
                }
                join[x * n + y] = z as u32;
                join[y * n + x] = z as u32;

                common.clone_from(poset.down_set(x));
                common.intersect_with(poset.down_set(y));
                let z = common.maximum().ok_or_else(|| not_lattice(y, x, "meet"))?;
                if common.count_ones(..) != poset.down_set(z).count_ones(..) {
                    return Err(not_lattice(y, x, "meet"));
                }
                meet[x * n + y] = z as u32;
                meet[y * n + x] = z as u32;
            }
        }
        Ok(Self { poset, meet, join })
    }

    pub fn poset(&self) -> &FinitePoset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        self.poset.name(i)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.poset.index_of(name)
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.poset.leq(a, b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.poset.lt(a, b)
    }

    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.poset.is_cover(a, b)
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.len() + b] as usize
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b] as usize
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items
            .into_iter()
            .fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items
            .into_iter()
            .fold(self.top(), |acc, x| self.meet(acc, x))
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        self.poset.upper_covers(i)
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        self.poset.lower_covers(i)
    }

    /// Edges (prime intervals) as index pairs `(lower, upper)`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.poset.covers().collect()
    }

    pub fn irreducibles(&self) -> IrreducibleSets {
        let n = self.len();
        let jir = (0..n)
            .filter(|&x| self.lower_covers(x).len() == 1)
            .collect();
        let mir: Vec<usize> = (0..n)
            .filter(|&x| self.upper_covers(x).len() == 1)
            .collect();
        let mut star = vec![None; n];
        for &x in &mir {
            star[x] = Some(self.upper_covers(x)[0]);
        }
        IrreducibleSets { jir, mir, star }
    }

    pub fn is_jir(&self, x: usize) -> bool {
        self.lower_covers(x).len() == 1
    }

    pub fn is_mir(&self, x: usize) -> bool {
        self.upper_covers(x).len() == 1
    }

    /// Upper semimodularity: `x ∧ y ≺ x` implies `y ≺ x ∨ y`.
    pub fn is_semimodular(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let m = self.meet(x, y);
                !self.is_cover(m, x) || self.is_cover(y, self.join(x, y))
            })
        })
    }

    /// Lower semimodularity: `x ≺ x ∨ y` implies `x ∧ y ≺ y`.
    pub fn is_lower_semimodular(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                let j = self.join(x, y);
                !self.is_cover(x, j) || self.is_cover(self.meet(x, y), y)
            })
        })
    }

    /// Every cover raises the height by exactly one, so all maximal chains of
    /// any interval have the same length.
    pub fn is_graded(&self) -> bool {
        self.poset
            .covers()
            .all(|(a, b)| self.poset.height(b) == self.poset.height(a) + 1)
    }

    /// No M3 sublattice.
    pub fn is_slim(&self) -> bool {
        self.find_m3().is_none()
    }

    /// Three pairwise incomparable elements with a common pairwise meet and
    /// a common pairwise join.
    pub fn find_m3(&self) -> Option<[usize; 3]> {
        let n = self.len();
        for a in 0..n {
            for b in a + 1..n {
                if self.poset.comparable(a, b) {
                    continue;
                }
                let m = self.meet(a, b);
                let j = self.join(a, b);
                for c in b + 1..n {
                    if self.meet(a, c) == m
                        && self.meet(b, c) == m
                        && self.join(a, c) == j
                        && self.join(b, c) == j
                        && !self.poset.comparable(a, c)
                        && !self.poset.comparable(b, c)
                    {
                        return Some([a, b, c]);
                    }
                }
            }
        }
        None
    }

    /// Distributivity via Birkhoff: the map `x ↦ {j ∈ Jir : j ≤ x}` is always
    /// an order embedding into the down-sets of Jir, and it is onto exactly
    /// when the lattice is distributive.
    pub fn is_distributive(&self) -> bool {
        let jir = self.jir_poset();
        count_downsets_capped(&jir, self.len() as u64 + 1) == self.len() as u64
    }

    /// Whether the principal ideal of `x` is distributive, using the same
    /// Birkhoff count restricted to the join-irreducibles below `x`.
    pub fn ideal_is_distributive(&self, x: usize) -> bool {
        let below: Vec<usize> = self
            .poset
            .down_set(x)
            .ones()
            .filter(|&j| self.is_jir(j))
            .collect();
        let size = self.poset.down_set(x).count_ones(..) as u64;
        count_downsets_capped(&self.poset.induced(&below), size + 1) == size
    }

    /// Join-irreducibles with the induced order; covers are those of the subposet.
    pub fn jir_poset(&self) -> FinitePoset {
        let jir: Vec<usize> = (0..self.len()).filter(|&x| self.is_jir(x)).collect();
        self.poset.induced(&jir)
    }

    /// Elements of the interval `[a, b]`.
    pub fn interval_elements(&self, a: usize, b: usize) -> Vec<usize> {
        let mut set = self.poset.up_set(a).clone();
        set.intersect_with(self.poset.down_set(b));
        set.ones().collect()
    }

    /// The interval `[a, b]` as a lattice of its own.
    pub fn interval(&self, a: usize, b: usize) -> FiniteLattice {
        let elems = self.interval_elements(a, b);
        FiniteLattice::from_poset(self.poset.induced(&elems))
            .expect("an interval of a lattice is a lattice")
    }

    pub fn ideal(&self, x: usize) -> FiniteLattice {
        self.interval(self.bottom(), x)
    }

    pub fn filter(&self, x: usize) -> FiniteLattice {
        self.interval(x, self.top())
    }

    /// Renames every element; the order is unchanged.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Result<FiniteLattice> {
        FiniteLattice::from_poset(self.poset.renamed(f)?)
    }

    pub fn chain(n: usize) -> FiniteLattice {
        let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        FiniteLattice::from_poset(FinitePoset::chain(&names).expect("chain"))
            .expect("a chain is a lattice")
    }
}

impl PartialEq for FiniteLattice {
    fn eq(&self, other: &Self) -> bool {
        self.poset == other.poset
    }
}

impl Eq for FiniteLattice {}

/// Number of down-sets of `p`, stopping early once `cap` is reached.
pub fn count_downsets_capped(p: &FinitePoset, cap: u64) -> u64 {
    let mut all = FixedBitSet::with_capacity(p.len());
    all.insert_range(..);
    count_in(p, &all, cap)
}

pub fn count_downsets(p: &FinitePoset) -> u64 {
    count_downsets_capped(p, u64::MAX)
}

// Down-sets of the induced subposet on `s`: the last element `x` of `s` is
// maximal there, so either it is left out or its whole ideal is taken.
fn count_in(p: &FinitePoset, s: &FixedBitSet, cap: u64) -> u64 {
    let Some(x) = s.maximum() else {
        return 1;
    };
    if s.count_ones(..) <= 1 {
        return 2;
    }
    let mut without = s.clone();
    without.set(x, false);
    let a = count_in(p, &without, cap);
    if a >= cap {
        return a;
    }
    let mut remaining = s.clone();
    remaining.difference_with(p.down_set(x));
    let b = count_in(p, &remaining, cap.saturating_sub(a));
    a.saturating_add(b)
}

/// Lattice of down-sets of `p` ordered by inclusion. Elements are named by
/// their members in canonical order, e.g. `{a,b}`.
pub fn downset_lattice(p: &FinitePoset) -> FiniteLattice {
    let n = p.len();
    let mut sets: Vec<FixedBitSet> = Vec::new();
    let mut current = FixedBitSet::with_capacity(n);
    enumerate_downsets(p, 0, &mut current, &mut sets);
    let names: Vec<String> = sets
        .iter()
        .map(|s| {
            let members: Vec<&str> = s.ones().map(|i| p.name(i)).collect();
            format!("{{{}}}", members.join(","))
        })
        .collect();
    let poset = FinitePoset::from_relation(names, |a, b| sets[a].is_subset(&sets[b]))
        .expect("inclusion is an order");
    FiniteLattice::from_poset(poset).expect("down-sets form a lattice")
}

fn enumerate_downsets(
    p: &FinitePoset,
    i: usize,
    current: &mut FixedBitSet,
    out: &mut Vec<FixedBitSet>,
) {
    if i == p.len() {
        out.push(current.clone());
        return;
    }
    enumerate_downsets(p, i + 1, current, out);
    if p.lower_covers(i).iter().all(|&c| current.contains(c)) {
        current.insert(i);
        enumerate_downsets(p, i + 1, current, out);
        current.set(i, false);
    }
}
