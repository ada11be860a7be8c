//! Congruences of finite lattices, the congruence lattice and its
//! join-irreducible part.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::lattice::FiniteLattice;
use crate::poset::FinitePoset;

/// A partition of the element indices; `labels[x]` is the least element of
/// the block containing `x`, so equal partitions have equal label vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    labels: Vec<u32>,
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut cur = x;
        while self.parent[cur] as usize != root {
            let next = self.parent[cur] as usize;
            self.parent[cur] = root as u32;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        // Keep the smaller index as root so labels come out canonical.
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo as u32;
        true
    }

    fn into_congruence(mut self) -> Congruence {
        let n = self.parent.len();
        let labels = (0..n).map(|x| self.find(x) as u32).collect();
        Congruence { labels }
    }
}

impl Congruence {
    pub fn identity(n: usize) -> Self {
        Self {
            labels: (0..n as u32).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Self { labels: vec![0; n] }
    }

    /// From arbitrary block labels; relabels canonically.
    pub fn from_labels(raw: &[usize]) -> Self {
        let mut first: HashMap<usize, u32> = HashMap::new();
        let labels = raw
            .iter()
            .enumerate()
            .map(|(i, &b)| *first.entry(b).or_insert(i as u32))
            .collect();
        Self { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    pub fn block_count(&self) -> usize {
        self.labels
            .iter()
            .enumerate()
            .filter(|&(i, &l)| l as usize == i)
            .count()
    }

    /// Blocks in order of their least element; each block sorted.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut by_label: Vec<Vec<usize>> = vec![Vec::new(); self.len()];
        for (x, &l) in self.labels.iter().enumerate() {
            by_label[l as usize].push(x);
        }
        by_label.into_iter().filter(|b| !b.is_empty()).collect()
    }

    /// Refinement order: every block of `self` lies inside a block of `other`.
    pub fn leq(&self, other: &Congruence) -> bool {
        self.labels
            .iter()
            .enumerate()
            .all(|(x, &l)| other.labels[x] == other.labels[l as usize])
    }

    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.len());
        for x in 0..self.len() {
            uf.union(x, self.labels[x] as usize);
            uf.union(x, other.labels[x] as usize);
        }
        uf.into_congruence()
    }

    pub fn meet(&self, other: &Congruence) -> Congruence {
        let mut seen: HashMap<(u32, u32), u32> = HashMap::new();
        let labels = (0..self.len())
            .map(|x| {
                *seen
                    .entry((self.labels[x], other.labels[x]))
                    .or_insert(x as u32)
            })
            .collect();
        Congruence { labels }
    }

    /// Whether this partition is compatible with the lattice operations.
    pub fn is_compatible(&self, l: &FiniteLattice) -> bool {
        let n = self.len();
        (0..n).all(|x| {
            let y = self.labels[x] as usize;
            (0..n).all(|z| {
                self.related(l.join(x, z), l.join(y, z)) && self.related(l.meet(x, z), l.meet(y, z))
            })
        })
    }

    /// Edges of `l` inside a block, as a bitset over `l.edges()` order.
    pub fn collapsed_edges(&self, edges: &[(usize, usize)]) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(edges.len());
        for (i, &(a, b)) in edges.iter().enumerate() {
            if self.related(a, b) {
                set.insert(i);
            }
        }
        set
    }
}

/// Smallest congruence collapsing `a` and `b`.
pub fn principal_congruence(l: &FiniteLattice, a: usize, b: usize) -> Congruence {
    let n = l.len();
    let mut uf = UnionFind::new(n);
    let mut work = Vec::new();
    if uf.union(a, b) {
        work.push((a, b));
    }
    while let Some((u, v)) = work.pop() {
        for z in 0..n {
            for (x, y) in [(l.join(u, z), l.join(v, z)), (l.meet(u, z), l.meet(v, z))] {
                if uf.union(x, y) {
                    work.push((x, y));
                }
            }
        }
    }
    uf.into_congruence()
}

/// Join-irreducible congruences: the distinct principal congruences of the
/// edges, ordered by refinement.
#[derive(Clone, Debug)]
pub struct JirCon {
    /// Covers are those of this subposet, not of the whole of Con L.
    pub poset: FinitePoset,
    /// `congruences[i]` belongs to poset element `i`.
    pub congruences: Vec<Congruence>,
    pub edges: Vec<(usize, usize)>,
    /// Poset element generated by each edge.
    pub edge_class: Vec<usize>,
}

impl JirCon {
    pub fn class_of_edge(&self, a: usize, b: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|&e| e == (a, b))
            .map(|i| self.edge_class[i])
    }

    /// Poset element equal to the given congruence, if it is join-irreducible.
    pub fn find(&self, theta: &Congruence) -> Option<usize> {
        self.congruences.iter().position(|c| c == theta)
    }
}

pub fn jir_con(l: &FiniteLattice) -> JirCon {
    let edges = l.edges();
    let mut distinct: Vec<Congruence> = Vec::new();
    let mut first_edge: Vec<(usize, usize)> = Vec::new();
    let mut lookup: HashMap<Congruence, usize> = HashMap::new();
    let mut raw_class = Vec::with_capacity(edges.len());
    for &(a, b) in &edges {
        let theta = principal_congruence(l, a, b);
        let id = *lookup.entry(theta.clone()).or_insert_with(|| {
            distinct.push(theta);
            first_edge.push((a, b));
            distinct.len() - 1
        });
        raw_class.push(id);
    }
    let names: Vec<String> = first_edge
        .iter()
        .map(|&(a, b)| format!("con({},{})", l.name(a), l.name(b)))
        .collect();
    let poset = FinitePoset::from_relation(names.clone(), |x, y| distinct[x].leq(&distinct[y]))
        .expect("refinement is an order");
    let position: Vec<usize> = names.iter().map(|s| poset.index_of(s).unwrap()).collect();
    let mut congruences = vec![Congruence::identity(0); distinct.len()];
    for (raw, theta) in distinct.into_iter().enumerate() {
        congruences[position[raw]] = theta;
    }
    let edge_class = raw_class.iter().map(|&r| position[r]).collect();
    JirCon {
        poset,
        congruences,
        edges,
        edge_class,
    }
}

pub fn jir_con_poset(l: &FiniteLattice) -> FinitePoset {
    jir_con(l).poset
}

/// All congruences of a lattice as a lattice under refinement.
#[derive(Clone, Debug)]
pub struct ConLattice {
    pub lattice: FiniteLattice,
    /// `congruences[i]` is lattice element `i`.
    pub congruences: Vec<Congruence>,
    pub edges: Vec<(usize, usize)>,
    /// Lattice element that is the principal congruence of each edge.
    pub principal: Vec<usize>,
}

impl ConLattice {
    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn index_of(&self, theta: &Congruence) -> Option<usize> {
        self.congruences.iter().position(|c| c == theta)
    }
}

/// Closes the identity under joins with the edge congruences.
pub fn con_lattice(l: &FiniteLattice) -> ConLattice {
    let n = l.len();
    let jc = jir_con(l);
    let mut all: Vec<Congruence> = vec![Congruence::identity(n)];
    let mut seen: HashMap<Congruence, usize> = HashMap::new();
    seen.insert(all[0].clone(), 0);
    let mut next = 0;
    while next < all.len() {
        let theta = all[next].clone();
        next += 1;
        for g in &jc.congruences {
            if g.leq(&theta) {
                continue;
            }
            let joined = theta.join(g);
            if !seen.contains_key(&joined) {
                seen.insert(joined.clone(), all.len());
                all.push(joined);
            }
        }
    }
    let edge_sets: Vec<FixedBitSet> = all.iter().map(|c| c.collapsed_edges(&jc.edges)).collect();
    let count = all.len();
    let mut up = vec![FixedBitSet::with_capacity(count); count];
    for (a, row) in up.iter_mut().enumerate() {
        for b in 0..count {
            if edge_sets[a].is_subset(&edge_sets[b]) {
                row.insert(b);
            }
        }
    }
    let width = count.to_string().len();
    let names: Vec<String> = (0..count).map(|i| format!("θ{i:0width$}")).collect();
    let poset = FinitePoset::from_up_sets(names.clone(), up).expect("refinement is an order");
    let lattice = FiniteLattice::from_poset(poset).expect("congruences form a lattice");
    let mut congruences = vec![Congruence::identity(0); count];
    let mut position = vec![0usize; count];
    for (raw, theta) in all.into_iter().enumerate() {
        let at = lattice.index_of(&names[raw]).unwrap();
        position[raw] = at;
        congruences[at] = theta;
    }
    let principal = jc
        .edge_class
        .iter()
        .map(|&c| position[seen[&jc.congruences[c]]])
        .collect();
    ConLattice {
        lattice,
        congruences,
        edges: jc.edges,
        principal,
    }
}
