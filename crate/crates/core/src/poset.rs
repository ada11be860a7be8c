//! Finite ordered sets presented by their cover relation.
//!
//! Elements are stored in canonical order: by height (length of the longest
//! chain from a minimal element), then by identifier. Index order is
//! therefore always a linear extension of the order.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct FinitePoset {
    names: Vec<String>,
    index: HashMap<String, usize>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    height: Vec<usize>,
}

impl FinitePoset {
    /// Builds a poset from identifiers and a transitively reduced cover list.
    pub fn new<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Self> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let mut pairs = Vec::with_capacity(covers.len());
        for (lo, hi) in covers {
            pairs.push((lookup(lo.as_ref())?, lookup(hi.as_ref())?));
        }
        Self::from_indexed(names, &pairs)
    }

    /// Same as [`FinitePoset::new`] with covers given by position.
    pub fn from_indexed(names: Vec<String>, covers: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        {
            let mut seen = HashMap::with_capacity(n);
            for name in &names {
                if seen.insert(name.as_str(), ()).is_some() {
                    return Err(Error::DuplicateElement(name.clone()));
                }
            }
        }
        let mut upper = vec![Vec::new(); n];
        let mut indeg = vec![0usize; n];
        for &(lo, hi) in covers {
            if lo >= n || hi >= n {
                return Err(Error::Invalid(format!(
                    "cover index ({lo}, {hi}) out of range"
                )));
            }
            if lo == hi {
                return Err(Error::ReflexiveCover(names[lo].clone()));
            }
            if !upper[lo].contains(&hi) {
                upper[lo].push(hi);
                indeg[hi] += 1;
            }
        }
        // Kahn's algorithm doubles as cycle detection and height computation.
        let mut height = vec![0usize; n];
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut done = 0;
        while let Some(v) = stack.pop() {
            done += 1;
            for &w in &upper[v] {
                height[w] = height[w].max(height[v] + 1);
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        if done < n {
            let culprit = (0..n).find(|&v| indeg[v] > 0).unwrap();
            return Err(Error::CycleInCovers(names[culprit].clone()));
        }

        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| (height[a], &names[a]).cmp(&(height[b], &names[b])));
        let mut new_of = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            new_of[old] = new;
        }
        let names: Vec<String> = order.iter().map(|&old| names[old].clone()).collect();
        let height: Vec<usize> = order.iter().map(|&old| height[old]).collect();
        let mut up_covers = vec![Vec::new(); n];
        let mut low_covers = vec![Vec::new(); n];
        for (old, ups) in upper.iter().enumerate() {
            for &w in ups {
                up_covers[new_of[old]].push(new_of[w]);
                low_covers[new_of[w]].push(new_of[old]);
            }
        }
        for v in up_covers.iter_mut().chain(low_covers.iter_mut()) {
            v.sort_unstable();
        }

        let poset = Self::assemble(names, up_covers, low_covers, height);
        for lo in 0..n {
            for &hi in &poset.upper[lo] {
                let mut between = poset.up[lo].clone();
                between.intersect_with(&poset.down[hi]);
                if between.count_ones(..) > 2 {
                    return Err(Error::NotTransitivelyReduced(
                        poset.names[lo].clone(),
                        poset.names[hi].clone(),
                    ));
                }
            }
        }
        Ok(poset)
    }

    /// Builds a poset from a (reflexive, transitive) order relation; covers are
    /// obtained by transitive reduction.
    pub fn from_relation(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let n = names.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for (a, row) in up.iter_mut().enumerate() {
            for b in 0..n {
                if a == b || leq(a, b) {
                    row.insert(b);
                }
            }
        }
        Self::from_up_sets(names, up)
    }

    /// Builds a poset from the principal filters `up[a] = {b : a <= b}` of a
    /// transitive relation.
    pub fn from_up_sets(names: Vec<String>, mut up: Vec<FixedBitSet>) -> Result<Self> {
        let n = names.len();
        for (a, row) in up.iter_mut().enumerate() {
            row.grow(n);
            row.insert(a);
        }
        let mut below = vec![0usize; n];
        for row in &up {
            for b in row.ones() {
                below[b] += 1;
            }
        }
        for a in 0..n {
            for b in up[a].ones() {
                if b > a && up[b].contains(a) {
                    return Err(Error::NotAntisymmetric(names[a].clone(), names[b].clone()));
                }
            }
        }
        // Sorting by the size of the principal ideal gives a linear extension.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&a| below[a]);
        let mut rank = vec![0usize; n];
        for (r, &a) in order.iter().enumerate() {
            rank[a] = r;
        }
        let mut covers = Vec::new();
        for a in 0..n {
            let mut strict: Vec<usize> = up[a].ones().filter(|&b| b != a).collect();
            strict.sort_by_key(|&b| rank[b]);
            let mut shadow = FixedBitSet::with_capacity(n);
            for b in strict {
                if !shadow.contains(b) {
                    covers.push((a, b));
                    shadow.union_with(&up[b]);
                }
            }
        }
        Self::from_indexed(names, &covers)
    }

    fn assemble(
        names: Vec<String>,
        upper: Vec<Vec<usize>>,
        lower: Vec<Vec<usize>>,
        height: Vec<usize>,
    ) -> Self {
        let n = names.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        for v in (0..n).rev() {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(v);
            for &w in &upper[v] {
                set.union_with(&up[w]);
            }
            up[v] = set;
        }
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for v in 0..n {
            let mut set = FixedBitSet::with_capacity(n);
            set.insert(v);
            for &w in &lower[v] {
                set.union_with(&down[w]);
            }
            down[v] = set;
        }
        let index = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Self {
            names,
            index,
            upper,
            lower,
            up,
            down,
            height,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.up[a].contains(b)
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.up[a].contains(b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn is_cover(&self, lo: usize, hi: usize) -> bool {
        self.upper[lo].binary_search(&hi).is_ok()
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    /// `{y : i ≤ y}`
    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    /// `{y : y ≤ i}`
    pub fn down_set(&self, i: usize) -> &FixedBitSet {
        &self.down[i]
    }

    pub fn height(&self, i: usize) -> usize {
        self.height[i]
    }

    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.upper
            .iter()
            .enumerate()
            .flat_map(|(lo, ups)| ups.iter().map(move |&hi| (lo, hi)))
    }

    pub fn cover_count(&self) -> usize {
        self.upper.iter().map(Vec::len).sum()
    }

    pub fn maximal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.upper[i].is_empty())
            .collect()
    }

    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.lower[i].is_empty())
            .collect()
    }

    /// Subposet on `elements` with the induced order; covers are those of the
    /// subposet, not of `self`.
    pub fn induced(&self, elements: &[usize]) -> FinitePoset {
        let names = elements.iter().map(|&e| self.names[e].clone()).collect();
        FinitePoset::from_relation(names, |a, b| self.leq(elements[a], elements[b]))
            .expect("induced suborder of a poset is a poset")
    }

    /// Copy with every identifier passed through `f`.
    pub fn renamed(&self, f: impl Fn(&str) -> String) -> Result<FinitePoset> {
        let names = self.names.iter().map(|s| f(s)).collect();
        let covers: Vec<_> = self.covers().collect();
        FinitePoset::from_indexed(names, &covers)
    }

    pub fn cover_names(&self) -> Vec<(String, String)> {
        self.covers()
            .map(|(a, b)| (self.names[a].clone(), self.names[b].clone()))
            .collect()
    }

    pub fn antichain<S: AsRef<str>>(elements: &[S]) -> Result<FinitePoset> {
        FinitePoset::new::<S>(elements, &[])
    }

    pub fn chain<S: AsRef<str>>(elements: &[S]) -> Result<FinitePoset> {
        let names: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let covers: Vec<(usize, usize)> = (1..names.len()).map(|i| (i - 1, i)).collect();
        FinitePoset::from_indexed(names, &covers)
    }

    /// Cardinal (disjoint) sum; identifiers must be disjoint.
    pub fn cardinal_sum(&self, other: &FinitePoset) -> Result<FinitePoset> {
        let offset = self.len();
        let names: Vec<String> = self.names.iter().chain(&other.names).cloned().collect();
        let covers: Vec<(usize, usize)> = self
            .covers()
            .chain(other.covers().map(|(a, b)| (a + offset, b + offset)))
            .collect();
        FinitePoset::from_indexed(names, &covers)
    }

    /// Ordinal sum: every element of `other` is placed above every element of `self`.
    pub fn ordinal_sum(&self, other: &FinitePoset) -> Result<FinitePoset> {
        let offset = self.len();
        let names: Vec<String> = self.names.iter().chain(&other.names).cloned().collect();
        let mut covers: Vec<(usize, usize)> = self
            .covers()
            .chain(other.covers().map(|(a, b)| (a + offset, b + offset)))
            .collect();
        for hi in self.maximal() {
            for lo in other.minimal() {
                covers.push((hi, lo + offset));
            }
        }
        FinitePoset::from_indexed(names, &covers)
    }
}

impl PartialEq for FinitePoset {
    /// Equality of labelled posets (same identifiers, same order).
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.upper == other.upper
    }
}

impl Eq for FinitePoset {}
