use std::cmp::Ordering;
use std::fmt;

use serde::{Serialize, Serializer};

/// Index of a vertex within its graph.
pub type VertexId = usize;

/// A finite set of vertex indices, stored as a bitset.
///
/// Ordered by cardinality first, then lexicographically on the sorted
/// element lists, which is the enumeration order used throughout.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: VertexId) -> Self {
        let mut s = Self::new();
        s.insert(v);
        s
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        (0..n).collect()
    }

    /// Subset of `{0, .., n-1}` whose members are the set bits of `mask`.
    pub fn from_mask(mask: u64) -> Self {
        let mut s = VertexSet { words: vec![mask] };
        s.trim();
        s
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        let (w, b) = (v / 64, v % 64);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    pub fn remove(&mut self, v: VertexId) -> bool {
        let (w, b) = (v / 64, v % 64);
        if w >= self.words.len() {
            return false;
        }
        let present = self.words[w] & (1 << b) != 0;
        self.words[w] &= !(1 << b);
        self.trim();
        present
    }

    pub fn contains(&self, v: VertexId) -> bool {
        let (w, b) = (v / 64, v % 64);
        self.words.get(w).is_some_and(|word| word & (1 << b) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            (0..64)
                .filter(move |b| word & (1 << b) != 0)
                .map(move |b| i * 64 + b)
        })
    }

    fn zip_words(&self, other: &Self, f: impl Fn(u64, u64) -> u64) -> Self {
        let n = self.words.len().max(other.words.len());
        let get = |s: &Self, i: usize| s.words.get(i).copied().unwrap_or(0);
        let mut out = VertexSet {
            words: (0..n).map(|i| f(get(self, i), get(other, i))).collect(),
        };
        out.trim();
        out
    }

    pub fn union(&self, other: &Self) -> Self {
        self.zip_words(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.zip_words(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.zip_words(other, |a, b| a & !b)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }

    /// All subsets of `self`, in size-then-lexicographic order.
    pub fn subsets(&self) -> Vec<VertexSet> {
        let elems: Vec<VertexId> = self.iter().collect();
        assert!(elems.len() < 64, "subset enumeration beyond 63 elements");
        let mut out: Vec<VertexSet> = (0u64..1 << elems.len())
            .map(|mask| {
                elems
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        out.sort();
        out
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.iter().cmp(other.iter()))
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl Serialize for VertexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}
