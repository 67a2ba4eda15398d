use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, Neg, Sub};

use crate::graph::Graph;
use crate::path::{EdgeRef, FinitePath};
use crate::scalar::Scalar;
use crate::vertex_set::VertexId;

use super::atom::Atom;

/// A finite linear combination of bisection indicators.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement<K> {
    terms: BTreeMap<Atom, K>,
}

impl<K: Scalar> Default for AlgebraElement<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Scalar> AlgebraElement<K> {
    pub fn zero() -> Self {
        AlgebraElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn from_atom(atom: Atom) -> Self {
        Self::from_terms([(atom, K::one())])
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Atom, K)>) -> Self {
        let mut out = Self::zero();
        for (a, c) in terms {
            out.add_term(a, c);
        }
        out
    }

    pub fn add_term(&mut self, atom: Atom, c: K) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(atom);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Atom, &K)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// No terms at all. A nonzero-looking element may still vanish; see
    /// [`AlgebraElement::is_zero`].
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &K) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(a, k)| (a.clone(), k.clone() * c.clone())),
        )
    }

    /// Convolution product.
    pub fn product(&self, g: &Graph, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                if let Some(ab) = a.product(g, b) {
                    out.add_term(ab, c.clone() * d.clone());
                }
            }
        }
        out
    }

    /// Terms of degree `n`.
    pub fn degree_component(&self, n: i64) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(a, _)| a.degree() == n)
                .map(|(a, c)| (a.clone(), c.clone())),
        )
    }

    pub fn degrees(&self) -> BTreeSet<i64> {
        self.terms.keys().map(Atom::degree).collect()
    }

    /// Pointwise-equal element with pairwise disjoint atoms, merged so that
    /// equal functions have equal normal forms.
    pub fn normalize(&self, g: &Graph) -> Self {
        let mut groups: BTreeMap<(FinitePath, FinitePath), Trie<K>> = BTreeMap::new();
        for (atom, c) in &self.terms {
            let (alpha, beta, gamma) = FinitePath::split_common_suffix(g, atom.mu(), atom.nu());
            groups
                .entry((alpha, beta))
                .or_insert_with(Trie::new)
                .insert(gamma.edges(), atom.excluded(), c.clone());
        }
        let mut out = Self::zero();
        for ((alpha, beta), trie) in groups {
            let root = alpha.range(g);
            let shape = trie.resolve(g, root, K::zero());
            shape.emit(g, &alpha, &beta, &FinitePath::trivial(root), &mut out);
        }
        out
    }

    /// Whether the element is the zero function.
    pub fn is_zero(&self, g: &Graph) -> bool {
        self.normalize(g).is_empty()
    }

    /// Whether both elements define the same function.
    pub fn same_function(&self, g: &Graph, other: &Self) -> bool {
        (self.clone() - other.clone()).is_zero(g)
    }

    pub fn to_text(&self, g: &Graph) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(a, c)| {
                if c.is_one() {
                    a.to_text(g)
                } else {
                    format!("({c})·{}", a.to_text(g))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl<K: Scalar> Add for AlgebraElement<K> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (a, c) in rhs.terms {
            self.add_term(a, c);
        }
        self
    }
}

impl<K: Scalar> Sub for AlgebraElement<K> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<K: Scalar> Neg for AlgebraElement<K> {
    type Output = Self;
    fn neg(self) -> Self {
        AlgebraElement {
            terms: self.terms.into_iter().map(|(a, c)| (a, -c)).collect(),
        }
    }
}

/// Prefix tree of the tails `γ` of the atoms sharing a root `(α, β)`. Each
/// node carries the atoms `Z(γ∖F)` ending there; excluded edges are children.
struct Trie<K> {
    here: Vec<(BTreeSet<EdgeRef>, K)>,
    children: BTreeMap<EdgeRef, Trie<K>>,
}

/// Function on `Z(δ)`: a value on the residual part `Z(δ∖children)` (absent
/// when that part is empty) and the children's subtrees.
struct Shape<K> {
    residual: Option<K>,
    children: BTreeMap<EdgeRef, Shape<K>>,
}

impl<K: Scalar> Shape<K> {
    fn uniform(&self) -> Option<&K> {
        if self.children.is_empty() {
            self.residual.as_ref()
        } else {
            None
        }
    }

    fn emit(
        &self,
        g: &Graph,
        alpha: &FinitePath,
        beta: &FinitePath,
        delta: &FinitePath,
        out: &mut AlgebraElement<K>,
    ) {
        if let Some(v) = &self.residual {
            if !v.is_zero() {
                let mu = alpha.concat(g, delta).expect("tail starts at root");
                let nu = beta.concat(g, delta).expect("tail starts at root");
                out.add_term(
                    Atom::from_parts(mu, nu, self.children.keys().copied().collect()),
                    v.clone(),
                );
            }
        }
        for (e, child) in &self.children {
            let next = delta.push(g, *e).expect("child edge extends tail");
            child.emit(g, alpha, beta, &next, out);
        }
    }
}

impl<K: Scalar> Trie<K> {
    fn new() -> Self {
        Trie {
            here: Vec::new(),
            children: BTreeMap::new(),
        }
    }

    fn insert(&mut self, path: &[EdgeRef], excluded: &BTreeSet<EdgeRef>, c: K) {
        match path.split_first() {
            None => {
                for e in excluded {
                    self.children.entry(*e).or_insert_with(Trie::new);
                }
                self.here.push((excluded.clone(), c));
            }
            Some((e, rest)) => self
                .children
                .entry(*e)
                .or_insert_with(Trie::new)
                .insert(rest, excluded, c),
        }
    }

    fn resolve(self, g: &Graph, end: VertexId, inherited: K) -> Shape<K> {
        let value = self
            .here
            .iter()
            .fold(inherited.clone(), |acc, (_, c)| acc + c.clone());
        let mut children = BTreeMap::new();
        for (e, sub) in self.children {
            let pass = self
                .here
                .iter()
                .filter(|(f, _)| !f.contains(&e))
                .fold(inherited.clone(), |acc, (_, c)| acc + c.clone());
            children.insert(e, sub.resolve(g, e.target(g), pass));
        }
        let residual_nonempty = !g.is_regular(end)
            || g.out_degree(end)
                .to_u64()
                .is_some_and(|d| (children.len() as u64) < d);
        if !residual_nonempty {
            let mut values = children.values().map(Shape::uniform);
            if let Some(Some(first)) = values.next() {
                let first = first.clone();
                if values.all(|v| v == Some(&first)) {
                    return Shape {
                        residual: Some(first),
                        children: BTreeMap::new(),
                    };
                }
            }
            return Shape {
                residual: None,
                children,
            };
        }
        children.retain(|_, child| child.uniform() != Some(&value));
        Shape {
            residual: Some(value),
            children,
        }
    }
}
