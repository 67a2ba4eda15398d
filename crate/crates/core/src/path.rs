//! Finite paths, boundary paths and cylinder sets, with the `u:e,f[2]|c`
//! text form.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{BundleId, Graph};
use crate::vertex_set::{VertexId, VertexSet};

/// A single edge: the `index`-th parallel copy inside a bundle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRef {
    pub bundle: BundleId,
    pub index: u64,
}

impl EdgeRef {
    pub fn new(bundle: BundleId, index: u64) -> Self {
        EdgeRef { bundle, index }
    }

    /// Index-0 representative of a bundle.
    pub fn first(bundle: BundleId) -> Self {
        EdgeRef { bundle, index: 0 }
    }

    pub fn source(self, g: &Graph) -> VertexId {
        g.bundle(self.bundle).source
    }

    pub fn target(self, g: &Graph) -> VertexId {
        g.bundle(self.bundle).target
    }

    pub fn validate(self, g: &Graph) -> Result<()> {
        if self.bundle >= g.bundles().len() {
            return Err(Error::input(format!(
                "bundle index {} out of range",
                self.bundle
            )));
        }
        let b = g.bundle(self.bundle);
        if !b.multiplicity.admits(self.index) {
            return Err(Error::input(format!(
                "edge {}[{}] exceeds multiplicity {}",
                b.id, self.index, b.multiplicity
            )));
        }
        Ok(())
    }

    pub fn to_text(self, g: &Graph) -> String {
        let id = &g.bundle(self.bundle).id;
        if self.index == 0 {
            id.clone()
        } else {
            format!("{id}[{}]", self.index)
        }
    }

    /// Parses `e` or `e[3]`.
    pub fn parse(g: &Graph, text: &str) -> Result<Self> {
        let text = text.trim();
        let (name, index) = match text.split_once('[') {
            Some((name, rest)) => {
                let digits = rest
                    .strip_suffix(']')
                    .ok_or_else(|| Error::input(format!("malformed edge {text:?}")))?;
                let index = digits
                    .parse::<u64>()
                    .map_err(|_| Error::input(format!("malformed edge index in {text:?}")))?;
                (name, index)
            }
            None => (text, 0),
        };
        let e = EdgeRef::new(g.bundle_id(name)?, index);
        e.validate(g)?;
        Ok(e)
    }
}

/// A finite path `μ = μ₁…μₙ`; the empty edge list is the vertex `start`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinitePath {
    start: VertexId,
    edges: Vec<EdgeRef>,
}

impl FinitePath {
    pub fn trivial(v: VertexId) -> Self {
        FinitePath {
            start: v,
            edges: Vec::new(),
        }
    }

    /// Validated path: edges must chain and indices must fit the bundles.
    pub fn new(g: &Graph, start: VertexId, edges: Vec<EdgeRef>) -> Result<Self> {
        g.check_vertex(start)?;
        let mut at = start;
        for e in &edges {
            e.validate(g)?;
            if e.source(g) != at {
                return Err(Error::input(format!(
                    "edge {} does not start at {}",
                    e.to_text(g),
                    g.vertex_name(at)
                )));
            }
            at = e.target(g);
        }
        Ok(FinitePath { start, edges })
    }

    pub(crate) fn from_parts_unchecked(start: VertexId, edges: Vec<EdgeRef>) -> Self {
        FinitePath { start, edges }
    }

    pub fn of_edge(g: &Graph, e: EdgeRef) -> Self {
        FinitePath {
            start: e.source(g),
            edges: vec![e],
        }
    }

    pub fn start(&self) -> VertexId {
        self.start
    }

    pub fn edges(&self) -> &[EdgeRef] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn range(&self, g: &Graph) -> VertexId {
        self.edges.last().map_or(self.start, |e| e.target(g))
    }

    /// Visited vertices in order, `start` first.
    pub fn vertex_sequence(&self, g: &Graph) -> Vec<VertexId> {
        std::iter::once(self.start)
            .chain(self.edges.iter().map(|e| e.target(g)))
            .collect()
    }

    /// `μ⁰`.
    pub fn vertex_set(&self, g: &Graph) -> VertexSet {
        self.vertex_sequence(g).into_iter().collect()
    }

    /// `self` followed by `e`; `e` must start at the range.
    pub fn push(&self, g: &Graph, e: EdgeRef) -> Result<Self> {
        if e.source(g) != self.range(g) {
            return Err(Error::input(format!(
                "edge {} does not extend the path",
                e.to_text(g)
            )));
        }
        let mut edges = self.edges.clone();
        edges.push(e);
        Ok(FinitePath {
            start: self.start,
            edges,
        })
    }

    pub fn concat(&self, g: &Graph, other: &FinitePath) -> Result<Self> {
        if other.start != self.range(g) {
            return Err(Error::input(format!(
                "cannot concatenate {} and {}",
                self.to_text(g),
                other.to_text(g)
            )));
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Ok(FinitePath {
            start: self.start,
            edges,
        })
    }

    /// Whether `self` is an initial segment of `other`.
    pub fn is_prefix_of(&self, other: &FinitePath) -> bool {
        self.start == other.start && other.edges.starts_with(&self.edges)
    }

    /// The `ζ` with `self = prefix · ζ`.
    pub fn strip_prefix(&self, g: &Graph, prefix: &FinitePath) -> Option<FinitePath> {
        if !prefix.is_prefix_of(self) {
            return None;
        }
        Some(FinitePath {
            start: prefix.range(g),
            edges: self.edges[prefix.len()..].to_vec(),
        })
    }

    /// Initial segment of length `n`.
    pub fn truncate(&self, n: usize) -> FinitePath {
        FinitePath {
            start: self.start,
            edges: self.edges[..n.min(self.len())].to_vec(),
        }
    }

    /// Drops the first `n` edges.
    pub fn suffix(&self, g: &Graph, n: usize) -> FinitePath {
        let n = n.min(self.len());
        let start = if n == 0 {
            self.start
        } else {
            self.edges[n - 1].target(g)
        };
        FinitePath {
            start,
            edges: self.edges[n..].to_vec(),
        }
    }

    /// Splits off the longest common suffix of two paths ending at the same
    /// vertex: returns `(α, β, γ)` with `μ = αγ`, `ν = βγ` and the last edges of
    /// `α`, `β` distinct.
    pub fn split_common_suffix(
        g: &Graph,
        mu: &FinitePath,
        nu: &FinitePath,
    ) -> (FinitePath, FinitePath, FinitePath) {
        let common = mu
            .edges
            .iter()
            .rev()
            .zip(nu.edges.iter().rev())
            .take_while(|(a, b)| a == b)
            .count();
        let alpha = mu.truncate(mu.len() - common);
        let beta = nu.truncate(nu.len() - common);
        let gamma = mu.suffix(g, mu.len() - common);
        (alpha, beta, gamma)
    }

    pub fn to_text(&self, g: &Graph) -> String {
        let edges: Vec<String> = self.edges.iter().map(|e| e.to_text(g)).collect();
        format!("{}:{}", g.vertex_name(self.start), edges.join(","))
    }

    fn parse_edges(g: &Graph, start: VertexId, text: &str) -> Result<FinitePath> {
        let edges = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|t| EdgeRef::parse(g, t))
            .collect::<Result<Vec<_>>>()?;
        FinitePath::new(g, start, edges)
    }

    /// Parses `u:e,f`; `u:` is the trivial path at `u`.
    pub fn parse(g: &Graph, text: &str) -> Result<FinitePath> {
        let (start, rest) = text
            .split_once(':')
            .ok_or_else(|| Error::input(format!("path {text:?} lacks the `start:` prefix")))?;
        FinitePath::parse_edges(g, g.vertex(start.trim())?, rest)
    }
}

/// A point of the boundary-path space: a finite path ending at a sink or an
/// infinite emitter, or an eventually periodic infinite path `stem·cycle^∞`.
///
/// Lassos are kept canonical (primitive cycle, shortest stem), so structural
/// equality is equality of infinite paths.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundaryPath {
    Finite(FinitePath),
    Lasso { stem: FinitePath, cycle: FinitePath },
}

impl BoundaryPath {
    pub fn finite(g: &Graph, path: FinitePath) -> Result<Self> {
        let end = path.range(g);
        if g.is_regular(end) {
            return Err(Error::input(format!(
                "finite path {} ends at the regular vertex {}",
                path.to_text(g),
                g.vertex_name(end)
            )));
        }
        Ok(BoundaryPath::Finite(path))
    }

    pub fn lasso(g: &Graph, stem: FinitePath, cycle: FinitePath) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::input("lasso cycle must be nonempty"));
        }
        if cycle.start() != stem.range(g) || cycle.range(g) != cycle.start() {
            return Err(Error::input(format!(
                "{} is not a cycle at the end of stem {}",
                cycle.to_text(g),
                stem.to_text(g)
            )));
        }
        Ok(Self::canonical_lasso(g, stem, cycle))
    }

    fn canonical_lasso(g: &Graph, mut stem: FinitePath, cycle: FinitePath) -> Self {
        let n = cycle.len();
        let period = (1..=n)
            .find(|&d| n.is_multiple_of(d) && (0..n).all(|i| cycle.edges[i] == cycle.edges[i % d]))
            .unwrap_or(n);
        let mut cyc: Vec<EdgeRef> = cycle.edges[..period].to_vec();
        while let Some(&last) = stem.edges.last() {
            if Some(&last) != cyc.last() {
                break;
            }
            stem.edges.pop();
            cyc.rotate_right(1);
        }
        let cycle = FinitePath {
            start: stem.range(g),
            edges: cyc,
        };
        BoundaryPath::Lasso { stem, cycle }
    }

    pub fn start(&self) -> VertexId {
        match self {
            BoundaryPath::Finite(p) => p.start(),
            BoundaryPath::Lasso { stem, .. } => stem.start(),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, BoundaryPath::Finite(_))
    }

    pub fn as_finite(&self) -> Option<&FinitePath> {
        match self {
            BoundaryPath::Finite(p) => Some(p),
            BoundaryPath::Lasso { .. } => None,
        }
    }

    /// Number of edges, `None` for infinite paths.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> Option<usize> {
        self.as_finite().map(FinitePath::len)
    }

    /// The `i`-th edge (0-based), if any.
    pub fn edge_at(&self, i: usize) -> Option<EdgeRef> {
        match self {
            BoundaryPath::Finite(p) => p.edges.get(i).copied(),
            BoundaryPath::Lasso { stem, cycle } => Some(if i < stem.len() {
                stem.edges[i]
            } else {
                cycle.edges[(i - stem.len()) % cycle.len()]
            }),
        }
    }

    /// The set of visited vertices.
    pub fn vertex_set(&self, g: &Graph) -> VertexSet {
        match self {
            BoundaryPath::Finite(p) => p.vertex_set(g),
            BoundaryPath::Lasso { stem, cycle } => stem.vertex_set(g).union(&cycle.vertex_set(g)),
        }
    }

    /// Terminal vertex of a finite boundary path.
    pub fn terminal(&self, g: &Graph) -> Option<VertexId> {
        self.as_finite().map(|p| p.range(g))
    }

    /// `σⁿ(x)`: drops the first `n` edges; `None` if `x` is shorter.
    pub fn shift(&self, g: &Graph, n: usize) -> Option<BoundaryPath> {
        match self {
            BoundaryPath::Finite(p) => (n <= p.len()).then(|| BoundaryPath::Finite(p.suffix(g, n))),
            BoundaryPath::Lasso { stem, cycle } => {
                if n <= stem.len() {
                    return Some(Self::canonical_lasso(g, stem.suffix(g, n), cycle.clone()));
                }
                let offset = (n - stem.len()) % cycle.len();
                let mut edges = cycle.edges.clone();
                edges.rotate_left(offset);
                let start = if offset == 0 {
                    cycle.start
                } else {
                    cycle.edges[offset - 1].target(g)
                };
                let cycle = FinitePath { start, edges };
                Some(Self::canonical_lasso(g, FinitePath::trivial(start), cycle))
            }
        }
    }

    /// `μ·x`; `μ` must end where `x` starts.
    pub fn prepend(&self, g: &Graph, prefix: &FinitePath) -> Result<BoundaryPath> {
        if prefix.range(g) != self.start() {
            return Err(Error::input(format!(
                "prefix {} does not end at {}",
                prefix.to_text(g),
                g.vertex_name(self.start())
            )));
        }
        Ok(match self {
            BoundaryPath::Finite(p) => BoundaryPath::Finite(prefix.concat(g, p)?),
            BoundaryPath::Lasso { stem, cycle } => {
                Self::canonical_lasso(g, prefix.concat(g, stem)?, cycle.clone())
            }
        })
    }

    /// Whether `x ∈ Z(μ)`.
    pub fn extends(&self, prefix: &FinitePath) -> bool {
        self.start() == prefix.start()
            && prefix
                .edges()
                .iter()
                .enumerate()
                .all(|(i, e)| self.edge_at(i) == Some(*e))
    }

    /// The `y` with `x = μ·y`, if `x ∈ Z(μ)`.
    pub fn strip_prefix(&self, g: &Graph, prefix: &FinitePath) -> Option<BoundaryPath> {
        if !self.extends(prefix) {
            return None;
        }
        self.shift(g, prefix.len())
    }

    /// Whether `x ∈ Z(μ∖F)`.
    pub fn in_cylinder(&self, c: &Cylinder) -> bool {
        self.extends(&c.base)
            && self
                .edge_at(c.base.len())
                .is_none_or(|e| !c.excluded.contains(&e))
    }

    pub fn to_text(&self, g: &Graph) -> String {
        match self {
            BoundaryPath::Finite(p) => p.to_text(g),
            BoundaryPath::Lasso { stem, cycle } => {
                let cyc: Vec<String> = cycle.edges.iter().map(|e| e.to_text(g)).collect();
                format!("{}|{}", stem.to_text(g), cyc.join(","))
            }
        }
    }

    /// Parses `u:e,f` or `u:e|c1,c2`.
    pub fn parse(g: &Graph, text: &str) -> Result<BoundaryPath> {
        match text.split_once('|') {
            None => BoundaryPath::finite(g, FinitePath::parse(g, text)?),
            Some((stem, cycle)) => {
                let stem = FinitePath::parse(g, stem)?;
                let cycle = FinitePath::parse_edges(g, stem.range(g), cycle)?;
                BoundaryPath::lasso(g, stem, cycle)
            }
        }
    }
}

/// The cylinder `Z(μ∖F)`: boundary paths extending `μ` whose next edge is not
/// in `F`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cylinder {
    pub base: FinitePath,
    pub excluded: BTreeSet<EdgeRef>,
}

impl Cylinder {
    /// `Z(μ)`.
    pub fn of(base: FinitePath) -> Self {
        Cylinder {
            base,
            excluded: BTreeSet::new(),
        }
    }

    /// `Z(v)`.
    pub fn vertex(v: VertexId) -> Self {
        Cylinder::of(FinitePath::trivial(v))
    }

    pub fn new(g: &Graph, base: FinitePath, excluded: BTreeSet<EdgeRef>) -> Result<Self> {
        let end = base.range(g);
        for e in &excluded {
            e.validate(g)?;
            if e.source(g) != end {
                return Err(Error::input(format!(
                    "excluded edge {} does not start at {}",
                    e.to_text(g),
                    g.vertex_name(end)
                )));
            }
        }
        Ok(Cylinder { base, excluded })
    }

    pub fn to_text(&self, g: &Graph) -> String {
        if self.excluded.is_empty() {
            format!("Z({})", self.base.to_text(g))
        } else {
            let ex: Vec<String> = self.excluded.iter().map(|e| e.to_text(g)).collect();
            format!("Z({} \\ {{{}}})", self.base.to_text(g), ex.join(","))
        }
    }
}

/// Pretty-printer binding a value to its graph.
pub struct Shown<'a, T>(pub &'a Graph, pub &'a T);

impl fmt::Display for Shown<'_, BoundaryPath> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.1.to_text(self.0))
    }
}

impl fmt::Display for Shown<'_, FinitePath> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.1.to_text(self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn lasso_is_canonical() {
        let a = graph_a();
        let x = BoundaryPath::parse(&a, "u:e,e|e,e").unwrap();
        let y = BoundaryPath::parse(&a, "u:|e").unwrap();
        assert_eq!(x, y);
        assert_eq!(y.to_text(&a), "u:|e");
    }

    #[test]
    fn text_round_trip() {
        let a = graph_a();
        for text in ["u:e,f", "v:", "u:|e", "u:e,e,f"] {
            let x = BoundaryPath::parse(&a, text).unwrap();
            assert_eq!(x.to_text(&a), text);
        }
        let b = graph_b();
        let x = BoundaryPath::parse(&b, "u:f[3]").unwrap();
        assert_eq!(x.to_text(&b), "u:f[3]");
        assert_eq!(x.edge_at(0), Some(EdgeRef::new(0, 3)));
    }

    #[test]
    fn invalid_paths_rejected() {
        let a = graph_a();
        assert!(BoundaryPath::parse(&a, "u:e").is_err()); // ends at a regular vertex
        assert!(BoundaryPath::parse(&a, "v:e").is_err()); // bad chaining
        assert!(BoundaryPath::parse(&a, "u:f[1]").is_err()); // index beyond multiplicity
        assert!(BoundaryPath::parse(&a, "u:f|e").is_err()); // cycle not at stem end
    }

    #[test]
    fn vertex_sets() {
        let a = graph_a();
        let x = BoundaryPath::parse(&a, "u:|e").unwrap();
        assert_eq!(
            x.vertex_set(&a),
            VertexSet::singleton(a.vertex("u").unwrap())
        );
        let y = BoundaryPath::parse(&a, "u:e,f").unwrap();
        assert_eq!(y.vertex_set(&a), a.all_vertices());
        let c = graph_c();
        let p = BoundaryPath::parse(&c, "p:").unwrap();
        assert_eq!(
            p.vertex_set(&c),
            VertexSet::singleton(c.vertex("p").unwrap())
        );
    }

    #[test]
    fn shifting_and_prefixes() {
        let a = graph_a();
        let x = BoundaryPath::parse(&a, "u:e|e").unwrap();
        assert_eq!(x.shift(&a, 5).unwrap(), x);
        let y = BoundaryPath::parse(&a, "u:e,e,f").unwrap();
        assert_eq!(y.shift(&a, 2).unwrap().to_text(&a), "u:f");
        assert!(y.shift(&a, 4).is_none());
        let mu = FinitePath::parse(&a, "u:e").unwrap();
        assert_eq!(y.strip_prefix(&a, &mu).unwrap().to_text(&a), "u:e,f");
        assert_eq!(y.shift(&a, 1).unwrap().prepend(&a, &mu).unwrap(), y);
    }

    #[test]
    fn common_suffix_split() {
        let a = graph_a();
        let mu = FinitePath::parse(&a, "u:e,f").unwrap();
        let nu = FinitePath::parse(&a, "u:f").unwrap();
        let (alpha, beta, gamma) = FinitePath::split_common_suffix(&a, &mu, &nu);
        assert_eq!(alpha.to_text(&a), "u:e");
        assert_eq!(beta.to_text(&a), "u:");
        assert_eq!(gamma.to_text(&a), "u:f");
    }
}
