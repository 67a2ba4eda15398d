//! Bundle-graph model: finitely many vertices and finitely many edge bundles,
//! each bundle standing for `multiplicity` parallel edges (possibly ω many).

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::cardinal::{Cardinal, Multiplicity};
use crate::error::{Error, Result};
use crate::vertex_set::{VertexId, VertexSet};

/// Index of a bundle within its graph.
pub type BundleId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bundle {
    pub id: String,
    pub source: VertexId,
    pub target: VertexId,
    pub multiplicity: Multiplicity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VertexKind {
    Sink,
    Regular,
    InfiniteEmitter,
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VertexKind::Sink => "sink",
            VertexKind::Regular => "regular",
            VertexKind::InfiniteEmitter => "infinite-emitter",
        })
    }
}

/// Names must be identifiers: `[A-Za-z_][A-Za-z0-9_]*`.
pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[derive(Debug, Clone)]
pub struct Graph {
    vertices: Vec<String>,
    bundles: Vec<Bundle>,
    vertex_index: HashMap<String, VertexId>,
    bundle_index: HashMap<String, BundleId>,
    out: Vec<Vec<BundleId>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.bundles == other.bundles
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a validated graph from vertex names and
    /// `(bundle id, source, target, multiplicity)` tuples.
    pub fn new<V, B>(vertices: V, bundles: B) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        B: IntoIterator<Item = (String, String, String, Multiplicity)>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::new();
        for (i, name) in vertices.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::input(format!(
                    "vertex id {name:?} is not an identifier"
                )));
            }
            if vertex_index.insert(name.clone(), i).is_some() {
                return Err(Error::input(format!("duplicate vertex id {name:?}")));
            }
        }
        let mut out = vec![Vec::new(); vertices.len()];
        let mut bundle_index = HashMap::new();
        let mut built = Vec::new();
        for (id, source, target, multiplicity) in bundles {
            if !is_identifier(&id) {
                return Err(Error::input(format!(
                    "bundle id {id:?} is not an identifier"
                )));
            }
            let lookup = |name: &str| {
                vertex_index.get(name).copied().ok_or_else(|| {
                    Error::input(format!(
                        "bundle {id:?} references undeclared vertex {name:?}"
                    ))
                })
            };
            let (s, t) = (lookup(&source)?, lookup(&target)?);
            let bid = built.len();
            if bundle_index.insert(id.clone(), bid).is_some() {
                return Err(Error::input(format!("duplicate bundle id {id:?}")));
            }
            out[s].push(bid);
            built.push(Bundle {
                id,
                source: s,
                target: t,
                multiplicity,
            });
        }
        Ok(Graph {
            vertices,
            bundles: built,
            vertex_index,
            bundle_index,
            out,
        })
    }

    /// Convenience constructor for literal graphs.
    pub fn from_lists(
        vertices: &[&str],
        bundles: &[(&str, &str, &str, Multiplicity)],
    ) -> Result<Self> {
        Graph::new(
            vertices.iter().copied(),
            bundles
                .iter()
                .map(|&(id, s, t, m)| (id.to_string(), s.to_string(), t.to_string(), m)),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        0..self.vertices.len()
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn bundles(&self) -> &[Bundle] {
        &self.bundles
    }

    pub fn bundle(&self, b: BundleId) -> &Bundle {
        &self.bundles[b]
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex(&self, name: &str) -> Result<VertexId> {
        self.vertex_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::input(format!("unknown vertex {name:?}")))
    }

    pub fn bundle_id(&self, name: &str) -> Result<BundleId> {
        self.bundle_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::input(format!("unknown bundle {name:?}")))
    }

    pub fn has_vertex(&self, name: &str) -> bool {
        self.vertex_index.contains_key(name)
    }

    pub fn has_bundle(&self, name: &str) -> bool {
        self.bundle_index.contains_key(name)
    }

    /// Parses a comma-separated vertex list such as `u,v` (empty string is ∅).
    pub fn parse_vertex_set(&self, text: &str) -> Result<VertexSet> {
        text.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|name| self.vertex(name))
            .collect()
    }

    /// `{u,v}` rendering of a vertex set.
    pub fn format_set(&self, set: &VertexSet) -> String {
        let names: Vec<&str> = set.iter().map(|v| self.vertex_name(v)).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn set_names(&self, set: &VertexSet) -> Vec<String> {
        set.iter()
            .map(|v| self.vertex_name(v).to_string())
            .collect()
    }

    pub fn all_vertices(&self) -> VertexSet {
        VertexSet::full(self.vertex_count())
    }

    /// Bundles emitted by `v`.
    pub fn out_bundles(&self, v: VertexId) -> &[BundleId] {
        &self.out[v]
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::input(format!("vertex index {v} out of range")))
        }
    }

    pub(crate) fn check_set(&self, set: &VertexSet) -> Result<()> {
        match set.iter().find(|&v| v >= self.vertex_count()) {
            Some(v) => Err(Error::input(format!("vertex index {v} out of range"))),
            None => Ok(()),
        }
    }

    /// Sink, regular, or infinite emitter.
    pub fn classify_vertex(&self, v: VertexId) -> VertexKind {
        let out = &self.out[v];
        if out.is_empty() {
            VertexKind::Sink
        } else if out.iter().any(|&b| self.bundles[b].multiplicity.is_omega()) {
            VertexKind::InfiniteEmitter
        } else {
            VertexKind::Regular
        }
    }

    pub fn is_sink(&self, v: VertexId) -> bool {
        self.classify_vertex(v) == VertexKind::Sink
    }

    pub fn is_regular(&self, v: VertexId) -> bool {
        self.classify_vertex(v) == VertexKind::Regular
    }

    pub fn is_infinite_emitter(&self, v: VertexId) -> bool {
        self.classify_vertex(v) == VertexKind::InfiniteEmitter
    }

    /// Total number of edges emitted by `v`.
    pub fn out_degree(&self, v: VertexId) -> Cardinal {
        self.out[v]
            .iter()
            .map(|&b| self.bundles[b].multiplicity.to_cardinal())
            .sum()
    }

    /// `|s⁻¹(v) ∩ r⁻¹(targets)|`.
    pub fn out_count_into(&self, v: VertexId, targets: &VertexSet) -> Cardinal {
        self.out[v]
            .iter()
            .map(|&b| &self.bundles[b])
            .filter(|b| targets.contains(b.target))
            .map(|b| b.multiplicity.to_cardinal())
            .sum()
    }

    /// Vertices reachable from `starts` by paths (of length ≥ 0) all of whose
    /// vertices lie in `allowed`. Starts outside `allowed` are skipped.
    pub fn reach_within(
        &self,
        starts: impl IntoIterator<Item = VertexId>,
        allowed: &VertexSet,
    ) -> VertexSet {
        let mut seen = VertexSet::new();
        let mut queue: VecDeque<VertexId> = VecDeque::new();
        for s in starts {
            if allowed.contains(s) && seen.insert(s) {
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &b in &self.out[v] {
                let t = self.bundles[b].target;
                if allowed.contains(t) && seen.insert(t) {
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// Vertices reachable from `v` (including `v`).
    pub fn reachable_from(&self, v: VertexId) -> VertexSet {
        self.reach_within([v], &self.all_vertices())
    }

    /// Vertices that reach some member of `targets` by a path of length ≥ 0.
    pub fn co_reach(&self, targets: &VertexSet) -> VertexSet {
        let mut result = targets.clone();
        loop {
            let mut changed = false;
            for b in &self.bundles {
                if result.contains(b.target) && result.insert(b.source) {
                    changed = true;
                }
            }
            if !changed {
                return result;
            }
        }
    }

    /// `Path(v, X) ≠ ∅`, counting the length-0 path.
    pub fn reaches(&self, v: VertexId, targets: &VertexSet) -> bool {
        !self.reachable_from(v).is_disjoint(targets)
    }

    /// Vertices of `within` lying on a cycle of the subgraph induced by `within`.
    pub fn cyclic_vertices(&self, within: &VertexSet) -> VertexSet {
        within
            .iter()
            .filter(|&v| {
                let next = self.out[v]
                    .iter()
                    .map(|&b| self.bundles[b].target)
                    .filter(|t| within.contains(*t));
                self.reach_within(next, within).contains(v)
            })
            .collect()
    }

    /// Shortest cycle through `v` inside `within`, as a list of bundles.
    pub(crate) fn shortest_cycle_through(
        &self,
        v: VertexId,
        within: &VertexSet,
    ) -> Option<Vec<BundleId>> {
        let mut parent: HashMap<VertexId, BundleId> = HashMap::new();
        let mut queue = VecDeque::new();
        for &b in &self.out[v] {
            let t = self.bundles[b].target;
            if t == v {
                return Some(vec![b]);
            }
            if within.contains(t) && !parent.contains_key(&t) {
                parent.insert(t, b);
                queue.push_back(t);
            }
        }
        while let Some(x) = queue.pop_front() {
            for &b in &self.out[x] {
                let t = self.bundles[b].target;
                if t == v {
                    let mut cycle = vec![b];
                    let mut cur = x;
                    while cur != v {
                        let pb = parent[&cur];
                        cycle.push(pb);
                        cur = self.bundles[pb].source;
                    }
                    cycle.reverse();
                    return Some(cycle);
                }
                if within.contains(t) && !parent.contains_key(&t) {
                    parent.insert(t, b);
                    queue.push_back(t);
                }
            }
        }
        None
    }

    /// Every bundle leaving `set` lands in `set`.
    pub fn is_hereditary(&self, set: &VertexSet) -> bool {
        self.bundles
            .iter()
            .all(|b| !set.contains(b.source) || set.contains(b.target))
    }

    /// Every regular vertex whose edges all land in `set` belongs to `set`.
    ///
    /// Errors with a contract violation when `set` is not hereditary.
    pub fn is_saturated(&self, set: &VertexSet) -> Result<bool> {
        self.check_set(set)?;
        if !self.is_hereditary(set) {
            return Err(Error::contract(format!(
                "{} is not hereditary",
                self.format_set(set)
            )));
        }
        Ok(self.saturation_gap(set).is_none())
    }

    fn saturation_gap(&self, set: &VertexSet) -> Option<VertexId> {
        self.vertices().find(|&v| {
            !set.contains(v)
                && self.is_regular(v)
                && self.out[v]
                    .iter()
                    .all(|&b| set.contains(self.bundles[b].target))
        })
    }

    pub fn is_hereditary_saturated(&self, set: &VertexSet) -> bool {
        self.is_hereditary(set) && self.saturation_gap(set).is_none()
    }

    /// Least hereditary saturated superset of `set`.
    pub fn hs_closure(&self, set: &VertexSet) -> VertexSet {
        let mut closure = set.clone();
        loop {
            closure = self.reach_within(closure.iter().collect::<Vec<_>>(), &self.all_vertices());
            match self.saturation_gap(&closure) {
                Some(v) => {
                    closure.insert(v);
                }
                None => return closure,
            }
        }
    }

    /// All hereditary saturated subsets, in size-then-lexicographic order.
    pub fn enumerate_hs(&self, vertex_cap: usize) -> Result<Vec<VertexSet>> {
        if self.vertex_count() > vertex_cap || self.vertex_count() >= 64 {
            return Err(Error::Resource {
                what: format!(
                    "hereditary-saturated enumeration over {} vertices",
                    self.vertex_count()
                ),
                cap: vertex_cap.min(63),
            });
        }
        Ok(self
            .all_vertices()
            .subsets()
            .into_iter()
            .filter(|s| self.is_hereditary_saturated(s))
            .collect())
    }

    /// `B_H`: infinite emitters outside `H` with finitely many, but at least
    /// one, edges landing outside `H`.
    pub fn breaking_vertices(&self, h: &VertexSet) -> VertexSet {
        let outside = self.all_vertices().difference(h);
        self.vertices()
            .filter(|&v| !h.contains(v) && self.is_infinite_emitter(v))
            .filter(|&v| {
                let count = self.out_count_into(v, &outside);
                !count.is_zero() && count.is_finite()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn set(g: &Graph, names: &[&str]) -> VertexSet {
        names.iter().map(|n| g.vertex(n).unwrap()).collect()
    }

    #[test]
    fn classification() {
        let a = graph_a();
        assert_eq!(
            a.classify_vertex(a.vertex("u").unwrap()),
            VertexKind::Regular
        );
        let b = graph_b();
        assert_eq!(
            b.classify_vertex(b.vertex("u").unwrap()),
            VertexKind::InfiniteEmitter
        );
        let d = graph_d();
        assert_eq!(d.classify_vertex(0), VertexKind::Sink);
    }

    #[test]
    fn out_counts() {
        let c = graph_c();
        let p = c.vertex("p").unwrap();
        assert_eq!(c.out_count_into(p, &set(&c, &["w"])), Cardinal::from_u64(1));
        assert_eq!(c.out_count_into(p, &set(&c, &["u"])), Cardinal::Omega);
        let d = graph_d();
        assert_eq!(d.out_count_into(0, &set(&d, &["v"])), Cardinal::from_u64(0));
    }

    #[test]
    fn reachability() {
        let a = graph_a();
        let (u, v) = (a.vertex("u").unwrap(), a.vertex("v").unwrap());
        assert!(a.reaches(u, &set(&a, &["v"])));
        assert!(!a.reaches(v, &set(&a, &["u"])));
        let c = graph_c();
        assert!(c.reaches(c.vertex("u").unwrap(), &set(&c, &["u"])));
    }

    #[test]
    fn hereditary_and_saturated() {
        let a = graph_a();
        assert!(a.is_hereditary(&set(&a, &["v"])));
        assert!(!a.is_hereditary(&set(&a, &["u"])));
        assert!(a.is_hereditary(&VertexSet::new()));
        assert!(a.is_saturated(&set(&a, &["v"])).unwrap());
        let b = graph_b();
        assert!(b.is_saturated(&set(&b, &["v"])).unwrap());
        assert!(a.is_saturated(&a.all_vertices()).unwrap());
        assert!(matches!(
            a.is_saturated(&set(&a, &["u"])),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn closure() {
        let a = graph_a();
        assert_eq!(a.hs_closure(&set(&a, &["v"])), set(&a, &["v"]));
        assert_eq!(a.hs_closure(&set(&a, &["u"])), set(&a, &["u", "v"]));
        assert_eq!(a.hs_closure(&VertexSet::new()), VertexSet::new());
    }

    #[test]
    fn enumeration() {
        let a = graph_a();
        assert_eq!(
            a.enumerate_hs(16).unwrap(),
            vec![VertexSet::new(), set(&a, &["v"]), set(&a, &["u", "v"])]
        );
        let c = graph_c();
        assert_eq!(
            c.enumerate_hs(16).unwrap(),
            vec![
                VertexSet::new(),
                set(&c, &["u"]),
                set(&c, &["w"]),
                set(&c, &["u", "w"]),
                set(&c, &["p", "u", "w"])
            ]
        );
        let d = graph_d();
        assert_eq!(
            d.enumerate_hs(16).unwrap(),
            vec![VertexSet::new(), set(&d, &["v"])]
        );
        assert!(matches!(
            c.enumerate_hs(2),
            Err(Error::Resource { cap: 2, .. })
        ));
    }

    #[test]
    fn breaking() {
        let c = graph_c();
        assert_eq!(c.breaking_vertices(&set(&c, &["u"])), set(&c, &["p"]));
        assert_eq!(c.breaking_vertices(&set(&c, &["w"])), VertexSet::new());
        let b = graph_b();
        assert_eq!(b.breaking_vertices(&set(&b, &["v"])), VertexSet::new());
    }

    #[test]
    fn validation() {
        let one = Multiplicity::finite(1).unwrap();
        assert!(Graph::from_lists(&["u", "u"], &[]).is_err());
        assert!(Graph::from_lists(&["u"], &[("e", "u", "x", one)]).is_err());
        assert!(Graph::from_lists(&["u"], &[("e", "u", "u", one), ("e", "u", "u", one)]).is_err());
        assert!(Graph::from_lists(&["1u"], &[]).is_err());
    }

    #[test]
    fn shortest_cycle() {
        let a = graph_a();
        let u = a.vertex("u").unwrap();
        let cyc = a.shortest_cycle_through(u, &set(&a, &["u"])).unwrap();
        assert_eq!(cyc, vec![a.bundle_id("e").unwrap()]);
    }
}
