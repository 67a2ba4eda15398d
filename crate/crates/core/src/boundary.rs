//! Open invariant subsets of the boundary-path space and the decision
//! procedures for membership and cylinder inclusion.
//!
//! A set `U_{H,S}` contains a boundary path iff the path visits `H`, or it is
//! finite and ends in `S`. Inclusion of a cylinder `Z(μ∖F)` reduces to a
//! finite question about the `H`-avoiding part of the graph reachable from
//! the end of `μ`: it must contain no sink, no cycle, and only infinite
//! emitters from `S`.

use std::collections::{BTreeSet, HashSet};

use crate::error::Result;
use crate::graph::{BundleId, Graph};
use crate::lattice::HSPair;
use crate::path::{BoundaryPath, Cylinder, EdgeRef, FinitePath};
use crate::vertex_set::{VertexId, VertexSet};

/// An invariant subset of the unit space with decidable membership and
/// cylinder inclusion.
pub trait InvariantSet {
    fn contains(&self, g: &Graph, x: &BoundaryPath) -> bool;

    /// Whether `Z(μ∖F) ⊆ U`.
    fn contains_cylinder(&self, g: &Graph, c: &Cylinder) -> bool;
}

/// `x ∈ U_{H,S}` for a validated pair.
pub fn membership(g: &Graph, pair: &HSPair, x: &BoundaryPath) -> Result<bool> {
    pair.validate(g)?;
    Ok(in_union(g, pair.h(), pair.s(), x))
}

/// Membership in `⋃ U_{Hᵢ,Sᵢ}` expressed through `H = ⋃Hᵢ`, `S = ⋃Sᵢ`.
pub(crate) fn in_union(g: &Graph, h: &VertexSet, s: &VertexSet, x: &BoundaryPath) -> bool {
    if !x.vertex_set(g).is_disjoint(h) {
        return true;
    }
    x.terminal(g).is_some_and(|t| s.contains(t))
}

/// Targets of the bundles at the end of `c.base` that still have an edge
/// outside the exclusion set.
pub(crate) fn open_first_steps(g: &Graph, c: &Cylinder) -> Vec<VertexId> {
    let end = c.base.range(g);
    g.out_bundles(end)
        .iter()
        .filter(|&&b| first_free_index(g, b, &c.excluded).is_some())
        .map(|&b| g.bundle(b).target)
        .collect()
}

/// Smallest index of bundle `b` not in `excluded`.
pub(crate) fn first_free_index(
    g: &Graph,
    b: BundleId,
    excluded: &BTreeSet<EdgeRef>,
) -> Option<u64> {
    let m = g.bundle(b).multiplicity;
    (0..)
        .take_while(|&i| m.admits(i))
        .find(|&i| !excluded.contains(&EdgeRef::new(b, i)))
}

/// `Z(μ∖F) ⊆ ⋃ U_{Hᵢ,Sᵢ}` with `H = ⋃Hᵢ`, `S = ⋃Sᵢ`.
pub(crate) fn cylinder_in_union(g: &Graph, c: &Cylinder, h: &VertexSet, s: &VertexSet) -> bool {
    if !c.base.vertex_set(g).is_disjoint(h) {
        return true;
    }
    let end = c.base.range(g);
    if g.is_sink(end) || (g.is_infinite_emitter(end) && !s.contains(end)) {
        return false;
    }
    let outside = g.all_vertices().difference(h);
    let reach = g.reach_within(open_first_steps(g, c), &outside);
    let bad_vertex = reach
        .iter()
        .any(|v| g.is_sink(v) || (g.is_infinite_emitter(v) && !s.contains(v)));
    !bad_vertex && g.cyclic_vertices(&reach).is_empty()
}

/// `Z(μ∖F) ∩ U_{H,S} = ∅`.
pub(crate) fn cylinder_disjoint(g: &Graph, c: &Cylinder, h: &VertexSet, s: &VertexSet) -> bool {
    let open = open_first_steps(g, c);
    if g.is_regular(c.base.range(g)) && open.is_empty() {
        return true;
    }
    if !c.base.vertex_set(g).is_disjoint(h) {
        return false;
    }
    let end = c.base.range(g);
    if !g.is_regular(end) && s.contains(end) {
        return false;
    }
    let reach = g.reach_within(open, &g.all_vertices());
    reach.is_disjoint(&h.union(s))
}

impl InvariantSet for HSPair {
    fn contains(&self, g: &Graph, x: &BoundaryPath) -> bool {
        in_union(g, self.h(), self.s(), x)
    }

    fn contains_cylinder(&self, g: &Graph, c: &Cylinder) -> bool {
        cylinder_in_union(g, c, self.h(), self.s())
    }
}

/// One representative edge for every ordered pair of adjacent vertices.
fn representative_edges(g: &Graph) -> Vec<Vec<EdgeRef>> {
    let mut reps = vec![Vec::new(); g.vertex_count()];
    for v in g.vertices() {
        let mut seen = HashSet::new();
        for &b in g.out_bundles(v) {
            if seen.insert(g.bundle(b).target) {
                reps[v].push(EdgeRef::first(b));
            }
        }
    }
    reps
}

fn paths_up_to(
    g: &Graph,
    reps: &[Vec<EdgeRef>],
    start: VertexId,
    max_len: usize,
) -> Vec<FinitePath> {
    let mut out = vec![FinitePath::trivial(start)];
    let mut frontier = vec![FinitePath::trivial(start)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            for &e in &reps[p.range(g)] {
                let mut edges = p.edges().to_vec();
                edges.push(e);
                next.push(FinitePath::from_parts_unchecked(p.start(), edges));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Simple cycles based at `v` (no vertex repeated before closing), with at
/// most `max_len` edges.
fn simple_cycles_at(
    g: &Graph,
    reps: &[Vec<EdgeRef>],
    v: VertexId,
    max_len: usize,
) -> Vec<FinitePath> {
    #[allow(clippy::too_many_arguments)]
    fn walk(
        g: &Graph,
        reps: &[Vec<EdgeRef>],
        base: VertexId,
        at: VertexId,
        edges: &mut Vec<EdgeRef>,
        seen: &mut VertexSet,
        max_len: usize,
        out: &mut Vec<FinitePath>,
    ) {
        if edges.len() == max_len {
            return;
        }
        for &e in &reps[at] {
            let t = e.target(g);
            edges.push(e);
            if t == base {
                out.push(FinitePath::from_parts_unchecked(base, edges.clone()));
            } else if !seen.contains(t) {
                seen.insert(t);
                walk(g, reps, base, t, edges, seen, max_len, out);
                seen.remove(t);
            }
            edges.pop();
        }
    }
    let mut out = Vec::new();
    let mut seen = VertexSet::singleton(v);
    walk(g, reps, v, v, &mut Vec::new(), &mut seen, max_len, &mut out);
    out
}

/// Finite test family of boundary paths starting at `start`: finite boundary
/// paths with at most `max_len` edges, and lassos with a stem of at most
/// `max_len` edges closed by a simple cycle. Parallel bundles are represented
/// by a single edge since membership only depends on vertex itineraries.
pub fn canonical_family_from(g: &Graph, start: VertexId, max_len: usize) -> Vec<BoundaryPath> {
    let reps = representative_edges(g);
    let cycles: Vec<Vec<FinitePath>> = g
        .vertices()
        .map(|v| simple_cycles_at(g, &reps, v, max_len))
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let stems = paths_up_to(g, &reps, start, max_len);
    for p in &stems {
        if !g.is_regular(p.range(g)) {
            let x = BoundaryPath::Finite(p.clone());
            if seen.insert(x.clone()) {
                out.push(x);
            }
        }
    }
    for stem in &stems {
        for cycle in &cycles[stem.range(g)] {
            let x = BoundaryPath::lasso(g, stem.clone(), cycle.clone())
                .expect("cycle closes at stem end");
            if seen.insert(x.clone()) {
                out.push(x);
            }
        }
    }
    out
}

/// The test family over all start vertices, in vertex order.
pub fn canonical_family(g: &Graph, max_len: usize) -> Vec<BoundaryPath> {
    g.vertices()
        .flat_map(|v| canonical_family_from(g, v, max_len))
        .collect()
}

/// Default family length `|E⁰| + 1`.
pub fn default_family_len(g: &Graph) -> usize {
    g.vertex_count() + 1
}

/// Literal evaluation of `x ∈ U_{H,S}`: checks `r(xₙ) ∈ H` for every position
/// up to `depth` steps past the stem (the whole path when finite), and
/// `r(x) ∈ S` for finite paths.
pub fn brute_membership(g: &Graph, pair: &HSPair, x: &BoundaryPath, depth: usize) -> bool {
    let horizon = match x {
        BoundaryPath::Finite(p) => p.len(),
        BoundaryPath::Lasso { stem, .. } => stem.len() + depth.max(1),
    };
    let mut at = x.start();
    if pair.h().contains(at) {
        return true;
    }
    for n in 0..horizon {
        let Some(e) = x.edge_at(n) else { break };
        at = g.bundle(e.bundle).target;
        if pair.h().contains(at) {
            return true;
        }
    }
    x.is_finite() && pair.s().contains(at) && g.is_infinite_emitter(at)
}

/// Points of `Z(μ∖F)` drawn from the test family: `μ` itself when it is a
/// boundary path, and `μ·e·y` for the first non-excluded edge `e` of every
/// bundle at the end of `μ` and every family point `y` at `r(e)`.
pub fn cylinder_points(g: &Graph, c: &Cylinder, max_len: usize) -> Vec<BoundaryPath> {
    let end = c.base.range(g);
    let mut out = Vec::new();
    if !g.is_regular(end) {
        out.push(BoundaryPath::Finite(c.base.clone()));
    }
    for &b in g.out_bundles(end) {
        let Some(index) = first_free_index(g, b, &c.excluded) else {
            continue;
        };
        let step = c
            .base
            .push(g, EdgeRef::new(b, index))
            .expect("edge starts at base end");
        for tail in canonical_family_from(g, g.bundle(b).target, max_len) {
            out.push(tail.prepend(g, &step).expect("tail starts at step end"));
        }
    }
    out
}

/// Oracle for [`InvariantSet::contains_cylinder`]: every family point of the
/// cylinder is a member.
pub fn brute_cylinder_subset(
    g: &Graph,
    c: &Cylinder,
    u: &dyn InvariantSet,
    max_len: usize,
) -> bool {
    cylinder_points(g, c, max_len)
        .iter()
        .all(|x| u.contains(g, x))
}
