use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lattice::Check;
use crate::path::{EdgeRef, FinitePath};
use crate::scalar::Scalar;
use crate::vertex_set::{VertexId, VertexSet};

use super::atom::Atom;
use super::element::AlgebraElement;

/// Largest finite multiplicity whose edges are enumerated one by one.
pub const MAX_ENUMERATED_MULTIPLICITY: u64 = 256;

/// A Leavitt path algebra generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    Vertex(VertexId),
    Edge(EdgeRef),
    Ghost(EdgeRef),
    /// `v^H = v − Σ ee*` over the finitely many edges from `v` leaving `H`.
    VH(VertexId, VertexSet),
}

/// `F_v = s⁻¹(v) ∩ r⁻¹(E⁰∖H)` for a breaking vertex `v`.
pub fn breaking_edges(g: &Graph, v: VertexId, h: &VertexSet) -> Result<BTreeSet<EdgeRef>> {
    if !g.breaking_vertices(h).contains(v) {
        return Err(Error::contract(format!(
            "{} is not a breaking vertex of {}",
            g.vertex_name(v),
            g.format_set(h)
        )));
    }
    let mut out = BTreeSet::new();
    for &b in g.out_bundles(v) {
        let bundle = g.bundle(b);
        if h.contains(bundle.target) {
            continue;
        }
        let m = bundle
            .multiplicity
            .to_cardinal()
            .to_u64()
            .expect("finitely many edges leave H");
        out.extend((0..m).map(|i| EdgeRef::new(b, i)));
    }
    Ok(out)
}

/// The image of a generator in the Steinberg algebra.
pub fn pi_generator<K: Scalar>(g: &Graph, generator: &Generator) -> Result<AlgebraElement<K>> {
    let atom = match generator {
        Generator::Vertex(v) => {
            g.check_vertex(*v)?;
            Atom::span(g, FinitePath::trivial(*v), FinitePath::trivial(*v))?
        }
        Generator::Edge(e) => {
            e.validate(g)?;
            Atom::span(
                g,
                FinitePath::of_edge(g, *e),
                FinitePath::trivial(e.target(g)),
            )?
        }
        Generator::Ghost(e) => {
            e.validate(g)?;
            Atom::span(
                g,
                FinitePath::trivial(e.target(g)),
                FinitePath::of_edge(g, *e),
            )?
        }
        Generator::VH(v, h) => {
            g.check_vertex(*v)?;
            let f = breaking_edges(g, *v, h)?;
            Atom::new(g, FinitePath::trivial(*v), FinitePath::trivial(*v), f)?
        }
    };
    Ok(AlgebraElement::from_atom(atom))
}

/// Outcome of the relation checks, one entry per relation family.
#[derive(Debug, Clone, serde::Serialize)]
pub struct RelationsReport {
    pub relations: BTreeMap<String, Check>,
    pub index_independence: Check,
}

impl RelationsReport {
    pub fn passed(&self) -> bool {
        self.relations.values().all(|c| c.passed) && self.index_independence.passed
    }
}

/// Edges used for relation checks: every edge of a finite bundle and the
/// first `omega_samples` edges of an ω bundle.
pub fn sampled_edges(g: &Graph, omega_samples: u64) -> Result<Vec<EdgeRef>> {
    let mut out = Vec::new();
    for (b, bundle) in g.bundles().iter().enumerate() {
        let count = match bundle.multiplicity.to_cardinal().to_u64() {
            Some(m) if m > MAX_ENUMERATED_MULTIPLICITY => {
                return Err(Error::Resource {
                    what: format!("edges of bundle {}", bundle.id),
                    cap: MAX_ENUMERATED_MULTIPLICITY as usize,
                })
            }
            Some(m) => m,
            None => omega_samples,
        };
        out.extend((0..count).map(|i| EdgeRef::new(b, i)));
    }
    Ok(out)
}

/// The relation instance with ω-bundle indices renamed by first occurrence,
/// so that instances differing only in such indices compare equal.
fn index_pattern(g: &Graph, family: &str, vertices: &[VertexId], edges: &[EdgeRef]) -> String {
    let mut renamed: BTreeMap<EdgeRef, usize> = BTreeMap::new();
    let parts: Vec<String> = edges
        .iter()
        .map(|e| {
            if g.bundle(e.bundle).multiplicity.is_omega() {
                let next = renamed.len();
                let k = *renamed.entry(*e).or_insert(next);
                format!("{}#{k}", e.bundle)
            } else {
                format!("{}[{}]", e.bundle, e.index)
            }
        })
        .collect();
    let names: Vec<&str> = vertices.iter().map(|&v| g.vertex_name(v)).collect();
    format!("{family}:{}:{}", names.join(","), parts.join(","))
}

struct Recorder<'g> {
    g: &'g Graph,
    relations: BTreeMap<String, Check>,
    verdicts: BTreeMap<String, bool>,
    index_independence: Check,
}

impl Recorder<'_> {
    fn record(
        &mut self,
        family: &str,
        vertices: &[VertexId],
        edges: &[EdgeRef],
        ok: bool,
        describe: impl FnOnce() -> String,
    ) {
        self.relations
            .entry(family.to_string())
            .or_default()
            .record(ok, describe);
        let pattern = index_pattern(self.g, family, vertices, edges);
        match self.verdicts.get(&pattern) {
            Some(&previous) => self.index_independence.record(previous == ok, || {
                format!("{pattern} depends on the sampled index")
            }),
            None => {
                self.verdicts.insert(pattern, ok);
            }
        }
    }
}

/// Checks (V), (E1), (E2), (CK1) and (CK2) on the generator images.
pub fn verify_relations<K: Scalar>(g: &Graph, omega_samples: u64) -> Result<RelationsReport> {
    let edges = sampled_edges(g, omega_samples)?;
    let mut rec = Recorder {
        g,
        relations: BTreeMap::new(),
        verdicts: BTreeMap::new(),
        index_independence: Check::new(),
    };
    let vertex = |v: VertexId| pi_generator::<K>(g, &Generator::Vertex(v));
    let edge = |e: EdgeRef| pi_generator::<K>(g, &Generator::Edge(e));
    let ghost = |e: EdgeRef| pi_generator::<K>(g, &Generator::Ghost(e));

    for v in g.vertices() {
        for w in g.vertices() {
            let lhs = vertex(v)?.product(g, &vertex(w)?);
            let rhs = if v == w {
                vertex(v)?
            } else {
                AlgebraElement::zero()
            };
            rec.record("V", &[v, w], &[], lhs.same_function(g, &rhs), || {
                format!("{}·{}", g.vertex_name(v), g.vertex_name(w))
            });
        }
    }
    for &e in &edges {
        let (s, r) = (e.source(g), e.target(g));
        let ok = vertex(s)?.product(g, &edge(e)?).same_function(g, &edge(e)?)
            && edge(e)?.product(g, &vertex(r)?).same_function(g, &edge(e)?);
        rec.record("E1", &[], &[e], ok, || {
            format!("s(e)·e = e = e·r(e) for e = {}", e.to_text(g))
        });
        let ok = vertex(r)?
            .product(g, &ghost(e)?)
            .same_function(g, &ghost(e)?)
            && ghost(e)?
                .product(g, &vertex(s)?)
                .same_function(g, &ghost(e)?);
        rec.record("E2", &[], &[e], ok, || {
            format!("r(e)·e* = e* = e*·s(e) for e = {}", e.to_text(g))
        });
    }
    for &e in &edges {
        for &f in &edges {
            let lhs = ghost(e)?.product(g, &edge(f)?);
            let rhs = if e == f {
                vertex(e.target(g))?
            } else {
                AlgebraElement::zero()
            };
            rec.record("CK1", &[], &[e, f], lhs.same_function(g, &rhs), || {
                format!("{}*·{}", e.to_text(g), f.to_text(g))
            });
        }
    }
    for v in g.vertices().filter(|&v| g.is_regular(v)) {
        let mut rhs = AlgebraElement::<K>::zero();
        for &e in edges.iter().filter(|e| e.source(g) == v) {
            rhs = rhs + edge(e)?.product(g, &ghost(e)?);
        }
        rec.record("CK2", &[v], &[], vertex(v)?.same_function(g, &rhs), || {
            format!(
                "{} = Σ ee* over s⁻¹({})",
                g.vertex_name(v),
                g.vertex_name(v)
            )
        });
    }
    Ok(RelationsReport {
        relations: rec.relations,
        index_independence: rec.index_independence,
    })
}
