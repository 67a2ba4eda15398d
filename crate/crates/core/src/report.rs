//! The `report-v1` analysis report: everything the library can say about a
//! graph, as deterministic JSON or plain text.

use std::fmt::Write as _;

use serde::Serialize;

use crate::cardinal::Cardinal;
use crate::config::Config;
use crate::decomp::{
    compatible_count, decomposability_routes, naive_an_check, DecompVerdict, SplitWitness,
};
use crate::error::Result;
use crate::graph::{Graph, VertexKind};
use crate::lattice::{enumerate_te, verify_lattice_iso, Check, HSPair};
use crate::topology::{clopen_forces_breaking, is_clopen};
use crate::vertex_set::VertexSet;

pub const SCHEMA: &str = "report-v1";

#[derive(Debug, Clone, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphSummary {
    pub vertices: usize,
    pub bundles: usize,
    pub omega_bundles: usize,
    pub sinks: usize,
    pub regular: usize,
    pub infinite_emitters: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexEntry {
    pub name: String,
    pub kind: VertexKind,
    pub out_degree: Cardinal,
}

#[derive(Debug, Clone, Serialize)]
pub struct PairEntry {
    pub h: Vec<String>,
    pub s: Vec<String>,
    pub breaking: Vec<String>,
    pub clopen: bool,
    pub failing_condition: Option<&'static str>,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SplitEntry {
    pub h: Vec<String>,
    pub s: Vec<String>,
    pub complement_h: Vec<String>,
    pub complement_s: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RouteEntry {
    pub decomposable: bool,
    pub witness: Option<SplitEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompatibleRoute {
    pub holds: bool,
    pub h1: Option<Vec<String>>,
    pub h2: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Decomposition {
    pub decomposable: bool,
    pub routes_agree: bool,
    pub conditions: RouteEntry,
    pub clopen: RouteEntry,
    pub compatible_paths: CompatibleRoute,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompatibleEntry {
    pub h: Vec<String>,
    pub vertex: String,
    pub count: Cardinal,
    pub samples: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct NaiveEntry {
    pub h1: Vec<String>,
    pub h2: Vec<String>,
    pub holds: bool,
    pub offending_vertex: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeSummary {
    pub pairs: usize,
    pub family_size: usize,
    pub passed: bool,
    pub rho_phi_identity: Check,
    pub order_preservation: Check,
    pub injectivity: Check,
    pub lattice_axioms: Check,
    pub transport: Check,
    pub clopen_forces_breaking: Check,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub tool: ToolInfo,
    pub config: Config,
    pub graph: GraphSummary,
    pub vertices: Vec<VertexEntry>,
    pub hereditary_saturated: Vec<Vec<String>>,
    pub pairs: Vec<PairEntry>,
    pub decomposition: Decomposition,
    pub compatible: Vec<CompatibleEntry>,
    pub naive_an: Option<NaiveEntry>,
    pub lattice: LatticeSummary,
}

fn names(g: &Graph, set: &VertexSet) -> Vec<String> {
    g.set_names(set)
}

fn split_entry(g: &Graph, w: &SplitWitness) -> SplitEntry {
    SplitEntry {
        h: names(g, w.pair.h()),
        s: names(g, w.pair.s()),
        complement_h: names(g, w.complement.h()),
        complement_s: names(g, w.complement.s()),
    }
}

fn route_entry(g: &Graph, v: &DecompVerdict) -> RouteEntry {
    RouteEntry {
        decomposable: v.decomposable,
        witness: v.witness.as_ref().map(|w| split_entry(g, w)),
    }
}

fn pair_entry(g: &Graph, p: &HSPair) -> Result<PairEntry> {
    let verdict = is_clopen(g, p)?;
    Ok(PairEntry {
        h: names(g, p.h()),
        s: names(g, p.s()),
        breaking: names(g, &g.breaking_vertices(p.h())),
        clopen: verdict.clopen,
        failing_condition: verdict.failing_condition.map(|c| c.as_str()),
        witness: verdict.witness.as_ref().map(|w| w.to_text(g)),
    })
}

pub fn analyze(g: &Graph, config: &Config) -> Result<AnalysisReport> {
    let mut sinks = 0;
    let mut regular = 0;
    let mut emitters = 0;
    let vertices = g
        .vertices()
        .map(|v| {
            let kind = g.classify_vertex(v);
            match kind {
                VertexKind::Sink => sinks += 1,
                VertexKind::Regular => regular += 1,
                VertexKind::InfiniteEmitter => emitters += 1,
            }
            VertexEntry {
                name: g.vertex_name(v).to_string(),
                kind,
                out_degree: g.out_degree(v),
            }
        })
        .collect();
    let graph = GraphSummary {
        vertices: g.vertex_count(),
        bundles: g.bundles().len(),
        omega_bundles: g
            .bundles()
            .iter()
            .filter(|b| b.multiplicity.is_omega())
            .count(),
        sinks,
        regular,
        infinite_emitters: emitters,
    };

    let hs = g.enumerate_hs(config.vertex_cap)?;
    let te = enumerate_te(g, config)?;
    let pairs = te
        .iter()
        .map(|p| pair_entry(g, p))
        .collect::<Result<Vec<_>>>()?;

    let routes = decomposability_routes(g, config)?;
    let decomposition = Decomposition {
        decomposable: routes.conditions.decomposable,
        routes_agree: routes.agree(),
        conditions: route_entry(g, &routes.conditions),
        clopen: route_entry(g, &routes.clopen),
        compatible_paths: CompatibleRoute {
            holds: routes.compatible.holds,
            h1: routes.compatible.witness.as_ref().map(|(a, _)| names(g, a)),
            h2: routes.compatible.witness.as_ref().map(|(_, b)| names(g, b)),
        },
    };

    let mut compatible = Vec::new();
    for h in hs.iter().filter(|h| !h.is_empty()) {
        for v in g.all_vertices().difference(h).iter() {
            let c = compatible_count(g, v, h, config)?;
            compatible.push(CompatibleEntry {
                h: names(g, h),
                vertex: g.vertex_name(v).to_string(),
                count: c.count,
                samples: c.samples.iter().map(|p| p.to_text(g)).collect(),
            });
        }
    }

    let naive_an = match &routes.compatible.witness {
        Some((h1, h2)) => {
            let c = naive_an_check(g, h1, h2)?;
            Some(NaiveEntry {
                h1: names(g, h1),
                h2: names(g, h2),
                holds: c.holds,
                offending_vertex: c.witness.map(|v| g.vertex_name(v).to_string()),
            })
        }
        None => None,
    };

    let iso = verify_lattice_iso(g, config)?;
    let mut forced = Check::new();
    for p in &te {
        let ok = clopen_forces_breaking(g, p)?;
        forced.record(ok, || format!("clopen {} has S ≠ B_H", p.to_text(g)));
    }
    let lattice = LatticeSummary {
        pairs: iso.pairs,
        family_size: iso.family_size,
        passed: iso.passed() && forced.passed,
        rho_phi_identity: iso.rho_phi_identity,
        order_preservation: iso.order_preservation,
        injectivity: iso.injectivity,
        lattice_axioms: iso.lattice_axioms,
        transport: iso.transport,
        clopen_forces_breaking: forced,
    };

    Ok(AnalysisReport {
        schema: SCHEMA,
        tool: ToolInfo {
            name: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
        },
        config: *config,
        graph,
        vertices,
        hereditary_saturated: hs.iter().map(|h| names(g, h)).collect(),
        pairs,
        decomposition,
        compatible,
        naive_an,
        lattice,
    })
}

fn braces(items: &[String]) -> String {
    format!("{{{}}}", items.join(","))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

impl AnalysisReport {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let g = &self.graph;
        let _ = writeln!(
            out,
            "{} {} ({})",
            self.tool.name, self.tool.version, self.schema
        );
        let _ = writeln!(
            out,
            "graph: {} vertices ({} sinks, {} regular, {} infinite emitters), {} bundles ({} with ω edges)",
            g.vertices, g.sinks, g.regular, g.infinite_emitters, g.bundles, g.omega_bundles
        );
        out.push_str("\nvertices\n");
        for v in &self.vertices {
            let _ = writeln!(
                out,
                "  {:<12} {:<17} out-degree {}",
                v.name,
                v.kind.to_string(),
                v.out_degree
            );
        }
        out.push_str("\nhereditary saturated sets\n");
        for h in &self.hereditary_saturated {
            let _ = writeln!(out, "  {}", braces(h));
        }
        out.push_str("\nadmissible pairs\n");
        for p in &self.pairs {
            let verdict = match (&p.failing_condition, &p.witness) {
                (None, _) => "clopen".to_string(),
                (Some(c), Some(w)) => format!("not clopen: {c} fails at {w}"),
                (Some(c), None) => format!("not clopen: {c} fails"),
            };
            let _ = writeln!(
                out,
                "  H={} S={} B_H={}  {}",
                braces(&p.h),
                braces(&p.s),
                braces(&p.breaking),
                verdict
            );
        }
        let d = &self.decomposition;
        out.push_str("\ndecomposition\n");
        let _ = writeln!(out, "  decomposable: {}", yes_no(d.decomposable));
        for (name, r) in [("conditions", &d.conditions), ("clopen pair", &d.clopen)] {
            let _ = write!(out, "  {name}: {}", yes_no(r.decomposable));
            if let Some(w) = &r.witness {
                let _ = write!(
                    out,
                    ", H={} S={} complement H={} S={}",
                    braces(&w.h),
                    braces(&w.s),
                    braces(&w.complement_h),
                    braces(&w.complement_s)
                );
            }
            out.push('\n');
        }
        let _ = write!(
            out,
            "  compatible paths: {}",
            yes_no(d.compatible_paths.holds)
        );
        if let (Some(a), Some(b)) = (&d.compatible_paths.h1, &d.compatible_paths.h2) {
            let _ = write!(out, ", H1={} H2={}", braces(a), braces(b));
        }
        out.push('\n');
        if !d.routes_agree {
            out.push_str("  WARNING: the criteria disagree\n");
        }
        out.push_str("\ncompatible paths\n");
        for c in &self.compatible {
            let _ = write!(out, "  H={} from {}: {}", braces(&c.h), c.vertex, c.count);
            if !c.samples.is_empty() {
                let _ = write!(out, "  e.g. {}", c.samples.join(" "));
            }
            out.push('\n');
        }
        if let Some(n) = &self.naive_an {
            out.push_str("\npath counting into H1 ∪ H2\n");
            let _ = write!(
                out,
                "  H1={} H2={}: {}",
                braces(&n.h1),
                braces(&n.h2),
                if n.holds { "holds" } else { "fails" }
            );
            if let Some(v) = &n.offending_vertex {
                let _ = write!(out, " at {v}");
            }
            out.push('\n');
        }
        let l = &self.lattice;
        out.push_str("\nlattice\n");
        let _ = writeln!(
            out,
            "  {} pairs, {} test points, {}",
            l.pairs,
            l.family_size,
            if l.passed {
                "all checks passed"
            } else {
                "CHECKS FAILED"
            }
        );
        for (name, c) in [
            ("ρ∘φ identity", &l.rho_phi_identity),
            ("order", &l.order_preservation),
            ("injectivity", &l.injectivity),
            ("lattice axioms", &l.lattice_axioms),
            ("join/meet transport", &l.transport),
            ("clopen forces S = B_H", &l.clopen_forces_breaking),
        ] {
            let _ = writeln!(
                out,
                "  {name}: {} ({} cases)",
                if c.passed { "ok" } else { "FAILED" },
                c.cases
            );
            for f in &c.failures {
                let _ = writeln!(out, "    {f}");
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    #[test]
    fn graph_c_report() {
        let g = graph_c();
        let r = analyze(&g, &Config::default()).unwrap();
        assert_eq!(r.schema, "report-v1");
        assert_eq!(r.pairs.len(), 6);
        assert!(r.decomposition.decomposable);
        let w = r.decomposition.conditions.witness.as_ref().unwrap();
        assert_eq!(
            (w.h.clone(), w.s.clone()),
            (vec!["u".to_string()], vec!["p".to_string()])
        );
        let naive = r.naive_an.as_ref().unwrap();
        assert!(!naive.holds);
        assert_eq!(naive.offending_vertex.as_deref(), Some("p"));
        assert!(r.lattice.passed);
        assert!(r.to_text().contains("decomposable: yes"));
    }

    #[test]
    fn json_is_deterministic() {
        for (_, g) in corpus() {
            let a = analyze(&g, &Config::default()).unwrap().to_json();
            let b = analyze(&g, &Config::default()).unwrap().to_json();
            assert_eq!(a, b);
        }
    }
}
