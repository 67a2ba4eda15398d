//! Decomposability of the algebra: the condition-based criterion, the
//! clopen-pair criterion, the compatible-path criterion, and the naive
//! path-counting condition it corrects.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::cardinal::{Cardinal, Multiplicity};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lattice::{enumerate_te, HSPair};
use crate::path::{EdgeRef, FinitePath};
use crate::topology::{complement_pair, condition_i, condition_ii, is_clopen, Condition};
use crate::vertex_set::{VertexId, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Conditions,
    CompatiblePaths,
    Clopen,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Conditions => "conditions",
            Method::CompatiblePaths => "compatible-paths",
            Method::Clopen => "clopen",
        }
    }
}

/// A clopen split `(H, B_H)` together with its complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitWitness {
    pub pair: HSPair,
    pub complement: HSPair,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompVerdict {
    pub decomposable: bool,
    pub witness: Option<SplitWitness>,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibleVerdict {
    pub holds: bool,
    pub witness: Option<(VertexSet, VertexSet)>,
}

/// Number of `H`-compatible paths from a vertex, with a few examples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatCount {
    pub count: Cardinal,
    pub samples: Vec<FinitePath>,
}

fn require_hs(g: &Graph, h: &VertexSet) -> Result<()> {
    g.check_set(h)?;
    if g.is_hereditary_saturated(h) {
        Ok(())
    } else {
        Err(Error::contract(format!(
            "{} is not hereditary and saturated",
            g.format_set(h)
        )))
    }
}

/// No infinite path outside `H` can reach `H` from every position.
pub fn condition_a(g: &Graph, h: &VertexSet) -> Result<Condition<FinitePath>> {
    condition_i(g, h)
}

/// Vertices with infinitely many edges towards `H` lie in `H ∪ B_H`.
pub fn condition_b(g: &Graph, h: &VertexSet) -> Result<Condition<VertexId>> {
    require_hs(g, h)?;
    condition_ii(g, h, &g.breaking_vertices(h))
}

fn is_nonempty_proper(g: &Graph, h: &VertexSet) -> bool {
    !h.is_empty() && h.len() < g.vertex_count()
}

fn split_witness(g: &Graph, h: &VertexSet) -> Result<SplitWitness> {
    let pair = HSPair::new(g, h.clone(), g.breaking_vertices(h))?;
    let complement = complement_pair(g, &pair)?;
    Ok(SplitWitness { pair, complement })
}

/// Search for a nonempty proper hereditary saturated `H` satisfying
/// conditions (a) and (b).
pub fn decomposable_by_conditions(g: &Graph, config: &Config) -> Result<DecompVerdict> {
    for h in g.enumerate_hs(config.vertex_cap)? {
        if is_nonempty_proper(g, &h) && condition_a(g, &h)?.holds && condition_b(g, &h)?.holds {
            return Ok(DecompVerdict {
                decomposable: true,
                witness: Some(split_witness(g, &h)?),
                method: Method::Conditions,
            });
        }
    }
    Ok(DecompVerdict {
        decomposable: false,
        witness: None,
        method: Method::Conditions,
    })
}

/// Search for a clopen `U_{H,S}` other than the empty set and the whole space.
pub fn decomposable_by_clopen(g: &Graph, config: &Config) -> Result<DecompVerdict> {
    for pair in enumerate_te(g, config)? {
        if is_nonempty_proper(g, pair.h()) && is_clopen(g, &pair)?.clopen {
            return Ok(DecompVerdict {
                decomposable: true,
                witness: Some(split_witness(g, pair.h())?),
                method: Method::Clopen,
            });
        }
    }
    Ok(DecompVerdict {
        decomposable: false,
        witness: None,
        method: Method::Clopen,
    })
}

/// Condition-based verdict, checked against the clopen-pair search.
pub fn is_decomposable(g: &Graph, config: &Config) -> Result<DecompVerdict> {
    let verdict = decomposable_by_conditions(g, config)?;
    let clopen = decomposable_by_clopen(g, config)?;
    if verdict.decomposable != clopen.decomposable {
        return Err(Error::invariant(format!(
            "condition search says {} but clopen search says {}",
            verdict.decomposable, clopen.decomposable
        )));
    }
    Ok(verdict)
}

/// All three verdicts, computed independently.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Routes {
    pub conditions: DecompVerdict,
    pub clopen: DecompVerdict,
    pub compatible: CompatibleVerdict,
}

impl Routes {
    pub fn agree(&self) -> bool {
        self.conditions.decomposable == self.clopen.decomposable
            && self.clopen.decomposable == self.compatible.holds
    }
}

pub fn decomposability_routes(g: &Graph, config: &Config) -> Result<Routes> {
    Ok(Routes {
        conditions: decomposable_by_conditions(g, config)?,
        clopen: decomposable_by_clopen(g, config)?,
        compatible: compatible_path_check(g, config)?,
    })
}

fn mult_cardinal(m: Multiplicity) -> Cardinal {
    m.to_cardinal()
}

/// Counts paths of length at least one from `v` into `targets` that stay in
/// `allowed` before the last edge, and whose last edge passes `last_ok`.
/// Every route vertex is assumed to lie in `allowed`.
fn count_routes(
    g: &Graph,
    v: VertexId,
    allowed: &VertexSet,
    targets: &VertexSet,
    last_ok: impl Fn(VertexId) -> bool,
) -> Cardinal {
    // Vertices that end a qualifying path in one step.
    let finishers: VertexSet = allowed
        .iter()
        .filter(|&u| {
            last_ok(u)
                && g.out_bundles(u)
                    .iter()
                    .any(|&b| targets.contains(g.bundle(b).target))
        })
        .collect();
    if !allowed.contains(v) {
        return Cardinal::zero();
    }
    let forward = g.reach_within([v], allowed);
    let route: VertexSet = forward
        .iter()
        .filter(|&u| !g.reach_within([u], allowed).is_disjoint(&finishers))
        .collect();
    if !route.contains(v) {
        return Cardinal::zero();
    }
    if !g.cyclic_vertices(&route).is_empty() {
        return Cardinal::Omega;
    }
    let mut memo: Vec<Option<Cardinal>> = vec![None; g.vertex_count()];
    fn visit(
        g: &Graph,
        u: VertexId,
        route: &VertexSet,
        finishers: &VertexSet,
        targets: &VertexSet,
        memo: &mut Vec<Option<Cardinal>>,
    ) -> Cardinal {
        if let Some(c) = &memo[u] {
            return c.clone();
        }
        let mut total = Cardinal::zero();
        for &b in g.out_bundles(u) {
            let bundle = g.bundle(b);
            let m = mult_cardinal(bundle.multiplicity);
            if finishers.contains(u) && targets.contains(bundle.target) {
                total = total + m.clone();
            }
            if route.contains(bundle.target) {
                let rest = visit(g, bundle.target, route, finishers, targets, memo);
                total = total + m * rest;
            }
        }
        memo[u] = Some(total.clone());
        total
    }
    visit(g, v, &route, &finishers, targets, &mut memo)
}

/// Paths from `v` into `targets` as above, listed by length and then by
/// edge order, with at most `cap` entries and edge indices below `cap`.
fn sample_routes(
    g: &Graph,
    v: VertexId,
    allowed: &VertexSet,
    targets: &VertexSet,
    last_ok: impl Fn(VertexId) -> bool,
    cap: usize,
) -> Vec<FinitePath> {
    let mut samples = Vec::new();
    if cap == 0 || !allowed.contains(v) {
        return samples;
    }
    let mut frontier = vec![FinitePath::trivial(v)];
    let max_len = g.vertex_count() + cap;
    for _ in 0..max_len {
        let mut next = Vec::new();
        for p in &frontier {
            let end = p.range(g);
            for &b in g.out_bundles(end) {
                let bundle = g.bundle(b);
                let finishing = targets.contains(bundle.target) && last_ok(end);
                let continuing = allowed.contains(bundle.target);
                if !finishing && !continuing {
                    continue;
                }
                for i in (0..cap as u64).take_while(|&i| bundle.multiplicity.admits(i)) {
                    let q = p.push(g, EdgeRef::new(b, i)).expect("edge at path end");
                    if finishing && samples.len() < cap {
                        samples.push(q.clone());
                    }
                    if continuing {
                        next.push(q);
                    }
                }
            }
        }
        if samples.len() >= cap || next.is_empty() {
            break;
        }
        next.truncate(cap);
        frontier = next;
    }
    samples
}

/// `|C_{v,H}|`: paths from `v` ending in `H` whose last edge leaves a vertex
/// outside `H ∪ B_H`.
pub fn compatible_count(
    g: &Graph,
    v: VertexId,
    h: &VertexSet,
    config: &Config,
) -> Result<CompatCount> {
    g.check_vertex(v)?;
    require_hs(g, h)?;
    if h.contains(v) {
        return Err(Error::contract(format!(
            "{} lies in {}",
            g.vertex_name(v),
            g.format_set(h)
        )));
    }
    let outside = g.all_vertices().difference(h);
    let breaking = g.breaking_vertices(h);
    let last_ok = |u: VertexId| !breaking.contains(u);
    let count = count_routes(g, v, &outside, h, last_ok);
    let samples = sample_routes(g, v, &outside, h, last_ok, config.sample_cap);
    Ok(CompatCount { count, samples })
}

/// Property (P): infinitely many `H`-compatible paths from `v`.
pub fn satisfies_p(g: &Graph, v: VertexId, h: &VertexSet) -> Result<bool> {
    let config = Config {
        sample_cap: 0,
        ..Config::default()
    };
    Ok(compatible_count(g, v, h, &config)?.count.is_omega())
}

fn successor(g: &Graph, v: VertexId, h: &VertexSet) -> Result<EdgeRef> {
    for &b in g.out_bundles(v) {
        let t = g.bundle(b).target;
        if !h.contains(t) && satisfies_p(g, t, h)? {
            return Ok(EdgeRef::first(b));
        }
    }
    Err(Error::invariant(format!(
        "{} has Property (P) for {} but no successor with it",
        g.vertex_name(v),
        g.format_set(h)
    )))
}

fn successor_preconditions(g: &Graph, v: VertexId, h: &VertexSet) -> Result<()> {
    g.check_vertex(v)?;
    if !condition_b(g, h)?.holds {
        return Err(Error::contract(format!(
            "condition (b) fails for {}",
            g.format_set(h)
        )));
    }
    if h.contains(v) || !satisfies_p(g, v, h)? {
        return Err(Error::contract(format!(
            "{} does not have Property (P) outside {}",
            g.vertex_name(v),
            g.format_set(h)
        )));
    }
    Ok(())
}

/// An edge from `v` to a vertex outside `H` that again has Property (P).
///
/// Requires conditions (a) and (b) for `H` and Property (P) at `v`. On a
/// graph with finitely many vertices these requirements never hold together,
/// so every call ends in a contract error.
pub fn compat_successor(g: &Graph, v: VertexId, h: &VertexSet) -> Result<EdgeRef> {
    successor_preconditions(g, v, h)?;
    if let Some(cycle) = condition_a(g, h)?.witness {
        return Err(Error::contract(format!(
            "condition (a) fails for {}: cycle {}",
            g.format_set(h),
            cycle.to_text(g)
        )));
    }
    successor(g, v, h)
}

/// [`compat_successor`] without condition (a). Iterating it produces a walk
/// outside `H` that must eventually repeat a vertex.
pub fn compat_successor_without_a(g: &Graph, v: VertexId, h: &VertexSet) -> Result<EdgeRef> {
    successor_preconditions(g, v, h)?;
    successor(g, v, h)
}

/// Looks for disjoint nonempty hereditary saturated `H1`, `H2` such that
/// every vertex outside both starts at least one and only finitely many
/// paths compatible with one of them.
pub fn compatible_path_check(g: &Graph, config: &Config) -> Result<CompatibleVerdict> {
    let candidates: Vec<VertexSet> = g
        .enumerate_hs(config.vertex_cap)?
        .into_iter()
        .filter(|h| !h.is_empty())
        .collect();
    let counting = Config {
        sample_cap: 0,
        ..*config
    };
    for (i, h1) in candidates.iter().enumerate() {
        for h2 in &candidates[i + 1..] {
            if !h1.is_disjoint(h2) {
                continue;
            }
            let mut ok = true;
            for v in g.all_vertices().difference(&h1.union(h2)).iter() {
                let total = compatible_count(g, v, h1, &counting)?.count
                    + compatible_count(g, v, h2, &counting)?.count;
                if total.is_zero() || total.is_omega() {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(CompatibleVerdict {
                    holds: true,
                    witness: Some((h1.clone(), h2.clone())),
                });
            }
        }
    }
    Ok(CompatibleVerdict {
        holds: false,
        witness: None,
    })
}

/// Number of paths of length at least one from `v` ending in `targets`.
pub fn count_paths_into(g: &Graph, v: VertexId, targets: &VertexSet) -> Result<Cardinal> {
    g.check_vertex(v)?;
    g.check_set(targets)?;
    Ok(count_routes(g, v, &g.all_vertices(), targets, |_| true))
}

/// The uncorrected counting condition: every vertex outside `H1 ∪ H2`
/// starts at least one and finitely many paths into `H1 ∪ H2`.
pub fn naive_an_check(g: &Graph, h1: &VertexSet, h2: &VertexSet) -> Result<Condition<VertexId>> {
    require_hs(g, h1)?;
    require_hs(g, h2)?;
    if h1.is_empty() || h2.is_empty() || !h1.is_disjoint(h2) {
        return Err(Error::contract(format!(
            "{} and {} must be nonempty and disjoint",
            g.format_set(h1),
            g.format_set(h2)
        )));
    }
    let both = h1.union(h2);
    for v in g.all_vertices().difference(&both).iter() {
        let n = count_paths_into(g, v, &both)?;
        if n.is_zero() || n.is_omega() {
            return Ok(Condition {
                holds: false,
                witness: Some(v),
            });
        }
    }
    Ok(Condition {
        holds: true,
        witness: None,
    })
}

/// Exhaustive count of paths by explicit enumeration, for graphs whose
/// relevant counts are finite. Walks that can no longer reach `H` are
/// dropped. Returns `None` once more than `limit` paths have been seen, or
/// when a walk runs longer than `|E⁰| + 1` edges or meets an ω bundle.
pub fn enumerate_compatible(
    g: &Graph,
    v: VertexId,
    h: &VertexSet,
    limit: usize,
) -> Option<BigUint> {
    let breaking = g.breaking_vertices(h);
    let mut count = BigUint::zero();
    let mut stack = vec![(v, 0usize)];
    let mut seen = 0usize;
    while let Some((u, depth)) = stack.pop() {
        if depth > g.vertex_count() + 1 {
            return None;
        }
        for &b in g.out_bundles(u) {
            let bundle = g.bundle(b);
            if !g.reaches(bundle.target, h) {
                continue;
            }
            let m = match bundle.multiplicity {
                Multiplicity::Omega => return None,
                Multiplicity::Finite(n) => n.get(),
            };
            if h.contains(bundle.target) {
                if !breaking.contains(u) {
                    count += m;
                    seen += m as usize;
                }
            } else {
                for _ in 0..m {
                    stack.push((bundle.target, depth + 1));
                }
            }
            if seen > limit {
                return None;
            }
        }
    }
    Some(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::*;

    fn set(g: &Graph, names: &[&str]) -> VertexSet {
        names.iter().map(|n| g.vertex(n).unwrap()).collect()
    }

    #[test]
    fn condition_b_examples() {
        let b = graph_b();
        assert_eq!(
            condition_b(&b, &set(&b, &["v"])).unwrap().witness,
            Some(b.vertex("u").unwrap())
        );
        let c = graph_c();
        assert!(condition_b(&c, &set(&c, &["u"])).unwrap().holds);
        let a = graph_a();
        assert!(condition_b(&a, &set(&a, &["v"])).unwrap().holds);
    }

    #[test]
    fn decomposition_examples() {
        let cfg = Config::default();
        let c = graph_c();
        let v = is_decomposable(&c, &cfg).unwrap();
        assert!(v.decomposable);
        let w = v.witness.unwrap();
        assert_eq!(w.pair.h(), &set(&c, &["u"]));
        assert_eq!(w.pair.s(), &set(&c, &["p"]));
        assert_eq!(
            w.complement,
            HSPair::new(&c, set(&c, &["w"]), VertexSet::new()).unwrap()
        );
        assert!(!is_decomposable(&graph_a(), &cfg).unwrap().decomposable);
        assert!(!is_decomposable(&graph_d(), &cfg).unwrap().decomposable);
        assert!(is_decomposable(&graph_e2(), &cfg).unwrap().decomposable);
    }

    #[test]
    fn compatible_examples() {
        let cfg = Config::default();
        let c = graph_c();
        let p = c.vertex("p").unwrap();
        let r = compatible_count(&c, p, &set(&c, &["u"]), &cfg).unwrap();
        assert_eq!(r.count, Cardinal::from_u64(0));
        assert!(r.samples.is_empty());
        let r = compatible_count(&c, p, &set(&c, &["w"]), &cfg).unwrap();
        assert_eq!(r.count, Cardinal::from_u64(1));
        assert_eq!(
            r.samples.iter().map(|s| s.to_text(&c)).collect::<Vec<_>>(),
            vec!["p:b"]
        );
        let a = graph_a();
        let u = a.vertex("u").unwrap();
        let r = compatible_count(&a, u, &set(&a, &["v"]), &cfg).unwrap();
        assert!(r.count.is_omega());
        assert_eq!(r.samples.len(), cfg.sample_cap);
        assert_eq!(r.samples[0].to_text(&a), "u:f");
        assert!(compatible_count(&a, a.vertex("v").unwrap(), &set(&a, &["v"]), &cfg).is_err());
    }

    #[test]
    fn property_p_examples() {
        let a = graph_a();
        assert!(satisfies_p(&a, a.vertex("u").unwrap(), &set(&a, &["v"])).unwrap());
        let c = graph_c();
        let p = c.vertex("p").unwrap();
        assert!(!satisfies_p(&c, p, &set(&c, &["u"])).unwrap());
        assert!(!satisfies_p(&c, p, &set(&c, &["w"])).unwrap());
    }

    #[test]
    fn compatible_path_examples() {
        let cfg = Config::default();
        let c = graph_c();
        let v = compatible_path_check(&c, &cfg).unwrap();
        assert_eq!(v.witness, Some((set(&c, &["u"]), set(&c, &["w"]))));
        assert!(!compatible_path_check(&graph_a(), &cfg).unwrap().holds);
        let e2 = graph_e2();
        assert_eq!(
            compatible_path_check(&e2, &cfg).unwrap().witness,
            Some((set(&e2, &["v"]), set(&e2, &["w"])))
        );
    }

    #[test]
    fn path_count_examples() {
        let c = graph_c();
        assert!(
            count_paths_into(&c, c.vertex("p").unwrap(), &set(&c, &["u", "w"]))
                .unwrap()
                .is_omega()
        );
        let a = graph_a();
        assert!(
            count_paths_into(&a, a.vertex("u").unwrap(), &set(&a, &["v"]))
                .unwrap()
                .is_omega()
        );
        let d = graph_d();
        assert_eq!(
            count_paths_into(&d, 0, &set(&d, &["v"])).unwrap(),
            Cardinal::from_u64(0)
        );
    }

    #[test]
    fn naive_condition_examples() {
        let c = graph_c();
        let r = naive_an_check(&c, &set(&c, &["u"]), &set(&c, &["w"])).unwrap();
        assert_eq!(r.witness, Some(c.vertex("p").unwrap()));
        let e2 = graph_e2();
        assert!(
            naive_an_check(&e2, &set(&e2, &["v"]), &set(&e2, &["w"]))
                .unwrap()
                .holds
        );
        let cf = graph_c_finite();
        assert!(
            naive_an_check(&cf, &set(&cf, &["u"]), &set(&cf, &["w"]))
                .unwrap()
                .holds
        );
        assert!(naive_an_check(&c, &set(&c, &["u"]), &set(&c, &["u"])).is_err());
    }

    #[test]
    fn successor_is_never_callable_on_corpus() {
        for (_, g) in corpus() {
            for h in g.enumerate_hs(16).unwrap() {
                for v in g.vertices() {
                    assert!(matches!(
                        compat_successor(&g, v, &h),
                        Err(Error::Contract(_))
                    ));
                }
            }
        }
    }

    #[test]
    fn successor_walk_repeats_on_graph_a() {
        let a = graph_a();
        let h = set(&a, &["v"]);
        let u = a.vertex("u").unwrap();
        let e = compat_successor_without_a(&a, u, &h).unwrap();
        assert_eq!(e.to_text(&a), "e");
    }

    #[test]
    fn finite_counts_match_enumeration() {
        let cf = graph_c_finite();
        let p = cf.vertex("p").unwrap();
        for h in [set(&cf, &["u"]), set(&cf, &["w"])] {
            let fast = compatible_count(&cf, p, &h, &Config::default())
                .unwrap()
                .count;
            let slow = enumerate_compatible(&cf, p, &h, 1000).unwrap();
            assert_eq!(fast, Cardinal::Finite(slow));
        }
    }
}
