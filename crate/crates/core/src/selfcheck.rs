//! Invariant suites run by `selfcheck` and by the acceptance tests. Each
//! suite compares two independent computations and records every
//! disagreement with a witness.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::boundary::{
    brute_membership, canonical_family, cylinder_points, default_family_len, membership,
    InvariantSet,
};
use crate::config::Config;
use crate::decomp::{
    compat_successor, compat_successor_without_a, compatible_count, condition_a, condition_b,
    decomposability_routes, satisfies_p,
};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lattice::{enumerate_te, verify_lattice_iso, Check, InvariantOpen, Shape};
use crate::path::{BoundaryPath, Cylinder, EdgeRef, FinitePath};
use crate::scalar::Scalar;
use crate::steinberg::{
    eval, ideal_membership, pi_generator, random_element, random_point, random_word, split_element,
    verify_relations, AlgebraElement, Generator,
};
use crate::topology::{clopen_forces_breaking, complement_pair, is_clopen, Complement};
use crate::vertex_set::VertexSet;

/// Sample sizes for the randomized algebra checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AlgebraSizes {
    pub triples: usize,
    pub elements: usize,
    pub points: usize,
    pub pairs: usize,
}

impl Default for AlgebraSizes {
    fn default() -> Self {
        AlgebraSizes {
            triples: 20,
            elements: 10,
            points: 50,
            pairs: 10,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SelfcheckReport {
    pub suites: BTreeMap<String, Check>,
}

impl SelfcheckReport {
    pub fn passed(&self) -> bool {
        self.suites.values().all(|c| c.passed)
    }
}

/// Cylinders used to test inclusion: every `Z(v)`, every `Z(v∖{e})` for a
/// representative edge `e`, and `Z(μ)` for the representative paths of
/// length one and two.
pub fn test_cylinders(g: &Graph) -> Vec<Cylinder> {
    let mut out = Vec::new();
    for v in g.vertices() {
        out.push(Cylinder::vertex(v));
        for &b in g.out_bundles(v) {
            let e = EdgeRef::first(b);
            out.push(Cylinder {
                base: FinitePath::trivial(v),
                excluded: [e].into(),
            });
            let one = FinitePath::of_edge(g, e);
            for &b2 in g.out_bundles(e.target(g)) {
                out.push(Cylinder::of(
                    one.push(g, EdgeRef::first(b2)).expect("chains"),
                ));
            }
            out.push(Cylinder::of(one));
        }
    }
    out
}

/// Membership and cylinder inclusion against literal unrolling, plus
/// heredity trapping and shift invariance.
pub fn oracle_suite(g: &Graph, config: &Config) -> Result<Check> {
    let mut check = Check::new();
    let pairs = enumerate_te(g, config)?;
    let depth = default_family_len(g);
    let family = canonical_family(g, depth);
    for p in &pairs {
        for x in &family {
            let fast = membership(g, p, x)?;
            check.record(fast == brute_membership(g, p, x, depth), || {
                format!("membership of {} in {}", x.to_text(g), p.to_text(g))
            });
            if let Some(path) = x.as_finite() {
                let seq = path.vertex_sequence(g);
                if let Some(i) = seq.iter().position(|&v| p.h().contains(v)) {
                    check.record(seq[i..].iter().all(|&v| p.h().contains(v)), || {
                        format!("{} leaves {} after entering it", x.to_text(g), p.to_text(g))
                    });
                }
            }
            for b in g
                .bundles()
                .iter()
                .enumerate()
                .filter(|(_, b)| b.target == x.start())
            {
                let longer = x.prepend(g, &FinitePath::of_edge(g, EdgeRef::first(b.0)))?;
                check.record(p.contains(g, &longer) == p.contains(g, x), || {
                    format!("membership of {} changes under a prefix", x.to_text(g))
                });
            }
        }
    }

    let cylinders: Vec<(Cylinder, Vec<BoundaryPath>)> = test_cylinders(g)
        .into_iter()
        .map(|c| {
            let pts = cylinder_points(g, &c, depth);
            (c, pts)
        })
        .collect();
    let mut opens: Vec<InvariantOpen> = pairs.iter().cloned().map(InvariantOpen::single).collect();
    let limit = pairs.len().min(24);
    for i in 0..limit {
        for j in i + 1..limit {
            let two = vec![pairs[i].clone(), pairs[j].clone()];
            opens.push(InvariantOpen::new(Shape::Union, two.clone())?);
            opens.push(InvariantOpen::new(Shape::Intersection, two)?);
        }
    }
    for u in &opens {
        for (c, pts) in &cylinders {
            let brute = pts.iter().all(|x| u.contains(g, x));
            check.record(u.contains_cylinder(g, c) == brute, || {
                format!(
                    "inclusion of {} in a {:?} of {} pairs",
                    c.to_text(g),
                    u.shape(),
                    u.components().len()
                )
            });
        }
    }
    for p in &pairs {
        if is_clopen(g, p)?.clopen {
            let comp = Complement(p);
            for (c, pts) in &cylinders {
                let brute = pts.iter().all(|x| comp.contains(g, x));
                check.record(comp.contains_cylinder(g, c) == brute, || {
                    format!(
                        "inclusion of {} in the complement of {}",
                        c.to_text(g),
                        p.to_text(g)
                    )
                });
            }
        }
    }
    Ok(check)
}

fn members(g: &Graph, u: &dyn InvariantSet, family: &[BoundaryPath]) -> Vec<bool> {
    family.iter().map(|x| u.contains(g, x)).collect()
}

/// The lattice isomorphism checks, the clopen ⇒ `S = B_H` implication, and
/// complements of clopen pairs.
pub fn lattice_suite(g: &Graph, config: &Config) -> Result<Check> {
    let mut check = Check::new();
    let report = verify_lattice_iso(g, config)?;
    for (name, c) in [
        ("ρ∘φ", &report.rho_phi_identity),
        ("order", &report.order_preservation),
        ("injectivity", &report.injectivity),
        ("axioms", &report.lattice_axioms),
        ("transport", &report.transport),
    ] {
        check.record(c.passed, || format!("{name}: {}", c.failures.join("; ")));
    }
    let family = canonical_family(g, default_family_len(g));
    for p in enumerate_te(g, config)? {
        match clopen_forces_breaking(g, &p) {
            Ok(ok) => check.record(ok, || format!("clopen {} has S ≠ B_H", p.to_text(g))),
            Err(Error::Invariant(m)) => check.fail(m),
            Err(e) => return Err(e),
        }
        if !is_clopen(g, &p)?.clopen {
            continue;
        }
        let comp = complement_pair(g, &p)?;
        check.record(complement_pair(g, &comp)? == p, || {
            format!("complement of {} is not an involution", p.to_text(g))
        });
        let inside = members(g, &p, &family);
        let outside = members(g, &comp, &family);
        check.record(inside.iter().zip(&outside).all(|(a, b)| a != b), || {
            format!(
                "{} and {} do not partition the test family",
                p.to_text(g),
                comp.to_text(g)
            )
        });
    }
    Ok(check)
}

fn is_compatible(g: &Graph, path: &FinitePath, h: &VertexSet, breaking: &VertexSet) -> bool {
    let seq = path.vertex_sequence(g);
    let n = seq.len();
    n >= 2
        && h.contains(seq[n - 1])
        && seq[..n - 1].iter().all(|&v| !h.contains(v))
        && !breaking.contains(seq[n - 2])
}

/// Agreement of the three decomposability criteria and the consequences
/// drawn from them.
pub fn decomposition_suite(g: &Graph, config: &Config) -> Result<Check> {
    let mut check = Check::new();
    let routes = decomposability_routes(g, config)?;
    check.record(routes.agree(), || {
        format!(
            "conditions {} / clopen {} / compatible paths {}",
            routes.conditions.decomposable, routes.clopen.decomposable, routes.compatible.holds
        )
    });
    if let Some(w) = &routes.conditions.witness {
        check.record(is_clopen(g, &w.pair)?.clopen, || {
            format!("witness {} is not clopen", w.pair.to_text(g))
        });
        let family = canonical_family(g, default_family_len(g));
        let a = members(g, &w.pair, &family);
        let b = members(g, &w.complement, &family);
        check.record(a.iter().zip(&b).all(|(x, y)| x != y), || {
            format!(
                "witness {} and its complement overlap or miss points",
                w.pair.to_text(g)
            )
        });
    }
    for h in g.enumerate_hs(config.vertex_cap)? {
        let a = condition_a(g, &h)?.holds;
        let b = condition_b(g, &h)?.holds;
        let breaking = g.breaking_vertices(&h);
        for v in g.all_vertices().difference(&h).iter() {
            let count = compatible_count(g, v, &h, config)?;
            check.record(count.samples.len() <= config.sample_cap, || {
                "too many samples".to_string()
            });
            for s in &count.samples {
                check.record(is_compatible(g, s, &h, &breaking), || {
                    format!(
                        "sample {} is not {}-compatible",
                        s.to_text(g),
                        g.format_set(&h)
                    )
                });
            }
            if let Some(n) = count.count.to_u64() {
                check.record(
                    count.samples.len() as u64 == n.min(config.sample_cap as u64),
                    || format!("{} samples for a count of {n}", count.samples.len()),
                );
            }
            let p = count.count.is_omega();
            if a && b {
                check.record(!p, || {
                    format!(
                        "{} has Property (P) although {} satisfies (a) and (b)",
                        g.vertex_name(v),
                        g.format_set(&h)
                    )
                });
            }
            check.record(
                matches!(compat_successor(g, v, &h), Err(Error::Contract(_))),
                || {
                    format!(
                        "successor callable at {} for {}",
                        g.vertex_name(v),
                        g.format_set(&h)
                    )
                },
            );
            if b && p {
                let mut at = v;
                let mut seen = VertexSet::singleton(v);
                let mut repeated = false;
                for _ in 0..=g.vertex_count() {
                    let e = compat_successor_without_a(g, at, &h)?;
                    let t = e.target(g);
                    check.record(
                        e.source(g) == at && !h.contains(t) && satisfies_p(g, t, &h)?,
                        || format!("successor {} breaks its postcondition", e.to_text(g)),
                    );
                    at = t;
                    if !seen.insert(t) {
                        repeated = true;
                        break;
                    }
                }
                check.record(repeated && !a, || {
                    format!(
                        "successor walk from {} found no cycle against (a)",
                        g.vertex_name(v)
                    )
                });
            }
        }
    }
    Ok(check)
}

/// Generator images of `H` and of `v^H` for `v ∈ S` lie in the ideal of
/// `(H, S)`.
pub fn containment_suite(g: &Graph, config: &Config) -> Result<Check> {
    let mut check = Check::new();
    for p in enumerate_te(g, config)? {
        for v in p.h().iter() {
            let x: AlgebraElement<crate::Rational> = pi_generator(g, &Generator::Vertex(v))?;
            check.record(ideal_membership(g, &x, &p)?, || {
                format!("{} not in the ideal of {}", g.vertex_name(v), p.to_text(g))
            });
        }
        for w in p.s().iter() {
            let x: AlgebraElement<crate::Rational> =
                pi_generator(g, &Generator::VH(w, p.h().clone()))?;
            check.record(ideal_membership(g, &x, &p)?, || {
                format!(
                    "vh({}) not in the ideal of {}",
                    g.vertex_name(w),
                    p.to_text(g)
                )
            });
        }
    }
    Ok(check)
}

fn pointwise_equal<K: Scalar, R: Rng>(
    g: &Graph,
    rng: &mut R,
    a: &AlgebraElement<K>,
    b: &AlgebraElement<K>,
    points: usize,
    omega_samples: u64,
) -> bool {
    (0..points).all(|i| {
        let pt = if i % 2 == 0 {
            random_point(g, rng, a, omega_samples)
        } else {
            random_point(g, rng, b, omega_samples)
        };
        eval(g, a, &pt) == eval(g, b, &pt)
    })
}

/// Relations, associativity, normal forms, grading, and clopen splits.
pub fn algebra_suite<K: Scalar>(
    g: &Graph,
    config: &Config,
    sizes: &AlgebraSizes,
    seed: u64,
) -> Result<Check> {
    let mut check = Check::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let om = config.omega_samples;
    let relations = verify_relations::<K>(g, om)?;
    for (name, c) in &relations.relations {
        check.record(c.passed, || format!("{name}: {}", c.failures.join("; ")));
    }
    check.record(relations.index_independence.passed, || {
        relations.index_independence.failures.join("; ")
    });

    for _ in 0..sizes.triples {
        let a: AlgebraElement<K> = random_word(g, &mut rng, 3, om);
        let b: AlgebraElement<K> = random_word(g, &mut rng, 3, om);
        let c: AlgebraElement<K> = random_word(g, &mut rng, 3, om);
        let left = a.product(g, &b).product(g, &c);
        let right = a.product(g, &b.product(g, &c));
        check.record(left.same_function(g, &right), || {
            format!(
                "({})({})({}) is not associative",
                a.to_text(g),
                b.to_text(g),
                c.to_text(g)
            )
        });
    }

    for _ in 0..sizes.elements {
        let x: AlgebraElement<K> = random_element(g, &mut rng, 3, 3, om);
        let n = x.normalize(g);
        check.record(n.normalize(g) == n, || {
            format!("normalizing {} twice changes it", x.to_text(g))
        });
        check.record(
            pointwise_equal(g, &mut rng, &x, &n, sizes.points, om),
            || format!("normal form of {} differs pointwise", x.to_text(g)),
        );
        let y: AlgebraElement<K> = random_element(g, &mut rng, 2, 2, om);
        let xy = x.product(g, &y);
        let degrees: Vec<i64> = xy
            .degrees()
            .into_iter()
            .chain(x.degrees())
            .chain(y.degrees())
            .collect();
        for &d in &degrees {
            let mut graded = AlgebraElement::zero();
            for i in x.degrees() {
                graded = graded + x.degree_component(i).product(g, &y.degree_component(d - i));
            }
            check.record(graded.same_function(g, &xy.degree_component(d)), || {
                format!(
                    "degree {d} of ({})({}) is not graded",
                    x.to_text(g),
                    y.to_text(g)
                )
            });
        }
    }

    for p in enumerate_te(g, config)? {
        if !is_clopen(g, &p)?.clopen {
            continue;
        }
        let comp = complement_pair(g, &p)?;
        for _ in 0..sizes.pairs {
            let f: AlgebraElement<K> = random_element(g, &mut rng, 3, 3, om);
            let h: AlgebraElement<K> = random_element(g, &mut rng, 3, 3, om);
            let (f1, f2) = split_element(g, &f, &p)?;
            let (h1, h2) = split_element(g, &h, &p)?;
            let sum = f1.clone() + f2.clone();
            check.record(sum.same_function(g, &f), || {
                format!("split of {} does not add up", f.to_text(g))
            });
            check.record(
                pointwise_equal(g, &mut rng, &sum, &f, sizes.points, om),
                || format!("split of {} differs pointwise", f.to_text(g)),
            );
            check.record(ideal_membership(g, &f1, &p)?, || {
                format!(
                    "first part of {} not in the ideal of {}",
                    f.to_text(g),
                    p.to_text(g)
                )
            });
            check.record(ideal_membership(g, &f2, &comp)?, || {
                format!(
                    "second part of {} not in the ideal of {}",
                    f.to_text(g),
                    comp.to_text(g)
                )
            });
            check.record(
                f1.product(g, &h2).is_zero(g) && h1.product(g, &f2).is_zero(g),
                || {
                    format!(
                        "cross products of the splits of {} and {} do not vanish",
                        f.to_text(g),
                        h.to_text(g)
                    )
                },
            );
        }
    }
    Ok(check)
}

/// Every suite on one graph.
pub fn run_all(g: &Graph, config: &Config, seed: u64) -> Result<SelfcheckReport> {
    let mut suites = BTreeMap::new();
    suites.insert("oracle".to_string(), oracle_suite(g, config)?);
    suites.insert("lattice".to_string(), lattice_suite(g, config)?);
    suites.insert("decomposition".to_string(), decomposition_suite(g, config)?);
    suites.insert("containment".to_string(), containment_suite(g, config)?);
    suites.insert(
        "algebra".to_string(),
        algebra_suite::<crate::Rational>(g, config, &AlgebraSizes::default(), seed)?,
    );
    Ok(SelfcheckReport { suites })
}
