//! One line per acceptance criterion. Runs without the test harness so the
//! lines are printed by a plain `cargo test`.

use std::process::ExitCode;
use std::time::Instant;

use leavitt::decomp::{
    compatible_path_check, decomposability_routes, is_decomposable, naive_an_check,
};
use leavitt::fixtures::{corpus, graph_a, graph_b, graph_c, graph_c_finite, graph_d};
use leavitt::lattice::{enumerate_te, verify_lattice_iso};
use leavitt::random::{fuzz_corpus, GraphShape};
use leavitt::selfcheck::{algebra_suite, containment_suite, oracle_suite, AlgebraSizes};
use leavitt::steinberg::{pi_generator, random_word, verify_relations, AlgebraElement, Generator};
use leavitt::topology::{clopen_forces_breaking, is_clopen, FailingCondition, Witness};
use leavitt::{Config, EdgeRef, Graph, HSPair, Multiplicity, Rational, VertexSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 7;
const CORPUS: usize = 500;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn set(g: &Graph, names: &str) -> VertexSet {
    g.parse_vertex_set(names).unwrap()
}

fn pair(g: &Graph, h: &str, s: &str) -> HSPair {
    HSPair::new(g, set(g, h), set(g, s)).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture_verdicts() -> Outcome {
    let a = graph_a();
    let v = is_clopen(&a, &pair(&a, "v", "")).map_err(|e| e.to_string())?;
    let e = a.bundle_id("e").unwrap();
    let loop_e = matches!(&v.witness, Some(Witness::Cycle(c)) if c.edges() == [EdgeRef::first(e)]);
    ensure(
        !v.clopen && v.failing_condition == Some(FailingCondition::CondI) && loop_e,
        || format!("graph A: {}", v.describe(&a)),
    )?;
    let b = graph_b();
    let v = is_clopen(&b, &pair(&b, "v", "")).map_err(|e| e.to_string())?;
    let at_u = v.witness == Some(Witness::Vertex(b.vertex("u").unwrap()));
    ensure(
        !v.clopen && v.failing_condition == Some(FailingCondition::CondII) && at_u,
        || format!("graph B: {}", v.describe(&b)),
    )?;
    Ok("A: cond_i fails on cycle e; B: cond_ii fails at u".into())
}

fn counterexample() -> Outcome {
    let g = graph_c();
    let cfg = Config::default();
    let d = is_decomposable(&g, &cfg).map_err(|e| e.to_string())?;
    let w = d.witness.ok_or("graph C reported indecomposable")?;
    ensure(
        w.pair == pair(&g, "u", "p") && w.complement == pair(&g, "w", ""),
        || {
            format!(
                "witness {} / {}",
                w.pair.to_text(&g),
                w.complement.to_text(&g)
            )
        },
    )?;
    let naive = naive_an_check(&g, &set(&g, "u"), &set(&g, "w")).map_err(|e| e.to_string())?;
    ensure(
        !naive.holds && naive.witness == Some(g.vertex("p").unwrap()),
        || format!("naive check {:?}", naive),
    )?;
    let t = compatible_path_check(&g, &cfg).map_err(|e| e.to_string())?;
    ensure(
        t.holds && t.witness == Some((set(&g, "u"), set(&g, "w"))),
        || format!("compatible check {:?}", t),
    )?;
    Ok("decomposable via ({u},{p}) | ({w},{}); naive count fails at p; compatible counts hold for ({u},{w})".into())
}

fn route_agreement(graphs: &[Graph]) -> Outcome {
    let cfg = Config::default();
    let mut yes = 0;
    for (i, g) in graphs.iter().enumerate() {
        let r = decomposability_routes(g, &cfg).map_err(|e| format!("graph {i}: {e}"))?;
        ensure(r.agree(), || {
            format!(
                "graph {i}: conditions {} clopen {} compatible {}",
                r.conditions.decomposable, r.clopen.decomposable, r.compatible.holds
            )
        })?;
        yes += r.conditions.decomposable as usize;
    }
    Ok(format!(
        "{} graphs, {yes} decomposable, 0 disagreements",
        graphs.len()
    ))
}

fn lattice_suite(graphs: &[Graph]) -> Outcome {
    let cfg = Config::default();
    let mut pairs = 0;
    for (i, g) in graphs.iter().enumerate() {
        let r = verify_lattice_iso(g, &cfg).map_err(|e| format!("graph {i}: {e}"))?;
        ensure(r.passed(), || format!("graph {i}: {r:?}"))?;
        for p in enumerate_te(g, &cfg).map_err(|e| e.to_string())? {
            let ok = clopen_forces_breaking(g, &p).map_err(|e| format!("graph {i}: {e}"))?;
            ensure(ok, || {
                format!("graph {i}: clopen {} with S ≠ B_H", p.to_text(g))
            })?;
            pairs += 1;
        }
    }
    Ok(format!(
        "{} graphs, {pairs} pairs, 0 failures",
        graphs.len()
    ))
}

fn oracle_agreement(graphs: &[Graph]) -> Outcome {
    let cfg = Config::default();
    let mut count = 0;
    let mut cases = 0;
    for (i, g) in graphs
        .iter()
        .enumerate()
        .filter(|(_, g)| g.vertex_count() <= 6)
    {
        let c = oracle_suite(g, &cfg).map_err(|e| format!("graph {i}: {e}"))?;
        ensure(c.passed, || format!("graph {i}: {}", c.failures.join("; ")))?;
        count += 1;
        cases += c.cases;
    }
    Ok(format!(
        "{count} graphs with at most 6 vertices, {cases} comparisons, 0 disagreements"
    ))
}

fn ck2_instance(g: &Graph, v: usize) -> AlgebraElement<Rational> {
    let mut x = pi_generator(g, &Generator::Vertex(v)).unwrap();
    for &b in g.out_bundles(v) {
        let Multiplicity::Finite(m) = g.bundle(b).multiplicity else {
            unreachable!("regular vertex")
        };
        for i in 0..m.get() {
            let e = EdgeRef::new(b, i);
            let ee = pi_generator::<Rational>(g, &Generator::Edge(e))
                .unwrap()
                .product(g, &pi_generator(g, &Generator::Ghost(e)).unwrap());
            x = x - ee;
        }
    }
    x
}

fn algebra(graphs: &[Graph]) -> Outcome {
    let cfg = Config::default();
    let named = [graph_a(), graph_b(), graph_c(), graph_d()];
    for (i, g) in named.iter().enumerate() {
        let r = verify_relations::<Rational>(g, cfg.omega_samples).map_err(|e| e.to_string())?;
        let bad: Vec<&String> = r
            .relations
            .iter()
            .filter(|(_, c)| !c.passed)
            .map(|(k, _)| k)
            .collect();
        ensure(bad.is_empty() && r.index_independence.passed, || {
            format!("fixture {i}: {bad:?}")
        })?;
    }
    let mut ck2 = 0;
    for g in named.iter().chain(graphs) {
        for v in g.vertices().filter(|&v| g.is_regular(v)) {
            let n = ck2_instance(g, v).normalize(g);
            ensure(n.is_empty(), || {
                format!("CK2 at {} normalizes to {}", g.vertex_name(v), n.to_text(g))
            })?;
            ck2 += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let pool: Vec<&Graph> = named.iter().chain(graphs).collect();
    for t in 0..200 {
        let g = pool[t % pool.len()];
        let a: AlgebraElement<Rational> = random_word(g, &mut rng, 3, cfg.omega_samples);
        let b: AlgebraElement<Rational> = random_word(g, &mut rng, 3, cfg.omega_samples);
        let c: AlgebraElement<Rational> = random_word(g, &mut rng, 3, cfg.omega_samples);
        let l = a.product(g, &b).product(g, &c);
        let r = a.product(g, &b.product(g, &c));
        ensure(l.same_function(g, &r), || {
            format!(
                "triple {t}: {} · {} · {}",
                a.to_text(g),
                b.to_text(g),
                c.to_text(g)
            )
        })?;
    }
    let sizes = AlgebraSizes {
        triples: 0,
        elements: 0,
        points: 50,
        pairs: 50,
    };
    let mut clopen = 0;
    for (i, g) in std::iter::once(graph_c())
        .chain(graphs.iter().cloned())
        .enumerate()
    {
        let c = algebra_suite::<Rational>(&g, &cfg, &sizes, SEED + i as u64)
            .map_err(|e| format!("graph {i}: {e}"))?;
        ensure(c.passed, || format!("graph {i}: {}", c.failures.join("; ")))?;
        for p in enumerate_te(&g, &cfg).map_err(|e| e.to_string())? {
            clopen += is_clopen(&g, &p).map_err(|e| e.to_string())?.clopen as usize;
        }
    }
    Ok(format!(
        "relations on A-D, {ck2} CK2 instances, 200 associativity triples, {clopen} clopen pairs split 50 times each"
    ))
}

fn containment(graphs: &[Graph]) -> Outcome {
    let cfg = Config::default();
    let mut cases = 0;
    let named = corpus()
        .into_iter()
        .map(|(_, g)| g)
        .chain([graph_c_finite()]);
    for (i, g) in named.chain(graphs.iter().cloned()).enumerate() {
        let c = containment_suite(&g, &cfg).map_err(|e| format!("graph {i}: {e}"))?;
        ensure(c.passed, || format!("graph {i}: {}", c.failures.join("; ")))?;
        cases += c.cases;
    }
    Ok(format!("{cases} generator images, 0 failures"))
}

fn main() -> ExitCode {
    let graphs = fuzz_corpus(SEED, CORPUS, &GraphShape::default());
    let criteria: [Criterion; 7] = [
        ("fixture clopen verdicts", Box::new(fixture_verdicts)),
        ("counterexample graph C", Box::new(counterexample)),
        (
            "decomposability routes agree",
            Box::new(|| route_agreement(&graphs)),
        ),
        ("lattice isomorphism", Box::new(|| lattice_suite(&graphs))),
        ("oracle agreement", Box::new(|| oracle_agreement(&graphs))),
        ("algebra suite", Box::new(|| algebra(&graphs))),
        ("generator containment", Box::new(|| containment(&graphs))),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {} PASS {name} ({detail}) [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
