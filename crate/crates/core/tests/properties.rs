use leavitt::boundary::{canonical_family, default_family_len, InvariantSet};
use leavitt::decomp::{compatible_count, enumerate_compatible};
use leavitt::document::{ingest_str, serialize};
use leavitt::lattice::{enumerate_te, join, meet, pair_leq};
use leavitt::random::{random_graph, GraphShape};
use leavitt::scalar::Fp;
use leavitt::steinberg::{
    eval, random_element, random_point, random_word, split_element, AlgebraElement,
};
use leavitt::topology::{brute_is_clopen, is_clopen};
use leavitt::{Cardinal, Config, Graph, Rational, VertexSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn graph(seed: u64) -> Graph {
    random_graph(&mut ChaCha8Rng::seed_from_u64(seed), &GraphShape::default())
}

fn small_graph(seed: u64) -> Graph {
    let shape = GraphShape {
        max_vertices: 5,
        max_bundles: 7,
        ..GraphShape::default()
    };
    random_graph(&mut ChaCha8Rng::seed_from_u64(seed), &shape)
}

fn subset(g: &Graph, mask: u32) -> VertexSet {
    g.vertices().filter(|&v| mask & (1 << v) != 0).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn closure_is_least_hs_superset(seed in any::<u64>(), mask in any::<u32>()) {
        let g = graph(seed);
        let x = subset(&g, mask);
        let c = g.hs_closure(&x);
        prop_assert!(g.is_hereditary_saturated(&c));
        prop_assert!(x.is_subset(&c));
        prop_assert_eq!(g.hs_closure(&c), c.clone());
        for h in g.enumerate_hs(16).unwrap() {
            if x.is_subset(&h) {
                prop_assert!(c.is_subset(&h));
            }
        }
    }

    #[test]
    fn paths_never_leave_a_hereditary_set(seed in any::<u64>()) {
        let g = graph(seed);
        let family = canonical_family(&g, default_family_len(&g));
        for h in g.enumerate_hs(16).unwrap() {
            for x in &family {
                let seq: Vec<usize> = (0..x.len().unwrap_or(2 * g.vertex_count()))
                    .filter_map(|i| x.edge_at(i))
                    .map(|e| e.target(&g))
                    .collect();
                let first = std::iter::once(x.start()).chain(seq);
                let mut inside = false;
                for v in first {
                    if inside {
                        prop_assert!(h.contains(v));
                    }
                    inside |= h.contains(v);
                }
            }
        }
    }

    #[test]
    fn membership_is_shift_invariant(seed in any::<u64>()) {
        let g = graph(seed);
        let family = canonical_family(&g, default_family_len(&g));
        for p in enumerate_te(&g, &Config::default()).unwrap() {
            for x in &family {
                for n in 1..=3 {
                    if let Some(y) = x.shift(&g, n) {
                        prop_assert_eq!(p.contains(&g, x), p.contains(&g, &y), "{} shifted by {}", x.to_text(&g), n);
                    }
                }
            }
        }
    }

    #[test]
    fn documents_round_trip(seed in any::<u64>()) {
        let g = graph(seed);
        prop_assert_eq!(ingest_str(&serialize(&g)).unwrap(), g);
    }

    #[test]
    fn join_and_meet_are_bounds(seed in any::<u64>()) {
        let g = small_graph(seed);
        let te = enumerate_te(&g, &Config::default()).unwrap();
        for a in &te {
            for b in &te {
                let j = join(&g, a, b).unwrap();
                let m = meet(&g, a, b).unwrap();
                prop_assert!(pair_leq(a, &j) && pair_leq(b, &j));
                prop_assert!(pair_leq(&m, a) && pair_leq(&m, b));
                for c in &te {
                    if pair_leq(a, c) && pair_leq(b, c) {
                        prop_assert!(pair_leq(&j, c));
                    }
                    if pair_leq(c, a) && pair_leq(c, b) {
                        prop_assert!(pair_leq(c, &m));
                    }
                }
            }
        }
    }

    #[test]
    fn clopen_matches_literal_check(seed in any::<u64>()) {
        let g = graph(seed);
        for p in enumerate_te(&g, &Config::default()).unwrap() {
            prop_assert_eq!(is_clopen(&g, &p).unwrap().clopen, brute_is_clopen(&g, &p), "{}", p.to_text(&g));
        }
    }

    #[test]
    fn finite_compatible_counts_match_enumeration(seed in any::<u64>()) {
        let g = small_graph(seed);
        let cfg = Config::default();
        for h in g.enumerate_hs(16).unwrap() {
            for v in g.all_vertices().difference(&h).iter() {
                let c = compatible_count(&g, v, &h, &cfg).unwrap();
                if let Some(m) = enumerate_compatible(&g, v, &h, 100_000) {
                    prop_assert_eq!(&c.count, &Cardinal::Finite(m));
                }
            }
        }
    }

    #[test]
    fn normal_forms_are_stable_and_faithful(seed in any::<u64>()) {
        let g = graph(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: AlgebraElement<Rational> = random_element(&g, &mut rng, 4, 3, 2);
        let n = x.normalize(&g);
        prop_assert_eq!(n.normalize(&g), n.clone());
        for _ in 0..20 {
            let pt = random_point(&g, &mut rng, &x, 2);
            prop_assert_eq!(eval(&g, &x, &pt), eval(&g, &n, &pt));
        }
    }

    #[test]
    fn products_associate_mod_three(seed in any::<u64>()) {
        let g = graph(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: AlgebraElement<Fp<3>> = random_element(&g, &mut rng, 2, 2, 2);
        let b: AlgebraElement<Fp<3>> = random_word(&g, &mut rng, 3, 2);
        let c: AlgebraElement<Fp<3>> = random_element(&g, &mut rng, 2, 2, 2);
        let left = a.product(&g, &b).product(&g, &c);
        let right = a.product(&g, &b.product(&g, &c));
        prop_assert!(left.same_function(&g, &right));
        let distributes = a.product(&g, &(b.clone() + c.clone()));
        prop_assert!(distributes.same_function(&g, &(a.product(&g, &b) + a.product(&g, &c))));
    }

    #[test]
    fn splits_reassemble(seed in any::<u64>()) {
        let g = graph(seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for p in enumerate_te(&g, &Config::default()).unwrap() {
            if !is_clopen(&g, &p).unwrap().clopen {
                continue;
            }
            let f: AlgebraElement<Rational> = random_element(&g, &mut rng, 3, 3, 2);
            let (f1, f2) = split_element(&g, &f, &p).unwrap();
            prop_assert!((f1.clone() + f2.clone()).same_function(&g, &f));
            prop_assert!(f1.product(&g, &f2).is_zero(&g));
        }
    }
}
