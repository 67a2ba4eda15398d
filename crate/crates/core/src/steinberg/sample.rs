use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Graph;
use crate::scalar::Scalar;

use super::element::AlgebraElement;
use super::generators::{pi_generator, sampled_edges, Generator};

/// Vertices, sampled edges and their ghosts.
fn generators(g: &Graph, omega_samples: u64) -> Vec<Generator> {
    let edges = sampled_edges(g, omega_samples).unwrap_or_default();
    g.vertices()
        .map(Generator::Vertex)
        .chain(edges.iter().map(|&e| Generator::Edge(e)))
        .chain(edges.iter().map(|&e| Generator::Ghost(e)))
        .collect()
}

/// Product of `1..=max_len` random generators.
pub fn random_word<K: Scalar, R: Rng>(
    g: &Graph,
    rng: &mut R,
    max_len: usize,
    omega_samples: u64,
) -> AlgebraElement<K> {
    let gens = generators(g, omega_samples);
    let len = rng.gen_range(1..=max_len.max(1));
    let mut out: Option<AlgebraElement<K>> = None;
    for _ in 0..len {
        let x = pi_generator(g, gens.choose(rng).expect("graphs have vertices"))
            .expect("sampled generator");
        out = Some(match out {
            None => x,
            Some(acc) => acc.product(g, &x),
        });
    }
    out.expect("at least one factor")
}

/// Sum of `1..=max_terms` random words with coefficients in `-3..=3`.
pub fn random_element<K: Scalar, R: Rng>(
    g: &Graph,
    rng: &mut R,
    max_terms: usize,
    max_len: usize,
    omega_samples: u64,
) -> AlgebraElement<K> {
    let terms = rng.gen_range(1..=max_terms.max(1));
    (0..terms).fold(AlgebraElement::zero(), |acc, _| {
        let c = K::from_i64(rng.gen_range(-3..=3));
        acc + random_word(g, rng, max_len, omega_samples).scale(&c)
    })
}
