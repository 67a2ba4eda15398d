//! Seeded random graphs for fuzzing.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::cardinal::Multiplicity;
use crate::graph::Graph;

/// Shape parameters for [`random_graph`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphShape {
    pub max_vertices: usize,
    pub max_bundles: usize,
    pub omega_probability: f64,
    pub max_finite_multiplicity: u64,
}

impl Default for GraphShape {
    fn default() -> Self {
        GraphShape {
            max_vertices: 8,
            max_bundles: 10,
            omega_probability: 0.2,
            max_finite_multiplicity: 3,
        }
    }
}

/// A graph with `1..=max_vertices` vertices named `v0, v1, …` and
/// `0..=max_bundles` bundles named `e0, e1, …` with uniform endpoints.
pub fn random_graph<R: Rng>(rng: &mut R, shape: &GraphShape) -> Graph {
    let n = rng.gen_range(1..=shape.max_vertices.max(1));
    let m = rng.gen_range(0..=shape.max_bundles);
    let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let bundles: Vec<(String, String, String, Multiplicity)> = (0..m)
        .map(|j| {
            let s = rng.gen_range(0..n);
            let t = rng.gen_range(0..n);
            let mult = if rng.gen_bool(shape.omega_probability) {
                Multiplicity::Omega
            } else {
                let k = rng.gen_range(1..=shape.max_finite_multiplicity.max(1));
                Multiplicity::finite(k).expect("positive")
            };
            (
                format!("e{j}"),
                vertices[s].clone(),
                vertices[t].clone(),
                mult,
            )
        })
        .collect();
    Graph::new(vertices.clone(), bundles).expect("generated names are valid")
}

/// `count` graphs drawn from a ChaCha8 stream seeded with `seed`.
pub fn fuzz_corpus(seed: u64, count: usize, shape: &GraphShape) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_graph(&mut rng, shape)).collect()
}
