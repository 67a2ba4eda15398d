use std::collections::{BTreeSet, HashMap};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::path::{BoundaryPath, EdgeRef, FinitePath};
use crate::scalar::Scalar;
use crate::vertex_set::VertexId;

use super::atom::Atom;
use super::element::AlgebraElement;

/// A groupoid element `(x, k, y)` with `σᵐ(x) = σⁿ(y)` for some `m − n = k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupoidPoint {
    x: BoundaryPath,
    k: i64,
    y: BoundaryPath,
}

fn horizon(x: &BoundaryPath) -> usize {
    match x {
        BoundaryPath::Finite(p) => p.len(),
        BoundaryPath::Lasso { stem, cycle } => stem.len() + cycle.len(),
    }
}

impl GroupoidPoint {
    pub fn new(g: &Graph, x: BoundaryPath, k: i64, y: BoundaryPath) -> Result<Self> {
        let bound = horizon(&x) + horizon(&y) + k.unsigned_abs() as usize + 1;
        let ok = (0..=bound).any(|n| {
            let m = n as i64 + k;
            m >= 0 && {
                match (x.shift(g, m as usize), y.shift(g, n)) {
                    (Some(a), Some(b)) => a == b,
                    _ => false,
                }
            }
        });
        if !ok {
            return Err(Error::input(format!(
                "({}, {k}, {}) is not a groupoid element",
                x.to_text(g),
                y.to_text(g)
            )));
        }
        Ok(GroupoidPoint { x, k, y })
    }

    /// The unit `(x, 0, x)`.
    pub fn unit(x: BoundaryPath) -> Self {
        GroupoidPoint {
            y: x.clone(),
            k: 0,
            x,
        }
    }

    pub fn x(&self) -> &BoundaryPath {
        &self.x
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn y(&self) -> &BoundaryPath {
        &self.y
    }

    /// `(μz, |μ|−|ν|, νz)`.
    pub fn in_atom(g: &Graph, atom: &Atom, tail: &BoundaryPath) -> Result<Self> {
        Ok(GroupoidPoint {
            x: tail.prepend(g, atom.mu())?,
            k: atom.degree(),
            y: tail.prepend(g, atom.nu())?,
        })
    }

    pub fn to_text(&self, g: &Graph) -> String {
        format!("({}, {}, {})", self.x.to_text(g), self.k, self.y.to_text(g))
    }
}

/// Whether the point lies in the bisection.
pub fn atom_contains(g: &Graph, atom: &Atom, pt: &GroupoidPoint) -> bool {
    if pt.k != atom.degree() {
        return false;
    }
    let (Some(zx), Some(zy)) = (
        pt.x.strip_prefix(g, atom.mu()),
        pt.y.strip_prefix(g, atom.nu()),
    ) else {
        return false;
    };
    zx == zy && zx.edge_at(0).is_none_or(|e| !atom.excluded().contains(&e))
}

/// `f(γ)`.
pub fn eval<K: Scalar>(g: &Graph, a: &AlgebraElement<K>, pt: &GroupoidPoint) -> K {
    a.terms()
        .filter(|(atom, _)| atom_contains(g, atom, pt))
        .fold(K::zero(), |acc, (_, c)| acc + c.clone())
}

/// A random boundary path from `start` whose first edge avoids `excluded`.
/// ω bundles are sampled at indices below `omega_samples + 2`. Returns
/// `None` when the cylinder is empty.
pub fn random_tail<R: Rng>(
    g: &Graph,
    rng: &mut R,
    start: VertexId,
    excluded: &BTreeSet<EdgeRef>,
    omega_samples: u64,
) -> Option<BoundaryPath> {
    let mut edges: Vec<EdgeRef> = Vec::new();
    let mut first_visit: HashMap<VertexId, usize> = HashMap::from([(start, 0)]);
    let mut at = start;
    loop {
        let stop_here = !g.is_regular(at) && (g.is_sink(at) || rng.gen_bool(0.3));
        if stop_here {
            return Some(BoundaryPath::Finite(FinitePath::from_parts_unchecked(
                start, edges,
            )));
        }
        let mut choices: Vec<EdgeRef> = Vec::new();
        for &b in g.out_bundles(at) {
            let count = g
                .bundle(b)
                .multiplicity
                .to_cardinal()
                .to_u64()
                .unwrap_or(omega_samples + 2);
            for i in 0..count.min(omega_samples + 2) {
                let e = EdgeRef::new(b, i);
                if !(edges.is_empty() && excluded.contains(&e)) {
                    choices.push(e);
                }
            }
        }
        let Some(&e) = choices.choose(rng) else {
            if edges.is_empty() && !g.is_regular(at) {
                return Some(BoundaryPath::Finite(FinitePath::trivial(start)));
            }
            return None;
        };
        edges.push(e);
        at = e.target(g);
        if let Some(&pos) = first_visit.get(&at) {
            let stem = FinitePath::from_parts_unchecked(start, edges[..pos].to_vec());
            let cycle = FinitePath::from_parts_unchecked(at, edges[pos..].to_vec());
            return Some(BoundaryPath::lasso(g, stem, cycle).expect("closed walk"));
        }
        first_visit.insert(at, edges.len());
    }
}

/// A random point of a random atom of `a`, or of a random vertex cylinder
/// when `a` has no terms.
pub fn random_point<K: Scalar, R: Rng>(
    g: &Graph,
    rng: &mut R,
    a: &AlgebraElement<K>,
    omega_samples: u64,
) -> GroupoidPoint {
    let atoms: Vec<&Atom> = a.terms().map(|(atom, _)| atom).collect();
    for _ in 0..16 {
        if let Some(atom) = atoms.choose(rng) {
            let w = atom.mu().range(g);
            if let Some(tail) = random_tail(g, rng, w, atom.excluded(), omega_samples) {
                return GroupoidPoint::in_atom(g, atom, &tail).expect("tail starts at the range");
            }
        }
    }
    random_unit(g, rng, omega_samples)
}

/// A random unit `(x, 0, x)`.
pub fn random_unit<R: Rng>(g: &Graph, rng: &mut R, omega_samples: u64) -> GroupoidPoint {
    loop {
        let v = rng.gen_range(0..g.vertex_count());
        if let Some(x) = random_tail(g, rng, v, &BTreeSet::new(), omega_samples) {
            return GroupoidPoint::unit(x);
        }
    }
}
