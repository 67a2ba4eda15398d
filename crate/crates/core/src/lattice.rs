//! The lattice of admissible pairs `(H, S)` and its isomorphism onto open
//! invariant subsets of the boundary-path space.

use serde::Serialize;

use crate::boundary::{
    canonical_family, cylinder_in_union, default_family_len, in_union, InvariantSet,
};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::path::{BoundaryPath, Cylinder, FinitePath};
use crate::vertex_set::VertexSet;

/// A pair `(H, S)` with `H` hereditary saturated and `S ⊆ B_H`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HSPair {
    h: VertexSet,
    s: VertexSet,
}

impl HSPair {
    pub fn new(g: &Graph, h: VertexSet, s: VertexSet) -> Result<Self> {
        let pair = HSPair { h, s };
        pair.validate(g)?;
        Ok(pair)
    }

    /// A pair that has not been checked against any graph.
    pub fn unchecked(h: VertexSet, s: VertexSet) -> Self {
        HSPair { h, s }
    }

    /// `(∅, ∅)`.
    pub fn bottom() -> Self {
        HSPair::unchecked(VertexSet::new(), VertexSet::new())
    }

    /// `(E⁰, ∅)`.
    pub fn top(g: &Graph) -> Self {
        HSPair::unchecked(g.all_vertices(), VertexSet::new())
    }

    pub fn h(&self) -> &VertexSet {
        &self.h
    }

    pub fn s(&self) -> &VertexSet {
        &self.s
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        g.check_set(&self.h)?;
        g.check_set(&self.s)?;
        if !g.is_hereditary_saturated(&self.h) {
            return Err(Error::contract(format!(
                "{} is not hereditary and saturated",
                g.format_set(&self.h)
            )));
        }
        let breaking = g.breaking_vertices(&self.h);
        if !self.s.is_subset(&breaking) {
            return Err(Error::contract(format!(
                "{} is not contained in B_H = {}",
                g.format_set(&self.s),
                g.format_set(&breaking)
            )));
        }
        Ok(())
    }

    /// `U_{H,S}` is nonempty.
    pub fn is_nonempty(&self) -> bool {
        !self.h.is_empty() || !self.s.is_empty()
    }

    pub fn to_text(&self, g: &Graph) -> String {
        format!("H={};S={}", g.format_set(&self.h), g.format_set(&self.s))
    }
}

/// `(H₁,S₁) ≤ (H₂,S₂)` iff `H₁ ⊆ H₂` and `S₁ ⊆ S₂ ∪ H₂`.
pub fn pair_leq(a: &HSPair, b: &HSPair) -> bool {
    a.h.is_subset(&b.h) && a.s.is_subset(&b.s.union(&b.h))
}

/// Same as [`pair_leq`], after checking both pairs against `g`.
pub fn pair_leq_in(g: &Graph, a: &HSPair, b: &HSPair) -> Result<bool> {
    a.validate(g)
        .and_then(|_| b.validate(g))
        .map_err(|e| Error::input(format!("pair not valid for this graph: {e}")))?;
    Ok(pair_leq(a, b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Union,
    Intersection,
}

/// A one-level union or intersection of sets `U_{Hᵢ,Sᵢ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantOpen {
    shape: Shape,
    components: Vec<HSPair>,
}

impl InvariantOpen {
    pub fn new(shape: Shape, components: Vec<HSPair>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::input(
                "an invariant open set needs at least one component",
            ));
        }
        Ok(InvariantOpen { shape, components })
    }

    pub fn single(pair: HSPair) -> Self {
        InvariantOpen {
            shape: Shape::Union,
            components: vec![pair],
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn components(&self) -> &[HSPair] {
        &self.components
    }

    fn union_parts(&self) -> (VertexSet, VertexSet) {
        self.components
            .iter()
            .fold((VertexSet::new(), VertexSet::new()), |(h, s), p| {
                (h.union(p.h()), s.union(p.s()))
            })
    }
}

impl InvariantSet for InvariantOpen {
    fn contains(&self, g: &Graph, x: &BoundaryPath) -> bool {
        match self.shape {
            Shape::Union => self.components.iter().any(|p| p.contains(g, x)),
            Shape::Intersection => self.components.iter().all(|p| p.contains(g, x)),
        }
    }

    fn contains_cylinder(&self, g: &Graph, c: &Cylinder) -> bool {
        match self.shape {
            Shape::Union => {
                let (h, s) = self.union_parts();
                cylinder_in_union(g, c, &h, &s)
            }
            Shape::Intersection => self.components.iter().all(|p| p.contains_cylinder(g, c)),
        }
    }
}

/// All pairs `(H, S)`, ordered by `H` (size, then lexicographic) and then `S`.
pub fn enumerate_te(g: &Graph, config: &Config) -> Result<Vec<HSPair>> {
    let mut out = Vec::new();
    for h in g.enumerate_hs(config.vertex_cap)? {
        let breaking = g.breaking_vertices(&h);
        if breaking.len() > config.breaking_cap.min(20) {
            return Err(Error::Resource {
                what: format!("breaking vertices of {}", g.format_set(&h)),
                cap: config.breaking_cap.min(20),
            });
        }
        for s in breaking.subsets() {
            out.push(HSPair::unchecked(h.clone(), s));
        }
    }
    Ok(out)
}

/// `φ(H,S) = U_{H,S}`.
pub fn phi(g: &Graph, pair: &HSPair) -> Result<InvariantOpen> {
    pair.validate(g)?;
    Ok(InvariantOpen::single(pair.clone()))
}

/// `ρ(U) = (H_U, S_U)` with `H_U = {v : Z(v) ⊆ U}` and `S_U` the infinite
/// emitters outside `H_U` whose trivial path lies in `U`.
pub fn rho(g: &Graph, u: &dyn InvariantSet) -> Result<HSPair> {
    let h: VertexSet = g
        .vertices()
        .filter(|&v| u.contains_cylinder(g, &Cylinder::vertex(v)))
        .collect();
    let s: VertexSet = g
        .vertices()
        .filter(|&w| g.is_infinite_emitter(w) && !h.contains(w))
        .filter(|&w| u.contains(g, &BoundaryPath::Finite(FinitePath::trivial(w))))
        .collect();
    HSPair::new(g, h, s).map_err(|e| Error::invariant(format!("ρ produced an invalid pair: {e}")))
}

fn least_of(candidates: &[&HSPair]) -> Option<HSPair> {
    candidates
        .iter()
        .find(|c| candidates.iter().all(|d| pair_leq(c, d)))
        .map(|c| (*c).clone())
}

fn greatest_of(candidates: &[&HSPair]) -> Option<HSPair> {
    candidates
        .iter()
        .find(|c| candidates.iter().all(|d| pair_leq(d, c)))
        .map(|c| (*c).clone())
}

fn cross_check(g: &Graph, computed: &HSPair, expected: Option<HSPair>, what: &str) -> Result<()> {
    match expected {
        Some(e) if &e == computed => Ok(()),
        other => Err(Error::invariant(format!(
            "{what} via ρ is {} but the order-theoretic bound is {}",
            computed.to_text(g),
            other.map_or_else(|| "missing".to_string(), |p| p.to_text(g))
        ))),
    }
}

/// `a ∨ b = ρ(U_a ∪ U_b)`, cross-checked against the least upper bound in the
/// enumerated lattice when the graph is small enough.
pub fn join(g: &Graph, a: &HSPair, b: &HSPair) -> Result<HSPair> {
    a.validate(g)?;
    b.validate(g)?;
    let result = rho(
        g,
        &InvariantOpen::new(Shape::Union, vec![a.clone(), b.clone()])?,
    )?;
    if let Ok(all) = enumerate_te(g, &Config::default()) {
        let ubs: Vec<&HSPair> = all
            .iter()
            .filter(|c| pair_leq(a, c) && pair_leq(b, c))
            .collect();
        cross_check(g, &result, least_of(&ubs), "join")?;
    }
    Ok(result)
}

/// `a ∧ b = ρ(U_a ∩ U_b)`, cross-checked like [`join`].
pub fn meet(g: &Graph, a: &HSPair, b: &HSPair) -> Result<HSPair> {
    a.validate(g)?;
    b.validate(g)?;
    let result = rho(
        g,
        &InvariantOpen::new(Shape::Intersection, vec![a.clone(), b.clone()])?,
    )?;
    if let Ok(all) = enumerate_te(g, &Config::default()) {
        let lbs: Vec<&HSPair> = all
            .iter()
            .filter(|c| pair_leq(c, a) && pair_leq(c, b))
            .collect();
        cross_check(g, &result, greatest_of(&lbs), "meet")?;
    }
    Ok(result)
}

/// The enumerated lattice with its order, join and meet tables.
#[derive(Debug, Clone)]
pub struct PairLattice {
    pub elements: Vec<HSPair>,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
}

impl PairLattice {
    /// Enumerates the lattice and tabulates join and meet through ρ. Every
    /// entry is checked against the order-theoretic bound.
    pub fn build(g: &Graph, config: &Config) -> Result<Self> {
        let elements = enumerate_te(g, config)?;
        let n = elements.len();
        let index = |p: &HSPair| {
            elements.iter().position(|q| q == p).ok_or_else(|| {
                Error::invariant(format!("{} missing from enumeration", p.to_text(g)))
            })
        };
        let leq: Vec<Vec<bool>> = elements
            .iter()
            .map(|a| elements.iter().map(|b| pair_leq(a, b)).collect())
            .collect();
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i..n {
                let pair = vec![elements[i].clone(), elements[j].clone()];
                let jn = index(&rho(g, &InvariantOpen::new(Shape::Union, pair.clone())?)?)?;
                let mt = index(&rho(g, &InvariantOpen::new(Shape::Intersection, pair)?)?)?;
                let ubs: Vec<usize> = (0..n).filter(|&k| leq[i][k] && leq[j][k]).collect();
                let lbs: Vec<usize> = (0..n).filter(|&k| leq[k][i] && leq[k][j]).collect();
                let least = ubs
                    .iter()
                    .copied()
                    .find(|&k| ubs.iter().all(|&m| leq[k][m]));
                let greatest = lbs
                    .iter()
                    .copied()
                    .find(|&k| lbs.iter().all(|&m| leq[m][k]));
                cross_check(g, &elements[jn], least.map(|k| elements[k].clone()), "join")?;
                cross_check(
                    g,
                    &elements[mt],
                    greatest.map(|k| elements[k].clone()),
                    "meet",
                )?;
                join[i][j] = jn;
                join[j][i] = jn;
                meet[i][j] = mt;
                meet[j][i] = mt;
            }
        }
        Ok(PairLattice {
            elements,
            leq,
            join,
            meet,
        })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    /// Covering relations `i ⋖ j` as index pairs.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j
                    && self.leq[i][j]
                    && !(0..n).any(|k| k != i && k != j && self.leq[i][k] && self.leq[k][j])
                {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

/// Outcome of one named verification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Default for Check {
    fn default() -> Self {
        Check::new()
    }
}

impl Check {
    const MAX_FAILURES: usize = 8;

    pub fn new() -> Self {
        Check {
            passed: true,
            cases: 0,
            failures: Vec::new(),
        }
    }

    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.passed = false;
            if self.failures.len() < Self::MAX_FAILURES {
                self.failures.push(witness());
            }
        }
    }

    pub fn fail(&mut self, witness: String) {
        self.record(false, || witness);
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeReport {
    pub pairs: usize,
    pub family_size: usize,
    pub rho_phi_identity: Check,
    pub order_preservation: Check,
    pub injectivity: Check,
    pub lattice_axioms: Check,
    pub transport: Check,
}

impl LatticeReport {
    pub fn passed(&self) -> bool {
        [
            &self.rho_phi_identity,
            &self.order_preservation,
            &self.injectivity,
            &self.lattice_axioms,
            &self.transport,
        ]
        .iter()
        .all(|c| c.passed)
    }
}

/// Membership of each family point, packed into words.
fn membership_vector(g: &Graph, u: &dyn InvariantSet, family: &[BoundaryPath]) -> Vec<u64> {
    let mut bits = vec![0u64; family.len().div_ceil(64)];
    for (i, x) in family.iter().enumerate() {
        if u.contains(g, x) {
            bits[i / 64] |= 1 << (i % 64);
        }
    }
    bits
}

fn bits_subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn first_difference(family: &[BoundaryPath], a: &[u64], b: &[u64]) -> Option<usize> {
    (0..family.len()).find(|&i| (a[i / 64] ^ b[i / 64]) & (1 << (i % 64)) != 0)
}

/// Checks that φ and ρ are mutually inverse order isomorphisms and that the
/// tabulated join and meet satisfy the lattice axioms.
pub fn verify_lattice_iso(g: &Graph, config: &Config) -> Result<LatticeReport> {
    let lattice = PairLattice::build(g, config)?;
    let family = canonical_family(g, default_family_len(g));
    let elems = &lattice.elements;
    let n = elems.len();

    let mut rho_phi_identity = Check::new();
    for a in elems {
        let back = rho(g, &phi(g, a)?)?;
        rho_phi_identity.record(&back == a, || {
            format!("ρ(φ({})) = {}", a.to_text(g), back.to_text(g))
        });
    }

    let vectors: Vec<Vec<u64>> = elems
        .iter()
        .map(|a| membership_vector(g, a, &family))
        .collect();

    let mut order_preservation = Check::new();
    let mut injectivity = Check::new();
    for i in 0..n {
        for j in 0..n {
            let pointwise = bits_subset(&vectors[i], &vectors[j]);
            order_preservation.record(lattice.leq(i, j) == pointwise, || {
                format!(
                    "{} ≤ {} is {} but pointwise inclusion is {}",
                    elems[i].to_text(g),
                    elems[j].to_text(g),
                    lattice.leq(i, j),
                    pointwise
                )
            });
            if i < j {
                injectivity.record(vectors[i] != vectors[j], || {
                    format!(
                        "{} and {} have the same members",
                        elems[i].to_text(g),
                        elems[j].to_text(g)
                    )
                });
            }
        }
    }
    if n == 1 {
        injectivity.record(true, String::new);
    }

    let mut transport = Check::new();
    for i in 0..n {
        for j in 0..n {
            let union: Vec<u64> = vectors[i]
                .iter()
                .zip(&vectors[j])
                .map(|(a, b)| a | b)
                .collect();
            let inter: Vec<u64> = vectors[i]
                .iter()
                .zip(&vectors[j])
                .map(|(a, b)| a & b)
                .collect();
            let jn = lattice.join(i, j);
            let mt = lattice.meet(i, j);
            transport.record(vectors[jn] == union, || {
                let k = first_difference(&family, &vectors[jn], &union).unwrap_or(0);
                format!(
                    "φ({} ∨ {}) differs from the union at {}",
                    elems[i].to_text(g),
                    elems[j].to_text(g),
                    family[k].to_text(g)
                )
            });
            transport.record(vectors[mt] == inter, || {
                let k = first_difference(&family, &vectors[mt], &inter).unwrap_or(0);
                format!(
                    "φ({} ∧ {}) differs from the intersection at {}",
                    elems[i].to_text(g),
                    elems[j].to_text(g),
                    family[k].to_text(g)
                )
            });
        }
    }

    let mut lattice_axioms = Check::new();
    let name = |i: usize| elems[i].to_text(g);
    for i in 0..n {
        lattice_axioms.record(lattice.join(i, i) == i && lattice.meet(i, i) == i, || {
            format!("idempotence fails at {}", name(i))
        });
        for j in 0..n {
            lattice_axioms.record(
                lattice.join(i, j) == lattice.join(j, i)
                    && lattice.meet(i, j) == lattice.meet(j, i),
                || format!("commutativity fails at {}, {}", name(i), name(j)),
            );
            lattice_axioms.record(
                lattice.join(i, lattice.meet(i, j)) == i
                    && lattice.meet(i, lattice.join(i, j)) == i,
                || format!("absorption fails at {}, {}", name(i), name(j)),
            );
            for k in 0..n {
                let ok = lattice.join(lattice.join(i, j), k) == lattice.join(i, lattice.join(j, k))
                    && lattice.meet(lattice.meet(i, j), k) == lattice.meet(i, lattice.meet(j, k));
                if !ok {
                    lattice_axioms.fail(format!(
                        "associativity fails at {}, {}, {}",
                        name(i),
                        name(j),
                        name(k)
                    ));
                }
            }
        }
    }
    lattice_axioms.cases += n * n * n;

    Ok(LatticeReport {
        pairs: n,
        family_size: family.len(),
        rho_phi_identity,
        order_preservation,
        injectivity,
        lattice_axioms,
        transport,
    })
}

/// Hasse diagram of `(𝒯_E, ≤)` in DOT.
pub fn hasse_dot(g: &Graph, lattice: &PairLattice) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
    for (i, p) in lattice.elements.iter().enumerate() {
        out.push_str(&format!("  n{i} [label=\"{}\"];\n", p.to_text(g)));
    }
    for (i, j) in lattice.covers() {
        out.push_str(&format!("  n{i} -> n{j};\n"));
    }
    out.push_str("}\n");
    out
}

/// Membership in a one-level union via the merged `(⋃H, ⋃S)` description.
pub fn union_contains(g: &Graph, components: &[HSPair], x: &BoundaryPath) -> bool {
    let (h, s) = components
        .iter()
        .fold((VertexSet::new(), VertexSet::new()), |(h, s), p| {
            (h.union(p.h()), s.union(p.s()))
        });
    in_union(g, &h, &s, x)
}
