use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::path::{Cylinder, EdgeRef, FinitePath};

/// The compact open bisection `Z((μ,ν)∖F)`, viewed as its indicator
/// function.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Atom {
    mu: FinitePath,
    nu: FinitePath,
    excluded: BTreeSet<EdgeRef>,
}

impl Atom {
    pub fn new(
        g: &Graph,
        mu: FinitePath,
        nu: FinitePath,
        excluded: BTreeSet<EdgeRef>,
    ) -> Result<Self> {
        let end = mu.range(g);
        if nu.range(g) != end {
            return Err(Error::input(format!(
                "{} and {} end at different vertices",
                mu.to_text(g),
                nu.to_text(g)
            )));
        }
        Cylinder::new(g, nu.clone(), excluded.clone())?;
        Ok(Atom { mu, nu, excluded })
    }

    pub(crate) fn from_parts(mu: FinitePath, nu: FinitePath, excluded: BTreeSet<EdgeRef>) -> Self {
        Atom { mu, nu, excluded }
    }

    /// `Z((μ,ν))`.
    pub fn span(g: &Graph, mu: FinitePath, nu: FinitePath) -> Result<Self> {
        Atom::new(g, mu, nu, BTreeSet::new())
    }

    pub fn mu(&self) -> &FinitePath {
        &self.mu
    }

    pub fn nu(&self) -> &FinitePath {
        &self.nu
    }

    pub fn excluded(&self) -> &BTreeSet<EdgeRef> {
        &self.excluded
    }

    /// `|μ| − |ν|`.
    pub fn degree(&self) -> i64 {
        self.mu.len() as i64 - self.nu.len() as i64
    }

    /// The source set `Z(ν∖F)` in the unit space.
    pub fn source_cylinder(&self) -> Cylinder {
        Cylinder {
            base: self.nu.clone(),
            excluded: self.excluded.clone(),
        }
    }

    /// The range set `Z(μ∖F)` in the unit space.
    pub fn range_cylinder(&self) -> Cylinder {
        Cylinder {
            base: self.mu.clone(),
            excluded: self.excluded.clone(),
        }
    }

    /// The inverse bisection `Z((ν,μ)∖F)`.
    pub fn inverse(&self) -> Atom {
        Atom {
            mu: self.nu.clone(),
            nu: self.mu.clone(),
            excluded: self.excluded.clone(),
        }
    }

    /// The product of two bisections, itself a bisection of the same form or
    /// empty.
    pub fn product(&self, g: &Graph, other: &Atom) -> Option<Atom> {
        let (mu, nu, f) = (&self.mu, &self.nu, &self.excluded);
        let (alpha, beta, f2) = (&other.mu, &other.nu, &other.excluded);
        if nu.is_prefix_of(alpha) {
            let zeta = alpha.strip_prefix(g, nu).expect("prefix");
            return match zeta.edges().first() {
                None => Some(Atom {
                    mu: mu.clone(),
                    nu: beta.clone(),
                    excluded: f.union(f2).copied().collect(),
                }),
                Some(first) if f.contains(first) => None,
                Some(_) => Some(Atom {
                    mu: mu.concat(g, &zeta).expect("chains at r(ν)"),
                    nu: beta.clone(),
                    excluded: f2.clone(),
                }),
            };
        }
        if alpha.is_prefix_of(nu) {
            let zeta = nu.strip_prefix(g, alpha).expect("prefix");
            let first = zeta.edges().first().expect("ν strictly longer");
            if f2.contains(first) {
                return None;
            }
            return Some(Atom {
                mu: mu.clone(),
                nu: beta.concat(g, &zeta).expect("chains at r(α)"),
                excluded: f.clone(),
            });
        }
        None
    }

    pub fn to_text(&self, g: &Graph) -> String {
        let mut out = format!("Z({} ; {})", self.mu.to_text(g), self.nu.to_text(g));
        if !self.excluded.is_empty() {
            let f: Vec<String> = self.excluded.iter().map(|e| e.to_text(g)).collect();
            out = format!("{out}\\{{{}}}", f.join(","));
        }
        out
    }
}
