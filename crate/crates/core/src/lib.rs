//! Combinatorial analysis of Leavitt path algebras of bundle-graphs: the
//! lattice of admissible pairs, invariant open subsets of the boundary-path
//! space, clopen and decomposition criteria, and exact Steinberg-algebra
//! arithmetic.

pub mod boundary;
pub mod cardinal;
pub mod config;
pub mod decomp;
pub mod document;
pub mod dot;
pub mod error;
pub mod expr;
pub mod fixtures;
pub mod graph;
pub mod lattice;
pub mod path;
pub mod random;
pub mod report;
pub mod scalar;
pub mod selfcheck;
pub mod steinberg;
pub mod topology;
pub mod vertex_set;

pub use cardinal::{Cardinal, Multiplicity};
pub use config::Config;
pub use error::{Error, Result};
pub use graph::{Bundle, BundleId, Graph, VertexKind};
pub use lattice::{HSPair, InvariantOpen, Shape};
pub use path::{BoundaryPath, Cylinder, EdgeRef, FinitePath};
pub use vertex_set::{VertexId, VertexSet};

/// Exact rational coefficients.
pub type Rational = num_rational::BigRational;
/// Algebra elements over the rationals.
pub type RationalElement = steinberg::AlgebraElement<Rational>;
/// Algebra elements over `𝔽_p`.
pub type PrimeElement<const P: u64> = steinberg::AlgebraElement<scalar::Fp<P>>;
