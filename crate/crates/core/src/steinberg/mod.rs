//! The Steinberg algebra of the boundary-path groupoid: exact linear
//! combinations of bisection indicators, their convolution, canonical forms,
//! evaluation, and the graded ideals attached to pairs `(H, S)`.

mod atom;
mod element;
mod generators;
mod ideal;
mod point;
mod sample;

pub use atom::Atom;
pub use element::AlgebraElement;
pub use generators::{
    breaking_edges, pi_generator, sampled_edges, verify_relations, Generator, RelationsReport,
    MAX_ENUMERATED_MULTIPLICITY,
};
pub use ideal::{ideal_membership, split_element};
pub use point::{atom_contains, eval, random_point, random_tail, random_unit, GroupoidPoint};
pub use sample::{random_element, random_word};
