use crate::boundary::{cylinder_disjoint, cylinder_in_union};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lattice::HSPair;
use crate::path::EdgeRef;
use crate::scalar::Scalar;
use crate::topology::is_clopen;

use super::atom::Atom;
use super::element::AlgebraElement;

/// Whether `f` lies in the graded ideal of `(H, S)`, i.e. whether the source
/// of its support lies in `U_{H,S}`.
pub fn ideal_membership<K: Scalar>(
    g: &Graph,
    a: &AlgebraElement<K>,
    pair: &HSPair,
) -> Result<bool> {
    pair.validate(g)?;
    Ok(a.normalize(g)
        .terms()
        .all(|(atom, _)| cylinder_in_union(g, &atom.source_cylinder(), pair.h(), pair.s())))
}

/// Splits `f = f₁ + f₂` with `f₁` supported over a clopen `U_{H,S}` and `f₂`
/// over its complement.
pub fn split_element<K: Scalar>(
    g: &Graph,
    a: &AlgebraElement<K>,
    pair: &HSPair,
) -> Result<(AlgebraElement<K>, AlgebraElement<K>)> {
    let verdict = is_clopen(g, pair)?;
    if !verdict.clopen {
        return Err(Error::contract(format!(
            "{} is not clopen ({})",
            pair.to_text(g),
            verdict.describe(g)
        )));
    }
    let mut inside = AlgebraElement::zero();
    let mut outside = AlgebraElement::zero();
    for (atom, c) in a.terms() {
        refine(g, atom.clone(), c, pair, 0, &mut inside, &mut outside)?;
    }
    Ok((inside, outside))
}

fn refine<K: Scalar>(
    g: &Graph,
    atom: Atom,
    c: &K,
    pair: &HSPair,
    depth: usize,
    inside: &mut AlgebraElement<K>,
    outside: &mut AlgebraElement<K>,
) -> Result<()> {
    let (h, s) = (pair.h(), pair.s());
    let source = atom.source_cylinder();
    if cylinder_in_union(g, &source, h, s) {
        inside.add_term(atom, c.clone());
        return Ok(());
    }
    if cylinder_disjoint(g, &source, h, s) {
        outside.add_term(atom, c.clone());
        return Ok(());
    }
    if depth > g.vertex_count() {
        return Err(Error::invariant(format!(
            "refinement of {} against {} does not terminate",
            atom.to_text(g),
            pair.to_text(g)
        )));
    }
    let w = atom.nu().range(g);
    let mut explicit = atom.excluded().clone();
    for &b in g.out_bundles(w) {
        let Some(m) = g.bundle(b).multiplicity.to_cardinal().to_u64() else {
            continue;
        };
        for i in 0..m {
            let e = EdgeRef::new(b, i);
            if explicit.insert(e) {
                let child = Atom::from_parts(
                    atom.mu().push(g, e).expect("edge at the range"),
                    atom.nu().push(g, e).expect("edge at the range"),
                    Default::default(),
                );
                refine(g, child, c, pair, depth + 1, inside, outside)?;
            }
        }
    }
    if g.is_regular(w) {
        return Ok(());
    }
    let rest = Atom::from_parts(atom.mu().clone(), atom.nu().clone(), explicit);
    let cyl = rest.source_cylinder();
    if cylinder_in_union(g, &cyl, h, s) {
        inside.add_term(rest, c.clone());
    } else if cylinder_disjoint(g, &cyl, h, s) {
        outside.add_term(rest, c.clone());
    } else {
        return Err(Error::invariant(format!(
            "{} meets both {} and its complement",
            rest.to_text(g),
            pair.to_text(g)
        )));
    }
    Ok(())
}
