//! Expansion of the finite coproduct and finite wide pushout macros into
//! the four primitive rules.

use alloc::format;
use alloc::vec::Vec;

use super::check::{run, ProofError};
use super::proof::{Proof, ProofTerm};
use crate::category::{Arrow, Category, MorphismSet};

/// Replaces every macro in `p` by a primitive derivation of the same
/// conclusion. The result checks against the same `hs`.
pub fn elaborate<C: Category>(
    cat: &C,
    hs: &MorphismSet<C::Mor>,
    p: &Proof<C>,
) -> Result<Proof<C>, ProofError> {
    run(cat, hs, p).map(|(t, _)| t)
}

type Part<C> = (Proof<C>, <C as Category>::Mor);

/// `h_1 + ... + h_n` from already elaborated premises.
///
/// Two summands go through two pushout squares and a composition:
/// `h_1 + h_2 = (id + h_2) ∘ (h_1 + id)`. The apex built that way lists
/// the second codomain first, so the result is re-indexed onto the
/// canonical coproduct by the comparison isomorphism `σ`, which is itself
/// derived as `Cancel(id, σ, σ⁻¹)`. Longer lists fold from the left.
pub(crate) fn elaborate_coprod<C: Category>(
    cat: &C,
    parts: Vec<Part<C>>,
) -> Result<Part<C>, ProofError> {
    let mut parts = parts.into_iter();
    let Some(mut acc) = parts.next() else {
        let apex = cat.coproduct(&[])?.apex;
        let id = cat.identity(&apex)?;
        return Ok((ProofTerm::Identity(apex), id));
    };
    for next in parts {
        acc = binary_coprod(cat, acc, next)?;
    }
    Ok(acc)
}

fn binary_coprod<C: Category>(
    cat: &C,
    (t1, g1): Part<C>,
    (t2, g2): Part<C>,
) -> Result<Part<C>, ProofError> {
    let dom = cat.coproduct(&[g1.dom().clone(), g2.dom().clone()])?;
    let (i1, i2) = (&dom.injections[0], &dom.injections[1]);

    // h_1 + id
    let first = cat.pushout(&g1, i1)?;
    let c1 = first.h_prime.clone();
    let s1 = ProofTerm::push(t1, i1.clone());

    // id + h_2, pushed along the second summand's inclusion
    let j = cat.compose(&c1, i2)?;
    let second = cat.pushout(&g2, &j)?;
    let c2 = second.h_prime.clone();
    let s2 = ProofTerm::push(t2, j.clone());

    let composite = cat.compose(&c2, &c1)?;
    let canonical = cat.coproduct_morphism(&[g1.clone(), g2.clone()])?;
    let term = ProofTerm::compose(s2, s1);
    if composite == canonical {
        return Ok((term, composite));
    }

    let cod = cat.coproduct(&[g1.cod().clone(), g2.cod().clone()])?;
    let m1 = cat.pushout_mediator(&g1, i1, &cod.injections[0], &canonical)?;
    let sigma = cat.pushout_mediator(&g2, &j, &cod.injections[1], &m1)?;
    let inverse = cat.inverse(&sigma).ok_or_else(|| {
        ProofError::MacroShape(format!("comparison map {sigma:?} is not invertible"))
    })?;
    let reindexed = cat.compose(&sigma, &composite)?;
    if reindexed != canonical {
        return Err(ProofError::MacroShape(format!(
            "re-indexed coproduct {reindexed:?} differs from {canonical:?}"
        )));
    }
    let apex = c2.cod().clone();
    let iso = ProofTerm::cancel(ProofTerm::Identity(apex), sigma, inverse);
    Ok((ProofTerm::compose(iso, term), reindexed))
}

/// Wide pushout composite `k_n ∘ h_n` of premises sharing a domain.
///
/// Staged as in the two- and three-fold cases: `r_1 = h_1`, then for each
/// further `h_j` push `r_{j-1}` along `h_j` to get `k_j` and compose
/// `r_j = k_j ∘ h_j`.
pub(crate) fn elaborate_widepush<C: Category>(
    cat: &C,
    parts: Vec<Part<C>>,
) -> Result<Part<C>, ProofError> {
    let mut parts = parts.into_iter();
    let Some((mut term, mut concl)) = parts.next() else {
        return Err(ProofError::MacroShape("wide pushout of no premises".into()));
    };
    for (tj, hj) in parts {
        if hj.dom() != concl.dom() {
            return Err(ProofError::MacroShape(format!(
                "{hj:?} does not share the domain of {concl:?}"
            )));
        }
        let po = cat.pushout(&concl, &hj)?;
        concl = cat.compose(&po.h_prime, &hj)?;
        term = ProofTerm::compose(ProofTerm::push(term, hj), tj);
    }
    Ok((term, concl))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::wide_pushout_composite;
    use crate::check_proof;
    use crate::graph::{Graph, GraphCat, GraphHom};
    use crate::lattice::{Lattice, LatticeMor};

    #[test]
    fn lattice_coproduct_is_two_pushes_and_a_composition() {
        let d = Lattice::diamond();
        let h1 = d.mor("0", "a").unwrap();
        let h2 = d.mor("0", "b").unwrap();
        let hs = MorphismSet::from_entries([("h1", h1), ("h2", h2)]).unwrap();
        let p = ProofTerm::CoprodN(alloc::vec![ProofTerm::hyp("h1"), ProofTerm::hyp("h2")]);
        let e = elaborate(&d, &hs, &p).unwrap();
        assert!(e.is_primitive());
        match &e {
            ProofTerm::Compose(outer, inner) => {
                assert!(matches!(**outer, ProofTerm::Push { .. }));
                assert!(matches!(**inner, ProofTerm::Push { .. }));
            }
            other => panic!("unexpected shape {other:?}"),
        }
        assert_eq!(check_proof(&d, &hs, &e), Ok(LatticeMor::new(0, 3)));
        assert_eq!(check_proof(&d, &hs, &p), check_proof(&d, &hs, &e));
    }

    #[test]
    fn graph_coproduct_is_canonical_on_the_nose() {
        let cat = GraphCat;
        let h1 = GraphHom::from_empty(&Graph::clique(2));
        let h2 = GraphHom::new(Graph::discrete(1), Graph::clique(3), alloc::vec![1]).unwrap();
        let hs = MorphismSet::from_entries([("h1", h1.clone()), ("h2", h2.clone())]).unwrap();
        let p = ProofTerm::CoprodN(alloc::vec![ProofTerm::hyp("h1"), ProofTerm::hyp("h2")]);
        let e = elaborate(&cat, &hs, &p).unwrap();
        assert!(e.is_primitive());
        let expected = cat.coproduct_morphism(&[h1, h2]).unwrap();
        assert_eq!(check_proof(&cat, &hs, &e), Ok(expected));
    }

    #[test]
    fn empty_and_singleton_macros() {
        let cat = GraphCat;
        let h = GraphHom::from_empty(&Graph::clique(2));
        let hs = MorphismSet::from_entries([("h", h.clone())]).unwrap();
        let p: Proof<GraphCat> = ProofTerm::CoprodN(alloc::vec![]);
        assert_eq!(check_proof(&cat, &hs, &p), Ok(GraphHom::identity(&Graph::empty())));
        let p = ProofTerm::WidePushN(alloc::vec![ProofTerm::hyp("h")]);
        assert_eq!(elaborate(&cat, &hs, &p), Ok(ProofTerm::hyp("h")));
        let p: Proof<GraphCat> = ProofTerm::WidePushN(alloc::vec![]);
        assert!(matches!(check_proof(&cat, &hs, &p), Err(ProofError::MacroShape(_))));
    }

    #[test]
    fn three_fold_wide_pushout_follows_the_staged_scheme() {
        let cat = GraphCat;
        let pt = Graph::discrete(1);
        let h1 = GraphHom::new(pt.clone(), Graph::clique(2), alloc::vec![0]).unwrap();
        let h2 = GraphHom::new(pt.clone(), Graph::loop_point(), alloc::vec![0]).unwrap();
        let h3 = GraphHom::new(pt.clone(), Graph::clique(3), alloc::vec![2]).unwrap();
        let hs = MorphismSet::from_entries([("h1", h1.clone()), ("h2", h2.clone()), ("h3", h3.clone())])
            .unwrap();
        let p = ProofTerm::WidePushN(alloc::vec![
            ProofTerm::hyp("h1"),
            ProofTerm::hyp("h2"),
            ProofTerm::hyp("h3")
        ]);
        let e = elaborate(&cat, &hs, &p).unwrap();
        // compose(push(compose(push(h1, h2), h2), h3), h3)
        let expected_shape = ProofTerm::compose(
            ProofTerm::push(
                ProofTerm::compose(ProofTerm::push(ProofTerm::hyp("h1"), h2.clone()), ProofTerm::hyp("h2")),
                h3.clone(),
            ),
            ProofTerm::hyp("h3"),
        );
        assert_eq!(e, expected_shape);
        let direct = wide_pushout_composite(&cat, &[h1, h2, h3]).unwrap();
        assert_eq!(check_proof(&cat, &hs, &e), Ok(direct));
    }

    #[test]
    fn wide_pushout_rejects_mixed_domains() {
        let cat = GraphCat;
        let h1 = GraphHom::from_empty(&Graph::clique(2));
        let h2 = GraphHom::identity(&Graph::clique(1));
        let hs = MorphismSet::from_entries([("h1", h1), ("h2", h2)]).unwrap();
        let p = ProofTerm::WidePushN(alloc::vec![ProofTerm::hyp("h1"), ProofTerm::hyp("h2")]);
        assert!(matches!(elaborate(&cat, &hs, &p), Err(ProofError::MacroShape(_))));
    }
}
