//! Weak reflections into the injectivity class of `H` by the small object
//! argument.
//!
//! A round takes every square `(h, f)` with `h ∈ H` and `f: dom h -> A_k`,
//! pushes each `h` out along its `f`, and forms the wide pushout of the
//! resulting maps out of `A_k`. The chain `A = A_0 -> A_1 -> ...` stops as
//! soon as its last object is injective w.r.t. all of `H`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::category::{
    is_injective, is_injective_all, Arrow, CatError, Category, CoconeCheckReport, CoconeFailure,
    Injectivity, MorphismSet,
};
use crate::deduction::{Proof, ProofTerm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Square<M> {
    pub hyp: String,
    /// The attaching map `dom h -> A_k`.
    pub attach: M,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round<O, M> {
    /// `A_{k+1}`.
    pub object: O,
    /// `A_k -> A_{k+1}`.
    pub connecting: M,
    pub squares: Vec<Square<M>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReflectionTrace<O, M> {
    pub start: O,
    pub rounds: Vec<Round<O, M>>,
    pub converged: bool,
    /// Composite `start -> last object` of the connecting maps.
    pub r: M,
}

impl<O, M> ReflectionTrace<O, M> {
    /// The last object of the chain.
    pub fn reflection(&self) -> &O {
        self.rounds.last().map(|r| &r.object).unwrap_or(&self.start)
    }
}

pub fn reflect<C: Category>(
    cat: &C,
    a: &C::Obj,
    hs: &MorphismSet<C::Mor>,
    max_rounds: usize,
) -> Result<ReflectionTrace<C::Obj, C::Mor>, CatError> {
    if !cat.contains_obj(a) {
        return Err(CatError::UnknownObject(alloc::format!("{a:?}")));
    }
    let mut current = a.clone();
    let mut r = cat.identity(a)?;
    let mut rounds = Vec::new();
    let converged = loop {
        if is_injective_all(cat, &current, hs) {
            break true;
        }
        if rounds.len() == max_rounds {
            break false;
        }
        let mut squares = Vec::new();
        let mut pushed = Vec::new();
        for (name, h) in hs.iter() {
            for f in cat.homs(h.dom(), &current) {
                pushed.push(cat.pushout(h, &f)?.h_prime);
                squares.push(Square { hyp: String::from(name), attach: f });
            }
        }
        let legs = cat.wide_pushout(&pushed)?;
        let connecting = cat.compose(&legs[0], &pushed[0])?;
        r = cat.compose(&connecting, &r)?;
        current = connecting.cod().clone();
        rounds.push(Round { object: current.clone(), connecting, squares });
    };
    Ok(ReflectionTrace { start: a.clone(), rounds, converged, r })
}

/// A proof of one round's connecting map: the wide pushout of the pushed
/// out hypotheses.
pub fn round_proof<O, M: Clone>(round: &Round<O, M>) -> ProofTerm<O, M> {
    ProofTerm::WidePushN(
        round
            .squares
            .iter()
            .map(|s| ProofTerm::push(ProofTerm::hyp(s.hyp.clone()), s.attach.clone()))
            .collect(),
    )
}

/// A proof of `r` from `H`: the composite of the round proofs.
pub fn reflection_proof<O: Clone, M: Clone>(trace: &ReflectionTrace<O, M>) -> ProofTerm<O, M> {
    let mut rounds = trace.rounds.iter();
    let Some(first) = rounds.next() else {
        return ProofTerm::Identity(trace.start.clone());
    };
    rounds.fold(round_proof(first), |acc, r| ProofTerm::compose(round_proof(r), acc))
}

/// Checks that the last object is `H`-injective, and that every map from
/// the start into an `H`-injective object of `universe` factors through
/// `r`.
pub fn verify_weak_reflection<C, I>(
    cat: &C,
    trace: &ReflectionTrace<C::Obj, C::Mor>,
    hs: &MorphismSet<C::Mor>,
    universe: I,
) -> CoconeCheckReport<C::Obj, C::Mor>
where
    C: Category,
    I: IntoIterator<Item = C::Obj>,
{
    let top = trace.reflection();
    for (name, h) in hs.iter() {
        if let Injectivity::NotInjective(witness) = is_injective(cat, top, h) {
            return CoconeCheckReport::fail(CoconeFailure::NotInjective { hyp: String::from(name), witness });
        }
    }
    for x in universe {
        if !is_injective_all(cat, &x, hs) {
            continue;
        }
        for f in cat.homs(&trace.start, &x) {
            if cat.extend_along(&trace.r, &f).is_none() {
                return CoconeCheckReport::fail(CoconeFailure::NoFactorization { object: x, map: f });
            }
        }
    }
    CoconeCheckReport::ok()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inconclusive {
    /// The chain did not become injective within the round limit.
    NotConverged { rounds: usize },
    /// `r` does not factor through `h`.
    NoFactorization,
    Category(CatError),
}

impl fmt::Display for Inconclusive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Inconclusive::NotConverged { rounds } => {
                write!(f, "reflection did not converge within {rounds} rounds")
            }
            Inconclusive::NoFactorization => f.write_str("the reflection does not factor through the goal"),
            Inconclusive::Category(e) => write!(f, "{e}"),
        }
    }
}

/// Derives `h` from `H` through the weak reflection of `dom h`: if
/// `r = u ∘ h` for some `u`, cancellation turns the proof of `r` into a
/// proof of `h`. Never refutes.
pub fn consequence_via_reflection<C: Category>(
    cat: &C,
    hs: &MorphismSet<C::Mor>,
    h: &C::Mor,
    max_rounds: usize,
) -> Result<Proof<C>, Inconclusive> {
    let id = cat.identity(h.dom()).map_err(Inconclusive::Category)?;
    if *h == id {
        return Ok(ProofTerm::Identity(h.dom().clone()));
    }
    let trace = reflect(cat, h.dom(), hs, max_rounds).map_err(Inconclusive::Category)?;
    if !trace.converged {
        return Err(Inconclusive::NotConverged { rounds: trace.rounds.len() });
    }
    let u = cat.extend_along(h, &trace.r).ok_or(Inconclusive::NoFactorization)?;
    Ok(ProofTerm::cancel(reflection_proof(&trace), h.clone(), u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check_proof;
    use crate::graph::{enumerate_graphs, Graph, GraphCat, GraphHom};
    use crate::lattice::{Lattice, LatticeMor};

    #[test]
    fn diamond_reflects_b_to_top() {
        let d = Lattice::diamond();
        let hs = MorphismSet::from_entries([("h", d.mor("0", "a").unwrap())]).unwrap();
        let b = d.elem("b").unwrap();
        let t = reflect(&d, &b, &hs, 10).unwrap();
        assert!(t.converged);
        assert_eq!(t.rounds.len(), 1);
        assert_eq!(t.r, d.mor("b", "1").unwrap());
        assert!(verify_weak_reflection(&d, &t, &hs, d.elements()).verified);
        assert_eq!(check_proof(&d, &hs, &reflection_proof(&t)), Ok(t.r));
    }

    #[test]
    fn injective_start_takes_no_rounds() {
        let d = Lattice::diamond();
        let hs = MorphismSet::from_entries([("h", d.mor("0", "a").unwrap())]).unwrap();
        let a = d.elem("a").unwrap();
        let t = reflect(&d, &a, &hs, 10).unwrap();
        assert!(t.converged && t.rounds.is_empty());
        assert_eq!(t.r, LatticeMor { from: a, to: a });
        let t = reflect(&d, &a, &MorphismSet::new(), 10).unwrap();
        assert!(verify_weak_reflection(&d, &t, &MorphismSet::new(), d.elements()).verified);
    }

    #[test]
    fn empty_graph_reflects_to_the_clique() {
        let cat = GraphCat;
        let hs = MorphismSet::from_entries([("c3", GraphHom::from_empty(&Graph::clique(3)))]).unwrap();
        let t = reflect(&cat, &Graph::empty(), &hs, 5).unwrap();
        assert!(t.converged);
        assert_eq!(t.rounds.len(), 1);
        assert_eq!(t.rounds[0].squares.len(), 1);
        assert_eq!(*t.reflection(), Graph::clique(3));
        let report = verify_weak_reflection(&cat, &t, &hs, enumerate_graphs(3));
        assert!(report.verified, "{report:?}");
    }

    #[test]
    fn unbounded_growth_is_reported() {
        // Every node needs an out-neighbour: the chain never closes up
        // without a cycle, and pushouts only ever add fresh nodes.
        let cat = GraphCat;
        let out = GraphHom::new(Graph::discrete(1), Graph::new(2, [(0, 1)]).unwrap(), alloc::vec![0]).unwrap();
        let hs = MorphismSet::from_entries([("out", out)]).unwrap();
        let t = reflect(&cat, &Graph::discrete(1), &hs, 3).unwrap();
        assert!(!t.converged);
        assert_eq!(t.rounds.len(), 3);
        let h = GraphHom::new(Graph::discrete(1), Graph::loop_point(), alloc::vec![0]).unwrap();
        assert_eq!(
            consequence_via_reflection(&cat, &hs, &h, 3),
            Err(Inconclusive::NotConverged { rounds: 3 })
        );
    }

    #[test]
    fn chain_consequence_through_reflection() {
        let c = Lattice::chain(3);
        let hs = MorphismSet::from_entries([("h", LatticeMor::new(0, 2))]).unwrap();
        let p = consequence_via_reflection(&c, &hs, &LatticeMor::new(0, 1), 10).unwrap();
        match &p {
            ProofTerm::Cancel { first, rest, .. } => {
                assert_eq!(*first, LatticeMor::new(0, 1));
                assert_eq!(*rest, LatticeMor::new(1, 2));
            }
            other => panic!("expected a cancellation, got {other:?}"),
        }
        assert_eq!(check_proof(&c, &hs, &p), Ok(LatticeMor::new(0, 1)));
        let id = LatticeMor::new(1, 1);
        assert_eq!(consequence_via_reflection(&c, &hs, &id, 10), Ok(ProofTerm::Identity(id.from)));
    }

    #[test]
    fn non_consequence_is_inconclusive() {
        let c = Lattice::chain(3);
        let hs = MorphismSet::from_entries([("h", LatticeMor::new(0, 1))]).unwrap();
        assert_eq!(
            consequence_via_reflection(&c, &hs, &LatticeMor::new(1, 2), 10),
            Err(Inconclusive::NoFactorization)
        );
    }
}
