use alloc::format;
use alloc::string::String;
use core::fmt;

use super::elaborate::{elaborate_coprod, elaborate_widepush};
use super::proof::{Proof, ProofTerm};
use crate::category::{Arrow, CatError, Category, MorphismSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProofError {
    UnresolvedHypothesis(String),
    UnknownObject(String),
    InvalidMorphism(String),
    NotComposable { outer: String, inner: String },
    /// `Cancel`'s premise is not `rest ∘ first`.
    CancelMismatch { premise: String, factorization: String },
    /// `Push`'s `along` does not start where the premise starts.
    PushDomainMismatch { premise: String, along: String },
    /// Macro arguments of the wrong shape.
    MacroShape(String),
    Category(CatError),
}

impl fmt::Display for ProofError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProofError::UnresolvedHypothesis(n) => write!(f, "hypothesis `{n}` is not in H"),
            ProofError::UnknownObject(o) => write!(f, "unknown object {o}"),
            ProofError::InvalidMorphism(m) => write!(f, "not a morphism of the category: {m}"),
            ProofError::NotComposable { outer, inner } => {
                write!(f, "composition mismatch: {outer} after {inner}")
            }
            ProofError::CancelMismatch { premise, factorization } => {
                write!(f, "cancellation premise {premise} is not the composite {factorization}")
            }
            ProofError::PushDomainMismatch { premise, along } => {
                write!(f, "cannot push {premise} along {along}: different domains")
            }
            ProofError::MacroShape(why) => write!(f, "macro arguments have the wrong shape: {why}"),
            ProofError::Category(e) => write!(f, "{e}"),
        }
    }
}

impl From<CatError> for ProofError {
    fn from(e: CatError) -> Self {
        match e {
            CatError::NotComposable { outer, inner } => ProofError::NotComposable { outer, inner },
            other => ProofError::Category(other),
        }
    }
}

/// Checks `p` against `cat` and `hs` and returns its conclusion. Macros
/// are elaborated into primitive rules before their premises are used.
pub fn check_proof<C: Category>(
    cat: &C,
    hs: &MorphismSet<C::Mor>,
    p: &Proof<C>,
) -> Result<C::Mor, ProofError> {
    run(cat, hs, p).map(|(_, m)| m)
}

/// Elaborates and checks in one pass: returns the primitive term and its
/// conclusion.
pub(crate) fn run<C: Category>(
    cat: &C,
    hs: &MorphismSet<C::Mor>,
    p: &Proof<C>,
) -> Result<(Proof<C>, C::Mor), ProofError> {
    match p {
        ProofTerm::Hyp(name) => {
            let m = hs
                .get(name)
                .ok_or_else(|| ProofError::UnresolvedHypothesis(name.clone()))?;
            if !cat.contains_mor(m) {
                return Err(ProofError::InvalidMorphism(format!("{m:?}")));
            }
            Ok((p.clone(), m.clone()))
        }
        ProofTerm::Identity(a) => {
            if !cat.contains_obj(a) {
                return Err(ProofError::UnknownObject(format!("{a:?}")));
            }
            Ok((p.clone(), cat.identity(a)?))
        }
        ProofTerm::Compose(outer, inner) => {
            let (to, mo) = run(cat, hs, outer)?;
            let (ti, mi) = run(cat, hs, inner)?;
            let m = cat.compose(&mo, &mi)?;
            Ok((ProofTerm::compose(to, ti), m))
        }
        ProofTerm::Cancel { whole, first, rest } => {
            let (tw, mw) = run(cat, hs, whole)?;
            for m in [first, rest] {
                if !cat.contains_mor(m) {
                    return Err(ProofError::InvalidMorphism(format!("{m:?}")));
                }
            }
            let composite = cat.compose(rest, first)?;
            if composite != mw {
                return Err(ProofError::CancelMismatch {
                    premise: format!("{mw:?}"),
                    factorization: format!("{composite:?}"),
                });
            }
            Ok((ProofTerm::cancel(tw, first.clone(), rest.clone()), first.clone()))
        }
        ProofTerm::Push { premise, along } => {
            let (tp, mp) = run(cat, hs, premise)?;
            if !cat.contains_mor(along) {
                return Err(ProofError::InvalidMorphism(format!("{along:?}")));
            }
            if along.dom() != mp.dom() {
                return Err(ProofError::PushDomainMismatch {
                    premise: format!("{mp:?}"),
                    along: format!("{along:?}"),
                });
            }
            let po = cat.pushout(&mp, along)?;
            Ok((ProofTerm::push(tp, along.clone()), po.h_prime))
        }
        ProofTerm::CoprodN(ps) => {
            let parts = ps
                .iter()
                .map(|q| run(cat, hs, q))
                .collect::<Result<alloc::vec::Vec<_>, _>>()?;
            elaborate_coprod(cat, parts)
        }
        ProofTerm::WidePushN(ps) => {
            let parts = ps
                .iter()
                .map(|q| run(cat, hs, q))
                .collect::<Result<alloc::vec::Vec<_>, _>>()?;
            elaborate_widepush(cat, parts)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{Elem, Lattice, LatticeMor};

    fn chain_h() -> (Lattice, MorphismSet<LatticeMor>) {
        let c = Lattice::chain(3);
        let hs = MorphismSet::from_entries([("h", LatticeMor::new(0, 2))]).unwrap();
        (c, hs)
    }

    #[test]
    fn cancellation_on_the_chain() {
        let (c, hs) = chain_h();
        let p = ProofTerm::cancel(ProofTerm::hyp("h"), LatticeMor::new(0, 1), LatticeMor::new(1, 2));
        assert_eq!(check_proof(&c, &hs, &p), Ok(LatticeMor::new(0, 1)));
    }

    #[test]
    fn identity_axiom() {
        let (c, hs) = chain_h();
        let p = ProofTerm::Identity(Elem(2));
        assert_eq!(check_proof(&c, &hs, &p), Ok(LatticeMor::new(2, 2)));
        let p = ProofTerm::Identity(Elem(9));
        assert!(matches!(check_proof(&c, &hs, &p), Err(ProofError::UnknownObject(_))));
    }

    #[test]
    fn pushout_on_the_diamond() {
        let d = Lattice::diamond();
        let hs = MorphismSet::from_entries([("h", d.mor("0", "a").unwrap())]).unwrap();
        let p = ProofTerm::push(ProofTerm::hyp("h"), d.mor("0", "b").unwrap());
        assert_eq!(check_proof(&d, &hs, &p), Ok(d.mor("b", "1").unwrap()));
    }

    #[test]
    fn error_paths() {
        let (c, hs) = chain_h();
        let p: Proof<Lattice> = ProofTerm::hyp("nope");
        assert_eq!(
            check_proof(&c, &hs, &p),
            Err(ProofError::UnresolvedHypothesis("nope".into()))
        );
        let p = ProofTerm::compose(ProofTerm::hyp("h"), ProofTerm::hyp("h"));
        assert!(matches!(check_proof(&c, &hs, &p), Err(ProofError::NotComposable { .. })));
        let p = ProofTerm::cancel(ProofTerm::hyp("h"), LatticeMor::new(0, 1), LatticeMor::new(2, 2));
        assert!(matches!(check_proof(&c, &hs, &p), Err(ProofError::NotComposable { .. })));
        let p = ProofTerm::cancel(ProofTerm::hyp("h"), LatticeMor::new(0, 0), LatticeMor::new(0, 1));
        assert!(matches!(check_proof(&c, &hs, &p), Err(ProofError::CancelMismatch { .. })));
        let p = ProofTerm::push(ProofTerm::hyp("h"), LatticeMor::new(1, 2));
        assert!(matches!(check_proof(&c, &hs, &p), Err(ProofError::PushDomainMismatch { .. })));
        let p = ProofTerm::push(ProofTerm::hyp("h"), LatticeMor::new(2, 0));
        assert!(matches!(check_proof(&c, &hs, &p), Err(ProofError::InvalidMorphism(_))));
    }

    #[test]
    fn checking_is_deterministic() {
        let (c, hs) = chain_h();
        let p = ProofTerm::compose(
            ProofTerm::push(ProofTerm::hyp("h"), LatticeMor::new(0, 1)),
            ProofTerm::cancel(ProofTerm::hyp("h"), LatticeMor::new(0, 1), LatticeMor::new(1, 2)),
        );
        let a = check_proof(&c, &hs, &p);
        assert_eq!(a, check_proof(&c, &hs, &p.clone()));
        assert_eq!(a, Ok(LatticeMor::new(0, 2)));
    }
}
