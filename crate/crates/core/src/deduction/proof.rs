use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::category::Category;

/// A derivation tree.
///
/// `Compose(outer, inner)` concludes `outer ∘ inner`: the second premise is
/// applied first. `Cancel` carries the factorization it cancels, so
/// checking never searches. `Push` concludes the canonical pushout of its
/// premise along `along`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ProofTerm<O, M> {
    Hyp(String),
    Identity(O),
    Compose(Box<ProofTerm<O, M>>, Box<ProofTerm<O, M>>),
    Cancel { whole: Box<ProofTerm<O, M>>, first: M, rest: M },
    Push { premise: Box<ProofTerm<O, M>>, along: M },
    /// Finite coproduct of the premises' conclusions.
    CoprodN(Vec<ProofTerm<O, M>>),
    /// Finite wide pushout of premises sharing a domain.
    WidePushN(Vec<ProofTerm<O, M>>),
}

pub type Proof<C> = ProofTerm<<C as Category>::Obj, <C as Category>::Mor>;

impl<O, M> ProofTerm<O, M> {
    pub fn hyp(name: impl Into<String>) -> Self {
        ProofTerm::Hyp(name.into())
    }

    pub fn compose(outer: Self, inner: Self) -> Self {
        ProofTerm::Compose(Box::new(outer), Box::new(inner))
    }

    pub fn cancel(whole: Self, first: M, rest: M) -> Self {
        ProofTerm::Cancel { whole: Box::new(whole), first, rest }
    }

    pub fn push(premise: Self, along: M) -> Self {
        ProofTerm::Push { premise: Box::new(premise), along }
    }

    /// Free of `CoprodN` / `WidePushN`.
    pub fn is_primitive(&self) -> bool {
        match self {
            ProofTerm::Hyp(_) | ProofTerm::Identity(_) => true,
            ProofTerm::Compose(a, b) => a.is_primitive() && b.is_primitive(),
            ProofTerm::Cancel { whole, .. } => whole.is_primitive(),
            ProofTerm::Push { premise, .. } => premise.is_primitive(),
            ProofTerm::CoprodN(_) | ProofTerm::WidePushN(_) => false,
        }
    }

    /// Number of rule applications and leaves.
    pub fn size(&self) -> usize {
        1 + self.children().map(ProofTerm::size).sum::<usize>()
    }

    /// Height of the tree; a leaf has depth 0.
    pub fn depth(&self) -> usize {
        self.children().map(|c| 1 + c.depth()).max().unwrap_or(0)
    }

    fn children(&self) -> Box<dyn Iterator<Item = &ProofTerm<O, M>> + '_> {
        match self {
            ProofTerm::Hyp(_) | ProofTerm::Identity(_) => Box::new(core::iter::empty()),
            ProofTerm::Compose(a, b) => Box::new([&**a, &**b].into_iter()),
            ProofTerm::Cancel { whole, .. } => Box::new(core::iter::once(&**whole)),
            ProofTerm::Push { premise, .. } => Box::new(core::iter::once(&**premise)),
            ProofTerm::CoprodN(ps) | ProofTerm::WidePushN(ps) => Box::new(ps.iter()),
        }
    }

    fn collect_hyps<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        if let ProofTerm::Hyp(n) = self {
            out.insert(n);
        }
        for c in self.children() {
            c.collect_hyps(out);
        }
    }
}

/// Names of the hypotheses a proof actually uses. The conclusion is a
/// consequence of this finite subset alone.
pub fn used_hypotheses<O, M>(p: &ProofTerm<O, M>) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    p.collect_hyps(&mut out);
    out.into_iter().map(String::from).collect()
}
