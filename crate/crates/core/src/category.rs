//! The interface a computable category has to offer to the logic, and the
//! notions defined uniformly on top of it: injectivity, semantic
//! consequence and enumeration-based checks of universal properties.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// A morphism knows its domain and codomain.
pub trait Arrow {
    type Obj;

    fn dom(&self) -> &Self::Obj;
    fn cod(&self) -> &Self::Obj;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatError {
    UnknownObject(String),
    InvalidMorphism(String),
    /// `compose(g, f)` with `cod f != dom g`.
    NotComposable { outer: String, inner: String },
    /// A span or family whose members do not share a domain.
    DomainMismatch { left: String, right: String },
    /// A wide pushout of an empty family.
    EmptyFamily,
    /// The presentation lacks the colimit that was asked for.
    NotCocomplete(String),
    /// A proposed cocone does not commute.
    NotACocone,
}

impl fmt::Display for CatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatError::UnknownObject(o) => write!(f, "unknown object {o}"),
            CatError::InvalidMorphism(m) => write!(f, "invalid morphism {m}"),
            CatError::NotComposable { outer, inner } => {
                write!(f, "cannot compose {outer} after {inner}: codomain/domain mismatch")
            }
            CatError::DomainMismatch { left, right } => {
                write!(f, "{left} and {right} do not share a domain")
            }
            CatError::EmptyFamily => f.write_str("wide pushout of an empty family"),
            CatError::NotCocomplete(why) => write!(f, "colimit does not exist: {why}"),
            CatError::NotACocone => f.write_str("legs do not form a commuting cocone"),
        }
    }
}

/// The canonical pushout of `h: A -> B` along `f: A -> C`.
///
/// `h_prime: C -> P` sits opposite `h`, `f_prime: B -> P` opposite `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pushout<M> {
    pub h_prime: M,
    pub f_prime: M,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coproduct<O, M> {
    pub apex: O,
    pub injections: Vec<M>,
}

/// A computable category with finite hom-sets and the colimits the
/// deduction system needs.
///
/// Every construction is canonical: the same inputs give the same outputs on
/// the nose, so proof checking can recompute rather than verify.
pub trait Category {
    type Obj: Clone + Eq + Ord + fmt::Debug;
    type Mor: Clone + Eq + Ord + fmt::Debug + Arrow<Obj = Self::Obj>;

    fn contains_obj(&self, a: &Self::Obj) -> bool;

    /// Whether `m` is a well-formed morphism of this category.
    fn contains_mor(&self, m: &Self::Mor) -> bool;

    fn identity(&self, a: &Self::Obj) -> Result<Self::Mor, CatError>;

    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor, CatError>;

    /// Every morphism `a -> x`, each exactly once, in canonical order.
    fn homs(&self, a: &Self::Obj, x: &Self::Obj) -> Vec<Self::Mor>;

    /// The first `limit` morphisms of [`Category::homs`].
    fn homs_limited(&self, a: &Self::Obj, x: &Self::Obj, limit: usize) -> Vec<Self::Mor> {
        let mut all = self.homs(a, x);
        all.truncate(limit);
        all
    }

    /// Some `g: cod h -> cod f` with `g ∘ h = f`, the first in canonical
    /// order, if one exists.
    fn extend_along(&self, h: &Self::Mor, f: &Self::Mor) -> Option<Self::Mor> {
        if h.dom() != f.dom() {
            return None;
        }
        self.homs(h.cod(), f.cod())
            .into_iter()
            .find(|g| self.compose(g, h).as_ref() == Ok(f))
    }

    fn pushout(&self, h: &Self::Mor, f: &Self::Mor) -> Result<Pushout<Self::Mor>, CatError>;

    /// The unique map out of `pushout(h, f)` to the cocone `u: cod h -> Z`,
    /// `v: cod f -> Z` (which must satisfy `u ∘ h = v ∘ f`).
    fn pushout_mediator(
        &self,
        h: &Self::Mor,
        f: &Self::Mor,
        u: &Self::Mor,
        v: &Self::Mor,
    ) -> Result<Self::Mor, CatError>;

    /// Legs `k_i: cod h_i -> P` of the canonical wide pushout of a nonempty
    /// family sharing one domain.
    fn wide_pushout(&self, hs: &[Self::Mor]) -> Result<Vec<Self::Mor>, CatError>;

    fn coproduct(&self, objs: &[Self::Obj]) -> Result<Coproduct<Self::Obj, Self::Mor>, CatError>;

    /// The canonical `h_1 + ... + h_n` between the canonical coproducts of
    /// domains and codomains.
    fn coproduct_morphism(&self, hs: &[Self::Mor]) -> Result<Self::Mor, CatError>;

    fn inverse(&self, m: &Self::Mor) -> Option<Self::Mor>;

    /// Size measure used to cap constructed objects during search.
    fn size(&self, a: &Self::Obj) -> usize;

    /// All objects, when the category is finite.
    fn finite_objects(&self) -> Option<Vec<Self::Obj>>;
}

/// The composite `k_i ∘ h_i` of a canonical wide pushout.
pub fn wide_pushout_composite<C: Category>(cat: &C, hs: &[C::Mor]) -> Result<C::Mor, CatError> {
    let legs = cat.wide_pushout(hs)?;
    cat.compose(&legs[0], &hs[0])
}

/// A named hypothesis set. Names are unique; order is preserved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismSet<M> {
    entries: Vec<(String, M)>,
}

impl<M> Default for MorphismSet<M> {
    fn default() -> Self {
        MorphismSet { entries: Vec::new() }
    }
}

impl<M: Clone> MorphismSet<M> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a set from `(name, morphism)` pairs; fails on the first
    /// repeated name.
    pub fn from_entries<I, S>(entries: I) -> Result<Self, String>
    where
        I: IntoIterator<Item = (S, M)>,
        S: Into<String>,
    {
        let mut set = Self::new();
        for (name, m) in entries {
            set.insert(name, m)?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, name: impl Into<String>, m: M) -> Result<(), String> {
        let name = name.into();
        if self.get(&name).is_some() {
            return Err(name);
        }
        self.entries.push((name, m));
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&M> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &M)> {
        self.entries.iter().map(|(n, m)| (n.as_str(), m))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(n, _)| n.as_str())
    }

    pub fn morphisms(&self) -> impl Iterator<Item = &M> {
        self.entries.iter().map(|(_, m)| m)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The members whose names satisfy `keep`, in original order.
    pub fn restrict(&self, mut keep: impl FnMut(&str) -> bool) -> Self {
        MorphismSet {
            entries: self
                .entries
                .iter()
                .filter(|(n, _)| keep(n))
                .cloned()
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Injectivity<M> {
    Injective,
    /// A morphism `dom h -> X` that does not extend along `h`.
    NotInjective(M),
}

impl<M> Injectivity<M> {
    pub fn holds(&self) -> bool {
        matches!(self, Injectivity::Injective)
    }
}

/// Is `x` injective w.r.t. `h`? Every `f: dom h -> x` must factor as
/// `g ∘ h`.
pub fn is_injective<C: Category>(cat: &C, x: &C::Obj, h: &C::Mor) -> Injectivity<C::Mor> {
    for f in cat.homs(h.dom(), x) {
        if cat.extend_along(h, &f).is_none() {
            return Injectivity::NotInjective(f);
        }
    }
    Injectivity::Injective
}

/// Injective w.r.t. every member of `hs`.
pub fn is_injective_all<C: Category>(cat: &C, x: &C::Obj, hs: &MorphismSet<C::Mor>) -> bool {
    hs.morphisms().all(|h| is_injective(cat, x, h).holds())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<O> {
    /// No object of the universe separates `H` from `h`.
    HoldsOnUniverse,
    /// `X` is injective w.r.t. all of `H` but not w.r.t. `h`.
    Counterexample(O),
}

impl<O> Verdict<O> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::HoldsOnUniverse)
    }
}

/// Searches `universe` for an object that is `H`-injective but not
/// `h`-injective. Exact when the universe is the whole category.
pub fn semantic_consequence<C, I>(
    cat: &C,
    hs: &MorphismSet<C::Mor>,
    h: &C::Mor,
    universe: I,
) -> Verdict<C::Obj>
where
    C: Category,
    I: IntoIterator<Item = C::Obj>,
{
    for x in universe {
        if !is_injective(cat, &x, h).holds() && is_injective_all(cat, &x, hs) {
            return Verdict::Counterexample(x);
        }
    }
    Verdict::HoldsOnUniverse
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoconeFailure<O, M> {
    /// A cocone `(u, v)` into `object` with the wrong number of mediators.
    MediatorCount { object: O, legs: (M, M), count: usize },
    /// The constructed object is not injective w.r.t. a hypothesis.
    NotInjective { hyp: String, witness: M },
    /// `map` into an injective `object` does not factor through the
    /// reflection.
    NoFactorization { object: O, map: M },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoconeCheckReport<O, M> {
    pub verified: bool,
    pub failing_witness: Option<CoconeFailure<O, M>>,
}

impl<O, M> CoconeCheckReport<O, M> {
    pub fn ok() -> Self {
        CoconeCheckReport { verified: true, failing_witness: None }
    }

    pub fn fail(w: CoconeFailure<O, M>) -> Self {
        CoconeCheckReport { verified: false, failing_witness: Some(w) }
    }
}

/// Checks the pushout universal property of `pushout(h, f)` against every
/// object of `universe` by brute force: each commuting cocone must have
/// exactly one mediating morphism.
pub fn verify_pushout<C, I>(
    cat: &C,
    h: &C::Mor,
    f: &C::Mor,
    universe: I,
) -> Result<CoconeCheckReport<C::Obj, C::Mor>, CatError>
where
    C: Category,
    I: IntoIterator<Item = C::Obj>,
{
    let po = cat.pushout(h, f)?;
    let apex = po.h_prime.cod().clone();
    for z in universe {
        let to_z_from_apex = cat.homs(&apex, &z);
        for u in cat.homs(h.cod(), &z) {
            let uh = cat.compose(&u, h)?;
            for v in cat.homs(f.cod(), &z) {
                if cat.compose(&v, f)? != uh {
                    continue;
                }
                let mut count = 0;
                for m in &to_z_from_apex {
                    if cat.compose(m, &po.f_prime)? == u && cat.compose(m, &po.h_prime)? == v {
                        count += 1;
                    }
                }
                if count != 1 {
                    return Ok(CoconeCheckReport::fail(CoconeFailure::MediatorCount {
                        object: z,
                        legs: (u, v),
                        count,
                    }));
                }
            }
        }
    }
    Ok(CoconeCheckReport::ok())
}
