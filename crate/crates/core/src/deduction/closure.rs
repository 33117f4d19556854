//! Forward chaining over the deduction rules.
//!
//! Both exact saturation (finite categories) and budgeted proof search
//! (graphs) run the same layered closure: layer `d` holds everything with a
//! derivation of depth `d`, so the first proof recorded for a morphism is a
//! shallowest one, and the search is iterative deepening on proof depth.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::proof::{Proof, ProofTerm};
use crate::category::{Arrow, CatError, Category, MorphismSet};
use crate::lattice::{Elem, Lattice, LatticeMor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Identity,
    Composition,
    Cancellation,
    Pushout,
}

impl Rule {
    pub const ALL: [Rule; 4] = [Rule::Identity, Rule::Composition, Rule::Cancellation, Rule::Pushout];

    pub fn name(self) -> &'static str {
        match self {
            Rule::Identity => "identity",
            Rule::Composition => "composition",
            Rule::Cancellation => "cancellation",
            Rule::Pushout => "pushout",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| alloc::format!("unknown rule `{s}` (identity, composition, cancellation, pushout)"))
    }
}

/// Which rules a closure may use. Hypotheses are always available.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RuleMask {
    pub identity: bool,
    pub composition: bool,
    pub cancellation: bool,
    pub pushout: bool,
}

impl Default for RuleMask {
    fn default() -> Self {
        RuleMask::ALL
    }
}

impl RuleMask {
    pub const ALL: RuleMask = RuleMask { identity: true, composition: true, cancellation: true, pushout: true };

    pub fn allows(&self, r: Rule) -> bool {
        match r {
            Rule::Identity => self.identity,
            Rule::Composition => self.composition,
            Rule::Cancellation => self.cancellation,
            Rule::Pushout => self.pushout,
        }
    }

    pub fn set(mut self, r: Rule, on: bool) -> Self {
        match r {
            Rule::Identity => self.identity = on,
            Rule::Composition => self.composition = on,
            Rule::Cancellation => self.cancellation = on,
            Rule::Pushout => self.pushout = on,
        }
        self
    }

    pub fn without(self, r: Rule) -> Self {
        self.set(r, false)
    }

    pub fn enabled(&self) -> impl Iterator<Item = Rule> + '_ {
        Rule::ALL.into_iter().filter(|r| self.allows(*r))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturationResult<O, M> {
    pub derived: BTreeSet<M>,
    /// A shallowest proof of every derived morphism.
    pub provenance: BTreeMap<M, ProofTerm<O, M>>,
    pub rule_mask: RuleMask,
}

/// Resource limits for [`prove`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Largest object (by [`Category::size`]) a derivation may pass through.
    pub node_cap: usize,
    /// Deepest proof tried.
    pub depth_cap: usize,
    /// Stop once this many distinct morphisms are derived.
    pub max_derived: usize,
    /// Morphisms enumerated per hom-set query when choosing pushout and
    /// cancellation data.
    pub max_homs: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { node_cap: 12, depth_cap: 4, max_derived: 2000, max_homs: 64 }
    }
}

impl SearchBudget {
    fn unbounded() -> Self {
        SearchBudget { node_cap: usize::MAX, depth_cap: usize::MAX, max_derived: usize::MAX, max_homs: usize::MAX }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchError {
    /// No proof within the budget. This is not a refutation.
    BudgetExhausted {
        depth: usize,
        derived: usize,
        /// The closure reached a fixpoint without any cap cutting it short.
        saturated: bool,
    },
    /// Saturation needs a complete lattice.
    NotCocomplete,
    /// A hypothesis or goal that is not a morphism of the category.
    InvalidMorphism(String),
    Category(CatError),
}

impl fmt::Display for SearchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SearchError::BudgetExhausted { depth, derived, saturated } => write!(
                f,
                "no proof found within budget (depth {depth}, {derived} morphisms derived{})",
                if *saturated { ", closure saturated under the caps" } else { "" }
            ),
            SearchError::NotCocomplete => f.write_str("saturation requires a complete lattice"),
            SearchError::InvalidMorphism(m) => write!(f, "not a morphism of the category: {m}"),
            SearchError::Category(e) => write!(f, "{e}"),
        }
    }
}

impl From<CatError> for SearchError {
    fn from(e: CatError) -> Self {
        SearchError::Category(e)
    }
}

struct Closure<'a, C: Category> {
    cat: &'a C,
    mask: RuleMask,
    budget: SearchBudget,
    proofs: BTreeMap<C::Mor, Proof<C>>,
    order: Vec<C::Mor>,
    objects: Vec<C::Obj>,
    object_set: BTreeSet<C::Obj>,
    truncated: bool,
    goal: Option<C::Mor>,
}

enum Step {
    Continue,
    Goal,
    /// `max_derived` reached; the search stops.
    Full,
}

impl<'a, C: Category> Closure<'a, C> {
    fn new(cat: &'a C, mask: RuleMask, budget: SearchBudget, goal: Option<C::Mor>) -> Self {
        Closure {
            cat,
            mask,
            budget,
            proofs: BTreeMap::new(),
            order: Vec::new(),
            objects: Vec::new(),
            object_set: BTreeSet::new(),
            truncated: false,
            goal,
        }
    }

    fn fits(&self, a: &C::Obj) -> bool {
        self.cat.size(a) <= self.budget.node_cap
    }

    fn add_object(&mut self, a: &C::Obj) {
        if !self.object_set.contains(a) && self.fits(a) {
            self.object_set.insert(a.clone());
            self.objects.push(a.clone());
        }
    }

    fn insert(&mut self, m: C::Mor, proof: impl FnOnce(&Self) -> Proof<C>) -> Step {
        if self.proofs.contains_key(&m) {
            return Step::Continue;
        }
        if !self.fits(m.dom()) || !self.fits(m.cod()) {
            self.truncated = true;
            return Step::Continue;
        }
        if self.proofs.len() >= self.budget.max_derived {
            self.truncated = true;
            return Step::Full;
        }
        self.add_object(m.dom());
        self.add_object(m.cod());
        let hit = self.goal.as_ref() == Some(&m);
        let proof = proof(self);
        self.proofs.insert(m.clone(), proof);
        self.order.push(m);
        if hit {
            Step::Goal
        } else {
            Step::Continue
        }
    }

    fn proof_of(&self, m: &C::Mor) -> Proof<C> {
        self.proofs[m].clone()
    }

    /// Hypotheses, then identities of the seed objects.
    fn seed(&mut self, hs: &MorphismSet<C::Mor>, objects: &[C::Obj]) -> Step {
        for a in objects {
            self.add_object(a);
        }
        for (name, h) in hs.iter() {
            self.add_object(h.dom());
            self.add_object(h.cod());
            let step = self.insert(h.clone(), |_| ProofTerm::hyp(name));
            if !matches!(step, Step::Continue) {
                return step;
            }
        }
        if self.mask.identity {
            for a in self.objects.clone() {
                let Ok(id) = self.cat.identity(&a) else { continue };
                let step = self.insert(id, |_| ProofTerm::Identity(a.clone()));
                if !matches!(step, Step::Continue) {
                    return step;
                }
            }
        }
        Step::Continue
    }

    /// One layer. `old_m`/`old_o` mark how many morphisms/objects existed
    /// before the previous layer; only combinations involving something
    /// newer are tried (semi-naive evaluation).
    fn layer(&mut self, old_m: usize, old_o: usize) -> Result<Step, CatError> {
        let (end_m, end_o) = (self.order.len(), self.objects.len());
        let mors: Vec<C::Mor> = self.order[..end_m].to_vec();
        let objs: Vec<C::Obj> = self.objects[..end_o].to_vec();
        let cap = self.budget.max_homs;

        if self.mask.identity {
            for a in &objs[old_o..] {
                let id = self.cat.identity(a)?;
                let step = self.insert(id, |_| ProofTerm::Identity(a.clone()));
                if !matches!(step, Step::Continue) {
                    return Ok(step);
                }
            }
        }

        if self.mask.composition {
            for (i, f) in mors.iter().enumerate() {
                for (j, g) in mors.iter().enumerate() {
                    if (i < old_m && j < old_m) || g.dom() != f.cod() {
                        continue;
                    }
                    let gf = self.cat.compose(g, f)?;
                    let step = self.insert(gf, |s| ProofTerm::compose(s.proof_of(g), s.proof_of(f)));
                    if !matches!(step, Step::Continue) {
                        return Ok(step);
                    }
                }
            }
        }

        if self.mask.cancellation {
            for (i, w) in mors.iter().enumerate() {
                for (k, b) in objs.iter().enumerate() {
                    if i < old_m && k < old_o {
                        continue;
                    }
                    for first in self.cat.homs_limited(w.dom(), b, cap) {
                        if self.proofs.contains_key(&first) {
                            continue;
                        }
                        let Some(rest) = self.cat.extend_along(&first, w) else { continue };
                        let step = self.insert(first.clone(), |s| {
                            ProofTerm::cancel(s.proof_of(w), first.clone(), rest)
                        });
                        if !matches!(step, Step::Continue) {
                            return Ok(step);
                        }
                    }
                }
            }
        }

        if self.mask.pushout {
            for (i, h) in mors.iter().enumerate() {
                for (k, x) in objs.iter().enumerate() {
                    if i < old_m && k < old_o {
                        continue;
                    }
                    for along in self.cat.homs_limited(h.dom(), x, cap) {
                        let po = self.cat.pushout(h, &along)?;
                        let step = self.insert(po.h_prime, |s| ProofTerm::push(s.proof_of(h), along.clone()));
                        if !matches!(step, Step::Continue) {
                            return Ok(step);
                        }
                    }
                }
            }
        }
        Ok(Step::Continue)
    }

    /// Runs layers until the goal appears, a fixpoint is reached, or the
    /// depth cap is hit. Returns the number of layers run.
    fn run(&mut self, hs: &MorphismSet<C::Mor>, seeds: &[C::Obj]) -> Result<(bool, usize), CatError> {
        match self.seed(hs, seeds) {
            Step::Goal => return Ok((true, 0)),
            Step::Full => return Ok((false, 0)),
            Step::Continue => {}
        }
        let (mut old_m, mut old_o) = (0, 0);
        let mut depth = 0;
        while depth < self.budget.depth_cap {
            if old_m == self.order.len() && old_o == self.objects.len() {
                break;
            }
            let (m, o) = (self.order.len(), self.objects.len());
            depth += 1;
            match self.layer(old_m, old_o)? {
                Step::Goal => return Ok((true, depth)),
                Step::Full => return Ok((false, depth)),
                Step::Continue => {}
            }
            old_m = m;
            old_o = o;
        }
        let fixpoint = old_m == self.order.len() && old_o == self.objects.len();
        self.truncated |= !fixpoint;
        Ok((false, depth))
    }
}

/// Least set of morphisms of a finite category containing `hs` and closed
/// under the enabled rules, with a shallowest proof for each.
///
/// Fails with `NotCocomplete` if a pushout is missing.
pub fn saturate_finite<C: Category>(
    cat: &C,
    hs: &MorphismSet<C::Mor>,
    mask: RuleMask,
) -> Result<SaturationResult<C::Obj, C::Mor>, SearchError> {
    let objects = cat.finite_objects().ok_or(SearchError::NotCocomplete)?;
    if let Some(bad) = hs.morphisms().find(|h| !cat.contains_mor(h)) {
        return Err(SearchError::InvalidMorphism(alloc::format!("{bad:?}")));
    }
    let mut closure = Closure::new(cat, mask, SearchBudget::unbounded(), None);
    closure.run(hs, &objects).map_err(|e| match e {
        CatError::NotCocomplete(_) => SearchError::NotCocomplete,
        other => SearchError::Category(other),
    })?;
    Ok(SaturationResult {
        derived: closure.proofs.keys().cloned().collect(),
        provenance: closure.proofs,
        rule_mask: mask,
    })
}

/// Saturation of a complete lattice. Posets without all joins are
/// rejected: the pushout rule would be partial.
pub fn saturate(
    lattice: &Lattice,
    hs: &MorphismSet<LatticeMor>,
    mask: RuleMask,
) -> Result<SaturationResult<Elem, LatticeMor>, SearchError> {
    if !lattice.is_complete() {
        return Err(SearchError::NotCocomplete);
    }
    saturate_finite(lattice, hs, mask)
}

/// Searches for a proof of `goal` from `hs` using all four rules, layer by
/// layer, within `budget`. The object pool starts from the objects of `hs`
/// and `goal` (every object, for finite categories) and grows with the
/// codomains of derived pushouts up to `budget.node_cap`.
pub fn prove<C: Category>(
    cat: &C,
    hs: &MorphismSet<C::Mor>,
    goal: &C::Mor,
    budget: SearchBudget,
) -> Result<Proof<C>, SearchError> {
    if !cat.contains_mor(goal) {
        return Err(SearchError::InvalidMorphism(alloc::format!("{goal:?}")));
    }
    if let Some(bad) = hs.morphisms().find(|h| !cat.contains_mor(h)) {
        return Err(SearchError::InvalidMorphism(alloc::format!("{bad:?}")));
    }
    let mut seeds = cat.finite_objects().unwrap_or_default();
    seeds.push(goal.dom().clone());
    seeds.push(goal.cod().clone());
    let mut closure = Closure::new(cat, RuleMask::ALL, budget, Some(goal.clone()));
    let (found, depth) = closure.run(hs, &seeds)?;
    if found {
        return Ok(closure.proof_of(goal));
    }
    Err(SearchError::BudgetExhausted {
        depth,
        derived: closure.proofs.len(),
        saturated: !closure.truncated,
    })
}
