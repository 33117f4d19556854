//! Injectivity logic over small computable categories.
//!
//! Two categories are provided: finite posets / complete lattices viewed as
//! thin categories ([`lattice`]) and the category of finite directed graphs
//! ([`graph`]). On top of the [`Category`] interface the crate offers
//! injectivity and semantic consequence checks, a proof checker for the
//! four-rule deduction system (identity, composition, cancellation,
//! pushout), forward saturation, budgeted proof search ([`deduction`]) and
//! weak reflections built by the small object argument ([`reflection`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod category;
pub mod deduction;
pub mod graph;
pub mod lattice;
pub mod reflection;

pub use category::{
    is_injective, semantic_consequence, verify_pushout, wide_pushout_composite, Arrow, CatError, Category,
    CoconeCheckReport, CoconeFailure, Coproduct, Injectivity, MorphismSet, Pushout, Verdict,
};
pub use deduction::{
    check_proof, elaborate, prove, saturate, used_hypotheses, ProofError, ProofTerm, Rule,
    RuleMask, SaturationResult, SearchBudget, SearchError,
};
pub use graph::{Graph, GraphCat, GraphHom};
pub use lattice::{Elem, Lattice, LatticeError, LatticeMor, LatticePresentation};
pub use reflection::{
    consequence_via_reflection, reflect, reflection_proof, verify_weak_reflection, Inconclusive,
    ReflectionTrace,
};
