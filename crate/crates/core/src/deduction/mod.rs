//! Proof terms for the four-rule injectivity deduction system, their
//! checker, macro elaboration, forward saturation and budgeted search.

mod check;
mod closure;
mod elaborate;
mod proof;

pub use check::{check_proof, ProofError};
pub use closure::{
    prove, saturate, saturate_finite, Rule, RuleMask, SaturationResult, SearchBudget, SearchError,
};
pub use elaborate::elaborate;
pub use proof::{used_hypotheses, Proof, ProofTerm};
