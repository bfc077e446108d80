//! Bayesian inversion and the soft-evidence update rules.
//!
//! Pearl's rule factors a fuzzy predicate in by backward inference,
//! `σ|_{c ≪ q}`. Jeffrey's rule adjusts to a new state of affairs by pushing
//! it through the inverted channel, `c†_σ ≫ ρ`.

mod distance;
mod inversion;
mod partition;
mod report;

pub use distance::{blend_update, total_variation};
pub use inversion::{
    dagger, forward_inference, jeffrey_update, jeffrey_update_with, pearl_update,
    state_to_predicate_ratio, Support,
};
pub use partition::{atc_update, nec_update, partition_jeffrey, Event};
pub use report::{
    explain_atc, explain_blend, explain_jeffrey, explain_nec, explain_pearl, Evidence,
    Intermediate, Rule, UpdateReport,
};
