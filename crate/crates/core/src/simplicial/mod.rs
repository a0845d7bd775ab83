//! The simplex category, truncated simplicial sets, nerves and the Segal
//! condition.

mod delta;
mod nerve;
mod segal;
mod sset;

pub use delta::{
    binomial, compose_monotone, delta_category, enumerate_monotone, monotone_name, normal_form, DeltaError, DeltaNormalForm,
    Generator, MonotoneMap,
};
pub use nerve::{composable_tuples, nerve};
pub use segal::{
    categorify, categorify_with_flag, segal_check, spine_isomorphism, Categorified, CategorifyError, SegalFailureKind,
    SegalReport, SegalWitness,
};
pub use sset::{SimplicialViolation, SsetError, TruncSimplicialSet};
