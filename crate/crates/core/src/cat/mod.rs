//! Finite categories, functors into finite sets and their colimits.

mod category;
mod colimit;
mod functor;
mod iso;
mod random;

pub use category::{examples, ArrowData, ArrowId, BuildError, CategoryBuilder, CategoryViolation, FinCategory, ObjId};
pub use colimit::{colimit_set_functor, ColimitResult};
pub use functor::{
    enumerate_functors, enumerate_nat_transforms, enumerate_set_functors, naturality_violations, FinFunctor, FunctorViolation,
    NatTransform, NaturalityViolation, SetFunctor, SetFunctorViolation,
};
pub use iso::{find_isomorphism, CategoryIso};
pub use random::{close_under_composition, random_concrete_category};
