//! Finite, explicitly enumerated models of monads with arities.
//!
//! Every structure here is small and concrete: categories are composition
//! tables, functors are lookup tables, and every law is checked by
//! enumeration.

pub mod cat;
pub mod effects;
pub mod freecat;
pub mod globular;
pub mod kan;
pub mod operad;
pub mod simplicial;

pub use cat::{ColimitResult, FinCategory, FinFunctor, NatTransform, SetFunctor};
pub use simplicial::{MonotoneMap, TruncSimplicialSet};
