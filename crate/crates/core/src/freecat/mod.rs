//! The free-category monad on graphs and its arities `i₀[n]`.

mod algebra;
mod arity;
mod delta0;
mod graph;
mod kleisli;

pub use algebra::*;
pub use arity::*;
pub use delta0::*;
pub use graph::*;
pub use kleisli::*;
