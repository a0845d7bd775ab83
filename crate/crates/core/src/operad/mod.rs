//! Plain operads truncated at a maximal arity, their induced monads, and
//! strong regularity of equations.

mod monad;
mod regular;
mod table;

pub use monad::*;
pub use regular::*;
pub use table::*;
