//! Finitary monads on finite sets, their Kleisli categories, and the
//! presentations of state, I/O and free groups.

mod classic;
mod group;
mod io;
mod monad;
mod state;
mod store;

pub use classic::*;
pub use group::*;
pub use io::*;
pub use monad::*;
pub use state::*;
pub use store::*;
