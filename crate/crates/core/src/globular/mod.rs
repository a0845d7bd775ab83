mod arity;
mod globset;
mod pd;
mod segal;

pub use arity::*;
pub use globset::*;
pub use pd::*;
pub use segal::*;
