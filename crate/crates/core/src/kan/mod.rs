//! Coends, pointwise left Kan extensions, weighted colimits of presheaves
//! and density.

mod coend;
mod lan;
mod weighted;

pub use coend::*;
pub use lan::*;
pub use weighted::*;
