pub mod error;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
pub use specfun::{ContourSpec, PainleveSolution};
