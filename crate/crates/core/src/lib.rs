pub mod cli;
pub mod error;
pub mod expansion;
pub mod format;
pub mod index_set;
pub mod omega;
pub mod oracle;
pub mod poly;
pub mod scalar;
pub mod structure;

pub use error::{Error, Result};
pub use index_set::{IndexSet, RingContext};
pub use poly::{OmegaClass, SquareFreePoly, TautClass, XPolynomial};
pub use scalar::Scalar;
