pub mod corpus;
pub mod dalgebra;
pub mod dim7;
pub mod error;
pub mod ground;
pub mod ideals;
pub mod lie2;
pub mod pbw;
pub mod polyd;
pub mod shell;
pub mod structure;

pub use error::{Error, Result};
