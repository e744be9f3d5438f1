pub mod centralizer;
pub mod cli;
pub mod cuspidal;
pub mod error;
pub mod glrep;
pub mod kernel;
pub mod pbw;
pub mod shenlarsson;
pub mod weylmod;
pub mod witt;

pub use error::{Error, Result};
