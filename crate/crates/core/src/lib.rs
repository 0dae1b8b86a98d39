pub mod cli;
pub mod error;
pub mod ffield;
pub mod io;
pub mod linalg;
pub mod modrep;
pub mod qalgebra;
pub mod rankvar;
pub mod suppvar;
pub mod verify;

pub use error::{Error, Result};
