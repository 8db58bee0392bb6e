pub mod algebra;
pub mod error;
pub mod fock;
pub mod render;
pub mod serial;
pub mod symfun;
pub mod taugen;
pub mod verify;

pub use error::{Error, Result};
