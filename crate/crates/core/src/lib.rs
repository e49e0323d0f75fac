//! Exact Jordan-triple calculus on the classical Hermitian symmetric domains,
//! holomorphic discrete series actions, and explicit intertwining operators.

pub mod error;
pub mod exact;
pub mod jordan;
pub mod spaces;
pub mod expansion;
pub mod lie;
pub mod sbo;
pub mod residue;

pub use error::{Error, Result};
