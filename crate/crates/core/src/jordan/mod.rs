pub mod domain;
pub mod matrix;
pub mod ops;

pub use domain::{blocks, Coord, Domain, Kind, StructureConstants};
pub use matrix::{rat_det, rat_mat_mul, rat_solve, PMat};
pub use ops::*;
pub mod verify;
