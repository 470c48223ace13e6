pub mod braid;
pub mod cli;
pub mod dg;
pub mod error;
pub mod field;
pub mod fukaya;
pub mod lattice;
pub mod localization;
pub mod poly;
pub mod quiver;
pub mod ring;
pub mod slope;
