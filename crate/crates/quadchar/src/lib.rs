//! Exact verification of the quadratic character identities governing Galois
//! distinction of regular supercuspidal representations.
//!
//! Fields are symbolic descriptors of tame extensions of `Q_p` (p odd), so every
//! character in play is evaluated through square classes and residue fields.

pub mod case_studies;
pub mod char_engine;
pub mod cli;
pub mod error;
pub mod galois_lattices;
pub mod padic_fields;
pub mod report;
pub mod residue_fields;
pub mod root_orbits;
pub mod tables;

pub use error::{Error, Result};
