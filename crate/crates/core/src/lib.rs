//! Exact computations with equivariant modules over the truncated rings
//! `k[x_1..x_N]/(x_i^{s+1})` and their symmetric-group actions.

pub mod cas_cat;
pub mod combinat;
pub mod equivariant;
pub mod error;
pub mod fi_layer;
pub mod groth;
pub mod homcalc;
pub mod linalg;
pub mod rep;
pub mod report;
pub mod truncated_ring;
pub mod verify;

pub use error::{Error, Result};
