//! Hom, Ext and Tor between equivariant modules over the truncated ring.

pub mod hom;

pub use hom::{
    generator_images, hom_generic, hom_mapping_property, inclusion_matrix, stable_hom,
    stable_hom_modules, stable_hom_pq, HomSource, StableHomResult,
};

pub mod complex;

pub use complex::{coresolution_q, Complex, Coresolution, CoresolutionSummary};

pub mod ext;

pub use ext::{betti_numbers, ext_stable, ext_stable_from, ext_truncated, hom_dim_via_resolution};

pub mod tor;

pub use tor::{character_dim, tensor_over_ring, tor0_from_resolution, tor_periodic};
