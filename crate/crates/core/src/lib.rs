//! Exact invariants of line bundles and simple semihomogeneous vector
//! bundles on abelian varieties.
//!
//! An abelian variety is modelled as the lattice `Z^{2g}` together with a
//! rational complex structure `J` (`J² = -1`). A Néron–Severi class is an
//! integral alternating form `E` with `Jᵀ E J = E`, and a point of the dual
//! variety is a torsion character, stored as a rational vector modulo `Z`.

pub mod error;
pub mod exact_serde;
pub mod fourier_mukai;
pub mod line_bundle;
pub mod linalg;
pub mod oracles;
pub mod semihom;
pub mod testbed;
pub mod torus;

pub use error::{Error, Result};
