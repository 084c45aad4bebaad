//! Exact construction and machine verification of the near-group fusion
//! category data attached to the groups G_n = (V_n ⊕ V_n) ⋊ S4: the
//! groups themselves, adapted torsion 3-cocycles, simple objects,
//! Frobenius-Schur indicators, and invertible-object groups — all
//! computed over Z[zeta_N] with no floating point on any decision path.

pub mod category;
pub mod cochain;
pub mod concrete;
pub mod cyclotomic;
pub mod error;
pub mod group;
pub mod invertibles;
pub mod solve;

pub use error::{Error, Result};
