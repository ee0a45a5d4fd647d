//! Finite-scale computation with operads and their coalgebras in enriched
//! monoidal categories.
//!
//! The crate builds small symmetric monoidal categories enriched in finite
//! sets, materializes coendomorphism operads over their objects, enumerates
//! operadic coalgebras, constructs the associated comonads, and verifies the
//! expected structural laws by bounded-exhaustive checking. Every check
//! echoes the bounds it ran under; violations come back as reports with
//! concrete witnesses rather than panics.

pub mod coalgebra;
pub mod coendo;
pub mod cli;
pub mod comonad;
pub mod error;
pub mod fincat;
pub mod finset;
pub mod instances;
pub mod monoidal;
pub mod operad;

pub use error::{Error, Result};
pub use fincat::Obj;
pub use finset::{FinFn, FinSet};
