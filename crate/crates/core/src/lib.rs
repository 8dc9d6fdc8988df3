//! Linear codes over the ring Z8.
//!
//! The crate covers the ambient arithmetic (four weights, Gray map), the
//! algebra of codes (standard form, duals, self-orthogonality), the lattice
//! of reduction and torsion codes over Z4 and Z2, exact covering-radius
//! oracles with a ledger of bounds, constructors for the classical code
//! families, and a harness that adjudicates published claims about them.

pub mod code;
pub mod config;
pub mod covering;
pub mod error;
pub mod families;
pub mod harness;
pub mod ring;
pub mod torsion;

pub use code::{LinearCode, Modulus, StandardForm, SubringCode};
pub use config::Budgets;
pub use error::{Error, Result};
pub use ring::{BitVector, Composition, Metric, OctVector, Residue};
