//! Physics and simulation library for a Cirac-Zoller trapped-ion quantum
//! computer: ion chain statics, Paul-trap operating points, laser tolerance
//! budgets, exact pulse-level quantum dynamics of the ion-phonon register,
//! and a desk-scale order-finding factorization pipeline with quantum/
//! classical resource comparison.
//!
//! All quantities are SI internally and angular frequencies are rad/s;
//! display units appear only at I/O boundaries.

pub mod chain;
pub mod constants;
pub mod error;
pub mod laser;
pub mod linalg;
pub mod pulse;
pub mod report;
pub mod shor;
pub mod species;
pub mod trap;

pub use error::{Error, Result};
pub use report::Flagged;
