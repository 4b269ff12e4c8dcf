//! Nearby cycles of the constant sheaf on the generic part of `𝔸ⁿ`.
//!
//! Everything is built explicitly from the level objects `Eᵒ(k)` and checked
//! as literal matrix identities; nothing is searched for.

mod kit;
mod pieces;
mod suite;
mod theorem;

use thiserror::Error;

pub use kit::{LaidOut, NearbyKit};
pub use pieces::{letter_sign, Letter, Piece, PieceMap, PieceObject};
pub use suite::{bold_jordan_suite, bold_suite, homotopy_suite, interface_suite, jordan_suite, level_suite};
pub use theorem::{
    equivalence, usage_report, verify_equivalence, verify_extension_by_zero, verify_recursion, Equivalence,
    UsageReport,
};

use crate::complex::ComplexError;

/// Largest `n` accepted by the kit; `E◇` has `n·2^{n-1}` summands.
pub const MAX_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NearbyError {
    #[error("n = {0} is out of range")]
    BadN(usize),
    #[error("identity {0} fails")]
    Identity(String),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}
