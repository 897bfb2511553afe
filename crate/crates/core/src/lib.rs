//! Dense constructions behind guardian maps for Hurwitz stability.
//!
//! The crate builds the matrices whose determinants vanish exactly when a
//! real matrix reaches the boundary of the set of Hurwitz matrices:
//!
//! * the Kronecker sum `A ⊕ A` ([`kron`]),
//! * multiplicative and additive compounds `A^(k)`, `A^[k]` ([`compound`]),
//! * upper and lower Schläflian matrices `U_p(A)`, `L_p(A)` ([`schlaflian`]),
//! * the bialternate sum `A ⋄ A` ([`bialternate`]),
//!
//! together with the Lie-algebraic checks that tie them together
//! ([`representations`]), the matrix ODE `Ẋ = AX + XAᵀ` ([`ode`]) and a
//! one-parameter stability sweep ([`sweep`]).
//!
//! Everything here is `no_std` with `alloc`; IO, file formats and the CLI live
//! in the `guardrep` crate.

#![no_std]

extern crate alloc;

pub mod bialternate;
pub mod complex;
pub mod compound;
pub mod eigen;
mod error;
pub mod expm;
pub mod kron;
pub mod matrix;
pub(crate) mod num;
pub mod ode;
pub mod representations;
pub mod schlaflian;
pub mod sweep;

pub use complex::Complex;
pub use eigen::{is_hurwitz, spectrum, HurwitzVerdict, Spectrum};
pub use error::{Error, Result};
pub use matrix::{GuardianValue, Matrix};
pub use representations::{GuardianMapKind, GuardianReport, GuardianVerdict};
