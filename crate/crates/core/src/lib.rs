//! Construction, puncturing, shortening and distance analysis of stabilizer
//! codes over prime fields, in their symplectic-vector representation.
//!
//! A code is held as a [`StabilizerCode`]: a basis of the stabilizer space
//! `S_p` plus extension rows completing it to its symplectic dual. On top of
//! that sit
//!
//! - [`puncture`]: puncturing with respect to an arbitrary projective pair
//!   `(alpha|beta)`, sequences of punctures, and stabilizer shortening;
//! - [`distance`]: Gray-code enumeration of minimum distance and minimum-weight words;
//! - [`search`]: avoidance puncturing, the t-tuple criterion, hitting sets, orbit representatives;
//! - [`griesmer`]: the quantum Griesmer bound and its puncture-down reduction;
//! - [`experiment`]: distributions of the distance excess over all t-fold puncturings.

pub mod cli;
pub mod code;
pub mod distance;
pub mod error;
pub mod experiment;
pub mod fixtures;
pub mod gfp;
pub mod griesmer;
pub mod io;
pub mod puncture;
pub mod search;
pub mod symplectic;

#[cfg(test)]
mod testutil;

pub use code::{CodeParams, StabilizerCode};
pub use distance::{centralizer_min_weight_words, min_distance, min_weight_words, EnumBudget, MinWeightReport};
pub use error::{Error, Result};
pub use gfp::{FpMatrix, PrimeField, Residue};
pub use puncture::{puncture, puncture_seq, shorten, PunctureSpec};
pub use symplectic::{pair_form, symp_form, symp_weight, ProjPair, SympVec};
