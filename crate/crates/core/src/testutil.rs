//! Test helpers for unit tests.
#![allow(dead_code)]

use rand::Rng;

use crate::code::{symplectic_dual, StabilizerCode};
use crate::gfp::{FpMatrix, PrimeField, Residue};

pub use crate::fixtures::{qubit_21_5_6, qutrit_15_3_5, qutrit_5_2_2};

use crate::symplectic::SympVec;
include!("../tests/common/random_codes.rs");
include!("../tests/common/oracles.rs");

pub fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

pub fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}
