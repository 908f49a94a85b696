//! Helpers shared by the integration tests.
#![allow(dead_code)]

use rand::Rng;
use sympunct::code::{symplectic_dual, StabilizerCode};
use sympunct::gfp::{FpMatrix, PrimeField, Residue};

use sympunct::symplectic::SympVec;
include!("random_codes.rs");
include!("oracles.rs");

pub fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}
