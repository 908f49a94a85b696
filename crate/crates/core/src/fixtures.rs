//! Bundled example codes.

use crate::code::StabilizerCode;
use crate::io::parse_code;

/// `[[5,2,2]]_3` with its full centralizer matrix.
pub const QUTRIT_5_2_2: &str = include_str!("../fixtures/qutrit_5_2_2.code");
/// `[[15,3,5]]_3`, stabilizer rows only.
pub const QUTRIT_15_3_5: &str = include_str!("../fixtures/qutrit_15_3_5.code");
/// Cyclic `[[21,5,6]]_2`, stabilizer rows only.
pub const QUBIT_21_5_6: &str = include_str!("../fixtures/qubit_21_5_6.code");

pub fn qutrit_5_2_2() -> StabilizerCode {
    parse_code(QUTRIT_5_2_2).expect("bundled fixture")
}

pub fn qutrit_15_3_5() -> StabilizerCode {
    parse_code(QUTRIT_15_3_5).expect("bundled fixture")
}

pub fn qubit_21_5_6() -> StabilizerCode {
    parse_code(QUBIT_21_5_6).expect("bundled fixture")
}

/// Looks up a bundled fixture by file stem.
pub fn by_name(name: &str) -> Option<StabilizerCode> {
    match name {
        "qutrit_5_2_2" => Some(qutrit_5_2_2()),
        "qutrit_15_3_5" => Some(qutrit_15_3_5()),
        "qubit_21_5_6" => Some(qubit_21_5_6()),
        _ => None,
    }
}
