//! The quantum Griesmer bound `n >= sum_{i<k} ceil(d / p^i)` and the
//! puncture-down reduction behind it.

use serde::Serialize;

use crate::code::StabilizerCode;
use crate::distance::{min_distance, min_weight_words, EnumBudget};
use crate::error::{Error, Result};
use crate::gfp::Residue;
use crate::puncture::{puncture_with_case, PunctureCase};
use crate::symplectic::ProjPair;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GriesmerVerdict {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub p: u32,
    pub bound_value: u64,
    pub satisfied: bool,
}

pub fn griesmer_bound(n: usize, k: usize, d: usize, p: u32) -> GriesmerVerdict {
    let mut power = 1u128;
    let mut bound = 0u128;
    for _ in 0..k {
        bound += (d as u128).div_ceil(power);
        power = power.saturating_mul(p as u128);
    }
    GriesmerVerdict {
        n,
        k,
        d,
        p,
        bound_value: bound.min(u64::MAX as u128) as u64,
        satisfied: n as u128 >= bound,
    }
}

/// One puncture of the reduction and the dimensions it produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    /// Position in the code before this step, which equals the original position
    /// because support positions are removed in descending order.
    pub index: usize,
    pub pair: ProjPair,
    pub case: PunctureCase,
    pub n: usize,
    pub k: usize,
    pub stab_dim: usize,
    pub centralizer_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub p: u32,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    /// The minimum-weight word punctured away, as a row `(a|b)`.
    pub word: Vec<Residue>,
    pub steps: Vec<ReductionStep>,
    pub reduced_n: usize,
    pub reduced_k: usize,
    pub reduced_d: usize,
    /// `ceil(d / p)`, the distance the reduced code is guaranteed.
    pub guaranteed_d: usize,
}

/// Punctures away the support of the smallest canonical minimum-weight word,
/// pair by pair, giving an `[[n - d, k - 1, d']]` code with `d' >= ceil(d / p)`.
pub fn griesmer_reduce(code: &StabilizerCode, budget: &EnumBudget) -> Result<(StabilizerCode, ReductionTrace)> {
    if code.k() == 0 {
        return Err(Error::Unsupported("griesmer reduction needs k >= 1".into()));
    }
    let report = min_weight_words(
        code,
        &EnumBudget {
            max_weight: None,
            ..*budget
        },
        1,
    )?;
    let word = report.words[0].clone();
    let d = report.d;
    if d >= code.n() {
        return Err(Error::Unsupported(format!(
            "minimum-weight word covers all {} positions",
            code.n()
        )));
    }
    let mut support = word.support();
    support.reverse();

    let mut cur = code.clone();
    let mut steps = Vec::with_capacity(d);
    for &i in &support {
        let raw = word.pair(i);
        let (next, case) = puncture_with_case(&cur, i, raw)?;
        steps.push(ReductionStep {
            index: i,
            pair: ProjPair::new(code.field(), raw.0, raw.1)?,
            case,
            n: next.n(),
            k: next.k(),
            stab_dim: next.stab().rows(),
            centralizer_dim: next.n() + next.k(),
        });
        cur = next;
    }
    // the last step removes a weight-one logical (alpha,0|beta,0)
    debug_assert_eq!(steps.last().map(|s| s.case), Some(PunctureCase::ExtensionPivot));
    assert_eq!(cur.n(), code.n() - d);
    assert_eq!(cur.k(), code.k() - 1, "reduction must lose exactly one logical qudit");

    let reduced_d = min_distance(
        &cur,
        &EnumBudget {
            max_weight: None,
            ..*budget
        },
    )?
    .d;
    let p = code.p() as usize;
    let trace = ReductionTrace {
        p: code.p(),
        n: code.n(),
        k: code.k(),
        d,
        word: word.to_row(),
        steps,
        reduced_n: cur.n(),
        reduced_k: cur.k(),
        reduced_d,
        guaranteed_d: d.div_ceil(p),
    };
    Ok((cur, trace))
}
