//! Puncturing with respect to a projective pair, sequences of punctures,
//! and shortening of the stabilizer.
//!
//! Puncturing position `i` with respect to `(alpha|beta)` keeps the vectors
//! whose `i`-th pair is symplectically orthogonal to `(alpha|beta)` (the
//! kernel of `sigma(v) = <(a_i|b_i), (alpha|beta)>_s`) and deletes position
//! `i`. It is applied to both the stabilizer and its dual.
//!
//! Two implementations exist. [`puncture`] performs row operations on the
//! stacked centralizer matrix: the first row with a nonzero `sigma` is the
//! pivot, later rows are cleared with it, the pivot row is dropped, and the
//! column pair is deleted. [`puncture_by_definition`] builds both kernels
//! directly and serves as the reference for the row-operation path.

use serde::{Deserialize, Serialize};

use crate::code::{independent_rows, StabilizerCode};
use crate::error::{Error, Result};
use crate::gfp::{FpMatrix, PrimeField, Residue};
use crate::symplectic::{pair_form, ProjPair};

/// One puncture: a position in the code current at that step, and a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PunctureStep {
    pub index: usize,
    pub pair: ProjPair,
}

/// Ordered puncture steps; each index refers to the code produced by the previous step.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PunctureSpec {
    pub steps: Vec<PunctureStep>,
}

impl PunctureSpec {
    pub fn new(steps: Vec<PunctureStep>) -> Self {
        PunctureSpec { steps }
    }

    /// Steps puncturing the original positions `positions[j]` with `pairs[j]`.
    ///
    /// Positions are processed in descending order so removals never shift a
    /// later index.
    pub fn from_positions(positions: &[usize], pairs: &[ProjPair]) -> Result<Self> {
        if positions.len() != pairs.len() {
            return Err(Error::InvalidIndices(format!(
                "{} positions but {} pairs",
                positions.len(),
                pairs.len()
            )));
        }
        let mut order: Vec<usize> = (0..positions.len()).collect();
        order.sort_by(|&x, &y| positions[y].cmp(&positions[x]));
        if order.windows(2).any(|w| positions[w[0]] == positions[w[1]]) {
            return Err(Error::InvalidIndices("repeated position".into()));
        }
        Ok(PunctureSpec {
            steps: order
                .into_iter()
                .map(|j| PunctureStep {
                    index: positions[j],
                    pair: pairs[j],
                })
                .collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }
}

/// Which branch of the row-operation puncture ran.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PunctureCase {
    /// A stabilizer row had nonzero `sigma`; stabilizer and dual each lose one dimension.
    StabilizerPivot,
    /// Only extension rows had nonzero `sigma`, so `(alpha,0|beta,0)` lies in the
    /// dual but not the stabilizer; the stabilizer keeps its dimension and the dual loses two.
    ExtensionPivot,
    /// `sigma` vanished on every row, so `(alpha,0|beta,0)` lies in the stabilizer.
    Degenerate,
}

fn check_args(code: &StabilizerCode, index: usize, pair: (Residue, Residue)) -> Result<()> {
    if code.n() < 2 {
        return Err(Error::InvalidIndex { index, n: code.n() });
    }
    if index >= code.n() {
        return Err(Error::InvalidIndex { index, n: code.n() });
    }
    let f = code.field();
    if (pair.0 as u32) >= f.modulus() || (pair.1 as u32) >= f.modulus() {
        return Err(Error::EntryOutOfRange {
            row: 0,
            col: 0,
            value: pair.0.max(pair.1) as u64,
            p: f.modulus(),
        });
    }
    if pair == (0, 0) {
        return Err(Error::ZeroPair);
    }
    Ok(())
}

#[inline]
fn sigma(f: PrimeField, row: &[Residue], n: usize, index: usize, pair: (Residue, Residue)) -> Residue {
    pair_form(f, (row[index], row[n + index]), pair)
}

/// Punctures position `index` (0-based) with respect to `pair`.
pub fn puncture(code: &StabilizerCode, index: usize, pair: ProjPair) -> Result<StabilizerCode> {
    puncture_with_case(code, index, pair.as_tuple()).map(|(c, _)| c)
}

/// Row-operation puncture with a raw, not necessarily canonical, pair; also reports the branch taken.
pub fn puncture_with_case(
    code: &StabilizerCode,
    index: usize,
    pair: (Residue, Residue),
) -> Result<(StabilizerCode, PunctureCase)> {
    check_args(code, index, pair)?;
    let f = code.field();
    let (n, k) = (code.n(), code.k());
    let s = code.stab().rows();
    let mut rows: Vec<Vec<Residue>> = code.centralizer().row_iter().map(|r| r.to_vec()).collect();

    let (stab_count, case) = match rows.iter().position(|r| sigma(f, r, n, index, pair) != 0) {
        Some(i) => {
            let delta_inv = f.inv(sigma(f, &rows[i], n, index, pair));
            let pivot = rows[i].clone();
            for row in rows.iter_mut().skip(i + 1) {
                let gamma = sigma(f, row, n, index, pair);
                if gamma != 0 {
                    let c = f.mul(gamma, delta_inv);
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
            rows.remove(i);
            if i < s {
                (s - 1, PunctureCase::StabilizerPivot)
            } else {
                (s, PunctureCase::ExtensionPivot)
            }
        }
        None => {
            // (alpha,0|beta,0) is in S_p; drop a stabilizer row it can replace.
            let mut target = vec![0; 2 * n];
            target[index] = pair.0;
            target[n + index] = pair.1;
            let mut m = code.stab().clone();
            m.push_row(&target);
            let relations = m.transpose().kernel();
            let drop = relations
                .row_iter()
                .find(|c| c[s] != 0)
                .and_then(|c| c[..s].iter().position(|&x| x != 0))
                .ok_or_else(|| {
                    Error::Unsupported("sigma vanishes on the dual but (alpha,0|beta,0) is not a stabilizer".into())
                })?;
            rows.remove(drop);
            (s - 1, PunctureCase::Degenerate)
        }
    };

    let drop_cols = [index, n + index];
    let stacked = FpMatrix::from_residue_rows(f, 2 * n, &rows).delete_columns(&drop_cols);
    let stab_part = FpMatrix::from_residue_rows(
        f,
        2 * (n - 1),
        &(0..stab_count).map(|r| stacked.row(r).to_vec()).collect::<Vec<_>>(),
    );
    let stab = independent_rows(&stab_part);
    let out = StabilizerCode::from_spanning_rows(&stab, &stacked)?;

    let (exp_stab, exp_cent) = match case {
        PunctureCase::StabilizerPivot | PunctureCase::Degenerate => (s - 1, n + k - 1),
        PunctureCase::ExtensionPivot => (s, n + k - 2),
    };
    debug_assert_eq!(out.stab().rows(), exp_stab, "{case:?}");
    debug_assert_eq!(out.n() + out.k(), exp_cent, "{case:?}");
    Ok((out, case))
}

/// Restriction of the row space of `basis` to `ker sigma`, with the column pair deleted.
fn restrict_and_project(basis: &FpMatrix, index: usize, pair: (Residue, Residue)) -> FpMatrix {
    let f = basis.field();
    let n = basis.cols() / 2;
    let values: Vec<Residue> = basis.row_iter().map(|r| sigma(f, r, n, index, pair)).collect();
    let functional = FpMatrix::from_residue_rows(f, basis.rows(), &[values]);
    let combos = functional.kernel();
    let mut kept = FpMatrix::empty(f, 2 * n);
    for c in combos.row_iter() {
        kept.push_row(&basis.combine(c));
    }
    kept.delete_columns(&[index, n + index])
}

/// Puncture computed straight from the set definition: project `ker sigma`
/// of the stabilizer and of its dual.
pub fn puncture_by_definition(code: &StabilizerCode, index: usize, pair: (Residue, Residue)) -> Result<StabilizerCode> {
    check_args(code, index, pair)?;
    let stab = restrict_and_project(code.stab(), index, pair).rref().matrix;
    let cent = restrict_and_project(&code.centralizer(), index, pair).rref().matrix;
    StabilizerCode::from_spanning_rows(&stab, &cent)
}

/// Left fold of [`puncture`] over the steps.
pub fn puncture_seq(code: &StabilizerCode, spec: &PunctureSpec) -> Result<StabilizerCode> {
    let mut cur = code.clone();
    for step in &spec.steps {
        cur = puncture(&cur, step.index, step.pair)?;
    }
    Ok(cur)
}

fn validate_index_set(n: usize, indices: &[usize]) -> Result<()> {
    for (j, &i) in indices.iter().enumerate() {
        if i >= n {
            return Err(Error::InvalidIndex { index: i, n });
        }
        if indices[..j].contains(&i) {
            return Err(Error::InvalidIndices(format!("position {i} repeated")));
        }
    }
    if indices.len() >= n {
        return Err(Error::InvalidIndices(format!(
            "cannot remove {} of {n} positions",
            indices.len()
        )));
    }
    Ok(())
}

/// Shortens the stabilizer at `indices`: keeps stabilizer vectors that vanish
/// there, deletes the positions, and takes the dual to be the deleted-position
/// projection of the old dual.
pub fn shorten(code: &StabilizerCode, indices: &[usize]) -> Result<StabilizerCode> {
    let n = code.n();
    validate_index_set(n, indices)?;
    let f = code.field();
    let cols: Vec<usize> = indices.iter().flat_map(|&i| [i, n + i]).collect();

    let constraints = code.stab().select_columns(&cols).transpose();
    let combos = constraints.kernel();
    let mut kept = FpMatrix::empty(f, 2 * n);
    for c in combos.row_iter() {
        kept.push_row(&code.stab().combine(c));
    }
    let stab = kept.delete_columns(&cols).rref().matrix;
    let cent = code.centralizer().delete_columns(&cols).rref().matrix;
    StabilizerCode::from_spanning_rows(&stab, &cent)
}
