//! The stabilizer code object: a self-orthogonal stabilizer basis plus the
//! extension rows that complete it to a basis of the symplectic dual.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfp::{FpMatrix, PrimeField, Residue, RowSpace};
use crate::symplectic::{symp_form_rows, SympVec};

/// `[[n, k, d]]_p` parameters. `d` and `pure` stay empty until a distance run fills them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub p: u32,
    pub n: usize,
    pub k: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pure: Option<bool>,
}

/// A validated stabilizer code.
///
/// `stab` holds `n - k` independent, pairwise commuting rows spanning `S_p`;
/// `ext` holds `2k` rows such that `stab` and `ext` together span the
/// symplectic dual `S_p^⊥`. Rows are `2n` wide in `(a|b)` layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerCode {
    field: PrimeField,
    n: usize,
    k: usize,
    stab: FpMatrix,
    ext: FpMatrix,
}

/// Matrix whose kernel is the symplectic dual of `rows`: row `(a|b)` becomes `(b|-a)`.
fn dual_constraints(rows: &FpMatrix) -> FpMatrix {
    let f = rows.field();
    let n = rows.cols() / 2;
    let mut m = FpMatrix::empty(f, rows.cols());
    for r in rows.row_iter() {
        let mut c = Vec::with_capacity(2 * n);
        c.extend_from_slice(&r[n..]);
        c.extend(r[..n].iter().map(|&x| f.neg(x)));
        m.push_row(&c);
    }
    m
}

/// Basis of the symplectic dual of the row space of `rows`, in RREF.
pub fn symplectic_dual(rows: &FpMatrix) -> FpMatrix {
    let k = dual_constraints(rows).kernel();
    k.rref().matrix
}

fn first_noncommuting(rows: &FpMatrix) -> Option<(usize, usize)> {
    let f = rows.field();
    for i in 0..rows.rows() {
        for j in i + 1..rows.rows() {
            if symp_form_rows(f, rows.row(i), rows.row(j)) != 0 {
                return Some((i, j));
            }
        }
    }
    None
}

/// Index of the first row that lies in the span of the rows before it.
fn first_dependent(rows: &FpMatrix) -> Option<usize> {
    let mut span = RowSpace::new(&FpMatrix::empty(rows.field(), rows.cols()));
    (0..rows.rows()).find(|&i| !span.insert(rows.row(i)))
}

/// Greedily picks rows of `candidates`, in order, that are independent of `base` and of each other.
fn extend_greedily(base: &FpMatrix, candidates: impl Iterator<Item = Vec<Residue>>) -> FpMatrix {
    let mut span = RowSpace::new(base);
    let mut out = FpMatrix::empty(base.field(), base.cols());
    for c in candidates {
        if span.insert(&c) {
            out.push_row(&c);
        }
    }
    out
}

/// Keeps rows in order, dropping zero rows and rows dependent on earlier ones.
pub(crate) fn independent_rows(rows: &FpMatrix) -> FpMatrix {
    extend_greedily(
        &FpMatrix::empty(rows.field(), rows.cols()),
        rows.row_iter().map(|r| r.to_vec()),
    )
}

impl StabilizerCode {
    /// Builds a code from stabilizer generators, computing the extension rows.
    ///
    /// The dual `S_p^⊥` is computed in RREF and extension rows are chosen from
    /// it greedily, skipping rows already spanned.
    pub fn from_stabilizer(field: PrimeField, n: usize, rows: &[SympVec]) -> Result<Self> {
        let mut m = FpMatrix::empty(field, 2 * n);
        for (i, r) in rows.iter().enumerate() {
            if r.n() != n || r.field() != field {
                return Err(Error::DimensionMismatch(format!(
                    "stabilizer row {i} has length {} over F_{}, expected {n} over F_{}",
                    r.n(),
                    r.field().modulus(),
                    field.modulus()
                )));
            }
            m.push_row(&r.to_row());
        }
        Self::from_stabilizer_matrix(m)
    }

    pub fn from_stabilizer_matrix(stab: FpMatrix) -> Result<Self> {
        if !stab.cols().is_multiple_of(2) || stab.cols() == 0 {
            return Err(Error::DimensionMismatch(format!(
                "stabilizer matrix has {} columns, expected 2n with n >= 1",
                stab.cols()
            )));
        }
        let n = stab.cols() / 2;
        if stab.rows() > n {
            return Err(Error::DependentRows(n));
        }
        if let Some((i, j)) = first_noncommuting(&stab) {
            return Err(Error::NonCommutingRows(i, j));
        }
        if let Some(i) = first_dependent(&stab) {
            return Err(Error::DependentRows(i));
        }
        let dual = symplectic_dual(&stab);
        let ext = extend_greedily(&stab, dual.row_iter().map(|r| r.to_vec()));
        let k = n - stab.rows();
        debug_assert_eq!(ext.rows(), 2 * k);
        Self::from_full_matrix(stab.field(), n, k, stab, ext)
    }

    /// Ingests a complete centralizer matrix, validating every invariant.
    pub fn from_full_matrix(field: PrimeField, n: usize, k: usize, stab: FpMatrix, ext: FpMatrix) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch("code length must be at least 1".into()));
        }
        if k > n {
            return Err(Error::DimensionMismatch(format!("k = {k} exceeds n = {n}")));
        }
        for (what, m) in [("stabilizer", &stab), ("extension", &ext)] {
            if m.field() != field {
                return Err(Error::DimensionMismatch(format!(
                    "{what} matrix is over the wrong field"
                )));
            }
            if m.cols() != 2 * n {
                return Err(Error::DimensionMismatch(format!(
                    "{what} matrix has {} columns, expected {}",
                    m.cols(),
                    2 * n
                )));
            }
        }
        if stab.rows() != n - k {
            return Err(Error::RowCount {
                what: "stabilizer",
                expected: n - k,
                found: stab.rows(),
            });
        }
        if ext.rows() != 2 * k {
            return Err(Error::RowCount {
                what: "extension",
                expected: 2 * k,
                found: ext.rows(),
            });
        }
        if let Some((i, j)) = first_noncommuting(&stab) {
            return Err(Error::NonCommutingRows(i, j));
        }
        if let Some(i) = first_dependent(&stab) {
            return Err(Error::DependentRows(i));
        }
        for e in 0..ext.rows() {
            for s in 0..stab.rows() {
                if symp_form_rows(field, ext.row(e), stab.row(s)) != 0 {
                    return Err(Error::ExtensionNotOrthogonal { ext: e, stab: s });
                }
            }
        }
        let stab_space = RowSpace::new(&stab);
        if let Some(e) = (0..ext.rows()).find(|&e| stab_space.contains(ext.row(e))) {
            return Err(Error::ExtensionInStabilizer(e));
        }
        let rank = stab.stack(&ext).rank();
        if rank != n + k {
            return Err(Error::RankDeficient { rank, expected: n + k });
        }
        Ok(StabilizerCode { field, n, k, stab, ext })
    }

    /// Builds a code from spanning sets of the stabilizer and of its dual.
    ///
    /// Dependent rows are pruned in order; extension rows are taken greedily
    /// from `centralizer` in row order.
    pub(crate) fn from_spanning_rows(stab: &FpMatrix, centralizer: &FpMatrix) -> Result<Self> {
        let field = stab.field();
        let n = stab.cols() / 2;
        let stab = independent_rows(stab);
        let ext = extend_greedily(&stab, centralizer.row_iter().map(|r| r.to_vec()));
        if stab.rows() > n {
            return Err(Error::DependentRows(n));
        }
        let k = n - stab.rows();
        Self::from_full_matrix(field, n, k, stab, ext)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn p(&self) -> u32 {
        self.field.modulus()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn stab(&self) -> &FpMatrix {
        &self.stab
    }

    pub fn ext(&self) -> &FpMatrix {
        &self.ext
    }

    /// `stab` over `ext`: a basis of `S_p^⊥`.
    pub fn centralizer(&self) -> FpMatrix {
        self.stab.stack(&self.ext)
    }

    pub fn stab_space(&self) -> RowSpace {
        RowSpace::new(&self.stab)
    }

    pub fn centralizer_space(&self) -> RowSpace {
        RowSpace::new(&self.centralizer())
    }

    pub fn stab_vectors(&self) -> Vec<SympVec> {
        self.stab
            .row_iter()
            .map(|r| SympVec::from_row(self.field, r).expect("validated row"))
            .collect()
    }

    pub fn params(&self) -> CodeParams {
        CodeParams {
            p: self.p(),
            n: self.n,
            k: self.k,
            d: None,
            pure: None,
        }
    }

    /// Key equal for two codes iff they share `(p, n)` and the stabilizer row space.
    pub fn canonical_key(&self) -> Vec<u8> {
        let rref = self.stab.rref().matrix;
        let mut key = Vec::with_capacity(8 + 2 * rref.as_slice().len());
        key.extend_from_slice(&(self.p() as u16).to_le_bytes());
        key.extend_from_slice(&(self.n as u32).to_le_bytes());
        key.extend_from_slice(&(rref.rows() as u16).to_le_bytes());
        for &x in rref.as_slice() {
            key.extend_from_slice(&x.to_le_bytes());
        }
        key
    }
}
