//! Arithmetic and dense linear algebra over a prime field.
//!
//! Residues are stored as `u16`, which covers every supported modulus
//! (`p <= 65521`). Row operations on fields with `p < 256` go through a
//! precomputed multiplication table; larger moduli fall back to 64-bit
//! modular arithmetic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Residue = u16;

/// A prime modulus `p` with `2 <= p <= 65521`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u16,
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.modulus()
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut q = 2u32;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 1;
    }
    true
}

impl PrimeField {
    pub const MAX_MODULUS: u32 = 65521;

    pub fn new(p: u32) -> Result<Self> {
        if p > Self::MAX_MODULUS || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeField { p: p as u16 })
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.p as u32
    }

    /// Number of elements, as a `usize` for indexing.
    #[inline]
    pub fn order(self) -> usize {
        self.p as usize
    }

    #[inline]
    pub fn reduce(self, x: i64) -> Residue {
        x.rem_euclid(self.p as i64) as Residue
    }

    #[inline]
    pub fn add(self, x: Residue, y: Residue) -> Residue {
        let s = x as u32 + y as u32;
        let p = self.p as u32;
        (if s >= p { s - p } else { s }) as Residue
    }

    #[inline]
    pub fn sub(self, x: Residue, y: Residue) -> Residue {
        let p = self.p as u32;
        let d = x as u32 + p - y as u32;
        (if d >= p { d - p } else { d }) as Residue
    }

    #[inline]
    pub fn neg(self, x: Residue) -> Residue {
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }

    #[inline]
    pub fn mul(self, x: Residue, y: Residue) -> Residue {
        ((x as u64 * y as u64) % self.p as u64) as Residue
    }

    pub fn pow(self, mut x: Residue, mut e: u64) -> Residue {
        let mut acc: Residue = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, x);
            }
            x = self.mul(x, x);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, x: Residue) -> Residue {
        assert!(!x.is_multiple_of(self.p), "zero has no inverse");
        self.pow(x, self.p as u64 - 2)
    }

    pub fn contains(self, x: u64) -> bool {
        x < self.p as u64
    }

    pub fn elements(self) -> impl Iterator<Item = Residue> {
        0..self.p
    }
}

/// `dst[j] -= c * src[j]` for every column, using a product table when one is available.
struct RowOps {
    field: PrimeField,
    table: Option<Vec<Residue>>,
}

impl RowOps {
    fn new(field: PrimeField) -> Self {
        let p = field.order();
        let table = (p < 256).then(|| {
            let mut t = vec![0; p * p];
            for x in 0..p {
                for y in 0..p {
                    t[x * p + y] = ((x * y) % p) as Residue;
                }
            }
            t
        });
        RowOps { field, table }
    }

    fn sub_multiple(&self, dst: &mut [Residue], src: &[Residue], c: Residue) {
        if c == 0 {
            return;
        }
        let f = self.field;
        match &self.table {
            Some(t) => {
                let p = f.order();
                let times_c = &t[c as usize * p..(c as usize + 1) * p];
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = f.sub(*d, times_c[s as usize]);
                }
            }
            None => {
                for (d, &s) in dst.iter_mut().zip(src) {
                    *d = f.sub(*d, f.mul(c, s));
                }
            }
        }
    }

    fn scale(&self, row: &mut [Residue], c: Residue) {
        let f = self.field;
        for x in row.iter_mut() {
            *x = f.mul(*x, c);
        }
    }
}

/// Dense row-major matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FpMatrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<Residue>,
}

/// Reduced row echelon form together with its rank and pivot columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: FpMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl FpMatrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        FpMatrix {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn empty(field: PrimeField, cols: usize) -> Self {
        Self::zeros(field, 0, cols)
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p;
        }
        m
    }

    /// Builds a matrix from rows of integers, checking widths and residue ranges.
    pub fn from_rows<R: AsRef<[u64]>>(field: PrimeField, cols: usize, rows: &[R]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            for (j, &v) in r.iter().enumerate() {
                if !field.contains(v) {
                    return Err(Error::EntryOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                        p: field.modulus(),
                    });
                }
                data.push(v as Residue);
            }
        }
        Ok(FpMatrix {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Builds a matrix from rows that are already reduced residues.
    pub fn from_residue_rows<R: AsRef<[Residue]>>(field: PrimeField, cols: usize, rows: &[R]) -> Self {
        let mut m = Self::empty(field, cols);
        for r in rows {
            m.push_row(r.as_ref());
        }
        m
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Residue {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Residue) {
        debug_assert!((v as u32) < self.field.modulus());
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Residue] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_mut(&mut self, r: usize) -> &mut [Residue] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Residue]> + '_ {
        (0..self.rows).map(move |r| self.row(r))
    }

    pub fn as_slice(&self) -> &[Residue] {
        &self.data
    }

    pub fn push_row(&mut self, row: &[Residue]) {
        assert_eq!(row.len(), self.cols, "row width mismatch");
        debug_assert!(row.iter().all(|&x| (x as u32) < self.field.modulus()));
        self.data.extend_from_slice(row);
        self.rows += 1;
    }

    pub fn remove_row(&mut self, r: usize) {
        self.data.drain(r * self.cols..(r + 1) * self.cols);
        self.rows -= 1;
    }

    /// Vertical concatenation.
    pub fn stack(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.cols);
        assert_eq!(self.field, other.field);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        FpMatrix {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Copy of the matrix without the listed columns.
    pub fn delete_columns(&self, drop: &[usize]) -> FpMatrix {
        let keep: Vec<usize> = (0..self.cols).filter(|c| !drop.contains(c)).collect();
        self.select_columns(&keep)
    }

    /// Copy keeping only the listed columns, in the given order.
    pub fn select_columns(&self, keep: &[usize]) -> FpMatrix {
        let mut out = FpMatrix::zeros(self.field, self.rows, keep.len());
        for r in 0..self.rows {
            for (j, &c) in keep.iter().enumerate() {
                out.data[r * keep.len() + j] = self.get(r, c);
            }
        }
        out
    }

    pub fn transpose(&self) -> FpMatrix {
        let mut t = FpMatrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Residue]) -> Vec<Residue> {
        assert_eq!(v.len(), self.cols);
        let f = self.field;
        self.row_iter()
            .map(|row| {
                let s: u64 = row.iter().zip(v).map(|(&x, &y)| x as u64 * y as u64).sum::<u64>();
                (s % f.modulus() as u64) as Residue
            })
            .collect()
    }

    /// Linear combination `sum coeffs[i] * row(i)`.
    pub fn combine(&self, coeffs: &[Residue]) -> Vec<Residue> {
        assert_eq!(coeffs.len(), self.rows);
        let f = self.field;
        let mut acc = vec![0u64; self.cols];
        for (r, &c) in coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (a, &x) in acc.iter_mut().zip(self.row(r)) {
                *a += c as u64 * x as u64;
            }
            // keep the accumulator small enough for any modulus
            if r % 64 == 63 {
                acc.iter_mut().for_each(|a| *a %= f.modulus() as u64);
            }
        }
        acc.into_iter().map(|a| (a % f.modulus() as u64) as Residue).collect()
    }

    /// Reduced row echelon form with unit pivots; zero rows are dropped.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let ops = RowOps::new(f);
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(piv) = (lead..m.rows).find(|&r| m.get(r, c) != 0) else {
                continue;
            };
            if piv != lead {
                for j in 0..m.cols {
                    m.data.swap(piv * m.cols + j, lead * m.cols + j);
                }
            }
            let inv = f.inv(m.get(lead, c));
            ops.scale(m.row_mut(lead), inv);
            let pivot_row = m.row(lead).to_vec();
            for r in 0..m.rows {
                if r != lead {
                    let factor = m.get(r, c);
                    ops.sub_multiple(m.row_mut(r), &pivot_row, factor);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        m.data.truncate(lead * m.cols);
        m.rows = lead;
        Rref {
            matrix: m,
            rank: lead,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space `{x : M x = 0}`, one row per free column.
    pub fn kernel(&self) -> FpMatrix {
        let f = self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut out = FpMatrix::empty(f, self.cols);
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut x = vec![0; self.cols];
            x[free] = 1 % f.p;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = f.neg(matrix.get(i, free));
            }
            out.push_row(&x);
        }
        out
    }

    /// Membership test against the row space.
    pub fn in_row_space(&self, v: &[Residue]) -> bool {
        RowSpace::new(self).contains(v)
    }
}

/// Cached RREF of a row space, for repeated membership tests.
#[derive(Debug, Clone)]
pub struct RowSpace {
    basis: FpMatrix,
    pivots: Vec<usize>,
    ops_field: PrimeField,
}

impl RowSpace {
    pub fn new(m: &FpMatrix) -> Self {
        let r = m.rref();
        RowSpace {
            basis: r.matrix,
            pivots: r.pivots,
            ops_field: m.field(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn basis(&self) -> &FpMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residual of `v` after elimination against the basis; zero iff `v` is in the space.
    pub fn reduce(&self, v: &[Residue]) -> Vec<Residue> {
        assert_eq!(v.len(), self.basis.cols(), "vector length mismatch");
        let f = self.ops_field;
        let mut v = v.to_vec();
        for (i, &c) in self.pivots.iter().enumerate() {
            let x = v[c];
            if x != 0 {
                for (d, &s) in v.iter_mut().zip(self.basis.row(i)) {
                    *d = f.sub(*d, f.mul(x, s));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Residue]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the space if it is independent; returns whether it was added.
    pub fn insert(&mut self, v: &[Residue]) -> bool {
        if self.contains(v) {
            return false;
        }
        let mut m = self.basis.clone();
        m.push_row(v);
        *self = RowSpace::new(&m);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn mat(p: u32, rows: &[&[u64]]) -> FpMatrix {
        FpMatrix::from_rows(f(p), rows[0].len(), rows).unwrap()
    }

    #[test]
    fn primality_gate() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(65521).is_ok());
        assert_eq!(PrimeField::new(1), Err(Error::InvalidModulus(1)));
        assert_eq!(PrimeField::new(9), Err(Error::InvalidModulus(9)));
        assert_eq!(PrimeField::new(65537), Err(Error::InvalidModulus(65537)));
    }

    #[test]
    fn inverses() {
        for p in [2u32, 3, 5, 7, 251, 257, 65521] {
            let k = f(p);
            for x in [1u32, 2, p - 1] {
                if x >= p {
                    continue;
                }
                let x = x as Residue;
                assert_eq!(k.mul(x, k.inv(x)), 1);
            }
        }
    }

    #[test]
    fn rref_examples() {
        let r = mat(3, &[&[1, 2], &[2, 1]]).rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.matrix, mat(3, &[&[1, 2]]));

        let id = FpMatrix::identity(f(2), 3);
        let r = id.rref();
        assert_eq!(r.rank, 3);
        assert_eq!(r.matrix, id);
    }

    #[test]
    fn entry_range_checked() {
        let err = FpMatrix::from_rows(f(3), 2, &[[1u64, 3]]).unwrap_err();
        assert!(matches!(err, Error::EntryOutOfRange { col: 1, value: 3, .. }));
    }

    #[test]
    fn kernel_examples() {
        let k = mat(2, &[&[1, 1]]).kernel();
        assert_eq!(k, mat(2, &[&[1, 1]]));

        let full = mat(3, &[&[1, 2, 0], &[0, 1, 1], &[1, 0, 2]]);
        assert_eq!(full.rank(), 3);
        assert!(full.kernel().is_empty());
    }

    #[test]
    fn row_space_membership() {
        let m = mat(3, &[&[1, 0], &[0, 1]]);
        assert!(m.in_row_space(&[0, 0]));
        assert!(m.in_row_space(&[2, 2]));
        let line = mat(3, &[&[1, 1]]);
        assert!(line.in_row_space(&[2, 2]));
        assert!(!line.in_row_space(&[1, 2]));
        assert!(FpMatrix::empty(f(3), 2).in_row_space(&[0, 0]));
    }

    #[test]
    fn large_modulus_uses_fallback_path() {
        let m = mat(65521, &[&[65520, 3, 1], &[1, 65518, 65520]]);
        // second row is -first
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.rows(), 2);
        for x in k.row_iter() {
            assert!(m.mul_vec(x).iter().all(|&v| v == 0));
        }
    }
}
