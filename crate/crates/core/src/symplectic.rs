//! Symplectic vectors `(a|b)` over `F_p`, the symplectic form and weight,
//! and projective single-qudit pairs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gfp::{PrimeField, Residue};

/// A length-`n` vector of pairs `(a_i|b_i)`, stored as separate `a` and `b` halves.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SympVec {
    field: PrimeField,
    a: Vec<Residue>,
    b: Vec<Residue>,
}

impl SympVec {
    pub fn new(field: PrimeField, a: Vec<Residue>, b: Vec<Residue>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch(format!(
                "a-part has {} entries, b-part has {}",
                a.len(),
                b.len()
            )));
        }
        for (col, &x) in a.iter().chain(&b).enumerate() {
            if (x as u32) >= field.modulus() {
                return Err(Error::EntryOutOfRange {
                    row: 0,
                    col,
                    value: x as u64,
                    p: field.modulus(),
                });
            }
        }
        Ok(SympVec { field, a, b })
    }

    pub fn zeros(field: PrimeField, n: usize) -> Self {
        SympVec {
            field,
            a: vec![0; n],
            b: vec![0; n],
        }
    }

    /// Splits a `2n`-entry row laid out as `(a_1..a_n, b_1..b_n)`.
    pub fn from_row(field: PrimeField, row: &[Residue]) -> Result<Self> {
        if !row.len().is_multiple_of(2) {
            return Err(Error::DimensionMismatch(format!(
                "symplectic row has odd length {}",
                row.len()
            )));
        }
        let n = row.len() / 2;
        Self::new(field, row[..n].to_vec(), row[n..].to_vec())
    }

    pub fn to_row(&self) -> Vec<Residue> {
        let mut r = self.a.clone();
        r.extend_from_slice(&self.b);
        r
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[Residue] {
        &self.a
    }

    pub fn b(&self) -> &[Residue] {
        &self.b
    }

    pub fn pair(&self, i: usize) -> (Residue, Residue) {
        (self.a[i], self.b[i])
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().chain(&self.b).all(|&x| x == 0)
    }

    pub fn weight(&self) -> usize {
        symp_weight(self)
    }

    /// Indices with a nonzero pair.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.a[i] != 0 || self.b[i] != 0).collect()
    }

    pub fn add(&self, other: &SympVec) -> SympVec {
        assert_eq!(self.n(), other.n());
        let f = self.field;
        SympVec {
            field: f,
            a: self.a.iter().zip(&other.a).map(|(&x, &y)| f.add(x, y)).collect(),
            b: self.b.iter().zip(&other.b).map(|(&x, &y)| f.add(x, y)).collect(),
        }
    }

    pub fn scale(&self, c: Residue) -> SympVec {
        let f = self.field;
        SympVec {
            field: f,
            a: self.a.iter().map(|&x| f.mul(x, c)).collect(),
            b: self.b.iter().map(|&x| f.mul(x, c)).collect(),
        }
    }

    /// Copy with the listed positions removed (both halves).
    pub fn puncture_positions(&self, positions: &[usize]) -> SympVec {
        let keep = |(i, _): &(usize, &Residue)| !positions.contains(i);
        SympVec {
            field: self.field,
            a: self.a.iter().enumerate().filter(keep).map(|(_, &x)| x).collect(),
            b: self.b.iter().enumerate().filter(keep).map(|(_, &x)| x).collect(),
        }
    }

    /// First nonzero coordinate of the first nonzero pair.
    fn leading_coordinate(&self) -> Option<Residue> {
        (0..self.n()).find_map(|i| match (self.a[i], self.b[i]) {
            (0, 0) => None,
            (0, y) => Some(y),
            (x, _) => Some(x),
        })
    }

    /// True when the leading coordinate is 1 (or the vector is zero).
    pub fn is_canonical(&self) -> bool {
        matches!(self.leading_coordinate(), None | Some(1))
    }

    /// The scalar multiple whose leading coordinate is 1.
    pub fn canonical(&self) -> SympVec {
        match self.leading_coordinate() {
            None | Some(1) => self.clone(),
            Some(c) => self.scale(self.field.inv(c)),
        }
    }
}

impl fmt::Display for SympVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Residue]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
        write!(f, "({} | {})", join(&self.a), join(&self.b))
    }
}

fn check_compatible(u: &SympVec, v: &SympVec) -> Result<()> {
    if u.field != v.field {
        return Err(Error::DimensionMismatch(format!(
            "fields F_{} and F_{} differ",
            u.field.modulus(),
            v.field.modulus()
        )));
    }
    if u.n() != v.n() {
        return Err(Error::DimensionMismatch(format!(
            "lengths {} and {} differ",
            u.n(),
            v.n()
        )));
    }
    Ok(())
}

/// `<b_u, a_v> - <b_v, a_u>` over `F_p`.
pub fn symp_form(u: &SympVec, v: &SympVec) -> Result<Residue> {
    check_compatible(u, v)?;
    Ok(symp_form_rows(u.field, &u.to_row(), &v.to_row()))
}

/// Symplectic form on raw `2n`-entry rows in `(a|b)` layout.
pub fn symp_form_rows(field: PrimeField, u: &[Residue], v: &[Residue]) -> Residue {
    debug_assert_eq!(u.len(), v.len());
    let n = u.len() / 2;
    let p = field.modulus() as u64;
    let mut plus = 0u64;
    let mut minus = 0u64;
    for i in 0..n {
        plus += u[n + i] as u64 * v[i] as u64;
        minus += v[n + i] as u64 * u[i] as u64;
    }
    field.sub((plus % p) as Residue, (minus % p) as Residue)
}

/// Number of positions with `(a_i, b_i) != (0, 0)`.
pub fn symp_weight(v: &SympVec) -> usize {
    v.a.iter().zip(&v.b).filter(|(&x, &y)| x != 0 || y != 0).count()
}

/// Weight of a raw `2n`-entry row.
pub fn row_weight(row: &[Residue]) -> usize {
    let n = row.len() / 2;
    (0..n).filter(|&i| row[i] != 0 || row[n + i] != 0).count()
}

/// One-qudit symplectic form `b_x a_y - b_y a_x`.
pub fn pair_form(field: PrimeField, x: (Residue, Residue), y: (Residue, Residue)) -> Residue {
    field.sub(field.mul(x.1, y.0), field.mul(y.1, x.0))
}

/// A nonzero pair `(alpha|beta)` up to scalars, stored with its first nonzero coordinate equal to 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjPair {
    pub alpha: Residue,
    pub beta: Residue,
}

impl ProjPair {
    /// Canonical representative of the projective class of `(alpha|beta)`.
    pub fn new(field: PrimeField, alpha: Residue, beta: Residue) -> Result<Self> {
        let (alpha, beta) = (field.reduce(alpha as i64), field.reduce(beta as i64));
        match (alpha, beta) {
            (0, 0) => Err(Error::ZeroPair),
            (0, _) => Ok(ProjPair { alpha: 0, beta: 1 }),
            (x, y) => Ok(ProjPair {
                alpha: 1,
                beta: field.mul(y, field.inv(x)),
            }),
        }
    }

    /// All `p + 1` canonical pairs in lexicographic order: `(0|1), (1|0), (1|1), ..., (1|p-1)`.
    pub fn all(field: PrimeField) -> Vec<ProjPair> {
        std::iter::once(ProjPair { alpha: 0, beta: 1 })
            .chain(field.elements().map(|b| ProjPair { alpha: 1, beta: b }))
            .collect()
    }

    /// Position of this pair in [`ProjPair::all`].
    pub fn class_index(self) -> usize {
        if self.alpha == 0 {
            0
        } else {
            1 + self.beta as usize
        }
    }

    /// Class index of a raw pair, `None` for `(0|0)`.
    pub fn class_of(field: PrimeField, pair: (Residue, Residue)) -> Option<usize> {
        ProjPair::new(field, pair.0, pair.1).ok().map(ProjPair::class_index)
    }

    pub fn as_tuple(self) -> (Residue, Residue) {
        (self.alpha, self.beta)
    }
}

impl fmt::Display for ProjPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}|{})", self.alpha, self.beta)
    }
}

/// A sparse row: `(position, delta_a, delta_b)` for each position where the row is nonzero.
#[derive(Debug, Clone)]
pub struct SparseRow {
    entries: Vec<(usize, Residue, Residue)>,
}

impl SparseRow {
    pub fn from_row(row: &[Residue]) -> Self {
        let n = row.len() / 2;
        SparseRow {
            entries: (0..n)
                .filter(|&i| row[i] != 0 || row[n + i] != 0)
                .map(|i| (i, row[i], row[n + i]))
                .collect(),
        }
    }
}

/// Mutable accumulator of a symplectic vector that keeps its weight current.
///
/// Adding a row costs time proportional to the row's support.
#[derive(Debug, Clone)]
pub struct WeightCursor {
    field: PrimeField,
    a: Vec<Residue>,
    b: Vec<Residue>,
    weight: usize,
}

impl WeightCursor {
    pub fn new(field: PrimeField, n: usize) -> Self {
        WeightCursor {
            field,
            a: vec![0; n],
            b: vec![0; n],
            weight: 0,
        }
    }

    #[inline]
    pub fn weight(&self) -> usize {
        self.weight
    }

    #[inline]
    pub fn add_row(&mut self, row: &SparseRow) {
        let f = self.field;
        for &(i, da, db) in &row.entries {
            let was = self.a[i] != 0 || self.b[i] != 0;
            self.a[i] = f.add(self.a[i], da);
            self.b[i] = f.add(self.b[i], db);
            let now = self.a[i] != 0 || self.b[i] != 0;
            match (was, now) {
                (false, true) => self.weight += 1,
                (true, false) => self.weight -= 1,
                _ => {}
            }
        }
    }

    pub fn is_canonical(&self) -> bool {
        for i in 0..self.a.len() {
            match (self.a[i], self.b[i]) {
                (0, 0) => continue,
                (0, y) => return y == 1,
                (x, _) => return x == 1,
            }
        }
        true
    }

    pub fn to_symp(&self) -> SympVec {
        SympVec {
            field: self.field,
            a: self.a.clone(),
            b: self.b.clone(),
        }
    }
}
