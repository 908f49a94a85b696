//! Accumulator representations for the enumeration kernel.
//!
//! A lane holds the current vector of the walk and supports adding one basis
//! row and reading the symplectic weight. `n <= 64` codes over `F_2` and
//! `F_3` use bit-sliced lanes; everything else uses [`WeightCursor`].

use crate::gfp::{PrimeField, Residue};
use crate::symplectic::{SparseRow, SympVec, WeightCursor};

pub(crate) trait Lane: Clone + Send + Sync {
    type Row: Send + Sync;

    fn make_row(field: PrimeField, row: &[Residue]) -> Self::Row;
    fn zero(field: PrimeField, n: usize) -> Self;
    fn add(&mut self, row: &Self::Row);
    fn weight(&self) -> u32;
    /// Leading coordinate equals 1.
    fn is_canonical(&self) -> bool;
    fn to_symp(&self, field: PrimeField, n: usize) -> SympVec;
}

fn mask_of(values: &[Residue], target: Residue) -> u64 {
    values
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == target)
        .fold(0u64, |m, (i, _)| m | (1 << i))
}

/// `F_2`: one bit per position for each half.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Gf2Lane {
    a: u64,
    b: u64,
}

impl Lane for Gf2Lane {
    type Row = Gf2Lane;

    fn make_row(_field: PrimeField, row: &[Residue]) -> Self::Row {
        let n = row.len() / 2;
        Gf2Lane {
            a: mask_of(&row[..n], 1),
            b: mask_of(&row[n..], 1),
        }
    }

    fn zero(_field: PrimeField, _n: usize) -> Self {
        Gf2Lane::default()
    }

    #[inline(always)]
    fn add(&mut self, row: &Self::Row) {
        self.a ^= row.a;
        self.b ^= row.b;
    }

    #[inline(always)]
    fn weight(&self) -> u32 {
        (self.a | self.b).count_ones()
    }

    #[inline(always)]
    fn is_canonical(&self) -> bool {
        true
    }

    fn to_symp(&self, field: PrimeField, n: usize) -> SympVec {
        let bits = |m: u64| (0..n).map(|i| ((m >> i) & 1) as Residue).collect();
        SympVec::new(field, bits(self.a), bits(self.b)).expect("valid residues")
    }
}

/// `F_3`, bit-sliced: `x1` marks positions holding 1, `x2` positions holding 2.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct Gf3Lane {
    a1: u64,
    a2: u64,
    b1: u64,
    b2: u64,
}

#[inline(always)]
fn gf3_add(x1: u64, x2: u64, y1: u64, y2: u64) -> (u64, u64) {
    let t = (x1 | y2) ^ (x2 | y1);
    ((x2 | y2) ^ t, (x1 | y1) ^ t)
}

impl Lane for Gf3Lane {
    type Row = Gf3Lane;

    fn make_row(_field: PrimeField, row: &[Residue]) -> Self::Row {
        let n = row.len() / 2;
        Gf3Lane {
            a1: mask_of(&row[..n], 1),
            a2: mask_of(&row[..n], 2),
            b1: mask_of(&row[n..], 1),
            b2: mask_of(&row[n..], 2),
        }
    }

    fn zero(_field: PrimeField, _n: usize) -> Self {
        Gf3Lane::default()
    }

    #[inline(always)]
    fn add(&mut self, row: &Self::Row) {
        (self.a1, self.a2) = gf3_add(self.a1, self.a2, row.a1, row.a2);
        (self.b1, self.b2) = gf3_add(self.b1, self.b2, row.b1, row.b2);
    }

    #[inline(always)]
    fn weight(&self) -> u32 {
        (self.a1 | self.a2 | self.b1 | self.b2).count_ones()
    }

    #[inline(always)]
    fn is_canonical(&self) -> bool {
        let a = self.a1 | self.a2;
        let nz = a | self.b1 | self.b2;
        if nz == 0 {
            return true;
        }
        let low = nz & nz.wrapping_neg();
        if a & low != 0 {
            self.a1 & low != 0
        } else {
            self.b1 & low != 0
        }
    }

    fn to_symp(&self, field: PrimeField, n: usize) -> SympVec {
        let vals = |m1: u64, m2: u64| {
            (0..n)
                .map(|i| ((m1 >> i) & 1) as Residue + 2 * ((m2 >> i) & 1) as Residue)
                .collect()
        };
        SympVec::new(field, vals(self.a1, self.a2), vals(self.b1, self.b2)).expect("valid residues")
    }
}

impl Lane for WeightCursor {
    type Row = SparseRow;

    fn make_row(_field: PrimeField, row: &[Residue]) -> Self::Row {
        SparseRow::from_row(row)
    }

    fn zero(field: PrimeField, n: usize) -> Self {
        WeightCursor::new(field, n)
    }

    #[inline]
    fn add(&mut self, row: &Self::Row) {
        self.add_row(row)
    }

    #[inline]
    fn weight(&self) -> u32 {
        WeightCursor::weight(self) as u32
    }

    fn is_canonical(&self) -> bool {
        WeightCursor::is_canonical(self)
    }

    fn to_symp(&self, _field: PrimeField, _n: usize) -> SympVec {
        WeightCursor::to_symp(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf3_bitsliced_addition_table() {
        let enc = |v: u64| (v & 1, v >> 1);
        for x in 0..3u64 {
            for y in 0..3u64 {
                let (x1, x2) = enc(x);
                let (y1, y2) = enc(y);
                let (r1, r2) = gf3_add(x1, x2, y1, y2);
                assert_eq!(r1 + 2 * r2, (x + y) % 3, "{x}+{y}");
                assert!(r1 & r2 == 0);
            }
        }
    }

    fn check_lane<L: Lane>(p: u32, rows: &[Vec<Residue>]) {
        let f = PrimeField::new(p).unwrap();
        let n = rows[0].len() / 2;
        let compiled: Vec<L::Row> = rows.iter().map(|r| L::make_row(f, r)).collect();
        let mut lane = L::zero(f, n);
        let mut dense = SympVec::zeros(f, n);
        for step in 0..3 * rows.len() + 2 {
            let j = (step * 7 + 3) % rows.len();
            lane.add(&compiled[j]);
            dense = dense.add(&SympVec::from_row(f, &rows[j]).unwrap());
            assert_eq!(lane.to_symp(f, n), dense);
            assert_eq!(lane.weight() as usize, dense.weight());
            assert_eq!(lane.is_canonical(), dense.is_canonical());
        }
    }

    #[test]
    fn lanes_match_dense_arithmetic() {
        let r2 = vec![vec![1, 0, 1, 1, 0, 0], vec![0, 1, 1, 0, 1, 0], vec![0, 0, 0, 1, 1, 1]];
        check_lane::<Gf2Lane>(2, &r2);
        check_lane::<WeightCursor>(2, &r2);
        let r3 = vec![vec![2, 0, 1, 1, 0, 2], vec![0, 1, 2, 0, 1, 0], vec![0, 0, 0, 2, 2, 1]];
        check_lane::<Gf3Lane>(3, &r3);
        check_lane::<WeightCursor>(3, &r3);
        let r5 = vec![vec![4, 0, 1, 3, 0, 2], vec![0, 1, 2, 0, 4, 0]];
        check_lane::<WeightCursor>(5, &r5);
    }
}
