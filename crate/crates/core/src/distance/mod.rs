//! Minimum symplectic distance and minimum-weight words.
//!
//! The centralizer is walked in a `p`-ary reflected Gray order over the
//! stacked basis (stabilizer rows first, then extension rows), so every step
//! adds exactly one basis row to the running vector. Index `i` of the walk
//! has base-`p` digits `d_j` and visits `sum_j (d_j - d_{j+1}) row_j`; the
//! indices below `p^(n-k)` are exactly the elements of `S_p`, which is how
//! stabilizer elements are excluded without membership tests.

mod lanes;

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, Ordering};

use rayon::prelude::*;

use crate::code::StabilizerCode;
use crate::error::{Error, Result};
use crate::gfp::{FpMatrix, PrimeField};
use crate::symplectic::{SympVec, WeightCursor};
use lanes::{Gf2Lane, Gf3Lane, Lane};

/// Default cap on the number of words kept in a [`MinWeightReport`].
pub const DEFAULT_WORD_CAP: usize = 1 << 16;

/// Limits for one enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumBudget {
    /// Largest `p^(n+k)` the caller is willing to walk.
    pub max_vectors: u64,
    /// Stop as soon as a word of at most this weight turns up.
    pub max_weight: Option<usize>,
    pub workers: usize,
}

impl Default for EnumBudget {
    fn default() -> Self {
        EnumBudget {
            max_vectors: 1 << 36,
            max_weight: None,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }
}

impl EnumBudget {
    pub fn new(max_vectors: u64) -> Self {
        EnumBudget {
            max_vectors,
            ..Default::default()
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_max_weight(mut self, w: Option<usize>) -> Self {
        self.max_weight = w;
        self
    }

    /// Number of vectors the walk over `code` would visit.
    pub fn required(code: &StabilizerCode) -> u128 {
        (code.p() as u128).saturating_pow((code.n() + code.k()) as u32)
    }

    fn check(&self, code: &StabilizerCode) -> Result<u64> {
        if self.max_vectors == 0 {
            return Err(Error::Unsupported("budget max_vectors must be at least 1".into()));
        }
        let required = Self::required(code);
        if required > self.max_vectors as u128 {
            return Err(Error::BudgetExceeded {
                required,
                allowed: self.max_vectors,
            });
        }
        Ok(required as u64)
    }
}

/// Result of a distance computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinWeightReport {
    pub d: usize,
    /// Canonical minimum-weight words in ascending order, at most `cap` of them.
    pub words: Vec<SympVec>,
    /// Number of projective classes of weight `d` seen.
    pub word_count: u64,
    /// `word_count` exceeded the cap, so `words` is truncated.
    pub overflow: bool,
    /// False when the walk stopped early on `max_weight`.
    pub complete: bool,
    pub pure: bool,
    /// Least weight of a nonzero stabilizer element, `None` when `k = 0` or `S_p = 0`.
    pub stabilizer_min_weight: Option<usize>,
    pub enumerated: u64,
}

impl MinWeightReport {
    /// Every minimum-weight class is listed.
    pub fn is_exhaustive(&self) -> bool {
        self.complete && !self.overflow
    }

    pub fn require_exhaustive(&self) -> Result<()> {
        if self.is_exhaustive() {
            Ok(())
        } else {
            Err(Error::IncompleteWords)
        }
    }
}

trait Visitor: Send {
    /// Returns false to stop the whole walk.
    fn visit<L: Lane>(&mut self, index: u64, lane: &L) -> bool;
}

struct Plan {
    field: PrimeField,
    n: usize,
    rows: FpMatrix,
    total: u64,
    stab_limit: u64,
    all_target: bool,
}

impl Plan {
    fn new(code: &StabilizerCode, budget: &EnumBudget, whole_centralizer: bool) -> Result<Self> {
        let total = budget.check(code)?;
        let s = code.n() - code.k();
        Ok(Plan {
            field: code.field(),
            n: code.n(),
            rows: code.centralizer(),
            total,
            stab_limit: (code.p() as u64).pow(s as u32),
            all_target: whole_centralizer || code.k() == 0,
        })
    }

    fn in_target(&self, index: u64) -> bool {
        index != 0 && (self.all_target || index >= self.stab_limit)
    }
}

fn chunk_ranges(total: u64, workers: usize) -> Vec<(u64, u64)> {
    let pieces = if workers <= 1 || total < 1 << 14 {
        1
    } else {
        (workers as u64 * 16).min(total)
    };
    let step = total / pieces;
    (0..pieces)
        .map(|c| {
            let start = c * step;
            let end = if c + 1 == pieces { total } else { start + step };
            (start, end)
        })
        .collect()
}

fn walk<L: Lane, V: Visitor>(plan: &Plan, rows: &[L::Row], start: u64, end: u64, stop: &AtomicBool, v: &mut V) -> u64 {
    let p = plan.field.modulus() as u64;
    let m = rows.len();
    let mut digits = vec![0u64; m + 1];
    let mut x = start;
    for d in digits.iter_mut().take(m) {
        *d = x % p;
        x /= p;
    }
    let mut lane = L::zero(plan.field, plan.n);
    for j in 0..m {
        let g = (digits[j] + p - digits[j + 1]) % p;
        for _ in 0..g {
            lane.add(&rows[j]);
        }
    }
    let mut i = start;
    loop {
        if !v.visit(i, &lane) {
            stop.store(true, Ordering::Relaxed);
            return i - start + 1;
        }
        i += 1;
        if i == end || (i & 0xFFF == 0 && stop.load(Ordering::Relaxed)) {
            return i - start;
        }
        let mut pos = 0;
        while digits[pos] == p - 1 {
            digits[pos] = 0;
            pos += 1;
        }
        digits[pos] += 1;
        lane.add(&rows[pos]);
    }
}

fn execute_lane<L: Lane, V: Visitor>(plan: &Plan, workers: usize, make: &(dyn Fn() -> V + Sync)) -> (Vec<V>, u64) {
    let rows: Vec<L::Row> = plan.rows.row_iter().map(|r| L::make_row(plan.field, r)).collect();
    let chunks = chunk_ranges(plan.total, workers);
    let stop = AtomicBool::new(false);
    let run = |&(s, e): &(u64, u64)| {
        let mut v = make();
        let visited = if stop.load(Ordering::Relaxed) {
            0
        } else {
            walk::<L, V>(plan, &rows, s, e, &stop, &mut v)
        };
        (v, visited)
    };
    let results: Vec<(V, u64)> = if chunks.len() == 1 {
        chunks.iter().map(run).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .expect("thread pool");
        pool.install(|| chunks.par_iter().map(run).collect())
    };
    let visited = results.iter().map(|r| r.1).sum();
    (results.into_iter().map(|r| r.0).collect(), visited)
}

fn execute<V: Visitor>(plan: &Plan, workers: usize, make: &(dyn Fn() -> V + Sync)) -> (Vec<V>, u64) {
    match (plan.field.modulus(), plan.n <= 64) {
        (2, true) => execute_lane::<Gf2Lane, V>(plan, workers, make),
        (3, true) => execute_lane::<Gf3Lane, V>(plan, workers, make),
        _ => execute_lane::<WeightCursor, V>(plan, workers, make),
    }
}

struct MinAcc<'a> {
    plan: &'a Plan,
    cap: usize,
    stop_at: Option<u32>,
    best: u32,
    stab_best: u32,
    count: u64,
    words: BTreeSet<SympVec>,
}

impl Visitor for MinAcc<'_> {
    #[inline]
    fn visit<L: Lane>(&mut self, index: u64, lane: &L) -> bool {
        if index == 0 {
            return true;
        }
        let w = lane.weight();
        if !self.plan.in_target(index) {
            self.stab_best = self.stab_best.min(w);
            return true;
        }
        if w > self.best {
            return true;
        }
        if w < self.best {
            self.best = w;
            self.count = 0;
            self.words.clear();
        }
        if lane.is_canonical() {
            self.count += 1;
            if self.cap > 0 {
                let v = lane.to_symp(self.plan.field, self.plan.n);
                if self.words.len() < self.cap {
                    self.words.insert(v);
                } else if self.words.last().is_some_and(|last| &v < last) {
                    self.words.pop_last();
                    self.words.insert(v);
                }
            }
        }
        self.stop_at.is_none_or(|m| self.best > m)
    }
}

/// Minimum distance of `code` together with up to `cap` minimum-weight words.
///
/// For `k > 0` the minimum runs over `S_p^perp \ S_p`; for `k = 0` over the
/// nonzero elements of `S_p`. Output does not depend on `budget.workers`.
pub fn min_weight_words(code: &StabilizerCode, budget: &EnumBudget, cap: usize) -> Result<MinWeightReport> {
    min_weight_impl(code, budget, cap, false)
}

/// Minimum-weight words of the whole centralizer `S_p^perp`, stabilizer
/// elements included. `stabilizer_min_weight` is `None` in the result.
pub fn centralizer_min_weight_words(code: &StabilizerCode, budget: &EnumBudget, cap: usize) -> Result<MinWeightReport> {
    min_weight_impl(code, budget, cap, true)
}

fn min_weight_impl(code: &StabilizerCode, budget: &EnumBudget, cap: usize, whole: bool) -> Result<MinWeightReport> {
    let plan = Plan::new(code, budget, whole)?;
    let stop_at = budget.max_weight.map(|w| w as u32);
    let make = || MinAcc {
        plan: &plan,
        cap,
        stop_at,
        best: u32::MAX,
        stab_best: u32::MAX,
        count: 0,
        words: BTreeSet::new(),
    };
    let (accs, enumerated) = execute(&plan, budget.workers.max(1), &make);

    let best = accs.iter().map(|a| a.best).min().unwrap_or(u32::MAX);
    let stab_best = accs.iter().map(|a| a.stab_best).min().unwrap_or(u32::MAX);
    let mut words = BTreeSet::new();
    let mut count = 0;
    for a in accs.into_iter().filter(|a| a.best == best) {
        count += a.count;
        words.extend(a.words);
    }
    let words: Vec<SympVec> = words.into_iter().take(cap).collect();
    let complete = enumerated == plan.total;
    debug_assert!(best != u32::MAX, "a code of length >= 1 has a target word");
    let stabilizer_min_weight = (!plan.all_target && stab_best != u32::MAX).then_some(stab_best as usize);
    Ok(MinWeightReport {
        d: best as usize,
        overflow: count > words.len() as u64,
        words,
        word_count: count,
        complete,
        pure: stabilizer_min_weight.is_none_or(|s| s >= best as usize),
        stabilizer_min_weight,
        enumerated,
    })
}

/// [`min_weight_words`] with the default word cap.
pub fn min_distance(code: &StabilizerCode, budget: &EnumBudget) -> Result<MinWeightReport> {
    min_weight_words(code, budget, DEFAULT_WORD_CAP)
}

struct Collect<'a, T, F> {
    plan: &'a Plan,
    max_weight: u32,
    map: &'a F,
    out: Vec<T>,
}

impl<T: Send, F: Fn(&SympVec) -> T + Sync> Visitor for Collect<'_, T, F> {
    #[inline]
    fn visit<L: Lane>(&mut self, index: u64, lane: &L) -> bool {
        if lane.weight() <= self.max_weight && self.plan.in_target(index) && lane.is_canonical() {
            self.out.push((self.map)(&lane.to_symp(self.plan.field, self.plan.n)));
        }
        true
    }
}

/// Applies `map` to every canonical word of weight at most `max_weight` in
/// `S_p^perp \ S_p` (nonzero `S_p` when `k = 0`). Output order is unspecified.
pub fn collect_words<T, F>(code: &StabilizerCode, max_weight: usize, budget: &EnumBudget, map: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&SympVec) -> T + Sync,
{
    let plan = Plan::new(code, budget, false)?;
    let make = || Collect {
        plan: &plan,
        max_weight: max_weight as u32,
        map: &map,
        out: Vec::new(),
    };
    let (parts, _) = execute(&plan, budget.workers.max(1), &make);
    Ok(parts.into_iter().flat_map(|c| c.out).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puncture::puncture;
    use crate::symplectic::ProjPair;
    use crate::testutil::*;

    fn serial() -> EnumBudget {
        EnumBudget::new(1 << 30).with_workers(1)
    }

    #[test]
    fn qutrit_5_2_2_weight_two_words() {
        let c = qutrit_5_2_2();
        let r = min_weight_words(&c, &serial(), 1000).unwrap();
        assert_eq!(r.d, 2);
        assert!(r.is_exhaustive());
        let f = field(3);
        let first: Vec<Vec<u16>> = r
            .words
            .iter()
            .filter(|w| w.pair(0) != (0, 0))
            .map(|w| w.to_row())
            .collect();
        let expected: Vec<Vec<u16>> = [
            [1, 0, 0, 1, 0, 2, 0, 0, 0, 0],
            [1, 0, 1, 0, 0, 2, 0, 0, 0, 0],
            [0, 1, 0, 0, 0, 1, 1, 0, 0, 0],
            [0, 0, 0, 0, 2, 1, 0, 0, 0, 2],
        ]
        .iter()
        .map(|r| SympVec::from_row(f, &r.map(|x| x as u16)).unwrap().canonical().to_row())
        .collect();
        let mut got = first.clone();
        got.sort();
        let mut want = expected;
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn k0_single_qudit() {
        let f = field(2);
        let c = StabilizerCode::from_stabilizer(f, 1, &[SympVec::new(f, vec![1], vec![0]).unwrap()]).unwrap();
        let r = min_weight_words(&c, &serial(), 10).unwrap();
        assert_eq!((r.d, r.words.len(), r.pure), (1, 1, true));
        assert_eq!(r.stabilizer_min_weight, None);
    }

    #[test]
    fn budget_exceeded_reports_requirement() {
        let c = qutrit_5_2_2();
        match min_distance(&c, &EnumBudget::new(100)) {
            Err(Error::BudgetExceeded { required, allowed }) => assert_eq!((required, allowed), (2187, 100)),
            other => panic!("{other:?}"),
        }
        assert!(min_distance(&c, &EnumBudget::new(0)).is_err());
    }

    #[test]
    fn cap_truncates_with_overflow() {
        let c = qutrit_5_2_2();
        let full = min_weight_words(&c, &serial(), 1000).unwrap();
        let cut = min_weight_words(&c, &serial(), 3).unwrap();
        assert!(cut.overflow && !full.overflow);
        assert_eq!(cut.word_count, full.word_count);
        assert_eq!(cut.words[..], full.words[..3]);
    }

    #[test]
    fn early_exit_marks_incomplete() {
        let c = qubit_21_5_6();
        let b = EnumBudget::new(1 << 30).with_workers(1).with_max_weight(Some(6));
        let r = min_distance(&c, &b).unwrap();
        assert_eq!(r.d, 6);
        assert!(!r.complete && r.enumerated < 1 << 26);
    }

    #[test]
    fn worker_count_does_not_change_report() {
        let mut g = rng(11);
        for p in [2, 3, 5] {
            for _ in 0..5 {
                let c = random_code(field(p), 7, 2, &mut g);
                let base = min_weight_words(&c, &serial(), 50).unwrap();
                for w in [2, 8] {
                    let mut b = serial().with_workers(w);
                    b.max_vectors = 1 << 30;
                    let mut r = min_weight_words(&c, &b, 50).unwrap();
                    r.enumerated = base.enumerated;
                    assert_eq!(r, base);
                }
            }
        }
    }

    #[test]
    fn matches_naive_rescan() {
        let mut g = rng(5);
        for p in [2, 3, 5] {
            for _ in 0..25 {
                let c = random_small_code(field(p), 1, if p == 5 { 4 } else { 6 }, &mut g);
                let fast = min_weight_words(&c, &serial(), usize::MAX).unwrap();
                let slow = naive_min_weight(&c);
                assert_eq!(fast.d, slow.d);
                assert_eq!(fast.pure, slow.pure);
                assert_eq!(fast.words, slow.words.into_iter().collect::<Vec<_>>());
                assert_eq!(fast.word_count as usize, fast.words.len());
            }
        }
    }

    #[test]
    fn centralizer_words_include_stabilizers() {
        let mut g = rng(17);
        for p in [2, 3] {
            for _ in 0..10 {
                let c = random_code(field(p), 5, 1, &mut g);
                let r = centralizer_min_weight_words(&c, &serial(), usize::MAX).unwrap();
                let all: Vec<SympVec> = naive_elements(&c).into_iter().map(|e| e.0).collect();
                let d = all.iter().map(|v| v.weight()).min().unwrap();
                let words: BTreeSet<SympVec> = all.iter().filter(|v| v.weight() == d).map(|v| v.canonical()).collect();
                assert_eq!(r.d, d);
                assert_eq!(r.words, words.into_iter().collect::<Vec<_>>());
            }
        }
    }

    #[test]
    fn reported_words_are_logical() {
        let c = qutrit_5_2_2();
        let r = min_distance(&c, &serial()).unwrap();
        let cz = c.centralizer_space();
        let sz = c.stab_space();
        for w in &r.words {
            assert!(w.is_canonical() && w.weight() == r.d);
            assert!(cz.contains(&w.to_row()) && !sz.contains(&w.to_row()));
        }
    }

    #[test]
    fn collect_words_agrees_with_naive() {
        let mut g = rng(8);
        for p in [2, 3, 5] {
            for _ in 0..10 {
                let c = random_code(field(p), 4, 1, &mut g);
                let d = naive_min_weight(&c).d;
                let mut got = collect_words(&c, d + 1, &serial(), |v| v.clone()).unwrap();
                got.sort();
                let mut want = naive_words_up_to(&c, d + 1);
                want.sort();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn puncturing_loses_at_most_one() {
        let mut g = rng(21);
        for p in [2, 3] {
            for _ in 0..15 {
                let c = random_code(field(p), 6, 2, &mut g);
                let d = min_distance(&c, &serial()).unwrap().d;
                if d < 2 {
                    continue;
                }
                for i in 0..c.n() {
                    for pair in ProjPair::all(c.field()) {
                        let q = puncture(&c, i, pair).unwrap();
                        let dq = min_distance(&q, &serial()).unwrap().d;
                        assert!(dq + 1 >= d, "d={d} d'={dq}");
                    }
                }
            }
        }
    }
}
