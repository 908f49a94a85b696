//! Choosing where and how to puncture or shorten: avoidance on one index,
//! the t-tuple criterion, hitting sets of minimum-weight zero patterns, and
//! orbit representatives of index sets.

use std::collections::{BTreeSet, VecDeque};

use crate::code::StabilizerCode;
use crate::distance::MinWeightReport;
use crate::error::{Error, Result};
use crate::gfp::PrimeField;
use crate::symplectic::ProjPair;

/// A pair at one index that no minimum-weight word matches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AvoidanceResult {
    pub index: usize,
    pub pair: ProjPair,
    pub guaranteed_d: usize,
}

/// Every (index, pair) whose puncture keeps the distance.
///
/// A word with `(0|0)` at the index does not block any pair there: it keeps
/// weight `d` whatever the pair.
pub fn find_avoidance(code: &StabilizerCode, words: &MinWeightReport) -> Result<Vec<AvoidanceResult>> {
    words.require_exhaustive()?;
    if words.d < 2 {
        return Err(Error::DistanceTooSmall { d: words.d, t: 1 });
    }
    let f = code.field();
    let all = ProjPair::all(f);
    let mut out = Vec::new();
    for index in 0..code.n() {
        let mut hit = vec![false; all.len()];
        for w in &words.words {
            if let Some(c) = ProjPair::class_of(f, w.pair(index)) {
                hit[c] = true;
            }
        }
        out.extend(
            all.iter()
                .zip(&hit)
                .filter(|(_, &h)| !h)
                .map(|(&pair, _)| AvoidanceResult {
                    index,
                    pair,
                    guaranteed_d: words.d,
                }),
        );
    }
    Ok(out)
}

/// Outcome of the t-tuple test on one index set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleCriterion {
    pub indices: Vec<usize>,
    pub m_star_size: u128,
    pub threshold: u128,
    /// First tuple, in class order, that no fully supported minimum-weight word matches.
    pub witness: Option<Vec<ProjPair>>,
    /// `d - t + 1` when a witness exists.
    pub guaranteed_d: Option<usize>,
}

fn check_indices(n: usize, indices: &[usize]) -> Result<()> {
    if indices.is_empty() {
        return Err(Error::InvalidIndices("index set is empty".into()));
    }
    if let Some(&i) = indices.iter().find(|&&i| i >= n) {
        return Err(Error::InvalidIndex { index: i, n });
    }
    let set: BTreeSet<_> = indices.iter().collect();
    if set.len() != indices.len() {
        return Err(Error::InvalidIndices("repeated index".into()));
    }
    Ok(())
}

/// Class tuples of the minimum-weight words that are nonzero on every index of `indices`.
fn full_weight_tuples(f: PrimeField, words: &MinWeightReport, indices: &[usize]) -> BTreeSet<Vec<usize>> {
    words
        .words
        .iter()
        .filter_map(|w| {
            indices
                .iter()
                .map(|&i| ProjPair::class_of(f, w.pair(i)))
                .collect::<Option<Vec<_>>>()
        })
        .collect()
}

/// Calls `visit` on every class tuple of length `t` in lexicographic order until it returns false.
fn for_each_tuple(classes: usize, t: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    let mut tuple = vec![0usize; t];
    loop {
        if !visit(&tuple) {
            return;
        }
        let mut j = t;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            tuple[j] += 1;
            if tuple[j] < classes {
                break;
            }
            tuple[j] = 0;
        }
    }
}

pub fn tuple_criterion(code: &StabilizerCode, words: &MinWeightReport, indices: &[usize]) -> Result<TupleCriterion> {
    words.require_exhaustive()?;
    check_indices(code.n(), indices)?;
    let f = code.field();
    let p = f.modulus() as u128;
    let t = indices.len() as u32;
    let tuples = full_weight_tuples(f, words, indices);
    let m_star_size = tuples.len() as u128 * (p - 1).pow(t);
    let threshold = (p * p - 1).pow(t);
    let witness = if m_star_size < threshold {
        let all = ProjPair::all(f);
        let mut found = None;
        for_each_tuple(all.len(), indices.len(), |tu| {
            if tuples.contains(tu) {
                return true;
            }
            found = Some(tu.iter().map(|&c| all[c]).collect());
            false
        });
        found
    } else {
        None
    };
    let guaranteed_d = witness.as_ref().map(|_| (words.d + 1).saturating_sub(indices.len()));
    Ok(TupleCriterion {
        indices: indices.to_vec(),
        m_star_size,
        threshold,
        witness,
        guaranteed_d,
    })
}

/// Every witness tuple for `indices`, in class order.
pub fn tuple_witnesses(
    code: &StabilizerCode,
    words: &MinWeightReport,
    indices: &[usize],
) -> Result<Vec<Vec<ProjPair>>> {
    words.require_exhaustive()?;
    check_indices(code.n(), indices)?;
    let f = code.field();
    let tuples = full_weight_tuples(f, words, indices);
    let all = ProjPair::all(f);
    let mut out = Vec::new();
    for_each_tuple(all.len(), indices.len(), |tu| {
        if !tuples.contains(tu) {
            out.push(tu.iter().map(|&c| all[c]).collect());
        }
        true
    });
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HittingMode {
    Greedy,
    Exact,
}

/// Index set meeting the zero pairs of every word in a report.
///
/// Shortening a pure code at a hitting set of the minimum-weight words of
/// the whole centralizer (see [`crate::distance::centralizer_min_weight_words`])
/// loses at most `|H| - 1` in distance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSet {
    pub indices: Vec<usize>,
}

fn zero_sets(words: &MinWeightReport) -> Vec<Vec<usize>> {
    words
        .words
        .iter()
        .map(|w| (0..w.n()).filter(|&i| w.pair(i) == (0, 0)).collect())
        .collect()
}

fn hits(zeros: &[usize], chosen: &[bool]) -> bool {
    zeros.iter().any(|&i| chosen[i])
}

fn exact_search(zeros: &[Vec<usize>], chosen: &mut Vec<bool>, picked: &mut Vec<usize>, limit: usize) -> bool {
    let Some(open) = zeros.iter().find(|z| !hits(z, chosen)) else {
        return true;
    };
    if picked.len() == limit {
        return false;
    }
    for &i in open {
        chosen[i] = true;
        picked.push(i);
        if exact_search(zeros, chosen, picked, limit) {
            return true;
        }
        picked.pop();
        chosen[i] = false;
    }
    false
}

/// Greedy picks the index zero in the most uncovered words (lowest index on
/// ties); exact returns a smallest set by iterative deepening.
pub fn find_hitting_set(words: &MinWeightReport, mode: HittingMode, max_size: usize) -> Result<HittingSet> {
    words.require_exhaustive()?;
    let n = words.words.first().map_or(0, |w| w.n());
    let zeros = zero_sets(words);
    let mut chosen = vec![false; n];
    let mut picked = Vec::new();
    match mode {
        HittingMode::Greedy => loop {
            let open: Vec<&Vec<usize>> = zeros.iter().filter(|z| !hits(z, &chosen)).collect();
            if open.is_empty() {
                break;
            }
            let mut score = vec![0usize; n];
            for z in &open {
                for &i in z.iter() {
                    score[i] += 1;
                }
            }
            let (best, &s) = score
                .iter()
                .enumerate()
                .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
                .expect("n >= 1");
            if s == 0 || picked.len() == max_size {
                return Err(Error::HittingSetNotFound(max_size));
            }
            chosen[best] = true;
            picked.push(best);
        },
        HittingMode::Exact => {
            let found = (0..=max_size).any(|limit| {
                chosen.iter_mut().for_each(|c| *c = false);
                picked.clear();
                exact_search(&zeros, &mut chosen, &mut picked, limit)
            });
            if !found {
                return Err(Error::HittingSetNotFound(max_size));
            }
        }
    }
    picked.sort_unstable();
    Ok(HittingSet { indices: picked })
}

/// Permutation group acting on positions `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitGroup {
    Identity,
    /// Generated by `i -> i + 1 mod n`.
    Cyclic,
    /// Generated by the given permutations, each a list of images of `0..n`.
    Explicit(Vec<Vec<usize>>),
}

impl OrbitGroup {
    pub fn name(&self) -> &'static str {
        match self {
            OrbitGroup::Identity => "identity",
            OrbitGroup::Cyclic => "cyclic",
            OrbitGroup::Explicit(_) => "explicit",
        }
    }

    fn generators(&self, n: usize) -> Result<Vec<Vec<usize>>> {
        match self {
            OrbitGroup::Identity => Ok(Vec::new()),
            OrbitGroup::Cyclic => Ok(vec![(0..n).map(|i| (i + 1) % n).collect()]),
            OrbitGroup::Explicit(perms) => {
                for (g, perm) in perms.iter().enumerate() {
                    if perm.len() != n {
                        return Err(Error::InvalidPermutation(format!(
                            "generator {g} has length {}, expected {n}",
                            perm.len()
                        )));
                    }
                    let mut seen = vec![false; n];
                    for &x in perm {
                        if x >= n || std::mem::replace(&mut seen[x], true) {
                            return Err(Error::InvalidPermutation(format!("generator {g} is not a bijection")));
                        }
                    }
                }
                Ok(perms.clone())
            }
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k.min(n - k)).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Colexicographic rank of a sorted subset.
fn rank(subset: &[usize], table: &[Vec<u64>]) -> usize {
    subset.iter().enumerate().map(|(i, &c)| table[c][i + 1]).sum::<u64>() as usize
}

/// One orbit representative of the `t`-subsets of `0..n` with its orbit size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub rep: Vec<usize>,
    pub size: usize,
}

/// Orbits of `t`-subsets, each represented by its lexicographically smallest member.
pub fn orbits(n: usize, t: usize, group: &OrbitGroup) -> Result<Vec<Orbit>> {
    if t > n {
        return Err(Error::InvalidIndices(format!("t = {t} exceeds n = {n}")));
    }
    let gens = group.generators(n)?;
    let total = binomial(n, t);
    if total > 1 << 32 {
        return Err(Error::Unsupported(format!("{total} subsets is too many to enumerate")));
    }
    let table: Vec<Vec<u64>> = (0..=n)
        .map(|a| (0..=t + 1).map(|b| binomial(a, b) as u64).collect())
        .collect();
    let mut seen = vec![false; total as usize];
    let mut out = Vec::new();
    let mut subset: Vec<usize> = (0..t).collect();
    loop {
        if !seen[rank(&subset, &table)] {
            let mut size = 0;
            let mut queue = VecDeque::from([subset.clone()]);
            seen[rank(&subset, &table)] = true;
            while let Some(s) = queue.pop_front() {
                size += 1;
                for g in &gens {
                    let mut img: Vec<usize> = s.iter().map(|&i| g[i]).collect();
                    img.sort_unstable();
                    let r = rank(&img, &table);
                    if !seen[r] {
                        seen[r] = true;
                        queue.push_back(img);
                    }
                }
            }
            out.push(Orbit {
                rep: subset.clone(),
                size,
            });
        }
        // next subset in lexicographic order
        let Some(j) = (0..t).rev().find(|&j| subset[j] < n - t + j) else {
            return Ok(out);
        };
        subset[j] += 1;
        for m in j + 1..t {
            subset[m] = subset[m - 1] + 1;
        }
    }
}

/// Lexicographically minimal representatives of the orbits of `t`-subsets.
pub fn orbit_reps(n: usize, t: usize, group: &OrbitGroup) -> Result<Vec<Vec<usize>>> {
    Ok(orbits(n, t, group)?.into_iter().map(|o| o.rep).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distance::{centralizer_min_weight_words, min_weight_words, EnumBudget};
    use crate::puncture::{puncture, puncture_seq, shorten, PunctureSpec};
    use crate::symplectic::SympVec;
    use crate::testutil::*;

    fn serial() -> EnumBudget {
        EnumBudget::new(1 << 30).with_workers(1)
    }

    fn report(words: Vec<SympVec>, d: usize) -> MinWeightReport {
        MinWeightReport {
            d,
            word_count: words.len() as u64,
            words,
            overflow: false,
            complete: true,
            pure: true,
            stabilizer_min_weight: None,
            enumerated: 0,
        }
    }

    #[test]
    fn qutrit_5_2_2_avoids_one_one_on_first_index() {
        let c = qutrit_5_2_2();
        let w = min_weight_words(&c, &serial(), 1000).unwrap();
        let res = find_avoidance(&c, &w).unwrap();
        let f = c.field();
        let target = ProjPair::new(f, 1, 1).unwrap();
        assert!(res.contains(&AvoidanceResult {
            index: 0,
            pair: target,
            guaranteed_d: 2
        }));
        for r in &res {
            let q = puncture(&c, r.index, r.pair).unwrap();
            let d = min_weight_words(&q, &serial(), 1).unwrap().d;
            assert!(d >= r.guaranteed_d);
        }
    }

    #[test]
    fn avoidance_refuses_truncated_reports() {
        let c = qutrit_5_2_2();
        let w = min_weight_words(&c, &serial(), 2).unwrap();
        assert!(matches!(find_avoidance(&c, &w), Err(Error::IncompleteWords)));
        assert!(matches!(tuple_criterion(&c, &w, &[0]), Err(Error::IncompleteWords)));
    }

    #[test]
    fn zero_index_admits_every_pair() {
        let f = field(2);
        // words all vanish at index 2
        let w = |a: [u16; 3], b: [u16; 3]| SympVec::new(f, a.to_vec(), b.to_vec()).unwrap();
        let rep = report(vec![w([1, 1, 0], [0, 0, 0]), w([0, 0, 0], [1, 1, 0])], 2);
        let code = StabilizerCode::from_stabilizer(f, 3, &[]).unwrap();
        let res = find_avoidance(&code, &rep).unwrap();
        let at2: Vec<_> = res.iter().filter(|r| r.index == 2).collect();
        assert_eq!(at2.len(), 3);
    }

    #[test]
    fn single_index_tuple_matches_avoidance() {
        let c = qutrit_5_2_2();
        let w = min_weight_words(&c, &serial(), 1000).unwrap();
        let avoid = find_avoidance(&c, &w).unwrap();
        for i in 0..c.n() {
            let from_tuple: Vec<ProjPair> = tuple_witnesses(&c, &w, &[i])
                .unwrap()
                .into_iter()
                .map(|v| v[0])
                .collect();
            let from_avoid: Vec<ProjPair> = avoid.iter().filter(|r| r.index == i).map(|r| r.pair).collect();
            assert_eq!(from_tuple, from_avoid);
        }
    }

    #[test]
    fn tuple_criterion_counts_and_witness() {
        let c = qutrit_5_2_2();
        let w = min_weight_words(&c, &serial(), 1000).unwrap();
        let tc = tuple_criterion(&c, &w, &[0, 1]).unwrap();
        assert_eq!(tc.threshold, 64);
        assert_eq!(tc.m_star_size % 4, 0);
        let wit = tc.witness.clone().unwrap();
        let spec = PunctureSpec::from_positions(&[0, 1], &wit).unwrap();
        let q = puncture_seq(&c, &spec).unwrap();
        assert!(min_weight_words(&q, &serial(), 1).unwrap().d > w.d - 2);
        assert!(matches!(
            tuple_criterion(&c, &w, &[0, 0]),
            Err(Error::InvalidIndices(_))
        ));
        assert!(matches!(tuple_criterion(&c, &w, &[9]), Err(Error::InvalidIndex { .. })));
    }

    #[test]
    fn empty_restriction_gives_zero_m_star() {
        let f = field(2);
        let w = |a: [u16; 3], b: [u16; 3]| SympVec::new(f, a.to_vec(), b.to_vec()).unwrap();
        let rep = report(vec![w([1, 1, 0], [0, 0, 0]), w([0, 1, 1], [0, 0, 0])], 2);
        let code = StabilizerCode::from_stabilizer(f, 3, &[]).unwrap();
        let tc = tuple_criterion(&code, &rep, &[0, 2]).unwrap();
        assert_eq!(tc.m_star_size, 0);
        assert_eq!(tc.witness.unwrap(), vec![ProjPair { alpha: 0, beta: 1 }; 2]);
    }

    #[test]
    fn hitting_sets_greedy_versus_exact() {
        let f = field(2);
        // index 0 is zero in four words, 1 and 2 in three each; {1, 2} hits all six
        let zeros: [(&[usize], bool); 6] = [
            (&[0, 1], true),
            (&[0, 1], false),
            (&[1, 3], true),
            (&[0, 2], true),
            (&[0, 2], false),
            (&[2, 4], true),
        ];
        let words: Vec<SympVec> = zeros
            .iter()
            .map(|&(z, in_a)| {
                let v: Vec<u16> = (0..5).map(|i| u16::from(!z.contains(&i))).collect();
                if in_a {
                    SympVec::new(f, v, vec![0; 5]).unwrap()
                } else {
                    SympVec::new(f, vec![0; 5], v).unwrap()
                }
            })
            .collect();
        let rep = report(words, 3);
        let g = find_hitting_set(&rep, HittingMode::Greedy, 5).unwrap();
        let e = find_hitting_set(&rep, HittingMode::Exact, 5).unwrap();
        assert_eq!(g.indices, vec![0, 1, 2]);
        assert_eq!(e.indices, vec![1, 2]);
        for h in [&g, &e] {
            for z in zero_sets(&rep) {
                assert!(z.iter().any(|i| h.indices.contains(i)));
            }
        }
        assert!(matches!(
            find_hitting_set(&rep, HittingMode::Exact, 1),
            Err(Error::HittingSetNotFound(1))
        ));
        assert!(matches!(
            find_hitting_set(&rep, HittingMode::Greedy, 2),
            Err(Error::HittingSetNotFound(2))
        ));
    }

    #[test]
    fn common_zero_gives_singleton() {
        let f = field(3);
        let rep = report(
            vec![
                SympVec::new(f, vec![1, 2, 0], vec![0, 1, 0]).unwrap(),
                SympVec::new(f, vec![0, 1, 0], vec![1, 0, 0]).unwrap(),
            ],
            2,
        );
        assert_eq!(find_hitting_set(&rep, HittingMode::Greedy, 3).unwrap().indices, vec![2]);
        assert_eq!(find_hitting_set(&rep, HittingMode::Exact, 3).unwrap().indices, vec![2]);
    }

    #[test]
    fn hitting_set_shortening_keeps_distance() {
        let mut g = rng(3);
        let mut checked = 0;
        while checked < 10 {
            let c = random_code(field(2), 7, 1, &mut g);
            let logical = min_weight_words(&c, &serial(), usize::MAX).unwrap();
            if !logical.pure || logical.d < 2 {
                continue;
            }
            let w = centralizer_min_weight_words(&c, &serial(), usize::MAX).unwrap();
            assert_eq!(w.d, logical.d);
            let Ok(h) = find_hitting_set(&w, HittingMode::Exact, c.n() - 1) else {
                continue;
            };
            let s = shorten(&c, &h.indices).unwrap();
            let ds = naive_distance(&s);
            assert!(ds + h.indices.len() > w.d, "d={} |H|={} d'={ds}", w.d, h.indices.len());
            checked += 1;
        }
    }

    #[test]
    fn orbit_counts() {
        let cyc = OrbitGroup::Cyclic;
        assert_eq!(orbit_reps(21, 1, &cyc).unwrap().len(), 1);
        assert_eq!(orbit_reps(21, 2, &cyc).unwrap().len(), 10);
        assert_eq!(orbit_reps(21, 3, &cyc).unwrap().len(), 64);
        assert_eq!(orbit_reps(21, 4, &cyc).unwrap().len(), 285);
        assert_eq!(orbit_reps(21, 5, &cyc).unwrap().len(), 969);
        assert_eq!(orbit_reps(15, 3, &OrbitGroup::Identity).unwrap().len(), 455);
        assert_eq!(orbit_reps(4, 0, &cyc).unwrap(), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn orbits_partition_subsets() {
        for n in 1..=9 {
            for t in 0..=n {
                let os = orbits(n, t, &OrbitGroup::Cyclic).unwrap();
                assert_eq!(os.iter().map(|o| o.size as u128).sum::<u128>(), binomial(n, t));
                for o in &os {
                    // representative is lexicographically minimal among its rotations
                    for s in 0..n {
                        let mut r: Vec<usize> = o.rep.iter().map(|&i| (i + s) % n).collect();
                        r.sort_unstable();
                        assert!(o.rep <= r);
                    }
                }
            }
        }
    }

    #[test]
    fn explicit_group_validation() {
        let bad = OrbitGroup::Explicit(vec![vec![0, 0, 1]]);
        assert!(matches!(orbit_reps(3, 1, &bad), Err(Error::InvalidPermutation(_))));
        let swap = OrbitGroup::Explicit(vec![vec![1, 0, 2, 3]]);
        assert_eq!(orbit_reps(4, 1, &swap).unwrap(), vec![vec![0], vec![2], vec![3]]);
        assert!(orbit_reps(3, 4, &OrbitGroup::Identity).is_err());
    }
}
