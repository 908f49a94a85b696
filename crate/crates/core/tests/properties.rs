mod common;

use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sympunct::code::StabilizerCode;
use sympunct::distance::{centralizer_min_weight_words, min_weight_words, EnumBudget};
use sympunct::experiment::{enumerate_punctures, EnumerateOptions};
use sympunct::gfp::{FpMatrix, Residue};
use sympunct::griesmer::{griesmer_bound, griesmer_reduce};
use sympunct::io::{parse_code, write_code};
use sympunct::puncture::{puncture, puncture_by_definition};
use sympunct::search::{find_hitting_set, orbits, HittingMode, OrbitGroup};
use sympunct::symplectic::{symp_form_rows, ProjPair};

fn serial() -> EnumBudget {
    EnumBudget::new(1 << 30).with_workers(1)
}

/// `(p, n, k, seed)` small enough for the naive oracle.
fn small_code() -> impl Strategy<Value = StabilizerCode> {
    (prop_oneof![Just(2u32), Just(3), Just(5)], 1usize..=6, any::<u64>())
        .prop_flat_map(|(p, n, seed)| {
            let n = if p == 5 { n.min(4) } else { n };
            (Just(p), Just(n), 0..=n, Just(seed))
        })
        .prop_map(|(p, n, k, seed)| random_code(field(p), n, k, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn matrix() -> impl Strategy<Value = FpMatrix> {
    (prop_oneof![Just(2u32), Just(3), Just(7)], 1usize..6, 1usize..8).prop_flat_map(|(p, r, c)| {
        proptest::collection::vec(0..p as Residue, r * c)
            .prop_map(move |v| FpMatrix::from_residue_rows(field(p), c, &v.chunks(c).collect::<Vec<_>>()))
    })
}

fn same_spaces(a: &StabilizerCode, b: &StabilizerCode) -> bool {
    a.canonical_key() == b.canonical_key() && a.centralizer().rref().matrix == b.centralizer().rref().matrix
}

fn dot(f: sympunct::gfp::PrimeField, x: &[Residue], y: &[Residue]) -> Residue {
    x.iter().zip(y).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rref_kernel_rank(m in matrix()) {
        let r = m.rref();
        prop_assert_eq!(&r.matrix.rref().matrix, &r.matrix);
        for row in m.row_iter() {
            prop_assert!(r.matrix.in_row_space(row));
        }
        let ker = m.kernel();
        for x in ker.row_iter() {
            for row in m.row_iter() {
                prop_assert_eq!(dot(m.field(), row, x), 0);
            }
        }
        prop_assert_eq!(r.rank + ker.rows(), m.cols());
    }

    #[test]
    fn code_dimensions_and_round_trip(c in small_code()) {
        let n = c.n();
        prop_assert_eq!(c.stab().rows() + c.centralizer().rows(), 2 * n);
        let cent = c.centralizer();
        for s in c.stab().row_iter() {
            prop_assert!(cent.in_row_space(s));
            for v in cent.row_iter() {
                prop_assert_eq!(symp_form_rows(c.field(), s, v), 0);
            }
        }
        let again = StabilizerCode::from_stabilizer_matrix(c.stab().clone()).unwrap();
        prop_assert!(same_spaces(&again, &c));
        let text = write_code(&c);
        let parsed = parse_code(&text).unwrap();
        prop_assert_eq!(write_code(&parsed), text);
        prop_assert_eq!(parsed, c);
    }

    #[test]
    fn punctures_agree_and_lose_at_most_one(c in small_code()) {
        prop_assume!(c.n() >= 2);
        let d = naive_distance(&c);
        let f = c.field();
        for i in 0..c.n() {
            for pr in ProjPair::all(f) {
                let a = puncture(&c, i, pr).unwrap();
                prop_assert!(same_spaces(&a, &puncture_by_definition(&c, i, pr.as_tuple()).unwrap()));
                for s in f.elements().skip(1) {
                    let scaled = puncture_by_definition(&c, i, (f.mul(s, pr.alpha), f.mul(s, pr.beta))).unwrap();
                    prop_assert_eq!(a.canonical_key(), scaled.canonical_key());
                }
                if d >= 2 {
                    prop_assert_eq!(a.k(), c.k());
                    prop_assert!(naive_distance(&a) + 1 >= d);
                }
                prop_assert!(griesmer_bound(a.n(), a.k(), naive_distance(&a), a.p()).satisfied);
            }
        }
    }

    #[test]
    fn puncture_order_does_not_matter(c in small_code(), i in 0usize..6, j in 0usize..6, x in 0usize..6, y in 0usize..6) {
        prop_assume!(c.n() >= 3);
        let (i, j) = (i % c.n(), j % c.n());
        prop_assume!(i < j);
        let pairs = ProjPair::all(c.field());
        let (pi, pj) = (pairs[x % pairs.len()], pairs[y % pairs.len()]);
        let high_first = puncture(&puncture(&c, j, pj).unwrap(), i, pi).unwrap();
        let low_first = puncture(&puncture(&c, i, pi).unwrap(), j - 1, pj).unwrap();
        prop_assert!(same_spaces(&high_first, &low_first));
    }

    #[test]
    fn kernel_matches_oracle(c in small_code()) {
        let naive = naive_min_weight(&c);
        let rep = min_weight_words(&c, &serial(), usize::MAX).unwrap();
        prop_assert_eq!(rep.d, naive.d);
        prop_assert_eq!(rep.pure, naive.pure);
        prop_assert_eq!(rep.words.iter().cloned().collect::<std::collections::BTreeSet<_>>(), naive.words);
        for w in [2, 8] {
            let par = min_weight_words(&c, &EnumBudget::new(1 << 30).with_workers(w), usize::MAX).unwrap();
            prop_assert_eq!(&par.words, &rep.words);
        }
    }

    #[test]
    fn hitting_sets_cover(c in small_code(), exact in any::<bool>()) {
        prop_assume!(c.n() >= 2);
        let words = centralizer_min_weight_words(&c, &serial(), usize::MAX).unwrap();
        let mode = if exact { HittingMode::Exact } else { HittingMode::Greedy };
        if let Ok(h) = find_hitting_set(&words, mode, c.n()) {
            for w in &words.words {
                prop_assert!(h.indices.iter().any(|&i| w.pair(i) == (0, 0)));
            }
        }
    }

    #[test]
    fn reduction_chain_telescopes(c in small_code()) {
        let n0 = c.n();
        let mut cur = c;
        let mut d = naive_distance(&cur);
        let mut dropped = 0;
        while cur.k() > 0 && d < cur.n() {
            let (next, trace) = griesmer_reduce(&cur, &serial()).unwrap();
            prop_assert_eq!(trace.d, d);
            prop_assert_eq!(next.n(), cur.n() - d);
            dropped += d;
            let dn = naive_distance(&next);
            prop_assert!(dn >= d.div_ceil(cur.p() as usize));
            cur = next;
            d = dn;
        }
        prop_assert_eq!(dropped + cur.n(), n0);
        prop_assert!(n0 >= dropped);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn identity_totals_hit_the_combinatorial_count(seed in any::<u64>(), t in 1usize..=2) {
        let mut g = ChaCha8Rng::seed_from_u64(seed);
        let c = random_code(field(2), 6, 1, &mut g);
        prop_assume!(naive_distance(&c) > t);
        let h = enumerate_punctures(&c, &EnumerateOptions::new(t)).unwrap();
        let sets = if t == 1 { 6 } else { 15 };
        prop_assert_eq!(h.total_codes, sets * 3u64.pow(t as u32));
        prop_assert!(h.buckets.keys().all(|&delta| delta >= 0));
    }

    #[test]
    fn orbits_partition(n in 1usize..=9, t in 0usize..=4) {
        prop_assume!(t <= n);
        let total: usize = orbits(n, t, &OrbitGroup::Cyclic).unwrap().iter().map(|o| o.size).sum();
        let ident = orbits(n, t, &OrbitGroup::Identity).unwrap().len();
        prop_assert_eq!(total, ident);
    }
}
