use std::collections::VecDeque;

use frechet1d::grid::Grid;
use frechet1d::matrix::{decide_static, exact_distance};
use frechet1d::oracle::{freespace_decide, freespace_distance};
use frechet1d::reach::{BaselineBackend, GridUpdate, NaiveBackend, ReachabilityBackend};
use frechet1d::scaling::{decide_under_scaling, optimize_scaling};
use frechet1d::translation::{decide_under_translation, optimize_translation, select_half_difference, AlignTranslations};
use frechet1d::{compute_extended_signature, verify_signature, Scalar, TimeSeries};
use proptest::prelude::*;

fn series(max_len: usize) -> impl Strategy<Value = TimeSeries> {
    prop::collection::vec(-6i64..=6, 2..=max_len).prop_map(|v| TimeSeries::from_ints(&v).unwrap())
}

fn delta() -> impl Strategy<Value = Scalar> {
    (0i64..=24).prop_map(|k| Scalar::ratio(k, 4))
}

fn bfs(g: &Grid) -> bool {
    let (n, m) = (g.rows(), g.cols());
    if !g.get(0, 0) {
        return false;
    }
    let mut seen = vec![false; n * m];
    let mut queue = VecDeque::from([(0, 0)]);
    seen[0] = true;
    while let Some((i, j)) = queue.pop_front() {
        for (a, b) in [(i + 1, j), (i, j + 1), (i + 1, j + 1)] {
            if a < n && b < m && g.get(a, b) && !seen[a * m + b] {
                seen[a * m + b] = true;
                queue.push_back((a, b));
            }
        }
    }
    seen[n * m - 1]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn selection_matches_sorted_pairs(raw in prop::collection::vec(-20i64..=20, 2..=12), pick in any::<prop::sample::Index>()) {
        let values: Vec<Scalar> = raw.iter().map(|&v| Scalar::from_int(v)).collect();
        let t = AlignTranslations::from_values(values);
        let mut all = Vec::new();
        for a in 0..t.values.len() {
            for b in a + 1..t.values.len() {
                all.push(t.values[a].dist(&t.values[b]).half());
            }
        }
        all.sort();
        let rank = pick.index(all.len()) + 1;
        prop_assert_eq!(select_half_difference(&t, rank).unwrap(), all[rank - 1].clone());
    }

    #[test]
    fn backends_agree_with_search(
        cells in prop::collection::vec(any::<bool>(), 36),
        ups in prop::collection::vec((0usize..6, 0usize..6, any::<bool>()), 0..40),
    ) {
        let initial = Grid::from_fn(6, 6, |i, j| cells[i * 6 + j]);
        let updates: Vec<GridUpdate> = ups.iter().map(|&(i, j, v)| GridUpdate::set(i, j, v)).collect();
        let mut want = vec![bfs(&initial)];
        let mut g = initial.clone();
        for u in &updates {
            g.set(u.i, u.j, u.value());
            want.push(bfs(&g));
        }
        prop_assert_eq!(&BaselineBackend::new().run(&initial, &updates).unwrap(), &want);
        prop_assert_eq!(&NaiveBackend::new().run(&initial, &updates).unwrap(), &want);
    }

    #[test]
    fn signatures_are_valid(p in series(14), d in delta()) {
        let sig = compute_extended_signature(&p, &d);
        prop_assert!(verify_signature(&p, &sig.indices, &d).is_ok());
    }

    #[test]
    fn static_matches_free_space(p in series(9), q in series(9), d in delta()) {
        prop_assert_eq!(decide_static(&p, &q, &d), freespace_decide(&p, &q, &d));
    }

    #[test]
    fn static_value_matches_free_space(p in series(7), q in series(7)) {
        prop_assert_eq!(exact_distance(&p, &q), freespace_distance(&p, &q));
    }

    #[test]
    fn distance_is_symmetric_and_reversal_invariant(p in series(7), q in series(7)) {
        let d = exact_distance(&p, &q);
        prop_assert_eq!(&exact_distance(&q, &p), &d);
        prop_assert_eq!(&exact_distance(&p.reverse(), &q.reverse()), &d);
    }

    #[test]
    fn translation_witness_attains_value(p in series(6), q in series(6), shift in -10i64..=10) {
        let (d, t) = optimize_translation(&p, &q);
        prop_assert!(freespace_decide(&p, &q.translate(&t), &d));
        let moved = q.translate(&Scalar::ratio(shift, 3));
        prop_assert_eq!(&optimize_translation(&p, &moved).0, &d);
        prop_assert!(decide_under_translation(&p, &q, &d).0);
    }

    #[test]
    fn scaling_witness_attains_value(p in series(6), q in series(6)) {
        let (d, s) = optimize_scaling(&p, &q);
        prop_assert!(!s.is_negative());
        prop_assert!(freespace_decide(&p, &q.scale(&s).unwrap(), &d));
        prop_assert!(decide_under_scaling(&p, &q, &d).0);
        prop_assert!(d <= exact_distance(&p, &q));
    }
}
