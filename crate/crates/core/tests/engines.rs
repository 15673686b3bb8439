use std::collections::BTreeSet;

use border_core::oracle::{brute_force_all_order_ideals, brute_force_all_quasi_order_ideals};
use border_core::{
    bm_all_order_ideals, bm_all_order_ideals_with, bm_all_quasi_order_ideals, bm_border, buchberger_moller,
    fg_all_quasi_order_ideals, fg_all_quasi_order_ideals_with, fg_border, quasi_oi_step, verify_border_pair, BorderPair,
    EnumerationOptions, EnumerationResult, FgState, FieldSpec, OrderIdealSet, OrderingKind, PointSet, TermOrdering,
};
use proptest::prelude::*;

fn point_sets(max_points: usize) -> impl Strategy<Value = PointSet> {
    (0usize..4, 1usize..=3)
        .prop_flat_map(move |(f, n)| {
            let rows = prop::collection::vec(prop::collection::vec(-3i64..=3, n), 1..=max_points);
            (Just(f), rows)
        })
        .prop_filter_map("distinct points", |(f, rows)| {
            let field = [FieldSpec::rationals(), FieldSpec::prime(2).unwrap(), FieldSpec::prime(5).unwrap(), FieldSpec::prime(32003).unwrap()][f];
            let refs: Vec<&[i64]> = rows.iter().map(|r| &r[..]).collect();
            PointSet::from_integers(field, &refs).ok()
        })
}

fn ideals(r: &EnumerationResult) -> BTreeSet<OrderIdealSet> {
    r.order_ideals().cloned().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engines_agree_with_oracles(points in point_sets(5)) {
        let oi = bm_all_order_ideals(&points).unwrap();
        let fg = fg_all_quasi_order_ideals(&points).unwrap();
        let bm = bm_all_quasi_order_ideals(&points).unwrap();
        prop_assert_eq!(ideals(&oi), brute_force_all_order_ideals(&points).unwrap());
        let quasi = brute_force_all_quasi_order_ideals(&points).unwrap();
        prop_assert_eq!(&ideals(&fg), &quasi);
        prop_assert_eq!(&ideals(&bm), &quasi);
        let proper: BTreeSet<_> = quasi.iter().filter(|o| o.is_order_ideal()).cloned().collect();
        prop_assert_eq!(proper, ideals(&oi));
        for r in [&oi, &fg, &bm] {
            prop_assert!(r.branch_count >= r.raw_count && r.raw_count >= r.len() as u64);
            for pair in &r.pairs {
                prop_assert_eq!(pair.order_ideal().len(), points.len());
                prop_assert!(verify_border_pair(pair, &points).passed());
            }
        }
    }

    #[test]
    fn single_pairs_are_enumerated(points in point_sets(6)) {
        let oi = bm_all_order_ideals(&points).unwrap();
        let quasi = fg_all_quasi_order_ideals(&points).unwrap();
        let bm = bm_border(&points).unwrap();
        prop_assert_eq!(oi.find(bm.order_ideal()), Some(&bm));
        let fg = fg_border(&points).unwrap();
        prop_assert!(verify_border_pair(&fg, &points).passed());
        prop_assert!(quasi.find(fg.order_ideal()).is_some());
        for kind in [OrderingKind::Lex, OrderingKind::DegLex, OrderingKind::DegRevLex] {
            let gb = buchberger_moller(&points, &TermOrdering::new(kind, points.arity())).unwrap();
            prop_assert!(oi.find(&gb.order_ideal).is_some());
        }
    }

    #[test]
    fn pruning_and_threads_do_not_change_results(points in point_sets(4)) {
        let reference = bm_all_order_ideals(&points).unwrap();
        let quasi = fg_all_quasi_order_ideals(&points).unwrap();
        for options in [EnumerationOptions::literal(), EnumerationOptions::parallel()] {
            prop_assert_eq!(&bm_all_order_ideals_with(&points, &options).unwrap().pairs, &reference.pairs);
            let other = fg_all_quasi_order_ideals_with(&points, &options).unwrap();
            prop_assert_eq!(&other.pairs, &quasi.pairs);
            if options.prune_revisits {
                prop_assert_eq!((other.raw_count, other.branch_count), (quasi.raw_count, quasi.branch_count));
            }
        }
    }

    #[test]
    fn extending_by_a_nonvanishing_element(points in point_sets(5).prop_filter("two or more points", |x| x.len() >= 2)) {
        let s = points.len();
        let prefix = PointSet::new(points.field(), points.points()[..s - 1].to_vec()).unwrap();
        let last = points.point(s - 1);
        let quasi = brute_force_all_quasi_order_ideals(&points).unwrap();
        for pair in &bm_all_quasi_order_ideals(&prefix).unwrap().pairs {
            for (i, g) in pair.basis().iter().enumerate() {
                if g.evaluate(last).unwrap().is_zero() {
                    continue;
                }
                let grown = pair.order_ideal().with(g.border_term().clone());
                prop_assert!(quasi.contains(&grown));
                let mut rest = pair.basis().to_vec();
                rest.remove(i);
                let state = FgState::from_parts(pair.order_ideal().clone(), rest, (0..s).collect(), s - 1);
                let next = quasi_oi_step(&points, state, g).unwrap();
                prop_assert_eq!(next.order_ideal(), &grown);
                let extended = BorderPair::new(grown, next.basis().to_vec(), true);
                prop_assert!(verify_border_pair(&extended, &points).passed());
            }
        }
    }
}
