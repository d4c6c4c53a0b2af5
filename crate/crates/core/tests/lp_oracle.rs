mod common;

use chainlab::lp::{self, LinearProgram, LpStatus, PivotRule, Sense};
use chainlab::rational::{int, rat, weighted_l1, weighted_linf};
use chainlab::{Matrix, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn weight() -> impl Strategy<Value = Rational> {
    prop_oneof![Just(int(1)), Just(int(2)), Just(rat(1, 2)), Just(int(3)), Just(rat(2, 3))]
}

/// `(target, span, weights)` with `d <= 5` rows and at most 3 span columns.
fn fit_instance() -> impl Strategy<Value = (Vec<Rational>, Matrix, Vec<Rational>)> {
    (1usize..=5, 0usize..=3).prop_flat_map(|(d, k)| {
        (
            prop::collection::vec(-3i64..=3, d),
            prop::collection::vec(-2i64..=2, d * k),
            prop::collection::vec(weight(), d),
        )
            .prop_map(move |(t, s, w)| {
                let span = Matrix::from_fn(d, k, |i, j| int(s[i * k + j]));
                (t.into_iter().map(int).collect(), span, w)
            })
    })
}

fn sparse_entry() -> impl Strategy<Value = i64> {
    prop_oneof![3 => Just(0i64), 2 => -2i64..=2]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn l1_fit_matches_vertex_enumeration((t, span, w) in fit_instance()) {
        let fit = lp::min_weighted_l1(&t, &span, &w).unwrap();
        prop_assert_eq!(&fit.value, &common::min_l1_by_vertices(&t, &span, &w));
        prop_assert_eq!(weighted_l1(&fit.residual, &w), fit.value.clone());
        // certificate: spanᵀ y = 0, ⟨t, y⟩ = value, max |y_i| / w_i <= 1
        prop_assert!(span.vec_mul(&fit.certificate).iter().all(Zero::is_zero));
        prop_assert_eq!(chainlab::rational::dot(&t, &fit.certificate), fit.value.clone());
        let inv: Vec<Rational> = w.iter().map(|x| x.recip()).collect();
        prop_assert!(weighted_linf(&fit.certificate, &inv) <= int(1));
    }

    #[test]
    fn linf_fit_matches_vertex_enumeration((t, span, w) in fit_instance()) {
        let fit = lp::min_weighted_linf(&t, &span, &w).unwrap();
        prop_assert_eq!(&fit.value, &common::min_linf_by_vertices(&t, &span, &w));
        prop_assert_eq!(weighted_linf(&fit.residual, &w), fit.value.clone());
    }

    #[test]
    fn l1_fit_ignores_column_order_and_scale((t, span, w) in fit_instance(), s in prop_oneof![Just(rat(-1, 2)), Just(int(3)), Just(rat(2, 5))]) {
        let base = lp::min_weighted_l1(&t, &span, &w).unwrap().value;
        let k = span.cols();
        let reversed: Vec<usize> = (0..k).rev().collect();
        let permuted = span.select_columns(&reversed);
        prop_assert_eq!(&lp::min_weighted_l1(&t, &permuted, &w).unwrap().value, &base);
        if k > 0 {
            let mut scaled = span.clone();
            for i in 0..span.rows() {
                scaled.set(i, 0, span.get(i, 0) * &s);
            }
            prop_assert_eq!(&lp::min_weighted_l1(&t, &scaled, &w).unwrap().value, &base);
        }
    }

    /// `min cᵀx, Ax = b, x >= 0` with `c >= 0`, so bounded whenever feasible.
    #[test]
    fn standard_form_matches_basic_solutions(
        (m, n) in (1usize..=3, 2usize..=5),
        entries in prop::collection::vec(sparse_entry(), 15),
        rhs in prop::collection::vec(-3i64..=4, 3),
        cost in prop::collection::vec(0i64..=3, 5),
    ) {
        let a = Matrix::from_fn(m, n, |i, j| int(entries[i * n + j]));
        let b: Vec<Rational> = rhs[..m].iter().map(|&v| int(v)).collect();
        let c: Vec<Rational> = cost[..n].iter().map(|&v| int(v)).collect();
        let prog = LinearProgram::new(c.clone(), a.clone(), b.clone(), vec![Sense::Eq; m]).nonnegative();
        let bland = lp::solve(&prog).unwrap();
        let dantzig = lp::solve_with(&prog, PivotRule::Dantzig).unwrap();
        match common::standard_form_optimum(&c, &a, &b) {
            None => {
                prop_assert_eq!(bland.status, LpStatus::Infeasible);
                prop_assert_eq!(dantzig.status, LpStatus::Infeasible);
            }
            Some(v) => {
                prop_assert_eq!(bland.value(), Some(&v));
                prop_assert_eq!(dantzig.value(), Some(&v));
                prop_assert!(lp::verify_optimal(&prog, &bland).is_ok());
                prop_assert!(lp::verify_optimal(&prog, &dantzig).is_ok());
            }
        }
    }

    /// Many parallel zero-rhs rows: the classic cycling trap for naive
    /// pivoting.
    #[test]
    fn degenerate_programs_terminate(
        rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 2..=6),
        cost in prop::collection::vec(-2i64..=2, 4),
    ) {
        let m = rows.len();
        let a = Matrix::from_fn(m, 4, |i, j| int(rows[i][j]));
        let c: Vec<Rational> = cost.into_iter().map(int).collect();
        let prog = LinearProgram::new(c, a, vec![int(0); m], vec![Sense::Le; m])
            .with_bounds(vec![Some(int(0)); 4], vec![Some(int(1)); 4]);
        let sol = lp::solve(&prog).unwrap();
        prop_assert_eq!(sol.status, LpStatus::Optimal);
        prop_assert!(lp::verify_optimal(&prog, &sol).is_ok());
        let again = lp::solve(&prog).unwrap();
        prop_assert_eq!(sol, again);
    }
}

#[test]
fn lower_bound_constraint_is_tight() {
    let prog = LinearProgram::new(vec![int(1)], Matrix::from_i64(&[&[1]], 1), vec![int(3)], vec![Sense::Ge]);
    let sol = lp::solve(&prog).unwrap();
    assert_eq!(sol.value(), Some(&int(3)));
    assert_eq!(sol.primal, vec![int(3)]);
    assert_eq!(sol.dual, vec![int(1)]);
}

#[test]
fn contradictory_equalities_are_infeasible() {
    let prog = LinearProgram::new(vec![int(0)], Matrix::from_i64(&[&[1], &[1]], 1), vec![int(1), int(2)], vec![Sense::Eq; 2]);
    assert_eq!(lp::solve(&prog).unwrap().status, LpStatus::Infeasible);
}

#[test]
fn malformed_program_is_rejected_before_solving() {
    let prog = LinearProgram::new(vec![int(1), int(1)], Matrix::from_i64(&[&[1]], 1), vec![int(1)], vec![Sense::Eq]);
    assert!(lp::solve(&prog).is_err());
}

#[test]
fn line_fits_against_a_one_dimensional_search() {
    let t = vec![int(1), int(1)];
    let w = vec![int(1), int(1)];
    let against = Matrix::from_i64(&[&[1], &[-1]], 1);
    let along = Matrix::from_i64(&[&[1], &[1]], 1);
    // |1 + x| + |1 - x| is 2 on [-1, 1]; |1 + x| + |1 + x| is 0 at x = -1
    let grid: Vec<Rational> = (-8..=8).map(|k| rat(k, 4)).collect();
    let search = |s: &Matrix| grid.iter().map(|x| weighted_l1(&[&t[0] + s.get(0, 0) * x, &t[1] + s.get(1, 0) * x], &w)).min().unwrap();
    assert_eq!(lp::min_weighted_l1(&t, &against, &w).unwrap().value, search(&against));
    assert_eq!(lp::min_weighted_l1(&t, &against, &w).unwrap().value, int(2));
    assert_eq!(lp::min_weighted_l1(&t, &along, &w).unwrap().value, search(&along));
    assert_eq!(lp::min_weighted_l1(&t, &along, &w).unwrap().value, int(0));
}

#[test]
fn zero_target_fits_with_zero_coefficients() {
    let span = Matrix::from_i64(&[&[1, 2], &[0, 1], &[3, 0]], 2);
    let fit = lp::min_weighted_l1(&vec![int(0); 3], &span, &vec![int(1); 3]).unwrap();
    assert_eq!(fit.value, int(0));
    assert!(fit.coefficients.iter().all(Zero::is_zero));
}

#[test]
fn oracles_agree_with_each_other() {
    let m = Matrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1], &[0, 2, 2]], 3);
    assert_eq!(common::rank(&m), 2);
    assert_eq!(common::rank_by_minors(&m), 2);
    assert_eq!(common::rank(&Matrix::zeros(3, 2)), 0);
}
