use num_rational::Rational64;
use proptest::prelude::*;
use tdual_core::oracle::linalg::{dense_rank, sparse_rank, SparseMatrix};
use tdual_core::oracle::{
    oracle_hom_dim, oracle_pair, oracle_report, region_pair, relative_cohomology, shrink_and_triangulate, CellLabel,
};

/// `C(d + n, n)` by Pascal recursion, kept apart from the library.
fn pascal(d: i64, n: usize) -> usize {
    if d < 0 {
        return 0;
    }
    let mut row = vec![1usize; n + 1];
    for _ in 0..d {
        for k in 1..=n {
            row[k] += row[k - 1];
        }
    }
    row[n]
}

#[test]
fn oracle_matches_closed_form_for_both_shrinks() {
    let epsilons = [Rational64::new(1, 5), Rational64::new(1, 10)];
    for n in 1..=2usize {
        let report = oracle_report(n, &epsilons, |i, j| pascal(j - i, n)).unwrap();
        assert!(report.pass, "n={n}: {:?}", report.witness);
    }
}

#[test]
fn summands_are_point_or_nothing() {
    // Each (i, j, b) summand is either a point in degree 0 or acyclic.
    for n in 1..=2usize {
        for i in -(n as i64) - 1..=-1 {
            for j in -(n as i64) - 1..=-1 {
                let hom = oracle_hom_dim(i, j, n, Rational64::new(1, 5)).unwrap();
                for p in &hom.pairs {
                    let total: usize = p.betti.iter().sum();
                    assert!(total == 0 || p.betti[0] == 1 && total == 1, "{p:?}");
                }
            }
        }
    }
}

#[test]
fn wrong_expectation_fails_with_witness() {
    let report = oracle_report(1, &[Rational64::new(1, 5)], |i, j| pascal(j - i, 1) + usize::from(i == j)).unwrap();
    assert!(!report.pass);
    assert!(report.witness.is_some());
}

#[test]
fn shrink_bound_is_a_precondition() {
    assert!(oracle_pair(2, -2, -1, &[0, 0], Rational64::new(1, 4)).is_err());
    assert!(oracle_pair(2, -2, -1, &[0, 0], Rational64::new(1, 3)).is_err());
    assert!(oracle_pair(2, -2, -1, &[0, 0], Rational64::new(2, 9)).is_ok());
}

#[test]
fn stability_under_odd_shrinks() {
    for eps in [Rational64::new(1, 7), Rational64::new(2, 9), Rational64::new(3, 20)] {
        let hom = oracle_hom_dim(-3, -1, 2, eps).unwrap();
        assert_eq!(hom.total.betti, vec![6, 0, 0], "eps={eps}");
    }
}

#[test]
fn every_pair_complex_is_valid() {
    for n in 1..=2usize {
        let top = n as i64;
        for i in -top - 1..=-1 {
            for j in -top - 1..=-1 {
                for b in offsets(n) {
                    let outer = CellLabel::new(n, i, vec![0; n]).unwrap();
                    let inner = CellLabel::new(n, j, b).unwrap();
                    let pair = region_pair(n, &outer, &inner).unwrap();
                    assert!(pair.a.faces.is_subset(&pair.x.faces));
                    let complex = shrink_and_triangulate(&pair, Rational64::new(1, 5)).unwrap();
                    complex.validate().unwrap();
                    let betti = relative_cohomology(&complex).unwrap();
                    assert_eq!(betti.euler_characteristic(), complex.euler_characteristic());
                }
            }
        }
    }
}

fn offsets(n: usize) -> Vec<Vec<i64>> {
    let top = n as i64;
    if n == 1 {
        (-top..=0).map(|x| vec![x]).collect()
    } else {
        (-top..=0).flat_map(|x| (-top..=0).map(move |y| vec![x, y])).collect()
    }
}

proptest! {
    #[test]
    fn sparse_rank_matches_bareiss(
        rows in 1usize..8,
        cols in 1usize..8,
        entries in prop::collection::vec(-3i128..=3, 64),
        zero_mask in prop::collection::vec(prop::bool::weighted(0.5), 64),
    ) {
        let dense: Vec<Vec<i128>> = (0..rows)
            .map(|r| (0..cols).map(|c| if zero_mask[r * 8 + c] { 0 } else { entries[r * 8 + c] }).collect())
            .collect();
        prop_assert_eq!(sparse_rank(&SparseMatrix::from_dense(&dense)).unwrap(), dense_rank(&dense).unwrap());
    }

    #[test]
    fn rank_of_product_is_bounded(
        a in prop::collection::vec(-2i128..=2, 12),
        b in prop::collection::vec(-2i128..=2, 12),
    ) {
        // (4 x 3) * (3 x 4) has rank at most 3.
        let left: Vec<Vec<i128>> = a.chunks(3).map(|r| r.to_vec()).collect();
        let right: Vec<Vec<i128>> = b.chunks(4).map(|r| r.to_vec()).collect();
        let product: Vec<Vec<i128>> = (0..4)
            .map(|r| (0..4).map(|c| (0..3).map(|m| left[r][m] * right[m][c]).sum()).collect())
            .collect();
        let rank = sparse_rank(&SparseMatrix::from_dense(&product)).unwrap();
        prop_assert!(rank <= 3);
        prop_assert!(rank <= dense_rank(&left).unwrap().min(dense_rank(&right).unwrap()));
    }
}
