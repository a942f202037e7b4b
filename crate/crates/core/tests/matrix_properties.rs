//! Randomized checks of the symmetric-matrix certificates: inertia is a
//! congruence invariant (Sylvester's law) and strong diagonal dominance
//! with a positive diagonal forces positive definiteness.

use concordance_core::matrix::{Dominance, SymmetricMatrix};
use concordance_core::scalar::{rat_int, Int, Rational};
use num_traits::Zero;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-8i64..=8, 1i64..=3).prop_map(|(n, d)| Rational::new(Int::from(n), Int::from(d)))
}

fn symmetric(dim: usize) -> impl Strategy<Value = SymmetricMatrix> {
    proptest::collection::vec(rational(), dim * (dim + 1) / 2).prop_map(move |upper| {
        let mut m = SymmetricMatrix::zeros(dim);
        let mut slots = upper.into_iter();
        for i in 0..dim {
            for j in i..dim {
                m.set_sym(i, j, slots.next().expect("one slot per pair"));
            }
        }
        m
    })
}

fn any_symmetric() -> impl Strategy<Value = SymmetricMatrix> {
    (1usize..=5).prop_flat_map(symmetric)
}

/// Congruence by the elementary matrix E = I + c e_i e_j^T (i != j):
/// returns E M E^T, which must preserve inertia.
fn elementary_congruence(m: &SymmetricMatrix, i: usize, j: usize, c: &Rational) -> SymmetricMatrix {
    let dim = m.dim();
    let mut rows: Vec<Vec<Rational>> = (0..dim)
        .map(|r| (0..dim).map(|s| m.get(r, s).clone()).collect())
        .collect();
    // row operation: row_i += c * row_j
    for s in 0..dim {
        let add = c * m.get(j, s);
        rows[i][s] += add;
    }
    // column operation: col_i += c * col_j (on the updated rows)
    for r in 0..dim {
        let add = c * &rows[r][j].clone();
        rows[r][i] += add;
    }
    SymmetricMatrix::from_rows(rows).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn inertia_counts_sum_to_dimension(m in any_symmetric()) {
        let inertia = m.inertia();
        prop_assert_eq!(inertia.positive + inertia.negative + inertia.zero, m.dim());
        // zero count vanishes exactly when the determinant does not
        prop_assert_eq!(inertia.zero == 0, !m.determinant().is_zero());
        prop_assert_eq!(
            m.is_positive_definite(),
            inertia.positive == m.dim()
        );
    }

    #[test]
    fn inertia_is_a_congruence_invariant(
        m in any_symmetric(),
        ops in proptest::collection::vec((0usize..5, 0usize..5, -3i64..=3), 1..6),
        scale_row in 0usize..5,
        scale in (-4i64..=4).prop_filter("nonzero", |c| *c != 0),
    ) {
        let reference = m.inertia();
        let mut current = m.clone();
        for (i, j, c) in ops {
            let (i, j) = (i % current.dim(), j % current.dim());
            if i != j {
                current = elementary_congruence(&current, i, j, &rat_int(c));
            }
        }
        current = current
            .scale_row_col(scale_row % current.dim(), &rat_int(scale))
            .unwrap();
        prop_assert_eq!(current.inertia(), reference);
    }

    #[test]
    fn strong_dominance_with_positive_diagonal_is_definite(
        base in any_symmetric(),
        slacks in proptest::collection::vec(1i64..=4, 5),
    ) {
        // overwrite the diagonal with row-sum + slack: strongly dominant rows
        let dim = base.dim();
        let mut m = base;
        for i in 0..dim {
            let row_sum: Rational = (0..dim)
                .filter(|&j| j != i)
                .map(|j| {
                    let w = m.get(i, j);
                    if w < &Rational::zero() { -w.clone() } else { w.clone() }
                })
                .sum();
            m.set_sym(i, i, row_sum + rat_int(slacks[i % slacks.len()]));
        }
        prop_assert_eq!(m.dominance(), Dominance::StronglyDominant);
        prop_assert!(m.diagonal_all_positive());
        prop_assert!(m.is_positive_definite());
        let inertia = m.inertia();
        prop_assert_eq!(inertia.positive, dim);
    }
}
