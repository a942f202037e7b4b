//! Randomized laws for the Magnus expansion: homomorphism and inverse
//! properties, agreement with the combinatorial coefficient oracle, the
//! linking-number reading of two-index invariants, and the lower-central
//! degree floor for iterated commutators.

use concordance_core::magnus::{
    magnus_coefficient_bruteforce, magnus_expand, mu_invariant, FreeWord,
};
use concordance_core::scalar::Int;
use proptest::prelude::*;

fn letters(generators: i32, max_len: usize) -> impl Strategy<Value = Vec<i32>> {
    proptest::collection::vec(
        (1..=generators, proptest::bool::ANY)
            .prop_map(|(g, flip)| if flip { -g } else { g }),
        0..=max_len,
    )
}

fn word(generators: i32, max_len: usize) -> impl Strategy<Value = FreeWord> {
    letters(generators, max_len)
        .prop_map(move |ls| FreeWord::new(generators as usize, &ls).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn expansion_is_a_homomorphism(
        u in word(3, 10),
        v in word(3, 10),
        degree in 1usize..=4,
    ) {
        let lhs = magnus_expand(&u.concat(&v).unwrap(), degree);
        let rhs = magnus_expand(&u, degree)
            .mul(&magnus_expand(&v, degree))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_expansion_is_the_series_inverse(u in word(3, 10), degree in 1usize..=4) {
        let series = magnus_expand(&u, degree);
        let inverse = magnus_expand(&u.inverse(), degree);
        prop_assert!(series.mul(&inverse).unwrap().is_one());
        prop_assert!(inverse.mul(&series).unwrap().is_one());
    }

    #[test]
    fn coefficients_match_the_combinatorial_oracle(
        u in word(2, 12),
        monomial in proptest::collection::vec(1u8..=2, 0..=3),
    ) {
        let series = magnus_expand(&u, monomial.len());
        prop_assert_eq!(
            series.coefficient(&monomial),
            magnus_coefficient_bruteforce(&u, &monomial)
        );
    }

    #[test]
    fn two_index_mu_is_the_exponent_sum(l1 in word(2, 12), l2 in word(2, 12)) {
        let longitudes = [l1.clone(), l2.clone()];
        prop_assert_eq!(
            mu_invariant(&longitudes, &[1, 2]).unwrap(),
            Int::from(l2.exponent_sum(1))
        );
        prop_assert_eq!(
            mu_invariant(&longitudes, &[2, 1]).unwrap(),
            Int::from(l1.exponent_sum(2))
        );
    }

    #[test]
    fn iterated_commutators_vanish_below_their_depth(
        seeds in proptest::collection::vec(letters(2, 6), 2..=5),
    ) {
        // left-nested commutator of `seeds.len()` words lies in that term of
        // the lower central series: coefficients below that degree vanish
        let depth = seeds.len();
        let words: Vec<FreeWord> = seeds
            .iter()
            .map(|ls| FreeWord::new(2, ls).unwrap())
            .collect();
        let mut nested = words[0].clone();
        for w in &words[1..] {
            nested = FreeWord::commutator(&nested, w).unwrap();
        }
        let below = magnus_expand(&nested, depth - 1);
        prop_assert!(below.is_one(), "depth {depth}: {below}");
    }
}
