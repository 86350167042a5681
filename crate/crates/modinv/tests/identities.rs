mod common;

use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 1000, ..ProptestConfig::default() })]

    #[test]
    fn sigma_is_a_homomorphism(seed in any::<u64>()) {
        prop_assert_eq!(common::homomorphism(seed), Ok(()));
    }

    #[test]
    fn right_action_law(seed in any::<u64>()) {
        prop_assert_eq!(common::right_action(seed), Ok(()));
    }

    #[test]
    fn delta_moves_by_c2_x_squared(seed in any::<u64>()) {
        prop_assert_eq!(common::delta_transform(seed), Ok(()));
    }

    #[test]
    fn plucker_instances_vanish(seed in any::<u64>()) {
        prop_assert_eq!(common::plucker(seed), Ok(()));
    }

    #[test]
    fn gamma_frobenius_shift(seed in any::<u64>()) {
        prop_assert_eq!(common::frobenius_shift(seed), Ok(()));
    }

    #[test]
    fn f_j_is_invariant(seed in any::<u64>()) {
        prop_assert_eq!(common::fj_invariance(seed), Ok(()));
    }

    #[test]
    fn f13579_is_a_norm_multiple(seed in any::<u64>()) {
        prop_assert_eq!(common::f13579_norm(seed), Ok(()));
    }

    #[test]
    fn f12346_in_terms_of_f1_f2(seed in any::<u64>()) {
        prop_assert_eq!(common::f12346_identity(seed), Ok(()));
    }

    #[test]
    fn s4_norm_of_y(seed in any::<u64>()) {
        prop_assert_eq!(common::s4_norm(seed), Ok(()));
    }

    #[test]
    fn subduction_trace_reassembles(seed in any::<u64>()) {
        prop_assert_eq!(common::subduction_trace(seed), Ok(()));
    }
}
