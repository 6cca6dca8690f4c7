//! Maps induced on a truncation by automorphisms and exponentials: they are
//! bracket-compatible, injective, and decompose along the coordinate axes.

mod common;

use common::{arb_automorphism, arb_derivation};
use proptest::prelude::*;
use unitri_core::{
    check_homomorphism, check_injectivity, check_pairwise_commuting, endo_from_automorphism,
    endo_from_exp_ad, extract_generators, image_rank, FiltrationBasis, TriangularAutomorphism,
    UniDerivation, DEFAULT_NILPOTENCY_CAP,
};

fn auto_setting() -> impl Strategy<Value = (usize, u32, TriangularAutomorphism)> {
    (2..=3usize, 1..=2u32).prop_flat_map(|(n, d)| (Just(n), Just(d), arb_automorphism(n, 2, 2)))
}

fn flow_setting() -> impl Strategy<Value = (usize, u32, UniDerivation)> {
    (2..=3usize, 1..=2u32)
        .prop_flat_map(|(n, d)| (Just(n), Just(d), arb_derivation(n, 2, 2)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn conjugation_gives_bracket_compatible_maps((_, d, s) in auto_setting()) {
        let m = endo_from_automorphism(&s, d).unwrap();
        prop_assert!(check_homomorphism(&m).unwrap().is_none());
        for sub in 0..=d {
            prop_assert!(check_injectivity(&m, sub).unwrap());
        }
    }

    #[test]
    fn exponential_flows_give_bracket_compatible_maps((_, d, g) in flow_setting()) {
        let m = endo_from_exp_ad(&g, d, DEFAULT_NILPOTENCY_CAP).unwrap();
        prop_assert!(check_homomorphism(&m).unwrap().is_none());
        for sub in 0..=d {
            prop_assert!(check_injectivity(&m, sub).unwrap());
        }
    }

    #[test]
    fn induced_map_is_the_action_on_every_basis_element((n, d, s) in auto_setting()) {
        let m = endo_from_automorphism(&s, d).unwrap();
        let basis = FiltrationBasis::enumerate(n, d).unwrap();
        for (pos, idx) in basis.elements().iter().enumerate() {
            let direct = s.act_on_derivation(&idx.to_derivation(n).unwrap()).unwrap();
            prop_assert_eq!(m.image_at(pos), &direct);
        }
    }

    #[test]
    fn generators_decompose_with_reciprocal_scales((n, d, s) in auto_setting()) {
        let m = endo_from_automorphism(&s, d).unwrap();
        let gens = extract_generators(&m).unwrap();
        prop_assert_eq!(gens.len(), n);
        for (k, g) in gens.iter().enumerate() {
            let i = k + 1;
            prop_assert_eq!(g.index, i);
            prop_assert_eq!(g.lambda.clone(), s.scale(i).recip());
            // the tail lies strictly deeper in the ideal chain
            prop_assert!(g.tail.ideal_index().get() > i);
            // lambda d_i + tail reassembles the image
            let lead = UniDerivation::partial(n, i).unwrap().scale(&g.lambda);
            prop_assert_eq!(
                &lead.add(&g.tail).unwrap(),
                m.image_of_partial(i).unwrap()
            );
        }
    }

    #[test]
    fn conjugated_axes_commute_pairwise((n, d, s) in auto_setting()) {
        let m = endo_from_automorphism(&s, d).unwrap();
        let targets: Vec<UniDerivation> = (1..=n)
            .map(|i| m.image_of_partial(i).unwrap().clone())
            .collect();
        prop_assert!(check_pairwise_commuting(&targets).unwrap().is_none());
    }

    #[test]
    fn rank_is_linear_in_the_action((n, d, s) in auto_setting()) {
        // the rank of the image of every sublevel basis equals its dimension
        let m = endo_from_automorphism(&s, d).unwrap();
        for sub in 0..=d {
            let dim = FiltrationBasis::enumerate(n, sub).unwrap().len();
            prop_assert_eq!(image_rank(&m, sub).unwrap(), dim);
        }
    }

    #[test]
    fn linearity_of_apply_to((n, d, s) in auto_setting()) {
        let m = endo_from_automorphism(&s, d).unwrap();
        let basis = FiltrationBasis::enumerate(n, d).unwrap();
        let a = basis.elements()[0].to_derivation(n).unwrap();
        let b = basis.elements()[basis.len() - 1].to_derivation(n).unwrap();
        let sum = a.add(&b).unwrap();
        prop_assert_eq!(
            m.apply_to(&sum).unwrap(),
            m.apply_to(&a).unwrap().add(&m.apply_to(&b).unwrap()).unwrap()
        );
    }
}
