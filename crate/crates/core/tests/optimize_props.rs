mod common;

use ergodic_opt::measure::integrate;
use ergodic_opt::optimize::{beta, beta_oracle, beta_policy_iteration, critical_graph, is_unique, second_gap};
use ergodic_opt::typicality::enumerate_cycle_measures;
use ergodic_opt::Potential;
use num_traits::Zero;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn fast_paths_match_the_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, 7, 14, 5_000);
        let f = common::random_potential(&mut rng, g.edge_count());
        let oracle = beta_oracle(&g, &f).unwrap();
        let crit = critical_graph(&g, &f).unwrap();
        prop_assert_eq!(beta(&g, &f).unwrap(), oracle.beta.clone());
        prop_assert_eq!(beta_policy_iteration(&g, &f).unwrap(), oracle.beta.clone());
        prop_assert_eq!(crit.edge_set(), oracle.edge_union());
        prop_assert_eq!(crit.is_single_cycle(&g), oracle.cycles.len() == 1);
    }

    #[test]
    fn ties_agree_with_the_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, 6, 12, 5_000);
        let f = common::random_potential(&mut rng, g.edge_count());
        if let Some(tie) = common::constructed_tie(&mut rng, &g, &f) {
            let oracle = beta_oracle(&g, &tie).unwrap();
            prop_assert!(oracle.cycles.len() >= 2);
            prop_assert_eq!(critical_graph(&g, &tie).unwrap().edge_set(), oracle.edge_union());
            prop_assert!(!is_unique(&g, &tie).unwrap());
        }
    }

    #[test]
    fn adding_a_constant_shifts_beta(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, 6, 12, 5_000);
        let f = common::random_potential(&mut rng, g.edge_count());
        let c = common::small_rational(&mut rng);
        let shifted = &f + &Potential::constant(g.edge_count(), c.clone());
        prop_assert_eq!(beta(&g, &shifted).unwrap(), beta(&g, &f).unwrap() + c);
    }

    #[test]
    fn beta_bounds_every_measure(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, 6, 12, 5_000);
        let f = common::random_potential(&mut rng, g.edge_count());
        let f = common::constructed_tie(&mut rng, &g, &f).unwrap_or(f);
        let crit = critical_graph(&g, &f).unwrap();
        for cm in enumerate_cycle_measures(&g).unwrap() {
            let value = integrate(&f, &cm.measure).unwrap();
            let supported = cm.cycle.iter().all(|&e| crit.contains(e));
            prop_assert!(value <= *crit.beta());
            prop_assert_eq!(value == *crit.beta(), supported);
        }
    }

    #[test]
    fn unique_implies_positive_gap(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_graph(&mut rng, 6, 12, 5_000);
        let f = common::random_potential(&mut rng, g.edge_count());
        let cycles = enumerate_cycle_measures(&g).unwrap().len();
        if is_unique(&g, &f).unwrap() && cycles >= 2 {
            let gap = second_gap(&g, &f).unwrap();
            prop_assert!(gap.is_some_and(|x| x > num_rational::BigRational::zero()));
        }
    }
}
