mod common;

use ergodic_opt::optimize::{beta, beta_oracle};
use ergodic_opt::recode::{admissible_blocks, higher_block_recode, periodic_block_beta, BlockTable};
use ergodic_opt::{build_graph, Graph};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random vertex shift on up to three symbols with at least one cycle.
fn alphabet(rng: &mut impl Rng) -> Graph {
    loop {
        let n = rng.random_range(1..=3);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in 0..n {
                if rng.random_bool(0.6) {
                    edges.push((format!("{u}{v}"), u, v));
                }
            }
        }
        if let Ok(g) = build_graph(n, edges) {
            return g;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn recoding_preserves_beta(seed in any::<u64>(), k in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = alphabet(&mut rng);
        let states = admissible_blocks(&a, k - 1).len();
        prop_assume!(states <= 12);
        let table: BlockTable = admissible_blocks(&a, k)
            .into_iter()
            .map(|b| (b, common::small_rational(&mut rng)))
            .collect();
        let (g, f) = higher_block_recode(&a, &table, k).unwrap();
        let periodic = periodic_block_beta(&a, &table, k, states).unwrap();
        prop_assert_eq!(beta(&g, &f).unwrap(), periodic.clone());
        prop_assert_eq!(beta_oracle(&g, &f).unwrap().beta, periodic);
    }
}
