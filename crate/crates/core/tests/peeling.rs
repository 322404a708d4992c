mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sc_relay::base_matrix::{lift, mn_base, mn_roles, regular_base, regular_roles, SparseBinary};
use sc_relay::mc::Peeler;

fn small_codes() -> Vec<(&'static str, SparseBinary)> {
    let reg = lift(&regular_base(3, 6).unwrap(), &regular_roles(2), 10, 7).unwrap();
    let mn = lift(&mn_base(4, 2, 2).unwrap(), &mn_roles(2), 6, 3).unwrap();
    vec![
        ("(3,6) q=10", reg.parity_check),
        ("MN(4,2,2) q=6", mn.parity_check),
    ]
}

#[test]
fn peeling_matches_stopping_set_oracle_exhaustively() {
    for (name, h) in small_codes() {
        let n = h.num_cols();
        assert!(n <= 20);
        let checks = common::check_masks(&h);
        let oracle = common::max_stopping_sets(n, &checks);
        let peeler = Peeler::new(&h);
        for pattern in 0..1u32 << n {
            let got = peeler.peel(&common::from_mask(pattern, n));
            assert_eq!(
                common::to_mask(&got.erased),
                oracle[pattern as usize],
                "{name}: pattern {pattern:#x}"
            );
        }
    }
}

fn random_code(rng: &mut ChaCha8Rng) -> SparseBinary {
    let n = rng.gen_range(4..40);
    let m = rng.gen_range(2..30);
    let rows = (0..m)
        .map(|_| {
            let w = rng.gen_range(1..=n.min(6));
            let mut all: Vec<u32> = (0..n as u32).collect();
            all.shuffle(rng);
            all.truncate(w);
            all
        })
        .collect();
    SparseBinary::from_rows(n, rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn peeling_is_confluent(seed in any::<u64>(), p in 0.05f64..0.9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_code(&mut rng);
        let erased: Vec<bool> = (0..h.num_cols()).map(|_| rng.gen_bool(p)).collect();
        let peeler = Peeler::new(&h);
        let rounds = peeler.peel(&erased).erased;
        let mut order: Vec<u32> = (0..h.num_rows() as u32).collect();
        for _ in 0..3 {
            order.shuffle(&mut rng);
            prop_assert_eq!(&peeler.peel_in_order(&erased, &order), &rounds);
        }
    }

    #[test]
    fn more_erasures_never_recover_more(seed in any::<u64>(), p in 0.05f64..0.8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_code(&mut rng);
        let fewer: Vec<bool> = (0..h.num_cols()).map(|_| rng.gen_bool(p)).collect();
        let more: Vec<bool> = fewer.iter().map(|&e| e || rng.gen_bool(0.2)).collect();
        let peeler = Peeler::new(&h);
        let a = peeler.peel(&fewer).erased;
        let b = peeler.peel(&more).erased;
        for (x, y) in a.iter().zip(&b) {
            prop_assert!(!x || *y);
        }
    }

    #[test]
    fn result_is_a_stopping_set(seed in any::<u64>(), p in 0.05f64..0.9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_code(&mut rng);
        let erased: Vec<bool> = (0..h.num_cols()).map(|_| rng.gen_bool(p)).collect();
        let left = Peeler::new(&h).peel(&erased).erased;
        for row in h.rows() {
            prop_assert_ne!(row.iter().filter(|&&v| left[v as usize]).count(), 1);
        }
        for (l, e) in left.iter().zip(&erased) {
            prop_assert!(!l || *e);
        }
    }
}
