mod common;

use common::random_instance;
use connpres_core::instance::{find_unsafe_cut, is_feasible, is_instance_feasible};
use connpres_core::oracle::brute_feasible;
use connpres_core::{Instance, Solution, Terminals};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_subset(rng: &mut ChaCha8Rng, inst: &Instance, density: f64) -> Solution {
    let ids = inst.graph().edge_ids().filter(|_| rng.gen_bool(density)).collect::<Vec<_>>();
    inst.solution(ids).unwrap()
}

fn variant(i: usize) -> &'static str {
    ["steiner", "st", "global"][i % 3]
}

#[test]
fn agrees_with_failure_set_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut disagreements = 0;
    for i in 0..450 {
        let p = rng.gen_range(1..=3);
        let q = rng.gen_range(1..=3);
        let inst = random_instance(&mut rng, variant(i), p, q, 8, 14);
        let density = rng.gen_range(0.0..1.0);
        let x = random_subset(&mut rng, &inst, density);
        if is_feasible(&inst, &x).unwrap() != brute_feasible(&inst, &x).unwrap() {
            disagreements += 1;
        }
    }
    assert_eq!(disagreements, 0);
}

#[test]
fn protecting_everything_matches_instance_feasibility() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for i in 0..150 {
        let p = rng.gen_range(1..=3);
        let inst = random_instance(&mut rng, variant(i), p, 2, 7, 12);
        let all = Solution::everything(&inst);
        assert_eq!(is_feasible(&inst, &all).unwrap(), is_instance_feasible(&inst));
    }
}

#[test]
fn witnesses_are_valid() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut checked = 0;
    for i in 0..300 {
        let (p, q) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let inst = random_instance(&mut rng, variant(i), p, q, 8, 14);
        let x = random_subset(&mut rng, &inst, 0.4);
        let Some(w) = find_unsafe_cut(&inst, &x).unwrap() else { continue };
        let n = inst.graph().vertex_count();
        let side = w.cut.membership(n);
        let mut crossing = inst.graph().crossing(&side);
        crossing.sort_unstable();
        assert_eq!(crossing, w.cut.crossing);
        assert!(w.cut.crossing.len() <= inst.critical_size());
        let protected = w.cut.crossing.iter().filter(|&&id| x.contains(id)).count();
        assert_eq!(protected, w.protected_count);
        assert!(protected < inst.p());
        let (s, t) = w.separated_pair;
        assert!(w.cut.separates(s, t));
        match inst.terminals() {
            Terminals::St(a, b) => assert_eq!((s, t), (*a, *b)),
            Terminals::Steiner(pairs) => assert!(pairs.contains(&(s, t))),
            Terminals::Global => {}
        }
        checked += 1;
    }
    assert!(checked > 50);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn feasibility_is_monotone(seed in any::<u64>(), v in 0usize..3, p in 1usize..=3, q in 1usize..=3,
                               d1 in 0.0f64..1.0, d2 in 0.0f64..1.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let inst = random_instance(&mut rng, variant(v), p, q, 7, 12);
        let x = random_subset(&mut rng, &inst, d1);
        let extra = random_subset(&mut rng, &inst, d2);
        let bigger = inst.solution(x.ids().into_iter().chain(extra.ids())).unwrap();
        if is_feasible(&inst, &x).unwrap() {
            prop_assert!(is_feasible(&inst, &bigger).unwrap());
        }
    }
}
