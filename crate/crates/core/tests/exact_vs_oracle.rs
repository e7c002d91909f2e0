mod common;

use common::random_instance;
use connpres_core::exact::{greedy_12_gcp, solve_12_scp, solve_22_gcp, solve_p1};
use connpres_core::instance::{is_feasible, is_instance_feasible};
use connpres_core::oracle::{brute_feasible, brute_optimum};
use connpres_core::{Instance, Result, Solution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn compare(
    seed: u64,
    count: usize,
    variant: &str,
    p: usize,
    q: usize,
    solve: fn(&Instance) -> Result<Solution>,
) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < count {
        let inst = random_instance(&mut rng, variant, p, q, 8, 14);
        if !is_instance_feasible(&inst) {
            continue;
        }
        let opt = brute_optimum(&inst).unwrap().cost().unwrap();
        let x = solve(&inst).unwrap();
        assert_eq!(x.total_cost(), opt, "seed {seed} instance {done}: {inst:?}");
        assert!(is_feasible(&inst, &x).unwrap());
        assert!(brute_feasible(&inst, &x).unwrap());
        done += 1;
    }
}

#[test]
fn algorithm_1_is_exact() {
    for p in 1..=3 {
        compare(100 + p as u64, 60, "steiner", p, 1, solve_p1);
        compare(200 + p as u64, 40, "global", p, 1, solve_p1);
    }
}

#[test]
fn one_two_scp_is_exact() {
    compare(300, 120, "steiner", 1, 2, solve_12_scp);
    compare(301, 60, "st", 1, 2, solve_12_scp);
    compare(302, 40, "global", 1, 2, solve_12_scp);
}

#[test]
fn greedy_12_gcp_is_exact() {
    compare(400, 120, "global", 1, 2, greedy_12_gcp);
}

#[test]
fn solve_22_gcp_is_exact() {
    compare(500, 120, "global", 2, 2, solve_22_gcp);
}
