#![allow(dead_code)]

use connpres_core::{Instance, MultiGraph, Terminals};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// A connected multigraph: a random spanning tree plus extra random edges
/// (parallel edges allowed, no self-loops).
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, m: usize) -> MultiGraph {
    let mut pairs = Vec::with_capacity(m);
    for v in 1..n {
        pairs.push((rng.gen_range(0..v), v));
    }
    while pairs.len() < m {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            pairs.push((a, b));
        }
    }
    pairs.shuffle(rng);
    MultiGraph::from_pairs(n, &pairs).unwrap()
}

pub fn random_costs(rng: &mut ChaCha8Rng, m: usize) -> Vec<u64> {
    (0..m).map(|_| rng.gen_range(1..=10)).collect()
}

pub fn random_pairs(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            out.push((a, b));
        }
    }
    out
}

/// Random instance of the given variant keyword.
pub fn random_instance(
    rng: &mut ChaCha8Rng,
    variant: &str,
    p: usize,
    q: usize,
    max_n: usize,
    max_m: usize,
) -> Instance {
    let n = rng.gen_range(2..=max_n);
    let lo = (n - 1).max(1);
    let m = rng.gen_range(lo..=max_m.max(lo));
    let g = random_graph(rng, n, m);
    let cost = random_costs(rng, m);
    let terminals = match variant {
        "global" => Terminals::Global,
        "st" => {
            let pr = random_pairs(rng, n, 1)[0];
            Terminals::St(pr.0, pr.1)
        }
        _ => {
            let k = rng.gen_range(1..=3);
            Terminals::Steiner(random_pairs(rng, n, k))
        }
    };
    Instance::new(g, cost, terminals, p, q).unwrap()
}
