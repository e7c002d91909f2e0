use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{rat, Rational};
use crate::error::{Error, Result};
use crate::instance::{check_instance_feasible, Combinations, Instance, Solution};
use crate::multigraph::{min_cut_between, EdgeId};

pub const HITTING_SET_MAX_Q: usize = 3;
/// Cap on the number of failure sets examined.
pub const HITTING_SET_MAX_SUBSETS: u64 = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HittingSetResult {
    pub solution: Solution,
    /// Inclusion-minimal failure sets that break connectivity, as edge ids.
    pub breaking_sets: Vec<Vec<EdgeId>>,
    /// Dual value per breaking set.
    pub y: Vec<Rational>,
    /// `f · Σ y` with `f` the largest breaking-set size; at most `q·Opt`.
    pub bound: Rational,
    pub denominator: BigInt,
}

impl HittingSetResult {
    pub fn dual_total(&self) -> Rational {
        self.y.iter().fold(Rational::zero(), |a, v| a + v)
    }
}

fn binomial_prefix(m: usize, q: usize) -> u64 {
    let mut total = 0u64;
    let mut c = 1u64;
    for j in 0..=q.min(m) {
        if j > 0 {
            c = c.saturating_mul((m - j + 1) as u64) / j as u64;
        }
        total = total.saturating_add(c);
    }
    total
}

/// Hitting-set algorithm for constant `q`.
///
/// Every failure set of at most `q` edges whose removal leaves some terminal
/// pair with fewer than `p` edge-disjoint paths must contain a protected
/// edge. The inclusion-minimal such sets are hit by the frequency
/// primal-dual algorithm, which pays at most `q` times its dual.
pub fn hitting_set_constant_q(inst: &Instance) -> Result<HittingSetResult> {
    if inst.q() > HITTING_SET_MAX_Q {
        return Err(Error::Unsupported(format!(
            "hitting-set needs q <= {HITTING_SET_MAX_Q} (got q = {})",
            inst.q()
        )));
    }
    check_instance_feasible(inst)?;
    let g = inst.graph();
    let m = g.edge_count();
    let subsets = binomial_prefix(m, inst.q());
    if subsets > HITTING_SET_MAX_SUBSETS {
        return Err(Error::BudgetExceeded(format!(
            "hitting-set would examine {subsets} failure sets"
        )));
    }
    let p = inst.p() as u64;
    let queries = inst.cut_queries();
    let breaks = |failed: &[usize]| {
        let mut cap = vec![1u64; m];
        failed.iter().for_each(|&e| cap[e] = 0);
        queries.iter().any(|&(s, t)| {
            min_cut_between(g, &cap, &[s], &[t], p).map_or(false, |(v, _)| v < p)
        })
    };
    let mut minimal: Vec<Vec<usize>> = Vec::new();
    for k in 1..=inst.q().min(m) {
        let mut combo = Combinations::new(m, k);
        while let Some(f) = combo.next_combination() {
            let contains_smaller = minimal
                .iter()
                .any(|b| b.iter().all(|e| f.binary_search(e).is_ok()));
            if !contains_smaller && breaks(f) {
                minimal.push(f.to_vec());
            }
        }
    }
    let mut residual: Vec<u64> = (0..m).map(|e| inst.cost_at(e)).collect();
    let mut taken = vec![false; m];
    let mut y = vec![Rational::zero(); minimal.len()];
    for (i, f) in minimal.iter().enumerate() {
        if f.iter().any(|&e| taken[e]) {
            continue;
        }
        let delta = f.iter().map(|&e| residual[e]).min().expect("nonempty");
        for &e in f {
            residual[e] -= delta;
        }
        let pick = f
            .iter()
            .copied()
            .filter(|&e| residual[e] == 0)
            .min_by_key(|&e| g.edges()[e].id)
            .expect("a tight edge");
        taken[pick] = true;
        y[i] = rat(delta);
    }
    let chosen = (0..m).filter(|&e| taken[e]).map(|e| g.edges()[e].id);
    let solution = inst.solution(chosen)?;
    let f_max = minimal.iter().map(Vec::len).max().unwrap_or(0);
    let total = y.iter().fold(Rational::zero(), |a, v| a + v);
    Ok(HittingSetResult {
        solution,
        breaking_sets: minimal
            .iter()
            .map(|f| f.iter().map(|&e| g.edges()[e].id).collect())
            .collect(),
        y,
        bound: rat(f_max as u64) * total,
        denominator: BigInt::from(1),
    })
}
