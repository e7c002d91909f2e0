use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use super::require;
use crate::error::Result;
use crate::instance::{check_instance_feasible, Instance, Solution};
use crate::multigraph::{min_cut_between, Cut, Capacities, EdgeId};

/// Exact solver for `q = 1`.
///
/// Protected edges get capacity `p + 1` and the others `p`, so a
/// terminal-separating cut scores below `p(p + 1)` exactly when it has `p`
/// edges and is not fully protected. Each such cut is protected whole until
/// none remains; the result is the union of all terminal-separating cuts of
/// size `p`, the unique inclusion-wise minimal solution.
pub fn solve_p1(inst: &Instance) -> Result<Solution> {
    require(inst.q() == 1, || {
        format!("algorithm-1 needs q = 1 (got q = {})", inst.q())
    })?;
    check_instance_feasible(inst)?;
    let g = inst.graph();
    let p = inst.p() as u64;
    let threshold = p * (p + 1);
    let queries = inst.cut_queries();
    let mut protected: BTreeSet<EdgeId> = BTreeSet::new();
    loop {
        let cap: Vec<u64> = g
            .edges()
            .iter()
            .map(|e| if protected.contains(&e.id) { p + 1 } else { p })
            .collect();
        let found = queries.iter().find_map(|&(s, t)| {
            let (value, side) = min_cut_between(g, &cap, &[s], &[t], threshold).expect("s != t");
            (value < threshold).then_some(side)
        });
        let Some(side) = found else { break };
        let cut = Cut::from_membership(g, &Capacities::unit(g), &side);
        debug_assert_eq!(cut.crossing.len() as u64, p);
        protected.extend(cut.crossing);
    }
    inst.solution(protected)
}
