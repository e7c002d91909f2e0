//! Brute-force ground truth. Everything here works from the definitions
//! (enumerate failure sets, subsets or bipartitions) so that solvers can be
//! checked against it.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::flow::UNCUTTABLE;
use crate::instance::{Instance, Solution};
use crate::multigraph::{max_flow, Capacities, Cut, EdgeId, MultiGraph, VertexId};
use crate::treemcf::PathPackingInstance;

pub const FEASIBLE_MAX_EDGES: usize = 24;
pub const FEASIBLE_MAX_Q: usize = 4;
pub const OPTIMUM_MAX_EDGES: usize = 16;
pub const TREE_MCF_MAX_PATHS: usize = 20;
pub const BICRITERIA_MAX_VERTICES: usize = 22;
/// Cap on the number of protected-edge subsets tried for larger bicriteria
/// instances.
pub const BICRITERIA_MAX_SUBSETS: u64 = 1 << 20;

/// Bit masks over `bits` positions with exactly `k` bits set, ascending.
fn masks_with_popcount(bits: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit = 1u64 << bits;
    let first = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut next = if k > bits { None } else { Some(first) };
    core::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let n = (((r ^ cur) >> 2) / c) | r;
            (n < limit).then_some(n)
        };
        Some(cur)
    })
}

/// Whether every terminal pair keeps `p` edge-disjoint paths once the edges
/// at the masked positions are removed.
fn survives(inst: &Instance, removed: u64) -> bool {
    let g = inst.graph();
    let cap = Capacities::from_fn(g, |e| {
        let p = g.position(e.id).expect("edge of g");
        (removed >> p & 1 == 0) as u64
    });
    let p = inst.p() as u64;
    inst.cut_queries().into_iter().all(|(s, t)| {
        max_flow(g, &cap, s, t, Some(p))
            .expect("valid pair")
            .value
            >= p
    })
}

/// Enumerates every failure set `F ⊆ E \ X` with `|F| <= q` and checks that
/// every terminal pair stays `p`-edge-connected.
pub fn brute_feasible(inst: &Instance, x: &Solution) -> Result<bool> {
    let g = inst.graph();
    if g.edge_count() > FEASIBLE_MAX_EDGES || inst.q() > FEASIBLE_MAX_Q {
        return Err(Error::BudgetExceeded(format!(
            "brute_feasible needs m <= {FEASIBLE_MAX_EDGES} and q <= {FEASIBLE_MAX_Q} (m = {}, q = {})",
            g.edge_count(),
            inst.q()
        )));
    }
    let unprotected: Vec<usize> = (0..g.edge_count())
        .filter(|&p| !x.contains(g.edges()[p].id))
        .collect();
    for k in 0..=inst.q().min(unprotected.len()) {
        for local in masks_with_popcount(unprotected.len(), k) {
            let mut removed = 0u64;
            for (i, &p) in unprotected.iter().enumerate() {
                if local >> i & 1 == 1 {
                    removed |= 1 << p;
                }
            }
            if !survives(inst, removed) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BruteOptimum {
    Optimal(Solution),
    Infeasible,
}

impl BruteOptimum {
    pub fn cost(&self) -> Option<u64> {
        match self {
            BruteOptimum::Optimal(s) => Some(s.total_cost()),
            BruteOptimum::Infeasible => None,
        }
    }
}

/// Minimal failure sets (as position masks) that break some terminal pair.
fn minimal_breaking_sets(inst: &Instance) -> Vec<u64> {
    let m = inst.graph().edge_count();
    let mut minimal: Vec<u64> = Vec::new();
    for k in 0..=inst.q().min(m) {
        for f in masks_with_popcount(m, k) {
            if minimal.iter().any(|&b| b & f == b) {
                continue;
            }
            if !survives(inst, f) {
                minimal.push(f);
            }
        }
    }
    minimal
}

/// A minimum-cost feasible protected set by exhaustive search over `2^E`.
///
/// `X` is feasible exactly when it meets every failure set that breaks
/// connectivity, so the breaking sets are computed once and every subset is
/// tested against them. Ties go to fewer edges, then to the smaller position
/// mask.
pub fn brute_optimum(inst: &Instance) -> Result<BruteOptimum> {
    let g = inst.graph();
    let m = g.edge_count();
    if m > OPTIMUM_MAX_EDGES {
        return Err(Error::BudgetExceeded(format!(
            "brute_optimum needs m <= {OPTIMUM_MAX_EDGES} (m = {m})"
        )));
    }
    let breaking = minimal_breaking_sets(inst);
    if breaking.contains(&0) {
        return Ok(BruteOptimum::Infeasible);
    }
    let mut best: Option<(u64, u32, u64)> = None;
    for mask in 0u64..(1 << m) {
        let cost: u64 = (0..m)
            .filter(|&p| mask >> p & 1 == 1)
            .map(|p| inst.cost_at(p))
            .sum();
        let key = (cost, mask.count_ones(), mask);
        if best.is_some_and(|b| key >= b) {
            continue;
        }
        if breaking.iter().all(|&f| f & mask != 0) {
            best = Some(key);
        }
    }
    let (_, _, mask) = best.expect("protecting everything meets every nonempty set");
    let ids = (0..m)
        .filter(|&p| mask >> p & 1 == 1)
        .map(|p| g.edges()[p].id);
    Ok(BruteOptimum::Optimal(inst.solution(ids)?))
}

/// Maximum total weight of pairwise edge-disjoint paths, by backtracking over
/// all path subsets.
pub fn brute_tree_mcf(inst: &PathPackingInstance) -> Result<u64> {
    if inst.paths().len() > TREE_MCF_MAX_PATHS {
        return Err(Error::BudgetExceeded(format!(
            "brute_tree_mcf needs at most {TREE_MCF_MAX_PATHS} paths (got {})",
            inst.paths().len()
        )));
    }
    let tree = inst.tree();
    let n = tree.node_count();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, &(a, b)) in tree.edges().iter().enumerate() {
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    // path edge sets by breadth-first search between the endpoints
    let edge_sets: Vec<Vec<usize>> = inst
        .paths()
        .iter()
        .map(|path| {
            let mut via = vec![None; n];
            let mut seen = vec![false; n];
            seen[path.a] = true;
            let mut queue = alloc::collections::VecDeque::from([path.a]);
            while let Some(x) = queue.pop_front() {
                for &(y, i) in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        via[y] = Some((x, i));
                        queue.push_back(y);
                    }
                }
            }
            let mut out = Vec::new();
            let mut cur = path.b;
            while let Some((prev, i)) = via[cur] {
                out.push(i);
                cur = prev;
            }
            out
        })
        .collect();
    fn go(k: usize, sets: &[Vec<usize>], w: &[u64], used: &mut Vec<bool>) -> u64 {
        if k == sets.len() {
            return 0;
        }
        let mut best = go(k + 1, sets, w, used);
        if sets[k].iter().all(|&i| !used[i]) {
            for &i in &sets[k] {
                used[i] = true;
            }
            best = best.max(w[k] + go(k + 1, sets, w, used));
            for &i in &sets[k] {
                used[i] = false;
            }
        }
        best
    }
    let weights: Vec<u64> = inst.paths().iter().map(|p| p.weight).collect();
    let mut used = vec![false; tree.edges().len()];
    Ok(go(0, &edge_sets, &weights, &mut used))
}

/// An `s`-`t` cut with at most `a` protected edges and at most `b` edges in
/// total.
///
/// Up to [`BICRITERIA_MAX_VERTICES`] vertices every bipartition is tried.
/// Larger graphs are decided by trying every set `P` of at most `a` protected
/// edges: with `P` removed and the other protected edges uncuttable, a
/// qualifying cut exists iff `|P|` plus the minimum `s`-`t` cut is at most `b`.
pub fn brute_bicriteria_cut(
    g: &MultiGraph,
    protected: &BTreeSet<EdgeId>,
    s: VertexId,
    t: VertexId,
    a: usize,
    b: usize,
) -> Result<Option<Cut>> {
    let n = g.vertex_count();
    if s >= n || t >= n || s == t {
        return Err(Error::InvalidTerminalPair(s, t));
    }
    let unit = Capacities::unit(g);
    let qualifies = |cut: &Cut| {
        cut.crossing.len() <= b && cut.crossing.iter().filter(|id| protected.contains(id)).count() <= a
    };
    if n <= BICRITERIA_MAX_VERTICES {
        let others: Vec<VertexId> = (0..n).filter(|&v| v != s && v != t).collect();
        let mut in_s = vec![false; n];
        in_s[s] = true;
        for mask in 0u64..(1 << others.len()) {
            for (i, &v) in others.iter().enumerate() {
                in_s[v] = mask >> i & 1 == 1;
            }
            let cut = Cut::from_membership(g, &unit, &in_s);
            if qualifies(&cut) {
                return Ok(Some(cut));
            }
        }
        return Ok(None);
    }
    let prot_pos: Vec<usize> = (0..g.edge_count())
        .filter(|&p| protected.contains(&g.edges()[p].id))
        .collect();
    let k = prot_pos.len();
    let mut subsets = 0u64;
    let mut binom = 1u64;
    for j in 0..=a.min(k) {
        if j > 0 {
            binom = binom * (k - j + 1) as u64 / j as u64;
        }
        subsets = subsets.saturating_add(binom);
    }
    if k > 63 || subsets > BICRITERIA_MAX_SUBSETS {
        return Err(Error::BudgetExceeded(format!(
            "brute_bicriteria_cut: {n} vertices and {subsets} protected subsets"
        )));
    }
    for j in 0..=a.min(k) {
        if j > b {
            break;
        }
        for mask in masks_with_popcount(k, j) {
            let mut cap = vec![1u64; g.edge_count()];
            for (i, &p) in prot_pos.iter().enumerate() {
                cap[p] = if mask >> i & 1 == 1 { 0 } else { UNCUTTABLE };
            }
            let cap = Capacities::from_vec(g, cap)?;
            let budget = (b - j) as u64;
            let flow = max_flow(g, &cap, s, t, Some(budget + 1))?;
            if flow.value <= budget {
                let cut = Cut::from_membership(g, &unit, &flow.cut.membership(n));
                debug_assert!(qualifies(&cut));
                return Ok(Some(cut));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Terminals;

    fn parallel(k: usize) -> MultiGraph {
        MultiGraph::from_pairs(2, &vec![(0, 1); k]).unwrap()
    }

    fn cycle4() -> MultiGraph {
        MultiGraph::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn gosper_enumeration() {
        let all: Vec<u64> = masks_with_popcount(4, 2).collect();
        assert_eq!(all, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(masks_with_popcount(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(masks_with_popcount(2, 3).count(), 0);
        assert_eq!(masks_with_popcount(5, 5).collect::<Vec<_>>(), vec![0b11111]);
    }

    #[test]
    fn three_parallel_edges() {
        let inst = Instance::unit(parallel(3), Terminals::St(0, 1), 2, 1).unwrap();
        assert!(brute_feasible(&inst, &Solution::empty()).unwrap());
        let inst = inst.with_parameters(2, 2).unwrap();
        assert!(!brute_feasible(&inst, &Solution::empty()).unwrap());
    }

    #[test]
    fn full_protection_matches_instance_feasibility() {
        let inst = Instance::unit(parallel(2), Terminals::St(0, 1), 3, 2).unwrap();
        assert!(!brute_feasible(&inst, &Solution::everything(&inst)).unwrap());
        let inst = inst.with_parameters(2, 2).unwrap();
        assert!(brute_feasible(&inst, &Solution::everything(&inst)).unwrap());
    }

    #[test]
    fn cycle_optimum_is_three() {
        let inst = Instance::unit(cycle4(), Terminals::Global, 1, 2).unwrap();
        let opt = brute_optimum(&inst).unwrap();
        assert_eq!(opt.cost(), Some(3));
        // two protected edges always leave a 2-cut of unprotected edges
        for a in 0..4 {
            for b in a + 1..4 {
                let x = inst.solution([a, b]).unwrap();
                assert!(!brute_feasible(&inst, &x).unwrap());
            }
        }
    }

    #[test]
    fn no_critical_cuts_costs_nothing() {
        let inst = Instance::unit(parallel(4), Terminals::St(0, 1), 2, 2).unwrap();
        assert_eq!(
            brute_optimum(&inst).unwrap(),
            BruteOptimum::Optimal(Solution::empty())
        );
    }

    #[test]
    fn infeasible_instance_is_reported() {
        let inst = Instance::unit(parallel(2), Terminals::St(0, 1), 3, 1).unwrap();
        assert_eq!(brute_optimum(&inst).unwrap(), BruteOptimum::Infeasible);
    }

    #[test]
    fn budgets_are_enforced() {
        let g = MultiGraph::from_pairs(2, &vec![(0, 1); 17]).unwrap();
        let inst = Instance::unit(g, Terminals::St(0, 1), 1, 1).unwrap();
        assert!(matches!(brute_optimum(&inst), Err(Error::BudgetExceeded(_))));
        let inst = inst.with_parameters(1, 5).unwrap();
        assert!(matches!(
            brute_feasible(&inst, &Solution::empty()),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn bicriteria_trivial_cases() {
        let g = cycle4();
        let prot: BTreeSet<EdgeId> = [0, 1].into_iter().collect();
        assert!(brute_bicriteria_cut(&g, &prot, 0, 2, 2, 4).unwrap().is_some());
        assert!(brute_bicriteria_cut(&g, &prot, 0, 2, 0, 0).unwrap().is_none());
        // both routes agree on the one cut avoiding protected edges
        let cut = brute_bicriteria_cut(&g, &prot, 0, 2, 0, 2).unwrap();
        assert!(cut.is_none());
        let cut = brute_bicriteria_cut(&g, &prot, 1, 3, 1, 2).unwrap().unwrap();
        assert!(cut.separates(1, 3));
    }
}
