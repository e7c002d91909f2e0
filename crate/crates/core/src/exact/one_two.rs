use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use super::{cost_map, find_two_cut, keep_real, require, require_parameters, IdSource};
use crate::error::{Error, Result};
use crate::instance::{check_instance_feasible, Instance, Solution};
use crate::multigraph::{bridge_positions, Dsu, EdgeId, MultiGraph, VertexId};

/// Edges selected on a cycle and their total cost.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CycleForest {
    pub edges: BTreeSet<EdgeId>,
    pub cost: u64,
}

/// Minimum-cost edge set connecting every pair on a cycle.
///
/// Some cycle edge is unused by an optimal forest, so each edge is dropped in
/// turn and the pairs are joined along the remaining path. `cost` is indexed
/// by edge position. Pairs with equal endpoints are ignored.
pub fn cycle_steiner_forest(
    cycle: &MultiGraph,
    cost: &[u64],
    pairs: &[(VertexId, VertexId)],
) -> Result<CycleForest> {
    let n = cycle.vertex_count();
    let m = cycle.edge_count();
    if cost.len() != m {
        return Err(Error::InvalidParameters(alloc::format!(
            "{} costs for {m} cycle edges",
            cost.len()
        )));
    }
    for &(a, b) in pairs {
        for v in [a, b] {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
        }
    }
    let pairs: Vec<(VertexId, VertexId)> = pairs.iter().copied().filter(|(a, b)| a != b).collect();
    if pairs.is_empty() {
        return Ok(CycleForest::default());
    }
    let not_cycle = || Error::InvalidParameters("graph is not a cycle".into());
    if m != n || n < 2 || !cycle.is_connected() || (0..n).any(|v| cycle.degree(v) != 2) {
        return Err(not_cycle());
    }
    // walk the cycle: order[i] joined to order[i + 1] by edge position step[i]
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (p, e) in cycle.edges().iter().enumerate() {
        if e.is_loop() {
            return Err(not_cycle());
        }
        incident[e.u].push(p);
        incident[e.v].push(p);
    }
    let mut order = vec![0];
    let mut step = Vec::with_capacity(n);
    let mut prev_edge = usize::MAX;
    let mut x = 0;
    for _ in 0..n {
        let p = *incident[x].iter().find(|&&p| p != prev_edge).expect("degree two");
        step.push(p);
        x = cycle.edges()[p].other(x);
        order.push(x);
        prev_edge = p;
    }
    order.pop();
    let mut at = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        at[v] = i;
    }
    let mut best: Option<(u64, Vec<usize>)> = None;
    for drop in 0..n {
        // linear index of order position i on the path that starts after `drop`
        let lin = |i: usize| (i + n - (drop + 1) % n) % n;
        let mut diff = vec![0i64; n + 1];
        for &(a, b) in &pairs {
            let (x, y) = (lin(at[a]), lin(at[b]));
            let (lo, hi) = (x.min(y), x.max(y));
            diff[lo] += 1;
            diff[hi] -= 1;
        }
        let mut used = Vec::new();
        let mut run = 0;
        let mut total = 0;
        for t in 0..n - 1 {
            run += diff[t];
            if run > 0 {
                let p = step[(drop + 1 + t) % n];
                used.push(p);
                total += cost[p];
            }
        }
        if best.as_ref().map_or(true, |b| total < b.0) {
            best = Some((total, used));
        }
    }
    let (cost, used) = best.expect("n >= 2");
    Ok(CycleForest {
        edges: used.into_iter().map(|p| cycle.edges()[p].id).collect(),
        cost,
    })
}

/// Exact solver for `p = 1`, `q = 2` with explicit terminal pairs (a global
/// instance is treated as having every vertex pair).
///
/// Terminal-separating bridges are protected and contracted, the remaining
/// bridges split the graph into bridgeless pieces. A bridgeless piece with a
/// 2-edge cut `{e1, e2}` is a cycle of 2-edge-connected components of
/// `G - e2`; the cycle is solved as a Steiner forest over the components and
/// each component, closed up by a zero-cost pseudo-edge between its two
/// attachment vertices, is solved recursively.
pub fn solve_12_scp(inst: &Instance) -> Result<Solution> {
    require_parameters(inst, "solve-12-scp", 1, 2)?;
    check_instance_feasible(inst)?;
    let g = inst.graph().clone();
    let first_pseudo = g.next_edge_id();
    let mut ids = IdSource(first_pseudo);
    let chosen = solve_piece(g, cost_map(inst), inst.materialized_pairs(), &mut ids)?;
    inst.solution(keep_real(chosen, first_pseudo))
}

fn solve_piece(
    g: MultiGraph,
    cost: BTreeMap<EdgeId, u64>,
    pairs: Vec<(VertexId, VertexId)>,
    ids: &mut IdSource,
) -> Result<BTreeSet<EdgeId>> {
    let pairs: Vec<(VertexId, VertexId)> = pairs.into_iter().filter(|(a, b)| a != b).collect();
    let mut out = BTreeSet::new();
    if pairs.is_empty() || g.edge_count() == 0 {
        return Ok(out);
    }
    let n = g.vertex_count();
    let bridges = bridge_positions(&g, |_| false);
    if !bridges.is_empty() {
        let mut is_bridge = vec![false; g.edge_count()];
        bridges.iter().for_each(|&p| is_bridge[p] = true);
        // classes of G minus all bridges; a bridge separates a pair iff it
        // lies on the bridge-tree path between their classes
        let mut contract = Vec::new();
        for &b in &bridges {
            let (side, _) = g.components_without(|p| p == b);
            if pairs.iter().any(|&(s, t)| side[s] != side[t]) {
                out.insert(g.edges()[b].id);
                contract.push(b);
            }
        }
        let mut dsu = Dsu::new(n);
        for &b in &contract {
            let e = g.edges()[b];
            dsu.union(e.u, e.v);
        }
        for (p, e) in g.edges().iter().enumerate() {
            if !is_bridge[p] {
                dsu.union(e.u, e.v);
            }
        }
        let (piece_of, pieces) = dsu.labels();
        let mut members: Vec<Vec<VertexId>> = vec![Vec::new(); pieces];
        for v in 0..n {
            members[piece_of[v]].push(v);
        }
        for part in members {
            // drop the bridges, identify the endpoints of the protected ones
            let (h, map) = g.induced(&part);
            let mut merge = Dsu::new(h.vertex_count());
            for &b in &contract {
                let e = g.edges()[b];
                if let (Some(x), Some(y)) = (map[e.u], map[e.v]) {
                    merge.union(x, y);
                }
            }
            let (label, count) = merge.labels();
            let mut k = MultiGraph::new(count);
            for (p, e) in g.edges().iter().enumerate() {
                if is_bridge[p] {
                    continue;
                }
                if let (Some(x), Some(y)) = (map[e.u], map[e.v]) {
                    k.add_edge(e.id, label[x], label[y])?;
                }
            }
            let sub_pairs: Vec<(VertexId, VertexId)> = pairs
                .iter()
                .filter_map(|&(s, t)| Some((label[map[s]?], label[map[t]?])))
                .collect();
            let sub_cost = restrict(&cost, &k);
            out.extend(solve_piece(k, sub_cost, sub_pairs, ids)?);
        }
        return Ok(out);
    }
    let Some((_, e2)) = find_two_cut(&g) else {
        return Ok(out);
    };
    // components of G - e2 - bridges(G - e2), strung along a path
    let cycle_edges: Vec<usize> = {
        let mut c = bridge_positions(&g, |p| p == e2);
        c.push(e2);
        c.sort_unstable();
        c
    };
    let mut on_cycle = vec![false; g.edge_count()];
    cycle_edges.iter().for_each(|&p| on_cycle[p] = true);
    let (comp, count) = g.components_without(|p| on_cycle[p]);
    let mut cycle = MultiGraph::new(count);
    let mut cycle_cost = Vec::with_capacity(cycle_edges.len());
    for &p in &cycle_edges {
        let e = g.edges()[p];
        cycle.add_edge(e.id, comp[e.u], comp[e.v])?;
        cycle_cost.push(cost[&e.id]);
    }
    let projected: Vec<(VertexId, VertexId)> =
        pairs.iter().map(|&(s, t)| (comp[s], comp[t])).collect();
    out.extend(cycle_steiner_forest(&cycle, &cycle_cost, &projected)?.edges);

    for c in 0..count {
        let part: Vec<VertexId> = (0..n).filter(|&v| comp[v] == c).collect();
        // attachment vertices: endpoints of the two cycle edges inside this component
        let attach: Vec<VertexId> = cycle_edges
            .iter()
            .flat_map(|&p| {
                let e = g.edges()[p];
                [e.u, e.v]
            })
            .filter(|&v| comp[v] == c)
            .collect();
        debug_assert_eq!(attach.len(), 2);
        let (mut h, map) = g.induced(&part);
        let local = |v: VertexId| map[v].expect("vertex of this component");
        let (u, v) = (local(attach[0]), local(attach[1]));
        let pseudo = ids.take();
        h.add_edge(pseudo, u, v)?;
        let mut sub_pairs = Vec::new();
        for &(s, t) in &pairs {
            match (map[s], map[t]) {
                (Some(a), Some(b)) => sub_pairs.push((a, b)),
                (Some(a), None) | (None, Some(a)) => {
                    sub_pairs.push((a, u));
                    sub_pairs.push((a, v));
                }
                (None, None) => {}
            }
        }
        let mut sub_cost = restrict(&cost, &h);
        sub_cost.insert(pseudo, 0);
        out.extend(solve_piece(h, sub_cost, sub_pairs, ids)?);
    }
    Ok(out)
}

fn restrict(cost: &BTreeMap<EdgeId, u64>, g: &MultiGraph) -> BTreeMap<EdgeId, u64> {
    g.edge_ids()
        .filter_map(|id| cost.get(&id).map(|&c| (id, c)))
        .collect()
}

/// Exact solver for global `p = 1`, `q = 2`: protect every bridge, and in each
/// class of edges that pairwise form 2-edge cuts leave only one maximum-cost
/// edge (the smallest id among ties) unprotected.
pub fn greedy_12_gcp(inst: &Instance) -> Result<Solution> {
    require_parameters(inst, "greedy-12-gcp", 1, 2)?;
    require(inst.is_global(), || "greedy-12-gcp needs the global variant".into())?;
    check_instance_feasible(inst)?;
    let g = inst.graph();
    let m = g.edge_count();
    let bridges = bridge_positions(g, |_| false);
    let mut is_bridge = vec![false; m];
    bridges.iter().for_each(|&p| is_bridge[p] = true);
    let mut classes = Dsu::new(m);
    for e in 0..m {
        if is_bridge[e] || g.edges()[e].is_loop() {
            continue;
        }
        for f in bridge_positions(g, |p| p == e) {
            if !is_bridge[f] {
                classes.union(e, f);
            }
        }
    }
    let (label, count) = classes.labels();
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
    for p in 0..m {
        if !is_bridge[p] && !g.edges()[p].is_loop() {
            members[label[p]].push(p);
        }
    }
    let mut protected: Vec<EdgeId> = bridges.iter().map(|&p| g.edges()[p].id).collect();
    for class in members.into_iter().filter(|c| c.len() >= 2) {
        let keep = *class
            .iter()
            .max_by(|&&a, &&b| {
                inst.cost_at(a)
                    .cmp(&inst.cost_at(b))
                    .then_with(|| g.edges()[b].id.cmp(&g.edges()[a].id))
            })
            .expect("nonempty class");
        protected.extend(class.into_iter().filter(|&p| p != keep).map(|p| g.edges()[p].id));
    }
    inst.solution(protected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Terminals;

    fn cycle4() -> MultiGraph {
        MultiGraph::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn cycle_forest_examples() {
        let c = cycle4();
        assert_eq!(cycle_steiner_forest(&c, &[1; 4], &[]).unwrap().cost, 0);
        assert_eq!(cycle_steiner_forest(&c, &[1; 4], &[(0, 2)]).unwrap().cost, 2);
        let f = cycle_steiner_forest(&c, &[1, 100, 100, 100], &[(0, 1)]).unwrap();
        assert_eq!(f.cost, 1);
        assert_eq!(f.edges.into_iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn cycle_forest_rejects_non_cycles() {
        let path = MultiGraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(cycle_steiner_forest(&path, &[1, 1], &[(0, 2)]).is_err());
    }

    #[test]
    fn two_vertex_cycle() {
        let c = MultiGraph::from_pairs(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(cycle_steiner_forest(&c, &[4, 3], &[(0, 1)]).unwrap().cost, 3);
    }

    #[test]
    fn four_cycle_opposite_terminals() {
        // sides {0,1} and {2,3} cost 1,2 and 3,4; s = 0, t = 2
        let inst =
            Instance::new(cycle4(), vec![1, 2, 3, 4], Terminals::St(0, 2), 1, 2).unwrap();
        assert_eq!(solve_12_scp(&inst).unwrap().total_cost(), 3);
    }

    #[test]
    fn three_edge_connected_costs_nothing() {
        let k4 =
            MultiGraph::from_pairs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let inst = Instance::unit(k4.clone(), Terminals::St(0, 3), 1, 2).unwrap();
        assert!(solve_12_scp(&inst).unwrap().is_empty());
        let inst = Instance::unit(k4, Terminals::Global, 1, 2).unwrap();
        assert!(greedy_12_gcp(&inst).unwrap().is_empty());
    }

    #[test]
    fn single_bridge() {
        let g = MultiGraph::from_pairs(2, &[(0, 1)]).unwrap();
        let inst = Instance::new(g, vec![9], Terminals::St(0, 1), 1, 2).unwrap();
        assert_eq!(solve_12_scp(&inst).unwrap().total_cost(), 9);
    }

    #[test]
    fn greedy_on_weighted_cycle() {
        let inst = Instance::new(cycle4(), vec![1, 2, 3, 4], Terminals::Global, 1, 2).unwrap();
        let x = greedy_12_gcp(&inst).unwrap();
        assert_eq!(x.total_cost(), 6);
        assert_eq!(x.ids(), vec![0, 1, 2]);
    }

    #[test]
    fn greedy_on_two_triangles() {
        let g = MultiGraph::from_pairs(
            6,
            &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 3)],
        )
        .unwrap();
        let inst = Instance::new(g, vec![1, 1, 1, 5, 1, 1, 1], Terminals::Global, 1, 2).unwrap();
        assert_eq!(greedy_12_gcp(&inst).unwrap().total_cost(), 9);
    }

    #[test]
    fn greedy_tie_keeps_smallest_id_unprotected() {
        let inst = Instance::unit(cycle4(), Terminals::Global, 1, 2).unwrap();
        assert_eq!(greedy_12_gcp(&inst).unwrap().ids(), vec![1, 2, 3]);
    }
}
