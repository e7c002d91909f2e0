use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::{cost_map, find_two_cut, keep_real, require, require_parameters, IdSource};
use crate::error::Result;
use crate::instance::{check_instance_feasible, Instance, Solution};
use crate::multigraph::{is_k_edge_connected, EdgeId, MultiGraph};
use crate::treemcf::{build_tree_representation, solve_tree_mcf, PathPackingInstance, TreePath};

/// Exact solver for global `p = 2`, `q = 2`.
///
/// Both edges of a 2-edge cut `{e1, e2}` must be protected; the two sides,
/// each closed up by a zero-cost pseudo-edge between its endpoints of `e1`
/// and `e2`, are then independent. A 3-edge-connected piece with edge
/// connectivity 3 needs every 3-edge cut to keep at most one unprotected
/// edge: mapping each edge to its path in the tree representation of the
/// minimum cuts, the largest-weight unprotected set is a maximum-weight
/// packing of edge-disjoint tree paths.
pub fn solve_22_gcp(inst: &Instance) -> Result<Solution> {
    require_parameters(inst, "solve-22-gcp", 2, 2)?;
    require(inst.is_global(), || "solve-22-gcp needs the global variant".into())?;
    check_instance_feasible(inst)?;
    let g = inst.graph().clone();
    let first_pseudo = g.next_edge_id();
    let mut ids = IdSource(first_pseudo);
    let chosen = solve_piece(g, &cost_map(inst), &mut ids)?;
    inst.solution(keep_real(chosen, first_pseudo))
}

fn solve_piece(
    g: MultiGraph,
    cost: &BTreeMap<EdgeId, u64>,
    ids: &mut IdSource,
) -> Result<BTreeSet<EdgeId>> {
    let mut out = BTreeSet::new();
    if g.vertex_count() < 2 {
        return Ok(out);
    }
    if let Some((p1, p2)) = find_two_cut(&g) {
        let (e1, e2) = (g.edges()[p1], g.edges()[p2]);
        out.insert(e1.id);
        out.insert(e2.id);
        let (side, count) = g.components_without(|p| p == p1 || p == p2);
        debug_assert_eq!(count, 2);
        // orient both edges so that `.0` lies in the component of vertex 0
        let ends = |e: crate::multigraph::Edge| {
            if side[e.u] == side[0] {
                (e.u, e.v)
            } else {
                (e.v, e.u)
            }
        };
        let (a1, b1) = ends(e1);
        let (a2, b2) = ends(e2);
        for (c, x, y) in [(side[0], a1, a2), (1 - side[0], b1, b2)] {
            let part: Vec<usize> = (0..g.vertex_count()).filter(|&v| side[v] == c).collect();
            let (mut h, map) = g.induced(&part);
            h.add_edge(ids.take(), map[x].expect("in part"), map[y].expect("in part"))?;
            out.extend(solve_piece(h, cost, ids)?);
        }
        return Ok(out);
    }
    if is_k_edge_connected(&g, 4) {
        return Ok(out);
    }
    let rep = build_tree_representation(&g, 3)?;
    let mut paths = Vec::new();
    for (p, e) in g.edges().iter().enumerate() {
        if rep.project_edge(e).is_empty() {
            continue;
        }
        paths.push(TreePath {
            id: p,
            a: rep.phi(e.u),
            b: rep.phi(e.v),
            weight: cost.get(&e.id).copied().unwrap_or(0),
        });
    }
    let packing = PathPackingInstance::new(rep.tree().clone(), paths.clone())?;
    let unprotected: BTreeSet<usize> = solve_tree_mcf(&packing).selected.into_iter().collect();
    out.extend(
        paths
            .iter()
            .filter(|path| !unprotected.contains(&path.id))
            .map(|path| g.edges()[path.id].id),
    );
    Ok(out)
}
