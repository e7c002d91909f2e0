//! Polynomial-time exact algorithms for the small-parameter regimes.

mod one_two;
mod p1;
mod two_two;

pub use one_two::{cycle_steiner_forest, greedy_12_gcp, solve_12_scp, CycleForest};
pub use p1::solve_p1;
pub use two_two::solve_22_gcp;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::multigraph::{bridge_positions, EdgeId, MultiGraph};

/// A 2-edge cut `{e, f}` of a bridgeless graph, as edge positions with
/// `e < f`: the first `e` whose removal leaves a bridge, with the first such
/// bridge.
pub(crate) fn find_two_cut(g: &MultiGraph) -> Option<(usize, usize)> {
    (0..g.edge_count()).find_map(|e| {
        if g.edges()[e].is_loop() {
            return None;
        }
        bridge_positions(g, |p| p == e)
            .into_iter()
            .find(|&f| f > e)
            .map(|f| (e, f))
    })
}

/// Costs keyed by edge id, so that pieces of a decomposition can carry
/// zero-cost pseudo-edges with fresh ids.
pub(crate) fn cost_map(inst: &Instance) -> BTreeMap<EdgeId, u64> {
    inst.graph()
        .edges()
        .iter()
        .enumerate()
        .map(|(p, e)| (e.id, inst.cost_at(p)))
        .collect()
}

pub(crate) fn require(cond: bool, what: impl FnOnce() -> alloc::string::String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Unsupported(what()))
    }
}

pub(crate) fn require_parameters(inst: &Instance, algo: &str, p: usize, q: usize) -> Result<()> {
    require(inst.p() == p && inst.q() == q, || {
        format!(
            "{algo} needs p = {p}, q = {q} (got p = {}, q = {})",
            inst.p(),
            inst.q()
        )
    })
}

/// Fresh edge ids for pseudo-edges.
pub(crate) struct IdSource(pub(crate) EdgeId);

impl IdSource {
    pub(crate) fn take(&mut self) -> EdgeId {
        let id = self.0;
        self.0 += 1;
        id
    }
}

pub(crate) fn keep_real(ids: impl IntoIterator<Item = EdgeId>, first_pseudo: EdgeId) -> Vec<EdgeId> {
    ids.into_iter().filter(|&id| id < first_pseudo).collect()
}
