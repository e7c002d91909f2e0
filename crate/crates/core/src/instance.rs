//! Connectivity Preservation instances, solutions and the critical-cut
//! feasibility test.
//!
//! A protected set `X` is feasible iff every terminal-separating cut with at
//! most `p + q - 1` edges contains at least `p` edges of `X`. Such a cut is
//! *critical*; a critical cut with fewer than `p` protected edges is *unsafe*.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::flow::UNCUTTABLE;
use crate::multigraph::{min_cut_between, Capacities, Cut, EdgeId, MultiGraph, VertexId};

/// Largest `p` accepted by the exact unsafe-cut search.
pub const MAX_EXACT_P: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Terminals {
    Steiner(Vec<(VertexId, VertexId)>),
    St(VertexId, VertexId),
    /// Every vertex pair is a terminal pair.
    Global,
}

impl Terminals {
    pub fn keyword(&self) -> &'static str {
        match self {
            Terminals::Steiner(_) => "steiner",
            Terminals::St(..) => "st",
            Terminals::Global => "global",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: MultiGraph,
    cost: Vec<u64>,
    terminals: Terminals,
    p: usize,
    q: usize,
}

impl Instance {
    /// `cost` is indexed by edge position in `graph`.
    pub fn new(
        graph: MultiGraph,
        cost: Vec<u64>,
        terminals: Terminals,
        p: usize,
        q: usize,
    ) -> Result<Self> {
        if p == 0 || q == 0 {
            return Err(Error::InvalidParameters(format!(
                "p and q must be at least 1 (got p = {p}, q = {q})"
            )));
        }
        if cost.len() != graph.edge_count() {
            return Err(Error::InvalidParameters(format!(
                "{} costs for {} edges",
                cost.len(),
                graph.edge_count()
            )));
        }
        let n = graph.vertex_count();
        let pairs: &[(VertexId, VertexId)] = match &terminals {
            Terminals::Steiner(pairs) => pairs,
            Terminals::St(s, t) => &[(*s, *t)],
            Terminals::Global => &[],
        };
        for &(s, t) in pairs {
            if s >= n || t >= n || s == t {
                return Err(Error::InvalidTerminalPair(s, t));
            }
        }
        Ok(Instance {
            graph,
            cost,
            terminals,
            p,
            q,
        })
    }

    /// Unit-cost instance.
    pub fn unit(graph: MultiGraph, terminals: Terminals, p: usize, q: usize) -> Result<Self> {
        let cost = vec![1; graph.edge_count()];
        Instance::new(graph, cost, terminals, p, q)
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn terminals(&self) -> &Terminals {
        &self.terminals
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn is_global(&self) -> bool {
        matches!(self.terminals, Terminals::Global)
    }

    /// Largest size of a critical cut, `p + q - 1`.
    pub fn critical_size(&self) -> usize {
        self.p + self.q - 1
    }

    pub fn costs(&self) -> &[u64] {
        &self.cost
    }

    pub fn cost_at(&self, position: usize) -> u64 {
        self.cost[position]
    }

    pub fn cost(&self, id: EdgeId) -> Option<u64> {
        self.graph.position(id).map(|p| self.cost[p])
    }

    pub fn with_parameters(&self, p: usize, q: usize) -> Result<Self> {
        Instance::new(
            self.graph.clone(),
            self.cost.clone(),
            self.terminals.clone(),
            p,
            q,
        )
    }

    /// Source/sink pairs whose minimum cuts cover every terminal-separating
    /// cut. For the global variant these are `(0, v)` for every `v > 0`.
    pub fn cut_queries(&self) -> Vec<(VertexId, VertexId)> {
        match &self.terminals {
            Terminals::Steiner(pairs) => pairs.clone(),
            Terminals::St(s, t) => vec![(*s, *t)],
            Terminals::Global => (1..self.graph.vertex_count()).map(|v| (0, v)).collect(),
        }
    }

    /// Explicit terminal pairs; the global variant lists all `n(n-1)/2` pairs.
    pub fn materialized_pairs(&self) -> Vec<(VertexId, VertexId)> {
        match &self.terminals {
            Terminals::Global => {
                let n = self.graph.vertex_count();
                (0..n)
                    .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                    .collect()
            }
            _ => self.cut_queries(),
        }
    }

    /// A terminal pair split by the bipartition, if any.
    pub fn separated_pair(&self, in_s: &[bool]) -> Option<(VertexId, VertexId)> {
        match &self.terminals {
            Terminals::Global => {
                let a = in_s.iter().position(|&b| b)?;
                let b = in_s.iter().position(|&b| !b)?;
                Some((a.min(b), a.max(b)))
            }
            _ => self
                .cut_queries()
                .into_iter()
                .find(|&(s, t)| in_s[s] != in_s[t]),
        }
    }

    pub fn solution<I: IntoIterator<Item = EdgeId>>(&self, ids: I) -> Result<Solution> {
        Solution::new(self, ids)
    }
}

/// A protected edge set with its cost.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Solution {
    protected: BTreeSet<EdgeId>,
    total_cost: u64,
}

impl Solution {
    pub fn new<I: IntoIterator<Item = EdgeId>>(inst: &Instance, ids: I) -> Result<Self> {
        let mut protected = BTreeSet::new();
        let mut total_cost = 0;
        for id in ids {
            let c = inst.cost(id).ok_or(Error::UnknownEdge(id))?;
            if protected.insert(id) {
                total_cost += c;
            }
        }
        Ok(Solution {
            protected,
            total_cost,
        })
    }

    pub fn empty() -> Self {
        Solution::default()
    }

    pub fn everything(inst: &Instance) -> Self {
        Solution::new(inst, inst.graph().edge_ids()).expect("ids come from the graph")
    }

    pub fn protected(&self) -> &BTreeSet<EdgeId> {
        &self.protected
    }

    pub fn total_cost(&self) -> u64 {
        self.total_cost
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.protected.contains(&id)
    }

    pub fn len(&self) -> usize {
        self.protected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.protected.is_empty()
    }

    pub fn ids(&self) -> Vec<EdgeId> {
        self.protected.iter().copied().collect()
    }
}

/// A critical cut together with a terminal pair it separates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalCut {
    pub cut: Cut,
    pub separated_pair: (VertexId, VertexId),
    /// `|δ(S) ∩ X|` for the queried protected set.
    pub protected_count: usize,
}

/// The smallest terminal-separating cut, as `(size, cut, pair)`; `None` when
/// there is no terminal pair to separate.
pub fn min_terminal_cut(inst: &Instance) -> Option<(u64, Cut, (VertexId, VertexId))> {
    let g = inst.graph();
    let cap = Capacities::unit(g);
    let mut best: Option<(u64, Cut, (VertexId, VertexId))> = None;
    for (s, t) in inst.cut_queries() {
        let (value, side) =
            min_cut_between(g, cap.as_slice(), &[s], &[t], u64::MAX).expect("s != t");
        if best.as_ref().map_or(true, |b| value < b.0) {
            best = Some((value, Cut::from_membership(g, &cap, &side), (s, t)));
        }
    }
    best
}

/// Whether protecting every edge is feasible: every terminal-separating cut
/// has at least `p` edges.
pub fn is_instance_feasible(inst: &Instance) -> bool {
    check_instance_feasible(inst).is_ok()
}

pub(crate) fn check_instance_feasible(inst: &Instance) -> Result<()> {
    let g = inst.graph();
    let cap = Capacities::unit(g);
    let p = inst.p() as u64;
    for (s, t) in inst.cut_queries() {
        let (value, _) = min_cut_between(g, cap.as_slice(), &[s], &[t], p).expect("s != t");
        if value < p {
            return Err(Error::Infeasible {
                cut_size: value as usize,
                p: inst.p(),
            });
        }
    }
    Ok(())
}

/// An unsafe critical cut for `x`, or `None` if `x` is feasible.
pub fn find_unsafe_cut(inst: &Instance, x: &Solution) -> Result<Option<CriticalCut>> {
    find_cut_with_protected_at_most(inst, x.protected(), inst.p() - 1)
}

pub fn is_feasible(inst: &Instance, x: &Solution) -> Result<bool> {
    Ok(find_unsafe_cut(inst, x)?.is_none())
}

/// A critical cut with at most `max_protected` edges of `x`, searching
/// protected counts in increasing order.
///
/// For each candidate set `X'` of protected edges that the cut may contain,
/// and each orientation of those edges, the remaining protected edges are made
/// uncuttable, `X'` is removed, the endpoints of `X'` are pinned to the two
/// sides together with the terminals, and a unit-capacity minimum cut decides
/// whether a small enough cut exists.
pub fn find_cut_with_protected_at_most(
    inst: &Instance,
    x: &BTreeSet<EdgeId>,
    max_protected: usize,
) -> Result<Option<CriticalCut>> {
    if inst.p() > MAX_EXACT_P || max_protected >= MAX_EXACT_P {
        return Err(Error::Unsupported(format!(
            "exact unsafe-cut search supports p <= {MAX_EXACT_P} (got p = {}); use the brute-force oracle",
            inst.p()
        )));
    }
    let g = inst.graph();
    let mut protected_pos = Vec::with_capacity(x.len());
    for &id in x {
        protected_pos.push(g.position(id).ok_or(Error::UnknownEdge(id))?);
    }
    protected_pos.sort_unstable();
    let mut is_protected = vec![false; g.edge_count()];
    for &p in &protected_pos {
        is_protected[p] = true;
    }
    let max_size = inst.critical_size();
    let top = max_protected.min(protected_pos.len()).min(max_size);
    let queries = inst.cut_queries();
    for j in 0..=top {
        let budget = (max_size - j) as u64;
        let mut combo = Combinations::new(protected_pos.len(), j);
        while let Some(chosen) = combo.next_combination() {
            let mut cap: Vec<u64> = (0..g.edge_count())
                .map(|p| if is_protected[p] { UNCUTTABLE } else { 1 })
                .collect();
            for &c in chosen {
                cap[protected_pos[c]] = 0;
            }
            for orientation in 0u32..(1 << j) {
                let mut a_side = Vec::with_capacity(j + 1);
                let mut b_side = Vec::with_capacity(j + 1);
                for (bit, &c) in chosen.iter().enumerate() {
                    let e = g.edges()[protected_pos[c]];
                    if orientation >> bit & 1 == 0 {
                        a_side.push(e.u);
                        b_side.push(e.v);
                    } else {
                        a_side.push(e.v);
                        b_side.push(e.u);
                    }
                }
                let found = if inst.is_global() && j > 0 {
                    probe(g, &cap, &a_side, &b_side, budget)
                } else {
                    queries.iter().find_map(|&(s, t)| {
                        let mut src = a_side.clone();
                        src.push(s);
                        let mut snk = b_side.clone();
                        snk.push(t);
                        probe(g, &cap, &src, &snk, budget)
                    })
                };
                if let Some(side) = found {
                    let cut = Cut::from_membership(g, &Capacities::unit(g), &side);
                    let protected_count = cut.crossing.iter().filter(|id| x.contains(id)).count();
                    debug_assert_eq!(protected_count, j);
                    debug_assert!(cut.crossing.len() <= max_size);
                    let separated_pair = inst
                        .separated_pair(&side)
                        .expect("probe pins a terminal pair on opposite sides");
                    return Ok(Some(CriticalCut {
                        cut,
                        separated_pair,
                        protected_count,
                    }));
                }
            }
        }
    }
    Ok(None)
}

fn probe(
    g: &MultiGraph,
    cap: &[u64],
    sources: &[VertexId],
    sinks: &[VertexId],
    budget: u64,
) -> Option<Vec<bool>> {
    let (value, side) = min_cut_between(g, cap, sources, sinks, budget + 1)?;
    (value <= budget).then_some(side)
}

/// Lexicographic `k`-subsets of `0..n`.
pub(crate) struct Combinations {
    n: usize,
    idx: Vec<usize>,
    started: bool,
    done: bool,
}

impl Combinations {
    pub(crate) fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            started: false,
            done: k > n,
        }
    }

    pub(crate) fn next_combination(&mut self) -> Option<&[usize]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.idx);
        }
        let k = self.idx.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                return Some(&self.idx);
            }
        }
        self.done = true;
        None
    }
}
