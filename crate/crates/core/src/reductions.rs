//! Constructive reductions: the bicriteria-cut gadget from k-Clique, the
//! largest-bond instance, and path extraction for single-pair `p = 1`
//! solutions.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::instance::{Instance, Solution, Terminals};
use crate::multigraph::{max_flow, Capacities, EdgeId, MultiGraph, VertexId};

/// Does some `s`-`t` cut hold at most `a` protected edges and at most `b`
/// edges in total?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BicriteriaCutInstance {
    pub graph: MultiGraph,
    pub protected: BTreeSet<EdgeId>,
    pub s: VertexId,
    pub t: VertexId,
    pub a: usize,
    pub b: usize,
}

impl BicriteriaCutInstance {
    pub fn new(
        graph: MultiGraph,
        protected: BTreeSet<EdgeId>,
        s: VertexId,
        t: VertexId,
        a: usize,
        b: usize,
    ) -> Result<Self> {
        let n = graph.vertex_count();
        if s >= n || t >= n || s == t {
            return Err(Error::InvalidTerminalPair(s, t));
        }
        if b < a {
            return Err(Error::InvalidParameters(format!("B = {b} is below A = {a}")));
        }
        if let Some(&id) = protected.iter().find(|&&id| !graph.contains_edge(id)) {
            return Err(Error::UnknownEdge(id));
        }
        Ok(BicriteriaCutInstance {
            graph,
            protected,
            s,
            t,
            a,
            b,
        })
    }

    /// The equivalent single-pair verification query: the protected edges are
    /// infeasible for `p = A + 1`, `q = B − A` exactly when a qualifying cut
    /// exists.
    pub fn verification_query(&self) -> Result<(Instance, Solution)> {
        if self.b == self.a {
            return Err(Error::InvalidParameters(
                "B = A gives q = 0, which has no verification query".into(),
            ));
        }
        let inst = Instance::unit(
            self.graph.clone(),
            Terminals::St(self.s, self.t),
            self.a + 1,
            self.b - self.a,
        )?;
        let x = inst.solution(self.protected.iter().copied())?;
        Ok((inst, x))
    }
}

/// Vertex layout of the clique gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GadgetLayout {
    /// One vertex per input edge, in edge order, from 0.
    pub edge_base: VertexId,
    /// One vertex per input vertex.
    pub vertex_base: VertexId,
    pub t: VertexId,
    /// First vertex of the auxiliary clique; this is `s`.
    pub clique_base: VertexId,
    pub clique_size: usize,
    pub degree: usize,
}

/// Builds the bicriteria-cut gadget of a `d`-regular simple graph: `g` has a
/// `k`-clique iff the gadget has an `s`-`t` cut with at most `A = k`
/// protected edges and at most `B = (d + 1)n − k(k − 1)` edges.
///
/// Vertices are numbered edge-vertices first (by edge order), then
/// vertex-vertices, then `t`, then the clique of `n(d + 1)` vertices, whose
/// first vertex is `s` and whose next `d + 1` vertices are joined to every
/// vertex-vertex. Edges are added in the order: edge-vertex to endpoints,
/// protected `t` edges, clique edges, then the bipartite edges.
pub fn clique_to_bicriteria(g: &MultiGraph, k: usize) -> Result<(BicriteriaCutInstance, GadgetLayout)> {
    if k < 2 {
        return Err(Error::InvalidParameters(format!("k must be at least 2 (got {k})")));
    }
    let n = g.vertex_count();
    let m = g.edge_count();
    if n < 2 {
        return Err(Error::InvalidParameters("the graph needs at least two vertices".into()));
    }
    let mut seen = BTreeSet::new();
    for e in g.edges() {
        if e.is_loop() || !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
            return Err(Error::InvalidParameters("the graph must be simple".into()));
        }
    }
    let d = g.degree(0);
    if (0..n).any(|v| g.degree(v) != d) {
        return Err(Error::InvalidParameters("the graph is not regular".into()));
    }
    let layout = GadgetLayout {
        edge_base: 0,
        vertex_base: m,
        t: m + n,
        clique_base: m + n + 1,
        clique_size: n * (d + 1),
        degree: d,
    };
    let total = layout.clique_base + layout.clique_size;
    let mut h = MultiGraph::new(total);
    let mut order: Vec<_> = g.edges().to_vec();
    order.sort_by_key(|e| e.id);
    for (i, e) in order.iter().enumerate() {
        h.push_edge(layout.edge_base + i, layout.vertex_base + e.u)?;
        h.push_edge(layout.edge_base + i, layout.vertex_base + e.v)?;
    }
    let mut protected = BTreeSet::new();
    for v in 0..n {
        protected.insert(h.push_edge(layout.t, layout.vertex_base + v)?);
    }
    for a in 0..layout.clique_size {
        for b in a + 1..layout.clique_size {
            h.push_edge(layout.clique_base + a, layout.clique_base + b)?;
        }
    }
    for j in 1..=d + 1 {
        for v in 0..n {
            h.push_edge(layout.clique_base + j, layout.vertex_base + v)?;
        }
    }
    let b = (d + 1) * n;
    let b = b.checked_sub(k * (k - 1)).ok_or_else(|| {
        Error::InvalidParameters(format!("k = {k} is too large for this graph"))
    })?;
    let inst = BicriteriaCutInstance::new(h, protected, layout.clique_base, layout.t, k, b)?;
    Ok((inst, layout))
}

/// The unit-cost global instance with `p = 1`, `q = k − 1` on `g`: `g` has a
/// bond of at least `k` edges iff the optimum is below `|V| − 1`.
pub fn bond_to_gcp(g: &MultiGraph, k: usize) -> Result<Instance> {
    if k < 2 {
        return Err(Error::InvalidParameters(format!("k must be at least 2 (got {k})")));
    }
    if !g.is_connected() {
        return Err(Error::InvalidParameters("the graph must be connected".into()));
    }
    Instance::unit(g.clone(), Terminals::Global, 1, k - 1)
}

/// Decomposes a flow of value `q + 1` into `q + 1` simple `s`-`t` paths, with
/// capacity `q + 1` on `X` and 1 elsewhere. Edges shared by two or more paths
/// lie in `X`; when `X` is inclusion-wise minimal they are exactly `X`.
///
/// Each path is a list of edge ids from `s` to `t`.
pub fn extract_shared_paths(inst: &Instance, x: &Solution) -> Result<Vec<Vec<EdgeId>>> {
    let Terminals::St(s, t) = *inst.terminals() else {
        return Err(Error::Unsupported("path extraction needs the st variant".into()));
    };
    if inst.p() != 1 {
        return Err(Error::Unsupported(format!(
            "path extraction needs p = 1 (got p = {})",
            inst.p()
        )));
    }
    let g = inst.graph();
    let q = inst.q() as u64;
    let cap = Capacities::from_fn(g, |e| if x.contains(e.id) { q + 1 } else { 1 });
    let flow = max_flow(g, &cap, s, t, Some(q + 1))?;
    if flow.value < q + 1 {
        return Err(Error::InfeasibleSolution);
    }
    // remaining flow units per (edge position, direction); arcs out of each vertex
    let n = g.vertex_count();
    let mut units = flow.edge_flow.clone();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (p, e) in g.edges().iter().enumerate() {
        if units[p] > 0 {
            out[e.u].push(p);
        } else if units[p] < 0 {
            out[e.v].push(p);
        }
    }
    let head = |p: usize| {
        let e = g.edges()[p];
        if flow.edge_flow[p] > 0 {
            e.v
        } else {
            e.u
        }
    };
    let mut paths = Vec::with_capacity(q as usize + 1);
    for _ in 0..=q {
        // walk along remaining flow, cancelling any cycle that closes
        let mut walk: Vec<usize> = Vec::new();
        let mut at = vec![usize::MAX; n];
        let mut x_cur = s;
        at[s] = 0;
        while x_cur != t {
            let p = *out[x_cur]
                .iter()
                .find(|&&p| units[p] != 0)
                .expect("flow conservation");
            let y = head(p);
            walk.push(p);
            if at[y] != usize::MAX {
                let start = at[y];
                for &c in &walk[start..] {
                    units[c] -= units[c].signum();
                }
                for &c in &walk[start..] {
                    let from = if flow.edge_flow[c] > 0 { g.edges()[c].u } else { g.edges()[c].v };
                    if from != y {
                        at[from] = usize::MAX;
                    }
                }
                walk.truncate(start);
                x_cur = y;
                continue;
            }
            at[y] = walk.len();
            x_cur = y;
        }
        for &c in &walk {
            units[c] -= units[c].signum();
        }
        paths.push(walk.iter().map(|&p| g.edges()[p].id).collect());
    }
    Ok(paths)
}

/// Edge ids that occur on at least two of the paths.
pub fn shared_edges(paths: &[Vec<EdgeId>]) -> BTreeSet<EdgeId> {
    let mut once = BTreeSet::new();
    let mut twice = BTreeSet::new();
    for path in paths {
        for &id in path {
            if !once.insert(id) {
                twice.insert(id);
            }
        }
    }
    twice
}
