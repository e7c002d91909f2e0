//! Undirected multigraphs with stable edge ids, integer capacities, max-flow
//! min-cut, bridges and contraction.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::flow::{FlowNet, ANCHOR_CAP};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    /// The endpoint opposite to `x`.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// An undirected multigraph on vertices `0..n`.
///
/// Parallel edges and self-loops are allowed. Self-loops never cross a cut.
/// Edges are kept in insertion order; the position of an edge in
/// [`MultiGraph::edges`] is what [`Capacities`] and per-edge tables index by.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<Edge>,
    position: BTreeMap<EdgeId, usize>,
}

impl MultiGraph {
    pub fn new(n: usize) -> Self {
        MultiGraph {
            n,
            edges: Vec::new(),
            position: BTreeMap::new(),
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (EdgeId, VertexId, VertexId)>,
    {
        let mut g = MultiGraph::new(n);
        for (id, u, v) in edges {
            g.add_edge(id, u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph whose edge ids are `0..pairs.len()` in order.
    pub fn from_pairs(n: usize, pairs: &[(VertexId, VertexId)]) -> Result<Self> {
        MultiGraph::from_edges(n, pairs.iter().enumerate().map(|(i, &(u, v))| (i, u, v)))
    }

    pub fn add_edge(&mut self, id: EdgeId, u: VertexId, v: VertexId) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: x,
                    n: self.n,
                });
            }
        }
        if self.position.contains_key(&id) {
            return Err(Error::DuplicateEdge(id));
        }
        self.position.insert(id, self.edges.len());
        self.edges.push(Edge { id, u, v });
        Ok(())
    }

    /// Adds an edge with the next unused id and returns that id.
    pub fn push_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        let id = self.next_edge_id();
        self.add_edge(id, u, v)?;
        Ok(id)
    }

    /// One more than the largest edge id in use (0 for an edgeless graph).
    pub fn next_edge_id(&self) -> EdgeId {
        self.position.keys().next_back().map_or(0, |&id| id + 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().map(|e| e.id)
    }

    pub fn edge(&self, id: EdgeId) -> Option<&Edge> {
        self.position.get(&id).map(|&p| &self.edges[p])
    }

    pub fn position(&self, id: EdgeId) -> Option<usize> {
        self.position.get(&id).copied()
    }

    pub fn contains_edge(&self, id: EdgeId) -> bool {
        self.position.contains_key(&id)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges
            .iter()
            .filter(|e| !e.is_loop())
            .map(|e| (e.u == v) as usize + (e.v == v) as usize)
            .sum()
    }

    /// Ids of the edges with exactly one endpoint on the `true` side.
    pub fn crossing(&self, in_s: &[bool]) -> Vec<EdgeId> {
        self.edges
            .iter()
            .filter(|e| in_s[e.u] != in_s[e.v])
            .map(|e| e.id)
            .collect()
    }

    /// Connected components ignoring the edges at positions for which `skip`
    /// returns true. Components are numbered in order of their smallest vertex.
    pub fn components_without<F>(&self, skip: F) -> (Vec<usize>, usize)
    where
        F: Fn(usize) -> bool,
    {
        let mut dsu = Dsu::new(self.n);
        for (p, e) in self.edges.iter().enumerate() {
            if !skip(p) {
                dsu.union(e.u, e.v);
            }
        }
        dsu.labels()
    }

    pub fn components(&self) -> (Vec<usize>, usize) {
        self.components_without(|_| false)
    }

    pub fn is_connected(&self) -> bool {
        self.components().1 <= 1
    }

    /// The graph induced on `vertices` (in the given order, which becomes the
    /// new numbering), keeping edge ids. Returns the graph and the old-to-new
    /// vertex map.
    pub fn induced(&self, vertices: &[VertexId]) -> (MultiGraph, Vec<Option<VertexId>>) {
        let mut map = vec![None; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            map[v] = Some(i);
        }
        let mut h = MultiGraph::new(vertices.len());
        for e in &self.edges {
            if let (Some(a), Some(b)) = (map[e.u], map[e.v]) {
                h.add_edge(e.id, a, b).expect("ids are unique in the parent graph");
            }
        }
        (h, map)
    }
}

/// Nonnegative integer capacities indexed by edge position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Capacities(Vec<u64>);

impl Capacities {
    pub fn unit(g: &MultiGraph) -> Self {
        Capacities(vec![1; g.edge_count()])
    }

    pub fn from_fn<F: Fn(&Edge) -> u64>(g: &MultiGraph, f: F) -> Self {
        Capacities(g.edges().iter().map(f).collect())
    }

    pub fn from_vec(g: &MultiGraph, caps: Vec<u64>) -> Result<Self> {
        if caps.len() != g.edge_count() {
            return Err(Error::InvalidParameters(alloc::format!(
                "{} capacities for {} edges",
                caps.len(),
                g.edge_count()
            )));
        }
        Ok(Capacities(caps))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn at(&self, position: usize) -> u64 {
        self.0[position]
    }
}

/// A vertex bipartition `(S, V \ S)` with its crossing edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cut {
    /// Sorted vertices of `S`.
    pub side_s: Vec<VertexId>,
    /// Sorted ids of the edges of `δ(S)`.
    pub crossing: Vec<EdgeId>,
    pub capacity: u64,
}

impl Cut {
    pub fn from_membership(g: &MultiGraph, cap: &Capacities, in_s: &[bool]) -> Cut {
        let side_s = (0..g.vertex_count()).filter(|&v| in_s[v]).collect();
        let mut crossing = Vec::new();
        let mut capacity = 0u64;
        for (p, e) in g.edges().iter().enumerate() {
            if in_s[e.u] != in_s[e.v] {
                crossing.push(e.id);
                capacity += cap.at(p);
            }
        }
        crossing.sort_unstable();
        Cut {
            side_s,
            crossing,
            capacity,
        }
    }

    pub fn from_side(g: &MultiGraph, cap: &Capacities, side: &[VertexId]) -> Cut {
        let mut in_s = vec![false; g.vertex_count()];
        for &v in side {
            in_s[v] = true;
        }
        Cut::from_membership(g, cap, &in_s)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.side_s.binary_search(&v).is_ok()
    }

    pub fn membership(&self, n: usize) -> Vec<bool> {
        let mut in_s = vec![false; n];
        for &v in &self.side_s {
            in_s[v] = true;
        }
        in_s
    }

    pub fn separates(&self, a: VertexId, b: VertexId) -> bool {
        self.contains(a) != self.contains(b)
    }

    /// The side of the bipartition that does not contain vertex 0.
    pub fn canonical_side(&self, n: usize) -> Vec<VertexId> {
        if self.contains(0) {
            (0..n).filter(|&v| !self.contains(v)).collect()
        } else {
            self.side_s.clone()
        }
    }
}

/// Result of a maximum-flow computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    pub value: u64,
    /// Net flow per edge position, positive when it runs from `u` to `v`.
    pub edge_flow: Vec<i64>,
    /// The residual-reachable side of `s`; a minimum cut when the flow is maximum.
    pub cut: Cut,
}

fn check_vertex(g: &MultiGraph, v: VertexId) -> Result<()> {
    if v >= g.vertex_count() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: g.vertex_count(),
        });
    }
    Ok(())
}

/// Maximum `s`-`t` flow, stopping early once the value reaches `limit`.
pub fn max_flow(
    g: &MultiGraph,
    cap: &Capacities,
    s: VertexId,
    t: VertexId,
    limit: Option<u64>,
) -> Result<Flow> {
    check_vertex(g, s)?;
    check_vertex(g, t)?;
    if s == t {
        return Err(Error::InvalidParameters(alloc::format!(
            "source and sink are both {s}"
        )));
    }
    let mut net = FlowNet::new(g.vertex_count());
    let mut arcs = vec![usize::MAX; g.edge_count()];
    for (p, e) in g.edges().iter().enumerate() {
        if !e.is_loop() && cap.at(p) > 0 {
            arcs[p] = net.add_undirected(e.u, e.v, cap.at(p));
        }
    }
    let value = net.max_flow(s, t, limit.unwrap_or(u64::MAX));
    let edge_flow = arcs
        .iter()
        .map(|&a| {
            if a == usize::MAX {
                0
            } else {
                (net.residual(a ^ 1) as i64 - net.residual(a) as i64) / 2
            }
        })
        .collect();
    let in_s = net.reachable(s);
    Ok(Flow {
        value,
        edge_flow,
        cut: Cut::from_membership(g, cap, &in_s),
    })
}

/// Minimum `s`-`t` cut value and a minimum cut whose side contains `s`.
///
/// Disconnected `s` and `t` give value 0 with the component of `s`.
pub fn max_flow_min_cut(
    g: &MultiGraph,
    cap: &Capacities,
    s: VertexId,
    t: VertexId,
) -> Result<(u64, Cut)> {
    let flow = max_flow(g, cap, s, t, None)?;
    Ok((flow.value, flow.cut))
}

/// Minimum cut separating every vertex of `sources` from every vertex of
/// `sinks`, as if each set were merged into a single vertex.
///
/// Returns `None` when the sets intersect. Flow stops at `limit`; the returned
/// membership is a minimum cut only when the value is below `limit`.
pub(crate) fn min_cut_between(
    g: &MultiGraph,
    cap: &[u64],
    sources: &[VertexId],
    sinks: &[VertexId],
    limit: u64,
) -> Option<(u64, Vec<bool>)> {
    let n = g.vertex_count();
    let mut role = vec![0u8; n];
    for &v in sources {
        role[v] = 1;
    }
    for &v in sinks {
        if role[v] == 1 {
            return None;
        }
        role[v] = 2;
    }
    let mut net = FlowNet::new(n + 2);
    let (ss, tt) = (n, n + 1);
    for &v in sources {
        net.add_directed(ss, v, ANCHOR_CAP);
    }
    for &v in sinks {
        net.add_directed(v, tt, ANCHOR_CAP);
    }
    for (p, e) in g.edges().iter().enumerate() {
        if !e.is_loop() && cap[p] > 0 {
            net.add_undirected(e.u, e.v, cap[p]);
        }
    }
    let value = net.max_flow(ss, tt, limit);
    let mut side = net.reachable(ss);
    side.truncate(n);
    debug_assert_eq!(net.node_count(), n + 2);
    Some((value, side))
}

/// Contracts `edges`, identifying their endpoints.
///
/// Surviving edges keep their ids and their order; edges that end up inside
/// one merged vertex become self-loops. New vertex ids follow the order of the
/// smallest old vertex in each class.
pub fn contract(g: &MultiGraph, edges: &[EdgeId]) -> Result<(MultiGraph, Vec<VertexId>)> {
    let mut dsu = Dsu::new(g.vertex_count());
    for &id in edges {
        let e = g.edge(id).ok_or(Error::UnknownEdge(id))?;
        dsu.union(e.u, e.v);
    }
    let (map, count) = dsu.labels();
    let mut h = MultiGraph::new(count);
    for e in g.edges() {
        h.add_edge(e.id, map[e.u], map[e.v])?;
    }
    Ok((h, map))
}

/// Bridges and 2-edge-connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoEdgeDecomposition {
    /// Sorted bridge ids.
    pub bridges: Vec<EdgeId>,
    /// Component label per vertex, numbered by smallest member.
    pub component: Vec<usize>,
    pub component_count: usize,
}

impl TwoEdgeDecomposition {
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut out = vec![Vec::new(); self.component_count];
        for (v, &c) in self.component.iter().enumerate() {
            out[c].push(v);
        }
        out
    }

    pub fn is_bridge(&self, id: EdgeId) -> bool {
        self.bridges.binary_search(&id).is_ok()
    }
}

/// Finds all bridges (edge positions) ignoring edges for which `skip` is true.
pub(crate) fn bridge_positions<F>(g: &MultiGraph, skip: F) -> Vec<usize>
where
    F: Fn(usize) -> bool,
{
    let n = g.vertex_count();
    let mut incident: Vec<Vec<(usize, VertexId)>> = vec![Vec::new(); n];
    for (p, e) in g.edges().iter().enumerate() {
        if e.is_loop() || skip(p) {
            continue;
        }
        incident[e.u].push((p, e.v));
        incident[e.v].push((p, e.u));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut bridges = Vec::new();
    let mut timer = 0;
    // (vertex, parent edge position, next incident index)
    let mut stack: Vec<(VertexId, usize, usize)> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, usize::MAX, 0));
        while let Some(top) = stack.last_mut() {
            let (x, parent_edge, idx) = *top;
            if idx < incident[x].len() {
                top.2 += 1;
                let (p, y) = incident[x][idx];
                if p == parent_edge {
                    continue;
                }
                if disc[y] == usize::MAX {
                    disc[y] = timer;
                    low[y] = timer;
                    timer += 1;
                    stack.push((y, p, 0));
                } else {
                    low[x] = low[x].min(disc[y]);
                }
            } else {
                stack.pop();
                if let Some(&(px, _, _)) = stack.last() {
                    low[px] = low[px].min(low[x]);
                    if low[x] > disc[px] {
                        bridges.push(parent_edge);
                    }
                }
            }
        }
    }
    bridges.sort_unstable();
    bridges
}

pub fn bridges_and_2ecc(g: &MultiGraph) -> TwoEdgeDecomposition {
    let positions = bridge_positions(g, |_| false);
    let mut is_bridge = vec![false; g.edge_count()];
    for &p in &positions {
        is_bridge[p] = true;
    }
    let (component, component_count) = g.components_without(|p| is_bridge[p]);
    let mut bridges: Vec<EdgeId> = positions.iter().map(|&p| g.edges()[p].id).collect();
    bridges.sort_unstable();
    TwoEdgeDecomposition {
        bridges,
        component,
        component_count,
    }
}

/// True iff every cut has at least `k` edges. A single vertex is trivially
/// `k`-edge-connected.
pub fn is_k_edge_connected(g: &MultiGraph, k: u64) -> bool {
    global_min_cut_at_least(g, Capacities::unit(g).as_slice(), k)
}

/// Checks that every cut of `g` has capacity at least `k`.
pub(crate) fn global_min_cut_at_least(g: &MultiGraph, cap: &[u64], k: u64) -> bool {
    (1..g.vertex_count()).all(|v| {
        min_cut_between(g, cap, &[0], &[v], k).map_or(true, |(value, _)| value >= k)
    })
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }

    /// Dense labels numbered by the smallest member of each class.
    pub(crate) fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut count = 0;
        for v in 0..n {
            let r = self.find(v);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            out[v] = label[r];
        }
        (out, count)
    }
}
