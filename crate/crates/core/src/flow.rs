//! Dinic max-flow over a residual network built from an undirected multigraph.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

/// Capacity used for arcs that must never be cut (merged anchors).
pub(crate) const ANCHOR_CAP: u64 = 1 << 48;

/// Capacity callers should use for edges that behave as contracted.
pub const UNCUTTABLE: u64 = 1 << 40;

pub(crate) struct FlowNet {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    residual: Vec<u64>,
    level: Vec<u32>,
    iter: Vec<usize>,
}

impl FlowNet {
    pub(crate) fn new(n: usize) -> Self {
        FlowNet {
            adj: vec![Vec::new(); n],
            to: Vec::new(),
            residual: Vec::new(),
            level: vec![0; n],
            iter: vec![0; n],
        }
    }

    pub(crate) fn node_count(&self) -> usize {
        self.adj.len()
    }

    /// Adds an undirected edge; returns the index of the `u -> v` arc. The
    /// paired `v -> u` arc is at `index ^ 1`.
    pub(crate) fn add_undirected(&mut self, u: usize, v: usize, cap: u64) -> usize {
        self.add_arcs(u, v, cap, cap)
    }

    pub(crate) fn add_directed(&mut self, u: usize, v: usize, cap: u64) -> usize {
        self.add_arcs(u, v, cap, 0)
    }

    fn add_arcs(&mut self, u: usize, v: usize, forward: u64, backward: u64) -> usize {
        let a = self.to.len();
        self.to.push(v);
        self.residual.push(forward);
        self.adj[u].push(a);
        self.to.push(u);
        self.residual.push(backward);
        self.adj[v].push(a + 1);
        a
    }

    pub(crate) fn residual(&self, arc: usize) -> u64 {
        self.residual[arc]
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = u32::MAX);
        self.level[s] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(s);
        while let Some(x) = queue.pop_front() {
            for &a in &self.adj[x] {
                let y = self.to[a];
                if self.residual[a] > 0 && self.level[y] == u32::MAX {
                    self.level[y] = self.level[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        self.level[t] != u32::MAX
    }

    fn dfs(&mut self, x: usize, t: usize, pushed: u64) -> u64 {
        if x == t {
            return pushed;
        }
        while self.iter[x] < self.adj[x].len() {
            let a = self.adj[x][self.iter[x]];
            let y = self.to[a];
            if self.residual[a] > 0 && self.level[y] == self.level[x] + 1 {
                let got = self.dfs(y, t, pushed.min(self.residual[a]));
                if got > 0 {
                    self.residual[a] -= got;
                    self.residual[a ^ 1] = self.residual[a ^ 1].saturating_add(got);
                    return got;
                }
            }
            self.iter[x] += 1;
        }
        0
    }

    /// Pushes flow from `s` to `t` until no augmenting path remains or the
    /// flow value reaches `limit`.
    pub(crate) fn max_flow(&mut self, s: usize, t: usize, limit: u64) -> u64 {
        let mut flow = 0u64;
        while flow < limit && self.bfs(s, t) {
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let got = self.dfs(s, t, limit - flow);
                if got == 0 {
                    break;
                }
                flow += got;
                if flow >= limit {
                    break;
                }
            }
        }
        flow
    }

    /// Vertices reachable from `s` in the residual network.
    pub(crate) fn reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &a in &self.adj[x] {
                let y = self.to[a];
                if self.residual[a] > 0 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}
