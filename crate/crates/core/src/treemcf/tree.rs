use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// A tree on nodes `0..n`, rooted at node 0. Tree edges are indexed by their
/// position in the edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    edges: Vec<(usize, usize)>,
    /// `(parent, edge index)` for every node but the root.
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
    children: Vec<Vec<usize>>,
    /// Breadth-first order from the root.
    order: Vec<usize>,
}

impl Tree {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameters("a tree needs at least one node".into()));
        }
        if edges.len() + 1 != n {
            return Err(Error::InvalidParameters(format!(
                "a tree on {n} nodes has {} edges, got {}",
                n - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for (i, &(a, b)) in edges.iter().enumerate() {
            for x in [a, b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            adj[a].push((b, i));
            adj[b].push((a, i));
        }
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            order.push(x);
            for &(y, i) in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, i));
                    depth[y] = depth[x] + 1;
                    children[x].push(y);
                    queue.push_back(y);
                }
            }
        }
        if order.len() != n {
            return Err(Error::InvalidParameters("tree edges do not connect all nodes".into()));
        }
        Ok(Tree {
            edges,
            parent,
            depth,
            children,
            order,
        })
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v].map(|(p, _)| p)
    }

    /// Index of the edge joining `v` to its parent.
    pub fn parent_edge(&self, v: usize) -> Option<usize> {
        self.parent[v].map(|(_, i)| i)
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Nodes in breadth-first order from the root.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn lca(&self, mut a: usize, mut b: usize) -> usize {
        while self.depth[a] > self.depth[b] {
            a = self.parent(a).expect("non-root");
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent(b).expect("non-root");
        }
        while a != b {
            a = self.parent(a).expect("non-root");
            b = self.parent(b).expect("non-root");
        }
        a
    }

    /// Nodes from `ancestor` (exclusive) down to `v` (inclusive), top first.
    pub fn descent(&self, ancestor: usize, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut x = v;
        while x != ancestor {
            out.push(x);
            x = self.parent(x).expect("ancestor lies above v");
        }
        out.reverse();
        out
    }

    /// Edge indices on the path between `a` and `b`, sorted.
    pub fn path_edges(&self, a: usize, b: usize) -> Vec<usize> {
        let l = self.lca(a, b);
        let mut out: Vec<usize> = self
            .descent(l, a)
            .into_iter()
            .chain(self.descent(l, b))
            .map(|x| self.parent_edge(x).expect("below lca"))
            .collect();
        out.sort_unstable();
        out
    }
}
