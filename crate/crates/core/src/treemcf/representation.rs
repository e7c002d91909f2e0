use alloc::vec;
use alloc::vec::Vec;

use super::tree::Tree;
use crate::cuts::enumerate_cuts_below;
use crate::error::{Error, Result};
use crate::multigraph::{min_cut_between, Capacities, Cut, Edge, MultiGraph, VertexId};

/// All minimum cuts of a graph with odd edge connectivity `k`, as a rooted
/// tree with a vertex map `phi`.
///
/// Node 0 is the root. Every other node `c` stands for one minimum cut: the
/// vertices mapped into the subtree of `c` form the side of the cut that
/// avoids vertex 0. Tree edge `i` joins node `i + 1` to its parent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeRepresentation {
    k: u64,
    tree: Tree,
    phi: Vec<usize>,
    cut_of: Vec<Cut>,
}

impl TreeRepresentation {
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn phi(&self, v: VertexId) -> usize {
        self.phi[v]
    }

    pub fn phi_map(&self) -> &[usize] {
        &self.phi
    }

    /// The minimum cut of tree edge `i`.
    pub fn cut_of(&self, i: usize) -> &Cut {
        &self.cut_of[i]
    }

    pub fn cuts(&self) -> &[Cut] {
        &self.cut_of
    }

    /// Tree edges on the path between `phi(u)` and `phi(v)`: exactly the
    /// minimum cuts that `e` crosses.
    pub fn project_edge(&self, e: &Edge) -> Vec<usize> {
        self.tree.path_edges(self.phi[e.u], self.phi[e.v])
    }
}

/// Builds the tree representation from the explicitly enumerated minimum
/// cuts. Fails if the edge connectivity is not `k`, if `k` is even, or if two
/// minimum cuts cross.
pub fn build_tree_representation(g: &MultiGraph, k: u64) -> Result<TreeRepresentation> {
    if k % 2 == 0 {
        return Err(Error::InvalidParameters(alloc::format!(
            "tree representations need an odd cut value (got {k})"
        )));
    }
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::InvalidParameters(
            "a graph with fewer than two vertices has no cuts".into(),
        ));
    }
    let cap = Capacities::unit(g);
    let lambda = (1..n)
        .map(|v| min_cut_between(g, cap.as_slice(), &[0], &[v], u64::MAX).expect("0 != v").0)
        .min()
        .expect("n >= 2");
    if lambda != k {
        return Err(Error::MinCutMismatch {
            expected: k,
            found: lambda,
        });
    }
    // a graph has at most n(n-1)/2 minimum cuts
    let cuts = enumerate_cuts_below(g, &cap, k + 1, n * (n - 1) / 2 + 1)?;
    let mut sets: Vec<Vec<VertexId>> = cuts.iter().map(|c| c.side_s.clone()).collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let member: Vec<Vec<bool>> = sets
        .iter()
        .map(|s| {
            let mut m = vec![false; n];
            s.iter().for_each(|&v| m[v] = true);
            m
        })
        .collect();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let common = sets[i].iter().filter(|&&v| member[j][v]).count();
            if common != 0 && common != sets[i].len() {
                return Err(Error::CrossingCuts {
                    first: sets[i].clone(),
                    second: sets[j].clone(),
                });
            }
        }
    }
    // parent of set i is the smallest set strictly containing it
    let mut edges = Vec::with_capacity(sets.len());
    for i in 0..sets.len() {
        let parent = (i + 1..sets.len())
            .find(|&j| sets[i].iter().all(|&v| member[j][v]))
            .map_or(0, |j| j + 1);
        edges.push((parent, i + 1));
    }
    let tree = Tree::new(sets.len() + 1, edges)?;
    let phi: Vec<usize> = (0..n)
        .map(|v| (0..sets.len()).find(|&i| member[i][v]).map_or(0, |i| i + 1))
        .collect();
    // recompute each tree edge's cut from the subtree it hangs
    let mut cut_of = Vec::with_capacity(sets.len());
    for i in 0..sets.len() {
        let c = i + 1;
        let in_s: Vec<bool> = (0..n).map(|v| in_subtree(&tree, phi[v], c)).collect();
        let cut = Cut::from_membership(g, &cap, &in_s);
        if cut.capacity != k || cut.side_s != sets[i] {
            return Err(Error::MinCutMismatch {
                expected: k,
                found: cut.capacity,
            });
        }
        cut_of.push(cut);
    }
    Ok(TreeRepresentation {
        k,
        tree,
        phi,
        cut_of,
    })
}

fn in_subtree(tree: &Tree, mut x: usize, root: usize) -> bool {
    loop {
        if x == root {
            return true;
        }
        match tree.parent(x) {
            Some(p) => x = p,
            None => return false,
        }
    }
}
