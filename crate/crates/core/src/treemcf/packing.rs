use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::matching::max_weight_matching;
use super::tree::Tree;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct TreePath {
    pub id: usize,
    pub a: usize,
    pub b: usize,
    pub weight: u64,
}

/// A tree with weighted paths to pack edge-disjointly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPackingInstance {
    tree: Tree,
    paths: Vec<TreePath>,
}

impl PathPackingInstance {
    pub fn new(tree: Tree, paths: Vec<TreePath>) -> Result<Self> {
        let n = tree.node_count();
        let mut ids = BTreeSet::new();
        for p in &paths {
            for x in [p.a, p.b] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, n });
                }
            }
            if p.a == p.b {
                return Err(Error::InvalidParameters(format!(
                    "path {} has no edges (both endpoints are {})",
                    p.id, p.a
                )));
            }
            if !ids.insert(p.id) {
                return Err(Error::InvalidParameters(format!("duplicate path id {}", p.id)));
            }
        }
        Ok(PathPackingInstance { tree, paths })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn paths(&self) -> &[TreePath] {
        &self.paths
    }
}

/// Subproblem optima of the packing recursion.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DpTable {
    /// `f(T_v)` for every node `v`.
    pub f_subtree: Vec<u64>,
    /// `(v, c)` maps to the optimum in `T_v` with the child subtree `T_c` and
    /// the edge `vc` removed.
    pub f_without_child: BTreeMap<(usize, usize), u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackingSolution {
    pub weight: u64,
    /// Ids of the selected paths, ascending.
    pub selected: Vec<usize>,
    pub table: DpTable,
}

#[derive(Debug, Clone, Copy)]
enum Choice {
    /// No path with this lca uses the child edge; recurse into the child.
    Subtree(usize),
    /// Select the path at this index of the instance.
    Path(usize),
}

/// Maximum-weight set of pairwise edge-disjoint paths.
///
/// Bottom-up over the rooted tree: at node `v`, each child `z_i` becomes a
/// vertex `u_i` with a private partner `u_i'`. A path whose topmost node is
/// `v` becomes an edge between the children it enters (or to the partner if
/// it enters one child only), weighted by its own weight plus the optima of
/// the pieces of the child subtrees it leaves intact. The edge `u_i u_i'`
/// also covers leaving `T_{z_i}` to its own optimum. A maximum-weight
/// matching then gives `f(T_v)`; dropping `u_c` gives the optimum with child
/// `c` removed, which deeper levels use for their broken pieces.
pub fn solve_tree_mcf(inst: &PathPackingInstance) -> PackingSolution {
    let tree = inst.tree();
    let n = tree.node_count();
    let paths = inst.paths();
    // child position of each node under its parent
    let mut child_pos = vec![usize::MAX; n];
    for v in 0..n {
        for (i, &c) in tree.children(v).iter().enumerate() {
            child_pos[c] = i;
        }
    }
    // each path as its lca and the descents into (at most) two children
    let mut by_lca: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sides: Vec<Vec<Vec<usize>>> = Vec::with_capacity(paths.len());
    for (k, p) in paths.iter().enumerate() {
        let l = tree.lca(p.a, p.b);
        by_lca[l].push(k);
        let s: Vec<Vec<usize>> = [p.a, p.b]
            .into_iter()
            .filter(|&x| x != l)
            .map(|x| tree.descent(l, x))
            .collect();
        sides.push(s);
    }
    let mut f = vec![0u64; n];
    let mut f_excl: Vec<Vec<u64>> = (0..n).map(|v| vec![0; tree.children(v).len()]).collect();
    let mut choice_full: Vec<Vec<Choice>> = vec![Vec::new(); n];
    let mut choice_excl: Vec<Vec<Vec<Choice>>> =
        (0..n).map(|v| vec![Vec::new(); tree.children(v).len()]).collect();

    for &v in tree.order().iter().rev() {
        let kids = tree.children(v);
        let d = kids.len();
        if d == 0 {
            continue;
        }
        // value of the pieces left below a descent
        let broken = |desc: &[usize], f: &[u64], f_excl: &[Vec<u64>]| -> u64 {
            let last = *desc.last().expect("nonempty descent");
            let mut total = f[last];
            for w in desc.windows(2) {
                total += f_excl[w[0]][child_pos[w[1]]];
            }
            total
        };
        // candidate matching edges: (u, v, weight, choice)
        let mut aux: Vec<(usize, usize, u64, Choice)> = Vec::new();
        let mut best_single: Vec<(u64, Choice)> =
            kids.iter().map(|&z| (f[z], Choice::Subtree(z))).collect();
        for &k in &by_lca[v] {
            let s = &sides[k];
            let value = paths[k].weight
                + s.iter().map(|desc| broken(desc, &f, &f_excl)).sum::<u64>();
            let ends: Vec<usize> = s.iter().map(|desc| child_pos[desc[0]]).collect();
            match ends.as_slice() {
                [i] => {
                    if value > best_single[*i].0 {
                        best_single[*i] = (value, Choice::Path(k));
                    }
                }
                [i, j] => aux.push((*i, *j, value, Choice::Path(k))),
                _ => unreachable!("a path leaves its lca through one or two children"),
            }
        }
        for (i, &(w, c)) in best_single.iter().enumerate() {
            aux.push((i, d + i, w, c));
        }
        let run = |skip: Option<usize>| -> (u64, Vec<Choice>) {
            let kept: Vec<&(usize, usize, u64, Choice)> = aux
                .iter()
                .filter(|e| skip.map_or(true, |c| e.0 != c && e.1 != c && e.1 != d + c))
                .collect();
            let edges: Vec<(usize, usize, u64)> = kept.iter().map(|e| (e.0, e.1, e.2)).collect();
            let m = max_weight_matching(2 * d, &edges);
            (m.weight, m.edges.iter().map(|&k| kept[k].3).collect())
        };
        let (w, c) = run(None);
        f[v] = w;
        choice_full[v] = c;
        for i in 0..d {
            let (w, c) = run(Some(i));
            f_excl[v][i] = w;
            choice_excl[v][i] = c;
        }
    }

    let mut selected = Vec::new();
    let mut stack: Vec<(usize, Option<usize>)> = vec![(0, None)];
    while let Some((v, skip)) = stack.pop() {
        let chosen = match skip {
            None => &choice_full[v],
            Some(i) => &choice_excl[v][i],
        };
        for &c in chosen {
            match c {
                Choice::Subtree(z) => stack.push((z, None)),
                Choice::Path(k) => {
                    selected.push(paths[k].id);
                    for desc in &sides[k] {
                        stack.push((*desc.last().expect("nonempty"), None));
                        for w in desc.windows(2) {
                            stack.push((w[0], Some(child_pos[w[1]])));
                        }
                    }
                }
            }
        }
    }
    selected.sort_unstable();

    let mut f_without_child = BTreeMap::new();
    for v in 0..n {
        for (i, &c) in tree.children(v).iter().enumerate() {
            f_without_child.insert((v, c), f_excl[v][i]);
        }
    }
    PackingSolution {
        weight: f[0],
        selected,
        table: DpTable {
            f_subtree: f,
            f_without_child,
        },
    }
}
