//! Seeded instance generators. The same seed always yields the same bytes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use connpres_core::instance::is_instance_feasible;
use connpres_core::treemcf::{PathPackingInstance, Tree, TreePath};
use connpres_core::{Error, Instance, MultiGraph, Result, Terminals};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Steiner,
    St,
    Global,
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "steiner" => Ok(Variant::Steiner),
            "st" => Ok(Variant::St),
            "global" => Ok(Variant::Global),
            other => Err(format!("unknown variant `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomParams {
    pub n: usize,
    pub m: usize,
    pub cost_min: u64,
    pub cost_max: u64,
    pub variant: Variant,
    pub p: usize,
    pub q: usize,
    /// Terminal pairs for the Steiner variant.
    pub pairs: usize,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            n: 6,
            m: 10,
            cost_min: 1,
            cost_max: 10,
            variant: Variant::Global,
            p: 1,
            q: 2,
            pairs: 2,
        }
    }
}

/// Connected multigraph: a random spanning tree plus `m − n + 1` uniformly
/// random extra edges (parallel edges allowed, no loops), in shuffled order.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, m: usize) -> Result<MultiGraph> {
    if n < 2 || m + 1 < n {
        return Err(Error::InvalidParameters(format!(
            "need n >= 2 and m >= n - 1 (got n = {n}, m = {m})"
        )));
    }
    let mut pairs = Vec::with_capacity(m);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    for i in 1..n {
        pairs.push((order[rng.gen_range(0..i)], order[i]));
    }
    while pairs.len() < m {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            pairs.push((u, v));
        }
    }
    pairs.shuffle(rng);
    MultiGraph::from_pairs(n, &pairs)
}

pub fn random_instance<R: Rng>(rng: &mut R, params: &RandomParams) -> Result<Instance> {
    if params.cost_min > params.cost_max {
        return Err(Error::InvalidParameters("cost range is empty".into()));
    }
    let g = random_graph(rng, params.n, params.m)?;
    let cost = (0..params.m)
        .map(|_| rng.gen_range(params.cost_min..=params.cost_max))
        .collect();
    let n = params.n;
    let pair = |rng: &mut R| {
        let s = rng.gen_range(0..n);
        let mut t = rng.gen_range(0..n - 1);
        if t >= s {
            t += 1;
        }
        (s, t)
    };
    let terminals = match params.variant {
        Variant::Global => Terminals::Global,
        Variant::St => {
            let (s, t) = pair(rng);
            Terminals::St(s, t)
        }
        Variant::Steiner => {
            if params.pairs == 0 {
                return Err(Error::InvalidParameters("the Steiner variant needs a terminal pair".into()));
            }
            Terminals::Steiner((0..params.pairs).map(|_| pair(rng)).collect())
        }
    };
    Instance::new(g, cost, terminals, params.p, params.q)
}

/// Draws until the instance is feasible, giving up after `attempts` draws.
pub fn random_feasible_instance<R: Rng>(
    rng: &mut R,
    params: &RandomParams,
    attempts: usize,
) -> Result<Instance> {
    for _ in 0..attempts {
        let inst = random_instance(rng, params)?;
        if is_instance_feasible(&inst) {
            return Ok(inst);
        }
    }
    Err(Error::BudgetExceeded(format!(
        "no feasible instance in {attempts} draws"
    )))
}

/// The 6-vertex 3-regular graph of the 3-clique gadget example. Vertices
/// `v1..v6` are 0..5 and edges `e1..e9` are ids 0..8; `v1 v2 v3` is a
/// triangle.
pub fn sample_cubic_graph() -> MultiGraph {
    MultiGraph::from_pairs(
        6,
        &[(0, 1), (0, 4), (0, 2), (2, 3), (4, 3), (3, 5), (1, 2), (4, 5), (1, 5)],
    )
    .expect("valid graph")
}

/// Random tree on `nodes` nodes with `paths` random paths of weight in
/// `0..=max_weight`.
pub fn random_tree_mcf<R: Rng>(
    rng: &mut R,
    nodes: usize,
    paths: usize,
    max_weight: u64,
) -> Result<PathPackingInstance> {
    if nodes < 2 {
        return Err(Error::InvalidParameters("a path needs a tree with 2 or more nodes".into()));
    }
    let edges = (1..nodes).map(|v| (rng.gen_range(0..v), v)).collect();
    let tree = Tree::new(nodes, edges)?;
    let paths = (0..paths)
        .map(|id| {
            let a = rng.gen_range(0..nodes);
            let mut b = rng.gen_range(0..nodes - 1);
            if b >= a {
                b += 1;
            }
            TreePath {
                id,
                a,
                b,
                weight: rng.gen_range(0..=max_weight),
            }
        })
        .collect();
    PathPackingInstance::new(tree, paths)
}

fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in edges {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    adj
}

fn isomorphic(a: &[Vec<bool>], b: &[Vec<bool>]) -> bool {
    fn extend(a: &[Vec<bool>], b: &[Vec<bool>], map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = map.len();
        if i == a.len() {
            return true;
        }
        for j in 0..b.len() {
            if used[j] || (0..i).any(|k| a[i][k] != b[j][map[k]]) {
                continue;
            }
            used[j] = true;
            map.push(j);
            if extend(a, b, map, used) {
                return true;
            }
            map.pop();
            used[j] = false;
        }
        false
    }
    a.len() == b.len() && extend(a, b, &mut Vec::new(), &mut vec![false; b.len()])
}

fn invariant(adj: &[Vec<bool>]) -> Vec<usize> {
    let n = adj.len();
    let mut tri: Vec<usize> = (0..n)
        .map(|v| {
            (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|&(a, b)| adj[v][a] && adj[v][b] && adj[a][b])
                .count()
        })
        .collect();
    tri.sort_unstable();
    tri
}

/// Every simple `d`-regular graph on `n` vertices up to isomorphism,
/// including disconnected ones, each with its edges sorted.
pub fn regular_graphs(n: usize, d: usize) -> Vec<MultiGraph> {
    if n == 0 || d >= n || (n * d) % 2 == 1 {
        return Vec::new();
    }
    fn search(
        n: usize,
        d: usize,
        deg: &mut Vec<usize>,
        adj: &mut Vec<Vec<bool>>,
        edges: &mut Vec<(usize, usize)>,
        found: &mut Vec<Vec<(usize, usize)>>,
        reps: &mut Vec<(Vec<usize>, Vec<Vec<bool>>)>,
    ) {
        let Some(u) = (0..n).find(|&v| deg[v] < d) else {
            let a = adjacency(n, edges);
            let inv = invariant(&a);
            if !reps.iter().any(|(i, r)| *i == inv && isomorphic(r, &a)) {
                reps.push((inv, a));
                found.push(edges.clone());
            }
            return;
        };
        // the next neighbour of u is above its current largest one
        let start = (u + 1..n).rev().find(|&v| adj[u][v]).map_or(u + 1, |v| v + 1);
        for v in start..n {
            if deg[v] < d {
                deg[u] += 1;
                deg[v] += 1;
                adj[u][v] = true;
                adj[v][u] = true;
                edges.push((u, v));
                search(n, d, deg, adj, edges, found, reps);
                edges.pop();
                adj[u][v] = false;
                adj[v][u] = false;
                deg[u] -= 1;
                deg[v] -= 1;
            }
        }
    }
    let mut deg = vec![0; n];
    let mut adj = vec![vec![false; n]; n];
    let mut edges = Vec::new();
    let mut found = Vec::new();
    let mut reps = Vec::new();
    if d > 0 {
        // vertex 0 adjacent to 1..=d loses no isomorphism class
        for v in 1..=d {
            deg[0] += 1;
            deg[v] += 1;
            adj[0][v] = true;
            adj[v][0] = true;
            edges.push((0, v));
        }
    }
    search(n, d, &mut deg, &mut adj, &mut edges, &mut found, &mut reps);
    found
        .into_iter()
        .map(|e| MultiGraph::from_pairs(n, &e).expect("valid graph"))
        .collect()
}

/// Whether the simple graph `g` has a clique on `k` vertices, by exhaustion.
pub fn has_clique(g: &MultiGraph, k: usize) -> bool {
    let n = g.vertex_count();
    let pairs: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.u, e.v)).collect();
    let adj = adjacency(n, &pairs);
    fn grow(adj: &[Vec<bool>], chosen: &mut Vec<usize>, from: usize, k: usize) -> bool {
        if chosen.len() == k {
            return true;
        }
        (from..adj.len()).any(|v| {
            if chosen.iter().all(|&c| adj[c][v]) {
                chosen.push(v);
                let ok = grow(adj, chosen, v + 1, k);
                chosen.pop();
                ok
            } else {
                false
            }
        })
    }
    grow(&adj, &mut Vec::new(), 0, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_graph_counts() {
        assert_eq!(regular_graphs(4, 3).len(), 1);
        assert_eq!(regular_graphs(6, 3).len(), 2);
        // five connected graphs plus two disjoint copies of K4
        assert_eq!(regular_graphs(8, 3).len(), 6);
        assert!(regular_graphs(5, 3).is_empty());
    }

    #[test]
    fn sample_graph_is_cubic_with_a_triangle() {
        let g = sample_cubic_graph();
        assert!((0..6).all(|v| g.degree(v) == 3));
        assert!(has_clique(&g, 3));
        assert!(!has_clique(&g, 4));
    }

    #[test]
    fn same_seed_same_instance() {
        let params = RandomParams::default();
        let a = random_instance(&mut rng(7), &params).unwrap();
        let b = random_instance(&mut rng(7), &params).unwrap();
        assert_eq!(a, b);
        assert!(a.graph().is_connected());
    }

    #[test]
    fn too_few_edges() {
        assert!(random_graph(&mut rng(0), 5, 3).is_err());
    }
}
