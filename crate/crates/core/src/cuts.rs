//! Complete enumeration of all cuts below a capacity bound.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::multigraph::{min_cut_between, Capacities, Cut, MultiGraph, VertexId};

/// Every bipartition with capacity strictly below `bound`, each reported once
/// with `side_s` being the side that excludes vertex 0. Results are sorted by
/// `side_s`.
///
/// Vertices are assigned to a side one at a time in id order; a partial
/// assignment is abandoned as soon as the minimum cut separating the vertices
/// already placed on the two sides reaches `bound`. Every surviving branch
/// contains at least one reported cut, so the work is polynomial in the number
/// of cuts reported.
pub fn enumerate_cuts_below(
    g: &MultiGraph,
    cap: &Capacities,
    bound: u64,
    limit: usize,
) -> Result<Vec<Cut>> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    if n < 2 || bound == 0 {
        return Ok(out);
    }
    let mut search = Search {
        g,
        cap,
        bound,
        limit,
        s_side: Vec::new(),
        t_side: vec![0],
        out: &mut out,
    };
    search.explore(1)?;
    out.sort();
    Ok(out)
}

struct Search<'a> {
    g: &'a MultiGraph,
    cap: &'a Capacities,
    bound: u64,
    limit: usize,
    s_side: Vec<VertexId>,
    t_side: Vec<VertexId>,
    out: &'a mut Vec<Cut>,
}

impl Search<'_> {
    fn explore(&mut self, next: VertexId) -> Result<()> {
        let n = self.g.vertex_count();
        if !self.s_side.is_empty() {
            let (value, _) = min_cut_between(
                self.g,
                self.cap.as_slice(),
                &self.s_side,
                &self.t_side,
                self.bound,
            )
            .expect("sides are disjoint");
            if value >= self.bound {
                return Ok(());
            }
        }
        if next == n {
            if self.s_side.is_empty() {
                return Ok(());
            }
            let cut = Cut::from_side(self.g, self.cap, &self.s_side);
            debug_assert!(cut.capacity < self.bound);
            if self.out.len() == self.limit {
                return Err(Error::CutLimitExceeded { limit: self.limit });
            }
            self.out.push(cut);
            return Ok(());
        }
        self.t_side.push(next);
        self.explore(next + 1)?;
        self.t_side.pop();
        self.s_side.push(next);
        self.explore(next + 1)?;
        self.s_side.pop();
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(g: &MultiGraph, cap: &Capacities, bound: u64) -> Vec<Cut> {
        let n = g.vertex_count();
        let mut out = Vec::new();
        // vertex 0 stays outside S
        for mask in 1u32..(1 << (n - 1)) {
            let side: Vec<usize> = (1..n).filter(|&v| mask >> (v - 1) & 1 == 1).collect();
            let cut = Cut::from_side(g, cap, &side);
            if cut.capacity < bound {
                out.push(cut);
            }
        }
        out.sort();
        out
    }

    #[test]
    fn four_cycle_bound_three() {
        let g = MultiGraph::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let cap = Capacities::unit(&g);
        let cuts = enumerate_cuts_below(&g, &cap, 3, 100).unwrap();
        assert_eq!(cuts, brute(&g, &cap, 3));
        assert_eq!(cuts.len(), 6);
        assert!(cuts.iter().all(|c| c.capacity == 2));
    }

    #[test]
    fn k4_bound_four() {
        let g =
            MultiGraph::from_pairs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let cap = Capacities::unit(&g);
        let cuts = enumerate_cuts_below(&g, &cap, 4, 100).unwrap();
        assert_eq!(cuts, brute(&g, &cap, 4));
        assert_eq!(cuts.len(), 4);
        assert!(cuts.iter().all(|c| c.capacity == 3));
    }

    #[test]
    fn bound_one_on_connected_graph_is_empty() {
        let g = MultiGraph::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(enumerate_cuts_below(&g, &Capacities::unit(&g), 1, 10)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn limit_is_enforced() {
        let g = MultiGraph::from_pairs(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let err = enumerate_cuts_below(&g, &Capacities::unit(&g), 3, 4).unwrap_err();
        assert_eq!(err, Error::CutLimitExceeded { limit: 4 });
    }
}
