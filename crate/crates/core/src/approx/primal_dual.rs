use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{lift_phase_dual, rat, PhaseCertificate, Rational, RatioCertificate};
use crate::error::{Error, Result};
use crate::instance::{check_instance_feasible, find_cut_with_protected_at_most, Instance, Solution};
use crate::multigraph::{min_cut_between, Capacities, Cut, EdgeId};

/// One primal-dual covering phase: while `violated` reports a cut, raise its
/// dual until an edge of the cut outside `X` becomes tight and add the tight
/// edge with the smallest id.
pub(crate) fn run_phase<F>(
    inst: &Instance,
    phase: usize,
    x_prev: &BTreeSet<EdgeId>,
    mut violated: F,
) -> Result<(BTreeSet<EdgeId>, PhaseCertificate)>
where
    F: FnMut(&BTreeSet<EdgeId>) -> Result<Option<Cut>>,
{
    let g = inst.graph();
    let mut slack: Vec<Rational> = (0..g.edge_count()).map(|p| rat(inst.cost_at(p))).collect();
    let mut current = x_prev.clone();
    let mut added = Vec::new();
    let mut y: Vec<(Cut, Rational)> = Vec::new();
    let mut factor = 0usize;
    while let Some(cut) = violated(&current)? {
        let open: Vec<usize> = cut
            .crossing
            .iter()
            .filter(|id| !current.contains(id))
            .map(|&id| g.position(id).expect("edge of g"))
            .collect();
        if open.is_empty() {
            return Err(Error::Infeasible {
                cut_size: cut.crossing.len(),
                p: inst.p(),
            });
        }
        factor = factor.max(cut.crossing.iter().filter(|id| !x_prev.contains(id)).count());
        let delta = open.iter().map(|&p| slack[p].clone()).min().expect("nonempty");
        for &p in &open {
            slack[p] -= &delta;
        }
        let tight = open
            .iter()
            .copied()
            .filter(|&p| slack[p].is_zero())
            .min_by_key(|&p| g.edges()[p].id)
            .expect("the minimum slack edge is tight");
        let id = g.edges()[tight].id;
        current.insert(id);
        added.push(id);
        y.push((cut, delta));
    }
    let dual = lift_phase_dual(inst, y, x_prev);
    let added_cost = added
        .iter()
        .map(|&id| inst.cost(id).expect("edge of g"))
        .sum();
    let cert = PhaseCertificate {
        phase,
        dual_total: dual.y_total(),
        dual,
        factor: rat(factor as u64),
        added,
        added_cost,
    };
    Ok((current, cert))
}

/// Primal-dual algorithm for `p = 1`: `c(X) ≤ q·Σ y ≤ q·Opt`.
///
/// A cut is unsafe iff it separates a terminal pair and avoids `X`; with
/// capacity `q + 1` on `X` and 1 elsewhere this is a terminal cut of value
/// at most `q`.
pub fn primal_dual_1q(inst: &Instance) -> Result<(Solution, RatioCertificate)> {
    if inst.p() != 1 {
        return Err(Error::Unsupported(format!(
            "primal-dual needs p = 1 (got p = {})",
            inst.p()
        )));
    }
    check_instance_feasible(inst)?;
    let g = inst.graph();
    let q = inst.q() as u64;
    let queries = inst.cut_queries();
    let unit = Capacities::unit(g);
    let (x, cert) = run_phase(inst, 1, &BTreeSet::new(), |x| {
        let cap: Vec<u64> = g
            .edges()
            .iter()
            .map(|e| if x.contains(&e.id) { q + 1 } else { 1 })
            .collect();
        Ok(queries.iter().find_map(|&(s, t)| {
            let (value, side) = min_cut_between(g, &cap, &[s], &[t], q + 1).expect("s != t");
            (value <= q).then(|| Cut::from_membership(g, &unit, &side))
        }))
    })?;
    let certificate = RatioCertificate::from_phases(1, alloc::vec![cert]);
    Ok((inst.solution(x)?, certificate))
}

/// Phase algorithm for constant `p`: `p` primal-dual covering phases, with
/// the violated cuts of phase `i` found by the exact search for critical cuts
/// holding at most `i − 1` protected edges.
///
/// Phase `i` costs at most `f_i·Σ y^(i)` with `f_i ≤ p + q − i`, and
/// `Σ y^(i) ≤ Opt / (p − i + 1)`, which gives the `H_p·(p + q − 1)` ratio.
pub fn solve_pq_scp(inst: &Instance) -> Result<(Solution, RatioCertificate)> {
    check_instance_feasible(inst)?;
    let mut x = BTreeSet::new();
    let mut phases = Vec::with_capacity(inst.p());
    for i in 1..=inst.p() {
        let (next, cert) = run_phase(inst, i, &x, |cur| {
            Ok(find_cut_with_protected_at_most(inst, cur, i - 1)?.map(|c| c.cut))
        })?;
        x = next;
        phases.push(cert);
    }
    let certificate = RatioCertificate::from_phases(inst.p(), phases);
    Ok((inst.solution(x)?, certificate))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::{is_feasible, Terminals};
    use crate::multigraph::MultiGraph;
    use alloc::vec;

    fn cycle4() -> MultiGraph {
        MultiGraph::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    #[test]
    fn four_cycle_within_q_times_opt() {
        let inst = Instance::unit(cycle4(), Terminals::St(0, 2), 1, 2).unwrap();
        let (x, cert) = primal_dual_1q(&inst).unwrap();
        assert!(is_feasible(&inst, &x).unwrap());
        assert!(x.total_cost() <= 4);
        assert!(rat(x.total_cost()) <= rat(2) * &cert.phases[0].dual_total);
        assert_eq!(cert.verify(&inst), Ok(()));
    }

    #[test]
    fn no_critical_cuts_means_zero_dual() {
        let k4 =
            MultiGraph::from_pairs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let inst = Instance::unit(k4, Terminals::Global, 1, 2).unwrap();
        let (x, cert) = primal_dual_1q(&inst).unwrap();
        assert!(x.is_empty());
        assert!(cert.phases[0].dual.y.is_empty());
        assert!(cert.bound.is_zero());
    }

    #[test]
    fn p1_phase_algorithm_matches_primal_dual() {
        let inst = Instance::unit(cycle4(), Terminals::Global, 1, 2).unwrap();
        let (a, ca) = primal_dual_1q(&inst).unwrap();
        let (b, cb) = solve_pq_scp(&inst).unwrap();
        assert_eq!(a, b);
        assert_eq!(ca, cb);
    }

    #[test]
    fn four_parallel_edges_need_nothing() {
        let g = MultiGraph::from_pairs(2, &vec![(0, 1); 4]).unwrap();
        let inst = Instance::new(g, vec![1, 1, 10, 10], Terminals::St(0, 1), 2, 2).unwrap();
        let (x, _) = solve_pq_scp(&inst).unwrap();
        assert!(x.is_empty());
    }

    #[test]
    fn three_parallel_edges_two_phases() {
        let g = MultiGraph::from_pairs(2, &vec![(0, 1); 3]).unwrap();
        let inst = Instance::new(g, vec![1, 2, 4], Terminals::St(0, 1), 2, 2).unwrap();
        let (x, cert) = solve_pq_scp(&inst).unwrap();
        assert!(is_feasible(&inst, &x).unwrap());
        // H_2 · 3 · Opt = 13.5
        assert!(2 * x.total_cost() <= 27);
        assert_eq!(cert.phases.len(), 2);
        assert_eq!(cert.verify(&inst), Ok(()));
        assert!(rat(x.total_cost()) <= cert.bound);
    }
}
