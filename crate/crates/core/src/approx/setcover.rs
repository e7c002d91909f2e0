use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use super::{harmonic, lift_phase_dual, rat, PhaseCertificate, Rational, RatioCertificate};
use crate::cuts::enumerate_cuts_below;
use crate::error::{Error, Result};
use crate::instance::{check_instance_feasible, Instance, Solution};
use crate::multigraph::{Capacities, Cut, EdgeId};

pub const DEFAULT_CUT_LIMIT: usize = 200_000;

/// Set-cover phase algorithm for the global variant.
///
/// Phase 1 enumerates every cut with at most `p + q − 1` edges. In phase
/// `i ≥ 2`, edges of `X_{i−1}` get capacity `p + q` and the others `i − 1`;
/// every cut with exactly `i − 1` edges of `X_{i−1}` and at most `p + q − 1`
/// edges then lies below twice the minimum, `2(i − 1)(p + q)`, so
/// enumerating the cuts under that bound and filtering yields the phase
/// family exactly. Each family is covered by both the greedy algorithm and
/// the frequency (local-ratio) algorithm; the cheaper cover is kept.
pub fn solve_pq_gcp(inst: &Instance, cut_limit: usize) -> Result<(Solution, RatioCertificate)> {
    if !inst.is_global() {
        return Err(Error::Unsupported(
            "the set-cover algorithm needs the global variant".into(),
        ));
    }
    check_instance_feasible(inst)?;
    let g = inst.graph();
    let (p, q) = (inst.p() as u64, inst.q() as u64);
    let max_size = inst.critical_size();
    let mut x: BTreeSet<EdgeId> = BTreeSet::new();
    let mut phases = Vec::with_capacity(inst.p());
    for i in 1..=inst.p() {
        let cuts = if i == 1 {
            enumerate_cuts_below(g, &Capacities::unit(g), p + q, cut_limit)?
        } else {
            let w = (i - 1) as u64;
            let cap = Capacities::from_fn(g, |e| if x.contains(&e.id) { p + q } else { w });
            enumerate_cuts_below(g, &cap, 2 * w * (p + q), cut_limit)?
        };
        let unit = Capacities::unit(g);
        let family: Vec<Cut> = cuts
            .into_iter()
            .map(|c| Cut::from_side(g, &unit, &c.side_s))
            .filter(|c| {
                c.crossing.len() <= max_size
                    && c.crossing.iter().filter(|id| x.contains(id)).count() == i - 1
            })
            .collect();
        let cert = cover_phase(inst, i, &x, family)?;
        x.extend(cert.added.iter().copied());
        phases.push(cert);
    }
    let certificate = RatioCertificate::from_phases(inst.p(), phases);
    Ok((inst.solution(x)?, certificate))
}

struct Cover {
    chosen: Vec<usize>,
    cost: u64,
    y: Vec<Rational>,
    factor: Rational,
}

fn cover_phase(
    inst: &Instance,
    phase: usize,
    x_prev: &BTreeSet<EdgeId>,
    family: Vec<Cut>,
) -> Result<PhaseCertificate> {
    let g = inst.graph();
    // element -> candidate edge positions (ascending id)
    let mut sets: Vec<Vec<usize>> = Vec::with_capacity(family.len());
    for cut in &family {
        let open: Vec<usize> = cut
            .crossing
            .iter()
            .filter(|id| !x_prev.contains(id))
            .map(|&id| g.position(id).expect("edge of g"))
            .collect();
        if open.is_empty() {
            return Err(Error::Infeasible {
                cut_size: cut.crossing.len(),
                p: inst.p(),
            });
        }
        sets.push(open);
    }
    let greedy = greedy_cover(inst, &sets);
    let local = local_ratio_cover(inst, &sets);
    let best = if greedy.cost <= local.cost { greedy } else { local };
    let y: Vec<(Cut, Rational)> = family.into_iter().zip(best.y).collect();
    let dual = lift_phase_dual(inst, y, x_prev);
    let mut added: Vec<EdgeId> = best.chosen.iter().map(|&p| g.edges()[p].id).collect();
    added.sort_unstable();
    Ok(PhaseCertificate {
        phase,
        dual_total: dual.y_total(),
        dual,
        factor: best.factor,
        added,
        added_cost: best.cost,
    })
}

/// Greedy set cover. Each element is charged the price `c_e / k` of the edge
/// that first covers it; prices divided by `H_K` (with `K` the largest
/// number of elements one edge covers) form a feasible dual.
fn greedy_cover(inst: &Instance, sets: &[Vec<usize>]) -> Cover {
    let m = inst.graph().edge_count();
    let mut covers: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (el, s) in sets.iter().enumerate() {
        for &p in s {
            covers[p].push(el);
        }
    }
    let k_max = covers.iter().map(Vec::len).max().unwrap_or(0);
    let mut covered = vec![false; sets.len()];
    let mut left = sets.len();
    let mut price = vec![Rational::zero(); sets.len()];
    let mut chosen = Vec::new();
    let mut cost = 0;
    let id = |p: usize| inst.graph().edges()[p].id;
    while left > 0 {
        let mut best: Option<(Rational, usize)> = None;
        for p in 0..m {
            let k = covers[p].iter().filter(|&&el| !covered[el]).count();
            if k == 0 {
                continue;
            }
            let ratio = Rational::new(inst.cost_at(p).into(), (k as u64).into());
            let better = match &best {
                None => true,
                Some((r, q)) => ratio < *r || (ratio == *r && id(p) < id(*q)),
            };
            if better {
                best = Some((ratio, p));
            }
        }
        let (ratio, p) = best.expect("every element has a candidate edge");
        for &el in &covers[p] {
            if !covered[el] {
                covered[el] = true;
                price[el] = ratio.clone();
                left -= 1;
            }
        }
        chosen.push(p);
        cost += inst.cost_at(p);
    }
    let h = harmonic(k_max);
    let y = if k_max == 0 {
        price
    } else {
        price.into_iter().map(|v| v / &h).collect()
    };
    Cover {
        chosen,
        cost,
        y,
        factor: h,
    }
}

/// Frequency algorithm: for each uncovered element in order, raise its dual
/// until one of its edges is tight and take the tight edge with the smallest
/// id. Costs at most `f` times the dual, `f` the largest element size.
fn local_ratio_cover(inst: &Instance, sets: &[Vec<usize>]) -> Cover {
    let g = inst.graph();
    let mut residual: Vec<u64> = (0..g.edge_count()).map(|p| inst.cost_at(p)).collect();
    let mut taken = vec![false; g.edge_count()];
    let mut y = vec![Rational::zero(); sets.len()];
    let mut chosen = Vec::new();
    let mut cost = 0;
    for (el, s) in sets.iter().enumerate() {
        if s.iter().any(|&p| taken[p]) {
            continue;
        }
        let delta = s.iter().map(|&p| residual[p]).min().expect("nonempty");
        for &p in s {
            residual[p] -= delta;
        }
        let pick = s
            .iter()
            .copied()
            .filter(|&p| residual[p] == 0)
            .min_by_key(|&p| g.edges()[p].id)
            .expect("a tight edge");
        taken[pick] = true;
        chosen.push(pick);
        cost += inst.cost_at(pick);
        y[el] = rat(delta);
    }
    let f = sets.iter().map(Vec::len).max().unwrap_or(0);
    Cover {
        chosen,
        cost,
        y,
        factor: rat(f as u64),
    }
}
