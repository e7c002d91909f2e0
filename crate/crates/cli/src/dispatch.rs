//! Solver selection by variant and `(p, q)`.

use std::fmt;
use std::str::FromStr;

use connpres_core::approx::{self, RatioCertificate, Rational};
use connpres_core::exact;
use connpres_core::instance::min_terminal_cut;
use connpres_core::oracle::{brute_optimum, BruteOptimum};
use connpres_core::{Error, Instance, Result, Solution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Algorithm {
    Algorithm1,
    Algorithm2,
    Greedy12Gcp,
    Solve22Gcp,
    PrimalDual,
    Phases,
    SetCover,
    HittingSet,
    Brute,
}

impl Algorithm {
    pub const ALL: [Algorithm; 9] = [
        Algorithm::Algorithm1,
        Algorithm::Algorithm2,
        Algorithm::Greedy12Gcp,
        Algorithm::Solve22Gcp,
        Algorithm::PrimalDual,
        Algorithm::Phases,
        Algorithm::SetCover,
        Algorithm::HittingSet,
        Algorithm::Brute,
    ];

    /// Certified approximations tried, in this order, when no exact solver applies.
    pub const CERTIFIED: [Algorithm; 4] = [
        Algorithm::PrimalDual,
        Algorithm::Phases,
        Algorithm::SetCover,
        Algorithm::HittingSet,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Algorithm1 => "algorithm-1",
            Algorithm::Algorithm2 => "algorithm-2",
            Algorithm::Greedy12Gcp => "greedy-12-gcp",
            Algorithm::Solve22Gcp => "solve-22-gcp",
            Algorithm::PrimalDual => "primal-dual",
            Algorithm::Phases => "phases",
            Algorithm::SetCover => "setcover",
            Algorithm::HittingSet => "hitting-set",
            Algorithm::Brute => "brute",
        }
    }

    pub fn is_exact(self) -> bool {
        matches!(
            self,
            Algorithm::Algorithm1
                | Algorithm::Algorithm2
                | Algorithm::Greedy12Gcp
                | Algorithm::Solve22Gcp
                | Algorithm::Brute
        )
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Algorithm::ALL.iter().map(|a| a.name()).collect();
                format!("unknown algorithm `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// The exact solver for the regime of `inst`, if there is one.
pub fn exact_solver(inst: &Instance) -> Option<Algorithm> {
    match (inst.is_global(), inst.p(), inst.q()) {
        (_, _, 1) => Some(Algorithm::Algorithm1),
        (true, 1, 2) => Some(Algorithm::Greedy12Gcp),
        (false, 1, 2) => Some(Algorithm::Algorithm2),
        (true, 2, 2) => Some(Algorithm::Solve22Gcp),
        _ => None,
    }
}

/// Upper bound on the solution cost backed by an emitted dual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub bound: Rational,
    pub per_phase_duals: Vec<Rational>,
    pub denominator: String,
}

impl From<&RatioCertificate> for Certificate {
    fn from(c: &RatioCertificate) -> Self {
        Certificate {
            bound: c.bound.clone(),
            per_phase_duals: c.per_phase_duals(),
            denominator: c.denominator.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub algorithm: Algorithm,
    pub solution: Solution,
    pub certificate: Option<Certificate>,
}

fn infeasible(inst: &Instance) -> Error {
    let cut_size = min_terminal_cut(inst).map_or(0, |(v, _, _)| v as usize);
    Error::Infeasible {
        cut_size,
        p: inst.p(),
    }
}

/// Runs one named algorithm.
pub fn run(inst: &Instance, algo: Algorithm, limit_cuts: usize) -> Result<Outcome> {
    let certified = |(solution, cert): (Solution, RatioCertificate)| Outcome {
        algorithm: algo,
        certificate: Some(Certificate::from(&cert)),
        solution,
    };
    let plain = |solution: Solution| Outcome {
        algorithm: algo,
        solution,
        certificate: None,
    };
    match algo {
        Algorithm::Algorithm1 => exact::solve_p1(inst).map(plain),
        Algorithm::Algorithm2 => exact::solve_12_scp(inst).map(plain),
        Algorithm::Greedy12Gcp => exact::greedy_12_gcp(inst).map(plain),
        Algorithm::Solve22Gcp => exact::solve_22_gcp(inst).map(plain),
        Algorithm::PrimalDual => approx::primal_dual_1q(inst).map(certified),
        Algorithm::Phases => approx::solve_pq_scp(inst).map(certified),
        Algorithm::SetCover => approx::solve_pq_gcp(inst, limit_cuts).map(certified),
        Algorithm::HittingSet => approx::hitting_set_constant_q(inst).map(|r| Outcome {
            algorithm: algo,
            certificate: Some(Certificate {
                per_phase_duals: vec![r.dual_total()],
                bound: r.bound.clone(),
                denominator: r.denominator.to_string(),
            }),
            solution: r.solution,
        }),
        Algorithm::Brute => match brute_optimum(inst)? {
            BruteOptimum::Optimal(x) => Ok(plain(x)),
            BruteOptimum::Infeasible => Err(infeasible(inst)),
        },
    }
}

fn skippable(e: &Error) -> bool {
    matches!(
        e,
        Error::Unsupported(_) | Error::BudgetExceeded(_) | Error::CutLimitExceeded { .. }
    )
}

/// The exact solver of the regime, or else the cheapest certified
/// approximation (ties go to the earlier one in [`Algorithm::CERTIFIED`]).
pub fn solve_default(inst: &Instance, limit_cuts: usize) -> Result<Outcome> {
    if let Some(algo) = exact_solver(inst) {
        return run(inst, algo, limit_cuts);
    }
    let mut best: Option<Outcome> = None;
    let mut first_error = None;
    for algo in Algorithm::CERTIFIED {
        match run(inst, algo, limit_cuts) {
            Ok(out) => {
                if best
                    .as_ref()
                    .map_or(true, |b| out.solution.total_cost() < b.solution.total_cost())
                {
                    best = Some(out);
                }
            }
            Err(e) if skippable(&e) => {
                first_error.get_or_insert(e);
            }
            Err(e) => return Err(e),
        }
    }
    best.ok_or_else(|| {
        first_error.unwrap_or_else(|| Error::Unsupported("no applicable algorithm".into()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use connpres_core::{MultiGraph, Terminals};

    #[test]
    fn names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!("simplex".parse::<Algorithm>().is_err());
    }

    #[test]
    fn four_cycle_goes_to_greedy() {
        let g = MultiGraph::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let inst = Instance::unit(g, Terminals::Global, 1, 2).unwrap();
        let out = solve_default(&inst, approx::DEFAULT_CUT_LIMIT).unwrap();
        assert_eq!(out.algorithm, Algorithm::Greedy12Gcp);
        assert_eq!(out.solution.total_cost(), 3);
    }

    #[test]
    fn approximation_regime() {
        let g = MultiGraph::from_pairs(2, &vec![(0, 1); 3]).unwrap();
        let inst = Instance::new(g, vec![1, 2, 4], Terminals::St(0, 1), 2, 2).unwrap();
        let out = solve_default(&inst, approx::DEFAULT_CUT_LIMIT).unwrap();
        assert!(!out.algorithm.is_exact());
        assert!(out.certificate.is_some());
    }
}
