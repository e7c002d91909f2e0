//! Approximation algorithms with dual certificates.
//!
//! The phase algorithms build `X_0 = ∅ ⊆ X_1 ⊆ ... ⊆ X_p`; phase `i` adds an
//! edge to every critical cut that has exactly `i - 1` edges of `X_{i-1}`.
//! Each phase emits a dual for its covering LP, and the dual is lifted to the
//! cut LP of the whole problem (`max Σ p·y_S − Σ z_e` subject to
//! `Σ_{S ∋ e} y_S − z_e ≤ c_e`) by setting `z_e = Σ_{S ∋ e} y_S` on
//! `X_{i-1}`. The lifted objective is `(p − i + 1)·Σ y_S`, so
//! `Opt ≥ (p − i + 1)·Σ y_S` for every phase.

mod hitting;
mod primal_dual;
mod setcover;

pub use hitting::{hitting_set_constant_q, HittingSetResult, HITTING_SET_MAX_Q, HITTING_SET_MAX_SUBSETS};
pub use primal_dual::{primal_dual_1q, solve_pq_scp};
pub use setcover::{solve_pq_gcp, DEFAULT_CUT_LIMIT};

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::instance::Instance;
use crate::multigraph::{Cut, EdgeId};

pub type Rational = BigRational;

pub(crate) fn rat(n: u64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `1 + 1/2 + ... + 1/k`.
pub fn harmonic(k: usize) -> Rational {
    (1..=k).fold(Rational::zero(), |acc, j| acc + Rational::new(BigInt::one(), BigInt::from(j)))
}

/// Dual solution of the cut LP: `y` over cuts, `z` over edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSolution {
    pub y: Vec<(Cut, Rational)>,
    pub z: BTreeMap<EdgeId, Rational>,
    pub objective: Rational,
}

impl DualSolution {
    /// Sum of the `y` values.
    pub fn y_total(&self) -> Rational {
        self.y.iter().fold(Rational::zero(), |acc, (_, v)| acc + v)
    }

    /// Checks `y, z ≥ 0` and `Σ_{S ∋ e} y_S − z_e ≤ c_e` for every edge, by
    /// direct summation over the support.
    pub fn is_feasible(&self, inst: &Instance) -> bool {
        if self.y.iter().any(|(_, v)| v.is_negative()) || self.z.values().any(|v| v.is_negative()) {
            return false;
        }
        let g = inst.graph();
        g.edges().iter().enumerate().all(|(p, e)| {
            let load = self
                .y
                .iter()
                .filter(|(cut, _)| cut.crossing.binary_search(&e.id).is_ok())
                .fold(Rational::zero(), |acc, (_, v)| acc + v);
            let z = self.z.get(&e.id).cloned().unwrap_or_else(Rational::zero);
            load - z <= rat(inst.cost_at(p))
        })
    }

    /// `p·Σ y − Σ z`.
    pub fn lp_objective(&self, p: usize) -> Rational {
        rat(p as u64) * self.y_total() - self.z.values().fold(Rational::zero(), |a, v| a + v)
    }

    /// Smallest common denominator of all values.
    pub fn denominator(&self) -> BigInt {
        self.y
            .iter()
            .map(|(_, v)| v)
            .chain(self.z.values())
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
    }
}

/// Lifts a phase dual over cuts to the cut LP, charging `z_e = Σ_{S ∋ e} y_S`
/// to every edge of `x_prev`.
pub fn lift_phase_dual(inst: &Instance, y: Vec<(Cut, Rational)>, x_prev: &BTreeSet<EdgeId>) -> DualSolution {
    let mut z: BTreeMap<EdgeId, Rational> = BTreeMap::new();
    for (cut, v) in &y {
        for id in &cut.crossing {
            if x_prev.contains(id) && !v.is_zero() {
                *z.entry(*id).or_insert_with(Rational::zero) += v;
            }
        }
    }
    let mut dual = DualSolution {
        y,
        z,
        objective: Rational::zero(),
    };
    dual.objective = dual.lp_objective(inst.p());
    dual
}

/// Accounting for one phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseCertificate {
    pub phase: usize,
    /// The phase dual lifted to the cut LP.
    pub dual: DualSolution,
    /// `Σ y` of the phase dual.
    pub dual_total: Rational,
    /// Multiplier with `c(Y_i) ≤ factor · dual_total`.
    pub factor: Rational,
    /// Edges added in this phase.
    pub added: Vec<EdgeId>,
    pub added_cost: u64,
}

impl PhaseCertificate {
    pub fn bound(&self) -> Rational {
        &self.factor * &self.dual_total
    }

    /// `Opt ≥ (p − i + 1)·Σ y`.
    pub fn lower_bound(&self, p: usize) -> Rational {
        rat((p + 1 - self.phase) as u64) * &self.dual_total
    }
}

/// Certified upper bound on the cost of a phase solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioCertificate {
    /// `Σ_i factor_i · Σ y^(i)`; at least the solution cost.
    pub bound: Rational,
    pub phases: Vec<PhaseCertificate>,
    /// Common denominator of every dual value.
    pub denominator: BigInt,
    /// Largest per-phase lower bound on `Opt`.
    pub lower_bound: Rational,
}

impl RatioCertificate {
    pub(crate) fn from_phases(p: usize, phases: Vec<PhaseCertificate>) -> Self {
        let bound = phases.iter().fold(Rational::zero(), |acc, ph| acc + ph.bound());
        let denominator = phases
            .iter()
            .fold(BigInt::one(), |acc, ph| acc.lcm(&ph.dual.denominator()).lcm(ph.factor.denom()));
        let lower_bound = phases
            .iter()
            .map(|ph| ph.lower_bound(p))
            .max()
            .unwrap_or_else(Rational::zero);
        RatioCertificate {
            bound,
            phases,
            denominator,
            lower_bound,
        }
    }

    pub fn per_phase_duals(&self) -> Vec<Rational> {
        self.phases.iter().map(|ph| ph.dual_total.clone()).collect()
    }

    /// Re-verifies every phase: lifted dual feasibility, the lifted objective
    /// identity, and the phase cost bound. Returns the first failing phase.
    pub fn verify(&self, inst: &Instance) -> core::result::Result<(), usize> {
        for ph in &self.phases {
            let expected = rat((inst.p() + 1 - ph.phase) as u64) * &ph.dual_total;
            if !ph.dual.is_feasible(inst)
                || ph.dual.objective != expected
                || ph.dual.lp_objective(inst.p()) != expected
                || ph.dual.y_total() != ph.dual_total
                || rat(ph.added_cost) > ph.bound()
            {
                return Err(ph.phase);
            }
        }
        Ok(())
    }
}
