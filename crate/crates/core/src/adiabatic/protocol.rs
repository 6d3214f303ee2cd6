use std::sync::Arc;

use rayon::prelude::*;

use super::evolution::evolution_holonomy;
use super::{
    analytic_checkpoint_states, wilson_line_holonomy, CheckpointTag, CouplingSchedule, DrivenHamiltonian,
    HolonomyOptions, HolonomyResult, Ramp,
};
use crate::anyon::ChargeLabel;
use crate::error::{Error, Result};
use crate::fusion_space::{Chirality, FusionTreeBasis};
use crate::linalg::{CMatrix, OperatorMatrix};
use crate::scalar::Real;

/// The three-step T-junction braid: schedule parameters, the favoured
/// channel and the exchange it is expected to implement.
#[derive(Clone, Debug)]
pub struct BraidProtocol<T: Real> {
    pub basis: Arc<FusionTreeBasis<T>>,
    pub favored: ChargeLabel,
    pub chirality: Chirality,
    pub eps_max: T,
    pub floor: T,
    pub ramp: Ramp,
    /// Traverse the cycle backwards (`B → R → L → B`).
    pub reverse: bool,
}

impl<T: Real> BraidProtocol<T> {
    /// Forward cycle with `ε_max = 1`, no floor and a cosine ramp.
    pub fn new(basis: impl Into<Arc<FusionTreeBasis<T>>>, favored: ChargeLabel, chirality: Chirality) -> Self {
        Self {
            basis: basis.into(),
            favored,
            chirality,
            eps_max: T::one(),
            floor: T::zero(),
            ramp: Ramp::Cosine,
            reverse: false,
        }
    }

    pub fn schedule(&self, step_time: T) -> Result<CouplingSchedule<T>> {
        let s = CouplingSchedule::default_braid(self.eps_max, step_time, self.floor, self.ramp)?;
        Ok(if self.reverse { s.reversed() } else { s })
    }

    pub fn driven(&self, step_time: T) -> Result<DrivenHamiltonian<T>> {
        DrivenHamiltonian::tjunction(&self.basis, self.favored, self.schedule(step_time)?, self.chirality)
    }

    /// `R_LR` for the forward cycle, `R_LR⁻¹` for the reversed one.
    pub fn target(&self) -> OperatorMatrix<T> {
        let r = self.basis.braid_generator(self.chirality);
        if self.reverse {
            r.adjoint()
        } else {
            r
        }
    }

    /// Analytic ground states at the four step boundaries, in the order the
    /// cycle visits them.
    pub fn checkpoints(&self) -> Result<Vec<CMatrix<T>>> {
        let mut tags = CheckpointTag::ALL.to_vec();
        if self.reverse {
            tags.reverse();
        }
        tags.into_iter()
            .map(|tag| analytic_checkpoint_states(&self.basis, tag, self.chirality, self.favored).map(|s| s.states))
            .collect()
    }

    /// Adiabatic-limit holonomy with per-step spreads measured against the
    /// analytic checkpoint states.
    pub fn wilson_line(&self, points: usize, opts: &HolonomyOptions) -> Result<HolonomyResult<T>> {
        let h = self.driven(T::one())?;
        let refs = self.checkpoints()?;
        wilson_line_holonomy(&h, points, &self.target(), Some(&refs), opts)
    }

    /// Real-time evolution of the initial ground space with steps of length
    /// `step_time`.
    pub fn evolve(&self, step_time: T, dt: T, opts: &HolonomyOptions) -> Result<HolonomyResult<T>> {
        evolution_holonomy(&self.driven(step_time)?, dt, &self.target(), opts)
    }
}

/// One row of [`diabatic_error_scan`].
#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow<T> {
    pub step_time: T,
    pub dt: T,
    pub infidelity: T,
    pub leakage: T,
    pub global_phase: T,
    pub min_gap: T,
}

/// Runs the protocol by real-time evolution for each step duration, with
/// `dt = step_time · dt_ratio`, and reports the braid infidelity and leakage.
/// Runs execute in parallel; rows follow the order of `step_times`.
pub fn diabatic_error_scan<T: Real>(
    protocol: &BraidProtocol<T>,
    step_times: &[T],
    dt_ratio: T,
) -> Result<Vec<ScanRow<T>>> {
    if step_times.is_empty() {
        return Err(Error::InvalidArgument("no step durations given".into()));
    }
    if step_times.iter().any(|&t| !(t > T::zero())) || step_times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("step durations must be positive and ascending".into()));
    }
    let opts = HolonomyOptions {
        max_leakage: 1.0,
        ..HolonomyOptions::default()
    };
    step_times
        .par_iter()
        .map(|&step_time| {
            let dt = step_time * dt_ratio;
            let r = protocol.evolve(step_time, dt, &opts)?;
            Ok(ScanRow {
                step_time,
                dt,
                infidelity: r.infidelity(),
                leakage: r.leakage.unwrap_or_else(T::zero),
                global_phase: r.global_phase,
                min_gap: r.min_gap,
            })
        })
        .collect()
}
