//! Adiabatic transport of degenerate ground spaces.
//!
//! A [`DrivenHamiltonian`] is `H(t) = -Σ_k ε_k(t) P_k` with fixed projectors
//! `P_k` and couplings from a [`CouplingSchedule`]. Its ground-space
//! holonomy can be computed in the adiabatic limit as a Wilson line
//! ([`wilson_line_holonomy`]) or at finite speed by integrating the
//! Schrödinger equation ([`time_evolution`]).

mod checkpoint;
mod evolution;
mod holonomy;
mod protocol;
mod schedule;

use crate::anyon::ChargeLabel;
use crate::error::{Error, Result};
use crate::fusion_space::{Chirality, FusionTreeBasis, Pair};
use crate::linalg::{CMatrix, Eigensystem, OperatorMatrix};
use crate::scalar::{arg, c_zero, modulus, Real};

pub use checkpoint::{analytic_checkpoint_states, CheckpointStates, CheckpointTag};
pub use evolution::{evolution_holonomy, extract_braid, time_evolution, BraidFit, Evolution};
pub use holonomy::wilson_line_holonomy;
pub use protocol::{diabatic_error_scan, BraidProtocol, ScanRow};
pub use schedule::{CouplingSchedule, Ramp, Segment};

/// `H(t) = -Σ_k ε_k(t) P_k` together with the dimension of the ground space
/// it is meant to protect.
#[derive(Clone, Debug)]
pub struct DrivenHamiltonian<T: Real> {
    terms: Vec<OperatorMatrix<T>>,
    schedule: CouplingSchedule<T>,
    ground_dim: usize,
}

impl<T: Real> DrivenHamiltonian<T> {
    pub fn new(terms: Vec<OperatorMatrix<T>>, schedule: CouplingSchedule<T>, ground_dim: usize) -> Result<Self> {
        if terms.len() != schedule.channels() {
            return Err(Error::InvalidSchedule(format!(
                "schedule drives {} channels but {} terms were supplied",
                schedule.channels(),
                terms.len()
            )));
        }
        let dim = terms.first().map(|t| t.dim()).unwrap_or(0);
        if dim == 0 || terms.iter().any(|t| t.sectors() != terms[0].sectors()) {
            return Err(Error::InvalidArgument("driven terms must share one non-empty basis".into()));
        }
        if ground_dim == 0 || ground_dim > dim {
            return Err(Error::InvalidArgument(format!(
                "ground dimension {ground_dim} out of range for basis of size {dim}"
            )));
        }
        Ok(Self {
            terms,
            schedule,
            ground_dim,
        })
    }

    /// The T-junction Hamiltonian driven on the favoured channel, with
    /// channels in `[L, R, B]` order.
    pub fn tjunction(
        basis: &FusionTreeBasis<T>,
        favored: ChargeLabel,
        schedule: CouplingSchedule<T>,
        chirality: Chirality,
    ) -> Result<Self> {
        let model = basis.model();
        basis.check_channel(favored)?;
        if !model.is_abelian(favored) {
            return Err(Error::NotAbelian(model.label_name(favored).to_string()));
        }
        let terms = Pair::ALL
            .into_iter()
            .map(|p| basis.pair_projector(p, favored, chirality))
            .collect::<Result<Vec<_>>>()?;
        let n = basis.channels().len();
        Self::new(terms, schedule, n)
    }

    pub fn schedule(&self) -> &CouplingSchedule<T> {
        &self.schedule
    }

    pub fn terms(&self) -> &[OperatorMatrix<T>] {
        &self.terms
    }

    pub fn ground_dim(&self) -> usize {
        self.ground_dim
    }

    pub fn dim(&self) -> usize {
        self.terms[0].dim()
    }

    pub fn sectors(&self) -> &[ChargeLabel] {
        self.terms[0].sectors()
    }

    pub fn hamiltonian(&self, t: T) -> OperatorMatrix<T> {
        let eps = self.schedule.couplings(t);
        let mut h = OperatorMatrix::zeros(self.terms[0].sectors().clone());
        for (e, p) in eps.into_iter().zip(&self.terms) {
            if e != T::zero() {
                h.add_scaled(-e, p);
            }
        }
        h
    }

    pub fn eigen(&self, t: T) -> Eigensystem<T> {
        Eigensystem::hermitian(self.hamiltonian(t).matrix(), self.sectors())
    }

    /// Lowest `ground_dim` eigenvectors at `t`.
    pub fn ground_basis(&self, t: T) -> CMatrix<T> {
        self.eigen(t).lowest(self.ground_dim)
    }

    /// Instantaneous spectra at `samples + 1` equally spaced times.
    pub fn spectrum_series(&self, samples: usize) -> Vec<(T, Vec<T>)> {
        let total = self.schedule.total_time();
        let samples = samples.max(1);
        (0..=samples)
            .map(|k| {
                let t = total * T::lit(k as f64) / T::lit(samples as f64);
                (t, self.eigen(t).values)
            })
            .collect()
    }
}

/// Tolerances for holonomy computations.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HolonomyOptions {
    /// Relative clustering tolerance for the ground level.
    pub rel_tol: f64,
    /// Smallest acceptable gap above the ground space.
    pub gap_threshold: f64,
    /// Largest acceptable leakage when extracting a braid from real-time
    /// evolution.
    pub max_leakage: f64,
}

impl Default for HolonomyOptions {
    fn default() -> Self {
        Self {
            rel_tol: crate::tjunction::DEFAULT_REL_TOL,
            gap_threshold: 1e-8,
            max_leakage: 1e-2,
        }
    }
}

/// Ground-space unitary produced by a closed adiabatic cycle, compared with
/// a target braid.
#[derive(Clone, Debug)]
pub struct HolonomyResult<T: Real> {
    /// Unitary in the ground basis at `t = 0`.
    pub unitary: CMatrix<T>,
    /// Target restricted to the same basis.
    pub target: CMatrix<T>,
    /// `|tr(U† R)| / n`.
    pub fidelity: T,
    /// `arg tr(R† U)`, so that `U ≈ e^{iφ} R`.
    pub global_phase: T,
    pub min_gap: T,
    /// Number of path samples (Wilson line) or time steps (evolution).
    pub discretization: usize,
    /// Per step, `min_θ ‖W − e^{iθ}‖_max` for the step's Wilson line between
    /// reference bases; empty when no reference bases were supplied.
    pub per_step_phase_spread: Vec<T>,
    /// Per step, the common phase `arg tr W`.
    pub step_phases: Vec<T>,
    /// Total charge of each ground basis state.
    pub ground_sectors: Vec<ChargeLabel>,
    /// `arg U_ii` for each ground basis state.
    pub sector_phases: Vec<T>,
    /// Leakage out of the ground space, for real-time evolution.
    pub leakage: Option<T>,
}

impl<T: Real> HolonomyResult<T> {
    pub fn infidelity(&self) -> T {
        T::one() - self.fidelity
    }

    pub fn max_phase_spread(&self) -> Option<T> {
        self.per_step_phase_spread.iter().copied().reduce(|a, b| if b > a { b } else { a })
    }
}

/// `(|tr(U† R)| / n, arg tr(R† U))`.
pub fn compare_unitaries<T: Real>(u: &CMatrix<T>, target: &CMatrix<T>) -> (T, T) {
    let n = u.ncols();
    if n == 0 {
        return (T::one(), T::zero());
    }
    let overlap = u
        .iter()
        .zip(target.iter())
        .fold(c_zero::<T>(), |acc, (a, b)| acc + b.conj() * a);
    (modulus(overlap) / T::lit(n as f64), arg(overlap))
}

/// Distance of `w` from the nearest multiple of the identity:
/// `(‖w − e^{iθ}‖_max, θ)` with `θ = arg tr w`.
pub fn phase_spread<T: Real>(w: &CMatrix<T>) -> (T, T) {
    let theta = arg(w.trace());
    let n = w.nrows();
    let phase = crate::scalar::cis(theta);
    let diff = w - CMatrix::<T>::identity(n, n).map(|z| z * phase);
    (crate::linalg::max_abs(&diff), theta)
}

pub(crate) fn restrict<T: Real>(op: &OperatorMatrix<T>, basis: &CMatrix<T>) -> CMatrix<T> {
    basis.adjoint() * op.matrix() * basis
}
