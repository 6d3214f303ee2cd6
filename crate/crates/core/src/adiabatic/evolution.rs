use super::{compare_unitaries, restrict, DrivenHamiltonian, HolonomyOptions, HolonomyResult};
use crate::error::{Error, Result};
use crate::linalg::{unitarize, CMatrix, OperatorMatrix};
use crate::scalar::{arg, Real};

/// States propagated through a schedule.
#[derive(Clone, Debug)]
pub struct Evolution<T: Real> {
    pub final_states: CMatrix<T>,
    /// The states at every step boundary, starting with the initial states.
    pub checkpoints: Vec<CMatrix<T>>,
    /// Lowest `k` eigenvectors of `H` at the final time, where `k` is the
    /// number of evolved states.
    pub final_ground: CMatrix<T>,
    /// `1 − ‖G† ψ‖² / k`, averaged over the evolved states.
    pub leakage: T,
    /// Smallest gap above the lowest `ground_dim` levels met along the way.
    pub min_gap: T,
    pub steps: usize,
}

/// Integrates `i ∂ψ/∂t = H(t) ψ` for the columns of `initial`.
///
/// Each step of the schedule is split into `round(step_time / dt)` slices;
/// each slice applies the exact propagator of `H` at its midpoint. Since
/// every propagator is built from a total-charge-blockwise eigensystem, the
/// evolution never couples different total charges.
pub fn time_evolution<T: Real>(h: &DrivenHamiltonian<T>, dt: T, initial: &CMatrix<T>) -> Result<Evolution<T>> {
    let schedule = h.schedule();
    let step_time = schedule.step_time();
    if !(dt > T::zero() && dt.is_finite()) {
        return Err(Error::StepTooLarge(format!("dt must be positive, got {}", dt.as_f64())));
    }
    let limit = step_time / T::lit(100.0);
    if dt > limit * (T::one() + T::noise_floor()) {
        return Err(Error::StepTooLarge(format!(
            "dt = {} exceeds step_time / 100 = {}",
            dt.as_f64(),
            limit.as_f64()
        )));
    }
    if initial.nrows() != h.dim() || initial.ncols() == 0 {
        return Err(Error::InvalidArgument(format!(
            "initial states must be {} x k with k >= 1",
            h.dim()
        )));
    }
    let slices = (step_time / dt).round().to_usize().unwrap_or(1).max(1);
    let dt = step_time / T::lit(slices as f64);
    let n = h.ground_dim();

    let mut psi = initial.clone();
    let mut checkpoints = vec![psi.clone()];
    let mut min_gap = h.eigen(T::zero()).gap_above(n);
    for seg in 0..schedule.segments().len() {
        let start = schedule.boundary(seg);
        for j in 0..slices {
            let t = start + (T::lit(j as f64) + T::lit(0.5)) * dt;
            let eig = h.eigen(t);
            let radius = eig.spectral_radius();
            if dt * radius > T::lit(0.5) {
                return Err(Error::StepTooLarge(format!(
                    "dt * |H| = {} exceeds 0.5 at t = {}",
                    (dt * radius).as_f64(),
                    t.as_f64()
                )));
            }
            let gap = eig.gap_above(n);
            if gap < min_gap {
                min_gap = gap;
            }
            psi = eig.propagator(dt) * psi;
        }
        checkpoints.push(psi.clone());
    }

    let k = initial.ncols();
    let final_ground = h.eigen(schedule.total_time()).lowest(k);
    let kept = (final_ground.adjoint() * &psi).norm_squared();
    let leakage = T::one() - kept / T::lit(k as f64);
    Ok(Evolution {
        final_states: psi,
        checkpoints,
        final_ground,
        leakage: if leakage < T::zero() { T::zero() } else { leakage },
        min_gap,
        steps: slices * schedule.segments().len(),
    })
}

/// Effective ground-space unitary of an evolution, compared with a target.
#[derive(Clone, Debug)]
pub struct BraidFit<T: Real> {
    pub unitary: CMatrix<T>,
    pub target: CMatrix<T>,
    pub fidelity: T,
    pub global_phase: T,
    pub leakage: T,
}

/// Projects `final_states` (the evolved images of the columns of `ground`)
/// back onto `span(ground)`, unitarizes, and compares with `target`
/// restricted to that span.
///
/// Fails with [`Error::ExcessLeakage`] if more than `max_leakage` of the
/// norm has left the ground space.
pub fn extract_braid<T: Real>(
    final_states: &CMatrix<T>,
    ground: &CMatrix<T>,
    target: &OperatorMatrix<T>,
    max_leakage: f64,
) -> Result<BraidFit<T>> {
    if final_states.shape() != ground.shape() || ground.nrows() != target.dim() {
        return Err(Error::InvalidArgument("final states, ground basis and target have mismatched shapes".into()));
    }
    let n = ground.ncols();
    let projected = ground.adjoint() * final_states;
    let leakage = T::one() - projected.norm_squared() / T::lit(n as f64);
    let leakage = if leakage < T::zero() { T::zero() } else { leakage };
    if leakage.as_f64() > max_leakage {
        return Err(Error::ExcessLeakage {
            leakage: leakage.as_f64(),
            threshold: max_leakage,
        });
    }
    let unitary = unitarize(&projected);
    let target = restrict(target, ground);
    let (fidelity, global_phase) = compare_unitaries(&unitary, &target);
    Ok(BraidFit {
        unitary,
        target,
        fidelity,
        global_phase,
        leakage,
    })
}

/// Evolves the initial ground space through a closed schedule and extracts
/// the resulting braid.
pub fn evolution_holonomy<T: Real>(
    h: &DrivenHamiltonian<T>,
    dt: T,
    target: &OperatorMatrix<T>,
    opts: &HolonomyOptions,
) -> Result<HolonomyResult<T>> {
    let eig0 = h.eigen(T::zero());
    let n = h.ground_dim();
    let g0 = eig0.lowest(n);
    let evo = time_evolution(h, dt, &g0)?;
    let fit = extract_braid(&evo.final_states, &g0, target, opts.max_leakage)?;
    Ok(HolonomyResult {
        sector_phases: (0..n).map(|i| arg(fit.unitary[(i, i)])).collect(),
        ground_sectors: eig0.sectors[..n].to_vec(),
        unitary: fit.unitary,
        target: fit.target,
        fidelity: fit.fidelity,
        global_phase: fit.global_phase,
        min_gap: evo.min_gap,
        discretization: evo.steps,
        per_step_phase_spread: Vec::new(),
        step_phases: Vec::new(),
        leakage: Some(fit.leakage),
    })
}
