use super::{compare_unitaries, phase_spread, restrict, DrivenHamiltonian, HolonomyOptions, HolonomyResult};
use crate::error::{Error, Result};
use crate::linalg::{unitarize, CMatrix, OperatorMatrix};
use crate::scalar::{arg, Real};

/// Adiabatic-limit holonomy of the ground space along the schedule.
///
/// The path is sampled at `⌈points / steps⌉` equally spaced times per step.
/// At each sample the ground projector `G G†` is applied to the transported
/// frame; the accumulated product, read in the initial ground basis and
/// unitarized, is the holonomy.
///
/// `checkpoints`, when given, holds one reference basis per step boundary
/// (`steps + 1` matrices with `ground_dim` columns). The Wilson line of each
/// step is then also expressed between consecutive references.
pub fn wilson_line_holonomy<T: Real>(
    h: &DrivenHamiltonian<T>,
    points: usize,
    target: &OperatorMatrix<T>,
    checkpoints: Option<&[CMatrix<T>]>,
    opts: &HolonomyOptions,
) -> Result<HolonomyResult<T>> {
    if points < 4 {
        return Err(Error::InvalidArgument(format!("points must be at least 4, got {points}")));
    }
    if target.dim() != h.dim() {
        return Err(Error::InvalidArgument("target and Hamiltonian dimensions differ".into()));
    }
    let schedule = h.schedule();
    let nseg = schedule.segments().len();
    let n = h.ground_dim();
    if let Some(c) = checkpoints {
        if c.len() != nseg + 1 || c.iter().any(|m| m.ncols() != n || m.nrows() != h.dim()) {
            return Err(Error::InvalidArgument(format!(
                "expected {} reference bases of shape {}x{n}",
                nseg + 1,
                h.dim()
            )));
        }
    }
    let per_step = points.div_ceil(nseg);
    let total = per_step * nseg;
    let rel_tol = T::lit(opts.rel_tol);
    let threshold = T::lit(opts.gap_threshold);
    let total_time = schedule.total_time();

    let sample = |t: T| -> Result<(CMatrix<T>, T)> {
        let eig = h.eigen(t);
        let found = eig.ground_multiplicity(rel_tol);
        if found != n {
            return Err(Error::DegeneracyChange {
                time: t.as_f64(),
                expected: n,
                found,
            });
        }
        let gap = eig.gap_above(n);
        if gap < threshold {
            return Err(Error::GapCollapse {
                time: t.as_f64(),
                gap: gap.as_f64(),
                threshold: opts.gap_threshold,
            });
        }
        Ok((eig.lowest(n), gap))
    };

    let (g0, mut min_gap) = sample(T::zero())?;
    let mut frame = g0.clone();
    let mut step_frame = checkpoints.map(|c| c[0].clone());
    let mut spreads = Vec::new();
    let mut phases = Vec::new();
    for k in 1..=total {
        let t = total_time * T::lit(k as f64) / T::lit(total as f64);
        let (g, gap) = sample(t)?;
        if gap < min_gap {
            min_gap = gap;
        }
        frame = &g * (g.adjoint() * &frame);
        if let Some(f) = step_frame.as_mut() {
            *f = &g * (g.adjoint() * &*f);
        }
        if k % per_step == 0 {
            if let (Some(refs), Some(f)) = (checkpoints, step_frame.as_mut()) {
                let s = k / per_step;
                let w = unitarize(&(refs[s].adjoint() * &*f));
                let (spread, theta) = phase_spread(&w);
                spreads.push(spread);
                phases.push(theta);
                if s < nseg {
                    *f = refs[s].clone();
                }
            }
        }
    }

    let unitary = unitarize(&(g0.adjoint() * frame));
    let target = restrict(target, &g0);
    let (fidelity, global_phase) = compare_unitaries(&unitary, &target);
    let eig0 = h.eigen(T::zero());
    Ok(HolonomyResult {
        sector_phases: (0..n).map(|i| arg(unitary[(i, i)])).collect(),
        ground_sectors: eig0.sectors[..n].to_vec(),
        unitary,
        target,
        fidelity,
        global_phase,
        min_gap,
        discretization: total,
        per_step_phase_spread: spreads,
        step_phases: phases,
        leakage: None,
    })
}
