//! T-junction Hamiltonians `H = -Σ_K Σ_i ε_{i,K} Π^K_i` and their spectra.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::anyon::ChargeLabel;
use crate::error::{Error, Result};
use crate::fusion_space::{Chirality, FusionTreeBasis, Pair};
use crate::linalg::{CMatrix, Eigensystem, OperatorMatrix};
use crate::scalar::{max, Real};

/// Default relative tolerance for grouping eigenvalues into a degenerate
/// ground level.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// Pair couplings `ε_{i,K}` together with the favoured Abelian channel `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingConfig<T: Real> {
    pub eps: BTreeMap<(Pair, ChargeLabel), T>,
    pub favored: ChargeLabel,
}

impl<T: Real> CouplingConfig<T> {
    /// All couplings zero.
    pub fn new(favored: ChargeLabel) -> Self {
        Self {
            eps: BTreeMap::new(),
            favored,
        }
    }

    /// Couplings on the favoured channel only, in `[L, R, B]` order.
    pub fn favored_only(favored: ChargeLabel, eps: [T; 3]) -> Self {
        let mut c = Self::new(favored);
        for (pair, e) in Pair::ALL.into_iter().zip(eps) {
            c.eps.insert((pair, favored), e);
        }
        c
    }

    pub fn with(mut self, pair: Pair, channel: ChargeLabel, eps: T) -> Self {
        self.eps.insert((pair, channel), eps);
        self
    }

    pub fn get(&self, pair: Pair, channel: ChargeLabel) -> T {
        self.eps.get(&(pair, channel)).copied().unwrap_or_else(T::zero)
    }

    /// Multiplies every coupling of each pair by the matching factor in
    /// `[L, R, B]` order.
    pub fn scaled(&self, factors: [T; 3]) -> Self {
        let mut c = self.clone();
        for ((pair, _), e) in c.eps.iter_mut() {
            *e *= factors[pair.index()];
        }
        c
    }

    pub fn validate(&self, basis: &FusionTreeBasis<T>) -> Result<()> {
        let model = basis.model();
        model.check_label(self.favored)?;
        basis.check_channel(self.favored)?;
        if !model.is_abelian(self.favored) {
            return Err(Error::NotAbelian(model.label_name(self.favored).to_string()));
        }
        for (&(pair, channel), e) in &self.eps {
            basis.check_channel(channel)?;
            if !e.is_finite() {
                return Err(Error::InvalidArgument(format!(
                    "coupling for pair {pair} channel {} is not finite",
                    model.label_name(channel)
                )));
            }
        }
        Ok(())
    }
}

/// `H = -Σ_{K,i} ε_{i,K} Π^K_i`.
pub fn build_hamiltonian<T: Real>(
    basis: &FusionTreeBasis<T>,
    config: &CouplingConfig<T>,
    chirality: Chirality,
) -> Result<OperatorMatrix<T>> {
    config.validate(basis)?;
    let mut h = OperatorMatrix::zeros(basis.sectors().clone());
    for (&(pair, channel), &e) in &config.eps {
        if e != T::zero() {
            h.add_scaled(-e, &basis.pair_projector(pair, channel, chirality)?);
        }
    }
    Ok(h)
}

/// Spectrum of a Hamiltonian with its lowest degenerate level resolved.
#[derive(Clone, Debug)]
pub struct SpectrumReport<T: Real> {
    pub eigenvalues: Vec<T>,
    pub ground_energy: T,
    pub ground_degeneracy: usize,
    /// Orthonormal ground states as columns; each is supported in a single
    /// total-charge sector, listed in `ground_sectors`.
    pub ground_basis: CMatrix<T>,
    pub ground_sectors: Vec<ChargeLabel>,
    /// First excited level minus the ground level; zero when the whole
    /// spectrum is degenerate.
    pub gap: T,
}

/// Full Hermitian diagonalization. The ground level collects every
/// eigenvalue within `rel_tol` times the spectral span of the minimum.
pub fn ground_space<T: Real>(h: &OperatorMatrix<T>, rel_tol: f64) -> Result<SpectrumReport<T>> {
    let residual = h.hermiticity_residual();
    if residual > T::tol(1e-12) * max(T::one(), h.max_abs()) {
        return Err(Error::NonHermitian {
            residual: residual.as_f64(),
        });
    }
    Ok(spectrum_report(h.eigen(), T::lit(rel_tol)))
}

pub(crate) fn spectrum_report<T: Real>(eig: Eigensystem<T>, rel_tol: T) -> SpectrumReport<T> {
    let k = eig.ground_multiplicity(rel_tol);
    SpectrumReport {
        ground_energy: eig.values.first().copied().unwrap_or_else(T::zero),
        ground_degeneracy: k,
        ground_basis: eig.lowest(k),
        ground_sectors: eig.sectors[..k].to_vec(),
        gap: eig.gap_above(k),
        eigenvalues: eig.values,
    }
}

/// One grid point of [`degeneracy_profile`].
#[derive(Clone, Debug, PartialEq)]
pub struct ProfilePoint<T> {
    /// Scaling factors `(s_L, s_R, s_B)`.
    pub scale: [T; 3],
    pub ground_degeneracy: usize,
    pub gap: T,
}

/// Scales the `L`, `R`, `B` couplings of `base` independently over a
/// `grid × grid × grid` lattice on `[0, 1]³` and records the ground
/// degeneracy at each point. Points are ordered with `s_B` varying fastest.
pub fn degeneracy_profile<T: Real>(
    basis: &FusionTreeBasis<T>,
    base: &CouplingConfig<T>,
    grid: usize,
    chirality: Chirality,
    rel_tol: f64,
) -> Result<Vec<ProfilePoint<T>>> {
    if grid < 2 {
        return Err(Error::InvalidArgument(format!("grid must be at least 2, got {grid}")));
    }
    config_terms(basis, base, chirality).and_then(|terms| {
        let step = T::one() / T::lit((grid - 1) as f64);
        let points: Vec<[T; 3]> = (0..grid.pow(3))
            .map(|i| {
                let (l, r, b) = (i / (grid * grid), (i / grid) % grid, i % grid);
                [l, r, b].map(|k| T::lit(k as f64) * step)
            })
            .collect();
        points
            .into_par_iter()
            .map(|scale| {
                let mut h = OperatorMatrix::zeros(basis.sectors().clone());
                for (k, term) in terms.iter().enumerate() {
                    h.add_scaled(scale[k], term);
                }
                let report = ground_space(&h, rel_tol)?;
                Ok(ProfilePoint {
                    scale,
                    ground_degeneracy: report.ground_degeneracy,
                    gap: report.gap,
                })
            })
            .collect()
    })
}

/// The Hamiltonian contribution of each pair, in `[L, R, B]` order.
fn config_terms<T: Real>(
    basis: &FusionTreeBasis<T>,
    config: &CouplingConfig<T>,
    chirality: Chirality,
) -> Result<Vec<OperatorMatrix<T>>> {
    config.validate(basis)?;
    Pair::ALL
        .into_iter()
        .map(|pair| {
            let mut h = OperatorMatrix::zeros(basis.sectors().clone());
            for (&(p, channel), &e) in &config.eps {
                if p == pair && e != T::zero() {
                    h.add_scaled(-e, &basis.pair_projector(pair, channel, chirality)?);
                }
            }
            Ok(h)
        })
        .collect()
}
