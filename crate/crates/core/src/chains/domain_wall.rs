use std::sync::Arc;

use super::{ChainLimits, JunctionChainLayout, LinearFusionBasis};
use crate::adiabatic::{
    evolution_holonomy, wilson_line_holonomy, CouplingSchedule, DrivenHamiltonian, HolonomyOptions, HolonomyResult,
    Ramp, Segment,
};
use crate::anyon::{AnyonModel, ChargeLabel};
use crate::error::{Error, Result};
use crate::fusion_space::Chirality;
use crate::linalg::OperatorMatrix;
use crate::scalar::Real;

/// A staggered T-junction with one projector per bond.
#[derive(Clone, Debug)]
pub struct ChainSystem<T: Real> {
    layout: JunctionChainLayout,
    basis: Arc<LinearFusionBasis<T>>,
    favored: ChargeLabel,
    chirality: Chirality,
    projectors: Vec<OperatorMatrix<T>>,
}

/// How [`ChainSystem::domain_wall_braid`] computes the holonomy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BraidMethod<T> {
    WilsonLine { points_per_move: usize },
    TimeEvolution { dt: T },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DomainWallParams<T> {
    /// Duration of each three-anyon move.
    pub move_time: T,
    pub eps_max: T,
    pub floor: T,
    pub ramp: Ramp,
    pub method: BraidMethod<T>,
}

impl<T: Real> ChainSystem<T> {
    pub fn new(
        model: impl Into<Arc<AnyonModel<T>>>,
        t: ChargeLabel,
        layout: JunctionChainLayout,
        favored: ChargeLabel,
        chirality: Chirality,
        limits: ChainLimits,
    ) -> Result<Self> {
        let model = model.into();
        model.check_label(favored)?;
        if !model.is_abelian(favored) {
            return Err(Error::NotAbelian(model.label_name(favored).to_string()));
        }
        let basis = Arc::new(LinearFusionBasis::enumerate_with(model, t, layout.count(), limits)?);
        let projectors = layout
            .bonds()
            .iter()
            .map(|b| basis.pair_projector_general(b.i, b.j, favored, chirality))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            layout,
            basis,
            favored,
            chirality,
            projectors,
        })
    }

    pub fn layout(&self) -> &JunctionChainLayout {
        &self.layout
    }

    pub fn basis(&self) -> &Arc<LinearFusionBasis<T>> {
        &self.basis
    }

    pub fn favored(&self) -> ChargeLabel {
        self.favored
    }

    pub fn chirality(&self) -> Chirality {
        self.chirality
    }

    /// Projector of each bond, aligned with `layout().bonds()`.
    pub fn projectors(&self) -> &[OperatorMatrix<T>] {
        &self.projectors
    }

    /// `H = −Σ_bonds ε_bond Π_a^{bond}`.
    pub fn hamiltonian(&self, eps_per_bond: &[T]) -> Result<OperatorMatrix<T>> {
        if eps_per_bond.len() != self.projectors.len() {
            return Err(Error::InvalidArgument(format!(
                "expected {} bond couplings, got {}",
                self.projectors.len(),
                eps_per_bond.len()
            )));
        }
        let mut h = OperatorMatrix::zeros(self.basis.sectors().clone());
        for (&e, p) in eps_per_bond.iter().zip(&self.projectors) {
            if !e.is_finite() {
                return Err(Error::InvalidArgument("bond coupling is not finite".into()));
            }
            if e != T::zero() {
                h.add_scaled(-e, p);
            }
        }
        Ok(h)
    }

    /// The exchange of the two unpaired charges: the outer `L` charge is
    /// braided to the position just left of the outer `R` charge, exchanged
    /// with it, and braided back.
    pub fn end_charge_target(&self) -> Result<OperatorMatrix<T>> {
        let reach = 2 * self.layout.arm_lengths()[0];
        let mut s = OperatorMatrix::identity(self.basis.sectors().clone());
        for k in 1..=reach {
            s = self.basis.elementary_braid(k, self.chirality)?.compose(&s);
        }
        let b = self.basis.elementary_braid(reach + 1, self.chirality)?;
        Ok(s.adjoint().compose(&b).compose(&s))
    }

    /// The domain-wall schedule: one segment per move.
    pub fn schedule(&self, move_time: T, eps_max: T, floor: T, ramp: Ramp) -> Result<CouplingSchedule<T>> {
        let segments = self
            .layout
            .moves()
            .into_iter()
            .map(|(off, on)| Segment::Transfer { off, on })
            .collect();
        CouplingSchedule::new(self.layout.initial_on(), segments, move_time, eps_max, floor, ramp)
    }

    pub fn driven(&self, move_time: T, eps_max: T, floor: T, ramp: Ramp) -> Result<DrivenHamiltonian<T>> {
        let model = self.basis.model();
        let t = self.basis.charge();
        DrivenHamiltonian::new(
            self.projectors.clone(),
            self.schedule(move_time, eps_max, floor, ramp)?,
            model.fusion_channels(t, t).len(),
        )
    }

    /// Runs the full braid and compares the ground-space unitary with
    /// `target`.
    pub fn domain_wall_braid(
        &self,
        params: &DomainWallParams<T>,
        target: &OperatorMatrix<T>,
        opts: &HolonomyOptions,
    ) -> Result<HolonomyResult<T>> {
        let h = self.driven(params.move_time, params.eps_max, params.floor, params.ramp)?;
        match params.method {
            BraidMethod::WilsonLine { points_per_move } => {
                let points = points_per_move * h.schedule().segments().len();
                wilson_line_holonomy(&h, points, target, None, opts)
            }
            BraidMethod::TimeEvolution { dt } => evolution_holonomy(&h, dt, target, opts),
        }
    }
}
