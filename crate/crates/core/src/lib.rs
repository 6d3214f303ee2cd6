//! Numerical simulation of anyon braiding by adiabatic control of pairwise
//! couplings.
//!
//! The library is organised bottom-up:
//!
//! * [`anyon`]: fusion rules, F- and R-symbols, consistency checks.
//! * [`fusion_space`]: the four-anyon T-junction fusion basis, pair
//!   projectors and the exchange generator.
//! * [`tjunction`]: T-junction Hamiltonians and their ground spaces.
//! * [`adiabatic`]: coupling schedules, Wilson-line holonomies and real-time
//!   evolution.
//! * [`chains`]: staggered anyon chains, effective-coupling scaling and the
//!   domain-wall braid.
//!
//! Every numerical type is generic over the real scalar `T` ([`Real`],
//! implemented for `f32` and `f64`). The `f64` instantiations are exported
//! at the crate root under short names, and the `f32` ones with an `F32`
//! suffix.

pub mod adiabatic;
pub mod anyon;
pub mod chains;
pub mod error;
pub mod fit;
pub mod fusion_space;
pub mod linalg;
pub mod scalar;
pub mod tjunction;

pub use anyon::{BuiltinModel, ChargeLabel};
pub use error::{Error, Result};
pub use fusion_space::{Chirality, Pair};
pub use scalar::Real;

pub type AnyonModel = anyon::AnyonModel<f64>;
pub type FusionTreeBasis = fusion_space::FusionTreeBasis<f64>;
pub type OperatorMatrix = linalg::OperatorMatrix<f64>;
pub type CouplingSchedule = adiabatic::CouplingSchedule<f64>;
pub type HolonomyResult = adiabatic::HolonomyResult<f64>;
pub type SpectrumReport = tjunction::SpectrumReport<f64>;
pub type LinearFusionBasis = chains::LinearFusionBasis<f64>;

pub type AnyonModelF32 = anyon::AnyonModel<f32>;
pub type FusionTreeBasisF32 = fusion_space::FusionTreeBasis<f32>;
pub type OperatorMatrixF32 = linalg::OperatorMatrix<f32>;
pub type CouplingScheduleF32 = adiabatic::CouplingSchedule<f32>;
pub type HolonomyResultF32 = adiabatic::HolonomyResult<f32>;
pub type SpectrumReportF32 = tjunction::SpectrumReport<f32>;
pub type LinearFusionBasisF32 = chains::LinearFusionBasis<f32>;

/// Crate version string recorded in run results.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
