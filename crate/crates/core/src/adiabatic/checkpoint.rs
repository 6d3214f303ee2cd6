use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::anyon::ChargeLabel;
use crate::error::{Error, Result};
use crate::fusion_space::{Chirality, FusionTreeBasis};
use crate::linalg::CMatrix;
use crate::scalar::{c_one, Real};

/// Step boundaries of the T-junction cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CheckpointTag {
    /// Start: only `B` coupled.
    T0,
    /// After step 1: only `L` coupled.
    T1,
    /// After step 2: only `R` coupled.
    T2,
    /// After step 3: only `B` coupled again.
    T3,
}

impl CheckpointTag {
    pub const ALL: [CheckpointTag; 4] = [CheckpointTag::T0, CheckpointTag::T1, CheckpointTag::T2, CheckpointTag::T3];
}

impl fmt::Display for CheckpointTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckpointTag::T0 => "t0",
            CheckpointTag::T1 => "t1T",
            CheckpointTag::T2 => "t2T",
            CheckpointTag::T3 => "t3T",
        })
    }
}

impl FromStr for CheckpointTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "t0" => Ok(CheckpointTag::T0),
            "t1T" | "T" => Ok(CheckpointTag::T1),
            "t2T" | "2T" => Ok(CheckpointTag::T2),
            "t3T" | "3T" => Ok(CheckpointTag::T3),
            _ => Err(Error::InvalidArgument(format!("unknown checkpoint `{s}`"))),
        }
    }
}

/// Closed-form ground states at one step boundary, one per total charge.
#[derive(Clone, Debug)]
pub struct CheckpointStates<T: Real> {
    pub tag: CheckpointTag,
    /// Total charge of each column of `states`, ascending.
    pub sectors: Vec<ChargeLabel>,
    pub states: CMatrix<T>,
}

/// Ground states of the T-junction at the boundaries of the braid cycle,
/// written in the `|x₁, x₂, x_tot⟩` basis with `g = t × a`:
///
/// * `t0`: `B` and `C` fuse to `a`, so `x₁ = x_tot × ā`;
///   amplitudes `F^{tat}_{x_tot}[g][g] · R̄_{x₁} · conj(F^{tta}_{x_tot}[x₁][g]) · conj(F^{x₁tt}_{x_tot}[x₂][a])`.
/// * `t1T`: `L` and `C` fuse to `a`, so `x₂ = g`; amplitudes `R̄_{x₁} · conj(F^{ttt}_g[x₁][a])`.
/// * `t2T`: `R` and `C` fuse to `a`; amplitudes `conj(F^{ttt}_g[x₁][a])`.
/// * `t3T`: as `t0` without the exchange phase `R̄_{x₁}`.
///
/// Here `R̄_{x₁}` is the inverse of the exchange phase `R^{tt}_{x₁}` of the
/// given chirality. With these phase choices the cycle maps `t0` states to
/// `t3T` states up to a phase common to all sectors, and
/// `⟨Ψ_{x_tot}(0)|Ψ_{x_tot}(3T)⟩ = R^{tt}_{x₁}`.
pub fn analytic_checkpoint_states<T: Real>(
    basis: &FusionTreeBasis<T>,
    tag: CheckpointTag,
    chirality: Chirality,
    favored: ChargeLabel,
) -> Result<CheckpointStates<T>> {
    let model = basis.model();
    basis.check_channel(favored)?;
    if !model.is_abelian(favored) {
        return Err(Error::NotAbelian(model.label_name(favored).to_string()));
    }
    let t = basis.charge();
    let a = favored;
    let g = model
        .unique_fusion(t, a)
        .ok_or_else(|| Error::NotAbelian(model.label_name(a).to_string()))?;
    let exchange_inv = |x1: ChargeLabel| chirality.exchange(model, t, t, x1).conj();

    let mut columns: Vec<(ChargeLabel, Vec<Complex<T>>)> = Vec::new();
    let mut push = |xtot: ChargeLabel, amp: &dyn Fn(ChargeLabel, ChargeLabel) -> Option<Complex<T>>| {
        let v: Vec<Complex<T>> = basis
            .states()
            .iter()
            .map(|&[x1, x2, xt]| {
                if xt == xtot {
                    amp(x1, x2).unwrap_or_default()
                } else {
                    Complex::default()
                }
            })
            .collect();
        let norm = v.iter().map(|z| z.norm_sqr()).fold(T::zero(), |acc, x| acc + x);
        if norm > T::noise_floor() {
            columns.push((xtot, v));
        }
    };

    for xtot in model.charges() {
        match tag {
            CheckpointTag::T0 | CheckpointTag::T3 => {
                let Some(x1) = model.charges().find(|&x| model.fuses(t, t, x) && model.fuses(x, a, xtot)) else {
                    continue;
                };
                let with_exchange = tag == CheckpointTag::T0;
                let prefactor = model.f(t, a, t, xtot, g, g)
                    * model.f(t, t, a, xtot, x1, g).conj()
                    * if with_exchange { exchange_inv(x1) } else { c_one() };
                push(xtot, &|y1, x2| {
                    (y1 == x1).then(|| prefactor * model.f(x1, t, t, xtot, x2, a).conj())
                });
            }
            CheckpointTag::T1 | CheckpointTag::T2 => {
                if !model.fuses(g, t, xtot) {
                    continue;
                }
                let with_exchange = tag == CheckpointTag::T1;
                push(xtot, &|x1, x2| {
                    (x2 == g).then(|| {
                        model.f(t, t, t, g, x1, a).conj() * if with_exchange { exchange_inv(x1) } else { c_one() }
                    })
                });
            }
        }
    }

    let dim = basis.dim();
    let mut states = CMatrix::zeros(dim, columns.len());
    for (k, (_, v)) in columns.iter().enumerate() {
        for (i, z) in v.iter().enumerate() {
            states[(i, k)] = *z;
        }
    }
    Ok(CheckpointStates {
        tag,
        sectors: columns.iter().map(|(x, _)| *x).collect(),
        states,
    })
}
