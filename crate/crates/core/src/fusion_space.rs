//! The fusion space of four identical anyons `L, R, C, B` in the T-junction,
//! in the basis `|x₁, x₂, x_tot⟩ = |(((L R)_{x₁} C)_{x₂} B)_{x_tot}⟩`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::anyon::{AnyonModel, ChargeLabel};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, OperatorMatrix};
use crate::scalar::Real;

/// One of the three outer anyons coupled to the central anyon `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pair {
    L,
    R,
    B,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::L, Pair::R, Pair::B];

    /// Position in `[L, R, B]`, the channel order of T-junction schedules.
    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Pair::L => "L",
            Pair::R => "R",
            Pair::B => "B",
        };
        f.write_str(s)
    }
}

/// Handedness of the exchange: `Plus` uses `R`, `Minus` uses `R⁻¹`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chirality {
    #[default]
    Plus,
    Minus,
}

impl Chirality {
    pub fn flipped(self) -> Self {
        match self {
            Chirality::Plus => Chirality::Minus,
            Chirality::Minus => Chirality::Plus,
        }
    }

    /// `R^{ab}_c` or its conjugate.
    pub fn exchange<T: Real>(self, model: &AnyonModel<T>, a: ChargeLabel, b: ChargeLabel, c: ChargeLabel) -> Complex<T> {
        let r = model.r(a, b, c);
        match self {
            Chirality::Plus => r,
            Chirality::Minus => r.conj(),
        }
    }
}

impl FromStr for Chirality {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "plus" | "+" => Ok(Chirality::Plus),
            "minus" | "-" => Ok(Chirality::Minus),
            _ => Err(Error::InvalidArgument(format!("unknown chirality `{s}`"))),
        }
    }
}

/// Basis state `(x₁, x₂, x_tot)`.
pub type TreeState = [ChargeLabel; 3];

/// Exhaustive list of admissible fusion paths for four anyons of charge `t`,
/// ordered lexicographically in `(x_tot, x₂, x₁)`.
#[derive(Clone, Debug)]
pub struct FusionTreeBasis<T: Real> {
    model: Arc<AnyonModel<T>>,
    t: ChargeLabel,
    states: Vec<TreeState>,
    index: HashMap<TreeState, usize>,
    sectors: Arc<[ChargeLabel]>,
}

impl<T: Real> FusionTreeBasis<T> {
    pub fn enumerate(model: impl Into<Arc<AnyonModel<T>>>, t: ChargeLabel) -> Result<Self> {
        let model = model.into();
        model.check_label(t)?;
        let mut states = Vec::new();
        for xtot in model.charges() {
            for x2 in model.charges() {
                if !model.fuses(x2, t, xtot) {
                    continue;
                }
                for x1 in model.charges() {
                    if model.fuses(t, t, x1) && model.fuses(x1, t, x2) {
                        states.push([x1, x2, xtot]);
                    }
                }
            }
        }
        if states.is_empty() {
            return Err(Error::EmptyBasis(model.label_name(t).to_string()));
        }
        let index = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let sectors = states.iter().map(|s| s[2]).collect::<Vec<_>>().into();
        Ok(Self {
            model,
            t,
            states,
            index,
            sectors,
        })
    }

    pub fn model(&self) -> &Arc<AnyonModel<T>> {
        &self.model
    }

    pub fn charge(&self) -> ChargeLabel {
        self.t
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[TreeState] {
        &self.states
    }

    pub fn index_of(&self, state: TreeState) -> Option<usize> {
        self.index.get(&state).copied()
    }

    /// Total charge of every basis state.
    pub fn sectors(&self) -> &Arc<[ChargeLabel]> {
        &self.sectors
    }

    /// Admissible fusion channels of two of the external anyons.
    pub fn channels(&self) -> Vec<ChargeLabel> {
        self.model.fusion_channels(self.t, self.t)
    }

    pub fn check_channel(&self, channel: ChargeLabel) -> Result<ChargeLabel> {
        if channel.index() < self.model.rank() && self.model.fuses(self.t, self.t, channel) {
            Ok(channel)
        } else {
            let name = |l: ChargeLabel| self.model.label_name(l).to_string();
            Err(Error::InvalidChannel {
                channel: if channel.index() < self.model.rank() {
                    name(channel)
                } else {
                    channel.to_string()
                },
                a: name(self.t),
                b: name(self.t),
            })
        }
    }

    fn operator(&self, entry: impl Fn(TreeState, TreeState) -> Complex<T>) -> OperatorMatrix<T> {
        let n = self.dim();
        let m = CMatrix::from_fn(n, n, |i, j| entry(self.states[i], self.states[j]));
        OperatorMatrix::new(m, self.sectors.clone())
    }

    /// Projector `Π^K_c` onto fusion channel `c` of the central anyon with
    /// outer anyon `K`.
    ///
    /// `B` and `R` are obtained with one F-move each; `L` is the `R`
    /// projector conjugated by the exchange of `L` and `R`,
    /// `Π^L = R_LR⁻¹ Π^R R_LR`.
    pub fn pair_projector(&self, pair: Pair, channel: ChargeLabel, chirality: Chirality) -> Result<OperatorMatrix<T>> {
        self.check_channel(channel)?;
        let m = &*self.model;
        let t = self.t;
        let op = match pair {
            Pair::B => self.operator(|[x1r, x2r, xr], [x1c, x2c, xc]| {
                if x1r != x1c || xr != xc {
                    return Complex::new(T::zero(), T::zero());
                }
                m.f(x1c, t, t, xc, x2r, channel).conj() * m.f(x1c, t, t, xc, x2c, channel)
            }),
            Pair::R | Pair::L => self.operator(|[x1r, x2r, xr], [x1c, x2c, xc]| {
                if x2r != x2c || xr != xc {
                    return Complex::new(T::zero(), T::zero());
                }
                let p = m.f(t, t, t, x2c, x1r, channel).conj() * m.f(t, t, t, x2c, x1c, channel);
                if pair == Pair::L {
                    chirality.exchange(m, t, t, x1r).conj() * p * chirality.exchange(m, t, t, x1c)
                } else {
                    p
                }
            }),
        };
        Ok(op)
    }

    /// The exchange `R_LR`: diagonal with `R^{tt}_{x₁}` on each state.
    pub fn braid_generator(&self, chirality: Chirality) -> OperatorMatrix<T> {
        let diag: Vec<_> = self
            .states
            .iter()
            .map(|s| chirality.exchange(&self.model, self.t, self.t, s[0]))
            .collect();
        OperatorMatrix::from_diagonal(&diag, self.sectors.clone())
    }

    /// Formats a state with label names, e.g. `(tau,1,tau)`.
    pub fn describe(&self, state: TreeState) -> String {
        let n: Vec<&str> = state.iter().map(|&l| self.model.label_name(l)).collect();
        format!("({})", n.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anyon::BuiltinModel;

    fn basis(which: BuiltinModel, t: &str) -> FusionTreeBasis<f64> {
        let m = AnyonModel::builtin(which);
        let t = m.label(t).unwrap();
        FusionTreeBasis::enumerate(m, t).unwrap()
    }

    fn names(b: &FusionTreeBasis<f64>) -> Vec<String> {
        b.states().iter().map(|&s| b.describe(s)).collect()
    }

    #[test]
    fn fibonacci_basis_has_five_states() {
        let b = basis(BuiltinModel::Fibonacci, "tau");
        assert_eq!(
            names(&b),
            ["(1,tau,1)", "(tau,tau,1)", "(tau,1,tau)", "(1,tau,tau)", "(tau,tau,tau)"]
        );
    }

    #[test]
    fn ising_basis_has_four_states() {
        let b = basis(BuiltinModel::Ising, "sigma");
        assert_eq!(
            names(&b),
            ["(1,sigma,1)", "(psi,sigma,1)", "(1,sigma,psi)", "(psi,sigma,psi)"]
        );
    }

    #[test]
    fn z2_basis_is_one_dimensional() {
        let b = basis(BuiltinModel::AbelianZ2, "psi");
        assert_eq!(names(&b), ["(1,psi,1)"]);
        let r = b.braid_generator(Chirality::Plus);
        assert!((r.entry(0, 0) - Complex::new(-1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn invalid_channel_is_rejected() {
        let b = basis(BuiltinModel::Ising, "sigma");
        let sigma = b.model().label("sigma").unwrap();
        assert!(matches!(
            b.pair_projector(Pair::B, sigma, Chirality::Plus),
            Err(Error::InvalidChannel { .. })
        ));
    }

    #[test]
    fn fibonacci_b_vacuum_projector_has_rank_two() {
        let b = basis(BuiltinModel::Fibonacci, "tau");
        let p = b.pair_projector(Pair::B, ChargeLabel::VACUUM, Chirality::Plus).unwrap();
        assert_eq!(p.trace_rank(), 2);
    }

    #[test]
    fn ising_r_vacuum_projector_block_has_eigenvalues_zero_one() {
        let b = basis(BuiltinModel::Ising, "sigma");
        let p = b.pair_projector(Pair::R, ChargeLabel::VACUUM, Chirality::Plus).unwrap();
        let eig = p.eigen();
        let ones = eig.values.iter().filter(|v| (*v - 1.0).abs() < 1e-12).count();
        let zeros = eig.values.iter().filter(|v| v.abs() < 1e-12).count();
        assert_eq!((ones, zeros), (2, 2));
    }

    #[test]
    fn fibonacci_braid_phase_ratio() {
        let b = basis(BuiltinModel::Fibonacci, "tau");
        let r = b.braid_generator(Chirality::Plus);
        let ratio = r.entry(0, 0) / r.entry(1, 1);
        let expected = Complex::from_polar(1.0, 7.0 * std::f64::consts::PI / 5.0);
        assert!((ratio - expected).norm() < 1e-12);
        let minus = b.braid_generator(Chirality::Minus);
        assert!(minus.max_abs_diff(&r.adjoint()) < 1e-15);
    }

    #[test]
    fn chirality_parses() {
        assert_eq!("plus".parse::<Chirality>().unwrap(), Chirality::Plus);
        assert_eq!("Minus".parse::<Chirality>().unwrap(), Chirality::Minus);
        assert!("up".parse::<Chirality>().is_err());
    }
}
