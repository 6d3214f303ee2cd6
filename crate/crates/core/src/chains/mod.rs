//! Linear chains of identical anyons fused left to right, the staggered
//! T-junction built from three such chains, and the domain-wall braid.

mod domain_wall;
mod layout;
mod scan;

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex;

use crate::anyon::{AnyonModel, ChargeLabel};
use crate::error::{Error, Result};
use crate::fusion_space::Chirality;
use crate::linalg::{CMatrix, OperatorMatrix};
use crate::scalar::Real;

pub use domain_wall::{BraidMethod, ChainSystem, DomainWallParams};
pub use layout::{Arm, Bond, BondClass, JunctionChainLayout, Site};
pub use scan::{splitting_scan, SplittingRow};

/// Size limits for dense chain computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainLimits {
    pub max_count: usize,
    pub dim_cap: usize,
}

impl Default for ChainLimits {
    fn default() -> Self {
        Self {
            max_count: 14,
            dim_cap: 4096,
        }
    }
}

/// How `pair_projector_general` brings two distant anyons together.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Transport {
    /// Braid the left anyon rightwards until it sits next to the right one.
    #[default]
    MoveLeft,
    /// Braid the right anyon leftwards, with inverse exchanges.
    MoveRight,
}

/// Fusion paths `(((t t)_{c₂} t)_{c₃} … t)_{c_m}` of `m` anyons of charge
/// `t`. States store `(c₂, …, c_m)` and are ordered lexicographically from
/// `c_m` downwards, so the four-anyon chain matches the T-junction basis.
#[derive(Clone, Debug)]
pub struct LinearFusionBasis<T: Real> {
    model: Arc<AnyonModel<T>>,
    t: ChargeLabel,
    count: usize,
    states: Vec<Vec<ChargeLabel>>,
    index: HashMap<Vec<ChargeLabel>, usize>,
    sectors: Arc<[ChargeLabel]>,
}

impl<T: Real> LinearFusionBasis<T> {
    pub fn enumerate(model: impl Into<Arc<AnyonModel<T>>>, t: ChargeLabel, count: usize) -> Result<Self> {
        Self::enumerate_with(model, t, count, ChainLimits::default())
    }

    pub fn enumerate_with(
        model: impl Into<Arc<AnyonModel<T>>>,
        t: ChargeLabel,
        count: usize,
        limits: ChainLimits,
    ) -> Result<Self> {
        let model = model.into();
        model.check_label(t)?;
        if count < 2 || count > limits.max_count {
            return Err(Error::InvalidArgument(format!(
                "anyon count must be between 2 and {}, got {count}",
                limits.max_count
            )));
        }
        let mut paths: Vec<Vec<ChargeLabel>> = vec![vec![t]];
        for _ in 1..count {
            let mut next = Vec::new();
            for p in &paths {
                let last = *p.last().expect("paths are non-empty");
                for c in model.fusion_channels(last, t) {
                    let mut q = p.clone();
                    q.push(c);
                    next.push(q);
                }
            }
            if next.len() > limits.dim_cap {
                return Err(Error::DimensionCap {
                    dim: next.len(),
                    cap: limits.dim_cap,
                });
            }
            paths = next;
        }
        let mut states: Vec<Vec<ChargeLabel>> = paths.into_iter().map(|p| p[1..].to_vec()).collect();
        states.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        if states.is_empty() {
            return Err(Error::EmptyBasis(model.label_name(t).to_string()));
        }
        let index = states.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let sectors = states.iter().map(|s| *s.last().expect("count >= 2")).collect::<Vec<_>>().into();
        Ok(Self {
            model,
            t,
            count,
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

    /// Number of anyons.
    pub fn count(&self) -> usize {
        self.count
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[Vec<ChargeLabel>] {
        &self.states
    }

    pub fn index_of(&self, state: &[ChargeLabel]) -> Option<usize> {
        self.index.get(state).copied()
    }

    pub fn sectors(&self) -> &Arc<[ChargeLabel]> {
        &self.sectors
    }

    /// Charge `c_i` of the first `i` anyons, with `c₀` the vacuum.
    fn node(&self, state: &[ChargeLabel], i: usize) -> ChargeLabel {
        match i {
            0 => ChargeLabel::VACUUM,
            1 => self.t,
            _ => state[i - 2],
        }
    }

    fn check_position(&self, k: usize) -> Result<()> {
        if k == 0 || k >= self.count {
            Err(Error::IndexOutOfRange {
                index: k,
                valid: format!("1..{}", self.count - 1),
            })
        } else {
            Ok(())
        }
    }

    fn check_channel(&self, channel: ChargeLabel) -> Result<()> {
        if channel.index() < self.model.rank() && self.model.fuses(self.t, self.t, channel) {
            Ok(())
        } else {
            let name = self.model.label_name(self.t).to_string();
            Err(Error::InvalidChannel {
                channel: channel.to_string(),
                a: name.clone(),
                b: name,
            })
        }
    }

    /// Operator acting on anyons `k, k+1` as `g(f)` on their fusion channel
    /// `f`: `⟨…c_k′…|O|…c_k…⟩ = Σ_f conj(F^{c_{k−1}tt}_{c_{k+1}}[c_k′][f]) g(f) F^{c_{k−1}tt}_{c_{k+1}}[c_k][f]`.
    fn local_operator(&self, k: usize, g: impl Fn(ChargeLabel) -> Complex<T>) -> OperatorMatrix<T> {
        let m = &*self.model;
        let t = self.t;
        let n = self.dim();
        let channels = m.fusion_channels(t, t);
        let mut out = CMatrix::zeros(n, n);
        for (col, s) in self.states.iter().enumerate() {
            let prev = self.node(s, k - 1);
            let ck = self.node(s, k);
            let next = self.node(s, k + 1);
            let candidates: Vec<ChargeLabel> = if k >= 2 { m.charges().collect() } else { vec![ck] };
            for ck2 in candidates {
                let row = if k >= 2 {
                    let mut s2 = s.clone();
                    s2[k - 2] = ck2;
                    match self.index.get(&s2) {
                        Some(&r) => r,
                        None => continue,
                    }
                } else {
                    col
                };
                let v = channels.iter().fold(Complex::default(), |acc, &f| {
                    acc + m.f(prev, t, t, next, ck2, f).conj() * g(f) * m.f(prev, t, t, next, ck, f)
                });
                out[(row, col)] += v;
            }
        }
        OperatorMatrix::new(out, self.sectors.clone())
    }

    /// Exchange of anyons `k` and `k + 1` (1-based).
    pub fn elementary_braid(&self, k: usize, chirality: Chirality) -> Result<OperatorMatrix<T>> {
        self.check_position(k)?;
        Ok(self.local_operator(k, |f| chirality.exchange(&self.model, self.t, self.t, f)))
    }

    /// Projector onto fusion channel `channel` of adjacent anyons `k, k + 1`.
    pub fn adjacent_projector(&self, k: usize, channel: ChargeLabel) -> Result<OperatorMatrix<T>> {
        self.check_position(k)?;
        self.check_channel(channel)?;
        Ok(self.local_operator(k, |f| {
            if f == channel {
                Complex::new(T::one(), T::zero())
            } else {
                Complex::default()
            }
        }))
    }

    /// Projector onto fusion channel `channel` of anyons `i < j`, obtained by
    /// braiding anyon `i` rightwards to position `j − 1`, projecting there,
    /// and braiding back.
    pub fn pair_projector_general(
        &self,
        i: usize,
        j: usize,
        channel: ChargeLabel,
        chirality: Chirality,
    ) -> Result<OperatorMatrix<T>> {
        self.pair_projector_via(i, j, channel, chirality, Transport::MoveLeft)
    }

    pub fn pair_projector_via(
        &self,
        i: usize,
        j: usize,
        channel: ChargeLabel,
        chirality: Chirality,
        transport: Transport,
    ) -> Result<OperatorMatrix<T>> {
        if !(1 <= i && i < j && j <= self.count) {
            return Err(Error::IndexOutOfRange {
                index: if i == 0 { i } else { j },
                valid: format!("1 <= i < j <= {}", self.count),
            });
        }
        let (p, w) = match transport {
            Transport::MoveLeft => {
                let p = self.adjacent_projector(j - 1, channel)?;
                let mut w = OperatorMatrix::identity(self.sectors.clone());
                for k in i..j - 1 {
                    w = self.elementary_braid(k, chirality)?.compose(&w);
                }
                (p, w)
            }
            Transport::MoveRight => {
                let p = self.adjacent_projector(i, channel)?;
                let mut w = OperatorMatrix::identity(self.sectors.clone());
                for k in (i + 1..j).rev() {
                    w = self.elementary_braid(k, chirality)?.adjoint().compose(&w);
                }
                (p, w)
            }
        };
        Ok(w.adjoint().compose(&p).compose(&w))
    }

    /// Formats a state as `[c₂,…,c_m]` with label names.
    pub fn describe(&self, state: &[ChargeLabel]) -> String {
        let n: Vec<&str> = state.iter().map(|&l| self.model.label_name(l)).collect();
        format!("[{}]", n.join(","))
    }
}

/// `H = −Σ_bonds ε_bond Π_a^{bond}` for a staggered T-junction.
pub fn build_chain_hamiltonian<T: Real>(system: &ChainSystem<T>, eps_per_bond: &[T]) -> Result<OperatorMatrix<T>> {
    system.hamiltonian(eps_per_bond)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anyon::BuiltinModel;
    use crate::fusion_space::{FusionTreeBasis, Pair};

    fn chain(which: BuiltinModel, t: &str, count: usize) -> LinearFusionBasis<f64> {
        let m = AnyonModel::builtin(which);
        let t = m.label(t).unwrap();
        LinearFusionBasis::enumerate(m, t, count).unwrap()
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(chain(BuiltinModel::Fibonacci, "tau", 4).dim(), 5);
        assert_eq!(chain(BuiltinModel::Fibonacci, "tau", 8).dim(), 34);
        assert_eq!(chain(BuiltinModel::Ising, "sigma", 6).dim(), 8);
    }

    #[test]
    fn limits_are_enforced() {
        let m = AnyonModel::<f64>::builtin(BuiltinModel::Fibonacci);
        let tau = m.label("tau").unwrap();
        assert!(matches!(
            LinearFusionBasis::enumerate(m.clone(), tau, 15),
            Err(Error::InvalidArgument(_))
        ));
        let tight = ChainLimits {
            max_count: 14,
            dim_cap: 20,
        };
        assert!(matches!(
            LinearFusionBasis::enumerate_with(m, tau, 8, tight),
            Err(Error::DimensionCap { dim: 21, cap: 20 })
        ));
    }

    #[test]
    fn four_anyon_chain_matches_tjunction() {
        for (which, t) in [(BuiltinModel::Fibonacci, "tau"), (BuiltinModel::Ising, "sigma")] {
            let c = chain(which, t, 4);
            let tj = FusionTreeBasis::enumerate(c.model().clone(), c.charge()).unwrap();
            for (s, tree) in c.states().iter().zip(tj.states()) {
                assert_eq!(s.as_slice(), tree.as_slice());
            }
            let a = ChargeLabel::VACUUM;
            for chirality in [Chirality::Plus, Chirality::Minus] {
                let pairs = [(Pair::L, 1, 3), (Pair::R, 2, 3), (Pair::B, 3, 4)];
                for (pair, i, j) in pairs {
                    let p = c.pair_projector_general(i, j, a, chirality).unwrap();
                    let q = tj.pair_projector(pair, a, chirality).unwrap();
                    assert!(p.max_abs_diff(&q) < 1e-12, "{which:?} {pair}");
                }
                let b1 = c.elementary_braid(1, chirality).unwrap();
                assert!(b1.max_abs_diff(&tj.braid_generator(chirality)) < 1e-15);
            }
        }
    }

    #[test]
    fn braid_position_is_checked() {
        let c = chain(BuiltinModel::Ising, "sigma", 4);
        assert!(matches!(c.elementary_braid(0, Chirality::Plus), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(c.elementary_braid(4, Chirality::Plus), Err(Error::IndexOutOfRange { .. })));
    }
}
