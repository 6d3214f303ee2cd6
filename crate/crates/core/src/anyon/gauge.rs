use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::AnyonModel;
use crate::scalar::{c_one, cis, Real};

/// Vertex phases `u^{ab}_c` of a diagonal gauge transformation, indexed like
/// the model's fusion tensor.
#[derive(Clone, Debug)]
pub struct GaugeTransform<T: Real> {
    rank: usize,
    phases: Vec<Complex<T>>,
}

impl<T: Real> GaugeTransform<T> {
    pub fn identity(rank: usize) -> Self {
        Self {
            rank,
            phases: vec![c_one(); rank.pow(3)],
        }
    }

    /// Uniformly random phases on every vertex with both inputs non-vacuum.
    /// Vertices touching the vacuum keep phase 1 so that the trivial F- and
    /// R-symbols involving the vacuum stay trivial.
    pub fn random(model: &AnyonModel<T>, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = Self::identity(model.rank());
        for a in model.charges() {
            for b in model.charges() {
                for c in model.charges() {
                    if model.fuses(a, b, c) && !a.is_vacuum() && !b.is_vacuum() {
                        let theta: f64 = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
                        g.set(a.index(), b.index(), c.index(), cis(T::lit(theta)));
                    }
                }
            }
        }
        g
    }

    pub fn set(&mut self, a: usize, b: usize, c: usize, phase: Complex<T>) {
        let n = self.rank;
        self.phases[(a * n + b) * n + c] = phase;
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> Complex<T> {
        let n = self.rank;
        self.phases[(a * n + b) * n + c]
    }
}

impl<T: Real> AnyonModel<T> {
    /// Applies a vertex gauge transformation:
    /// `F'^{abc}_d[e][f] = u^{ab}_e u^{ec}_d / (u^{bc}_f u^{af}_d) F^{abc}_d[e][f]`
    /// and `R'^{ab}_c = u^{ab}_c / u^{ba}_c R^{ab}_c`.
    pub fn regauge(&self, u: &GaugeTransform<T>) -> Self {
        assert_eq!(u.rank, self.rank(), "gauge transform rank mismatch");
        let mut out = self.clone();
        for ([a, b, c, d, e, f], v) in out.f_symbols_mut() {
            *v = *v * u.get(a, b, e) * u.get(e, c, d) / (u.get(b, c, f) * u.get(a, f, d));
        }
        for ([a, b, c], v) in out.r_symbols_mut() {
            *v = *v * u.get(a, b, c) / u.get(b, a, c);
        }
        out.set_name(format!("{}-regauged", self.name()));
        out
    }

    /// [`Self::regauge`] with [`GaugeTransform::random`] phases.
    pub fn random_regauge(&self, seed: u64) -> Self {
        self.regauge(&GaugeTransform::random(self, seed))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anyon::BuiltinModel;
    use crate::scalar::modulus;

    #[test]
    fn random_regauge_stays_consistent() {
        for which in BuiltinModel::ALL {
            let m = AnyonModel::<f64>::builtin(which);
            for seed in 0..4 {
                let g = m.random_regauge(seed);
                let report = g.verify(1e-10).unwrap();
                assert!(report.passed(), "{which:?} seed {seed}: {report:?}");
            }
        }
    }

    #[test]
    fn regauge_changes_off_diagonal_entries() {
        let m = AnyonModel::<f64>::builtin(BuiltinModel::Fibonacci);
        let g = m.random_regauge(7);
        let tau = m.label("tau").unwrap();
        let v = crate::anyon::ChargeLabel::VACUUM;
        let before = m.f(tau, tau, tau, tau, v, tau);
        let after = g.f(tau, tau, tau, tau, v, tau);
        assert!((before - after).norm() > 1e-6);
        assert!((modulus(before) - modulus(after)).abs() < 1e-14);
    }

    #[test]
    fn seeds_are_deterministic() {
        let m = AnyonModel::<f64>::builtin(BuiltinModel::Ising);
        assert_eq!(m.random_regauge(3), m.random_regauge(3));
        assert_ne!(m.random_regauge(3), m.random_regauge(4));
    }
}
