use num_complex::Complex;

use super::{AnyonModel, ChargeLabel};
use crate::error::{Error, Result};
use crate::linalg::{max_abs, CMatrix};
use crate::scalar::{abs, c_zero, max, modulus, Real};

/// Outcome of one family of consistency equations.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub max_residual: f64,
    pub passed: bool,
}

/// Per-family residuals of [`AnyonModel::verify`].
#[derive(Clone, Debug, PartialEq)]
pub struct ConsistencyReport {
    pub tolerance: f64,
    pub checks: Vec<CheckResult>,
}

impl ConsistencyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn max_residual(&self, name: &str) -> f64 {
        self.check(name).map(|c| c.max_residual).unwrap_or(f64::NAN)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

pub const PENTAGON: &str = "pentagon";
pub const HEXAGON: &str = "hexagon";
pub const HEXAGON_INVERSE: &str = "hexagon_inverse";
pub const F_UNITARITY: &str = "f_unitarity";
pub const R_UNIT_MODULUS: &str = "r_unit_modulus";
pub const QDIM: &str = "qdim";

impl<T: Real> AnyonModel<T> {
    /// Evaluates every instance of the pentagon identity, both hexagon
    /// identities, F-matrix unitarity, `|R| = 1` and the quantum-dimension
    /// fusion rule. A family passes when its largest residual is below `tol`.
    ///
    /// Fails with [`Error::MissingSymbol`] if an admissible tuple has no
    /// stored F- or R-symbol.
    pub fn verify(&self, tol: f64) -> Result<ConsistencyReport> {
        self.check_complete()?;
        let families: [(&'static str, T); 6] = [
            (PENTAGON, self.pentagon_residual()),
            (HEXAGON, self.hexagon_residual(false)),
            (HEXAGON_INVERSE, self.hexagon_residual(true)),
            (F_UNITARITY, self.f_unitarity_residual()),
            (R_UNIT_MODULUS, self.r_modulus_residual()),
            (QDIM, self.qdim_residual()),
        ];
        let checks = families
            .into_iter()
            .map(|(name, r)| {
                let max_residual = r.as_f64();
                CheckResult {
                    name,
                    max_residual,
                    passed: max_residual < tol,
                }
            })
            .collect();
        Ok(ConsistencyReport { tolerance: tol, checks })
    }

    fn check_complete(&self) -> Result<()> {
        let labels: Vec<ChargeLabel> = self.charges().collect();
        let name = |k: &[ChargeLabel]| {
            let parts: Vec<&str> = k.iter().map(|&l| self.label_name(l)).collect();
            format!("({})", parts.join(","))
        };
        for &a in &labels {
            for &b in &labels {
                for &c in &labels {
                    if self.fuses(a, b, c) && self.try_r(a, b, c).is_none() {
                        return Err(Error::MissingSymbol {
                            kind: "R",
                            labels: name(&[a, b, c]),
                        });
                    }
                    for &d in &labels {
                        for &e in &labels {
                            for &f in &labels {
                                let key = [a, b, c, d, e, f];
                                if self.f_admissible(key) && self.try_f(key).is_none() {
                                    return Err(Error::MissingSymbol {
                                        kind: "F",
                                        labels: name(&key),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `max |F^{fcd}_e[g][l] F^{abl}_e[f][k] - Σ_h F^{abc}_g[f][h] F^{ahd}_e[g][k] F^{bcd}_k[h][l]|`
    /// over all label assignments.
    pub fn pentagon_residual(&self) -> T {
        let labels: Vec<ChargeLabel> = self.charges().collect();
        let mut worst = T::zero();
        for &a in &labels {
            for &b in &labels {
                for &c in &labels {
                    for &d in &labels {
                        for &e in &labels {
                            for &f in &labels {
                                if !self.fuses(a, b, f) {
                                    continue;
                                }
                                for &g in &labels {
                                    if !self.fuses(f, c, g) || !self.fuses(g, d, e) {
                                        continue;
                                    }
                                    for &k in &labels {
                                        for &l in &labels {
                                            let lhs = self.f(f, c, d, e, g, l) * self.f(a, b, l, e, f, k);
                                            let rhs = labels.iter().fold(c_zero::<T>(), |acc, &h| {
                                                acc + self.f(a, b, c, g, f, h) * self.f(a, h, d, e, g, k) * self.f(b, c, d, k, h, l)
                                            });
                                            worst = max(worst, modulus(lhs - rhs));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        worst
    }

    /// Hexagon identity
    /// `R^{ca}_e F^{acb}_d[e][g] R^{cb}_g = Σ_f F^{cab}_d[e][f] R^{cf}_d F^{abc}_d[f][g]`,
    /// or its counterpart with every `R` replaced by the inverse exchange
    /// (`R^{ac}_e`, `R^{bc}_g`, `R^{fc}_d`, conjugated) when `inverse` is set.
    pub fn hexagon_residual(&self, inverse: bool) -> T {
        let labels: Vec<ChargeLabel> = self.charges().collect();
        let r = |x: ChargeLabel, y: ChargeLabel, z: ChargeLabel| -> Complex<T> {
            if inverse {
                self.r(y, x, z).conj()
            } else {
                self.r(x, y, z)
            }
        };
        let mut worst = T::zero();
        for &a in &labels {
            for &b in &labels {
                for &c in &labels {
                    for &d in &labels {
                        for &e in &labels {
                            for &g in &labels {
                                let lhs = r(c, a, e) * self.f(a, c, b, d, e, g) * r(c, b, g);
                                let rhs = labels.iter().fold(c_zero::<T>(), |acc, &f| {
                                    acc + self.f(c, a, b, d, e, f) * r(c, f, d) * self.f(a, b, c, d, f, g)
                                });
                                worst = max(worst, modulus(lhs - rhs));
                            }
                        }
                    }
                }
            }
        }
        worst
    }

    /// `max ‖(F^{abc}_d)† F^{abc}_d - 1‖_max`; non-square blocks count as a
    /// residual of one.
    pub fn f_unitarity_residual(&self) -> T {
        let labels: Vec<ChargeLabel> = self.charges().collect();
        let mut worst = T::zero();
        for &a in &labels {
            for &b in &labels {
                for &c in &labels {
                    for &d in &labels {
                        let fm = self.f_matrix(a, b, c, d);
                        if fm.rows.is_empty() && fm.cols.is_empty() {
                            continue;
                        }
                        if fm.rows.len() != fm.cols.len() {
                            worst = max(worst, T::one());
                            continue;
                        }
                        let n = fm.cols.len();
                        let prod = fm.entries.adjoint() * &fm.entries;
                        worst = max(worst, max_abs(&(prod - CMatrix::<T>::identity(n, n))));
                    }
                }
            }
        }
        worst
    }

    pub fn r_modulus_residual(&self) -> T {
        let labels: Vec<ChargeLabel> = self.charges().collect();
        let mut worst = T::zero();
        for &a in &labels {
            for &b in &labels {
                for &c in &labels {
                    if let Some(r) = self.try_r(a, b, c) {
                        worst = max(worst, abs(modulus(r) - T::one()));
                    }
                }
            }
        }
        worst
    }

    /// `max |d_a d_b - Σ_c N_{ab}^c d_c|`, together with `|d_1 - 1|`.
    pub fn qdim_residual(&self) -> T {
        let mut worst = abs(self.qdim(ChargeLabel::VACUUM) - T::one());
        for a in self.charges() {
            for b in self.charges() {
                let sum = self
                    .fusion_channels(a, b)
                    .into_iter()
                    .fold(T::zero(), |acc, c| acc + self.qdim(c));
                worst = max(worst, abs(self.qdim(a) * self.qdim(b) - sum));
            }
        }
        worst
    }
}
