use num_complex::Complex;

use super::{AnyonModel, ModelData};
use crate::scalar::{c, c_real, cis, Real};

/// Models shipped with the library.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinModel {
    Ising,
    Fibonacci,
    /// `{1, ψ}` with `ψ × ψ = 1` and fermionic exchange.
    AbelianZ2,
}

impl BuiltinModel {
    pub const ALL: [BuiltinModel; 3] = [BuiltinModel::Ising, BuiltinModel::Fibonacci, BuiltinModel::AbelianZ2];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinModel::Ising => "ising",
            BuiltinModel::Fibonacci => "fibonacci",
            BuiltinModel::AbelianZ2 => "abelian-z2",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "ising" => Some(BuiltinModel::Ising),
            "fibonacci" | "fib" => Some(BuiltinModel::Fibonacci),
            "abelian-z2" | "abelianz2" | "z2" => Some(BuiltinModel::AbelianZ2),
            _ => None,
        }
    }
}

impl<T: Real> AnyonModel<T> {
    pub fn builtin(which: BuiltinModel) -> Self {
        match which {
            BuiltinModel::Fibonacci => fibonacci(),
            BuiltinModel::Ising => ising(),
            BuiltinModel::AbelianZ2 => Self::abelian_z2(true),
        }
    }

    /// The `Z₂` model with `R^{ψψ}_1 = -1` (fermion) or `+1` (boson).
    pub fn abelian_z2(fermion: bool) -> Self {
        let sign = if fermion { -1.0 } else { 1.0 };
        let data = assemble(
            if fermion { "abelian-z2" } else { "abelian-z2-boson" },
            &["1", "psi"],
            |a, b, c| c == a ^ b,
            &[],
            &[([1, 1, 0], c_real(T::lit(sign)))],
            vec![T::one(), T::one()],
        );
        AnyonModel::from_data(data).expect("built-in Z2 data is structurally valid")
    }
}

fn fibonacci<T: Real>() -> AnyonModel<T> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let (inv, inv_sqrt) = (T::lit(1.0 / phi), T::lit(phi.powf(-0.5)));
    let tau = 1;
    let data = assemble(
        "fibonacci",
        &["1", "tau"],
        |a, b, c| match (a, b) {
            (0, x) | (x, 0) => c == x,
            _ => true,
        },
        &[
            ([tau, tau, tau, tau, 0, 0], c_real(inv)),
            ([tau, tau, tau, tau, 0, tau], c_real(inv_sqrt)),
            ([tau, tau, tau, tau, tau, 0], c_real(inv_sqrt)),
            ([tau, tau, tau, tau, tau, tau], c_real(-inv)),
        ],
        &[
            ([tau, tau, 0], cis(T::lit(4.0 * std::f64::consts::PI / 5.0))),
            ([tau, tau, tau], cis(T::lit(-3.0 * std::f64::consts::PI / 5.0))),
        ],
        vec![T::one(), T::lit(phi)],
    );
    AnyonModel::from_data(data).expect("built-in Fibonacci data is structurally valid")
}

fn ising<T: Real>() -> AnyonModel<T> {
    let (sigma, psi) = (1, 2);
    let h = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    let pi8 = std::f64::consts::PI / 8.0;
    let data = assemble(
        "ising",
        &["1", "sigma", "psi"],
        |a, b, c| match (a, b) {
            (0, x) | (x, 0) => c == x,
            (1, 1) => c == 0 || c == 2,
            (1, 2) | (2, 1) => c == 1,
            _ => c == 0,
        },
        &[
            ([sigma, sigma, sigma, sigma, 0, 0], c_real(h)),
            ([sigma, sigma, sigma, sigma, 0, psi], c_real(h)),
            ([sigma, sigma, sigma, sigma, psi, 0], c_real(h)),
            ([sigma, sigma, sigma, sigma, psi, psi], c_real(-h)),
            ([sigma, psi, sigma, psi, sigma, sigma], c_real(-T::one())),
            ([psi, sigma, psi, sigma, sigma, sigma], c_real(-T::one())),
        ],
        &[
            ([sigma, sigma, 0], cis(T::lit(-pi8))),
            ([sigma, sigma, psi], cis(T::lit(3.0 * pi8))),
            ([sigma, psi, sigma], c(T::zero(), -T::one())),
            ([psi, sigma, sigma], c(T::zero(), -T::one())),
            ([psi, psi, 0], c_real(-T::one())),
        ],
        vec![T::one(), T::lit(2f64.sqrt()), T::one()],
    );
    AnyonModel::from_data(data).expect("built-in Ising data is structurally valid")
}

/// Fills every admissible F- and R-symbol with 1, then applies overrides.
fn assemble<T: Real>(
    name: &str,
    labels: &[&str],
    fuses: impl Fn(usize, usize, usize) -> bool,
    f_overrides: &[([usize; 6], Complex<T>)],
    r_overrides: &[([usize; 3], Complex<T>)],
    qdims: Vec<T>,
) -> ModelData<T> {
    let n = labels.len();
    let mut fusion = Vec::new();
    let mut r_symbols = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if fuses(a, b, c) {
                    fusion.push([a, b, c]);
                    let v = r_overrides
                        .iter()
                        .find(|(k, _)| *k == [a, b, c])
                        .map(|(_, v)| *v)
                        .unwrap_or_else(|| c_real(T::one()));
                    r_symbols.push(([a, b, c], v));
                }
            }
        }
    }
    let mut f_symbols = Vec::new();
    let range = 0..n;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                for d in range.clone() {
                    for e in range.clone() {
                        for f in range.clone() {
                            if fuses(a, b, e) && fuses(e, c, d) && fuses(b, c, f) && fuses(a, f, d) {
                                let key = [a, b, c, d, e, f];
                                let v = f_overrides
                                    .iter()
                                    .find(|(k, _)| *k == key)
                                    .map(|(_, v)| *v)
                                    .unwrap_or_else(|| c_real(T::one()));
                                f_symbols.push((key, v));
                            }
                        }
                    }
                }
            }
        }
    }
    ModelData {
        name: name.to_string(),
        labels: labels.iter().map(|s| s.to_string()).collect(),
        fusion,
        f_symbols,
        r_symbols,
        qdims,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anyon::ChargeLabel;
    use crate::linalg::max_abs;
    use crate::linalg::CMatrix;

    #[test]
    fn fibonacci_f_matrix_values() {
        let m = AnyonModel::<f64>::builtin(BuiltinModel::Fibonacci);
        let tau = m.label("tau").unwrap();
        let f = m.f_matrix(tau, tau, tau, tau);
        assert_eq!(f.rows, vec![ChargeLabel::VACUUM, tau]);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let expected = CMatrix::from_row_slice(
            2,
            2,
            &[c(1.0 / phi, 0.0), c(phi.powf(-0.5), 0.0), c(phi.powf(-0.5), 0.0), c(-1.0 / phi, 0.0)],
        );
        assert!(max_abs(&(f.entries - expected)) < 1e-15);
    }

    #[test]
    fn ising_f_matrix_values() {
        let m = AnyonModel::<f64>::builtin(BuiltinModel::Ising);
        let s = m.label("sigma").unwrap();
        let f = m.f_matrix(s, s, s, s);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let expected = CMatrix::from_row_slice(2, 2, &[c(h, 0.0), c(h, 0.0), c(h, 0.0), c(-h, 0.0)]);
        assert!(max_abs(&(f.entries - expected)) < 1e-15);
    }

    #[test]
    fn z2_symbols() {
        let m = AnyonModel::<f64>::builtin(BuiltinModel::AbelianZ2);
        let psi = m.label("psi").unwrap();
        assert!((m.r(psi, psi, ChargeLabel::VACUUM) - c(-1.0, 0.0)).norm() < 1e-15);
        for key in m.to_data().f_symbols {
            assert!((key.1 - c(1.0, 0.0)).norm() < 1e-15);
        }
        let boson = AnyonModel::<f64>::abelian_z2(false);
        assert!((boson.r(psi, psi, ChargeLabel::VACUUM) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn names_roundtrip() {
        for which in BuiltinModel::ALL {
            assert_eq!(BuiltinModel::from_name(which.name()), Some(which));
        }
        assert_eq!(BuiltinModel::from_name("nope"), None);
    }
}
