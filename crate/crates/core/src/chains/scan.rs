use rayon::prelude::*;

use super::{ChainLimits, LinearFusionBasis};
use crate::anyon::{AnyonModel, ChargeLabel};
use crate::error::{Error, Result};
use crate::linalg::{Eigensystem, OperatorMatrix};
use crate::scalar::Real;

/// One row of [`splitting_scan`].
#[derive(Clone, Debug, PartialEq)]
pub struct SplittingRow<T> {
    pub n: usize,
    pub eps_min: T,
    pub eps_max: T,
    pub splitting: T,
    pub ln_splitting: T,
}

/// Residual splitting of the end-charge multiplet of a staggered open chain.
///
/// For each `N` the chain holds `2N + 2` anyons of charge `t` with bonds
/// `k = 1 … 2N + 1` between anyons `k, k + 1`: odd bonds weak (`eps_min`),
/// even bonds strong (`eps_max`), all projecting on channel `a`. The two end
/// anyons are only weakly bound, and the spread `E_{n−1} − E_0` of the lowest
/// `n = |t × t|` levels measures their effective coupling.
pub fn splitting_scan<T: Real>(
    model: &AnyonModel<T>,
    t: ChargeLabel,
    a: ChargeLabel,
    eps_min: T,
    eps_max: T,
    n_values: &[usize],
    limits: ChainLimits,
) -> Result<Vec<SplittingRow<T>>> {
    model.check_label(t)?;
    model.check_label(a)?;
    if !model.fuses(t, t, a) {
        return Err(Error::InvalidChannel {
            channel: model.label_name(a).to_string(),
            a: model.label_name(t).to_string(),
            b: model.label_name(t).to_string(),
        });
    }
    if !model.is_abelian(a) {
        return Err(Error::NotAbelian(model.label_name(a).to_string()));
    }
    if !(eps_min >= T::zero() && eps_max > eps_min && eps_max.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "need 0 <= eps_min < eps_max, got {} and {}",
            eps_min.as_f64(),
            eps_max.as_f64()
        )));
    }
    if n_values.is_empty() {
        return Err(Error::InvalidArgument("no chain lengths given".into()));
    }
    let model = std::sync::Arc::new(model.clone());
    let multiplet = model.fusion_channels(t, t).len();
    n_values
        .par_iter()
        .map(|&n| {
            let basis = LinearFusionBasis::enumerate_with(model.clone(), t, 2 * n + 2, limits)?;
            let mut h = OperatorMatrix::zeros(basis.sectors().clone());
            for k in 1..=2 * n + 1 {
                let e = if k % 2 == 1 { eps_min } else { eps_max };
                h.add_scaled(-e, &basis.adjacent_projector(k, a)?);
            }
            let eig = Eigensystem::hermitian(h.matrix(), basis.sectors());
            let splitting = eig.values[multiplet - 1] - eig.values[0];
            Ok(SplittingRow {
                n,
                eps_min,
                eps_max,
                splitting,
                ln_splitting: splitting.ln(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::anyon::BuiltinModel;

    #[test]
    fn dimerized_limit_has_no_splitting() {
        let m = AnyonModel::<f64>::builtin(BuiltinModel::Fibonacci);
        let tau = m.label("tau").unwrap();
        let rows = splitting_scan(&m, tau, ChargeLabel::VACUUM, 0.0, 1.0, &[1, 2], ChainLimits::default()).unwrap();
        for r in rows {
            assert!(r.splitting.abs() < 1e-12);
        }
    }

    #[test]
    fn splitting_shrinks_with_length() {
        let m = AnyonModel::<f64>::builtin(BuiltinModel::Ising);
        let s = m.label("sigma").unwrap();
        let rows = splitting_scan(&m, s, ChargeLabel::VACUUM, 0.1, 1.0, &[1, 2, 3], ChainLimits::default()).unwrap();
        assert!(rows.windows(2).all(|w| w[1].splitting < w[0].splitting));
    }
}
