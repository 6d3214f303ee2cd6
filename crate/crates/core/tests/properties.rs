use std::sync::Arc;

use proptest::prelude::*;

use braidsim::adiabatic::{BraidProtocol, CouplingSchedule, HolonomyOptions, Ramp};
use braidsim::anyon::{AnyonModel, BuiltinModel, ChargeLabel};
use braidsim::chains::{LinearFusionBasis, Transport};
use braidsim::fusion_space::{Chirality, FusionTreeBasis, Pair};
use braidsim::linalg::OperatorMatrix;
use braidsim::tjunction::{build_hamiltonian, ground_space, CouplingConfig};

const A: ChargeLabel = ChargeLabel::VACUUM;
const T: ChargeLabel = ChargeLabel::new(1);

fn model(which: usize) -> AnyonModel<f64> {
    AnyonModel::builtin(BuiltinModel::ALL[which % 3])
}

fn non_abelian(which: usize) -> AnyonModel<f64> {
    AnyonModel::builtin([BuiltinModel::Fibonacci, BuiltinModel::Ising][which % 2])
}

fn chirality(plus: bool) -> Chirality {
    if plus {
        Chirality::Plus
    } else {
        Chirality::Minus
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn regauged_models_stay_consistent(which in 0usize..3, seed in any::<u64>()) {
        let g = model(which).random_regauge(seed);
        let report = g.verify(1e-10).unwrap();
        prop_assert!(report.passed(), "{:?}", report);
    }

    #[test]
    fn model_files_roundtrip(which in 0usize..3, seed in any::<u64>()) {
        let g = model(which).random_regauge(seed);
        let back = AnyonModel::<f64>::from_json_str(&g.to_json_string()).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn pair_projectors_resolve_identity(which in 0usize..3, seed in any::<u64>(), plus in any::<bool>()) {
        let m = model(which).random_regauge(seed);
        let b = FusionTreeBasis::enumerate(m, T).unwrap();
        for pair in Pair::ALL {
            let mut sum = OperatorMatrix::zeros(b.sectors().clone());
            for c in b.channels() {
                let p = b.pair_projector(pair, c, chirality(plus)).unwrap();
                prop_assert!(p.projector_residual() < 1e-12);
                prop_assert!(p.hermiticity_residual() < 1e-12);
                sum.add_scaled(1.0, &p);
            }
            prop_assert!(sum.max_abs_diff(&OperatorMatrix::identity(b.sectors().clone())) < 1e-12);
        }
    }

    #[test]
    fn ground_energy_is_gauge_invariant(
        which in 0usize..2,
        seed in any::<u64>(),
        eps in prop::array::uniform3(0.0f64..1.0),
    ) {
        let m = non_abelian(which);
        let cfg = CouplingConfig::favored_only(A, eps);
        let levels = |m: AnyonModel<f64>| {
            let b = FusionTreeBasis::enumerate(m, T).unwrap();
            ground_space(&build_hamiltonian(&b, &cfg, Chirality::Plus).unwrap(), 1e-9).unwrap()
        };
        let a = levels(m.clone());
        let b = levels(m.random_regauge(seed));
        for (x, y) in a.eigenvalues.iter().zip(&b.eigenvalues) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn holonomy_fidelity_is_gauge_invariant(which in 0usize..2, seed in any::<u64>(), reverse in any::<bool>()) {
        let run = |m: AnyonModel<f64>| {
            let mut p = BraidProtocol::new(Arc::new(FusionTreeBasis::enumerate(m, T).unwrap()), A, Chirality::Plus);
            p.reverse = reverse;
            p.wilson_line(300, &HolonomyOptions::default()).unwrap()
        };
        let m = non_abelian(which);
        let a = run(m.clone());
        let b = run(m.random_regauge(seed));
        prop_assert!((a.fidelity - b.fidelity).abs() < 1e-10);
        prop_assert!(b.max_phase_spread().unwrap() < 1e-6);
    }

    #[test]
    fn chain_braids_satisfy_yang_baxter(which in 0usize..2, count in 4usize..8, k in 1usize..6, plus in any::<bool>()) {
        let chain = LinearFusionBasis::enumerate(non_abelian(which), T, count).unwrap();
        prop_assume!(k + 2 < count);
        let b = |j| chain.elementary_braid(j, chirality(plus)).unwrap();
        let lhs = b(k).compose(&b(k + 1)).compose(&b(k));
        let rhs = b(k + 1).compose(&b(k)).compose(&b(k + 1));
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        let u = b(k);
        prop_assert!(u.compose(&u.adjoint()).max_abs_diff(&OperatorMatrix::identity(chain.sectors().clone())) < 1e-12);
    }

    #[test]
    fn distant_braids_commute(which in 0usize..2, count in 5usize..8, k in 1usize..4, gap in 2usize..4) {
        let chain = LinearFusionBasis::enumerate(non_abelian(which), T, count).unwrap();
        prop_assume!(k + gap < count);
        let x = chain.elementary_braid(k, Chirality::Plus).unwrap();
        let y = chain.elementary_braid(k + gap, Chirality::Plus).unwrap();
        prop_assert!(x.commutator(&y).max_abs() < 1e-12);
    }

    #[test]
    fn pair_projector_is_independent_of_transport(
        which in 0usize..2,
        count in 4usize..8,
        i in 1usize..7,
        span in 1usize..6,
        plus in any::<bool>(),
    ) {
        let m = non_abelian(which);
        let chain = LinearFusionBasis::enumerate(m, T, count).unwrap();
        let j = i + span;
        prop_assume!(j <= count);
        for c in [A, T] {
            if !chain.model().fuses(T, T, c) {
                continue;
            }
            let left = chain.pair_projector_via(i, j, c, chirality(plus), Transport::MoveLeft).unwrap();
            let right = chain.pair_projector_via(i, j, c, chirality(plus), Transport::MoveRight).unwrap();
            prop_assert!(left.max_abs_diff(&right) < 1e-12);
            prop_assert!(left.projector_residual() < 1e-12);
        }
    }

    #[test]
    fn schedule_stays_in_range_and_reverses(
        step in 0.5f64..20.0,
        floor in 0.0f64..0.2,
        frac in 0.0f64..1.0,
        linear in any::<bool>(),
    ) {
        let ramp = if linear { Ramp::Linear } else { Ramp::Cosine };
        let s = CouplingSchedule::default_braid(1.0, step, floor, ramp).unwrap();
        let t = frac * s.total_time();
        let now = s.couplings(t);
        prop_assert!(now.iter().all(|&e| (floor - 1e-12..=1.0 + 1e-12).contains(&e)));
        let back = s.reversed().couplings(s.total_time() - t);
        for (x, y) in now.iter().zip(&back) {
            prop_assert!((x - y).abs() < 1e-9);
        }
    }
}

#[test]
fn single_precision_braid() {
    let m = AnyonModel::<f32>::builtin(BuiltinModel::Fibonacci);
    let b = FusionTreeBasis::enumerate(m, T).unwrap();
    let opts = HolonomyOptions {
        rel_tol: 1e-4,
        gap_threshold: 1e-4,
        ..HolonomyOptions::default()
    };
    let r = BraidProtocol::new(b, A, Chirality::Plus).wilson_line(500, &opts).unwrap();
    assert!(r.fidelity > 1.0 - 1e-4, "fidelity {}", r.fidelity);
}

#[test]
fn single_precision_consistency() {
    for which in BuiltinModel::ALL {
        let report = AnyonModel::<f32>::builtin(which).verify(1e-5).unwrap();
        assert!(report.passed(), "{which:?}");
    }
}
