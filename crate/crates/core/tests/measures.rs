mod common;

use std::f64::consts::PI;

use common::{entropy2, grid_classical_correlation, information_gain, local_unitary, random_state, random_su2, rng};
use proptest::prelude::*;
use qcorr_core::{
    classical_correlation, conditional_entropy, correlation_report, gmqd, gmqd_measured, kron, mutual_information,
    negativity, partial_trace, quantum_discord, von_neumann_entropy, werner, BasisPair, DensityMatrix,
    MeasurementBasis, OptimizerSettings, Subsystem,
};

fn both_sides() -> impl Strategy<Value = Subsystem> {
    prop_oneof![Just(Subsystem::A), Just(Subsystem::B)]
}

/// `Σ Πₖ ⊗ Tr_A[(Πₖ ⊗ I) ρ]` for projectors on A along `basis`.
fn dephased_on_a(rho: &DensityMatrix, basis: &MeasurementBasis) -> qcorr_core::Mat4 {
    let id = qcorr_core::Mat2::identity();
    basis.projectors().iter().fold(qcorr_core::Mat4::zeros(), |acc, proj| {
        let lifted = kron(proj, &id);
        let block = partial_trace(&(lifted * *rho.matrix() * lifted), Subsystem::B);
        acc + kron(proj, &block)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn entropy_bounds_and_concavity(seed in any::<u64>(), w in 0.0f64..1.0) {
        let mut r = rng(seed);
        let (x, y) = (random_state(&mut r, 4), random_state(&mut r, 2));
        let s = |m: &qcorr_core::Mat4| von_neumann_entropy(m);
        for m in [x.matrix(), y.matrix()] {
            prop_assert!((-1e-12..=2.0 + 1e-12).contains(&s(m)));
        }
        let mix = x.matrix().scale(w) + y.matrix().scale(1.0 - w);
        prop_assert!(s(&mix) >= w * s(x.matrix()) + (1.0 - w) * s(y.matrix()) - 1e-12);
        let ra = partial_trace(x.matrix(), Subsystem::A);
        prop_assert!((von_neumann_entropy(&ra) - entropy2(&ra)).abs() < 1e-12);
    }

    #[test]
    fn correlation_measures_are_ordered(seed in any::<u64>(), rank in 1usize..=4, side in both_sides()) {
        let rho = random_state(&mut rng(seed), rank);
        let settings = OptimizerSettings::default();
        let r = correlation_report(&rho, side, &settings);
        let unmeasured = von_neumann_entropy(&partial_trace(rho.matrix(), side.other()));
        prop_assert!(r.mutual_info >= -1e-12);
        prop_assert!(r.classical_corr >= 0.0 && r.classical_corr <= unmeasured + 1e-9);
        prop_assert!(r.classical_corr <= r.mutual_info + 1e-9);
        prop_assert!(r.discord >= -1e-9);
        prop_assert!((0.0..=0.5 + 1e-12).contains(&r.gmqd));
        prop_assert!((0.0..=1.0 + 1e-12).contains(&r.negativity));
        prop_assert!(r.converged);
    }

    #[test]
    fn optimum_agrees_with_literal_conditional_entropy(seed in any::<u64>(), side in both_sides()) {
        let rho = random_state(&mut rng(seed), 3);
        let cc = classical_correlation(&rho, side, &OptimizerSettings::default());
        let unmeasured = von_neumann_entropy(&partial_trace(rho.matrix(), side.other()));
        let literal = unmeasured - conditional_entropy(&rho, &cc.basis, side);
        prop_assert!((cc.value - literal).abs() < 1e-10);
        let independent = information_gain(rho.matrix(), side, cc.basis.theta, cc.basis.phi);
        prop_assert!((cc.value - independent).abs() < 1e-10);
    }

    #[test]
    fn optimizer_dominates_coarse_grid(seed in any::<u64>(), side in both_sides()) {
        let rho = random_state(&mut rng(seed), 2);
        let fast = classical_correlation(&rho, side, &OptimizerSettings::default()).value;
        let grid = grid_classical_correlation(&rho, side, 96, 192);
        prop_assert!(fast >= grid - 1e-12);
        prop_assert!(fast - grid < 1e-3);
    }

    #[test]
    fn local_unitaries_preserve_measures(seed in any::<u64>(), side in both_sides()) {
        let mut r = rng(seed);
        let rho = random_state(&mut r, 2);
        let moved = local_unitary(&rho, &random_su2(&mut r), &random_su2(&mut r));
        let settings = OptimizerSettings::default();
        let (a, b) = (correlation_report(&rho, side, &settings), correlation_report(&moved, side, &settings));
        prop_assert!((a.mutual_info - b.mutual_info).abs() < 1e-9);
        prop_assert!((a.classical_corr - b.classical_corr).abs() < 1e-8);
        prop_assert!((a.discord - b.discord).abs() < 1e-8);
        prop_assert!((a.gmqd - b.gmqd).abs() < 1e-12);
        prop_assert!((a.negativity - b.negativity).abs() < 1e-12);
    }

    #[test]
    fn gmqd_is_nearest_dephased_distance(seed in any::<u64>()) {
        let rho = random_state(&mut rng(seed), 3);
        let dg = gmqd(&rho);
        let mut best = f64::INFINITY;
        for i in 0..=48 {
            for j in 0..96 {
                let basis = MeasurementBasis::new(PI * i as f64 / 48.0, 2.0 * PI * j as f64 / 96.0);
                let d = qcorr_core::hs_norm_sq(&(*rho.matrix() - dephased_on_a(&rho, &basis)));
                prop_assert!(d >= dg - 1e-12);
                best = best.min(d);
            }
        }
        prop_assert!(best - dg < 5e-3);
    }
}

#[test]
fn werner_states_at_quarter_angle() {
    let settings = OptimizerSettings::default();
    for p in [0.0, 0.1, 0.25, 1.0 / 3.0, 0.6, 0.9, 1.0] {
        let rho = werner(p, PI / 4.0, BasisPair::ParallelSpins).unwrap();
        assert!((negativity(&rho) - ((3.0 * p - 1.0) / 2.0).max(0.0)).abs() < 1e-12);
        assert!((gmqd(&rho) - p * p / 2.0).abs() < 1e-12);
        // symmetric correlations: the classical correlation is attained along z
        let h = |x: f64| if x <= 0.0 { 0.0 } else { -x * x.log2() };
        let q = 1.0 - h((1.0 + p) / 2.0) - h((1.0 - p) / 2.0);
        let cc = classical_correlation(&rho, Subsystem::B, &settings).value;
        assert!((cc - q).abs() < 1e-9, "p = {p}: {cc} vs {q}");
    }
}

#[test]
fn gmqd_sides_differ_for_one_way_classical_states() {
    let sigma0 = qcorr_core::Mat2::from_real_diag([1.0, 0.0]);
    let plus = qcorr_core::Mat2::from_fn(|_, _| 0.5.into());
    let rho = qcorr_core::classical_quantum([0.5, 0.5], (0.0, 0.0), [sigma0, plus]).unwrap();
    assert!(gmqd_measured(&rho, Subsystem::A) < 1e-15);
    assert!(gmqd_measured(&rho, Subsystem::B) > 1e-3);
    let settings = OptimizerSettings::default();
    assert!(quantum_discord(&rho, Subsystem::A, &settings).value < 1e-9);
    assert!(quantum_discord(&rho, Subsystem::B, &settings).value > 1e-3);
}

#[test]
fn product_states_carry_no_correlation() {
    let mut r = rng(11);
    for _ in 0..20 {
        let a = common::random_qubit_state(&mut r);
        let b = common::random_qubit_state(&mut r);
        let rho = qcorr_core::validate(&kron(&a, &b)).unwrap();
        assert!(mutual_information(&rho).abs() < 1e-10);
        assert_eq!(negativity(&rho), 0.0);
        assert!(gmqd(&rho) < 1e-12);
    }
}

#[test]
fn maximally_mixed_report_is_zero() {
    let r = correlation_report(
        &DensityMatrix::maximally_mixed(),
        Subsystem::B,
        &OptimizerSettings::default(),
    );
    assert_eq!((r.discord, r.gmqd, r.negativity), (0.0, 0.0, 0.0));
    assert!(r.mutual_info.abs() < 1e-14 && r.classical_corr.abs() < 1e-14);
}
