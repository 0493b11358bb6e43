mod common;

use std::f64::consts::TAU;

use majorana_core::ion::{
    decode, doubled_propagator, encode, evolve_doubled, lift_observable, RealSpinor4,
};
use majorana_core::momentum::{
    dirac_mode_evolve, dirac_mode_propagator, majorana_mode_evolve, MomentumModePair,
};
use majorana_core::rest::{
    dirac_rest_evolve, majorana_rest_evolve, majorana_via_dirac, sigma_z_closed_form, RestEquation,
};
use majorana_core::spinor::{charge_conjugate, expectation, inner, norm, Mat2, Observable2};
use majorana_core::wavepacket::{analyze, synthesize};
use majorana_core::{PhysParams, Spinor2, C64};
use proptest::prelude::*;

fn arb_spinor() -> impl Strategy<Value = Spinor2> {
    prop::array::uniform4(-1.0f64..1.0).prop_map(|[a, b, c, d]| Spinor2::from_parts(a, b, c, d))
}

fn arb_unit_spinor() -> impl Strategy<Value = Spinor2> {
    arb_spinor()
        .prop_filter("non-zero", |s| s.norm_sqr() > 1e-6)
        .prop_map(|s| s.normalized().unwrap())
}

fn arb_params() -> impl Strategy<Value = PhysParams> {
    (0.1f64..4.0, 0.5f64..2.0, 0.5f64..2.0)
        .prop_map(|(m, hbar, c)| PhysParams::new(m, hbar, c).unwrap())
}

fn arb_hermitian() -> impl Strategy<Value = Mat2> {
    prop::array::uniform4(-2.0f64..2.0).prop_map(|[a, d, re, im]| {
        let off = C64::new(re, im);
        Mat2::new(C64::new(a, 0.0), off, off.conj(), C64::new(d, 0.0))
    })
}

proptest! {
    #[test]
    fn charge_conjugation_is_isometric_involution(psi in arb_spinor()) {
        let once = charge_conjugate(&psi).unwrap();
        let twice = charge_conjugate(&once).unwrap();
        prop_assert!(twice.max_abs_diff(&psi) <= 1e-12);
        prop_assert!((norm(&once) - norm(&psi)).abs() <= 1e-12);
    }

    #[test]
    fn hermitian_sandwich_is_real(m in arb_hermitian(), psi in arb_spinor()) {
        let raw = inner(&psi, &m.apply(psi));
        prop_assert!(raw.im.abs() <= 1e-12);
        let obs = Observable2::new(m).unwrap();
        prop_assert!((expectation(&obs, &psi).unwrap() - raw.re).abs() <= 1e-12);
    }

    #[test]
    fn majorana_rest_preserves_norm(psi in arb_unit_spinor(), params in arb_params(), t in -50.0f64..50.0) {
        let out = majorana_rest_evolve(&psi, &params, t);
        prop_assert!((norm(&out) - 1.0).abs() <= 1e-12);
        // the reason: ψ†σyψ* vanishes identically
        prop_assert!(inner(&psi, &Mat2::SIGMA_Y.apply(psi.conj())).norm() <= 1e-15);
    }

    #[test]
    fn rest_evolutions_are_periodic(psi in arb_spinor(), params in arb_params(), t in -5.0f64..5.0) {
        let period = TAU / params.omega();
        for eq in [RestEquation::Dirac, RestEquation::Majorana] {
            let a = eq.evolve(&psi, &params, t);
            let b = eq.evolve(&psi, &params, t + period);
            prop_assert!(a.max_abs_diff(&b) <= 1e-12);
        }
    }

    #[test]
    fn dirac_rest_composes(psi in arb_spinor(), params in arb_params(), t1 in -5.0f64..5.0, t2 in -5.0f64..5.0) {
        let stepped = dirac_rest_evolve(&dirac_rest_evolve(&psi, &params, t1), &params, t2);
        prop_assert!(stepped.max_abs_diff(&dirac_rest_evolve(&psi, &params, t1 + t2)) <= 1e-12);
    }

    #[test]
    fn via_dirac_matches_closed_form(psi in arb_spinor(), params in arb_params(), t in -20.0f64..20.0) {
        let a = majorana_via_dirac(&psi, &params, t);
        prop_assert!(a.max_abs_diff(&majorana_rest_evolve(&psi, &params, t)) <= 1e-12);
    }

    #[test]
    fn sigma_z_closed_form_matches_state(psi in arb_spinor(), params in arb_params(), t in -20.0f64..20.0) {
        for eq in [RestEquation::Dirac, RestEquation::Majorana] {
            let direct = expectation(&Observable2::SIGMA_Z, &eq.evolve(&psi, &params, t)).unwrap();
            prop_assert!((sigma_z_closed_form(&psi, eq, &params, t) - direct).abs() <= 1e-12);
        }
    }

    #[test]
    fn majorana_pair_norm_conserved(
        a in arb_spinor(), b in arb_spinor(), p in 0.01f64..20.0, params in arb_params(), t in -10.0f64..10.0,
    ) {
        let pair = MomentumModePair::new(p, a, b).unwrap();
        let out = majorana_mode_evolve(&pair, &params, t);
        prop_assert!((out.norm_sqr() - pair.norm_sqr()).abs() <= 1e-12);
    }

    #[test]
    fn dirac_mode_propagator_is_unitary(p in -20.0f64..20.0, params in arb_params(), t in -10.0f64..10.0) {
        let u = dirac_mode_propagator(p, &params, t);
        prop_assert!((u.adjoint() * u).max_abs_diff(&Mat2::IDENTITY) <= 1e-12);
    }

    #[test]
    fn mode_evolvers_reduce_to_rest(psi in arb_spinor(), params in arb_params(), t in -10.0f64..10.0) {
        let m = majorana_mode_evolve(&MomentumModePair::at_rest(psi), &params, t);
        prop_assert!(m.plus().max_abs_diff(&majorana_rest_evolve(&psi, &params, t)) <= 1e-12);
        let d = dirac_mode_evolve(&psi, 0.0, &params, t);
        prop_assert!(d.max_abs_diff(&dirac_rest_evolve(&psi, &params, t)) <= 1e-12);
    }

    #[test]
    fn doubled_group_law(params in arb_params(), t1 in -10.0f64..10.0, t2 in -10.0f64..10.0) {
        let composed = doubled_propagator(&params, t1) * doubled_propagator(&params, t2);
        prop_assert!(composed.max_abs_diff(&doubled_propagator(&params, t1 + t2)) <= 1e-13);
    }

    #[test]
    fn decode_intertwines_evolution(v in prop::array::uniform4(-1.0f64..1.0), params in arb_params(), t in -10.0f64..10.0) {
        let psi4 = RealSpinor4(v);
        let lhs = decode(&evolve_doubled(&psi4, &params, t));
        let rhs = majorana_rest_evolve(&decode(&psi4), &params, t);
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-12);
    }

    #[test]
    fn encode_decode_round_trip(psi in arb_spinor()) {
        let enc = encode(&psi);
        prop_assert_eq!(decode(&enc), psi);
        prop_assert!((enc.norm_sqr() - psi.norm_sqr()).abs() <= 1e-15);
    }

    #[test]
    fn lift_is_real_linear(a in arb_hermitian(), b in arb_hermitian(), alpha in -3.0f64..3.0, beta in -3.0f64..3.0) {
        let combo = a.scale(C64::new(alpha, 0.0)) + b.scale(C64::new(beta, 0.0));
        let lhs = lift_observable(&Observable2::new(combo).unwrap());
        let la = lift_observable(&Observable2::new(a).unwrap());
        let lb = lift_observable(&Observable2::new(b).unwrap());
        prop_assert!(lhs.matrix().hermitian_defect() <= 1e-12);
        for r in 0..4 {
            for c in 0..4 {
                let expected = la.matrix().0[r][c] * alpha + lb.matrix().0[r][c] * beta;
                prop_assert!((lhs.matrix().0[r][c] - expected).norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn fourier_round_trip(seed in any::<u64>(), log_n in 1usize..9, box_length in 1.0f64..500.0) {
        let n = 1 << log_n;
        let mut rng = common::rng(seed);
        let psi: Vec<Spinor2> = (0..n).map(|_| common::spinor(&mut rng)).collect();
        let back = synthesize(&analyze(&psi, box_length, 1.0), box_length, 1.0);
        for (a, b) in psi.iter().zip(&back) {
            prop_assert!(a.max_abs_diff(b) <= 1e-12);
        }
    }
}

#[test]
fn charge_conjugation_on_ten_thousand_spinors() {
    let mut rng = common::rng(11);
    for _ in 0..10_000 {
        let psi = common::spinor(&mut rng);
        let once = charge_conjugate(&psi).unwrap();
        assert!(charge_conjugate(&once).unwrap().max_abs_diff(&psi) <= 1e-12);
        assert!((norm(&once) - norm(&psi)).abs() <= 1e-12);
    }
}

#[test]
fn expectation_reality_on_ten_thousand_observables() {
    let mut rng = common::rng(12);
    for _ in 0..10_000 {
        let a = common::hermitian(&mut rng);
        let psi = common::spinor(&mut rng);
        assert!(inner(&psi, &a.matrix().apply(psi)).im.abs() <= 1e-12);
    }
}

#[test]
fn decode_intertwines_on_basis() {
    let params = PhysParams::with_omega(0.8).unwrap();
    for k in 0..4 {
        let mut v = [0.0; 4];
        v[k] = 1.0;
        let psi4 = RealSpinor4(v);
        for t in [-3.0, 0.4, 2.0] {
            let lhs = decode(&evolve_doubled(&psi4, &params, t));
            let rhs = majorana_rest_evolve(&decode(&psi4), &params, t);
            assert!(lhs.max_abs_diff(&rhs) <= 1e-15);
        }
    }
}

#[test]
fn conjugate_swap_relation_holds_along_trajectory() {
    // -iħ ∂t ψ*_{-p} = -cp σx ψ*_{-p} - i mc² σy ψ_p
    let params = PhysParams::new(1.3, 0.9, 1.1).unwrap();
    let p = 0.7;
    let pair = MomentumModePair::new(
        p,
        Spinor2::from_parts(0.3, -0.4, 0.5, 0.1),
        Spinor2::from_parts(-0.2, 0.6, 0.1, 0.3),
    )
    .unwrap();
    let minus_conj = |t: f64| majorana_mode_evolve(&pair, &params, t).minus().conj();
    let residual = |t: f64, dt: f64| {
        let deriv = (minus_conj(t + dt) - minus_conj(t - dt)).scale_re(0.5 / dt);
        let lhs = deriv.scale(C64::new(0.0, -params.hbar));
        let state = majorana_mode_evolve(&pair, &params, t);
        let rhs = Mat2::SIGMA_X.apply(minus_conj(t)).scale_re(-p * params.c)
            + Mat2::SIGMA_Y
                .apply(*state.plus())
                .scale(C64::new(0.0, -params.rest_energy()));
        (lhs - rhs).norm_sqr().sqrt()
    };
    for t in [0.0, 0.8, 3.1] {
        let (r1, r2) = (residual(t, 1e-3), residual(t, 5e-4));
        assert!(r1 < 1e-5, "residual {r1}");
        assert!((r1 / r2 - 4.0).abs() < 0.1, "ratio {}", r1 / r2);
    }
}

#[test]
fn majorana_pair_satisfies_first_order_equation() {
    // iħ ∂t ψ_p = cp σx ψ_p - i mc² σy ψ*_{-p}
    let params = PhysParams::default();
    let p = 1.0;
    let pair = MomentumModePair::new(
        p,
        Spinor2::from_parts(0.3, -0.4, 0.5, 0.1),
        Spinor2::from_parts(-0.2, 0.6, 0.1, 0.3),
    )
    .unwrap();
    let at = |t: f64| majorana_mode_evolve(&pair, &params, t);
    let dt = 1e-4;
    for t in [0.2, 1.7] {
        let deriv = (*at(t + dt).plus() - *at(t - dt).plus()).scale_re(0.5 / dt);
        let lhs = deriv.scale(C64::new(0.0, params.hbar));
        let now = at(t);
        let rhs = Mat2::SIGMA_X.apply(*now.plus()).scale_re(p * params.c)
            + Mat2::SIGMA_Y
                .apply(now.minus().conj())
                .scale(C64::new(0.0, -params.rest_energy()));
        assert!(lhs.max_abs_diff(&rhs) < 1e-7);
    }
}
