mod common;

use common::*;
use galilean_fw::darboux::{darboux_frame, SurfaceAttachment};
use galilean_fw::fermi_walker::*;
use galilean_fw::quadrature::{integrate, SimpsonOptions};
use galilean_fw::{g_dot, AdmissibleCurve, ScalarFn};
use proptest::prelude::*;
use std::f64::consts::FRAC_PI_3;

/// θ(x) = ∫₀ˣ 12/(4 + 36t²) dt = arctan(3x) for y = x², z = x³.
fn cubic_theta(x: f64) -> f64 {
    (3.0 * x).atan()
}

#[test]
fn torsion_antiderivative_matches_quadrature() {
    let c = cubic();
    for x in [0.25, 0.5, 1.0] {
        let q = integrate(|t| c.torsion(t), 0.0, x, SimpsonOptions::default()).unwrap();
        assert!((q - cubic_theta(x)).abs() < 1e-12, "x={x}");
    }
}

#[test]
fn helix_transport_half_turn() {
    let c = helix();
    let init = TransportState::new(Basis::Frenet, 0.0, [0.0, 1.0, 0.0]);
    let traj = transport_integrate(&c, Basis::Frenet, None, &init, FRAC_PI_3, 1e-3).unwrap();
    let last = traj.last().unwrap();
    assert_eq!(last.x, FRAC_PI_3);
    assert!((last.lambda2 + 1.0).abs() < 1e-8);
    assert!(last.lambda3.abs() < 1e-8);
}

#[test]
fn cubic_transport_matches_closed_form() {
    let c = cubic();
    let init = TransportState::new(Basis::Frenet, 0.0, [0.5, 1.0, -0.25]);
    let traj = transport_integrate(&c, Basis::Frenet, None, &init, 1.0, 1e-3).unwrap();
    let form = TransportClosedForm::from_initial(&init);
    for s in traj.iter().step_by(50) {
        let cf = transport_closed_form(&c, None, &form, s.x).unwrap();
        assert!((cf.lambda2 - s.lambda2).abs() < 1e-8);
        assert!((cf.lambda3 - s.lambda3).abs() < 1e-8);
        assert_eq!(cf.lambda1, s.lambda1);
    }
    let end = form.at_angle(1.0, cubic_theta(1.0));
    let last = traj.last().unwrap();
    assert!((end.lambda2 - last.lambda2).abs() < 1e-8);
}

#[test]
fn rk4_error_is_fourth_order() {
    let c = cubic();
    let init = TransportState::new(Basis::Frenet, 0.0, [0.0, 1.0, 0.0]);
    let form = TransportClosedForm::from_initial(&init);
    let err = |h: f64| {
        transport_integrate(&c, Basis::Frenet, None, &init, 1.0, h)
            .unwrap()
            .iter()
            .map(|s| {
                let cf = form.at_angle(s.x, cubic_theta(s.x));
                (cf.lambda2 - s.lambda2)
                    .abs()
                    .max((cf.lambda3 - s.lambda3).abs())
            })
            .fold(0.0, f64::max)
    };
    let (e4, e2, e1) = (err(4e-3), err(2e-3), err(1e-3));
    for ratio in [e4 / e2, e2 / e1] {
        assert!((12.0..20.0).contains(&ratio), "ratio {ratio}");
    }
}

#[test]
fn darboux_transport_matches_closed_form() {
    let c = mixed();
    let att = SurfaceAttachment::new(ScalarFn::polynomial(vec![0.2, -0.7, 1.3]));
    let init = TransportState::new(Basis::Darboux, 0.1, [1.0, -0.4, 0.9]);
    let traj = transport_integrate(&c, Basis::Darboux, Some(&att), &init, 0.9, 1e-3).unwrap();
    let form = TransportClosedForm::from_initial(&init);
    // θ = ∫τ_g = φ(x) − φ(x₀) + ∫τ
    for s in traj.iter().step_by(80) {
        let tau_int = integrate(|t| c.torsion(t), 0.1, s.x, SimpsonOptions::default()).unwrap();
        let theta = att.phi.eval(s.x) - att.phi.eval(0.1) + tau_int;
        let cf = form.at_angle(s.x, theta);
        assert!((cf.lambda2 - s.lambda2).abs() < 1e-8);
        assert!((cf.lambda3 - s.lambda3).abs() < 1e-8);
    }
}

#[test]
fn line_of_curvature_freezes_darboux_coefficients() {
    let c = helix();
    let att = SurfaceAttachment::line_of_curvature(3.0, 0.0);
    let init = TransportState::new(Basis::Darboux, 0.0, [0.3, 0.6, -0.2]);
    let traj = transport_integrate(&c, Basis::Darboux, Some(&att), &init, 1.0, 1e-2).unwrap();
    for s in traj {
        assert!((s.lambda2 - 0.6).abs() < 1e-12 && (s.lambda3 + 0.2).abs() < 1e-12);
    }
}

#[test]
fn transported_field_has_vanishing_fw_derivative() {
    for c in test_curves() {
        let (lo, hi) = c.domain;
        let init = TransportState::new(Basis::Frenet, lo, [0.7, 0.2, -1.1]);
        let traj = transport_integrate(&c, Basis::Frenet, None, &init, hi, 1e-3).unwrap();
        for s in traj.iter().step_by(37) {
            let fp = FramePoint::at(&c, None, Basis::Frenet, s.x, false).unwrap();
            let rhs = transport_ode_rhs(&fp.invariants, s).unwrap();
            let jet = FieldJet {
                lambda: s.lambda(),
                dlambda: rhs.dlambda,
            };
            assert!(fw_derivative_at(&fp, &jet).euclidean_norm() < 1e-6);
        }
    }
}

#[test]
fn closed_form_satisfies_the_ode() {
    let c = cubic();
    let form = TransportClosedForm {
        basis: Basis::Frenet,
        x0: 0.0,
        lambda1: 1.0,
        c1: 0.8,
        c2: -0.3,
    };
    for x in c.sample_points(21) {
        let theta = form.theta(&c, None, x).unwrap();
        let state = form.at_angle(x, theta);
        let inv = local_invariants(&c, None, Basis::Frenet, x).unwrap();
        let rhs = transport_ode_rhs(&inv, &state).unwrap();
        let d = form.derivative_at_angle(theta, c.torsion(x).unwrap());
        for (a, b) in d.iter().zip(rhs.dlambda) {
            assert!((a - b).abs() < 1e-9);
        }
        assert!((state.isotropic_norm_sq() - (0.64 + 0.09)).abs() < 1e-15);
    }
}

#[test]
fn isometry_of_transport() {
    for c in test_curves() {
        let (lo, hi) = c.domain;
        let a = TransportState::new(Basis::Frenet, lo, [0.0, 0.6, -0.8]);
        let b = TransportState::new(Basis::Frenet, lo, [0.0, 1.5, 0.25]);
        let ta = transport_integrate(&c, Basis::Frenet, None, &a, hi, 1e-3).unwrap();
        let tb = transport_integrate(&c, Basis::Frenet, None, &b, hi, 1e-3).unwrap();
        let ga = |s: &TransportState| {
            FramePoint::at(&c, None, Basis::Frenet, s.x, false)
                .unwrap()
                .ambient(s.lambda())
        };
        let g0 = g_dot(ga(&ta[0]), ga(&tb[0]));
        for (sa, sb) in ta.iter().zip(&tb) {
            assert_eq!(sa.lambda1, 0.0);
            assert!((sa.isotropic_norm_sq() - 1.0).abs() < 1e-10);
            assert!((g_dot(ga(sa), ga(sb)) - g0).abs() < 1e-10);
        }
    }
}

fn arb_field(basis: Basis, isotropic: bool) -> impl Strategy<Value = FrameVectorField> {
    (arb_scalar(), arb_scalar(), arb_scalar()).prop_map(move |(a, b, c)| {
        let l1 = if isotropic {
            ScalarFn::zero()
        } else {
            a.plus_affine(2.0, 0.0)
        };
        FrameVectorField::new(basis, l1, b, c)
    })
}

fn check_lemmas(
    c: &AdmissibleCurve,
    att: &SurfaceAttachment,
    f: &FrameVectorField,
    d: &FrameVectorField,
    x: f64,
) -> Result<(), TestCaseError> {
    let def = fw_derivative_definition(c, None, f, x).unwrap();
    let lem = fw_derivative_frenet(c, f, x).unwrap();
    prop_assert!((def - lem).max_abs() < 1e-12, "frenet {def:?} {lem:?}");
    let def = fw_derivative_definition(c, Some(att), d, x).unwrap();
    let lem = fw_derivative_darboux(c, att, d, x).unwrap();
    prop_assert!((def - lem).max_abs() < 1e-12, "darboux {def:?} {lem:?}");
    Ok(())
}

proptest! {
    #[test]
    fn lemma_forms_equal_definition(
        c in arb_curve(),
        phi in arb_scalar(),
        iso in arb_field(Basis::Frenet, true),
        non in arb_field(Basis::Frenet, false),
        x in 0.0..1.0f64,
    ) {
        let att = SurfaceAttachment::new(phi);
        for f in [iso, non] {
            let d = FrameVectorField { basis: Basis::Darboux, ..f.clone() };
            check_lemmas(&c, &att, &f, &d, x)?;
        }
    }

    #[test]
    fn tangent_is_transported(c in arb_curve(), phi in arb_scalar(), x in 0.0..1.0f64) {
        let att = SurfaceAttachment::new(phi);
        let t = FrameVectorField::frame_vector(Basis::Frenet, 0);
        prop_assert!(fw_derivative_definition(&c, None, &t, x).unwrap().max_abs() < 1e-12);
        let t = FrameVectorField::frame_vector(Basis::Darboux, 0);
        prop_assert!(fw_derivative_definition(&c, Some(&att), &t, x).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn kappa_splits_into_geodesic_and_normal(c in arb_curve(), phi in arb_scalar(), x in 0.0..1.0f64) {
        let s = darboux_frame(&c, &SurfaceAttachment::new(phi), x).unwrap();
        let k = c.curvature(x).unwrap();
        prop_assert!((k * k - s.kappa_g * s.kappa_g - s.kappa_n * s.kappa_n).abs() < 1e-12);
    }
}
