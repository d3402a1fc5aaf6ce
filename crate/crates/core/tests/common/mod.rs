#![allow(dead_code)]

use galilean_fw::{AdmissibleCurve, ScalarFn};
use proptest::prelude::*;

/// y = x², z = x³ over [0, 1].
pub fn cubic() -> AdmissibleCurve {
    AdmissibleCurve::polynomial(vec![0.0, 0.0, 1.0], vec![0.0, 0.0, 0.0, 1.0], (0.0, 1.0)).unwrap()
}

/// y = cos 3x, z = sin 3x: κ ≡ 9, τ ≡ 3.
pub fn helix() -> AdmissibleCurve {
    AdmissibleCurve::new(
        ScalarFn::zero().with_trig(1.0, 0.0, 3.0),
        ScalarFn::zero().with_trig(0.0, 1.0, 3.0),
        (0.0, std::f64::consts::FRAC_PI_3),
    )
    .unwrap()
}

/// y = x² + 0.1 sin 2x, z = x³/3 + 0.2 cos x: y″ ≥ 1.6.
pub fn mixed() -> AdmissibleCurve {
    AdmissibleCurve::new(
        ScalarFn::polynomial(vec![0.0, 0.0, 1.0]).with_trig(0.0, 0.1, 2.0),
        ScalarFn::polynomial(vec![0.0, 0.0, 0.0, 1.0 / 3.0]).with_trig(0.2, 0.0, 1.0),
        (0.0, 1.0),
    )
    .unwrap()
}

pub fn line() -> AdmissibleCurve {
    AdmissibleCurve::polynomial(vec![0.25, -1.0], vec![1.0, 0.5], (0.0, 1.0)).unwrap()
}

pub fn test_curves() -> Vec<AdmissibleCurve> {
    vec![cubic(), helix(), mixed()]
}

/// Curves on [0, 1] whose y″ is bounded away from zero: y = x² + Σ small terms.
pub fn arb_curve() -> impl Strategy<Value = AdmissibleCurve> {
    (
        0.5..2.0f64,
        prop::collection::vec(-0.3..0.3f64, 2),
        prop::collection::vec(-1.0..1.0f64, 5),
        -0.3..0.3f64,
        0.5..2.5f64,
    )
        .prop_map(|(a, y_extra, z, amp, w)| {
            let mut ypoly = vec![0.0, 0.1, a];
            ypoly.extend(y_extra.iter().map(|c| c * 0.1));
            let y = ScalarFn::polynomial(ypoly).with_trig(0.0, amp * 0.05, w);
            let zf = ScalarFn::polynomial(z).with_trig(amp, 0.0, w);
            AdmissibleCurve::new(y, zf, (0.0, 1.0)).unwrap()
        })
}

pub fn arb_scalar() -> impl Strategy<Value = ScalarFn> {
    (
        prop::collection::vec(-1.5..1.5f64, 1..4),
        -1.0..1.0f64,
        -1.0..1.0f64,
        0.1..3.0f64,
    )
        .prop_map(|(p, a, b, w)| ScalarFn::polynomial(p).with_trig(a, b, w))
}
