//! Darboux frames `{T, Q, n}` along a curve.
//!
//! No surface patch is modelled. A [`SurfaceAttachment`] gives the angle `φ(x)` by which
//! `{Q, n}` is rotated against `{N, B}` in the isotropic plane:
//!
//! ```text
//! Q = cos φ·N + sin φ·B,    n = −sin φ·N + cos φ·B
//! ```
//!
//! which yields `κ_g = κ cos φ`, `κ_n = −κ sin φ` and `τ_g = φ′ + τ`, and the frame obeys
//! `T′ = κ_g Q + κ_n n`, `Q′ = τ_g n`, `n′ = −τ_g Q`.

use serde::{Deserialize, Serialize};

use crate::curve::{AdmissibleCurve, FrenetSample, KAPPA_MIN};
use crate::error::{GeomError, Result};
use crate::galilean::{g_dot, GVec3};
use crate::report::CheckReport;
use crate::scalar::ScalarFn;

/// Tolerance for relations that hold exactly in real arithmetic.
pub const IDENTITY_TOL: f64 = 1e-12;

/// Tolerance used when reporting which sign convention closes the torsion relation.
pub const KT_CLOSE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SurfaceAttachment {
    pub phi: ScalarFn,
}

impl SurfaceAttachment {
    pub fn new(phi: ScalarFn) -> Self {
        Self { phi }
    }

    /// `φ ≡ c`.
    pub fn constant(c: f64) -> Self {
        Self::new(ScalarFn::constant(c))
    }

    /// The attachment with `φ′ = −τ`, making `τ_g ≡ 0`. Needs a curve of constant torsion.
    pub fn line_of_curvature(tau: f64, phi0: f64) -> Self {
        Self::new(ScalarFn::polynomial(vec![phi0, -tau]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DarbouxSample {
    pub x: f64,
    pub t: GVec3,
    pub q: GVec3,
    pub n: GVec3,
    pub kappa_g: f64,
    pub kappa_n: f64,
    pub tau_g: f64,
    /// `κ_g′` and `κ_n′` from `κ′` and `φ′`.
    pub dkappa_g: f64,
    pub dkappa_n: f64,
    pub kappa: f64,
    pub tau: f64,
}

impl DarbouxSample {
    pub fn frame(&self) -> [GVec3; 3] {
        [self.t, self.q, self.n]
    }

    /// `(T′, Q′, n′)` from the Darboux frame equations.
    pub fn frame_derivatives(&self) -> [GVec3; 3] {
        [
            self.kappa_g * self.q + self.kappa_n * self.n,
            self.tau_g * self.n,
            -self.tau_g * self.q,
        ]
    }
}

/// Frame vectors and invariants, with `κ′`, at one point. On a straight line the Frenet
/// frame is undefined and callers can opt into the constant completion `{e₁, e₂, e₃}`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct FrenetPoint {
    pub sample: FrenetSample,
    pub dkappa: f64,
    pub dn: GVec3,
    pub db: GVec3,
}

impl FrenetPoint {
    pub(crate) fn at(c: &AdmissibleCurve, x: f64, completion: bool) -> Result<Self> {
        match c.frenet_unchecked(x) {
            Ok(sample) => {
                let d = c.frenet_derivatives_unchecked(x)?;
                Ok(Self {
                    sample,
                    dkappa: d.dkappa,
                    dn: d.dn,
                    db: d.db,
                })
            }
            Err(GeomError::DegenerateCurvature { .. }) if completion => Ok(Self {
                sample: FrenetSample {
                    x,
                    t: c.derivative_unchecked(x, 1),
                    n: GVec3::E2,
                    b: GVec3::E3,
                    kappa: 0.0,
                    tau: 0.0,
                },
                dkappa: 0.0,
                dn: GVec3::ZERO,
                db: GVec3::ZERO,
            }),
            Err(e) => Err(e),
        }
    }
}

pub(crate) fn darboux_at(
    c: &AdmissibleCurve,
    att: &SurfaceAttachment,
    x: f64,
    completion: bool,
) -> Result<(DarbouxSample, [GVec3; 3])> {
    let fp = FrenetPoint::at(c, x, completion)?;
    let f = fp.sample;
    let phi = att.phi.eval(x);
    let dphi = att.phi.derivative(x, 1);
    let (s, co) = phi.sin_cos();
    let q = co * f.n + s * f.b;
    let n = -s * f.n + co * f.b;
    let accel = c.derivative_unchecked(x, 2);
    let sample = DarbouxSample {
        x,
        t: f.t,
        q,
        n,
        kappa_g: f.kappa * co,
        kappa_n: -f.kappa * s,
        tau_g: dphi + f.tau,
        dkappa_g: fp.dkappa * co - f.kappa * dphi * s,
        dkappa_n: -fp.dkappa * s - f.kappa * dphi * co,
        kappa: f.kappa,
        tau: f.tau,
    };
    // ambient derivatives by the product rule, independent of the frame equations
    let dq = dphi * (-s * f.n + co * f.b) + co * fp.dn + s * fp.db;
    let dn = dphi * (-co * f.n - s * f.b) - s * fp.dn + co * fp.db;
    Ok((sample, [accel, dq, dn]))
}

pub fn darboux_frame(
    c: &AdmissibleCurve,
    att: &SurfaceAttachment,
    x: f64,
) -> Result<DarbouxSample> {
    c.check_domain(x)?;
    Ok(darboux_at(c, att, x, false)?.0)
}

/// Ambient `(T′, Q′, n′)` by differentiating the construction directly.
pub fn darboux_derivatives(
    c: &AdmissibleCurve,
    att: &SurfaceAttachment,
    x: f64,
) -> Result<[GVec3; 3]> {
    c.check_domain(x)?;
    Ok(darboux_at(c, att, x, false)?.1)
}

/// `τ_g` from a central difference of `Q`, projected on `n`.
pub fn tau_g_finite_difference(
    c: &AdmissibleCurve,
    att: &SurfaceAttachment,
    x: f64,
    h: f64,
) -> Result<f64> {
    let s = darboux_frame(c, att, x)?;
    let fwd = darboux_at(c, att, x + h, false)?.0;
    let bwd = darboux_at(c, att, x - h, false)?.0;
    Ok(g_dot((1.0 / (2.0 * h)) * (fwd.q - bwd.q), s.n))
}

/// Central-difference residuals `‖ΔT/Δx − κ_gQ − κ_nn‖`, `‖ΔQ/Δx − τ_g n‖`, `‖Δn/Δx + τ_g Q‖`.
pub fn darboux_frame_residuals(
    c: &AdmissibleCurve,
    att: &SurfaceAttachment,
    x: f64,
    h: f64,
) -> Result<[f64; 3]> {
    let s = darboux_frame(c, att, x)?;
    let fwd = darboux_at(c, att, x + h, false)?.0.frame();
    let bwd = darboux_at(c, att, x - h, false)?.0.frame();
    let analytic = s.frame_derivatives();
    let mut out = [0.0; 3];
    for i in 0..3 {
        out[i] = ((1.0 / (2.0 * h)) * (fwd[i] - bwd[i]) - analytic[i]).euclidean_norm();
    }
    Ok(out)
}

/// Signs in `τ = s_g·τ_g + s_b·(κ_g′κ_n − κ_gκ_n′)/(κ_g² + κ_n²)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignConvention {
    pub tau_g_sign: i8,
    pub bracket_sign: i8,
}

impl SignConvention {
    /// The form printed alongside `κ² = κ_g² + κ_n²`: `τ = −τ_g + bracket`.
    pub const PRINTED: SignConvention = SignConvention {
        tau_g_sign: -1,
        bracket_sign: 1,
    };
    pub const NEGATED_TAU_G: SignConvention = SignConvention {
        tau_g_sign: 1,
        bracket_sign: 1,
    };
    pub const NEGATED_BRACKET: SignConvention = SignConvention {
        tau_g_sign: -1,
        bracket_sign: -1,
    };
    pub const NEGATED_BOTH: SignConvention = SignConvention {
        tau_g_sign: 1,
        bracket_sign: -1,
    };
    pub const ALL: [SignConvention; 4] = [
        Self::PRINTED,
        Self::NEGATED_TAU_G,
        Self::NEGATED_BRACKET,
        Self::NEGATED_BOTH,
    ];

    pub fn label(&self) -> &'static str {
        match (self.tau_g_sign, self.bracket_sign) {
            (-1, 1) => "tau = -tau_g + bracket",
            (1, 1) => "tau = +tau_g + bracket",
            (-1, -1) => "tau = -tau_g - bracket",
            _ => "tau = +tau_g - bracket",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KtRelationReport {
    pub x: f64,
    /// `|κ² − (κ_g² + κ_n²)|`.
    pub kappa_identity: f64,
    /// `(κ_g′κ_n − κ_gκ_n′)/(κ_g² + κ_n²)`.
    pub bracket: f64,
    pub conventions: Vec<(SignConvention, f64)>,
    /// `|τ_g(analytic) − τ_g(central difference of Q)|`.
    pub tau_g_fd: f64,
}

impl KtRelationReport {
    /// Conventions whose residual is below `tol`.
    pub fn closing(&self, tol: f64) -> Vec<SignConvention> {
        self.conventions
            .iter()
            .filter(|(_, r)| *r <= tol)
            .map(|(c, _)| *c)
            .collect()
    }

    pub fn residual(&self, conv: SignConvention) -> f64 {
        self.conventions
            .iter()
            .find(|(c, _)| *c == conv)
            .map(|(_, r)| *r)
            .unwrap_or(f64::NAN)
    }

    pub fn to_report(&self) -> CheckReport {
        let mut r = CheckReport::new();
        r.push(
            "kappa^2 = kappa_g^2 + kappa_n^2",
            self.kappa_identity,
            IDENTITY_TOL,
        );
        r.push(
            "tau_g analytic vs finite difference",
            self.tau_g_fd,
            crate::curve::FD_TOL,
        );
        let mut best = f64::INFINITY;
        for (conv, res) in &self.conventions {
            r.push_info(format!("torsion relation [{}]", conv.label()), *res);
            best = best.min(*res);
        }
        r.push(
            "torsion relation closes under some convention",
            best,
            KT_CLOSE_TOL,
        );
        r
    }
}

pub fn verify_kt_relations(
    c: &AdmissibleCurve,
    att: &SurfaceAttachment,
    x: f64,
) -> Result<KtRelationReport> {
    let s = darboux_frame(c, att, x)?;
    let denom = s.kappa_g * s.kappa_g + s.kappa_n * s.kappa_n;
    if denom <= KAPPA_MIN * KAPPA_MIN {
        return Err(GeomError::DegenerateCurvature {
            x,
            kappa: denom.sqrt(),
        });
    }
    let bracket = (s.dkappa_g * s.kappa_n - s.kappa_g * s.dkappa_n) / denom;
    let conventions = SignConvention::ALL
        .iter()
        .map(|&conv| {
            let rhs = conv.tau_g_sign as f64 * s.tau_g + conv.bracket_sign as f64 * bracket;
            (conv, (s.tau - rhs).abs())
        })
        .collect();
    let fd = tau_g_finite_difference(c, att, x, 1e-4)?;
    Ok(KtRelationReport {
        x,
        kappa_identity: (s.kappa * s.kappa - denom).abs(),
        bracket,
        conventions,
        tau_g_fd: (fd - s.tau_g).abs(),
    })
}

/// `true` iff `|τ_g| <= tol` at every sample. An empty list is not a line of curvature.
pub fn line_of_curvature_check(samples: &[DarbouxSample], tol: f64) -> bool {
    !samples.is_empty() && samples.iter().all(|s| s.tau_g.abs() <= tol)
}

/// `true` iff `|(κ_g/κ_n)′| <= tol` at every sample, using the analytic quotient rule.
pub fn ratio_constancy_check(samples: &[DarbouxSample], tol: f64) -> Result<bool> {
    let mut ok = !samples.is_empty();
    for s in samples {
        if s.kappa_n.abs() <= KAPPA_MIN {
            return Err(GeomError::DegenerateRatio {
                x: s.x,
                kappa_n: s.kappa_n,
            });
        }
        let d = (s.dkappa_g * s.kappa_n - s.kappa_g * s.dkappa_n) / (s.kappa_n * s.kappa_n);
        ok &= d.abs() <= tol;
    }
    Ok(ok)
}
