//! The Fermi-Walker derivative along admissible curves and Fermi-Walker transport.
//!
//! For a vector field `X` along a curve with tangent `T` and `A = ∇_T T = α″`,
//!
//! ```text
//! ∇̃_T X = ∇_T X − ⟨T, X⟩A + ⟨A, X⟩T
//! ```
//!
//! with the Galilean product. Because `A` is isotropic and `T` is not, only one of the
//! two correction terms survives: `+κ⟨N, X⟩T` for isotropic `X`, `−κ⟨T, X⟩N` otherwise.
//! Writing `X` in a moving basis turns `∇̃_T X = 0` into a small linear ODE for the
//! coefficients, a rotation of `(λ₂, λ₃)` by `θ = ∫τ` (Frenet) or `θ = ∫τ_g` (Darboux)
//! with `λ₁` frozen.

use serde::{Deserialize, Serialize};

use crate::curve::{AdmissibleCurve, KAPPA_MIN};
use crate::darboux::{darboux_at, FrenetPoint, SurfaceAttachment};
use crate::error::{GeomError, Result};
use crate::galilean::{g_dot, GVec3, EPS_ISO};
use crate::ode::rk4_trajectory;
use crate::quadrature::{integrate, SimpsonOptions};
use crate::report::CheckReport;
use crate::scalar::ScalarFn;

/// Default RK4 step.
pub const DEFAULT_STEP: f64 = 1e-3;

/// Default tolerance for coincidence and non-rotating verdicts.
pub const COINCIDENCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// `{T, N, B}`
    Frenet,
    /// `{T, Q, n}`
    Darboux,
}

/// `X = λ₁T + λ₂U + λ₃W` with `{U, W}` = `{N, B}` or `{Q, n}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameVectorField {
    pub basis: Basis,
    pub lambda1: ScalarFn,
    pub lambda2: ScalarFn,
    pub lambda3: ScalarFn,
}

impl FrameVectorField {
    pub fn new(basis: Basis, lambda1: ScalarFn, lambda2: ScalarFn, lambda3: ScalarFn) -> Self {
        Self {
            basis,
            lambda1,
            lambda2,
            lambda3,
        }
    }

    /// A field with constant coefficients.
    pub fn constant(basis: Basis, lambda: [f64; 3]) -> Self {
        Self::new(
            basis,
            ScalarFn::constant(lambda[0]),
            ScalarFn::constant(lambda[1]),
            ScalarFn::constant(lambda[2]),
        )
    }

    /// The `i`-th basis vector itself (0: `T`, 1: `N`/`Q`, 2: `B`/`n`).
    pub fn frame_vector(basis: Basis, i: usize) -> Self {
        let mut l = [0.0; 3];
        l[i] = 1.0;
        Self::constant(basis, l)
    }

    /// Isotropic iff `λ₁ ≡ 0`.
    pub fn is_isotropic(&self) -> bool {
        self.lambda1.is_zero()
    }

    /// Only the tangential coefficient can be non-zero.
    fn tangential_only(&self) -> bool {
        self.lambda2.is_zero() && self.lambda3.is_zero()
    }

    pub fn jet(&self, x: f64) -> FieldJet {
        let f = [&self.lambda1, &self.lambda2, &self.lambda3];
        FieldJet {
            lambda: f.map(|l| l.eval(x)),
            dlambda: f.map(|l| l.derivative(x, 1)),
        }
    }
}

/// Coefficients and their first derivatives at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldJet {
    pub lambda: [f64; 3],
    pub dlambda: [f64; 3],
}

/// Invariants driving the transport system at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LocalInvariants {
    Frenet {
        kappa: f64,
        tau: f64,
    },
    Darboux {
        kappa_g: f64,
        kappa_n: f64,
        tau_g: f64,
    },
}

impl LocalInvariants {
    pub fn basis(&self) -> Basis {
        match self {
            LocalInvariants::Frenet { .. } => Basis::Frenet,
            LocalInvariants::Darboux { .. } => Basis::Darboux,
        }
    }

    /// The rotation rate of the isotropic pair: `τ` or `τ_g`.
    pub fn rotation_rate(&self) -> f64 {
        match *self {
            LocalInvariants::Frenet { tau, .. } => tau,
            LocalInvariants::Darboux { tau_g, .. } => tau_g,
        }
    }

    /// `T′ = a·U + b·W` in the moving basis.
    fn tangent_rates(&self) -> (f64, f64) {
        match *self {
            LocalInvariants::Frenet { kappa, .. } => (kappa, 0.0),
            LocalInvariants::Darboux {
                kappa_g, kappa_n, ..
            } => (kappa_g, kappa_n),
        }
    }
}

/// A moving frame at one point: vectors, their ambient derivatives and the invariants.
#[derive(Debug, Clone, Copy)]
pub struct FramePoint {
    pub x: f64,
    pub basis: Basis,
    pub vectors: [GVec3; 3],
    /// Ambient derivatives of the three vectors, computed without the frame equations.
    pub derivatives: [GVec3; 3],
    /// `A = ∇_T T = α″`.
    pub accel: GVec3,
    pub invariants: LocalInvariants,
}

impl FramePoint {
    /// Builds the frame at `x`. With `completion`, a point of vanishing curvature uses the
    /// constant frame `{T, e₂, e₃}` (rotated by `φ` for the Darboux basis).
    pub fn at(
        c: &AdmissibleCurve,
        att: Option<&SurfaceAttachment>,
        basis: Basis,
        x: f64,
        completion: bool,
    ) -> Result<Self> {
        c.check_domain(x)?;
        match basis {
            Basis::Frenet => {
                let fp = FrenetPoint::at(c, x, completion)?;
                let s = fp.sample;
                let accel = c.derivative_unchecked(x, 2);
                Ok(Self {
                    x,
                    basis,
                    vectors: [s.t, s.n, s.b],
                    derivatives: [accel, fp.dn, fp.db],
                    accel,
                    invariants: LocalInvariants::Frenet {
                        kappa: s.kappa,
                        tau: s.tau,
                    },
                })
            }
            Basis::Darboux => {
                let att = att.ok_or(GeomError::MissingAttachment)?;
                let (s, derivatives) = darboux_at(c, att, x, completion)?;
                Ok(Self {
                    x,
                    basis,
                    vectors: s.frame(),
                    derivatives,
                    accel: derivatives[0],
                    invariants: LocalInvariants::Darboux {
                        kappa_g: s.kappa_g,
                        kappa_n: s.kappa_n,
                        tau_g: s.tau_g,
                    },
                })
            }
        }
    }

    /// `Σ λᵢFᵢ`, with the first component snapped to zero below [`EPS_ISO`].
    pub fn ambient(&self, lambda: [f64; 3]) -> GVec3 {
        let [t, u, w] = self.vectors;
        (lambda[0] * t + lambda[1] * u + lambda[2] * w).snapped()
    }

    /// `∇_T X` by the product rule on ambient components.
    pub fn ambient_derivative(&self, jet: &FieldJet) -> GVec3 {
        (0..3).fold(GVec3::ZERO, |acc, i| {
            acc + jet.dlambda[i] * self.vectors[i] + jet.lambda[i] * self.derivatives[i]
        })
    }

    /// `∇_T X` from the frame equations, as coefficients in the moving basis.
    fn frame_equation_derivative(&self, jet: &FieldJet) -> [f64; 3] {
        let [l1, l2, l3] = jet.lambda;
        let [d1, d2, d3] = jet.dlambda;
        let (a, b) = self.invariants.tangent_rates();
        let r = self.invariants.rotation_rate();
        [d1, d2 + l1 * a - l3 * r, d3 + l1 * b + l2 * r]
    }

    fn combine(&self, coef: [f64; 3]) -> GVec3 {
        let [t, u, w] = self.vectors;
        coef[0] * t + coef[1] * u + coef[2] * w
    }
}

fn check_basis(field: Basis, expected: Basis) -> Result<()> {
    if field == expected {
        Ok(())
    } else {
        Err(GeomError::BasisMismatch {
            state: field,
            invariants: expected,
        })
    }
}

/// Literal evaluation of `∇_T X − ⟨T, X⟩A + ⟨A, X⟩T` at a frame point.
pub fn fw_derivative_at(fp: &FramePoint, jet: &FieldJet) -> GVec3 {
    let x = fp.ambient(jet.lambda);
    let t = fp.vectors[0];
    let a = fp.accel;
    fp.ambient_derivative(jet) - g_dot(t, x) * a + g_dot(a, x) * t
}

/// Fermi-Walker derivative of `X` at `x` from the defining formula.
///
/// `∇_T X` differentiates ambient components; the derivatives of the basis vectors come
/// from `α″`, `α‴` and `φ` directly, not from the frame equations.
pub fn fw_derivative_definition(
    c: &AdmissibleCurve,
    att: Option<&SurfaceAttachment>,
    field: &FrameVectorField,
    x: f64,
) -> Result<GVec3> {
    let fp = FramePoint::at(c, att, field.basis, x, field.tangential_only())?;
    Ok(fw_derivative_at(&fp, &field.jet(x)))
}

/// Branch closed form in the Frenet basis:
/// `∇_T X + κ⟨N, X⟩T` (isotropic) or `∇_T X − κ⟨T, X⟩N` (non-isotropic).
pub fn fw_derivative_frenet_at(fp: &FramePoint, jet: &FieldJet) -> Result<GVec3> {
    check_basis(fp.basis, Basis::Frenet)?;
    let LocalInvariants::Frenet { kappa, .. } = fp.invariants else {
        unreachable!("Frenet frame point carries Frenet invariants");
    };
    let x = fp.ambient(jet.lambda);
    let [t, n, _] = fp.vectors;
    let base = fp.combine(fp.frame_equation_derivative(jet));
    Ok(if x.is_isotropic() {
        base + (kappa * g_dot(n, x)) * t
    } else {
        base - (kappa * g_dot(t, x)) * n
    })
}

pub fn fw_derivative_frenet(
    c: &AdmissibleCurve,
    field: &FrameVectorField,
    x: f64,
) -> Result<GVec3> {
    check_basis(field.basis, Basis::Frenet)?;
    let fp = FramePoint::at(c, None, Basis::Frenet, x, field.tangential_only())?;
    fw_derivative_frenet_at(&fp, &field.jet(x))
}

/// Branch closed form in the Darboux basis:
/// `∇_T X + (κ_g⟨Q, X⟩ + κ_n⟨n, X⟩)T` (isotropic) or `∇_T X − (κ_gQ + κ_nn)⟨T, X⟩`.
pub fn fw_derivative_darboux_at(fp: &FramePoint, jet: &FieldJet) -> Result<GVec3> {
    check_basis(fp.basis, Basis::Darboux)?;
    let LocalInvariants::Darboux {
        kappa_g, kappa_n, ..
    } = fp.invariants
    else {
        unreachable!("Darboux frame point carries Darboux invariants");
    };
    let x = fp.ambient(jet.lambda);
    let [t, q, n] = fp.vectors;
    let base = fp.combine(fp.frame_equation_derivative(jet));
    Ok(if x.is_isotropic() {
        base + (kappa_g * g_dot(q, x) + kappa_n * g_dot(n, x)) * t
    } else {
        base - g_dot(t, x) * (kappa_g * q + kappa_n * n)
    })
}

pub fn fw_derivative_darboux(
    c: &AdmissibleCurve,
    att: &SurfaceAttachment,
    field: &FrameVectorField,
    x: f64,
) -> Result<GVec3> {
    check_basis(field.basis, Basis::Darboux)?;
    let fp = FramePoint::at(c, Some(att), Basis::Darboux, x, field.tangential_only())?;
    fw_derivative_darboux_at(&fp, &field.jet(x))
}

/// Coefficients of a field at one point of a trajectory.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransportState {
    pub x: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub lambda3: f64,
    pub basis: Basis,
}

impl TransportState {
    pub fn new(basis: Basis, x: f64, lambda: [f64; 3]) -> Self {
        Self {
            x,
            lambda1: lambda[0],
            lambda2: lambda[1],
            lambda3: lambda[2],
            basis,
        }
    }

    pub fn lambda(&self) -> [f64; 3] {
        [self.lambda1, self.lambda2, self.lambda3]
    }

    pub fn is_isotropic(&self) -> bool {
        self.lambda1.abs() <= EPS_ISO
    }

    /// `λ₂² + λ₃²`, conserved by transport.
    pub fn isotropic_norm_sq(&self) -> f64 {
        self.lambda2 * self.lambda2 + self.lambda3 * self.lambda3
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransportRhs {
    pub dlambda: [f64; 3],
    /// `|κλ₂|` (Frenet) or `|κ_gλ₂ + κ_nλ₃|` (Darboux) for isotropic states.
    pub feasibility: Option<f64>,
}

/// Right-hand side of `∇̃_T X = 0` in coefficient form: `(0, rλ₃, −rλ₂)` with `r = τ` or `τ_g`.
pub fn transport_ode_rhs(inv: &LocalInvariants, state: &TransportState) -> Result<TransportRhs> {
    check_basis(state.basis, inv.basis())?;
    let r = inv.rotation_rate();
    let feasibility = state.is_isotropic().then(|| match *inv {
        LocalInvariants::Frenet { kappa, .. } => (kappa * state.lambda2).abs(),
        LocalInvariants::Darboux {
            kappa_g, kappa_n, ..
        } => (kappa_g * state.lambda2 + kappa_n * state.lambda3).abs(),
    });
    Ok(TransportRhs {
        dlambda: [0.0, r * state.lambda3, -r * state.lambda2],
        feasibility,
    })
}

/// Invariants in the requested basis at `x` (strict: degenerate points are errors).
pub fn local_invariants(
    c: &AdmissibleCurve,
    att: Option<&SurfaceAttachment>,
    basis: Basis,
    x: f64,
) -> Result<LocalInvariants> {
    fn inner(
        c: &AdmissibleCurve,
        att: Option<&SurfaceAttachment>,
        basis: Basis,
        x: f64,
    ) -> Result<LocalInvariants> {
        let kappa = c.curvature_unchecked(x);
        if kappa <= KAPPA_MIN {
            return Err(GeomError::DegenerateCurvature { x, kappa });
        }
        let tau = c.torsion_unchecked(x)?;
        Ok(match basis {
            Basis::Frenet => LocalInvariants::Frenet { kappa, tau },
            Basis::Darboux => {
                let att = att.ok_or(GeomError::MissingAttachment)?;
                let (s, co) = att.phi.eval(x).sin_cos();
                LocalInvariants::Darboux {
                    kappa_g: kappa * co,
                    kappa_n: -kappa * s,
                    tau_g: att.phi.derivative(x, 1) + tau,
                }
            }
        })
    }
    c.check_domain(x)?;
    inner(c, att, basis, x)
}

fn rotation_rate_unchecked(
    c: &AdmissibleCurve,
    att: Option<&SurfaceAttachment>,
    basis: Basis,
    x: f64,
) -> Result<f64> {
    let tau = c.torsion_unchecked(x)?;
    Ok(match basis {
        Basis::Frenet => tau,
        Basis::Darboux => {
            att.ok_or(GeomError::MissingAttachment)?
                .phi
                .derivative(x, 1)
                + tau
        }
    })
}

/// Integrates the transport system with classical RK4 at uniform `step`, the last step
/// shortened to land on `x_end`. `λ₁` is carried exactly.
pub fn transport_integrate(
    c: &AdmissibleCurve,
    basis: Basis,
    att: Option<&SurfaceAttachment>,
    initial: &TransportState,
    x_end: f64,
    step: f64,
) -> Result<Vec<TransportState>> {
    check_basis(initial.basis, basis)?;
    if !(step > 0.0 && step.is_finite()) {
        return Err(GeomError::InvalidArgument(format!(
            "step {step} must be positive and finite"
        )));
    }
    if basis == Basis::Darboux && att.is_none() {
        return Err(GeomError::MissingAttachment);
    }
    c.check_domain(initial.x)?;
    c.check_domain(x_end)?;
    let l1 = initial.lambda1;
    let traj = rk4_trajectory(
        |x, y: [f64; 2]| {
            let r = rotation_rate_unchecked(c, att, basis, x)?;
            Ok::<_, GeomError>([r * y[1], -r * y[0]])
        },
        initial.x,
        [initial.lambda2, initial.lambda3],
        x_end,
        step,
    )?;
    Ok(traj
        .into_iter()
        .map(|(x, y)| TransportState::new(basis, x, [l1, y[0], y[1]]))
        .collect())
}

/// `λ₁ = const`, `λ₂ = c₁cos θ + c₂sin θ`, `λ₃ = c₂cos θ − c₁sin θ` with `θ = ∫_{x₀}^x r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransportClosedForm {
    pub basis: Basis,
    pub x0: f64,
    pub lambda1: f64,
    pub c1: f64,
    pub c2: f64,
}

impl TransportClosedForm {
    /// Constants matching a state at the lower bound, where `θ = 0`.
    pub fn from_initial(state: &TransportState) -> Self {
        Self {
            basis: state.basis,
            x0: state.x,
            lambda1: state.lambda1,
            c1: state.lambda2,
            c2: state.lambda3,
        }
    }

    /// `∫_{x₀}^x τ` (or `τ_g`) by adaptive Simpson.
    pub fn theta(
        &self,
        c: &AdmissibleCurve,
        att: Option<&SurfaceAttachment>,
        x: f64,
    ) -> Result<f64> {
        c.check_domain(self.x0)?;
        c.check_domain(x)?;
        if self.basis == Basis::Darboux && att.is_none() {
            return Err(GeomError::MissingAttachment);
        }
        integrate(
            |t| rotation_rate_unchecked(c, att, self.basis, t),
            self.x0,
            x,
            SimpsonOptions::default(),
        )
    }

    pub fn at_angle(&self, x: f64, theta: f64) -> TransportState {
        let (s, co) = theta.sin_cos();
        TransportState::new(
            self.basis,
            x,
            [
                self.lambda1,
                self.c1 * co + self.c2 * s,
                self.c2 * co - self.c1 * s,
            ],
        )
    }

    /// Derivative of the closed form using `θ′ = r(x)`.
    pub fn derivative_at_angle(&self, theta: f64, rate: f64) -> [f64; 3] {
        let (s, co) = theta.sin_cos();
        [
            0.0,
            rate * (-self.c1 * s + self.c2 * co),
            rate * (-self.c2 * s - self.c1 * co),
        ]
    }
}

pub fn transport_closed_form(
    c: &AdmissibleCurve,
    att: Option<&SurfaceAttachment>,
    form: &TransportClosedForm,
    x: f64,
) -> Result<TransportState> {
    Ok(form.at_angle(x, form.theta(c, att, x)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FeasibilityClass {
    /// `κ ≡ 0`: every isotropic field can be transported.
    Line,
    /// Non-line with `λ₂ ≡ 0` and `τλ₃ ≡ 0` (Frenet basis).
    PlanarBinormal,
    /// Darboux constraint `κ_gλ₂ + κ_nλ₃ ≡ 0` satisfied on a non-line.
    Constrained,
    Infeasible,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityReport {
    pub class: FeasibilityClass,
    /// Max of the algebraic constraint residual over the samples.
    pub residual: f64,
    pub report: CheckReport,
}

impl FeasibilityReport {
    pub fn feasible(&self) -> bool {
        self.class != FeasibilityClass::Infeasible
    }
}

/// Checks the algebraic condition an isotropic field must meet to be transported.
pub fn isotropic_feasibility(
    c: &AdmissibleCurve,
    att: Option<&SurfaceAttachment>,
    field: &FrameVectorField,
    xs: &[f64],
    tol: f64,
) -> Result<FeasibilityReport> {
    if !field.is_isotropic() {
        return Err(GeomError::InvalidArgument(
            "isotropic feasibility needs lambda1 identically zero".into(),
        ));
    }
    let mut residual: f64 = 0.0;
    let mut binormal: f64 = 0.0;
    let mut max_kappa: f64 = 0.0;
    for &x in xs {
        let fp = FramePoint::at(c, att, field.basis, x, true)?;
        let jet = field.jet(x);
        let [_, l2, l3] = jet.lambda;
        match fp.invariants {
            LocalInvariants::Frenet { kappa, tau } => {
                max_kappa = max_kappa.max(kappa);
                residual = residual.max((kappa * l2).abs());
                binormal = binormal.max((tau * l3).abs());
            }
            LocalInvariants::Darboux {
                kappa_g, kappa_n, ..
            } => {
                max_kappa = max_kappa.max(kappa_g.hypot(kappa_n));
                residual = residual.max((kappa_g * l2 + kappa_n * l3).abs());
            }
        }
    }
    let class = if max_kappa <= KAPPA_MIN {
        FeasibilityClass::Line
    } else if residual > tol {
        FeasibilityClass::Infeasible
    } else {
        match field.basis {
            Basis::Frenet if binormal <= tol => FeasibilityClass::PlanarBinormal,
            Basis::Frenet => FeasibilityClass::Infeasible,
            Basis::Darboux => FeasibilityClass::Constrained,
        }
    };
    let mut report = CheckReport::new();
    let feasible = class != FeasibilityClass::Infeasible;
    report.push_flag(
        "isotropic constraint residual",
        residual,
        Some(tol),
        feasible,
    );
    if field.basis == Basis::Frenet {
        report.push_info("binormal rotation residual |tau lambda3|", binormal);
    }
    Ok(FeasibilityReport {
        class,
        residual,
        report,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoincidenceCase {
    /// Coincide iff `λ₂ = 0`, i.e. `X ∥ B`.
    IsotropicFrenet,
    /// Coincide iff `κ_gλ₂ + κ_nλ₃ = 0`.
    IsotropicDarboux,
    /// Coincide only where `κ = 0`.
    NonIsotropicFrenet,
    /// Coincide iff `κ_g = κ_n = 0`, i.e. on a line.
    NonIsotropicDarboux,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoincidenceReport {
    pub case: CoincidenceCase,
    /// Per sample: `‖∇̃_T X − ∇_T X‖ <= tol`.
    pub coincide: Vec<bool>,
    /// Per sample: the predicted coefficient condition.
    pub predicted: Vec<bool>,
    pub max_difference: f64,
    pub report: CheckReport,
}

impl CoincidenceReport {
    pub fn coincide_everywhere(&self) -> bool {
        self.coincide.iter().all(|&b| b)
    }

    pub fn agrees_with_prediction(&self) -> bool {
        self.coincide == self.predicted
    }
}

fn all_degenerate(c: &AdmissibleCurve, xs: &[f64]) -> Result<bool> {
    for &x in xs {
        if c.curvature(x)? > KAPPA_MIN {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compares `∇̃_T X` with `∇_T X` at every sample and checks the predicted coincidence condition.
pub fn coincidence_classify(
    c: &AdmissibleCurve,
    att: Option<&SurfaceAttachment>,
    field: &FrameVectorField,
    xs: &[f64],
    tol: f64,
) -> Result<CoincidenceReport> {
    let completion = all_degenerate(c, xs)?;
    let isotropic = field.is_isotropic();
    let case = match (field.basis, isotropic) {
        (Basis::Frenet, true) => CoincidenceCase::IsotropicFrenet,
        (Basis::Darboux, true) => CoincidenceCase::IsotropicDarboux,
        (Basis::Frenet, false) => CoincidenceCase::NonIsotropicFrenet,
        (Basis::Darboux, false) => CoincidenceCase::NonIsotropicDarboux,
    };
    let mut coincide = Vec::with_capacity(xs.len());
    let mut predicted = Vec::with_capacity(xs.len());
    let mut max_difference: f64 = 0.0;
    for &x in xs {
        let fp = FramePoint::at(c, att, field.basis, x, completion)?;
        let jet = field.jet(x);
        let diff = (fw_derivative_at(&fp, &jet) - fp.ambient_derivative(&jet)).euclidean_norm();
        max_difference = max_difference.max(diff);
        coincide.push(diff <= tol);
        let [_, l2, l3] = jet.lambda;
        predicted.push(match (case, fp.invariants) {
            (CoincidenceCase::IsotropicFrenet, LocalInvariants::Frenet { kappa, .. }) => {
                kappa <= KAPPA_MIN || l2.abs() <= tol
            }
            (CoincidenceCase::NonIsotropicFrenet, LocalInvariants::Frenet { kappa, .. }) => {
                kappa.abs() <= tol || jet.lambda[0].abs() <= EPS_ISO
            }
            (
                CoincidenceCase::IsotropicDarboux,
                LocalInvariants::Darboux {
                    kappa_g, kappa_n, ..
                },
            ) => (kappa_g * l2 + kappa_n * l3).abs() <= tol,
            (
                CoincidenceCase::NonIsotropicDarboux,
                LocalInvariants::Darboux {
                    kappa_g, kappa_n, ..
                },
            ) => kappa_g.abs().max(kappa_n.abs()) <= tol || jet.lambda[0].abs() <= EPS_ISO,
            _ => unreachable!("frame point basis matches field basis"),
        });
    }
    let mut report = CheckReport::new();
    report.push_info("max |fw derivative - derivative|", max_difference);
    let agree = coincide == predicted;
    report.push_flag(
        "coincidence matches prediction",
        coincide
            .iter()
            .zip(&predicted)
            .filter(|(a, b)| a != b)
            .count() as f64,
        Some(0.0),
        agree,
    );
    Ok(CoincidenceReport {
        case,
        coincide,
        predicted,
        max_difference,
        report,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct NonRotatingReport {
    pub basis: Basis,
    /// Max of `‖∇̃_T F‖` for each frame vector.
    pub per_vector: [f64; 3],
    pub residual: f64,
    pub non_rotating: bool,
    /// The curve was a line and the constant completion frame was used.
    pub completed: bool,
}

impl NonRotatingReport {
    pub fn to_report(&self, tol: f64) -> CheckReport {
        let name = match self.basis {
            Basis::Frenet => "frenet",
            Basis::Darboux => "darboux",
        };
        let labels = match self.basis {
            Basis::Frenet => ["T", "N", "B"],
            Basis::Darboux => ["T", "Q", "n"],
        };
        let mut r = CheckReport::new();
        for (l, v) in labels.iter().zip(self.per_vector) {
            r.push_info(format!("{name} fw derivative of {l}"), v);
        }
        r.push(format!("{name} non-rotating"), self.residual, tol);
        r
    }
}

/// Max over samples and frame vectors of `‖∇̃_T F‖`; non-rotating iff it is `<= tol`.
pub fn non_rotating_check(
    c: &AdmissibleCurve,
    att: Option<&SurfaceAttachment>,
    basis: Basis,
    xs: &[f64],
    tol: f64,
) -> Result<NonRotatingReport> {
    let completed = all_degenerate(c, xs)?;
    let mut per_vector = [0.0f64; 3];
    for &x in xs {
        let fp = FramePoint::at(c, att, basis, x, completed)?;
        for (i, slot) in per_vector.iter_mut().enumerate() {
            let mut lambda = [0.0; 3];
            lambda[i] = 1.0;
            let jet = FieldJet {
                lambda,
                dlambda: [0.0; 3],
            };
            *slot = slot.max(fw_derivative_at(&fp, &jet).euclidean_norm());
        }
    }
    let residual = per_vector.iter().fold(0.0f64, |m, &v| m.max(v));
    Ok(NonRotatingReport {
        basis,
        per_vector,
        residual,
        non_rotating: residual <= tol,
        completed,
    })
}
