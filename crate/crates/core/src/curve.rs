//! Admissible curves `x ↦ (x, y(x), z(x))` and their Frenet apparatus.
//!
//! An admissible curve is automatically unit speed in G³: its tangent `(1, y′, z′)` has
//! Galilean norm 1. Curvature and torsion are
//!
//! ```text
//! κ = ‖α″‖_G = sqrt(y″² + z″²),    τ = det(α′, α″, α‴) / κ²
//! ```
//!
//! and the frame satisfies `T′ = κN`, `N′ = τB`, `B′ = −τN`, equivalently
//! `F′ = D ×_G F` with the Darboux vector `D = τT + κB`.

use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::galilean::{g_cross, GVec3, GalileanMotion};
use crate::report::CheckReport;
use crate::scalar::ScalarFn;

/// Curvature at or below this value is treated as degenerate.
pub const KAPPA_MIN: f64 = 1e-10;

/// Default finite-difference tolerance for frame ODE residuals.
pub const FD_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleCurve {
    pub y: ScalarFn,
    pub z: ScalarFn,
    pub domain: (f64, f64),
}

impl AdmissibleCurve {
    pub fn new(y: ScalarFn, z: ScalarFn, domain: (f64, f64)) -> Result<Self> {
        let (lo, hi) = domain;
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(GeomError::InvalidArgument(format!(
                "domain [{lo}, {hi}] must be a finite non-empty interval"
            )));
        }
        if !y.is_finite() || !z.is_finite() {
            return Err(GeomError::InvalidArgument(
                "curve coefficients must be finite".into(),
            ));
        }
        Ok(Self { y, z, domain })
    }

    /// Polynomial curve from ascending coefficient lists.
    pub fn polynomial(y: Vec<f64>, z: Vec<f64>, domain: (f64, f64)) -> Result<Self> {
        Self::new(ScalarFn::polynomial(y), ScalarFn::polynomial(z), domain)
    }

    pub fn is_polynomial(&self) -> bool {
        !self.y.has_trig() && !self.z.has_trig()
    }

    /// `true` when `y` and `z` are affine, i.e. the curve is a straight line.
    pub fn is_line(&self) -> bool {
        let affine = |f: &ScalarFn| !f.has_trig() && f.poly.iter().skip(2).all(|&c| c == 0.0);
        affine(&self.y) && affine(&self.z)
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.domain.0 && x <= self.domain.1
    }

    pub(crate) fn check_domain(&self, x: f64) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(GeomError::OutOfDomain {
                x,
                min: self.domain.0,
                max: self.domain.1,
            })
        }
    }

    /// `α^(k)(x)` without a domain check; the coefficient functions are entire.
    pub(crate) fn derivative_unchecked(&self, x: f64, k: usize) -> GVec3 {
        match k {
            0 => GVec3::new(x, self.y.eval(x), self.z.eval(x)),
            1 => GVec3::new(1.0, self.y.derivative(x, 1), self.z.derivative(x, 1)),
            _ => GVec3::isotropic(self.y.derivative(x, k), self.z.derivative(x, k)),
        }
    }

    /// `[α, α′, …, α^(order)]` at `x`.
    pub fn eval_derivatives(&self, x: f64, order: usize) -> Result<Vec<GVec3>> {
        if order > 3 {
            return Err(GeomError::UnsupportedOrder(order));
        }
        self.check_domain(x)?;
        Ok((0..=order)
            .map(|k| self.derivative_unchecked(x, k))
            .collect())
    }

    pub fn curvature(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        Ok(self.curvature_unchecked(x))
    }

    pub(crate) fn curvature_unchecked(&self, x: f64) -> f64 {
        let a2 = self.derivative_unchecked(x, 2);
        a2.v2.hypot(a2.v3)
    }

    pub fn torsion(&self, x: f64) -> Result<f64> {
        self.check_domain(x)?;
        self.torsion_unchecked(x)
    }

    pub(crate) fn torsion_unchecked(&self, x: f64) -> Result<f64> {
        let a2 = self.derivative_unchecked(x, 2);
        let a3 = self.derivative_unchecked(x, 3);
        let kappa = a2.v2.hypot(a2.v3);
        if kappa <= KAPPA_MIN {
            return Err(GeomError::DegenerateCurvature { x, kappa });
        }
        // det((1, y′, z′), (0, y″, z″), (0, y‴, z‴)) expanded along the first column
        Ok((a2.v2 * a3.v3 - a2.v3 * a3.v2) / (kappa * kappa))
    }

    pub fn frenet_frame(&self, x: f64) -> Result<FrenetSample> {
        self.check_domain(x)?;
        self.frenet_unchecked(x)
    }

    pub(crate) fn frenet_unchecked(&self, x: f64) -> Result<FrenetSample> {
        let t = self.derivative_unchecked(x, 1);
        let a2 = self.derivative_unchecked(x, 2);
        let kappa = a2.v2.hypot(a2.v3);
        if kappa <= KAPPA_MIN {
            return Err(GeomError::DegenerateCurvature { x, kappa });
        }
        let n = GVec3::isotropic(a2.v2 / kappa, a2.v3 / kappa);
        let b = GVec3::isotropic(-a2.v3 / kappa, a2.v2 / kappa);
        let tau = self.torsion_unchecked(x)?;
        Ok(FrenetSample {
            x,
            t,
            n,
            b,
            kappa,
            tau,
        })
    }

    /// Ambient derivatives of `T`, `N`, `B` and `κ` from `α″`, `α‴` by the quotient rule.
    ///
    /// This route never touches the Frenet-Serret matrix, so it can be used to check it.
    pub fn frenet_derivatives(&self, x: f64) -> Result<FrenetDerivatives> {
        self.check_domain(x)?;
        self.frenet_derivatives_unchecked(x)
    }

    pub(crate) fn frenet_derivatives_unchecked(&self, x: f64) -> Result<FrenetDerivatives> {
        let a2 = self.derivative_unchecked(x, 2);
        let a3 = self.derivative_unchecked(x, 3);
        let kappa = a2.v2.hypot(a2.v3);
        if kappa <= KAPPA_MIN {
            return Err(GeomError::DegenerateCurvature { x, kappa });
        }
        let dkappa = (a2.v2 * a3.v2 + a2.v3 * a3.v3) / kappa;
        let k2 = kappa * kappa;
        let dn = GVec3::isotropic(
            a3.v2 / kappa - dkappa * a2.v2 / k2,
            a3.v3 / kappa - dkappa * a2.v3 / k2,
        );
        let db = GVec3::isotropic(
            -a3.v3 / kappa + dkappa * a2.v3 / k2,
            a3.v2 / kappa - dkappa * a2.v2 / k2,
        );
        Ok(FrenetDerivatives {
            dt: a2,
            dn,
            db,
            dkappa,
        })
    }

    /// The image of the curve under a motion, again an admissible curve.
    ///
    /// With `s = x̄ − a1`: `ȳ(x̄) = a2 + a3·s + y(s)cos φ + z(s)sin φ` and
    /// `z̄(x̄) = a4 + a5·s − y(s)sin φ + z(s)cos φ`.
    pub fn transformed(&self, m: &GalileanMotion) -> AdmissibleCurve {
        let (s, c) = m.phi.sin_cos();
        let y = self.y.shifted(m.a1);
        let z = self.z.shifted(m.a1);
        let ybar = y.combine(c, &z, s).plus_affine(m.a2 - m.a3 * m.a1, m.a3);
        let zbar = y.combine(-s, &z, c).plus_affine(m.a4 - m.a5 * m.a1, m.a5);
        AdmissibleCurve {
            y: ybar,
            z: zbar,
            domain: (self.domain.0 + m.a1, self.domain.1 + m.a1),
        }
    }

    /// `n` evenly spaced parameters over the domain, endpoints included.
    pub fn sample_points(&self, n: usize) -> Vec<f64> {
        linspace(self.domain.0, self.domain.1, n)
    }
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrenetSample {
    pub x: f64,
    pub t: GVec3,
    pub n: GVec3,
    pub b: GVec3,
    pub kappa: f64,
    pub tau: f64,
}

impl FrenetSample {
    /// `(T′, N′, B′)` from the Frenet-Serret matrix.
    pub fn serret_derivatives(&self) -> [GVec3; 3] {
        [self.kappa * self.n, self.tau * self.b, -self.tau * self.n]
    }

    pub fn frame(&self) -> [GVec3; 3] {
        [self.t, self.n, self.b]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetDerivatives {
    pub dt: GVec3,
    pub dn: GVec3,
    pub db: GVec3,
    pub dkappa: f64,
}

/// Darboux vector `D = τT + κB` and modified Darboux vector `D̃ = (τ/κ)T + B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DarbouxVectorPair {
    pub d: GVec3,
    pub d_mod: GVec3,
}

pub fn darboux_vector(s: &FrenetSample) -> Result<DarbouxVectorPair> {
    if s.kappa <= KAPPA_MIN {
        return Err(GeomError::DegenerateCurvature {
            x: s.x,
            kappa: s.kappa,
        });
    }
    Ok(DarbouxVectorPair {
        d: s.tau * s.t + s.kappa * s.b,
        d_mod: (s.tau / s.kappa) * s.t + s.b,
    })
}

/// Central-difference residuals of the Frenet-Serret equations at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrenetSerretResidual {
    pub x: f64,
    pub h: f64,
    /// `‖ΔT/Δx − κN‖`, `‖ΔN/Δx − τB‖`, `‖ΔB/Δx + τN‖`.
    pub matrix: [f64; 3],
    /// `‖ΔF/Δx − D ×_G F‖` for `F = T, N, B`.
    pub darboux: [f64; 3],
}

impl FrenetSerretResidual {
    pub fn max(&self) -> f64 {
        self.matrix
            .iter()
            .chain(self.darboux.iter())
            .fold(0.0, |m, &v| m.max(v))
    }

    pub fn to_report(&self, tol: f64) -> CheckReport {
        let mut r = CheckReport::new();
        for (name, v) in ["T' - kappa N", "N' - tau B", "B' + tau N"]
            .iter()
            .zip(self.matrix)
        {
            r.push(format!("frenet-serret {name}"), v, tol);
        }
        for (name, v) in ["T", "N", "B"].iter().zip(self.darboux) {
            r.push(format!("frenet-serret {name}' - D x {name}"), v, tol);
        }
        r
    }
}

pub fn frenet_serret_residuals(
    c: &AdmissibleCurve,
    x: f64,
    h: f64,
) -> Result<FrenetSerretResidual> {
    if !(h.is_finite() && h > 0.0) {
        return Err(GeomError::InvalidArgument(format!(
            "step h = {h} must be positive"
        )));
    }
    let s = c.frenet_frame(x)?;
    // The stencil may leave the domain; the coefficient functions are defined everywhere.
    let fwd = c.frenet_unchecked(x + h)?;
    let bwd = c.frenet_unchecked(x - h)?;
    let d = darboux_vector(&s)?.d;
    let diff = |f: GVec3, b: GVec3| (1.0 / (2.0 * h)) * (f - b);
    let fd = [diff(fwd.t, bwd.t), diff(fwd.n, bwd.n), diff(fwd.b, bwd.b)];
    let serret = s.serret_derivatives();
    let frame = s.frame();
    let mut matrix = [0.0; 3];
    let mut darboux = [0.0; 3];
    for i in 0..3 {
        matrix[i] = (fd[i] - serret[i]).euclidean_norm();
        darboux[i] = (fd[i] - g_cross(d, frame[i])).euclidean_norm();
    }
    Ok(FrenetSerretResidual {
        x,
        h,
        matrix,
        darboux,
    })
}

/// Residual report for the Frenet-Serret equations, tolerance [`FD_TOL`].
pub fn frenet_serret_residual(c: &AdmissibleCurve, x: f64, h: f64) -> Result<CheckReport> {
    Ok(frenet_serret_residuals(c, x, h)?.to_report(FD_TOL))
}
