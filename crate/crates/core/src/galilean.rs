//! The degenerate metric structure of Galilean 3-space.
//!
//! A vector is *non-isotropic* when its first component is non-zero and *isotropic*
//! otherwise. The scalar product only looks at first components unless both factors
//! are isotropic, in which case it falls back to the Euclidean product on the last two
//! components. Points and free vectors share [`GVec3`]; the motion group acts on
//! points affinely ([`GalileanMotion::apply_point`]) and on vectors through its linear
//! part ([`GalileanMotion::apply_vector`]).

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Absolute cutoff below which a first component counts as zero.
pub const EPS_ISO: f64 = 1e-12;

/// A vector (or point) of Galilean 3-space stored by raw components.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GVec3 {
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
}

impl GVec3 {
    pub const ZERO: GVec3 = GVec3::new(0.0, 0.0, 0.0);
    pub const E1: GVec3 = GVec3::new(1.0, 0.0, 0.0);
    pub const E2: GVec3 = GVec3::new(0.0, 1.0, 0.0);
    pub const E3: GVec3 = GVec3::new(0.0, 0.0, 1.0);

    pub const fn new(v1: f64, v2: f64, v3: f64) -> Self {
        Self { v1, v2, v3 }
    }

    /// An isotropic vector `(0, v2, v3)`.
    pub const fn isotropic(v2: f64, v3: f64) -> Self {
        Self::new(0.0, v2, v3)
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.v1, self.v2, self.v3]
    }

    pub fn is_isotropic(self) -> bool {
        is_isotropic(self)
    }

    /// Copy with the first component forced to exactly zero when it is below [`EPS_ISO`].
    pub fn snapped(self) -> Self {
        if self.v1.abs() <= EPS_ISO {
            Self::new(0.0, self.v2, self.v3)
        } else {
            self
        }
    }

    /// Euclidean norm of the raw components. Used for residuals, never as a metric.
    pub fn euclidean_norm(self) -> f64 {
        (self.v1 * self.v1 + self.v2 * self.v2 + self.v3 * self.v3).sqrt()
    }

    /// Largest absolute component.
    pub fn max_abs(self) -> f64 {
        self.v1.abs().max(self.v2.abs()).max(self.v3.abs())
    }
}

impl Add for GVec3 {
    type Output = GVec3;
    fn add(self, o: GVec3) -> GVec3 {
        GVec3::new(self.v1 + o.v1, self.v2 + o.v2, self.v3 + o.v3)
    }
}

impl Sub for GVec3 {
    type Output = GVec3;
    fn sub(self, o: GVec3) -> GVec3 {
        GVec3::new(self.v1 - o.v1, self.v2 - o.v2, self.v3 - o.v3)
    }
}

impl Neg for GVec3 {
    type Output = GVec3;
    fn neg(self) -> GVec3 {
        GVec3::new(-self.v1, -self.v2, -self.v3)
    }
}

impl Mul<GVec3> for f64 {
    type Output = GVec3;
    fn mul(self, v: GVec3) -> GVec3 {
        GVec3::new(self * v.v1, self * v.v2, self * v.v3)
    }
}

impl Mul<f64> for GVec3 {
    type Output = GVec3;
    fn mul(self, s: f64) -> GVec3 {
        s * self
    }
}

/// `true` iff `|v1| <= EPS_ISO`.
pub fn is_isotropic(v: GVec3) -> bool {
    v.v1.abs() <= EPS_ISO
}

/// Galilean scalar product.
pub fn g_dot(v: GVec3, w: GVec3) -> f64 {
    if is_isotropic(v) && is_isotropic(w) {
        v.v2 * w.v2 + v.v3 * w.v3
    } else {
        v.v1 * w.v1
    }
}

/// Galilean norm: `|v1|` for non-isotropic vectors, `sqrt(v2² + v3²)` otherwise.
pub fn g_norm(v: GVec3) -> f64 {
    g_dot(v, v).sqrt()
}

/// Galilean cross product, the formal determinant with first row `(0, e₂, e₃)`.
///
/// The first component of the result is always exactly zero.
pub fn g_cross(v: GVec3, w: GVec3) -> GVec3 {
    GVec3::new(0.0, v.v3 * w.v1 - v.v1 * w.v3, v.v1 * w.v2 - v.v2 * w.v1)
}

/// An element of the motion group of G³:
///
/// ```text
/// x̄ = a1 + x
/// ȳ = a2 + a3·x + y·cos φ + z·sin φ
/// z̄ = a4 + a5·x − y·sin φ + z·cos φ
/// ```
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct GalileanMotion {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
    pub a4: f64,
    pub a5: f64,
    pub phi: f64,
}

impl GalileanMotion {
    pub const IDENTITY: GalileanMotion = GalileanMotion {
        a1: 0.0,
        a2: 0.0,
        a3: 0.0,
        a4: 0.0,
        a5: 0.0,
        phi: 0.0,
    };

    pub fn new(a1: f64, a2: f64, a3: f64, a4: f64, a5: f64, phi: f64) -> Self {
        Self {
            a1,
            a2,
            a3,
            a4,
            a5,
            phi,
        }
    }

    /// Affine action on a point.
    pub fn apply_point(&self, p: GVec3) -> GVec3 {
        let lin = self.apply_vector(p);
        GVec3::new(self.a1 + lin.v1, self.a2 + lin.v2, self.a4 + lin.v3)
    }

    /// Linear part acting on a displacement vector: shear `(a3, a5)` followed by rotation.
    pub fn apply_vector(&self, v: GVec3) -> GVec3 {
        let (s, c) = self.phi.sin_cos();
        GVec3::new(
            v.v1,
            self.a3 * v.v1 + v.v2 * c + v.v3 * s,
            self.a5 * v.v1 - v.v2 * s + v.v3 * c,
        )
    }
}

pub fn apply_motion_point(m: &GalileanMotion, p: GVec3) -> GVec3 {
    m.apply_point(p)
}

pub fn apply_motion_vector(m: &GalileanMotion, v: GVec3) -> GVec3 {
    m.apply_vector(v)
}
