//! Differential geometry of curves in Galilean 3-space.
//!
//! * [`galilean`]: the degenerate scalar product, norm, cross product and motion group.
//! * [`curve`]: admissible curves `x ↦ (x, y(x), z(x))`, the Frenet frame, `κ`, `τ` and
//!   the Darboux vector.
//! * [`darboux`]: Darboux frames `{T, Q, n}` with `κ_g`, `κ_n`, `τ_g`.
//! * [`fermi_walker`]: the Fermi-Walker derivative, transport in either basis, and the
//!   coincidence, feasibility and non-rotating classifiers.
//!
//! Curves, attachments and fields are all built from [`ScalarFn`], so every derivative
//! is exact and numerical error only enters through the integrators in [`ode`] and
//! [`quadrature`], or through explicit finite-difference checks.

pub mod curve;
pub mod darboux;
pub mod error;
pub mod fermi_walker;
pub mod galilean;
pub mod ode;
pub mod quadrature;
pub mod report;
pub mod scalar;

pub use curve::{darboux_vector, AdmissibleCurve, DarbouxVectorPair, FrenetSample, KAPPA_MIN};
pub use darboux::{darboux_frame, verify_kt_relations, DarbouxSample, SurfaceAttachment};
pub use error::{GeomError, Result};
pub use fermi_walker::{
    Basis, FrameVectorField, LocalInvariants, TransportClosedForm, TransportState,
};
pub use galilean::{g_cross, g_dot, g_norm, is_isotropic, GVec3, GalileanMotion, EPS_ISO};
pub use report::{CheckEntry, CheckReport};
pub use scalar::{ScalarFn, TrigTerm};
