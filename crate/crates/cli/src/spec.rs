//! Job specification documents (TOML).
//!
//! ```toml
//! [curve]
//! kind = "polynomial"          # or "trig-polynomial"
//! y = [0.0, 0.0, 1.0]          # ascending powers, or a table { poly = [...], trig = [...] }
//! z = [0.0, 0.0, 0.0, 1.0]
//! domain = [0.0, 1.0]
//!
//! [attachment]                 # optional
//! phi = [0.0]
//!
//! [field]                      # optional
//! basis = "frenet"             # or "darboux"
//! lambda1 = 0.0                # constant, coefficient list, or table
//! lambda2 = 1.0
//! lambda3 = [0.0, 1.0]
//!
//! [params]                     # optional, defaults shown
//! samples = 201
//! step = 0.001
//! tol = 1e-9
//! fd_step = 1e-4
//! ```

use std::fmt;
use std::path::PathBuf;

use galilean_fw::fermi_walker::{Basis, FrameVectorField};
use galilean_fw::{AdmissibleCurve, ScalarFn, SurfaceAttachment};
use serde::de::{self, MapAccess, SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::{CliError, Result};

pub const DEFAULT_SAMPLES: usize = 201;
pub const DEFAULT_STEP: f64 = galilean_fw::fermi_walker::DEFAULT_STEP;
pub const DEFAULT_TOL: f64 = galilean_fw::fermi_walker::COINCIDENCE_TOL;
pub const DEFAULT_FD_STEP: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CurveKind {
    Polynomial,
    TrigPolynomial,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveSpec {
    pub kind: CurveKind,
    pub y: ScalarFn,
    pub z: ScalarFn,
    pub domain: (f64, f64),
}

impl CurveSpec {
    pub fn build(&self) -> Result<AdmissibleCurve> {
        Ok(AdmissibleCurve::new(
            self.y.clone(),
            self.z.clone(),
            self.domain,
        )?)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FieldSpec {
    pub basis: Basis,
    pub lambda: [ScalarFn; 3],
}

impl FieldSpec {
    pub fn build(&self) -> FrameVectorField {
        let [a, b, c] = self.lambda.clone();
        FrameVectorField::new(self.basis, a, b, c)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    pub samples: usize,
    pub step: f64,
    pub tol: f64,
    pub fd_step: f64,
    /// Transport start; the domain's lower end when absent.
    pub x0: Option<f64>,
    /// Transport end; the domain's upper end when absent.
    pub x_end: Option<f64>,
    pub out: Option<PathBuf>,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            samples: DEFAULT_SAMPLES,
            step: DEFAULT_STEP,
            tol: DEFAULT_TOL,
            fd_step: DEFAULT_FD_STEP,
            x0: None,
            x_end: None,
            out: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct JobSpec {
    pub curve: CurveSpec,
    pub attachment: Option<ScalarFn>,
    pub field: Option<FieldSpec>,
    pub params: Params,
}

impl JobSpec {
    pub fn attachment(&self) -> Option<SurfaceAttachment> {
        self.attachment.clone().map(SurfaceAttachment::new)
    }

    pub fn transport_bounds(&self) -> (f64, f64) {
        let (lo, hi) = self.curve.domain;
        (
            self.params.x0.unwrap_or(lo),
            self.params.x_end.unwrap_or(hi),
        )
    }

    /// Re-runs the validation applied by [`parse_spec`], e.g. after command-line overrides.
    pub fn validate(&self) -> Result<()> {
        let c = &self.curve;
        check_fn("curve.y", &c.y)?;
        check_fn("curve.z", &c.z)?;
        if c.kind == CurveKind::Polynomial {
            for (name, f) in [("curve.y", &c.y), ("curve.z", &c.z)] {
                if f.has_trig() {
                    return Err(CliError::invalid(
                        format!("{name}.trig"),
                        "trigonometric terms need kind = \"trig-polynomial\"",
                    ));
                }
            }
        }
        let (lo, hi) = c.domain;
        check_finite("curve.domain[0]", lo)?;
        check_finite("curve.domain[1]", hi)?;
        if lo >= hi {
            return Err(CliError::invalid(
                "curve.domain",
                format!("[{lo:?}, {hi:?}] is empty"),
            ));
        }
        if let Some(phi) = &self.attachment {
            check_fn("attachment.phi", phi)?;
        }
        if let Some(f) = &self.field {
            for (i, l) in f.lambda.iter().enumerate() {
                check_fn(&format!("field.lambda{}", i + 1), l)?;
            }
            if f.basis == Basis::Darboux && self.attachment.is_none() {
                return Err(CliError::invalid(
                    "field.basis",
                    "the darboux basis needs an [attachment] table",
                ));
            }
        }
        let p = &self.params;
        if p.samples < 2 {
            return Err(CliError::invalid(
                "params.samples",
                "need at least 2 samples",
            ));
        }
        for (name, v) in [
            ("params.step", p.step),
            ("params.tol", p.tol),
            ("params.fd_step", p.fd_step),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::invalid(
                    name,
                    format!("{v:?} is not a positive finite number"),
                ));
            }
        }
        for (name, v) in [("params.x0", p.x0), ("params.x_end", p.x_end)] {
            if let Some(v) = v {
                if !(v.is_finite() && lo <= v && v <= hi) {
                    return Err(CliError::invalid(
                        name,
                        format!("{v:?} is outside the domain [{lo:?}, {hi:?}]"),
                    ));
                }
            }
        }
        Ok(())
    }
}

fn check_finite(field: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(CliError::invalid(field, format!("{v:?} is not finite")))
    }
}

fn check_fn(field: &str, f: &ScalarFn) -> Result<()> {
    for (i, &c) in f.poly.iter().enumerate() {
        check_finite(&format!("{field}.poly[{i}]"), c)?;
    }
    for (i, t) in f.trig.iter().enumerate() {
        check_finite(&format!("{field}.trig[{i}].cos"), t.cos)?;
        check_finite(&format!("{field}.trig[{i}].sin"), t.sin)?;
        check_finite(&format!("{field}.trig[{i}].omega"), t.omega)?;
    }
    Ok(())
}

/// A scalar written as a number, a coefficient list or a full table.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
struct Coeffs(ScalarFn);

impl<'de> Deserialize<'de> for Coeffs {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = Coeffs;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number, a list of coefficients, or a { poly, trig } table")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Coeffs, E> {
                Ok(Coeffs(ScalarFn::constant(v)))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Coeffs, E> {
                Ok(Coeffs(ScalarFn::constant(v as f64)))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Coeffs, E> {
                Ok(Coeffs(ScalarFn::constant(v as f64)))
            }

            fn visit_seq<A: SeqAccess<'de>>(self, seq: A) -> std::result::Result<Coeffs, A::Error> {
                let poly = Vec::<f64>::deserialize(de::value::SeqAccessDeserializer::new(seq))?;
                Ok(Coeffs(ScalarFn::polynomial(poly)))
            }

            fn visit_map<A: MapAccess<'de>>(self, map: A) -> std::result::Result<Coeffs, A::Error> {
                ScalarFn::deserialize(de::value::MapAccessDeserializer::new(map)).map(Coeffs)
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    curve: RawCurve,
    #[serde(skip_serializing_if = "Option::is_none")]
    attachment: Option<RawAttachment>,
    #[serde(skip_serializing_if = "Option::is_none")]
    field: Option<RawField>,
    #[serde(default)]
    params: RawParams,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCurve {
    kind: CurveKind,
    y: Coeffs,
    z: Coeffs,
    domain: [f64; 2],
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAttachment {
    phi: Coeffs,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawField {
    basis: Basis,
    lambda1: Coeffs,
    lambda2: Coeffs,
    lambda3: Coeffs,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawParams {
    samples: usize,
    step: f64,
    tol: f64,
    fd_step: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    x0: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x_end: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    out: Option<PathBuf>,
}

impl Default for RawParams {
    fn default() -> Self {
        Params::default().into()
    }
}

impl From<Params> for RawParams {
    fn from(p: Params) -> Self {
        RawParams {
            samples: p.samples,
            step: p.step,
            tol: p.tol,
            fd_step: p.fd_step,
            x0: p.x0,
            x_end: p.x_end,
            out: p.out,
        }
    }
}

/// Parses and validates a spec document.
pub fn parse_spec(document: &str) -> Result<JobSpec> {
    let table: toml::Table = document
        .parse()
        .map_err(|e: toml::de::Error| CliError::Parse {
            path: "<document>".into(),
            message: e.message().to_string(),
        })?;
    let raw: RawSpec =
        serde_path_to_error::deserialize(toml::Value::Table(table)).map_err(|e| {
            let path = e.path().to_string();
            CliError::Parse {
                path,
                message: e.into_inner().to_string().trim_end().to_string(),
            }
        })?;
    let spec = JobSpec {
        curve: CurveSpec {
            kind: raw.curve.kind,
            y: raw.curve.y.0,
            z: raw.curve.z.0,
            domain: (raw.curve.domain[0], raw.curve.domain[1]),
        },
        attachment: raw.attachment.map(|a| a.phi.0),
        field: raw.field.map(|f| FieldSpec {
            basis: f.basis,
            lambda: [f.lambda1.0, f.lambda2.0, f.lambda3.0],
        }),
        params: Params {
            samples: raw.params.samples,
            step: raw.params.step,
            tol: raw.params.tol,
            fd_step: raw.params.fd_step,
            x0: raw.params.x0,
            x_end: raw.params.x_end,
            out: raw.params.out,
        },
    };
    spec.validate()?;
    Ok(spec)
}

pub fn read_spec(path: &std::path::Path) -> Result<JobSpec> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.display().to_string(),
        source,
    })?;
    parse_spec(&text)
}

/// Canonical document: every scalar written as a full table, every parameter explicit.
pub fn emit_spec(spec: &JobSpec) -> String {
    let raw = RawSpec {
        curve: RawCurve {
            kind: spec.curve.kind,
            y: Coeffs(spec.curve.y.clone()),
            z: Coeffs(spec.curve.z.clone()),
            domain: [spec.curve.domain.0, spec.curve.domain.1],
        },
        attachment: spec
            .attachment
            .clone()
            .map(|phi| RawAttachment { phi: Coeffs(phi) }),
        field: spec.field.clone().map(|f| {
            let [a, b, c] = f.lambda;
            RawField {
                basis: f.basis,
                lambda1: Coeffs(a),
                lambda2: Coeffs(b),
                lambda3: Coeffs(c),
            }
        }),
        params: spec.params.clone().into(),
    };
    toml::to_string(&raw).expect("spec types always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    const LINE: &str = r#"
[curve]
kind = "polynomial"
y = [0]
z = [0]
domain = [0, 1]
"#;

    #[test]
    fn minimal_line_gets_defaults() {
        let s = parse_spec(LINE).unwrap();
        assert_eq!(s.params, Params::default());
        assert_eq!(s.curve.y, ScalarFn::polynomial(vec![0.0]));
        assert_eq!(s.curve.domain, (0.0, 1.0));
        assert!(s.attachment.is_none() && s.field.is_none());
    }

    #[test]
    fn non_finite_coefficient_is_rejected() {
        let doc = LINE.replace("y = [0]", "y = [0, nan]");
        match parse_spec(&doc) {
            Err(CliError::Validation { field, .. }) => assert_eq!(field, "curve.y.poly[1]"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn unknown_key_is_named() {
        let doc = LINE.replace("domain", "colour = \"red\"\ndomain");
        let err = parse_spec(&doc).unwrap_err().to_string();
        assert!(err.contains("colour"), "{err}");
        assert!(err.contains("curve"), "{err}");
    }

    #[test]
    fn trig_terms_need_trig_kind() {
        let doc = LINE.replace("y = [0]", "y = { trig = [{ cos = 1.0, omega = 3.0 }] }");
        assert!(matches!(parse_spec(&doc), Err(CliError::Validation { .. })));
        let ok = doc.replace("\"polynomial\"", "\"trig-polynomial\"");
        assert!(parse_spec(&ok).unwrap().curve.y.has_trig());
    }

    #[test]
    fn darboux_field_needs_attachment() {
        let doc = format!(
            "{LINE}\n[field]\nbasis = \"darboux\"\nlambda1 = 0\nlambda2 = 1\nlambda3 = 0\n"
        );
        match parse_spec(&doc) {
            Err(CliError::Validation { field, .. }) => assert_eq!(field, "field.basis"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn empty_domain_is_rejected() {
        let doc = LINE.replace("[0, 1]", "[1, 1]");
        assert!(matches!(parse_spec(&doc), Err(CliError::Validation { .. })));
    }

    #[test]
    fn malformed_document_is_a_parse_error() {
        assert!(matches!(parse_spec("[curve"), Err(CliError::Parse { .. })));
    }

    #[test]
    fn canonical_round_trip() {
        let doc = r#"
[curve]
kind = "trig-polynomial"
y = { poly = [0.1, 0.0, 1.0], trig = [{ sin = 0.1, omega = 2.0 }] }
z = [0.0, 0.0, 0.0, 0.3333333333333333]
domain = [-0.5, 1.25]

[attachment]
phi = [0.2, -0.7]

[field]
basis = "darboux"
lambda1 = 0.5
lambda2 = [1.0, 0.0, 1e-7]
lambda3 = -2

[params]
samples = 11
x0 = 0.0
out = "out.csv"
"#;
        let s = parse_spec(doc).unwrap();
        let emitted = emit_spec(&s);
        assert_eq!(parse_spec(&emitted).unwrap(), s);
        assert_eq!(emit_spec(&parse_spec(&emitted).unwrap()), emitted);
    }
}
