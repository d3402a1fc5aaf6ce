use galilean_fw::curve::{frenet_serret_residuals, FD_TOL};
use galilean_fw::darboux::{
    darboux_frame, darboux_frame_residuals, SignConvention, IDENTITY_TOL, KT_CLOSE_TOL,
};
use galilean_fw::fermi_walker::{
    coincidence_classify, fw_derivative_at, fw_derivative_darboux_at, fw_derivative_frenet_at,
    non_rotating_check, transport_closed_form, transport_integrate, transport_ode_rhs, Basis,
    FramePoint, FrameVectorField, TransportClosedForm, TransportState,
};
use galilean_fw::{
    darboux_vector, g_cross, verify_kt_relations, AdmissibleCurve, CheckReport, GVec3, GeomError,
    ScalarFn, SurfaceAttachment, KAPPA_MIN,
};
use serde::Serialize;

use crate::error::Result;
use crate::spec::JobSpec;
use crate::table::{Cell, Table};

pub const FRENET_COLUMNS: [&str; 13] = [
    "x",
    "degenerate",
    "T1",
    "T2",
    "T3",
    "N1",
    "N2",
    "N3",
    "B1",
    "B2",
    "B3",
    "kappa",
    "tau",
];
pub const DARBOUX_COLUMNS: [&str; 9] = [
    "Q1", "Q2", "Q3", "n1", "n2", "n3", "kappa_g", "kappa_n", "tau_g",
];
pub const TRANSPORT_COLUMNS: [&str; 9] = [
    "x",
    "lambda1",
    "lambda2",
    "lambda3",
    "closed_lambda2",
    "closed_lambda3",
    "dev_lambda2",
    "dev_lambda3",
    "norm_sq",
];

fn push_vec(row: &mut Vec<Cell>, v: GVec3) {
    row.extend(v.to_array().map(Cell::Num));
}

/// One row per sample; degenerate samples keep `x`, `T` and `κ` and leave the rest empty.
pub fn run_frame(spec: &JobSpec) -> Result<Table> {
    let c = spec.curve.build()?;
    let att = spec.attachment();
    let mut columns: Vec<&'static str> = FRENET_COLUMNS.to_vec();
    if att.is_some() {
        columns.extend(DARBOUX_COLUMNS);
    }
    let mut rows = Vec::with_capacity(spec.params.samples);
    for x in c.sample_points(spec.params.samples) {
        let kappa = c.curvature(x)?;
        let degenerate = kappa <= KAPPA_MIN;
        let mut row = vec![Cell::Num(x), Cell::Flag(degenerate)];
        if degenerate {
            push_vec(&mut row, c.eval_derivatives(x, 1)?[1]);
            row.extend([Cell::Empty; 6]);
            row.extend([Cell::Num(kappa), Cell::Empty]);
            if att.is_some() {
                row.extend([Cell::Empty; 9]);
            }
        } else {
            let s = c.frenet_frame(x)?;
            for v in s.frame() {
                push_vec(&mut row, v);
            }
            row.extend([Cell::Num(s.kappa), Cell::Num(s.tau)]);
            if let Some(att) = &att {
                let d = darboux_frame(&c, att, x)?;
                push_vec(&mut row, d.q);
                push_vec(&mut row, d.n);
                row.extend([d.kappa_g, d.kappa_n, d.tau_g].map(Cell::Num));
            }
        }
        rows.push(row);
    }
    Ok(Table { columns, rows })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransportSummary {
    pub basis: Basis,
    pub x0: f64,
    pub x_end: f64,
    pub step: f64,
    pub steps: usize,
    /// Max over the trajectory of `|λ − λ_closed|` in the isotropic pair.
    pub max_deviation: f64,
    pub lambda1_drift: f64,
    /// Max over the trajectory of `|(λ₂² + λ₃²)(x) − (λ₂² + λ₃²)(x₀)|`.
    pub norm_drift: f64,
    pub isotropic: bool,
    /// Max of `|κλ₂|` (Frenet) or `|κ_gλ₂ + κ_nλ₃|` (Darboux); isotropic fields only.
    pub feasibility_residual: Option<f64>,
    pub feasible: Option<bool>,
}

impl TransportSummary {
    pub fn lines(&self) -> Vec<String> {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "n/a".into());
        vec![
            format!("basis = {}", basis_name(self.basis)),
            format!("x0 = {:?}", self.x0),
            format!("x_end = {:?}", self.x_end),
            format!("step = {:?}", self.step),
            format!("steps = {}", self.steps),
            format!("max_deviation = {:?}", self.max_deviation),
            format!("lambda1_drift = {:?}", self.lambda1_drift),
            format!("norm_drift = {:?}", self.norm_drift),
            format!("isotropic = {}", self.isotropic),
            format!(
                "feasibility_residual = {}",
                opt(self.feasibility_residual.map(|v| format!("{v:?}")))
            ),
            format!("feasible = {}", opt(self.feasible.map(|v| v.to_string()))),
        ]
    }
}

pub(crate) fn basis_name(b: Basis) -> &'static str {
    match b {
        Basis::Frenet => "frenet",
        Basis::Darboux => "darboux",
    }
}

/// RK4 trajectory of the spec's field from `x0`, against the closed form.
pub fn run_transport(spec: &JobSpec) -> Result<(Table, TransportSummary)> {
    let c = spec.curve.build()?;
    let att = spec.attachment();
    let field = spec
        .field
        .as_ref()
        .ok_or_else(|| crate::error::CliError::invalid("field", "transport needs a [field] table"))?
        .build();
    let (x0, x_end) = spec.transport_bounds();
    let basis = field.basis;
    let initial = TransportState::new(basis, x0, field.jet(x0).lambda);
    let traj = transport_integrate(&c, basis, att.as_ref(), &initial, x_end, spec.params.step)?;
    let form = TransportClosedForm::from_initial(&initial);
    let n0 = initial.isotropic_norm_sq();
    let isotropic = initial.is_isotropic();
    let mut rows = Vec::with_capacity(traj.len());
    let (mut max_dev, mut l1_drift, mut norm_drift, mut feas) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for s in &traj {
        let cf = transport_closed_form(&c, att.as_ref(), &form, s.x)?;
        let (d2, d3) = (s.lambda2 - cf.lambda2, s.lambda3 - cf.lambda3);
        max_dev = max_dev.max(d2.abs()).max(d3.abs());
        l1_drift = l1_drift.max((s.lambda1 - initial.lambda1).abs());
        let norm = s.isotropic_norm_sq();
        norm_drift = norm_drift.max((norm - n0).abs());
        if isotropic {
            let fp = FramePoint::at(&c, att.as_ref(), basis, s.x, true)?;
            if let Some(r) = transport_ode_rhs(&fp.invariants, s)?.feasibility {
                feas = feas.max(r.abs());
            }
        }
        rows.push(
            [
                s.x, s.lambda1, s.lambda2, s.lambda3, cf.lambda2, cf.lambda3, d2, d3, norm,
            ]
            .map(Cell::Num)
            .to_vec(),
        );
    }
    let summary = TransportSummary {
        basis,
        x0,
        x_end,
        step: spec.params.step,
        steps: traj.len() - 1,
        max_deviation: max_dev,
        lambda1_drift: l1_drift,
        norm_drift,
        isotropic,
        feasibility_residual: isotropic.then_some(feas),
        feasible: isotropic.then_some(feas <= spec.params.tol),
    };
    Ok((
        Table {
            columns: TRANSPORT_COLUMNS.to_vec(),
            rows,
        },
        summary,
    ))
}

/// Fields exercised by the lemma checks, alongside the spec's own field.
fn probe_fields(basis: Basis) -> Vec<FrameVectorField> {
    vec![
        FrameVectorField::frame_vector(basis, 0),
        FrameVectorField::frame_vector(basis, 1),
        FrameVectorField::frame_vector(basis, 2),
        FrameVectorField::constant(basis, [1.0, 0.0, 1.0]),
        FrameVectorField::new(
            basis,
            ScalarFn::polynomial(vec![1.0, 1.0]),
            ScalarFn::polynomial(vec![0.0, 0.0, 1.0]),
            ScalarFn::polynomial(vec![1.0, -1.0]),
        ),
        FrameVectorField::new(
            basis,
            ScalarFn::zero(),
            ScalarFn::zero().with_trig(0.5, 0.0, 2.0),
            ScalarFn::polynomial(vec![0.0, 2.0]),
        ),
    ]
}

fn failed(r: &mut CheckReport, name: &str, e: GeomError) {
    r.push_flag(format!("{name} (error: {e})"), f64::NAN, None, false);
}

fn non_degenerate(c: &AdmissibleCurve, xs: &[f64]) -> Result<Vec<f64>> {
    let mut out = Vec::new();
    for &x in xs {
        if c.curvature(x)? > KAPPA_MIN {
            out.push(x);
        }
    }
    Ok(out)
}

fn lemma_residual(
    c: &AdmissibleCurve,
    att: &SurfaceAttachment,
    basis: Basis,
    fields: &[FrameVectorField],
    xs: &[f64],
) -> std::result::Result<f64, GeomError> {
    let mut worst = 0.0f64;
    for &x in xs {
        let fp = FramePoint::at(c, Some(att), basis, x, true)?;
        for f in fields {
            let jet = f.jet(x);
            let lemma = match basis {
                Basis::Frenet => fw_derivative_frenet_at(&fp, &jet)?,
                Basis::Darboux => fw_derivative_darboux_at(&fp, &jet)?,
            };
            worst = worst.max((fw_derivative_at(&fp, &jet) - lemma).max_abs());
        }
    }
    Ok(worst)
}

fn frenet_checks(
    r: &mut CheckReport,
    c: &AdmissibleCurve,
    xs: &[f64],
    h: f64,
) -> std::result::Result<(), GeomError> {
    let (mut fs, mut dv) = (0.0f64, 0.0f64);
    for &x in xs {
        fs = fs.max(frenet_serret_residuals(c, x, h)?.max());
        let s = c.frenet_frame(x)?;
        let d = darboux_vector(&s)?.d;
        let amb = c.frenet_derivatives(x)?;
        for (f, df) in s.frame().into_iter().zip([amb.dt, amb.dn, amb.db]) {
            dv = dv.max((g_cross(d, f) - df).euclidean_norm());
        }
    }
    r.push("frenet-serret residual", fs, FD_TOL);
    r.push("darboux vector identity", dv, IDENTITY_TOL);
    Ok(())
}

fn darboux_checks(
    r: &mut CheckReport,
    c: &AdmissibleCurve,
    att: &SurfaceAttachment,
    xs: &[f64],
    h: f64,
) -> std::result::Result<(), GeomError> {
    let (mut frame, mut kid, mut fd) = (0.0f64, 0.0f64, 0.0f64);
    let mut conv = [0.0f64; 4];
    for &x in xs {
        frame = darboux_frame_residuals(c, att, x, h)?
            .iter()
            .fold(frame, |m, &v| m.max(v));
        let kt = verify_kt_relations(c, att, x)?;
        kid = kid.max(kt.kappa_identity);
        fd = fd.max(kt.tau_g_fd);
        for (slot, s) in conv.iter_mut().zip(SignConvention::ALL) {
            *slot = slot.max(kt.residual(s));
        }
    }
    r.push("darboux frame residual", frame, FD_TOL);
    r.push("kappa^2 = kappa_g^2 + kappa_n^2", kid, IDENTITY_TOL);
    r.push("tau_g analytic vs finite difference", fd, FD_TOL);
    for (s, v) in SignConvention::ALL.iter().zip(conv) {
        r.push_info(format!("torsion relation [{}]", s.label()), v);
    }
    let best = conv.iter().fold(f64::INFINITY, |m, &v| m.min(v));
    r.push(
        "torsion relation closes under some convention",
        best,
        KT_CLOSE_TOL,
    );
    Ok(())
}

/// The full identity suite. Evaluation errors become failed entries.
pub fn run_check(spec: &JobSpec) -> Result<CheckReport> {
    let c = spec.curve.build()?;
    let p = &spec.params;
    let xs = c.sample_points(p.samples);
    let regular = non_degenerate(&c, &xs)?;
    let att = spec
        .attachment()
        .unwrap_or_else(|| SurfaceAttachment::constant(0.0));
    let mut r = CheckReport::new();
    r.push_info("samples", xs.len() as f64);
    r.push_info("non-degenerate samples", regular.len() as f64);

    if let Err(e) = frenet_checks(&mut r, &c, &regular, p.fd_step) {
        failed(&mut r, "frenet apparatus", e);
    }
    if let Err(e) = darboux_checks(&mut r, &c, &att, &regular, p.fd_step) {
        failed(&mut r, "darboux relations", e);
    }

    for (name, basis) in [
        ("lemma L1 ≡ definition", Basis::Frenet),
        ("lemma L2 ≡ definition", Basis::Darboux),
    ] {
        let mut fields = probe_fields(basis);
        if let Some(f) = spec.field.as_ref().filter(|f| f.basis == basis) {
            fields.push(f.build());
        }
        match lemma_residual(&c, &att, basis, &fields, &xs) {
            Ok(v) => {
                r.push(name, v, IDENTITY_TOL);
            }
            Err(e) => failed(&mut r, name, e),
        }
    }

    let field = spec
        .field
        .as_ref()
        .map(|f| f.build())
        .unwrap_or_else(|| FrameVectorField::frame_vector(Basis::Frenet, 2));
    match coincidence_classify(&c, Some(&att), &field, &xs, p.tol) {
        Ok(rep) => {
            r.extend(rep.report);
        }
        Err(e) => failed(&mut r, "coincidence", e),
    }

    for basis in [Basis::Frenet, Basis::Darboux] {
        match non_rotating_check(&c, Some(&att), basis, &xs, p.tol) {
            Ok(rep) => {
                r.extend(rep.to_report(p.tol));
            }
            Err(e) => failed(&mut r, &format!("{} non-rotating", basis_name(basis)), e),
        }
    }
    Ok(r)
}
