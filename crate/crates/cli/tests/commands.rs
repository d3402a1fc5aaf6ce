use galfw_cli::commands::{DARBOUX_COLUMNS, FRENET_COLUMNS, TRANSPORT_COLUMNS};
use galfw_cli::{emit_spec, parse_spec, run_check, run_frame, run_transport, Cell, JobSpec};
use proptest::prelude::*;

fn spec_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("specs")
}

fn shipped(name: &str) -> JobSpec {
    galfw_cli::read_spec(&spec_dir().join(name)).unwrap()
}

fn num(c: &Cell) -> f64 {
    match c {
        Cell::Num(v) => *v,
        other => panic!("expected a number, got {other:?}"),
    }
}

fn col(columns: &[&str], name: &str) -> usize {
    columns.iter().position(|c| *c == name).unwrap()
}

#[test]
fn line_frame_rows_are_flagged_not_dropped() {
    let mut s = shipped("line.toml");
    s.params.samples = 3;
    let t = run_frame(&s).unwrap();
    assert_eq!(t.rows.len(), 3);
    for row in &t.rows {
        assert_eq!(row[1], Cell::Flag(true));
        assert_eq!(row.len(), t.columns.len());
        assert_eq!(row[col(&t.columns, "N1")], Cell::Empty);
    }
}

#[test]
fn cubic_frame_starts_with_known_invariants() {
    let t = run_frame(&shipped("cubic.toml")).unwrap();
    let first = &t.rows[0];
    assert_eq!(num(&first[0]), 0.0);
    assert_eq!(first[1], Cell::Flag(false));
    assert!((num(&first[col(&t.columns, "kappa")]) - 2.0).abs() < 1e-12);
    assert!((num(&first[col(&t.columns, "tau")]) - 3.0).abs() < 1e-12);
}

#[test]
fn zero_angle_attachment_copies_the_normal() {
    let mut s = shipped("cubic.toml");
    s.attachment = Some(galilean_fw::ScalarFn::constant(0.0));
    let t = run_frame(&s).unwrap();
    for row in &t.rows {
        for (q, n) in [
            ("Q1", "N1"),
            ("Q2", "N2"),
            ("Q3", "N3"),
            ("n1", "B1"),
            ("n2", "B2"),
            ("n3", "B3"),
        ] {
            assert_eq!(row[col(&t.columns, q)], row[col(&t.columns, n)]);
        }
    }
}

#[test]
fn columns_match_the_shipped_schema() {
    let text = std::fs::read_to_string(
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/columns.toml"),
    )
    .unwrap();
    let schema: toml::Table = text.parse().unwrap();
    let list = |section: &str, key: &str| -> Vec<String> {
        schema[section][key]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_str().unwrap().to_string())
            .collect()
    };
    assert_eq!(list("frame", "columns"), FRENET_COLUMNS);
    assert_eq!(list("frame", "attachment_columns"), DARBOUX_COLUMNS);
    assert_eq!(list("transport", "columns"), TRANSPORT_COLUMNS);
    assert_eq!(
        schema["schema_version"].as_integer(),
        Some(galfw_cli::SCHEMA_VERSION as i64)
    );
}

#[test]
fn planar_transport_has_no_deviation() {
    let doc = r#"
[curve]
kind = "polynomial"
y = [0.0, 0.0, 1.0]
z = [0.0]
domain = [0.0, 1.0]

[field]
basis = "frenet"
lambda1 = 1.0
lambda2 = 0.3
lambda3 = 0.7
"#;
    let (t, summary) = run_transport(&parse_spec(doc).unwrap()).unwrap();
    assert!(summary.max_deviation < 1e-12);
    for row in &t.rows {
        assert_eq!(num(&row[1]), 1.0);
        assert_eq!(num(&row[2]), 0.3);
        assert_eq!(num(&row[3]), 0.7);
    }
}

#[test]
fn helix_transport_matches_closed_form() {
    let (t, summary) = run_transport(&shipped("helix.toml")).unwrap();
    assert!(summary.max_deviation < 1e-8, "{}", summary.max_deviation);
    let last = t.rows.last().unwrap();
    assert!((num(&last[2]) + 1.0).abs() < 1e-8);
    assert!(num(&last[3]).abs() < 1e-8);
    // isotropic field with lambda2 != 0 on a curved helix
    assert_eq!(summary.feasible, Some(false));
}

#[test]
fn non_isotropic_transport_has_no_feasibility_entry() {
    let (_, summary) = run_transport(&shipped("cubic.toml")).unwrap();
    assert!(!summary.isotropic);
    assert_eq!(summary.feasible, None);
    assert_eq!(summary.lambda1_drift, 0.0);
    assert!(summary.norm_drift < 1e-10);
}

#[test]
fn line_transport_reports_the_degenerate_point() {
    let err = run_transport(&shipped("line.toml"))
        .unwrap_err()
        .to_string();
    assert!(err.contains("x = 0"), "{err}");
}

#[test]
fn line_check_passes() {
    let r = run_check(&shipped("line.toml")).unwrap();
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    assert!(r.get("frenet non-rotating").unwrap().pass);
    assert!(r.get("darboux non-rotating").unwrap().pass);
}

#[test]
fn cubic_check_fails_on_rotation_only() {
    let r = run_check(&shipped("cubic.toml")).unwrap();
    let fr = r.get("frenet non-rotating").unwrap();
    assert!(!fr.pass && fr.value >= 2.0);
    let failed: Vec<_> = r.failures().map(|e| e.name.as_str()).collect();
    assert_eq!(failed, ["frenet non-rotating", "darboux non-rotating"]);
    assert!(r.get("lemma L1 ≡ definition").unwrap().pass);
}

#[test]
fn degenerate_point_on_curved_spec_becomes_failed_entry() {
    // y = x^3 has kappa = 0 at x = 0 only
    let doc = r#"
[curve]
kind = "polynomial"
y = [0.0, 0.0, 0.0, 1.0]
z = [0.0]
domain = [-1.0, 1.0]

[params]
samples = 5
"#;
    let r = run_check(&parse_spec(doc).unwrap()).unwrap();
    assert!(!r.passed());
    assert!(r.failures().any(|e| e.name.contains("non-rotating (error")));
    assert!(r.get("lemma L1 ≡ definition").unwrap().pass);
}

fn arb_coeffs(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0..3.0f64, 1..=n)
}

prop_compose! {
    fn arb_spec()(
        y in arb_coeffs(4),
        z in arb_coeffs(4),
        phi in arb_coeffs(3),
        l in prop::array::uniform3(-2.0..2.0f64),
        iso in any::<bool>(),
        lo in -1.0..0.0f64,
        width in 0.5..2.0f64,
    ) -> String {
        let l1 = if iso { 0.0 } else { l[0] };
        format!(
            "[curve]\nkind = \"polynomial\"\ny = {y:?}\nz = {z:?}\ndomain = [{lo:?}, {:?}]\n\
             [attachment]\nphi = {phi:?}\n\
             [field]\nbasis = \"frenet\"\nlambda1 = {l1:?}\nlambda2 = {:?}\nlambda3 = {:?}\n\
             [params]\nsamples = 9\n",
            lo + width, l[1], l[2]
        )
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn canonical_emission_round_trips(doc in arb_spec()) {
        let s = parse_spec(&doc).unwrap();
        prop_assert_eq!(parse_spec(&emit_spec(&s)).unwrap(), s);
    }

    #[test]
    fn lemma_entries_pass_on_any_spec(doc in arb_spec()) {
        let r = run_check(&parse_spec(&doc).unwrap()).unwrap();
        for name in ["lemma L1 ≡ definition", "lemma L2 ≡ definition"] {
            let e = r.get(name);
            prop_assert!(e.is_some_and(|e| e.pass), "{:?}", r.entries);
        }
    }
}
