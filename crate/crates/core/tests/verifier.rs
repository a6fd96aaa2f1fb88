use proptest::prelude::*;
use tapewrap::fixtures::{self, tangent_direction, Scenario};
use tapewrap::geometry::{rodrigues, Vec3};
use tapewrap::planner::{apply_residual, plan_bimanual, PlacementPlan, PlannerConfig};
use tapewrap::verifier::{
    emit_report, refinement_oracle, verify_plan, ReportFormat, Tolerances, VerificationReport,
    VerifyError,
};

fn plan(s: &Scenario) -> PlacementPlan {
    plan_bimanual(&s.mesh, &s.p_init, &s.d_init, s.tape_length, &s.config).unwrap()
}

fn verify(p: &PlacementPlan, s: &Scenario) -> VerificationReport {
    verify_plan(p, &s.mesh, &s.config, &Tolerances::for_config(&s.config)).unwrap()
}

fn failing(r: &VerificationReport) -> Vec<String> {
    r.failing_checks().map(|c| c.name.clone()).collect()
}

#[test]
fn fixtures_pass_with_and_without_residual() {
    for s in [
        fixtures::plane(),
        fixtures::leg(),
        fixtures::hip(),
        fixtures::heel(),
    ] {
        let p = plan(&s);
        let r = verify(&p, &s);
        assert!(r.pass, "{}: {:?}", s.name, failing(&r));
        assert_eq!(r.coverage_percent, 100.0);
        let shifted = apply_residual(&p, &s.config).unwrap();
        let r2 = verify(&shifted, &s);
        assert!(r2.pass, "{} with residual: {:?}", s.name, failing(&r2));
        assert_eq!(r2.checks.len(), r.checks.len());
    }
}

#[test]
fn verification_is_deterministic() {
    let s = fixtures::hip();
    let p = plan(&s);
    assert_eq!(verify(&p, &s), verify(&p, &s));
}

#[test]
fn perturbed_pose_breaks_continuity() {
    let s = fixtures::leg();
    let mut p = plan(&s);
    p.records[40].end.position += Vec3::new(0.0, 0.0, 0.005);
    let r = verify(&p, &s);
    assert!(!r.pass);
    let names = failing(&r);
    assert!(
        names.contains(&"trajectory_continuity".to_string()),
        "{names:?}"
    );
    assert!(names.contains(&"pose_consistency".to_string()), "{names:?}");
}

#[test]
fn tilted_rotation_breaks_rotation_checks() {
    let s = fixtures::leg();
    let mut p = plan(&s);
    let tweak = rodrigues(&Vec3::z(), 1e-4).unwrap();
    p.records[60].start.rotation = tweak * p.records[60].start.rotation;
    let names = failing(&verify(&p, &s));
    assert!(
        names.contains(&"rotation_step".to_string())
            || names.contains(&"pose_consistency".to_string()),
        "{names:?}"
    );
}

#[test]
fn flipped_tension_is_caught() {
    let s = fixtures::hip();
    let mut p = plan(&s);
    p.records[5].tension_end = -p.records[5].tension_end;
    let names = failing(&verify(&p, &s));
    assert!(
        names.contains(&"tension_direction".to_string()),
        "{names:?}"
    );
}

#[test]
fn receding_front_is_caught() {
    let s = fixtures::hip();
    let mut p = plan(&s);
    let k = 20;
    p.records[k].front_end = p.records[k - 1].front_end - 1;
    match verify_plan(&p, &s.mesh, &s.config, &Tolerances::for_config(&s.config)) {
        Ok(r) => assert!(failing(&r).contains(&"front_monotonicity".to_string())),
        Err(e) => assert!(matches!(e, VerifyError::InconsistentPlan(_))),
    }
}

#[test]
fn plan_for_another_mesh_is_inconsistent() {
    let leg = fixtures::leg();
    let p = plan(&leg);
    // the tape lies 20 mm inside a wider cylinder
    let wide = tapewrap::mesh_io::generate_mesh(&tapewrap::mesh_io::MeshSpec::cylinder(0.07, 0.4))
        .unwrap();
    let e = verify_plan(&p, &wide, &leg.config, &Tolerances::default()).unwrap_err();
    assert!(matches!(e, VerifyError::InconsistentPlan(_)));
}

#[test]
fn incomplete_plan_fails() {
    let s = fixtures::overhang();
    let p = plan(&s);
    let r = verify(&p, &s);
    assert!(!r.pass);
    assert!(r.coverage_percent < 100.0);
    assert!(failing(&r).contains(&"status".to_string()));
}

#[test]
fn report_json_schema() {
    let s = fixtures::plane();
    let r = verify(&plan(&s), &s);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    emit_report(&r, &path, ReportFormat::Json).unwrap();
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["coverage_percent"], 100.0);
    assert_eq!(v["status"], "complete");
    assert_eq!(v["iterations"], 15);
    assert_eq!(v["pass"], true);
    for c in v["checks"].as_array().unwrap() {
        for key in ["name", "value", "tolerance", "pass"] {
            assert!(c.get(key).is_some(), "{key} missing in {c}");
        }
    }
    let back: VerificationReport = serde_json::from_value(v).unwrap();
    assert_eq!(back, r);
}

#[test]
fn oracle_on_plane_is_exact() {
    let s = fixtures::plane();
    let c = refinement_oracle(&s.mesh, &s.p_init, &s.d_init, s.tape_length, &s.config).unwrap();
    assert!(c.max_deviation <= 1e-9);
}

#[test]
fn oracle_on_hemisphere_improves_when_step_halves() {
    let s = fixtures::hip();
    let base = refinement_oracle(&s.mesh, &s.p_init, &s.d_init, s.tape_length, &s.config).unwrap();
    let half = PlannerConfig {
        angle_step: 0.5 * s.config.angle_step,
        ..s.config
    };
    let finer = refinement_oracle(&s.mesh, &s.p_init, &s.d_init, s.tape_length, &half).unwrap();
    assert!(
        finer.max_deviation < base.max_deviation,
        "{} vs {}",
        finer.max_deviation,
        base.max_deviation
    );
}

/// Coverage from summed lengths: one element length plus every joint inside
/// the attached run, over the tape length.
fn length_coverage(p: &PlacementPlan) -> f64 {
    let st = &p.final_state;
    let joints: f64 = (st.i_start + 1..=st.i_end)
        .map(|j| (st.elements[j].position - st.elements[j - 1].position).norm())
        .sum();
    100.0 * (st.element_length + joints) / st.tape_length
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn coverage_by_count_and_by_length_agree(k in 0usize..3, angle in 0.0..std::f64::consts::TAU) {
        let s = [fixtures::leg, fixtures::hip, fixtures::heel][k]();
        let d = tangent_direction(&s.mesh, &s.p_init, angle);
        let s = s.with_direction(d);
        let p = plan(&s);
        let r = verify(&p, &s);
        prop_assert!(r.pass);
        // each attached joint is off by at most the worst length residual
        let joints = (p.final_state.i_end - p.final_state.i_start) as f64;
        let bound = 100.0 * joints * r.worst_length_residual / s.tape_length;
        let gap = (r.coverage_percent - length_coverage(&p)).abs();
        prop_assert!(gap <= bound + 1e-9, "gap {gap} bound {bound}");
        let worst_case = 100.0 * joints * 2.0 * s.config.epsilon / s.tape_length;
        prop_assert!(gap <= worst_case);
    }

    #[test]
    fn truncated_plans_report_partial_coverage(cut in 1usize..140) {
        let s = fixtures::leg();
        let mut p = plan(&s);
        p.records.truncate(cut);
        let last = *p.records.last().unwrap();
        p.final_state.i_start = last.front_start;
        p.final_state.i_end = last.front_end;
        for (j, e) in p.final_state.elements.iter_mut().enumerate() {
            if j < last.front_start || j > last.front_end {
                e.position += e.position.normalize() * 0.01;
                e.attached = false;
            }
        }
        let attached = last.front_end - last.front_start + 1;
        let r = verify_plan(&p, &s.mesh, &s.config, &Tolerances::for_config(&s.config)).unwrap();
        prop_assert_eq!(r.adhered_elements, attached);
        prop_assert!((r.coverage_percent - 100.0 * attached as f64 / 30.0).abs() < 1e-12);
        prop_assert_eq!(r.pass, attached == 30);
    }
}
