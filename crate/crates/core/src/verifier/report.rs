use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{VerificationReport, VerifyError};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    #[default]
    Json,
    Text,
}

/// Writes `report` to `path` as pretty JSON or as a plain-text table.
pub fn emit_report(
    report: &VerificationReport,
    path: impl AsRef<Path>,
    format: ReportFormat,
) -> Result<(), VerifyError> {
    let body = match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        ReportFormat::Text => render_text(report),
    };
    std::fs::write(path, body)?;
    Ok(())
}

pub fn render_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    let verdict = if r.pass { "PASS" } else { "FAIL" };
    writeln!(out, "verification: {verdict}").unwrap();
    writeln!(out, "status: {:?}, {} iterations", r.status, r.iterations).unwrap();
    writeln!(
        out,
        "coverage: {:.1}% ({} of {} elements)",
        r.coverage_percent, r.adhered_elements, r.element_count
    )
    .unwrap();
    writeln!(out, "  ({})", r.coverage_note).unwrap();
    let at = |i: Option<usize>| i.map_or_else(|| "-".to_string(), |i| i.to_string());
    writeln!(
        out,
        "worst length residual: {:.3e} m at joint {}",
        r.worst_length_residual,
        at(r.worst_length_joint)
    )
    .unwrap();
    writeln!(
        out,
        "worst wrinkle residual: {:.3e} at iteration {}",
        r.worst_wrinkle_residual,
        at(r.worst_wrinkle_iteration)
    )
    .unwrap();
    writeln!(
        out,
        "worst tension residual: {:.3e} m at iteration {}",
        r.worst_tension_residual,
        at(r.worst_tension_iteration)
    )
    .unwrap();
    writeln!(out, "max trajectory step: {:.3e} m", r.max_trajectory_step).unwrap();
    writeln!(out).unwrap();
    for c in &r.checks {
        let mark = if c.pass { "ok  " } else { "FAIL" };
        writeln!(
            out,
            "{mark} {:<22} {:>12.4e}  (limit {:.4e})",
            c.name, c.value, c.tolerance
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::planner::plan_bimanual;
    use crate::verifier::{verify_plan, Tolerances};

    fn plane_report() -> VerificationReport {
        let s = fixtures::plane();
        let plan = plan_bimanual(&s.mesh, &s.p_init, &s.d_init, s.tape_length, &s.config).unwrap();
        verify_plan(&plan, &s.mesh, &s.config, &Tolerances::default()).unwrap()
    }

    #[test]
    fn json_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.json");
        let report = plane_report();
        emit_report(&report, &path, ReportFormat::Json).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["coverage_percent"], 100.0);
        assert_eq!(value["status"], "complete");
        assert_eq!(value["iterations"], 15);
        assert!(value["checks"][0]["tolerance"].is_number());
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn text_names_failing_check() {
        let mut report = plane_report();
        report.checks[2].pass = false;
        report.pass = false;
        let text = render_text(&report);
        assert!(text.starts_with("verification: FAIL"));
        assert!(text.contains("FAIL length_residual"));
    }

    #[test]
    fn unwritable_path_is_io_error() {
        let e = emit_report(
            &plane_report(),
            "/nonexistent-dir/r.json",
            ReportFormat::Text,
        )
        .unwrap_err();
        assert!(matches!(e, VerifyError::IoError(_)));
    }
}
