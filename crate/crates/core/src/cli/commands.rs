use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use super::args::{
    ExportSceneArgs, GenMeshArgs, GeneratorArgs, KindArg, MeshArgs, PlanArgs, RunConfig, SweepArgs,
    VerifyArgs, VerifyMeshArgs,
};
use super::{CliError, EXIT_FAILURE, EXIT_INCOMPLETE, EXIT_OK};
use crate::geometry::{convexify, SurfaceMesh, Vec3};
use crate::mesh_io::{
    generate_mesh, load_mesh_with, save_mesh, LoadOptions, MeshSpec, CONVEXITY_TOL,
};
use crate::planner::{
    apply_residual, plan_bimanual, plan_single_sided, PlacementPlan, PlanStatus, PlannerConfig,
};
use crate::scene::{export_scene as write_scene, SceneOptions};
use crate::tape::DEFAULT_TAPE_WIDTH;
use crate::trajectory::{read_trajectory, unix_timestamp, write_trajectory};
use crate::verifier::{
    emit_report, render_text, verify_plan, ReportFormat, Tolerances, VerificationReport,
};

/// Sanity band for tape lengths (m); outside it only a warning is logged.
const TAPE_LENGTH_BAND: (f64, f64) = (0.05, 1.0);

#[derive(Clone, Debug, PartialEq)]
pub enum MeshSource {
    File { path: PathBuf, scale: f64 },
    Generate(MeshSpec),
}

impl MeshSource {
    pub fn from_args(m: &MeshArgs) -> Result<Self, CliError> {
        match (&m.mesh, m.generator.kind) {
            (Some(_), Some(_)) => Err(CliError::usage("give either --mesh or --kind, not both")),
            (None, None) => Err(CliError::usage(
                "no mesh source: give --mesh FILE or --kind KIND",
            )),
            (Some(path), None) => Ok(MeshSource::File {
                path: path.clone(),
                scale: m.scale.unwrap_or(1.0),
            }),
            (None, Some(_)) => Ok(MeshSource::Generate(generator_spec(&m.generator)?)),
        }
    }

    /// Loads or generates the surface. Files are convexified unless
    /// `convexify` is false.
    pub fn load(&self, convexify: bool) -> Result<SurfaceMesh, CliError> {
        match self {
            MeshSource::File { path, scale } => load_mesh_with(
                path,
                LoadOptions {
                    scale: *scale,
                    convexify,
                },
            )
            .map_err(CliError::failure),
            MeshSource::Generate(spec) => {
                generate_mesh(spec).map_err(|e| CliError::usage(e.to_string()))
            }
        }
    }
}

fn generator_spec(g: &GeneratorArgs) -> Result<MeshSpec, CliError> {
    let kind = g
        .kind
        .ok_or_else(|| CliError::usage("--kind is required"))?;
    let need = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| CliError::usage(format!("{} mesh needs --{flag}", kind_name(kind))))
    };
    let spec = match kind {
        KindArg::Plane => MeshSpec::plane(need(g.width, "width")?, need(g.depth, "depth")?),
        KindArg::Cylinder => {
            MeshSpec::cylinder(need(g.radius, "radius")?, need(g.length, "length")?)
        }
        KindArg::Hemisphere => MeshSpec::hemisphere(need(g.radius, "radius")?),
        KindArg::HeelComposite => MeshSpec::heel_composite(
            need(g.heel_radius, "heel-radius")?,
            need(g.sole_length, "sole-length")?,
            need(g.ankle_radius, "ankle-radius")?,
        ),
    };
    let spec = match g.resolution {
        Some(r) => spec.with_resolution(r),
        None => spec,
    };
    spec.validate()
        .map_err(|e| CliError::usage(e.to_string()))?;
    Ok(spec)
}

fn kind_name(k: KindArg) -> &'static str {
    match k {
        KindArg::Plane => "plane",
        KindArg::Cylinder => "cylinder",
        KindArg::Hemisphere => "hemisphere",
        KindArg::HeelComposite => "heel-composite",
    }
}

/// A fully specified planning job.
#[derive(Clone, Debug, PartialEq)]
pub struct ResolvedRun {
    pub mesh: MeshSource,
    pub p_init: Vec3,
    pub d_init: Vec3,
    pub tape_length: f64,
    pub config: PlannerConfig,
    pub single_sided: bool,
    pub output: PathBuf,
    pub scene: Option<PathBuf>,
    pub report: Option<PathBuf>,
    pub report_format: ReportFormat,
    pub tape_width: f64,
    pub timestamp: bool,
}

fn triple(v: &Option<Vec<f64>>, flag: &str) -> Result<Vec3, CliError> {
    match v.as_deref() {
        Some([x, y, z]) if x.is_finite() && y.is_finite() && z.is_finite() => {
            Ok(Vec3::new(*x, *y, *z))
        }
        Some(other) => Err(CliError::usage(format!(
            "--{flag} needs three finite numbers, got {other:?}"
        ))),
        None => Err(CliError::usage(format!("--{flag} is required"))),
    }
}

/// Fills in defaults and checks a merged run config.
pub fn resolve_run(cfg: &RunConfig) -> Result<ResolvedRun, CliError> {
    let p = &cfg.planning;
    let defaults = PlannerConfig::default();
    let config = PlannerConfig {
        element_length: p.element_length.unwrap_or(defaults.element_length),
        angle_step: p
            .angle_step
            .map(f64::to_radians)
            .unwrap_or(defaults.angle_step),
        epsilon: p.epsilon.unwrap_or(defaults.epsilon),
        residual_distance: p.residual.unwrap_or(defaults.residual_distance),
        max_iterations: p.max_iterations,
        concave_mode: p.concave.unwrap_or(false),
        penetration_counts_as_contact: p.penetration_contact.unwrap_or(true),
    };
    config
        .validate()
        .map_err(|e| CliError::usage(e.to_string()))?;
    let tape_length = p
        .tape_length
        .ok_or_else(|| CliError::usage("--tape-length is required"))?;
    if !(tape_length.is_finite() && tape_length > 0.0) {
        return Err(CliError::usage(format!(
            "--tape-length must be > 0, got {tape_length}"
        )));
    }
    if !(TAPE_LENGTH_BAND.0..=TAPE_LENGTH_BAND.1).contains(&tape_length) {
        log::warn!(
            "tape length {tape_length} m is outside the usual {}–{} m range",
            TAPE_LENGTH_BAND.0,
            TAPE_LENGTH_BAND.1
        );
    }
    let tape_width = cfg.output.tape_width.unwrap_or(DEFAULT_TAPE_WIDTH);
    if !(tape_width.is_finite() && tape_width > 0.0) {
        return Err(CliError::usage(format!(
            "--tape-width must be > 0, got {tape_width}"
        )));
    }
    Ok(ResolvedRun {
        mesh: MeshSource::from_args(&cfg.mesh)?,
        p_init: triple(&p.p_init, "p-init")?,
        d_init: triple(&p.d_init, "d-init")?,
        tape_length,
        config,
        single_sided: p.single_sided.unwrap_or(false),
        output: cfg
            .output
            .output
            .clone()
            .unwrap_or_else(|| PathBuf::from("trajectory.json")),
        scene: cfg.output.scene.clone(),
        report: cfg.output.report.clone(),
        report_format: cfg.output.report_format.unwrap_or_default(),
        tape_width,
        timestamp: cfg.output.timestamp.unwrap_or(false),
    })
}

/// Result of one planning job after its files are written.
struct Outcome {
    status: PlanStatus,
    iterations: usize,
    report: Option<VerificationReport>,
}

fn execute(run: &ResolvedRun) -> Result<Outcome, CliError> {
    let mesh = run.mesh.load(!run.config.concave_mode)?;
    let planner = if run.single_sided {
        plan_single_sided
    } else {
        plan_bimanual
    };
    let mut plan = planner(
        &mesh,
        &run.p_init,
        &run.d_init,
        run.tape_length,
        &run.config,
    )
    .map_err(CliError::failure)?;
    if run.config.residual_distance > 0.0 {
        plan = apply_residual(&plan, &run.config).map_err(CliError::failure)?;
    }
    let timestamp = run.timestamp.then(unix_timestamp);
    write_trajectory(&plan, &run.output, timestamp).map_err(CliError::failure)?;

    let report = match verify_plan(
        &plan,
        &mesh,
        &plan.config,
        &Tolerances::for_config(&plan.config),
    ) {
        Ok(r) => Some(r),
        Err(e) => {
            log::warn!("verification skipped: {e}");
            None
        }
    };
    if let (Some(path), Some(r)) = (&run.report, &report) {
        emit_report(r, path, run.report_format).map_err(CliError::failure)?;
    }
    if let Some(path) = &run.scene {
        let opts = SceneOptions {
            width: run.tape_width,
            snapshot_every: None,
        };
        write_scene(&plan, &mesh, &opts, path).map_err(CliError::failure)?;
    }
    Ok(Outcome {
        status: plan.status,
        iterations: plan.iterations(),
        report,
    })
}

fn status_name(s: PlanStatus) -> &'static str {
    match s {
        PlanStatus::Complete => "complete",
        PlanStatus::MaxIterationsExceeded => "max_iterations_exceeded",
    }
}

pub fn gen_mesh(a: &GenMeshArgs) -> Result<i32, CliError> {
    let spec = generator_spec(&a.generator)?;
    let mesh = generate_mesh(&spec).map_err(|e| CliError::usage(e.to_string()))?;
    save_mesh(&mesh, &a.output).map_err(CliError::failure)?;
    println!(
        "wrote {} ({} vertices, {} faces)",
        a.output.display(),
        mesh.vertices().len(),
        mesh.face_count()
    );
    Ok(EXIT_OK)
}

pub fn plan(a: &PlanArgs) -> Result<i32, CliError> {
    let flags = RunConfig {
        mesh: a.mesh.clone(),
        planning: a.planning.clone(),
        output: a.output.clone(),
    };
    let merged = match &a.config {
        Some(path) => flags.over(RunConfig::load(path)?),
        None => flags,
    };
    let run = resolve_run(&merged)?;
    let out = execute(&run)?;
    println!("status: {}", status_name(out.status));
    println!("iterations: {}", out.iterations);
    if let Some(r) = &out.report {
        println!(
            "coverage: {:.1}% ({} of {} elements, kinematic)",
            r.coverage_percent, r.adhered_elements, r.element_count
        );
    }
    println!("trajectory: {}", run.output.display());
    Ok(if out.status == PlanStatus::Complete {
        EXIT_OK
    } else {
        EXIT_INCOMPLETE
    })
}

/// Mesh source from the flags, falling back to a run config file.
fn mesh_source(mesh: &MeshArgs, config: &Option<PathBuf>) -> Result<MeshSource, CliError> {
    if mesh.mesh.is_some() || mesh.generator.kind.is_some() {
        return MeshSource::from_args(mesh);
    }
    match config {
        Some(path) => MeshSource::from_args(&RunConfig::load(path)?.mesh),
        None => MeshSource::from_args(mesh),
    }
}

fn load_plan(path: &Path) -> Result<PlacementPlan, CliError> {
    read_trajectory(path).map_err(CliError::failure)
}

pub fn verify(a: &VerifyArgs) -> Result<i32, CliError> {
    let plan = load_plan(&a.trajectory)?;
    let mesh = mesh_source(&a.mesh, &a.config)?.load(!plan.config.concave_mode)?;
    let mut tol = Tolerances::for_config(&plan.config);
    tol.length_tol = a.length_tol.unwrap_or(tol.length_tol);
    tol.wrinkle_tol = a.wrinkle_tol.unwrap_or(tol.wrinkle_tol);
    tol.tension_tol = a.tension_tol.unwrap_or(tol.tension_tol);
    tol.coverage_min = a.coverage_min.unwrap_or(tol.coverage_min);
    tol.validate().map_err(|e| CliError::usage(e.to_string()))?;
    let report = verify_plan(&plan, &mesh, &plan.config, &tol).map_err(CliError::failure)?;
    print!("{}", render_text(&report));
    if let Some(path) = &a.report {
        emit_report(&report, path, a.format).map_err(CliError::failure)?;
    }
    Ok(if report.pass { EXIT_OK } else { EXIT_FAILURE })
}

pub fn export_scene(a: &ExportSceneArgs) -> Result<i32, CliError> {
    let plan = load_plan(&a.trajectory)?;
    let mesh = mesh_source(&a.mesh, &a.config)?.load(!plan.config.concave_mode)?;
    let width = a.tape_width.unwrap_or(DEFAULT_TAPE_WIDTH);
    if !(width.is_finite() && width > 0.0) {
        return Err(CliError::usage(format!(
            "--tape-width must be > 0, got {width}"
        )));
    }
    let opts = SceneOptions {
        width,
        snapshot_every: a.snapshots,
    };
    let scene = write_scene(&plan, &mesh, &opts, &a.output).map_err(CliError::failure)?;
    for w in &scene.warnings {
        eprintln!("warning: {w}");
    }
    println!(
        "wrote {} (ribbon of {} elements, {} snapshots)",
        a.output.display(),
        scene.ribbon.len(),
        scene.snapshots
    );
    Ok(EXIT_OK)
}

pub fn verify_mesh(a: &VerifyMeshArgs) -> Result<i32, CliError> {
    let mesh = match MeshSource::from_args(&a.mesh)? {
        MeshSource::File { path, scale } => load_mesh_with(
            &path,
            LoadOptions {
                scale,
                convexify: false,
            },
        )
        .map_err(CliError::failure)?,
        MeshSource::Generate(spec) => {
            generate_mesh(&spec).map_err(|e| CliError::usage(e.to_string()))?
        }
    };
    let mesh = if a.convexify {
        convexify(&mesh).map_err(CliError::failure)?
    } else {
        mesh
    };
    let violation = mesh.convexity_violation();
    let pass = violation <= CONVEXITY_TOL;
    println!("vertices: {}", mesh.vertices().len());
    println!("faces: {}", mesh.face_count());
    println!("convexity violation: {violation:.3e} m (limit {CONVEXITY_TOL:.0e})");
    println!("{}", if pass { "PASS" } else { "FAIL" });
    Ok(if pass { EXIT_OK } else { EXIT_FAILURE })
}

#[derive(Serialize)]
struct SweepEntry {
    name: String,
    status: Option<&'static str>,
    iterations: Option<usize>,
    coverage_percent: Option<f64>,
    pass: bool,
    error: Option<String>,
}

pub fn sweep(a: &SweepArgs) -> Result<i32, CliError> {
    std::fs::create_dir_all(&a.out_dir).map_err(CliError::failure)?;
    let mut jobs = Vec::new();
    for path in &a.configs {
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "run".into());
        let mut run = resolve_run(&RunConfig::load(path)?)?;
        run.output = a.out_dir.join(format!("{name}.trajectory.json"));
        run.report = Some(a.out_dir.join(format!("{name}.report.json")));
        run.report_format = ReportFormat::Json;
        if run.scene.is_some() {
            run.scene = Some(a.out_dir.join(format!("{name}.scene.obj")));
        }
        jobs.push((name, run));
    }
    let mut names: Vec<&String> = jobs.iter().map(|(n, _)| n).collect();
    names.sort();
    if names.windows(2).any(|w| w[0] == w[1]) {
        return Err(CliError::usage("config files must have distinct names"));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(a.jobs.unwrap_or(0))
        .build()
        .map_err(|e| CliError::usage(e.to_string()))?;
    let outcomes: Vec<(String, Result<Outcome, CliError>)> = pool.install(|| {
        jobs.par_iter()
            .map(|(name, run)| (name.clone(), execute(run)))
            .collect()
    });

    let mut entries: Vec<SweepEntry> = outcomes
        .iter()
        .map(|(name, res)| match res {
            Ok(o) => SweepEntry {
                name: name.clone(),
                status: Some(status_name(o.status)),
                iterations: Some(o.iterations),
                coverage_percent: o.report.as_ref().map(|r| r.coverage_percent),
                pass: o.report.as_ref().is_some_and(|r| r.pass),
                error: None,
            },
            Err(e) => SweepEntry {
                name: name.clone(),
                status: None,
                iterations: None,
                coverage_percent: None,
                pass: false,
                error: Some(e.to_string()),
            },
        })
        .collect();
    entries.sort_by(|x, y| x.name.cmp(&y.name));
    for e in &entries {
        match &e.error {
            Some(err) => println!("{:<24} error: {err}", e.name),
            None => println!(
                "{:<24} {:<24} {:>6} it  {:>5.1}%  {}",
                e.name,
                e.status.unwrap_or("-"),
                e.iterations.unwrap_or(0),
                e.coverage_percent.unwrap_or(0.0),
                if e.pass { "PASS" } else { "FAIL" }
            ),
        }
    }
    let summary = serde_json::to_string_pretty(&entries).expect("summary serializes") + "\n";
    std::fs::write(a.out_dir.join("sweep.json"), summary).map_err(CliError::failure)?;

    let code = if entries.iter().any(|e| e.error.is_some()) {
        EXIT_FAILURE
    } else if entries.iter().any(|e| e.status != Some("complete")) {
        EXIT_INCOMPLETE
    } else if entries.iter().any(|e| !e.pass) {
        EXIT_FAILURE
    } else {
        EXIT_OK
    };
    Ok(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_needs_dimensions() {
        let g = GeneratorArgs {
            kind: Some(KindArg::Cylinder),
            radius: Some(0.05),
            ..Default::default()
        };
        let e = generator_spec(&g).unwrap_err();
        assert_eq!(e, CliError::usage("cylinder mesh needs --length"));
    }

    #[test]
    fn negative_dimension_is_named() {
        let g = GeneratorArgs {
            kind: Some(KindArg::Plane),
            width: Some(-1.0),
            depth: Some(0.3),
            ..Default::default()
        };
        let e = generator_spec(&g).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("width"), "{e}");
    }

    #[test]
    fn resolve_converts_degrees() {
        let cfg = RunConfig {
            mesh: MeshArgs {
                mesh: Some("x.obj".into()),
                ..Default::default()
            },
            planning: crate::cli::PlanningArgs {
                p_init: Some(vec![0.0, 0.0, 0.0]),
                d_init: Some(vec![1.0, 0.0, 0.0]),
                tape_length: Some(0.15),
                angle_step: Some(1.0),
                ..Default::default()
            },
            ..Default::default()
        };
        let run = resolve_run(&cfg).unwrap();
        assert!((run.config.angle_step - 1f64.to_radians()).abs() < 1e-18);
        assert_eq!(run.output, PathBuf::from("trajectory.json"));
        assert!(run.config.penetration_counts_as_contact);
    }

    #[test]
    fn missing_direction_is_usage() {
        let cfg = RunConfig {
            mesh: MeshArgs {
                mesh: Some("x.obj".into()),
                ..Default::default()
            },
            planning: crate::cli::PlanningArgs {
                p_init: Some(vec![0.0, 0.0]),
                tape_length: Some(0.15),
                ..Default::default()
            },
            ..Default::default()
        };
        let e = resolve_run(&cfg).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        assert!(e.to_string().contains("p-init"));
    }
}
