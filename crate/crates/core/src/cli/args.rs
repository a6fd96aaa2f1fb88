use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use super::CliError;
use crate::verifier::ReportFormat;

#[derive(Parser, Debug)]
#[command(
    name = "tapewrap",
    version,
    about = "Plan, verify and export tape-placement trajectories"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a parametric test surface to an OBJ (or .stl) file.
    GenMesh(GenMeshArgs),
    /// Plan a tape placement and write its trajectory.
    Plan(PlanArgs),
    /// Audit a trajectory file against its mesh.
    Verify(VerifyArgs),
    /// Write the surface, the placed tape and free-segment snapshots as OBJ.
    ExportScene(ExportSceneArgs),
    /// Check that a mesh file is valid and convex.
    VerifyMesh(VerifyMeshArgs),
    /// Plan and verify several config files in parallel.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KindArg {
    Plane,
    Cylinder,
    Hemisphere,
    #[serde(alias = "heel_composite")]
    HeelComposite,
}

/// Parametric surface flags (meters).
#[derive(Args, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct GeneratorArgs {
    #[arg(long, value_enum)]
    pub kind: Option<KindArg>,
    /// Plane extent along x.
    #[arg(long, allow_negative_numbers = true)]
    pub width: Option<f64>,
    /// Plane extent along y.
    #[arg(long, allow_negative_numbers = true)]
    pub depth: Option<f64>,
    /// Cylinder or hemisphere radius.
    #[arg(long, allow_negative_numbers = true)]
    pub radius: Option<f64>,
    /// Cylinder length.
    #[arg(long, allow_negative_numbers = true)]
    pub length: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub heel_radius: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub sole_length: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub ankle_radius: Option<f64>,
    /// Facets per curved quarter-turn (grid cells per side for planes).
    #[arg(long)]
    pub resolution: Option<usize>,
}

/// Where the surface comes from: a file or the generator flags.
#[derive(Args, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct MeshArgs {
    /// Surface mesh file (.obj or .stl).
    #[arg(long)]
    pub mesh: Option<PathBuf>,
    /// Factor applied to file coordinates (0.001 for millimeter files).
    #[arg(long)]
    pub scale: Option<f64>,
    #[command(flatten)]
    #[serde(flatten)]
    pub generator: GeneratorArgs,
}

impl MeshArgs {
    fn is_set(&self) -> bool {
        self.mesh.is_some() || self.generator.kind.is_some()
    }
}

#[derive(Args, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct PlanningArgs {
    /// Tape middle, near the surface: x,y,z in meters.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub p_init: Option<Vec<f64>>,
    /// Taping direction: x,y,z (projected into the tangent plane).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub d_init: Option<Vec<f64>>,
    /// Tape length in meters.
    #[arg(long)]
    pub tape_length: Option<f64>,
    /// Element length in meters [default: 0.005].
    #[arg(long)]
    pub element_length: Option<f64>,
    /// Rotation step in degrees [default: 0.5].
    #[arg(long)]
    pub angle_step: Option<f64>,
    /// Adhesion threshold in meters [default: 0.001].
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Gripper offset along the pulling direction in meters [default: 0.003].
    #[arg(long, allow_negative_numbers = true)]
    pub residual: Option<f64>,
    /// Iteration budget [default: N·⌈360/angle-step⌉].
    #[arg(long)]
    pub max_iterations: Option<usize>,
    /// Jump to the furthest contacting element; skips convexification of mesh files.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub concave: Option<bool>,
    /// Pin element 0 at p-init and lay the tape in one direction only.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub single_sided: Option<bool>,
    /// Count elements inside the surface as attached [default: true].
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub penetration_contact: Option<bool>,
}

#[derive(Args, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct OutputArgs {
    /// Trajectory JSON path [default: trajectory.json].
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Also write an OBJ scene here.
    #[arg(long)]
    pub scene: Option<PathBuf>,
    /// Also write a verification report here.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub report_format: Option<ReportFormat>,
    /// Ribbon width for scenes, meters [default: 0.025].
    #[arg(long)]
    pub tape_width: Option<f64>,
    /// Put the current time into the trajectory header.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub timestamp: Option<bool>,
}

/// Everything `plan` needs. TOML config files use the long flag names as
/// keys; flags given on the command line win over the file.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(flatten)]
    pub mesh: MeshArgs,
    #[serde(flatten)]
    pub planning: PlanningArgs,
    #[serde(flatten)]
    pub output: OutputArgs,
}

impl RunConfig {
    /// Parses a TOML config. Relative paths inside it are taken relative to
    /// the file's directory.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        let table: toml::Table = toml::from_str(&text)
            .map_err(|e| CliError::usage(format!("config {}: {e}", path.display())))?;
        let known = config_keys();
        if let Some(bad) = table.keys().find(|k| !known.contains(k.as_str())) {
            return Err(CliError::usage(format!(
                "config {}: unknown key '{bad}'",
                path.display()
            )));
        }
        let mut cfg: RunConfig = toml::Value::Table(table)
            .try_into()
            .map_err(|e| CliError::usage(format!("config {}: {e}", path.display())))?;
        let dir = path.parent().unwrap_or(Path::new(""));
        let rebase = |p: &mut Option<PathBuf>| {
            if let Some(p) = p.as_mut().filter(|p| p.is_relative()) {
                *p = dir.join(&*p);
            }
        };
        rebase(&mut cfg.mesh.mesh);
        rebase(&mut cfg.output.output);
        rebase(&mut cfg.output.scene);
        rebase(&mut cfg.output.report);
        Ok(cfg)
    }

    /// `self` (command-line flags) layered over `base` (a config file). A mesh
    /// source on the command line replaces the file's mesh settings entirely.
    pub fn over(self, base: RunConfig) -> RunConfig {
        let mesh = if self.mesh.is_set() {
            self.mesh
        } else {
            base.mesh
        };
        let (p, b) = (self.planning, base.planning);
        let (o, bo) = (self.output, base.output);
        RunConfig {
            mesh,
            planning: PlanningArgs {
                p_init: p.p_init.or(b.p_init),
                d_init: p.d_init.or(b.d_init),
                tape_length: p.tape_length.or(b.tape_length),
                element_length: p.element_length.or(b.element_length),
                angle_step: p.angle_step.or(b.angle_step),
                epsilon: p.epsilon.or(b.epsilon),
                residual: p.residual.or(b.residual),
                max_iterations: p.max_iterations.or(b.max_iterations),
                concave: p.concave.or(b.concave),
                single_sided: p.single_sided.or(b.single_sided),
                penetration_contact: p.penetration_contact.or(b.penetration_contact),
            },
            output: OutputArgs {
                output: o.output.or(bo.output),
                scene: o.scene.or(bo.scene),
                report: o.report.or(bo.report),
                report_format: o.report_format.or(bo.report_format),
                tape_width: o.tape_width.or(bo.tape_width),
                timestamp: o.timestamp.or(bo.timestamp),
            },
        }
    }
}

/// Accepted config keys: the long names of every `plan` flag except `--config`.
pub fn config_keys() -> BTreeSet<String> {
    Cli::command()
        .find_subcommand("plan")
        .expect("plan subcommand")
        .get_arguments()
        .filter_map(|a| a.get_long().map(str::to_string))
        .filter(|k| k != "config")
        .collect()
}

#[derive(Args, Debug)]
pub struct GenMeshArgs {
    #[command(flatten)]
    pub generator: GeneratorArgs,
    /// Output path; `.stl` writes binary STL, anything else OBJ.
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Args, Debug)]
pub struct PlanArgs {
    /// TOML config whose keys mirror these flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub mesh: MeshArgs,
    #[command(flatten)]
    pub planning: PlanningArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Trajectory JSON written by `plan`.
    #[arg(long)]
    pub trajectory: PathBuf,
    /// Run config to take the mesh source from.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub mesh: MeshArgs,
    /// Report path.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: ReportFormat,
    /// Bound on attached joint length error, meters [default: 2·epsilon].
    #[arg(long)]
    pub length_tol: Option<f64>,
    #[arg(long)]
    pub wrinkle_tol: Option<f64>,
    #[arg(long)]
    pub tension_tol: Option<f64>,
    /// Minimum coverage in percent [default: 100].
    #[arg(long)]
    pub coverage_min: Option<f64>,
}

#[derive(Args, Debug)]
pub struct ExportSceneArgs {
    #[arg(long)]
    pub trajectory: PathBuf,
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub mesh: MeshArgs,
    /// Scene OBJ path.
    #[arg(short, long)]
    pub output: PathBuf,
    /// Ribbon width in meters [default: 0.025].
    #[arg(long)]
    pub tape_width: Option<f64>,
    /// Add a free-segment snapshot every N records.
    #[arg(long)]
    pub snapshots: Option<usize>,
}

#[derive(Args, Debug)]
pub struct VerifyMeshArgs {
    #[command(flatten)]
    pub mesh: MeshArgs,
    /// Audit the convex hull of the input instead of the input itself.
    #[arg(long)]
    pub convexify: bool,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// Run config files.
    #[arg(required = true)]
    pub configs: Vec<PathBuf>,
    /// Directory for `<name>.trajectory.json`, `<name>.report.json` and scenes.
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Worker threads [default: all cores].
    #[arg(long)]
    pub jobs: Option<usize>,
}
