//! The `tapewrap` command line.
//!
//! Exit codes: 0 success, 1 operational error, 2 usage error, 3 plan
//! incomplete. Log verbosity comes from `TAPEWRAP_LOG`
//! (`error`, `warn`, `info`, `debug`; default `warn`).

mod args;
mod commands;

use std::ffi::OsString;
use std::fmt;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{
    config_keys, Cli, Command, ExportSceneArgs, GenMeshArgs, GeneratorArgs, KindArg, MeshArgs,
    OutputArgs, PlanArgs, PlanningArgs, RunConfig, SweepArgs, VerifyArgs, VerifyMeshArgs,
};
pub use commands::{resolve_run, MeshSource, ResolvedRun};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCOMPLETE: i32 = 3;

/// Environment variable holding the log level.
pub const LOG_ENV: &str = "TAPEWRAP_LOG";

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flags or config; exit 2.
    Usage(String),
    /// Something failed while doing the work; exit 1. `kind` names the
    /// underlying error variant.
    Failure { kind: String, message: String },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    /// Wraps a library error, keeping its variant name for the message.
    pub fn failure<E: fmt::Debug + fmt::Display>(e: E) -> Self {
        CliError::Failure {
            kind: variant_name(&e),
            message: e.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failure { .. } => EXIT_FAILURE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "{m}"),
            CliError::Failure { kind, message } => write!(f, "{kind}: {message}"),
        }
    }
}

impl std::error::Error for CliError {}

/// Name of an error enum variant, read off its derived `Debug` output.
/// Wrapper variants (`Geometry(..)`, `Planner(..)`) are unwrapped one level.
fn variant_name<E: fmt::Debug>(e: &E) -> String {
    let dbg = format!("{e:?}");
    let head = |s: &str| -> String {
        s.chars()
            .take_while(|c| c.is_alphanumeric() || *c == '_')
            .collect()
    };
    let outer = head(&dbg);
    match outer.as_str() {
        "Geometry" | "Planner" | "Mesh" => {
            let inner = &dbg[outer.len()..].trim_start_matches('(');
            let name = head(inner);
            if name.is_empty() {
                outer
            } else {
                name
            }
        }
        _ => outer,
    }
}

fn init_logging() {
    let env = env_logger::Env::new().filter_or(LOG_ENV, "warn");
    // a second call (tests running several commands) is harmless
    let _ = env_logger::Builder::from_env(env)
        .format_timestamp(None)
        .try_init();
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    init_logging();
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let result = match cli.command {
        Command::GenMesh(a) => commands::gen_mesh(&a),
        Command::Plan(a) => commands::plan(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::ExportScene(a) => commands::export_scene(&a),
        Command::VerifyMesh(a) => commands::verify_mesh(&a),
        Command::Sweep(a) => commands::sweep(&a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
