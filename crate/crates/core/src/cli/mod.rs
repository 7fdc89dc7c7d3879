//! Manifest-driven command line front end.
//!
//! Exit codes: `0` when everything asserted holds, `1` when a verification
//! finding failed, `2` for any input error.

pub mod manifest;
pub mod run;

use std::path::PathBuf;
use std::time::Instant;

use clap::Parser;

pub use manifest::{parse_manifest, Command, Format, Manifest, ManifestError, Mode, Parameters, Problem};
pub use run::{engine_dims, oracle_spec, run_command, CliError, RunReport, Table};

use crate::sections::Semantics;

#[derive(Debug, Parser)]
#[command(name = "qcousin", version, about = "Local cohomology and Cousin complexes over quantum affine spaces")]
pub struct Args {
    /// Problem manifest.
    #[arg(long, env = "QCOUSIN_MANIFEST")]
    pub manifest: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long, env = "QCOUSIN_OUT")]
    pub out: Option<PathBuf>,
    #[arg(long, env = "QCOUSIN_FORMAT")]
    pub format: Option<Format>,
    #[arg(long, env = "QCOUSIN_SEMANTICS")]
    pub semantics: Option<Semantics>,
    #[arg(long, env = "QCOUSIN_POLE_MAX")]
    pub pole_max: Option<u32>,
    #[arg(long, env = "QCOUSIN_WINDOW")]
    pub window: Option<u32>,
    /// Seed for the randomized batteries.
    #[arg(long, env = "QCOUSIN_SEED")]
    pub seed: Option<u64>,
    /// Run this command instead of the manifest's.
    #[arg(long, env = "QCOUSIN_COMMAND")]
    pub command: Option<Command>,
    /// Add wall-clock time to the report; off by default so reruns stay byte-identical.
    #[arg(long, env = "QCOUSIN_TIMING")]
    pub timing: bool,
}

impl Args {
    /// Flags and environment take precedence over the manifest.
    pub fn apply(&self, m: &mut Manifest) -> Result<(), CliError> {
        if let Some(f) = self.format {
            m.format = f;
        }
        if let Some(c) = self.command {
            m.command = c;
        }
        let p = &mut m.parameters;
        if let Some(s) = self.semantics {
            p.semantics = s;
        }
        if let Some(v) = self.pole_max {
            if v == 0 {
                return Err(CliError::Input("--pole-max must be at least 1".into()));
            }
            p.pole_max = v;
        }
        if let Some(v) = self.window {
            if v == 0 {
                return Err(CliError::Input("--window must be at least 1".into()));
            }
            p.window = v;
        }
        if let Some(v) = self.seed {
            p.seed = v;
        }
        Ok(())
    }
}

/// Reads, overrides, runs and renders; returns the text and the exit code.
pub fn execute(args: &Args) -> Result<(String, i32), CliError> {
    let started = Instant::now();
    let text = std::fs::read_to_string(&args.manifest)
        .map_err(|e| CliError::Io { path: args.manifest.display().to_string(), message: e.to_string() })?;
    let mut m = parse_manifest(&text)?;
    args.apply(&mut m)?;
    let report = run_command(&m)?;
    let code = report.exit_code();
    let out = match (m.format, args.timing) {
        (Format::Json, true) => {
            let mut v = report.to_value();
            v["timing"] = serde_json::json!({ "elapsed_ms": started.elapsed().as_millis() as u64 });
            let mut s = serde_json::to_string_pretty(&v).expect("values serialize");
            s.push('\n');
            s
        }
        (f, _) => report.render(f),
    };
    Ok((out, code))
}

/// Entry point of the binary.
pub fn main() -> i32 {
    let args = Args::parse();
    match execute(&args) {
        Ok((out, code)) => {
            let written = match &args.out {
                Some(path) => std::fs::write(path, &out).map_err(|e| format!("{}: {e}", path.display())),
                None => {
                    print!("{out}");
                    Ok(())
                }
            };
            match written {
                Ok(()) => code,
                Err(e) => {
                    eprintln!("error: {e}");
                    2
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
