//! Subcommands `run`, `sweep`, `validate` and `presets`.
//!
//! Exit codes: 0 success, 1 invalid request or failed validation, 2 I/O.

mod csv;
mod svg;

use std::fmt::Write as _;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ghostsim::biphoton::{default_grid, FieldPath, Plane, Resolution};
use ghostsim::detection::{CcrSolver, DetectorModel, IntegratingMethod, Methods, PointMethod};
use ghostsim::geometry::{GridSpec, Preset, Scenario};
use ghostsim::numerics::fit_power_law;
use ghostsim::validation::{Suite, ValidationOptions};
use ghostsim::Error;

use csv::{num, RunRecord};

#[derive(Debug, Parser)]
#[command(
    name = "ghostsim",
    version,
    about = "Ghost imaging and ghost diffraction with entangled photon pairs"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute one counting-rate profile and write it as CSV.
    Run(RunArgs),
    /// FWHM as one scenario field varies.
    Sweep(SweepArgs),
    /// Run the acceptance checks and print the report.
    Validate(ValidateArgs),
    /// List built-in scenarios, or print one as a key = value file.
    Presets(PresetsArgs),
}

#[derive(Debug, Args)]
struct ScenarioArgs {
    /// Built-in scenario name (see `presets`).
    #[arg(long, default_value = "custom")]
    scenario: String,
    /// key = value scenario file, used instead of a built-in.
    #[arg(long, value_name = "FILE")]
    scenario_file: Option<PathBuf>,
    /// Field override applied after the scenario is resolved; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

#[derive(Debug, Args)]
struct ModelArgs {
    /// ghost or diffraction.
    #[arg(long)]
    plane: Option<Plane>,
    /// integrating or point.
    #[arg(long)]
    detector: Option<DetectorModel>,
    /// parseval or direct (integrating); fresnel or fraunhofer (point,
    /// diffraction plane).
    #[arg(long)]
    method: Option<String>,
    /// semi-analytic or full-numeric crystal integral.
    #[arg(long, default_value = "semi-analytic")]
    path: FieldPath,
    /// Double every panel and point count.
    #[arg(long)]
    fine: bool,
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    #[command(flatten)]
    model: ModelArgs,
    /// Number of output samples.
    #[arg(long)]
    grid_points: Option<usize>,
    /// Output window [-h, h], meters.
    #[arg(long, value_name = "METERS")]
    grid_half_width: Option<f64>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional SVG plot destination.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Repeat the run recorded in a profile CSV header.
    #[arg(long, value_name = "CSV", conflicts_with_all = [
        "scenario", "scenario_file", "set", "plane", "detector", "method",
        "path", "fine", "grid_points", "grid_half_width",
    ])]
    replay: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    scenario: ScenarioArgs,
    #[command(flatten)]
    model: ModelArgs,
    /// Scenario field to vary.
    #[arg(long)]
    vary: String,
    /// Comma-separated values in SI units.
    #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
    values: Vec<f64>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    /// Relative error injected into the oracle's erf; the oracle rows must
    /// then fail.
    #[arg(long, value_name = "REL", default_value_t = 0.0)]
    inject_erf_fault: f64,
}

#[derive(Debug, Args)]
struct PresetsArgs {
    /// Print this scenario in key = value form.
    name: Option<String>,
}

enum Failure {
    User(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) => Failure::Io(e.to_string()),
            _ => Failure::User(e.to_string()),
        }
    }
}

type Outcome = std::result::Result<ExitCode, Failure>;

pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let outcome = match cli.command {
        Command::Run(a) => run(a),
        Command::Sweep(a) => sweep(a),
        Command::Validate(a) => validate(a),
        Command::Presets(a) => presets(a),
    };
    match outcome {
        Ok(code) => code,
        Err(Failure::User(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}

fn resolve_scenario(a: &ScenarioArgs) -> std::result::Result<(String, Scenario), Failure> {
    match &a.scenario_file {
        Some(path) => {
            let text = read(path)?;
            let s: Scenario = text.parse()?;
            Ok(("file".into(), s.with_overrides(&a.set)?))
        }
        None => {
            let p: Preset = a.scenario.parse()?;
            Ok((p.name().into(), p.scenario().with_overrides(&a.set)?))
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    csv::write_atomic(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> std::result::Result<(), Failure> {
    match out {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Method name for the CSV header, checked against the detector.
fn resolve_methods(
    plane: Plane,
    detector: DetectorModel,
    method: Option<&str>,
) -> std::result::Result<(Methods, String), Failure> {
    let mut m = Methods::default();
    let name = match (detector, plane) {
        (DetectorModel::Integrating, _) => {
            m.integrating = method.map_or(Ok(IntegratingMethod::default()), str::parse)?;
            m.integrating.name()
        }
        (DetectorModel::Point, Plane::Diffraction) => {
            m.point = method.map_or(Ok(PointMethod::default()), str::parse)?;
            m.point.name()
        }
        (DetectorModel::Point, Plane::Ghost) => match method {
            None | Some("none") => "none",
            Some(other) => {
                return Err(Failure::User(format!(
                    "the ghost-plane point detector takes no --method (got `{other}`)"
                )))
            }
        },
    };
    Ok((m, name.to_owned()))
}

fn require<T: Copy>(v: Option<T>, flag: &str) -> std::result::Result<T, Failure> {
    v.ok_or_else(|| Failure::User(format!("--{flag} is required")))
}

fn resolution(fine: bool) -> Resolution {
    if fine {
        Resolution::default().doubled()
    } else {
        Resolution::default()
    }
}

fn run(a: RunArgs) -> Outcome {
    let rec = match &a.replay {
        Some(path) => csv::parse_header(&read(path)?)?,
        None => {
            let (preset, scenario) = resolve_scenario(&a.scenario)?;
            let plane = require(a.model.plane, "plane")?;
            let detector = require(a.model.detector, "detector")?;
            let (_, method) = resolve_methods(plane, detector, a.model.method.as_deref())?;
            let res = resolution(a.model.fine);
            let default = default_grid(&scenario, plane, &res)?;
            let half = a.grid_half_width.unwrap_or(default.x_max());
            let n = a.grid_points.unwrap_or(default.n_points());
            RunRecord {
                preset,
                plane,
                detector,
                method,
                path: a.model.path,
                fine: a.model.fine,
                grid: GridSpec::symmetric(half, n)?,
                scenario,
            }
        }
    };
    let (methods, _) = resolve_methods(rec.plane, rec.detector, Some(&rec.method))?;
    let solver = CcrSolver::new(resolution(rec.fine), rec.path);
    let profile = solver.profile(
        &rec.scenario,
        rec.plane,
        rec.detector,
        methods,
        Some(&rec.grid),
    )?;
    let text = csv::profile_csv(&rec, &profile);
    emit(a.out.as_deref(), &text)?;
    if let Some(path) = &a.svg {
        let title = format!(
            "{} {} plane, {} detector, FWHM {:.4} mm",
            rec.preset,
            rec.plane,
            rec.detector,
            profile.fwhm.fwhm * 1e3
        );
        write(path, &svg::profile_svg(&profile, &title))?;
    }
    if a.out.is_some() {
        eprintln!("fwhm_m = {}", num(profile.fwhm.fwhm));
    }
    Ok(ExitCode::SUCCESS)
}

fn sweep(a: SweepArgs) -> Outcome {
    let (preset, base) = resolve_scenario(&a.scenario)?;
    let plane = require(a.model.plane, "plane")?;
    let detector = require(a.model.detector, "detector")?;
    let (methods, method) = resolve_methods(plane, detector, a.model.method.as_deref())?;
    let solver = CcrSolver::new(resolution(a.model.fine), a.model.path);
    let rows = solver.sweep(&base, &a.vary, &a.values, plane, detector, methods)?;

    let mut out = String::from("# ghostsim sweep\n");
    for (k, v) in [
        ("preset", preset.as_str()),
        ("plane", plane.name()),
        ("detector", detector.name()),
        ("method", &method),
        ("path", a.model.path.name()),
        ("vary", &a.vary),
        ("metric", "fwhm_m"),
    ] {
        let _ = writeln!(out, "# {k} = {v}");
    }
    for (k, v) in base.fields() {
        let _ = writeln!(out, "# {k} = {v}");
    }
    let _ = writeln!(out, "{},fwhm_m", a.vary);
    for (x, y) in &rows {
        let _ = writeln!(out, "{},{}", num(*x), num(*y));
    }
    if rows.iter().all(|(x, y)| *x > 0.0 && *y > 0.0) {
        if let Ok(slope) = fit_power_law(&rows) {
            let _ = writeln!(out, "# loglog_slope = {}", num(slope));
        }
    }
    emit(a.out.as_deref(), &out)?;
    Ok(ExitCode::SUCCESS)
}

fn validate(a: ValidateArgs) -> Outcome {
    if !a.inject_erf_fault.is_finite() {
        return Err(Failure::User("--inject-erf-fault must be finite".into()));
    }
    let report = Suite::new(ValidationOptions {
        erf_fault: a.inject_erf_fault,
    })
    .report();
    let color = std::env::var_os("NO_COLOR").is_none() && std::io::stdout().is_terminal();
    print!("{}", report.render(color));
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn presets(a: PresetsArgs) -> Outcome {
    match a.name {
        Some(name) => {
            let p: Preset = name.parse()?;
            print!(
                "# {}: {}\n{}",
                p.name(),
                p.provenance(),
                p.scenario().to_kv_string()
            );
        }
        None => {
            for p in Preset::ALL {
                println!("{:<12} {}", p.name(), p.provenance());
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn clap_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn methods_follow_detector() {
        let (m, n) = resolve_methods(Plane::Ghost, DetectorModel::Integrating, Some("direct"))
            .ok()
            .unwrap();
        assert_eq!(
            (m.integrating, n.as_str()),
            (IntegratingMethod::Direct, "direct")
        );
        let (m, n) = resolve_methods(Plane::Diffraction, DetectorModel::Point, None)
            .ok()
            .unwrap();
        assert_eq!((m.point, n.as_str()), (PointMethod::Fresnel, "fresnel"));
        assert!(
            resolve_methods(Plane::Diffraction, DetectorModel::Point, Some("parseval")).is_err()
        );
        assert!(resolve_methods(Plane::Ghost, DetectorModel::Point, Some("fresnel")).is_err());
        assert!(resolve_methods(Plane::Ghost, DetectorModel::Point, Some("none")).is_ok());
    }
}
