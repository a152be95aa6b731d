//! `irt`: generate, verify and analyse inductive rotation tilings.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or
//! parameter error, 3 the construction contradicted itself.

mod render;

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use inductive_rotation::analysis::{patch_frequency, repetitivity_radius};
use inductive_rotation::calibration::calibrate;
use inductive_rotation::config::{parse_base_decoration, write_calibration_report};
use inductive_rotation::naked::{self, NakedTile};
use inductive_rotation::verify::{run_suite, Suite, SuiteReport, VerifyConfig};
use inductive_rotation::{
    infer_rule, ArrowedTiling, BaseDecoration, Cell, ColourType, Error, Exec, Patch, Point,
    TileInstance, TileKind, Window,
};

use render::Palette;

/// Environment variable naming the default calibration file.
const CALIBRATION_ENV: &str = "IRT_CALIBRATION";
const MAX_GENERATE_LEVEL: u32 = 10;
const MAX_RADIUS: i64 = 1024;

#[derive(Parser)]
#[command(name = "irt", version, about = "Inductive rotation tilings")]
struct Cli {
    /// Worker threads for data-parallel scans; 1 runs sequentially.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a window of the arrowed or naked tiling.
    Generate(GenerateArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
    /// Infer the block substitution from the tiling.
    InferRule(InferArgs),
    /// Recover the quadrant colouring from the calibration anchors.
    Calibrate(CalibrateArgs),
    /// Repetitivity and frequency estimates on a window.
    Stats(StatsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Arrowed,
    Naked,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Svg,
    Json,
    Text,
}

#[derive(Args)]
struct Calibration {
    /// Quadrant colouring file (defaults to $IRT_CALIBRATION, then the built-in colouring).
    #[arg(long)]
    calibration: Option<PathBuf>,
}

impl Calibration {
    fn path(&self) -> Option<PathBuf> {
        self.calibration
            .clone()
            .or_else(|| std::env::var_os(CALIBRATION_ENV).map(PathBuf::from))
    }

    fn load(&self) -> Result<Option<BaseDecoration>> {
        let Some(path) = self.path() else {
            return Ok(None);
        };
        let text = fs::read_to_string(&path)
            .map_err(|e| usage(format!("cannot read calibration file {}: {e}", path.display())))?;
        Ok(Some(parse_base_decoration(&text)?))
    }
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum, default_value = "arrowed")]
    mode: Mode,
    /// Whole patch R_n, boundary included.
    #[arg(long, conflicts_with = "radius")]
    level: Option<u32>,
    /// Limit tiling on the square [-r, r)^2.
    #[arg(long)]
    radius: Option<i64>,
    #[arg(long, value_enum, default_value = "svg")]
    format: Format,
    /// Fill colours, e.g. `T1=#000000,T2=#555555`.
    #[arg(long, default_value = "")]
    palette: String,
    /// Pixels per unit cell in SVG output.
    #[arg(long, default_value_t = 16)]
    unit: i64,
    #[arg(long, short)]
    output: Option<PathBuf>,
    #[command(flatten)]
    calibration: Calibration,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated suite names, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 8)]
    level: u32,
    #[arg(long, default_value_t = 128)]
    radius: i64,
    #[arg(long, default_value_t = 32)]
    bound: i64,
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: ReportFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportFormat {
    Text,
    Json,
}

#[derive(Args)]
struct InferArgs {
    /// Parent cells are read from [-w, w)^2.
    #[arg(long, default_value_t = 64)]
    window: i64,
    /// Require a calibration file instead of calibrating automatically.
    #[arg(long)]
    no_calibration: bool,
    #[command(flatten)]
    calibration: Calibration,
    /// Rule file; stdout when absent.
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Calibration report; `<output>.calibration` when absent, or stderr.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct CalibrateArgs {
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long, default_value_t = 128)]
    radius: i64,
    #[command(flatten)]
    calibration: Calibration,
}

/// A parameter or input error; exits with code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Usage>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(
            Error::InvalidParameter(_)
            | Error::Parse { .. }
            | Error::LevelCap { .. }
            | Error::WindowTooSmall { .. }
            | Error::OutsideSupport { .. }
            | Error::PointOutsideSupport { .. },
        ) => 2,
        Some(_) => 3,
        None => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = match cli.threads {
        Some(0) => {
            eprintln!("error: --threads must be at least 1");
            return ExitCode::from(2);
        }
        Some(1) => Exec::Sequential,
        Some(n) => {
            // Read by rayon when its global pool starts.
            std::env::set_var("RAYON_NUM_THREADS", n.to_string());
            Exec::Parallel
        }
        None => Exec::default(),
    };
    match run(cli.command, exec) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn run(command: Command, exec: Exec) -> Result<u8> {
    match command {
        Command::Generate(a) => generate(a, exec),
        Command::Verify(a) => verify(a, exec),
        Command::InferRule(a) => infer(a, exec),
        Command::Calibrate(a) => calibrate_cmd(a, exec),
        Command::Stats(a) => stats(a, exec),
    }
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn tiling_for(cal: &Calibration, exec: Exec) -> Result<ArrowedTiling> {
    let base = cal.load()?.unwrap_or_else(BaseDecoration::frozen);
    Ok(ArrowedTiling::new(base).with_exec(exec))
}

fn check_radius(r: i64) -> Result<()> {
    if !(1..=MAX_RADIUS).contains(&r) {
        return Err(usage(format!("radius {r} outside 1..={MAX_RADIUS}")));
    }
    Ok(())
}

fn generate(a: GenerateArgs, exec: Exec) -> Result<u8> {
    if !(1..=256).contains(&a.unit) {
        return Err(usage(format!("unit {} outside 1..=256", a.unit)));
    }
    let palette = Palette::parse(&a.palette).map_err(|e| usage(format!("{e:#}")))?;
    let tiling = tiling_for(&a.calibration, exec)?;
    let patch = match (a.level, a.radius) {
        (Some(n), _) => {
            if n > MAX_GENERATE_LEVEL {
                return Err(usage(format!("level {n} exceeds {MAX_GENERATE_LEVEL}")));
            }
            tiling.full_patch(n)
        }
        (None, Some(r)) => {
            check_radius(r)?;
            tiling.limit_patch(Window::square(r))
        }
        (None, None) => return Err(usage("one of --level or --radius is required")),
    };
    let text = match a.mode {
        Mode::Arrowed => match a.format {
            Format::Svg => render::arrowed_svg(&patch, &palette, a.unit),
            Format::Json => render::arrowed_json(&patch)?,
            Format::Text => render::arrowed_text(&patch),
        },
        Mode::Naked => {
            let tiles: Vec<NakedTile> = naked::derive_naked_from_arrows(&patch)?;
            match a.format {
                Format::Svg => render::naked_svg(&tiles, a.unit),
                Format::Json => render::naked_json(&tiles)?,
                Format::Text => render::naked_text(&tiles),
            }
        }
    };
    write_out(a.output.as_ref(), &text)?;
    Ok(0)
}

#[derive(Serialize)]
struct JsonCheck<'a> {
    suite: &'a str,
    check: &'a str,
    passed: bool,
    detail: &'a str,
}

fn verify(a: VerifyArgs, exec: Exec) -> Result<u8> {
    let suites: Vec<Suite> = if a.suite == "all" {
        Suite::ALL.to_vec()
    } else {
        a.suite
            .split(',')
            .map(|s| s.trim().parse::<Suite>())
            .collect::<Result<_, _>>()?
    };
    let cfg = VerifyConfig {
        level: a.level,
        radius: a.radius,
        bound: a.bound,
        samples: a.samples,
        seed: a.seed,
        exec,
    };
    cfg.validate()?;
    let mut reports: Vec<SuiteReport> = Vec::new();
    for s in suites {
        reports.push(run_suite(s, &cfg)?);
    }
    let passed = reports.iter().all(SuiteReport::passed);
    let text = match a.format {
        ReportFormat::Text => {
            let mut t: String = reports.iter().map(|r| r.to_string()).collect();
            t.push_str(if passed { "RESULT PASS\n" } else { "RESULT FAIL\n" });
            t
        }
        ReportFormat::Json => {
            let names: Vec<String> = reports.iter().map(|r| r.suite.to_string()).collect();
            let checks: Vec<JsonCheck> = reports
                .iter()
                .zip(&names)
                .flat_map(|(r, n)| {
                    r.checks.iter().map(move |c| JsonCheck {
                        suite: n,
                        check: &c.name,
                        passed: c.passed,
                        detail: &c.detail,
                    })
                })
                .collect();
            serde_json::to_string_pretty(&serde_json::json!({ "passed": passed, "checks": checks }))? + "\n"
        }
    };
    write_out(None, &text)?;
    Ok(if passed { 0 } else { 1 })
}

fn infer(a: InferArgs, exec: Exec) -> Result<u8> {
    if !(8..=MAX_RADIUS).contains(&a.window) {
        return Err(usage(format!("window {} outside 8..={MAX_RADIUS}", a.window)));
    }
    let (base, report) = match a.calibration.load()? {
        Some(b) => {
            let src = a.calibration.path().map(|p| p.display().to_string()).unwrap_or_default();
            (b, format!("# colouring read from {src}\n{}", inductive_rotation::config::write_base_decoration(&b)))
        }
        None if a.no_calibration => {
            return Err(usage(format!(
                "--no-calibration needs --calibration or ${CALIBRATION_ENV}"
            )))
        }
        None => {
            let cal = calibrate(exec)?;
            (cal.chosen, write_calibration_report(&cal))
        }
    };
    let tiling = ArrowedTiling::new(base).with_exec(exec);
    let rule = infer_rule(&tiling, a.window)?;
    write_out(a.output.as_ref(), &rule.to_text())?;
    let report_path = a
        .report
        .or_else(|| a.output.as_ref().map(|o| PathBuf::from(format!("{}.calibration", o.display()))));
    match report_path {
        Some(p) => fs::write(&p, report).with_context(|| format!("writing {}", p.display()))?,
        None => eprint!("{report}"),
    }
    Ok(0)
}

fn calibrate_cmd(a: CalibrateArgs, exec: Exec) -> Result<u8> {
    let cal = calibrate(exec)?;
    write_out(a.output.as_ref(), &write_calibration_report(&cal))?;
    Ok(0)
}

fn stats(a: StatsArgs, exec: Exec) -> Result<u8> {
    if !(32..=512).contains(&a.radius) {
        return Err(usage(format!("radius {} outside 32..=512", a.radius)));
    }
    let tiling = tiling_for(&a.calibration, exec)?;
    let patch = tiling.limit_patch(Window::square(a.radius));
    let mut out = String::from("# repetitivity: r R R/r patch-types\n");
    for r in [1, 2, 4, 8] {
        if 8 * r > a.radius {
            break;
        }
        let rep = repetitivity_radius(&patch, r, exec)?;
        out.push_str(&format!("repetitivity {} {} {:.3} {}\n", rep.r, rep.big_r, rep.ratio(), rep.patch_types));
    }
    out.push_str("# frequency: pattern r mean spread (per unit area)\n");
    let fr = a.radius / 4;
    let centres: Vec<Point> = [(0, 0), (1, 1), (-1, 1), (1, -1), (-1, -1)]
        .iter()
        .map(|(x, y)| Point::new(x * a.radius / 2, y * a.radius / 2))
        .collect();
    let mut patterns: Vec<(String, Patch)> = ColourType::ALL
        .iter()
        .map(|&c| {
            (
                c.to_string(),
                Patch::from_tiles([TileInstance::new(Cell::new(0, 0), TileKind::new(c, inductive_rotation::ArrowDir::SE))]),
            )
        })
        .collect();
    patterns.push(("seed".into(), inductive_rotation::substitution::seed_patch(&tiling)));
    for (name, pat) in patterns {
        let recs = patch_frequency(&patch, &pat, fr, &centres, exec)?;
        let mean = recs.iter().map(|r| r.frequency).sum::<f64>() / recs.len() as f64;
        out.push_str(&format!(
            "frequency {name} {fr} {mean:.5} {:.5}\n",
            inductive_rotation::analysis::frequency_spread(&recs)
        ));
    }
    write_out(None, &out)?;
    Ok(0)
}
