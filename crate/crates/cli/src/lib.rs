//! `perfprof` command line: validate results files, print the schema, and
//! export profiles as SVG, HTML or curve JSON.
//!
//! Exit status: `0` success, `1` invalid results file or failed write,
//! `2` usage error (bad flags, unknown names, contradictory settings,
//! unreadable input).

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use perfprof::config::parse_scale_spec;
use perfprof::export::CurveDocument;
use perfprof::parse::parse_dataset_with_report;
use perfprof::{analyze, emit_schema, render_html, render_svg, ConfigError, ConfigRequest, XScale};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "perfprof",
    version,
    about = "Performance profiles with what-if analysis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a results file and list every problem found.
    Validate {
        /// Results file (`-` for standard input).
        #[arg(short, long)]
        input: PathBuf,
    },
    /// Print the JSON Schema for results files.
    Schema {
        /// Output file (`-` or omitted for standard output).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compute profiles and export them.
    Profile(ProfileArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Svg,
    Html,
    Json,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    /// Results file (`-` for standard input).
    #[arg(short, long)]
    pub input: PathBuf,

    /// Output file (`-` or omitted for standard output).
    #[arg(short, long)]
    pub output: Option<PathBuf>,

    /// Output format; defaults from the output file extension, else svg.
    #[arg(short, long, value_enum)]
    pub format: Option<Format>,

    /// Baseline solver; repeat for several. Default: every solver.
    #[arg(long = "baseline", value_name = "NAME")]
    pub baselines: Vec<String>,

    /// Remove instances carrying this label; repeatable.
    #[arg(long = "drop-label", value_name = "NAME")]
    pub drop_labels: Vec<String>,

    /// Scale one component, e.g. "Car A/motor=0.8"; repeatable.
    #[arg(long = "scale", value_name = "SOLVER/COMPONENT=FACTOR")]
    pub scales: Vec<String>,

    #[arg(long)]
    pub tau_min: Option<f64>,

    #[arg(long)]
    pub tau_max: Option<f64>,

    #[arg(long, value_parser = parse_x_scale)]
    pub x_scale: Option<XScale>,

    /// Drop instances where a baseline's total is below this value.
    #[arg(long = "min-baseline", value_name = "VALUE")]
    pub min_baseline: Option<f64>,

    /// Treat totals above this value as unsolved (`inf` disables).
    #[arg(long = "unsolved", value_name = "VALUE")]
    pub unsolved: Option<f64>,

    /// Page title for html output; defaults to the metric name.
    #[arg(long, default_value = "")]
    pub title: String,
}

fn parse_x_scale(s: &str) -> Result<XScale, String> {
    s.parse()
}

impl ProfileArgs {
    /// The analysis settings these flags describe, in the service's wire form.
    pub fn config_request(&self) -> Result<ConfigRequest, String> {
        let mut request = ConfigRequest {
            baselines: (!self.baselines.is_empty()).then(|| self.baselines.clone()),
            drop_labels: self.drop_labels.clone(),
            min_baseline_threshold: self.min_baseline,
            unsolved_threshold: self.unsolved.filter(|u| *u != f64::INFINITY),
            tau_min: self.tau_min,
            tau_max: self.tau_max,
            x_scale: self.x_scale,
            ..Default::default()
        };
        for spec in &self.scales {
            let (solver, component, factor) = parse_scale_spec(spec)?;
            request
                .scale_factors
                .entry(solver)
                .or_default()
                .insert(component, factor);
        }
        Ok(request)
    }

    fn format(&self) -> Format {
        if let Some(f) = self.format {
            return f;
        }
        match self
            .output
            .as_deref()
            .and_then(Path::extension)
            .and_then(|e| e.to_str())
        {
            Some("html" | "htm") => Format::Html,
            Some("json") => Format::Json,
            _ => Format::Svg,
        }
    }
}

/// Names the flag behind a configuration error path.
fn flag_for(path: &str) -> &str {
    let head = path.split(['[', '/']).next().unwrap_or(path);
    match head {
        "baselines" => "--baseline",
        "drop_labels" | "active_labels" => "--drop-label",
        "scale_factors" => "--scale",
        "min_baseline_threshold" => "--min-baseline",
        "unsolved_threshold" => "--unsolved",
        "tau_min" => "--tau-min",
        "tau_max" => "--tau-max",
        "x_scale" => "--x-scale",
        other => other,
    }
}

fn read_input(path: &Path) -> io::Result<Vec<u8>> {
    if path == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        fs::read(path)
    }
}

fn write_output(path: Option<&Path>, bytes: &[u8], stdout: &mut dyn Write) -> io::Result<()> {
    match path {
        None => stdout.write_all(bytes),
        Some(p) if p == Path::new("-") => stdout.write_all(bytes),
        Some(p) => fs::write(p, bytes),
    }
}

/// Runs one invocation; the data product goes to `stdout` (or the output
/// file), diagnostics to `stderr`. Returns the exit status.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    match cli.command {
        Command::Schema { output } => {
            match write_output(output.as_deref(), emit_schema().as_bytes(), stdout) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    let _ = writeln!(stderr, "error: cannot write schema: {e}");
                    EXIT_INVALID
                }
            }
        }
        Command::Validate { input } => {
            let raw = match read_input(&input) {
                Ok(raw) => raw,
                Err(e) => {
                    let _ = writeln!(stderr, "error: cannot read {}: {e}", input.display());
                    return EXIT_USAGE;
                }
            };
            let (dataset, report) = parse_dataset_with_report(&raw);
            let _ = write!(stdout, "{report}");
            match dataset {
                Some(ds) => {
                    let _ = writeln!(
                        stdout,
                        "ok: {} solvers, {} instances, {} labels",
                        ds.solver_count(),
                        ds.instance_count(),
                        ds.labels().len()
                    );
                    EXIT_OK
                }
                None => {
                    let _ = writeln!(stdout, "invalid: {} error(s)", report.errors.len());
                    EXIT_INVALID
                }
            }
        }
        Command::Profile(args) => profile(&args, stdout, stderr),
    }
}

fn profile(args: &ProfileArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> u8 {
    let request = match args.config_request() {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "usage error: --scale: {e}");
            return EXIT_USAGE;
        }
    };
    let raw = match read_input(&args.input) {
        Ok(raw) => raw,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot read {}: {e}", args.input.display());
            return EXIT_USAGE;
        }
    };
    let (dataset, report) = parse_dataset_with_report(&raw);
    for w in &report.warnings {
        let _ = writeln!(stderr, "warning: {w}");
    }
    let Some(dataset) = dataset else {
        let _ = write!(stderr, "{report}");
        return EXIT_INVALID;
    };
    let config = match request.resolve::<f64, _>(&dataset) {
        Ok(c) => c,
        Err(ConfigError(report)) => {
            for e in &report.errors {
                let _ = writeln!(stderr, "usage error: {}: {}", flag_for(&e.path), e.message);
            }
            return EXIT_USAGE;
        }
    };
    let profiles = match analyze(&dataset, &config) {
        Ok(p) => p,
        Err(ConfigError(report)) => {
            let _ = write!(stderr, "{report}");
            return EXIT_USAGE;
        }
    };
    if profiles.excluded_no_baseline() > 0 {
        let _ = writeln!(
            stderr,
            "note: {} instance(s) excluded because every baseline was unsolved",
            profiles.excluded_no_baseline()
        );
    }
    let bytes = match args.format() {
        Format::Json => CurveDocument::from_profiles(&profiles).to_json(),
        format => {
            let svg = match render_svg(&profiles, &config) {
                Ok(svg) => svg,
                Err(e) => {
                    let _ = writeln!(stderr, "usage error: {e}");
                    return EXIT_USAGE;
                }
            };
            if format == Format::Html {
                render_html(&svg, &args.title, dataset.metric_name())
            } else {
                svg
            }
        }
    };
    match write_output(args.output.as_deref(), bytes.as_bytes(), stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: cannot write output: {e}");
            EXIT_INVALID
        }
    }
}
