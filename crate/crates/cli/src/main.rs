use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use timescales::{Params, TimeScale};
use timescales_cli::{
    cmd_diff, cmd_identity_check, cmd_integrate, cmd_scale, cmd_table, resolve_points, write_records, DiffMethod,
    DiffOptions, Format, IntegrateOptions, Report,
};

#[derive(Parser)]
#[command(name = "tscalc", version, about = "Calculus on time scales")]
struct Cli {
    /// One JSON object per line.
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,
    /// Comma-separated values with a header row.
    #[arg(long, global = true)]
    csv: bool,
    /// Evaluate points on all cores; output order is unchanged.
    #[arg(long, global = true)]
    parallel: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ScaleArgs {
    /// Compact scale, e.g. R, Z, hZ:0.5, q:2, set:{0,1}, union:[0,1]+{2}, cantor:5.
    #[arg(long, required_unless_present = "scale_file", conflicts_with = "scale_file", allow_hyphen_values = true)]
    scale: Option<String>,
    /// JSON scale description.
    #[arg(long)]
    scale_file: Option<PathBuf>,
}

#[derive(Args)]
struct PointArgs {
    /// Comma-separated evaluation points.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    points: Vec<f64>,
    /// Sample every scale point of `a,b` (dense parts at most --max-step apart).
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<(f64, f64)>,
    #[arg(long, default_value_t = 0.25)]
    max_step: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Auto,
    Quotient,
    Quadrature,
}

#[derive(Args)]
struct DiffArgs {
    /// Expression in `t`.
    #[arg(allow_hyphen_values = true)]
    expr: String,
    #[command(flatten)]
    scale: ScaleArgs,
    #[command(flatten)]
    points: PointArgs,
    /// Backward (nabla) derivative.
    #[arg(long)]
    nabla: bool,
    /// Quadrature tolerance.
    #[arg(long, default_value_t = timescales::quadrature::DEFAULT_TOL)]
    tol: f64,
    /// Largest cross-check gap, relative to max(1, |value|).
    #[arg(long, default_value_t = 1e-8)]
    gap_tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Jump operators, graininess and classification.
    Scale {
        #[command(flatten)]
        scale: ScaleArgs,
        /// Comma-separated points; without points a summary of the scale.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        points: Vec<f64>,
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<(f64, f64)>,
        #[arg(long, default_value_t = 0.25)]
        max_step: f64,
    },
    /// Delta or nabla derivative of an expression.
    Diff {
        #[command(flatten)]
        args: DiffArgs,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
    },
    /// Derivative through closed form, difference quotient and quadrature.
    Oracle {
        #[command(flatten)]
        args: DiffArgs,
    },
    /// Delta integral over `a,b`.
    Integrate {
        #[arg(allow_hyphen_values = true)]
        expr: String,
        #[command(flatten)]
        scale: ScaleArgs,
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: (f64, f64),
        #[arg(long, default_value_t = 0.25)]
        max_step: f64,
        /// Also integrate the delta derivative and compare with f(b) - f(a).
        #[arg(long)]
        check_ftc: bool,
        /// Largest accepted relative residual of --check-ftc.
        #[arg(long, default_value_t = 1e-6)]
        ftc_tol: f64,
    },
    /// All catalog entries side by side with both oracles.
    Table {
        #[command(flatten)]
        scale: ScaleArgs,
        #[command(flatten)]
        points: PointArgs,
        #[arg(long, default_value_t = 2.0, allow_hyphen_values = true)]
        k: f64,
        #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
        c: f64,
        #[arg(long, default_value_t = 2)]
        n: u32,
        /// Largest cross-check gap, relative to max(1, |closed form|).
        #[arg(long, default_value_t = 1e-8)]
        gap_tol: f64,
    },
    /// Defect identities of the trigonometric and hyperbolic functions.
    IdentityCheck {
        #[command(flatten)]
        scale: ScaleArgs,
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: (f64, f64),
        #[arg(long, default_value_t = 0.25)]
        max_step: f64,
    },
}

fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(',').ok_or("expected a,b")?;
    let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    Ok((num(a)?, num(b)?))
}

fn load_scale(args: &ScaleArgs) -> Result<TimeScale, String> {
    match (&args.scale, &args.scale_file) {
        (Some(spec), _) => TimeScale::parse(spec).map_err(|e| e.to_string()),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
            TimeScale::from_json(&text).map_err(|e| e.to_string())
        }
        (None, None) => Err("no scale given".into()),
    }
}

fn run(cli: &Cli) -> Result<(&'static str, Report), String> {
    let err = |e: timescales::Error| e.to_string();
    let diff = |args: &DiffArgs, method| -> Result<Report, String> {
        let ts = load_scale(&args.scale)?;
        let p = &args.points;
        let points = resolve_points(&ts, &p.points, p.window, p.max_step).map_err(err)?;
        let opts = DiffOptions { method, nabla: args.nabla, tol: args.tol, gap_tol: args.gap_tol, parallel: cli.parallel };
        cmd_diff(&args.expr, &ts, &points, &opts).map_err(err)
    };
    Ok(match &cli.command {
        Command::Scale { scale, points, window, max_step } => {
            let ts = load_scale(scale)?;
            let points = match window {
                Some(_) => resolve_points(&ts, points, *window, *max_step).map_err(err)?,
                None => points.clone(),
            };
            ("scale", cmd_scale(&ts, &points))
        }
        Command::Diff { args, method } => {
            let method = match method {
                MethodArg::Auto => DiffMethod::Auto,
                MethodArg::Quotient => DiffMethod::Quotient,
                MethodArg::Quadrature => DiffMethod::Quadrature,
            };
            ("diff", diff(args, method)?)
        }
        Command::Oracle { args } => ("oracle", diff(args, DiffMethod::Auto)?),
        Command::Integrate { expr, scale, window, max_step, check_ftc, ftc_tol } => {
            let ts = load_scale(scale)?;
            let opts = IntegrateOptions { max_step: *max_step, check_ftc: *check_ftc, ftc_tol: *ftc_tol };
            ("integrate", cmd_integrate(expr, &ts, window.0, window.1, &opts).map_err(err)?)
        }
        Command::Table { scale, points, k, c, n, gap_tol } => {
            let ts = load_scale(scale)?;
            let pts = resolve_points(&ts, &points.points, points.window, points.max_step).map_err(err)?;
            ("table", cmd_table(&ts, &pts, &Params::new(*k, *c, *n), *gap_tol, cli.parallel))
        }
        Command::IdentityCheck { scale, window, max_step } => {
            let ts = load_scale(scale)?;
            let report = cmd_identity_check(&ts, window.0, window.1, *max_step, cli.parallel).map_err(err)?;
            ("identity-check", report)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = if cli.json {
        Format::Json
    } else if cli.csv {
        Format::Csv
    } else {
        Format::Table
    };
    let (command, report) = match run(&cli) {
        Ok(r) => r,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if let Err(e) = write_records(&mut out, command, &report.records, format).and_then(|_| out.flush()) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    for message in &report.messages {
        eprintln!("error: {message}");
    }
    if report.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
