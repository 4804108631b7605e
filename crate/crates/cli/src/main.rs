mod render;

use clap::{Args, Parser, Subcommand, ValueEnum};
use render::{Cell, Format, Report};
use simplex_stats::battery::{max_mean_test, run_order_test, table1_experiment, write_order_csv, write_table1_csv};
use simplex_stats::exact::{parse_rational, pow, rational_to_f64};
use simplex_stats::identities::f_nt;
use simplex_stats::maxcoord::{moment_unit_exact, variance_unit_exact};
use simplex_stats::mc::{mc_max_cdf, mc_moment, mc_restrictiveness, MCEstimate};
use simplex_stats::orders::{has_zero_suffix, hr_upper_prob};
use simplex_stats::{
    joint_cdf, restrictiveness_constant, simplex_volume, tail_prob, whitworth_cdf, Error, MaxDistParams, OrderKind,
    Rational, Result, Seed, SimplexVector, StreamSource, Table1Config,
};
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "simplex-stats",
    version,
    about = "Exact results for uniform points on the simplex, Monte Carlo checks, and an order-based randomness test"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact and closed-form values.
    Analytics {
        #[command(subcommand)]
        cmd: Analytics,
        #[arg(long, value_enum, default_value = "text", global = true)]
        format: Format,
    },
    /// Monte Carlo estimates next to their analytic targets.
    Mc {
        #[command(subcommand)]
        cmd: Mc,
        #[arg(long, value_enum, default_value = "text", global = true)]
        format: Format,
    },
    /// Randomness tests on a number stream.
    Test {
        #[command(subcommand)]
        cmd: Test,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OrderArg {
    St,
    Hr,
    Lr,
}

impl From<OrderArg> for OrderKind {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::St => OrderKind::St,
            OrderArg::Hr => OrderKind::Hr,
            OrderArg::Lr => OrderKind::Lr,
        }
    }
}

/// A number given on the command line, kept both as a double and as the
/// exact fraction it was written as.
#[derive(Debug, Clone)]
struct Number {
    value: f64,
    exact: Rational,
}

fn parse_number(s: &str) -> std::result::Result<Number, String> {
    let exact = parse_rational(s).map_err(|e| e.to_string())?;
    Ok(Number { value: rational_to_f64(&exact), exact })
}

#[derive(Args)]
struct Size {
    /// Total mass of the simplex (decimal or p/q).
    #[arg(long, default_value = "1", value_parser = parse_number)]
    u: Number,
}

#[derive(Args)]
struct Point {
    /// Comma-separated coordinates.
    #[arg(long, value_delimiter = ',', num_args = 1.., required = true, allow_negative_numbers = true)]
    theta: Vec<f64>,
    #[command(flatten)]
    size: Size,
}

#[derive(Subcommand)]
enum Analytics {
    /// Probability that two uniform points are ordered.
    Restrictiveness {
        #[arg(long, value_enum)]
        order: OrderArg,
        #[arg(long)]
        n: usize,
    },
    /// CDF of the largest coordinate at b.
    Cdf {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        b: f64,
        #[command(flatten)]
        size: Size,
    },
    /// P(every coordinate <= theta_i).
    JointCdf(Point),
    /// P(every coordinate >= theta_i).
    Tail(Point),
    /// t-th moment of the largest coordinate.
    Moment {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: u32,
        #[command(flatten)]
        size: Size,
    },
    /// Variance of the largest coordinate.
    Variance {
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        size: Size,
    },
    /// Probability that a uniform point dominates theta in hazard rate order.
    HrUpper(Point),
    /// sum_{k=1}^{n} (-1)^(k-1) C(n,k) / k^t.
    F {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t: u32,
    },
    /// Euclidean volume of the simplex.
    Volume {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        size: Size,
    },
}

#[derive(Args)]
struct McRun {
    #[arg(long, default_value_t = 1_000_000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

#[derive(Subcommand)]
enum Mc {
    /// Fraction of uniform pairs that are ordered.
    Restrictiveness {
        #[arg(long, value_enum)]
        order: OrderArg,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        run: McRun,
    },
    /// Empirical CDF of the largest coordinate on a grid of b values.
    Cdf {
        #[arg(long)]
        n: usize,
        /// Comma-separated grid.
        #[arg(long, value_delimiter = ',', num_args = 1.., required = true, allow_negative_numbers = true)]
        b: Vec<f64>,
        #[command(flatten)]
        size: Size,
        #[command(flatten)]
        run: McRun,
    },
    /// Sample mean of max^t.
    Moment {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: u32,
        #[command(flatten)]
        size: Size,
        #[command(flatten)]
        run: McRun,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Generator {
    Uniform,
    Ar,
}

#[derive(Args)]
struct Source {
    /// Read numbers from a file (one per line, or raw doubles with --binary).
    #[arg(long, conflicts_with_all = ["generator", "alpha", "seed"])]
    input: Option<PathBuf>,
    /// The input file holds little-endian 64-bit doubles.
    #[arg(long, requires = "input")]
    binary: bool,
    #[arg(long, value_enum)]
    generator: Option<Generator>,
    /// Coefficient of the autoregressive generator, in [0, 1).
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    seed: Option<u64>,
}

impl Source {
    fn stream(&self) -> Result<StreamSource> {
        if let Some(path) = &self.input {
            let path = path.clone();
            return Ok(if self.binary { StreamSource::FileBinary { path } } else { StreamSource::FileText { path } });
        }
        let seed = Seed(self.seed.unwrap_or(0));
        match (self.generator.unwrap_or(Generator::Uniform), self.alpha) {
            (Generator::Uniform, None) => Ok(StreamSource::uniform(seed)),
            (Generator::Uniform, Some(_)) => Err(Error::domain("--alpha only applies to --generator ar")),
            (Generator::Ar, Some(alpha)) => StreamSource::autoregressive(alpha, seed),
            (Generator::Ar, None) => Err(Error::domain("--generator ar needs --alpha")),
        }
    }
}

#[derive(Subcommand)]
enum Test {
    /// Count ordered pairs of points and run an exact binomial test.
    Order {
        #[arg(long, value_enum)]
        order: OrderArg,
        /// Numbers per group; points live on the simplex of dimension n + 1.
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        pairs: u64,
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Compare the mean largest spacing with its exact value.
    MaxMean {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 100_000)]
        groups: u64,
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Mean and spread of p-values for uniform and autoregressive streams.
    Table1 {
        #[arg(long, default_value_t = 100)]
        reps: usize,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        pairs: u64,
        #[arg(long, default_value_t = 0.1)]
        alpha: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn describe(source: &StreamSource) -> String {
    match source {
        StreamSource::FileText { path } => format!("file-text {}", path.display()),
        StreamSource::FileBinary { path } => format!("file-binary {}", path.display()),
        StreamSource::GenUniform { seed } => format!("gen-uniform seed={}", seed.0),
        StreamSource::GenAr { alpha, seed } => format!("gen-ar alpha={} seed={}", render::decimal(*alpha), seed.0),
    }
}

fn estimate_fields(est: &MCEstimate, target: Cell) -> Vec<(&'static str, Cell)> {
    vec![
        ("estimate", Cell::Float(est.estimate)),
        ("std_error", Cell::Float(est.std_error)),
        ("samples", Cell::Int(est.samples)),
        ("seed", Cell::Int(est.seed.0)),
        ("generator", Cell::Text(est.generator().into())),
        ("target", target),
    ]
}

fn scaled_moment(n: u32, t: u32, u: &Number) -> Result<Rational> {
    MaxDistParams::new(n, u.value)?;
    Ok(moment_unit_exact(n, t)? * pow(&u.exact, t))
}

fn analytics(cmd: Analytics) -> Result<Report> {
    Ok(match cmd {
        Analytics::Restrictiveness { order, n } => {
            Report::single(Cell::Exact(restrictiveness_constant(order.into(), n)?))
        }
        Analytics::Cdf { n, b, size } => {
            if b.is_nan() {
                return Err(Error::domain("b must be a number"));
            }
            Report::single(Cell::Float(whitworth_cdf(&MaxDistParams::new(n, size.u.value)?, b)))
        }
        Analytics::JointCdf(p) => Report::single(Cell::Float(joint_cdf(&p.theta, p.size.u.value)?)),
        Analytics::Tail(p) => Report::single(Cell::Float(tail_prob(&p.theta, p.size.u.value)?)),
        Analytics::Moment { n, t, size } => Report::single(Cell::Exact(scaled_moment(n, t, &size.u)?)),
        Analytics::Variance { n, size } => {
            MaxDistParams::new(n, size.u.value)?;
            Report::single(Cell::Exact(variance_unit_exact(n)? * pow(&size.u.exact, 2)))
        }
        Analytics::HrUpper(p) => {
            let theta = SimplexVector::new(p.theta, p.size.u.value)?;
            if has_zero_suffix(&theta) {
                eprintln!("note: theta ends in zeros; factors with a zero suffix sum are taken as 1");
            }
            Report::single(Cell::Float(hr_upper_prob(&theta)))
        }
        Analytics::F { n, t } => Report::single(Cell::Exact(f_nt(n, t)?)),
        Analytics::Volume { n, size } => Report::single(Cell::Float(simplex_volume(n, size.u.value)?)),
    })
}

fn monte_carlo(cmd: Mc) -> Result<Report> {
    Ok(match cmd {
        Mc::Restrictiveness { order, n, run } => {
            let target = restrictiveness_constant(order.into(), n)?;
            let est = mc_restrictiveness(order.into(), n, run.samples, Seed(run.seed), run.threads)?;
            Report::fields(estimate_fields(&est, Cell::Exact(target)))
        }
        Mc::Moment { n, t, size, run } => {
            let dim = u32::try_from(n).map_err(|_| Error::domain(format!("n = {n} is too large")))?;
            let target = scaled_moment(dim, t, &size.u)?;
            let est = mc_moment(n, size.u.value, t, run.samples, Seed(run.seed), run.threads)?;
            Report::fields(estimate_fields(&est, Cell::Exact(target)))
        }
        Mc::Cdf { n, b, size, run } => {
            let dim = u32::try_from(n).map_err(|_| Error::domain(format!("n = {n} is too large")))?;
            let params = MaxDistParams::new(dim, size.u.value)?;
            let ests = mc_max_cdf(n, size.u.value, &b, run.samples, Seed(run.seed), run.threads)?;
            let first = ests.first().expect("grid is non-empty");
            Report {
                fields: vec![
                    ("samples", Cell::Int(first.samples)),
                    ("seed", Cell::Int(first.seed.0)),
                    ("generator", Cell::Text(first.generator().into())),
                ],
                columns: vec!["b", "estimate", "std_error", "target"],
                rows: b
                    .iter()
                    .zip(&ests)
                    .map(|(&b, e)| {
                        vec![
                            Cell::Float(b),
                            Cell::Float(e.estimate),
                            Cell::Float(e.std_error),
                            Cell::Float(whitworth_cdf(&params, b)),
                        ]
                    })
                    .collect(),
            }
        }
    })
}

fn battery(cmd: Test, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Test::Order { order, n, pairs, source, format } => {
            let report = run_order_test(&source.stream()?, order.into(), n, pairs)?;
            match format {
                Format::Json => writeln!(out, "{}", report.to_json()?)?,
                Format::Csv => write_order_csv(&[report], out)?,
                Format::Text => Report::fields(vec![
                    ("order", Cell::Text(report.order.to_string())),
                    ("n", Cell::Int(n as u64)),
                    ("pairs", Cell::Int(report.pairs)),
                    ("successes", Cell::Int(report.successes)),
                    ("fraction", Cell::Float(report.success_fraction())),
                    ("p0", Cell::Exact(report.p0.clone())),
                    ("p_value", Cell::Float(report.p_value)),
                    ("source", Cell::Text(describe(&report.source))),
                ])
                .write(Format::Text, out)?,
            }
        }
        Test::MaxMean { n, groups, source, format } => {
            let stream = source.stream()?;
            let r = max_mean_test(&stream, n, groups)?;
            Report::fields(vec![
                ("n", Cell::Int(r.n as u64)),
                ("groups", Cell::Int(r.groups)),
                ("sample_mean", Cell::Float(r.sample_mean)),
                ("analytic_mean", Cell::Float(r.analytic_mean)),
                ("analytic_variance", Cell::Float(r.analytic_variance)),
                ("z", Cell::Float(r.z)),
                ("source", Cell::Text(describe(&stream))),
            ])
            .write(format, out)?;
        }
        Test::Table1 { reps, n, pairs, alpha, seed, threads, format } => {
            let summary =
                table1_experiment(&Table1Config { reps, n, pairs, alpha, seed: Seed(seed), workers: threads })?;
            match format {
                Format::Json => {
                    let json = serde_json::to_string(&summary).map_err(|e| Error::Serialize(e.to_string()))?;
                    writeln!(out, "{json}")?;
                }
                Format::Csv => write_table1_csv(&summary.rows, out)?,
                Format::Text => Report {
                    fields: vec![
                        ("reps", Cell::Int(reps as u64)),
                        ("n", Cell::Int(n as u64)),
                        ("pairs", Cell::Int(pairs)),
                        ("alpha", Cell::Float(alpha)),
                        ("seed", Cell::Int(seed)),
                    ],
                    columns: vec!["model", "order", "mean_p_value", "std_p_value", "p0"],
                    rows: summary
                        .rows
                        .iter()
                        .map(|r| {
                            vec![
                                Cell::Text(r.model.as_str().into()),
                                Cell::Text(r.order.to_string()),
                                Cell::Float(r.mean_p_value),
                                Cell::Float(r.std_p_value),
                                Cell::Text(format!("{}/{}", r.p0_num, r.p0_den)),
                            ]
                        })
                        .collect(),
                }
                .write(Format::Text, out)?,
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Analytics { cmd, format } => analytics(cmd)?.write(format, &mut out)?,
        Command::Mc { cmd, format } => monte_carlo(cmd)?.write(format, &mut out)?,
        Command::Test { cmd } => battery(cmd, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

/// 2 for bad arguments (including a stream that runs short), 3 for
/// unreadable or malformed input data.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::Capacity(_) | Error::Truncated { .. } | Error::Serialize(_) => 2,
        Error::Data { .. } | Error::Io(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Error::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
