use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use pentaflow::classifier::{classify_direction, Direction};
use pentaflow::flow::{oracle_classify_direction, trace_direction, FlowError, DEFAULT_STEP_CAP};
use pentaflow::golden_field::{parse_rational, GoldenNumber, GoldenVector};
use pentaflow::render::{billiard_for, render_trajectory, Frame, SvgOptions};
use pentaflow::surface::{GoldenL, Midpoint, SurfaceError};
use pentaflow::tree_word::{reduce_word, vector_to_word_capped, word_to_vector, TreeWord, WordError};
use pentaflow::unfolding::transport;
use pentaflow::word_stats::{
    brute_force_profile, exact_row, monte_carlo_empty_rate, StatsError,
    DEFAULT_ENUMERATION_LIMIT,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FrameArg {
    Goldenl,
    Pentagon,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StatsMode {
    Exact,
    Brute,
    MonteCarlo,
}

/// Exact classification of midpoint billiard trajectories in the regular pentagon.
#[derive(Debug, Parser)]
#[command(name = "pentaflow", version)]
struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, env = "PENTAFLOW_FORMAT", value_enum)]
    format: Option<Format>,
    /// Step cap for the flow, the billiard and vector peeling.
    #[arg(long, global = true, env = "PENTAFLOW_CAP", default_value_t = DEFAULT_STEP_CAP,
          value_parser = positive)]
    cap: usize,
    /// Seed for Monte Carlo statistics.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Longest word length enumerated by brute force.
    #[arg(long, global = true, default_value_t = DEFAULT_ENUMERATION_LIMIT,
          value_parser = positive)]
    enum_limit: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify the five midpoint trajectories for a word (or `vertical`).
    Classify { word: String, midpoint: Option<u32> },
    /// Direction vector of a word.
    Word2vec { word: String },
    /// Word of a first-quadrant vector `(xa + xb·φ, ya + yb·φ)`.
    Vec2word {
        #[arg(allow_hyphen_values = true)]
        xa: String,
        #[arg(allow_hyphen_values = true)]
        xb: String,
        #[arg(allow_hyphen_values = true)]
        ya: String,
        #[arg(allow_hyphen_values = true)]
        yb: String,
    },
    /// Base word after cancelling repeated letters.
    Reduce { word: String },
    /// Exact trajectory from a midpoint.
    Simulate {
        word: String,
        midpoint: u32,
        /// Also classify by simulating all five midpoints, checked against `classify`.
        #[arg(long)]
        classify: bool,
    },
    /// Draw a trajectory as SVG.
    Render {
        word: String,
        midpoint: u32,
        #[arg(long, value_enum, default_value_t = FrameArg::Goldenl)]
        frame: FrameArg,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Width in pixels.
        #[arg(long, default_value_t = 600.0)]
        size: f64,
        #[arg(long, default_value_t = 1.5)]
        stroke: f64,
    },
    /// Probability that a random word of length 2n reduces to the empty word.
    Stats {
        /// Rows for word lengths 0, 2, …, 2·max-n.
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = StatsMode::Exact)]
        mode: StatsMode,
        /// Samples per row in Monte Carlo mode.
        #[arg(long, default_value_t = 100_000,
              value_parser = clap::value_parser!(u64).range(1..))]
        samples: u64,
    },
    /// The golden L: vertices, gluings, Weierstrass points.
    Surface,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error(transparent)]
    Stats(#[from] StatsError),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Word(WordError::CapExceeded(_)) | CliError::Flow(FlowError::CapExceeded(_)) => 3,
            CliError::Flow(FlowError::Structural(_)) | CliError::Inconsistent(_) => 4,
            CliError::Io { .. } => 1,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_direction(s: &str) -> Result<Direction> {
    if s == "vertical" {
        Ok(Direction::Vertical)
    } else {
        Ok(Direction::Word(s.parse()?))
    }
}

fn direction_vector(d: &Direction) -> GoldenVector {
    match d {
        Direction::Word(w) => word_to_vector(w),
        Direction::Vertical => GoldenVector::vertical(),
    }
}

fn parse_coefficient(s: &str) -> Result<GoldenNumber> {
    parse_rational(s)
        .map(GoldenNumber::from_rational)
        .ok_or_else(|| CliError::Usage(format!("not a rational number: {s:?}")))
}

fn print_json(v: &Value) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
    Ok(())
}

fn print_csv<T: Serialize>(rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(io::stdout());
    for row in rows {
        w.serialize(row).map_err(|e| CliError::Usage(e.to_string()))?;
    }
    w.flush().map_err(|source| CliError::Io {
        path: "<stdout>".into(),
        source,
    })
}

fn cmd_classify(cli: &Cli, word: &str, midpoint: Option<u32>) -> Result<()> {
    let direction = parse_direction(word)?;
    let report = classify_direction(&direction);
    let midpoints: Vec<Midpoint> = match midpoint {
        Some(j) => vec![Midpoint::new(j)?],
        None => Midpoint::ALL.to_vec(),
    };
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut v = report.to_json();
            let verdicts: serde_json::Map<String, Value> = midpoints
                .iter()
                .map(|m| (m.to_string(), json!(report.verdict(*m))))
                .collect();
            v["verdicts"] = Value::Object(verdicts);
            print_json(&v)
        }
        Format::Text => {
            println!("tau = {}", report.permutation);
            for m in midpoints {
                println!("{m}: {}", report.verdict(m));
            }
            Ok(())
        }
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                word: String,
                midpoint: u8,
                verdict: &'static str,
            }
            let rows: Vec<Row> = midpoints
                .iter()
                .map(|&m| Row {
                    word: report.direction.to_string(),
                    midpoint: m.label(),
                    verdict: report.verdict(m).as_str(),
                })
                .collect();
            print_csv(&rows)
        }
    }
}

fn print_vector(cli: &Cli, word: &TreeWord, v: &GoldenVector) -> Result<()> {
    match cli.format.unwrap_or(Format::Text) {
        Format::Text => {
            println!("{v}");
            Ok(())
        }
        Format::Json => print_json(&json!({
            "word": word,
            "vector": v,
            "pretty": v.to_string(),
        })),
        Format::Csv => {
            let [xa, xb, ya, yb] = v.coefficients();
            print_csv(&[(word.to_string(), xa, xb, ya, yb)])
        }
    }
}

fn print_word(cli: &Cli, key: &str, input: &str, word: &TreeWord) -> Result<()> {
    match cli.format.unwrap_or(Format::Text) {
        Format::Text => {
            println!("{word}");
            Ok(())
        }
        Format::Json => print_json(&json!({ key: input, "word": word })),
        Format::Csv => print_csv(&[(input, word.to_string())]),
    }
}

fn cmd_simulate(cli: &Cli, word: &str, midpoint: u32, classify: bool) -> Result<()> {
    let direction = parse_direction(word)?;
    let m = Midpoint::new(midpoint)?;
    let v = direction_vector(&direction);
    let t = trace_direction(m, &v, cli.cap)?;
    let mut out = t.to_json();
    out["word"] = json!(direction.to_string());
    if classify {
        let oracle = oracle_classify_direction(&v, cli.cap)?;
        let expected = classify_direction(&direction);
        if oracle.verdicts != expected.verdicts {
            return Err(CliError::Inconsistent(format!(
                "simulation verdicts {:?} disagree with classification {:?}",
                oracle.verdicts, expected.verdicts
            )));
        }
        out["verdict"] = json!(oracle.verdict(m));
    }
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => print_json(&out),
        Format::Text => {
            println!("start {} at {}", t.start, t.start_point);
            for (i, s) in t.segments.iter().enumerate() {
                let edge = s.exit_edge.map(|e| format!(" via {e}")).unwrap_or_default();
                println!("{:>4}: {} -> {}{edge}", i + 1, s.entry, s.exit);
            }
            println!("outcome {}, holonomy {}", t.outcome.as_str(), t.holonomy);
            if let Some(v) = out.get("verdict") {
                println!("verdict {}", v.as_str().unwrap_or_default());
            }
            Ok(())
        }
        Format::Csv => {
            let rows: Vec<_> = t
                .segments
                .iter()
                .map(|s| {
                    let [a, b, c, d] = s.entry.coefficients();
                    let [e, f, g, h] = s.exit.coefficients();
                    (a, b, c, d, e, f, g, h, s.exit_edge.map(String::from).unwrap_or_default())
                })
                .collect();
            print_csv(&rows)
        }
    }
}

struct RenderArgs<'a> {
    word: &'a str,
    midpoint: u32,
    frame: FrameArg,
    out: Option<&'a PathBuf>,
    size: f64,
    stroke: f64,
}

fn cmd_render(cli: &Cli, args: RenderArgs<'_>) -> Result<()> {
    if !(args.size > 0.0 && args.stroke > 0.0) {
        return Err(CliError::Usage("--size and --stroke must be positive".into()));
    }
    let direction = parse_direction(args.word)?;
    let m = Midpoint::new(args.midpoint)?;
    let t = trace_direction(m, &direction_vector(&direction), cli.cap)?;
    let opts = SvgOptions {
        width: args.size,
        stroke: args.stroke,
        max_bounces: cli.cap,
        ..SvgOptions::default()
    };
    let frame = match args.frame {
        FrameArg::Goldenl => Frame::GoldenL,
        FrameArg::Pentagon => Frame::Pentagon,
    };
    let svg = render_trajectory(&t, frame, &opts);
    let Some(path) = args.out else {
        print!("{svg}");
        return Ok(());
    };
    fs::write(path, &svg).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut summary = json!({
        "out": path.display().to_string(),
        "frame": match frame { Frame::GoldenL => "goldenl", Frame::Pentagon => "pentagon" },
        "segments": t.segments.len(),
        "outcome": t.outcome.as_str(),
    });
    if frame == Frame::Pentagon {
        let path = billiard_for(&t, opts.max_bounces);
        summary["bounces"] = json!(path.bounces());
        summary["billiard_outcome"] = json!(path.outcome.as_str());
        summary["length"] = json!(path.length);
        if let Some(lp) = transport(&t) {
            summary["transported_bounces"] = json!(lp.bounces);
        }
    }
    match cli.format.unwrap_or(Format::Text) {
        Format::Json => print_json(&summary),
        _ => {
            eprintln!("wrote {}", path.display());
            Ok(())
        }
    }
}

#[derive(Debug, Serialize)]
struct StatsLine {
    m: usize,
    count: String,
    probability: String,
    probability_decimal: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    estimate: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    std_error: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<u64>,
}

fn cmd_stats(cli: &Cli, max_n: usize, mode: StatsMode, samples: u64) -> Result<()> {
    let mut rows = Vec::new();
    for n in 0..=max_n {
        let m = 2 * n;
        let exact = exact_row(m);
        let mut line = StatsLine {
            m,
            count: exact.count,
            probability: exact.probability,
            probability_decimal: exact.probability_decimal,
            estimate: None,
            std_error: None,
            samples: None,
        };
        match mode {
            StatsMode::Exact => {}
            StatsMode::Brute => {
                let profile = brute_force_profile(m, cli.enum_limit)?;
                let count = profile.empty_count().to_string();
                if count != line.count {
                    return Err(CliError::Inconsistent(format!(
                        "enumeration gives {count} empty reductions at m = {m}, recursion gives {}",
                        line.count
                    )));
                }
            }
            StatsMode::MonteCarlo => {
                let e = monte_carlo_empty_rate(m, samples, cli.seed)?;
                line.estimate = Some(e.mean);
                line.std_error = Some(e.std_error);
                line.samples = Some(e.samples);
            }
        }
        rows.push(line);
    }
    match cli.format.unwrap_or(Format::Text) {
        Format::Json => print_json(&json!({
            "mode": match mode {
                StatsMode::Exact => "exact",
                StatsMode::Brute => "brute",
                StatsMode::MonteCarlo => "monte-carlo",
            },
            "seed": if mode == StatsMode::MonteCarlo { json!(cli.seed) } else { Value::Null },
            "rows": rows,
        })),
        Format::Csv => print_csv(&rows),
        Format::Text => {
            let mut out = io::stdout().lock();
            let _ = writeln!(out, "{:>4}  {:>24}  {:>28}  {:>12}", "m", "count", "probability", "decimal");
            for r in &rows {
                let _ = write!(
                    out,
                    "{:>4}  {:>24}  {:>28}  {:>12.10}",
                    r.m, r.count, r.probability, r.probability_decimal
                );
                if let (Some(e), Some(s)) = (r.estimate, r.std_error) {
                    let _ = write!(out, "  mc {e:.6} ± {s:.6}");
                }
                let _ = writeln!(out);
            }
            Ok(())
        }
    }
}

fn cmd_surface(cli: &Cli) -> Result<()> {
    let l = GoldenL::get();
    match cli.format.unwrap_or(Format::Json) {
        Format::Json => print_json(&l.to_json()),
        _ => {
            println!("vertices:");
            for v in &l.vertices {
                println!("  {v}");
            }
            println!("gluings:");
            for id in &l.identifications {
                println!("  {}: {} – {}  shifted by {}", id.label, id.from[0], id.from[1], id.translation);
            }
            println!("weierstrass points:");
            for w in &l.weierstrass_points {
                println!("  {}: {}", w.label, w.position);
            }
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Classify { word, midpoint } => cmd_classify(cli, word, *midpoint),
        Command::Word2vec { word } => {
            let w: TreeWord = word.parse()?;
            print_vector(cli, &w, &word_to_vector(&w))
        }
        Command::Vec2word { xa, xb, ya, yb } => {
            let v = GoldenVector::new(
                parse_coefficient(xa)? + parse_coefficient(xb)? * GoldenNumber::phi(),
                parse_coefficient(ya)? + parse_coefficient(yb)? * GoldenNumber::phi(),
            );
            let w = vector_to_word_capped(&v, cli.cap)?;
            print_word(cli, "vector", &v.to_string(), &w)
        }
        Command::Reduce { word } => {
            let w: TreeWord = word.parse()?;
            print_word(cli, "input", word, &reduce_word(&w))
        }
        Command::Simulate {
            word,
            midpoint,
            classify,
        } => cmd_simulate(cli, word, *midpoint, *classify),
        Command::Render {
            word,
            midpoint,
            frame,
            out,
            size,
            stroke,
        } => cmd_render(
            cli,
            RenderArgs {
                word,
                midpoint: *midpoint,
                frame: *frame,
                out: out.as_ref(),
                size: *size,
                stroke: *stroke,
            },
        ),
        Command::Stats {
            max_n,
            mode,
            samples,
        } => cmd_stats(cli, *max_n, *mode, *samples),
        Command::Surface => cmd_surface(cli),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
