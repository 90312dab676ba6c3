use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use platkit::foliation::{self, SurfaceKind, TileGraph};
use platkit::invariants::{invariant, invariant_state_sum, InvariantValue, OracleError, DEFAULT_ORACLE_CAP};
use platkit::moves::{MoveLog, MoveRecord};
use platkit::plat::{is_composite_word, is_split_word, PlatPresentation};
use platkit::render::{render_svg, RenderSpec};
use platkit::search::SearchBudget;
use platkit::simplify::{obscure_with, simplify_composite, simplify_split, verify_log, LogVerdict, ObscureMode};
use platkit::SimplifyResult;

const EXIT_ERROR: u8 = 1;
const EXIT_EXHAUSTED: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_RESOURCE: u8 = 4;

#[derive(Parser)]
#[command(name = "platkit", version, about = "Plat presentations of links: moves, invariants, search and tilings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PlatInput {
    /// Bridge index: the word lives on 2n strands.
    #[arg(long)]
    n: Option<usize>,
    /// Braid word such as "s1 s2' s3".
    #[arg(long, allow_hyphen_values = true)]
    word: Option<String>,
    /// Read the plat as JSON from a file ("-" for stdin) instead.
    #[arg(long, conflicts_with_all = ["n", "word"])]
    plat: Option<PathBuf>,
}

impl PlatInput {
    fn load(&self) -> Result<PlatPresentation> {
        if let Some(path) = &self.plat {
            return serde_json::from_str(&read_input(path)?).context("invalid plat JSON");
        }
        let n = self.n.context("give --n and --word, or --plat")?;
        Ok(PlatPresentation::parse(n, self.word.as_deref().unwrap_or(""))?)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Report split and composite band indices.
    Detect {
        #[command(flatten)]
        input: PlatInput,
        #[arg(long)]
        json: bool,
    },
    /// Apply a move record or replay a move log.
    Apply {
        #[command(flatten)]
        input: PlatInput,
        /// A move record as JSON.
        #[arg(long = "move", conflicts_with = "log")]
        record: Option<String>,
        /// A move log file; its initial plat replaces the input.
        #[arg(long)]
        log: Option<PathBuf>,
        /// Check that the invariant is unchanged.
        #[arg(long)]
        verify: bool,
    },
    /// Print the invariant polynomial set.
    Invariant {
        #[command(flatten)]
        input: PlatInput,
        /// Use the strand-by-strand transfer instead of the state sum.
        #[arg(long)]
        fast: bool,
        #[arg(long)]
        json: bool,
    },
    /// Search for a split or composite word at the same bridge index.
    Simplify {
        #[command(flatten)]
        input: PlatInput,
        #[arg(long, value_enum, default_value_t = Mode::Split)]
        mode: Mode,
        #[arg(long, default_value_t = 64)]
        beam: usize,
        #[arg(long, default_value_t = 24)]
        depth: usize,
        #[arg(long, default_value_t = 64)]
        max_length: usize,
        /// Time cap in seconds.
        #[arg(long, default_value_t = 60.0)]
        time: f64,
    },
    /// Apply seeded random link-preserving moves.
    Obscure {
        #[command(flatten)]
        input: PlatInput,
        #[arg(long, default_value_t = 3)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Moves::NoFlips)]
        moves: Moves,
    },
    /// Tile graphs of foliated spheres.
    Tiling {
        #[command(subcommand)]
        command: TilingCommand,
    },
    /// Draw the plat as SVG.
    Render {
        #[command(flatten)]
        input: PlatInput,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 40.0)]
        spacing: f64,
        #[arg(long, default_value_t = 40.0)]
        height: f64,
        #[arg(long, default_value_t = 3.0)]
        stroke: f64,
        #[arg(long, default_value_t = 20.0)]
        radius: f64,
    },
}

#[derive(Subcommand)]
enum TilingCommand {
    Validate { file: PathBuf },
    Reduce { file: PathBuf },
    Random {
        #[arg(long, value_enum, default_value_t = Kind::Sphere)]
        kind: Kind,
        #[arg(long, default_value_t = 4)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Split,
    Composite,
}

#[derive(Clone, Copy, ValueEnum)]
enum Moves {
    DoubleCoset,
    NoFlips,
    WithFlips,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Sphere,
    Punctured,
}

#[derive(serde::Serialize)]
struct Reduction {
    steps: Vec<foliation::ReductionStep>,
    standard: TileGraph,
}

/// Write to stdout, treating a closed pipe as success.
fn emit(text: &str) -> Result<()> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

macro_rules! say {
    ($($arg:tt)*) => {
        emit(&format!("{}\n", format!($($arg)*)))?
    };
}

fn read_input(path: &Path) -> Result<String> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        return Ok(text);
    }
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn to_json(value: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn oracle_cap() -> Result<usize> {
    match std::env::var("PLATKIT_ORACLE_CAP") {
        Ok(v) => v.trim().parse().with_context(|| format!("PLATKIT_ORACLE_CAP={v} is not a number")),
        Err(_) => Ok(DEFAULT_ORACLE_CAP),
    }
}

/// An error paired with the exit code it maps to.
struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure { code: EXIT_ERROR, error: e.into() }
    }
}

fn fail(code: u8, msg: String) -> Failure {
    Failure { code, error: anyhow::anyhow!(msg) }
}

fn exact_invariant(p: &PlatPresentation) -> Result<InvariantValue, Failure> {
    match invariant_state_sum(p, oracle_cap()?) {
        Ok(v) => Ok(v),
        Err(e @ OracleError::ResourceLimit { .. }) => Err(fail(EXIT_RESOURCE, e.to_string())),
        Err(e) => Err(e.into()),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Detect { input, json } => {
            let p = input.load()?;
            let split = is_split_word(&p);
            let composite = is_composite_word(&p);
            if json {
                say!("{}", serde_json::json!({ "split": split, "composite": composite }));
            } else {
                if let Some(i) = split {
                    say!("split at i={i}");
                }
                if let Some(i) = composite {
                    say!("composite at i={i}");
                }
                if split.is_none() && composite.is_none() {
                    say!("none");
                }
            }
        }
        Command::Apply { input, record, log, verify } => {
            let (start, out) = if let Some(path) = log {
                let log: MoveLog = serde_json::from_str(&read_input(&path)?).context("invalid move log JSON")?;
                if verify {
                    if let LogVerdict::Invalid { step, reason } = verify_log(&log) {
                        let code = if reason == "invariant changed" { EXIT_MISMATCH } else { EXIT_ERROR };
                        return Err(fail(code, format!("step {step}: {reason}")));
                    }
                }
                let out = log.replay()?;
                (log.initial, out)
            } else {
                let p = input.load()?;
                let record = record.context("give --move or --log")?;
                let record: MoveRecord = serde_json::from_str(&record).context("invalid move record JSON")?;
                let out = record.apply(&p)?;
                (p, out)
            };
            if verify && invariant(&start) != invariant(&out) {
                return Err(fail(EXIT_MISMATCH, "the move changed the invariant".into()));
            }
            say!("{}", to_json(&out)?);
        }
        Command::Invariant { input, fast, json } => {
            let p = input.load()?;
            let value = if fast { invariant(&p) } else { exact_invariant(&p)? };
            if json {
                say!("{}", serde_json::to_string(value.polynomials())?);
            } else {
                say!("{value}");
            }
        }
        Command::Simplify { input, mode, beam, depth, max_length, time } => {
            let p = input.load()?;
            if beam == 0 || depth == 0 || max_length == 0 || !time.is_finite() || time <= 0.0 {
                return Err(fail(EXIT_ERROR, "budget values must be positive".into()));
            }
            let budget = SearchBudget {
                beam_width: beam,
                max_depth: depth,
                max_word_length: max_length,
                time_cap: Duration::from_secs_f64(time),
            };
            let result = match mode {
                Mode::Split => simplify_split(&p, &budget),
                Mode::Composite => simplify_composite(&p, &budget),
            };
            let result = match result {
                Ok(r) => r,
                Err(e @ platkit::SimplifyError::OracleMismatch) => return Err(fail(EXIT_MISMATCH, e.to_string())),
                Err(e) => return Err(e.into()),
            };
            say!("{}", to_json(&result)?);
            if let SimplifyResult::Exhausted { .. } = result {
                return Ok(EXIT_EXHAUSTED);
            }
        }
        Command::Obscure { input, k, seed, moves } => {
            let p = input.load()?;
            let mode = match moves {
                Moves::DoubleCoset => ObscureMode::DoubleCoset,
                Moves::NoFlips => ObscureMode::NoFlips,
                Moves::WithFlips => ObscureMode::WithFlips,
            };
            let (_, log) = obscure_with(&p, k, seed, mode)?;
            say!("{}", to_json(&log)?);
        }
        Command::Tiling { command } => match command {
            TilingCommand::Validate { file } => {
                let g: TileGraph = serde_json::from_str(&read_input(&file)?).context("invalid tiling JSON")?;
                match foliation::check(&g) {
                    Ok(()) => say!("valid"),
                    Err(e) => {
                        say!("invalid: {e}");
                        return Ok(EXIT_ERROR);
                    }
                }
            }
            TilingCommand::Reduce { file } => {
                let g: TileGraph = serde_json::from_str(&read_input(&file)?).context("invalid tiling JSON")?;
                let (standard, steps) = foliation::reduce_to_standard(&g)?;
                say!("{}", to_json(&Reduction { steps, standard })?);
            }
            TilingCommand::Random { kind, size, seed } => {
                let kind = match kind {
                    Kind::Sphere => SurfaceKind::Sphere,
                    Kind::Punctured => SurfaceKind::TwicePunctured,
                };
                say!("{}", to_json(&foliation::random_tiling(kind, size, seed))?);
            }
        },
        Command::Render { input, out, spacing, height, stroke, radius } => {
            let p = input.load()?;
            let spec = RenderSpec { strand_spacing: spacing, crossing_height: height, stroke_width: stroke, cap_radius: radius };
            let svg = render_svg(&p, &spec)?;
            match out {
                Some(path) => fs::write(&path, svg).with_context(|| format!("cannot write {}", path.display()))?,
                None => emit(&svg)?,
            }
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
