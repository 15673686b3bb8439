//! Command-line front end: reads point sets, runs the engines and writes
//! JSON or text.

pub mod bench;
pub mod gen;
pub mod io;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use border_core::{
    bm_all_order_ideals_with, bm_all_quasi_order_ideals_with, bm_border_with, buchberger_moller, fg_all_quasi_order_ideals_with,
    fg_border, monomials::default_names, verify_border_pair, BorderPair, EnumerationOptions, FieldSpec, OrderingKind, PointSet,
    TermOrdering, TieBreak,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use gen::generate_complete_intersection;
use io::{pairs_to_text, parse_pairs, parse_points, points_to_json, points_to_text, FieldJson, InputError, ResultDocument};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "borderbases", version, about = "Border bases and (quasi) order ideals for ideals of points")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Switch {
    On,
    Off,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Degrevlex,
    Deglex,
    Lex,
}

impl From<OrderArg> for OrderingKind {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Degrevlex => OrderingKind::DegRevLex,
            OrderArg::Deglex => OrderingKind::DegLex,
            OrderArg::Lex => OrderingKind::Lex,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TieBreakArg {
    /// Smallest candidate in degree-reverse-lexicographic order.
    Degrevlex,
    /// Pure powers first.
    PurePowers,
    /// Smallest candidate in the ordering given by --order and --perm.
    Ordering,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Fg,
    Bm,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Point file (JSON or text); `-` reads standard input.
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "json")]
    pub output: OutputFormat,
    /// Explore branches on a thread pool.
    #[arg(long, value_enum, default_value = "off")]
    pub parallel: Switch,
    /// Follow every branch even when its state was already explored.
    #[arg(long)]
    pub literal: bool,
}

impl Common {
    fn options(&self) -> EnumerationOptions {
        EnumerationOptions {
            parallel: self.parallel == Switch::On,
            prune_revisits: !self.literal,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct OrderingArgs {
    #[arg(long, value_enum, default_value = "degrevlex")]
    pub order: OrderArg,
    /// Variable precedence as 1-based indices, largest first, e.g. `2,1`.
    #[arg(long)]
    pub perm: Option<String>,
}

impl OrderingArgs {
    fn ordering(&self, arity: usize) -> Result<TermOrdering, InputError> {
        match &self.perm {
            None => Ok(TermOrdering::new(self.order.into(), arity)),
            Some(text) => {
                let perm = text
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<usize>()
                            .ok()
                            .and_then(|i| i.checked_sub(1))
                            .ok_or_else(|| InputError::new(format!("invalid variable index {s:?} in --perm")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                if perm.len() != arity {
                    return Err(InputError::new(format!("--perm lists {} variables, points have {arity}", perm.len())));
                }
                Ok(TermOrdering::with_permutation(self.order.into(), perm)?)
            }
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduced Gröbner basis for a term ordering.
    Groebner {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ordering: OrderingArgs,
    },
    /// One border pair, processing candidates by increasing degree.
    Border {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "degrevlex")]
        tie_break: TieBreakArg,
        #[command(flatten)]
        ordering: OrderingArgs,
    },
    /// One border pair, adding the points one at a time.
    FgBorder {
        #[command(flatten)]
        common: Common,
    },
    /// Every order ideal supporting a border basis.
    AllOrderIdeals {
        #[command(flatten)]
        common: Common,
    },
    /// Every quasi order ideal supporting a quasi border basis.
    AllQuasi {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "fg")]
        engine: EngineArg,
    },
    /// Re-check serialized pairs against a point file.
    Verify {
        /// Point file.
        #[arg(long, short)]
        input: PathBuf,
        /// Result document or single pair document.
        #[arg(long)]
        pairs: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        output: OutputFormat,
    },
    /// Time commands listed in a manifest.
    Bench {
        #[arg(long)]
        manifest: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        output: OutputFormat,
    },
    /// Generate point sets.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
        #[arg(long, value_enum, default_value = "json", global = true)]
        output: OutputFormat,
    },
}

#[derive(Debug, Subcommand)]
pub enum GenKind {
    /// Grid of roots, one list per variable, e.g. `--roots "0,1,3;0,1,2"`.
    Ci {
        #[arg(long)]
        roots: String,
        /// `Q` or a prime.
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Distinct random points from a seeded generator.
    Random {
        #[arg(long)]
        points: usize,
        #[arg(long)]
        vars: usize,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Bound on integer coordinates over Q.
        #[arg(long, default_value_t = 10)]
        range: u64,
    },
}

/// Pairs and counters produced by one engine invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EngineRun {
    pub engine: String,
    pub pairs: Vec<BorderPair>,
    pub raw_count: u64,
    pub branch_count: u64,
}

impl EngineRun {
    fn single(engine: &str, pair: BorderPair) -> Self {
        EngineRun {
            engine: engine.into(),
            pairs: vec![pair],
            raw_count: 1,
            branch_count: 1,
        }
    }
}

/// Runs a pair-producing command by name.
pub fn run_engine(
    command: &str,
    engine: Option<&str>,
    points: &PointSet,
    options: &EnumerationOptions,
) -> Result<EngineRun, InputError> {
    let enumerated = |engine: &str, r: border_core::EnumerationResult| EngineRun {
        engine: engine.into(),
        raw_count: r.raw_count,
        branch_count: r.branch_count,
        pairs: r.pairs,
    };
    Ok(match (command, engine) {
        ("border", None | Some("bm")) => EngineRun::single("bm", bm_border_with(points, &TieBreak::default())?),
        ("fg-border", None | Some("fg")) => EngineRun::single("fg", fg_border(points)?),
        ("all-order-ideals", None | Some("bm")) => enumerated("bm", bm_all_order_ideals_with(points, options)?),
        ("all-quasi", None | Some("fg")) => enumerated("fg", fg_all_quasi_order_ideals_with(points, options)?),
        ("all-quasi", Some("bm")) => enumerated("bm", bm_all_quasi_order_ideals_with(points, options)?),
        _ => {
            return Err(InputError::new(format!(
                "unsupported command/engine combination {command}/{}",
                engine.unwrap_or("default")
            )))
        }
    })
}

enum Failure {
    Input(InputError),
    Verification(String),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e)
    }
}

impl From<border_core::Error> for Failure {
    fn from(e: border_core::Error) -> Self {
        Failure::Input(e.into())
    }
}

fn read_input(path: &Path) -> Result<String, InputError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(|e| InputError::new(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| InputError::new(format!("{}: {e}", path.display())))
    }
}

fn source_name(path: &Path) -> String {
    if path.as_os_str() == "-" {
        "<stdin>".into()
    } else {
        path.display().to_string()
    }
}

fn load_points(path: &Path) -> Result<PointSet, InputError> {
    parse_points(&read_input(path)?).map_err(|e| InputError {
        message: format!("{}: {}", source_name(path), e.message),
        ..e
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct GroebnerJson {
    field: FieldJson,
    n: usize,
    order: String,
    polynomials: Vec<String>,
    leading_terms: Vec<Vec<u32>>,
    order_ideal: Vec<Vec<u32>>,
}

#[derive(Serialize)]
struct VerificationJson {
    order_ideal: Vec<Vec<u32>>,
    passed: bool,
    failed_checks: Vec<&'static str>,
}

fn parse_field(text: &str) -> Result<FieldSpec, InputError> {
    if text == "Q" || text == "QQ" {
        return Ok(FieldSpec::rationals());
    }
    let p: u64 = text.parse().map_err(|_| InputError::new(format!("invalid field {text:?}, expected Q or a prime")))?;
    Ok(FieldSpec::prime(p)?)
}

fn emit_pairs(points: &PointSet, command: &str, run: &EngineRun, enumerated: bool, output: OutputFormat) -> String {
    match output {
        OutputFormat::Text => pairs_to_text(&run.pairs, &default_names(points.arity())),
        OutputFormat::Json => {
            let mut doc = ResultDocument::from_pairs(points, command, &run.engine, &run.pairs);
            if enumerated {
                doc.raw_count = Some(run.raw_count);
                doc.branch_count = Some(run.branch_count);
            }
            to_json(&doc)
        }
    }
}

fn execute(command: Command) -> Result<(String, i32), Failure> {
    let ok = |s: String| Ok((s, EXIT_OK));
    match command {
        Command::Groebner { common, ordering } => {
            let points = load_points(&common.input)?;
            let ord = ordering.ordering(points.arity())?;
            let gb = buchberger_moller(&points, &ord)?;
            let names = default_names(points.arity());
            match common.output {
                OutputFormat::Text => {
                    let mut out = format!("standard monomials: {}\n", gb.order_ideal.display_with(&names));
                    for g in &gb.polynomials {
                        out.push_str(&format!("{}\n", g.display_with(&names)));
                    }
                    ok(out)
                }
                OutputFormat::Json => ok(to_json(&GroebnerJson {
                    field: FieldJson::of(points.field()),
                    n: points.arity(),
                    order: format!("{:?}", ordering.order).to_lowercase(),
                    polynomials: gb.polynomials.iter().map(|g| g.display_with(&names).to_string()).collect(),
                    leading_terms: gb.leading_terms.iter().map(|t| t.exponents().to_vec()).collect(),
                    order_ideal: gb.order_ideal.key(),
                })),
            }
        }
        Command::Border {
            common,
            tie_break,
            ordering,
        } => {
            let points = load_points(&common.input)?;
            let tie = match tie_break {
                TieBreakArg::Degrevlex => TieBreak::DegRevLexSmallest,
                TieBreakArg::PurePowers => TieBreak::PurePowersFirst,
                TieBreakArg::Ordering => TieBreak::OrderingSmallest(ordering.ordering(points.arity())?),
            };
            let run = EngineRun::single("bm", bm_border_with(&points, &tie)?);
            ok(emit_pairs(&points, "border", &run, false, common.output))
        }
        Command::FgBorder { common } => {
            let points = load_points(&common.input)?;
            let run = run_engine("fg-border", None, &points, &common.options())?;
            ok(emit_pairs(&points, "fg-border", &run, false, common.output))
        }
        Command::AllOrderIdeals { common } => {
            let points = load_points(&common.input)?;
            let run = run_engine("all-order-ideals", None, &points, &common.options())?;
            ok(emit_pairs(&points, "all-order-ideals", &run, true, common.output))
        }
        Command::AllQuasi { common, engine } => {
            let points = load_points(&common.input)?;
            let name = match engine {
                EngineArg::Fg => "fg",
                EngineArg::Bm => "bm",
            };
            let run = run_engine("all-quasi", Some(name), &points, &common.options())?;
            ok(emit_pairs(&points, "all-quasi", &run, true, common.output))
        }
        Command::Verify { input, pairs, output } => {
            let points = load_points(&input)?;
            let pairs = parse_pairs(&read_input(&pairs)?, points.field(), points.arity()).map_err(|e| InputError {
                message: format!("{}: {}", source_name(&pairs), e.message),
                ..e
            })?;
            let names = default_names(points.arity());
            let reports: Vec<_> = pairs.iter().map(|p| (p, verify_border_pair(p, &points))).collect();
            let failed = reports.iter().filter(|(_, r)| !r.passed()).count();
            let text = match output {
                OutputFormat::Json => to_json(
                    &reports
                        .iter()
                        .map(|(p, r)| VerificationJson {
                            order_ideal: p.key(),
                            passed: r.passed(),
                            failed_checks: r.failed_checks(),
                        })
                        .collect::<Vec<_>>(),
                ),
                OutputFormat::Text => reports
                    .iter()
                    .map(|(p, r)| format!("{}\n{r}", p.order_ideal().display_with(&names)))
                    .collect::<Vec<_>>()
                    .join("\n"),
            };
            if failed > 0 {
                return Err(Failure::Verification(format!(
                    "{text}{failed} of {} pairs failed verification",
                    reports.len()
                )));
            }
            ok(text)
        }
        Command::Bench { manifest, output } => {
            let text = read_input(&manifest)?;
            let entries: Vec<bench::BenchEntry> = serde_json::from_str(&text).map_err(|e| InputError {
                message: format!("{}: {e}", manifest.display()),
                ..InputError::from(e)
            })?;
            let base = manifest.parent().unwrap_or(Path::new("."));
            let rows = entries
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    bench::run_entry(e, base).map_err(|err| InputError::new(format!("manifest entry {}: {err}", i + 1)))
                })
                .collect::<Result<Vec<_>, _>>()?;
            match output {
                OutputFormat::Json => ok(to_json(&rows)),
                OutputFormat::Text => ok(bench::reports_to_text(&rows)),
            }
        }
        Command::Gen { kind, output } => {
            let points = match kind {
                GenKind::Ci { roots, field } => {
                    let field = parse_field(&field)?;
                    let lists = roots
                        .split(';')
                        .map(|l| l.split(',').map(|r| field.parse(r.trim())).collect::<Result<Vec<_>, _>>())
                        .collect::<Result<Vec<_>, _>>()?;
                    generate_complete_intersection(&lists, field)?
                }
                GenKind::Random {
                    points,
                    vars,
                    field,
                    seed,
                    range,
                } => gen::generate_random(parse_field(&field)?, points, vars, seed, range)?,
            };
            match output {
                OutputFormat::Json => ok(to_json(&points_to_json(&points))),
                OutputFormat::Text => ok(points_to_text(&points)),
            }
        }
    }
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code: 0 on success, 1 when verification fails,
/// 2 on bad input.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return if code == 0 { EXIT_OK } else { EXIT_INPUT_ERROR };
        }
    };
    match execute(cli.command) {
        Ok((text, code)) => {
            let _ = write!(out, "{text}");
            code
        }
        Err(Failure::Input(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT_ERROR
        }
        Err(Failure::Verification(report)) => {
            let _ = writeln!(out, "{report}");
            EXIT_VERIFICATION_FAILED
        }
    }
}
