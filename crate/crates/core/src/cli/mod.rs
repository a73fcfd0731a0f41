//! The `dquad` command line.
//!
//! Data goes to the output stream as one JSON document per line (or CSV for
//! `search --format csv`); diagnostics go to the error stream. Exit codes:
//! [`EXIT_OK`], [`EXIT_NEGATIVE`] for a well-formed request with a negative
//! answer, and [`EXIT_USAGE`] for anything malformed or out of range.

pub mod records;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::arith::{parse_decimal, parse_int, parse_rat, Int, Rat};
use crate::constructions::{
    chain_32, chain_920, clear_denominators, execute_witness, plan_witness, specialize_32,
    ConstructionError, RationalTuple,
};
use crate::families::{family_parity_audit, registry, Family, FamilyError, FamilyJson};
use crate::search::{
    audit_lower_bound, audit_mod4, search_range_with_progress, GraphStrategy, SearchError,
    SearchTask,
};
use crate::tuples::{verified, Tuple, VerifyFailure};

use records::{
    csv_row, Chain32StateRecord, FailureRecord, ParityRecord, ProofRecord, RationalRecord,
    TupleRecord, WitnessRecord, CSV_HEADER,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest parameter span accepted by `family table`.
pub const TABLE_SPAN_MAX: i64 = 100_000;

#[derive(Debug, Parser)]
#[command(
    name = "dquad",
    version,
    about = "Search, verify and construct D(n)-tuples"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that every a_i*a_j + n is a perfect square.
    Verify(VerifyArgs),
    /// Exhaustive quadruple search with all |a_i| <= bound.
    Search(SearchArgs),
    /// Parametric families.
    Family {
        #[command(subcommand)]
        command: FamilyCommand,
    },
    /// Rational constructions.
    Construct {
        #[command(subcommand)]
        command: ConstructCommand,
    },
    /// Build a quadruple whose log ratio is within epsilon of delta.
    Witness(WitnessArgs),
    /// Empirical checks of the known obstructions.
    Audit {
        #[command(subcommand)]
        command: AuditCommand,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub n: String,
    /// Comma-separated integers.
    #[arg(long, allow_hyphen_values = true)]
    pub elements: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Auto,
    PairScan,
    RootSieve,
}

impl From<Strategy> for GraphStrategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::Auto => GraphStrategy::Auto,
            Strategy::PairScan => GraphStrategy::PairScan,
            Strategy::RootSieve => GraphStrategy::RootSieve,
        }
    }
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, allow_hyphen_values = true, conflicts_with_all = ["n_from", "n_to"])]
    pub n: Option<i64>,
    #[arg(long, allow_hyphen_values = true, requires = "n_to")]
    pub n_from: Option<i64>,
    #[arg(long, allow_hyphen_values = true, requires = "n_from")]
    pub n_to: Option<i64>,
    #[arg(long)]
    pub bound: i64,
    /// Keep records with max|a_i| / n^2 strictly above this (default 9/4 when given bare).
    #[arg(long, num_args = 0..=1, default_missing_value = "9/4")]
    pub min_ratio: Option<String>,
    /// Keep records containing a regular triple.
    #[arg(long)]
    pub regular: bool,
    /// Keep records with some |a_i| <= this value.
    #[arg(long)]
    pub small: Option<i64>,
    /// Skip n ≡ 2 (mod 4).
    #[arg(long)]
    pub skip_mod4: bool,
    #[arg(long, env = "DQUAD_WORKERS")]
    pub workers: Option<usize>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, value_enum, default_value_t = Strategy::Auto)]
    pub strategy: Strategy,
    /// Exit 1 when nothing is found.
    #[arg(long)]
    pub expect_nonempty: bool,
    /// Report each finished n on stderr.
    #[arg(long)]
    pub progress: bool,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct FamilySource {
    /// A registered family id.
    #[arg(long)]
    pub name: Option<String>,
    /// A family description in JSON.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum FamilyCommand {
    /// Registered families.
    List,
    /// Full description of one family as JSON.
    Show {
        #[command(flatten)]
        source: FamilySource,
    },
    /// Instance at integer parameter p (the family's offset is added).
    Eval {
        #[command(flatten)]
        source: FamilySource,
        #[arg(long, allow_hyphen_values = true)]
        param: String,
    },
    /// Symbolic certificate: a polynomial root for every pair.
    Prove {
        #[command(flatten)]
        source: FamilySource,
    },
    /// Instances for every integer parameter in [from, to]; excluded ones are skipped.
    Table {
        #[command(flatten)]
        source: FamilySource,
        #[arg(long, allow_hyphen_values = true)]
        from: i64,
        #[arg(long, allow_hyphen_values = true)]
        to: i64,
    },
    /// Parity pattern of the z-form family.
    Parity,
    /// Log ratio and d/|n|^3 along a list of parameters.
    Ratio {
        #[command(flatten)]
        source: FamilySource,
        /// Comma-separated integers.
        #[arg(long, allow_hyphen_values = true)]
        params: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum ConstructCommand {
    /// Rational quadruple from the quartic chain.
    Chain920 {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Rational quadruple from the (b, s) chain.
    Chain32 {
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
    },
    /// Integer quadruple from the one-parameter specialization.
    Specialize {
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    /// Decimal or p/q in [2/5, 3].
    #[arg(long)]
    pub delta: String,
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
}

#[derive(Debug, Subcommand)]
pub enum AuditCommand {
    /// Search every n ≡ 2 (mod 4) in range; any hit is a contradiction.
    Mod4 {
        #[arg(long, allow_hyphen_values = true)]
        n_from: i64,
        #[arg(long, allow_hyphen_values = true)]
        n_to: i64,
        #[arg(long)]
        bound: i64,
    },
    /// For 17 <= n <= n_max, search with bound below n^(1/4).
    LowerBound {
        #[arg(long, allow_hyphen_values = true)]
        n_max: i64,
    },
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1. The message goes to stderr.
    Negative(String),
    /// Exit 2.
    Usage(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Negative(_) => EXIT_NEGATIVE,
            Failure::Usage(_) => EXIT_USAGE,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Negative(m) | Failure::Usage(m) => m,
        }
    }
}

type CmdResult = Result<(), Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn negative(e: impl std::fmt::Display) -> Failure {
    Failure::Negative(e.to_string())
}

fn io(e: std::io::Error) -> Failure {
    Failure::Usage(format!("write failed: {e}"))
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(&cli.command, out, err) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "dquad: {}", f.message());
            f.code()
        }
    }
}

pub fn execute(cmd: &Command, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    match cmd {
        Command::Verify(a) => cmd_verify(a, out),
        Command::Search(a) => cmd_search(a, out, err),
        Command::Family { command } => cmd_family(command, out, err),
        Command::Construct { command } => cmd_construct(command, out),
        Command::Witness(a) => cmd_witness(a, out),
        Command::Audit { command } => cmd_audit(command, out),
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> CmdResult {
    serde_json::to_writer(&mut *out, value).map_err(usage)?;
    writeln!(out).map_err(io)
}

fn int_list(src: &str) -> Result<Vec<Int>, Failure> {
    src.split(',')
        .map(|s| parse_int(s.trim()))
        .collect::<Result<_, _>>()
        .map_err(usage)
}

#[derive(Serialize)]
struct ValidRecord {
    valid: bool,
    #[serde(flatten)]
    tuple: TupleRecord,
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    let n = parse_int(&a.n).map_err(usage)?;
    let elements = int_list(&a.elements)?;
    match verified(elements, n) {
        Ok((t, c)) => emit(
            out,
            &ValidRecord {
                valid: true,
                tuple: TupleRecord::new(&t, &c),
            },
        ),
        Err(f) => {
            emit(out, &FailureRecord::from(&f))?;
            Err(negative(f))
        }
    }
}

fn search_failure(e: SearchError) -> Failure {
    match e {
        SearchError::Inconsistency { .. } => negative(e),
        _ => usage(e),
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}

fn cmd_search(a: &SearchArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let (n_from, n_to) = match (a.n, a.n_from, a.n_to) {
        (Some(n), None, None) => {
            if n == 0 {
                return Err(usage(SearchError::ZeroN));
            }
            (n, n)
        }
        (None, Some(f), Some(t)) => (f, t),
        _ => return Err(usage("give either --n or both --n-from and --n-to")),
    };
    let mut task = SearchTask::range(n_from, n_to, a.bound);
    task.min_d_over_n2 = a
        .min_ratio
        .as_deref()
        .map(parse_decimal)
        .transpose()
        .map_err(usage)?;
    task.require_regular_triple = a.regular;
    task.require_small_element = a.small;
    task.skip_mod4_obstructed = a.skip_mod4;
    task.strategy = a.strategy.into();
    let workers = a.workers.unwrap_or_else(default_workers);
    if workers == 0 {
        return Err(usage("--workers must be at least 1"));
    }
    let show = a.progress;
    let found = search_range_with_progress(&task, workers, |n, k| {
        if show {
            eprintln!("n={n} found={k}");
        }
    })
    .map_err(search_failure)?;
    match a.format {
        Format::Json => {
            for r in &found {
                emit(out, &TupleRecord::from_search(r))?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(CSV_HEADER).map_err(usage)?;
            for r in &found {
                w.write_record(csv_row(r)).map_err(usage)?;
            }
            w.flush().map_err(io)?;
        }
    }
    if found.is_empty() {
        let _ = writeln!(err, "dquad: no quadruples found");
        if a.expect_nonempty {
            return Err(negative("--expect-nonempty: the search found nothing"));
        }
    }
    Ok(())
}

fn family_failure(e: FamilyError) -> Failure {
    match e {
        FamilyError::UnknownId(_)
        | FamilyError::Inadmissible { .. }
        | FamilyError::Invalid(_)
        | FamilyError::Arith(_) => usage(e),
        _ => negative(e),
    }
}

/// Either a registry entry or one loaded from a file.
enum Source {
    Registered(&'static Family),
    Loaded(Box<Family>),
}

impl std::ops::Deref for Source {
    type Target = Family;
    fn deref(&self) -> &Family {
        match self {
            Source::Registered(f) => f,
            Source::Loaded(f) => f,
        }
    }
}

fn load_family(src: &FamilySource) -> Result<Source, Failure> {
    if let Some(path) = &src.file {
        let text =
            std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        let json: FamilyJson =
            serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        return Family::from_json(&json)
            .map(|f| Source::Loaded(Box::new(f)))
            .map_err(usage);
    }
    let name = src.name.as_deref().unwrap_or_default();
    crate::families::lookup(name)
        .map(Source::Registered)
        .map_err(usage)
}

#[derive(Serialize)]
struct FamilySummary {
    id: String,
    param: String,
    size: usize,
    claimed_ratio: Option<String>,
    requires_nonsquare_n: bool,
}

#[derive(Serialize)]
struct FamilyTupleRecord {
    family: String,
    param: String,
    #[serde(flatten)]
    tuple: TupleRecord,
}

#[derive(Serialize)]
struct RatioPointRecord {
    param: String,
    log_ratio: Option<f64>,
    d_over_n3: f64,
}

#[derive(Serialize)]
struct SkipRecord {
    param: String,
    reason: String,
}

#[derive(Serialize)]
struct RatioRecord {
    family: String,
    claimed_ratio: Option<String>,
    points: Vec<RatioPointRecord>,
    skipped: Vec<SkipRecord>,
}

#[derive(Serialize)]
struct ParityAuditRecord {
    zform: ParityRecord,
    zform_matches: bool,
    zform_rederived: bool,
    eq1_centered: ParityRecord,
}

fn family_instance(f: &Family, p: &Int) -> Result<FamilyTupleRecord, FamilyError> {
    let (t, c) = f.eval_verified(p)?;
    Ok(FamilyTupleRecord {
        family: f.id.clone(),
        param: f.param_at(p).to_string(),
        tuple: TupleRecord::new(&t, &c),
    })
}

fn cmd_family(cmd: &FamilyCommand, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    use crate::tuples::round_sig15;
    match cmd {
        FamilyCommand::List => {
            let list: Vec<FamilySummary> = registry()
                .iter()
                .map(|f| FamilySummary {
                    id: f.id.clone(),
                    param: f.param.clone(),
                    size: f.elements.len(),
                    claimed_ratio: f.claimed_ratio.as_ref().map(Rat::to_string),
                    requires_nonsquare_n: f.requires_nonsquare_n,
                })
                .collect();
            emit(out, &list)
        }
        FamilyCommand::Show { source } => emit(out, &load_family(source)?.to_json()),
        FamilyCommand::Eval { source, param } => {
            let f = load_family(source)?;
            let p = parse_int(param).map_err(usage)?;
            emit(out, &family_instance(&f, &p).map_err(family_failure)?)
        }
        FamilyCommand::Prove { source } => {
            let f = load_family(source)?;
            let proof = f.prove().map_err(family_failure)?;
            emit(out, &ProofRecord::from(&proof))
        }
        FamilyCommand::Table { source, from, to } => {
            if from > to {
                return Err(usage(format!("empty parameter range [{from}, {to}]")));
            }
            if to.saturating_sub(*from) > TABLE_SPAN_MAX {
                return Err(usage(format!("parameter span exceeds {TABLE_SPAN_MAX}")));
            }
            let f = load_family(source)?;
            for p in *from..=*to {
                match family_instance(&f, &Int::from(p)) {
                    Ok(rec) => emit(out, &rec)?,
                    Err(
                        e @ (FamilyError::Excluded { .. } | FamilyError::ExplicitlyExcluded { .. }),
                    ) => {
                        let _ = writeln!(err, "dquad: skipped: {e}");
                    }
                    Err(e) => return Err(family_failure(e)),
                }
            }
            Ok(())
        }
        FamilyCommand::Parity => {
            let audit = family_parity_audit();
            let rec = ParityAuditRecord {
                zform: (&audit.zform).into(),
                zform_matches: audit.zform.matches_expected(),
                zform_rederived: audit.zform_rederived,
                eq1_centered: (&audit.eq1_centered).into(),
            };
            emit(out, &rec)?;
            if rec.zform_matches && rec.zform_rederived {
                Ok(())
            } else {
                Err(negative("z-form parity pattern does not hold"))
            }
        }
        FamilyCommand::Ratio { source, params } => {
            let f = load_family(source)?;
            let series = f.ratio_limit(&int_list(params)?);
            emit(
                out,
                &RatioRecord {
                    family: f.id.clone(),
                    claimed_ratio: f.claimed_ratio.as_ref().map(Rat::to_string),
                    points: series
                        .points
                        .iter()
                        .map(|p| RatioPointRecord {
                            param: p.param.to_string(),
                            log_ratio: p.log_ratio.map(round_sig15),
                            d_over_n3: round_sig15(p.d_over_n3),
                        })
                        .collect(),
                    skipped: series
                        .skipped
                        .iter()
                        .map(|(p, reason)| SkipRecord {
                            param: p.to_string(),
                            reason: reason.clone(),
                        })
                        .collect(),
                },
            )
        }
    }
}

fn construction_failure(e: ConstructionError) -> Failure {
    match e {
        ConstructionError::DeltaOutOfRange(_) | ConstructionError::BadEpsilon(_) => usage(e),
        ConstructionError::Family(f) => family_failure(f),
        _ => negative(e),
    }
}

#[derive(Serialize)]
struct ClearedRecord {
    scale: String,
    #[serde(flatten)]
    tuple: TupleRecord,
}

#[derive(Serialize)]
struct Chain920Record {
    v: String,
    rational: RationalRecord,
    cleared: ClearedRecord,
}

#[derive(Serialize)]
struct Chain32Record {
    b: String,
    s: String,
    state: Chain32StateRecord,
    rational: RationalRecord,
    cleared: ClearedRecord,
}

#[derive(Serialize)]
struct SpecializeRecord {
    v: String,
    #[serde(flatten)]
    tuple: TupleRecord,
}

fn rational_parts(rt: &RationalTuple) -> Result<(RationalRecord, ClearedRecord), Failure> {
    let roots = rt.verify().map_err(construction_failure)?;
    let (t, scale) = clear_denominators(rt).map_err(construction_failure)?;
    let cert = t.verify().map_err(negative)?;
    Ok((
        RationalRecord::new(rt, &roots),
        ClearedRecord {
            scale: scale.to_string(),
            tuple: TupleRecord::new(&t, &cert),
        },
    ))
}

fn cmd_construct(cmd: &ConstructCommand, out: &mut dyn Write) -> CmdResult {
    match cmd {
        ConstructCommand::Chain920 { v } => {
            let v = parse_rat(v).map_err(usage)?;
            let rt = chain_920(&v).map_err(construction_failure)?;
            let (rational, cleared) = rational_parts(&rt)?;
            emit(
                out,
                &Chain920Record {
                    v: v.to_string(),
                    rational,
                    cleared,
                },
            )
        }
        ConstructCommand::Chain32 { b, s } => {
            let b = parse_rat(b).map_err(usage)?;
            let s = parse_rat(s).map_err(usage)?;
            let (rt, state) = chain_32(&b, &s).map_err(construction_failure)?;
            let (rational, cleared) = rational_parts(&rt)?;
            emit(
                out,
                &Chain32Record {
                    b: b.to_string(),
                    s: s.to_string(),
                    state: (&state).into(),
                    rational,
                    cleared,
                },
            )
        }
        ConstructCommand::Specialize { v } => {
            let v = parse_int(v).map_err(usage)?;
            let t: Tuple = specialize_32(&v).map_err(|e| match e {
                ConstructionError::Family(f) => negative(f),
                e => construction_failure(e),
            })?;
            let cert = t.verify().map_err(|f: VerifyFailure| negative(f))?;
            emit(
                out,
                &SpecializeRecord {
                    v: v.to_string(),
                    tuple: TupleRecord::new(&t, &cert),
                },
            )
        }
    }
}

fn cmd_witness(a: &WitnessArgs, out: &mut dyn Write) -> CmdResult {
    let delta = parse_decimal(&a.delta).map_err(usage)?;
    let plan = plan_witness(&delta, a.epsilon).map_err(construction_failure)?;
    let w = execute_witness(&plan).map_err(construction_failure)?;
    emit(out, &WitnessRecord::from(&w))
}

#[derive(Serialize)]
struct Mod4Record {
    n_from: i64,
    n_to: i64,
    bound: i64,
    hits: usize,
    counts: Vec<(i64, usize)>,
}

#[derive(Serialize)]
struct LowerBoundRecord {
    n_max: i64,
    checked: usize,
    max_bound: i64,
    hits: usize,
}

fn cmd_audit(cmd: &AuditCommand, out: &mut dyn Write) -> CmdResult {
    match cmd {
        AuditCommand::Mod4 {
            n_from,
            n_to,
            bound,
        } => {
            let r = audit_mod4(*n_from, *n_to, *bound).map_err(search_failure)?;
            emit(
                out,
                &Mod4Record {
                    n_from: r.n_from,
                    n_to: r.n_to,
                    bound: r.bound,
                    hits: r.hits(),
                    counts: r.counts,
                },
            )
        }
        AuditCommand::LowerBound { n_max } => {
            let r = audit_lower_bound(*n_max).map_err(search_failure)?;
            emit(
                out,
                &LowerBoundRecord {
                    n_max: r.n_max,
                    checked: r.checked,
                    max_bound: r.max_bound,
                    hits: r.hits,
                },
            )
        }
    }
}
