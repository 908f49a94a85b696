//! Command-line interface. Indices are 1-based on the command line and in
//! all output. Machine output goes to stdout as JSON, diagnostics to stderr.
//! Exit codes: 0 success, 1 domain error, 2 usage error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::code::StabilizerCode;
use crate::distance::{
    centralizer_min_weight_words, min_distance, min_weight_words, EnumBudget, MinWeightReport, DEFAULT_WORD_CAP,
};
use crate::error::Error;
use crate::experiment::{
    self, emit_histogram, enumerate_punctures, DedupeMode, EnumerateOptions, HistogramFormat, Tier,
};
use crate::fixtures;
use crate::griesmer::{griesmer_bound, griesmer_reduce};
use crate::io::{parse_code, write_code};
use crate::puncture::{puncture_with_case, shorten};
use crate::search::{find_avoidance, find_hitting_set, orbit_reps, tuple_criterion, HittingMode, OrbitGroup};
use crate::symplectic::{ProjPair, SympVec};

#[derive(Parser, Debug)]
#[command(
    name = "sympunct",
    version,
    about = "Puncture, shorten and analyse qudit stabilizer codes"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct RunOpts {
    /// Largest number of vectors one enumeration may visit.
    #[arg(long, default_value_t = 1 << 36)]
    budget: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    jobs: Option<usize>,
}

impl RunOpts {
    fn budget(&self) -> EnumBudget {
        let b = EnumBudget::new(self.budget);
        match self.jobs {
            Some(j) => b.with_workers(j),
            None => b,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum OrbitArg {
    Identity,
    Cyclic,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum DedupeArg {
    Combos,
    Canonical,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum TierArg {
    Short,
    Long,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FormatArg {
    Csv,
    Json,
}

/// FILE arguments accept a path or `fixture:NAME` (qutrit_5_2_2, qutrit_15_3_5, qubit_21_5_6).
#[derive(Subcommand, Debug)]
enum Command {
    /// Code parameters.
    Info { file: String },
    /// Minimum distance and purity.
    Distance {
        file: String,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Minimum-weight words of the centralizer minus the stabilizer.
    Minwords {
        file: String,
        #[arg(long, default_value_t = DEFAULT_WORD_CAP)]
        cap: usize,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Puncture one position with respect to a pair.
    Puncture {
        file: String,
        #[arg(long)]
        index: usize,
        /// Pair as `ALPHA,BETA`.
        #[arg(long)]
        pair: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Shorten the stabilizer at a set of positions.
    Shorten {
        file: String,
        /// Comma-separated positions.
        #[arg(long)]
        indices: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Index/pair choices that keep the distance under a single puncture.
    SearchAvoid {
        file: String,
        #[command(flatten)]
        run: RunOpts,
    },
    /// The t-tuple criterion over index sets.
    SearchTuple {
        file: String,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value = "identity")]
        orbit: OrbitArg,
        /// Report every index set (default).
        #[arg(long, conflicts_with = "first")]
        all: bool,
        /// Stop at the first index set with a witness.
        #[arg(long)]
        first: bool,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Hitting set of the zero patterns of minimum-weight centralizer words.
    Hitting {
        file: String,
        #[arg(long)]
        exact: bool,
        #[arg(long)]
        max_size: Option<usize>,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Griesmer bound verdict.
    Griesmer {
        file: String,
        /// Use this distance instead of computing it.
        #[arg(long)]
        d: Option<usize>,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Puncture away a minimum-weight word, losing one logical qudit.
    GriesmerReduce {
        file: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Histogram of the distance excess over all t-fold punctures.
    Enumerate {
        file: String,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value = "identity")]
        orbit: OrbitArg,
        #[arg(long, value_enum, default_value = "combos")]
        dedupe: DedupeArg,
        #[arg(long, value_enum, default_value = "short")]
        tier: TierArg,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// No progress lines on stderr.
        #[arg(long)]
        quiet: bool,
        #[command(flatten)]
        run: RunOpts,
    },
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn load(file: &str) -> CliResult<StabilizerCode> {
    if let Some(name) = file.strip_prefix("fixture:") {
        return fixtures::by_name(name).ok_or_else(|| Failure::Usage(format!("unknown fixture '{name}'")));
    }
    let text = std::fs::read_to_string(file).map_err(|e| Failure::Usage(format!("cannot read {file}: {e}")))?;
    Ok(parse_code(&text)?)
}

fn save(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn one_based(index: usize, n: usize) -> CliResult<usize> {
    if index == 0 || index > n {
        return Err(Failure::Usage(format!("index {index} outside 1..={n}")));
    }
    Ok(index - 1)
}

fn parse_list(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|_| Failure::Usage(format!("'{x}' is not a positive integer")))
        })
        .collect()
}

fn params(c: &StabilizerCode) -> Value {
    json!({ "p": c.p(), "n": c.n(), "k": c.k() })
}

fn with(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn row(v: &SympVec) -> Value {
    json!(v.to_row())
}

fn pair_json(p: ProjPair) -> Value {
    json!([p.alpha, p.beta])
}

fn big(x: u128) -> Value {
    u64::try_from(x).map_or_else(|_| json!(x.to_string()), |v| json!(v))
}

fn report_json(c: &StabilizerCode, r: &MinWeightReport) -> Value {
    with(
        params(c),
        json!({
            "d": r.d,
            "pure": r.pure,
            "stabilizer_min_weight": r.stabilizer_min_weight,
            "word_count": r.word_count,
            "complete": r.complete,
            "enumerated": r.enumerated,
        }),
    )
}

fn exhaustive_words(c: &StabilizerCode, run: &RunOpts) -> CliResult<MinWeightReport> {
    let r = min_weight_words(c, &run.budget(), DEFAULT_WORD_CAP)?;
    r.require_exhaustive()?;
    Ok(r)
}

fn execute(cmd: Command) -> CliResult<Value> {
    match cmd {
        Command::Info { file } => {
            let c = load(&file)?;
            Ok(with(
                params(&c),
                json!({
                    "stabilizer_rows": c.stab().rows(),
                    "extension_rows": c.ext().rows(),
                    "hash": experiment::code_hash(&c),
                }),
            ))
        }
        Command::Distance { file, run } => {
            let c = load(&file)?;
            let r = min_distance(&c, &run.budget())?;
            Ok(report_json(&c, &r))
        }
        Command::Minwords { file, cap, run } => {
            let c = load(&file)?;
            let r = min_weight_words(&c, &run.budget(), cap)?;
            let words: Vec<Value> = r.words.iter().map(row).collect();
            Ok(with(
                report_json(&c, &r),
                json!({ "overflow": r.overflow, "words": words }),
            ))
        }
        Command::Puncture {
            file,
            index,
            pair,
            out: dest,
        } => {
            let c = load(&file)?;
            let i = one_based(index, c.n())?;
            let ab = parse_list(&pair)?;
            let &[a, b] = ab.as_slice() else {
                return Err(Failure::Usage(format!("--pair expects ALPHA,BETA, got '{pair}'")));
            };
            if a >= c.p() as usize || b >= c.p() as usize {
                return Err(Failure::Usage(format!("pair entries must lie in 0..{}", c.p())));
            }
            let (q, case) = puncture_with_case(&c, i, (a as u16, b as u16))?;
            let text = write_code(&q);
            if let Some(path) = &dest {
                save(path, &text)?;
            }
            Ok(with(params(&q), json!({ "case": format!("{case:?}"), "code": text })))
        }
        Command::Shorten {
            file,
            indices,
            out: dest,
        } => {
            let c = load(&file)?;
            let idx = parse_list(&indices)?
                .into_iter()
                .map(|i| one_based(i, c.n()))
                .collect::<CliResult<Vec<_>>>()?;
            let q = shorten(&c, &idx)?;
            let text = write_code(&q);
            if let Some(path) = &dest {
                save(path, &text)?;
            }
            Ok(with(params(&q), json!({ "code": text })))
        }
        Command::SearchAvoid { file, run } => {
            let c = load(&file)?;
            let r = exhaustive_words(&c, &run)?;
            let res: Vec<Value> = find_avoidance(&c, &r)?
                .into_iter()
                .map(|a| json!({ "index": a.index + 1, "pair": pair_json(a.pair), "guaranteed_d": a.guaranteed_d }))
                .collect();
            Ok(json!({ "d": r.d, "results": res }))
        }
        Command::SearchTuple {
            file,
            t,
            orbit,
            all: _,
            first,
            run,
        } => {
            let c = load(&file)?;
            let r = exhaustive_words(&c, &run)?;
            let group = match orbit {
                OrbitArg::Identity => OrbitGroup::Identity,
                OrbitArg::Cyclic => OrbitGroup::Cyclic,
            };
            if t == 0 {
                return Err(Failure::Usage("--t must be at least 1".into()));
            }
            let mut res = Vec::new();
            for set in orbit_reps(c.n(), t, &group)? {
                let tc = tuple_criterion(&c, &r, &set)?;
                let hit = tc.witness.is_some();
                res.push(json!({
                    "indices": tc.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "m_star_size": big(tc.m_star_size),
                    "threshold": big(tc.threshold),
                    "witness": tc.witness.map(|w| w.into_iter().map(pair_json).collect::<Vec<_>>()),
                    "guaranteed_d": tc.guaranteed_d,
                }));
                if first && hit {
                    break;
                }
            }
            Ok(json!({ "d": r.d, "t": t, "results": res }))
        }
        Command::Hitting {
            file,
            exact,
            max_size,
            run,
        } => {
            let c = load(&file)?;
            let r = centralizer_min_weight_words(&c, &run.budget(), DEFAULT_WORD_CAP)?;
            let mode = if exact { HittingMode::Exact } else { HittingMode::Greedy };
            let h = find_hitting_set(&r, mode, max_size.unwrap_or(c.n()))?;
            Ok(json!({
                "centralizer_d": r.d,
                "mode": if exact { "exact" } else { "greedy" },
                "size": h.indices.len(),
                "indices": h.indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
            }))
        }
        Command::Griesmer { file, d, run } => {
            let c = load(&file)?;
            let d = match d {
                Some(d) => d,
                None => min_distance(&c, &run.budget())?.d,
            };
            Ok(serde_json::to_value(griesmer_bound(c.n(), c.k(), d, c.p())).expect("verdict serializes"))
        }
        Command::GriesmerReduce { file, out: dest, run } => {
            let c = load(&file)?;
            let (q, mut trace) = griesmer_reduce(&c, &run.budget())?;
            for s in &mut trace.steps {
                s.index += 1;
            }
            let text = write_code(&q);
            if let Some(path) = &dest {
                save(path, &text)?;
            }
            let mut v = serde_json::to_value(&trace).expect("trace serializes");
            v["code"] = json!(text);
            Ok(v)
        }
        Command::Enumerate {
            file,
            t,
            orbit,
            dedupe,
            tier,
            out: dest,
            format,
            checkpoint,
            quiet,
            run,
        } => {
            let c = load(&file)?;
            let mut opts = EnumerateOptions::new(t);
            opts.group = match orbit {
                OrbitArg::Identity => OrbitGroup::Identity,
                OrbitArg::Cyclic => OrbitGroup::Cyclic,
            };
            opts.dedupe = match dedupe {
                DedupeArg::Combos => DedupeMode::Combos,
                DedupeArg::Canonical => DedupeMode::Canonical,
            };
            opts.tier = match tier {
                TierArg::Short => Tier::Short,
                TierArg::Long => Tier::Long,
            };
            opts.budget = run.budget();
            opts.checkpoint = checkpoint;
            let report = |p: experiment::Progress| {
                eprintln!("enumerate: {}/{} index sets", p.done_sets, p.total_sets);
            };
            if !quiet {
                opts.progress = Some(&report);
            }
            let h = enumerate_punctures(&c, &opts)?;
            let fmt = match format {
                FormatArg::Csv => HistogramFormat::Csv,
                FormatArg::Json => HistogramFormat::Json,
            };
            save(&dest, &emit_histogram(&h, fmt))?;
            Ok(serde_json::to_value(&h).expect("histogram serializes"))
        }
    }
}

/// Runs the CLI with explicit output streams and returns the exit code.
pub fn run_cli_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli.cmd) {
        Ok(v) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"));
            0
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Runs the CLI on the process streams and returns the exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_cli_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
