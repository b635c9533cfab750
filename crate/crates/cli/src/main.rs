//! `qbounds`: point counts, classification, pair analysis, bound tables and
//! censuses for quadrics over finite fields.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use quadric_bounds::census::{self, CensusConfig, CensusSummary, Q1Selector, SweepMode};
use quadric_bounds::pair::{self, Fixture};
use quadric_bounds::syntax::{parse_algebraic_set, parse_quadric};
use quadric_bounds::variety::{check_conjecture2, estimate_dim_degree};
use quadric_bounds::{
    classify, make_field, BoundsParams, Error, ExactBoundsTable, FieldSpec, QuadricType,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "qbounds", version, about = "Quadric intersection bounds over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Args)]
struct FieldArgs {
    /// Ambient projective dimension.
    #[arg(long)]
    n: usize,
    /// Field characteristic.
    #[arg(long)]
    p: u32,
    /// Extension degree, q = p^m.
    #[arg(long, default_value_t = 1)]
    m: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Count the points of a quadric, or of the set cut out by --forms.
    Count {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, conflicts_with = "forms", required_unless_present = "forms")]
        q1: Option<String>,
        /// `;`-separated forms of any degree.
        #[arg(long)]
        forms: Option<String>,
        /// Count over F_{q^k}.
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// Rank, vertex, type and point count of a quadric.
    Classify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        q1: String,
    },
    /// Order of a pair and its common hyperplane, if any.
    Order {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        q1: String,
        #[arg(long)]
        q2: String,
    },
    /// Full report for a pair: count, order, applicable bounds and slack.
    Pair {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        q1: String,
        #[arg(long)]
        q2: String,
    },
    /// Table of all closed-form bounds for the given parameters.
    Bounds {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        s: Option<i64>,
        #[arg(long)]
        r: Option<i64>,
    },
    /// Sweep Q1 classes against every (or sampled) Q2 and check the bound.
    Census {
        #[command(flatten)]
        field: FieldArgs,
        /// Fix Q1 instead of sweeping canonical classes.
        #[arg(long)]
        q1: Option<String>,
        /// Restrict canonical Q1 classes to this rank.
        #[arg(long)]
        r: Option<usize>,
        /// Restrict canonical Q1 classes to this type.
        #[arg(long)]
        kind: Option<QuadricType>,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = census::DEFAULT_CHUNK)]
        chunk: u64,
        /// Worker threads; 0 uses all cores.
        #[arg(long, default_value_t = 0)]
        workers: usize,
        /// JSON-lines stream of every checked pair.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Chunk log; rerunning with the same log resumes.
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, default_value_t = census::DEFAULT_WORK_CAP)]
        work_cap: u128,
    },
    /// Probe a conjecture: 1 = degenerate Q1 of rank r, 2 = algebraic sets.
    Conjecture {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        kind: u8,
        #[arg(long)]
        r: Option<usize>,
        /// Sample this many Q2 instead of sweeping all of them.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long)]
        forms: Option<String>,
        #[arg(long)]
        d: Option<i64>,
        #[arg(long)]
        s: Option<i64>,
        /// Also estimate (s, d) from counts over F_{q^k}, k up to this value.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Named pairs that attain or illustrate the bounds.
    Extremal {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        name: Fixture,
    },
}

enum Failure {
    Usage(String),
    Parse(String),
    Violation(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::ZeroForm => Failure::Parse(e.to_string()),
            Error::Violation(r) => Failure::Violation(r),
            Error::Io(_) => Failure::Other(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn field_of(a: &FieldArgs) -> Result<FieldSpec, Failure> {
    Ok(make_field(a.p, a.m)?)
}

fn emit(format: Format, value: &Value, text: impl FnOnce() -> String) -> Outcome {
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(value).unwrap()),
        Format::Text => print!("{}", text()),
        Format::Csv => return Err(Failure::Usage("csv output is only available for census".into())),
    }
    Ok(())
}

fn text_of(value: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = value {
        for (k, v) in map {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{k:<18} {shown}\n"));
        }
    }
    out
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Count { field, q1, forms, k } => {
            let f = field_of(&field)?;
            let (count, what) = match (q1, forms) {
                (Some(text), _) => {
                    let q = parse_quadric(&text, field.n, &f)?;
                    let set = parse_algebraic_set(&text, field.n, &f)?;
                    (set.count_points(k)?, q.to_string())
                }
                (None, Some(text)) => {
                    let set = parse_algebraic_set(&text, field.n, &f)?;
                    let shown: Vec<String> = set.forms().iter().map(|g| g.to_string()).collect();
                    (set.count_points(k)?, shown.join("; "))
                }
                (None, None) => unreachable!("clap requires one of --q1, --forms"),
            };
            let v = json!({
                "n": field.n,
                "q": f.q(),
                "k": k,
                "forms": what,
                "count": count as u64,
            });
            emit(field.format, &v, || text_of(&v))
        }
        Command::Classify { field, q1 } => {
            let f = field_of(&field)?;
            let q = parse_quadric(&q1, field.n, &f)?;
            let prof = classify(&q)?;
            let mut v = prof.to_json(&f);
            v["form"] = json!(q.to_string());
            v["q"] = json!(f.q());
            emit(field.format, &v, || text_of(&v))
        }
        Command::Order { field, q1, q2 } => {
            let f = field_of(&field)?;
            let a = parse_quadric(&q1, field.n, &f)?;
            let b = parse_quadric(&q2, field.n, &f)?;
            let hyper = pair::common_hyperplane(&a, &b)?;
            let v = json!({
                "order": pair::order(&a, &b)?,
                "common_hyperplane": hyper.as_ref().map(|l| l.to_string()),
                "in_hypothesis": pair::in_hypothesis(&a, &b)?,
            });
            emit(field.format, &v, || text_of(&v))
        }
        Command::Pair { field, q1, q2 } => {
            let f = field_of(&field)?;
            let a = parse_quadric(&q1, field.n, &f)?;
            let b = parse_quadric(&q2, field.n, &f)?;
            let rep = pair::pair_report(&a, &b)?;
            emit(field.format, &rep.to_json(), || rep.to_text())?;
            if rep.violates_theorem() {
                return Err(Failure::Violation(
                    json!({"p": f.p(), "m": f.m(), "n": field.n, "q1": a.to_string(), "q2": b.to_string()})
                        .to_string(),
                ));
            }
            Ok(())
        }
        Command::Bounds { field, d, s, r } => {
            let f = field_of(&field)?;
            let table = ExactBoundsTable::build(BoundsParams {
                n: field.n as i64,
                q: f.q() as u64,
                d,
                s,
                r,
            })?;
            emit(field.format, &table.to_json(), || table.to_text())
        }
        Command::Census {
            field,
            q1,
            r,
            kind,
            mode,
            samples,
            seed,
            chunk,
            workers,
            out,
            checkpoint,
            work_cap,
        } => {
            let f = field_of(&field)?;
            let mut cfg = CensusConfig::new(field.n, &f);
            cfg.q1 = match q1 {
                Some(text) => Q1Selector::Explicit(parse_quadric(&text, field.n, &f)?),
                None if r.is_some() || kind.is_some() => Q1Selector::Filter { rank: r, qtype: kind },
                None => Q1Selector::AllCanonical,
            };
            cfg.mode = match mode {
                Mode::Exhaustive => SweepMode::Exhaustive,
                Mode::Random => SweepMode::Random { samples, seed },
            };
            cfg.chunk_size = chunk;
            cfg.workers = workers;
            cfg.out = out;
            cfg.checkpoint = checkpoint;
            cfg.work_cap = work_cap;
            let summary = census::run_census(&cfg)?;
            match field.format {
                Format::Json => println!("{}", serde_json::to_string_pretty(&summary).unwrap()),
                Format::Text => print!("{}", census_text(&summary)),
                Format::Csv => census_csv(&summary)?,
            }
            Ok(())
        }
        Command::Conjecture {
            field,
            kind,
            r,
            samples,
            seed,
            workers,
            forms,
            d,
            s,
            k,
        } => {
            let f = field_of(&field)?;
            if kind == 1 {
                let r = r.ok_or_else(|| Failure::Usage("--r is required for conjecture 1".into()))?;
                let rep = census::probe_conjecture1(field.n, &f, r, samples, seed, workers)?;
                let v = serde_json::to_value(&rep).unwrap();
                return emit(field.format, &v, || {
                    let mut t = format!(
                        "P^{} over F_{}, rank {}: conjectured bound {}, max observed {}\n",
                        rep.n,
                        rep.q,
                        rep.rank,
                        rep.conjectured_bound,
                        rep.max_observed.map_or("-".into(), |m| m.to_string())
                    );
                    for c in &rep.classes {
                        t.push_str(&format!(
                            "  {:<16} pairs {:>10}  max {:>6}\n",
                            c.q1_class,
                            c.stats.pairs_checked,
                            c.stats.max_count.map_or("-".into(), |m| m.to_string())
                        ));
                    }
                    t.push_str(&rep.note);
                    t.push('\n');
                    t
                });
            }
            let text = forms.ok_or_else(|| Failure::Usage("--forms is required for conjecture 2".into()))?;
            let set = parse_algebraic_set(&text, field.n, &f)?;
            let estimate = match k {
                Some(k) => Some(estimate_dim_degree::<f64>(&set, k)?),
                None => None,
            };
            let d = d.or(set.declared_deg).or(estimate.as_ref().and_then(|e| e.d_est));
            let s = s.or(set.declared_dim).or(estimate.as_ref().and_then(|e| e.s_est));
            let rep = check_conjecture2(&set, d, s)?;
            let mut v = serde_json::to_value(&rep).unwrap();
            if let Some(e) = &estimate {
                v["estimate"] = serde_json::to_value(e).unwrap();
            }
            emit(field.format, &v, || {
                let mut t = format!(
                    "count {} with d = {}, s = {}\n",
                    rep.count, rep.d, rep.s
                );
                for c in &rep.checks {
                    t.push_str(&format!(
                        "  {:<13} {:>8}  {}  slack {}\n",
                        c.name,
                        c.value,
                        if c.satisfied { "ok  " } else { "FAIL" },
                        c.slack
                    ));
                }
                for note in &rep.notes {
                    t.push_str(&format!("note: {note}\n"));
                }
                t
            })
        }
        Command::Extremal { field, name } => {
            let f = field_of(&field)?;
            let (a, b) = name.forms(field.n, &f)?;
            let rep = pair::pair_report(&a, &b)?;
            let mut v = rep.to_json();
            v["name"] = json!(name.name());
            v["q1"] = json!(a.to_string());
            v["q2"] = json!(b.to_string());
            emit(field.format, &v, || {
                format!("{}: {} and {}\n{}", name.name(), a, b, rep.to_text())
            })
        }
    }
}

fn census_text(s: &CensusSummary) -> String {
    let mut t = format!(
        "P^{} over F_{}: {} pairs, {} in hypothesis, bound {}, max {}\n",
        s.n,
        s.q,
        s.pairs_checked,
        s.in_hypothesis,
        s.theorem_bound,
        s.max_in_hypothesis.map_or("-".into(), |m| m.to_string())
    );
    t.push_str(&format!(
        "{:<16} {:>10} {:>10} {:>6} {:>6} {:>9}\n",
        "class", "pairs", "in_hyp", "max", "bound", "extremal"
    ));
    for c in &s.classes {
        t.push_str(&format!(
            "{:<16} {:>10} {:>10} {:>6} {:>6} {:>9}\n",
            c.q1_class,
            c.stats.pairs_checked,
            c.stats.in_hypothesis,
            c.stats.max_count.map_or("-".into(), |m| m.to_string()),
            c.bound,
            c.stats.extremal_count
        ));
    }
    for w in s.extremal_witnesses.iter().take(3) {
        t.push_str(&format!("witness: {} / {} -> {}\n", w.q1, w.q2, w.count));
    }
    t
}

fn census_csv(s: &CensusSummary) -> Outcome {
    let mut w = csv::Writer::from_writer(std::io::stdout());
    let io = |e: csv::Error| Failure::Other(e.to_string());
    w.write_record(["q1_class", "pairs_checked", "in_hypothesis", "max_count", "bound", "extremal_count"])
        .map_err(io)?;
    for c in &s.classes {
        w.write_record([
            c.q1_class.clone(),
            c.stats.pairs_checked.to_string(),
            c.stats.in_hypothesis.to_string(),
            c.stats.max_count.map_or(String::new(), |m| m.to_string()),
            c.bound.to_string(),
            c.stats.extremal_count.to_string(),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Failure::Other(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Parse(m)) => {
            eprintln!("parse error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Violation(repro)) => {
            eprintln!("BOUND VIOLATION; reproducer:");
            println!("{repro}");
            ExitCode::from(4)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
