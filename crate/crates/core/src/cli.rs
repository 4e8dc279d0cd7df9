//! Command-line interface: argument parsing and report generation.
//!
//! Reports are JSON by default where the data is structured; `--csv` and
//! plain text tables are available for the tabular commands. Exit codes are
//! 0 on success, 1 on a size guard or timeout, 2 on a usage error.

use std::path::PathBuf;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::bounds::{best_bounds, comparator_row, BoundFlags, BoundSummary, ComparatorRow};
use crate::error::{Error, Result};
use crate::field::FieldTag;
use crate::formal_sum::FormalSum;
use crate::invariants::{
    conjugation_check, generation_check_with, generator_set, newton_sigma_check, CSource,
    InvariantLimits,
};
use crate::nil_ideal::{EngineConfig, NilIdeal};
use crate::order::WordOrder;
use crate::rewrite4::{degree_cap, witness_search, Canonicalizer};
use crate::word::PartialOrderKind;

#[derive(Debug, Parser)]
#[command(
    name = "nilalg",
    version,
    about = "Exact computations in relatively free nil-algebras"
)]
pub struct Cli {
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Upper and lower bounds on the nilpotency degree.
    Bounds(BoundsArgs),
    /// Nilpotency degree by exact linear algebra.
    Exact(ExactArgs),
    /// Membership of an element in the ideal of `x^n = 0`.
    Member(MemberArgs),
    /// Zero modulo the ideal and strictly greater words.
    Equiv(EquivArgs),
    /// Canonical form for `n = 4`.
    Reduce4(Reduce4Args),
    /// Longest nonzero word for `n = 4` in a degree range.
    Witness4(Witness4Args),
    /// Generating sets of matrix invariants.
    Invariants(InvariantsArgs),
    /// Exponential bound against the two super-polynomial bounds.
    Compare(CompareArgs),
}

#[derive(Debug, Args)]
pub struct EngineArgs {
    /// Cap on candidate rows per component.
    #[arg(long)]
    pub limit_rows: Option<usize>,
    #[arg(long)]
    pub timeout_sec: Option<u64>,
}

impl EngineArgs {
    fn config(&self) -> EngineConfig {
        let mut c = EngineConfig::default();
        if let Some(r) = self.limit_rows {
            c.max_rows = r;
        }
        c.timeout = self.timeout_sec.map(Duration::from_secs);
        c
    }
}

#[derive(Debug, Args)]
pub struct ExprArgs {
    /// Element such as `x1^2.x2 - 2 x2.x1^2`.
    #[arg(long, conflicts_with = "file")]
    pub expr: Option<String>,
    /// File holding the element.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

impl ExprArgs {
    fn read(&self, field: FieldTag) -> Result<FormalSum> {
        let text = match (&self.expr, &self.file) {
            (Some(e), _) => e.clone(),
            (None, Some(f)) => std::fs::read_to_string(f)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", f.display())))?,
            (None, None) => {
                return Err(Error::InvalidArgument(
                    "one of --expr or --file is required".into(),
                ))
            }
        };
        FormalSum::parse(field, text.trim())
    }
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: u64,
    #[arg(long, default_value_t = 0)]
    pub p: u64,
    #[arg(long)]
    pub assume_conjecture_n2: bool,
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 0)]
    pub p: u64,
    #[arg(long, default_value_t = 16)]
    pub max_deg: u32,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct MemberArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub p: u64,
    #[command(flatten)]
    pub expr: ExprArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct EquivArgs {
    #[arg(long)]
    pub n: u32,
    #[arg(long, default_value_t = 0)]
    pub p: u64,
    #[arg(long, default_value = "succ")]
    pub order: PartialOrderKind,
    #[command(flatten)]
    pub expr: ExprArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct Reduce4Args {
    #[arg(long, default_value_t = 0)]
    pub p: u64,
    #[command(flatten)]
    pub expr: ExprArgs,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct Witness4Args {
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 0)]
    pub p: u64,
    #[arg(long, default_value_t = 1)]
    pub min_deg: u32,
    #[arg(long)]
    pub max_deg: u32,
    /// Also report the degree cap over canonical profiles.
    #[arg(long)]
    pub cap: bool,
    #[command(flatten)]
    pub engine: EngineArgs,
}

#[derive(Debug, Args)]
pub struct InvariantsArgs {
    #[command(subcommand)]
    pub action: InvariantsAction,
}

#[derive(Debug, Subcommand)]
pub enum InvariantsAction {
    /// The generating set.
    Generators {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        p: u64,
    },
    /// Degreewise check that the generating set generates.
    GenCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        p: u64,
        #[arg(long, default_value_t = 1)]
        extra_deg: u32,
        /// Largest `t * deg a` formed.
        #[arg(long)]
        max_x_degree: Option<u32>,
    },
    /// `sigma_t` against the Newton formulas.
    Newton {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 0)]
        p: u64,
    },
    /// Invariance of the generators under random conjugations.
    ConjCheck {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long, default_value_t = 0)]
        p: u64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long, default_value_t = 4)]
    pub n_min: u32,
    #[arg(long, default_value_t = 2000)]
    pub n_max: u32,
    /// Print every row, not only the summary.
    #[arg(long)]
    pub table: bool,
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

/// What a command prints and how the process exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn error(e: &Error) -> Self {
        Outcome {
            code: if e.is_guard() { 1 } else { 2 },
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Parses arguments, the first being the program name.
pub fn parse<I, T>(argv: I) -> std::result::Result<Cli, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    Cli::try_parse_from(argv)
}

pub fn run(cli: &Cli) -> Outcome {
    let pool = match rayon::ThreadPoolBuilder::new()
        .num_threads(cli.threads.unwrap_or(0))
        .build()
    {
        Ok(p) => p,
        Err(e) => return Outcome::error(&Error::InvalidArgument(e.to_string())),
    };
    match pool.install(|| dispatch(&cli.command)) {
        Ok(o) => o,
        Err(e) => Outcome::error(&e),
    }
}

fn json<T: Serialize>(v: &T) -> Result<String> {
    let mut s =
        serde_json::to_string_pretty(v).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_string<F>(header: &[&str], fill: F) -> Result<String>
where
    F: FnOnce(&mut csv::Writer<Vec<u8>>) -> std::result::Result<(), csv::Error>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    let wrap = |e: csv::Error| Error::InvalidArgument(e.to_string());
    w.write_record(header).map_err(wrap)?;
    fill(&mut w).map_err(wrap)?;
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn ideal(n: u32, p: u64, engine: &EngineArgs) -> Result<NilIdeal> {
    NilIdeal::with_config(n, p, engine.config())
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Bounds(a) => bounds(a),
        Command::Exact(a) => {
            let r = ideal(a.n, a.p, &a.engine)?.nilpotency_degree(a.d, a.max_deg)?;
            Ok(Outcome::ok(json(&r)?))
        }
        Command::Member(a) => {
            let id = ideal(a.n, a.p, &a.engine)?;
            let f = a.expr.read(id.field())?;
            let normal_form = id.reduce(&f, WordOrder::Profile)?;
            #[derive(Serialize)]
            struct Report<'a> {
                n: u32,
                p: u64,
                input: &'a FormalSum,
                member: bool,
                normal_form: FormalSum,
            }
            let member = normal_form.is_zero();
            Ok(Outcome::ok(json(&Report {
                n: a.n,
                p: a.p,
                input: &f,
                member,
                normal_form,
            })?))
        }
        Command::Equiv(a) => {
            let id = ideal(a.n, a.p, &a.engine)?;
            let f = a.expr.read(id.field())?;
            let outcome = id.equiv_zero_certificate(&f, a.order)?;
            #[derive(Serialize)]
            struct Report<'a> {
                n: u32,
                p: u64,
                order: PartialOrderKind,
                input: &'a FormalSum,
                holds: bool,
                groups: &'a [crate::nil_ideal::EquivGroup],
            }
            let r = Report {
                n: a.n,
                p: a.p,
                order: a.order,
                input: &f,
                holds: outcome.holds,
                groups: &outcome.groups,
            };
            Ok(Outcome::ok(json(&r)?))
        }
        Command::Reduce4(a) => {
            let c = Canonicalizer::with_config(a.p, a.engine.config())?;
            let f = a.expr.read(c.ideal().field())?;
            let g = c.canonicalize(&f)?;
            #[derive(Serialize)]
            struct Report<'a> {
                p: u64,
                input: &'a FormalSum,
                canonical: FormalSum,
                is_zero: bool,
            }
            let is_zero = g.is_zero();
            Ok(Outcome::ok(json(&Report {
                p: a.p,
                input: &f,
                canonical: g,
                is_zero,
            })?))
        }
        Command::Witness4(a) => {
            let id = ideal(4, a.p, &a.engine)?;
            let w = witness_search(&id, a.d, a.min_deg, a.max_deg)?;
            #[derive(Serialize)]
            struct Report {
                d: usize,
                p: u64,
                min_deg: u32,
                max_deg: u32,
                witness: Option<crate::word::Word>,
                degree: Option<usize>,
                #[serde(skip_serializing_if = "Option::is_none")]
                cap: Option<crate::rewrite4::DegreeCap>,
            }
            let degree = w.as_ref().map(|w| w.len());
            let cap = a.cap.then(|| degree_cap(a.d));
            let r = Report {
                d: a.d,
                p: a.p,
                min_deg: a.min_deg,
                max_deg: a.max_deg,
                witness: w,
                degree,
                cap,
            };
            Ok(Outcome::ok(json(&r)?))
        }
        Command::Invariants(a) => invariants(&a.action),
        Command::Compare(a) => compare(a),
    }
}

fn bounds(a: &BoundsArgs) -> Result<Outcome> {
    let flags = BoundFlags {
        assume_conjecture_n2: a.assume_conjecture_n2,
    };
    let s: BoundSummary = best_bounds(a.n, a.d, a.p, flags)?;
    if a.json {
        return Ok(Outcome::ok(json(&s)?));
    }
    let show =
        |b: &Option<num_bigint::BigInt>| b.as_ref().map(|x| x.to_string()).unwrap_or_default();
    if a.csv {
        let out = csv_string(
            &[
                "formula_id",
                "direction",
                "strict",
                "integer_bound",
                "log10",
                "conditional",
                "applicability",
            ],
            |w| {
                for b in &s.all {
                    w.write_record([
                        b.formula_id.to_string(),
                        format!("{:?}", b.direction).to_lowercase(),
                        b.strict.to_string(),
                        show(&b.integer_bound),
                        format!("{:.6}", b.value_log10),
                        b.conditional.to_string(),
                        b.applicability.to_string(),
                    ])?;
                }
                Ok(())
            },
        )?;
        return Ok(Outcome::ok(out));
    }
    let mut out = format!("C_{{{},{}}} over characteristic {}\n", a.n, a.d, a.p);
    out += &format!(
        "{:<18} {:<6} {:>24} {:>12}\n",
        "formula", "dir", "bound on C", "log10"
    );
    for b in &s.all {
        let dir = format!("{:?}", b.direction).to_lowercase();
        let cond = if b.conditional { " (conditional)" } else { "" };
        let bound = b
            .integer_bound
            .as_ref()
            .map(|x| x.to_string())
            .unwrap_or_else(|| "-".into());
        let bound = if bound.len() > 24 {
            format!("~1e{:.1}", b.effective_log10())
        } else {
            bound
        };
        out += &format!(
            "{:<18} {:<6} {:>24} {:>12.4}{cond}\n",
            b.formula_id, dir, bound, b.value_log10
        );
    }
    out += &format!(
        "best lower: {} ({})\n",
        show(&s.best_lower.integer_bound),
        s.best_lower.formula_id
    );
    out += &format!(
        "best upper: {} ({})\n",
        show(&s.best_upper.integer_bound),
        s.best_upper.formula_id
    );
    Ok(Outcome::ok(out))
}

fn compare(a: &CompareArgs) -> Result<Outcome> {
    if a.n_min < 1 || a.n_min > a.n_max {
        return Err(Error::InvalidArgument(format!(
            "bad range {}..={}",
            a.n_min, a.n_max
        )));
    }
    let rows: Vec<ComparatorRow> = (a.n_min..=a.n_max).map(comparator_row).collect();
    let min = rows
        .iter()
        .min_by(|x, y| x.gap_log10.total_cmp(&y.gap_log10))
        .copied()
        .expect("nonempty range");
    if a.csv {
        let out = csv_string(
            &["n", "bk_a_log10", "bk_b_log10", "exp_log10", "gap_log10"],
            |w| {
                for r in &rows {
                    w.write_record([
                        r.n.to_string(),
                        format!("{:.6}", r.bk_a_log10),
                        format!("{:.6}", r.bk_b_log10),
                        format!("{:.6}", r.exp_log10),
                        format!("{:.6}", r.gap_log10),
                    ])?;
                }
                Ok(())
            },
        )?;
        return Ok(Outcome::ok(out));
    }
    if a.json {
        #[derive(Serialize)]
        struct Report<'a> {
            n_min: u32,
            n_max: u32,
            min_gap_log10: f64,
            argmin: u32,
            #[serde(skip_serializing_if = "Option::is_none")]
            rows: Option<&'a [ComparatorRow]>,
        }
        let r = Report {
            n_min: a.n_min,
            n_max: a.n_max,
            min_gap_log10: min.gap_log10,
            argmin: min.n,
            rows: a.table.then_some(rows.as_slice()),
        };
        return Ok(Outcome::ok(json(&r)?));
    }
    let mut out = String::new();
    if a.table {
        out += &format!(
            "{:>6} {:>12} {:>12} {:>12} {:>10}\n",
            "n", "bk_a", "bk_b", "exp", "gap"
        );
        for r in &rows {
            out += &format!(
                "{:>6} {:>12.3} {:>12.3} {:>12.3} {:>10.3}\n",
                r.n, r.bk_a_log10, r.bk_b_log10, r.exp_log10, r.gap_log10
            );
        }
    }
    out += &format!(
        "min log10 ratio over {}..={}: {:.4} at n = {}\n",
        a.n_min, a.n_max, min.gap_log10, min.n
    );
    Ok(Outcome::ok(out))
}

fn invariants(action: &InvariantsAction) -> Result<Outcome> {
    match *action {
        InvariantsAction::Generators { n, d, p } => Ok(Outcome::ok(json(&generator_set(
            n,
            d,
            p,
            CSource::default(),
        )?)?)),
        InvariantsAction::GenCheck {
            n,
            d,
            p,
            extra_deg,
            max_x_degree,
        } => {
            let mut limits = InvariantLimits::default();
            if let Some(m) = max_x_degree {
                limits.max_x_degree = m;
            }
            let r = generation_check_with(n, d, p, extra_deg, CSource::default(), &limits)?;
            let code = if r.summary.all_pass { 0 } else { 1 };
            Ok(Outcome {
                code,
                stdout: json(&r)?,
                stderr: String::new(),
            })
        }
        InvariantsAction::Newton { n, t, p } => {
            #[derive(Serialize)]
            struct Report {
                n: usize,
                t: usize,
                p: u64,
                pass: bool,
            }
            let pass = newton_sigma_check(n, t, p)?;
            Ok(Outcome::ok(json(&Report { n, t, p, pass })?))
        }
        InvariantsAction::ConjCheck {
            n,
            d,
            p,
            samples,
            seed,
        } => {
            let r = conjugation_check(&generator_set(n, d, p, CSource::default())?, samples, seed)?;
            let code = if r.pass { 0 } else { 1 };
            Ok(Outcome {
                code,
                stdout: json(&r)?,
                stderr: String::new(),
            })
        }
    }
}
