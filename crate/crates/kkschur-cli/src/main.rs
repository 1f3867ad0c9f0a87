//! Command-line front end for the kkschur engine.
//!
//! Exit codes: 0 on success, 1 on a mathematical failure (inexact division,
//! a failed theorem statement, or a conjecture counterexample under
//! `--strict`), 2 on usage errors.

mod scan;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kkschur::cores;
use kkschur::ring::{self, Basis, RectangleMultiset, SymFunc};
use kkschur::tables::{self, PosetOrder};
use kkschur::theorems::{self, Bounds, MinindexOutcome, StatementId};
use kkschur::{Error, LevelContext, Partition};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(
    name = "kkschur",
    version,
    about = "Exact k-Schur / K-k-Schur combinatorics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum BasisArg {
    Kkschur,
    Kschur,
    H,
}

impl From<BasisArg> for Basis {
    fn from(b: BasisArg) -> Basis {
        match b {
            BasisArg::Kkschur => Basis::KKSchur,
            BasisArg::Kschur => Basis::KSchur,
            BasisArg::H => Basis::H,
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum OrderArg {
    Weak,
    Strong,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the output to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Human-readable output instead of JSON.
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct BoundsArgs {
    /// Largest size of the free partition parameter.
    #[arg(long, default_value_t = 8)]
    max_size: u32,
    /// Cap on the total rectangle multiplicity.
    #[arg(long, default_value_t = 3)]
    max_rect_total: u32,
    /// Cap on the multiplicity of each rectangle width.
    #[arg(long, default_value_t = 3)]
    max_rect_mult: u32,
    /// Worker threads for the instance sweep (default: all cores).
    #[arg(long)]
    jobs: Option<usize>,
}

impl BoundsArgs {
    fn bounds(&self) -> Bounds {
        Bounds {
            max_lambda_size: self.max_size,
            max_rect_total: self.max_rect_total,
            max_rect_mult: self.max_rect_mult,
        }
    }

    fn install_pool(&self) {
        if let Some(n) = self.jobs {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .ok();
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Core of a k-bounded partition.
    Core {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Bounded partition of a core.
    Bdd {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        kappa: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Residue reading word of a k-bounded partition.
    Word {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        lambda: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// h-monomial expanded in a Schur-like basis.
    Expand {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        lambda: String,
        #[arg(long, value_enum, default_value = "kkschur")]
        basis: BasisArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Product of two elements, in the K-k-Schur basis.
    Multiply {
        #[arg(long)]
        k: u32,
        /// First factor as SymFunc JSON.
        #[arg(long, conflicts_with_all = ["f_index", "f_empty"])]
        f: Option<String>,
        /// First factor as a single basis element.
        #[arg(long = "f-index", conflicts_with = "f_empty")]
        f_index: Option<String>,
        /// First factor is the unit.
        #[arg(long = "f-empty")]
        f_empty: bool,
        /// Second factor as SymFunc JSON.
        #[arg(long, conflicts_with_all = ["g_index", "g_empty"])]
        g: Option<String>,
        /// Second factor as a single basis element.
        #[arg(long = "g-index", conflicts_with = "g_empty")]
        g_index: Option<String>,
        /// Second factor is the unit.
        #[arg(long = "g-empty")]
        g_empty: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Exact quotient of two K-k-Schur basis elements.
    Quotient {
        #[arg(long)]
        k: u32,
        /// Numerator index; defaults to the union of --P and --lambda.
        #[arg(long)]
        num: Option<String>,
        /// Denominator index as a partition.
        #[arg(long, conflicts_with = "rects")]
        den: Option<String>,
        /// Denominator as rectangle tokens, e.g. 2^1,3^2.
        #[arg(long = "P")]
        rects: Option<String>,
        /// With --P: the extra part of the numerator index.
        #[arg(long)]
        lambda: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Pieri product h_r times a basis element.
    Pieri {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        r: u32,
        #[arg(long, value_enum, default_value = "kkschur")]
        basis: BasisArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check statements over a bounded instance range.
    Verify {
        #[arg(long)]
        k: u32,
        /// Comma-separated statement ids.
        #[arg(long)]
        statement: String,
        #[command(flatten)]
        bounds: BoundsArgs,
        /// Treat conjecture counterexamples as failures.
        #[arg(long)]
        strict: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Scan conjecture statements, reporting one JSON line per instance.
    Scan {
        #[arg(long)]
        k: u32,
        /// Comma-separated statement ids (default: all conjectures).
        #[arg(long)]
        statements: Option<String>,
        #[command(flatten)]
        bounds: BoundsArgs,
        /// Append the report to this file instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Checkpoint file enabling resume; defaults to a name derived from
        /// the scan configuration under $KKSCHUR_CACHE_DIR (or `.`).
        #[arg(long)]
        state: Option<PathBuf>,
        /// Process at most this many new instances, then checkpoint.
        #[arg(long)]
        limit: Option<u64>,
        /// Exit 1 if any scanned instance fails.
        #[arg(long)]
        strict: bool,
    },
    /// Minimal index of the quotient interval for a rectangle width.
    Minindex {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        t: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Quotient table over unions of distinct rectangles.
    Table1 {
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Minimal-index table for all bounded partitions up to a size.
    Table2 {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 6)]
        max_size: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Hasse diagram of the weak or strong order in DOT form.
    PosetDot {
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value = "strong")]
        order: OrderArg,
        #[arg(long, default_value_t = 6)]
        max_size: u32,
        #[command(flatten)]
        output: OutputArgs,
    },
}

fn parse_partition(s: &str) -> Result<Partition, Error> {
    let trimmed = s.trim();
    if trimmed.is_empty() {
        return Ok(Partition::empty());
    }
    let parts: Result<Vec<u32>, _> = trimmed
        .split(',')
        .map(|tok| tok.trim().parse::<u32>())
        .collect();
    let parts = parts.map_err(|e| Error::MalformedPartition(format!("{s:?}: {e}")))?;
    Partition::new(parts)
}

fn parse_symfunc(k: u32, s: &str) -> Result<SymFunc, Error> {
    let text = match s.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::PreconditionViolated(format!("cannot read {path}: {e}")))?,
        None => s.to_string(),
    };
    let f: SymFunc = serde_json::from_str(&text)
        .map_err(|e| Error::PreconditionViolated(format!("bad SymFunc JSON: {e}")))?;
    if f.k() != k {
        return Err(Error::LevelMismatch(f.k() + 1, k + 1));
    }
    Ok(f)
}

fn factor(
    k: u32,
    json: &Option<String>,
    index: &Option<String>,
    empty: bool,
) -> Result<SymFunc, Error> {
    if empty {
        return Ok(SymFunc::unit(k, Basis::KKSchur));
    }
    if let Some(idx) = index {
        return SymFunc::basis_element(k, Basis::KKSchur, parse_partition(idx)?);
    }
    if let Some(text) = json {
        return parse_symfunc(k, text);
    }
    Err(Error::PreconditionViolated(
        "specify the factor as JSON, an index, or empty".into(),
    ))
}

fn emit(output: &OutputArgs, content: &str) -> Result<(), Error> {
    match &output.out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Error::PreconditionViolated(format!("cannot write {path:?}: {e}"))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .and_then(|_| {
                    if content.ends_with('\n') {
                        Ok(())
                    } else {
                        stdout.write_all(b"\n")
                    }
                })
                .map_err(|e| Error::PreconditionViolated(format!("cannot write output: {e}")))
        }
    }
}

fn emit_symfunc(output: &OutputArgs, f: &SymFunc) -> Result<(), Error> {
    if output.pretty {
        emit(output, &f.to_string())
    } else {
        emit(output, &serde_json::to_string(f).expect("serializable"))
    }
}

fn run() -> Result<i32, Error> {
    let cli = Cli::parse();
    match cli.command {
        Command::Core { k, lambda, output } => {
            let ctx = LevelContext::new(k)?;
            let core = cores::to_core(&ctx, &parse_partition(&lambda)?)?;
            emit(
                &output,
                &serde_json::to_string(core.shape()).expect("serializable"),
            )?;
            Ok(0)
        }
        Command::Bdd { k, kappa, output } => {
            let ctx = LevelContext::new(k)?;
            let core = cores::Core::new(parse_partition(&kappa)?, k + 1)?;
            let bounded = cores::to_bounded(&ctx, &core)?;
            emit(
                &output,
                &serde_json::to_string(&bounded).expect("serializable"),
            )?;
            Ok(0)
        }
        Command::Word { k, lambda, output } => {
            let ctx = LevelContext::new(k)?;
            let word = cores::word(&ctx, &parse_partition(&lambda)?)?;
            let values: Vec<u32> = word.iter().map(|r| r.value()).collect();
            emit(
                &output,
                &serde_json::to_string(&values).expect("serializable"),
            )?;
            Ok(0)
        }
        Command::Expand {
            k,
            lambda,
            basis,
            output,
        } => {
            let ctx = LevelContext::new(k)?;
            let f = ring::expand_h(&ctx, &parse_partition(&lambda)?, basis.into())?;
            emit_symfunc(&output, &f)?;
            Ok(0)
        }
        Command::Multiply {
            k,
            f,
            f_index,
            f_empty,
            g,
            g_index,
            g_empty,
            output,
        } => {
            let ctx = LevelContext::new(k)?;
            let left = factor(k, &f, &f_index, f_empty)?;
            let right = factor(k, &g, &g_index, g_empty)?;
            let product = ring::multiply(&ctx, &left, &right)?;
            emit_symfunc(&output, &product)?;
            Ok(0)
        }
        Command::Quotient {
            k,
            num,
            den,
            rects,
            lambda,
            output,
        } => {
            let ctx = LevelContext::new(k)?;
            let den_index = match (&den, &rects) {
                (Some(d), None) => parse_partition(d)?,
                (None, Some(tokens)) => RectangleMultiset::parse(tokens)?.as_partition(k)?,
                _ => {
                    return Err(Error::PreconditionViolated(
                        "specify the denominator with --den or --P".into(),
                    ))
                }
            };
            let num_index = match (&num, &lambda) {
                (Some(n), _) => parse_partition(n)?,
                (None, Some(lam)) => den_index.union(&parse_partition(lam)?),
                (None, None) => {
                    return Err(Error::PreconditionViolated(
                        "specify the numerator with --num or --lambda".into(),
                    ))
                }
            };
            let num = SymFunc::basis_element(k, Basis::KKSchur, num_index)?;
            let den = SymFunc::basis_element(k, Basis::KKSchur, den_index)?;
            let q = ring::divide_exact(&ctx, &num, &den)?;
            emit_symfunc(&output, &q)?;
            Ok(0)
        }
        Command::Pieri {
            k,
            lambda,
            r,
            basis,
            output,
        } => {
            let ctx = LevelContext::new(k)?;
            let lam = parse_partition(&lambda)?;
            let f = match basis.into() {
                Basis::KKSchur => ring::pieri_kk(&ctx, &lam, r)?,
                Basis::KSchur => ring::pieri_k(&ctx, &lam, r)?,
                Basis::H => {
                    return Err(Error::PreconditionViolated(
                        "pieri expands in a Schur-like basis".into(),
                    ))
                }
            };
            emit_symfunc(&output, &f)?;
            Ok(0)
        }
        Command::Verify {
            k,
            statement,
            bounds,
            strict,
            output,
        } => {
            bounds.install_pool();
            let ctx = LevelContext::new(k)?;
            let b = bounds.bounds();
            let mut failed = false;
            let mut lines = Vec::new();
            for name in statement.split(',').filter(|s| !s.trim().is_empty()) {
                let id = StatementId::from_str(name.trim())?;
                let verdict = theorems::verify(&ctx, id, &b)?;
                if !verdict.passed() && (!id.is_conjecture() || strict) {
                    failed = true;
                }
                if output.pretty {
                    lines.push(format!(
                        "{} k={} checked={} counterexamples={} ({} ms)",
                        verdict.statement,
                        verdict.k,
                        verdict.checked,
                        verdict.counterexamples.len(),
                        verdict.ms
                    ));
                } else {
                    lines.push(serde_json::to_string(&verdict).expect("serializable"));
                }
            }
            emit(&output, &(lines.join("\n") + "\n"))?;
            Ok(if failed { 1 } else { 0 })
        }
        Command::Scan {
            k,
            statements,
            bounds,
            report,
            state,
            limit,
            strict,
        } => {
            bounds.install_pool();
            let ctx = LevelContext::new(k)?;
            let ids: Vec<StatementId> = match statements {
                Some(list) => list
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(|s| StatementId::from_str(s.trim()))
                    .collect::<Result<_, _>>()?,
                None => StatementId::all()
                    .iter()
                    .copied()
                    .filter(|id| id.is_conjecture())
                    .collect(),
            };
            let outcome = scan::run(&ctx, &ids, &bounds.bounds(), report, state, limit)?;
            eprintln!(
                "scan: {} instances completed, {} failures",
                outcome.completed, outcome.failures
            );
            Ok(if strict && outcome.failures > 0 { 1 } else { 0 })
        }
        Command::Minindex {
            k,
            lambda,
            t,
            output,
        } => {
            let ctx = LevelContext::new(k)?;
            match theorems::minindex(&ctx, &parse_partition(&lambda)?, t)? {
                MinindexOutcome::Mu(mu) => {
                    if output.pretty {
                        emit(&output, &format!("mu={mu}"))?;
                    } else {
                        emit(&output, &serde_json::json!({ "mu": mu }).to_string())?;
                    }
                    Ok(0)
                }
                MinindexOutcome::Failure(f) => {
                    if output.pretty {
                        emit(&output, &format!("failure: {f}"))?;
                    } else {
                        emit(
                            &output,
                            &serde_json::json!({ "failure": f.to_string() }).to_string(),
                        )?;
                    }
                    Ok(1)
                }
            }
        }
        Command::Table1 { k, output } => {
            let ctx = LevelContext::new(k)?;
            let cells = tables::table1(&ctx)?;
            let mut lines = Vec::with_capacity(cells.len());
            for cell in &cells {
                if output.pretty {
                    lines.push(format!(
                        "Q={} lambda={}: {}",
                        cell.q, cell.lambda, cell.quotient
                    ));
                } else {
                    lines.push(serde_json::to_string(cell).expect("serializable"));
                }
            }
            emit(&output, &(lines.join("\n") + "\n"))?;
            Ok(0)
        }
        Command::Table2 {
            k,
            max_size,
            output,
        } => {
            let ctx = LevelContext::new(k)?;
            let rows = tables::table2(&ctx, max_size)?;
            let mut lines = Vec::with_capacity(rows.len());
            for row in &rows {
                if output.pretty {
                    let cols: Vec<String> = row
                        .minindex
                        .iter()
                        .map(|e| match (&e.mu, &e.failure) {
                            (Some(mu), _) => format!("t={}: mu={}", e.t, mu),
                            (None, Some(f)) => format!("t={}: failure: {f}", e.t),
                            _ => unreachable!(),
                        })
                        .collect();
                    lines.push(format!(
                        "lambda={} core={} | {}",
                        row.lambda,
                        row.core,
                        cols.join(" | ")
                    ));
                } else {
                    lines.push(serde_json::to_string(row).expect("serializable"));
                }
            }
            emit(&output, &(lines.join("\n") + "\n"))?;
            Ok(0)
        }
        Command::PosetDot {
            k,
            order,
            max_size,
            output,
        } => {
            let ctx = LevelContext::new(k)?;
            let order = match order {
                OrderArg::Weak => PosetOrder::Weak,
                OrderArg::Strong => PosetOrder::Strong,
            };
            let dot = tables::poset_dot(&ctx, order, max_size)?;
            emit(&output, &dot)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::NotDivisible { .. } => 1,
                _ => 2,
            };
            ExitCode::from(code)
        }
    }
}
