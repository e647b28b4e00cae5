use std::io::{self, Write};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;

use toric_dt::oracle::count::{budget_from_env, BUDGET_ENV};
use toric_dt::oracle::verify::{dimension_vectors, theorem_a_check, CheckRecord, Status};
use toric_dt::oracle::suites;
use toric_dt::roots::{positive_roots, Decomposition};
use toric_dt::series::{dtpt_series, universal_series, z_zeta, CurveSeries};
use toric_dt::{Error, MotiveSeries, QuiverWithCut, SigmaPartition, StabilityParam};

#[derive(Parser)]
#[command(name = "toric-dt", version, about = "Motivic DT series of toric crepant resolutions")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for the parallel parts (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Clone)]
struct Model {
    #[arg(long, default_value_t = 1)]
    n0: usize,
    #[arg(long, default_value_t = 0)]
    n1: usize,
    /// Row sequence such as `010`; defaults to the special partition.
    #[arg(long)]
    sigma: Option<String>,
}

impl Model {
    fn sigma(&self) -> Result<SigmaPartition, Error> {
        match &self.sigma {
            Some(bits) => SigmaPartition::parse(self.n0, self.n1, bits),
            None => SigmaPartition::special(self.n0, self.n1),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print a generating series.
    Series {
        #[arg(value_enum)]
        kind: SeriesKind,
        #[command(flatten)]
        model: Model,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        /// Comma separated, rationals allowed; framed series only.
        #[arg(long, allow_hyphen_values = true)]
        zeta_base: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        zeta_eps: Option<String>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        check: VerifyKind,
        #[command(flatten)]
        model: Model,
        #[arg(long, default_value_t = 4)]
        degree: u32,
        /// Primes for point counts.
        #[arg(long, value_delimiter = ',', default_value = "2,3")]
        primes: Vec<u64>,
        /// A single dimension vector, e.g. `1,1`; otherwise all up to `--degree`.
        #[arg(long, value_delimiter = ',')]
        alpha: Option<Vec<u32>>,
        /// Largest search space for one count.
        #[arg(long, env = BUDGET_ENV)]
        budget: Option<u64>,
        #[arg(long, default_value_t = 4)]
        max_boxes: u32,
        /// Number of product factors `j <= k` in the q-series check.
        #[arg(long, default_value_t = 30)]
        k: u32,
        /// Number of vertices in the q-series check.
        #[arg(long, default_value_t = 2)]
        n: usize,
    },
    /// List the positive roots with their parity.
    Roots {
        #[command(flatten)]
        model: Model,
        #[arg(long, default_value_t = 4)]
        degree: u32,
    },
    /// Flip the partition at a non-loop vertex.
    Flip {
        #[command(flatten)]
        model: Model,
        #[arg(long)]
        k: usize,
    },
    /// Print the quiver, its default or special cut and the relations.
    Quiver {
        #[command(flatten)]
        model: Model,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesKind {
    Universal,
    Framed,
    Dt,
    Pt,
    Points,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VerifyKind {
    ThmA,
    Appendix,
    Factorization,
    Dtpt,
    Qseries,
    Reflection,
}

/// Prints a line, treating a closed pipe as the end of output.
fn emit(line: impl std::fmt::Display) -> Result<(), Error> {
    match writeln!(io::stdout().lock(), "{line}") {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(Error::Invalid(e.to_string())),
        _ => Ok(()),
    }
}

fn to_json<T: serde::Serialize + ?Sized>(value: &T) -> Result<String, Error> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Invalid(e.to_string()))
}

fn parse_vector(s: &str) -> Result<Vec<BigRational>, Error> {
    s.split(',')
        .map(|x| BigRational::from_str(x.trim()).map_err(|e| Error::Invalid(format!("{x:?}: {e}"))))
        .collect()
}

/// Special cut on the special partition, the default cut elsewhere.
fn quiver_for(sigma: &SigmaPartition) -> Result<QuiverWithCut, Error> {
    if sigma.special_sets().is_some() {
        QuiverWithCut::with_special_cut(sigma)
    } else {
        QuiverWithCut::with_default_cut(sigma)
    }
}

fn print_series(s: &MotiveSeries, format: Format) -> Result<(), Error> {
    match format {
        Format::Json => emit(to_json(s)?)?,
        Format::Text => {
            for (e, c) in s.terms() {
                emit(format_args!("{e:?}\t{c}"))?;
            }
        }
    }
    Ok(())
}

fn run_series(kind: SeriesKind, model: &Model, degree: u32, base: Option<&str>, eps: Option<&str>, format: Format) -> Result<(), Error> {
    let sigma = model.sigma()?;
    let n = sigma.n();
    let s = match kind {
        SeriesKind::Universal => universal_series(&sigma, degree),
        SeriesKind::Framed => {
            let zeta = match base {
                Some(b) => {
                    let b = parse_vector(b)?;
                    let e = match eps {
                        Some(e) => parse_vector(e)?,
                        None => vec![BigRational::from_integer(0.into()); b.len()],
                    };
                    StabilityParam::new(b, e)?
                }
                None => StabilityParam::ncdt(n),
            };
            z_zeta(&sigma, &zeta, degree)?
        }
        SeriesKind::Dt => dtpt_series(&sigma, CurveSeries::Dt, degree),
        SeriesKind::Pt => dtpt_series(&sigma, CurveSeries::Pt, degree),
        SeriesKind::Points => dtpt_series(&sigma, CurveSeries::ZeroDim, degree),
    };
    print_series(&s, format)
}

struct VerifyOptions {
    degree: u32,
    primes: Vec<u64>,
    alpha: Option<Vec<u32>>,
    budget: u64,
    max_boxes: u32,
    k: u32,
    n: usize,
}

fn run_verify(check: VerifyKind, model: &Model, o: &VerifyOptions) -> Result<Vec<CheckRecord>, Error> {
    let sigma = || model.sigma();
    Ok(match check {
        VerifyKind::ThmA => {
            let sigma = sigma()?;
            let q = quiver_for(&sigma)?;
            let alphas = match &o.alpha {
                Some(a) => vec![a.clone()],
                None => dimension_vectors(sigma.n(), o.degree),
            };
            let cap = alphas.iter().map(|a| a.iter().sum::<u32>()).max().unwrap_or(0);
            let universal = universal_series(&sigma, cap);
            let mut out = Vec::new();
            for a in &alphas {
                if a.len() != sigma.n() {
                    return Err(Error::LengthMismatch {
                        expected: sigma.n(),
                        got: a.len(),
                    });
                }
                for &p in &o.primes {
                    out.push(theorem_a_check(&q, &universal, a, p, o.budget));
                }
            }
            out
        }
        VerifyKind::Appendix => suites::appendix(&sigma()?, o.max_boxes)?,
        VerifyKind::Factorization => suites::factorization(&sigma()?, o.degree)?,
        VerifyKind::Dtpt => suites::dtpt(&sigma()?, o.degree)?,
        VerifyKind::Qseries => suites::qseries(o.n, o.degree, o.k)?,
        VerifyKind::Reflection => suites::reflection(&sigma()?, o.degree),
    })
}

fn print_records(records: &[CheckRecord], format: Format) -> Result<(), Error> {
    match format {
        Format::Json => {
            emit(to_json(records)?)?
        }
        Format::Text => {
            for r in records {
                emit(r)?;
            }
        }
    }
    Ok(())
}

fn run_roots(model: &Model, degree: u32, format: Format) -> Result<(), Error> {
    let sigma = model.sigma()?;
    let roots = positive_roots(&sigma, degree);
    match format {
        Format::Json => {
            let items: Vec<_> = roots
                .iter()
                .map(|r| {
                    let decomposition = match r.decomposition {
                        Decomposition::Real { a, b, n, positive } => {
                            json!({"type": "real", "a": a, "b": b, "n": n, "sign": if positive { "+" } else { "-" }})
                        }
                        Decomposition::Imaginary { n } => json!({"type": "imaginary", "n": n}),
                    };
                    json!({"coords": r.coords, "kind": format!("{:?}", r.kind), "decomposition": decomposition})
                })
                .collect();
            emit(to_json(&items)?)?;
        }
        Format::Text => {
            for r in &roots {
                emit(format_args!("{:?}\t{:?}\t{:?}", r.coords, r.kind, r.decomposition))?;
            }
        }
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    if let Some(w) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| Error::Invalid(e.to_string()))?;
    }
    let format = cli.format;
    match cli.command {
        Command::Series {
            kind,
            model,
            degree,
            zeta_base,
            zeta_eps,
        } => run_series(kind, &model, degree, zeta_base.as_deref(), zeta_eps.as_deref(), format)?,
        Command::Verify {
            check,
            model,
            degree,
            primes,
            alpha,
            budget,
            max_boxes,
            k,
            n,
        } => {
            let opts = VerifyOptions {
                degree,
                primes,
                alpha,
                budget: budget.unwrap_or_else(budget_from_env),
                max_boxes,
                k,
                n,
            };
            let records = run_verify(check, &model, &opts)?;
            print_records(&records, format)?;
            if records.iter().any(|r| r.status == Status::Fail) {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Roots { model, degree } => run_roots(&model, degree, format)?,
        Command::Flip { model, k } => {
            let f = model.sigma()?.flip(k)?;
            match format {
                Format::Json => emit(json!({"n0": model.n0, "n1": model.n1, "sigma": f.bits(), "loops": f.loop_set()}))?,
                Format::Text => emit(f.bits())?,
            }
        }
        Command::Quiver { model } => {
            let dump = quiver_for(&model.sigma()?)?.dump();
            match format {
                Format::Json => {
                    emit(to_json(&dump)?)?
                }
                Format::Text => {
                    for a in &dump.arrows {
                        let cut = if a.in_cut { " (cut)" } else { "" };
                        emit(format_args!("{}: {} -> {}{cut}", a.name, a.src, a.dst))?;
                    }
                    for r in &dump.relations {
                        let w = |v: &[toric_dt::Arrow]| v.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(" ");
                        emit(format_args!("d/d{}: {} - {}", r.arrow, w(&r.relation.plus), w(&r.relation.minus)))?;
                    }
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
