mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use rootgeo::closed_forms::{characteristic_data, classify_family, limit_set};
use rootgeo::exact::rational::from_f64;
use rootgeo::exec::Strategy;
use rootgeo::geometry::{
    empirical_limits, limit_set_check, real_zero_onset, verify_equal_case, verify_interlacing,
};
use rootgeo::roots::{complex_roots, RealRootIsolator, DEFAULT_TOL};
use rootgeo::sequence::{max_n_from_env, SequenceCache, MAX_N_ENV};
use rootgeo::verify::verify_identities;
use rootgeo::{Error, RecurrenceParams, Regime};

use output::{emit, Format, Table};

/// Root geometry of W_n = (az+b) W_{n-1} + (cz+d) W_{n-2}, W_0 = 1, W_1 = z.
#[derive(Parser, Debug)]
#[command(name = "rootgeo", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// Coefficients as exact rationals: "239/1000", "3", or "0.239".
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
    #[arg(long, allow_hyphen_values = true)]
    c: String,
    #[arg(long, allow_hyphen_values = true)]
    d: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Significant digits of floating approximations.
    #[arg(long, default_value_t = 15, value_parser = clap::value_parser!(u16).range(1..=17))]
    digits: u16,
}

#[derive(Args, Debug)]
struct Range {
    /// A single index.
    #[arg(long, conflicts_with_all = ["n_min", "n_max"])]
    n: Option<usize>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum RootMode {
    /// Every root in the complex plane, real ones certified by Sturm.
    Cloud,
    /// Isolating intervals of the real roots only.
    Exact,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the coefficients of W_n, lowest degree first.
    Gen {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        range: Range,
    },
    /// Family class, critical points and limit-set description.
    Classify {
        #[command(flatten)]
        common: Common,
    },
    /// Roots of W_n for one index or a range.
    Roots {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        range: Range,
        #[arg(long, value_enum, default_value = "cloud")]
        mode: RootMode,
        /// Radius or interval width the roots are refined to.
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Recurrence, generating-function, closed-value and sign-table checks.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
        /// Drop a named check from the report (repeatable).
        #[arg(long)]
        skip: Vec<String>,
    },
    /// Interval counts and strict interlacing; requires ad <= bc.
    Interlace {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        /// Let the tail-order assertion decide the exit code as well.
        #[arg(long)]
        extended: bool,
    },
    /// BKW verdicts at critical points and root-cloud distances.
    Limits {
        #[command(flatten)]
        common: Common,
        /// Indices of the root clouds (repeatable).
        #[arg(long, default_values_t = [20, 40])]
        n: Vec<usize>,
        /// Interior points sampled from [x_delta-, x_delta+].
        #[arg(long, default_value_t = 16)]
        samples: usize,
        /// Zero tolerance of the floating BKW comparisons.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        root_tol: f64,
    },
    /// Real-zero onset table; requires ad > bc.
    Onset {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 20)]
        n_max: usize,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_)
            | Error::NonPositiveParameter { .. }
            | Error::WrongRegime(_)
            | Error::IndexTooLarge { .. }
            | Error::InvalidArgument(_) => Failure::Usage(e.to_string()),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

impl Common {
    fn params(&self) -> Result<RecurrenceParams, Failure> {
        Ok(RecurrenceParams::parse(&self.a, &self.b, &self.c, &self.d)?)
    }

    fn emit(&self, doc: Value, table: Table) -> Result<(), Failure> {
        emit(
            doc,
            self.format,
            table,
            self.digits as usize,
            self.output.as_deref(),
        )
        .map_err(Failure::Runtime)
    }
}

fn check_cap(n: usize) -> Result<(), Failure> {
    let cap = max_n_from_env();
    if n > cap {
        return Err(Failure::Usage(format!(
            "index {n} exceeds the degree cap {cap} (raise it with {MAX_N_ENV})"
        )));
    }
    Ok(())
}

impl Range {
    fn indices(&self) -> Result<std::ops::RangeInclusive<usize>, Failure> {
        let r = match (self.n, self.n_min, self.n_max) {
            (Some(n), _, _) => n..=n,
            (None, lo, Some(hi)) => lo.unwrap_or(0)..=hi,
            (None, _, None) => return Err(Failure::Usage("give --n or --n-max".into())),
        };
        if r.is_empty() {
            return Err(Failure::Usage(format!(
                "empty range {}..={}",
                r.start(),
                r.end()
            )));
        }
        check_cap(*r.end())?;
        Ok(r)
    }
}

fn regime_note(regime: Regime) -> &'static str {
    match regime {
        Regime::Below => {
            "ad < bc: every W_n is real-rooted; `interlace` checks the interval counts"
        }
        Regime::Equal => {
            "ad = bc: every W_n is real-rooted; `interlace` checks the equality-case statements"
        }
        Regime::Above => {
            "ad > bc: W_n has non-real roots for large n; `onset` checks the real-zero guarantees"
        }
    }
}

fn gen(common: &Common, range: &Range) -> Outcome {
    let p = common.params()?;
    let r = range.indices()?;
    let mut cache = SequenceCache::new(p.clone());
    let w = cache.prefix(*r.end())?;
    let polys: Vec<Value> = r
        .clone()
        .map(|n| json!({"n": n, "coefficients": to_value(&w[n])}))
        .collect();
    let rows: Vec<Value> = r
        .flat_map(|n| {
            w[n].to_strings()
                .into_iter()
                .enumerate()
                .map(move |(k, c)| json!({"n": n, "k": k, "coefficient": c}))
        })
        .collect();
    let doc = match common.format {
        Format::Json => json!({"params": to_value(&p), "polys": polys}),
        Format::Csv => json!({"rows": rows}),
    };
    common.emit(
        doc,
        if common.format == Format::Csv {
            Table::Rows("rows")
        } else {
            Table::Flatten
        },
    )?;
    Ok(true)
}

fn classify(common: &Common) -> Outcome {
    let p = common.params()?;
    let doc = json!({
        "params": to_value(&p),
        "regime": to_value(&p.regime()),
        "note": regime_note(p.regime()),
        "family": to_value(&classify_family(&p)),
        "critical_points": to_value(&characteristic_data(&p)),
        "limit_set": to_value(&limit_set(&p)),
    });
    common.emit(doc, Table::Flatten)?;
    Ok(true)
}

#[derive(Serialize)]
struct CloudRow {
    n: usize,
    re: f64,
    im: f64,
    radius: f64,
    is_real: bool,
    multiplicity: usize,
}

#[derive(Serialize)]
struct ExactRow {
    n: usize,
    lo: String,
    hi: String,
    multiplicity: usize,
    approx: f64,
}

fn roots(common: &Common, range: &Range, mode: RootMode, tol: f64) -> Outcome {
    if !(tol > 0.0 && tol.is_finite()) {
        return Err(Failure::Usage(format!("--tol must be positive, got {tol}")));
    }
    let p = common.params()?;
    let r = range.indices()?;
    let w = SequenceCache::new(p.clone()).prefix(*r.end())?.to_vec();
    let per_n: Vec<Result<Vec<Value>, Error>> =
        Strategy::default().map_range(*r.start()..*r.end() + 1, |n| match mode {
            RootMode::Cloud => Ok(complex_roots(&w[n], tol)?
                .into_iter()
                .map(|z| {
                    to_value(&CloudRow {
                        n,
                        re: z.re,
                        im: z.im,
                        radius: z.radius,
                        is_real: z.is_real(),
                        multiplicity: z.multiplicity,
                    })
                })
                .collect()),
            RootMode::Exact => {
                let iso = RealRootIsolator::new(&w[n])?;
                let width = from_f64(tol);
                Ok(iso
                    .isolate()
                    .iter()
                    .map(|root| {
                        let root = iso.refine(root, &width);
                        to_value(&ExactRow {
                            n,
                            lo: root.lo.to_string(),
                            hi: root.hi.to_string(),
                            multiplicity: root.multiplicity,
                            approx: root.approx(),
                        })
                    })
                    .collect())
            }
        });
    let mut rows = Vec::new();
    for x in per_n {
        rows.extend(x?);
    }
    let doc = json!({"params": to_value(&p), "tol": tol, "rows": rows});
    match common.format {
        Format::Json => common.emit(doc, Table::Flatten)?,
        Format::Csv => common.emit(doc, Table::Rows("rows"))?,
    }
    Ok(true)
}

fn verify(common: &Common, n_max: usize, skip: &[String]) -> Outcome {
    let p = common.params()?;
    check_cap(n_max)?;
    let mut report = verify_identities(&p, n_max)?;
    for name in skip {
        if report.check(name).is_none() {
            let known: Vec<_> = report.checks.iter().map(|c| c.name).collect();
            return Err(Failure::Usage(format!(
                "unknown check {name:?}; known: {}",
                known.join(", ")
            )));
        }
    }
    report.checks.retain(|c| !skip.iter().any(|s| s == c.name));
    let passed = report.passed();
    common.emit(to_value(&report), Table::Flatten)?;
    Ok(passed)
}

fn interlace(common: &Common, n_max: usize, extended: bool) -> Outcome {
    let p = common.params()?;
    check_cap(n_max)?;
    let report = match p.regime() {
        Regime::Below => verify_interlacing(&p, n_max)?,
        Regime::Equal => verify_equal_case(&p, n_max)?,
        Regime::Above => return Err(Failure::Usage(regime_note(Regime::Above).into())),
    };
    let passed = report.passed() && (!extended || report.extended_failures.is_empty());
    common.emit(to_value(&report), Table::Flatten)?;
    Ok(passed)
}

fn limits(common: &Common, ns: &[usize], samples: usize, tol: f64, root_tol: f64) -> Outcome {
    let p = common.params()?;
    for &n in ns {
        check_cap(n)?;
    }
    let check = limit_set_check(&p, samples, tol);
    let clouds = ns
        .iter()
        .map(|&n| empirical_limits(&p, n, root_tol).map(|e| to_value(&e)))
        .collect::<Result<Vec<_>, _>>()?;
    let passed = check.passed();
    common.emit(
        json!({"check": to_value(&check), "clouds": clouds}),
        Table::Flatten,
    )?;
    Ok(passed)
}

fn onset(common: &Common, n_max: usize) -> Outcome {
    let p = common.params()?;
    check_cap(n_max)?;
    if p.regime() != Regime::Above {
        return Err(Failure::Usage(regime_note(p.regime()).into()));
    }
    let report = real_zero_onset(&p, n_max)?;
    let passed = report.passed();
    common.emit(to_value(&report), Table::Flatten)?;
    Ok(passed)
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Gen { common, range } => gen(common, range),
        Command::Classify { common } => classify(common),
        Command::Roots {
            common,
            range,
            mode,
            tol,
        } => roots(common, range, *mode, *tol),
        Command::Verify {
            common,
            n_max,
            skip,
        } => verify(common, *n_max, skip),
        Command::Interlace {
            common,
            n_max,
            extended,
        } => interlace(common, *n_max, *extended),
        Command::Limits {
            common,
            n,
            samples,
            tol,
            root_tol,
        } => limits(common, n, *samples, *tol, *root_tol),
        Command::Onset { common, n_max } => onset(common, *n_max),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("rootgeo: verification failed");
            ExitCode::from(1)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("rootgeo: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("rootgeo: {msg}");
            ExitCode::from(2)
        }
    }
}
