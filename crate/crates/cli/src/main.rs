//! `degamma`: evaluate, verify, sample and tabulate the degenerate gamma
//! family from the command line.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or domain
//! error.

mod args;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Map, Value};

use args::{Cli, Command, EvalArgs, EvalKind, Format, GammaMethodArg, Lambda, TableCommand};
use degamma_core::harness::{run_suite, RunConfig, SuiteSummary, CONFIG_ENV_VAR, SUITE_NAMES};
use degamma_core::stirling::stirling_triangle;
use degamma_core::{
    binom_lambda, cdf, degen_mgf_coefficient, exp_degen, falling_factorial_degen, gamma_degen,
    gamma_degen_with, log_degen, mean, moment, pdf, sample, stream_rng, summarize, variance,
    DistParams, Error, GammaMethod, VerificationReport,
};

enum Failure {
    /// Bad arguments, configuration or a violated precondition.
    Usage(String),
    /// The command ran but at least one check failed.
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(format!("csv error: {e}"))
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> CmdResult {
    let mut cfg = load_config(&cli)?;
    let format = match cli.format {
        Some(f) => f,
        None => match cfg.output_format {
            degamma_core::harness::OutputFormat::Json => Format::Json,
            degamma_core::harness::OutputFormat::Csv => Format::Csv,
        },
    };
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Eval(ref a) => eval(a, format, &mut out),
        Command::Verify(ref a) => {
            if let Some(n) = a.mc_samples {
                cfg.mc_samples = n;
            }
            cfg.validate()?;
            verify(&a.suite, &cfg, format, &mut out)
        }
        Command::Sample(ref a) => sample_cmd(a, cfg.seed, format, &mut out),
        // tables are CSV unless JSON is asked for explicitly
        Command::Table(ref t) => table(t, cli.format.unwrap_or(Format::Csv), &mut out),
    };
    out.flush()?;
    result
}

fn load_config(cli: &Cli) -> Result<RunConfig, Failure> {
    let path = cli.config.clone().or_else(|| {
        std::env::var_os(CONFIG_ENV_VAR)
            .filter(|p| !p.is_empty())
            .map(Into::into)
    });
    let mut cfg = match path {
        Some(path) => {
            let text = std::fs::read_to_string(&path).map_err(|e| {
                Failure::Usage(format!("cannot read config {}: {e}", path.display()))
            })?;
            RunConfig::parse(&text)?
        }
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    for pair in &cli.tolerances {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("--tolerance expects KEY=VAL, got {pair:?}")))?;
        cfg.set_tolerance(key.trim(), value.trim())?;
    }
    Ok(cfg)
}

fn require<T: Copy>(value: Option<T>, flag: &str, kind: EvalKind) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("eval {} requires --{flag}", kind_name(kind))))
}

fn require_lambda(value: &Option<Lambda>, kind: EvalKind) -> Result<f64, Failure> {
    value
        .as_ref()
        .map(|l| l.value)
        .ok_or_else(|| Failure::Usage(format!("eval {} requires --lambda", kind_name(kind))))
}

fn eval_params(a: &EvalArgs) -> Result<DistParams, Failure> {
    let alpha = require(a.alpha, "alpha", a.kind)?;
    let beta = require(a.beta, "beta", a.kind)?;
    let lambda = require_lambda(&a.lambda, a.kind)?;
    Ok(DistParams::new(alpha, beta, lambda)?)
}

fn eval(a: &EvalArgs, format: Format, out: &mut impl Write) -> CmdResult {
    let mut inputs = Map::new();
    let mut record = |k: &str, v: Value| {
        inputs.insert(k.to_string(), v);
    };
    let (value, method): (f64, String) = match a.kind {
        EvalKind::Gamma => {
            let s = require(a.s, "s", a.kind)?;
            let lambda = require_lambda(&a.lambda, a.kind)?;
            record("s", json!(s));
            record("lambda", json!(lambda));
            let v = match a.method {
                GammaMethodArg::Auto => gamma_degen(s, lambda)?,
                GammaMethodArg::IntegerClosedForm => {
                    gamma_degen_with(s, lambda, GammaMethod::IntegerClosedForm)?
                }
                GammaMethodArg::BetaClosedForm => {
                    gamma_degen_with(s, lambda, GammaMethod::BetaClosedForm)?
                }
                GammaMethodArg::Quadrature => gamma_degen_with(s, lambda, GammaMethod::Quadrature)?,
                GammaMethodArg::Recurrence => gamma_degen_with(s, lambda, GammaMethod::Recurrence)?,
            };
            (v.value, v.method.to_string())
        }
        EvalKind::Exp => {
            let (x, t) = (require(a.x, "x", a.kind)?, require(a.t, "t", a.kind)?);
            let lambda = require_lambda(&a.lambda, a.kind)?;
            record("x", json!(x));
            record("t", json!(t));
            record("lambda", json!(lambda));
            (exp_degen(x, t, lambda)?, "closed_form".into())
        }
        EvalKind::Log => {
            let t = require(a.t, "t", a.kind)?;
            let lambda = require_lambda(&a.lambda, a.kind)?;
            record("t", json!(t));
            record("lambda", json!(lambda));
            (log_degen(t, lambda)?, "closed_form".into())
        }
        EvalKind::FallingFactorial | EvalKind::Binom => {
            let (x, n) = (require(a.x, "x", a.kind)?, require(a.n, "n", a.kind)?);
            let lambda = require_lambda(&a.lambda, a.kind)?;
            record("x", json!(x));
            record("n", json!(n));
            record("lambda", json!(lambda));
            let v = if a.kind == EvalKind::Binom {
                binom_lambda(x, n, lambda)
            } else {
                falling_factorial_degen(x, n, lambda)
            };
            (v, "product".into())
        }
        EvalKind::Pdf | EvalKind::Cdf => {
            let p = eval_params(a)?;
            let x = require(a.x, "x", a.kind)?;
            record_params(&mut record, &p);
            record("x", json!(x));
            if a.kind == EvalKind::Pdf {
                (pdf(&p, x), "closed_form".into())
            } else {
                (cdf(&p, x)?, "incomplete_beta".into())
            }
        }
        EvalKind::Moment => {
            let p = eval_params(a)?;
            let n = require(a.n, "n", a.kind)?;
            record_params(&mut record, &p);
            record("n", json!(n));
            let v = moment(&p, n).value.ok_or_else(|| {
                Error::Nonexistence(format!(
                    "n + alpha >= 1/lambda (n = {n}, alpha = {}, 1/lambda = {})",
                    p.alpha(),
                    1.0 / p.lambda()
                ))
            })?;
            (v, "closed_form".into())
        }
        EvalKind::Mean => {
            let p = eval_params(a)?;
            record_params(&mut record, &p);
            (mean(&p)?, "closed_form".into())
        }
        EvalKind::Variance => {
            let p = eval_params(a)?;
            record_params(&mut record, &p);
            (variance(&p)?, "closed_form".into())
        }
        EvalKind::MgfCoefficient => {
            let n = require(a.n, "n", a.kind)?;
            let lambda = require_lambda(&a.lambda, a.kind)?;
            record("n", json!(n));
            record("lambda", json!(lambda));
            (degen_mgf_coefficient(n, lambda)?, "closed_form".into())
        }
    };
    match format {
        Format::Json => {
            let obj = json!({
                "kind": kind_name(a.kind),
                "inputs": inputs,
                "value": value,
                "method": method,
            });
            writeln!(out, "{obj}")?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["kind", "value", "method"])?;
            w.write_record([kind_name(a.kind), value.to_string(), method])?;
            w.flush()?;
        }
    }
    Ok(())
}

fn kind_name(kind: EvalKind) -> String {
    use clap::ValueEnum;
    kind.to_possible_value()
        .map(|v| v.get_name().to_string())
        .unwrap_or_default()
}

fn record_params(record: &mut impl FnMut(&str, Value), p: &DistParams) {
    record("alpha", json!(p.alpha()));
    record("beta", json!(p.beta()));
    record("lambda", json!(p.lambda()));
}

fn verify(suite: &str, cfg: &RunConfig, format: Format, out: &mut impl Write) -> CmdResult {
    let suites: Vec<&str> = if suite == "all" {
        SUITE_NAMES.to_vec()
    } else {
        vec![suite]
    };
    let mut reports = Vec::new();
    for name in &suites {
        reports.extend(run_suite(name, cfg)?);
    }
    let summary = SuiteSummary::from_reports(suite, &reports);
    match format {
        Format::Json => {
            for r in &reports {
                writeln!(
                    out,
                    "{}",
                    serde_json::to_string(r).expect("report serializes")
                )?;
            }
            writeln!(
                out,
                "{}",
                serde_json::to_string(&summary).expect("summary serializes")
            )?;
        }
        Format::Csv => {
            write_reports_csv(&reports, out)?;
            eprintln!(
                "{}",
                serde_json::to_string(&summary).expect("summary serializes")
            );
        }
    }
    if summary.failed > 0 {
        Err(Failure::Checks)
    } else {
        Ok(())
    }
}

fn write_reports_csv(reports: &[VerificationReport], out: &mut impl Write) -> CmdResult {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "check_id",
        "inputs",
        "expected",
        "actual",
        "abs_error",
        "rel_error",
        "tolerance",
        "passed",
        "runtime_ms",
    ])?;
    for r in reports {
        let inputs: Vec<String> = r.inputs.iter().map(|(k, v)| format!("{k}={v}")).collect();
        w.write_record([
            r.check_id.clone(),
            inputs.join(";"),
            r.expected.to_string(),
            r.actual.to_string(),
            r.abs_error.to_string(),
            r.rel_error.to_string(),
            r.tolerance.to_string(),
            r.passed.to_string(),
            r.runtime_ms.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn sample_cmd(a: &args::SampleArgs, seed: u64, format: Format, out: &mut impl Write) -> CmdResult {
    let p = DistParams::new(a.dist.alpha, a.dist.beta, a.dist.lambda.value)?;
    if a.n == 0 {
        return Err(Failure::Usage("--n must be positive".into()));
    }
    let xs = sample(&p, &mut stream_rng(seed, 0), a.n);
    let summary = summarize(&p, &xs)?;
    let record = json!({
        "alpha": p.alpha(),
        "beta": p.beta(),
        "lambda": p.lambda(),
        "seed": seed,
        "summary": summary,
        "expected_mean": mean(&p).ok(),
        "expected_variance": variance(&p).ok(),
    });
    if a.summary_only {
        writeln!(out, "{record}")?;
        return Ok(());
    }
    match &a.output {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write_variates(&xs, format, &mut file)?;
            file.flush()?;
        }
        None => write_variates(&xs, format, out)?,
    }
    eprintln!("{record}");
    Ok(())
}

fn write_variates(xs: &[f64], format: Format, out: &mut impl Write) -> CmdResult {
    match format {
        Format::Json => {
            for x in xs {
                writeln!(out, "{x}")?;
            }
        }
        Format::Csv => {
            writeln!(out, "index,value")?;
            for (i, x) in xs.iter().enumerate() {
                writeln!(out, "{i},{x}")?;
            }
        }
    }
    Ok(())
}

fn table(t: &TableCommand, format: Format, out: &mut impl Write) -> CmdResult {
    let (header, rows): (Vec<&str>, Vec<Vec<String>>) = match t {
        TableCommand::Stirling {
            kind,
            lambda,
            max_n,
        } => {
            let triangle = stirling_triangle(*kind, &lambda.exact, *max_n);
            let rows = triangle
                .entries()
                .map(|(n, l, v)| {
                    vec![
                        n.to_string(),
                        l.to_string(),
                        v.numer().to_string(),
                        v.denom().to_string(),
                    ]
                })
                .collect();
            (vec!["n", "l", "numerator", "denominator"], rows)
        }
        TableCommand::Gamma { lambda, s_grid } => {
            let mut rows = Vec::new();
            for &s in &s_grid.0 {
                let v = gamma_degen(s, lambda.value)?;
                rows.push(vec![
                    s.to_string(),
                    lambda.value.to_string(),
                    v.value.to_string(),
                    v.method.to_string(),
                ]);
            }
            (vec!["s", "lambda", "value", "method"], rows)
        }
        TableCommand::Moments { dist, n_max } => {
            let p = DistParams::new(dist.alpha, dist.beta, dist.lambda.value)?;
            let mut rows = Vec::new();
            for n in 0..=*n_max {
                let v = moment(&p, n).value.ok_or_else(|| {
                    Error::Nonexistence(format!(
                        "n + alpha >= 1/lambda (n = {n}, alpha = {}, 1/lambda = {})",
                        p.alpha(),
                        1.0 / p.lambda()
                    ))
                })?;
                rows.push(vec![n.to_string(), v.to_string()]);
            }
            (vec!["n", "value"], rows)
        }
    };
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&header)?;
            for row in &rows {
                w.write_record(row)?;
            }
            w.flush()?;
        }
        Format::Json => {
            for row in &rows {
                let obj: Map<String, Value> = header
                    .iter()
                    .zip(row)
                    .map(|(k, v)| (k.to_string(), Value::String(v.clone())))
                    .collect();
                writeln!(out, "{}", Value::Object(obj))?;
            }
        }
    }
    Ok(())
}
