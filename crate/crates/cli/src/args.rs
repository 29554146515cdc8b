use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use degamma_core::stirling::{parse_rational, rational_to_f64, StirlingKind};
use degamma_core::RationalScalar;

#[derive(Debug, Parser)]
#[command(
    name = "degamma",
    version,
    about = "Evaluate and verify the degenerate gamma function and distribution"
)]
pub struct Cli {
    /// Root seed for every Monte Carlo stream.
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Tolerance override, e.g. `--tolerance moments=1e-9`. Repeatable.
    #[arg(long = "tolerance", global = true, value_name = "KEY=VAL")]
    pub tolerances: Vec<String>,

    /// Config file (flat key = value). Defaults to $DEGAMMA_CONFIG when set.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate one quantity and print it with method metadata.
    Eval(EvalArgs),
    /// Run a verification suite (or `all`) and stream its reports.
    Verify(VerifyArgs),
    /// Draw variates from Γ_λ(α, β).
    Sample(SampleArgs),
    /// Emit a CSV/JSON table.
    #[command(subcommand)]
    Table(TableCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EvalKind {
    Gamma,
    Exp,
    Log,
    FallingFactorial,
    Binom,
    Pdf,
    Cdf,
    Moment,
    Mean,
    Variance,
    MgfCoefficient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GammaMethodArg {
    Auto,
    IntegerClosedForm,
    BetaClosedForm,
    Quadrature,
    Recurrence,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(value_enum)]
    pub kind: EvalKind,
    #[arg(long, allow_hyphen_values = true)]
    pub s: Option<f64>,
    /// λ as a decimal or a rational such as 1/10.
    #[arg(long, value_parser = parse_lambda, allow_hyphen_values = true)]
    pub lambda: Option<Lambda>,
    #[arg(long)]
    pub alpha: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    #[arg(long)]
    pub n: Option<usize>,
    /// Γ_λ evaluation path.
    #[arg(long, value_enum, default_value = "auto")]
    pub method: GammaMethodArg,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suite name, or `all`.
    pub suite: String,
    #[arg(long)]
    pub mc_samples: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[arg(long)]
    pub alpha: f64,
    #[arg(long)]
    pub beta: f64,
    #[arg(long, value_parser = parse_lambda)]
    pub lambda: Lambda,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    /// Number of variates.
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    /// Write variates here instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Print only the summary record (to stdout).
    #[arg(long)]
    pub summary_only: bool,
}

#[derive(Debug, Subcommand)]
pub enum TableCommand {
    /// Exact Stirling triangle as (n, l, numerator, denominator).
    Stirling {
        #[arg(long, value_parser = parse_kind)]
        kind: StirlingKind,
        #[arg(long, value_parser = parse_lambda, default_value = "0")]
        lambda: Lambda,
        #[arg(long)]
        max_n: usize,
    },
    /// Γ_λ(s) over `start:stop:step`.
    Gamma {
        #[arg(long, value_parser = parse_lambda)]
        lambda: Lambda,
        #[arg(long, value_parser = parse_grid)]
        s_grid: Grid,
    },
    /// E[Xⁿ] for n = 0..=n_max.
    Moments {
        #[command(flatten)]
        dist: DistArgs,
        #[arg(long)]
        n_max: usize,
    },
}

/// λ as given on the command line, kept exactly alongside its f64 value.
#[derive(Debug, Clone, PartialEq)]
pub struct Lambda {
    pub exact: RationalScalar,
    pub value: f64,
}

fn parse_lambda(text: &str) -> Result<Lambda, String> {
    let exact = parse_rational(text).map_err(|e| e.to_string())?;
    let value = rational_to_f64(&exact);
    Ok(Lambda { exact, value })
}

fn parse_kind(text: &str) -> Result<StirlingKind, String> {
    text.parse().map_err(|e: degamma_core::Error| e.to_string())
}

/// Points of a `start:stop:step` range.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(pub Vec<f64>);

/// `start:stop:step`, inclusive of `stop` up to rounding.
fn parse_grid(text: &str) -> Result<Grid, String> {
    let parts: Vec<f64> = text
        .split(':')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number {p:?} in grid"))
        })
        .collect::<Result<_, _>>()?;
    let [start, stop, step] = parts[..] else {
        return Err(format!("expected start:stop:step, got {text:?}"));
    };
    if !start.is_finite() || !step.is_finite() || step <= 0.0 || !stop.is_finite() || stop < start {
        return Err(format!(
            "grid needs step > 0 and stop >= start, got {text:?}"
        ));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    Ok(Grid((0..=count).map(|i| start + i as f64 * step).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        assert_eq!(
            parse_grid("0.5:3.5:0.5").unwrap().0,
            vec![0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5]
        );
        assert_eq!(parse_grid("1:1:1").unwrap().0, vec![1.0]);
        assert!(parse_grid("1:2").is_err());
        assert!(parse_grid("2:1:0.5").is_err());
        assert!(parse_grid("1:2:0").is_err());
    }

    #[test]
    fn lambda_accepts_rationals() {
        let l = parse_lambda("1/10").unwrap();
        assert_eq!(l.value, 0.1);
        assert_eq!(l.exact, parse_rational("0.1").unwrap());
        assert!(parse_lambda("one").is_err());
    }
}
