//! End-to-end acceptance run: every criterion executes its checks through the
//! verification harness, prints one PASS/FAIL line with its wall-clock time,
//! and the process exits non-zero if any criterion fails or overruns.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use degamma_core::harness::{run_suite_where, RunConfig, VerificationReport};

struct Criterion {
    number: u32,
    title: &'static str,
    suite: &'static str,
    mc_samples: usize,
    budget: Duration,
    keep: fn(&str) -> bool,
}

fn everything(_: &str) -> bool {
    true
}

const CRITERIA: [Criterion; 11] = [
    Criterion {
        number: 1,
        title: "Γ_λ(1) = 1/(1-λ); integer closed form vs quadrature",
        suite: "gamma",
        mc_samples: 1_000_000,
        budget: Duration::from_secs(10),
        keep: |id| id.starts_with("gamma/unit/") || id.starts_with("gamma/integer/"),
    },
    Criterion {
        number: 2,
        title: "three-way Γ_λ agreement on 100 random (s, λ)",
        suite: "gamma",
        mc_samples: 1_000_000,
        budget: Duration::from_secs(30),
        keep: |id| id.starts_with("gamma/random/"),
    },
    Criterion {
        number: 3,
        title: "moment quadrature vs closed form, 27-cell grid, n <= 4",
        suite: "moments",
        mc_samples: 1_000_000,
        budget: Duration::from_secs(60),
        keep: everything,
    },
    Criterion {
        number: 4,
        title: "variance identity on the grid and Monte Carlo at (2, 1, 0.1)",
        suite: "variance",
        mc_samples: 1_000_000,
        budget: Duration::from_secs(60),
        keep: everything,
    },
    Criterion {
        number: 5,
        title: "mgf coefficient identity",
        suite: "eq19",
        mc_samples: 1_000_000,
        budget: Duration::from_secs(1),
        keep: everything,
    },
    Criterion {
        number: 6,
        title: "exact Stirling inversion, max_n = 20",
        suite: "inversion",
        mc_samples: 1_000_000,
        budget: Duration::from_secs(10),
        keep: |id| !id.contains("classical-reduction"),
    },
    Criterion {
        number: 7,
        title: "closing identity, exact on the full grid",
        suite: "closing-identity",
        mc_samples: 1_000_000,
        budget: Duration::from_secs(60),
        keep: |id| !id.contains("log-series"),
    },
    Criterion {
        number: 8,
        title: "sampler KS below 1.63/sqrt(n), n = 1e5, every grid cell",
        suite: "sampler-ks",
        mc_samples: 100_000,
        budget: Duration::from_secs(120),
        keep: |id| id.starts_with("sampler-ks/ks/"),
    },
    Criterion {
        number: 9,
        title: "classical limit at λ = 1e-8",
        suite: "classical-limit",
        mc_samples: 1_000_000,
        budget: Duration::from_secs(10),
        keep: everything,
    },
    Criterion {
        number: 10,
        title: "independent-sum moments vs 1e6 paired samples",
        suite: "sum-moments",
        mc_samples: 1_000_000,
        budget: Duration::from_secs(120),
        keep: everything,
    },
    Criterion {
        number: 11,
        title: "factorial-moment expansion, Stirling path vs quadrature",
        suite: "eq20",
        mc_samples: 1_000_000,
        budget: Duration::from_secs(30),
        keep: everything,
    },
];

fn run(criterion: &Criterion) -> bool {
    let cfg = RunConfig {
        mc_samples: criterion.mc_samples,
        ..RunConfig::default()
    };
    let start = Instant::now();
    let reports = run_suite_where(criterion.suite, &cfg, criterion.keep);
    let elapsed = start.elapsed();

    let (ok, detail) = match reports {
        Ok(reports) if reports.is_empty() => (false, "no checks selected".to_string()),
        Ok(reports) => {
            let failed: Vec<&VerificationReport> = reports.iter().filter(|r| !r.passed).collect();
            let within_budget = elapsed <= criterion.budget;
            let mut detail = format!(
                "{}/{} checks, max rel_error {:.2e}",
                reports.len() - failed.len(),
                reports.len(),
                reports.iter().map(|r| r.rel_error).fold(0.0, f64::max)
            );
            for r in failed.iter().take(5) {
                detail.push_str(&format!(
                    "\n      failed {}: expected {} actual {} rel_error {:.3e} tol {:.3e}",
                    r.check_id, r.expected, r.actual, r.rel_error, r.tolerance
                ));
            }
            if !within_budget {
                detail.push_str(&format!(", over budget {:?}", criterion.budget));
            }
            (failed.is_empty() && within_budget, detail)
        }
        Err(e) => (false, format!("suite error: {e}")),
    };
    println!(
        "criterion {:>2} [{}] {} ({:.2} s; {})",
        criterion.number,
        if ok { "PASS" } else { "FAIL" },
        criterion.title,
        elapsed.as_secs_f64(),
        detail
    );
    ok
}

fn main() -> ExitCode {
    let filter: Option<String> = std::env::args().skip(1).find(|a| !a.starts_with('-'));
    let mut all_ok = true;
    for criterion in &CRITERIA {
        if let Some(f) = &filter {
            if !criterion.title.contains(f.as_str()) && f != &criterion.number.to_string() {
                continue;
            }
        }
        all_ok &= run(criterion);
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
