//! `pgm`: exact identification probabilities against their analytic bounds,
//! swept over copies and accuracy.

use std::path::PathBuf;
use std::sync::atomic::{AtomicBool, Ordering};

use anyhow::{bail, Context, Result};
use clap::Args;

use pgmlab::bounds;
use pgmlab::codes::{find_good_code, GeneratorMatrix};
use pgmlab::ensembles::{
    AgnosticEnsembleParams, Ensemble, EnsembleKind, NoisyPacEnsembleParams, PacEnsembleParams,
};
use pgmlab::pgm::{pgm_success_generic, pgm_success_xor};

use crate::output::{Cell, Table};
use crate::range::{parse_f64_range, parse_u32_range};
use crate::runner::run_ordered;
use crate::Ctx;

use super::{combine_row_statuses, CommandOutput};

#[derive(Args, Debug)]
pub struct PgmArgs {
    /// Ensemble family: pac, agnostic, noisy, or codeword.
    #[arg(long)]
    pub kind: String,
    /// Ground set size: the number of labeled points (code length).
    #[arg(long)]
    pub d: usize,
    /// Accuracy epsilon, single value or sweep (ignored for codeword).
    #[arg(long)]
    pub epsilon: Option<String>,
    /// Noise rate eta, single value or sweep (noisy only).
    #[arg(long)]
    pub eta: Option<String>,
    /// Copy count T, single value or sweep.
    #[arg(long, default_value = "1")]
    pub t: String,
    /// Load the generator matrix from a JSON file instead of searching.
    #[arg(long)]
    pub code: Option<PathBuf>,
}

struct RowSpec {
    epsilon: Option<f64>,
    eta: Option<f64>,
    t: u32,
}

pub const COLUMNS: [&str; 13] = [
    "kind",
    "d",
    "k",
    "epsilon",
    "eta",
    "t",
    "seed",
    "p_pgm_fourier",
    "p_pgm_dense",
    "bound",
    "admissible",
    "satisfied",
    "error",
];

pub fn load_or_search_code(path: &Option<PathBuf>, n: usize, seed: u64) -> Result<GeneratorMatrix> {
    match path {
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .with_context(|| format!("reading code file {}", p.display()))?;
            let code = GeneratorMatrix::from_json(&text)?;
            if code.n() != n {
                bail!(
                    "code file has length {} but the command asked for d = {n}",
                    code.n()
                );
            }
            Ok(code)
        }
        None => Ok(find_good_code(n, seed)?.0),
    }
}

fn build_ensemble(
    kind: EnsembleKind,
    d: usize,
    spec: &RowSpec,
    code: &GeneratorMatrix,
) -> pgmlab::Result<Ensemble> {
    match kind {
        EnsembleKind::Pac => Ok(Ensemble::Pac(PacEnsembleParams::new(
            d,
            spec.epsilon.unwrap_or(0.0),
            spec.t,
            code.clone(),
        )?)),
        EnsembleKind::Agnostic => Ok(Ensemble::Agnostic(AgnosticEnsembleParams::new(
            d,
            spec.epsilon.unwrap_or(0.0),
            spec.t,
            code.clone(),
        )?)),
        EnsembleKind::NoisyPac => {
            let pac = PacEnsembleParams::new(d, spec.epsilon.unwrap_or(0.0), spec.t, code.clone())?;
            Ok(Ensemble::NoisyPac(NoisyPacEnsembleParams::new(
                pac,
                spec.eta.unwrap_or(0.0),
            )?))
        }
        EnsembleKind::Codeword => Ok(Ensemble::Codeword {
            code: code.clone(),
            t: spec.t,
        }),
    }
}

/// Analytic bound plus whether the parameters sit in the certified range.
/// Outside the certified copy-count range the same formula is still reported
/// (flagged not admissible); the codeword bound has a hard T <= n guard.
fn bound_for(
    kind: EnsembleKind,
    d: usize,
    k: usize,
    spec: &RowSpec,
) -> pgmlab::Result<(f64, bool)> {
    match kind {
        EnsembleKind::Pac => {
            let eps = spec.epsilon.unwrap_or(0.0);
            let admissible = spec.t >= 1 && spec.t <= bounds::max_admissible_t(d, 20.0 * eps);
            if admissible {
                Ok((bounds::pgm_pac_bound(d, k, spec.t, eps)?, true))
            } else {
                Ok((bounds::pgm_pac_bound_unchecked(d, k, spec.t, eps), false))
            }
        }
        EnsembleKind::Agnostic => {
            let eps = spec.epsilon.unwrap_or(0.0);
            let admissible =
                spec.t >= 1 && spec.t <= bounds::max_admissible_t(d, 100.0 * eps * eps);
            if admissible {
                Ok((bounds::pgm_agnostic_bound(d, k, spec.t, eps)?, true))
            } else {
                Ok((
                    bounds::pgm_agnostic_bound_unchecked(d, k, spec.t, eps),
                    false,
                ))
            }
        }
        EnsembleKind::NoisyPac => {
            let eps = spec.epsilon.unwrap_or(0.0);
            let eta = spec.eta.unwrap_or(0.0);
            let beta = bounds::noisy_effective_decay(eps, eta);
            let admissible = spec.t >= 1 && spec.t <= bounds::max_admissible_t(d, beta);
            if admissible {
                Ok((bounds::pgm_noisy_bound(d, k, spec.t, eps, eta)?, true))
            } else {
                Ok((
                    bounds::pgm_noisy_bound_unchecked(d, k, spec.t, eps, eta),
                    false,
                ))
            }
        }
        EnsembleKind::Codeword => Ok((bounds::codeword_bound(d, k, spec.t)?, true)),
    }
}

pub fn run(ctx: &Ctx, args: &PgmArgs) -> Result<CommandOutput> {
    let kind = EnsembleKind::parse(&args.kind)?;
    let code = load_or_search_code(&args.code, args.d, ctx.seed)?;
    let k = code.k();

    let epsilons: Vec<Option<f64>> = match (&args.epsilon, kind) {
        (_, EnsembleKind::Codeword) => vec![None],
        (Some(text), _) => parse_f64_range(text)?.into_iter().map(Some).collect(),
        (None, _) => bail!("--epsilon is required for the {} family", args.kind),
    };
    let etas: Vec<Option<f64>> = match (&args.eta, kind) {
        (Some(text), EnsembleKind::NoisyPac) => {
            parse_f64_range(text)?.into_iter().map(Some).collect()
        }
        (None, EnsembleKind::NoisyPac) => bail!("--eta is required for the noisy family"),
        _ => vec![None],
    };
    let ts = parse_u32_range(&args.t)?;

    let mut grid = Vec::new();
    for &epsilon in &epsilons {
        for &eta in &etas {
            for &t in &ts {
                grid.push(RowSpec { epsilon, eta, t });
            }
        }
    }

    let violation = AtomicBool::new(false);
    let resource = AtomicBool::new(false);
    let usage = AtomicBool::new(false);
    let seed = ctx.seed;
    let d = args.d;

    let rows = run_ordered(ctx.jobs, &grid, |spec| {
        let mut row = vec![
            Cell::Str(kind.name().to_string()),
            Cell::U(d as u64),
            Cell::U(k as u64),
            spec.epsilon.map(Cell::F).unwrap_or(Cell::Empty),
            spec.eta.map(Cell::F).unwrap_or(Cell::Empty),
            Cell::U(spec.t as u64),
            Cell::U(seed),
        ];
        let outcome = (|| -> pgmlab::Result<(f64, Option<f64>, f64, bool)> {
            let ens = build_ensemble(kind, d, spec, &code)?;
            let exact = pgm_success_xor(&ens.xor_profile()?)?.success_probability;
            let dense = if k <= 8 {
                let states = ens.states();
                let probs = vec![1.0 / states.len() as f64; states.len()];
                Some(pgm_success_generic(&states, &probs, spec.t)?.success_probability)
            } else {
                None
            };
            let (bound, admissible) = bound_for(kind, d, k, spec)?;
            Ok((exact, dense, bound, admissible))
        })();
        match outcome {
            Ok((exact, dense, bound, admissible)) => {
                let satisfied = exact <= bound + 1e-12;
                if !satisfied {
                    violation.store(true, Ordering::Relaxed);
                }
                row.push(Cell::F(exact));
                row.push(dense.map(Cell::F).unwrap_or(Cell::Empty));
                row.push(Cell::F(bound));
                row.push(Cell::B(admissible));
                row.push(Cell::B(satisfied));
                row.push(Cell::Empty);
            }
            Err(err) => {
                if matches!(err, pgmlab::Error::ResourceLimit(_)) {
                    resource.store(true, Ordering::Relaxed);
                } else {
                    usage.store(true, Ordering::Relaxed);
                }
                row.extend([
                    Cell::Empty,
                    Cell::Empty,
                    Cell::Empty,
                    Cell::Empty,
                    Cell::Empty,
                    Cell::Str(err.to_string()),
                ]);
            }
        }
        row
    });

    let mut table = Table::new(COLUMNS.to_vec());
    for row in rows {
        table.push(row);
    }
    Ok(CommandOutput {
        text: table.render(ctx.format),
        status: combine_row_statuses(
            violation.load(Ordering::Relaxed),
            resource.load(Ordering::Relaxed),
            usage.load(Ordering::Relaxed),
        ),
    })
}
