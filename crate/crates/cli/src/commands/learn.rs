//! `learn`: randomized learner experiments, one report row per invocation.

use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Args;

use pgmlab::bits::BitVec;
use pgmlab::ensembles::EnsembleKind;
use pgmlab::learners::{
    bv_success_experiment, empirical_sample_complexity, erm_pac_learner, pac_hypothesis_error,
    pgm_identification_experiment, sample_pac_examples, LearnSetting, LearnerTrialReport,
};
use pgmlab::pgm::pgm_success_xor;
use pgmlab::rng::{child_seed, rng_from};

use crate::output::{Cell, Table};
use crate::Ctx;

use super::{CommandOutput, Status};

const ERM_TAG: u64 = 0x65726d; // "erm"
const BV_PICK_TAG: u64 = 0x6276; // "bv"

#[derive(Args, Debug)]
pub struct LearnArgs {
    /// Experiment: bv, erm, pgm, or complexity.
    #[arg(long)]
    pub experiment: String,
    /// Hidden-vector length for bv.
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of labeled points for erm / pgm / complexity.
    #[arg(long)]
    pub d: Option<usize>,
    /// Accuracy epsilon.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Noise rate eta (pgm with the noisy family).
    #[arg(long)]
    pub eta: Option<f64>,
    /// Copy / example count T.
    #[arg(long)]
    pub t: Option<u32>,
    /// Confidence delta for complexity.
    #[arg(long)]
    pub delta: Option<f64>,
    /// Trials per configuration.
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    /// Ensemble family for the pgm experiment.
    #[arg(long)]
    pub kind: Option<String>,
    /// Setting for the complexity experiment: pac or agnostic.
    #[arg(long)]
    pub setting: Option<String>,
    /// Generator matrix file for the pgm experiment.
    #[arg(long)]
    pub code: Option<PathBuf>,
}

fn require<T: Copy>(value: Option<T>, flag: &str, experiment: &str) -> Result<T> {
    value.ok_or_else(|| anyhow::anyhow!("--{flag} is required for the {experiment} experiment"))
}

fn report_cells(report: &LearnerTrialReport) -> [Cell; 3] {
    [
        Cell::U(report.trials),
        Cell::U(report.successes),
        Cell::F(report.success_rate),
    ]
}

pub fn run(ctx: &Ctx, args: &LearnArgs) -> Result<CommandOutput> {
    let text = match args.experiment.as_str() {
        "bv" => run_bv(ctx, args)?,
        "erm" => run_erm(ctx, args)?,
        "pgm" => run_pgm(ctx, args)?,
        "complexity" => run_complexity(ctx, args)?,
        other => bail!("unknown experiment {other:?} (expected bv, erm, pgm, complexity)"),
    };
    Ok(CommandOutput {
        text,
        status: Status::Ok,
    })
}

fn run_bv(ctx: &Ctx, args: &LearnArgs) -> Result<String> {
    let n = require(args.n, "n", "bv")?;
    let mut rng = rng_from(child_seed(ctx.seed, BV_PICK_TAG, 0));
    let hidden = BitVec::random(n, &mut rng);
    let report = bv_success_experiment(&hidden, args.trials, ctx.seed)?;
    let mut table = Table::new(vec![
        "experiment",
        "n",
        "seed",
        "trials",
        "successes",
        "success_rate",
        "analytic_rate",
    ]);
    let [trials, successes, rate] = report_cells(&report);
    table.push(vec![
        Cell::Str("bv".into()),
        Cell::U(n as u64),
        Cell::U(ctx.seed),
        trials,
        successes,
        rate,
        Cell::F(0.5),
    ]);
    Ok(table.render(ctx.format))
}

fn run_erm(ctx: &Ctx, args: &LearnArgs) -> Result<String> {
    let d = require(args.d, "d", "erm")?;
    let epsilon = require(args.epsilon, "epsilon", "erm")?;
    let t = require(args.t, "t", "erm")?;
    if args.trials == 0 || args.trials > pgmlab::learners::MAX_TRIALS {
        bail!("trials must lie in 1..={}", pgmlab::learners::MAX_TRIALS);
    }
    let mut successes = 0u64;
    for trial in 0..args.trials {
        let mut rng = rng_from(child_seed(ctx.seed, ERM_TAG, trial));
        let a = BitVec::random(d, &mut rng);
        let samples = sample_pac_examples(d, epsilon, &a, t, &mut rng)?;
        let hypothesis = erm_pac_learner(d, &samples);
        if pac_hypothesis_error(&a, &hypothesis, d, epsilon) <= epsilon {
            successes += 1;
        }
    }
    let mut table = Table::new(vec![
        "experiment",
        "d",
        "epsilon",
        "t",
        "seed",
        "trials",
        "successes",
        "success_rate",
    ]);
    table.push(vec![
        Cell::Str("erm".into()),
        Cell::U(d as u64),
        Cell::F(epsilon),
        Cell::U(t as u64),
        Cell::U(ctx.seed),
        Cell::U(args.trials),
        Cell::U(successes),
        Cell::F(successes as f64 / args.trials as f64),
    ]);
    Ok(table.render(ctx.format))
}

fn run_pgm(ctx: &Ctx, args: &LearnArgs) -> Result<String> {
    let d = require(args.d, "d", "pgm")?;
    let t = require(args.t, "t", "pgm")?;
    let kind_name = args
        .kind
        .clone()
        .ok_or_else(|| anyhow::anyhow!("--kind is required for the pgm experiment"))?;
    let kind = EnsembleKind::parse(&kind_name)?;
    let code = super::pgm::load_or_search_code(&args.code, d, ctx.seed)?;
    let spec = RowParams {
        epsilon: args.epsilon,
        eta: args.eta,
        t,
    };
    let ensemble = spec.build(kind, d, &code)?;
    let report = pgm_identification_experiment(&ensemble, args.trials, ctx.seed)?;
    let analytic = pgm_success_xor(&ensemble.xor_profile()?)?.success_probability;

    let mut table = Table::new(vec![
        "experiment",
        "kind",
        "d",
        "k",
        "epsilon",
        "eta",
        "t",
        "seed",
        "trials",
        "successes",
        "success_rate",
        "analytic_rate",
    ]);
    let [trials, successes, rate] = report_cells(&report);
    table.push(vec![
        Cell::Str("pgm".into()),
        Cell::Str(kind.name().to_string()),
        Cell::U(d as u64),
        Cell::U(code.k() as u64),
        args.epsilon.map(Cell::F).unwrap_or(Cell::Empty),
        args.eta.map(Cell::F).unwrap_or(Cell::Empty),
        Cell::U(t as u64),
        Cell::U(ctx.seed),
        trials,
        successes,
        rate,
        Cell::F(analytic),
    ]);
    Ok(table.render(ctx.format))
}

struct RowParams {
    epsilon: Option<f64>,
    eta: Option<f64>,
    t: u32,
}

impl RowParams {
    fn build(
        &self,
        kind: EnsembleKind,
        d: usize,
        code: &pgmlab::GeneratorMatrix,
    ) -> Result<pgmlab::Ensemble> {
        use pgmlab::ensembles::{
            AgnosticEnsembleParams, Ensemble, NoisyPacEnsembleParams, PacEnsembleParams,
        };
        Ok(match kind {
            EnsembleKind::Pac => Ensemble::Pac(PacEnsembleParams::new(
                d,
                self.epsilon.unwrap_or(0.0),
                self.t,
                code.clone(),
            )?),
            EnsembleKind::Agnostic => Ensemble::Agnostic(AgnosticEnsembleParams::new(
                d,
                self.epsilon.unwrap_or(0.0),
                self.t,
                code.clone(),
            )?),
            EnsembleKind::NoisyPac => {
                let pac =
                    PacEnsembleParams::new(d, self.epsilon.unwrap_or(0.0), self.t, code.clone())?;
                Ensemble::NoisyPac(NoisyPacEnsembleParams::new(pac, self.eta.unwrap_or(0.0))?)
            }
            EnsembleKind::Codeword => Ensemble::Codeword {
                code: code.clone(),
                t: self.t,
            },
        })
    }
}

fn run_complexity(ctx: &Ctx, args: &LearnArgs) -> Result<String> {
    let d = require(args.d, "d", "complexity")?;
    let epsilon = require(args.epsilon, "epsilon", "complexity")?;
    let delta = require(args.delta, "delta", "complexity")?;
    let setting_name = args
        .setting
        .clone()
        .ok_or_else(|| anyhow::anyhow!("--setting is required for the complexity experiment"))?;
    let setting = LearnSetting::parse(&setting_name)?;
    let t_star = empirical_sample_complexity(setting, d, epsilon, delta, args.trials, ctx.seed)?;
    let mut table = Table::new(vec![
        "experiment",
        "setting",
        "d",
        "epsilon",
        "delta",
        "seed",
        "trials",
        "t_star",
    ]);
    table.push(vec![
        Cell::Str("complexity".into()),
        Cell::Str(setting_name),
        Cell::U(d as u64),
        Cell::F(epsilon),
        Cell::F(delta),
        Cell::U(ctx.seed),
        Cell::U(args.trials),
        Cell::U(t_star as u64),
    ]);
    Ok(table.render(ctx.format))
}
