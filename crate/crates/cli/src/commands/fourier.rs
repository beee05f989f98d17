//! `fourier`: per-weight spectrum maxima of the decay profile against the
//! coefficient bound.

use std::sync::atomic::{AtomicBool, Ordering};

use anyhow::Result;
use clap::Args;

use pgmlab::bounds;
use pgmlab::fourier::{fourier_coefficients, hardness_profile};

use crate::output::{Cell, Table};
use crate::range::parse_u32_range;
use crate::runner::run_ordered;
use crate::Ctx;

use super::{combine_row_statuses, CommandOutput};

#[derive(Args, Debug)]
pub struct FourierArgs {
    /// Decay rate in (0, 1].
    #[arg(long)]
    pub beta: f64,
    /// Number of input bits.
    #[arg(long)]
    pub m: usize,
    /// Copy count T.
    #[arg(long, default_value = "1")]
    pub t: u32,
    /// Character weights to report, single value or sweep; defaults to 0..m.
    #[arg(long)]
    pub q: Option<String>,
}

const COLUMNS: [&str; 9] = [
    "beta",
    "m",
    "t",
    "q",
    "coeff_abs_max",
    "bound",
    "admissible",
    "satisfied",
    "error",
];

pub fn run(ctx: &Ctx, args: &FourierArgs) -> Result<CommandOutput> {
    let qs: Vec<u32> = match &args.q {
        Some(text) => parse_u32_range(text)?,
        None => (0..=args.m as u32).collect(),
    };
    let profile = hardness_profile(args.beta, args.m, args.t)?;
    let spectrum = fourier_coefficients(&profile);

    let violation = AtomicBool::new(false);
    let usage = AtomicBool::new(false);
    let t_admissible = args.t >= 1 && args.t <= bounds::max_admissible_t(args.m, args.beta);

    let rows = run_ordered(ctx.jobs, &qs, |&q| {
        let mut row = vec![
            Cell::F(args.beta),
            Cell::U(args.m as u64),
            Cell::U(args.t as u64),
            Cell::U(q as u64),
        ];
        if q as usize > args.m {
            usage.store(true, Ordering::Relaxed);
            row.extend([
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Empty,
                Cell::Str(format!("weight q = {q} exceeds m = {}", args.m)),
            ]);
            return row;
        }
        let coeff = spectrum.max_abs_at_weight(q as usize);
        let admissible = args.m >= 10 && t_admissible;
        let bound = if admissible {
            bounds::fourier_coeff_bound(q as usize, args.m, args.t, args.beta)
                .expect("admissibility checked")
        } else {
            bounds::fourier_coeff_bound_unchecked(q as usize, args.m, args.t, args.beta)
        };
        let satisfied = coeff <= bound + 1e-12;
        if !satisfied {
            violation.store(true, Ordering::Relaxed);
        }
        row.extend([
            Cell::F(coeff),
            Cell::F(bound),
            Cell::B(admissible),
            Cell::B(satisfied),
            Cell::Empty,
        ]);
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
            false,
            usage.load(Ordering::Relaxed),
        ),
    })
}
