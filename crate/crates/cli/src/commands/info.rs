//! `info`: per-example information quantities, the entropy bound, and the
//! constant-1 sample-count reference lines.

use std::sync::atomic::{AtomicBool, Ordering};

use anyhow::Result;
use clap::Args;

use pgmlab::bounds::{minimax_agnostic_bound, sample_bounds, SampleSetting};
use pgmlab::info::{
    classical_per_example_info, quantum_info_bound_admissible, quantum_per_example_info_bound,
    reduced_agnostic_example_density, reduced_pac_example_density, von_neumann_entropy,
    InfoSetting,
};

use crate::output::{Cell, Table};
use crate::range::parse_f64_range;
use crate::runner::run_ordered;
use crate::Ctx;

use super::{combine_row_statuses, CommandOutput};

#[derive(Args, Debug)]
pub struct InfoArgs {
    /// Information setting: pac or agnostic.
    #[arg(long)]
    pub setting: String,
    /// Number of labeled points.
    #[arg(long)]
    pub d: usize,
    /// Accuracy epsilon, single value or sweep.
    #[arg(long)]
    pub epsilon: String,
    /// Confidence delta; when given, the sample-count reference line is
    /// reported alongside the information quantities.
    #[arg(long)]
    pub delta: Option<f64>,
}

const COLUMNS: [&str; 10] = [
    "setting",
    "d",
    "epsilon",
    "classical_bits",
    "quantum_bound_bits",
    "entropy_bits",
    "satisfied",
    "sample_ref",
    "minimax_ref",
    "error",
];

/// Reduced-state entropies need an O(d^3) eigendecomposition; past this point
/// only the closed-form quantities are reported.
const MAX_ENTROPY_D: usize = 64;

pub fn run(ctx: &Ctx, args: &InfoArgs) -> Result<CommandOutput> {
    let setting = InfoSetting::parse(&args.setting)?;
    let epsilons = parse_f64_range(&args.epsilon)?;
    let violation = AtomicBool::new(false);
    let resource = AtomicBool::new(false);
    let usage = AtomicBool::new(false);

    let rows = run_ordered(ctx.jobs, &epsilons, |&eps| {
        let mut row = vec![
            Cell::Str(setting.name().to_string()),
            Cell::U(args.d as u64),
            Cell::F(eps),
        ];
        let outcome = (|| -> pgmlab::Result<Vec<Cell>> {
            let classical = classical_per_example_info(setting, eps)?;
            let entropy = if args.d <= MAX_ENTROPY_D {
                let rho = match setting {
                    InfoSetting::Pac => reduced_pac_example_density(args.d, eps)?,
                    InfoSetting::Agnostic => reduced_agnostic_example_density(args.d, eps)?,
                };
                Some(von_neumann_entropy(&rho))
            } else {
                None
            };
            let mut cells = vec![Cell::F(classical)];
            match (quantum_info_bound_admissible(setting, eps), entropy) {
                (true, Some(s)) => {
                    let bound = quantum_per_example_info_bound(setting, args.d, eps)?;
                    let satisfied = s <= bound + 1e-12;
                    if !satisfied {
                        violation.store(true, Ordering::Relaxed);
                    }
                    cells.push(Cell::F(bound));
                    cells.push(Cell::F(s));
                    cells.push(Cell::B(satisfied));
                }
                (true, None) => {
                    let bound = quantum_per_example_info_bound(setting, args.d, eps)?;
                    cells.push(Cell::F(bound));
                    cells.push(Cell::Empty);
                    cells.push(Cell::Empty);
                }
                (false, s) => {
                    cells.push(Cell::Empty);
                    cells.push(s.map(Cell::F).unwrap_or(Cell::Empty));
                    cells.push(Cell::Empty);
                }
            }
            // Reference lines: order-of-magnitude sample counts with all
            // implied constants set to 1, never certified inequalities.
            match args.delta {
                Some(delta) => {
                    let sample_setting = match setting {
                        InfoSetting::Pac => SampleSetting::Pac,
                        InfoSetting::Agnostic => SampleSetting::Agnostic,
                    };
                    cells.push(Cell::F(sample_bounds(
                        sample_setting,
                        args.d,
                        eps,
                        delta,
                        None,
                    )?));
                }
                None => cells.push(Cell::Empty),
            }
            if setting == InfoSetting::Agnostic && eps <= 0.1 {
                cells.push(Cell::F(minimax_agnostic_bound(args.d, eps)?));
            } else {
                cells.push(Cell::Empty);
            }
            cells.push(Cell::Empty);
            Ok(cells)
        })();
        match outcome {
            Ok(cells) => row.extend(cells),
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
