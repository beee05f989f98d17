//! `verify`: run the full verification battery and print one line per
//! criterion. The output carries no timestamps, so a run is byte-identical
//! for a fixed seed.

use anyhow::Result;
use clap::Args;

use pgmlab::acceptance::run_all;

use crate::Ctx;

use super::{CommandOutput, Status};

#[derive(Args, Debug)]
pub struct VerifyArgs {}

pub fn run(ctx: &Ctx, _args: &VerifyArgs) -> Result<CommandOutput> {
    let outcomes = run_all(ctx.seed);
    let mut text = String::new();
    let mut passed = 0usize;
    for outcome in &outcomes {
        text.push_str(&outcome.line());
        text.push('\n');
        if outcome.passed {
            passed += 1;
        }
    }
    text.push_str(&format!(
        "summary: {passed}/{} criteria passed (seed={})\n",
        outcomes.len(),
        ctx.seed
    ));
    let status = if passed == outcomes.len() {
        Status::Ok
    } else {
        Status::Violation
    };
    Ok(CommandOutput { text, status })
}
