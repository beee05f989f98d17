//! `code`: randomized search for a rate-1/4, distance-n/8 code, emitted as a
//! JSON document that `--code` on other commands can load back.

use anyhow::Result;
use clap::Args;

use pgmlab::codes::find_good_code;

use crate::Ctx;

use super::{CommandOutput, Status};

#[derive(Args, Debug)]
pub struct CodeArgs {
    /// Code length; the message length is fixed to ceil(n/4).
    #[arg(long)]
    pub n: usize,
}

pub fn run(ctx: &Ctx, args: &CodeArgs) -> Result<CommandOutput> {
    let (matrix, spec) = find_good_code(args.n, ctx.seed)?;
    // The matrix JSON plus the verified distance and the search seed.
    let mut doc: serde_json::Value = serde_json::from_str(&matrix.to_json())?;
    let object = doc.as_object_mut().expect("matrix JSON is an object");
    object.insert(
        "min_distance".to_string(),
        serde_json::Value::from(spec.min_distance),
    );
    object.insert("seed".to_string(), serde_json::Value::from(ctx.seed));
    let mut text = serde_json::to_string_pretty(&doc)?;
    text.push('\n');
    Ok(CommandOutput {
        text,
        status: Status::Ok,
    })
}
