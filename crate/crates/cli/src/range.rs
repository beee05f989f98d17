//! Sweep-range parsing: a bare value, a comma list, or start:stop:step
//! (stop inclusive, with a half-step slack for float grids).

use anyhow::{bail, Context, Result};

pub fn parse_f64_range(text: &str) -> Result<Vec<f64>> {
    let text = text.trim();
    if text.is_empty() {
        bail!("empty sweep range");
    }
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            bail!("range must be start:stop:step, got {text:?}");
        }
        let start: f64 = parts[0].trim().parse().context("bad range start")?;
        let stop: f64 = parts[1].trim().parse().context("bad range stop")?;
        let step: f64 = parts[2].trim().parse().context("bad range step")?;
        if step <= 0.0 {
            bail!("range step must be positive, got {step}");
        }
        if stop < start {
            bail!("range stop {stop} is below start {start}");
        }
        let mut values = Vec::new();
        let mut i = 0u64;
        loop {
            let v = start + step * i as f64;
            if v > stop + step * 0.5 {
                break;
            }
            values.push(v.min(stop));
            i += 1;
        }
        if values.is_empty() {
            bail!("range {text:?} is empty");
        }
        Ok(values)
    } else {
        text.split(',')
            .map(|p| {
                p.trim()
                    .parse::<f64>()
                    .with_context(|| format!("bad value {p:?}"))
            })
            .collect()
    }
}

pub fn parse_u32_range(text: &str) -> Result<Vec<u32>> {
    let text = text.trim();
    if text.is_empty() {
        bail!("empty sweep range");
    }
    if text.contains(':') {
        let parts: Vec<&str> = text.split(':').collect();
        if parts.len() != 3 {
            bail!("range must be start:stop:step, got {text:?}");
        }
        let start: u32 = parts[0].trim().parse().context("bad range start")?;
        let stop: u32 = parts[1].trim().parse().context("bad range stop")?;
        let step: u32 = parts[2].trim().parse().context("bad range step")?;
        if step == 0 {
            bail!("range step must be positive");
        }
        if stop < start {
            bail!("range stop {stop} is below start {start}");
        }
        Ok((start..=stop).step_by(step as usize).collect())
    } else {
        text.split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .with_context(|| format!("bad value {p:?}"))
            })
            .collect()
    }
}
