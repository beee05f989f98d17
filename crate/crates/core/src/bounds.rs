//! Closed-form upper bounds for identification probabilities and sample
//! counts, plus the entropy helpers they lean on.
//!
//! Each bound comes in a guarded form that enforces the parameter range the
//! derivation certifies, and an `_unchecked` form that evaluates the same
//! formula anywhere (for sweeps and plots; numerically the inequalities hold
//! far beyond the certified range, and the sweep output flags which rows are
//! certified). The copy-count guard admits T = 1 even when the certified
//! interval [1, m/(e^3 beta)] is empty, i.e. it checks
//! `1 <= T <= max(1, m / (e^3 beta))`.
//!
//! Logarithm conventions: entropies and sample counts are in bits (base 2);
//! the exponential bounds use the natural base, matching each formula.

use std::collections::BTreeMap;
use std::f64::consts::{E, LN_2};

use crate::error::{Error, Result};

/// Coefficient of the quartic term in the small-bias entropy gap
/// `1 - H(1/2 + eps) <= 2 eps^2 / ln 2 + C eps^4`.
///
/// The exact expansion is `2 eps^2 / ln 2 + (4/3) eps^4 / ln 2 + ...`, but a
/// uniform constant over the verification grid eps in (0, 0.25] step 0.01
/// needs C >= 2.147 (the worst point is eps = 0.25); pinned at 2.2.
pub const ENTROPY_GAP_QUARTIC_COEFF: f64 = 2.2;

/// Constant in `H(eps) <= C eps log2(1/eps)` on (0, 1/2]; equality holds at
/// eps = 1/2 with C = 2 and the grid verifies C = 2 everywhere.
pub const ENTROPY_LINEARITHMIC_COEFF: f64 = 2.0;

fn e_cubed() -> f64 {
    E * E * E
}

/// Largest certified copy count for ground-set size m and decay rate beta:
/// floor(max(1, m / (e^3 beta))).
pub fn max_admissible_t(m: usize, beta: f64) -> u32 {
    let limit = (m as f64 / (e_cubed() * beta)).max(1.0);
    limit.floor() as u32
}

fn check_t(t: u32, m: usize, beta: f64) -> Result<()> {
    if t < 1 {
        return Err(Error::invalid("copy count t must be at least 1"));
    }
    let limit = (m as f64 / (e_cubed() * beta)).max(1.0);
    if t as f64 > limit {
        return Err(Error::invalid(format!(
            "t = {t} violates t <= max(1, m/(e^3 beta)) = {limit:.6}"
        )));
    }
    Ok(())
}

fn check_beta(beta: f64) -> Result<()> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::invalid(format!(
            "decay rate beta must lie in (0, 1], got {beta}"
        )));
    }
    Ok(())
}

/// Upper bound on a Fourier coefficient of the decay profile at character
/// weight q: `4e (1 - beta/2)^T (T beta / m)^q e^(22 T^2 beta^2 / m)`.
pub fn fourier_coeff_bound(q: usize, m: usize, t: u32, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    if m < 10 {
        return Err(Error::invalid(format!(
            "ground set size m must be at least 10, got {m}"
        )));
    }
    if q > m {
        return Err(Error::invalid(format!(
            "character weight q = {q} exceeds m = {m}"
        )));
    }
    check_t(t, m, beta)?;
    Ok(fourier_coeff_bound_unchecked(q, m, t, beta))
}

/// The same formula without the certified-range guard on T.
pub fn fourier_coeff_bound_unchecked(q: usize, m: usize, t: u32, beta: f64) -> f64 {
    let tf = t as f64;
    let mf = m as f64;
    4.0 * E
        * (1.0 - beta / 2.0).powi(t as i32)
        * (tf * beta / mf).powi(q as i32)
        * (22.0 * tf * tf * beta * beta / mf).exp()
}

/// Upper bound on every diagonal entry of sqrt(A) for the scaled XOR matrix
/// A(x,y) = g(x xor y) built from a rank-k code:
/// `(2 sqrt(e) / 2^(k/2)) (1 - beta/2)^(T/2) e^(11 T^2 beta^2 / m + sqrt(T m beta))`.
pub fn sqrt_diag_bound(m: usize, k: usize, t: u32, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    if m < 10 {
        return Err(Error::invalid(format!(
            "ground set size m must be at least 10, got {m}"
        )));
    }
    if k > m {
        return Err(Error::invalid(format!("k = {k} exceeds m = {m}")));
    }
    check_t(t, m, beta)?;
    Ok(sqrt_diag_bound_unchecked(m, k, t, beta))
}

/// The same formula without the certified-range guard on T.
pub fn sqrt_diag_bound_unchecked(m: usize, k: usize, t: u32, beta: f64) -> f64 {
    let tf = t as f64;
    let mf = m as f64;
    2.0 * E.sqrt() / (2.0f64).powf(k as f64 / 2.0)
        * (1.0 - beta / 2.0).powf(tf / 2.0)
        * (11.0 * tf * tf * beta * beta / mf + (tf * mf * beta).sqrt()).exp()
}

/// PGM success bound for any uniform XOR ensemble with decay rate beta:
/// `(4e / 2^k) (1 - beta/2)^T e^(22 T^2 beta^2 / m + 2 sqrt(T m beta))`.
///
/// This is the square of [`sqrt_diag_bound`] and the common core of the
/// per-family bounds below.
pub fn pgm_xor_ensemble_bound(m: usize, k: usize, t: u32, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    check_t(t, m, beta)?;
    Ok(pgm_xor_ensemble_bound_unchecked(m, k, t, beta))
}

/// The same formula without the certified-range guard on T.
pub fn pgm_xor_ensemble_bound_unchecked(m: usize, k: usize, t: u32, beta: f64) -> f64 {
    let tf = t as f64;
    let mf = m as f64;
    4.0 * E / (2.0f64).powi(k as i32)
        * (1.0 - beta / 2.0).powi(t as i32)
        * (22.0 * tf * tf * beta * beta / mf + 2.0 * (tf * mf * beta).sqrt()).exp()
}

fn check_pac_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 0.05) {
        return Err(Error::invalid(format!(
            "pac accuracy must lie in (0, 1/20), got {epsilon}"
        )));
    }
    Ok(())
}

/// PGM success bound for the pac ensemble on d points with message length k:
/// `(4e / 2^(k + T eps)) e^(8800 T^2 eps^2 / d + 4 sqrt(5 T d eps))`.
pub fn pgm_pac_bound(d: usize, k: usize, t: u32, epsilon: f64) -> Result<f64> {
    check_pac_epsilon(epsilon)?;
    check_t(t, d, 20.0 * epsilon)?;
    Ok(pgm_pac_bound_unchecked(d, k, t, epsilon))
}

/// The same formula without the certified-range guard on T.
pub fn pgm_pac_bound_unchecked(d: usize, k: usize, t: u32, epsilon: f64) -> f64 {
    let tf = t as f64;
    let df = d as f64;
    4.0 * E
        * (2.0f64).powf(-(k as f64 + tf * epsilon))
        * (8800.0 * tf * tf * epsilon * epsilon / df + 4.0 * (5.0 * tf * df * epsilon).sqrt()).exp()
}

fn check_agnostic_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 0.1) {
        return Err(Error::invalid(format!(
            "agnostic accuracy must lie in (0, 1/10), got {epsilon}"
        )));
    }
    Ok(())
}

/// PGM success bound for the agnostic ensemble:
/// `4e e^(-k ln 2 - 25 T eps^2) e^(220000 T^2 eps^4 / d + 20 sqrt(T d eps^2))`.
pub fn pgm_agnostic_bound(d: usize, k: usize, t: u32, epsilon: f64) -> Result<f64> {
    check_agnostic_epsilon(epsilon)?;
    check_t(t, d, 100.0 * epsilon * epsilon)?;
    Ok(pgm_agnostic_bound_unchecked(d, k, t, epsilon))
}

/// The same formula without the certified-range guard on T.
pub fn pgm_agnostic_bound_unchecked(d: usize, k: usize, t: u32, epsilon: f64) -> f64 {
    let tf = t as f64;
    let df = d as f64;
    let e2 = epsilon * epsilon;
    4.0 * E
        * (-(k as f64) * LN_2 - 25.0 * tf * e2
            + 220_000.0 * tf * tf * e2 * e2 / df
            + 20.0 * (tf * df * e2).sqrt())
        .exp()
}

fn check_eta(eta: f64) -> Result<()> {
    if !(0.0..0.5).contains(&eta) {
        return Err(Error::invalid(format!(
            "noise rate must lie in [0, 1/2), got {eta}"
        )));
    }
    Ok(())
}

/// Effective decay rate of the noisy pac ensemble:
/// `20 eps (1 - 2 sqrt(eta (1 - eta)))`.
pub fn noisy_effective_decay(epsilon: f64, eta: f64) -> f64 {
    20.0 * epsilon * (1.0 - 2.0 * (eta * (1.0 - eta)).sqrt())
}

/// PGM success bound for the noisy pac ensemble, via [`pgm_xor_ensemble_bound`]
/// at the effective decay rate.
pub fn pgm_noisy_bound(d: usize, k: usize, t: u32, epsilon: f64, eta: f64) -> Result<f64> {
    check_pac_epsilon(epsilon)?;
    check_eta(eta)?;
    pgm_xor_ensemble_bound(d, k, t, noisy_effective_decay(epsilon, eta))
}

/// The same formula without the certified-range guard on T.
pub fn pgm_noisy_bound_unchecked(d: usize, k: usize, t: u32, epsilon: f64, eta: f64) -> f64 {
    pgm_xor_ensemble_bound_unchecked(d, k, t, noisy_effective_decay(epsilon, eta))
}

/// PGM success bound for the codeword ensemble of an [n, k] code:
/// `(4e / 2^(k + T)) e^(22 T^2 / n + 2 sqrt(T n))`. Requires T <= n.
pub fn codeword_bound(n: usize, k: usize, t: u32) -> Result<f64> {
    if t < 1 {
        return Err(Error::invalid("copy count t must be at least 1"));
    }
    if t as usize > n {
        return Err(Error::invalid(format!(
            "codeword bound needs T <= n, got T = {t}, n = {n}"
        )));
    }
    let tf = t as f64;
    let nf = n as f64;
    Ok(4.0
        * E
        * (2.0f64).powf(-(k as f64 + tf))
        * (22.0 * tf * tf / nf + 2.0 * (tf * nf).sqrt()).exp())
}

/// Which sample-count expression to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SampleSetting {
    Pac,
    Agnostic,
    PacNoisy,
}

impl SampleSetting {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "pac" => Ok(SampleSetting::Pac),
            "agnostic" => Ok(SampleSetting::Agnostic),
            "pac_noisy" | "noisy" => Ok(SampleSetting::PacNoisy),
            other => Err(Error::invalid(format!("unknown setting {other:?}"))),
        }
    }
}

/// Reference sample-count expressions with all implied constants set to 1,
/// in bits: `d/eps + log2(1/delta)/eps` (pac),
/// `d/eps^2 + log2(1/delta)/eps^2` (agnostic), and the noisy-pac form of
/// [`sample_bound_noisy`]. These are order-of-magnitude reference lines for
/// plots, not certified inequalities.
pub fn sample_bounds(
    setting: SampleSetting,
    d: usize,
    epsilon: f64,
    delta: f64,
    eta: Option<f64>,
) -> Result<f64> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid(format!(
            "accuracy must lie in (0, 1), got {epsilon}"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid(format!(
            "confidence must lie in (0, 1), got {delta}"
        )));
    }
    let df = d as f64;
    let log_term = (1.0 / delta).log2();
    match setting {
        SampleSetting::Pac => Ok((df + log_term) / epsilon),
        SampleSetting::Agnostic => Ok((df + log_term) / (epsilon * epsilon)),
        SampleSetting::PacNoisy => {
            let eta = eta.ok_or_else(|| Error::invalid("noisy setting needs a noise rate"))?;
            sample_bound_noisy(d, epsilon, eta, delta)
        }
    }
}

/// Noisy-pac sample-count reference line with constant 1:
/// `(d + log2(1/delta)) / ((1 - 2 eta)^2 eps)`.
pub fn sample_bound_noisy(d: usize, epsilon: f64, eta: f64, delta: f64) -> Result<f64> {
    check_eta(eta)?;
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid(format!(
            "accuracy must lie in (0, 1), got {epsilon}"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid(format!(
            "confidence must lie in (0, 1), got {delta}"
        )));
    }
    let shrink = (1.0 - 2.0 * eta) * (1.0 - 2.0 * eta);
    Ok((d as f64 + (1.0 / delta).log2()) / (shrink * epsilon))
}

/// Minimax sample-count lower bound for average-error agnostic learning:
/// `(d / eps^2) (1/62 - log2(2d + 2) / (4d))`. May be negative for small d;
/// returned as-is.
pub fn minimax_agnostic_bound(d: usize, epsilon: f64) -> Result<f64> {
    if d == 0 {
        return Err(Error::invalid("d must be at least 1"));
    }
    if !(epsilon > 0.0 && epsilon <= 0.1) {
        return Err(Error::invalid(format!(
            "accuracy must lie in (0, 1/10], got {epsilon}"
        )));
    }
    let df = d as f64;
    Ok(df / (epsilon * epsilon) * (1.0 / 62.0 - (2.0 * df + 2.0).log2() / (4.0 * df)))
}

/// Binary entropy in bits, with H(0) = H(1) = 0 by continuity.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid(format!(
            "probability must lie in [0, 1], got {p}"
        )));
    }
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    Ok(-p * p.log2() - (1.0 - p) * (1.0 - p).log2())
}

/// Shannon entropy in bits of a probability vector (0 log 0 = 0).
pub fn entropy(probabilities: &[f64]) -> Result<f64> {
    if probabilities.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(Error::invalid(
            "probability vector entries must be finite and nonnegative",
        ));
    }
    let total: f64 = probabilities.iter().sum();
    if (total - 1.0).abs() > 1e-9 {
        return Err(Error::invalid(format!(
            "probability vector sums to {total}, expected 1"
        )));
    }
    Ok(probabilities
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum())
}

/// Upper bound `2^(n H(m/n))` on the binomial tail `sum_{i <= m} C(n, i)`,
/// valid for m <= n/2.
pub fn binomial_tail_bound(n: usize, m: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::invalid("n must be at least 1"));
    }
    if 2 * m > n {
        return Err(Error::invalid(format!(
            "tail bound needs m <= n/2, got m = {m}, n = {n}"
        )));
    }
    let h = binary_entropy(m as f64 / n as f64)?;
    Ok((2.0f64).powf(n as f64 * h))
}

/// `max over t in [1, c^2] of (c / sqrt(t))^t`, which equals `e^(c^2 / (2e))`.
/// Requires c >= 1 so the domain is nonempty.
pub fn max_c_over_sqrt_t(c: f64) -> Result<f64> {
    if !c.is_finite() || c < 1.0 {
        return Err(Error::invalid(format!("requires c >= 1, got {c}")));
    }
    Ok((c * c / (2.0 * E)).exp())
}

/// Small-bias entropy gap bound: `2 eps^2 / ln 2 + 2.2 eps^4`, an upper bound
/// for `1 - H(1/2 + eps)` verified on the grid (0, 0.25] step 0.01.
pub fn entropy_gap_quadratic_bound(epsilon: f64) -> f64 {
    2.0 * epsilon * epsilon / LN_2 + ENTROPY_GAP_QUARTIC_COEFF * epsilon.powi(4)
}

/// Linearithmic entropy bound: `2 eps log2(1/eps)`, an upper bound for
/// `H(eps)` on (0, 1/2] (equality at eps = 1/2).
pub fn entropy_linearithmic_bound(epsilon: f64) -> f64 {
    ENTROPY_LINEARITHMIC_COEFF * epsilon * (1.0 / epsilon).log2()
}

/// An evaluated bound next to the exact quantity it must dominate.
///
/// `satisfied` is always recomputed from the stored values.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub bound_value: f64,
    pub exact_value: Option<f64>,
    pub parameters: BTreeMap<String, f64>,
}

impl BoundReport {
    pub fn new(
        bound_value: f64,
        exact_value: Option<f64>,
        parameters: BTreeMap<String, f64>,
    ) -> Self {
        BoundReport {
            bound_value,
            exact_value,
            parameters,
        }
    }

    /// exact <= bound + 1e-12, or None when no exact value is attached.
    pub fn satisfied(&self) -> Option<bool> {
        self.exact_value.map(|e| e <= self.bound_value + 1e-12)
    }

    pub fn to_json(&self) -> String {
        let mut map = serde_json::Map::new();
        map.insert("bound_value".into(), json_number(self.bound_value));
        map.insert(
            "exact_value".into(),
            match self.exact_value {
                Some(v) => json_number(v),
                None => serde_json::Value::Null,
            },
        );
        map.insert(
            "satisfied".into(),
            match self.satisfied() {
                Some(b) => serde_json::Value::Bool(b),
                None => serde_json::Value::Null,
            },
        );
        let params: serde_json::Map<String, serde_json::Value> = self
            .parameters
            .iter()
            .map(|(k, v)| (k.clone(), json_number(*v)))
            .collect();
        map.insert("parameters".into(), serde_json::Value::Object(params));
        serde_json::Value::Object(map).to_string()
    }
}

/// Non-finite floats have no JSON number representation; emit null.
fn json_number(v: f64) -> serde_json::Value {
    serde_json::Number::from_f64(v)
        .map(serde_json::Value::Number)
        .unwrap_or(serde_json::Value::Null)
}
