//! Executable learner simulations: the one-example quantum learner for F2
//! linear labels, a majority-vote learner for empirical sample-complexity
//! curves, and identification experiments that sample measurement outcomes.
//!
//! All stochastic operations take an explicit seed; trials derive per-trial
//! sub-seeds so results are independent of evaluation order.

use std::collections::BTreeMap;

use rand::Rng;
use serde::Serialize;

use crate::bits::BitVec;
use crate::ensembles::Ensemble;
use crate::error::{Error, Result};
use crate::fourier::fwht;
use crate::pgm::PgmSampler;
use crate::rng::{child_seed, rng_from};

const BV_TAG: u64 = 0x6256; // "bV"
const TRIAL_TAG: u64 = 0x7472; // "tr"
const PGM_TAG: u64 = 0x7067; // "pg"

/// The statevector simulation holds 2^(n+1) amplitudes; cap the exponent.
pub const MAX_BV_BITS: usize = 16;
/// Ceiling for the empirical sample-complexity search.
pub const COMPLEXITY_SEARCH_CEILING: u64 = 1_000_000;
/// Trial budget guard for desk-scale experiments.
pub const MAX_TRIALS: u64 = 10_000;

/// Aggregated outcome of a repeated randomized experiment.
#[derive(Clone, Debug, Serialize)]
pub struct LearnerTrialReport {
    pub trials: u64,
    pub successes: u64,
    pub success_rate: f64,
    pub parameters: BTreeMap<String, f64>,
}

impl LearnerTrialReport {
    pub fn new(trials: u64, successes: u64, parameters: BTreeMap<String, f64>) -> Self {
        LearnerTrialReport {
            trials,
            successes,
            success_rate: successes as f64 / trials as f64,
            parameters,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serialization cannot fail")
    }
}

/// One run of the linear-label quantum learner.
///
/// The uniform example state (1/sqrt(2^n)) sum_x |x, a.x> is simulated as a
/// real statevector with the label in bit 0; applying a Hadamard to every
/// qubit concentrates half the mass on the outcome (a, 1). Sampling that
/// outcome recovers `a`; everything else lands on (0^n, 0) and is reported as
/// failure, so the success probability is exactly 1/2.
pub fn bv_quantum_learner<R: Rng>(a: &BitVec, rng: &mut R) -> Result<Option<BitVec>> {
    let n = a.len();
    if n == 0 {
        return Err(Error::invalid("hidden vector must have at least one bit"));
    }
    if n > MAX_BV_BITS {
        return Err(Error::resource(format!(
            "statevector simulation needs n <= {MAX_BV_BITS}, got n = {n}"
        )));
    }
    let a_index = a.index();
    let dim = 1usize << (n + 1);
    let amp = 1.0 / (1u64 << n) as f64; // squared amplitude per point
    let mut state = vec![0.0f64; dim];
    let base = amp.sqrt();
    for x in 0..1u64 << n {
        let label = ((x & a_index).count_ones() & 1) as u64;
        state[((x << 1) | label) as usize] = base;
    }
    // Hadamard on all n + 1 qubits is the scaled Walsh-Hadamard butterfly.
    fwht(&mut state)?;
    let scale = 1.0 / ((dim as f64).sqrt());
    let mut u: f64 = rng.gen();
    let mut outcome = dim - 1;
    for (idx, v) in state.iter().enumerate() {
        let p = (v * scale) * (v * scale);
        if u < p {
            outcome = idx;
            break;
        }
        u -= p;
    }
    let label = outcome & 1;
    let measured = (outcome >> 1) as u64;
    if label == 1 && measured == a_index {
        Ok(Some(BitVec::from_index(measured, n)))
    } else {
        Ok(None)
    }
}

/// Repeat the quantum learner over fresh seeds and report the recovery rate.
pub fn bv_success_experiment(a: &BitVec, trials: u64, seed: u64) -> Result<LearnerTrialReport> {
    if trials == 0 || trials > MAX_TRIALS {
        return Err(Error::invalid(format!(
            "trials must lie in 1..={MAX_TRIALS}, got {trials}"
        )));
    }
    let mut successes = 0;
    for trial in 0..trials {
        let mut rng = rng_from(child_seed(seed, BV_TAG, trial));
        if bv_quantum_learner(a, &mut rng)?.is_some() {
            successes += 1;
        }
    }
    let mut parameters = BTreeMap::new();
    parameters.insert("n".to_string(), a.len() as f64);
    parameters.insert("seed".to_string(), seed as f64);
    Ok(LearnerTrialReport::new(trials, successes, parameters))
}

/// One labeled draw from the heavy-point distribution: point 0 is the anchor
/// (always label 0), points 1..=d carry the labeling bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PacSample {
    pub point: usize,
    pub label: bool,
}

/// Draw `count` examples for labeling `a` under the anchor-weight-(1 - 4 eps)
/// distribution.
pub fn sample_pac_examples<R: Rng>(
    d: usize,
    epsilon: f64,
    a: &BitVec,
    count: u32,
    rng: &mut R,
) -> Result<Vec<PacSample>> {
    if a.len() != d {
        return Err(Error::invalid(format!(
            "labeling has {} bits, expected d = {d}",
            a.len()
        )));
    }
    if !(epsilon > 0.0 && epsilon < 0.25) {
        return Err(Error::invalid(format!(
            "accuracy must lie in (0, 1/4), got {epsilon}"
        )));
    }
    let light_total = 4.0 * epsilon;
    Ok((0..count)
        .map(|_| {
            if rng.gen::<f64>() < 1.0 - light_total {
                PacSample {
                    point: 0,
                    label: false,
                }
            } else {
                let point = 1 + rng.gen_range(0..d);
                PacSample {
                    point,
                    label: a.get(point - 1),
                }
            }
        })
        .collect())
}

/// Majority-vote hypothesis: bit i is the majority label observed at point
/// i + 1, defaulting to 0 for unseen points (ties also resolve to 0, matching
/// the unseen default).
pub fn erm_pac_learner(d: usize, samples: &[PacSample]) -> BitVec {
    let mut ones = vec![0i64; d];
    let mut totals = vec![0i64; d];
    for s in samples {
        if s.point >= 1 && s.point <= d {
            totals[s.point - 1] += 1;
            if s.label {
                ones[s.point - 1] += 1;
            }
        }
    }
    let mut hypothesis = BitVec::zeros(d);
    for i in 0..d {
        if 2 * ones[i] > totals[i] {
            hypothesis.set(i, true);
        }
    }
    hypothesis
}

/// Error of a hypothesis labeling against the truth under the heavy-point
/// distribution: d_H(a, h) * 4 eps / d.
pub fn pac_hypothesis_error(a: &BitVec, hypothesis: &BitVec, d: usize, epsilon: f64) -> f64 {
    a.xor(hypothesis).weight() as f64 * 4.0 * epsilon / d as f64
}

/// Which sampling model drives the empirical search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LearnSetting {
    Pac,
    Agnostic,
}

impl LearnSetting {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "pac" => Ok(LearnSetting::Pac),
            "agnostic" => Ok(LearnSetting::Agnostic),
            other => Err(Error::invalid(format!("unknown setting {other:?}"))),
        }
    }
}

fn trial_succeeds(setting: LearnSetting, d: usize, epsilon: f64, t: u32, seed: u64) -> bool {
    let mut rng = rng_from(seed);
    let mut a = BitVec::zeros(d);
    for i in 0..d {
        a.set(i, rng.gen::<bool>());
    }
    // Error <= eps iff the hypothesis is within Hamming distance d/4 of a,
    // in both sampling models (per-point weight 4 eps / d either way).
    let threshold = d / 4;
    let hypothesis = match setting {
        LearnSetting::Pac => {
            let samples = sample_pac_examples(d, epsilon, &a, t, &mut rng)
                .expect("parameters validated by caller");
            erm_pac_learner(d, &samples)
        }
        LearnSetting::Agnostic => {
            // Uniform point, label agreeing with a_i with probability 1/2 + 2 eps.
            let mut ones = vec![0i64; d];
            let mut totals = vec![0i64; d];
            for _ in 0..t {
                let point = rng.gen_range(0..d);
                let agree = rng.gen::<f64>() < 0.5 + 2.0 * epsilon;
                let label = a.get(point) == agree;
                totals[point] += 1;
                if label {
                    ones[point] += 1;
                }
            }
            let mut h = BitVec::zeros(d);
            for i in 0..d {
                if 2 * ones[i] > totals[i] {
                    h.set(i, true);
                }
            }
            h
        }
    };
    a.xor(&hypothesis).weight() <= threshold
}

fn success_rate(
    setting: LearnSetting,
    d: usize,
    epsilon: f64,
    t: u32,
    trials: u64,
    seed: u64,
) -> f64 {
    let mut successes = 0u64;
    for trial in 0..trials {
        let trial_seed = child_seed(seed, child_seed(t as u64, TRIAL_TAG, 0), trial);
        if trial_succeeds(setting, d, epsilon, t, trial_seed) {
            successes += 1;
        }
    }
    successes as f64 / trials as f64
}

/// Smallest example count whose empirical success rate reaches 1 - delta:
/// exponential bracketing followed by binary search, deterministic in the
/// seed. Fails with the ceiling error if no bracket is found by 10^6.
pub fn empirical_sample_complexity(
    setting: LearnSetting,
    d: usize,
    epsilon: f64,
    delta: f64,
    trials: u64,
    seed: u64,
) -> Result<u32> {
    if d == 0 || d > 16 {
        return Err(Error::invalid(format!(
            "desk-scale search needs 1 <= d <= 16, got {d}"
        )));
    }
    if !(epsilon > 0.0 && epsilon < 0.25) {
        return Err(Error::invalid(format!(
            "accuracy must lie in (0, 1/4), got {epsilon}"
        )));
    }
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::invalid(format!(
            "confidence must lie in (0, 1), got {delta}"
        )));
    }
    if trials == 0 || trials > MAX_TRIALS {
        return Err(Error::invalid(format!(
            "trials must lie in 1..={MAX_TRIALS}, got {trials}"
        )));
    }
    let target = 1.0 - delta;
    let good = |t: u32| success_rate(setting, d, epsilon, t, trials, seed) >= target;

    if good(1) {
        return Ok(1);
    }
    let mut lo = 1u32; // known bad
    let mut hi = 2u32;
    while !good(hi) {
        lo = hi;
        if u64::from(hi) * 2 > COMPLEXITY_SEARCH_CEILING {
            return Err(Error::SearchCeiling {
                ceiling: COMPLEXITY_SEARCH_CEILING,
            });
        }
        hi *= 2;
    }
    while lo + 1 < hi {
        let mid = lo + (hi - lo) / 2;
        if good(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Identification experiment: draw a message uniformly, sample one
/// measurement outcome for the T-copy ensemble, count exact identifications.
pub fn pgm_identification_experiment(
    ensemble: &Ensemble,
    trials: u64,
    seed: u64,
) -> Result<LearnerTrialReport> {
    let k = ensemble.code().k();
    if k > 8 {
        return Err(Error::resource(format!(
            "dense identification experiment needs k <= 8, got k = {k}"
        )));
    }
    if trials == 0 || trials > MAX_TRIALS {
        return Err(Error::invalid(format!(
            "trials must lie in 1..={MAX_TRIALS}, got {trials}"
        )));
    }
    let states = ensemble.states();
    let count = states.len();
    let probabilities = vec![1.0 / count as f64; count];
    let sampler = PgmSampler::new(&states, &probabilities, ensemble.t())?;

    let mut successes = 0u64;
    for trial in 0..trials {
        let mut rng = rng_from(child_seed(seed, PGM_TAG, trial));
        let truth = rng.gen_range(0..count);
        let outcome = sampler.sample(truth, &mut rng)?;
        if outcome == truth {
            successes += 1;
        }
    }

    let mut parameters = BTreeMap::new();
    parameters.insert("k".to_string(), k as f64);
    parameters.insert("m".to_string(), ensemble.ground_set_size() as f64);
    parameters.insert("t".to_string(), ensemble.t() as f64);
    parameters.insert("seed".to_string(), seed as f64);
    if let Some(eps) = ensemble.epsilon() {
        parameters.insert("epsilon".to_string(), eps);
    }
    if let Some(eta) = ensemble.eta() {
        parameters.insert("eta".to_string(), eta);
    }
    Ok(LearnerTrialReport::new(trials, successes, parameters))
}
