//! Example-state ensembles indexed by the messages of a binary linear code.
//!
//! Four families are provided. Each attaches to message `x` a real
//! nonnegative-amplitude unit vector whose pairwise inner products depend only
//! on the Hamming distance between codewords:
//!
//! * `pac` — one heavy point plus `d` light points labeled by the codeword;
//!   inner product `1 - 20 eps d_H / d`.
//! * `agnostic` — `d` points, both labels present with a `10 eps` bias toward
//!   the codeword bit; inner product `1 - (1 - sqrt(1 - 100 eps^2)) d_H / d`.
//! * `noisy` — the `pac` states with labels flipped coherently at rate `eta`;
//!   inner product `1 - (1 - 2 sqrt(eta (1 - eta))) 20 eps d_H / d`.
//! * `codeword` — uniform superposition over the n positions of a codeword;
//!   inner product `1 - d_H / n`.
//!
//! T-fold tensor powers are never materialized: every Gram computation raises
//! the single-copy inner product to the T-th power, which is exact and keeps
//! memory at O(4^k) instead of O(dim^T).

use serde::{Deserialize, Serialize};

use crate::codes::GeneratorMatrix;
use crate::error::{Error, Result};
use crate::fourier::BooleanFunction;
use crate::pgm::GramMatrix;

/// A pure state with real nonnegative amplitudes (square roots of
/// probabilities), normalized to unit length.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumExampleState {
    amplitudes: Vec<f64>,
}

impl QuantumExampleState {
    pub fn new(amplitudes: Vec<f64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::invalid("state needs at least one amplitude"));
        }
        if amplitudes.iter().any(|a| !a.is_finite() || *a < 0.0) {
            return Err(Error::invalid(
                "amplitudes must be finite and nonnegative (square-root probabilities)",
            ));
        }
        let norm_sq: f64 = amplitudes.iter().map(|a| a * a).sum();
        if (norm_sq - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(format!(
                "state is not normalized: |psi|^2 = {norm_sq}"
            )));
        }
        Ok(QuantumExampleState { amplitudes })
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn inner_product(&self, other: &QuantumExampleState) -> Result<f64> {
        if self.dimension() != other.dimension() {
            return Err(Error::invalid(format!(
                "state dimensions differ: {} vs {}",
                self.dimension(),
                other.dimension()
            )));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a * b)
            .sum())
    }
}

fn check_code_distance(d: usize, code: &GeneratorMatrix) -> Result<()> {
    if code.n() != d {
        return Err(Error::invalid(format!(
            "code length {} does not match the point count d = {d}",
            code.n()
        )));
    }
    let distance = code.min_distance()?;
    if 8 * distance < d {
        return Err(Error::invalid(format!(
            "code distance {distance} is below d/8 = {}",
            d as f64 / 8.0
        )));
    }
    Ok(())
}

/// Parameters of the heavy-point ensemble: distribution (1 - 20 eps) on the
/// anchor point and 20 eps / d on each labeled point.
#[derive(Clone, Debug)]
pub struct PacEnsembleParams {
    d: usize,
    epsilon: f64,
    t: u32,
    code: GeneratorMatrix,
}

impl PacEnsembleParams {
    pub fn new(d: usize, epsilon: f64, t: u32, code: GeneratorMatrix) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 0.05) {
            return Err(Error::invalid(format!(
                "pac accuracy must lie in (0, 1/20), got {epsilon}"
            )));
        }
        check_code_distance(d, &code)?;
        Ok(PacEnsembleParams {
            d,
            epsilon,
            t,
            code,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn code(&self) -> &GeneratorMatrix {
        &self.code
    }
}

/// Parameters of the two-label ensemble: per point, the codeword bit gets
/// probability (1 + 10 eps) / (2d) and the flipped bit (1 - 10 eps) / (2d).
#[derive(Clone, Debug)]
pub struct AgnosticEnsembleParams {
    d: usize,
    epsilon: f64,
    t: u32,
    code: GeneratorMatrix,
}

impl AgnosticEnsembleParams {
    pub fn new(d: usize, epsilon: f64, t: u32, code: GeneratorMatrix) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon < 0.1) {
            return Err(Error::invalid(format!(
                "agnostic accuracy must lie in (0, 1/10), got {epsilon}"
            )));
        }
        check_code_distance(d, &code)?;
        Ok(AgnosticEnsembleParams {
            d,
            epsilon,
            t,
            code,
        })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn code(&self) -> &GeneratorMatrix {
        &self.code
    }
}

/// The pac ensemble with each label flipped coherently at rate eta.
#[derive(Clone, Debug)]
pub struct NoisyPacEnsembleParams {
    pac: PacEnsembleParams,
    eta: f64,
}

impl NoisyPacEnsembleParams {
    pub fn new(pac: PacEnsembleParams, eta: f64) -> Result<Self> {
        if !(0.0..0.5).contains(&eta) {
            return Err(Error::invalid(format!(
                "noise rate must lie in [0, 1/2), got {eta}"
            )));
        }
        Ok(NoisyPacEnsembleParams { pac, eta })
    }

    pub fn pac(&self) -> &PacEnsembleParams {
        &self.pac
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }
}

/// Build the pac example state for message `x`.
pub fn pac_example_state(params: &PacEnsembleParams, x: u64) -> QuantumExampleState {
    let d = params.d;
    let heavy = (1.0 - 20.0 * params.epsilon).sqrt();
    let light = (20.0 * params.epsilon / d as f64).sqrt();
    let codeword = params.code.encode_index(x);
    let mut amplitudes = vec![0.0; 2 * (d + 1)];
    amplitudes[0] = heavy; // anchor point, label 0
    for i in 0..d {
        let label = usize::from(codeword.get(i));
        amplitudes[2 * (i + 1) + label] = light;
    }
    QuantumExampleState { amplitudes }
}

/// Build the agnostic example state for message `x`.
pub fn agnostic_example_state(params: &AgnosticEnsembleParams, x: u64) -> QuantumExampleState {
    let d = params.d;
    let bias = 10.0 * params.epsilon;
    let matching = ((1.0 + bias) / (2.0 * d as f64)).sqrt();
    let flipped = ((1.0 - bias) / (2.0 * d as f64)).sqrt();
    let codeword = params.code.encode_index(x);
    let mut amplitudes = vec![0.0; 2 * d];
    for i in 0..d {
        let bit = usize::from(codeword.get(i));
        amplitudes[2 * i + bit] = matching;
        amplitudes[2 * i + (1 - bit)] = flipped;
    }
    QuantumExampleState { amplitudes }
}

/// Build the noisy pac example state for message `x`; eta = 0 reproduces
/// [`pac_example_state`] exactly.
pub fn noisy_pac_example_state(params: &NoisyPacEnsembleParams, x: u64) -> QuantumExampleState {
    let pac = &params.pac;
    let d = pac.d;
    let eta = params.eta;
    let heavy = 1.0 - 20.0 * pac.epsilon;
    let light = 20.0 * pac.epsilon / d as f64;
    let codeword = pac.code.encode_index(x);
    let mut amplitudes = vec![0.0; 2 * (d + 1)];
    amplitudes[0] = ((1.0 - eta) * heavy).sqrt();
    amplitudes[1] = (eta * heavy).sqrt();
    for i in 0..d {
        let label = usize::from(codeword.get(i));
        amplitudes[2 * (i + 1) + label] = ((1.0 - eta) * light).sqrt();
        amplitudes[2 * (i + 1) + (1 - label)] = (eta * light).sqrt();
    }
    QuantumExampleState { amplitudes }
}

/// Build the uniform codeword state for message `x`.
pub fn codeword_state(code: &GeneratorMatrix, x: u64) -> QuantumExampleState {
    let n = code.n();
    let amp = (1.0 / n as f64).sqrt();
    let codeword = code.encode_index(x);
    let mut amplitudes = vec![0.0; 2 * n];
    for i in 0..n {
        amplitudes[2 * i + usize::from(codeword.get(i))] = amp;
    }
    QuantumExampleState { amplitudes }
}

/// One of the four state families, with its copy count.
#[derive(Clone, Debug)]
pub enum Ensemble {
    Pac(PacEnsembleParams),
    Agnostic(AgnosticEnsembleParams),
    NoisyPac(NoisyPacEnsembleParams),
    Codeword { code: GeneratorMatrix, t: u32 },
}

/// Discriminant for serialization and dispatch.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnsembleKind {
    Pac,
    Agnostic,
    NoisyPac,
    Codeword,
}

impl EnsembleKind {
    pub fn name(self) -> &'static str {
        match self {
            EnsembleKind::Pac => "pac",
            EnsembleKind::Agnostic => "agnostic",
            EnsembleKind::NoisyPac => "noisy",
            EnsembleKind::Codeword => "codeword",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "pac" => Ok(EnsembleKind::Pac),
            "agnostic" => Ok(EnsembleKind::Agnostic),
            "noisy" => Ok(EnsembleKind::NoisyPac),
            "codeword" => Ok(EnsembleKind::Codeword),
            other => Err(Error::invalid(format!("unknown ensemble kind {other:?}"))),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct EnsembleJson {
    kind: String,
    d: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    epsilon: Option<f64>,
    #[serde(rename = "T", alias = "t")]
    t: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    eta: Option<f64>,
    code: serde_json::Value,
}

impl Ensemble {
    pub fn kind(&self) -> EnsembleKind {
        match self {
            Ensemble::Pac(_) => EnsembleKind::Pac,
            Ensemble::Agnostic(_) => EnsembleKind::Agnostic,
            Ensemble::NoisyPac(_) => EnsembleKind::NoisyPac,
            Ensemble::Codeword { .. } => EnsembleKind::Codeword,
        }
    }

    pub fn code(&self) -> &GeneratorMatrix {
        match self {
            Ensemble::Pac(p) => p.code(),
            Ensemble::Agnostic(p) => p.code(),
            Ensemble::NoisyPac(p) => p.pac().code(),
            Ensemble::Codeword { code, .. } => code,
        }
    }

    pub fn t(&self) -> u32 {
        match self {
            Ensemble::Pac(p) => p.t(),
            Ensemble::Agnostic(p) => p.t(),
            Ensemble::NoisyPac(p) => p.pac().t(),
            Ensemble::Codeword { t, .. } => *t,
        }
    }

    pub fn with_t(&self, t: u32) -> Ensemble {
        let mut out = self.clone();
        match &mut out {
            Ensemble::Pac(p) => p.t = t,
            Ensemble::Agnostic(p) => p.t = t,
            Ensemble::NoisyPac(p) => p.pac.t = t,
            Ensemble::Codeword { t: slot, .. } => *slot = t,
        }
        out
    }

    pub fn epsilon(&self) -> Option<f64> {
        match self {
            Ensemble::Pac(p) => Some(p.epsilon()),
            Ensemble::Agnostic(p) => Some(p.epsilon()),
            Ensemble::NoisyPac(p) => Some(p.pac().epsilon()),
            Ensemble::Codeword { .. } => None,
        }
    }

    pub fn eta(&self) -> Option<f64> {
        match self {
            Ensemble::NoisyPac(p) => Some(p.eta()),
            _ => None,
        }
    }

    /// Size of the ground set the decay is measured against (d, or n for
    /// codeword states).
    pub fn ground_set_size(&self) -> usize {
        match self {
            Ensemble::Pac(p) => p.d(),
            Ensemble::Agnostic(p) => p.d(),
            Ensemble::NoisyPac(p) => p.pac().d(),
            Ensemble::Codeword { code, .. } => code.n(),
        }
    }

    /// The per-unit-distance decay rate beta of the single-copy inner product
    /// `1 - beta d_H / m`. Always in (0, 1].
    pub fn decay_rate(&self) -> f64 {
        match self {
            Ensemble::Pac(p) => 20.0 * p.epsilon(),
            Ensemble::Agnostic(p) => {
                let e = p.epsilon();
                1.0 - (1.0 - 100.0 * e * e).sqrt()
            }
            Ensemble::NoisyPac(p) => {
                let eta = p.eta();
                20.0 * p.pac().epsilon() * (1.0 - 2.0 * (eta * (1.0 - eta)).sqrt())
            }
            Ensemble::Codeword { .. } => 1.0,
        }
    }

    /// The single-copy state attached to message `x`.
    pub fn state(&self, x: u64) -> QuantumExampleState {
        match self {
            Ensemble::Pac(p) => pac_example_state(p, x),
            Ensemble::Agnostic(p) => agnostic_example_state(p, x),
            Ensemble::NoisyPac(p) => noisy_pac_example_state(p, x),
            Ensemble::Codeword { code, .. } => codeword_state(code, x),
        }
    }

    /// All 2^k single-copy states in message order.
    pub fn states(&self) -> Vec<QuantumExampleState> {
        (0..1u64 << self.code().k())
            .map(|x| self.state(x))
            .collect()
    }

    /// Closed-form Gram entry for a pair of messages at codeword distance
    /// `hamming`: 2^-k (1 - beta hamming / m)^T.
    pub fn gram_entry_closed_form(&self, hamming: usize) -> Result<f64> {
        let m = self.ground_set_size();
        if hamming > m {
            return Err(Error::invalid(format!(
                "hamming distance {hamming} exceeds the ground set size {m}"
            )));
        }
        let beta = self.decay_rate();
        let base = 1.0 - beta * hamming as f64 / m as f64;
        Ok(base.powi(self.t() as i32) / (1u64 << self.code().k()) as f64)
    }

    /// The full closed-form Gram matrix (uniform prior over 2^k messages).
    pub fn gram_closed_form(&self) -> Result<GramMatrix> {
        let k = self.code().k();
        let weights = self.code().codeword_weights()?;
        let size = 1usize << k;
        let mut entries = vec![0.0; size * size];
        for x in 0..size {
            for y in 0..size {
                let h = weights[x ^ y];
                entries[x * size + y] = self.gram_entry_closed_form(h)?;
            }
        }
        GramMatrix::from_entries(size, entries)
    }

    /// The function g on message space with g(z) = (1 - beta |Mz| / m)^T, so
    /// the scaled Gram matrix is A(x, y) = g(x xor y).
    pub fn xor_profile(&self) -> Result<BooleanFunction> {
        let m = self.ground_set_size() as f64;
        let beta = self.decay_rate();
        let t = self.t() as i32;
        let weights = self.code().codeword_weights()?;
        let values = weights
            .iter()
            .map(|&w| (1.0 - beta * w as f64 / m).powi(t))
            .collect();
        BooleanFunction::new(self.code().k(), values)
    }

    pub fn to_json(&self) -> String {
        let code: serde_json::Value =
            serde_json::from_str(&self.code().to_json()).expect("matrix JSON is valid");
        let json = EnsembleJson {
            kind: self.kind().name().to_string(),
            d: self.ground_set_size(),
            epsilon: self.epsilon(),
            t: self.t(),
            eta: self.eta(),
            code,
        };
        serde_json::to_string(&json).expect("ensemble serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: EnsembleJson = serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("malformed ensemble JSON: {e}")))?;
        let code = GeneratorMatrix::from_json(&parsed.code.to_string())?;
        let kind = EnsembleKind::parse(&parsed.kind)?;
        let need_eps = || {
            parsed
                .epsilon
                .ok_or_else(|| Error::invalid("ensemble JSON is missing epsilon"))
        };
        match kind {
            EnsembleKind::Pac => Ok(Ensemble::Pac(PacEnsembleParams::new(
                parsed.d,
                need_eps()?,
                parsed.t,
                code,
            )?)),
            EnsembleKind::Agnostic => Ok(Ensemble::Agnostic(AgnosticEnsembleParams::new(
                parsed.d,
                need_eps()?,
                parsed.t,
                code,
            )?)),
            EnsembleKind::NoisyPac => {
                let eta = parsed
                    .eta
                    .ok_or_else(|| Error::invalid("noisy ensemble JSON is missing eta"))?;
                let pac = PacEnsembleParams::new(parsed.d, need_eps()?, parsed.t, code)?;
                Ok(Ensemble::NoisyPac(NoisyPacEnsembleParams::new(pac, eta)?))
            }
            EnsembleKind::Codeword => Ok(Ensemble::Codeword { code, t: parsed.t }),
        }
    }
}

/// Gram matrix of probability-weighted T-copy states by direct inner products:
/// entry (x, y) is sqrt(p_x p_y) <psi_x|psi_y>^T.
pub fn gram_matrix_direct(
    states: &[QuantumExampleState],
    probabilities: &[f64],
    t: u32,
) -> Result<GramMatrix> {
    if states.is_empty() {
        return Err(Error::invalid("ensemble must contain at least one state"));
    }
    if states.len() != probabilities.len() {
        return Err(Error::invalid(format!(
            "{} states but {} probabilities",
            states.len(),
            probabilities.len()
        )));
    }
    let dim = states[0].dimension();
    if states.iter().any(|s| s.dimension() != dim) {
        return Err(Error::invalid("states have mismatched dimensions"));
    }
    if probabilities.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::invalid("probabilities must lie in [0, 1]"));
    }
    let total: f64 = probabilities.iter().sum();
    if (total - 1.0).abs() > 1e-12 {
        return Err(Error::invalid(format!(
            "probabilities sum to {total}, expected 1"
        )));
    }

    let size = states.len();
    let roots: Vec<f64> = probabilities.iter().map(|p| p.sqrt()).collect();
    let mut entries = vec![0.0; size * size];
    for x in 0..size {
        for y in x..size {
            let ip = states[x]
                .inner_product(&states[y])
                .expect("dimensions checked above");
            let value = roots[x] * roots[y] * ip.powi(t as i32);
            entries[x * size + y] = value;
            entries[y * size + x] = value;
        }
    }
    GramMatrix::from_entries(size, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::find_good_code;

    fn pac16() -> PacEnsembleParams {
        let (code, _) = find_good_code(16, 11).unwrap();
        PacEnsembleParams::new(16, 0.04, 1, code).unwrap()
    }

    #[test]
    fn pac_state_shape() {
        let params = pac16();
        let zero = pac_example_state(&params, 0);
        // All labels zero for the zero message; anchor weight 1 - 20 eps.
        assert!((zero.amplitudes()[0].powi(2) - 0.2).abs() < 1e-15);
        for i in 0..16 {
            assert_eq!(zero.amplitudes()[2 * (i + 1) + 1], 0.0);
        }
        for x in 0..16u64 {
            let s = pac_example_state(&params, x);
            let norm: f64 = s.amplitudes().iter().map(|a| a * a).sum();
            assert!((norm - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn pac_inner_product_tracks_distance() {
        let params = pac16();
        let weights = params.code().codeword_weights().unwrap();
        for x in 0..16u64 {
            for y in 0..16u64 {
                let h = weights[(x ^ y) as usize] as f64;
                let expected = 1.0 - 0.8 * h / 16.0;
                let got = pac_example_state(&params, x)
                    .inner_product(&pac_example_state(&params, y))
                    .unwrap();
                assert!((got - expected).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pac_rejects_bad_epsilon() {
        let (code, _) = find_good_code(16, 11).unwrap();
        assert!(PacEnsembleParams::new(16, 0.05, 1, code.clone()).is_err());
        assert!(PacEnsembleParams::new(16, 0.0, 1, code).is_err());
    }

    #[test]
    fn agnostic_state_and_flat_limit() {
        let (code, _) = find_good_code(16, 11).unwrap();
        let params = AgnosticEnsembleParams::new(16, 0.06, 1, code.clone()).unwrap();
        for x in [0u64, 5, 9] {
            let s = agnostic_example_state(&params, x);
            let norm: f64 = s.amplitudes().iter().map(|a| a * a).sum();
            assert!((norm - 1.0).abs() < 1e-12);
        }
        // Tiny epsilon: states barely depend on the message.
        let flat = AgnosticEnsembleParams::new(16, 1e-9, 1, code).unwrap();
        let a = agnostic_example_state(&flat, 0);
        let b = agnostic_example_state(&flat, 7);
        assert!((a.inner_product(&b).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn agnostic_inner_product_closed_form() {
        let (code, _) = find_good_code(16, 11).unwrap();
        let params = AgnosticEnsembleParams::new(16, 0.06, 1, code).unwrap();
        let weights = params.code().codeword_weights().unwrap();
        // beta = 1 - sqrt(1 - 100 eps^2) = 0.2 at eps = 0.06.
        for (x, y) in [(0u64, 3u64), (1, 14), (2, 2)] {
            let h = weights[(x ^ y) as usize] as f64;
            let expected = 1.0 - 0.2 * h / 16.0;
            let got = agnostic_example_state(&params, x)
                .inner_product(&agnostic_example_state(&params, y))
                .unwrap();
            assert!((got - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn noisy_reduces_to_pac_at_zero_noise() {
        let params = NoisyPacEnsembleParams::new(pac16(), 0.0).unwrap();
        for x in 0..16u64 {
            assert_eq!(
                noisy_pac_example_state(&params, x),
                pac_example_state(params.pac(), x)
            );
        }
        assert!(NoisyPacEnsembleParams::new(pac16(), 0.5).is_err());
    }

    #[test]
    fn noisy_inner_product_closed_form() {
        let eta = 0.1;
        let params = NoisyPacEnsembleParams::new(pac16(), eta).unwrap();
        let weights = params.pac().code().codeword_weights().unwrap();
        let shrink = 1.0 - 2.0 * (eta * (1.0 - eta)).sqrt();
        for (x, y) in [(0u64, 1u64), (3, 12), (7, 7)] {
            let h = weights[(x ^ y) as usize] as f64;
            let expected = 1.0 - shrink * 0.8 * h / 16.0;
            let got = noisy_pac_example_state(&params, x)
                .inner_product(&noisy_pac_example_state(&params, y))
                .unwrap();
            assert!((got - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn codeword_states() {
        // Repetition code: the two codewords have disjoint labels.
        let code = GeneratorMatrix::new(
            5,
            vec![crate::bits::BitVec::from_bitstring("11111").unwrap()],
        )
        .unwrap();
        let a = codeword_state(&code, 0);
        let b = codeword_state(&code, 1);
        assert!((a.inner_product(&a).unwrap() - 1.0).abs() < 1e-15);
        assert!(a.inner_product(&b).unwrap().abs() < 1e-15);

        let (code, _) = find_good_code(16, 2).unwrap();
        let weights = code.codeword_weights().unwrap();
        for (x, y) in [(0u64, 9u64), (4, 7)] {
            let expected = 1.0 - weights[(x ^ y) as usize] as f64 / 16.0;
            let got = codeword_state(&code, x)
                .inner_product(&codeword_state(&code, y))
                .unwrap();
            assert!((got - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn gram_direct_basics() {
        // Orthonormal pair, uniform prior, T = 1: Gram is identity / 2.
        let e0 = QuantumExampleState::new(vec![1.0, 0.0]).unwrap();
        let e1 = QuantumExampleState::new(vec![0.0, 1.0]).unwrap();
        let g = gram_matrix_direct(&[e0, e1], &[0.5, 0.5], 1).unwrap();
        assert!((g.entry(0, 0) - 0.5).abs() < 1e-15);
        assert!(g.entry(0, 1).abs() < 1e-15);

        // Diagonal entries are the probabilities for unit-norm states.
        // Columns with disjoint supports give a [16, 4] code whose first
        // column is a weight-2 codeword at message 0001.
        let cols = vec![
            crate::bits::BitVec::from_bitstring("1100000000000000").unwrap(),
            crate::bits::BitVec::from_bitstring("0011100000000000").unwrap(),
            crate::bits::BitVec::from_bitstring("0000011100000000").unwrap(),
            crate::bits::BitVec::from_bitstring("0000000011100000").unwrap(),
        ];
        let code = GeneratorMatrix::new(16, cols).unwrap();
        assert_eq!(code.min_distance().unwrap(), 2);
        let params = PacEnsembleParams::new(16, 0.04, 3, code).unwrap();
        let states: Vec<_> = (0..16).map(|x| pac_example_state(&params, x)).collect();
        let probs = vec![1.0 / 16.0; 16];
        let g = gram_matrix_direct(&states, &probs, 3).unwrap();
        for x in 0..16 {
            assert!((g.entry(x, x) - 1.0 / 16.0).abs() < 1e-15);
        }
        // Pair at code distance 2: entry 2^-4 * 0.9^3 = 0.0455625.
        let expected = 0.0455625;
        assert!((g.entry(0, 1) - expected).abs() < 1e-12);
    }

    #[test]
    fn gram_direct_rejects_bad_probabilities() {
        let e0 = QuantumExampleState::new(vec![1.0, 0.0]).unwrap();
        let e1 = QuantumExampleState::new(vec![0.0, 1.0]).unwrap();
        assert!(gram_matrix_direct(&[e0.clone(), e1.clone()], &[0.6, 0.6], 1).is_err());
        assert!(gram_matrix_direct(&[e0, e1], &[0.5], 1).is_err());
    }

    #[test]
    fn closed_form_matches_direct_for_every_kind() {
        let (code, _) = find_good_code(16, 11).unwrap();
        let ensembles = vec![
            Ensemble::Pac(PacEnsembleParams::new(16, 0.04, 3, code.clone()).unwrap()),
            Ensemble::Agnostic(AgnosticEnsembleParams::new(16, 0.06, 2, code.clone()).unwrap()),
            Ensemble::NoisyPac(
                NoisyPacEnsembleParams::new(
                    PacEnsembleParams::new(16, 0.04, 2, code.clone()).unwrap(),
                    0.1,
                )
                .unwrap(),
            ),
            Ensemble::Codeword { code, t: 4 },
        ];
        for ens in ensembles {
            let states = ens.states();
            let probs = vec![1.0 / states.len() as f64; states.len()];
            let direct = gram_matrix_direct(&states, &probs, ens.t()).unwrap();
            let closed = ens.gram_closed_form().unwrap();
            for x in 0..states.len() {
                for y in 0..states.len() {
                    assert!((direct.entry(x, y) - closed.entry(x, y)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn closed_form_entry_spot_values() {
        let (code, _) = find_good_code(16, 11).unwrap();
        let k = code.k();
        let pac = Ensemble::Pac(PacEnsembleParams::new(16, 0.04, 1, code.clone()).unwrap());
        assert!((pac.gram_entry_closed_form(0).unwrap() - 0.5f64.powi(k as i32)).abs() < 1e-15);

        let agn =
            Ensemble::Agnostic(AgnosticEnsembleParams::new(16, 0.06, 2, code.clone()).unwrap());
        let expected = 0.9025 / (1u64 << k) as f64; // (0.95)^2
        assert!((agn.gram_entry_closed_form(4).unwrap() - expected).abs() < 1e-15);

        let cw = Ensemble::Codeword { code, t: 3 };
        assert_eq!(cw.gram_entry_closed_form(16).unwrap(), 0.0);
        assert!(cw.gram_entry_closed_form(17).is_err());
    }

    #[test]
    fn gram_entries_depend_only_on_xor() {
        let (code, _) = find_good_code(16, 11).unwrap();
        let ens = Ensemble::Pac(PacEnsembleParams::new(16, 0.04, 5, code).unwrap());
        let states = ens.states();
        let probs = vec![1.0 / 16.0; 16];
        let g = gram_matrix_direct(&states, &probs, ens.t()).unwrap();
        for x in 0..16usize {
            for y in 0..16usize {
                let z = x ^ y;
                assert!((g.entry(x, y) - g.entry(z, 0)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn pairwise_concept_distance_meets_code_guarantee() {
        // Pr[c_x(s) != c_y(s)] = 20 eps d_H / d >= 5 eps / 2 when distance >= d/8.
        let params = pac16();
        let eps = params.epsilon();
        let d = params.d() as f64;
        let weights = params.code().codeword_weights().unwrap();
        for &w in weights.iter().skip(1) {
            let disagree = 20.0 * eps * w as f64 / d;
            assert!(disagree >= 2.5 * eps - 1e-12);
        }
    }

    #[test]
    fn ensemble_json_roundtrip() {
        let (code, _) = find_good_code(16, 11).unwrap();
        let ens = Ensemble::NoisyPac(
            NoisyPacEnsembleParams::new(PacEnsembleParams::new(16, 0.04, 7, code).unwrap(), 0.25)
                .unwrap(),
        );
        let text = ens.to_json();
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["T"], serde_json::json!(7));
        let back = Ensemble::from_json(&text).unwrap();
        assert_eq!(back.kind(), EnsembleKind::NoisyPac);
        assert_eq!(back.t(), 7);
        assert_eq!(back.eta(), Some(0.25));
        assert_eq!(back.code(), ens.code());
        assert!((back.decay_rate() - ens.decay_rate()).abs() < 1e-15);
    }
}
