//! Binary linear codes: generator matrices, encoding, rank, minimum distance,
//! and randomized search for codes with rate 1/4 and relative distance 1/8.
//!
//! A generator matrix is stored column-major: encoding XORs whole bit-packed
//! columns, which is the hot path when Gram matrices sweep all messages.

use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::error::{Error, Result};
use crate::rng::{child_seed, rng_from};
use rand::Rng;

/// Exhaustive distance enumeration walks all 2^k messages; cap the exponent.
pub const MAX_DISTANCE_MESSAGE_BITS: usize = 24;
/// Candidate budget for randomized code search.
pub const CODE_SEARCH_BUDGET: usize = 10_000;

const CODE_SEARCH_TAG: u64 = 0x636f6465; // "code"

/// An n x k generator matrix over F2 with full column rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    n: usize,
    k: usize,
    cols: Vec<BitVec>,
}

/// Summary parameters of a verified code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSpec {
    pub n: usize,
    pub k: usize,
    pub min_distance: usize,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    k: usize,
    rows: Vec<String>,
}

impl GeneratorMatrix {
    /// Build from columns of length `n`. Requires 1 <= k <= n and full column rank.
    pub fn new(n: usize, cols: Vec<BitVec>) -> Result<Self> {
        let k = cols.len();
        if k == 0 || k > n {
            return Err(Error::invalid(format!(
                "generator matrix needs 1 <= k <= n, got n={n}, k={k}"
            )));
        }
        for (j, col) in cols.iter().enumerate() {
            if col.len() != n {
                return Err(Error::invalid(format!(
                    "column {j} has length {}, expected {n}",
                    col.len()
                )));
            }
        }
        if rank_f2(&cols) != k {
            return Err(Error::invalid(format!(
                "generator matrix columns are linearly dependent (rank {} < k = {k})",
                rank_f2(&cols)
            )));
        }
        Ok(GeneratorMatrix { n, k, cols })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn column(&self, j: usize) -> &BitVec {
        &self.cols[j]
    }

    pub fn row(&self, i: usize) -> BitVec {
        let mut r = BitVec::zeros(self.k);
        for j in 0..self.k {
            r.set(j, self.cols[j].get(i));
        }
        r
    }

    /// Encode a message: Mx over F2 (XOR of the columns selected by x).
    pub fn encode(&self, x: &BitVec) -> Result<BitVec> {
        if x.len() != self.k {
            return Err(Error::invalid(format!(
                "message has {} bits, expected k = {}",
                x.len(),
                self.k
            )));
        }
        let mut word = BitVec::zeros(self.n);
        for j in 0..self.k {
            if x.get(j) {
                word.xor_assign(&self.cols[j]);
            }
        }
        Ok(word)
    }

    /// Encode the message whose bits are the low `k` bits of `x`.
    pub fn encode_index(&self, x: u64) -> BitVec {
        debug_assert!(self.k <= 64);
        let mut word = BitVec::zeros(self.n);
        for j in 0..self.k {
            if (x >> j) & 1 == 1 {
                word.xor_assign(&self.cols[j]);
            }
        }
        word
    }

    /// Hamming weight of the codeword for message index `x`.
    pub fn codeword_weight(&self, x: u64) -> usize {
        self.encode_index(x).weight()
    }

    /// Weights of all 2^k codewords, indexed by message, via a Gray-code walk.
    pub fn codeword_weights(&self) -> Result<Vec<usize>> {
        if self.k > MAX_DISTANCE_MESSAGE_BITS {
            return Err(Error::resource(format!(
                "codeword enumeration needs k <= {MAX_DISTANCE_MESSAGE_BITS}, got k = {}",
                self.k
            )));
        }
        let total = 1usize << self.k;
        let mut weights = vec![0usize; total];
        let mut current = BitVec::zeros(self.n);
        let mut gray_prev = 0u64;
        for step in 1..total as u64 {
            let gray = step ^ (step >> 1);
            let flipped = (gray ^ gray_prev).trailing_zeros() as usize;
            current.xor_assign(&self.cols[flipped]);
            weights[gray as usize] = current.weight();
            gray_prev = gray;
        }
        Ok(weights)
    }

    pub fn rank(&self) -> usize {
        rank_f2(&self.cols)
    }

    /// Minimum Hamming weight over nonzero codewords (= minimum distance).
    pub fn min_distance(&self) -> Result<usize> {
        let weights = self.codeword_weights()?;
        Ok(weights[1..].iter().copied().min().unwrap_or(0))
    }

    /// M^t s: a k-bit vector whose j-th bit is the parity of column j AND s.
    pub fn transpose_apply(&self, s: &BitVec) -> BitVec {
        debug_assert_eq!(s.len(), self.n);
        let mut out = BitVec::zeros(self.k);
        for j in 0..self.k {
            out.set(j, self.cols[j].parity_and(s));
        }
        out
    }

    /// Serialize as `{n, k, rows}` with one k-character bitstring per row.
    pub fn to_json(&self) -> String {
        let rows = (0..self.n).map(|i| self.row(i).to_bitstring()).collect();
        serde_json::to_string(&MatrixJson {
            n: self.n,
            k: self.k,
            rows,
        })
        .expect("matrix serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: MatrixJson = serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("malformed matrix JSON: {e}")))?;
        if parsed.rows.len() != parsed.n {
            return Err(Error::invalid(format!(
                "matrix JSON declares n = {} but has {} rows",
                parsed.n,
                parsed.rows.len()
            )));
        }
        let mut cols = vec![BitVec::zeros(parsed.n); parsed.k];
        for (i, row) in parsed.rows.iter().enumerate() {
            let bits = BitVec::from_bitstring(row)?;
            if bits.len() != parsed.k {
                return Err(Error::invalid(format!(
                    "row {i} has {} bits, expected k = {}",
                    bits.len(),
                    parsed.k
                )));
            }
            for (j, col) in cols.iter_mut().enumerate() {
                col.set(i, bits.get(j));
            }
        }
        GeneratorMatrix::new(parsed.n, cols)
    }
}

/// F2 rank of a set of equal-length bit vectors, by Gaussian elimination on
/// packed words.
pub fn rank_f2(vectors: &[BitVec]) -> usize {
    let mut basis: Vec<BitVec> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    'outer: for v in vectors {
        let mut v = v.clone();
        loop {
            let lead = match (0..v.len()).find(|&i| v.get(i)) {
                Some(i) => i,
                None => continue 'outer, // reduced to zero
            };
            match pivots.iter().position(|&p| p == lead) {
                Some(idx) => {
                    let b = basis[idx].clone();
                    v.xor_assign(&b);
                }
                None => {
                    basis.push(v);
                    pivots.push(lead);
                    continue 'outer;
                }
            }
        }
    }
    basis.len()
}

fn random_matrix_cols<R: Rng>(n: usize, k: usize, rng: &mut R) -> Vec<BitVec> {
    (0..k)
        .map(|_| {
            let mut col = BitVec::zeros(n);
            for i in 0..n {
                col.set(i, rng.gen::<bool>());
            }
            col
        })
        .collect()
}

/// A uniformly random full-column-rank n x k matrix, deterministic in the seed.
pub fn random_full_rank(n: usize, k: usize, seed: u64) -> Result<GeneratorMatrix> {
    if k == 0 || k > n {
        return Err(Error::invalid(format!(
            "random_full_rank needs 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    for attempt in 0..CODE_SEARCH_BUDGET {
        let mut rng = rng_from(child_seed(seed, CODE_SEARCH_TAG, attempt as u64));
        let cols = random_matrix_cols(n, k, &mut rng);
        if rank_f2(&cols) == k {
            return Ok(GeneratorMatrix { n, k, cols });
        }
    }
    Err(Error::CodeSearchFailed {
        attempts: CODE_SEARCH_BUDGET,
        best_distance: 0,
        required: 0,
    })
}

/// Rejection-sample uniform n x k matrices until one has full rank and
/// verified minimum distance >= `required_distance`.
///
/// Candidates are drawn in a seed-derived order, and the first success in that
/// order is returned, so the result is deterministic for a given seed.
pub fn random_code(
    n: usize,
    k: usize,
    required_distance: usize,
    seed: u64,
) -> Result<(GeneratorMatrix, CodeSpec)> {
    if k == 0 || k > n {
        return Err(Error::invalid(format!(
            "random_code needs 1 <= k <= n, got n={n}, k={k}"
        )));
    }
    if k > MAX_DISTANCE_MESSAGE_BITS {
        return Err(Error::resource(format!(
            "distance verification needs k <= {MAX_DISTANCE_MESSAGE_BITS}, got k = {k}"
        )));
    }
    let mut best = 0usize;
    for attempt in 0..CODE_SEARCH_BUDGET {
        let mut rng = rng_from(child_seed(seed, CODE_SEARCH_TAG, attempt as u64));
        let cols = random_matrix_cols(n, k, &mut rng);
        if rank_f2(&cols) != k {
            continue;
        }
        let matrix = GeneratorMatrix { n, k, cols };
        let distance = matrix.min_distance()?;
        if distance >= required_distance {
            let spec = CodeSpec {
                n,
                k,
                min_distance: distance,
            };
            return Ok((matrix, spec));
        }
        best = best.max(distance);
    }
    Err(Error::CodeSearchFailed {
        attempts: CODE_SEARCH_BUDGET,
        best_distance: best,
        required: required_distance,
    })
}

/// Find an [n, ceil(n/4), >= ceil(n/8)] code by randomized search.
///
/// The smallest admissible message length is used so that downstream Gram
/// matrices (size 2^k) stay as small as possible. Requires 16 <= n <= 96.
pub fn find_good_code(n: usize, seed: u64) -> Result<(GeneratorMatrix, CodeSpec)> {
    if !(16..=96).contains(&n) {
        return Err(Error::invalid(format!(
            "find_good_code needs 16 <= n <= 96, got n = {n}"
        )));
    }
    let k = n.div_ceil(4);
    let required = n.div_ceil(8);
    random_code(n, k, required, seed)
}
