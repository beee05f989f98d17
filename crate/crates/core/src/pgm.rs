//! Pretty Good Measurement numerics.
//!
//! The success probability of identifying a state drawn from an ensemble with
//! the PGM is sum_i sqrt(G)(i,i)^2, where G is the Gram matrix of the
//! probability-weighted states. Two independent routes compute it:
//!
//! * the dense route eigendecomposes G and takes the PSD square root;
//! * the Fourier route applies when G = A / 2^k with A(x,y) = g(x xor y): the
//!   eigenvalues of A are {2^k ghat(Q)}, every diagonal entry of sqrt(G)
//!   equals 2^-k sum_Q sqrt(ghat(Q)), and the success probability collapses
//!   to (sum_Q sqrt(ghat(Q)))^2 / 2^k.
//!
//! The Fourier route never forms A, so it scales to message lengths where the
//! dense route is hopeless.

use rand::Rng;

use crate::ensembles::{gram_matrix_direct, QuantumExampleState};
use crate::error::{Error, Result};
use crate::fourier::{fourier_coefficients, fwht, BooleanFunction};
use crate::linalg::{jacobi_eigh, reassemble, Matrix};

/// Default tolerance below which an eigenvalue counts as negative rather than
/// as rounding noise. Overridable per call.
pub const DEFAULT_PSD_TOL: f64 = 1e-9;

/// Fourier coefficients of an XOR profile may dip this far below zero before
/// the ensemble is declared non-PSD.
pub const XOR_COEFF_TOL: f64 = 1e-10;

/// Relative eigenvalue threshold for the pseudo-inverse square root.
pub const PSEUDO_INVERSE_REL_TOL: f64 = 1e-12;

/// Shared numerical-rank cutoff: eigenvalues (or spectrum coefficients) at or
/// below this fraction of the largest one are treated as exact zeros before a
/// square root is taken. Structurally zero eigenvalues come out of a float
/// eigensolver as O(eps) noise, and sqrt amplifies that noise to O(1e-8);
/// zeroing below the cutoff keeps the dense and Fourier routes consistent to
/// working precision. The cutoff is far above eigensolver noise (~1e-16
/// relative) and far below any eigenvalue the formulas here produce.
pub const ZERO_EIGENVALUE_REL_CUT: f64 = 1e-13;

/// A symmetric positive semidefinite matrix of pairwise weighted inner
/// products.
#[derive(Clone, Debug)]
pub struct GramMatrix {
    size: usize,
    data: Matrix,
}

impl GramMatrix {
    /// Build from a row-major entry table, checking symmetry to 1e-12.
    pub fn from_entries(size: usize, entries: Vec<f64>) -> Result<Self> {
        if entries.len() != size * size {
            return Err(Error::invalid(format!(
                "entry table has {} values, expected {size}x{size}",
                entries.len()
            )));
        }
        let mut data = Matrix::zeros(size, size);
        for i in 0..size {
            for j in 0..size {
                data.set(i, j, entries[i * size + j]);
            }
        }
        if data.symmetry_defect() > 1e-12 {
            return Err(Error::invalid(format!(
                "gram matrix is not symmetric: defect {:e}",
                data.symmetry_defect()
            )));
        }
        Ok(GramMatrix { size, data })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.data.get(i, j)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.data
    }

    pub fn min_eigenvalue(&self) -> Result<f64> {
        let (values, _) = jacobi_eigh(&self.data)?;
        Ok(values[0])
    }

    pub fn psd_sqrt(&self, tol: f64) -> Result<Matrix> {
        psd_sqrt(&self.data, tol)
    }
}

/// The PSD square root by full symmetric eigendecomposition.
///
/// Anything below -tol is an error carrying the offending eigenvalue.
/// Eigenvalues in [-tol, 0] are clamped to zero, as are positive ones that
/// are numerically indistinguishable from zero (below
/// [`ZERO_EIGENVALUE_REL_CUT`] relative to the largest eigenvalue).
pub fn psd_sqrt(a: &Matrix, tol: f64) -> Result<Matrix> {
    let (values, vectors) = jacobi_eigh(a)?;
    if let Some(&worst) = values.first() {
        if worst < -tol {
            return Err(Error::NotPsd {
                eigenvalue: worst,
                tolerance: tol,
            });
        }
    }
    let cut = ZERO_EIGENVALUE_REL_CUT * values.last().copied().unwrap_or(0.0).max(0.0);
    Ok(reassemble(&values, &vectors, |l| {
        if l <= cut {
            0.0
        } else {
            l.sqrt()
        }
    }))
}

/// Pseudo-inverse square root: eigenvalues at or below
/// `PSEUDO_INVERSE_REL_TOL * lambda_max` are treated as zero.
pub fn psd_inv_sqrt(a: &Matrix, tol: f64) -> Result<Matrix> {
    let (values, vectors) = jacobi_eigh(a)?;
    if let Some(&worst) = values.first() {
        if worst < -tol {
            return Err(Error::NotPsd {
                eigenvalue: worst,
                tolerance: tol,
            });
        }
    }
    let lambda_max = values.last().copied().unwrap_or(0.0).max(0.0);
    let cut = PSEUDO_INVERSE_REL_TOL * lambda_max;
    Ok(reassemble(&values, &vectors, |l| {
        if l <= cut {
            0.0
        } else {
            1.0 / l.sqrt()
        }
    }))
}

/// Which route produced a PGM evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PgmMethod {
    Dense,
    Fourier,
}

/// Success probability plus the diagonal of sqrt(G) it was assembled from.
#[derive(Clone, Debug)]
pub struct PgmResult {
    pub success_probability: f64,
    pub diagonal_of_sqrt: Vec<f64>,
    pub method: PgmMethod,
}

impl PgmResult {
    fn from_diagonal(diagonal: Vec<f64>, method: PgmMethod) -> Self {
        let success = diagonal.iter().map(|v| v * v).sum();
        PgmResult {
            success_probability: success,
            diagonal_of_sqrt: diagonal,
            method,
        }
    }
}

/// PGM success probability of an ensemble of T-copy states, dense route.
pub fn pgm_success_generic(
    states: &[QuantumExampleState],
    probabilities: &[f64],
    t: u32,
) -> Result<PgmResult> {
    let gram = gram_matrix_direct(states, probabilities, t)?;
    let root = gram.psd_sqrt(DEFAULT_PSD_TOL)?;
    let diagonal: Vec<f64> = (0..gram.size()).map(|i| root.get(i, i)).collect();
    Ok(PgmResult::from_diagonal(diagonal, PgmMethod::Dense))
}

fn xor_spectrum_checked(g: &BooleanFunction) -> Result<Vec<f64>> {
    if (g.value_at(0) - 1.0).abs() > 1e-9 {
        return Err(Error::invalid(format!(
            "xor profile must have g(0) = 1 (unit-norm states), got {}",
            g.value_at(0)
        )));
    }
    let spec = fourier_coefficients(g);
    let largest = spec.coefficients().iter().fold(0.0f64, |m, c| m.max(*c));
    // Same numerical-rank convention as the dense route: transform noise on
    // structurally zero coefficients must not survive the square root.
    let cut = ZERO_EIGENVALUE_REL_CUT * largest;
    let mut coeffs = Vec::with_capacity(spec.coefficients().len());
    for &c in spec.coefficients() {
        if c < -XOR_COEFF_TOL {
            return Err(Error::NotPsd {
                eigenvalue: c,
                tolerance: XOR_COEFF_TOL,
            });
        }
        coeffs.push(if c <= cut { 0.0 } else { c });
    }
    Ok(coeffs)
}

/// Every diagonal entry of sqrt(G) for the uniform XOR ensemble with profile
/// g: the constant 2^-k sum_Q sqrt(ghat(Q)).
pub fn sqrt_gram_diagonal_xor(g: &BooleanFunction) -> Result<f64> {
    let coeffs = xor_spectrum_checked(g)?;
    let sum_roots: f64 = coeffs.iter().map(|c| c.sqrt()).sum();
    Ok(sum_roots / (1u64 << g.arity()) as f64)
}

/// PGM success probability along the Fourier route:
/// (sum_Q sqrt(ghat(Q)))^2 / 2^k.
pub fn pgm_success_xor(g: &BooleanFunction) -> Result<PgmResult> {
    let k = g.arity();
    let diag = sqrt_gram_diagonal_xor(g)?;
    let diagonal = vec![diag; 1usize << k];
    Ok(PgmResult::from_diagonal(diagonal, PgmMethod::Fourier))
}

/// The full sqrt-Gram profile s with sqrt(G)(x, y) = s(x xor y), obtained by
/// transforming the square roots of the coefficients back.
pub fn sqrt_gram_profile_xor(g: &BooleanFunction) -> Result<Vec<f64>> {
    let k = g.arity();
    let mut roots: Vec<f64> = xor_spectrum_checked(g)?.iter().map(|c| c.sqrt()).collect();
    fwht(&mut roots)?;
    let scale = 1.0 / (1u64 << k) as f64;
    for v in &mut roots {
        *v *= scale;
    }
    Ok(roots)
}

/// Exact optimum for discriminating two pure states with priors (p0, 1 - p0):
/// 1/2 + 1/2 sqrt(1 - 4 p0 (1 - p0) c^2) with c the inner product.
pub fn helstrom_two_state(
    p0: f64,
    psi0: &QuantumExampleState,
    psi1: &QuantumExampleState,
) -> Result<f64> {
    if !(0.0..=1.0).contains(&p0) {
        return Err(Error::invalid(format!(
            "prior must lie in [0, 1], got {p0}"
        )));
    }
    for (name, s) in [("psi0", psi0), ("psi1", psi1)] {
        let norm_sq: f64 = s.amplitudes().iter().map(|a| a * a).sum();
        if (norm_sq - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(format!(
                "{name} is not unit norm: |psi|^2 = {norm_sq}"
            )));
        }
    }
    let c = psi0.inner_product(psi1)?;
    let discriminant = (1.0 - 4.0 * p0 * (1.0 - p0) * c * c).max(0.0);
    Ok(0.5 + 0.5 * discriminant.sqrt())
}

/// Repeated PGM outcome sampling against a fixed ensemble.
///
/// The probability of outcome j given the true state i is
/// sqrt(G)(i,j)^2 / p_i, which sums to exactly G(i,i)/p_i = 1 over j, so the
/// sampler needs only the square root of the Gram matrix.
pub struct PgmSampler {
    sqrt_gram: Matrix,
    probabilities: Vec<f64>,
}

impl PgmSampler {
    pub fn new(states: &[QuantumExampleState], probabilities: &[f64], t: u32) -> Result<Self> {
        let gram = gram_matrix_direct(states, probabilities, t)?;
        let sqrt_gram = gram.psd_sqrt(DEFAULT_PSD_TOL)?;
        Ok(PgmSampler {
            sqrt_gram,
            probabilities: probabilities.to_vec(),
        })
    }

    pub fn size(&self) -> usize {
        self.probabilities.len()
    }

    /// Outcome distribution for a given true state; validated to sum to 1
    /// within 1e-10.
    pub fn outcome_distribution(&self, true_index: usize) -> Result<Vec<f64>> {
        if true_index >= self.size() {
            return Err(Error::invalid(format!(
                "true_index {true_index} out of range for {} states",
                self.size()
            )));
        }
        let p = self.probabilities[true_index];
        if p <= 0.0 {
            return Err(Error::invalid(
                "true state has zero probability; outcome distribution undefined",
            ));
        }
        let dist: Vec<f64> = (0..self.size())
            .map(|j| {
                let v = self.sqrt_gram.get(true_index, j);
                v * v / p
            })
            .collect();
        let total: f64 = dist.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::Numerics(format!(
                "pgm outcome distribution sums to {total}, expected 1"
            )));
        }
        Ok(dist)
    }

    pub fn sample<R: Rng>(&self, true_index: usize, rng: &mut R) -> Result<usize> {
        let dist = self.outcome_distribution(true_index)?;
        let mut u: f64 = rng.gen();
        for (j, &q) in dist.iter().enumerate() {
            if u < q {
                return Ok(j);
            }
            u -= q;
        }
        Ok(dist.len() - 1)
    }
}

/// One-shot convenience wrapper around [`PgmSampler`].
pub fn sample_pgm_outcome<R: Rng>(
    states: &[QuantumExampleState],
    probabilities: &[f64],
    t: u32,
    true_index: usize,
    rng: &mut R,
) -> Result<usize> {
    PgmSampler::new(states, probabilities, t)?.sample(true_index, rng)
}
