//! Fourier analysis of real-valued functions on the Boolean cube.
//!
//! Points and character indices share one convention: bit `i` of a point `z`
//! is the `i`-th least significant bit of its integer index, and `S . z` is
//! the parity of the bitwise AND. The transform here is the unnormalized
//! Walsh-Hadamard butterfly, out[S] = sum_z values[z] * (-1)^(S.z); the 1/2^m
//! normalization lives only in [`fourier_coefficients`] so kernels avoid
//! repeated division.

use crate::bits::BitVec;
use crate::codes::GeneratorMatrix;
use crate::error::{Error, Result};

/// Hard cap on arity: 2^26 doubles is a 512 MiB table, the 8 GiB-class guard.
pub const MAX_ARITY: usize = 26;

/// In-place unnormalized Walsh-Hadamard transform.
///
/// Applying it twice multiplies the input by the length.
pub fn fwht(values: &mut [f64]) -> Result<()> {
    let n = values.len();
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::invalid(format!(
            "transform length must be a power of two, got {n}"
        )));
    }
    let mut half = 1;
    while half < n {
        let step = half << 1;
        for block in (0..n).step_by(step) {
            for i in block..block + half {
                let a = values[i];
                let b = values[i + half];
                values[i] = a + b;
                values[i + half] = a - b;
            }
        }
        half = step;
    }
    Ok(())
}

/// A real-valued function on {0,1}^m stored as its full value table.
#[derive(Clone, Debug, PartialEq)]
pub struct BooleanFunction {
    arity: usize,
    values: Vec<f64>,
}

impl BooleanFunction {
    pub fn new(arity: usize, values: Vec<f64>) -> Result<Self> {
        if arity == 0 {
            return Err(Error::invalid("arity must be at least 1"));
        }
        if arity > MAX_ARITY {
            return Err(Error::resource(format!(
                "arity {arity} exceeds the supported maximum {MAX_ARITY}"
            )));
        }
        if values.len() != 1usize << arity {
            return Err(Error::invalid(format!(
                "value table has length {}, expected 2^{arity} = {}",
                values.len(),
                1usize << arity
            )));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("value table contains a non-finite entry"));
        }
        Ok(BooleanFunction { arity, values })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn value_at(&self, z: u64) -> f64 {
        self.values[z as usize]
    }
}

/// The Fourier coefficients of a [`BooleanFunction`], indexed by character S.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierSpectrum {
    arity: usize,
    coefficients: Vec<f64>,
}

impl FourierSpectrum {
    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    #[inline]
    pub fn coefficient(&self, s: u64) -> f64 {
        self.coefficients[s as usize]
    }

    /// Evaluate sum_S fhat(S) (-1)^(S.z) at a point given as a bit vector.
    pub fn evaluate(&self, z: &BitVec) -> Result<f64> {
        if z.len() != self.arity {
            return Err(Error::invalid(format!(
                "point has {} bits, expected arity {}",
                z.len(),
                self.arity
            )));
        }
        let zi = z.index();
        let mut total = 0.0;
        for (s, &c) in self.coefficients.iter().enumerate() {
            let sign = if (s as u64 & zi).count_ones() & 1 == 1 {
                -1.0
            } else {
                1.0
            };
            total += c * sign;
        }
        Ok(total)
    }

    /// Largest |fhat(S)| over characters of Hamming weight `q`.
    pub fn max_abs_at_weight(&self, q: usize) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(s, _)| (*s as u64).count_ones() as usize == q)
            .fold(0.0f64, |m, (_, &c)| m.max(c.abs()))
    }

    /// Smallest coefficient (used to certify nonnegative spectra).
    pub fn min_coefficient(&self) -> f64 {
        self.coefficients
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min)
    }
}

/// fhat(S) = E_z[f(z) (-1)^(S.z)], computed by one butterfly pass.
pub fn fourier_coefficients(f: &BooleanFunction) -> FourierSpectrum {
    let mut coefficients = f.values.clone();
    fwht(&mut coefficients).expect("table length is a power of two by construction");
    let scale = 1.0 / (1usize << f.arity) as f64;
    for c in &mut coefficients {
        *c *= scale;
    }
    FourierSpectrum {
        arity: f.arity,
        coefficients,
    }
}

/// The decaying-overlap profile f(z) = (1 - beta |z| / m)^t on {0,1}^m.
///
/// Its value at the XOR of two messages is exactly the inner product of the
/// corresponding t-copy example states, which is why its spectrum controls
/// every identification probability in this crate. Spectra are nonnegative
/// for any t because the matrix f(x xor y) is a Gram matrix.
pub fn hardness_profile(beta: f64, arity: usize, t: u32) -> Result<BooleanFunction> {
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::invalid(format!(
            "decay rate beta must lie in (0, 1], got {beta}"
        )));
    }
    if arity == 0 {
        return Err(Error::invalid("arity must be at least 1"));
    }
    if arity > MAX_ARITY {
        return Err(Error::resource(format!(
            "arity {arity} exceeds the supported maximum {MAX_ARITY}"
        )));
    }
    let m = arity as f64;
    let values = (0..1u64 << arity)
        .map(|z| {
            let weight = z.count_ones() as f64;
            (1.0 - beta * weight / m).powi(t as i32)
        })
        .collect();
    BooleanFunction::new(arity, values)
}

/// (f o M)(x) = f(Mx) for a full-column-rank matrix with as many rows as f has
/// input bits. The result is a function of the k message bits.
pub fn compose_with_matrix(f: &BooleanFunction, m: &GeneratorMatrix) -> Result<BooleanFunction> {
    if m.n() != f.arity() {
        return Err(Error::invalid(format!(
            "matrix has {} rows but the function has arity {}",
            m.n(),
            f.arity()
        )));
    }
    let k = m.k();
    let values = (0..1u64 << k)
        .map(|x| f.value_at(m.encode_index(x).index()))
        .collect();
    BooleanFunction::new(k, values)
}

/// Spectrum of f o M computed the slow way: group fhat(S) over the preimages
/// of M^t, i.e. (f o M)^(Q) = sum over S with M^t S = Q of fhat(S).
///
/// This is an independent route to the same answer as
/// `fourier_coefficients(compose_with_matrix(f, m))` and exists to check it.
pub fn composed_spectrum_by_preimage(
    spec: &FourierSpectrum,
    m: &GeneratorMatrix,
) -> Result<FourierSpectrum> {
    if m.n() != spec.arity() {
        return Err(Error::invalid(format!(
            "matrix has {} rows but the spectrum has arity {}",
            m.n(),
            spec.arity()
        )));
    }
    let k = m.k();
    let mut grouped = vec![0.0f64; 1usize << k];
    for s in 0..1u64 << spec.arity() {
        let sv = BitVec::from_index(s, spec.arity());
        let q = m.transpose_apply(&sv).index() as usize;
        grouped[q] += spec.coefficient(s);
    }
    Ok(FourierSpectrum {
        arity: k,
        coefficients: grouped,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// O(4^m) reference transform used as the oracle for the butterfly.
    fn naive_transform(values: &[f64]) -> Vec<f64> {
        let n = values.len();
        (0..n)
            .map(|s| {
                (0..n)
                    .map(|z| {
                        let sign = if (s & z).count_ones() & 1 == 1 {
                            -1.0
                        } else {
                            1.0
                        };
                        values[z] * sign
                    })
                    .sum()
            })
            .collect()
    }

    fn pseudo_random(len: usize, mut state: u64) -> Vec<f64> {
        (0..len)
            .map(|_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            })
            .collect()
    }

    #[test]
    fn fwht_delta_and_constant() {
        let mut delta = vec![1.0, 0.0, 0.0, 0.0];
        fwht(&mut delta).unwrap();
        assert_eq!(delta, vec![1.0, 1.0, 1.0, 1.0]);

        let mut constant = vec![1.0, 1.0, 1.0, 1.0];
        fwht(&mut constant).unwrap();
        assert_eq!(constant, vec![4.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn fwht_rejects_non_power_of_two() {
        let mut v = vec![1.0, 2.0, 3.0];
        assert!(fwht(&mut v).is_err());
    }

    #[test]
    fn fwht_matches_naive_and_inverts() {
        let v = pseudo_random(64, 0xabcdef);
        let mut fast = v.clone();
        fwht(&mut fast).unwrap();
        let slow = naive_transform(&v);
        for (a, b) in fast.iter().zip(&slow) {
            assert!((a - b).abs() < 1e-12);
        }
        // Involution up to the factor 2^m.
        let mut twice = fast;
        fwht(&mut twice).unwrap();
        for (a, b) in twice.iter().zip(&v) {
            assert!((a - 64.0 * b).abs() < 1e-12);
        }
    }

    #[test]
    fn coefficients_of_linear_profile() {
        // (1 - |z|/2) on two bits: values [1, 1/2, 1/2, 0].
        let f = hardness_profile(1.0, 2, 1).unwrap();
        assert_eq!(f.values(), &[1.0, 0.5, 0.5, 0.0]);
        let spec = fourier_coefficients(&f);
        assert_eq!(spec.coefficients(), &[0.5, 0.25, 0.25, 0.0]);
    }

    #[test]
    fn coefficients_of_parity_and_constant() {
        let m = 3;
        let parity: Vec<f64> = (0..8u64)
            .map(|z| if z.count_ones() & 1 == 1 { -1.0 } else { 1.0 })
            .collect();
        let spec = fourier_coefficients(&BooleanFunction::new(m, parity).unwrap());
        for s in 0..8u64 {
            let expected = if s == 7 { 1.0 } else { 0.0 };
            assert!((spec.coefficient(s) - expected).abs() < 1e-15);
        }

        let ones = BooleanFunction::new(m, vec![1.0; 8]).unwrap();
        let spec = fourier_coefficients(&ones);
        assert_eq!(spec.coefficient(0), 1.0);
        assert!(spec.coefficients()[1..].iter().all(|&c| c == 0.0));
    }

    #[test]
    fn evaluate_inverts_coefficients() {
        let f = BooleanFunction::new(4, pseudo_random(16, 99)).unwrap();
        let spec = fourier_coefficients(&f);
        for z in 0..16u64 {
            let back = spec.evaluate(&BitVec::from_index(z, 4)).unwrap();
            assert!((back - f.value_at(z)).abs() < 1e-12);
        }
    }

    #[test]
    fn evaluate_delta_spectrum() {
        let mut table = vec![0.0; 8];
        table[0] = 1.0;
        let spec = fourier_coefficients(&BooleanFunction::new(3, table).unwrap());
        assert!((spec.evaluate(&BitVec::zeros(3)).unwrap() - 1.0).abs() < 1e-15);
        for z in 1..8u64 {
            assert!(spec.evaluate(&BitVec::from_index(z, 3)).unwrap().abs() < 1e-15);
        }
        // Dimension mismatch is an error.
        assert!(spec.evaluate(&BitVec::zeros(4)).is_err());
    }

    #[test]
    fn hardness_profile_guards_and_values() {
        assert!(hardness_profile(0.0, 4, 1).is_err());
        assert!(hardness_profile(1.2, 4, 1).is_err());
        let f = hardness_profile(0.3, 5, 7).unwrap();
        assert_eq!(f.value_at(0), 1.0);
        let g = hardness_profile(1.0, 3, 2).unwrap();
        assert_eq!(g.value_at(0b111), 0.0);
    }

    #[test]
    fn compose_with_identity_is_identity() {
        let f = BooleanFunction::new(3, pseudo_random(8, 5)).unwrap();
        let ident =
            GeneratorMatrix::new(3, (0..3).map(|j| BitVec::from_index(1 << j, 3)).collect())
                .unwrap();
        let composed = compose_with_matrix(&f, &ident).unwrap();
        assert_eq!(composed.values(), f.values());
    }

    #[test]
    fn compose_with_all_ones_column() {
        let f = BooleanFunction::new(3, pseudo_random(8, 17)).unwrap();
        let m = GeneratorMatrix::new(3, vec![BitVec::from_bitstring("111").unwrap()]).unwrap();
        let composed = compose_with_matrix(&f, &m).unwrap();
        assert_eq!(composed.values(), &[f.value_at(0), f.value_at(7)]);
    }

    #[test]
    fn preimage_grouping_matches_direct_composition() {
        // Columns (1,0,1) and (0,1,1); f is the delta at zero.
        let m = GeneratorMatrix::new(
            3,
            vec![
                BitVec::from_bitstring("101").unwrap(),
                BitVec::from_bitstring("011").unwrap(),
            ],
        )
        .unwrap();
        let mut table = vec![0.0; 8];
        table[0] = 1.0;
        let f = BooleanFunction::new(3, table).unwrap();

        let composed = compose_with_matrix(&f, &m).unwrap();
        assert_eq!(composed.values(), &[1.0, 0.0, 0.0, 0.0]);
        let direct = fourier_coefficients(&composed);
        assert_eq!(direct.coefficients(), &[0.25, 0.25, 0.25, 0.25]);

        let grouped = composed_spectrum_by_preimage(&fourier_coefficients(&f), &m).unwrap();
        for q in 0..4u64 {
            // Two preimages of each Q, each carrying 1/8.
            assert!((grouped.coefficient(q) - 0.25).abs() < 1e-15);
        }
    }
}
