//! Dense real matrices and a cyclic Jacobi eigensolver for symmetric ones.
//!
//! The solver is deliberately self-contained: rotations are applied in a fixed
//! row-major pivot order, so results are bit-reproducible across runs.

use crate::error::{Error, Result};

/// Convergence threshold for the Jacobi sweep, relative to the Frobenius norm.
const JACOBI_REL_TOL: f64 = 1e-13;
/// Sweep budget; symmetric Jacobi converges quadratically and never gets close.
const JACOBI_MAX_SWEEPS: usize = 100;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matmul dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(l, j);
                }
            }
        }
        out
    }

    /// y = A x for a column vector x.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * x[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Largest |A(i,j) - A(j,i)| over all pairs.
    pub fn symmetry_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    pub fn scaled(&self, factor: f64) -> Matrix {
        let mut out = self.clone();
        for v in &mut out.data {
            *v *= factor;
        }
        out
    }
}

/// Eigendecomposition of a symmetric matrix by the cyclic Jacobi method.
///
/// Returns eigenvalues sorted ascending with the matching eigenvector in the
/// same position (as a column of the returned matrix), so
/// `A = V diag(values) V^t` up to the convergence threshold.
pub fn jacobi_eigh(a: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    if a.rows() != a.cols() {
        return Err(Error::invalid(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let n = a.rows();
    let scale = a.max_abs().max(1.0);
    if a.symmetry_defect() > 1e-9 * scale {
        return Err(Error::invalid(format!(
            "matrix is not symmetric: defect {:e}",
            a.symmetry_defect()
        )));
    }

    let mut m = a.clone();
    // Work on the symmetrized copy so tiny input asymmetries cannot bias pivots.
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (m.get(i, j) + m.get(j, i));
            m.set(i, j, avg);
            m.set(j, i, avg);
        }
    }
    let mut v = Matrix::identity(n);
    let norm = m.frobenius_norm().max(f64::MIN_POSITIVE);
    let threshold = JACOBI_REL_TOL * norm;

    for _sweep in 0..JACOBI_MAX_SWEEPS {
        let off = off_diagonal_norm(&m);
        if off <= threshold {
            return Ok(sorted_eigh(m, v));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                if apq == 0.0 {
                    continue;
                }
                let app = m.get(p, p);
                let aqq = m.get(q, q);
                let tau = (aqq - app) / (2.0 * apq);
                // For very large |tau| the exact formula for t underflows to
                // the same asymptote 1/(2 tau); branch to avoid tau^2 overflow.
                let t = if tau.abs() > 1e150 {
                    0.5 / tau
                } else if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                rotate(&mut m, &mut v, p, q, c, s);
            }
        }
    }

    Err(Error::NoConvergence {
        sweeps: JACOBI_MAX_SWEEPS,
        off_diagonal: off_diagonal_norm(&m),
    })
}

fn off_diagonal_norm(m: &Matrix) -> f64 {
    let n = m.rows();
    let mut sum = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let v = m.get(i, j);
            sum += 2.0 * v * v;
        }
    }
    sum.sqrt()
}

fn rotate(m: &mut Matrix, v: &mut Matrix, p: usize, q: usize, c: f64, s: f64) {
    let n = m.rows();
    let app = m.get(p, p);
    let aqq = m.get(q, q);
    let apq = m.get(p, q);

    m.set(p, p, c * c * app - 2.0 * s * c * apq + s * s * aqq);
    m.set(q, q, s * s * app + 2.0 * s * c * apq + c * c * aqq);
    m.set(p, q, 0.0);
    m.set(q, p, 0.0);

    for i in 0..n {
        if i != p && i != q {
            let aip = m.get(i, p);
            let aiq = m.get(i, q);
            m.set(i, p, c * aip - s * aiq);
            m.set(p, i, c * aip - s * aiq);
            m.set(i, q, s * aip + c * aiq);
            m.set(q, i, s * aip + c * aiq);
        }
    }
    for i in 0..n {
        let vip = v.get(i, p);
        let viq = v.get(i, q);
        v.set(i, p, c * vip - s * viq);
        v.set(i, q, s * vip + c * viq);
    }
}

fn sorted_eigh(m: Matrix, v: Matrix) -> (Vec<f64>, Matrix) {
    let n = m.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m.get(i, i).partial_cmp(&m.get(j, j)).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| m.get(i, i)).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| v.get(i, order[j]));
    (values, vectors)
}

/// Rebuild `V diag(f(lambda)) V^t` from a decomposition.
pub fn reassemble(values: &[f64], vectors: &Matrix, f: impl Fn(f64) -> f64) -> Matrix {
    let n = vectors.rows();
    let mut out = Matrix::zeros(n, n);
    for (idx, &lambda) in values.iter().enumerate() {
        let fl = f(lambda);
        if fl == 0.0 {
            continue;
        }
        for i in 0..n {
            let vi = vectors.get(i, idx);
            if vi == 0.0 {
                continue;
            }
            for j in 0..n {
                let add = fl * vi * vectors.get(j, idx);
                out.set(i, j, out.get(i, j) + add);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigh_diagonal() {
        let m = Matrix::from_fn(3, 3, |i, j| if i == j { (i + 1) as f64 } else { 0.0 });
        let (vals, _) = jacobi_eigh(&m).unwrap();
        assert_eq!(vals, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn eigh_two_by_two() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3.
        let mut m = Matrix::zeros(2, 2);
        m.set(0, 0, 2.0);
        m.set(1, 1, 2.0);
        m.set(0, 1, 1.0);
        m.set(1, 0, 1.0);
        let (vals, vecs) = jacobi_eigh(&m).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-14);
        assert!((vals[1] - 3.0).abs() < 1e-14);
        let rebuilt = reassemble(&vals, &vecs, |l| l);
        assert!(rebuilt.max_abs_diff(&m) < 1e-13);
    }

    #[test]
    fn eigh_rejects_asymmetric() {
        let mut m = Matrix::zeros(2, 2);
        m.set(0, 1, 1.0);
        assert!(jacobi_eigh(&m).is_err());
    }

    #[test]
    fn reconstruction_random() {
        // Deterministic pseudo-random symmetric matrix.
        let n = 12;
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let v = next();
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        let (vals, vecs) = jacobi_eigh(&m).unwrap();
        let rebuilt = reassemble(&vals, &vecs, |l| l);
        assert!(rebuilt.max_abs_diff(&m) < 1e-12);
        // Eigenvectors orthonormal.
        let vtv = vecs.transpose().matmul(&vecs);
        assert!(vtv.max_abs_diff(&Matrix::identity(n)) < 1e-12);
    }
}
