//! Entropy and mutual-information quantities for single quantum examples.
//!
//! The reduced density matrices here average the example state over a
//! uniformly random labeling string. Both a closed form (cross terms between
//! differing labels vanish under the averaging) and a brute-force average
//! over all 2^d labelings are provided; they must agree to working precision
//! and the brute-force route is the oracle.
//!
//! Weight convention: this module uses the 4-eps hard distributions (anchor
//! weight 1 - 4 eps, per-point label bias 4 eps), which differ from the
//! 20-eps identification ensembles in [`crate::ensembles`]. The two presets
//! are deliberately kept in separate modules so they cannot be mixed.

use crate::bounds::binary_entropy;
use crate::ensembles::QuantumExampleState;
use crate::error::{Error, Result};
use crate::linalg::{jacobi_eigh, Matrix};

/// Eigenvalues below this are treated as exact zeros inside entropies.
const ENTROPY_EIGENVALUE_CLAMP: f64 = 1e-14;

/// Coefficient of the quartic term in the uniform-overlap lower bound
/// `<psi|rho|psi> >= 1 - 4 eps^2 - C eps^4` for the agnostic reduced state.
///
/// The overlap is exactly `(1 + sqrt(1 - 16 eps^2)) / 2
/// = 1 - 4 eps^2 - 16 eps^4 - O(eps^6)`, and a uniform constant over the
/// verification grid eps in {0.01, ..., 0.20} needs C >= 25 (worst point
/// eps = 0.20, where C = 25 gives exact equality); pinned at 26.
pub const UNIFORM_OVERLAP_QUARTIC_COEFF: f64 = 26.0;

/// A symmetric real density matrix: PSD with unit trace.
///
/// Eigenvalues are computed once at construction and reused by entropies.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    data: Matrix,
    eigenvalues: Vec<f64>,
}

impl DensityMatrix {
    pub fn new(data: Matrix) -> Result<Self> {
        if data.rows() != data.cols() {
            return Err(Error::invalid(format!(
                "density matrix must be square, got {}x{}",
                data.rows(),
                data.cols()
            )));
        }
        let trace = data.trace();
        if (trace - 1.0).abs() > 1e-10 {
            return Err(Error::invalid(format!(
                "density matrix trace is {trace}, expected 1"
            )));
        }
        let (eigenvalues, _) = jacobi_eigh(&data)?;
        if let Some(&worst) = eigenvalues.first() {
            if worst < -1e-9 {
                return Err(Error::NotPsd {
                    eigenvalue: worst,
                    tolerance: 1e-9,
                });
            }
        }
        Ok(DensityMatrix { data, eigenvalues })
    }

    pub fn dimension(&self) -> usize {
        self.data.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.data
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// Quadratic form <psi| rho |psi> for a real vector.
    pub fn expectation(&self, psi: &[f64]) -> Result<f64> {
        if psi.len() != self.dimension() {
            return Err(Error::invalid(format!(
                "vector has dimension {}, expected {}",
                psi.len(),
                self.dimension()
            )));
        }
        let image = self.data.apply(psi);
        Ok(psi.iter().zip(&image).map(|(a, b)| a * b).sum())
    }
}

/// Von Neumann entropy in bits: the Shannon entropy of the eigenvalues, with
/// 0 log 0 = 0 and eigenvalues below 1e-14 clamped away.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    rho.eigenvalues()
        .iter()
        .filter(|&&l| l > ENTROPY_EIGENVALUE_CLAMP)
        .map(|&l| -l * l.log2())
        .sum()
}

fn check_info_epsilon(epsilon: f64) -> Result<()> {
    if !(epsilon > 0.0 && epsilon < 0.25) {
        return Err(Error::invalid(format!(
            "accuracy must lie in (0, 1/4), got {epsilon}"
        )));
    }
    Ok(())
}

/// Basis layout for the heavy-point reduced state: index 0 is the anchor
/// (label 0 only); point i in 1..=d occupies indices 2i-1 (label 0) and
/// 2i (label 1). Dimension 2d + 1.
fn pac_basis_index(point: usize, label: usize) -> usize {
    if point == 0 {
        0
    } else {
        2 * point - 1 + label
    }
}

/// Closed-form reduced density of one heavy-point example averaged over a
/// uniform labeling: anchor mass 1 - 4 eps, anchor-to-point cross terms carry
/// a factor 1/2, and cross terms between distinct points carry 1/4.
pub fn reduced_pac_example_density(d: usize, epsilon: f64) -> Result<DensityMatrix> {
    check_info_epsilon(epsilon)?;
    if d == 0 {
        return Err(Error::invalid("d must be at least 1"));
    }
    let dim = 2 * d + 1;
    let heavy = 1.0 - 4.0 * epsilon;
    let light = 4.0 * epsilon / d as f64;
    let cross_anchor = 0.5 * (heavy * light).sqrt();
    let mut m = Matrix::zeros(dim, dim);
    m.set(0, 0, heavy);
    for i in 1..=d {
        for b in 0..2usize {
            let idx = pac_basis_index(i, b);
            m.set(0, idx, cross_anchor);
            m.set(idx, 0, cross_anchor);
            m.set(idx, idx, 0.5 * light);
            for j in 1..=d {
                if j == i {
                    continue;
                }
                for b2 in 0..2usize {
                    m.set(idx, pac_basis_index(j, b2), 0.25 * light);
                }
            }
        }
    }
    DensityMatrix::new(m)
}

/// The same reduced state by brute force: average the projector of the
/// example state over all 2^d labelings. Independent oracle for the closed
/// form; cost 2^d outer products.
pub fn reduced_pac_example_density_brute(d: usize, epsilon: f64) -> Result<DensityMatrix> {
    check_info_epsilon(epsilon)?;
    if d == 0 {
        return Err(Error::invalid("d must be at least 1"));
    }
    if d > 16 {
        return Err(Error::resource(format!(
            "brute-force averaging needs d <= 16, got {d}"
        )));
    }
    let dim = 2 * d + 1;
    let heavy = (1.0 - 4.0 * epsilon).sqrt();
    let light = (4.0 * epsilon / d as f64).sqrt();
    let scale = 1.0 / (1u64 << d) as f64;
    let mut m = Matrix::zeros(dim, dim);
    let mut psi = vec![0.0; dim];
    for a in 0..1u64 << d {
        psi.iter_mut().for_each(|v| *v = 0.0);
        psi[0] = heavy;
        for i in 1..=d {
            let label = ((a >> (i - 1)) & 1) as usize;
            psi[pac_basis_index(i, label)] = light;
        }
        accumulate_outer(&mut m, &psi, scale);
    }
    DensityMatrix::new(m)
}

/// Basis layout for the two-label reduced state: point i in 1..=d with label
/// b occupies index 2(i-1) + b. Dimension 2d.
fn agnostic_basis_index(point: usize, label: usize) -> usize {
    2 * (point - 1) + label
}

/// Closed-form reduced density of one biased-label example averaged over a
/// uniform labeling string.
pub fn reduced_agnostic_example_density(d: usize, epsilon: f64) -> Result<DensityMatrix> {
    check_info_epsilon(epsilon)?;
    if d == 0 {
        return Err(Error::invalid("d must be at least 1"));
    }
    let dim = 2 * d;
    let point_mass = 1.0 / (2.0 * d as f64);
    // Same point, opposite labels: sqrt((1+4e)(1-4e)) / (2d), label-independent.
    let same_point_cross = (1.0 - 16.0 * epsilon * epsilon).sqrt() * point_mass;
    // Distinct points: E[sqrt(D(i,b))] factorizes; each factor averages to s.
    let s = ((1.0 + 4.0 * epsilon).sqrt() + (1.0 - 4.0 * epsilon).sqrt()) / 2.0;
    let cross_point = s * s * point_mass;
    let mut m = Matrix::zeros(dim, dim);
    for i in 1..=d {
        for b in 0..2usize {
            let idx = agnostic_basis_index(i, b);
            m.set(idx, idx, point_mass);
            m.set(idx, agnostic_basis_index(i, 1 - b), same_point_cross);
            for j in 1..=d {
                if j == i {
                    continue;
                }
                for b2 in 0..2usize {
                    m.set(idx, agnostic_basis_index(j, b2), cross_point);
                }
            }
        }
    }
    DensityMatrix::new(m)
}

/// Brute-force oracle for [`reduced_agnostic_example_density`].
pub fn reduced_agnostic_example_density_brute(d: usize, epsilon: f64) -> Result<DensityMatrix> {
    check_info_epsilon(epsilon)?;
    if d == 0 {
        return Err(Error::invalid("d must be at least 1"));
    }
    if d > 16 {
        return Err(Error::resource(format!(
            "brute-force averaging needs d <= 16, got {d}"
        )));
    }
    let dim = 2 * d;
    let scale = 1.0 / (1u64 << d) as f64;
    let denom = 2.0 * d as f64;
    let mut m = Matrix::zeros(dim, dim);
    let mut psi = vec![0.0; dim];
    for a in 0..1u64 << d {
        for i in 1..=d {
            let ai = (a >> (i - 1)) & 1;
            for b in 0..2usize {
                let sign = if ai == b as u64 { 1.0 } else { -1.0 };
                psi[agnostic_basis_index(i, b)] = ((1.0 + sign * 4.0 * epsilon) / denom).sqrt();
            }
        }
        accumulate_outer(&mut m, &psi, scale);
    }
    DensityMatrix::new(m)
}

fn accumulate_outer(m: &mut Matrix, psi: &[f64], scale: f64) {
    for (i, &pi) in psi.iter().enumerate() {
        let vi = pi * scale;
        if vi == 0.0 {
            continue;
        }
        for (j, &pj) in psi.iter().enumerate() {
            m.set(i, j, m.get(i, j) + vi * pj);
        }
    }
}

/// Overlap of the agnostic reduced state with the uniform vector, in closed
/// form: `((sqrt(1 + 4 eps) + sqrt(1 - 4 eps)) / 2)^2`. This is also an
/// eigenvalue of the reduced state (the uniform vector is an eigenvector),
/// hence a lower bound on its largest eigenvalue.
pub fn agnostic_uniform_overlap(epsilon: f64) -> Result<f64> {
    check_info_epsilon(epsilon)?;
    let s = ((1.0 + 4.0 * epsilon).sqrt() + (1.0 - 4.0 * epsilon).sqrt()) / 2.0;
    Ok(s * s)
}

/// Which per-example information quantity to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InfoSetting {
    Pac,
    Agnostic,
}

impl InfoSetting {
    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "pac" => Ok(InfoSetting::Pac),
            "agnostic" => Ok(InfoSetting::Agnostic),
            other => Err(Error::invalid(format!("unknown setting {other:?}"))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InfoSetting::Pac => "pac",
            InfoSetting::Agnostic => "agnostic",
        }
    }
}

/// Classical mutual information carried by one example about a uniformly
/// random labeling: `4 eps` in the heavy-point setting, `1 - H(1/2 + 2 eps)`
/// bits in the biased-label setting.
pub fn classical_per_example_info(setting: InfoSetting, epsilon: f64) -> Result<f64> {
    check_info_epsilon(epsilon)?;
    match setting {
        InfoSetting::Pac => Ok(4.0 * epsilon),
        InfoSetting::Agnostic => Ok(1.0 - binary_entropy(0.5 + 2.0 * epsilon)?),
    }
}

/// The same quantity from the explicit joint distribution of (labeling,
/// example), summed over all 2^d labelings. Independent oracle.
pub fn classical_per_example_info_brute(
    setting: InfoSetting,
    d: usize,
    epsilon: f64,
) -> Result<f64> {
    check_info_epsilon(epsilon)?;
    if d == 0 {
        return Err(Error::invalid("d must be at least 1"));
    }
    if d > 16 {
        return Err(Error::resource(format!(
            "joint-distribution enumeration needs d <= 16, got {d}"
        )));
    }
    let strings = 1u64 << d;
    let pa = 1.0 / strings as f64;
    // Example alphabet: (point, label). Collect the joint as p(a, b) and the
    // marginal p(b), then sum p log2(p / (pa pb)).
    type Conditional = Box<dyn Fn(u64, usize, usize) -> f64>;
    let (points, conditional): (usize, Conditional) = match setting {
        InfoSetting::Pac => (
            d + 1,
            Box::new(move |a, point, label| {
                if point == 0 {
                    if label == 0 {
                        1.0 - 4.0 * epsilon
                    } else {
                        0.0
                    }
                } else {
                    let ai = ((a >> (point - 1)) & 1) as usize;
                    if ai == label {
                        4.0 * epsilon / d as f64
                    } else {
                        0.0
                    }
                }
            }),
        ),
        InfoSetting::Agnostic => (
            d,
            Box::new(move |a, point, label| {
                let ai = ((a >> point) & 1) as usize;
                let sign = if ai == label { 1.0 } else { -1.0 };
                (1.0 + sign * 4.0 * epsilon) / (2.0 * d as f64)
            }),
        ),
    };

    let mut marginal = vec![0.0f64; points * 2];
    for a in 0..strings {
        for point in 0..points {
            for label in 0..2usize {
                marginal[2 * point + label] += pa * conditional(a, point, label);
            }
        }
    }
    let mut info = 0.0;
    for a in 0..strings {
        for point in 0..points {
            for label in 0..2usize {
                let joint = pa * conditional(a, point, label);
                if joint > 0.0 {
                    let pb = marginal[2 * point + label];
                    info += joint * (joint / (pa * pb)).log2();
                }
            }
        }
    }
    Ok(info)
}

/// Upper bound on the quantum information carried by one example:
/// `H(4 eps) + 4 eps log2(2d)` (heavy-point) or
/// `H(4 eps^2) + 4 eps^2 log2(2d)` (biased-label). The entropy-splitting
/// argument behind it needs the leading weight to stay at most 1/2.
pub fn quantum_per_example_info_bound(setting: InfoSetting, d: usize, epsilon: f64) -> Result<f64> {
    check_info_epsilon(epsilon)?;
    if d == 0 {
        return Err(Error::invalid("d must be at least 1"));
    }
    let mass = match setting {
        InfoSetting::Pac => 4.0 * epsilon,
        InfoSetting::Agnostic => 4.0 * epsilon * epsilon,
    };
    if mass > 0.5 {
        return Err(Error::invalid(format!(
            "entropy splitting needs the off-anchor mass {mass} <= 1/2"
        )));
    }
    Ok(binary_entropy(mass)? + mass * (2.0 * d as f64).log2())
}

/// Whether the bound above is applicable at these parameters.
pub fn quantum_info_bound_admissible(setting: InfoSetting, epsilon: f64) -> bool {
    let mass = match setting {
        InfoSetting::Pac => 4.0 * epsilon,
        InfoSetting::Agnostic => 4.0 * epsilon * epsilon,
    };
    epsilon > 0.0 && epsilon < 0.25 && mass <= 0.5
}

/// T-copy inner product of the two ensemble-independent states:
/// `(1 - eps)^T` (heavy-point pair) or `(1 - eps^2)^(T/2)` (biased pair).
/// T = 0 returns 1 (empty product).
pub fn vc_independent_inner_product(setting: InfoSetting, epsilon: f64, t: u32) -> Result<f64> {
    check_info_epsilon(epsilon)?;
    match setting {
        InfoSetting::Pac => Ok((1.0 - epsilon).powi(t as i32)),
        InfoSetting::Agnostic => Ok((1.0 - epsilon * epsilon).powf(t as f64 / 2.0)),
    }
}

/// The explicit single-copy pair behind [`vc_independent_inner_product`]:
/// in the heavy-point setting the two states share the anchor and disagree on
/// one light point; in the biased setting they are the two label-bias states
/// on one point.
pub fn vc_independent_states(
    setting: InfoSetting,
    epsilon: f64,
) -> Result<(QuantumExampleState, QuantumExampleState)> {
    check_info_epsilon(epsilon)?;
    match setting {
        InfoSetting::Pac => {
            let heavy = (1.0 - epsilon).sqrt();
            let light = epsilon.sqrt();
            let a = QuantumExampleState::new(vec![heavy, 0.0, light, 0.0])?;
            let b = QuantumExampleState::new(vec![heavy, 0.0, 0.0, light])?;
            Ok((a, b))
        }
        InfoSetting::Agnostic => {
            let plus = ((1.0 + epsilon) / 2.0).sqrt();
            let minus = ((1.0 - epsilon) / 2.0).sqrt();
            let a = QuantumExampleState::new(vec![plus, minus])?;
            let b = QuantumExampleState::new(vec![minus, plus])?;
            Ok((a, b))
        }
    }
}

/// Partial traces of a joint state on a dim_a x dim_b tensor factorization.
pub fn partial_traces(
    rho: &DensityMatrix,
    dim_a: usize,
    dim_b: usize,
) -> Result<(DensityMatrix, DensityMatrix)> {
    if dim_a * dim_b != rho.dimension() {
        return Err(Error::invalid(format!(
            "dimension {} does not factor as {dim_a} x {dim_b}",
            rho.dimension()
        )));
    }
    let m = rho.matrix();
    let mut a = Matrix::zeros(dim_a, dim_a);
    for i in 0..dim_a {
        for i2 in 0..dim_a {
            let mut sum = 0.0;
            for j in 0..dim_b {
                sum += m.get(i * dim_b + j, i2 * dim_b + j);
            }
            a.set(i, i2, sum);
        }
    }
    let mut b = Matrix::zeros(dim_b, dim_b);
    for j in 0..dim_b {
        for j2 in 0..dim_b {
            let mut sum = 0.0;
            for i in 0..dim_a {
                sum += m.get(i * dim_b + j, i * dim_b + j2);
            }
            b.set(j, j2, sum);
        }
    }
    Ok((DensityMatrix::new(a)?, DensityMatrix::new(b)?))
}

/// Check S(AB) <= S(A) + S(B) + 1e-9 for a joint state.
pub fn subadditivity_check(rho: &DensityMatrix, dim_a: usize, dim_b: usize) -> Result<bool> {
    let (a, b) = partial_traces(rho, dim_a, dim_b)?;
    let joint = von_neumann_entropy(rho);
    Ok(joint <= von_neumann_entropy(&a) + von_neumann_entropy(&b) + 1e-9)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from;
    use rand::Rng;

    #[test]
    fn entropy_of_simple_states() {
        let mixed =
            DensityMatrix::new(Matrix::from_fn(2, 2, |i, j| if i == j { 0.5 } else { 0.0 }))
                .unwrap();
        assert!((von_neumann_entropy(&mixed) - 1.0).abs() < 1e-12);

        let pure = DensityMatrix::new(Matrix::from_fn(3, 3, |i, j| {
            if i == 0 && j == 0 {
                1.0
            } else {
                0.0
            }
        }))
        .unwrap();
        assert!(von_neumann_entropy(&pure).abs() < 1e-12);

        let skew = DensityMatrix::new(Matrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 0) => 0.75,
            (1, 1) => 0.25,
            _ => 0.0,
        }))
        .unwrap();
        assert!((von_neumann_entropy(&skew) - 0.8112781244591328).abs() < 1e-12);
    }

    #[test]
    fn density_matrix_rejects_bad_trace() {
        let m = Matrix::identity(2);
        assert!(DensityMatrix::new(m).is_err());
    }

    #[test]
    fn pac_density_closed_form_matches_brute() {
        for (d, eps) in [(4usize, 0.05), (8, 0.1), (10, 0.2)] {
            let closed = reduced_pac_example_density(d, eps).unwrap();
            let brute = reduced_pac_example_density_brute(d, eps).unwrap();
            assert!(
                closed.matrix().max_abs_diff(brute.matrix()) < 1e-12,
                "d = {d}, eps = {eps}"
            );
            // Anchor entry and trace.
            assert!((closed.matrix().get(0, 0) - (1.0 - 4.0 * eps)).abs() < 1e-15);
            assert!((closed.matrix().trace() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn agnostic_density_closed_form_matches_brute() {
        for (d, eps) in [(4usize, 0.05), (8, 0.1), (10, 0.2)] {
            let closed = reduced_agnostic_example_density(d, eps).unwrap();
            let brute = reduced_agnostic_example_density_brute(d, eps).unwrap();
            assert!(
                closed.matrix().max_abs_diff(brute.matrix()) < 1e-12,
                "d = {d}, eps = {eps}"
            );
        }
    }

    #[test]
    fn uniform_overlap_is_an_eigenvalue_lower_bound() {
        for d in [4usize, 8] {
            for eps in [0.05, 0.1, 0.2] {
                let rho = reduced_agnostic_example_density(d, eps).unwrap();
                let dim = rho.dimension();
                let uniform = vec![(1.0 / dim as f64).sqrt(); dim];
                let overlap = rho.expectation(&uniform).unwrap();
                let closed = agnostic_uniform_overlap(eps).unwrap();
                assert!((overlap - closed).abs() < 1e-12);
                assert!(rho.max_eigenvalue() >= overlap - 1e-12);
                assert!(
                    closed >= 1.0 - 4.0 * eps * eps - UNIFORM_OVERLAP_QUARTIC_COEFF * eps.powi(4)
                );
            }
        }
        let v = agnostic_uniform_overlap(0.05).unwrap();
        assert!((v - 0.9898979485566356).abs() < 1e-12);
    }

    #[test]
    fn classical_info_values_and_oracle() {
        assert!((classical_per_example_info(InfoSetting::Pac, 0.05).unwrap() - 0.2).abs() < 1e-15);
        let agn = classical_per_example_info(InfoSetting::Agnostic, 0.05).unwrap();
        assert!((agn - 0.02904940554533142).abs() < 1e-12);

        let brute = classical_per_example_info_brute(InfoSetting::Pac, 6, 0.1).unwrap();
        assert!((brute - 0.4).abs() < 1e-10);
        let brute = classical_per_example_info_brute(InfoSetting::Agnostic, 6, 0.1).unwrap();
        let closed = classical_per_example_info(InfoSetting::Agnostic, 0.1).unwrap();
        assert!((brute - closed).abs() < 1e-10);
    }

    #[test]
    fn quantum_bound_values_and_dominance() {
        let b = quantum_per_example_info_bound(InfoSetting::Pac, 16, 1.0 / 16.0).unwrap();
        assert!((b - 2.061278124459133).abs() < 1e-12);

        let rho = reduced_pac_example_density(8, 0.05).unwrap();
        let s = von_neumann_entropy(&rho);
        let bound = quantum_per_example_info_bound(InfoSetting::Pac, 8, 0.05).unwrap();
        assert!(s <= bound + 1e-12, "S = {s}, bound = {bound}");

        // Bias going to zero sends the agnostic bound to zero.
        let tiny = quantum_per_example_info_bound(InfoSetting::Agnostic, 8, 1e-6).unwrap();
        assert!(tiny < 1e-9);

        // Inadmissible mass is rejected.
        assert!(quantum_per_example_info_bound(InfoSetting::Pac, 8, 0.2).is_err());
        assert!(!quantum_info_bound_admissible(InfoSetting::Pac, 0.2));
        assert!(quantum_info_bound_admissible(InfoSetting::Agnostic, 0.2));
    }

    #[test]
    fn vc_independent_products() {
        let v = vc_independent_inner_product(InfoSetting::Pac, 0.1, 10).unwrap();
        assert!((v - 0.9f64.powi(10)).abs() < 1e-15);
        let v = vc_independent_inner_product(InfoSetting::Agnostic, 0.1, 2).unwrap();
        assert!((v - 0.99).abs() < 1e-15);
        assert_eq!(
            vc_independent_inner_product(InfoSetting::Pac, 0.1, 0).unwrap(),
            1.0
        );

        for setting in [InfoSetting::Pac, InfoSetting::Agnostic] {
            let (a, b) = vc_independent_states(setting, 0.1).unwrap();
            let single = a.inner_product(&b).unwrap();
            for t in [1u32, 7, 100] {
                let formula = vc_independent_inner_product(setting, 0.1, t).unwrap();
                assert!((single.powi(t as i32) - formula).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn inner_products_feed_the_distinguishing_ceiling() {
        // Two states with T-copy inner product c are distinguished with
        // probability at most 1/2 + sqrt(1 - c^2)/2; build a planar pair with
        // exactly that inner product and evaluate the ceiling.
        use crate::pgm::helstrom_two_state;
        for (setting, eps, t) in [
            (InfoSetting::Pac, 0.1, 10u32),
            (InfoSetting::Agnostic, 0.1, 8),
        ] {
            let c = vc_independent_inner_product(setting, eps, t).unwrap();
            let a = QuantumExampleState::new(vec![1.0, 0.0]).unwrap();
            let b = QuantumExampleState::new(vec![c, (1.0 - c * c).sqrt()]).unwrap();
            let ceiling = helstrom_two_state(0.5, &a, &b).unwrap();
            let expected = 0.5 + 0.5 * (1.0 - c * c).sqrt();
            assert!((ceiling - expected).abs() < 1e-12);
            assert!(ceiling < 1.0);
        }
    }

    #[test]
    fn subadditivity_cases() {
        // Product of two mixed qubits: equality.
        let product = DensityMatrix::new(Matrix::from_fn(
            4,
            4,
            |i, j| {
                if i == j {
                    0.25
                } else {
                    0.0
                }
            },
        ))
        .unwrap();
        assert!(subadditivity_check(&product, 2, 2).unwrap());
        let (a, b) = partial_traces(&product, 2, 2).unwrap();
        let gap = von_neumann_entropy(&a) + von_neumann_entropy(&b) - von_neumann_entropy(&product);
        assert!(gap.abs() < 1e-9);

        // Maximally entangled two-qubit pure state: 0 <= 1 + 1.
        let psi = [
            std::f64::consts::FRAC_1_SQRT_2,
            0.0,
            0.0,
            std::f64::consts::FRAC_1_SQRT_2,
        ];
        let bell = DensityMatrix::new(Matrix::from_fn(4, 4, |i, j| psi[i] * psi[j])).unwrap();
        assert!(subadditivity_check(&bell, 2, 2).unwrap());
        let (a, _) = partial_traces(&bell, 2, 2).unwrap();
        assert!((von_neumann_entropy(&a) - 1.0).abs() < 1e-9);

        assert!(subadditivity_check(&bell, 3, 2).is_err());
    }

    #[test]
    fn subadditivity_on_random_states() {
        let mut rng = rng_from(99);
        for _ in 0..50 {
            let da = rng.gen_range(2..=4usize);
            let db = rng.gen_range(2..=4usize);
            let dim = da * db;
            let b = Matrix::from_fn(dim, dim, |_, _| rng.gen::<f64>() - 0.5);
            let raw = b.transpose().matmul(&b);
            let rho = DensityMatrix::new(raw.scaled(1.0 / raw.trace())).unwrap();
            assert!(subadditivity_check(&rho, da, db).unwrap());
        }
    }

    #[test]
    fn entropy_is_basis_free() {
        let rho = reduced_pac_example_density(4, 0.1).unwrap();
        let dim = rho.dimension();
        // Random orthogonal matrix by Gram-Schmidt on a random square matrix.
        let mut rng = rng_from(5);
        let raw = Matrix::from_fn(dim, dim, |_, _| rng.gen::<f64>() - 0.5);
        let mut q = Matrix::zeros(dim, dim);
        for j in 0..dim {
            let mut col: Vec<f64> = (0..dim).map(|i| raw.get(i, j)).collect();
            for prev in 0..j {
                let dot: f64 = (0..dim).map(|i| q.get(i, prev) * col[i]).sum();
                for (i, item) in col.iter_mut().enumerate() {
                    *item -= dot * q.get(i, prev);
                }
            }
            let norm: f64 = col.iter().map(|v| v * v).sum::<f64>().sqrt();
            for (i, item) in col.iter().enumerate() {
                q.set(i, j, item / norm);
            }
        }
        let conjugated = q.matmul(rho.matrix()).matmul(&q.transpose());
        let rho2 = DensityMatrix::new(conjugated).unwrap();
        assert!((von_neumann_entropy(&rho) - von_neumann_entropy(&rho2)).abs() < 1e-9);
    }
}
