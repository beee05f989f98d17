//! Property-based invariants for the numeric kernels.

use proptest::prelude::*;

use pgmlab::bits::BitVec;
use pgmlab::bounds;
use pgmlab::codes::{random_code, random_full_rank};
use pgmlab::ensembles::{
    gram_matrix_direct, AgnosticEnsembleParams, Ensemble, NoisyPacEnsembleParams,
    PacEnsembleParams, QuantumExampleState,
};
use pgmlab::fourier::{
    compose_with_matrix, composed_spectrum_by_preimage, fourier_coefficients, fwht,
    hardness_profile, BooleanFunction,
};
use pgmlab::pgm::{
    helstrom_two_state, pgm_success_generic, pgm_success_xor, psd_sqrt, DEFAULT_PSD_TOL,
};

fn tolerance_for(values: &[f64], base: f64) -> f64 {
    let max = values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    base * max.max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // fwht applied twice is multiplication by the length.
    #[test]
    fn fwht_involution(m in 1usize..=12, seed in any::<u64>()) {
        let mut rng = pgmlab::rng::rng_from(seed);
        use rand::Rng;
        let len = 1usize << m;
        let original: Vec<f64> = (0..len).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
        let mut twice = original.clone();
        fwht(&mut twice).unwrap();
        fwht(&mut twice).unwrap();
        let tol = tolerance_for(&original, 1e-12);
        for (a, b) in twice.iter().zip(&original) {
            prop_assert!((a - len as f64 * b).abs() <= len as f64 * tol);
        }
    }

    // Sum of squared coefficients equals the mean square of the values.
    #[test]
    fn parseval(m in 1usize..=12, seed in any::<u64>()) {
        let mut rng = pgmlab::rng::rng_from(seed);
        use rand::Rng;
        let len = 1usize << m;
        let values: Vec<f64> = (0..len).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
        let f = BooleanFunction::new(m, values.clone()).unwrap();
        let spec = fourier_coefficients(&f);
        let coeff_energy: f64 = spec.coefficients().iter().map(|c| c * c).sum();
        let value_energy: f64 =
            values.iter().map(|v| v * v).sum::<f64>() / len as f64;
        prop_assert!(
            (coeff_energy - value_energy).abs() <= 1e-10 * value_energy.max(1.0)
        );
    }

    // Composing with a full-rank matrix groups coefficients over transpose
    // preimages.
    #[test]
    fn composition_spectrum_equivalence(
        m in 4usize..=10,
        k_raw in 1usize..=6,
        seed in any::<u64>(),
    ) {
        let k = k_raw.min(m);
        let matrix = random_full_rank(m, k, seed).unwrap();
        let mut rng = pgmlab::rng::rng_from(seed ^ 0x5eed);
        use rand::Rng;
        let values: Vec<f64> = (0..1usize << m).map(|_| rng.gen::<f64>() * 2.0 - 1.0).collect();
        let f = BooleanFunction::new(m, values).unwrap();
        let direct = fourier_coefficients(&compose_with_matrix(&f, &matrix).unwrap());
        let grouped = composed_spectrum_by_preimage(&fourier_coefficients(&f), &matrix).unwrap();
        let tol = tolerance_for(direct.coefficients(), 1e-10);
        for (a, b) in direct.coefficients().iter().zip(grouped.coefficients()) {
            prop_assert!((a - b).abs() <= tol);
        }
    }

    // The decay profile has a nonnegative spectrum for every copy count,
    // including far beyond the certified bound range.
    #[test]
    fn profile_spectrum_nonnegative(
        m in 4usize..=14,
        beta_idx in 0usize..3,
        t in 0u32..=200,
    ) {
        let beta = [0.1, 0.5, 1.0][beta_idx];
        let f = hardness_profile(beta, m, t).unwrap();
        let spec = fourier_coefficients(&f);
        prop_assert!(spec.min_coefficient() >= -1e-12);
    }

    // Encoding is linear and distance reduces to codeword weight.
    #[test]
    fn encode_linearity(x in any::<u64>(), y in any::<u64>(), seed in any::<u64>()) {
        let (code, _) = random_code(12, 4, 1, seed).unwrap();
        let x = BitVec::from_index(x & 0xf, 4);
        let y = BitVec::from_index(y & 0xf, 4);
        let sum = code.encode(&x.xor(&y)).unwrap();
        let parts = code.encode(&x).unwrap().xor(&code.encode(&y).unwrap());
        prop_assert_eq!(sum.clone(), parts);
        // d_H(Mx, My) = |M(x + y)|.
        let dist = code
            .encode(&x)
            .unwrap()
            .xor(&code.encode(&y).unwrap())
            .weight();
        prop_assert_eq!(dist, sum.weight());
    }

    // Gram matrices of every family are PSD and their entries depend only on
    // the XOR of the messages.
    #[test]
    fn gram_psd_and_xor_structure(
        kind in 0usize..4,
        t in 0u32..=40,
        seed in any::<u64>(),
    ) {
        let (code, _) = random_code(16, 4, 2, seed).unwrap();
        let ens = match kind {
            0 => Ensemble::Pac(PacEnsembleParams::new(16, 0.04, t, code).unwrap()),
            1 => Ensemble::Agnostic(AgnosticEnsembleParams::new(16, 0.06, t, code).unwrap()),
            2 => Ensemble::NoisyPac(
                NoisyPacEnsembleParams::new(
                    PacEnsembleParams::new(16, 0.04, t, code).unwrap(),
                    0.1,
                )
                .unwrap(),
            ),
            _ => Ensemble::Codeword { code, t },
        };
        let states = ens.states();
        let probs = vec![1.0 / states.len() as f64; states.len()];
        let gram = gram_matrix_direct(&states, &probs, t).unwrap();
        prop_assert!(gram.min_eigenvalue().unwrap() >= -1e-9);
        for x in 0..states.len() {
            for y in 0..states.len() {
                prop_assert!((gram.entry(x, y) - gram.entry(x ^ y, 0)).abs() <= 1e-13);
            }
        }
        // Closed form agrees with the direct route on every pair.
        let closed = ens.gram_closed_form().unwrap();
        for x in 0..states.len() {
            for y in 0..states.len() {
                prop_assert!((gram.entry(x, y) - closed.entry(x, y)).abs() <= 1e-12);
            }
        }
    }

    // PSD square roots reconstruct the input.
    #[test]
    fn psd_sqrt_reconstructs(n in 2usize..=24, seed in any::<u64>()) {
        let mut rng = pgmlab::rng::rng_from(seed);
        use rand::Rng;
        let b = pgmlab::Matrix::from_fn(n, n, |_, _| rng.gen::<f64>() - 0.5);
        let a = b.transpose().matmul(&b);
        let root = psd_sqrt(&a, DEFAULT_PSD_TOL).unwrap();
        prop_assert!(root.matmul(&root).max_abs_diff(&a) <= 1e-8);
    }

    // The identification probability respects the quadratic sandwich around
    // the two-state optimum, for arbitrary priors.
    #[test]
    fn two_state_sandwich(seed in any::<u64>(), p_raw in 0.05f64..0.95) {
        let mut rng = pgmlab::rng::rng_from(seed);
        use rand::Rng;
        let mut make = |dim: usize| {
            let raw: Vec<f64> = (0..dim).map(|_| rng.gen::<f64>() + 1e-3).collect();
            let norm = raw.iter().map(|v| v * v).sum::<f64>().sqrt();
            QuantumExampleState::new(raw.iter().map(|v| v / norm).collect()).unwrap()
        };
        let a = make(3);
        let b = make(3);
        let pgm = pgm_success_generic(&[a.clone(), b.clone()], &[p_raw, 1.0 - p_raw], 1)
            .unwrap()
            .success_probability;
        let opt = helstrom_two_state(p_raw, &a, &b).unwrap();
        prop_assert!(pgm <= opt + 1e-12);
        prop_assert!(pgm >= opt * opt - 1e-12);
    }
}

// More copies never hurt identification on these families.
#[test]
fn pgm_success_monotone_in_copies() {
    let (code, _) = random_code(16, 4, 2, 21).unwrap();
    let ensembles = vec![
        Ensemble::Pac(PacEnsembleParams::new(16, 0.04, 0, code.clone()).unwrap()),
        Ensemble::Agnostic(AgnosticEnsembleParams::new(16, 0.06, 0, code.clone()).unwrap()),
        Ensemble::NoisyPac(
            NoisyPacEnsembleParams::new(
                PacEnsembleParams::new(16, 0.04, 0, code.clone()).unwrap(),
                0.1,
            )
            .unwrap(),
        ),
        Ensemble::Codeword { code, t: 0 },
    ];
    for base in ensembles {
        let mut previous = 0.0;
        for t in 0..=100u32 {
            let ens = base.with_t(t);
            let success = pgm_success_xor(&ens.xor_profile().unwrap())
                .unwrap()
                .success_probability;
            assert!(
                success >= previous - 1e-12,
                "success dropped from {previous} to {success} at t = {t}"
            );
            previous = success;
        }
    }
}

// Identification probability lies in (0, 1] and hits the extremes at the
// right places.
#[test]
fn pgm_success_range() {
    let (code, _) = random_code(16, 4, 2, 33).unwrap();
    let ens = Ensemble::Pac(PacEnsembleParams::new(16, 0.04, 0, code).unwrap());
    let g = ens.xor_profile().unwrap();
    let r = pgm_success_xor(&g).unwrap();
    assert!((r.success_probability - 1.0 / 16.0).abs() < 1e-12);

    let huge = ens.with_t(4000);
    let r = pgm_success_xor(&huge.xor_profile().unwrap()).unwrap();
    assert!(r.success_probability > 0.999_999);
    assert!(r.success_probability <= 1.0 + 1e-12);
}

// Dense and Fourier routes agree at the largest message length the dense
// eigensolver still handles comfortably.
#[test]
fn dense_and_fourier_routes_agree_at_k8() {
    let (code, _) = pgmlab::codes::find_good_code(32, 19).unwrap();
    assert_eq!(code.k(), 8);
    let ens = Ensemble::Pac(PacEnsembleParams::new(32, 0.04, 5, code).unwrap());
    let states = ens.states();
    let probs = vec![1.0 / states.len() as f64; states.len()];
    let dense = pgm_success_generic(&states, &probs, 5)
        .unwrap()
        .success_probability;
    let fourier = pgm_success_xor(&ens.xor_profile().unwrap())
        .unwrap()
        .success_probability;
    assert!(
        (dense - fourier).abs() <= 1e-9,
        "dense {dense} vs fourier {fourier}"
    );
}

// The certified-range guards and the reference evaluators stay consistent.
#[test]
fn bound_guards_match_admissible_range() {
    for (m, beta) in [(16usize, 0.8f64), (16, 0.16), (32, 1.0), (10, 0.1)] {
        let tmax = bounds::max_admissible_t(m, beta);
        assert!(bounds::pgm_xor_ensemble_bound(m, 4, tmax, beta).is_ok());
        assert!(bounds::pgm_xor_ensemble_bound(m, 4, tmax + 1, beta).is_err());
        let unchecked = bounds::pgm_xor_ensemble_bound_unchecked(m, 4, tmax, beta);
        let checked = bounds::pgm_xor_ensemble_bound(m, 4, tmax, beta).unwrap();
        assert_eq!(unchecked, checked);
    }
}
