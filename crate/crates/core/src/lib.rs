//! Numerics for quantum state identification over binary linear codes.
//!
//! The crate builds the example-state ensembles attached to the messages of a
//! linear code, computes exact Pretty Good Measurement success probabilities
//! along two independent routes (a dense eigensolver and a Walsh-Hadamard
//! route that exploits the XOR structure of the Gram matrix), evaluates the
//! matching closed-form bounds and per-example information quantities, and
//! runs small learner simulations. Everything stochastic is deterministic
//! given a 64-bit seed.
//!
//! Modules:
//! - [`bits`], [`codes`]: bit-packed F2 vectors and linear codes.
//! - [`fourier`]: transforms and spectra on the Boolean cube.
//! - [`linalg`], [`pgm`]: the Jacobi eigensolver and measurement numerics.
//! - [`ensembles`]: the four state families and their Gram matrices.
//! - [`bounds`], [`info`]: closed-form bounds and entropy quantities.
//! - [`learners`]: statevector, majority-vote, and identification experiments.
//! - [`acceptance`]: the deterministic verification battery behind `verify`.

pub mod acceptance;
pub mod bits;
pub mod bounds;
pub mod codes;
pub mod ensembles;
pub mod error;
pub mod fourier;
pub mod info;
pub mod learners;
pub mod linalg;
pub mod pgm;
pub mod rng;

pub use bits::BitVec;
pub use bounds::{BoundReport, SampleSetting};
pub use codes::{CodeSpec, GeneratorMatrix};
pub use ensembles::{
    AgnosticEnsembleParams, Ensemble, EnsembleKind, NoisyPacEnsembleParams, PacEnsembleParams,
    QuantumExampleState,
};
pub use error::{Error, Result};
pub use fourier::{BooleanFunction, FourierSpectrum};
pub use info::{DensityMatrix, InfoSetting};
pub use learners::{LearnSetting, LearnerTrialReport};
pub use linalg::Matrix;
pub use pgm::{GramMatrix, PgmMethod, PgmResult};
