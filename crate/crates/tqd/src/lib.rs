//! Thermal quantum discord for three-qubit Heisenberg impurity chains.
//!
//! The crate computes quantum discord — the gap between total and classical
//! correlations — on thermal (Gibbs) states of two three-qubit models:
//!
//! * a **spin impurity** chain, where qubit 1 couples to qubits 2 and 3 with
//!   strength `J1` while the 2–3 bond has strength `J`;
//! * a **magnetic impurity** chain, a uniform triangle with coupling `J` plus
//!   a local field `B` on qubit 1.
//!
//! Layering, bottom to top:
//!
//! * [`linalg`] — dense complex matrices and a cyclic Jacobi eigensolver;
//! * [`model`] — Hamiltonians, analytic spectra, Gibbs states (including the
//!   degenerate zero-temperature limit);
//! * [`discord`] — entropies, mutual information, classical correlation, and
//!   discord, with a closed-form X-state fast path cross-validated against a
//!   measurement-grid minimizer;
//! * [`sweep`] — parameter sweeps, zero-temperature plateau values, critical
//!   couplings `J1c(T)`, and ordinary-least-squares line fits.
//!
//! ```
//! use tqd::model::{ModelSpec, SpinImpurityParams, Temperature};
//! use tqd::discord::{discord, Bipartition};
//!
//! // Ground state of the spin-impurity chain at J1 = 0: qubits 2 and 3 form
//! // a singlet, a maximally discordant pair.
//! let model = ModelSpec::Spin(SpinImpurityParams { j1: 0.0, j: 1.0 });
//! let rho = model.thermal_state(Temperature::new(0.0).unwrap()).unwrap();
//! let result = discord(&rho, Bipartition::Pair23).unwrap();
//! assert!((result.discord - 1.0).abs() < 1e-9);
//! ```

pub mod discord;
pub mod linalg;
pub mod model;
pub mod sweep;

/// Re-export of the complex-number crate used throughout the public API, so
/// downstream code can name [`num_complex::Complex64`] without pinning its
/// own copy of the dependency.
pub use num_complex;

pub use discord::{Bipartition, DiscordError, DiscordResult, MeasurementAngles, Method};
pub use linalg::{ComplexMatrix, EigenDecomposition, LinalgError};
pub use model::{
    DensityMatrix, MagneticImpurityParams, ModelError, ModelSpec, SpinImpurityParams, Temperature,
};
pub use sweep::{Branch, CriticalFit, GapReference, SweepError, SweepRow, SweepSpec};
