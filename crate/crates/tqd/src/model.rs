//! Impurity Hamiltonians, their analytic spectra, and thermal (Gibbs) states.
//!
//! Two three-qubit models, in units with ħ = k_B = 1:
//!
//! * **Spin impurity**: `H = J1 (σ⃗₁·σ⃗₂ + σ⃗₃·σ⃗₁) + J σ⃗₂·σ⃗₃` — qubit 1 is the
//!   impurity, coupled to both neighbours with strength `J1`.
//! * **Magnetic impurity**: `H = J (σ⃗₁·σ⃗₂ + σ⃗₂·σ⃗₃ + σ⃗₃·σ⃗₁) + B σ₁ᶻ` — a
//!   uniform triangle with a local field `B` on qubit 1.
//!
//! Basis convention: index `b₁b₂b₃` with qubit 1 the most significant bit and
//! `|0⟩` the σᶻ = +1 eigenstate. Both spectra are known in closed form
//! ([`analytic_spectrum`]); the numeric eigensolver is checked against them
//! rather than trusted blindly.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{self, eigh, kron, ComplexMatrix, LinalgError};

/// Degenerate ground levels are grouped within this absolute tolerance when
/// forming the zero-temperature state. Exact degeneracies in these models are
/// symmetry-protected, so this only absorbs eigensolver round-off.
pub const GROUND_DEGENERACY_TOL: f64 = 1e-9;

/// Hermiticity / trace tolerance for [`DensityMatrix`] validation.
pub const DENSITY_TOL: f64 = 1e-10;

/// Errors from model construction and thermalization.
#[derive(Debug, Clone, Error)]
pub enum ModelError {
    /// Temperatures must be finite and non-negative.
    #[error("temperature must be finite and >= 0, got {0}")]
    InvalidTemperature(f64),
    /// Couplings and fields must be finite.
    #[error("model parameter {name} must be finite, got {value}")]
    NonFiniteParameter {
        /// Offending parameter name.
        name: &'static str,
        /// Offending value.
        value: f64,
    },
    /// Candidate density matrix is not Hermitian within [`DENSITY_TOL`].
    #[error("density matrix is not Hermitian: max violation {0:.3e}")]
    NonHermitianDensity(f64),
    /// Candidate density matrix does not have unit trace within [`DENSITY_TOL`].
    #[error("density matrix trace is {0}, expected 1")]
    NonUnitTrace(f64),
    /// Subsystem dimension list inconsistent with the matrix dimension.
    #[error("subsystem dims {dims:?} have product {product}, but the matrix is {dim}x{dim}")]
    DimsMismatch {
        /// Declared subsystem dimensions.
        dims: Vec<usize>,
        /// Their product.
        product: usize,
        /// Actual matrix dimension.
        dim: usize,
    },
    /// Propagated eigensolver failure.
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Couplings of the spin-impurity chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinImpurityParams {
    /// Impurity bond strength (qubit 1 to each of qubits 2, 3).
    pub j1: f64,
    /// Bulk bond strength (qubit 2 to qubit 3).
    pub j: f64,
}

/// Couplings of the magnetic-impurity chain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagneticImpurityParams {
    /// Uniform bond strength.
    pub j: f64,
    /// Field strength along z on qubit 1.
    pub b: f64,
}

/// Which Hamiltonian to build, with its couplings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelSpec {
    /// Spin-impurity chain.
    Spin(SpinImpurityParams),
    /// Magnetic-impurity chain.
    Magnetic(MagneticImpurityParams),
}

impl ModelSpec {
    /// Model family name as used in CLI output (`spin` / `magnetic`).
    pub fn family(&self) -> &'static str {
        match self {
            ModelSpec::Spin(_) => "spin",
            ModelSpec::Magnetic(_) => "magnetic",
        }
    }

    /// Impurity coupling, if this is the spin model.
    pub fn j1(&self) -> Option<f64> {
        match self {
            ModelSpec::Spin(p) => Some(p.j1),
            ModelSpec::Magnetic(_) => None,
        }
    }

    /// Bulk coupling (present in both models).
    pub fn j(&self) -> f64 {
        match self {
            ModelSpec::Spin(p) => p.j,
            ModelSpec::Magnetic(p) => p.j,
        }
    }

    /// Field strength, if this is the magnetic model.
    pub fn b(&self) -> Option<f64> {
        match self {
            ModelSpec::Spin(_) => None,
            ModelSpec::Magnetic(p) => Some(p.b),
        }
    }

    /// The 8×8 Hamiltonian matrix.
    pub fn hamiltonian(&self) -> ComplexMatrix {
        match self {
            ModelSpec::Spin(p) => build_spin_impurity(*p),
            ModelSpec::Magnetic(p) => build_magnetic_impurity(*p),
        }
    }

    /// Closed-form spectrum; see [`analytic_spectrum`].
    pub fn analytic_spectrum(&self) -> [f64; 8] {
        analytic_spectrum(self)
    }

    /// Gibbs state of this model at temperature `t`.
    pub fn thermal_state(&self, t: Temperature) -> Result<DensityMatrix, ModelError> {
        gibbs_state(&self.hamiltonian(), t)
    }

    fn validate(&self) -> Result<(), ModelError> {
        let check = |name: &'static str, value: f64| {
            if value.is_finite() {
                Ok(())
            } else {
                Err(ModelError::NonFiniteParameter { name, value })
            }
        };
        match self {
            ModelSpec::Spin(p) => {
                check("j1", p.j1)?;
                check("j", p.j)
            }
            ModelSpec::Magnetic(p) => {
                check("j", p.j)?;
                check("b", p.b)
            }
        }
    }
}

/// Scaled temperature, `t ≥ 0` and finite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Temperature {
    t: f64,
}

impl Temperature {
    /// Validating constructor.
    pub fn new(t: f64) -> Result<Self, ModelError> {
        if !t.is_finite() || t < 0.0 {
            return Err(ModelError::InvalidTemperature(t));
        }
        Ok(Self { t })
    }

    /// The temperature value.
    pub fn value(&self) -> f64 {
        self.t
    }

    /// Whether this is the exact zero-temperature limit.
    pub fn is_zero(&self) -> bool {
        self.t == 0.0
    }
}

/// Unit-trace Hermitian positive-semidefinite matrix with a subsystem
/// dimension list (e.g. `[2, 2, 2]` for the three-qubit chain).
///
/// Construction validates Hermiticity, trace, and the dimension product;
/// positivity is cheap to guarantee where states are produced (spectral Gibbs
/// weights, partial traces) and is asserted via [`DensityMatrix::min_eigenvalue`]
/// in the test suites rather than on every construction.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
}

impl DensityMatrix {
    /// Validating constructor.
    pub fn new(matrix: ComplexMatrix, dims: Vec<usize>) -> Result<Self, ModelError> {
        let violation = matrix.hermiticity_violation();
        if violation > DENSITY_TOL {
            return Err(ModelError::NonHermitianDensity(violation));
        }
        let trace = matrix.trace();
        if (trace - Complex64::new(1.0, 0.0)).norm() > DENSITY_TOL {
            return Err(ModelError::NonUnitTrace(trace.re));
        }
        let product: usize = dims.iter().product();
        if dims.is_empty() || product != matrix.dim() {
            return Err(ModelError::DimsMismatch {
                product,
                dim: matrix.dim(),
                dims,
            });
        }
        Ok(Self { matrix, dims })
    }

    /// The underlying matrix.
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// Subsystem dimensions, most significant factor first.
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Reinterpret the same matrix with a different subsystem grouping
    /// (e.g. `[2, 2, 2]` viewed as the bipartition `[2, 4]`).
    pub fn regrouped(&self, dims: Vec<usize>) -> Result<Self, ModelError> {
        Self::new(self.matrix.clone(), dims)
    }

    /// Smallest eigenvalue; a valid state has `min_eigenvalue() ≥ −1e-10`.
    pub fn min_eigenvalue(&self) -> f64 {
        let vals =
            linalg::eigvalsh(&self.matrix.symmetrized()).expect("symmetrized matrix is Hermitian");
        vals[0]
    }
}

/// Single-site Pauli operator embedded into the 3-qubit space.
fn embed_single(site: usize, op: &ComplexMatrix) -> ComplexMatrix {
    let i2 = ComplexMatrix::identity(2);
    let factors = [
        if site == 0 { op } else { &i2 },
        if site == 1 { op } else { &i2 },
        if site == 2 { op } else { &i2 },
    ];
    kron(&kron(factors[0], factors[1]), factors[2])
}

/// Heisenberg coupling σ⃗ᵢ·σ⃗ⱼ between two of the three qubits.
fn pauli_dot(site_i: usize, site_j: usize) -> ComplexMatrix {
    let paulis = [linalg::pauli_x(), linalg::pauli_y(), linalg::pauli_z()];
    let mut sum = ComplexMatrix::zeros(8);
    for sigma in &paulis {
        sum = sum.add(&embed_single(site_i, sigma).matmul(&embed_single(site_j, sigma)));
    }
    sum
}

/// Spin-impurity Hamiltonian `J1 (σ⃗₁·σ⃗₂ + σ⃗₃·σ⃗₁) + J σ⃗₂·σ⃗₃`.
pub fn build_spin_impurity(p: SpinImpurityParams) -> ComplexMatrix {
    let impurity = pauli_dot(0, 1).add(&pauli_dot(2, 0));
    let bulk = pauli_dot(1, 2);
    impurity
        .scale(Complex64::new(p.j1, 0.0))
        .add(&bulk.scale(Complex64::new(p.j, 0.0)))
}

/// Magnetic-impurity Hamiltonian `J (σ⃗₁·σ⃗₂ + σ⃗₂·σ⃗₃ + σ⃗₃·σ⃗₁) + B σ₁ᶻ`.
pub fn build_magnetic_impurity(p: MagneticImpurityParams) -> ComplexMatrix {
    let ring = pauli_dot(0, 1).add(&pauli_dot(1, 2)).add(&pauli_dot(2, 0));
    ring.scale(Complex64::new(p.j, 0.0))
        .add(&embed_single(0, &linalg::pauli_z()).scale(Complex64::new(p.b, 0.0)))
}

/// Closed-form eigenvalues, sorted ascending with multiplicities.
///
/// Spin impurity: `{J − 4J1 (×2), −3J (×2), J + 2J1 (×4)}`.
/// Magnetic impurity: `{3J ± B, −3J ± B, ±η₊, ±η₋}` with
/// `η± = √(B² + 9J² ± 2JB)`. The magnetic list is treated as an unordered
/// multiset — no eigenvalue↔eigenvector pairing is asserted.
pub fn analytic_spectrum(model: &ModelSpec) -> [f64; 8] {
    let mut vals = match model {
        ModelSpec::Spin(p) => {
            let e12 = p.j - 4.0 * p.j1;
            let e34 = -3.0 * p.j;
            let e5678 = p.j + 2.0 * p.j1;
            [e12, e12, e34, e34, e5678, e5678, e5678, e5678]
        }
        ModelSpec::Magnetic(p) => {
            // Both radicands are sums of squares: B² + 9J² ± 2JB = (B ± J)² + 8J².
            let eta_plus = (p.b * p.b + 9.0 * p.j * p.j + 2.0 * p.j * p.b).sqrt();
            let eta_minus = (p.b * p.b + 9.0 * p.j * p.j - 2.0 * p.j * p.b).sqrt();
            [
                3.0 * p.j + p.b,
                3.0 * p.j - p.b,
                -3.0 * p.j + p.b,
                -3.0 * p.j - p.b,
                eta_plus,
                -eta_plus,
                eta_minus,
                -eta_minus,
            ]
        }
    };
    vals.sort_by(|a, b| a.partial_cmp(b).expect("spectrum entries are finite"));
    vals
}

/// Gibbs state `exp(−H/T)/Z`, computed spectrally.
///
/// Energies are shifted by the ground energy before exponentiation so small
/// temperatures cannot overflow. At `t = 0` the result is the uniform mixture
/// over the (possibly degenerate) ground eigenspace — the exact `T → 0⁺`
/// limit of the Gibbs distribution.
pub fn gibbs_state(h: &ComplexMatrix, t: Temperature) -> Result<DensityMatrix, ModelError> {
    let eig = eigh(h)?;
    let n = h.dim();
    let ground = eig.eigenvalues[0];

    let weights: Vec<f64> = if t.is_zero() {
        let degeneracy = eig
            .eigenvalues
            .iter()
            .filter(|&&e| e <= ground + GROUND_DEGENERACY_TOL)
            .count();
        eig.eigenvalues
            .iter()
            .map(|&e| {
                if e <= ground + GROUND_DEGENERACY_TOL {
                    1.0 / degeneracy as f64
                } else {
                    0.0
                }
            })
            .collect()
    } else {
        let boltzmann: Vec<f64> = eig
            .eigenvalues
            .iter()
            .map(|&e| (-(e - ground) / t.value()).exp())
            .collect();
        let z: f64 = boltzmann.iter().sum();
        boltzmann.iter().map(|w| w / z).collect()
    };

    let v = &eig.eigenvectors;
    let mut rho = ComplexMatrix::zeros(n);
    for (k, &w) in weights.iter().enumerate() {
        if w == 0.0 {
            continue;
        }
        for i in 0..n {
            let vik = v.at(i, k);
            for j in 0..n {
                let delta = vik * v.at(j, k).conj() * w;
                rho.set(i, j, rho.at(i, j) + delta);
            }
        }
    }

    let dims = qubit_dims(n);
    DensityMatrix::new(rho.symmetrized(), dims)
}

/// Factor a power-of-two dimension into qubits; other dimensions stay whole.
fn qubit_dims(n: usize) -> Vec<usize> {
    if n.is_power_of_two() && n > 1 {
        vec![2; n.trailing_zeros() as usize]
    } else {
        vec![n]
    }
}

/// Thermal state of a model, validating parameters first.
pub fn thermal_state(model: &ModelSpec, t: Temperature) -> Result<DensityMatrix, ModelError> {
    model.validate()?;
    model.thermal_state(t)
}
