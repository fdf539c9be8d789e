//! Entropies, mutual information, classical correlation, and quantum discord.
//!
//! Discord is defined against projective measurements on party A (always a
//! single qubit here): `D = I(A:B) − J(ρ)` where `J = S(ρ_B) − min_{θ,φ}
//! S(B|{Π_k})` and the measurement basis is `|k₁⟩ = cos(θ/2)|0⟩ +
//! e^{iφ} sin(θ/2)|1⟩`, `Π₂ = I − Π₁`. Everything is in bits (log base 2).
//!
//! Two routes compute the same quantity and cross-validate each other:
//!
//! * [`grid_discord`] — direct numerical minimization over the measurement
//!   sphere: a 64×64 grid followed by alternating golden-section descent.
//!   Makes no structural assumption about the state.
//! * [`xstate_discord`] — for X-shaped two-qubit states with `ρ22 = ρ33`, the
//!   measurement optimization collapses to a closed-form one-dimensional
//!   objective (see [`XStateParams`]) minimized exactly. The widely used
//!   transverse-measurement value `H(τ)` is this objective at `x = 1/2` and
//!   the σᶻ measurement its endpoint `x = 1`; neither alone attains the
//!   infimum on the whole class, so the fast path minimizes over all `x`.
//!
//! [`discord`] dispatches: the fast path when its preconditions hold, the
//! grid otherwise.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, ComplexMatrix};
use crate::model::{DensityMatrix, ModelError};

/// Entries outside the X pattern must stay below this for the fast path.
pub const XSTATE_SHAPE_TOL: f64 = 1e-12;
/// Allowed |ρ22 − ρ33| for the fast path's applicability condition.
pub const XSTATE_CONDITION_TOL: f64 = 1e-10;

/// Eigenvalues below this count as exact zeros inside entropies (0·log 0 = 0).
const EIGENVALUE_FLOOR: f64 = 1e-14;
/// Measurement outcomes with probability below this contribute nothing.
const PROBABILITY_FLOOR: f64 = 1e-14;
/// Grid resolution: θ_i = i·π/63, φ_j = j·2π/64 for i, j in 0..64.
const GRID_POINTS: usize = 64;
/// Golden-section iterations (interval shrinks by ~0.618 per step).
const GOLDEN_ITERS: usize = 80;
/// Refinement stops once an alternating sweep improves less than this.
const REFINE_TOL: f64 = 1e-12;
/// Hard cap on alternating refinement sweeps.
const REFINE_MAX_STEPS: usize = 200;

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Errors from the discord layer.
#[derive(Debug, Clone, Error)]
pub enum DiscordError {
    /// Subsystem selection incompatible with the state's dimension list.
    #[error("invalid subsystem selection: {reason}")]
    InvalidSubsystem {
        /// What was wrong.
        reason: String,
    },
    /// The fast path was asked to handle a state that is not X-shaped.
    #[error("state is not X-shaped: |rho[{row}][{col}]| = {magnitude:.3e} exceeds {XSTATE_SHAPE_TOL:.0e}")]
    NotXState {
        /// Offending row (0-based).
        row: usize,
        /// Offending column (0-based).
        col: usize,
        /// Magnitude of the offending entry.
        magnitude: f64,
    },
    /// The fast path requires ρ22 = ρ33 (1-based notation).
    #[error("x-state condition violated: rho22 = {rho22} vs rho33 = {rho33} differ beyond {XSTATE_CONDITION_TOL:.0e}")]
    ConditionViolated {
        /// Second diagonal entry.
        rho22: f64,
        /// Third diagonal entry.
        rho33: f64,
    },
    /// Propagated state-construction failure.
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Which cut of the three-qubit chain to analyse. The measured party A is the
/// first listed qubit (qubit 1 for `pair_12`, `pair_13`, and the 1–23 split;
/// qubit 2 for `pair_23`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Bipartition {
    /// Keep qubits 1 and 2; measure qubit 1.
    #[serde(rename = "pair_12")]
    Pair12,
    /// Keep qubits 2 and 3; measure qubit 2.
    #[serde(rename = "pair_23")]
    Pair23,
    /// Keep qubits 1 and 3; measure qubit 1.
    #[serde(rename = "pair_13")]
    Pair13,
    /// Split qubit 1 against the pair (2,3); measure qubit 1.
    #[serde(rename = "one_vs_rest_1_23")]
    OneVsRest123,
}

impl Bipartition {
    /// All bipartitions, in output order.
    pub const ALL: [Bipartition; 4] = [
        Bipartition::Pair12,
        Bipartition::Pair23,
        Bipartition::Pair13,
        Bipartition::OneVsRest123,
    ];

    /// Stable textual name used in CLI output and sweep specs.
    pub fn label(&self) -> &'static str {
        match self {
            Bipartition::Pair12 => "pair_12",
            Bipartition::Pair23 => "pair_23",
            Bipartition::Pair13 => "pair_13",
            Bipartition::OneVsRest123 => "one_vs_rest_1_23",
        }
    }
}

/// Projective-measurement direction on the Bloch sphere of party A.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementAngles {
    /// Polar angle in [0, π].
    pub theta: f64,
    /// Azimuthal angle in [0, 2π).
    pub phi: f64,
}

/// Which computational route produced a [`DiscordResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Method {
    /// Closed-form X-state objective, minimized exactly in one variable.
    #[serde(rename = "xstate_analytic")]
    XstateAnalytic,
    /// 64×64 measurement grid plus golden-section refinement.
    #[serde(rename = "grid_refined")]
    GridRefined,
}

impl Method {
    /// Stable textual name used in CLI output.
    pub fn label(&self) -> &'static str {
        match self {
            Method::XstateAnalytic => "xstate_analytic",
            Method::GridRefined => "grid_refined",
        }
    }
}

/// Discord plus its ingredients and optimizer diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordResult {
    /// Quantum discord `I − J`, in bits.
    pub discord: f64,
    /// Classical correlation `J`, in bits.
    pub classical_correlation: f64,
    /// Quantum mutual information `I`, in bits.
    pub mutual_information: f64,
    /// Measurement direction attaining the conditional-entropy minimum.
    pub minimizer: MeasurementAngles,
    /// Which route produced the value.
    pub method: Method,
}

/// Partial trace keeping the listed subsystems (in their original order).
pub fn partial_trace(rho: &DensityMatrix, keep: &[usize]) -> Result<DensityMatrix, DiscordError> {
    let dims = rho.dims();
    let n = dims.len();
    let mut sorted = keep.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if keep.is_empty() || sorted.len() != keep.len() || *sorted.last().unwrap() >= n {
        return Err(DiscordError::InvalidSubsystem {
            reason: format!("keep = {keep:?} is not a set of valid indices for dims {dims:?}"),
        });
    }

    let traced: Vec<usize> = (0..n).filter(|i| !sorted.contains(i)).collect();
    let keep_dims: Vec<usize> = sorted.iter().map(|&i| dims[i]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&i| dims[i]).collect();
    let d_keep: usize = keep_dims.iter().product();
    let d_traced: usize = traced_dims.iter().product();

    // Strides of each subsystem inside the full index.
    let mut stride = vec![1usize; n];
    for i in (0..n.saturating_sub(1)).rev() {
        stride[i] = stride[i + 1] * dims[i + 1];
    }
    // Full-index offset of a flat subsystem index over the given subsystems.
    let offset = |flat: usize, subsystems: &[usize], sub_dims: &[usize]| -> usize {
        let mut rest = flat;
        let mut total = 0;
        for (pos, &sys) in subsystems.iter().enumerate().rev() {
            let digit = rest % sub_dims[pos];
            rest /= sub_dims[pos];
            total += digit * stride[sys];
        }
        total
    };

    let m = rho.matrix();
    let mut out = ComplexMatrix::zeros(d_keep);
    for row in 0..d_keep {
        let row_base = offset(row, &sorted, &keep_dims);
        for col in 0..d_keep {
            let col_base = offset(col, &sorted, &keep_dims);
            let mut sum = Complex64::new(0.0, 0.0);
            for t in 0..d_traced {
                let t_off = offset(t, &traced, &traced_dims);
                sum += m.at(row_base + t_off, col_base + t_off);
            }
            out.set(row, col, sum);
        }
    }

    DensityMatrix::new(out, keep_dims).map_err(DiscordError::from)
}

/// Von Neumann entropy in bits: `−Σ λ log₂ λ`, eigenvalues below 1e-14
/// treated as zero (this also absorbs partial-trace round-off in [−1e-10, 0)).
pub fn entropy(rho: &DensityMatrix) -> f64 {
    let vals =
        linalg::eigvalsh(&rho.matrix().symmetrized()).expect("symmetrized matrix is Hermitian");
    entropy_from_eigenvalues(&vals)
}

fn entropy_from_eigenvalues(vals: &[f64]) -> f64 {
    vals.iter()
        .filter(|&&v| v >= EIGENVALUE_FLOOR)
        .map(|&v| -v * v.log2())
        .sum()
}

/// Binary Shannon entropy in bits, clamped against round-off at the edges.
fn h2(q: f64) -> f64 {
    if q <= 0.0 || q >= 1.0 {
        return 0.0;
    }
    -q * q.log2() - (1.0 - q) * (1.0 - q).log2()
}

/// Reduce (or regroup) the state to the `[2, d_B]` form the bipartition asks
/// for. Accepts the full `[2,2,2]` chain state, an already-reduced `[2,2]`
/// pair, or the `[2,4]` grouping for the 1–23 split.
fn reduce_for_bipartition(
    rho: &DensityMatrix,
    bip: Bipartition,
) -> Result<DensityMatrix, DiscordError> {
    match (rho.dims(), bip) {
        ([2, 2, 2], Bipartition::Pair12) => partial_trace(rho, &[0, 1]),
        ([2, 2, 2], Bipartition::Pair23) => partial_trace(rho, &[1, 2]),
        ([2, 2, 2], Bipartition::Pair13) => partial_trace(rho, &[0, 2]),
        ([2, 2, 2], Bipartition::OneVsRest123) => {
            rho.regrouped(vec![2, 4]).map_err(DiscordError::from)
        }
        ([2, 2], b) if b != Bipartition::OneVsRest123 => Ok(rho.clone()),
        ([2, 4], Bipartition::OneVsRest123) => Ok(rho.clone()),
        (dims, b) => Err(DiscordError::InvalidSubsystem {
            reason: format!(
                "state dims {dims:?} incompatible with bipartition {}",
                b.label()
            ),
        }),
    }
}

/// Quantum mutual information `S(ρ_A) + S(ρ_B) − S(ρ_AB)` for the bipartition.
pub fn mutual_information(rho: &DensityMatrix, bip: Bipartition) -> Result<f64, DiscordError> {
    let ab = reduce_for_bipartition(rho, bip)?;
    mutual_information_of_reduced(&ab)
}

fn mutual_information_of_reduced(ab: &DensityMatrix) -> Result<f64, DiscordError> {
    let a = partial_trace(ab, &[0])?;
    let b = partial_trace(ab, &[1])?;
    Ok(entropy(&a) + entropy(&b) - entropy(ab))
}

/// Unnormalized post-measurement block `M = Σ_{a,c} conj(k_a) k_c ρ[a,c]`
/// for outcome amplitude vector `k` on party A, with `ρ[a,c]` the d_B×d_B
/// blocks of the `[2, d_B]` state. Returns `(probability, M)`.
fn conditional_block(m: &ComplexMatrix, db: usize, k: [Complex64; 2]) -> (f64, ComplexMatrix) {
    let mut out = ComplexMatrix::zeros(db);
    for a in 0..2 {
        for c in 0..2 {
            let w = k[a].conj() * k[c];
            if w == Complex64::new(0.0, 0.0) {
                continue;
            }
            for i in 0..db {
                for j in 0..db {
                    let v = out.at(i, j) + w * m.at(a * db + i, c * db + j);
                    out.set(i, j, v);
                }
            }
        }
    }
    (out.trace().re, out)
}

/// Eigenvalues of a small Hermitian block (2×2 closed form, Jacobi above).
fn block_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    if m.dim() == 2 {
        let a = m.at(0, 0).re;
        let d = m.at(1, 1).re;
        let off = 0.5 * (m.at(0, 1) + m.at(1, 0).conj());
        let mid = 0.5 * (a + d);
        let r = (0.25 * (a - d) * (a - d) + off.norm_sqr()).sqrt();
        vec![mid - r, mid + r]
    } else {
        linalg::eigvalsh(&m.symmetrized()).expect("symmetrized matrix is Hermitian")
    }
}

/// Average conditional entropy `Σ_k p_k S(ρ_{B|k})` for the measurement
/// direction (θ, φ). `rho_b` is the reduced state of B, used to form the
/// second outcome as `ρ_B − M₁` (the projectors sum to the identity).
fn conditional_entropy_inner(
    m: &ComplexMatrix,
    rho_b: &ComplexMatrix,
    db: usize,
    theta: f64,
    phi: f64,
) -> f64 {
    let (half_sin, half_cos) = (0.5 * theta).sin_cos();
    let k1 = [
        Complex64::new(half_cos, 0.0),
        Complex64::from_polar(half_sin, phi),
    ];
    let (p1, m1) = conditional_block(m, db, k1);
    let m2 = rho_b.sub(&m1);
    let p2 = m2.trace().re;

    let mut total = 0.0;
    for (p, block) in [(p1, m1), (p2, m2)] {
        if p < PROBABILITY_FLOOR {
            continue;
        }
        for lambda in block_eigenvalues(&block) {
            let mu = lambda / p;
            if mu >= EIGENVALUE_FLOOR {
                total -= p * mu * mu.log2();
            }
        }
    }
    total
}

/// Average conditional entropy of B after measuring party A along `angles`.
pub fn conditional_entropy_measured(
    rho: &DensityMatrix,
    bip: Bipartition,
    angles: MeasurementAngles,
) -> Result<f64, DiscordError> {
    let ab = reduce_for_bipartition(rho, bip)?;
    let db = ab.dims()[1];
    let rho_b = partial_trace(&ab, &[1])?;
    Ok(conditional_entropy_inner(
        ab.matrix(),
        rho_b.matrix(),
        db,
        angles.theta,
        angles.phi,
    ))
}

/// Golden-section minimum of `f` on `[a, b]`; returns the midpoint of the
/// final bracket and its value.
fn golden_min(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..GOLDEN_ITERS {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Grid-plus-refinement minimization of the conditional entropy.
///
/// Deterministic reduction: the grid scan keeps the strictly smallest value,
/// so exact ties resolve to the smaller θ, then the smaller φ. Refinement
/// alternates golden-section searches on θ and φ around the incumbent and
/// only ever accepts improvements.
fn minimize_conditional_entropy(
    m: &ComplexMatrix,
    rho_b: &ComplexMatrix,
    db: usize,
) -> (f64, MeasurementAngles) {
    use std::f64::consts::{PI, TAU};

    let mut best = f64::INFINITY;
    let mut theta = 0.0;
    let mut phi = 0.0;
    for i in 0..GRID_POINTS {
        let t = i as f64 * PI / (GRID_POINTS - 1) as f64;
        for j in 0..GRID_POINTS {
            let p = j as f64 * TAU / GRID_POINTS as f64;
            let v = conditional_entropy_inner(m, rho_b, db, t, p);
            if v < best {
                best = v;
                theta = t;
                phi = p;
            }
        }
    }

    let dt = PI / (GRID_POINTS - 1) as f64;
    let dp = TAU / GRID_POINTS as f64;
    for _ in 0..REFINE_MAX_STEPS {
        let before = best;
        let (t_cand, t_val) = golden_min(
            |x| conditional_entropy_inner(m, rho_b, db, x, phi),
            (theta - dt).max(0.0),
            (theta + dt).min(PI),
        );
        if t_val < best {
            best = t_val;
            theta = t_cand;
        }
        let (p_cand, p_val) = golden_min(
            |x| conditional_entropy_inner(m, rho_b, db, theta, x),
            phi - dp,
            phi + dp,
        );
        if p_val < best {
            best = p_val;
            phi = p_cand;
        }
        if before - best < REFINE_TOL {
            break;
        }
    }

    (
        best,
        MeasurementAngles {
            theta: theta.clamp(0.0, PI),
            phi: phi.rem_euclid(TAU),
        },
    )
}

/// Classical correlation `J = S(ρ_B) − min S(B|{Π_k})` and the minimizing
/// measurement, via the grid-plus-refinement route.
pub fn classical_correlation(
    rho: &DensityMatrix,
    bip: Bipartition,
) -> Result<(f64, MeasurementAngles), DiscordError> {
    let ab = reduce_for_bipartition(rho, bip)?;
    let db = ab.dims()[1];
    let rho_b = partial_trace(&ab, &[1])?;
    let s_b = entropy(&rho_b);
    let (min_cond, angles) = minimize_conditional_entropy(ab.matrix(), rho_b.matrix(), db);
    Ok((s_b - min_cond, angles))
}

/// Closed-form description of an X state with `ρ22 = ρ33`: population vector
/// `(a, b, b, d)` plus coherences `u = ρ14`, `v = ρ23` (1-based notation).
///
/// For a measurement at `x = cos²(θ/2)` (with φ already optimized, which
/// aligns both coherence phases so only `R = |u| + |v|` matters), the average
/// conditional entropy is
///
/// `f(x) = Σ_k p_k H₂((1 + r_k)/2)` with
/// `p₁ = x(a+b) + (1−x)(b+d)`, `p₂ = 1 − p₁`,
/// `r_k = 2√(Δ_k² + x(1−x)R²)/p_k`,
/// `Δ₁ = [x(a−b) + (1−x)(b−d)]/2`, `Δ₂ = [(1−x)(a−b) + x(b−d)]/2`.
///
/// `f` is symmetric about `x = 1/2`; `f(1/2)` is the transverse-measurement
/// value `H(τ)` and `f(1)` the σᶻ value, so minimizing over `x ∈ [1/2, 1]`
/// covers every projective measurement.
#[derive(Debug, Clone, Copy)]
struct XStateParams {
    a: f64,
    b: f64,
    d: f64,
    u: Complex64,
    v: Complex64,
}

impl XStateParams {
    fn extract(m: &ComplexMatrix) -> Result<Self, DiscordError> {
        debug_assert_eq!(m.dim(), 4);
        const X_POSITIONS: [(usize, usize); 8] = [
            (0, 0),
            (1, 1),
            (2, 2),
            (3, 3),
            (0, 3),
            (3, 0),
            (1, 2),
            (2, 1),
        ];
        for row in 0..4 {
            for col in 0..4 {
                if X_POSITIONS.contains(&(row, col)) {
                    continue;
                }
                let magnitude = m.at(row, col).norm();
                if magnitude >= XSTATE_SHAPE_TOL {
                    return Err(DiscordError::NotXState {
                        row,
                        col,
                        magnitude,
                    });
                }
            }
        }
        let rho22 = m.at(1, 1).re;
        let rho33 = m.at(2, 2).re;
        if (rho22 - rho33).abs() > XSTATE_CONDITION_TOL {
            return Err(DiscordError::ConditionViolated { rho22, rho33 });
        }
        Ok(Self {
            a: m.at(0, 0).re,
            b: 0.5 * (rho22 + rho33),
            d: m.at(3, 3).re,
            u: m.at(0, 3),
            v: m.at(1, 2),
        })
    }

    /// The reduced objective `f(x)` described on the struct.
    fn objective(&self, x: f64) -> f64 {
        let r = self.u.norm() + self.v.norm();
        let cs2 = (x * (1.0 - x)).max(0.0);
        let p_up = self.a + self.b;
        let p_down = self.b + self.d;
        let a1 = self.a - self.b;
        let a2 = self.b - self.d;

        let mut total = 0.0;
        let outcomes = [
            (
                x * p_up + (1.0 - x) * p_down,
                0.5 * (x * a1 + (1.0 - x) * a2),
            ),
            (
                (1.0 - x) * p_up + x * p_down,
                0.5 * ((1.0 - x) * a1 + x * a2),
            ),
        ];
        for (p, delta) in outcomes {
            if p < PROBABILITY_FLOOR {
                continue;
            }
            let dev = (delta * delta + cs2 * r * r).sqrt();
            total += p * h2(0.5 + (dev / p).min(0.5));
        }
        total
    }

    /// Exact minimum of the objective and the measurement attaining it.
    fn minimize(&self) -> (f64, MeasurementAngles) {
        use std::f64::consts::PI;

        let f_mid = self.objective(0.5);
        let f_z = self.objective(1.0);
        let (x_interior, f_interior) = golden_min(|x| self.objective(x), 0.5, 1.0);

        // Prefer the transverse point on ties (flat objectives report θ = π/2).
        let (mut x_star, mut f_star) = (0.5, f_mid);
        if f_interior < f_star {
            x_star = x_interior;
            f_star = f_interior;
        }
        if f_z < f_star {
            x_star = 1.0;
            f_star = f_z;
        }

        let theta = 2.0 * x_star.sqrt().min(1.0).acos();
        // Optimal φ aligns the two coherence phases: maximizes
        // |e^{iφ}u + e^{−iφ}v̄| = |u| + |v| at 2φ = −arg(u·v). When either
        // coherence vanishes the objective is φ-flat and 0 is reported.
        let phi = if self.u.norm() > EIGENVALUE_FLOOR && self.v.norm() > EIGENVALUE_FLOOR {
            (-0.5 * (self.u.arg() + self.v.arg())).rem_euclid(PI)
        } else {
            0.0
        };
        (f_star, MeasurementAngles { theta, phi })
    }
}

/// Discord of a two-qubit X state with `ρ22 = ρ33`, via the closed-form
/// one-dimensional objective (see [`XStateParams`]).
///
/// Errors with [`DiscordError::NotXState`] / [`DiscordError::ConditionViolated`]
/// when the preconditions fail; [`discord`] uses those checks to dispatch.
pub fn xstate_discord(rho: &DensityMatrix) -> Result<DiscordResult, DiscordError> {
    if rho.dims() != [2, 2] {
        return Err(DiscordError::InvalidSubsystem {
            reason: format!("x-state fast path needs dims [2, 2], got {:?}", rho.dims()),
        });
    }
    let m = rho.matrix();
    let params = XStateParams::extract(m)?;

    // All reduced and joint spectra are closed-form for X states.
    let s_a =
        entropy_from_eigenvalues(&[m.at(0, 0).re + m.at(1, 1).re, m.at(2, 2).re + m.at(3, 3).re]);
    let s_b =
        entropy_from_eigenvalues(&[m.at(0, 0).re + m.at(2, 2).re, m.at(1, 1).re + m.at(3, 3).re]);
    let s_ab = {
        let outer_mid = 0.5 * (params.a + params.d);
        let outer_dev =
            (0.25 * (params.a - params.d) * (params.a - params.d) + params.u.norm_sqr()).sqrt();
        let inner_mid = 0.5 * (m.at(1, 1).re + m.at(2, 2).re);
        let inner_dev = (0.25 * (m.at(1, 1).re - m.at(2, 2).re) * (m.at(1, 1).re - m.at(2, 2).re)
            + params.v.norm_sqr())
        .sqrt();
        entropy_from_eigenvalues(&[
            outer_mid - outer_dev,
            outer_mid + outer_dev,
            inner_mid - inner_dev,
            inner_mid + inner_dev,
        ])
    };

    let mutual_information = s_a + s_b - s_ab;
    let (min_cond, minimizer) = params.minimize();
    let classical_correlation = s_b - min_cond;
    Ok(DiscordResult {
        discord: mutual_information - classical_correlation,
        classical_correlation,
        mutual_information,
        minimizer,
        method: Method::XstateAnalytic,
    })
}

/// Discord via the measurement grid, regardless of state structure. This is
/// the independent oracle for [`xstate_discord`].
pub fn grid_discord(rho: &DensityMatrix, bip: Bipartition) -> Result<DiscordResult, DiscordError> {
    let ab = reduce_for_bipartition(rho, bip)?;
    grid_discord_of_reduced(&ab)
}

fn grid_discord_of_reduced(ab: &DensityMatrix) -> Result<DiscordResult, DiscordError> {
    let db = ab.dims()[1];
    let rho_b = partial_trace(ab, &[1])?;
    let s_b = entropy(&rho_b);
    let mutual_information = mutual_information_of_reduced(ab)?;
    let (min_cond, minimizer) = minimize_conditional_entropy(ab.matrix(), rho_b.matrix(), db);
    let classical_correlation = s_b - min_cond;
    Ok(DiscordResult {
        discord: mutual_information - classical_correlation,
        classical_correlation,
        mutual_information,
        minimizer,
        method: Method::GridRefined,
    })
}

/// Quantum discord for the given bipartition.
///
/// Dispatch: the X-state fast path when the reduced state satisfies its
/// preconditions (two-qubit, X-shaped, ρ22 = ρ33), the grid minimizer
/// otherwise. [`DiscordResult::method`] records which route ran.
pub fn discord(rho: &DensityMatrix, bip: Bipartition) -> Result<DiscordResult, DiscordError> {
    let ab = reduce_for_bipartition(rho, bip)?;
    if ab.dims() == [2, 2] && XStateParams::extract(ab.matrix()).is_ok() {
        xstate_discord(&ab)
    } else {
        grid_discord_of_reduced(&ab)
    }
}
