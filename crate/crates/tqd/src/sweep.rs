//! Parameter sweeps, zero-temperature plateau values, and critical couplings.
//!
//! A [`SweepSpec`] names a model family, one swept parameter, the fixed
//! couplings, temperatures, and bipartitions; [`run_sweep`] tabulates the
//! correlations on the grid (rows ordered parameter-major, then temperature,
//! then bipartition; computed in parallel).
//!
//! The critical-coupling machinery finds, for the spin model at a fixed
//! temperature, the impurity coupling `J1c` beyond which the pair discord has
//! locked onto its zero-temperature plateau to within a threshold. Tracking
//! `J1c` over a temperature range and fitting a straight line through the
//! samples gives the slope/intercept pairs that characterize each branch.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::discord::{self, Bipartition, DiscordError, Method};
use crate::model::{ModelError, ModelSpec, SpinImpurityParams, Temperature};

/// Gap threshold below which the discord counts as "on the plateau".
pub const DEFAULT_GAP_THRESHOLD: f64 = 1e-6;
/// Absolute tolerance on the bisected critical coupling.
const BISECTION_TOL: f64 = 1e-4;
/// Doubling search gives up once the probe coupling passes this magnitude.
const PROBE_LIMIT: f64 = 1e6;
/// Slack when checking that the gap shrinks monotonically along the probes.
const MONOTONE_SLACK: f64 = 1e-12;

/// Errors from sweeps and critical-coupling searches.
#[derive(Debug, Error)]
pub enum SweepError {
    /// The sweep specification is structurally invalid.
    #[error("invalid sweep spec: {0}")]
    InvalidSpec(String),
    /// Critical-coupling searches need a strictly positive temperature.
    #[error("critical-coupling search requires temperature > 0")]
    NonPositiveTemperature,
    /// The doubling search ran past the probe limit without locking on.
    #[error("no convergence on branch {branch} at temperature {temperature}: gap never fell below threshold")]
    NoConvergence {
        /// Which branch was searched.
        branch: &'static str,
        /// Temperature of the failed search.
        temperature: f64,
    },
    /// Propagated discord failure.
    #[error(transparent)]
    Discord(#[from] DiscordError),
    /// Propagated model failure.
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Model family selector used in sweep specifications.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModelFamily {
    /// Spin-impurity chain: parameters `j1`, `j`.
    #[serde(rename = "spin")]
    Spin,
    /// Magnetic-impurity chain: parameters `j`, `b`.
    #[serde(rename = "magnetic")]
    Magnetic,
}

/// Name of the parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParameterName {
    /// Impurity coupling (spin model).
    #[serde(rename = "j1")]
    J1,
    /// Bulk coupling (both models).
    #[serde(rename = "j")]
    J,
    /// Magnetic field on qubit 1 (magnetic model).
    #[serde(rename = "b")]
    B,
}

impl ParameterName {
    fn label(&self) -> &'static str {
        match self {
            ParameterName::J1 => "j1",
            ParameterName::J => "j",
            ParameterName::B => "b",
        }
    }
}

/// Range of the swept parameter: `points` evenly spaced values over
/// `[min, max]` inclusive.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SweptParameter {
    /// Which parameter varies.
    pub parameter: ParameterName,
    /// First grid value.
    pub min: f64,
    /// Last grid value.
    pub max: f64,
    /// Number of grid points (at least 2).
    pub points: usize,
}

/// Values of the parameters a sweep holds fixed. Exactly the parameters of
/// the chosen family minus the swept one must be present.
#[derive(Debug, Clone, Copy, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FixedParams {
    /// Impurity coupling (spin model only).
    pub j1: Option<f64>,
    /// Bulk coupling.
    pub j: Option<f64>,
    /// Magnetic field (magnetic model only).
    pub b: Option<f64>,
}

/// Declarative description of a sweep, loadable from JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SweepSpec {
    /// Which Hamiltonian family to evaluate.
    pub model: ModelFamily,
    /// The varying parameter and its grid.
    pub swept: SweptParameter,
    /// The remaining couplings.
    pub fixed: FixedParams,
    /// Temperatures to evaluate at (each ≥ 0).
    pub temperatures: Vec<f64>,
    /// Bipartitions to evaluate (non-empty).
    pub bipartitions: Vec<Bipartition>,
}

impl SweepSpec {
    /// Structural validation; every error names the offending field.
    pub fn validate(&self) -> Result<(), SweepError> {
        let invalid = |msg: String| Err(SweepError::InvalidSpec(msg));

        if self.swept.points < 2 {
            return invalid(format!(
                "swept.points must be at least 2, got {}",
                self.swept.points
            ));
        }
        if !self.swept.min.is_finite() || !self.swept.max.is_finite() {
            return invalid("swept.min and swept.max must be finite".into());
        }
        if self.swept.min >= self.swept.max {
            return invalid(format!(
                "swept range must satisfy min < max, got [{}, {}]",
                self.swept.min, self.swept.max
            ));
        }

        let required: &[ParameterName] = match self.model {
            ModelFamily::Spin => &[ParameterName::J1, ParameterName::J],
            ModelFamily::Magnetic => &[ParameterName::J, ParameterName::B],
        };
        if !required.contains(&self.swept.parameter) {
            return invalid(format!(
                "parameter {} does not belong to the {} model",
                self.swept.parameter.label(),
                match self.model {
                    ModelFamily::Spin => "spin",
                    ModelFamily::Magnetic => "magnetic",
                }
            ));
        }
        for name in [ParameterName::J1, ParameterName::J, ParameterName::B] {
            let fixed_value = match name {
                ParameterName::J1 => self.fixed.j1,
                ParameterName::J => self.fixed.j,
                ParameterName::B => self.fixed.b,
            };
            let needed = required.contains(&name) && name != self.swept.parameter;
            match (needed, fixed_value) {
                (true, None) => {
                    return invalid(format!("fixed.{} is required but missing", name.label()))
                }
                (false, Some(_)) => {
                    return invalid(format!(
                        "fixed.{} must not be set (it is {})",
                        name.label(),
                        if name == self.swept.parameter {
                            "the swept parameter"
                        } else {
                            "not a parameter of this model"
                        }
                    ))
                }
                (true, Some(v)) if !v.is_finite() => {
                    return invalid(format!("fixed.{} must be finite", name.label()))
                }
                _ => {}
            }
        }

        if self.temperatures.is_empty() {
            return invalid("temperatures must be non-empty".into());
        }
        for &t in &self.temperatures {
            if !t.is_finite() || t < 0.0 {
                return invalid(format!("temperatures must be finite and >= 0, got {t}"));
            }
        }
        if self.bipartitions.is_empty() {
            return invalid("bipartitions must be non-empty".into());
        }
        Ok(())
    }

    /// The `i`-th grid value of the swept parameter.
    fn grid_value(&self, i: usize) -> f64 {
        let f = i as f64 / (self.swept.points - 1) as f64;
        self.swept.min + (self.swept.max - self.swept.min) * f
    }

    /// Model with the swept parameter set to `value`.
    fn model_at(&self, value: f64) -> ModelSpec {
        let pick = |name: ParameterName, fixed: Option<f64>| {
            if self.swept.parameter == name {
                value
            } else {
                fixed.expect("validated spec has all fixed parameters")
            }
        };
        match self.model {
            ModelFamily::Spin => ModelSpec::Spin(SpinImpurityParams {
                j1: pick(ParameterName::J1, self.fixed.j1),
                j: pick(ParameterName::J, self.fixed.j),
            }),
            ModelFamily::Magnetic => ModelSpec::Magnetic(crate::model::MagneticImpurityParams {
                j: pick(ParameterName::J, self.fixed.j),
                b: pick(ParameterName::B, self.fixed.b),
            }),
        }
    }
}

/// One evaluated grid point of a sweep.
#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    /// Full model parameters at this row.
    pub model: ModelSpec,
    /// Temperature of the thermal state.
    pub temperature: f64,
    /// Which cut was analysed.
    pub bipartition: Bipartition,
    /// Mutual information in bits.
    pub mutual_information: f64,
    /// Classical correlation in bits.
    pub classical_correlation: f64,
    /// Quantum discord in bits.
    pub discord: f64,
    /// Route that produced the values.
    pub method: Method,
}

/// Evaluate the sweep. Rows are ordered by grid value, then temperature, then
/// bipartition; evaluation is parallel but the order is deterministic.
pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRow>, SweepError> {
    spec.validate()?;
    let mut cells = Vec::new();
    for i in 0..spec.swept.points {
        let model = spec.model_at(spec.grid_value(i));
        for &t in &spec.temperatures {
            for &bip in &spec.bipartitions {
                cells.push((model, t, bip));
            }
        }
    }
    cells
        .into_par_iter()
        .map(|(model, t, bipartition)| {
            let rho = model.thermal_state(Temperature::new(t)?)?;
            let result = discord::discord(&rho, bipartition)?;
            Ok(SweepRow {
                model,
                temperature: t,
                bipartition,
                mutual_information: result.mutual_information,
                classical_correlation: result.classical_correlation,
                discord: result.discord,
                method: result.method,
            })
        })
        .collect()
}

/// Discord of the zero-temperature (ground) state for the given model.
pub fn zero_temperature_discord(model: ModelSpec, bip: Bipartition) -> Result<f64, SweepError> {
    let rho = model.thermal_state(Temperature::new(0.0).expect("0 is a valid temperature"))?;
    Ok(discord::discord(&rho, bip)?.discord)
}

/// Which side of the J1 axis a critical-coupling search walks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Branch {
    /// Antiferromagnetic impurity side: search outward over J1 > 0.
    #[serde(rename = "j1_positive")]
    J1Positive,
    /// Ferromagnetic impurity side: search outward over J1 < 0.
    #[serde(rename = "j1_negative")]
    J1Negative,
}

impl Branch {
    /// Stable textual name used in CLI output.
    pub fn label(&self) -> &'static str {
        match self {
            Branch::J1Positive => "j1_positive",
            Branch::J1Negative => "j1_negative",
        }
    }

    /// First probe coupling, one unit beyond the ground-phase boundary.
    fn seed(&self, j: f64) -> f64 {
        match self {
            Branch::J1Positive => j.max(0.0) + 1.0,
            Branch::J1Negative => (-2.0 * j).min(0.0) - 1.0,
        }
    }

    /// Inner edge of the searched region (the ground-phase boundary).
    fn boundary(&self, j: f64) -> f64 {
        match self {
            Branch::J1Positive => j.max(0.0),
            Branch::J1Negative => (-2.0 * j).min(0.0),
        }
    }
}

/// Reference value the plateau gap is measured against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GapReference {
    /// Zero-temperature discord at the branch seed. On each searched branch
    /// the ground eigenvectors do not move with J1, so this equals the local
    /// reading everywhere past the boundary, at far lower cost.
    #[serde(rename = "plateau")]
    Plateau,
    /// Zero-temperature discord recomputed at every probe's own J1.
    #[serde(rename = "local")]
    Local,
}

/// Result of a single critical-coupling search.
#[derive(Debug, Clone, Copy)]
pub struct CriticalSearch {
    /// Critical impurity coupling at the requested temperature.
    pub j1c: f64,
    /// Whether the gap shrank monotonically along the doubling probes. A
    /// `false` here is a diagnostic, not a failure: the bracket is still
    /// valid, but intermediate structure was observed.
    pub gap_monotone: bool,
}

/// Straight-line fit of the critical coupling against temperature.
#[derive(Debug, Clone)]
pub struct CriticalFit {
    /// Fitted slope dJ1c/dT.
    pub slope: f64,
    /// Fitted intercept J1c(0).
    pub intercept: f64,
    /// Root-mean-square residual of the fit.
    pub rms_residual: f64,
    /// Which branch was searched.
    pub branch: Branch,
    /// Temperatures the samples were taken at.
    pub sample_temperatures: Vec<f64>,
    /// Critical couplings at those temperatures.
    pub samples: Vec<f64>,
    /// True when every search along the way reported a monotone gap.
    pub gap_monotone: bool,
}

/// |plateau − discord at (j1, t)| for the 1–2 pair.
fn plateau_gap(
    j1: f64,
    j: f64,
    t: f64,
    bip: Bipartition,
    reference: GapReference,
    seed_plateau: f64,
) -> Result<f64, SweepError> {
    let model = ModelSpec::Spin(SpinImpurityParams { j1, j });
    let target = match reference {
        GapReference::Plateau => seed_plateau,
        GapReference::Local => zero_temperature_discord(model, bip)?,
    };
    let rho = model.thermal_state(Temperature::new(t)?)?;
    let thermal = discord::discord(&rho, bip)?.discord;
    Ok((target - thermal).abs())
}

/// Find the critical coupling `J1c(T)`: the smallest |J1| on the branch at
/// which the thermal discord is within `threshold` of the zero-temperature
/// plateau.
///
/// Search: start at the branch seed, double the distance from the origin
/// until the gap falls below `threshold` (error out past |J1| = 1e6), then
/// bisect the bracketing interval down to 1e-4. If the seed already sits
/// below threshold, bisect inward between the ground-phase boundary and the
/// seed instead.
pub fn find_critical_coupling(
    j: f64,
    t: f64,
    branch: Branch,
    threshold: f64,
    bip: Bipartition,
    reference: GapReference,
) -> Result<CriticalSearch, SweepError> {
    if t <= 0.0 {
        return Err(SweepError::NonPositiveTemperature);
    }

    let seed = branch.seed(j);
    let seed_plateau =
        zero_temperature_discord(ModelSpec::Spin(SpinImpurityParams { j1: seed, j }), bip)?;
    let gap_at = |j1: f64| plateau_gap(j1, j, t, bip, reference, seed_plateau);

    let mut gap_monotone = true;
    let seed_gap = gap_at(seed)?;

    let (mut below, mut above) = if seed_gap < threshold {
        // Already on the plateau at the seed: bracket inward toward the
        // phase boundary, where the plateau value itself changes.
        (branch.boundary(j), seed)
    } else {
        let mut prev = seed;
        let mut prev_gap = seed_gap;
        loop {
            let probe = prev * 2.0;
            if probe.abs() > PROBE_LIMIT {
                return Err(SweepError::NoConvergence {
                    branch: branch.label(),
                    temperature: t,
                });
            }
            let gap = gap_at(probe)?;
            if gap > prev_gap + MONOTONE_SLACK {
                gap_monotone = false;
            }
            if gap < threshold {
                break (prev, probe);
            }
            prev = probe;
            prev_gap = gap;
        }
    };

    // Invariant: gap(below) ≥ threshold > gap(above)  (or `below` is the
    // phase boundary in the inward case). Bisect on the threshold crossing.
    while (above - below).abs() > BISECTION_TOL {
        let mid = 0.5 * (below + above);
        if gap_at(mid)? < threshold {
            above = mid;
        } else {
            below = mid;
        }
    }

    Ok(CriticalSearch {
        j1c: 0.5 * (below + above),
        gap_monotone,
    })
}

/// Ordinary least squares `y ≈ slope·x + intercept`, plus the RMS residual.
/// Computed with centered sums for numerical stability.
pub fn ols_line(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    assert_eq!(xs.len(), ys.len());
    assert!(xs.len() >= 2, "need at least two samples to fit a line");
    let n = xs.len() as f64;
    let x_mean = xs.iter().sum::<f64>() / n;
    let y_mean = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        sxx += (x - x_mean) * (x - x_mean);
        sxy += (x - x_mean) * (y - y_mean);
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let mse = xs
        .iter()
        .zip(ys)
        .map(|(&x, &y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum::<f64>()
        / n;
    (slope, intercept, mse.sqrt())
}

/// Default temperature grid for critical-line fits: 19 points on [1, 10].
pub fn default_fit_temperatures() -> Vec<f64> {
    (0..19).map(|i| 1.0 + i as f64 * 0.5).collect()
}

/// Sample `J1c(T)` over `temperatures` and fit a straight line through the
/// samples. Searches run in parallel over temperatures.
pub fn fit_critical_line(
    j: f64,
    branch: Branch,
    bip: Bipartition,
    temperatures: &[f64],
    threshold: f64,
    reference: GapReference,
) -> Result<CriticalFit, SweepError> {
    if temperatures.len() < 2 {
        return Err(SweepError::InvalidSpec(
            "critical-line fit needs at least two temperatures".into(),
        ));
    }
    let searches: Vec<CriticalSearch> = temperatures
        .par_iter()
        .map(|&t| find_critical_coupling(j, t, branch, threshold, bip, reference))
        .collect::<Result<_, _>>()?;

    let samples: Vec<f64> = searches.iter().map(|s| s.j1c).collect();
    let gap_monotone = searches.iter().all(|s| s.gap_monotone);
    let (slope, intercept, rms_residual) = ols_line(temperatures, &samples);
    Ok(CriticalFit {
        slope,
        intercept,
        rms_residual,
        branch,
        sample_temperatures: temperatures.to_vec(),
        samples,
        gap_monotone,
    })
}
