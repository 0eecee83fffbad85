//! Domain types and unit conventions shared by the solver, diagnostics and IO.
//!
//! All times inside the engine are dimensionless retarded times: the lab-frame
//! combination `2*Gamma2*(t - z/c)` measured in units of `1/(2*Gamma2)`.
//! Physical seconds enter only through [`MediumSpec::time_unit_seconds`] when
//! reports are produced. Field amplitudes are normalized to the saturation
//! Rabi frequency, so `field = 1` drives the ground state to half depletion
//! in steady state.

use crate::error::{Error, FieldViolation, Result};

/// Speed of light in cm/s, used to report physical front traversal times.
pub const SPEED_OF_LIGHT_CM_PER_S: f64 = 2.997_924_58e10;

/// Anything that can serve as the input field envelope at `z = 0`.
///
/// The envelope must vanish identically for `tau > cutoff_tau()`; the
/// propagator samples it once per grid node and preserves those exact zeros
/// through the march. [`PulseSpec`] is the built-in truncated Gaussian;
/// implement this trait to drive the solver with other shapes (flat-top
/// test pulses, measured envelopes, ...).
pub trait PulseShape {
    /// Envelope value at retarded time `tau` (dimensionless field units).
    fn value(&self, tau: f64) -> f64;
    /// Retarded time of the switch-off discontinuity.
    fn cutoff_tau(&self) -> f64;
}

/// Truncated-Gaussian input pulse: a Gaussian envelope cut to exactly zero
/// past the discontinuity time.
///
/// `value(tau) = peak_amplitude * exp(-((tau - center_tau)/width_sigma)^2)`
/// for `tau <= cutoff_tau`, and exactly `0` after. The stored value at the
/// cutoff itself is the left limit, so the jump amplitude is
/// `value(cutoff_tau) > 0` for every finite parameter choice.
#[derive(Debug, Clone, PartialEq)]
pub struct PulseSpec {
    /// Peak amplitude in saturation units, > 0.
    pub peak_amplitude: f64,
    /// Temporal width in normalized retarded-time units, > 0.
    pub width_sigma: f64,
    /// Center of the Gaussian. Explicit (rather than fixed at zero) so the
    /// simulation window can start at `tau = 0` with the medium undisturbed.
    pub center_tau: f64,
    /// Discontinuity time; the field vanishes identically for later times.
    pub cutoff_tau: f64,
}

impl PulseSpec {
    /// Evaluate the input envelope; exact zero for `tau > cutoff_tau`.
    pub fn value(&self, tau: f64) -> f64 {
        if tau > self.cutoff_tau {
            0.0
        } else {
            let arg = (tau - self.center_tau) / self.width_sigma;
            self.peak_amplitude * (-arg * arg).exp()
        }
    }

    fn check(&self, violations: &mut Vec<FieldViolation>) {
        if !(self.peak_amplitude > 0.0) || !self.peak_amplitude.is_finite() {
            violations.push(FieldViolation {
                field: "peak_amplitude".into(),
                message: format!("must be finite and > 0, got {}", self.peak_amplitude),
            });
        }
        if !(self.width_sigma > 0.0) || !self.width_sigma.is_finite() {
            violations.push(FieldViolation {
                field: "width_sigma".into(),
                message: format!("must be finite and > 0, got {}", self.width_sigma),
            });
        }
        if !self.center_tau.is_finite() {
            violations.push(FieldViolation {
                field: "center_tau".into(),
                message: "must be finite".into(),
            });
        }
        if !(self.cutoff_tau > 0.0) || !self.cutoff_tau.is_finite() {
            violations.push(FieldViolation {
                field: "cutoff_tau".into(),
                message: format!("must be finite and > 0, got {}", self.cutoff_tau),
            });
        }
    }
}

impl PulseShape for PulseSpec {
    fn value(&self, tau: f64) -> f64 {
        PulseSpec::value(self, tau)
    }
    fn cutoff_tau(&self) -> f64 {
        self.cutoff_tau
    }
}

/// Free-standing alias for [`PulseSpec::value`].
pub fn input_pulse_value(pulse: &PulseSpec, tau: f64) -> f64 {
    pulse.value(tau)
}

/// Which material response drives the propagation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MediumModel {
    /// Saturable absorber, single population rate equation.
    RubyReduced,
    /// Saturable absorber, full density-matrix dynamics (validation path).
    RubyFull,
    /// Reverse-saturable absorber, single population rate equation.
    AlexandriteReduced,
    /// Reverse-saturable absorber, full density-matrix dynamics.
    AlexandriteFull,
    /// No medium: the retarded-frame identity map.
    Vacuum,
}

impl MediumModel {
    pub fn is_reduced(self) -> bool {
        matches!(self, MediumModel::RubyReduced | MediumModel::AlexandriteReduced)
    }

    pub fn is_full(self) -> bool {
        matches!(self, MediumModel::RubyFull | MediumModel::AlexandriteFull)
    }

    pub fn name(self) -> &'static str {
        match self {
            MediumModel::RubyReduced => "ruby-reduced",
            MediumModel::RubyFull => "ruby-full",
            MediumModel::AlexandriteReduced => "alexandrite-reduced",
            MediumModel::AlexandriteFull => "alexandrite-full",
            MediumModel::Vacuum => "vacuum",
        }
    }
}

impl std::fmt::Display for MediumModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Material model plus the rates and coupling constants that close it.
///
/// Rates are carried as dimensionless ratios to `2*Gamma2` because those are
/// the only combinations the normalized equations see; the physical duration
/// of one time unit is configured separately for reporting.
#[derive(Debug, Clone, PartialEq)]
pub struct MediumSpec {
    pub model: MediumModel,
    /// Ground-state absorption coupling, per cm.
    pub alpha0: f64,
    /// Excited-state (reverse-saturation) coupling, per cm. Only the
    /// alexandrite models read it.
    pub alpha0_tilde: f64,
    /// `Gamma1 / (2*Gamma2)`; stiffness ratio used by the full models.
    pub gamma1_ratio: f64,
    /// `Gamma3 / (2*Gamma2)`; used by the full alexandrite model.
    pub gamma3_ratio: f64,
    /// Physical duration of one normalized time unit, in seconds.
    pub time_unit_seconds: f64,
    /// Medium length in cm.
    pub length_cm: f64,
}

impl MediumSpec {
    /// A vacuum stretch of the given length; dynamics-free identity medium.
    pub fn vacuum(length_cm: f64, time_unit_seconds: f64) -> Self {
        MediumSpec {
            model: MediumModel::Vacuum,
            alpha0: 0.0,
            alpha0_tilde: 0.0,
            gamma1_ratio: 0.0,
            gamma3_ratio: 0.0,
            time_unit_seconds,
            length_cm,
        }
    }

    fn check(&self, violations: &mut Vec<FieldViolation>, warnings: &mut Vec<String>) {
        if !(self.alpha0 >= 0.0) || !self.alpha0.is_finite() {
            violations.push(FieldViolation {
                field: "alpha0".into(),
                message: format!("must be finite and >= 0, got {}", self.alpha0),
            });
        }
        if !(self.alpha0_tilde >= 0.0) || !self.alpha0_tilde.is_finite() {
            violations.push(FieldViolation {
                field: "alpha0_tilde".into(),
                message: format!("must be finite and >= 0, got {}", self.alpha0_tilde),
            });
        }
        if !(self.length_cm > 0.0) || !self.length_cm.is_finite() {
            violations.push(FieldViolation {
                field: "length_cm".into(),
                message: format!("must be finite and > 0, got {}", self.length_cm),
            });
        }
        if !(self.time_unit_seconds > 0.0) || !self.time_unit_seconds.is_finite() {
            violations.push(FieldViolation {
                field: "time_unit_seconds".into(),
                message: format!("must be finite and > 0, got {}", self.time_unit_seconds),
            });
        }
        if self.model.is_full() {
            if !(self.gamma1_ratio > 0.0) || !self.gamma1_ratio.is_finite() {
                violations.push(FieldViolation {
                    field: "gamma1_ratio".into(),
                    message: format!(
                        "full models need a finite positive rate ratio, got {}",
                        self.gamma1_ratio
                    ),
                });
            } else if self.gamma1_ratio < 100.0 {
                warnings.push(format!(
                    "gamma1_ratio = {} is below 100; the adiabatic comparison \
                     against the reduced model is not meaningful at this ratio",
                    self.gamma1_ratio
                ));
            }
        }
        if self.model == MediumModel::AlexandriteFull
            && (!(self.gamma3_ratio > 0.0) || !self.gamma3_ratio.is_finite())
        {
            violations.push(FieldViolation {
                field: "gamma3_ratio".into(),
                message: format!(
                    "full alexandrite model needs a finite positive rate ratio, got {}",
                    self.gamma3_ratio
                ),
            });
        }
    }
}

/// Nonuniform retarded-time grid plus the z-step ladder.
///
/// The node sequence is strictly increasing over `[0, tau_end]`, carries the
/// pulse cutoff bitwise-exactly as a node, uses `fine_dtau` spacing inside
/// the refinement window around the cutoff and `coarse_dtau` outside, with a
/// geometric transition (ratio <= 1.5 per cell) between the two. Built by
/// [`crate::propagator::build_tau_grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct SimGrid {
    pub(crate) tau_nodes: Vec<f64>,
    pub(crate) cutoff_index: usize,
    pub(crate) coarse_dtau: f64,
    pub(crate) fine_dtau: f64,
    pub(crate) refine_window: f64,
    pub(crate) nz: usize,
    pub(crate) length_cm: f64,
}

impl SimGrid {
    pub fn tau_nodes(&self) -> &[f64] {
        &self.tau_nodes
    }

    pub fn n_nodes(&self) -> usize {
        self.tau_nodes.len()
    }

    /// Index of the cutoff node (the discontinuity).
    pub fn cutoff_index(&self) -> usize {
        self.cutoff_index
    }

    pub fn cutoff_tau(&self) -> f64 {
        self.tau_nodes[self.cutoff_index]
    }

    pub fn tau_end(&self) -> f64 {
        *self.tau_nodes.last().expect("grid has nodes")
    }

    pub fn coarse_dtau(&self) -> f64 {
        self.coarse_dtau
    }

    pub fn fine_dtau(&self) -> f64 {
        self.fine_dtau
    }

    pub fn refine_window(&self) -> f64 {
        self.refine_window
    }

    /// Spatial step in cm; `nz * dz` spans the medium length.
    pub fn dz(&self) -> f64 {
        self.length_cm / self.nz as f64
    }

    pub fn nz(&self) -> usize {
        self.nz
    }

    pub fn length_cm(&self) -> f64 {
        self.length_cm
    }

    fn check(&self, cutoff_tau: f64, violations: &mut Vec<FieldViolation>) {
        if self.tau_nodes.len() < 3 {
            violations.push(FieldViolation {
                field: "grid".into(),
                message: format!("needs at least 3 nodes, got {}", self.tau_nodes.len()),
            });
            return;
        }
        if self.tau_nodes.windows(2).any(|w| !(w[1] > w[0])) {
            violations.push(FieldViolation {
                field: "grid".into(),
                message: "tau_nodes must be strictly increasing".into(),
            });
        }
        match self.tau_nodes.get(self.cutoff_index) {
            Some(&node) if node == cutoff_tau => {}
            _ => violations.push(FieldViolation {
                field: "grid".into(),
                message: format!(
                    "cutoff_tau {} is not a grid node (bitwise match required)",
                    cutoff_tau
                ),
            }),
        }
        if self.cutoff_index + 1 >= self.tau_nodes.len() {
            violations.push(FieldViolation {
                field: "grid".into(),
                message: "cutoff must lie strictly inside the simulation window".into(),
            });
        }
        if self.nz == 0 {
            violations.push(FieldViolation {
                field: "grid".into(),
                message: "nz must be >= 1".into(),
            });
        }
        if !(self.length_cm > 0.0) {
            violations.push(FieldViolation {
                field: "grid".into(),
                message: format!("z extent must be > 0, got {}", self.length_cm),
            });
        }
    }
}

/// A configuration that passed [`validate_config`], together with any
/// non-fatal warnings raised during validation.
#[derive(Debug, Clone)]
pub struct ValidatedConfig {
    pub pulse: PulseSpec,
    pub medium: MediumSpec,
    pub grid: SimGrid,
    pub warnings: Vec<String>,
}

/// Check every cross-invariant of a (pulse, medium, grid) triple.
///
/// Pure and deterministic: the same inputs always produce the same verdict.
/// All violations are gathered before returning so a caller sees the full
/// list at once.
pub fn validate_config(
    pulse: &PulseSpec,
    medium: &MediumSpec,
    grid: &SimGrid,
) -> Result<ValidatedConfig> {
    let mut violations = Vec::new();
    let mut warnings = Vec::new();
    pulse.check(&mut violations);
    medium.check(&mut violations, &mut warnings);
    grid.check(pulse.cutoff_tau, &mut violations);
    if grid.length_cm != medium.length_cm {
        violations.push(FieldViolation {
            field: "grid".into(),
            message: format!(
                "z ladder spans {} cm but the medium is {} cm long",
                grid.length_cm, medium.length_cm
            ),
        });
    }
    if violations.is_empty() {
        Ok(ValidatedConfig {
            pulse: pulse.clone(),
            medium: medium.clone(),
            grid: grid.clone(),
            warnings,
        })
    } else {
        Err(Error::InvalidConfig(violations))
    }
}

/// Field and population lines recorded at one z position.
#[derive(Debug, Clone)]
pub struct SavedSlice {
    /// Depth in cm.
    pub z_cm: f64,
    /// Field envelope on the tau grid.
    pub field: Vec<f64>,
    /// Ground-state population on the tau grid.
    pub rho_gg: Vec<f64>,
    /// Extended density-matrix state, present for full-model runs.
    pub full_state: Option<FullStateLine>,
}

/// All density-matrix components along a tau line (full models only).
#[derive(Debug, Clone)]
pub enum FullStateLine {
    Ruby(Vec<crate::media::RubyFullState>),
    Alexandrite(Vec<crate::media::AlexandriteFullState>),
}

/// Run bookkeeping attached to every propagation result.
#[derive(Debug, Clone)]
pub struct RunMetadata {
    pub model: MediumModel,
    pub scheme: String,
    pub n_tau_nodes: usize,
    pub nz: usize,
    /// Number of population-line integrations performed.
    pub population_integrations: usize,
    pub wall_time: std::time::Duration,
    pub warnings: Vec<String>,
}

/// Output of a propagation run: lines at the requested z slices
/// (always including the input and output faces) plus metadata.
#[derive(Debug, Clone)]
pub struct PropagationResult {
    pub grid: SimGrid,
    pub pulse_cutoff_tau: f64,
    pub slices: Vec<SavedSlice>,
    pub medium: MediumSpec,
    pub metadata: RunMetadata,
}

impl PropagationResult {
    /// The z = 0 slice.
    pub fn input(&self) -> &SavedSlice {
        &self.slices[0]
    }

    /// The z = L slice.
    pub fn output(&self) -> &SavedSlice {
        self.slices.last().expect("result has slices")
    }

    pub fn slice_at(&self, z_cm: f64) -> Option<&SavedSlice> {
        self.slices.iter().find(|s| s.z_cm == z_cm)
    }
}

/// Front and peak observables extracted from a medium run and its vacuum
/// reference.
#[derive(Debug, Clone)]
pub struct DelayReport {
    /// Last nonzero retarded time at the input face.
    pub front_tau_in: f64,
    /// Last nonzero retarded time at the output face. Equals `front_tau_in`
    /// in the retarded frame: the discontinuity moves at exactly c.
    pub front_tau_out: f64,
    /// Physical time for the front to cross the medium, `length / c`.
    pub front_lab_traversal_s: f64,
    /// Same traversal expressed in normalized time units.
    pub front_lab_traversal_norm: f64,
    /// Peak arrival difference, medium minus vacuum reference, normalized
    /// units. Positive = subluminal peak, negative = superluminal peak.
    pub peak_delay_norm: f64,
    /// Peak delay in seconds.
    pub peak_delay_s: f64,
    /// Output/input ratio of trapezoid-integrated intensity.
    pub energy_transmission: f64,
}
