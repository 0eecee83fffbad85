//! Material response: population/density-matrix equations of motion and the
//! field absorption laws for each medium model.
//!
//! Everything here is expressed in normalized retarded time. Decay rates
//! appear only as the ratios `gamma1_ratio = Gamma1/(2*Gamma2)` and
//! `gamma3_ratio = Gamma3/(2*Gamma2)`; the drive strength enters through the
//! saturation-normalized field. The coherence drive carries the factor
//! `s = Omega_sat/(2*Gamma2) = sqrt(2*gamma1_ratio)`, which is how the
//! saturation normalization shows up once helper approximations are removed.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{MediumModel, MediumSpec};

/// Ground-state population, the single dynamical variable of the reduced
/// models.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedState {
    pub rho_gg: f64,
}

/// Full three-level state for the saturable absorber: three real populations
/// plus the driven coherence. The trace `rho_gg + rho_11 + rho_22` is a
/// conserved quantity of the equations of motion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RubyFullState {
    pub rho_gg: f64,
    pub rho_11: f64,
    pub rho_22: f64,
    pub rho_1g: Complex64,
}

impl RubyFullState {
    /// All population in the ground state, no coherence.
    pub fn ground() -> Self {
        RubyFullState {
            rho_gg: 1.0,
            rho_11: 0.0,
            rho_22: 0.0,
            rho_1g: Complex64::new(0.0, 0.0),
        }
    }

    pub fn trace(&self) -> f64 {
        self.rho_gg + self.rho_11 + self.rho_22
    }
}

/// Full four-level state for the reverse-saturable absorber; the same field
/// drives both the ground transition (`rho_1g`) and the excited-state
/// transition (`rho_32`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlexandriteFullState {
    pub rho_gg: f64,
    pub rho_11: f64,
    pub rho_22: f64,
    pub rho_33: f64,
    pub rho_1g: Complex64,
    pub rho_32: Complex64,
}

impl AlexandriteFullState {
    pub fn ground() -> Self {
        AlexandriteFullState {
            rho_gg: 1.0,
            rho_11: 0.0,
            rho_22: 0.0,
            rho_33: 0.0,
            rho_1g: Complex64::new(0.0, 0.0),
            rho_32: Complex64::new(0.0, 0.0),
        }
    }

    pub fn trace(&self) -> f64 {
        self.rho_gg + self.rho_11 + self.rho_22 + self.rho_33
    }
}

/// Either full-model state, for operations shared between the two.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FullState {
    Ruby(RubyFullState),
    Alexandrite(AlexandriteFullState),
}

/// Coherence drive scale `Omega_sat/(2*Gamma2)` for a given stiffness ratio.
#[inline]
pub(crate) fn coherence_scale(gamma1_ratio: f64) -> f64 {
    (2.0 * gamma1_ratio).sqrt()
}

/// Reduced population rate: `(1 - rho_gg) - field^2 * rho_gg`.
///
/// The saturable and reverse-saturable media share this form; they differ
/// only in how the field decays along z.
pub fn ruby_reduced_rhs(state: ReducedState, field: f64) -> f64 {
    reduced_deriv(state.rho_gg, field)
}

/// Same functional form with the modulus squared of the drive; identical to
/// [`ruby_reduced_rhs`] for the real envelopes used throughout.
pub fn alexandrite_reduced_rhs(state: ReducedState, field: f64) -> f64 {
    reduced_deriv(state.rho_gg, field)
}

#[inline]
pub(crate) fn reduced_deriv(rho_gg: f64, field: f64) -> f64 {
    (1.0 - rho_gg) - field * field * rho_gg
}

/// Stationary solution of the reduced rate equation under constant drive.
pub fn steady_state_population(field: f64) -> f64 {
    1.0 / (1.0 + field * field)
}

// Array forms used by the line integrators. Layout:
//   ruby:        [rho_gg, rho_11, rho_22, Re(rho_1g), Im(rho_1g)]
//   alexandrite: [rho_gg, rho_11, rho_22, rho_33,
//                 Re(rho_1g), Im(rho_1g), Re(rho_32), Im(rho_32)]

pub(crate) const RUBY_DIM: usize = 5;
pub(crate) const ALEX_DIM: usize = 8;

#[inline]
pub(crate) fn ruby_full_deriv(state: &[f64; RUBY_DIM], field: f64, g1: f64, s: f64) -> [f64; RUBY_DIM] {
    let [gg, p11, p22, re1g, im1g] = *state;
    let pump = s * field * im1g; // i*(s*field/2)*(rho_1g - rho_g1) = -s*field*Im(rho_1g)
    let relax = 2.0 * g1 * p11;
    [
        p22 - pump,
        pump - relax,
        relax - p22,
        -g1 * re1g, // the coherence drive i*(s*field/2)*(..) is purely imaginary
        -g1 * im1g + 0.5 * s * field * (gg - p11),
    ]
}

#[inline]
pub(crate) fn alex_full_deriv(state: &[f64; ALEX_DIM], field: f64, g1: f64, g3: f64, s: f64) -> [f64; ALEX_DIM] {
    let [gg, p11, p22, p33, re1g, im1g, re32, im32] = *state;
    let pump1 = s * field * im1g;
    let pump3 = s * field * im32;
    let relax1 = 2.0 * g1 * p11;
    let relax3 = 2.0 * g3 * p33;
    [
        p22 - pump1,
        pump1 - relax1,
        relax1 - p22 + relax3 - pump3,
        pump3 - relax3,
        -g1 * re1g,
        -g1 * im1g + 0.5 * s * field * (gg - p11),
        -g3 * re32,
        -g3 * im32 + 0.5 * s * field * (p22 - p33),
    ]
}

fn model_mismatch(operation: &'static str, expected: &'static str, medium: &MediumSpec) -> Error {
    Error::ModelMismatch {
        operation,
        expected,
        actual: medium.model.name(),
    }
}

/// Full three-level derivative in normalized time.
///
/// The ground and metastable equations are taken as written; the band
/// population `rho_11` evolves by trace conservation,
/// `d(rho_11) = -2*g1*rho_11 - s*field*Im(rho_1g)` up to sign bookkeeping,
/// which is the unique closure compatible with the stated equations.
pub fn ruby_full_rhs(state: &RubyFullState, field: f64, medium: &MediumSpec) -> Result<RubyFullState> {
    if medium.model != MediumModel::RubyFull {
        return Err(model_mismatch("ruby_full_rhs", "ruby-full", medium));
    }
    let g1 = medium.gamma1_ratio;
    let s = coherence_scale(g1);
    let d = ruby_full_deriv(&state.into_array(), field, g1, s);
    Ok(RubyFullState::from_array(&d))
}

/// Full four-level derivative; the second driven transition adds the
/// `rho_32` coherence with its own relaxation ratio.
pub fn alexandrite_full_rhs(
    state: &AlexandriteFullState,
    field: f64,
    medium: &MediumSpec,
) -> Result<AlexandriteFullState> {
    if medium.model != MediumModel::AlexandriteFull {
        return Err(model_mismatch("alexandrite_full_rhs", "alexandrite-full", medium));
    }
    let g1 = medium.gamma1_ratio;
    let g3 = medium.gamma3_ratio;
    let s = coherence_scale(g1);
    let d = alex_full_deriv(&state.into_array(), field, g1, g3, s);
    Ok(AlexandriteFullState::from_array(&d))
}

impl RubyFullState {
    #[inline]
    pub(crate) fn into_array(&self) -> [f64; RUBY_DIM] {
        [self.rho_gg, self.rho_11, self.rho_22, self.rho_1g.re, self.rho_1g.im]
    }

    #[inline]
    pub(crate) fn from_array(a: &[f64; RUBY_DIM]) -> Self {
        RubyFullState {
            rho_gg: a[0],
            rho_11: a[1],
            rho_22: a[2],
            rho_1g: Complex64::new(a[3], a[4]),
        }
    }
}

impl AlexandriteFullState {
    #[inline]
    pub(crate) fn into_array(&self) -> [f64; ALEX_DIM] {
        [
            self.rho_gg,
            self.rho_11,
            self.rho_22,
            self.rho_33,
            self.rho_1g.re,
            self.rho_1g.im,
            self.rho_32.re,
            self.rho_32.im,
        ]
    }

    #[inline]
    pub(crate) fn from_array(a: &[f64; ALEX_DIM]) -> Self {
        AlexandriteFullState {
            rho_gg: a[0],
            rho_11: a[1],
            rho_22: a[2],
            rho_33: a[3],
            rho_1g: Complex64::new(a[4], a[5]),
            rho_32: Complex64::new(a[6], a[7]),
        }
    }
}

/// Field decay rate per cm for the reduced models.
///
/// Saturable: `kappa = (alpha0/2) * rho_gg`. Reverse-saturable adds the
/// excited-state channel: `kappa = (alpha0/2) rho_gg + (alpha0_tilde/2) (1 - rho_gg)`,
/// a convex combination of the two endpoint rates.
pub fn absorption_coefficient(state: ReducedState, medium: &MediumSpec) -> Result<f64> {
    match medium.model {
        MediumModel::RubyReduced => Ok(0.5 * medium.alpha0 * state.rho_gg),
        MediumModel::AlexandriteReduced => Ok(0.5 * medium.alpha0 * state.rho_gg
            + 0.5 * medium.alpha0_tilde * (1.0 - state.rho_gg)),
        _ => Err(model_mismatch(
            "absorption_coefficient",
            "a reduced model",
            medium,
        )),
    }
}

/// Complex field derivative `d(field)/dz` sourced by the coherences of a
/// full-model state.
///
/// Fixed by requiring that substituting the stationary coherences reproduce
/// the reduced-model absorption laws exactly:
///
/// - ruby: `i * alpha0 * (g1/s) * rho_1g`, which at the stationary
///   `rho_1g = i*(s*field/2)*(rho_gg - rho_11)/g1` collapses to
///   `-(alpha0/2) * field * (rho_gg - rho_11)`;
/// - alexandrite adds `i * alpha0_tilde * (g3/s) * rho_32` for the
///   excited-state transition.
///
/// For a real drive switched on at the window start the coherences stay
/// purely imaginary, so the returned derivative is purely real.
pub fn coherence_field_coupling(state: &FullState, medium: &MediumSpec) -> Result<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    match (state, medium.model) {
        (FullState::Ruby(st), MediumModel::RubyFull) => {
            let g1 = medium.gamma1_ratio;
            let s = coherence_scale(g1);
            Ok(i * medium.alpha0 * (g1 / s) * st.rho_1g)
        }
        (FullState::Alexandrite(st), MediumModel::AlexandriteFull) => {
            let g1 = medium.gamma1_ratio;
            let g3 = medium.gamma3_ratio;
            let s = coherence_scale(g1);
            Ok(i * medium.alpha0 * (g1 / s) * st.rho_1g
                + i * medium.alpha0_tilde * (g3 / s) * st.rho_32)
        }
        _ => Err(model_mismatch(
            "coherence_field_coupling",
            "a full model matching the state",
            medium,
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ruby_full_medium(g1: f64) -> MediumSpec {
        MediumSpec {
            model: MediumModel::RubyFull,
            alpha0: 1.17,
            alpha0_tilde: 0.0,
            gamma1_ratio: g1,
            gamma3_ratio: 0.0,
            time_unit_seconds: 4.45e-3,
            length_cm: 9.0,
        }
    }

    fn alex_full_medium(g1: f64, g3: f64) -> MediumSpec {
        MediumSpec {
            model: MediumModel::AlexandriteFull,
            alpha0: 1.17,
            alpha0_tilde: 4.68,
            gamma1_ratio: g1,
            gamma3_ratio: g3,
            time_unit_seconds: 2.5e-4,
            length_cm: 9.0,
        }
    }

    #[test]
    fn reduced_rhs_fixed_points() {
        assert_eq!(ruby_reduced_rhs(ReducedState { rho_gg: 1.0 }, 0.0), 0.0);
        assert_eq!(ruby_reduced_rhs(ReducedState { rho_gg: 0.5 }, 1.0), 0.0);
        assert_eq!(ruby_reduced_rhs(ReducedState { rho_gg: 1.0 }, 1.0), -1.0);
        assert_eq!(alexandrite_reduced_rhs(ReducedState { rho_gg: 1.0 }, 0.0), 0.0);
        assert_eq!(
            alexandrite_reduced_rhs(ReducedState { rho_gg: 1.0 / 5.0 }, 2.0),
            0.0
        );
        assert_eq!(alexandrite_reduced_rhs(ReducedState { rho_gg: 0.0 }, 5.0), 1.0);
    }

    #[test]
    fn steady_state_values() {
        assert_eq!(steady_state_population(0.0), 1.0);
        assert_eq!(steady_state_population(1.0), 0.5);
        assert_relative_eq!(steady_state_population(3.0), 0.1, max_relative = 1e-15);
    }

    #[test]
    fn ruby_full_dark_equilibrium() {
        let m = ruby_full_medium(1e3);
        let d = ruby_full_rhs(&RubyFullState::ground(), 0.0, &m).unwrap();
        assert_eq!(d.rho_gg, 0.0);
        assert_eq!(d.rho_11, 0.0);
        assert_eq!(d.rho_22, 0.0);
        assert_eq!(d.rho_1g, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn ruby_full_metastable_decay() {
        // all population parked in the metastable level, no drive: it decays
        // back to the ground state at unit normalized rate
        let m = ruby_full_medium(1e3);
        let st = RubyFullState {
            rho_gg: 0.0,
            rho_11: 0.0,
            rho_22: 1.0,
            rho_1g: Complex64::new(0.0, 0.0),
        };
        let d = ruby_full_rhs(&st, 0.0, &m).unwrap();
        assert_eq!(d.rho_gg, 1.0);
        assert_eq!(d.rho_22, -1.0);
        assert_eq!(d.rho_11, 0.0);
    }

    #[test]
    fn ruby_full_rejects_wrong_model() {
        let mut m = ruby_full_medium(1e3);
        m.model = MediumModel::RubyReduced;
        assert!(matches!(
            ruby_full_rhs(&RubyFullState::ground(), 0.1, &m),
            Err(Error::ModelMismatch { .. })
        ));
    }

    #[test]
    fn alexandrite_full_dark_equilibrium_and_e3_decay() {
        let m = alex_full_medium(1e3, 2e3);
        let d = alexandrite_full_rhs(&AlexandriteFullState::ground(), 0.0, &m).unwrap();
        assert_eq!(d.trace(), 0.0);
        assert_eq!(d.rho_gg, 0.0);

        let st = AlexandriteFullState {
            rho_gg: 0.0,
            rho_11: 0.0,
            rho_22: 0.0,
            rho_33: 1.0,
            rho_1g: Complex64::new(0.0, 0.0),
            rho_32: Complex64::new(0.0, 0.0),
        };
        let d = alexandrite_full_rhs(&st, 0.0, &m).unwrap();
        let two_g3 = 2.0 * m.gamma3_ratio;
        assert_eq!(d.rho_22, two_g3);
        assert_eq!(d.rho_33, -two_g3);
    }

    #[test]
    fn derivative_trace_vanishes_over_random_states() {
        // 10^4 random valid states per model; the trace of the implemented
        // derivative components must vanish to rounding.
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        let mr = ruby_full_medium(50.0);
        let ma = alex_full_medium(50.0, 80.0);
        let mut worst: f64 = 0.0;
        for _ in 0..10_000 {
            let field: f64 = rng.gen_range(0.0..3.0);
            // random populations on the simplex, bounded coherences
            let a: f64 = rng.gen_range(0.0..1.0);
            let b: f64 = rng.gen_range(0.0..(1.0 - a));
            let c = 1.0 - a - b;
            let st = RubyFullState {
                rho_gg: a,
                rho_11: b,
                rho_22: c,
                rho_1g: Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)),
            };
            let d = ruby_full_rhs(&st, field, &mr).unwrap();
            worst = worst.max(d.trace().abs());

            let a: f64 = rng.gen_range(0.0..1.0);
            let b: f64 = rng.gen_range(0.0..(1.0 - a));
            let c: f64 = rng.gen_range(0.0..(1.0 - a - b));
            let e = 1.0 - a - b - c;
            let st = AlexandriteFullState {
                rho_gg: a,
                rho_11: b,
                rho_22: c,
                rho_33: e,
                rho_1g: Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)),
                rho_32: Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)),
            };
            let d = alexandrite_full_rhs(&st, field, &ma).unwrap();
            worst = worst.max(d.trace().abs());
        }
        assert!(worst <= 1e-14, "worst trace drift {worst:e}");
    }

    #[test]
    fn absorption_coefficient_values() {
        let ruby = MediumSpec {
            model: MediumModel::RubyReduced,
            ..ruby_full_medium(0.0)
        };
        assert_relative_eq!(
            absorption_coefficient(ReducedState { rho_gg: 1.0 }, &ruby).unwrap(),
            0.585,
            max_relative = 1e-15
        );

        let alex = MediumSpec {
            model: MediumModel::AlexandriteReduced,
            ..alex_full_medium(0.0, 0.0)
        };
        // fully depleted ground state: only the excited-state channel is left
        assert_relative_eq!(
            absorption_coefficient(ReducedState { rho_gg: 0.0 }, &alex).unwrap(),
            0.5 * 4.68,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            absorption_coefficient(ReducedState { rho_gg: 1.0 }, &alex).unwrap(),
            0.5 * 1.17,
            max_relative = 1e-15
        );

        let vac = MediumSpec::vacuum(9.0, 1.0);
        assert!(matches!(
            absorption_coefficient(ReducedState { rho_gg: 1.0 }, &vac),
            Err(Error::ModelMismatch { .. })
        ));
        let full = ruby_full_medium(1e3);
        assert!(matches!(
            absorption_coefficient(ReducedState { rho_gg: 1.0 }, &full),
            Err(Error::ModelMismatch { .. })
        ));
    }

    #[test]
    fn coupling_reduces_to_absorption_law_at_stationary_coherence() {
        let m = ruby_full_medium(1e3);
        let g1 = m.gamma1_ratio;
        let s = coherence_scale(g1);
        for &(rho_gg, field) in &[(1.0, 0.3), (0.6, 1.0), (0.2, 2.5)] {
            let stationary = Complex64::new(0.0, 0.5 * s * field * rho_gg / g1);
            let st = FullState::Ruby(RubyFullState {
                rho_gg,
                rho_11: 0.0,
                rho_22: 1.0 - rho_gg,
                rho_1g: stationary,
            });
            let d = coherence_field_coupling(&st, &m).unwrap();
            assert_relative_eq!(d.re, -0.5 * m.alpha0 * field * rho_gg, max_relative = 1e-14);
            assert_abs_diff_eq!(d.im, 0.0, epsilon = 1e-18);
        }
    }

    #[test]
    fn coupling_vanishes_without_coherence() {
        let m = alex_full_medium(1e3, 2e3);
        let st = FullState::Alexandrite(AlexandriteFullState::ground());
        let d = coherence_field_coupling(&st, &m).unwrap();
        assert_eq!(d, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn alexandrite_stationary_coupling_matches_reverse_saturation_law() {
        // With rho_11 = rho_33 = 0 and rho_22 = 1 - rho_gg, inserting both
        // stationary coherences must reproduce the two-channel law exactly.
        let m = alex_full_medium(4e3, 7e3);
        let g1 = m.gamma1_ratio;
        let g3 = m.gamma3_ratio;
        let s = coherence_scale(g1);
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..1000 {
            let rho_gg: f64 = rng.gen_range(0.0..1.0);
            let field: f64 = rng.gen_range(0.0..3.0);
            let st = FullState::Alexandrite(AlexandriteFullState {
                rho_gg,
                rho_11: 0.0,
                rho_22: 1.0 - rho_gg,
                rho_33: 0.0,
                rho_1g: Complex64::new(0.0, 0.5 * s * field * rho_gg / g1),
                rho_32: Complex64::new(0.0, 0.5 * s * field * (1.0 - rho_gg) / g3),
            });
            let d = coherence_field_coupling(&st, &m).unwrap();
            let expected = -0.5 * m.alpha0 * field * rho_gg
                - 0.5 * m.alpha0_tilde * field * (1.0 - rho_gg);
            assert_relative_eq!(d.re, expected, max_relative = 1e-12, epsilon = 1e-300);
            assert_abs_diff_eq!(d.im, 0.0, epsilon = 1e-18);
        }
    }

    proptest! {
        // the reduced steady state attracts from both sides
        #[test]
        fn reduced_steady_state_is_attracting(
            rho in 0.0f64..1.0,
            field in 0.0f64..5.0,
        ) {
            let ss = steady_state_population(field);
            let d = ruby_reduced_rhs(ReducedState { rho_gg: rho }, field);
            if rho < ss {
                prop_assert!(d > 0.0);
            } else if rho > ss {
                prop_assert!(d < 0.0);
            }
        }

        // reverse-saturable decay rate is always between the endpoint rates
        #[test]
        fn alexandrite_kappa_is_a_convex_combination(
            rho in 0.0f64..=1.0,
            alpha0 in 0.0f64..10.0,
            ratio in 0.0f64..10.0,
        ) {
            let m = MediumSpec {
                model: MediumModel::AlexandriteReduced,
                alpha0,
                alpha0_tilde: alpha0 * ratio,
                gamma1_ratio: 0.0,
                gamma3_ratio: 0.0,
                time_unit_seconds: 1.0,
                length_cm: 1.0,
            };
            let k = absorption_coefficient(ReducedState { rho_gg: rho }, &m).unwrap();
            let lo = 0.5 * alpha0.min(m.alpha0_tilde);
            let hi = 0.5 * alpha0.max(m.alpha0_tilde);
            prop_assert!(k >= lo - 1e-12 && k <= hi + 1e-12);
        }
    }
}
