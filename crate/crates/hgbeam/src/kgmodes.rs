//! Exact Hermite-Gaussian beam solutions of the Klein-Gordon equation.
//!
//! The wavefunction factorizes into a plane-wave carrier along the beam axis
//! and an envelope that depends on the axial coordinate and time only
//! through the light-cone combination `s = xi3 + c tau` measured from the
//! focal event. The envelope solves a paraxial-analog equation in
//! `(xi1, xi2, s)` with effective wavenumber `k_eff = k3 + omega / c`, so it
//! carries the familiar Gaussian-beam structure (width growth
//! `w0 sqrt(1 + (s/z_r)^2)` and Gouy phase `(1+m+n) arctan(s/z_r)`) with
//! the relativistic axial scale `z_r = k_eff w0^2 / 2`.
//!
//! Two factor conventions of the closed form are implemented side by side
//! (see [`Convention`]); the `verify` module adjudicates between them by
//! testing which one actually annihilates the governing operator.

use num_complex::Complex64;

use crate::kinematics::{BeamGeometry, ModeIndex, ParticleKinematics};
use crate::numerics::hermite;

/// Complex field amplitude.
pub type ComplexAmplitude = Complex64;

/// An event (t, x1, x2, x3) in internal units (c = 1, so t carries length
/// units).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourEvent {
    pub t: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl FourEvent {
    pub fn new(t: f64, x1: f64, x2: f64, x3: f64) -> Self {
        FourEvent { t, x1, x2, x3 }
    }

    pub fn origin() -> Self {
        FourEvent::new(0.0, 0.0, 0.0, 0.0)
    }
}

/// Position of an event relative to the focal event.
///
/// The light-cone coordinate `s = xi3 + c tau` is always recomputed from the
/// stored components, never cached, so it cannot go stale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativeEvent {
    pub xi1: f64,
    pub xi2: f64,
    pub xi3: f64,
    pub tau: f64,
}

impl RelativeEvent {
    pub fn new(xi1: f64, xi2: f64, xi3: f64, tau: f64) -> Self {
        RelativeEvent { xi1, xi2, xi3, tau }
    }

    pub fn between(x: &FourEvent, focus: &FourEvent) -> Self {
        RelativeEvent {
            xi1: x.x1 - focus.x1,
            xi2: x.x2 - focus.x2,
            xi3: x.x3 - focus.x3,
            tau: x.t - focus.t,
        }
    }

    /// Light-cone coordinate `xi3 + c tau` (c = 1 internally).
    pub fn s(&self) -> f64 {
        self.xi3 + self.tau
    }
}

/// Reading of the closed-form envelope.
///
/// The printed Gaussian exponent, width and Gouy phase of the source
/// formulas are mutually inconsistent at factor-of-two level. `Canonical`
/// is the self-consistent set (exponent `i k_eff r^2 / (2 (s - i z_r))`,
/// axial argument `s / z_r`); `AsPrinted` keeps the literal printed set
/// (exponent `i k_eff r^2 / (s - 2 i b)`, axial argument `s / 2b`, with
/// `b = z_r` numerically). Only one of them solves the reduced equation;
/// the `verify` module measures which.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    Canonical,
    AsPrinted,
}

/// Beam radius `w(s) = w0 sqrt(1 + (s/z_r)^2)`.
pub fn beam_radius(s: f64, g: &BeamGeometry) -> f64 {
    let a = axial_argument(s, g);
    g.w0 * (1.0 + a * a).sqrt()
}

/// Relativistic Gouy phase `(1 + m + n) arctan(s/z_r)`.
///
/// Odd in `s`, bounded by `(1+m+n) pi/2` in magnitude; the principal arctan
/// branch suffices because the argument is monotone in `s`.
pub fn gouy_relativistic(s: f64, mode: ModeIndex, g: &BeamGeometry) -> f64 {
    mode.gouy_order() * axial_argument(s, g).atan()
}

/// Shared dimensionless axial argument of the width and the Gouy phase.
fn axial_argument(s: f64, g: &BeamGeometry) -> f64 {
    s / g.z_r
}

/// Normalization constant `C_mn = [pi 2^(m+n-1) m! n! w0^2]^(-1/2)`.
///
/// Makes the transverse-slice integral of |envelope|^2 equal to one at every
/// `s` (the slice norm is `s`-independent). Scales as 1/w0, so it is
/// invariant under axial boosts, which leave the waist unchanged.
pub fn normalization_constant(mode: ModeIndex, g: &BeamGeometry) -> f64 {
    let mut fact = 1.0f64;
    for k in 2..=mode.m() {
        fact *= f64::from(k);
    }
    for k in 2..=mode.n() {
        fact *= f64::from(k);
    }
    let pow = 2f64.powi(mode.m() as i32 + mode.n() as i32 - 1);
    (std::f64::consts::PI * pow * fact * g.w0 * g.w0).sqrt().recip()
}

/// Envelope of the (m, n) mode at a relative event.
///
/// Canonical form:
///
/// ```text
/// C_mn (w0/w) H_m(sqrt(2) xi1 / w) H_n(sqrt(2) xi2 / w)
///      exp[ i k_eff (xi1^2 + xi2^2) / (2 (s - i z_r)) - i g_mn(s) ]
/// ```
///
/// The `AsPrinted` variant replaces the exponent denominator by
/// `(s - 2 i z_r)` without the leading 2 and uses `s / (2 z_r)` as the width
/// and Gouy argument. Both decay in the transverse distance.
pub fn envelope(
    ev: &RelativeEvent,
    mode: ModeIndex,
    k: &ParticleKinematics,
    g: &BeamGeometry,
    conv: Convention,
) -> ComplexAmplitude {
    let s = ev.s();
    let r2 = ev.xi1 * ev.xi1 + ev.xi2 * ev.xi2;
    let (arg, denom) = match conv {
        Convention::Canonical => (
            axial_argument(s, g),
            2.0 * Complex64::new(s, -g.z_r),
        ),
        Convention::AsPrinted => (
            s / (2.0 * g.z_r),
            Complex64::new(s, -2.0 * g.z_r),
        ),
    };
    let w = g.w0 * (1.0 + arg * arg).sqrt();
    let gouy = mode.gouy_order() * arg.atan();
    let hm = hermite(mode.m(), std::f64::consts::SQRT_2 * ev.xi1 / w)
        .expect("mode index respects the Hermite cap");
    let hn = hermite(mode.n(), std::f64::consts::SQRT_2 * ev.xi2 / w)
        .expect("mode index respects the Hermite cap");
    let phase = Complex64::new(0.0, k.k_eff * r2) / denom - Complex64::new(0.0, gouy);
    normalization_constant(mode, g) * (g.w0 / w) * hm * hn * phase.exp()
}

/// Full wavefunction: envelope times the plane-wave carrier
/// `exp[i (k3 x3 - omega t)]`.
///
/// The carrier is a pure phase, so `|wavefunction| = |envelope|` always.
pub fn wavefunction(
    x: &FourEvent,
    focus: &FourEvent,
    mode: ModeIndex,
    k: &ParticleKinematics,
    g: &BeamGeometry,
    conv: Convention,
) -> ComplexAmplitude {
    let rel = RelativeEvent::between(x, focus);
    envelope(&rel, mode, k, g, conv) * unit_carrier(k.k3, x.x3, k.omega, x.t)
}

/// `exp[i (a x - b y)]` with the phase assembled from compensated products.
///
/// Finite-difference probes of the wavefunction take second differences
/// across steps far smaller than the coordinates themselves; the plain
/// float rounding of `a*x - b*y` (absolute error ~ |phase| * eps) would
/// then dominate the stencil. Splitting each product with an FMA and
/// carrying the residual keeps the evaluated phase smooth in `x` and `y`
/// down to the second-order term of the residual, which is negligible.
pub(crate) fn unit_carrier(a: f64, x: f64, b: f64, y: f64) -> ComplexAmplitude {
    let p = a * x;
    let p_err = a.mul_add(x, -p);
    let q = b * y;
    let q_err = b.mul_add(y, -q);
    // Knuth two-sum of p and -q
    let hi = p - q;
    let shift = hi - p;
    let sum_err = (p - (hi - shift)) + (-q - shift);
    let lo = sum_err + (p_err - q_err);
    // |lo| is ~ulp(hi), so exp(i lo) = 1 + i lo to well below f64 resolution
    Complex64::from_polar(1.0, hi) * Complex64::new(1.0, lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{make_kinematics, BeamSpec};
    use crate::numerics::{integrate, QuadratureSpec};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn setup(beta: f64, epsilon: f64) -> (ParticleKinematics, BeamGeometry) {
        let spec = BeamSpec::new(beta, epsilon, ModeIndex::new(0, 0).unwrap()).unwrap();
        make_kinematics(&spec).unwrap()
    }

    fn mode(m: u32, n: u32) -> ModeIndex {
        ModeIndex::new(m, n).unwrap()
    }

    #[test]
    fn width_at_waist_and_rayleigh_distance() {
        let (_, g) = setup(0.6, 0.2);
        assert_eq!(beam_radius(0.0, &g), g.w0);
        assert_relative_eq!(
            beam_radius(g.z_r, &g),
            g.w0 * 2f64.sqrt(),
            max_relative = 1e-15
        );
        assert_eq!(beam_radius(-1.3 * g.z_r, &g), beam_radius(1.3 * g.z_r, &g));
    }

    #[test]
    fn gouy_phase_structure() {
        let (_, g) = setup(0.6, 0.2);
        assert_eq!(gouy_relativistic(0.0, mode(0, 0), &g), 0.0);
        assert_relative_eq!(
            gouy_relativistic(g.z_r, mode(0, 0), &g),
            std::f64::consts::FRAC_PI_4,
            max_relative = 1e-15
        );
        for s in [-2.0 * g.z_r, 0.5 * g.z_r, 3.0 * g.z_r] {
            assert_relative_eq!(
                gouy_relativistic(s, mode(1, 2), &g),
                4.0 * gouy_relativistic(s, mode(0, 0), &g),
                max_relative = 1e-15
            );
        }
    }

    #[test]
    fn envelope_at_focus_is_the_normalization_constant() {
        let (k, g) = setup(0.6, 0.2);
        for conv in [Convention::Canonical, Convention::AsPrinted] {
            let v = envelope(&RelativeEvent::new(0.0, 0.0, 0.0, 0.0), mode(0, 0), &k, &g, conv);
            assert_eq!(v.re, normalization_constant(mode(0, 0), &g));
            assert_eq!(v.im, 0.0);
        }
    }

    #[test]
    fn hermite_parity_flips_odd_modes_only() {
        let (k, g) = setup(0.6, 0.2);
        let at = RelativeEvent::new(0.7 * g.w0, 0.3 * g.w0, 0.2 * g.z_r, 0.1 * g.z_r);
        let mirrored = RelativeEvent::new(-at.xi1, at.xi2, at.xi3, at.tau);
        let odd = envelope(&at, mode(1, 0), &k, &g, Convention::Canonical);
        let odd_m = envelope(&mirrored, mode(1, 0), &k, &g, Convention::Canonical);
        assert_relative_eq!(odd.re, -odd_m.re, max_relative = 1e-12);
        assert_relative_eq!(odd.im, -odd_m.im, max_relative = 1e-12);
        let even = envelope(&at, mode(0, 2), &k, &g, Convention::Canonical);
        let even_m = envelope(&mirrored, mode(0, 2), &k, &g, Convention::Canonical);
        assert_relative_eq!(even.re, even_m.re, max_relative = 1e-12);
        assert_relative_eq!(even.im, even_m.im, max_relative = 1e-12);
    }

    /// Independent literal re-evaluation of the canonical closed-form
    /// modulus: |Phi_00| = C00 (w0/w) exp(-r^2/w^2), real arithmetic only.
    fn fundamental_modulus_oracle(xi1: f64, xi2: f64, s: f64, g: &BeamGeometry) -> f64 {
        let w = g.w0 * (1.0 + (s / g.z_r).powi(2)).sqrt();
        let c00 = (std::f64::consts::PI * 0.5 * g.w0 * g.w0).sqrt().recip();
        c00 * (g.w0 / w) * (-(xi1 * xi1 + xi2 * xi2) / (w * w)).exp()
    }

    #[test]
    fn canonical_modulus_matches_independent_oracle() {
        let (k, g) = setup(0.6, 0.2);
        // deterministic pseudo-random sample, plus the e^{-1/2} anchor point
        let mut state = 0x3c91u64;
        let mut unit = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..10 {
            let xi1 = (unit() - 0.5) * 4.0 * g.w0;
            let xi2 = (unit() - 0.5) * 4.0 * g.w0;
            let s = (unit() - 0.5) * 6.0 * g.z_r;
            let v = envelope(
                &RelativeEvent::new(xi1, xi2, s, 0.0),
                mode(0, 0),
                &k,
                &g,
                Convention::Canonical,
            );
            assert_relative_eq!(
                v.norm(),
                fundamental_modulus_oracle(xi1, xi2, s, &g),
                max_relative = 1e-12
            );
        }
        let s = 0.8 * g.z_r;
        let w = beam_radius(s, &g);
        let v = envelope(
            &RelativeEvent::new(w / 2f64.sqrt(), 0.0, s, 0.0),
            mode(0, 0),
            &k,
            &g,
            Convention::Canonical,
        );
        let c00 = normalization_constant(mode(0, 0), &g);
        assert_relative_eq!(
            v.norm(),
            c00 * (g.w0 / w) * (-0.5f64).exp(),
            max_relative = 1e-12
        );
    }

    #[test]
    fn normalization_constant_examples() {
        let g1 = BeamGeometry { w0: 1.0, z_r: 1.0 };
        assert_relative_eq!(
            normalization_constant(mode(0, 0), &g1),
            (2.0 / std::f64::consts::PI).sqrt(),
            max_relative = 1e-14
        );
        let g2 = BeamGeometry { w0: 2.0, z_r: 1.0 };
        for m in [mode(0, 0), mode(3, 1), mode(5, 5)] {
            assert_relative_eq!(
                normalization_constant(m, &g2),
                0.5 * normalization_constant(m, &g1),
                max_relative = 1e-14
            );
        }
    }

    /// 2-D quadrature oracle for the transverse norm at a given s.
    fn transverse_norm(m: ModeIndex, k: &ParticleKinematics, g: &BeamGeometry, s: f64) -> f64 {
        let w = beam_radius(s, g);
        let half = 6.0 * w;
        let spec = QuadratureSpec::new(vec![(-half, half), (-half, half)], 1e-10, 1e-12, 6000)
            .unwrap();
        integrate(
            |x: &[f64]| {
                envelope(
                    &RelativeEvent::new(x[0], x[1], s, 0.0),
                    m,
                    k,
                    g,
                    Convention::Canonical,
                )
                .norm_sqr()
            },
            &spec,
        )
        .unwrap()
        .value
    }

    #[test]
    fn transverse_norm_is_unit_and_conserved_along_the_axis() {
        let (k, g) = setup(0.6, 0.2);
        for m in [mode(0, 0), mode(1, 0), mode(2, 3)] {
            let at_focus = transverse_norm(m, &k, &g, 0.0);
            assert_relative_eq!(at_focus, 1.0, max_relative = 1e-8);
            for s in [-3.0 * g.z_r, -g.z_r, g.z_r, 3.0 * g.z_r] {
                assert_relative_eq!(transverse_norm(m, &k, &g, s), at_focus, max_relative = 1e-8);
            }
        }
    }

    #[test]
    fn on_axis_phase_is_minus_the_gouy_phase() {
        let (k, g) = setup(0.6, 0.2);
        for m in [mode(0, 0), mode(2, 0), mode(2, 2)] {
            // sign of H_m(0) H_n(0) folds into the measured phase
            let h0 = hermite(m.m(), 0.0).unwrap() * hermite(m.n(), 0.0).unwrap();
            for s in [-2.5 * g.z_r, -0.4 * g.z_r, 0.9 * g.z_r, 4.0 * g.z_r] {
                let v = envelope(
                    &RelativeEvent::new(0.0, 0.0, s, 0.0),
                    m,
                    &k,
                    &g,
                    Convention::Canonical,
                );
                let measured = (v * h0.signum()).arg();
                let expected = -gouy_relativistic(s, m, &g);
                let wrapped = (measured - expected).sin().asin();
                assert_abs_diff_eq!(wrapped, 0.0, epsilon = 1e-13);
            }
        }
    }

    /// Literal closed form of the printed fundamental Gaussian mode:
    /// C00 b / (b + i s / 2) exp[i k_eff r^2 / (s - 2 i b)].
    fn printed_gaussian_oracle(
        ev: &RelativeEvent,
        k: &ParticleKinematics,
        g: &BeamGeometry,
    ) -> Complex64 {
        let b = g.z_r;
        let c00 = normalization_constant(ModeIndex::new(0, 0).unwrap(), g);
        let s = ev.s();
        let r2 = ev.xi1 * ev.xi1 + ev.xi2 * ev.xi2;
        let prefactor = Complex64::new(b, 0.0) / Complex64::new(b, 0.5 * s);
        let expo = Complex64::new(0.0, k.k_eff * r2) / Complex64::new(s, -2.0 * b);
        c00 * prefactor * expo.exp()
    }

    #[test]
    fn as_printed_fundamental_equals_the_printed_gaussian_case() {
        let (k, g) = setup(0.6, 0.2);
        for (xi1, xi2, xi3, tau) in [
            (0.0, 0.0, 0.0, 0.0),
            (0.5 * g.w0, -0.2 * g.w0, 0.7 * g.z_r, 0.1 * g.z_r),
            (1.5 * g.w0, 0.8 * g.w0, -1.2 * g.z_r, 0.9 * g.z_r),
        ] {
            let ev = RelativeEvent::new(xi1, xi2, xi3, tau);
            let got = envelope(&ev, mode(0, 0), &k, &g, Convention::AsPrinted);
            let want = printed_gaussian_oracle(&ev, &k, &g);
            assert_relative_eq!(got.re, want.re, max_relative = 1e-13);
            assert_relative_eq!(got.im, want.im, max_relative = 1e-13);
        }
    }

    #[test]
    fn wavefunction_reduces_to_envelope_at_the_focus() {
        let (k, g) = setup(0.6, 0.2);
        let v = wavefunction(
            &FourEvent::origin(),
            &FourEvent::origin(),
            mode(0, 0),
            &k,
            &g,
            Convention::Canonical,
        );
        assert_eq!(v.re, normalization_constant(mode(0, 0), &g));
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn carrier_advances_by_pi_over_half_a_wavelength() {
        let (k, g) = setup(0.6, 0.2);
        let dx = std::f64::consts::PI / k.k3;
        // move observation point and focus together: envelope unchanged
        let a = wavefunction(
            &FourEvent::new(0.0, 0.3, 0.1, 0.0),
            &FourEvent::origin(),
            mode(0, 0),
            &k,
            &g,
            Convention::Canonical,
        );
        let b = wavefunction(
            &FourEvent::new(0.0, 0.3, 0.1, dx),
            &FourEvent::new(0.0, 0.0, 0.0, dx),
            mode(0, 0),
            &k,
            &g,
            Convention::Canonical,
        );
        let delta = (b / a).arg();
        assert_abs_diff_eq!(
            delta.abs(),
            std::f64::consts::PI,
            epsilon = 1e-12
        );
        assert_relative_eq!(a.norm(), b.norm(), max_relative = 1e-13);
    }

    #[test]
    fn modulus_is_blind_to_common_time_shifts() {
        let (k, g) = setup(0.6, 0.2);
        let a = wavefunction(
            &FourEvent::new(0.4, 0.3, -0.2, 1.0),
            &FourEvent::new(0.1, 0.0, 0.0, 0.0),
            mode(1, 1),
            &k,
            &g,
            Convention::Canonical,
        );
        let b = wavefunction(
            &FourEvent::new(0.4 + 5.0, 0.3, -0.2, 1.0),
            &FourEvent::new(0.1 + 5.0, 0.0, 0.0, 0.0),
            mode(1, 1),
            &k,
            &g,
            Convention::Canonical,
        );
        assert_relative_eq!(a.norm(), b.norm(), max_relative = 1e-13);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            /// The envelope depends on (xi3, tau) only through s: splittings
            /// of s that are exact in floating point give bit-identical
            /// values.
            #[test]
            fn envelope_depends_on_s_only(
                s in -60.0f64..60.0,
                xi1 in -5.0f64..5.0,
                xi2 in -5.0f64..5.0,
                m in 0u32..4,
                n in 0u32..4,
            ) {
                let (k, g) = setup(0.6, 0.2);
                let md = ModeIndex::new(m, n).unwrap();
                // each (xi3, tau) pair sums to s exactly in IEEE arithmetic
                let splits = [
                    (s, 0.0),
                    (0.0, s),
                    (0.5 * s, 0.5 * s),
                    (2.0 * s, -s),
                    (-s, 2.0 * s),
                ];
                let reference = envelope(
                    &RelativeEvent::new(xi1, xi2, s, 0.0), md, &k, &g, Convention::Canonical,
                );
                for (xi3, tau) in splits {
                    let v = envelope(
                        &RelativeEvent::new(xi1, xi2, xi3, tau), md, &k, &g, Convention::Canonical,
                    );
                    prop_assert_eq!(v.re.to_bits(), reference.re.to_bits());
                    prop_assert_eq!(v.im.to_bits(), reference.im.to_bits());
                }
            }

            /// |wavefunction| = |envelope| for any event.
            #[test]
            fn carrier_is_a_pure_phase(
                t in -20.0f64..20.0,
                x3 in -20.0f64..20.0,
                xi1 in -5.0f64..5.0,
            ) {
                let (k, g) = setup(0.6, 0.2);
                let md = ModeIndex::new(1, 0).unwrap();
                let x = FourEvent::new(t, xi1, 0.3, x3);
                let focus = FourEvent::origin();
                let psi = wavefunction(&x, &focus, md, &k, &g, Convention::Canonical);
                let phi = envelope(&RelativeEvent::between(&x, &focus), md, &k, &g, Convention::Canonical);
                prop_assert!((psi.norm() - phi.norm()).abs() <= 1e-13 * phi.norm().max(1e-300));
            }
        }
    }
}
