//! Non-relativistic Schrodinger beam solutions, the correspondence target
//! for the exact Klein-Gordon modes.
//!
//! The paraxial-analog structure is the same as in `kgmodes` with the
//! light-cone coordinate replaced by the relative time: effective
//! wavenumber `m0 / hbar`, axial Rayleigh time `t_r = m0 w0^2 / (2 hbar)`,
//! width `w0 sqrt(1 + (tau/t_r)^2)` and Gouy phase
//! `(1+m+n) arctan(tau/t_r)`.

use num_complex::Complex64;

use crate::error::Result;
use crate::kgmodes::{ComplexAmplitude, FourEvent, RelativeEvent};
use crate::kinematics::{make_kinematics, BeamGeometry, BeamSpec, ModeIndex};
use crate::numerics::hermite;

/// Non-relativistic kinematics in internal units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NrKinematics {
    pub m0: f64,
    pub u3: f64,
    /// Axial momentum m0 u3.
    pub p3: f64,
    /// Kinetic energy p3^2 / (2 m0).
    pub e_s: f64,
    /// Axial Rayleigh time m0 w0^2 / (2 hbar).
    pub t_r: f64,
}

/// Non-relativistic kinematics and beam geometry for a spec.
pub fn make_nr_kinematics(spec: &BeamSpec) -> Result<(NrKinematics, BeamGeometry)> {
    let (_, geom) = make_kinematics(spec)?;
    let m0 = 1.0;
    let u3 = spec.beta;
    let p3 = m0 * u3;
    Ok((
        NrKinematics {
            m0,
            u3,
            p3,
            e_s: p3 * p3 / (2.0 * m0),
            t_r: 0.5 * m0 * geom.w0 * geom.w0,
        },
        geom,
    ))
}

/// Shared dimensionless axial argument of the width and the Gouy phase.
fn axial_argument(tau: f64, nk: &NrKinematics) -> f64 {
    tau / nk.t_r
}

/// Beam radius `w0 sqrt(1 + (tau/t_r)^2)`.
pub fn beam_radius_nr(tau: f64, nk: &NrKinematics, g: &BeamGeometry) -> f64 {
    let a = axial_argument(tau, nk);
    g.w0 * (1.0 + a * a).sqrt()
}

/// Non-relativistic Gouy phase `(1 + m + n) arctan(tau/t_r)`.
pub fn gouy_nonrelativistic(tau: f64, mode: ModeIndex, nk: &NrKinematics) -> f64 {
    mode.gouy_order() * axial_argument(tau, nk).atan()
}

/// Schrodinger envelope of the (m, n) mode.
///
/// ```text
/// C_mn (w0/wS) H_m(sqrt(2) xi1 / wS) H_n(sqrt(2) xi2 / wS)
///      exp[ i (m0/hbar) (xi1^2 + xi2^2) / (2 (tau - i t_r)) - i g_mn(tau) ]
/// ```
pub fn envelope_nr(
    xi1: f64,
    xi2: f64,
    tau: f64,
    mode: ModeIndex,
    nk: &NrKinematics,
    g: &BeamGeometry,
) -> ComplexAmplitude {
    let arg = axial_argument(tau, nk);
    let w = g.w0 * (1.0 + arg * arg).sqrt();
    let gouy = mode.gouy_order() * arg.atan();
    let hm = hermite(mode.m(), std::f64::consts::SQRT_2 * xi1 / w)
        .expect("mode index respects the Hermite cap");
    let hn = hermite(mode.n(), std::f64::consts::SQRT_2 * xi2 / w)
        .expect("mode index respects the Hermite cap");
    let r2 = xi1 * xi1 + xi2 * xi2;
    let phase = Complex64::new(0.0, nk.m0 * r2) / (2.0 * Complex64::new(tau, -nk.t_r))
        - Complex64::new(0.0, gouy);
    crate::kgmodes::normalization_constant(mode, g) * (g.w0 / w) * hm * hn * phase.exp()
}

/// Full Schrodinger wavefunction: envelope times the carrier
/// `exp[(i/hbar)(p3 x3 - E_s t)]`.
pub fn wavefunction_nr(
    x: &FourEvent,
    focus: &FourEvent,
    mode: ModeIndex,
    nk: &NrKinematics,
    g: &BeamGeometry,
) -> ComplexAmplitude {
    let rel = RelativeEvent::between(x, focus);
    let carrier = crate::kgmodes::unit_carrier(nk.p3, x.x3, nk.e_s, x.t);
    envelope_nr(rel.xi1, rel.xi2, rel.tau, mode, nk, g) * carrier
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kgmodes::normalization_constant;
    use crate::kinematics::{BeamSpec, ModeIndex};
    use crate::numerics::{integrate, QuadratureSpec};
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn setup(beta: f64, epsilon: f64) -> (NrKinematics, BeamGeometry) {
        let spec = BeamSpec::new(beta, epsilon, ModeIndex::new(0, 0).unwrap()).unwrap();
        make_nr_kinematics(&spec).unwrap()
    }

    fn mode(m: u32, n: u32) -> ModeIndex {
        ModeIndex::new(m, n).unwrap()
    }

    #[test]
    fn kinetic_energy_is_exact_by_construction() {
        let (nk, _) = setup(0.05, 0.2);
        assert_eq!(nk.e_s, nk.p3 * nk.p3 / (2.0 * nk.m0));
        assert!(nk.t_r > 0.0);
    }

    #[test]
    fn width_examples() {
        let (nk, g) = setup(0.05, 0.2);
        assert_eq!(beam_radius_nr(0.0, &nk, &g), g.w0);
        assert_relative_eq!(
            beam_radius_nr(nk.t_r, &nk, &g),
            g.w0 * 2f64.sqrt(),
            max_relative = 1e-15
        );
        assert_eq!(
            beam_radius_nr(-0.8 * nk.t_r, &nk, &g),
            beam_radius_nr(0.8 * nk.t_r, &nk, &g)
        );
    }

    #[test]
    fn gouy_examples() {
        let (nk, _) = setup(0.05, 0.2);
        assert_eq!(gouy_nonrelativistic(0.0, mode(0, 0), &nk), 0.0);
        assert_relative_eq!(
            gouy_nonrelativistic(nk.t_r, mode(0, 0), &nk),
            std::f64::consts::FRAC_PI_4,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            gouy_nonrelativistic(0.7 * nk.t_r, mode(2, 1), &nk),
            4.0 * gouy_nonrelativistic(0.7 * nk.t_r, mode(0, 0), &nk),
            max_relative = 1e-15
        );
    }

    #[test]
    fn envelope_at_origin_is_the_normalization_constant() {
        let (nk, g) = setup(0.05, 0.2);
        let v = envelope_nr(0.0, 0.0, 0.0, mode(0, 0), &nk, &g);
        assert_eq!(v.re, normalization_constant(mode(0, 0), &g));
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn on_axis_phase_equals_minus_gouy() {
        let (nk, g) = setup(0.05, 0.2);
        for tau in [-2.0 * nk.t_r, 0.3 * nk.t_r, 1.7 * nk.t_r] {
            let v = envelope_nr(0.0, 0.0, tau, mode(0, 0), &nk, &g);
            assert_abs_diff_eq!(
                v.arg(),
                -gouy_nonrelativistic(tau, mode(0, 0), &nk),
                epsilon = 1e-13
            );
        }
    }

    #[test]
    fn modulus_matches_closed_form_oracle() {
        // |Phi^S_00(xi1, 0, tau)| = C00 (w0/wS) exp(-xi1^2 / wS^2)
        let (nk, g) = setup(0.05, 0.2);
        let c00 = normalization_constant(mode(0, 0), &g);
        let mut state = 0x52a1u64;
        let mut unit = move || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for _ in 0..10 {
            let xi1 = (unit() - 0.5) * 4.0 * g.w0;
            let tau = (unit() - 0.5) * 6.0 * nk.t_r;
            let ws = beam_radius_nr(tau, &nk, &g);
            let expected = c00 * (g.w0 / ws) * (-(xi1 * xi1) / (ws * ws)).exp();
            let v = envelope_nr(xi1, 0.0, tau, mode(0, 0), &nk, &g);
            assert_relative_eq!(v.norm(), expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn transverse_norm_is_time_independent() {
        let (nk, g) = setup(0.05, 0.2);
        let norm_at = |tau: f64| {
            let w = beam_radius_nr(tau, &nk, &g);
            let half = 6.0 * w;
            let spec =
                QuadratureSpec::new(vec![(-half, half), (-half, half)], 1e-10, 1e-12, 6000)
                    .unwrap();
            integrate(
                |x: &[f64]| envelope_nr(x[0], x[1], tau, mode(2, 1), &nk, &g).norm_sqr(),
                &spec,
            )
            .unwrap()
            .value
        };
        let reference = norm_at(0.0);
        assert_relative_eq!(reference, 1.0, max_relative = 1e-8);
        for tau in [-3.0 * nk.t_r, nk.t_r, 2.0 * nk.t_r] {
            assert_relative_eq!(norm_at(tau), reference, max_relative = 1e-8);
        }
    }

    #[test]
    fn carrier_phase_advances_by_two_pi_per_de_broglie_wavelength() {
        let (nk, g) = setup(0.05, 0.2);
        let dx = 2.0 * std::f64::consts::PI / nk.p3;
        let a = wavefunction_nr(
            &FourEvent::new(0.0, 0.4, 0.0, 0.0),
            &FourEvent::origin(),
            mode(0, 0),
            &nk,
            &g,
        );
        let b = wavefunction_nr(
            &FourEvent::new(0.0, 0.4, 0.0, dx),
            &FourEvent::new(0.0, 0.0, 0.0, dx),
            mode(0, 0),
            &nk,
            &g,
        );
        // same relative event, so the full phase difference is the carrier's
        let delta = (b / a).arg();
        assert_abs_diff_eq!(delta, 0.0, epsilon = 1e-10);
        assert_relative_eq!(a.norm(), b.norm(), max_relative = 1e-13);
    }

    #[test]
    fn wavefunction_modulus_equals_envelope_modulus() {
        let (nk, g) = setup(0.05, 0.2);
        let x = FourEvent::new(3.0, 0.5, -0.7, 11.0);
        let focus = FourEvent::new(1.0, 0.1, 0.0, 2.0);
        let psi = wavefunction_nr(&x, &focus, mode(1, 2), &nk, &g);
        let rel = RelativeEvent::between(&x, &focus);
        let phi = envelope_nr(rel.xi1, rel.xi2, rel.tau, mode(1, 2), &nk, &g);
        assert_relative_eq!(psi.norm(), phi.norm(), max_relative = 1e-13);
    }
}
