//! Lorentz boosts of events and beam kinematics, and numerical
//! form-invariance checks of the full beam solution.
//!
//! Sign convention: a boost with velocity `v` maps lab coordinates to the
//! frame of an observer moving with velocity `+v` (along `+x3` for axial
//! boosts). Events transform with `q0 = c t`.

use crate::error::{Error, Result};
use crate::kgmodes::{
    beam_radius, gouy_relativistic, wavefunction, ComplexAmplitude, Convention, FourEvent,
    RelativeEvent,
};
use crate::kinematics::{BeamGeometry, ModeIndex, ParticleKinematics};

/// A general boost, v^2 < c^2. `gamma` is derived at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boost {
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
    pub gamma: f64,
}

impl Boost {
    pub fn new(v1: f64, v2: f64, v3: f64) -> Result<Self> {
        let v2_total = v1 * v1 + v2 * v2 + v3 * v3;
        if !(v2_total.is_finite() && v2_total < 1.0) {
            return Err(Error::Superluminal {
                beta: v2_total.sqrt(),
            });
        }
        Ok(Boost {
            v1,
            v2,
            v3,
            gamma: (1.0 - v2_total).sqrt().recip(),
        })
    }

    pub fn axial(v3: f64) -> Result<Self> {
        Self::new(0.0, 0.0, v3)
    }

    pub fn inverse(&self) -> Self {
        Boost {
            v1: -self.v1,
            v2: -self.v2,
            v3: -self.v3,
            gamma: self.gamma,
        }
    }
}

/// Boost an event, with `q0 = c t`:
///
/// ```text
/// qi' = qi + gamma (vi/c) [ (gamma/(1+gamma)) (v.q)/c - q0 ]
/// q0' = gamma (q0 - (v.q)/c)
/// ```
pub fn boost_event(q: &FourEvent, b: &Boost) -> FourEvent {
    let q0 = q.t; // c = 1
    let vq = b.v1 * q.x1 + b.v2 * q.x2 + b.v3 * q.x3;
    let shear = b.gamma / (1.0 + b.gamma) * vq - q0;
    FourEvent {
        t: b.gamma * (q0 - vq),
        x1: q.x1 + b.gamma * b.v1 * shear,
        x2: q.x2 + b.gamma * b.v2 * shear,
        x3: q.x3 + b.gamma * b.v3 * shear,
    }
}

/// Relativistic Doppler factor `sqrt((c - v3)/(c + v3))` of an axial boost.
///
/// Scales both the effective wavenumber and the Rayleigh parameter of the
/// beam; reciprocal under `v3 -> -v3`.
pub fn doppler_factor(v3: f64) -> Result<f64> {
    if !(v3.is_finite() && v3.abs() < 1.0) {
        return Err(Error::Superluminal { beta: v3.abs() });
    }
    Ok(((1.0 - v3) / (1.0 + v3)).sqrt())
}

/// Axial boost of the beam kinematics and geometry.
///
/// The wave 4-vector components boost directly, which keeps the result on
/// the mass shell; the waist is invariant and the Rayleigh parameter is
/// rebuilt from the boosted effective wavenumber, so `z_r' = z_r k_eff'/k_eff
/// = doppler * z_r` up to round-off.
pub fn transform_beam(
    k: &ParticleKinematics,
    g: &BeamGeometry,
    v3: f64,
) -> Result<(ParticleKinematics, BeamGeometry)> {
    if !(v3.is_finite() && v3.abs() < 1.0) {
        return Err(Error::Superluminal { beta: v3.abs() });
    }
    let gamma_v = (1.0 - v3 * v3).sqrt().recip();
    let omega = gamma_v * (k.omega - v3 * k.k3);
    let k3 = gamma_v * (k.k3 - v3 * k.omega);
    let kin = ParticleKinematics {
        m0: k.m0,
        u3: k3 / omega, // c^2 k3 / omega on the mass shell
        gamma: omega / k.m0,
        k3,
        omega,
        k_eff: k3 + omega,
    };
    let geom = BeamGeometry {
        w0: g.w0,
        z_r: 0.5 * kin.k_eff * g.w0 * g.w0,
    };
    Ok((kin, geom))
}

/// Outcome of a form-invariance check at one event.
///
/// `abs_defect` and `phase_defect` compare the boosted-frame wavefunction
/// against the lab-frame one (relative modulus and wrapped phase);
/// `width_defect` is relative, `gouy_defect` absolute (radians).
#[derive(Debug, Clone, Copy)]
pub struct InvarianceReport {
    pub lab_value: ComplexAmplitude,
    pub boosted_value: ComplexAmplitude,
    pub abs_defect: f64,
    pub phase_defect: f64,
    pub width_defect: f64,
    pub gouy_defect: f64,
}

/// Evaluate the wavefunction in the lab frame and, independently, in an
/// axially boosted frame (boosted events, boosted kinematics, boosted
/// geometry), and report the defects between the two values.
///
/// Restricted to axial boosts and the canonical convention: the invariance
/// chain (transverse coordinates unchanged, `s` and `z_r` scaling by the
/// same Doppler factor, carrier phase covariant) holds only along the beam
/// axis.
pub fn invariance_check(
    x: &FourEvent,
    focus: &FourEvent,
    mode: ModeIndex,
    k: &ParticleKinematics,
    g: &BeamGeometry,
    v3: f64,
) -> Result<InvarianceReport> {
    let boost = Boost::axial(v3)?;
    let (k_b, g_b) = transform_beam(k, g, v3)?;
    let x_b = boost_event(x, &boost);
    let focus_b = boost_event(focus, &boost);

    let lab = wavefunction(x, focus, mode, k, g, Convention::Canonical);
    let boosted = wavefunction(&x_b, &focus_b, mode, &k_b, &g_b, Convention::Canonical);

    let s = RelativeEvent::between(x, focus).s();
    let s_b = RelativeEvent::between(&x_b, &focus_b).s();
    let w = beam_radius(s, g);
    let w_b = beam_radius(s_b, &g_b);
    let gouy = gouy_relativistic(s, mode, g);
    let gouy_b = gouy_relativistic(s_b, mode, &g_b);

    let abs_defect = (boosted - lab).norm() / lab.norm();
    let phase_defect = (boosted / lab).arg().abs();
    Ok(InvarianceReport {
        lab_value: lab,
        boosted_value: boosted,
        abs_defect,
        phase_defect,
        width_defect: (w_b - w).abs() / w,
        gouy_defect: (gouy_b - gouy).abs(),
    })
}

/// Velocity composition of two collinear boosts.
pub fn compose_axial_velocities(v_a: f64, v_b: f64) -> f64 {
    (v_a + v_b) / (1.0 + v_a * v_b)
}
