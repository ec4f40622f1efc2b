//! Dimensionless beam parametrization, unit conversion and mass-shell
//! kinematics.
//!
//! All internal computation uses natural units `hbar = c = m0 = 1`; the beam
//! physics is then controlled by exactly two dimensionless groups,
//!
//! * `beta`: axial speed u3 / c,
//! * `epsilon`: hbar / (m0 c w0), the waist measured in reduced Compton
//!   wavelengths (inverted).
//!
//! A [`UnitSystem`] attached to the [`BeamSpec`] records how to convert
//! internal values back to physical ones.

use crate::error::{Error, Result};
use crate::numerics::HERMITE_MAX_ORDER;

/// Conversion scales between physical and internal units.
///
/// `length_unit` is the physical length (metres, say) of one internal length
/// unit; with the internal convention used here that is the reduced Compton
/// wavelength `hbar / (m0 c)` of the particle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitSystem {
    pub hbar: f64,
    pub c: f64,
    pub length_unit: f64,
}

impl UnitSystem {
    /// Natural units: every conversion factor is one.
    pub fn natural() -> Self {
        UnitSystem {
            hbar: 1.0,
            c: 1.0,
            length_unit: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("hbar", self.hbar),
            ("c", self.c),
            ("length_unit", self.length_unit),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(
                    "unit system",
                    format!("{name} must be strictly positive, got {v}"),
                ));
            }
        }
        Ok(())
    }
}

/// Hermite-Gaussian mode order (m, n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ModeIndex {
    m: u32,
    n: u32,
}

impl ModeIndex {
    pub const MAX: u32 = HERMITE_MAX_ORDER;

    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m > Self::MAX || n > Self::MAX {
            return Err(Error::ModeOrder {
                m,
                n,
                cap: Self::MAX,
            });
        }
        Ok(ModeIndex { m, n })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// The combined order 1 + m + n multiplying the Gouy phase.
    pub fn gouy_order(&self) -> f64 {
        f64::from(1 + self.m + self.n)
    }
}

/// Canonical dimensionless description of a beam.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamSpec {
    pub beta: f64,
    pub epsilon: f64,
    pub mode: ModeIndex,
    pub units: UnitSystem,
}

impl BeamSpec {
    pub fn new(beta: f64, epsilon: f64, mode: ModeIndex) -> Result<Self> {
        Self::with_units(beta, epsilon, mode, UnitSystem::natural())
    }

    pub fn with_units(beta: f64, epsilon: f64, mode: ModeIndex, units: UnitSystem) -> Result<Self> {
        units.validate()?;
        if !(beta.is_finite() && (0.0..1.0).contains(&beta)) {
            return Err(Error::Superluminal { beta });
        }
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::invalid(
                "beam spec",
                format!("epsilon must be > 0, got {epsilon}"),
            ));
        }
        Ok(BeamSpec {
            beta,
            epsilon,
            mode,
            units,
        })
    }

    /// Build the spec from physical inputs: rest mass, waist and axial
    /// velocity, with the action and speed scales of the caller's unit
    /// system (SI: hbar in J s, c in m/s).
    pub fn from_physical(
        mass: f64,
        waist: f64,
        velocity: f64,
        hbar: f64,
        c: f64,
        mode: ModeIndex,
    ) -> Result<Self> {
        for (name, v) in [("mass", mass), ("waist", waist), ("hbar", hbar), ("c", c)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::invalid(
                    "physical beam input",
                    format!("{name} must be strictly positive, got {v}"),
                ));
            }
        }
        let units = UnitSystem {
            hbar,
            c,
            length_unit: hbar / (mass * c),
        };
        Self::with_units(velocity / c, hbar / (mass * c * waist), mode, units)
    }

    /// Waist in physical length units.
    pub fn waist_physical(&self) -> f64 {
        self.units.length_unit / self.epsilon
    }

    /// Rest mass in physical units.
    pub fn mass_physical(&self) -> f64 {
        self.units.hbar / (self.units.c * self.units.length_unit)
    }

    /// Axial velocity in physical units.
    pub fn velocity_physical(&self) -> f64 {
        self.beta * self.units.c
    }
}

/// On-shell single-particle kinematics in internal units.
///
/// `k_eff = k3 + omega / c` is the effective wavenumber multiplying the
/// transverse Gaussian argument of the beam modes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParticleKinematics {
    pub m0: f64,
    pub u3: f64,
    pub gamma: f64,
    pub k3: f64,
    pub omega: f64,
    pub k_eff: f64,
}

/// Mode-independent beam geometry: waist and axial Rayleigh parameter.
///
/// `z_r = k_eff w0^2 / 2` is the axial scale over which the width grows by
/// sqrt(2) and the fundamental Gouy phase reaches pi/4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamGeometry {
    pub w0: f64,
    pub z_r: f64,
}

/// Mass-shell kinematics and beam geometry for a spec.
///
/// `beta = 0` is allowed (then `k3 = 0`); `beta >= 1` is rejected as
/// superluminal.
pub fn make_kinematics(spec: &BeamSpec) -> Result<(ParticleKinematics, BeamGeometry)> {
    let beta = spec.beta;
    if !(beta.is_finite() && (0.0..1.0).contains(&beta)) {
        return Err(Error::Superluminal { beta });
    }
    let gamma = (1.0 - beta * beta).sqrt().recip();
    let kin = ParticleKinematics {
        m0: 1.0,
        u3: beta,
        gamma,
        k3: beta * gamma,
        omega: gamma,
        k_eff: gamma * (1.0 + beta),
    };
    let w0 = spec.epsilon.recip();
    let geom = BeamGeometry {
        w0,
        z_r: 0.5 * kin.k_eff * w0 * w0,
    };
    Ok((kin, geom))
}

/// Scaled mass-shell defect `(omega^2 - c^2 k3^2 - m0^2 c^4 / hbar^2) / omega^2`.
///
/// Zero (to round-off) for any output of [`make_kinematics`]; nonzero for
/// hand-built off-shell records.
pub fn dispersion_residual(k: &ParticleKinematics) -> f64 {
    (k.omega * k.omega - k.k3 * k.k3 - k.m0 * k.m0) / (k.omega * k.omega)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn spec(beta: f64, epsilon: f64) -> BeamSpec {
        BeamSpec::new(beta, epsilon, ModeIndex::new(0, 0).unwrap()).unwrap()
    }

    #[test]
    fn rest_frame_limit() {
        let (k, g) = make_kinematics(&spec(0.0, 0.25)).unwrap();
        assert_eq!(k.k3, 0.0);
        assert_eq!(k.omega, 1.0);
        assert_eq!(k.k_eff, 1.0);
        // z_r = m0 c w0^2 / (2 hbar) in natural units
        assert_abs_diff_eq!(g.z_r, 0.5 * 4.0 * 4.0, epsilon = 1e-14);
    }

    #[test]
    fn gamma_at_beta_point_six() {
        let (k, _) = make_kinematics(&spec(0.6, 0.2)).unwrap();
        assert_relative_eq!(k.gamma, 1.25, max_relative = 1e-14);
    }

    #[test]
    fn outputs_sit_on_the_mass_shell() {
        for beta in [0.0, 0.3, 0.6, 0.9, 0.99] {
            let (k, _) = make_kinematics(&spec(beta, 0.2)).unwrap();
            assert!(dispersion_residual(&k).abs() <= 1e-12, "beta = {beta}");
        }
    }

    #[test]
    fn off_shell_defect_matches_exact_fraction() {
        // beta = 0.6, omega doubled: with omega = 5/2, k3 = 3/4, m0 = 1 the
        // defect is (25/4 - 9/16 - 1) / (25/4). Evaluate it in exact integer
        // arithmetic over a common denominator of 16.
        let (mut k, _) = make_kinematics(&spec(0.6, 0.2)).unwrap();
        k.omega *= 2.0;
        let num = 100i64 - 9 - 16;
        let den = 100i64;
        assert_relative_eq!(
            dispersion_residual(&k),
            num as f64 / den as f64,
            max_relative = 1e-13
        );
    }

    #[test]
    fn rest_frame_dispersion_is_exact() {
        let k = ParticleKinematics {
            m0: 1.0,
            u3: 0.0,
            gamma: 1.0,
            k3: 0.0,
            omega: 1.0,
            k_eff: 1.0,
        };
        assert_eq!(dispersion_residual(&k), 0.0);
    }

    #[test]
    fn superluminal_is_rejected() {
        assert!(matches!(
            BeamSpec::new(1.0, 0.2, ModeIndex::new(0, 0).unwrap()),
            Err(Error::Superluminal { .. })
        ));
        assert!(BeamSpec::new(1.5, 0.2, ModeIndex::new(0, 0).unwrap()).is_err());
    }

    #[test]
    fn mode_cap_is_enforced() {
        assert!(ModeIndex::new(20, 20).is_ok());
        assert!(ModeIndex::new(21, 0).is_err());
    }

    #[test]
    fn physical_round_trip() {
        // electron-like numbers in SI
        let hbar = 1.054571817e-34;
        let c = 2.99792458e8;
        let mass = 9.1093837015e-31;
        let waist = 1.0e-6;
        let velocity = 0.6 * c;
        let spec =
            BeamSpec::from_physical(mass, waist, velocity, hbar, c, ModeIndex::new(1, 2).unwrap())
                .unwrap();
        assert_relative_eq!(spec.mass_physical(), mass, max_relative = 1e-12);
        assert_relative_eq!(spec.waist_physical(), waist, max_relative = 1e-12);
        assert_relative_eq!(spec.velocity_physical(), velocity, max_relative = 1e-12);
        let (k, _) = make_kinematics(&spec).unwrap();
        assert_relative_eq!(k.gamma, 1.25, max_relative = 1e-12);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            /// gamma, k3 and omega all strictly increase with beta.
            #[test]
            fn kinematics_monotone_in_beta(a in 1e-6f64..0.99, d in 1e-6f64..0.009) {
                let (ka, _) = make_kinematics(&spec(a, 0.2)).unwrap();
                let (kb, _) = make_kinematics(&spec(a + d, 0.2)).unwrap();
                prop_assert!(kb.gamma > ka.gamma);
                prop_assert!(kb.k3 > ka.k3);
                prop_assert!(kb.omega > ka.omega);
            }

            /// z_r is linear in k_eff at fixed waist and quadratic in the
            /// waist at fixed k_eff, exactly as computed.
            #[test]
            fn rayleigh_scaling(k_eff in 0.1f64..10.0, w0 in 0.5f64..20.0) {
                let zr = |k: f64, w: f64| 0.5 * k * w * w;
                prop_assert_eq!(zr(2.0 * k_eff, w0), 2.0 * zr(k_eff, w0));
                prop_assert_eq!(zr(k_eff, 2.0 * w0), 4.0 * zr(k_eff, w0));
            }
        }
    }
}
