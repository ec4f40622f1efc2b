//! End-to-end verification scenarios behind `fieldgrid verify <scenario>`.
//!
//! Every threshold lives in [`thresholds`]; a scenario records its measured
//! defects as metrics and folds the comparisons into a pass/fail verdict.
//! Seeded sample points come from the shared linear congruential generator,
//! so a report is reproducible byte for byte from `(config, seed)`.

use hgbeam::kgmodes::{envelope, gouy_relativistic, Convention, RelativeEvent};
use hgbeam::kinematics::{
    dispersion_residual, make_kinematics, BeamGeometry, BeamSpec, ModeIndex,
};
use hgbeam::lorentz::{invariance_check, transform_beam};
use hgbeam::numerics::hermite;
use hgbeam::sampling::Lcg64;
use hgbeam::srmodes::make_nr_kinematics;
use hgbeam::kgmodes::FourEvent;
use hgbeam::verify::{
    correspondence_check, divergence_probe, gamma1_substitution_dev, gouy_gamma_relation,
    kg_residual, normalization_check, reduced_residual, schrodinger_residual, SchrodingerForm,
};

use crate::config::{ConfigError, RunConfig};
use crate::report::{fmt_real, VerifyReport};

/// Acceptance thresholds, pinned in one place.
pub mod thresholds {
    /// Relative mass-shell defect of constructed kinematics.
    pub const MASS_SHELL_REL: f64 = 1e-12;
    /// Scaled Klein-Gordon residual of the canonical wavefunction.
    pub const KG_SCALED_MAX: f64 = 1e-6;
    /// Scaled reduced-equation residual of the canonical envelope.
    pub const REDUCED_SCALED_MAX: f64 = 1e-7;
    /// Scaled reduced Schrodinger residual of the envelope.
    pub const SCHRODINGER_REDUCED_MAX: f64 = 1e-7;
    /// Scaled full Schrodinger residual of the wavefunction.
    pub const SCHRODINGER_FULL_MAX: f64 = 1e-6;
    /// Minimum factor by which the as_printed residual must exceed the
    /// canonical one at the same points.
    pub const ADJUDICATION_MIN_RATIO: f64 = 1e3;
    /// Relative modulus defect of the boosted wavefunction.
    pub const LORENTZ_ABS_DEFECT: f64 = 1e-10;
    /// Width and Gouy defects under boosts.
    pub const LORENTZ_WIDTH_GOUY_DEFECT: f64 = 1e-12;
    /// Doppler scaling of the Rayleigh parameter at v = 0.6c.
    pub const DOPPLER_REL: f64 = 1e-15;
    /// On-axis Gouy phase extraction and the pi/4 landmark.
    pub const GOUY_PHASE_DEFECT: f64 = 1e-12;
    /// Gamma-relation of the on-constraint arctan arguments.
    pub const GAMMA_RELATION_DEFECT: f64 = 1e-12;
    /// Allowed deviation of dev(1e-2)/dev(1e-3) from 100.
    pub const CORRESPONDENCE_RATIO_BAND: f64 = 20.0;
    /// Allowed drift factor of dev/beta^2 across three decades of beta.
    pub const CORRESPONDENCE_DRIFT_FACTOR: f64 = 2.0;
    /// Envelope agreement at the gamma = 1 substitution.
    pub const GAMMA1_AGREEMENT: f64 = 1e-12;
    /// Transverse-slice normalization deviation.
    pub const NORMALIZATION_DEV: f64 = 1e-8;
    /// Relative slope drift of the constrained norm across windows.
    pub const DIVERGENCE_SLOPE_REL: f64 = 1e-2;
}

/// Number of seeded points in each residual scenario.
pub const RESIDUAL_POINTS: usize = 20;
/// Number of seeded events in the Lorentz scenario.
pub const LORENTZ_EVENTS: usize = 50;
/// Number of seeded samples in the correspondence scenario.
pub const CORRESPONDENCE_SAMPLES: usize = 40;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Scenario {
    Kg,
    Reduced,
    Schrodinger,
    Lorentz,
    Correspond,
    Gouy,
    Norm,
    Divergence,
}

impl Scenario {
    pub fn name(self) -> &'static str {
        match self {
            Scenario::Kg => "kg",
            Scenario::Reduced => "reduced",
            Scenario::Schrodinger => "schrodinger",
            Scenario::Lorentz => "lorentz",
            Scenario::Correspond => "correspond",
            Scenario::Gouy => "gouy",
            Scenario::Norm => "norm",
            Scenario::Divergence => "divergence",
        }
    }
}

pub fn run(scenario: Scenario, config: &RunConfig) -> Result<VerifyReport, ConfigError> {
    match scenario {
        Scenario::Kg => kg_scenario(config),
        Scenario::Reduced => reduced_scenario(config),
        Scenario::Schrodinger => schrodinger_scenario(config),
        Scenario::Lorentz => lorentz_scenario(config),
        Scenario::Correspond => correspond_scenario(config),
        Scenario::Gouy => gouy_scenario(config),
        Scenario::Norm => norm_scenario(config),
        Scenario::Divergence => divergence_scenario(config),
    }
}

/// Seeded safe points: |xi_perp| <= 2 w0, |xi3|, |c tau| <= z_r
/// (so |s| <= 2 z_r). Four uniform draws per point, in coordinate order.
fn residual_points(seed: u64, g: &BeamGeometry, count: usize) -> Vec<RelativeEvent> {
    let mut lcg = Lcg64::new(seed);
    (0..count)
        .map(|_| {
            RelativeEvent::new(
                lcg.uniform(-2.0 * g.w0, 2.0 * g.w0),
                lcg.uniform(-2.0 * g.w0, 2.0 * g.w0),
                lcg.uniform(-g.z_r, g.z_r),
                lcg.uniform(-g.z_r, g.z_r),
            )
        })
        .collect()
}

fn modes_up_to(cap: u32) -> Vec<ModeIndex> {
    let mut modes = Vec::new();
    for m in 0..=cap {
        for n in 0..=cap {
            modes.push(ModeIndex::new(m, n).expect("mode cap within Hermite limit"));
        }
    }
    modes
}

const DISPERSION_BETAS: [f64; 5] = [0.0, 0.3, 0.6, 0.9, 0.99];

fn kg_scenario(config: &RunConfig) -> Result<VerifyReport, ConfigError> {
    // certifies the configured convention; as_printed fails here by design
    let mut report = VerifyReport::new("kg", config, config.seed);
    let (kin, geom) = make_kinematics(&config.beam)?;
    let points = residual_points(config.seed, &geom, RESIDUAL_POINTS);

    let mut max_scaled = 0.0f64;
    for mode in modes_up_to(3) {
        for point in &points {
            let r = kg_residual(mode, &kin, &geom, config.convention, point)?;
            max_scaled = max_scaled.max(r.scaled);
        }
    }
    report.check_le(
        "max_scaled_kg_residual",
        max_scaled,
        thresholds::KG_SCALED_MAX,
    );

    let mut max_dispersion = 0.0f64;
    for beta in DISPERSION_BETAS {
        let spec = BeamSpec::new(beta, config.beam.epsilon, config.mode)?;
        let (k, _) = make_kinematics(&spec)?;
        max_dispersion = max_dispersion.max(dispersion_residual(&k).abs());
    }
    report.check_le(
        "max_dispersion_residual",
        max_dispersion,
        thresholds::MASS_SHELL_REL,
    );
    report.metric("sample_points", points.len() as f64);
    Ok(report)
}

fn reduced_scenario(config: &RunConfig) -> Result<VerifyReport, ConfigError> {
    let mut report = VerifyReport::new("reduced", config, config.seed);
    let (kin, geom) = make_kinematics(&config.beam)?;
    let points = residual_points(config.seed, &geom, RESIDUAL_POINTS);

    let mut max_canonical = 0.0f64;
    let mut min_ratio = f64::INFINITY;
    for mode in modes_up_to(3) {
        for point in &points {
            let canonical = reduced_residual(mode, &kin, &geom, Convention::Canonical, point)?;
            let printed = reduced_residual(mode, &kin, &geom, Convention::AsPrinted, point)?;
            max_canonical = max_canonical.max(canonical.scaled);
            min_ratio = min_ratio.min(printed.scaled / canonical.scaled);
        }
    }
    report.check_le(
        "max_scaled_reduced_residual",
        max_canonical,
        thresholds::REDUCED_SCALED_MAX,
    );
    report.check_ge(
        "min_printed_over_canonical_ratio",
        min_ratio,
        thresholds::ADJUDICATION_MIN_RATIO,
    );
    report.metric("sample_points", points.len() as f64);
    Ok(report)
}

fn schrodinger_scenario(config: &RunConfig) -> Result<VerifyReport, ConfigError> {
    let mut report = VerifyReport::new("schrodinger", config, config.seed);
    let (nk, geom) = make_nr_kinematics(&config.beam)?;
    let points = residual_points(config.seed, &geom, RESIDUAL_POINTS);

    let mut max_reduced = 0.0f64;
    let mut max_full = 0.0f64;
    for mode in modes_up_to(3) {
        for point in &points {
            max_reduced = max_reduced.max(
                schrodinger_residual(mode, &nk, &geom, SchrodingerForm::Reduced, point)?.scaled,
            );
            max_full = max_full.max(
                schrodinger_residual(mode, &nk, &geom, SchrodingerForm::Full, point)?.scaled,
            );
        }
    }
    report.check_le(
        "max_scaled_reduced_residual",
        max_reduced,
        thresholds::SCHRODINGER_REDUCED_MAX,
    );
    report.check_le(
        "max_scaled_full_residual",
        max_full,
        thresholds::SCHRODINGER_FULL_MAX,
    );
    report.metric("sample_points", points.len() as f64);
    Ok(report)
}

const BOOST_BETAS: [f64; 3] = [0.1, 0.5, 0.9];

fn lorentz_scenario(config: &RunConfig) -> Result<VerifyReport, ConfigError> {
    let mut report = VerifyReport::new("lorentz", config, config.seed);
    let (kin, geom) = make_kinematics(&config.beam)?;

    // six uniform draws per event: transverse pair, relative axial pair,
    // then the focus position along the axis and in time
    let mut lcg = Lcg64::new(config.seed);
    let events: Vec<(FourEvent, FourEvent)> = (0..LORENTZ_EVENTS)
        .map(|_| {
            let xi1 = lcg.uniform(-2.0 * geom.w0, 2.0 * geom.w0);
            let xi2 = lcg.uniform(-2.0 * geom.w0, 2.0 * geom.w0);
            let xi3 = lcg.uniform(-1.5 * geom.z_r, 1.5 * geom.z_r);
            let tau = lcg.uniform(-1.5 * geom.z_r, 1.5 * geom.z_r);
            let focus_x3 = lcg.uniform(-geom.z_r, geom.z_r);
            let focus_t = lcg.uniform(-geom.z_r, geom.z_r);
            let focus = FourEvent::new(focus_t, 0.0, 0.0, focus_x3);
            let x = FourEvent::new(focus_t + tau, xi1, xi2, focus_x3 + xi3);
            (x, focus)
        })
        .collect();

    let mut max_abs = 0.0f64;
    let mut max_width = 0.0f64;
    let mut max_gouy = 0.0f64;
    for v in BOOST_BETAS {
        for (x, focus) in &events {
            let inv = invariance_check(x, focus, config.mode, &kin, &geom, v)?;
            max_abs = max_abs.max(inv.abs_defect);
            max_width = max_width.max(inv.width_defect);
            max_gouy = max_gouy.max(inv.gouy_defect);
        }
    }
    report.check_le("max_abs_defect", max_abs, thresholds::LORENTZ_ABS_DEFECT);
    report.check_le(
        "max_width_defect",
        max_width,
        thresholds::LORENTZ_WIDTH_GOUY_DEFECT,
    );
    report.check_le(
        "max_gouy_defect",
        max_gouy,
        thresholds::LORENTZ_WIDTH_GOUY_DEFECT,
    );

    // Doppler landmark: at v = 0.6c the Rayleigh parameter halves.
    let (_, boosted_geom) = transform_beam(&kin, &geom, 0.6)?;
    let doppler_defect = (boosted_geom.z_r / (0.5 * geom.z_r) - 1.0).abs();
    report.check_le("doppler_rayleigh_defect", doppler_defect, thresholds::DOPPLER_REL);
    report.metric("sample_events", events.len() as f64);
    Ok(report)
}

const CORRESPONDENCE_BETAS: [f64; 3] = [1e-1, 1e-2, 1e-3];

fn correspond_scenario(config: &RunConfig) -> Result<VerifyReport, ConfigError> {
    let mut report = VerifyReport::new("correspond", config, config.seed);
    let (nk0, geom) = make_nr_kinematics(&config.beam)?;

    let mut lcg = Lcg64::new(config.seed);
    let samples: Vec<(f64, f64, f64)> = (0..CORRESPONDENCE_SAMPLES)
        .map(|_| {
            (
                lcg.uniform(-2.0 * geom.w0, 2.0 * geom.w0),
                lcg.uniform(-2.0 * geom.w0, 2.0 * geom.w0),
                lcg.uniform(-3.0 * nk0.t_r, 3.0 * nk0.t_r),
            )
        })
        .collect();

    let mut devs = Vec::new();
    for beta in CORRESPONDENCE_BETAS {
        let spec = BeamSpec::new(beta, config.beam.epsilon, config.mode)?;
        let dev = correspondence_check(config.mode, &spec, &samples)?.max_rel_envelope_dev;
        report.metric(&format!("dev_beta_{beta:e}"), dev);
        devs.push(dev);
    }

    let ratio = devs[1] / devs[2];
    report.check_le(
        "quadratic_ratio_defect",
        (ratio - 100.0).abs(),
        thresholds::CORRESPONDENCE_RATIO_BAND,
    );
    report.metric("quadratic_ratio", ratio);

    let constants: Vec<f64> = devs
        .iter()
        .zip(CORRESPONDENCE_BETAS)
        .map(|(d, b)| d / (b * b))
        .collect();
    let mut drift = 1.0f64;
    for pair in constants.windows(2) {
        drift = drift.max(pair[0] / pair[1]).max(pair[1] / pair[0]);
    }
    report.check_le(
        "scaling_constant_drift",
        drift,
        thresholds::CORRESPONDENCE_DRIFT_FACTOR,
    );

    let gamma1_spec = BeamSpec::new(0.1, config.beam.epsilon, config.mode)?;
    let gamma1 = gamma1_substitution_dev(config.mode, &gamma1_spec, &samples)?;
    report.check_le("gamma1_substitution_dev", gamma1, thresholds::GAMMA1_AGREEMENT);

    // on-constraint arctan-argument identity: gamma * (s/z_r) = tau/t_r
    let mut max_identity = 0.0f64;
    for beta in CORRESPONDENCE_BETAS {
        let spec = BeamSpec::new(beta, config.beam.epsilon, config.mode)?;
        let (k, _) = make_kinematics(&spec)?;
        let rel = gouy_gamma_relation(0.7 * nk0.t_r, config.mode, &spec)?;
        max_identity = max_identity.max((rel.arg_ratio * k.gamma - 1.0).abs());
    }
    report.check_le(
        "max_gouy_argument_identity_defect",
        max_identity,
        thresholds::GAMMA_RELATION_DEFECT,
    );

    // transparency metric: the rest-energy-free carrier rates differ by
    // omega - m0 c^2/hbar - E_s/hbar, which vanishes as beta -> 0
    let spec = BeamSpec::new(1e-2, config.beam.epsilon, config.mode)?;
    let (k, _) = make_kinematics(&spec)?;
    let (nk, _) = make_nr_kinematics(&spec)?;
    report.metric("carrier_rate_gap_beta_1e-2", k.omega - k.m0 - nk.e_s);
    report.metric("sample_count", samples.len() as f64);
    Ok(report)
}

fn gouy_scenario(config: &RunConfig) -> Result<VerifyReport, ConfigError> {
    let mut report = VerifyReport::new("gouy", config, config.seed);
    let (kin, geom) = make_kinematics(&config.beam)?;

    // on-axis phase extraction is meaningful for modes with a nonzero
    // on-axis value; the sign of H_m(0) H_n(0) is folded out
    let mut lcg = Lcg64::new(config.seed);
    let s_samples: Vec<f64> = (0..16)
        .map(|_| lcg.uniform(-3.0 * geom.z_r, 3.0 * geom.z_r))
        .collect();
    let mut max_phase_defect = 0.0f64;
    for mode in modes_up_to(3)
        .into_iter()
        .filter(|m| m.m() % 2 == 0 && m.n() % 2 == 0)
    {
        let h0 = hermite(mode.m(), 0.0).expect("cap") * hermite(mode.n(), 0.0).expect("cap");
        for &s in &s_samples {
            let v = envelope(
                &RelativeEvent::new(0.0, 0.0, s, 0.0),
                mode,
                &kin,
                &geom,
                Convention::Canonical,
            );
            let measured = (v * h0.signum()).arg();
            let expected = -gouy_relativistic(s, mode, &geom);
            let defect = wrap_angle(measured - expected).abs();
            max_phase_defect = max_phase_defect.max(defect);
        }
    }
    report.check_le(
        "max_onaxis_phase_defect",
        max_phase_defect,
        thresholds::GOUY_PHASE_DEFECT,
    );

    // landmark value (1+m+n) pi/4 at s = z_r, all modes up to (3,3)
    let mut max_landmark = 0.0f64;
    for mode in modes_up_to(3) {
        let g = gouy_relativistic(geom.z_r, mode, &geom);
        let expected = mode.gouy_order() * std::f64::consts::FRAC_PI_4;
        max_landmark = max_landmark.max((g / expected - 1.0).abs());
    }
    report.check_le(
        "max_quarter_pi_landmark_defect",
        max_landmark,
        thresholds::GOUY_PHASE_DEFECT,
    );

    // gamma-relation of the on-constraint arctan arguments
    let mut max_gamma_relation = 0.0f64;
    for beta in BOOST_BETAS {
        let spec = BeamSpec::new(beta, config.beam.epsilon, config.mode)?;
        let (k, _) = make_kinematics(&spec)?;
        let rel = gouy_gamma_relation(1.0, config.mode, &spec)?;
        max_gamma_relation = max_gamma_relation.max((rel.arg_ratio * k.gamma - 1.0).abs());
    }
    report.check_le(
        "max_gamma_relation_defect",
        max_gamma_relation,
        thresholds::GAMMA_RELATION_DEFECT,
    );

    let spec06 = BeamSpec::new(0.6, config.beam.epsilon, config.mode)?;
    let rel06 = gouy_gamma_relation(1.0, config.mode, &spec06)?;
    report.metric("arg_ratio_at_beta_0.6", rel06.arg_ratio);
    Ok(report)
}

fn norm_scenario(config: &RunConfig) -> Result<VerifyReport, ConfigError> {
    let mut report = VerifyReport::new("norm", config, config.seed);
    let (_, geom) = make_kinematics(&config.beam)?;
    let mut max_dev = 0.0f64;
    for mode in modes_up_to(5) {
        max_dev = max_dev.max(normalization_check(mode, &geom)?.abs());
    }
    report.check_le("max_norm_deviation", max_dev, thresholds::NORMALIZATION_DEV);
    report.metric("modes_checked", 36.0);
    Ok(report)
}

const DIVERGENCE_WINDOWS: [f64; 3] = [10.0, 20.0, 40.0];

fn divergence_scenario(config: &RunConfig) -> Result<VerifyReport, ConfigError> {
    let mut report = VerifyReport::new("divergence", config, config.seed);
    let (kin, geom) = make_kinematics(&config.beam)?;

    let mut values = Vec::new();
    for factor in DIVERGENCE_WINDOWS {
        let v = divergence_probe(config.mode, &config.beam, factor * geom.z_r)?;
        report.metric(&format!("value_window_{factor}zr"), v);
        values.push(v);
    }
    report.check_le(
        "doubling_defect_10_to_20",
        (values[1] / values[0] / 2.0 - 1.0).abs(),
        thresholds::DIVERGENCE_SLOPE_REL,
    );
    report.check_le(
        "doubling_defect_20_to_40",
        (values[2] / values[1] / 2.0 - 1.0).abs(),
        thresholds::DIVERGENCE_SLOPE_REL,
    );
    let slope = values[0] / (DIVERGENCE_WINDOWS[0] * geom.z_r);
    report.metric("slope_per_unit_window", slope);
    report.check_le(
        "slope_vs_analytic_defect",
        (slope * kin.u3 / 2.0 - 1.0).abs(),
        thresholds::DIVERGENCE_SLOPE_REL,
    );
    Ok(report)
}

fn wrap_angle(x: f64) -> f64 {
    x.sin().atan2(x.cos())
}

/// Human-readable adjudication ledger printed by `fieldgrid report`:
/// which factor convention annihilates the reduced operator, measured live
/// on seeded points, plus the normalization decisions that follow from the
/// s-independent slice norm.
pub fn convention_report(config: &RunConfig) -> Result<String, ConfigError> {
    let (kin, geom) = make_kinematics(&config.beam)?;
    let points = residual_points(config.seed, &geom, 8);
    let mut max_canonical = 0.0f64;
    let mut min_printed = f64::INFINITY;
    let mut min_ratio = f64::INFINITY;
    for mode in [ModeIndex::new(0, 0).expect("valid"), ModeIndex::new(1, 1).expect("valid")] {
        for point in &points {
            let canonical = reduced_residual(mode, &kin, &geom, Convention::Canonical, point)?;
            let printed = reduced_residual(mode, &kin, &geom, Convention::AsPrinted, point)?;
            max_canonical = max_canonical.max(canonical.scaled);
            min_printed = min_printed.min(printed.scaled);
            min_ratio = min_ratio.min(printed.scaled / canonical.scaled);
        }
    }

    let mut out = String::new();
    out.push_str("factor-convention adjudication\n");
    out.push_str("  canonical : exponent i k r^2 / (2 (s - i z_r));  width/Gouy argument s / z_r\n");
    out.push_str("  as_printed: exponent i k r^2 / (s - 2 i z_r);    width/Gouy argument s / (2 z_r)\n");
    out.push_str(&format!(
        "  measured on {} seeded points (seed {}), modes (0,0) and (1,1):\n",
        points.len(),
        config.seed
    ));
    out.push_str(&format!(
        "    max scaled reduced-equation residual, canonical : {}\n",
        fmt_real(max_canonical)
    ));
    out.push_str(&format!(
        "    min scaled reduced-equation residual, as_printed: {}\n",
        fmt_real(min_printed)
    ));
    out.push_str(&format!(
        "    separation factor (as_printed / canonical)      : >= {}\n",
        fmt_real(min_ratio)
    ));
    out.push_str(
        "  selected default: canonical, the variant that annihilates the reduced operator;\n\
         \x20 as_printed plateaus at an O(1) scaled defect and is kept for comparison only.\n\n",
    );

    out.push_str("normalization\n");
    out.push_str(
        "  C_mn = [pi 2^(m+n-1) m! n! w0^2]^(-1/2) normalizes each transverse slice;\n\
         \x20 the slice norm is independent of s, so the 4-D constrained norm integral\n\
         \x20 grows linearly with any axial window and cannot be normalized globally.\n",
    );
    if config.beam.beta > 0.0 {
        let window = 10.0 * geom.z_r;
        let value = divergence_probe(config.mode, &config.beam, window)?;
        out.push_str(&format!(
            "  measured: window {} -> integral {} (slope {} per unit window; 2/u3 = {})\n",
            fmt_real(window),
            fmt_real(value),
            fmt_real(value / window),
            fmt_real(2.0 / kin.u3)
        ));
    }
    out.push('\n');

    out.push_str("non-relativistic width factor\n");
    out.push_str(
        "  t_r = m0 w0^2 / (2 hbar) is the axial time scale consistent with the reduced\n\
         \x20 Schrodinger equation; pairing the same Gaussian exponent with a width\n\
         \x20 argument tau / (2 t_r) is inconsistent at factor-of-two level and is not used.\n",
    );
    Ok(out)
}
