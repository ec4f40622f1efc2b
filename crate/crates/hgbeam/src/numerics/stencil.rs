use num_complex::Complex64;

use crate::error::{Error, Result};

/// Maximum number of step halvings in the Richardson tableau.
pub const MAX_RICHARDSON_LEVELS: usize = 4;

/// Derivative order of a finite-difference stencil.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivOrder {
    First,
    Second,
}

/// Coordinate axis a stencil differentiates along.
///
/// Purely descriptive: it does not change the arithmetic, but lets callers
/// attach the axis name to diagnostics when a stencil produces garbage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    T,
    X1,
    X2,
    X3,
}

impl Axis {
    pub fn name(self) -> &'static str {
        match self {
            Axis::T => "t",
            Axis::X1 => "x1",
            Axis::X2 => "x2",
            Axis::X3 => "x3",
        }
    }
}

/// Central-difference stencil with Richardson extrapolation.
#[derive(Debug, Clone, Copy)]
pub struct StencilSpec {
    pub order: DerivOrder,
    pub axis: Axis,
    pub step: f64,
    /// Number of step halvings feeding the extrapolation tableau.
    pub richardson_levels: usize,
}

impl StencilSpec {
    pub fn new(order: DerivOrder, axis: Axis, step: f64, richardson_levels: usize) -> Result<Self> {
        if !(step.is_finite() && step > 0.0) {
            return Err(Error::invalid(
                "stencil step",
                format!("must be finite and positive, got {step}"),
            ));
        }
        if !(1..=MAX_RICHARDSON_LEVELS).contains(&richardson_levels) {
            return Err(Error::invalid(
                "richardson levels",
                format!("must lie in 1..={MAX_RICHARDSON_LEVELS}, got {richardson_levels}"),
            ));
        }
        Ok(StencilSpec {
            order,
            axis,
            step,
            richardson_levels,
        })
    }

    /// Stencil with the default step `eps^(1/3) * scale` and two Richardson
    /// levels, where `scale` is the characteristic length of the axis.
    pub fn with_default_step(order: DerivOrder, axis: Axis, scale: f64) -> Result<Self> {
        Self::new(order, axis, f64::EPSILON.cbrt() * scale, 2)
    }
}

/// Central difference of `f` at `at`, Richardson-extrapolated across
/// `spec.richardson_levels` halvings of `spec.step`.
///
/// Both stencils have error series in even powers of the step, so each
/// extrapolation column removes one power of h^2; with L halvings the
/// composite rule is accurate to O(h^(2L+2)).
pub fn diff<F: Fn(f64) -> Complex64>(f: F, at: f64, spec: &StencilSpec) -> Complex64 {
    let levels = spec.richardson_levels;
    let mut tableau = Vec::with_capacity(levels + 1);
    let center = match spec.order {
        DerivOrder::First => Complex64::default(), // unused
        DerivOrder::Second => f(at),
    };
    let mut h = spec.step;
    for _ in 0..=levels {
        let plus = f(at + h);
        let minus = f(at - h);
        let estimate = match spec.order {
            DerivOrder::First => (plus - minus) / (2.0 * h),
            DerivOrder::Second => (plus - 2.0 * center + minus) / (h * h),
        };
        tableau.push(estimate);
        h *= 0.5;
    }
    for j in 1..=levels {
        let factor = 4f64.powi(j as i32);
        for k in 0..=(levels - j) {
            tableau[k] = (factor * tableau[k + 1] - tableau[k]) / (factor - 1.0);
        }
    }
    tableau[0]
}
