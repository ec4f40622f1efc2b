use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("superluminal speed: |beta| = {beta} must be < 1")]
    Superluminal { beta: f64 },

    #[error("Hermite order {n} exceeds the stability cap {cap}")]
    HermiteOrder { n: u32, cap: u32 },

    #[error("mode index ({m}, {n}) exceeds the per-axis cap {cap}")]
    ModeOrder { m: u32, n: u32, cap: u32 },

    #[error("invalid {what}: {why}")]
    InvalidSpec { what: &'static str, why: String },

    #[error(
        "quadrature budget exhausted after {subdivisions} subdivisions \
         (best value {value:e}, error estimate {error_estimate:e})"
    )]
    QuadratureBudget {
        value: f64,
        error_estimate: f64,
        subdivisions: usize,
    },

    #[error("non-finite stencil result on axis {axis}")]
    StencilFailure { axis: &'static str },

    #[error("axial constraint requires 0 < u3 < c, got u3 = {u3}")]
    ConstraintVelocity { u3: f64 },

    #[error("beta = {beta} outside the supported regime (0, {max}]")]
    OutsideRegime { beta: f64, max: f64 },
}

impl Error {
    pub(crate) fn invalid(what: &'static str, why: impl Into<String>) -> Self {
        Error::InvalidSpec {
            what,
            why: why.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
