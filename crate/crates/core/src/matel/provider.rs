use super::channel::RadialFn;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum RadialError {
    #[error("no radial function available for {0}")]
    Missing(String),
    #[error("radial functions live on different grids")]
    GridMismatch,
    #[error("{0}")]
    Invalid(String),
}

/// Source of the radial integrals that multiply each angular coefficient.
///
/// `slater(lambda, a, b, c, d)` is `∫∫ a(r0) b(r0) c(r1) d(r1) r<^lambda / r>^(lambda+1) dr0 dr1`.
pub trait RadialProvider: Sync {
    fn overlap(&self, a: &RadialFn, b: &RadialFn) -> Result<f64, RadialError>;
    fn slater(&self, lambda: u32, a: &RadialFn, b: &RadialFn, c: &RadialFn, d: &RadialFn) -> Result<f64, RadialError>;
    /// `∫ a(r) b(r) / r dr`.
    fn inverse_r(&self, a: &RadialFn, b: &RadialFn) -> Result<f64, RadialError>;
}

/// Every integral equals 1, isolating the angular algebra.
#[derive(Clone, Copy, Debug, Default)]
pub struct UnitRadial;

impl RadialProvider for UnitRadial {
    fn overlap(&self, _: &RadialFn, _: &RadialFn) -> Result<f64, RadialError> {
        Ok(1.0)
    }

    fn slater(&self, _: u32, _: &RadialFn, _: &RadialFn, _: &RadialFn, _: &RadialFn) -> Result<f64, RadialError> {
        Ok(1.0)
    }

    fn inverse_r(&self, _: &RadialFn, _: &RadialFn) -> Result<f64, RadialError> {
        Ok(1.0)
    }
}
