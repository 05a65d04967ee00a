use crate::matel::{RadialError, RadialFn, RadialProvider};

/// Radial stand-in whose integrals encode which functions were paired.
///
/// Values respect the true symmetries (overlap symmetric, Slater integral
/// symmetric under `a↔b`, `c↔d` and `(ab)↔(cd)`) and nothing else, so a
/// closed form that pairs the wrong bra and ket functions disagrees with the
/// projection sum even when the angular algebra is right.
#[derive(Clone, Copy, Debug, Default)]
pub struct TaggedRadial;

fn code(f: &RadialFn) -> f64 {
    match *f {
        RadialFn::Wave { k, l } => 1.1 + 0.37 * l.as_f64() + 0.53 * k,
        RadialFn::Bound { n, l } => 0.7 + 0.13 * f64::from(n) + 0.29 * l.as_f64(),
    }
}

impl RadialProvider for TaggedRadial {
    fn overlap(&self, a: &RadialFn, b: &RadialFn) -> Result<f64, RadialError> {
        Ok(0.4 + code(a) * code(b))
    }

    fn slater(&self, lambda: u32, a: &RadialFn, b: &RadialFn, c: &RadialFn, d: &RadialFn) -> Result<f64, RadialError> {
        let (s1, s2) = (code(a) + code(b), code(c) + code(d));
        let (p1, p2) = (code(a) * code(b), code(c) * code(d));
        Ok((1.0 + 0.1 * f64::from(lambda)) * (s1 * s2 + 0.3 * (p1 + p2)))
    }

    fn inverse_r(&self, a: &RadialFn, b: &RadialFn) -> Result<f64, RadialError> {
        Ok(2.0 + code(a) + code(b) + 0.5 * code(a) * code(b))
    }
}
