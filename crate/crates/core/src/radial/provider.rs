use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::Mutex;

use super::functions::{make_free_wave, make_hydrogenic, Sampled};
use super::grid::RadialGrid;
use super::integrals::{inverse_r, overlap, slater_integral};
use crate::matel::{RadialError, RadialFn, RadialProvider};

/// Radial integrals by quadrature on one grid.
///
/// Bound orbitals come from explicitly supplied samples or, failing that, from
/// hydrogenic functions of charge `z`; partial waves are Riccati–Bessel
/// functions. Samples and Slater integrals are cached behind locks, so one
/// provider may be shared across threads.
pub struct GridRadial {
    grid: Arc<RadialGrid>,
    z: Option<f64>,
    functions: Mutex<HashMap<RadialFn, Arc<Sampled>>>,
    slater: Mutex<HashMap<(u32, [RadialFn; 4]), f64>>,
}

impl GridRadial {
    pub fn new(grid: Arc<RadialGrid>, z: Option<f64>) -> Self {
        Self { grid, z, functions: Mutex::new(HashMap::new()), slater: Mutex::new(HashMap::new()) }
    }

    pub fn grid(&self) -> &Arc<RadialGrid> {
        &self.grid
    }

    /// Registers tabulated samples for bound orbital `n l`, overriding the hydrogenic default.
    pub fn insert_orbital(&self, n: u32, l: u32, f: Sampled) -> Result<(), RadialError> {
        if f.grid.spec != self.grid.spec {
            return Err(RadialError::GridMismatch);
        }
        let key = RadialFn::Bound { n, l: crate::exactnum::HalfInt::from_twice(2 * l as i32) };
        self.functions.lock().insert(key, Arc::new(f));
        Ok(())
    }

    pub fn function(&self, f: &RadialFn) -> Result<Arc<Sampled>, RadialError> {
        if let Some(s) = self.functions.lock().get(f) {
            return Ok(s.clone());
        }
        let l = f.l().as_integer().filter(|l| *l >= 0).ok_or_else(|| RadialError::Invalid(format!("{f}: orbital rank must be a non-negative integer")))? as u32;
        let s = match *f {
            RadialFn::Bound { n, .. } => {
                let z = self.z.ok_or_else(|| RadialError::Missing(f.to_string()))?;
                make_hydrogenic(n, l, z, &self.grid)?.f
            }
            RadialFn::Wave { k, .. } => make_free_wave(k, l, &self.grid)?.f,
        };
        let s = Arc::new(s);
        self.functions.lock().insert(*f, s.clone());
        Ok(s)
    }
}

impl RadialProvider for GridRadial {
    fn overlap(&self, a: &RadialFn, b: &RadialFn) -> Result<f64, RadialError> {
        overlap(&*self.function(a)?, &*self.function(b)?)
    }

    fn slater(&self, lambda: u32, a: &RadialFn, b: &RadialFn, c: &RadialFn, d: &RadialFn) -> Result<f64, RadialError> {
        let key = (lambda, [*a, *b, *c, *d]);
        if let Some(v) = self.slater.lock().get(&key) {
            return Ok(*v);
        }
        let v = slater_integral(lambda, &*self.function(a)?, &*self.function(b)?, &*self.function(c)?, &*self.function(d)?)?;
        self.slater.lock().insert(key, v);
        Ok(v)
    }

    fn inverse_r(&self, a: &RadialFn, b: &RadialFn) -> Result<f64, RadialError> {
        inverse_r(&*self.function(a)?, &*self.function(b)?)
    }
}
