use std::sync::Arc;

use super::functions::Sampled;
use crate::matel::RadialError;

fn same_grid(fs: &[&Sampled]) -> Result<(), RadialError> {
    let g = &fs[0].grid;
    if fs.iter().all(|f| Arc::ptr_eq(&f.grid, g) || f.grid.spec == g.spec) {
        Ok(())
    } else {
        Err(RadialError::GridMismatch)
    }
}

fn product(a: &Sampled, b: &Sampled) -> Vec<f64> {
    a.values.iter().zip(&b.values).map(|(x, y)| x * y).collect()
}

/// `∫ f g dr`.
pub fn overlap(f: &Sampled, g: &Sampled) -> Result<f64, RadialError> {
    same_grid(&[f, g])?;
    Ok(f.grid.integrate(&product(f, g)))
}

/// `∫ f g / r dr`.
pub fn inverse_r(f: &Sampled, g: &Sampled) -> Result<f64, RadialError> {
    same_grid(&[f, g])?;
    let p: Vec<f64> = product(f, g).iter().zip(&f.grid.r).map(|(v, r)| v / r).collect();
    Ok(f.grid.integrate(&p))
}

/// Potential `y_λ(r) = r^-(λ+1) ∫_0^r ρ s^λ ds + r^λ ∫_r^∞ ρ s^-(λ+1) ds` of a density.
pub fn multipole_potential(lambda: u32, rho: &[f64], grid: &super::RadialGrid) -> Vec<f64> {
    let lam = lambda as i32;
    let inner: Vec<f64> = rho.iter().zip(&grid.r).map(|(p, r)| p * r.powi(lam)).collect();
    let outer: Vec<f64> = rho.iter().zip(&grid.r).map(|(p, r)| p * r.powi(-lam - 1)).collect();
    let zi = grid.cumulative(&inner);
    let zo = grid.tail(&outer);
    grid.r.iter().enumerate().map(|(i, r)| zi[i] * r.powi(-lam - 1) + zo[i] * r.powi(lam)).collect()
}

/// `∫∫ a(r0) b(r0) c(r1) d(r1) r<^λ / r>^(λ+1) dr0 dr1` by the two-pass cumulative method.
pub fn slater_integral(lambda: u32, a: &Sampled, b: &Sampled, c: &Sampled, d: &Sampled) -> Result<f64, RadialError> {
    same_grid(&[a, b, c, d])?;
    let grid = &a.grid;
    let y = multipole_potential(lambda, &product(c, d), grid);
    let p: Vec<f64> = product(a, b).iter().zip(&y).map(|(x, y)| x * y).collect();
    Ok(grid.integrate(&p))
}
