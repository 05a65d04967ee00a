use std::sync::Arc;

use super::grid::RadialGrid;
use crate::matel::RadialError;

/// Samples of a radial function `P(r)` (including the factor `r`) on a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Sampled {
    pub grid: Arc<RadialGrid>,
    pub values: Vec<f64>,
}

impl Sampled {
    pub fn new(grid: Arc<RadialGrid>, values: Vec<f64>) -> Result<Self, RadialError> {
        if values.len() != grid.len() {
            return Err(RadialError::GridMismatch);
        }
        Ok(Self { grid, values })
    }
}

/// Bound orbital `P_nl(r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Orbital {
    pub n: u32,
    pub l: u32,
    pub f: Sampled,
}

/// Riccati–Bessel partial wave `u_l(kr) = kr j_l(kr)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FreeWave {
    pub k: f64,
    pub l: u32,
    pub f: Sampled,
}

fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| f64::from(k).ln()).sum()
}

/// Generalized Laguerre polynomial `L_n^(a)(x)` by the three-term recurrence.
fn laguerre(n: u32, a: f64, x: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, 1.0 + a - x);
    if n == 0 {
        return p0;
    }
    for k in 1..n {
        let k = f64::from(k);
        let p2 = ((2.0 * k + 1.0 + a - x) * p1 - (k + a) * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Hydrogenic `P_nl(r)` for nuclear charge `z`.
pub fn hydrogenic_value(n: u32, l: u32, z: f64, r: f64) -> f64 {
    let nf = f64::from(n);
    let rho = 2.0 * z * r / nf;
    let ln_norm = 0.5 * (3.0 * (2.0 * z / nf).ln() + ln_factorial(n - l - 1) - (2.0 * nf).ln() - ln_factorial(n + l));
    ln_norm.exp() * (-rho / 2.0).exp() * rho.powi(l as i32) * laguerre(n - l - 1, f64::from(2 * l + 1), rho) * r
}

pub fn make_hydrogenic(n: u32, l: u32, z: f64, grid: &Arc<RadialGrid>) -> Result<Orbital, RadialError> {
    if n == 0 || l >= n {
        return Err(RadialError::Invalid(format!("hydrogenic orbital needs n > l >= 0, got n={n} l={l}")));
    }
    if !(z > 0.0 && z.is_finite()) {
        return Err(RadialError::Invalid(format!("nuclear charge must be positive, got {z}")));
    }
    let values = grid.r.iter().map(|&r| hydrogenic_value(n, l, z, r)).collect();
    Ok(Orbital { n, l, f: Sampled::new(grid.clone(), values)? })
}

/// Riccati–Bessel function `x j_l(x)`.
pub fn riccati_bessel(l: u32, x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    if x > f64::from(l) {
        let (mut a, mut b) = (x.sin(), x.sin() / x - x.cos());
        if l == 0 {
            return a;
        }
        for k in 1..l {
            let c = f64::from(2 * k + 1) / x * b - a;
            a = b;
            b = c;
        }
        return b;
    }
    // power series, well conditioned for x <= l
    let mut df = 1.0;
    for k in 1..=l {
        df *= f64::from(2 * k + 1);
    }
    let lead = x.powi(l as i32 + 1) / df;
    let (mut term, mut sum) = (1.0, 1.0);
    for k in 1..200 {
        term *= -x * x / 2.0 / (f64::from(k) * f64::from(2 * l + 2 * k + 1));
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
    }
    lead * sum
}

pub fn make_free_wave(k: f64, l: u32, grid: &Arc<RadialGrid>) -> Result<FreeWave, RadialError> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(RadialError::Invalid(format!("wave number must be positive, got {k}")));
    }
    let values = grid.r.iter().map(|&r| riccati_bessel(l, k * r)).collect();
    Ok(FreeWave { k, l, f: Sampled::new(grid.clone(), values)? })
}

/// Reads a two-column `r P(r)` table and interpolates it linearly onto `grid`.
/// Lines starting with `#` are skipped; the function is zero outside the table.
pub fn read_table(text: &str, grid: &Arc<RadialGrid>) -> Result<Sampled, RadialError> {
    let mut pts: Vec<(f64, f64)> = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<f64> = line
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|e| RadialError::Invalid(format!("line {}: {e}", no + 1)))?;
        if cols.len() != 2 {
            return Err(RadialError::Invalid(format!("line {}: expected two columns", no + 1)));
        }
        if pts.last().is_some_and(|p| p.0 >= cols[0]) {
            return Err(RadialError::Invalid(format!("line {}: radii must increase", no + 1)));
        }
        pts.push((cols[0], cols[1]));
    }
    if pts.len() < 2 {
        return Err(RadialError::Invalid("table needs at least two rows".into()));
    }
    let values = grid
        .r
        .iter()
        .map(|&r| {
            let i = pts.partition_point(|p| p.0 <= r);
            if i == 0 || i == pts.len() {
                return if i == pts.len() && r == pts[i - 1].0 { pts[i - 1].1 } else { 0.0 };
            }
            let (a, b) = (pts[i - 1], pts[i]);
            a.1 + (b.1 - a.1) * (r - a.0) / (b.0 - a.0)
        })
        .collect();
    Sampled::new(grid.clone(), values)
}
