use serde::{Deserialize, Serialize};

use crate::matel::RadialError;

/// Parameters of an exponentially mapped grid `r = exp(x)`, `x` uniform.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default = "GridSpec::default_r_min")]
    pub r_min: f64,
    #[serde(default = "GridSpec::default_r_max")]
    pub r_max: f64,
    /// Number of Simpson intervals; must be even.
    #[serde(default = "GridSpec::default_intervals")]
    pub intervals: usize,
}

impl GridSpec {
    fn default_r_min() -> f64 {
        1e-6
    }
    fn default_r_max() -> f64 {
        100.0
    }
    fn default_intervals() -> usize {
        2000
    }

    /// Same range with twice the intervals.
    pub fn refined(self) -> Self {
        Self { intervals: 2 * self.intervals, ..self }
    }
}

impl Default for GridSpec {
    fn default() -> Self {
        Self { r_min: Self::default_r_min(), r_max: Self::default_r_max(), intervals: Self::default_intervals() }
    }
}

/// Radial points with composite-Simpson weights on the mapped variable.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialGrid {
    pub spec: GridSpec,
    /// Mapped step `Δx`.
    pub h: f64,
    pub r: Vec<f64>,
    /// `∫ f dr ≈ Σ w_i f(r_i)`.
    pub w: Vec<f64>,
}

impl RadialGrid {
    pub fn new(spec: GridSpec) -> Result<Self, RadialError> {
        let GridSpec { r_min, r_max, intervals } = spec;
        if !(r_min > 0.0 && r_max > r_min && r_max.is_finite()) {
            return Err(RadialError::Invalid(format!("grid range [{r_min}, {r_max}] must satisfy 0 < r_min < r_max")));
        }
        if intervals < 2 || intervals % 2 != 0 {
            return Err(RadialError::Invalid(format!("grid needs an even number of intervals, got {intervals}")));
        }
        let (x0, x1) = (r_min.ln(), r_max.ln());
        let h = (x1 - x0) / intervals as f64;
        let r: Vec<f64> = (0..=intervals).map(|i| (x0 + h * i as f64).exp()).collect();
        let w = r
            .iter()
            .enumerate()
            .map(|(i, ri)| {
                let c = if i == 0 || i == intervals {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                c * h / 3.0 * ri
            })
            .collect();
        Ok(Self { spec, h, r, w })
    }

    pub fn len(&self) -> usize {
        self.r.len()
    }

    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    /// `∫ f dr` for samples `f` on this grid.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        self.w.iter().zip(f).map(|(w, f)| w * f).sum()
    }

    /// Running integral `∫_{r_0}^{r_i} f dr` at every point.
    ///
    /// Even points accumulate whole Simpson panels; odd points add the
    /// single-interval rule `h/12 (5 g0 + 8 g1 − g2)`, so every entry is
    /// fourth-order accurate.
    pub fn cumulative(&self, f: &[f64]) -> Vec<f64> {
        let n = self.r.len();
        let g: Vec<f64> = f.iter().zip(&self.r).map(|(f, r)| f * r).collect();
        let h = self.h;
        let mut out = vec![0.0; n];
        let mut i = 0;
        while i + 2 < n {
            out[i + 1] = out[i] + h / 12.0 * (5.0 * g[i] + 8.0 * g[i + 1] - g[i + 2]);
            out[i + 2] = out[i] + h / 3.0 * (g[i] + 4.0 * g[i + 1] + g[i + 2]);
            i += 2;
        }
        out
    }

    /// Running integral from each point to the outer edge.
    pub fn tail(&self, f: &[f64]) -> Vec<f64> {
        let c = self.cumulative(f);
        let total = c[c.len() - 1];
        c.iter().map(|x| total - x).collect()
    }
}
