use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::matel::{Channel, RadialError, RadialFn, RadialProvider, UnitRadial};
use crate::radial::{read_table, GridRadial, GridSpec, RadialGrid};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum System {
    TwoElectron,
    EHe,
    ELi,
}

impl System {
    pub fn electrons(self) -> usize {
        match self {
            System::TwoElectron => 2,
            System::EHe => 3,
            System::ELi => 4,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Float,
    Exact,
}

/// Where the radial integrals come from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RadialSource {
    /// Quadrature on the configured grid.
    #[default]
    Grid,
    /// Every integral equal to one: angular coefficients only.
    Unit,
}

/// A bound orbital: analytic hydrogenic or a two-column `r P(r)` table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum OrbitalSpec {
    Hydrogenic {
        n: u32,
        l: u32,
        #[serde(rename = "Z")]
        z: f64,
    },
    Table {
        n: u32,
        l: u32,
        file: PathBuf,
    },
}

/// Input of `recouple matel`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub system: System,
    pub channels: Vec<Channel>,
    /// Term names; defaults to every term of the system.
    #[serde(default)]
    pub terms: Option<Vec<String>>,
    /// Nuclear charge used for bound orbitals not listed in `orbitals`.
    #[serde(default, rename = "Z")]
    pub z: Option<f64>,
    #[serde(default)]
    pub orbitals: Vec<OrbitalSpec>,
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default)]
    pub radial: RadialSource,
    #[serde(default, rename = "E")]
    pub energy: f64,
    #[serde(default)]
    pub output: OutputFormat,
    #[serde(default)]
    pub mode: Mode,
}

pub const TWO_ELECTRON_TERMS: &[&str] = &["v01_direct"];
pub const HE_TERMS: &[&str] = &["v01_direct", "v01_exch", "v02_exch", "v12_exch", "e_exch", "one_body_nuclear", "nuclear_exch", "v"];
pub const LI_TERMS: &[&str] = &["v01_direct", "v01_exch", "v02_exch", "v12_exch", "v23_exch", "e_exch", "one_body_nuclear", "nuclear_exch", "v"];

impl JobConfig {
    pub fn allowed_terms(&self) -> &'static [&'static str] {
        match self.system {
            System::TwoElectron => TWO_ELECTRON_TERMS,
            System::EHe => HE_TERMS,
            System::ELi => LI_TERMS,
        }
    }

    pub fn terms(&self) -> Vec<String> {
        match &self.terms {
            Some(t) => t.clone(),
            None => self.allowed_terms().iter().map(|s| s.to_string()).collect(),
        }
    }

    /// Rejects anything that would fail mid-run: channel couplings, electron
    /// counts, term names, grid and orbital parameters.
    pub fn validate(&self) -> Result<(), String> {
        let n = self.system.electrons();
        for c in &self.channels {
            c.validate().map_err(|e| e.to_string())?;
            if c.electrons() != n {
                return Err(format!("channel {}: {} electrons, system {:?} needs {n}", c.id.clone().unwrap_or_else(|| c.label()), c.electrons(), self.system));
            }
        }
        let allowed = self.allowed_terms();
        for t in self.terms() {
            if !allowed.contains(&t.as_str()) {
                return Err(format!("unknown term {t:?} for this system; expected one of {}", allowed.join(", ")));
            }
        }
        if self.radial == RadialSource::Grid {
            RadialGrid::new(self.grid).map_err(|e| e.to_string())?;
        }
        if let Some(z) = self.z {
            if !(z > 0.0 && z.is_finite()) {
                return Err(format!("Z must be positive, got {z}"));
            }
        }
        if !self.energy.is_finite() {
            return Err("E must be finite".into());
        }
        Ok(())
    }

    /// Radial provider for this job; table paths resolve relative to `base`.
    pub fn provider(&self, base: &Path) -> Result<Box<dyn RadialProvider>, String> {
        if self.radial == RadialSource::Unit {
            return Ok(Box::new(UnitRadial));
        }
        let grid = Arc::new(RadialGrid::new(self.grid).map_err(|e| e.to_string())?);
        build_provider(grid, self.z, &self.orbitals, base).map(|p| Box::new(p) as Box<dyn RadialProvider>)
    }
}

pub fn build_provider(grid: Arc<RadialGrid>, z: Option<f64>, orbitals: &[OrbitalSpec], base: &Path) -> Result<GridRadial, String> {
    let p = GridRadial::new(grid.clone(), z);
    for o in orbitals {
        match o {
            OrbitalSpec::Hydrogenic { n, l, z } => {
                let f = crate::radial::make_hydrogenic(*n, *l, *z, &grid).map_err(|e| e.to_string())?.f;
                p.insert_orbital(*n, *l, f).map_err(|e| e.to_string())?;
            }
            OrbitalSpec::Table { n, l, file } => {
                let path = base.join(file);
                let text = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
                let f = read_table(&text, &grid).map_err(|e| format!("{}: {e}", path.display()))?;
                p.insert_orbital(*n, *l, f).map_err(|e| e.to_string())?;
            }
        }
    }
    Ok(p)
}

/// A radial function named in a `radial` job: bound `{n, l}` or wave `{k, l}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum FunctionSpec {
    Bound { n: u32, l: u32 },
    Wave { k: f64, l: u32 },
}

impl FunctionSpec {
    pub fn radial_fn(self) -> RadialFn {
        let h = |l: u32| crate::exactnum::HalfInt::from_twice(2 * l as i32);
        match self {
            FunctionSpec::Bound { n, l } => RadialFn::Bound { n, l: h(l) },
            FunctionSpec::Wave { k, l } => RadialFn::Wave { k, l: h(l) },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RadialRequest {
    Overlap { functions: [FunctionSpec; 2] },
    InverseR { functions: [FunctionSpec; 2] },
    Slater { lambda: u32, functions: [FunctionSpec; 4] },
}

/// Input of `recouple radial`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadialJob {
    #[serde(default)]
    pub grid: GridSpec,
    #[serde(default, rename = "Z")]
    pub z: Option<f64>,
    #[serde(default)]
    pub orbitals: Vec<OrbitalSpec>,
    pub requests: Vec<RadialRequest>,
}

impl RadialJob {
    pub fn run(&self, base: &Path) -> Result<Vec<BTreeMap<&'static str, serde_json::Value>>, String> {
        let grid = Arc::new(RadialGrid::new(self.grid).map_err(|e| e.to_string())?);
        let p = build_provider(grid, self.z, &self.orbitals, base)?;
        let err = |e: RadialError| e.to_string();
        self.requests
            .iter()
            .map(|r| {
                let mut row = BTreeMap::new();
                let value = match r {
                    RadialRequest::Overlap { functions: [a, b] } => {
                        row.insert("kind", "overlap".into());
                        row.insert("functions", serde_json::to_value([a, b]).unwrap());
                        p.overlap(&a.radial_fn(), &b.radial_fn()).map_err(err)?
                    }
                    RadialRequest::InverseR { functions: [a, b] } => {
                        row.insert("kind", "inverse_r".into());
                        row.insert("functions", serde_json::to_value([a, b]).unwrap());
                        p.inverse_r(&a.radial_fn(), &b.radial_fn()).map_err(err)?
                    }
                    RadialRequest::Slater { lambda, functions } => {
                        row.insert("kind", "slater".into());
                        row.insert("lambda", (*lambda).into());
                        row.insert("functions", serde_json::to_value(functions).unwrap());
                        let [a, b, c, d] = functions.map(FunctionSpec::radial_fn);
                        p.slater(*lambda, &a, &b, &c, &d).map_err(err)?
                    }
                };
                row.insert("value", value.into());
                Ok(row)
            })
            .collect()
    }
}
