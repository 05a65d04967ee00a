//! WebAssembly bindings behind `www/index.html`. Every export takes and
//! returns plain strings and numbers so the page needs no glue beyond the
//! generated module.

use std::sync::Arc;

use serde::Serialize;
use wasm_bindgen::prelude::*;

use recouple::cli::{wigner, SymbolKind, WignerArgs};
use recouple::exactnum::HalfInt;
use recouple::matel::{direct_two_electron, direct_two_electron_cowan};
use recouple::radial::{make_hydrogenic, slater_integral, GridSpec, RadialGrid};

fn kind(name: &str) -> Result<SymbolKind, String> {
    Ok(match name {
        "cg" => SymbolKind::Cg,
        "3j" => SymbolKind::ThreeJ,
        "6j" => SymbolKind::SixJ,
        "9j" => SymbolKind::NineJ,
        "sq9j" => SymbolKind::Sq9j,
        "gaunt" => SymbolKind::Gaunt,
        "triple-y" => SymbolKind::TripleY,
        _ => return Err(format!("unknown symbol {name:?}")),
    })
}

/// Exact value and float of a Wigner-type symbol, tab separated.
/// `args` are whitespace separated momenta such as `1/2 -1/2 1`.
#[wasm_bindgen]
pub fn symbol(name: &str, args: &str) -> Result<String, String> {
    let a = WignerArgs { kind: kind(name)?, args: args.split_whitespace().map(String::from).collect(), twice: false, exact: true, float: true };
    wigner(&a).map_err(|f| f.message)
}

#[derive(Serialize)]
struct Multipole {
    lambda: i32,
    exact: String,
    angular: f64,
}

#[derive(Serialize)]
struct Breakdown {
    terms: Vec<Multipole>,
    /// Both closed forms give the same exact coefficients.
    forms_agree: bool,
}

fn integer(x: u32) -> HalfInt {
    HalfInt::from_twice(2 * x as i32)
}

/// Angular coefficient of each multipole of the direct two-electron element
/// `<(la' lb') l | 1/r12 | (la lb) l>`, as JSON.
#[wasm_bindgen]
pub fn two_electron(la_bra: u32, lb_bra: u32, la: u32, lb: u32, l: u32) -> Result<String, String> {
    let [lap, lbp, la, lb, l] = [la_bra, lb_bra, la, lb, l].map(integer);
    let unit = |_: u32| 1.0;
    let boxes = direct_two_electron(lap, lbp, la, lb, l, &unit).map_err(|e| e.to_string())?;
    let cowan = direct_two_electron_cowan(lap, lbp, la, lb, l, &unit).map_err(|e| e.to_string())?;
    let out = Breakdown {
        forms_agree: boxes.exact_angular() == cowan.exact_angular(),
        terms: boxes.terms.iter().map(|t| Multipole { lambda: t.term.lambda.twice() / 2, exact: t.exact.to_string(), angular: t.angular }).collect(),
    };
    Ok(serde_json::to_string(&out).unwrap())
}

#[derive(Serialize)]
struct Curve {
    r: Vec<f64>,
    p: Vec<f64>,
    /// `F^k(nl, nl)` for `k = 0, 2, .., 2l` on the default grid.
    slater: Vec<(u32, f64)>,
}

/// Hydrogenic `P_nl(r)` sampled at `points` radii up to `r_max`, with the
/// diagonal Slater integrals of the orbital, as JSON.
#[wasm_bindgen]
pub fn orbital(n: u32, l: u32, z: f64, r_max: f64, points: u32) -> Result<String, String> {
    if points < 2 || r_max.is_nan() || r_max <= 0.0 {
        return Err("need at least two points and a positive radius".into());
    }
    let grid = Arc::new(RadialGrid::new(GridSpec::default()).map_err(|e| e.to_string())?);
    let f = make_hydrogenic(n, l, z, &grid).map_err(|e| e.to_string())?.f;
    let slater = (0..=l).map(|k| 2 * k).map(|k| slater_integral(k, &f, &f, &f, &f).map(|v| (k, v))).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let r: Vec<f64> = (0..points).map(|i| r_max * f64::from(i) / f64::from(points - 1)).collect();
    let p = r.iter().map(|&x| recouple::radial::hydrogenic_value(n, l, z, x)).collect();
    Ok(serde_json::to_string(&Curve { r, p, slater }).unwrap())
}
