//! Verification suites behind `recouple verify`: every implementation route
//! checked against its independent oracle, summarized in one JSON report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;

use crate::exactnum::{triangle_ok, triangle_range, HalfInt, SqrtRational};
use crate::matel::{
    direct_two_electron, direct_two_electron_cowan, he_element, li_element, nuclear_exch, one_body_nuclear, Channel, MatElError, MatElResult, RadialProvider, Term,
};
use crate::oracle::{brute_force_terms, nine_j_contraction, six_j_contraction, square_nine_j_overlap, OracleOperator, OracleResult, TaggedRadial};
use crate::radial::{inverse_r, make_free_wave, make_hydrogenic, overlap, slater_integral, GridSpec, RadialGrid};
use crate::recoupling::{channel_assignment, library_graph, published_graph, term_graphs, RecouplingGraph};
use crate::wigner::{nine_j, six_j, square_nine_j, NineJArgs};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Wigner,
    Recoupling,
    He,
    Li,
    Radial,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 6] = ["wigner", "recoupling", "he", "li", "radial", "all"];
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "wigner" => Suite::Wigner,
            "recoupling" => Suite::Recoupling,
            "he" => Suite::He,
            "li" => Suite::Li,
            "radial" => Suite::Radial,
            "all" => Suite::All,
            _ => return Err(format!("unknown suite {s:?}; expected one of {}", Suite::NAMES.join(", "))),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = [Suite::Wigner, Suite::Recoupling, Suite::He, Suite::Li, Suite::Radial, Suite::All].iter().position(|s| s == self).unwrap();
        f.write_str(Suite::NAMES[i])
    }
}

/// Outcome of one check: how many cases ran, how many failed and the worst deviation.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub checked: usize,
    pub failures: usize,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_failure: Option<String>,
}

impl Check {
    fn new(name: &str, tolerance: f64) -> Self {
        Self { name: name.into(), checked: 0, failures: 0, max_deviation: 0.0, tolerance, passed: true, first_failure: None }
    }

    fn record(&mut self, deviation: f64, what: impl FnOnce() -> String) {
        self.checked += 1;
        if deviation > self.max_deviation || deviation.is_nan() {
            self.max_deviation = deviation;
        }
        // NaN deviations fail too
        if deviation.is_nan() || deviation > self.tolerance {
            self.failures += 1;
            self.passed = false;
            if self.first_failure.is_none() {
                self.first_failure = Some(what());
            }
        }
    }

    fn exact(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.record(if ok { 0.0 } else { 1.0 }, what);
    }

    fn merge(&mut self, other: Check) {
        self.checked += other.checked;
        self.failures += other.failures;
        if other.max_deviation > self.max_deviation || other.max_deviation.is_nan() {
            self.max_deviation = other.max_deviation;
        }
        self.passed &= other.passed;
        if self.first_failure.is_none() {
            self.first_failure = other.first_failure;
        }
    }

    fn finish(mut self) -> Self {
        if self.checked == 0 {
            self.passed = false;
            self.first_failure.get_or_insert_with(|| "no cases ran".into());
        }
        self
    }
}

/// Where a published transcription disagrees with the bundled (oracle-checked) graph.
#[derive(Clone, Debug, Serialize)]
pub struct Erratum {
    pub graph: String,
    pub checked: usize,
    pub mismatches: usize,
    pub agrees: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub passed: bool,
    /// Ratio oracle / closed form, identical for every term and channel when the suite passes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention_constant: Option<f64>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub errata: Vec<Erratum>,
}

pub fn run(suite: Suite) -> Report {
    let mut checks = Vec::new();
    let mut errata = Vec::new();
    let mut constant = None;
    let mut ratios = Ratios::default();
    let all = suite == Suite::All;
    if all || suite == Suite::Wigner {
        checks.push(six_j_exhaustive(4));
        checks.push(nine_j_exhaustive(4));
        checks.push(square_nine_j_unitarity(5));
    }
    if all || suite == Suite::Recoupling {
        checks.push(square_nine_j_vs_overlap(3));
        checks.push(two_electron_forms(3));
        checks.extend(graphs_vs_closed_forms(200, 11));
        errata.extend(published_errata());
    }
    if all || suite == Suite::He {
        checks.extend(oracle_suite(3, 2, &mut ratios));
    }
    if all || suite == Suite::Li {
        checks.extend(oracle_suite(4, 1, &mut ratios));
    }
    if all || suite == Suite::Radial {
        checks.extend(radial_checks());
    }
    if let Some(c) = ratios.finish() {
        constant = Some(c.0);
        checks.push(c.1);
    }
    let passed = checks.iter().all(|c| c.passed);
    Report { suite: suite.to_string(), passed, convention_constant: constant, checks, errata }
}

fn h(t: i32) -> HalfInt {
    HalfInt::from_twice(t)
}

/// 6-j from the Racah sum against the four-3-j contraction, all doubled arguments `<= max2`.
pub fn six_j_exhaustive(max2: i32) -> Check {
    let args: Vec<[HalfInt; 6]> = (0..(max2 + 1).pow(6))
        .map(|t| std::array::from_fn(|i| h(t / (max2 + 1).pow(i as u32) % (max2 + 1))))
        .filter(|j: &[HalfInt; 6]| triangle_ok(j[0], j[1], j[2]) && triangle_ok(j[0], j[4], j[5]) && triangle_ok(j[3], j[1], j[5]) && triangle_ok(j[3], j[4], j[2]))
        .collect();
    let mut c = Check::new("six_j_vs_contraction", 0.0);
    let results: Vec<(bool, [HalfInt; 6])> = args.par_iter().map(|j| (six_j(j[0], j[1], j[2], j[3], j[4], j[5]) == six_j_contraction(*j), *j)).collect();
    for (ok, j) in results {
        c.exact(ok, || format!("{j:?}"));
    }
    c.finish()
}

fn admissible_nine(max2: i32) -> Vec<[[HalfInt; 3]; 3]> {
    let vals: Vec<HalfInt> = (0..=max2).map(h).collect();
    let mut out = Vec::new();
    for &a in &vals {
        for &b in &vals {
            for &c in &vals {
                if !triangle_ok(a, b, c) {
                    continue;
                }
                for &d in &vals {
                    for &e in &vals {
                        for &f in &vals {
                            if !triangle_ok(d, e, f) {
                                continue;
                            }
                            for &g in &vals {
                                if !triangle_ok(a, d, g) {
                                    continue;
                                }
                                for &hh in &vals {
                                    if !triangle_ok(b, e, hh) {
                                        continue;
                                    }
                                    for &i in &vals {
                                        if triangle_ok(g, hh, i) && triangle_ok(c, f, i) {
                                            out.push([[a, b, c], [d, e, f], [g, hh, i]]);
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// 9-j from its single-sum formula against the six-3-j contraction, all doubled arguments `<= max2`.
pub fn nine_j_exhaustive(max2: i32) -> Check {
    let args = admissible_nine(max2);
    let results: Vec<(bool, [[HalfInt; 3]; 3])> = args.par_iter().map(|j| (nine_j(&NineJArgs::new(*j)) == nine_j_contraction(*j), *j)).collect();
    let mut c = Check::new("nine_j_vs_contraction", 0.0);
    for (ok, j) in results {
        c.exact(ok, || format!("{j:?}"));
    }
    c.finish()
}

/// Square 9-j against the projection-sum overlap of the two coupling schemes.
pub fn square_nine_j_vs_overlap(max2: i32) -> Check {
    let args = admissible_nine(max2);
    let results: Vec<(bool, [[HalfInt; 3]; 3])> = args.par_iter().map(|j| (square_nine_j(&NineJArgs::new(*j)) == square_nine_j_overlap(*j), *j)).collect();
    let mut c = Check::new("square_nine_j_vs_overlap", 0.0);
    for (ok, j) in results {
        c.exact(ok, || format!("{j:?}"));
    }
    c.finish()
}

/// `Σ_ef [a b e; c d f; g h i][a b e; c d f; g' h' i] = δ_gg' δ_hh'` exactly for
/// `a, b, c, d, i` with doubled value `<= max2`; `e, f, g, h` run over their full ranges.
pub fn square_nine_j_unitarity(max2: i32) -> Check {
    let mut blocks = Vec::new();
    for a in 0..=max2 {
        for b in 0..=max2 {
            for c in 0..=max2 {
                for d in 0..=max2 {
                    if (a + b + c + d) % 2 != 0 {
                        continue;
                    }
                    for i in 0..=max2 {
                        if (a + b + c + d + i) % 2 == 0 {
                            blocks.push([a, b, c, d, i].map(h));
                        }
                    }
                }
            }
        }
    }
    let results: Vec<Check> = blocks
        .par_iter()
        .map(|&[a, b, c, d, i]| {
            let mut chk = Check::new("", 0.0);
            let ef: Vec<(HalfInt, HalfInt)> = triangle_range(a, b).flat_map(|e| triangle_range(c, d).map(move |f| (e, f))).filter(|&(e, f)| triangle_ok(e, f, i)).collect();
            let gh: Vec<(HalfInt, HalfInt)> = triangle_range(a, c).flat_map(|g| triangle_range(b, d).map(move |hh| (g, hh))).filter(|&(g, hh)| triangle_ok(g, hh, i)).collect();
            let m: Vec<Vec<SqrtRational>> = gh.iter().map(|&(g, hh)| ef.iter().map(|&(e, f)| square_nine_j(&NineJArgs::new([[a, b, e], [c, d, f], [g, hh, i]]))).collect()).collect();
            for x in 0..gh.len() {
                for y in x..gh.len() {
                    let s = m[x].iter().zip(&m[y]).fold(SqrtRational::zero(), |acc, (p, q)| &acc + &(p * q));
                    let want = if x == y { SqrtRational::one() } else { SqrtRational::zero() };
                    chk.exact(s == want, || format!("a b c d i = {a} {b} {c} {d} {i}; (g h) = {:?} / {:?}: sum {s}", gh[x], gh[y]));
                }
            }
            chk
        })
        .collect();
    let mut c = Check::new("square_nine_j_unitarity", 0.0);
    for r in results {
        c.merge(r);
    }
    c.finish()
}

/// Relative deviation with a unit floor, so float noise around an exact zero
/// is measured on the scale of the O(1) values it sits among.
fn relative(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(1.0)
}

/// Box-chain two-electron element against the 3-j/6-j form, all ranks `<= lmax`,
/// with bare Slater integrals (reconciliation constant 1).
pub fn two_electron_forms(lmax: i32) -> Check {
    let mut c = Check::new("two_electron_box_chain_vs_three_j_six_j", 1e-12);
    let radial = |lam: u32| 1.0 / f64::from(lam + 1);
    let n = lmax + 1;
    for t in 0..n.pow(5) {
        let v: [HalfInt; 5] = std::array::from_fn(|i| h(2 * (t / n.pow(i as u32) % n)));
        let a = direct_two_electron(v[0], v[1], v[2], v[3], v[4], &radial).expect("integer ranks");
        let b = direct_two_electron_cowan(v[0], v[1], v[2], v[3], v[4], &radial).expect("integer ranks");
        let exact_ok = a.exact_angular() == b.exact_angular();
        let dev = if exact_ok { relative(a.total, b.total) } else { f64::INFINITY };
        c.record(dev, || format!("ranks {v:?}: {} vs {}", a.total, b.total));
    }
    c.finish()
}

fn exact_total(r: &MatElResult) -> SqrtRational {
    r.terms.iter().fold(SqrtRational::zero(), |acc, t| &acc + &t.exact)
}

fn graph_value(g: &RecouplingGraph, a: &BTreeMap<String, HalfInt>) -> Result<SqrtRational, String> {
    let v = g.evaluate(a).map_err(|e| e.to_string())?;
    v.total.into_surd().map_err(|e| e.to_string())
}

type ElementFn = fn(Term, &Channel, &Channel, &dyn RadialProvider, f64) -> Result<MatElResult, MatElError>;

fn element_fn(electrons: usize) -> ElementFn {
    if electrons == 3 {
        he_element
    } else {
        li_element
    }
}

fn spin_value(spin: Option<&RecouplingGraph>, a: &BTreeMap<String, HalfInt>, bra: &Channel, ket: &Channel) -> Result<SqrtRational, String> {
    match spin {
        Some(g) => graph_value(g, a),
        None if bra.s == ket.s && bra.s23 == ket.s23 => Ok(SqrtRational::one()),
        None => Ok(SqrtRational::zero()),
    }
}

/// Random admissible channel pairs with matching `L` and `S`.
fn random_pairs(chans: &[Channel], count: usize, rng: &mut StdRng) -> Vec<(Channel, Channel)> {
    (0..count)
        .map(|_| {
            let bra = &chans[rng.gen_range(0..chans.len())];
            let same: Vec<&Channel> = chans.iter().filter(|c| c.total_l == bra.total_l && c.total_s == bra.total_s).collect();
            (bra.clone(), same[rng.gen_range(0..same.len())].clone())
        })
        .collect()
}

/// Each bundled graph evaluated exactly against the hand-coded closed form at
/// `count` random admissible assignments.
pub fn graphs_vs_closed_forms(count: usize, seed: u64) -> Vec<Check> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();

    let g = library_graph("two_electron_direct").expect("bundled");
    let mut c = Check::new("graph_two_electron_direct", 0.0);
    let mut tries = 0;
    while c.checked < count && tries < 100 * count {
        tries += 1;
        let v: [HalfInt; 5] = std::array::from_fn(|_| h(2 * rng.gen_range(0..=3)));
        if !triangle_ok(v[0], v[1], v[4]) || !triangle_ok(v[2], v[3], v[4]) {
            continue;
        }
        let a: BTreeMap<String, HalfInt> = ["la'", "lb'", "la", "lb", "l"].iter().map(|s| s.to_string()).zip(v).collect();
        let m = exact_total(&direct_two_electron(v[0], v[1], v[2], v[3], v[4], &|_| 1.0).expect("integer ranks"));
        let gv = graph_value(&g, &a);
        c.exact(gv.as_ref() == Ok(&m), || format!("{v:?}: graph {gv:?}, closed form {m}"));
    }
    out.push(c.finish());

    for (electrons, lmax) in [(3usize, 2u32), (4, 1)] {
        let chans = Channel::enumerate(electrons, lmax);
        let element = element_fn(electrons);
        for &(term, name, spin) in term_graphs(electrons) {
            let orbit = library_graph(name).expect("bundled");
            let spin = spin.map(|s| library_graph(s).expect("bundled"));
            let pairs = random_pairs(&chans, count, &mut rng);
            let results: Vec<(bool, String)> = pairs
                .par_iter()
                .map(|(bra, ket)| {
                    let a = channel_assignment(bra, ket);
                    let m = element(term, bra, ket, &crate::matel::UnitRadial, 1.0).map(|r| exact_total(&r));
                    let g = graph_value(&orbit, &a).and_then(|o| spin_value(spin.as_ref(), &a, bra, ket).map(|s| &o * &s));
                    let ok = matches!((&m, &g), (Ok(x), Ok(y)) if x == y);
                    (ok, format!("bra {} ket {}: closed form {m:?} graph {g:?}", bra.label(), ket.label()))
                })
                .collect();
            let mut c = Check::new(&format!("graph_{name}"), 0.0);
            for (ok, msg) in results {
                c.exact(ok, || msg);
            }
            out.push(c.finish());
        }
    }
    out
}

/// Compares every published transcription with the bundled graph of the same
/// name over all channel pairs of ranks `<= 1`.
pub fn published_errata() -> Vec<Erratum> {
    let mut out = Vec::new();
    {
        let (good, printed) = (library_graph("two_electron_direct").unwrap(), published_graph("two_electron_direct").unwrap());
        let mut e = Erratum { graph: "two_electron_direct".into(), checked: 0, mismatches: 0, agrees: true, first_mismatch: None };
        for t in 0..4i32.pow(5) {
            let v: [HalfInt; 5] = std::array::from_fn(|i| h(2 * (t / 4i32.pow(i as u32) % 4)));
            if !triangle_ok(v[0], v[1], v[4]) || !triangle_ok(v[2], v[3], v[4]) {
                continue;
            }
            let a: BTreeMap<String, HalfInt> = ["la'", "lb'", "la", "lb", "l"].iter().map(|s| s.to_string()).zip(v).collect();
            erratum_case(&mut e, &good, &printed, &a, || format!("{v:?}"));
        }
        out.push(e);
    }
    for electrons in [3usize, 4] {
        let chans = Channel::enumerate(electrons, 1);
        let mut names: Vec<&str> = term_graphs(electrons).iter().map(|t| t.1).collect();
        names.push(if electrons == 3 { "he_spin_exchange" } else { "li_spin_exchange" });
        for name in names {
            let (good, printed) = (library_graph(name).unwrap(), published_graph(name).unwrap());
            let mut e = Erratum { graph: name.into(), checked: 0, mismatches: 0, agrees: true, first_mismatch: None };
            for bra in &chans {
                for ket in &chans {
                    if bra.total_l != ket.total_l || bra.total_s != ket.total_s {
                        continue;
                    }
                    let a = channel_assignment(bra, ket);
                    erratum_case(&mut e, &good, &printed, &a, || format!("bra {} ket {}", bra.label(), ket.label()));
                }
            }
            out.push(e);
        }
    }
    out
}

fn erratum_case(e: &mut Erratum, good: &RecouplingGraph, printed: &RecouplingGraph, a: &BTreeMap<String, HalfInt>, what: impl FnOnce() -> String) {
    e.checked += 1;
    let x = graph_value(good, a);
    let y = graph_value(printed, a);
    if x != y {
        e.mismatches += 1;
        e.agrees = false;
        if e.first_mismatch.is_none() {
            let show = |r: &Result<SqrtRational, String>| match r {
                Ok(v) => v.to_string(),
                Err(s) => format!("error: {s}"),
            };
            e.first_mismatch = Some(format!("{}: expected {}, published form gives {}", what(), show(&x), show(&y)));
        }
    }
}

/// Running record of oracle / closed-form ratios across suites.
#[derive(Default)]
pub struct Ratios {
    first: Option<f64>,
    check: Option<Check>,
}

impl Ratios {
    fn add(&mut self, closed: f64, oracle: f64, what: impl FnOnce() -> String) {
        let c = self.check.get_or_insert_with(|| Check::new("convention_constant_uniform", 1e-10));
        let tiny = 1e-13 * (1.0 + closed.abs().max(oracle.abs()));
        if closed.abs() < tiny && oracle.abs() < tiny {
            return;
        }
        if closed.abs() < tiny || oracle.abs() < tiny {
            c.record(f64::INFINITY, what);
            return;
        }
        let r = oracle / closed;
        let first = *self.first.get_or_insert(r);
        c.record((r / first - 1.0).abs(), what);
    }

    pub fn finish(self) -> Option<(f64, Check)> {
        Some((self.first.unwrap_or(f64::NAN), self.check?.finish()))
    }
}

fn per_lambda_closed(r: &MatElResult) -> BTreeMap<u32, f64> {
    let mut m = BTreeMap::new();
    for t in &r.terms {
        *m.entry(t.term.lambda.as_integer().unwrap_or(0) as u32).or_insert(0.0) += t.value();
    }
    m
}

fn per_lambda_oracle(r: &OracleResult) -> BTreeMap<u32, f64> {
    let mut m = BTreeMap::new();
    for t in &r.terms {
        *m.entry(t.lambda).or_insert(0.0) += t.angular * t.radial;
    }
    m
}

const ENERGY: f64 = 1.3;

fn oracle_op(term: Term) -> OracleOperator {
    match term {
        Term::V01Direct | Term::V01Exch => OracleOperator::Coulomb(0, 1),
        Term::V02Exch => OracleOperator::Coulomb(0, 2),
        Term::V12Exch => OracleOperator::Coulomb(1, 2),
        Term::V23Exch => OracleOperator::Coulomb(2, 3),
        Term::EExch => OracleOperator::Energy(ENERGY),
    }
}

/// Which closed form a row of the oracle suite exercises.
#[derive(Clone, Copy, Debug)]
enum Row {
    Term(Term),
    NuclearExch,
    NuclearDirect,
}

impl Row {
    fn name(self) -> String {
        match self {
            Row::Term(t) => t.name().into(),
            Row::NuclearExch => "nuclear_exch".into(),
            Row::NuclearDirect => "one_body_nuclear".into(),
        }
    }
}

/// Every term of the `electrons`-electron system against the projection-sum
/// oracle for all channel pairs with ranks `<= lmax`, per multipole, with the
/// pairing-sensitive radial stand-in. Ratios feed the shared convention constant.
pub fn oracle_suite(electrons: usize, lmax: u32, ratios: &mut Ratios) -> Vec<Check> {
    let chans = Channel::enumerate(electrons, lmax);
    let element = element_fn(electrons);
    let mut rows: Vec<Row> = match electrons {
        3 => Term::HE.iter().map(|&t| Row::Term(t)).collect(),
        _ => Term::LI.iter().map(|&t| Row::Term(t)).collect(),
    };
    rows.push(Row::NuclearExch);
    rows.push(Row::NuclearDirect);
    let pairs: Vec<(&Channel, Channel)> = chans
        .iter()
        .flat_map(|bra| chans.iter().filter(move |k| k.total_l == bra.total_l && k.total_s == bra.total_s).map(move |k| (bra, Channel { k: 1.7, ..k.clone() })))
        .collect();
    let prefix = if electrons == 3 { "he" } else { "li" };
    let mut out = Vec::new();
    for row in rows {
        type Cmp = Vec<(u32, f64, f64)>;
        let results: Vec<Result<Cmp, String>> = pairs
            .par_iter()
            .map(|(bra, ket)| {
                let r = &TaggedRadial;
                let (closed, oracle) = match row {
                    Row::Term(t) => (element(t, bra, ket, r, ENERGY), brute_force_terms(oracle_op(t), t.is_exchange(), bra, ket, r)),
                    Row::NuclearExch => (nuclear_exch(bra, ket, r), brute_force_terms(OracleOperator::InverseR0, true, bra, ket, r)),
                    Row::NuclearDirect => (one_body_nuclear(bra, ket, r), brute_force_terms(OracleOperator::InverseR0, false, bra, ket, r)),
                };
                let what = || format!("bra {} ket {}", bra.label(), ket.label());
                let closed = closed.map_err(|e| format!("{}: closed form failed: {e}", what()))?;
                let oracle = oracle.map_err(|e| format!("{}: oracle failed: {e}", what()))?;
                let (a, b) = (per_lambda_closed(&closed), per_lambda_oracle(&oracle));
                let keys: std::collections::BTreeSet<u32> = a.keys().chain(b.keys()).copied().collect();
                Ok(keys.into_iter().map(|k| (k, a.get(&k).copied().unwrap_or(0.0), b.get(&k).copied().unwrap_or(0.0))).collect())
            })
            .collect();
        let mut c = Check::new(&format!("{prefix}_{}_vs_oracle", row.name()), 1e-10);
        for ((bra, ket), res) in pairs.iter().zip(results) {
            match res {
                Ok(cmp) => {
                    for (lam, x, y) in cmp {
                        let what = || format!("{} lambda={lam} bra {} ket {}: closed {x} oracle {y}", row.name(), bra.label(), ket.label());
                        c.record(relative(x, y), what);
                        ratios.add(x, y, what);
                    }
                }
                Err(msg) => c.record(f64::INFINITY, || msg),
            }
        }
        out.push(c.finish());
    }
    out
}

/// Quadrature checks on the default grid: `F0(1s,1s) = 5Z/8`, grid doubling,
/// normalization, orthogonality, `<1s|1/r|1s> = Z` and kernel monotonicity.
pub fn radial_checks() -> Vec<Check> {
    let grid = Arc::new(RadialGrid::new(GridSpec::default()).expect("default grid"));
    let fine = Arc::new(RadialGrid::new(GridSpec::default().refined()).expect("refined grid"));
    let mut f0 = Check::new("slater_f0_1s_equals_5z_over_8", 1e-8);
    let mut doubling = Check::new("grid_doubling_change", 4e-8);
    let mut norm = Check::new("bound_normalization_and_orthogonality", 1e-8);
    let mut inv = Check::new("inverse_r_1s_equals_z", 1e-10);
    let mut mono = Check::new("slater_decreases_with_lambda", 0.0);
    for z in [1.0, 2.0, 3.0] {
        let s = make_hydrogenic(1, 0, z, &grid).unwrap().f;
        let v = slater_integral(0, &s, &s, &s, &s).unwrap();
        f0.record((v - 0.625 * z).abs(), || format!("Z={z}: {v}"));
        let sf = make_hydrogenic(1, 0, z, &fine).unwrap().f;
        let vf = slater_integral(0, &sf, &sf, &sf, &sf).unwrap();
        doubling.record((v - vf).abs(), || format!("Z={z}: {v} vs {vf}"));
        let vi = inverse_r(&s, &s).unwrap();
        inv.record((vi - z).abs(), || format!("Z={z}: {vi}"));
        let orbitals: Vec<_> = [(1, 0), (2, 0), (2, 1), (3, 0), (3, 1), (3, 2)].iter().map(|&(n, l)| make_hydrogenic(n, l, z, &grid).unwrap()).collect();
        for a in &orbitals {
            for b in &orbitals {
                if a.l != b.l {
                    continue;
                }
                let want = if a.n == b.n { 1.0 } else { 0.0 };
                let got = overlap(&a.f, &b.f).unwrap();
                norm.record((got - want).abs(), || format!("Z={z} <{}{}|{}{}> = {got}", a.n, a.l, b.n, b.l));
            }
        }
        let p = make_hydrogenic(2, 1, z, &grid).unwrap().f;
        let w = make_free_wave(0.8, 2, &grid).unwrap().f;
        for (x, y) in [(&s, &s), (&p, &p), (&s, &p)] {
            let vals: Vec<f64> = (0..5).map(|lam| slater_integral(lam, x, x, y, y).unwrap()).collect();
            for k in 1..vals.len() {
                mono.exact(vals[k] < vals[k - 1] && vals[k] > 0.0, || format!("Z={z}: {vals:?}"));
            }
        }
        let sw = slater_integral(1, &s, &s, &w, &w).unwrap();
        mono.exact(sw.is_finite(), || format!("Z={z}: bound-free Slater {sw}"));
    }
    vec![f0.finish(), doubling.finish(), norm.finish(), inv.finish(), mono.finish()]
}
