//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.
//!
//! Built with `harness = false` so the lines are always printed, also under a
//! plain `cargo test`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use recouple::exactnum::{triangle_ok, HalfInt, SqrtRational};
use recouple::matel::{
    assemble_v, direct_two_electron, he_element, li_element, nuclear_exch, one_body_nuclear, spin_block_3e, spin_block_4e, Channel, MatElError, MatElResult, Term,
};
use recouple::oracle::{spin_overlap, TaggedRadial};
use recouple::verify::{self, Check, Ratios};

struct Outcome {
    passed: bool,
    detail: String,
}

fn h(t: i32) -> HalfInt {
    HalfInt::from_twice(t)
}

fn summarize(checks: &[Check]) -> Outcome {
    let passed = checks.iter().all(|c| c.passed);
    let cases: usize = checks.iter().map(|c| c.checked).sum();
    let worst = checks.iter().map(|c| c.max_deviation).fold(0.0, f64::max);
    let mut detail = format!("{} checks, {cases} cases, max deviation {worst:.2e}", checks.len());
    for c in checks.iter().filter(|c| !c.passed) {
        detail += &format!("; {} failed {}/{} (first: {})", c.name, c.failures, c.checked, c.first_failure.as_deref().unwrap_or("-"));
    }
    Outcome { passed, detail }
}

fn wigner_kernel() -> Outcome {
    summarize(&[verify::six_j_exhaustive(4), verify::nine_j_exhaustive(4)])
}

fn unitarity() -> Outcome {
    summarize(&[verify::square_nine_j_unitarity(5)])
}

fn two_electron_forms() -> Outcome {
    let o = summarize(&[verify::two_electron_forms(3)]);
    Outcome { detail: format!("{}, reconciliation constant 1", o.detail), ..o }
}

fn with_constant(mut checks: Vec<Check>, ratios: Ratios) -> Outcome {
    let constant = match ratios.finish() {
        Some((c, check)) => {
            checks.push(check);
            c
        }
        None => f64::NAN,
    };
    let o = summarize(&checks);
    Outcome { passed: o.passed && constant.is_finite(), detail: format!("{}, convention constant {constant}", o.detail) }
}

fn he_suite() -> Outcome {
    let mut ratios = Ratios::default();
    let checks = verify::oracle_suite(3, 2, &mut ratios);
    with_constant(checks, ratios)
}

fn li_suite() -> Outcome {
    // He rides along so the constant is shown to be shared by both systems.
    let mut ratios = Ratios::default();
    let mut checks = verify::oracle_suite(4, 1, &mut ratios);
    checks.extend(verify::oracle_suite(3, 1, &mut ratios));
    with_constant(checks, ratios)
}

fn graphs() -> Outcome {
    summarize(&verify::graphs_vs_closed_forms(200, 20260615))
}

fn spin_blocks() -> Outcome {
    let mut bad = Vec::new();
    let mut cases = 0;
    let mut expect = |what: String, got: SqrtRational, want: SqrtRational| {
        cases += 1;
        if got != want {
            bad.push(format!("{what}: {got} vs {want}"));
        }
    };
    let one = SqrtRational::one();
    expect("3e stretched".into(), spin_block_3e(h(2), h(2), h(3)), one.clone());
    expect("4e stretched".into(), spin_block_4e(h(3), h(3), h(4), h(2)), one.clone());
    expect("3e s=0 s'=0 S=1/2".into(), spin_block_3e(h(0), h(0), h(1)), "1/2".parse().unwrap());

    for (electrons, block) in [(3usize, None), (4, Some(()))] {
        let chans = Channel::enumerate(electrons, 0);
        for bra in &chans {
            for ket in chans.iter().filter(|k| k.total_s == bra.total_s) {
                let closed = match block {
                    None => spin_block_3e(ket.s, bra.s, ket.total_s),
                    Some(()) if bra.s23 == ket.s23 => spin_block_4e(ket.s, bra.s, ket.total_s, ket.s23.unwrap()),
                    Some(()) => SqrtRational::zero(),
                };
                for ms in (0..=ket.total_s.twice()).map(|k| h(ket.total_s.twice() - 2 * k)) {
                    let sum = spin_overlap(bra, ket, true, ms).expect("admissible projection");
                    expect(format!("{electrons}e bra {} ket {} ms {ms}", bra.label(), ket.label()), closed.clone(), sum);
                }
            }
        }
    }
    Outcome { passed: bad.is_empty(), detail: format!("{cases} exact comparisons{}", bad.first().map(|b| format!(", first mismatch {b}")).unwrap_or_default()) }
}

fn radial() -> Outcome {
    let checks: Vec<Check> = verify::radial_checks().into_iter().filter(|c| c.name == "slater_f0_1s_equals_5z_over_8" || c.name == "grid_doubling_change").collect();
    summarize(&checks)
}

fn parity(c: &Channel) -> i32 {
    (c.orbital_ls().iter().map(|l| l.twice()).sum::<i32>() / 2).rem_euclid(2)
}

/// A channel pair breaking one delta, parity or triangle rule of the elements.
fn violating_pair(rng: &mut StdRng, chans: &[Channel]) -> (Channel, Channel, &'static str) {
    loop {
        let bra = chans[rng.gen_range(0..chans.len())].clone();
        let four = bra.electrons() == 4;
        let kind = rng.gen_range(0..5);
        let pool: Vec<&Channel> = match kind {
            0 => chans.iter().filter(|c| c.total_l != bra.total_l).collect(),
            1 => chans.iter().filter(|c| c.total_s != bra.total_s).collect(),
            2 => chans.iter().filter(|c| c.total_l == bra.total_l && c.total_s == bra.total_s && parity(c) != parity(&bra)).collect(),
            _ => vec![&bra],
        };
        if pool.is_empty() {
            continue;
        }
        let ket = pool[rng.gen_range(0..pool.len())].clone();
        return match kind {
            0 => (bra, ket, "total L delta"),
            1 => (bra, ket, "total S delta"),
            2 => (bra, ket, "parity"),
            3 => {
                let mut c = bra;
                match rng.gen_range(0..3) {
                    0 => c.total_l = c.l0 + c.l + HalfInt::ONE,
                    1 if four => c.l23 = Some(c.orbital_l(2) + c.orbital_l(3) + HalfInt::ONE),
                    _ => c.l = c.target.iter().fold(HalfInt::ONE, |a, t| a + t.l),
                }
                (c.clone(), c, "orbital triangle")
            }
            _ => {
                let mut c = bra;
                if four && rng.gen_bool(0.5) {
                    c.s23 = Some(h(4));
                } else {
                    c.s = if four { h(5) } else { h(4) };
                }
                (c.clone(), c, "spin triangle")
            }
        };
    }
}

fn elements(bra: &Channel, ket: &Channel) -> Vec<(String, Result<MatElResult, MatElError>)> {
    let r = &TaggedRadial;
    let (terms, element): (&[Term], fn(Term, &Channel, &Channel, &dyn recouple::matel::RadialProvider, f64) -> _) =
        if bra.electrons() == 3 { (&Term::HE, he_element) } else { (&Term::LI, li_element) };
    let mut out: Vec<(String, Result<MatElResult, MatElError>)> = terms.iter().map(|&t| (t.name().to_string(), element(t, bra, ket, r, 1.3))).collect();
    out.push(("nuclear_exch".into(), nuclear_exch(bra, ket, r)));
    out.push(("one_body_nuclear".into(), one_body_nuclear(bra, ket, r)));
    out.push(("v".into(), assemble_v(bra, ket, r, 1.3, bra.electrons() - 1)));
    out
}

fn selection_fuzz() -> Outcome {
    let mut rng = StdRng::seed_from_u64(9);
    let he = Channel::enumerate(3, 2);
    let li = Channel::enumerate(4, 1);
    let mut bad = Vec::new();
    let mut evaluated = 0;
    for i in 0..1000 {
        if i % 5 == 4 {
            // two-electron direct form with a broken triangle or parity
            let v: [HalfInt; 5] = loop {
                let v: [HalfInt; 5] = std::array::from_fn(|_| h(2 * rng.gen_range(0..=4)));
                let tri = triangle_ok(v[0], v[1], v[4]) && triangle_ok(v[2], v[3], v[4]);
                let par = (v[0] + v[1] + v[2] + v[3]).twice() % 4 == 0;
                if !(tri && par) {
                    break v;
                }
            };
            let r = direct_two_electron(v[0], v[1], v[2], v[3], v[4], &|lam| 1.0 + f64::from(lam));
            evaluated += 1;
            if !matches!(&r, Ok(r) if r.is_exact_zero()) {
                bad.push(format!("two-electron {v:?}: {r:?}"));
            }
            continue;
        }
        let chans = if i % 2 == 0 { &he } else { &li };
        let (bra, ket, kind) = violating_pair(&mut rng, chans);
        for (name, r) in elements(&bra, &ket) {
            evaluated += 1;
            if !matches!(&r, Ok(r) if r.is_exact_zero()) {
                bad.push(format!("{kind}: {name} bra {} ket {}: {r:?}", bra.label(), ket.label()));
            }
        }
    }
    Outcome {
        passed: bad.is_empty(),
        detail: format!("1000 violating inputs, {evaluated} evaluations, {} non-zero{}", bad.len(), bad.first().map(|b| format!(" (first: {b})")).unwrap_or_default()),
    }
}

fn determinism() -> Outcome {
    let config = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/e_li.json");
    let run = |threads: &str| {
        let out = Command::new(env!("CARGO_BIN_EXE_recouple")).args(["matel", config, "--threads", threads]).output().expect("run recouple");
        (out.status.success(), out.stdout)
    };
    let runs: Vec<(&str, (bool, Vec<u8>))> = ["1", "1", "2", "4"].iter().map(|&t| (t, run(t))).collect();
    let reference = &runs[0].1 .1;
    let mut passed = !reference.is_empty();
    let mut detail = format!("{} bytes", reference.len());
    for (t, (ok, bytes)) in &runs {
        if !ok || bytes != reference {
            passed = false;
            detail += &format!("; run with {t} threads differs (exit ok {ok})");
        }
    }
    let in_process = recouple::cli::matel_file(std::path::Path::new(config), 3).map(String::into_bytes);
    if !matches!(&in_process, Ok(b) if b == reference) {
        passed = false;
        detail += "; library call differs from binary output";
    }
    Outcome { passed, detail: format!("{detail}, 4 process runs and 1 library run") }
}

fn main() -> ExitCode {
    let criteria: [(&str, Option<Duration>, fn() -> Outcome); 10] = [
        ("6-j and 9-j sum formulas equal CG contractions, doubled args <= 4", Some(Duration::from_secs(60)), wigner_kernel),
        ("square 9-j unitarity, args <= 5/2", Some(Duration::from_secs(60)), unitarity),
        ("box-chain and 3-j/6-j two-electron forms agree, ranks <= 3", Some(Duration::from_secs(30)), two_electron_forms),
        ("e-He terms match the projection-sum oracle, ranks <= 2", Some(Duration::from_secs(300)), he_suite),
        ("e-Li terms match the projection-sum oracle, ranks <= 1", Some(Duration::from_secs(600)), li_suite),
        ("recoupling graphs equal closed forms at 200 assignments each", Some(Duration::from_secs(120)), graphs),
        ("spin blocks: stretched, singlet pair and full projection tables", None, spin_blocks),
        ("F0(1s,1s) = 5Z/8 and grid doubling", None, radial),
        ("selection-rule fuzz returns exact zeros", None, selection_fuzz),
        ("matel output byte-identical across runs and thread counts", None, determinism),
    ];
    let mut failed = 0;
    for (i, (what, budget, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = f();
        let took = start.elapsed();
        let in_time = budget.map_or(true, |b| took <= b);
        let ok = o.passed && in_time;
        if !ok {
            failed += 1;
        }
        let limit = budget.map(|b| format!(" / {} s", b.as_secs())).unwrap_or_default();
        println!("criterion {:>2} {} {what}: {} [{:.1} s{limit}]", i + 1, if ok { "PASS" } else { "FAIL" }, o.detail, took.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
