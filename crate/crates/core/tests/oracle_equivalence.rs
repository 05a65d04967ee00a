//! Closed-form matrix elements against the projection-sum oracle and the
//! bundled recoupling graphs.

mod common;

use common::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use recouple::exactnum::SqrtRational;
use recouple::matel::{he_element, li_element, nuclear_exch, one_body_nuclear, Channel, MatElResult, Term, UnitRadial};
use recouple::oracle::{brute_force_terms, OracleOperator, OracleResult};
use recouple::recoupling::library_graph;

fn op_of(term: Term) -> OracleOperator {
    match term {
        Term::V01Direct | Term::V01Exch => OracleOperator::Coulomb(0, 1),
        Term::V02Exch => OracleOperator::Coulomb(0, 2),
        Term::V12Exch => OracleOperator::Coulomb(1, 2),
        Term::V23Exch => OracleOperator::Coulomb(2, 3),
        Term::EExch => OracleOperator::Energy(1.3),
    }
}

fn matel_map(r: &MatElResult) -> std::collections::BTreeMap<u32, f64> {
    per_lambda(r.terms.iter().map(|t| (t.term.lambda.as_integer().unwrap() as u32, t.value())))
}

fn oracle_map(r: &OracleResult) -> std::collections::BTreeMap<u32, f64> {
    per_lambda(r.terms.iter().map(|t| (t.lambda, t.angular * t.radial)))
}

fn moved(c: &Channel) -> Channel {
    Channel { k: 1.7, ..c.clone() }
}

type Element = fn(Term, &Channel, &Channel, &dyn recouple::matel::RadialProvider, f64) -> Result<MatElResult, recouple::matel::MatElError>;

fn sweep(element: Element, terms: &[Term], chans: &[Channel], stride: usize) {
    let mut checked = 0;
    let mut idx = 0usize;
    for bra in chans {
        for ket in chans {
            if bra.total_l != ket.total_l || bra.total_s != ket.total_s {
                continue;
            }
            idx += 1;
            if !idx.is_multiple_of(stride) {
                continue;
            }
            let ket = moved(ket);
            for &term in terms {
                let m = element(term, bra, &ket, &Fingerprint, 1.3).unwrap();
                let o = brute_force_terms(op_of(term), term.is_exchange(), bra, &ket, &Fingerprint).unwrap();
                assert!(close(&matel_map(&m), &oracle_map(&o), 1e-10), "{term}\n bra {}\n ket {}\n matel {:?}\n oracle {:?}", bra.label(), ket.label(), matel_map(&m), oracle_map(&o));
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn three_electron_terms_match_oracle() {
    sweep(he_element, &Term::HE, &he_channels(1), 1);
}

#[test]
fn three_electron_terms_match_oracle_rank_two() {
    sweep(he_element, &Term::HE, &he_channels(2), 37);
}

#[test]
fn four_electron_terms_match_oracle() {
    sweep(li_element, &Term::LI, &li_channels(1), 7);
}

#[test]
fn nuclear_terms_match_oracle() {
    for chans in [he_channels(1), li_channels(1)] {
        for (i, bra) in chans.iter().enumerate().step_by(3) {
            for ket in chans.iter().skip(i % 5).step_by(5) {
                let ket = moved(ket);
                let x = nuclear_exch(bra, &ket, &Fingerprint).unwrap().total;
                let y = brute_force_terms(OracleOperator::InverseR0, true, bra, &ket, &Fingerprint).unwrap().total;
                assert!((x - y).abs() < 1e-10 * (1.0 + y.abs()), "{} {}: {x} vs {y}", bra.label(), ket.label());
                let x = one_body_nuclear(bra, &ket, &Fingerprint).unwrap().total;
                let y = brute_force_terms(OracleOperator::InverseR0, false, bra, &ket, &Fingerprint).unwrap().total;
                assert!((x - y).abs() < 1e-10 * (1.0 + y.abs()), "{} {}: {x} vs {y}", bra.label(), ket.label());
            }
        }
    }
}

fn graph_total(name: &str, spin: Option<&str>, bra: &Channel, ket: &Channel) -> SqrtRational {
    let a = assign(bra, ket);
    let orbit = library_graph(name).unwrap().evaluate(&a).unwrap().total.into_surd().unwrap();
    match spin {
        Some(s) => &orbit * &library_graph(s).unwrap().evaluate(&a).unwrap().total.into_surd().unwrap(),
        None if bra.s == ket.s && bra.s23 == ket.s23 => orbit,
        None => SqrtRational::zero(),
    }
}

fn exact_sum(r: &MatElResult) -> SqrtRational {
    r.terms.iter().fold(SqrtRational::zero(), |acc, t| &acc + &t.exact)
}

#[test]
fn graphs_equal_closed_forms_exactly() {
    let he = he_channels(2);
    let li = li_channels(1);
    let he_graphs = [
        (Term::V01Direct, "he_v01_direct", None),
        (Term::V01Exch, "he_v01_exchange", Some("he_spin_exchange")),
        (Term::V02Exch, "he_v02_exchange", Some("he_spin_exchange")),
        (Term::V12Exch, "he_v12_exchange", Some("he_spin_exchange")),
        (Term::EExch, "he_overlap_exchange", Some("he_spin_exchange")),
    ];
    let li_graphs = [
        (Term::V01Direct, "li_v01_direct", None),
        (Term::V01Exch, "li_v01_exchange", Some("li_spin_exchange")),
        (Term::V02Exch, "li_v02_exchange", Some("li_spin_exchange")),
        (Term::V12Exch, "li_v12_exchange", Some("li_spin_exchange")),
        (Term::V23Exch, "li_v23_exchange", Some("li_spin_exchange")),
        (Term::EExch, "li_overlap_exchange", Some("li_spin_exchange")),
    ];
    let mut rng = StdRng::seed_from_u64(7);
    let mut nonzero = 0;
    for _ in 0..200 {
        let (chans, table, element): (&[Channel], &[_], Element) = if rng.gen_bool(0.5) { (&he, &he_graphs[..], he_element) } else { (&li, &li_graphs[..], li_element) };
        let bra = &chans[rng.gen_range(0..chans.len())];
        let same: Vec<&Channel> = chans.iter().filter(|c| c.total_l == bra.total_l && c.total_s == bra.total_s).collect();
        let ket = same[rng.gen_range(0..same.len())];
        for (term, name, spin) in table {
            let m = element(*term, bra, ket, &UnitRadial, 1.0).unwrap();
            let g = graph_total(name, *spin, bra, ket);
            let ex = exact_sum(&m);
            assert_eq!(ex, g, "{name}\n bra {}\n ket {}", bra.label(), ket.label());
            nonzero += usize::from(!g.is_zero());
        }
    }
    assert!(nonzero > 50, "only {nonzero} nonzero comparisons");
}
