mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use recouple::exactnum::{triangle_ok, triangle_range, HalfInt, SqrtRational};
use recouple::matel::{he_element, li_element, multipole_kernel, Channel, Term};
use recouple::recoupling::{evaluate_graph, library_graph, parse_graph, recouple_four, write_graph, LIBRARY};
use recouple::wigner::{clebsch_gordan, nine_j, triple_y, NineJArgs};

use common::{h, Fingerprint};

/// Nine doubled momenta up to `max2` with all six triads admissible.
fn admissible_nine(max2: i32) -> impl Strategy<Value = [[i32; 3]; 3]> {
    prop::array::uniform9(0..=max2)
        .prop_map(|t| [[t[0], t[1], t[2]], [t[3], t[4], t[5]], [t[6], t[7], t[8]]])
        .prop_filter("admissible triads", |m| NineJArgs::new(m.map(|r| r.map(h))).triads_ok())
}

fn args(m: [[i32; 3]; 3]) -> NineJArgs {
    NineJArgs::new(m.map(|r| r.map(h)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn nine_j_transpose_invariant(m in admissible_nine(6)) {
        let a = args(m);
        prop_assert_eq!(nine_j(&a), nine_j(&a.transpose()));
    }

    #[test]
    fn nine_j_row_swap_sign(m in admissible_nine(6)) {
        let swapped = [m[1], m[0], m[2]];
        let sum: i32 = m.iter().flatten().sum::<i32>() / 2;
        let sign = if sum % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(nine_j(&args(swapped)), nine_j(&args(m)).scale_int(sign));
    }

    #[test]
    fn triple_y_symmetric_and_selective(l in 0..5i32, k in 0..5i32, j in 0..5i32) {
        let (l, k, j) = (h(2 * l), h(2 * k), h(2 * j));
        let v = triple_y(l, k, j).unwrap();
        for p in [(l, j, k), (k, l, j), (k, j, l), (j, l, k), (j, k, l)] {
            prop_assert_eq!(&triple_y(p.0, p.1, p.2).unwrap(), &v);
        }
        let allowed = triangle_ok(l, k, j) && (l + k + j).twice() % 4 == 0;
        prop_assert_eq!(v.is_zero(), !allowed);
    }

    #[test]
    fn recoupling_box_is_unitary(a in 0..4i32, b in 0..4i32, c in 0..4i32, d in 0..4i32, i in 0..6i32, pick in 0..64usize) {
        let (a, b, c, d, i) = (h(a), h(b), h(c), h(d), h(i));
        let pairs: Vec<(HalfInt, HalfInt)> = triangle_range(a, b)
            .flat_map(|e| triangle_range(c, d).map(move |f| (e, f)))
            .filter(|&(e, f)| triangle_ok(e, f, i))
            .collect();
        prop_assume!(!pairs.is_empty());
        let (e, f) = pairs[pick % pairs.len()];
        for &(e2, f2) in &pairs {
            let mut acc = SqrtRational::zero();
            for g in triangle_range(a, c) {
                for hh in triangle_range(b, d) {
                    acc += &(&recouple_four(a, b, c, d, e, f, g, hh, i) * &recouple_four(a, b, c, d, e2, f2, g, hh, i));
                }
            }
            let want = if (e, f) == (e2, f2) { SqrtRational::one() } else { SqrtRational::zero() };
            prop_assert_eq!(acc, want);
        }
    }

    #[test]
    fn half_int_text_round_trip(t in -40..40i32) {
        let j = h(t);
        prop_assert_eq!(j.to_string().parse::<HalfInt>().unwrap(), j);
        prop_assert_eq!(j.is_integer(), t % 2 == 0);
    }

    #[test]
    fn kernel_symmetric_with_diagonal_limit(lambda in 0..8u32, r1 in 0.01f64..50.0, r2 in 0.01f64..50.0) {
        prop_assert_eq!(multipole_kernel(lambda, r1, r2), multipole_kernel(lambda, r2, r1));
        let diag = multipole_kernel(lambda, r1, r1);
        let want = 4.0 * std::f64::consts::PI / f64::from(2 * lambda + 1) / r1;
        prop_assert!((diag - want).abs() <= 1e-14 * want);
    }

    #[test]
    fn he_terms_sum_their_breakdown(bra in 0..2000usize, ket in 0..2000usize, term in 0..5usize) {
        let chans = Channel::enumerate(3, 2);
        let (bra, ket) = (&chans[bra % chans.len()], &chans[ket % chans.len()]);
        let r = he_element(Term::HE[term], bra, ket, &Fingerprint, 1.3).unwrap();
        let sum: f64 = r.terms.iter().map(|t| t.angular * t.radial).sum();
        prop_assert!(r.total.is_finite());
        prop_assert!((r.total - sum).abs() <= 1e-14 * (1.0 + sum.abs()));
        for t in &r.terms {
            prop_assert!((t.exact.to_f64().unwrap() - t.angular).abs() <= 1e-15 * (1.0 + t.angular.abs()));
        }
    }

    #[test]
    fn li_terms_vanish_across_total_labels(bra in 0..5000usize, ket in 0..5000usize, term in 0..6usize) {
        let chans = Channel::enumerate(4, 1);
        let (bra, ket) = (&chans[bra % chans.len()], &chans[ket % chans.len()]);
        prop_assume!(bra.total_l != ket.total_l || bra.total_s != ket.total_s);
        prop_assert!(li_element(Term::LI[term], bra, ket, &Fingerprint, 1.3).unwrap().is_exact_zero());
    }
}

#[test]
fn clebsch_gordan_orthogonality() {
    for j1 in 0..=4 {
        for j2 in 0..=4 {
            let (j1, j2) = (h(j1), h(j2));
            let couplings: Vec<(HalfInt, HalfInt)> = triangle_range(j1, j2).flat_map(|j| j.projections().map(move |m| (j, m))).collect();
            for &(ja, ma) in &couplings {
                for &(jb, mb) in &couplings {
                    let mut acc = SqrtRational::zero();
                    for m1 in j1.projections() {
                        for m2 in j2.projections() {
                            acc += &(&clebsch_gordan(j1, m1, j2, m2, ja, ma) * &clebsch_gordan(j1, m1, j2, m2, jb, mb));
                        }
                    }
                    let want = if (ja, ma) == (jb, mb) { SqrtRational::one() } else { SqrtRational::zero() };
                    assert_eq!(acc, want, "j1={j1} j2={j2} ({ja},{ma}) ({jb},{mb})");
                }
            }
        }
    }
}

#[test]
fn bundled_graphs_survive_text_round_trip() {
    for (name, _) in LIBRARY {
        let g = library_graph(name).unwrap();
        let again = parse_graph(&write_graph(&g)).unwrap();
        let labels = g.external_labels();
        // every external label at 0 is admissible for all bundled graphs
        let a: BTreeMap<String, HalfInt> = labels.iter().map(|l| (l.clone(), HalfInt::ZERO)).collect();
        assert_eq!(evaluate_graph(&g, &a).unwrap(), evaluate_graph(&again, &a).unwrap(), "{name}");
    }
}

#[test]
fn graph_with_nonzero_total_rank_is_rejected() {
    let text = "name t\nbra [la@r1 lb@r2]l\nket [la@r1 lb@r2]l\nop [lambda@r1 lambda@r2]RANK\nsum lambda\nbox la lb l ; la lb l ; lambda lambda RANK\nend lambda la la\nend lambda lb lb\n";
    assert!(parse_graph(&text.replace("RANK", "0")).is_ok());
    let err = parse_graph(&text.replace("RANK", "1")).unwrap_err();
    assert!(err.to_string().contains("invariance"), "{err}");
}
