//! Symbol values rebuilt from nothing but Clebsch-Gordan contractions.

use crate::exactnum::{triangle_ok, HalfInt, SqrtRational};
use crate::wigner::{clebsch_gordan, phase, three_j};

fn neg(m: HalfInt) -> HalfInt {
    -m
}

/// 6-j as the contraction of four 3-j symbols over all six projections.
pub fn six_j_contraction(j: [HalfInt; 6]) -> SqrtRational {
    let [j1, j2, j3, j4, j5, j6] = j;
    if !triangle_ok(j1, j2, j3) || !triangle_ok(j1, j5, j6) || !triangle_ok(j4, j2, j6) || !triangle_ok(j4, j5, j3) {
        return SqrtRational::zero();
    }
    let mut acc = SqrtRational::zero();
    for m1 in j1.projections() {
        for m2 in j2.projections() {
            let m3 = neg(m1 + m2);
            if m3.abs() > j3 {
                continue;
            }
            let a = three_j(j1, j2, j3, neg(m1), neg(m2), neg(m3));
            if a.is_zero() {
                continue;
            }
            for m5 in j5.projections() {
                // (j1 j5 j6; m1 -m5 m6): m6 = m5 - m1
                let m6 = m5 - m1;
                if m6.abs() > j6 {
                    continue;
                }
                // (j4 j2 j6; m4 m2 -m6): m4 = m6 - m2
                let m4 = m6 - m2;
                if m4.abs() > j4 {
                    continue;
                }
                let b = three_j(j1, j5, j6, m1, neg(m5), m6);
                let c = three_j(j4, j2, j6, m4, m2, neg(m6));
                let d = three_j(j4, j5, j3, neg(m4), m5, m3);
                if b.is_zero() || c.is_zero() || d.is_zero() {
                    continue;
                }
                let s = [j1 - m1, j2 - m2, j3 - m3, j4 - m4, j5 - m5, j6 - m6].into_iter().fold(HalfInt::ZERO, |x, y| x + y);
                let term = &(&(&a * &b) * &c) * &d;
                acc += &term.scale_int(phase(s));
            }
        }
    }
    acc
}

/// 9-j as the contraction of six 3-j symbols (three rows, three columns).
pub fn nine_j_contraction(j: [[HalfInt; 3]; 3]) -> SqrtRational {
    let [[j1, j2, j3], [j4, j5, j6], [j7, j8, j9]] = j;
    let rows_ok = (0..3).all(|k| triangle_ok(j[k][0], j[k][1], j[k][2]));
    let cols_ok = (0..3).all(|k| triangle_ok(j[0][k], j[1][k], j[2][k]));
    if !rows_ok || !cols_ok {
        return SqrtRational::zero();
    }
    let mut acc = SqrtRational::zero();
    for m1 in j1.projections() {
        for m2 in j2.projections() {
            let m3 = neg(m1 + m2);
            if m3.abs() > j3 {
                continue;
            }
            let r1 = three_j(j1, j2, j3, m1, m2, m3);
            if r1.is_zero() {
                continue;
            }
            for m4 in j4.projections() {
                let m7 = neg(m1 + m4);
                if m7.abs() > j7 {
                    continue;
                }
                let c1 = three_j(j1, j4, j7, m1, m4, m7);
                if c1.is_zero() {
                    continue;
                }
                for m5 in j5.projections() {
                    let m6 = neg(m4 + m5);
                    let m8 = neg(m2 + m5);
                    let m9 = neg(m3 + m6);
                    if m6.abs() > j6 || m8.abs() > j8 || m9.abs() > j9 {
                        continue;
                    }
                    let factors = [
                        three_j(j4, j5, j6, m4, m5, m6),
                        three_j(j7, j8, j9, m7, m8, m9),
                        three_j(j2, j5, j8, m2, m5, m8),
                        three_j(j3, j6, j9, m3, m6, m9),
                    ];
                    if factors.iter().any(SqrtRational::is_zero) {
                        continue;
                    }
                    let mut t = &r1 * &c1;
                    for f in &factors {
                        t = &t * f;
                    }
                    acc += &t;
                }
            }
        }
    }
    acc
}

/// Overlap `<[(a c) g, (b d) h] i | [(a b) e, (c d) f] i>` summed over projections
/// at a fixed total projection; equals the square 9-j coefficient.
pub fn square_nine_j_overlap(j: [[HalfInt; 3]; 3]) -> SqrtRational {
    let [[a, b, e], [c, d, f], [g, h, i]] = j;
    if !triangle_ok(a, b, e) || !triangle_ok(c, d, f) || !triangle_ok(e, f, i) {
        return SqrtRational::zero();
    }
    if !triangle_ok(a, c, g) || !triangle_ok(b, d, h) || !triangle_ok(g, h, i) {
        return SqrtRational::zero();
    }
    let mi = i;
    let mut acc = SqrtRational::zero();
    for ma in a.projections() {
        for mb in b.projections() {
            let me = ma + mb;
            if me.abs() > e {
                continue;
            }
            for mc in c.projections() {
                let md = mi - me - mc;
                if md.abs() > d {
                    continue;
                }
                let mf = mc + md;
                let mg = ma + mc;
                let mh = mb + md;
                if mf.abs() > f || mg.abs() > g || mh.abs() > h {
                    continue;
                }
                let left = [
                    clebsch_gordan(a, ma, b, mb, e, me),
                    clebsch_gordan(c, mc, d, md, f, mf),
                    clebsch_gordan(e, me, f, mf, i, mi),
                ];
                let right = [
                    clebsch_gordan(a, ma, c, mc, g, mg),
                    clebsch_gordan(b, mb, d, md, h, mh),
                    clebsch_gordan(g, mg, h, mh, i, mi),
                ];
                if left.iter().chain(right.iter()).any(SqrtRational::is_zero) {
                    continue;
                }
                let t = left.iter().chain(right.iter()).fold(SqrtRational::one(), |x, y| &x * y);
                acc += &t;
            }
        }
    }
    acc
}

/// Overlap `<[c (b d) h] i | [b (c d) f] i>`, the three-momentum recoupling coefficient.
pub fn recouple_three_overlap(b: HalfInt, c: HalfInt, d: HalfInt, f: HalfInt, h: HalfInt, i: HalfInt) -> SqrtRational {
    if !triangle_ok(c, d, f) || !triangle_ok(b, f, i) || !triangle_ok(b, d, h) || !triangle_ok(c, h, i) {
        return SqrtRational::zero();
    }
    let mi = i;
    let mut acc = SqrtRational::zero();
    for mb in b.projections() {
        for mc in c.projections() {
            let md = mi - mb - mc;
            if md.abs() > d {
                continue;
            }
            let mf = mc + md;
            let mh = mb + md;
            if mf.abs() > f || mh.abs() > h {
                continue;
            }
            let t = [
                clebsch_gordan(c, mc, d, md, f, mf),
                clebsch_gordan(b, mb, f, mf, i, mi),
                clebsch_gordan(b, mb, d, md, h, mh),
                clebsch_gordan(c, mc, h, mh, i, mi),
            ];
            if t.iter().any(SqrtRational::is_zero) {
                continue;
            }
            acc += &t.iter().fold(SqrtRational::one(), |x, y| &x * y);
        }
    }
    acc
}
