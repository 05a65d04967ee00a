//! Clebsch-Gordan coefficients, Wigner 3-j/6-j/9-j symbols, the unitary
//! "square" 9-j recoupling coefficient and spherical-harmonic end boxes.
//!
//! All values are exact. Phases follow Condon-Shortley; the `i^l` factors that
//! come with the `(-i)^l Y_l` harmonic convention are left to the callers.

mod cache;
pub mod float;

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exactnum::{factorial_big, triangle_ok, triangle_range, HalfInt, PiScaled, PrimeRational, SqrtRational};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WignerError {
    #[error("spherical harmonic rank must be an integer, got {0}")]
    HalfIntegerHarmonic(HalfInt),
}

/// `(-1)^n` for an integer-valued half-integer `n`.
///
/// # Panics
/// If `n` is half-odd; callers only ask for phases that are integers by construction.
#[inline]
pub fn phase(n: HalfInt) -> i64 {
    let k = n.as_integer().unwrap_or_else(|| panic!("phase of a half-odd power {n}"));
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn fact(twice: i32) -> BigUint {
    debug_assert!(twice >= 0 && twice % 2 == 0, "factorial of {twice}/2");
    factorial_big((twice / 2) as u32)
}

fn pfact(twice: i32) -> PrimeRational {
    PrimeRational::factorial((twice / 2) as u32)
}

/// `Δ(abc)^2 = (a+b-c)!(a-b+c)!(-a+b+c)!/(a+b+c+1)!`, as a prime-factored rational.
fn delta_sq(a: i32, b: i32, c: i32) -> PrimeRational {
    pfact(a + b - c).mul(&pfact(a - b + c)).mul(&pfact(-a + b + c)).div(&pfact(a + b + c + 2))
}

fn projection_ok(j: HalfInt, m: HalfInt) -> bool {
    m.twice().abs() <= j.twice() && (j.twice() - m.twice()) % 2 == 0
}

/// `<j1 m1 j2 m2 | J M>` by the Racah single-sum formula.
pub fn clebsch_gordan(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, jj: HalfInt, mm: HalfInt) -> SqrtRational {
    if m1 + m2 != mm
        || !triangle_ok(j1, j2, jj)
        || !projection_ok(j1, m1)
        || !projection_ok(j2, m2)
        || !projection_ok(jj, mm)
    {
        return SqrtRational::zero();
    }
    cache::cg(j1, m1, j2, m2, jj, mm, || racah_cg(j1.twice(), m1.twice(), j2.twice(), m2.twice(), jj.twice(), mm.twice()))
}

fn racah_cg(j1: i32, m1: i32, j2: i32, m2: i32, jj: i32, mm: i32) -> SqrtRational {
    let pre = PrimeRational::from_int(i64::from(jj + 1))
        .mul(&delta_sq(j1, j2, jj))
        .mul(&pfact(jj + mm))
        .mul(&pfact(jj - mm))
        .mul(&pfact(j1 - m1))
        .mul(&pfact(j1 + m1))
        .mul(&pfact(j2 - m2))
        .mul(&pfact(j2 + m2));
    // k runs over the doubled range where all six factorial arguments are >= 0
    let kmin = 0.max(j2 - jj - m1).max(j1 - jj + m2);
    let kmax = (j1 + j2 - jj).min(j1 - m1).min(j2 + m2);
    let mut sum = BigRational::zero();
    let mut k = kmin;
    while k <= kmax {
        let den = fact(k)
            * fact(j1 + j2 - jj - k)
            * fact(j1 - m1 - k)
            * fact(j2 + m2 - k)
            * fact(jj - j2 + m1 + k)
            * fact(jj - j1 - m2 + k);
        let term = BigRational::new(BigInt::one(), BigInt::from(den));
        if (k / 2) % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        k += 2;
    }
    SqrtRational::signed_sqrt(&pre).scale(&sum)
}

/// Wigner 3-j symbol `(j1 j2 j3; m1 m2 m3)`.
pub fn three_j(j1: HalfInt, j2: HalfInt, j3: HalfInt, m1: HalfInt, m2: HalfInt, m3: HalfInt) -> SqrtRational {
    let cg = clebsch_gordan(j1, m1, j2, m2, j3, -m3);
    if cg.is_zero() {
        return cg;
    }
    let sign = phase(j1 - j2 - m3);
    let inv_hat = SqrtRational::signed_sqrt(&PrimeRational::from_ratio(1, i64::from(j3.dim())));
    (&cg * &inv_hat).scale_int(sign)
}

/// Wigner 6-j symbol `{j1 j2 j3; j4 j5 j6}`.
pub fn six_j(j1: HalfInt, j2: HalfInt, j3: HalfInt, j4: HalfInt, j5: HalfInt, j6: HalfInt) -> SqrtRational {
    if !triangle_ok(j1, j2, j3) || !triangle_ok(j1, j5, j6) || !triangle_ok(j4, j2, j6) || !triangle_ok(j4, j5, j3) {
        return SqrtRational::zero();
    }
    let t = [j1, j2, j3, j4, j5, j6].map(HalfInt::twice);
    cache::six_j(t)
}

fn racah_six_j([j1, j2, j3, j4, j5, j6]: [i32; 6]) -> SqrtRational {
    let pre = delta_sq(j1, j2, j3).mul(&delta_sq(j1, j5, j6)).mul(&delta_sq(j4, j2, j6)).mul(&delta_sq(j4, j5, j3));
    let a = [j1 + j2 + j3, j1 + j5 + j6, j4 + j2 + j6, j4 + j5 + j3];
    let b = [j1 + j2 + j4 + j5, j2 + j3 + j5 + j6, j3 + j1 + j6 + j4];
    let tmin = *a.iter().max().unwrap();
    let tmax = *b.iter().min().unwrap();
    let mut sum = BigInt::zero();
    let mut common = BigUint::one();
    // accumulate over a common denominator built incrementally
    let mut terms: Vec<(bool, BigUint, BigUint)> = Vec::new();
    let mut t = tmin;
    while t <= tmax {
        let num = fact(t + 2);
        let den = a.iter().map(|&x| fact(t - x)).chain(b.iter().map(|&y| fact(y - t))).product::<BigUint>();
        terms.push(((t / 2) % 2 != 0, num, den));
        t += 2;
    }
    for (_, _, den) in &terms {
        common = num_integer::Integer::lcm(&common, den);
    }
    for (neg, num, den) in terms {
        let v = BigInt::from(num * (&common / den));
        if neg {
            sum -= v;
        } else {
            sum += v;
        }
    }
    let q = BigRational::new(sum, BigInt::from(common));
    SqrtRational::signed_sqrt(&pre).scale(&q)
}

/// Arguments of a 9-j symbol in row-major order:
/// ```text
/// a b e
/// c d f
/// g h i
/// ```
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NineJArgs {
    pub a: HalfInt,
    pub b: HalfInt,
    pub e: HalfInt,
    pub c: HalfInt,
    pub d: HalfInt,
    pub f: HalfInt,
    pub g: HalfInt,
    pub h: HalfInt,
    pub i: HalfInt,
}

impl NineJArgs {
    pub fn new(rows: [[HalfInt; 3]; 3]) -> Self {
        let [[a, b, e], [c, d, f], [g, h, i]] = rows;
        NineJArgs { a, b, e, c, d, f, g, h, i }
    }

    /// From doubled values in row-major order.
    pub fn from_twice(t: [i32; 9]) -> Self {
        let h = HalfInt::from_twice;
        Self::new([[h(t[0]), h(t[1]), h(t[2])], [h(t[3]), h(t[4]), h(t[5])], [h(t[6]), h(t[7]), h(t[8])]])
    }

    pub fn rows(&self) -> [[HalfInt; 3]; 3] {
        [[self.a, self.b, self.e], [self.c, self.d, self.f], [self.g, self.h, self.i]]
    }

    pub fn transpose(&self) -> Self {
        let r = self.rows();
        Self::new([[r[0][0], r[1][0], r[2][0]], [r[0][1], r[1][1], r[2][1]], [r[0][2], r[1][2], r[2][2]]])
    }

    /// All six row and column triads admissible.
    pub fn triads_ok(&self) -> bool {
        let r = self.rows();
        (0..3).all(|k| triangle_ok(r[k][0], r[k][1], r[k][2]) && triangle_ok(r[0][k], r[1][k], r[2][k]))
    }

    fn twice(&self) -> [i32; 9] {
        let r = self.rows();
        [r[0][0], r[0][1], r[0][2], r[1][0], r[1][1], r[1][2], r[2][0], r[2][1], r[2][2]].map(HalfInt::twice)
    }
}

impl fmt::Display for NineJArgs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let r = self.rows();
        write!(
            f,
            "[{} {} {}; {} {} {}; {} {} {}]",
            r[0][0], r[0][1], r[0][2], r[1][0], r[1][1], r[1][2], r[2][0], r[2][1], r[2][2]
        )
    }
}

/// Wigner 9-j symbol, as a sum over `x` of three 6-j symbols.
pub fn nine_j(args: &NineJArgs) -> SqrtRational {
    if !args.triads_ok() {
        return SqrtRational::zero();
    }
    let t = args.twice();
    cache::nine_j(t, || sum_over_x(args))
}

fn sum_over_x(n: &NineJArgs) -> SqrtRational {
    let (j1, j2, j3, j4, j5, j6, j7, j8, j9) = (n.a, n.b, n.e, n.c, n.d, n.f, n.g, n.h, n.i);
    let lo = (j1 - j9).abs().max((j4 - j8).abs()).max((j2 - j6).abs());
    let hi = (j1 + j9).min(j4 + j8).min(j2 + j6);
    let mut acc = SqrtRational::zero();
    for x in HalfInt::range_inclusive(lo, hi) {
        let a = six_j(j1, j4, j7, j8, j9, x);
        if a.is_zero() {
            continue;
        }
        let b = six_j(j2, j5, j8, j4, x, j6);
        if b.is_zero() {
            continue;
        }
        let c = six_j(j3, j6, j9, x, j1, j2);
        if c.is_zero() {
            continue;
        }
        let w = i64::from(x.dim()) * if x.is_integer() { 1 } else { -1 };
        acc += &(&(&a * &b) * &c).scale_int(w);
    }
    acc
}

/// The unitary recoupling coefficient `ê f̂ ĝ ĥ {a b e; c d f; g h i}`.
pub fn square_nine_j(args: &NineJArgs) -> SqrtRational {
    let nj = nine_j(args);
    if nj.is_zero() {
        return nj;
    }
    let hats = PrimeRational::from_int(i64::from(args.e.dim()) * i64::from(args.f.dim()) * i64::from(args.g.dim()) * i64::from(args.h.dim()));
    &nj * &SqrtRational::signed_sqrt(&hats)
}

/// Shorthand for `square_nine_j` from doubled values in row-major order.
pub fn square_nine_j_twice(t: [i32; 9]) -> SqrtRational {
    square_nine_j(&NineJArgs::from_twice(t))
}

fn require_integer(x: HalfInt) -> Result<(), WignerError> {
    if x.is_integer() {
        Ok(())
    } else {
        Err(WignerError::HalfIntegerHarmonic(x))
    }
}

/// End box `[l|k|j] = i^(l+k+j) l̂ k̂ ĵ / sqrt(4 pi) (l k j; 0 0 0)`, always real.
pub fn triple_y(l: HalfInt, k: HalfInt, j: HalfInt) -> Result<PiScaled, WignerError> {
    require_integer(l)?;
    require_integer(k)?;
    require_integer(j)?;
    let z = HalfInt::ZERO;
    let tj = three_j(l, k, j, z, z, z);
    if tj.is_zero() {
        return Ok(PiScaled::zero());
    }
    // the 3-j vanishes unless l + k + j is even, so i^(l+k+j) is a sign
    let sum = (l + k + j).as_integer().expect("integer ranks");
    let sign = if (sum / 2) % 2 == 0 { 1 } else { -1 };
    let hats = PrimeRational::from_int(i64::from(l.dim()) * i64::from(k.dim()) * i64::from(j.dim()));
    let v = (&tj * &SqrtRational::signed_sqrt(&hats)).scale_int(sign);
    Ok(PiScaled::new(v, -1))
}

/// `∫ Y_{l1 m1} Y_{l2 m2} Y_{l3 m3} dΩ`.
pub fn gaunt(l1: HalfInt, m1: HalfInt, l2: HalfInt, m2: HalfInt, l3: HalfInt, m3: HalfInt) -> Result<PiScaled, WignerError> {
    for x in [l1, m1, l2, m2, l3, m3] {
        require_integer(x)?;
    }
    if (m1 + m2 + m3) != HalfInt::ZERO {
        return Ok(PiScaled::zero());
    }
    let z = HalfInt::ZERO;
    let a = three_j(l1, l2, l3, z, z, z);
    if a.is_zero() {
        return Ok(PiScaled::zero());
    }
    let b = three_j(l1, l2, l3, m1, m2, m3);
    if b.is_zero() {
        return Ok(PiScaled::zero());
    }
    let hats = PrimeRational::from_int(i64::from(l1.dim()) * i64::from(l2.dim()) * i64::from(l3.dim()));
    Ok(PiScaled::new(&(&a * &b) * &SqrtRational::signed_sqrt(&hats), -1))
}

/// Admissible third momenta for a coupled pair; re-exported for symbol tables.
pub fn couplings(a: HalfInt, b: HalfInt) -> impl Iterator<Item = HalfInt> + Clone {
    triangle_range(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i32) -> HalfInt {
        HalfInt::from_twice(t)
    }

    fn sr(s: &str) -> SqrtRational {
        s.parse().unwrap()
    }

    #[test]
    fn cg_examples() {
        assert_eq!(clebsch_gordan(h(1), h(1), h(1), h(-1), h(0), h(0)), sr("+(1/1)·sqrt(1/2)"));
        for j in 0..7 {
            for m in h(j).projections() {
                assert_eq!(clebsch_gordan(h(j), m, h(0), h(0), h(j), m), SqrtRational::one());
            }
        }
        assert_eq!(clebsch_gordan(h(2), h(2), h(2), h(-2), h(0), h(0)), sr("+(1/1)·sqrt(1/3)"));
        assert!(clebsch_gordan(h(2), h(2), h(2), h(0), h(0), h(0)).is_zero());
    }

    #[test]
    fn six_and_nine_examples() {
        assert_eq!(six_j(h(0), h(2), h(2), h(0), h(2), h(2)), SqrtRational::from_ratio(1, 3));
        assert_eq!(nine_j(&NineJArgs::from_twice([0; 9])), SqrtRational::one());
        let a = NineJArgs::from_twice([2, 2, 0, 2, 2, 0, 0, 0, 0]);
        assert_eq!(nine_j(&a), SqrtRational::from_ratio(1, 3));
        assert_eq!(square_nine_j(&a), SqrtRational::from_ratio(1, 3));
    }

    #[test]
    fn square_identity_column() {
        for a in 0..5 {
            for c in 0..5 {
                for i in triangle_range(h(a), h(c)) {
                    let args = NineJArgs::new([[h(a), h(0), h(a)], [h(c), h(0), h(c)], [i, h(0), i]]);
                    assert_eq!(square_nine_j(&args), SqrtRational::one(), "{args}");
                }
            }
        }
        assert!(square_nine_j_twice([2, 2, 6, 2, 2, 0, 0, 0, 0]).is_zero());
    }

    #[test]
    fn end_boxes() {
        let f = |l, k, j| triple_y(h(l), h(k), h(j)).unwrap();
        assert_eq!(f(0, 0, 0), PiScaled::new(SqrtRational::one(), -1));
        assert!(f(2, 2, 2).is_zero());
        assert_eq!(f(2, 2, 0), PiScaled::new(sr("+(1/1)·sqrt(3/1)"), -1));
        assert!(triple_y(h(1), h(1), h(0)).is_err());
    }

    #[test]
    fn gaunt_examples() {
        let z = h(0);
        assert_eq!(gaunt(z, z, z, z, z, z).unwrap(), PiScaled::new(SqrtRational::one(), -1));
        assert!(gaunt(h(2), h(2), h(2), h(0), h(2), h(0)).unwrap().is_zero());
        // ∫ Y10 Y10 Y20 = 1/sqrt(5 pi)
        let v = gaunt(h(2), z, h(2), z, h(4), z).unwrap().to_f64().unwrap();
        assert!((v - 1.0 / (5.0 * std::f64::consts::PI).sqrt()).abs() < 1e-14);
    }
}
