//! Orbital closed forms built from recoupling boxes and end boxes.
//!
//! Every direct form contracts bra and ket coordinate by coordinate: the first
//! boxes pair bra and ket momenta of each coordinate, spectator coordinates
//! collapse to an overlap carrying their hat and a delta, and the two active
//! coordinates end in `[λ|l'|l]` boxes. Exchange forms first bring the
//! permuted ket `[l0(r1) [l1(r0) ...]l]L` back to coordinate order with the
//! three-momentum box `[0 l0 l0; l1 x l; l1 q L]` and then reuse the direct
//! form with ket labels `(l1, l0, q)`.

use super::result::MatElError;
use crate::exactnum::{HalfInt, PrimeRational, SqrtRational};
use crate::wigner::{square_nine_j, triple_y, NineJArgs};

const Z: HalfInt = HalfInt::ZERO;

pub(super) fn sq(rows: [[HalfInt; 3]; 3]) -> SqrtRational {
    square_nine_j(&NineJArgs::new(rows))
}

fn hat(x: HalfInt) -> SqrtRational {
    SqrtRational::signed_sqrt(&PrimeRational::from_int(i64::from(x.dim())))
}

fn inv_hat(x: HalfInt) -> SqrtRational {
    SqrtRational::signed_sqrt(&PrimeRational::from_ratio(1, i64::from(x.dim())))
}

/// Product of the two end boxes with the multipole weight `4π/λ̂`; the powers of
/// `4π` cancel exactly.
fn ends_with_kernel(lambda: HalfInt, a: (HalfInt, HalfInt), b: (HalfInt, HalfInt)) -> Result<SqrtRational, MatElError> {
    let x = triple_y(lambda, a.0, a.1).map_err(|_| MatElError::HalfIntegerOrbital(lambda))?;
    if x.is_zero() {
        return Ok(SqrtRational::zero());
    }
    let y = triple_y(lambda, b.0, b.1).map_err(|_| MatElError::HalfIntegerOrbital(lambda))?;
    if y.is_zero() {
        return Ok(SqrtRational::zero());
    }
    debug_assert_eq!(x.half_power + y.half_power, -2);
    Ok(&(&x.value * &y.value) * &inv_hat(lambda))
}

/// `i^(Σl' − Σl)` as a sign; odd powers are rejected.
pub(super) fn i_power(bra: &[HalfInt], ket: &[HalfInt]) -> Result<i64, MatElError> {
    let d: i32 = bra.iter().map(|x| x.twice()).sum::<i32>() - ket.iter().map(|x| x.twice()).sum::<i32>();
    let n = d / 2;
    if n.rem_euclid(2) != 0 {
        return Err(MatElError::OddPhase(n));
    }
    Ok(if n.rem_euclid(4) == 0 { 1 } else { -1 })
}

/// Which coordinates the operator couples; `None` is the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(super) enum Pair {
    P01,
    P02,
    P12,
    P23,
    Identity,
}

/// Orbital labels of a three-electron state `[l0 [l1 l2]l]L`.
#[derive(Clone, Copy, Debug)]
pub(super) struct Orb3 {
    pub l: [HalfInt; 3],
    pub l12: HalfInt,
}

/// Orbital labels of a four-electron state `[l0 [l1 [l2 l3]l23]l]L`.
#[derive(Clone, Copy, Debug)]
pub(super) struct Orb4 {
    pub l: [HalfInt; 4],
    pub l23: HalfInt,
    pub l123: HalfInt,
}

/// Final box joining the two coupled end-box pairs to the scalar operator.
fn closing(lambda: HalfInt) -> SqrtRational {
    sq([[lambda, lambda, Z], [lambda, lambda, Z], [Z, Z, Z]])
}

/// Direct three-electron orbital coefficient at one multipole, without the i-phase.
pub(super) fn direct3(pair: Pair, b: &Orb3, k: &Orb3, big_l: HalfInt, lambda: HalfInt) -> Result<SqrtRational, MatElError> {
    let [b0, b1, b2] = b.l;
    let [k0, k1, k2] = k.l;
    let (bl, kl) = (b.l12, k.l12);
    let inv_l = inv_hat(big_l);
    let v = match pair {
        Pair::P01 => {
            if b2 != k2 {
                return Ok(SqrtRational::zero());
            }
            let e = ends_with_kernel(lambda, (b0, k0), (b1, k1))?;
            if e.is_zero() {
                return Ok(e);
            }
            let x = sq([[b0, bl, big_l], [k0, kl, big_l], [lambda, lambda, Z]]);
            let y = sq([[b1, b2, bl], [k1, k2, kl], [lambda, Z, lambda]]);
            [hat(k2), inv_l, e, x, y, closing(lambda)].iter().fold(SqrtRational::one(), |a, f| &a * f)
        }
        Pair::P02 => {
            if b1 != k1 {
                return Ok(SqrtRational::zero());
            }
            let e = ends_with_kernel(lambda, (b0, k0), (b2, k2))?;
            if e.is_zero() {
                return Ok(e);
            }
            let x = sq([[b0, bl, big_l], [k0, kl, big_l], [lambda, lambda, Z]]);
            let y = sq([[b1, b2, bl], [k1, k2, kl], [Z, lambda, lambda]]);
            [hat(k1), inv_l, e, x, y, closing(lambda)].iter().fold(SqrtRational::one(), |a, f| &a * f)
        }
        Pair::P12 => {
            if b0 != k0 {
                return Ok(SqrtRational::zero());
            }
            let e = ends_with_kernel(lambda, (b1, k1), (b2, k2))?;
            if e.is_zero() {
                return Ok(e);
            }
            let x = sq([[b0, bl, big_l], [k0, kl, big_l], [Z, Z, Z]]);
            let y = sq([[b1, b2, bl], [k1, k2, kl], [lambda, lambda, Z]]);
            [hat(k0), inv_l, e, x, y, closing(lambda)].iter().fold(SqrtRational::one(), |a, f| &a * f)
        }
        Pair::Identity => {
            if b.l != k.l {
                return Ok(SqrtRational::zero());
            }
            let x = sq([[b0, bl, big_l], [k0, kl, big_l], [Z, Z, Z]]);
            let y = sq([[b1, b2, bl], [k1, k2, kl], [Z, Z, Z]]);
            [hat(k0), hat(k1), hat(k2), inv_l, x, y].iter().fold(SqrtRational::one(), |a, f| &a * f)
        }
        Pair::P23 => unreachable!("three-electron states have no coordinate 3"),
    };
    Ok(v)
}

/// Direct four-electron orbital coefficient at one multipole, without the i-phase.
pub(super) fn direct4(pair: Pair, b: &Orb4, k: &Orb4, big_l: HalfInt, lambda: HalfInt) -> Result<SqrtRational, MatElError> {
    let [b0, b1, b2, b3] = b.l;
    let [k0, k1, k2, k3] = k.l;
    let (b23, k23, bl, kl) = (b.l23, k.l23, b.l123, k.l123);
    let inv_l = inv_hat(big_l);
    let spect = |idx: &[usize]| -> Option<SqrtRational> {
        let mut acc = SqrtRational::one();
        for &i in idx {
            if b.l[i] != k.l[i] {
                return None;
            }
            acc = &acc * &hat(k.l[i]);
        }
        Some(acc)
    };
    let (spectators, active, outer, middle, inner): (&[usize], Option<((HalfInt, HalfInt), (HalfInt, HalfInt))>, [HalfInt; 2], [HalfInt; 3], [HalfInt; 3]) = match pair {
        Pair::P01 => (&[2, 3], Some(((b0, k0), (b1, k1))), [lambda, lambda], [lambda, Z, lambda], [Z, Z, Z]),
        Pair::P02 => (&[1, 3], Some(((b0, k0), (b2, k2))), [lambda, lambda], [Z, lambda, lambda], [lambda, Z, lambda]),
        Pair::P12 => (&[0, 3], Some(((b1, k1), (b2, k2))), [Z, Z], [lambda, lambda, Z], [lambda, Z, lambda]),
        Pair::P23 => (&[0, 1], Some(((b2, k2), (b3, k3))), [Z, Z], [Z, Z, Z], [lambda, lambda, Z]),
        Pair::Identity => (&[0, 1, 2, 3], None, [Z, Z], [Z, Z, Z], [Z, Z, Z]),
    };
    let Some(h) = spect(spectators) else {
        return Ok(SqrtRational::zero());
    };
    let e = match active {
        Some((p, q)) => ends_with_kernel(lambda, p, q)?,
        None => SqrtRational::one(),
    };
    if e.is_zero() {
        return Ok(e);
    }
    let x = sq([[b0, bl, big_l], [k0, kl, big_l], [outer[0], outer[1], Z]]);
    let y = sq([[b1, b23, bl], [k1, k23, kl], middle]);
    let w = sq([[b2, b3, b23], [k2, k3, k23], inner]);
    let c = if active.is_some() { closing(lambda) } else { SqrtRational::one() };
    Ok([h, inv_l, e, x, y, w, c].iter().fold(SqrtRational::one(), |a, f| &a * f))
}

/// Multipoles allowed by both end boxes of an operator coupling `a` and `b` pairs.
pub(super) fn lambda_range(a: (HalfInt, HalfInt), b: (HalfInt, HalfInt)) -> Vec<HalfInt> {
    let lo = (a.0 - a.1).abs().max((b.0 - b.1).abs());
    let hi = (a.0 + a.1).min(b.0 + b.1);
    let mut out = Vec::new();
    if lo > hi {
        return out;
    }
    let parity_a = (a.0 + a.1).twice().rem_euclid(4);
    let parity_b = (b.0 + b.1).twice().rem_euclid(4);
    if parity_a != parity_b {
        return out;
    }
    let mut x = lo;
    while x <= hi {
        if (x + a.0 + a.1).twice().rem_euclid(4) == 0 {
            out.push(x);
        }
        x = x + HalfInt::ONE;
    }
    out
}

/// Coefficient of the coordinate-ordered ket `[l1 [l0 x]q]L` in `[l0 [l1 x]l]L`.
pub(super) fn exchange_box(l0: HalfInt, l1: HalfInt, x: HalfInt, l: HalfInt, q: HalfInt, big_l: HalfInt) -> SqrtRational {
    sq([[Z, l0, l0], [l1, x, l], [l1, q, big_l]])
}

/// Intermediate `q` values with `(l1 q L)` and `(l0 x q)` both allowed.
pub(super) fn q_range(l0: HalfInt, l1: HalfInt, x: HalfInt, big_l: HalfInt) -> Vec<HalfInt> {
    let lo = (l1 - big_l).abs().max((l0 - x).abs());
    let hi = (l1 + big_l).min(l0 + x);
    if lo > hi || (lo - (l1 - big_l).abs()).twice() % 2 != 0 {
        return Vec::new();
    }
    HalfInt::range_inclusive(lo, hi).collect()
}
