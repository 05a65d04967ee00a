use std::f64::consts::PI;

use super::channel::Channel;
use super::forms::{i_power, lambda_range, sq};
use super::provider::RadialProvider;
use super::result::{MatElError, MatElResult, MultipoleTerm, TermValue};
use crate::exactnum::{triangle_ok, HalfInt, PrimeRational, SqrtRational};
use crate::wigner::{six_j, three_j, triple_y};

const Z: HalfInt = HalfInt::ZERO;

/// `R_λ(r1, r2) = (4π/(2λ+1)) r<^λ / r>^(λ+1)`.
pub fn multipole_kernel(lambda: u32, r1: f64, r2: f64) -> f64 {
    let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
    4.0 * PI / f64::from(2 * lambda + 1) * (lo / hi).powi(lambda as i32) / hi
}

fn integer(x: HalfInt) -> Result<(), MatElError> {
    if x.is_integer() && x.twice() >= 0 {
        Ok(())
    } else {
        Err(MatElError::HalfIntegerOrbital(x))
    }
}

fn hat(x: HalfInt) -> SqrtRational {
    SqrtRational::hat(x)
}

fn collect(terms: Vec<(HalfInt, SqrtRational)>, radial: &dyn Fn(u32) -> f64) -> MatElResult {
    let terms = terms
        .into_iter()
        .filter(|(_, a)| !a.is_zero())
        .map(|(lambda, exact)| {
            let lam = lambda.as_integer().expect("integer multipole") as u32;
            TermValue {
                component: "",
                term: MultipoleTerm::lambda(lambda),
                angular: exact.to_f64().expect("angular coefficient fits in f64"),
                radial: radial(lam),
                exact,
            }
        })
        .collect();
    MatElResult::from_terms(terms)
}

/// `<(la' lb')l || 1/r12 || (la lb)l>` from the box chain with Y-tensor end boxes.
///
/// `radial(λ)` supplies the bare Slater integral of `r<^λ / r>^(λ+1)`; the
/// `4π/λ̂²` of the multipole kernel is part of the angular value.
pub fn direct_two_electron(lap: HalfInt, lbp: HalfInt, la: HalfInt, lb: HalfInt, l: HalfInt, radial: &dyn Fn(u32) -> f64) -> Result<MatElResult, MatElError> {
    for x in [lap, lbp, la, lb, l] {
        integer(x)?;
    }
    if !triangle_ok(lap, lbp, l) || !triangle_ok(la, lb, l) {
        return Ok(MatElResult::zero());
    }
    let mut terms = Vec::new();
    for lambda in lambda_range((lap, la), (lbp, lb)) {
        let ya = triple_y(lambda, lap, la).map_err(|_| MatElError::HalfIntegerOrbital(lambda))?;
        let yb = triple_y(lambda, lbp, lb).map_err(|_| MatElError::HalfIntegerOrbital(lambda))?;
        if ya.is_zero() || yb.is_zero() {
            continue;
        }
        let ends = &(&ya.value * &yb.value) * &SqrtRational::signed_sqrt(&PrimeRational::from_ratio(1, i64::from(lambda.dim())));
        let a = sq([[lap, lbp, l], [la, lb, l], [lambda, lambda, Z]]);
        let b = sq([[lambda, lambda, Z], [lambda, lambda, Z], [Z, Z, Z]]);
        let v = [ends, a, b, SqrtRational::signed_sqrt(&PrimeRational::from_ratio(1, i64::from(l.dim())))]
            .iter()
            .fold(SqrtRational::one(), |acc, f| &acc * f);
        if v.is_zero() {
            continue;
        }
        let sign = i_power(&[lap, lbp], &[la, lb])?;
        terms.push((lambda, v.scale_int(sign)));
    }
    Ok(collect(terms, radial))
}

/// The same element in the textbook 3-j/6-j form:
/// `Σ_λ (−1)^(λ+l) la'^ lb'^ la^ lb^ (la' λ la; 000)(lb' λ lb; 000) {la' lb' l; lb la λ}`.
pub fn direct_two_electron_cowan(lap: HalfInt, lbp: HalfInt, la: HalfInt, lb: HalfInt, l: HalfInt, radial: &dyn Fn(u32) -> f64) -> Result<MatElResult, MatElError> {
    for x in [lap, lbp, la, lb, l] {
        integer(x)?;
    }
    if !triangle_ok(lap, lbp, l) || !triangle_ok(la, lb, l) {
        return Ok(MatElResult::zero());
    }
    let mut terms = Vec::new();
    for lambda in lambda_range((lap, la), (lbp, lb)) {
        let v = [
            hat(lap),
            hat(lbp),
            hat(la),
            hat(lb),
            three_j(lap, lambda, la, Z, Z, Z),
            three_j(lbp, lambda, lb, Z, Z, Z),
            six_j(lap, lbp, l, lb, la, lambda),
        ]
        .iter()
        .fold(SqrtRational::one(), |acc, f| &acc * f);
        let sign = if (lambda + l).twice().rem_euclid(4) == 0 { 1 } else { -1 };
        terms.push((lambda, v.scale_int(sign)));
    }
    Ok(collect(terms, radial))
}

/// Two-electron direct Coulomb element between channels with a one-orbital target.
pub fn two_electron_element(bra: &Channel, ket: &Channel, radial: &dyn RadialProvider) -> Result<MatElResult, MatElError> {
    for c in [bra, ket] {
        if c.electrons() != 2 {
            return Err(MatElError::ElectronCount { expected: 2, found: c.electrons() });
        }
    }
    if bra.total_l != ket.total_l || bra.total_s != ket.total_s || !bra.admissible() || !ket.admissible() {
        return Ok(MatElResult::zero());
    }
    let (fb0, fb1, fk0, fk1) = (bra.radial_fn(0), bra.radial_fn(1), ket.radial_fn(0), ket.radial_fn(1));
    let mut slater = std::collections::BTreeMap::new();
    for lambda in lambda_range((bra.l0, ket.l0), (bra.target[0].l, ket.target[0].l)) {
        let lam = lambda.as_integer().expect("integer multipole") as u32;
        slater.insert(lam, radial.slater(lam, &fb0, &fk0, &fb1, &fk1)?);
    }
    direct_two_electron(bra.l0, bra.target[0].l, ket.l0, ket.target[0].l, ket.total_l, &|lam| slater[&lam])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i32) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn kernel_examples() {
        assert!((multipole_kernel(0, 1.0, 2.0) - 2.0 * PI).abs() < 1e-15);
        assert!((multipole_kernel(1, 0.5, 2.0) - 0.523_598_775_598_298_8).abs() < 1e-15);
        assert!((multipole_kernel(2, 1.5, 1.5) - 4.0 * PI / 5.0 / 1.5).abs() < 1e-15);
    }

    #[test]
    fn both_forms_agree_to_three() {
        let unit = |_: u32| 1.0;
        for t in 0..(4i32.pow(5)) {
            let v: Vec<HalfInt> = (0..5).map(|i| h(2 * ((t / 4i32.pow(i)) % 4))).collect();
            let a = direct_two_electron(v[0], v[1], v[2], v[3], v[4], &unit).unwrap();
            let b = direct_two_electron_cowan(v[0], v[1], v[2], v[3], v[4], &unit).unwrap();
            assert_eq!(a.exact_angular(), b.exact_angular(), "{v:?}");
            let swapped = direct_two_electron_cowan(v[2], v[3], v[0], v[1], v[4], &unit).unwrap();
            assert_eq!(b.exact_angular(), swapped.exact_angular(), "{v:?}");
        }
    }

    #[test]
    fn zero_ranks_give_one() {
        let r = direct_two_electron(Z, Z, Z, Z, Z, &|_| 1.0).unwrap();
        assert_eq!(r.exact_angular(), vec![SqrtRational::one()]);
        assert_eq!(r.total, 1.0);
        assert!(direct_two_electron(h(2), Z, Z, Z, h(2), &|_| 1.0).unwrap().is_exact_zero());
    }
}
