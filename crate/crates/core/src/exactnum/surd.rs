use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExactError, HalfInt, PrimeRational};

/// One term `coeff * sqrt(radicand)`; the radicand is a squarefree positive
/// integer stored as its sorted prime list (empty for 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurdTerm {
    pub coeff: BigRational,
    pub radicand: Vec<u32>,
}

/// Exact value `sum_i c_i * sqrt(r_i)` with rational `c_i` and distinct
/// squarefree radicands `r_i`.
///
/// Every Clebsch-Gordan coefficient and n-j symbol is a single term; sums of
/// such values with unrelated radicands stay as several terms.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SqrtRational {
    terms: Vec<SurdTerm>,
}

impl SqrtRational {
    pub fn zero() -> Self {
        SqrtRational { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut out = SqrtRational { terms: vec![SurdTerm { coeff: q, radicand: Vec::new() }] };
        out.terms.retain(|t| !t.coeff.is_zero());
        out
    }

    /// `sign(x) * sqrt(|x|)`.
    pub fn signed_sqrt(x: &PrimeRational) -> Self {
        if x.is_zero() {
            return Self::zero();
        }
        let (outer, radicand) = x.sqrt_split();
        let mut coeff = outer.to_big_rational();
        if x.sign() < 0 {
            coeff = -coeff;
        }
        SqrtRational { terms: vec![SurdTerm { coeff, radicand }] }
    }

    /// `coeff * sqrt(radicand)` for any rational `coeff` and positive rational `radicand`.
    pub fn from_parts(coeff: &PrimeRational, radicand: &PrimeRational) -> Result<Self, ExactError> {
        if radicand.sign() < 0 {
            return Err(ExactError::NegativeRadicand);
        }
        if coeff.is_zero() || radicand.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self::signed_sqrt(radicand).scale(&coeff.to_big_rational()))
    }

    /// `sqrt(2j + 1)`.
    pub fn hat(j: HalfInt) -> Self {
        Self::signed_sqrt(&PrimeRational::from_int(i64::from(j.dim())))
    }

    pub fn terms(&self) -> &[SurdTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_single_term(&self) -> bool {
        self.terms.len() == 1
    }

    /// The rational value, if there is no irrational part.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [t] if t.radicand.is_empty() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    /// Sign of a single-term value (`0` for zero); `None` when several terms mix.
    pub fn signum(&self) -> Option<i32> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] => Some(if t.coeff.is_positive() { 1 } else { -1 }),
            _ => None,
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        SqrtRational {
            terms: self.terms.iter().map(|t| SurdTerm { coeff: &t.coeff * q, radicand: t.radicand.clone() }).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    /// Exact square of a value; for single-term values the result is rational.
    pub fn square(&self) -> Self {
        self * self
    }

    /// Division by a single-term value.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        let t = match rhs.terms.as_slice() {
            [] => return Err(ExactError::DivisionByZero),
            [t] => t,
            _ => return Err(ExactError::NonSingleTermDivisor),
        };
        // 1 / (c sqrt(r)) = (1 / (c r)) sqrt(r)
        let r = radicand_value(&t.radicand);
        let inv = SurdTerm {
            coeff: (&t.coeff * BigRational::from_integer(BigInt::from(r))).recip(),
            radicand: t.radicand.clone(),
        };
        Ok(self * &SqrtRational { terms: vec![inv] })
    }

    fn normalize(mut terms: Vec<SurdTerm>) -> Self {
        terms.sort_by(|a, b| a.radicand.cmp(&b.radicand));
        let mut out: Vec<SurdTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.radicand == t.radicand => last.coeff += t.coeff,
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        SqrtRational { terms: out }
    }

    /// Round-to-nearest `f64` of the exact value.
    ///
    /// Each term is evaluated as an integer square root carrying at least 120
    /// significant bits before the final rounding, so the result does not depend
    /// on term order or platform.
    pub fn to_f64(&self) -> Result<f64, ExactError> {
        if self.terms.is_empty() {
            return Ok(0.0);
        }
        // squares q_i = c_i^2 r_i with signs
        let squares: Vec<(bool, BigInt, BigInt)> = self
            .terms
            .iter()
            .map(|t| {
                let r = BigInt::from(radicand_value(&t.radicand));
                let n = t.coeff.numer() * t.coeff.numer() * r;
                let d = t.coeff.denom() * t.coeff.denom();
                (t.coeff.is_negative(), n, d)
            })
            .collect();
        // log2 of the largest sqrt(q)
        let top = squares
            .iter()
            .map(|(_, n, d)| (n.bits() as i64 - d.bits() as i64) / 2)
            .max()
            .unwrap_or(0);
        let k: i64 = 124 - top;
        let mut total = BigInt::zero();
        let mut inexact = false;
        for (neg, n, d) in &squares {
            let (num, den) = if k >= 0 {
                (n << (2 * k as u64), d.clone())
            } else {
                (n.clone(), d << (2 * (-k) as u64))
            };
            let (quot, rem) = num.div_rem(&den);
            let root = quot.sqrt();
            if !rem.is_zero() || &root * &root != quot {
                inexact = true;
            }
            if *neg {
                total -= root;
            } else {
                total += root;
            }
        }
        big_to_f64(&total, -k, inexact)
    }
}

fn radicand_value(r: &[u32]) -> BigUint {
    r.iter().fold(BigUint::one(), |acc, &p| acc * BigUint::from(p))
}

/// Rounds `m * 2^exp` to the nearest double; `sticky` marks discarded nonzero
/// bits below `m`.
fn big_to_f64(m: &BigInt, exp: i64, sticky: bool) -> Result<f64, ExactError> {
    if m.is_zero() {
        return Ok(0.0);
    }
    let neg = m.sign() == Sign::Minus;
    let mag = m.magnitude();
    let bits = mag.bits() as i64;
    let (mut mant, mut e) = if bits > 53 {
        let shift = (bits - 53) as u64;
        let mant = mag >> shift;
        let rem = mag - (&mant << shift);
        let half = BigUint::one() << (shift - 1);
        let mut mant = mant.to_u64().expect("53-bit mantissa");
        let up = match rem.cmp(&half) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => sticky || mant & 1 == 1,
        };
        if up {
            mant += 1;
        }
        (mant, exp + shift as i64)
    } else {
        (mag.to_u64().expect("small mantissa"), exp)
    };
    if mant == 1u64 << 53 {
        mant >>= 1;
        e += 1;
    }
    let top_exp = e + 63 - i64::from(mant.leading_zeros());
    if top_exp > 1023 {
        return Err(ExactError::Overflow);
    }
    let v = ldexp(mant as f64, e);
    Ok(if neg { -v } else { v })
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    let step = |k: i64| f64::from_bits(((k + 1023) as u64) << 52);
    while e > 1000 {
        x *= step(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= step(-1000);
        e += 1000;
    }
    x * step(e)
}

fn mul_terms(a: &SurdTerm, b: &SurdTerm) -> SurdTerm {
    let mut coeff = &a.coeff * &b.coeff;
    let mut radicand = Vec::with_capacity(a.radicand.len() + b.radicand.len());
    let mut common = BigUint::one();
    let (mut i, mut j) = (0, 0);
    let (x, y) = (&a.radicand, &b.radicand);
    while i < x.len() || j < y.len() {
        if j >= y.len() || (i < x.len() && x[i] < y[j]) {
            radicand.push(x[i]);
            i += 1;
        } else if i >= x.len() || y[j] < x[i] {
            radicand.push(y[j]);
            j += 1;
        } else {
            common *= BigUint::from(x[i]);
            i += 1;
            j += 1;
        }
    }
    if !common.is_one() {
        coeff *= BigRational::from_integer(BigInt::from(common));
    }
    SurdTerm { coeff, radicand }
}

impl Mul<&SqrtRational> for &SqrtRational {
    type Output = SqrtRational;
    fn mul(self, rhs: &SqrtRational) -> SqrtRational {
        if self.terms.len() == 1 && rhs.terms.len() == 1 {
            return SqrtRational { terms: vec![mul_terms(&self.terms[0], &rhs.terms[0])] };
        }
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                out.push(mul_terms(a, b));
            }
        }
        SqrtRational::normalize(out)
    }
}

impl Mul for SqrtRational {
    type Output = SqrtRational;
    fn mul(self, rhs: SqrtRational) -> SqrtRational {
        &self * &rhs
    }
}

impl Mul<&SqrtRational> for SqrtRational {
    type Output = SqrtRational;
    fn mul(self, rhs: &SqrtRational) -> SqrtRational {
        &self * rhs
    }
}

impl Add<&SqrtRational> for &SqrtRational {
    type Output = SqrtRational;
    fn add(self, rhs: &SqrtRational) -> SqrtRational {
        let mut terms = self.terms.clone();
        terms.extend(rhs.terms.iter().cloned());
        SqrtRational::normalize(terms)
    }
}

impl Add for SqrtRational {
    type Output = SqrtRational;
    fn add(mut self, rhs: SqrtRational) -> SqrtRational {
        self.terms.extend(rhs.terms);
        SqrtRational::normalize(self.terms)
    }
}

impl AddAssign<&SqrtRational> for SqrtRational {
    fn add_assign(&mut self, rhs: &SqrtRational) {
        for t in &rhs.terms {
            match self.terms.binary_search_by(|x| x.radicand.cmp(&t.radicand)) {
                Ok(i) => {
                    self.terms[i].coeff += &t.coeff;
                    if self.terms[i].coeff.is_zero() {
                        self.terms.remove(i);
                    }
                }
                Err(i) => self.terms.insert(i, t.clone()),
            }
        }
    }
}

impl AddAssign for SqrtRational {
    fn add_assign(&mut self, rhs: SqrtRational) {
        *self += &rhs;
    }
}

impl Neg for SqrtRational {
    type Output = SqrtRational;
    fn neg(mut self) -> SqrtRational {
        for t in &mut self.terms {
            t.coeff = -t.coeff.clone();
        }
        self
    }
}

impl Neg for &SqrtRational {
    type Output = SqrtRational;
    fn neg(self) -> SqrtRational {
        -self.clone()
    }
}

impl Sub<&SqrtRational> for &SqrtRational {
    type Output = SqrtRational;
    fn sub(self, rhs: &SqrtRational) -> SqrtRational {
        self + &(-rhs)
    }
}

impl Sub for SqrtRational {
    type Output = SqrtRational;
    fn sub(self, rhs: SqrtRational) -> SqrtRational {
        &self - &rhs
    }
}

impl From<i64> for SqrtRational {
    fn from(n: i64) -> Self {
        SqrtRational::from_int(n)
    }
}

/// A term in display orientation: `coeff * sqrt(r / s)`.
struct DisplayTerm {
    coeff: BigRational,
    r: BigUint,
    s: BigUint,
}

fn display_term(t: &SurdTerm) -> DisplayTerm {
    let mut coeff = t.coeff.clone();
    let mut r = BigUint::one();
    let mut s = BigUint::one();
    for &p in &t.radicand {
        let pb = BigInt::from(p);
        if coeff.denom().is_multiple_of(&pb) {
            // c sqrt(p) = (c p) sqrt(1/p) keeps the coefficient exponent of p closest to zero
            coeff *= BigRational::from_integer(pb);
            s *= BigUint::from(p);
        } else {
            r *= BigUint::from(p);
        }
    }
    DisplayTerm { coeff, r, s }
}

impl fmt::Display for SqrtRational {
    /// Canonical text: `p/q` for rationals, otherwise terms
    /// `±(p/q)·sqrt(r/s)` in increasing radicand order separated by spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        if let Some(q) = self.as_rational() {
            return if q.is_integer() { write!(f, "{}", q.numer()) } else { write!(f, "{}/{}", q.numer(), q.denom()) };
        }
        let mut shown: Vec<DisplayTerm> = self.terms.iter().map(display_term).collect();
        shown.sort_by(|a, b| (&a.r * &b.s).cmp(&(&b.r * &a.s)));
        for (i, t) in shown.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let sign = if t.coeff.is_negative() { '-' } else { '+' };
            write!(f, "{sign}({}/{})·sqrt({}/{})", t.coeff.numer().abs(), t.coeff.denom(), t.r, t.s)?;
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

impl FromStr for SqrtRational {
    type Err = ExactError;

    /// Parses the canonical rendering (and any term order or orientation of it).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::Parse(format!("not an exact surd: {s:?}"));
        let s = s.trim();
        if !s.contains("sqrt") {
            return parse_rational(s).map(SqrtRational::from_rational).ok_or_else(bad);
        }
        let mut acc = SqrtRational::zero();
        for tok in s.split_whitespace() {
            let (sign, rest) = match tok.chars().next() {
                Some('+') => (1, &tok[1..]),
                Some('-') => (-1, &tok[1..]),
                _ => (1, tok),
            };
            let (c, r) = rest
                .split_once("·sqrt")
                .or_else(|| rest.split_once("*sqrt"))
                .ok_or_else(bad)?;
            let c = c.trim().strip_prefix('(').and_then(|c| c.strip_suffix(')')).ok_or_else(bad)?;
            let r = r.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
            let c = parse_rational(c).ok_or_else(bad)?;
            let r = parse_rational(r).ok_or_else(bad)?;
            if r.is_negative() {
                return Err(ExactError::NegativeRadicand);
            }
            let r = rational_to_prime(&r).ok_or_else(bad)?;
            let term = SqrtRational::signed_sqrt(&r).scale(&(c * BigRational::from_integer(BigInt::from(sign))));
            acc += &term;
        }
        Ok(acc)
    }
}

fn rational_to_prime(q: &BigRational) -> Option<PrimeRational> {
    let n = q.numer().to_i64()?;
    let d = q.denom().to_i64()?;
    Some(PrimeRational::from_ratio(n, d))
}

/// A value `value * (4 pi)^(half_power / 2)`; spherical-harmonic integrals
/// carry the `1/sqrt(4 pi)` that plain surds cannot hold.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiScaled {
    pub value: SqrtRational,
    pub half_power: i32,
}

impl PiScaled {
    pub fn new(value: SqrtRational, half_power: i32) -> Self {
        let half_power = if value.is_zero() { 0 } else { half_power };
        PiScaled { value, half_power }
    }

    pub fn rational(value: SqrtRational) -> Self {
        PiScaled { value, half_power: 0 }
    }

    pub fn zero() -> Self {
        Self::rational(SqrtRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn to_f64(&self) -> Result<f64, ExactError> {
        let v = self.value.to_f64()?;
        Ok(v * (4.0 * std::f64::consts::PI).powf(f64::from(self.half_power) / 2.0))
    }

    /// The plain surd when no power of `4 pi` remains.
    pub fn into_surd(self) -> Result<SqrtRational, ExactError> {
        if self.half_power == 0 || self.value.is_zero() {
            Ok(self.value)
        } else {
            Err(ExactError::ResidualPi(self.half_power))
        }
    }
}

impl Mul<&PiScaled> for &PiScaled {
    type Output = PiScaled;
    fn mul(self, rhs: &PiScaled) -> PiScaled {
        PiScaled::new(&self.value * &rhs.value, self.half_power + rhs.half_power)
    }
}

impl fmt::Display for PiScaled {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.half_power == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{}·(4π)^({})", self.value, HalfInt::from_twice(self.half_power))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pr(n: i64, d: i64) -> PrimeRational {
        PrimeRational::from_ratio(n, d)
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn float_examples() {
        assert_eq!(SqrtRational::one().to_f64().unwrap(), 1.0);
        let v = SqrtRational::from_parts(&pr(1, 2), &pr(2, 1)).unwrap();
        assert_eq!(v.to_f64().unwrap(), 0.7071067811865476);
        let cancel = &SqrtRational::one() + &SqrtRational::from_int(-1);
        assert!(cancel.is_zero());
        assert_eq!(cancel.to_f64().unwrap(), 0.0);
    }

    #[test]
    fn float_rounding_matches_libm_sqrt() {
        // inputs exactly representable, so sqrt is correctly rounded on both sides
        for n in 1..500i64 {
            for d in [1, 4, 1024] {
                let v = SqrtRational::signed_sqrt(&pr(n, d));
                assert_eq!(v.to_f64().unwrap(), (n as f64 / d as f64).sqrt(), "n = {n}, d = {d}");
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        let huge = SqrtRational::signed_sqrt(&PrimeRational::from_factors(1, [(2, 4000)]));
        assert_eq!(huge.to_f64(), Err(ExactError::Overflow));
    }

    #[test]
    fn radicand_grouping_cancels() {
        // sqrt(2) - 2 sqrt(1/2) = 0
        let a = SqrtRational::signed_sqrt(&pr(2, 1));
        let b = SqrtRational::signed_sqrt(&pr(1, 2)).scale_int(2);
        assert!((&a - &b).is_zero());
    }

    #[test]
    fn canonical_text() {
        let v = SqrtRational::signed_sqrt(&pr(1, 2));
        assert_eq!(v.to_string(), "+(1/1)·sqrt(1/2)");
        assert_eq!(SqrtRational::from_ratio(1, 3).to_string(), "1/3");
        assert_eq!(SqrtRational::from_ratio(-2, 1).to_string(), "-2");
        let w = SqrtRational::signed_sqrt(&pr(-27, 8));
        assert_eq!(w.to_string(), "-(3/2)·sqrt(3/2)");
        let sum = &SqrtRational::signed_sqrt(&pr(3, 1)) + &SqrtRational::signed_sqrt(&pr(1, 2));
        assert_eq!(sum.to_string(), "+(1/1)·sqrt(1/2) +(1/1)·sqrt(3/1)");
    }

    #[test]
    fn division_by_single_term() {
        let a = SqrtRational::signed_sqrt(&pr(3, 1));
        let b = SqrtRational::signed_sqrt(&pr(6, 1));
        assert_eq!(a.checked_div(&b).unwrap(), SqrtRational::signed_sqrt(&pr(1, 2)));
        assert_eq!(a.checked_div(&SqrtRational::zero()), Err(ExactError::DivisionByZero));
        let two_terms = &a + &SqrtRational::one();
        assert_eq!(a.checked_div(&two_terms), Err(ExactError::NonSingleTermDivisor));
    }

    fn arb_rational() -> impl Strategy<Value = PrimeRational> {
        (-400i64..400, 1i64..400).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| pr(n, d))
    }

    fn arb_surd() -> impl Strategy<Value = SqrtRational> {
        prop::collection::vec((arb_rational(), arb_rational()), 0..4).prop_map(|terms| {
            terms.iter().fold(SqrtRational::zero(), |acc, (c, r)| &acc + &SqrtRational::from_parts(c, &r.abs()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn product_of_roots_squares_to_product(p in arb_rational(), q in arb_rational()) {
            let (p, q) = (p.abs(), q.abs());
            let prod = &SqrtRational::signed_sqrt(&p) * &SqrtRational::signed_sqrt(&q);
            let sq = prod.square();
            prop_assert_eq!(sq.as_rational().unwrap(), p.mul(&q).to_big_rational());
        }

        #[test]
        fn text_round_trip_is_idempotent(v in arb_surd()) {
            let text = v.to_string();
            let back: SqrtRational = text.parse().unwrap();
            prop_assert_eq!(&back, &v);
            prop_assert_eq!(back.to_string(), text);
            // normalizing an already-normal value leaves the term list unchanged
            let again = &back + &SqrtRational::zero();
            prop_assert_eq!(again.terms(), v.terms());
        }

        #[test]
        fn single_term_float_squares_back(c in arb_rational(), r in arb_rational()) {
            let v = SqrtRational::from_parts(&c, &r.abs()).unwrap();
            let f = v.to_f64().unwrap();
            let exact = c.to_f64() * c.to_f64() * r.abs().to_f64();
            prop_assert!(((f * f) - exact).abs() <= 4e-15 * exact.abs());
        }
    }
}
