use std::cmp::Ordering;
use std::fmt;
use std::sync::LazyLock;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use parking_lot::RwLock;

/// A rational number held as `sign * prod p^e`.
///
/// Zero is canonical: sign `0` and no factors. Factors are sorted by prime and
/// never carry a zero exponent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeRational {
    sign: i8,
    factors: Vec<(u32, i64)>,
}

impl PrimeRational {
    pub fn zero() -> Self {
        PrimeRational { sign: 0, factors: Vec::new() }
    }

    pub fn one() -> Self {
        PrimeRational { sign: 1, factors: Vec::new() }
    }

    /// Builds `sign * prod p^e` from an unsorted factor list; zero exponents are dropped.
    pub fn from_factors(sign: i8, factors: impl IntoIterator<Item = (u32, i64)>) -> Self {
        if sign == 0 {
            return Self::zero();
        }
        let mut v: Vec<(u32, i64)> = factors.into_iter().collect();
        v.sort_unstable_by_key(|&(p, _)| p);
        let mut out: Vec<(u32, i64)> = Vec::with_capacity(v.len());
        for (p, e) in v {
            match out.last_mut() {
                Some((q, f)) if *q == p => *f = checked(f.checked_add(e)),
                _ => out.push((p, e)),
            }
        }
        out.retain(|&(_, e)| e != 0);
        PrimeRational { sign: sign.signum(), factors: out }
    }

    pub fn from_int(n: i64) -> Self {
        if n == 0 {
            return Self::zero();
        }
        let sign = if n < 0 { -1 } else { 1 };
        let mut m = n.unsigned_abs();
        let mut factors = Vec::new();
        let mut p = 2u64;
        while p * p <= m {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            if e > 0 {
                factors.push((p as u32, e));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if m > 1 {
            factors.push((u32::try_from(m).expect("prime factor exceeds u32"), 1));
        }
        PrimeRational { sign, factors }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_int(num).div(&Self::from_int(den))
    }

    /// `n!` via Legendre's formula, memoized.
    pub fn factorial(n: u32) -> Self {
        factorial_cache().get(n)
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn factors(&self) -> &[(u32, i64)] {
        &self.factors
    }

    pub fn abs(&self) -> Self {
        PrimeRational { sign: self.sign.abs(), factors: self.factors.clone() }
    }

    pub fn neg(&self) -> Self {
        PrimeRational { sign: -self.sign, factors: self.factors.clone() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.sign == 0 || rhs.sign == 0 {
            return Self::zero();
        }
        PrimeRational { sign: self.sign * rhs.sign, factors: merge(&self.factors, &rhs.factors, 1) }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        assert!(rhs.sign != 0, "division by zero PrimeRational");
        if self.sign == 0 {
            return Self::zero();
        }
        PrimeRational { sign: self.sign * rhs.sign, factors: merge(&self.factors, &rhs.factors, -1) }
    }

    pub fn recip(&self) -> Self {
        Self::one().div(self)
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Self::one();
        }
        assert!(self.sign != 0 || k > 0, "zero to a non-positive power");
        if self.sign == 0 {
            return Self::zero();
        }
        let sign = if self.sign < 0 && k % 2 != 0 { -1 } else { 1 };
        let factors = self.factors.iter().map(|&(p, e)| (p, checked(e.checked_mul(k)))).collect();
        PrimeRational { sign, factors }
    }

    /// Splits `|self|` as `outer^2 * radicand` with every radicand exponent in `{0, 1}`.
    pub fn sqrt_split(&self) -> (PrimeRational, Vec<u32>) {
        let mut outer = Vec::with_capacity(self.factors.len());
        let mut radicand = Vec::new();
        for &(p, e) in &self.factors {
            let half = e.div_euclid(2);
            if half != 0 {
                outer.push((p, half));
            }
            if e.rem_euclid(2) == 1 {
                radicand.push(p);
            }
        }
        let sign = if self.sign == 0 { 0 } else { 1 };
        if sign == 0 {
            return (Self::zero(), Vec::new());
        }
        (PrimeRational { sign, factors: outer }, radicand)
    }

    pub fn numer_denom(&self) -> (BigUint, BigUint) {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        for &(p, e) in &self.factors {
            let pe = BigUint::from(p).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num *= pe;
            } else {
                den *= pe;
            }
        }
        if self.sign == 0 {
            num = BigUint::zero();
        }
        (num, den)
    }

    pub fn to_big_rational(&self) -> BigRational {
        let (n, d) = self.numer_denom();
        let n = BigInt::from(n);
        let n = if self.sign < 0 { -n } else { n };
        BigRational::new_raw(n, BigInt::from(d))
    }

    pub fn to_f64(&self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let ln: f64 = self.factors.iter().map(|&(p, e)| e as f64 * f64::from(p).ln()).sum();
        f64::from(self.sign) * ln.exp()
    }
}

impl PartialOrd for PrimeRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PrimeRational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_big_rational().cmp(&other.to_big_rational())
    }
}

impl fmt::Display for PrimeRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.numer_denom();
        let s = if self.sign < 0 { "-" } else { "" };
        if d == BigUint::one() {
            write!(f, "{s}{n}")
        } else {
            write!(f, "{s}{n}/{d}")
        }
    }
}

#[inline]
fn checked(v: Option<i64>) -> i64 {
    v.expect("prime exponent overflowed i64")
}

fn merge(a: &[(u32, i64)], b: &[(u32, i64)], k: i64) -> Vec<(u32, i64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, checked(b[j].1.checked_mul(k))));
            j += 1;
        } else {
            let e = checked(a[i].1.checked_add(checked(b[j].1.checked_mul(k))));
            if e != 0 {
                out.push((a[i].0, e));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

struct FactorialCache {
    primes: RwLock<Vec<u32>>,
    table: RwLock<Vec<PrimeRational>>,
    big: RwLock<Vec<BigUint>>,
}

fn factorial_cache() -> &'static FactorialCache {
    static CACHE: LazyLock<FactorialCache> = LazyLock::new(|| FactorialCache {
        primes: RwLock::new(Vec::new()),
        table: RwLock::new(vec![PrimeRational::one()]),
        big: RwLock::new(vec![BigUint::one()]),
    });
    &CACHE
}

impl FactorialCache {
    fn get(&self, n: u32) -> PrimeRational {
        if let Some(v) = self.table.read().get(n as usize) {
            return v.clone();
        }
        self.extend(n);
        self.table.read()[n as usize].clone()
    }

    fn get_big(&self, n: u32) -> BigUint {
        if let Some(v) = self.big.read().get(n as usize) {
            return v.clone();
        }
        let mut big = self.big.write();
        while big.len() <= n as usize {
            let k = big.len();
            let next = &big[k - 1] * BigUint::from(k);
            big.push(next);
        }
        big[n as usize].clone()
    }

    fn extend(&self, n: u32) {
        let primes = {
            let mut primes = self.primes.write();
            let have = primes.last().copied().unwrap_or(1);
            if have < n {
                *primes = sieve(n.max(2 * have).max(16));
            }
            primes.clone()
        };
        let mut table = self.table.write();
        while table.len() <= n as usize {
            let k = table.len() as u32;
            let factors = primes
                .iter()
                .take_while(|&&p| p <= k)
                .map(|&p| (p, legendre(k, p)))
                .filter(|&(_, e)| e > 0);
            table.push(PrimeRational::from_factors(1, factors));
        }
    }
}

/// `n!` as a big integer, memoized.
pub fn factorial_big(n: u32) -> BigUint {
    factorial_cache().get_big(n)
}

/// Exponent of `p` in `n!`.
fn legendre(n: u32, p: u32) -> i64 {
    let mut e = 0i64;
    let mut q = u64::from(p);
    while q <= u64::from(n) {
        e += (u64::from(n) / q) as i64;
        q *= u64::from(p);
    }
    e
}

fn sieve(n: u32) -> Vec<u32> {
    let n = n as usize;
    let mut is = vec![true; n + 1];
    is[0] = false;
    if n >= 1 {
        is[1] = false;
    }
    let mut i = 2;
    while i * i <= n {
        if is[i] {
            let mut k = i * i;
            while k <= n {
                is[k] = false;
                k += i;
            }
        }
        i += 1;
    }
    is.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i as u32).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_match_products() {
        let mut acc = BigUint::one();
        for n in 0..40u32 {
            if n > 0 {
                acc *= BigUint::from(n);
            }
            let f = PrimeRational::factorial(n);
            assert_eq!(f.numer_denom(), (acc.clone(), BigUint::one()), "n = {n}");
            assert_eq!(factorial_big(n), acc);
        }
    }

    #[test]
    fn arithmetic() {
        let a = PrimeRational::from_ratio(12, 35);
        let b = PrimeRational::from_ratio(-7, 4);
        assert_eq!(a.mul(&b), PrimeRational::from_ratio(-3, 5));
        assert_eq!(a.div(&a), PrimeRational::one());
        assert_eq!(b.pow(2), PrimeRational::from_ratio(49, 16));
        assert_eq!(b.pow(-1), PrimeRational::from_ratio(-4, 7));
        assert!(a.mul(&PrimeRational::zero()).is_zero());
        assert_eq!(a.to_string(), "12/35");
    }

    #[test]
    fn sqrt_split_is_squarefree() {
        let x = PrimeRational::from_ratio(72, 5);
        let (outer, rad) = x.sqrt_split();
        // 72/5 = 2^3 3^2 5^-1 = (2 * 3 * 5^-1)^2 * (2 * 5)
        assert_eq!(outer, PrimeRational::from_ratio(6, 5));
        assert_eq!(rad, vec![2, 5]);
    }
}
