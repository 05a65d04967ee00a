use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ExactError;

/// An angular momentum (or projection) stored as twice its value, so that
/// `j = 3/2` is held as `3`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    #[inline]
    pub const fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    /// An integer momentum `n`.
    #[inline]
    pub const fn int(n: i32) -> Self {
        HalfInt(2 * n)
    }

    #[inline]
    pub const fn twice(self) -> i32 {
        self.0
    }

    #[inline]
    pub const fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub const fn as_integer(self) -> Option<i32> {
        if self.0 % 2 == 0 {
            Some(self.0 / 2)
        } else {
            None
        }
    }

    #[inline]
    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    /// `2j + 1`, the multiplet dimension.
    #[inline]
    pub const fn dim(self) -> i32 {
        self.0 + 1
    }

    #[inline]
    pub const fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// Projections `-j, -j+1, ..., j`.
    pub fn projections(self) -> impl DoubleEndedIterator<Item = HalfInt> + Clone {
        let j = self.0;
        (0..=j.max(-1)).map(move |k| HalfInt(-j + 2 * k))
    }

    /// Values `lo, lo+1, ..., hi` (inclusive, integer steps).
    pub fn range_inclusive(lo: HalfInt, hi: HalfInt) -> impl DoubleEndedIterator<Item = HalfInt> + Clone {
        let (lo, hi) = (lo.0, hi.0);
        let n = if hi >= lo { (hi - lo) / 2 + 1 } else { 0 };
        (0..n).map(move |k| HalfInt(lo + 2 * k))
    }
}

/// `true` iff `|a-b| <= c <= a+b` and `a+b+c` is an integer.
#[inline]
pub fn triangle_ok(a: HalfInt, b: HalfInt, c: HalfInt) -> bool {
    let (a, b, c) = (a.0, b.0, c.0);
    a >= 0 && b >= 0 && c >= 0 && (a + b + c) % 2 == 0 && c <= a + b && c >= (a - b).abs()
}

/// All `c` with `triangle_ok(a, b, c)`.
pub fn triangle_range(a: HalfInt, b: HalfInt) -> impl DoubleEndedIterator<Item = HalfInt> + Clone {
    let lo = HalfInt((a.0 - b.0).abs());
    let hi = HalfInt(a.0 + b.0);
    let n = if a.0 < 0 || b.0 < 0 { 0 } else { (hi.0 - lo.0) / 2 + 1 };
    (0..n).map(move |k| HalfInt(lo.0 + 2 * k))
}

impl Add for HalfInt {
    type Output = HalfInt;
    #[inline]
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    #[inline]
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    #[inline]
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = ExactError;

    /// Accepts `3`, `-1`, `3/2`, `-1/2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ExactError::Parse(format!("not a half-integer: {s:?}"));
        let s = s.trim();
        match s.split_once('/') {
            None => s.parse::<i32>().map(HalfInt::int).map_err(|_| bad()),
            Some((num, den)) => {
                let num: i32 = num.trim().parse().map_err(|_| bad())?;
                match den.trim() {
                    "1" => Ok(HalfInt::int(num)),
                    "2" => Ok(HalfInt(num)),
                    _ => Err(bad()),
                }
            }
        }
    }
}

impl Serialize for HalfInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_i32(self.0)
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        i32::deserialize(deserializer).map(HalfInt)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i32) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn triangle_examples() {
        assert!(triangle_ok(h(2), h(2), h(4)));
        assert!(!triangle_ok(h(1), h(1), h(1)));
        for j in 0..12 {
            assert!(triangle_ok(h(0), h(j), h(j)));
        }
        assert!(!triangle_ok(h(2), h(2), h(6)));
        assert!(!triangle_ok(h(-2), h(2), h(0)));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("3/2".parse::<HalfInt>().unwrap(), h(3));
        assert_eq!("-1/2".parse::<HalfInt>().unwrap(), h(-1));
        assert_eq!("2".parse::<HalfInt>().unwrap(), h(4));
        assert!("1/3".parse::<HalfInt>().is_err());
        assert_eq!(h(3).to_string(), "3/2");
        assert_eq!(h(-4).to_string(), "-2");
    }

    #[test]
    fn projections_and_ranges() {
        let ms: Vec<i32> = h(3).projections().map(|m| m.twice()).collect();
        assert_eq!(ms, vec![-3, -1, 1, 3]);
        let cs: Vec<i32> = triangle_range(h(2), h(3)).map(|c| c.twice()).collect();
        assert_eq!(cs, vec![1, 3, 5]);
        assert_eq!(HalfInt::range_inclusive(h(4), h(2)).count(), 0);
    }
}
