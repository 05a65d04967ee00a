#![allow(dead_code)]

use std::collections::BTreeMap;

use recouple::exactnum::HalfInt;
use recouple::matel::Channel;

pub fn h(t: i32) -> HalfInt {
    HalfInt::from_twice(t)
}

pub fn int(n: i32) -> HalfInt {
    h(2 * n)
}

/// Every three-electron channel with orbital ranks up to `lmax`.
pub fn he_channels(lmax: u32) -> Vec<Channel> {
    Channel::enumerate(3, lmax)
}

/// Every four-electron channel with orbital ranks up to `lmax`.
pub fn li_channels(lmax: u32) -> Vec<Channel> {
    Channel::enumerate(4, lmax)
}

#[allow(unused_imports)]
pub use recouple::recoupling::channel_assignment as assign;

#[allow(unused_imports)]
pub use recouple::oracle::TaggedRadial as Fingerprint;

/// Sum of term values keyed by multipole.
pub fn per_lambda(terms: impl IntoIterator<Item = (u32, f64)>) -> BTreeMap<u32, f64> {
    let mut m = BTreeMap::new();
    for (k, v) in terms {
        *m.entry(k).or_insert(0.0) += v;
    }
    m.retain(|_, v: &mut f64| v.abs() > 1e-13);
    m
}

pub fn close(a: &BTreeMap<u32, f64>, b: &BTreeMap<u32, f64>, tol: f64) -> bool {
    let keys: std::collections::BTreeSet<_> = a.keys().chain(b.keys()).collect();
    keys.into_iter().all(|k| {
        let x = a.get(k).copied().unwrap_or(0.0);
        let y = b.get(k).copied().unwrap_or(0.0);
        (x - y).abs() <= tol * (1.0 + y.abs())
    })
}
