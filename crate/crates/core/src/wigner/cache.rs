//! Process-wide memo tables. Entries are pure functions of their keys, so a
//! lookup racing a concurrent insert only duplicates work.

use std::collections::HashMap;
use std::sync::LazyLock;

use parking_lot::RwLock;

use crate::exactnum::{HalfInt, SqrtRational};

type Table<K> = LazyLock<RwLock<HashMap<K, SqrtRational>>>;

static CG: Table<[i32; 6]> = LazyLock::new(Default::default);
static SIX_J: Table<[i32; 6]> = LazyLock::new(Default::default);
static NINE_J: Table<[i32; 9]> = LazyLock::new(Default::default);

fn memo<K, F>(table: &Table<K>, key: K, compute: F) -> SqrtRational
where
    K: std::hash::Hash + Eq + Copy,
    F: FnOnce() -> SqrtRational,
{
    if let Some(v) = table.read().get(&key) {
        return v.clone();
    }
    let v = compute();
    table.write().entry(key).or_insert_with(|| v.clone());
    v
}

pub(super) fn cg<F>(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, jj: HalfInt, mm: HalfInt, compute: F) -> SqrtRational
where
    F: FnOnce() -> SqrtRational,
{
    let key = [j1, m1, j2, m2, jj, mm].map(HalfInt::twice);
    memo(&CG, key, compute)
}

/// Smallest of the 24 tetrahedral images of `{j1 j2 j3; j4 j5 j6}`.
pub(super) fn six_j_key(t: [i32; 6]) -> [i32; 6] {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    const FLIPS: [[bool; 3]; 4] = [[false, false, false], [true, true, false], [true, false, true], [false, true, true]];
    let cols = [(t[0], t[3]), (t[1], t[4]), (t[2], t[5])];
    let mut best = t;
    for p in PERMS {
        for fl in FLIPS {
            let mut k = [0; 6];
            for (slot, &c) in p.iter().enumerate() {
                let (u, l) = if fl[slot] { (cols[c].1, cols[c].0) } else { cols[c] };
                k[slot] = u;
                k[slot + 3] = l;
            }
            if k < best {
                best = k;
            }
        }
    }
    best
}

/// Cached by the canonical image; the symbol is evaluated at that image.
pub(super) fn six_j(t: [i32; 6]) -> SqrtRational {
    let key = six_j_key(t);
    memo(&SIX_J, key, || super::racah_six_j(key))
}

pub(super) fn nine_j<F>(t: [i32; 9], compute: F) -> SqrtRational
where
    F: FnOnce() -> SqrtRational,
{
    memo(&NINE_J, t, compute)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn key_is_symmetry_invariant() {
        let t = [1, 3, 4, 5, 2, 3];
        let k = six_j_key(t);
        assert_eq!(six_j_key([3, 1, 4, 2, 5, 3]), k);
        assert_eq!(six_j_key([5, 2, 4, 1, 3, 3]), k);
    }
}
