//! `f64` views of the exact symbols, memoized for the brute-force summations
//! that evaluate millions of coefficient products.

use std::collections::HashMap;
use std::sync::LazyLock;

use parking_lot::RwLock;

use crate::exactnum::HalfInt;

static CG: LazyLock<RwLock<HashMap<[i32; 6], f64>>> = LazyLock::new(Default::default);
static GAUNT: LazyLock<RwLock<HashMap<[i32; 6], f64>>> = LazyLock::new(Default::default);

fn memo(table: &RwLock<HashMap<[i32; 6], f64>>, key: [i32; 6], compute: impl FnOnce() -> f64) -> f64 {
    if let Some(&v) = table.read().get(&key) {
        return v;
    }
    let v = compute();
    table.write().insert(key, v);
    v
}

/// `<j1 m1 j2 m2 | J M>` as the nearest `f64`.
pub fn cg(j1: HalfInt, m1: HalfInt, j2: HalfInt, m2: HalfInt, jj: HalfInt, mm: HalfInt) -> f64 {
    if m1 + m2 != mm {
        return 0.0;
    }
    let key = [j1, m1, j2, m2, jj, mm].map(HalfInt::twice);
    memo(&CG, key, || super::clebsch_gordan(j1, m1, j2, m2, jj, mm).to_f64().expect("CG fits in f64"))
}

/// `∫ Y_{l1 m1} Y_{l2 m2} Y_{l3 m3} dΩ` as the nearest `f64` (integer ranks only).
pub fn gaunt(l1: i32, m1: i32, l2: i32, m2: i32, l3: i32, m3: i32) -> f64 {
    if m1 + m2 + m3 != 0 || (l1 + l2 + l3) % 2 != 0 {
        return 0.0;
    }
    let key = [l1, m1, l2, m2, l3, m3];
    memo(&GAUNT, key, || {
        let h = HalfInt::int;
        super::gaunt(h(l1), h(m1), h(l2), h(m2), h(l3), h(m3))
            .expect("integer ranks")
            .to_f64()
            .expect("Gaunt coefficient fits in f64")
    })
}
