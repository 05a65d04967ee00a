use super::forms::sq;
use crate::exactnum::{triangle_ok, HalfInt, SqrtRational};

const HALF: HalfInt = HalfInt::HALF;

/// `<1/2 (1/2 1/2)s'; S | P01 | 1/2 (1/2 1/2)s; S>`, the box `[0 ½ ½; ½ ½ s; ½ s' S]`.
pub fn spin_block_3e(s: HalfInt, s_bra: HalfInt, big_s: HalfInt) -> SqrtRational {
    sq([[HalfInt::ZERO, HALF, HALF], [HALF, HALF, s], [HALF, s_bra, big_s]])
}

/// Per-`p` factor `[0 ½ ½; ½ p s; ½ s' S]` of the four-electron exchange spin overlap,
/// where `p` is the spin of the inner pair `(σ2 σ3)` shared by bra and ket.
pub fn spin_block_4e(s: HalfInt, s_bra: HalfInt, big_s: HalfInt, p: HalfInt) -> SqrtRational {
    sq([[HalfInt::ZERO, HALF, HALF], [HALF, p, s], [HALF, s_bra, big_s]])
}

/// Direct spin overlap: unity when every spin label matches and the chain is admissible.
pub(super) fn spin_direct(bra: &[HalfInt], ket: &[HalfInt], chain_ok: bool) -> bool {
    chain_ok && bra == ket
}

pub(super) fn chain3(s: HalfInt, big_s: HalfInt) -> bool {
    triangle_ok(HALF, HALF, s) && triangle_ok(HALF, s, big_s)
}

pub(super) fn chain4(s23: HalfInt, s: HalfInt, big_s: HalfInt) -> bool {
    triangle_ok(HALF, HALF, s23) && triangle_ok(HALF, s23, s) && triangle_ok(HALF, s, big_s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(t: i32) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn three_electron_examples() {
        assert_eq!(spin_block_3e(h(2), h(2), h(3)), SqrtRational::one());
        assert_eq!(spin_block_3e(h(0), h(0), h(1)).to_string(), "1/2");
        assert!(spin_block_3e(h(2), h(0), h(3)).is_zero());
    }

    #[test]
    fn four_electron_examples() {
        let stretched: Vec<SqrtRational> = [0, 2].iter().map(|&p| spin_block_4e(h(3), h(3), h(4), h(p))).collect();
        assert!(stretched[0].is_zero());
        assert_eq!(stretched[1], SqrtRational::one());
        assert!(spin_block_4e(h(1), h(3), h(0), h(2)).is_zero());
    }
}
