//! Coupling trees, recoupling boxes and the graph evaluator.

mod graph;
mod library;
mod parse;

pub use graph::{CouplingTree, EndBox, Factor, GraphError, GraphTerm, GraphValue, LinearExpr, Rank, RecouplingGraph, RecouplingStep, TensorLeaf};
pub use library::{channel_assignment, graph_source, library_graph, published_graph, term_graphs, LIBRARY, PUBLISHED};
pub use parse::{parse_graph, write_graph};

use std::collections::BTreeMap;

use crate::exactnum::{HalfInt, PiScaled, SqrtRational};
use crate::wigner::{square_nine_j, NineJArgs};

/// Coefficient of `[(A C)g (B D)h]i` in `[(A B)e (C D)f]i`.
#[allow(clippy::too_many_arguments)]
pub fn recouple_four(a: HalfInt, b: HalfInt, c: HalfInt, d: HalfInt, e: HalfInt, f: HalfInt, g: HalfInt, h: HalfInt, i: HalfInt) -> SqrtRational {
    square_nine_j(&NineJArgs::new([[a, b, e], [c, d, f], [g, h, i]]))
}

/// Coefficient of `[C (B D)h]i` in `[B (C D)f]i`.
pub fn recouple_three(b: HalfInt, c: HalfInt, d: HalfInt, f: HalfInt, h: HalfInt, i: HalfInt) -> SqrtRational {
    recouple_four(HalfInt::ZERO, b, c, d, b, f, c, h, i)
}

/// Evaluates a graph at an assignment of its external labels.
pub fn evaluate_graph(g: &RecouplingGraph, assignment: &BTreeMap<String, HalfInt>) -> Result<PiScaled, GraphError> {
    Ok(g.evaluate(assignment)?.total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::recouple_three_overlap;

    fn h(t: i32) -> HalfInt {
        HalfInt::from_twice(t)
    }

    #[test]
    fn four_with_scalar_spectators_is_identity() {
        for a in 0..4i32 {
            for c in 0..4 {
                for i in (a - c).abs()..=(a + c) {
                    if (a + c + i) % 2 != 0 {
                        continue;
                    }
                    let v = recouple_four(h(a), h(0), h(c), h(0), h(a), h(c), h(i), h(0), h(i));
                    assert_eq!(v, SqrtRational::one(), "{a} {c} {i}");
                }
            }
        }
    }

    #[test]
    fn four_example() {
        let v = recouple_four(h(2), h(2), h(2), h(2), h(0), h(0), h(0), h(0), h(0));
        assert_eq!(v.to_string(), "1/3");
        assert!(recouple_four(h(2), h(2), h(0), h(2), h(2), h(0), h(0), h(6), h(0)).is_zero());
    }

    #[test]
    fn three_matches_contraction() {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    for f in 0..=6 {
                        for hh in 0..=6 {
                            for i in 0..=7 {
                                let args = [b, c, d, f, hh, i].map(h);
                                let x = recouple_three(args[0], args[1], args[2], args[3], args[4], args[5]);
                                let y = recouple_three_overlap(args[0], args[1], args[2], args[3], args[4], args[5]);
                                assert_eq!(x, y, "{args:?}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn three_trivial() {
        assert_eq!(recouple_three(h(0), h(0), h(0), h(0), h(0), h(0)), SqrtRational::one());
        assert!(recouple_three(h(2), h(2), h(2), h(2), h(6), h(2)).is_zero());
    }
}
