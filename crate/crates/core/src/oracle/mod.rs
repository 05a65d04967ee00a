//! Independent ground truth for the symbol kernel and the closed-form matrix
//! elements: projection sums over Clebsch-Gordan and Gaunt coefficients only.

mod element;
mod symbols;
mod tagged;

pub use element::{
    brute_force_element, brute_force_terms, brute_force_terms_at, expand_channel, orbit_tree, spin_overlap, spin_tree,
    wigner_eckart_ratio, Coupling, OracleError, OracleOperator, OracleResult, OracleTerm, UncoupledState, RANK_CAP,
};
pub use symbols::{nine_j_contraction, recouple_three_overlap, six_j_contraction, square_nine_j_overlap};
pub use tagged::TaggedRadial;
