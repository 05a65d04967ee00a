//! Graphs shipped with the crate, one per matrix-element term.

use std::collections::BTreeMap;

use super::{parse_graph, RecouplingGraph};
use crate::exactnum::HalfInt;
use crate::matel::{Channel, Term};

/// `(name, source)` for every bundled graph.
pub const LIBRARY: &[(&str, &str)] = &[
    ("two_electron_direct", include_str!("../../graphs/two_electron_direct.graph")),
    ("he_v01_direct", include_str!("../../graphs/he_v01_direct.graph")),
    ("he_v01_exchange", include_str!("../../graphs/he_v01_exchange.graph")),
    ("he_v02_exchange", include_str!("../../graphs/he_v02_exchange.graph")),
    ("he_v12_exchange", include_str!("../../graphs/he_v12_exchange.graph")),
    ("he_overlap_exchange", include_str!("../../graphs/he_overlap_exchange.graph")),
    ("he_spin_exchange", include_str!("../../graphs/he_spin_exchange.graph")),
    ("li_v01_direct", include_str!("../../graphs/li_v01_direct.graph")),
    ("li_v01_exchange", include_str!("../../graphs/li_v01_exchange.graph")),
    ("li_v02_exchange", include_str!("../../graphs/li_v02_exchange.graph")),
    ("li_v12_exchange", include_str!("../../graphs/li_v12_exchange.graph")),
    ("li_v23_exchange", include_str!("../../graphs/li_v23_exchange.graph")),
    ("li_overlap_exchange", include_str!("../../graphs/li_overlap_exchange.graph")),
    ("li_spin_exchange", include_str!("../../graphs/li_spin_exchange.graph")),
];

/// The same terms transcribed exactly as first published, kept to flag where
/// the published forms disagree with the brute-force sums.
pub const PUBLISHED: &[(&str, &str)] = &[
    ("two_electron_direct", include_str!("../../graphs/published/two_electron_direct.graph")),
    ("he_v01_direct", include_str!("../../graphs/published/he_v01_direct.graph")),
    ("he_v01_exchange", include_str!("../../graphs/published/he_v01_exchange.graph")),
    ("he_v02_exchange", include_str!("../../graphs/published/he_v02_exchange.graph")),
    ("he_v12_exchange", include_str!("../../graphs/published/he_v12_exchange.graph")),
    ("he_overlap_exchange", include_str!("../../graphs/published/he_overlap_exchange.graph")),
    ("he_spin_exchange", include_str!("../../graphs/published/he_spin_exchange.graph")),
    ("li_v01_direct", include_str!("../../graphs/published/li_v01_direct.graph")),
    ("li_v01_exchange", include_str!("../../graphs/published/li_v01_exchange.graph")),
    ("li_v02_exchange", include_str!("../../graphs/published/li_v02_exchange.graph")),
    ("li_v12_exchange", include_str!("../../graphs/published/li_v12_exchange.graph")),
    ("li_v23_exchange", include_str!("../../graphs/published/li_v23_exchange.graph")),
    ("li_overlap_exchange", include_str!("../../graphs/published/li_overlap_exchange.graph")),
    ("li_spin_exchange", include_str!("../../graphs/published/li_spin_exchange.graph")),
];

/// Source text of a bundled graph.
pub fn graph_source(name: &str) -> Option<&'static str> {
    LIBRARY.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Parsed published transcription of a bundled graph.
pub fn published_graph(name: &str) -> Option<RecouplingGraph> {
    PUBLISHED.iter().find(|(n, _)| *n == name).map(|(_, s)| parse_graph(s).unwrap_or_else(|e| panic!("published graph {name}: {e}")))
}

/// Parsed bundled graph; panics if a shipped file is malformed.
pub fn library_graph(name: &str) -> Option<RecouplingGraph> {
    graph_source(name).map(|s| parse_graph(s).unwrap_or_else(|e| panic!("bundled graph {name}: {e}")))
}

/// Orbit graph and, for exchange terms, spin graph of each matrix-element term.
pub fn term_graphs(electrons: usize) -> &'static [(Term, &'static str, Option<&'static str>)] {
    const HE: &[(Term, &str, Option<&str>)] = &[
        (Term::V01Direct, "he_v01_direct", None),
        (Term::V01Exch, "he_v01_exchange", Some("he_spin_exchange")),
        (Term::V02Exch, "he_v02_exchange", Some("he_spin_exchange")),
        (Term::V12Exch, "he_v12_exchange", Some("he_spin_exchange")),
        (Term::EExch, "he_overlap_exchange", Some("he_spin_exchange")),
    ];
    const LI: &[(Term, &str, Option<&str>)] = &[
        (Term::V01Direct, "li_v01_direct", None),
        (Term::V01Exch, "li_v01_exchange", Some("li_spin_exchange")),
        (Term::V02Exch, "li_v02_exchange", Some("li_spin_exchange")),
        (Term::V12Exch, "li_v12_exchange", Some("li_spin_exchange")),
        (Term::V23Exch, "li_v23_exchange", Some("li_spin_exchange")),
        (Term::EExch, "li_overlap_exchange", Some("li_spin_exchange")),
    ];
    match electrons {
        3 => HE,
        4 => LI,
        _ => &[],
    }
}

/// Graph labels of a bra/ket channel pair: `l0..l3`, `l23`, `l`, `L`, `s23`,
/// `s`, `S`, primed for the bra.
pub fn channel_assignment(bra: &Channel, ket: &Channel) -> BTreeMap<String, HalfInt> {
    let mut m = BTreeMap::new();
    for k in 0..ket.electrons() {
        m.insert(format!("l{k}"), ket.orbital_l(k));
        m.insert(format!("l{k}'"), bra.orbital_l(k));
    }
    m.insert("l".into(), ket.l);
    m.insert("l'".into(), bra.l);
    m.insert("L".into(), ket.total_l);
    m.insert("s".into(), ket.s);
    m.insert("s'".into(), bra.s);
    m.insert("S".into(), ket.total_s);
    for (key, v) in [("l23", ket.l23), ("l23'", bra.l23), ("s23", ket.s23), ("s23'", bra.s23)] {
        if let Some(x) = v {
            m.insert(key.into(), x);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_bundled_graphs_parse() {
        for (name, src) in LIBRARY.iter().chain(PUBLISHED) {
            let g = parse_graph(src).unwrap();
            assert_eq!(&g.name, name);
        }
    }
}
