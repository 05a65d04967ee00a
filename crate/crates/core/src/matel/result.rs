use std::fmt;

use serde::{Serialize, Serializer};

use super::provider::RadialError;
use crate::exactnum::{HalfInt, SqrtRational};

/// Summation indices of one contribution: multipole `lambda`, orbital
/// intermediate `q` and spin intermediate `p` (exchange terms only).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct MultipoleTerm {
    pub lambda: HalfInt,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<HalfInt>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<HalfInt>,
}

impl MultipoleTerm {
    pub fn lambda(lambda: HalfInt) -> Self {
        Self { lambda, q: None, p: None }
    }
}

fn exact_text<S: Serializer>(v: &SqrtRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// One angular coefficient paired with its radial integral.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TermValue {
    /// Component the term came from; empty for single-component results.
    #[serde(skip_serializing_if = "str::is_empty")]
    pub component: &'static str,
    #[serde(flatten)]
    pub term: MultipoleTerm,
    pub angular: f64,
    pub radial: f64,
    #[serde(serialize_with = "exact_text")]
    pub exact: SqrtRational,
}

impl TermValue {
    pub fn value(&self) -> f64 {
        self.angular * self.radial
    }
}

/// A matrix element as a sum of angular × radial terms.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatElResult {
    pub total: f64,
    pub terms: Vec<TermValue>,
}

impl MatElResult {
    pub fn zero() -> Self {
        Self { total: 0.0, terms: Vec::new() }
    }

    pub(crate) fn from_terms(terms: Vec<TermValue>) -> Self {
        let total = terms.iter().map(TermValue::value).sum::<f64>() + 0.0;
        Self { total, terms }
    }

    /// Exact angular coefficients in term order.
    pub fn exact_angular(&self) -> Vec<SqrtRational> {
        self.terms.iter().map(|t| t.exact.clone()).collect()
    }

    /// True when no term survived the selection rules.
    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.total == 0.0
    }
}

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum MatElError {
    #[error("expected {expected}-electron channels, found {found}")]
    ElectronCount { expected: usize, found: usize },
    #[error("orbital rank {0} is not an integer")]
    HalfIntegerOrbital(HalfInt),
    #[error("odd power i^{0} on a nonzero term: the closed form is inconsistent")]
    OddPhase(i32),
    #[error(transparent)]
    Radial(#[from] RadialError),
}

/// Which matrix-element term to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Term {
    V01Direct,
    V01Exch,
    V02Exch,
    V12Exch,
    V23Exch,
    EExch,
}

impl Term {
    pub const HE: [Term; 5] = [Term::V01Direct, Term::V01Exch, Term::V02Exch, Term::V12Exch, Term::EExch];
    pub const LI: [Term; 6] = [Term::V01Direct, Term::V01Exch, Term::V02Exch, Term::V12Exch, Term::V23Exch, Term::EExch];

    pub fn name(self) -> &'static str {
        match self {
            Term::V01Direct => "v01_direct",
            Term::V01Exch => "v01_exch",
            Term::V02Exch => "v02_exch",
            Term::V12Exch => "v12_exch",
            Term::V23Exch => "v23_exch",
            Term::EExch => "e_exch",
        }
    }

    pub fn is_exchange(self) -> bool {
        self != Term::V01Direct
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Term {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Term::LI.into_iter().find(|t| t.name() == s).ok_or_else(|| format!("unknown term {s}"))
    }
}
