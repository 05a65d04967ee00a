use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactnum::{triangle_ok, triangle_range, HalfInt};

/// A bound target orbital `n l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetOrbital {
    pub n: u32,
    pub l: HalfInt,
}

/// Complete quantum-number set of a coupled channel.
///
/// Orbital coupling is `l0 (l1 (l2 l3) l23) l ; L` for four electrons and
/// `l0 (l1 l2) l ; L` for three. Spins couple in the same order with every
/// electron carrying 1/2: `(1/2 (1/2 (1/2 1/2) s23) s) S`. For the two-electron
/// system the target is a single orbital with `l = l1` and `s = 1/2`; the
/// "projectile" may then be bound (`n0`) instead of a partial wave.
///
/// All momenta are stored and serialized as doubled integers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Channel {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(default)]
    pub k: f64,
    pub l0: HalfInt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n0: Option<u32>,
    pub target: Vec<TargetOrbital>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l23: Option<HalfInt>,
    pub l: HalfInt,
    #[serde(rename = "L")]
    pub total_l: HalfInt,
    pub s: HalfInt,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s23: Option<HalfInt>,
    #[serde(rename = "S")]
    pub total_s: HalfInt,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ChannelError {
    #[error("channel {0}: target must hold 1 to 3 orbitals, found {1}")]
    TargetSize(String, usize),
    #[error("channel {0}: orbital rank {1} is not an integer")]
    HalfIntegerOrbital(String, HalfInt),
    #[error("channel {0}: triangle ({1}, {2}, {3}) violated for {4}")]
    Triangle(String, HalfInt, HalfInt, HalfInt, &'static str),
    #[error("channel {0}: {1} required for a four-electron channel")]
    Missing(String, &'static str),
    #[error("channel {0}: {1} only applies to four-electron channels")]
    Unexpected(String, &'static str),
    #[error("channel {0}: principal number n = {1} must exceed l = {2}")]
    PrincipalNumber(String, u32, HalfInt),
    #[error("channel {0}: momentum k must be finite and non-negative")]
    Momentum(String),
}

/// Radial function carried by one electron of a channel.
#[derive(Clone, Copy, Debug)]
pub enum RadialFn {
    Wave { k: f64, l: HalfInt },
    Bound { n: u32, l: HalfInt },
}

impl RadialFn {
    pub fn l(&self) -> HalfInt {
        match *self {
            RadialFn::Wave { l, .. } | RadialFn::Bound { l, .. } => l,
        }
    }
}

impl PartialEq for RadialFn {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (RadialFn::Wave { k: a, l: la }, RadialFn::Wave { k: b, l: lb }) => a.to_bits() == b.to_bits() && la == lb,
            (RadialFn::Bound { n: a, l: la }, RadialFn::Bound { n: b, l: lb }) => a == b && la == lb,
            _ => false,
        }
    }
}

impl Eq for RadialFn {}

impl std::hash::Hash for RadialFn {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match *self {
            RadialFn::Wave { k, l } => {
                0u8.hash(state);
                k.to_bits().hash(state);
                l.hash(state);
            }
            RadialFn::Bound { n, l } => {
                1u8.hash(state);
                n.hash(state);
                l.hash(state);
            }
        }
    }
}

impl fmt::Display for RadialFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadialFn::Wave { k, l } => write!(f, "u(k={k},l={l})"),
            RadialFn::Bound { n, l } => write!(f, "phi(n={n},l={l})"),
        }
    }
}

impl Channel {
    /// Number of electrons including the projectile.
    pub fn electrons(&self) -> usize {
        1 + self.target.len()
    }

    fn name(&self) -> String {
        self.id.clone().unwrap_or_else(|| self.label())
    }

    /// Orbital rank of electron `i` (0 is the projectile).
    pub fn orbital_l(&self, i: usize) -> HalfInt {
        if i == 0 {
            self.l0
        } else {
            self.target[i - 1].l
        }
    }

    pub fn orbital_ls(&self) -> Vec<HalfInt> {
        (0..self.electrons()).map(|i| self.orbital_l(i)).collect()
    }

    /// Radial function of electron `i`.
    pub fn radial_fn(&self, i: usize) -> RadialFn {
        if i == 0 {
            match self.n0 {
                Some(n) => RadialFn::Bound { n, l: self.l0 },
                None => RadialFn::Wave { k: self.k, l: self.l0 },
            }
        } else {
            let t = self.target[i - 1];
            RadialFn::Bound { n: t.n, l: t.l }
        }
    }

    /// Stable text label used for ordering output rows.
    pub fn label(&self) -> String {
        let mut s = format!("k={};l0={}", self.k, self.l0.twice());
        if let Some(n0) = self.n0 {
            s.push_str(&format!(";n0={n0}"));
        }
        for t in &self.target {
            s.push_str(&format!(";{}:{}", t.n, t.l.twice()));
        }
        if let Some(l23) = self.l23 {
            s.push_str(&format!(";l23={}", l23.twice()));
        }
        s.push_str(&format!(";l={};L={};s={}", self.l.twice(), self.total_l.twice(), self.s.twice()));
        if let Some(s23) = self.s23 {
            s.push_str(&format!(";s23={}", s23.twice()));
        }
        s.push_str(&format!(";S={}", self.total_s.twice()));
        s
    }

    /// False when some coupling triangle of the channel fails; such a channel
    /// has no state and every element touching it is zero.
    pub fn admissible(&self) -> bool {
        !matches!(self.validate(), Err(ChannelError::Triangle(..)))
    }

    /// Checks every coupling triangle and label constraint, naming the first violation.
    pub fn validate(&self) -> Result<(), ChannelError> {
        let name = self.name();
        let tri = |a, b, c, what| {
            if triangle_ok(a, b, c) {
                Ok(())
            } else {
                Err(ChannelError::Triangle(name.clone(), a, b, c, what))
            }
        };
        if self.target.is_empty() || self.target.len() > 3 {
            return Err(ChannelError::TargetSize(name, self.target.len()));
        }
        if !self.k.is_finite() || self.k < 0.0 {
            return Err(ChannelError::Momentum(name));
        }
        for l in self.orbital_ls() {
            if !l.is_integer() || l.twice() < 0 {
                return Err(ChannelError::HalfIntegerOrbital(name, l));
            }
        }
        for t in &self.target {
            if (t.n as i32) * 2 <= t.l.twice() {
                return Err(ChannelError::PrincipalNumber(name, t.n, t.l));
            }
        }
        if let Some(n0) = self.n0 {
            if (n0 as i32) * 2 <= self.l0.twice() {
                return Err(ChannelError::PrincipalNumber(name, n0, self.l0));
            }
        }
        let half = HalfInt::HALF;
        match self.target.len() {
            1 => {
                if self.l23.is_some() {
                    return Err(ChannelError::Unexpected(name, "l23"));
                }
                if self.s23.is_some() {
                    return Err(ChannelError::Unexpected(name, "s23"));
                }
                tri(self.target[0].l, HalfInt::ZERO, self.l, "l = l1")?;
                tri(self.s, HalfInt::ZERO, half, "s = 1/2")?;
            }
            2 => {
                if self.l23.is_some() {
                    return Err(ChannelError::Unexpected(name, "l23"));
                }
                if self.s23.is_some() {
                    return Err(ChannelError::Unexpected(name, "s23"));
                }
                tri(self.target[0].l, self.target[1].l, self.l, "(l1 l2) l")?;
                tri(half, half, self.s, "(1/2 1/2) s")?;
            }
            _ => {
                let l23 = self.l23.ok_or_else(|| ChannelError::Missing(name.clone(), "l23"))?;
                let s23 = self.s23.ok_or_else(|| ChannelError::Missing(name.clone(), "s23"))?;
                tri(self.target[1].l, self.target[2].l, l23, "(l2 l3) l23")?;
                tri(self.target[0].l, l23, self.l, "(l1 l23) l")?;
                tri(half, half, s23, "(1/2 1/2) s23")?;
                tri(half, s23, self.s, "(1/2 s23) s")?;
            }
        }
        tri(self.l0, self.l, self.total_l, "(l0 l) L")?;
        tri(half, self.s, self.total_s, "(1/2 s) S")?;
        Ok(())
    }
}

fn int(n: u32) -> HalfInt {
    HalfInt::from_twice(2 * n as i32)
}

impl Channel {
    /// Every coupled channel of `electrons` electrons (3 or 4) whose orbital
    /// ranks are at most `lmax`, with target orbitals `n = 3, 4, 5` and unit
    /// projectile momentum. Used to sweep the closed forms against the oracle.
    pub fn enumerate(electrons: usize, lmax: u32) -> Vec<Channel> {
        let half = HalfInt::HALF;
        let ranks = || 0..=lmax;
        let mut out = Vec::new();
        let mut push = |l0: u32, ls: &[u32], l23: Option<HalfInt>, l: HalfInt, s23: Option<HalfInt>, s: HalfInt| {
            for big_l in triangle_range(int(l0), l) {
                for big_s in triangle_range(half, s) {
                    let target = ls.iter().zip(3..).map(|(&l, n)| TargetOrbital { n, l: int(l) }).collect();
                    out.push(Channel { id: None, k: 1.0, l0: int(l0), n0: None, target, l23, l, total_l: big_l, s, s23, total_s: big_s });
                }
            }
        };
        match electrons {
            3 => {
                for l0 in ranks() {
                    for l1 in ranks() {
                        for l2 in ranks() {
                            for l in triangle_range(int(l1), int(l2)) {
                                for s in [HalfInt::ZERO, HalfInt::ONE] {
                                    push(l0, &[l1, l2], None, l, None, s);
                                }
                            }
                        }
                    }
                }
            }
            4 => {
                for l0 in ranks() {
                    for l1 in ranks() {
                        for l2 in ranks() {
                            for l3 in ranks() {
                                for l23 in triangle_range(int(l2), int(l3)) {
                                    for l in triangle_range(int(l1), l23) {
                                        for s23 in [HalfInt::ZERO, HalfInt::ONE] {
                                            for s in triangle_range(half, s23) {
                                                push(l0, &[l1, l2, l3], Some(l23), l, Some(s23), s);
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
            _ => {}
        }
        out
    }
}
