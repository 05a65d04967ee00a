//! Matrix elements by explicit summation over every magnetic substate.
//!
//! Coupled channels are expanded into products of single-electron states with
//! Clebsch-Gordan amplitudes; the two-body Coulomb operator is applied through
//! its multipole series `1/r_ij = Σ_λ 4π/(2λ+1) r<^λ/r>^(λ+1) Σ_μ Y*_λμ(i) Y_λμ(j)`
//! with Gaunt integrals on each electron. Nothing here uses recoupling
//! coefficients.

use std::collections::BTreeMap;

use crate::exactnum::{HalfInt, SqrtRational};
use crate::matel::{Channel, RadialError, RadialFn, RadialProvider};
use crate::wigner::{clebsch_gordan, float};

/// Largest orbital rank the oracle accepts.
pub const RANK_CAP: i32 = 3;

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("orbital rank {0} exceeds the oracle cap of {RANK_CAP}")]
    RankCap(HalfInt),
    #[error("projection {m} not allowed for rank {j}")]
    Projection { j: HalfInt, m: HalfInt },
    #[error("bra has {0} electrons, ket has {1}")]
    ElectronCount(usize, usize),
    #[error("operator touches electron {0}, channel has {1}")]
    Electron(usize, usize),
    #[error("Clebsch-Gordan coefficient vanishes at M = {0}; choose another projection")]
    VanishingCg(HalfInt),
    #[error(transparent)]
    Radial(#[from] RadialError),
}

/// Binary coupling tree over electron slots.
#[derive(Clone, Debug)]
pub enum Coupling {
    Leaf { slot: usize, j: HalfInt },
    Node(Box<Coupling>, Box<Coupling>, HalfInt),
}

impl Coupling {
    pub fn leaf(slot: usize, j: HalfInt) -> Self {
        Coupling::Leaf { slot, j }
    }

    pub fn node(a: Coupling, b: Coupling, j: HalfInt) -> Self {
        Coupling::Node(Box::new(a), Box::new(b), j)
    }

    pub fn rank(&self) -> HalfInt {
        match self {
            Coupling::Leaf { j, .. } | Coupling::Node(_, _, j) => *j,
        }
    }

    /// All `(slot projections, amplitude)` with nonzero amplitude at total projection `m`.
    pub fn expand(&self, m: HalfInt) -> Vec<(Vec<(usize, HalfInt)>, SqrtRational)> {
        match self {
            Coupling::Leaf { slot, j } => {
                if m.abs() <= *j && (j.twice() - m.twice()) % 2 == 0 {
                    vec![(vec![(*slot, m)], SqrtRational::one())]
                } else {
                    Vec::new()
                }
            }
            Coupling::Node(a, b, j) => {
                let mut out = Vec::new();
                for ma in a.rank().projections() {
                    let mb = m - ma;
                    let cg = clebsch_gordan(a.rank(), ma, b.rank(), mb, *j, m);
                    if cg.is_zero() {
                        continue;
                    }
                    let left = a.expand(ma);
                    let right = b.expand(mb);
                    for (la, aa) in &left {
                        for (lb, ab) in &right {
                            let mut ms = la.clone();
                            ms.extend(lb.iter().copied());
                            out.push((ms, &(&cg * aa) * ab));
                        }
                    }
                }
                out
            }
        }
    }

    /// Dense projections indexed by slot.
    fn expand_dense(&self, m: HalfInt, slots: usize) -> Vec<(Vec<HalfInt>, SqrtRational)> {
        self.expand(m)
            .into_iter()
            .map(|(ms, a)| {
                let mut v = vec![HalfInt::ZERO; slots];
                for (s, m) in ms {
                    v[s] = m;
                }
                (v, a)
            })
            .collect()
    }
}

/// Orbital coupling tree of a channel.
pub fn orbit_tree(c: &Channel) -> Coupling {
    let l = |i| Coupling::leaf(i, c.orbital_l(i));
    let target = match c.target.len() {
        1 => l(1),
        2 => Coupling::node(l(1), l(2), c.l),
        _ => Coupling::node(l(1), Coupling::node(l(2), l(3), c.l23.unwrap_or_default()), c.l),
    };
    Coupling::node(l(0), target, c.total_l)
}

/// Spin coupling tree of a channel; every electron carries spin 1/2.
pub fn spin_tree(c: &Channel) -> Coupling {
    let s = |i| Coupling::leaf(i, HalfInt::HALF);
    let target = match c.target.len() {
        1 => s(1),
        2 => Coupling::node(s(1), s(2), c.s),
        _ => Coupling::node(s(1), Coupling::node(s(2), s(3), c.s23.unwrap_or_default()), c.s),
    };
    Coupling::node(s(0), target, c.total_s)
}

/// Product of single-electron states `(l_i, m_i)` and spins `(1/2, ms_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UncoupledState {
    pub orbit: Vec<(HalfInt, HalfInt)>,
    pub spin: Vec<(HalfInt, HalfInt)>,
}

/// Full Clebsch-Gordan expansion of a coupled channel at projections `(ml, ms)`.
pub fn expand_channel(c: &Channel, ml: HalfInt, ms: HalfInt) -> Result<Vec<(UncoupledState, SqrtRational)>, OracleError> {
    check_projection(c.total_l, ml)?;
    check_projection(c.total_s, ms)?;
    let n = c.electrons();
    let orbit = orbit_tree(c).expand_dense(ml, n);
    let spin = spin_tree(c).expand_dense(ms, n);
    let ls = c.orbital_ls();
    let mut out = Vec::with_capacity(orbit.len() * spin.len());
    for (om, oa) in &orbit {
        for (sm, sa) in &spin {
            let state = UncoupledState {
                orbit: ls.iter().copied().zip(om.iter().copied()).collect(),
                spin: sm.iter().map(|&m| (HalfInt::HALF, m)).collect(),
            };
            out.push((state, oa * sa));
        }
    }
    Ok(out)
}

fn check_projection(j: HalfInt, m: HalfInt) -> Result<(), OracleError> {
    if m.abs() > j || (j.twice() - m.twice()) % 2 != 0 {
        Err(OracleError::Projection { j, m })
    } else {
        Ok(())
    }
}

/// Electron permutation applied to the ket: identity, or the projectile/first
/// target electron swap.
fn permutation(n: usize, exchange: bool) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    if exchange {
        p.swap(0, 1);
    }
    p
}

/// Exact spin overlap `<bra spin| P |ket spin>` at total projection `ms`.
pub fn spin_overlap(bra: &Channel, ket: &Channel, exchange: bool, ms: HalfInt) -> Result<SqrtRational, OracleError> {
    if bra.total_s != ket.total_s {
        return Ok(SqrtRational::zero());
    }
    let n = bra.electrons();
    check_projection(bra.total_s, ms)?;
    let perm = permutation(n, exchange);
    let b = spin_tree(bra).expand_dense(ms, n);
    let k = spin_tree(ket).expand_dense(ms, n);
    let mut acc = SqrtRational::zero();
    for (bm, ba) in &b {
        for (km, ka) in &k {
            if (0..n).all(|p| bm[p] == km[perm[p]]) {
                acc += &(ba * ka);
            }
        }
    }
    Ok(acc)
}

/// Operator sandwiched by the brute-force summation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OracleOperator {
    /// `1/r_ij`.
    Coulomb(usize, usize),
    /// The constant `E`.
    Energy(f64),
    /// `1/r_0` on the projectile coordinate.
    InverseR0,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleTerm {
    pub lambda: u32,
    /// Angular and spin coefficient, including the multipole factor `4π/(2λ+1)`.
    pub angular: f64,
    pub radial: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub total: f64,
    pub terms: Vec<OracleTerm>,
}

type Dense = Vec<(Vec<HalfInt>, f64)>;

fn dense_f64(t: &Coupling, m: HalfInt, n: usize) -> Dense {
    t.expand_dense(m, n).into_iter().map(|(ms, a)| (ms, a.to_f64().expect("amplitude fits in f64"))).collect()
}

/// Element `<bra ml ms| op (P01 if exchange) |ket ml ms>` with its multipole breakdown.
#[allow(clippy::too_many_arguments)]
pub fn brute_force_terms_at(
    op: OracleOperator,
    exchange: bool,
    bra: &Channel,
    ket: &Channel,
    radial: &dyn RadialProvider,
    ml: HalfInt,
    ms: HalfInt,
) -> Result<OracleResult, OracleError> {
    let n = bra.electrons();
    if ket.electrons() != n {
        return Err(OracleError::ElectronCount(n, ket.electrons()));
    }
    for c in [bra, ket] {
        for l in c.orbital_ls() {
            if l.twice() > 2 * RANK_CAP {
                return Err(OracleError::RankCap(l));
            }
        }
    }
    if let OracleOperator::Coulomb(i, j) = op {
        if i >= n || j >= n || i == j {
            return Err(OracleError::Electron(i.max(j), n));
        }
    }
    if bra.total_l != ket.total_l || bra.total_s != ket.total_s {
        return Ok(OracleResult { total: 0.0, terms: Vec::new() });
    }
    check_projection(bra.total_l, ml)?;
    let spin = spin_overlap(bra, ket, exchange, ms)?.to_f64().expect("spin overlap fits in f64");
    if spin == 0.0 {
        return Ok(OracleResult { total: 0.0, terms: Vec::new() });
    }
    let perm = permutation(n, exchange);
    let lb: Vec<i32> = bra.orbital_ls().iter().map(|l| l.twice() / 2).collect();
    let lk_slot: Vec<i32> = ket.orbital_ls().iter().map(|l| l.twice() / 2).collect();
    let lk: Vec<i32> = (0..n).map(|p| lk_slot[perm[p]]).collect();
    let fb: Vec<RadialFn> = (0..n).map(|p| bra.radial_fn(p)).collect();
    let fk: Vec<RadialFn> = (0..n).map(|p| ket.radial_fn(perm[p])).collect();
    let bra_states = dense_f64(&orbit_tree(bra), ml, n);
    let ket_states: Dense = dense_f64(&orbit_tree(ket), ml, n)
        .into_iter()
        .map(|(ms, a)| ((0..n).map(|p| ms[perm[p]]).collect(), a))
        .collect();

    let spectators_overlap = |skip: &[usize]| -> Result<f64, OracleError> {
        let mut v = 1.0;
        for p in 0..n {
            if !skip.contains(&p) {
                v *= radial.overlap(&fb[p], &fk[p])?;
            }
        }
        Ok(v)
    };
    // one-body radial operators leave every angular label untouched
    let diagonal_sum = || -> f64 {
        if lb != lk {
            return 0.0;
        }
        let mut acc = 0.0;
        for (bm, ba) in &bra_states {
            for (km, ka) in &ket_states {
                if bm == km {
                    acc += ba * ka;
                }
            }
        }
        acc
    };

    let mut terms = Vec::new();
    match op {
        OracleOperator::Energy(e) => {
            let ang = diagonal_sum() * spin;
            if ang != 0.0 {
                let rad = e * spectators_overlap(&[])?;
                terms.push(OracleTerm { lambda: 0, angular: ang, radial: rad });
            }
        }
        OracleOperator::InverseR0 => {
            let ang = diagonal_sum() * spin;
            if ang != 0.0 {
                let rad = radial.inverse_r(&fb[0], &fk[0])? * spectators_overlap(&[0])?;
                terms.push(OracleTerm { lambda: 0, angular: ang, radial: rad });
            }
        }
        OracleOperator::Coulomb(i, j) => {
            let spect_ok = (0..n).all(|p| p == i || p == j || lb[p] == lk[p]);
            if spect_ok {
                let lmax = (lb[i] + lk[i]).min(lb[j] + lk[j]);
                let mut per_lambda: BTreeMap<i32, f64> = BTreeMap::new();
                for lam in 0..=lmax {
                    if (lb[i] + lk[i] + lam) % 2 != 0 || (lb[j] + lk[j] + lam) % 2 != 0 {
                        continue;
                    }
                    if lam < (lb[i] - lk[i]).abs() || lam < (lb[j] - lk[j]).abs() {
                        continue;
                    }
                    let mut acc = 0.0;
                    for (bm, ba) in &bra_states {
                        for (km, ka) in &ket_states {
                            if !(0..n).all(|p| p == i || p == j || bm[p] == km[p]) {
                                continue;
                            }
                            let (mbi, mki) = (bm[i].twice() / 2, km[i].twice() / 2);
                            let (mbj, mkj) = (bm[j].twice() / 2, km[j].twice() / 2);
                            let mu = mki - mbi;
                            if mu.abs() > lam || mbj - mkj != mu {
                                continue;
                            }
                            // ∫ Y*_{l'm'} Y*_{λμ} Y_{lm} on electron i, ∫ Y*_{l'm'} Y_{λμ} Y_{lm} on electron j
                            let gi = float::gaunt(lb[i], -mbi, lam, -mu, lk[i], mki) * sign(mbi + mu);
                            let gj = float::gaunt(lb[j], -mbj, lam, mu, lk[j], mkj) * sign(mbj);
                            acc += ba * ka * gi * gj;
                        }
                    }
                    if acc != 0.0 {
                        per_lambda.insert(lam, acc * 4.0 * std::f64::consts::PI / f64::from(2 * lam + 1));
                    }
                }
                for (lam, ang) in per_lambda {
                    let lam = lam as u32;
                    let rad = radial.slater(lam, &fb[i], &fk[i], &fb[j], &fk[j])? * spectators_overlap(&[i, j])?;
                    terms.push(OracleTerm { lambda: lam, angular: ang * spin, radial: rad });
                }
            }
        }
    }
    let total = terms.iter().map(|t| t.angular * t.radial).sum();
    Ok(OracleResult { total, terms })
}

fn sign(k: i32) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}

/// [`brute_force_terms_at`] at the stretched projections `M_L = L`, `M_S = S`.
pub fn brute_force_terms(
    op: OracleOperator,
    exchange: bool,
    bra: &Channel,
    ket: &Channel,
    radial: &dyn RadialProvider,
) -> Result<OracleResult, OracleError> {
    brute_force_terms_at(op, exchange, bra, ket, radial, bra.total_l, bra.total_s)
}

/// Total of [`brute_force_terms`].
pub fn brute_force_element(
    op: OracleOperator,
    exchange: bool,
    bra: &Channel,
    ket: &Channel,
    radial: &dyn RadialProvider,
) -> Result<f64, OracleError> {
    Ok(brute_force_terms(op, exchange, bra, ket, radial)?.total)
}

/// Reduced element from a fixed-projection element of a rank-`k` operator,
/// under `<L' M'| T^k_q |L M> = <L M k q | L' M'> <L' || T^k || L>`.
///
/// For scalar operators (`k = 0`) the reduced element is the M-diagonal element itself.
pub fn wigner_eckart_ratio(
    full_element: f64,
    bra_l: HalfInt,
    bra_m: HalfInt,
    ket_l: HalfInt,
    ket_m: HalfInt,
    k: HalfInt,
    q: HalfInt,
) -> Result<f64, OracleError> {
    let cg = clebsch_gordan(ket_l, ket_m, k, q, bra_l, bra_m);
    if cg.is_zero() {
        return Err(OracleError::VanishingCg(bra_m));
    }
    Ok(full_element / cg.to_f64().expect("CG fits in f64"))
}
