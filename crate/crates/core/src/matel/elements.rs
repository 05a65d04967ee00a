use std::collections::BTreeMap;

use super::channel::{Channel, RadialFn};
use super::forms::{direct3, direct4, exchange_box, i_power, lambda_range, q_range, Orb3, Orb4, Pair};
use super::provider::RadialProvider;
use super::result::{MatElError, MatElResult, MultipoleTerm, Term, TermValue};
use super::spin::{chain3, chain4, spin_block_3e, spin_block_4e, spin_direct};
use crate::exactnum::{HalfInt, SqrtRational};

/// Radial weight of the operator sandwiched in a term.
#[derive(Clone, Copy, Debug, PartialEq)]
enum Weight {
    Coulomb,
    Energy(f64),
    InverseR0,
}

/// Rejects malformed input; `Ok(false)` when a coupling triangle fails.
fn check(bra: &Channel, ket: &Channel, n: usize) -> Result<bool, MatElError> {
    for c in [bra, ket] {
        if c.electrons() != n {
            return Err(MatElError::ElectronCount { expected: n, found: c.electrons() });
        }
        for l in c.orbital_ls() {
            if !l.is_integer() || l.twice() < 0 {
                return Err(MatElError::HalfIntegerOrbital(l));
            }
        }
    }
    Ok(bra.admissible() && ket.admissible())
}

fn pair_of(term: Term) -> Pair {
    match term {
        Term::V01Direct | Term::V01Exch => Pair::P01,
        Term::V02Exch => Pair::P02,
        Term::V12Exch => Pair::P12,
        Term::V23Exch => Pair::P23,
        Term::EExch => Pair::Identity,
    }
}

/// Bra/ket radial functions of each coordinate: `fk[p]` is the ket function
/// occupying coordinate `p` after the exchange.
struct Radials {
    fb: Vec<RadialFn>,
    fk: Vec<RadialFn>,
}

impl Radials {
    fn new(bra: &Channel, ket: &Channel, exchange: bool) -> Self {
        let n = ket.electrons();
        let fb = (0..n).map(|p| bra.radial_fn(p)).collect();
        let mut fk: Vec<RadialFn> = (0..n).map(|p| ket.radial_fn(p)).collect();
        if exchange {
            fk.swap(0, 1);
        }
        Self { fb, fk }
    }

    fn ov(&self, r: &dyn RadialProvider, p: usize) -> Result<f64, MatElError> {
        Ok(r.overlap(&self.fb[p], &self.fk[p])?)
    }

    fn slater(&self, r: &dyn RadialProvider, lambda: u32, i: usize, j: usize) -> Result<f64, MatElError> {
        Ok(r.slater(lambda, &self.fb[i], &self.fk[i], &self.fb[j], &self.fk[j])?)
    }

    /// Radial factor of a term with the operator on `pair`.
    fn factor(&self, r: &dyn RadialProvider, pair: Pair, weight: Weight, lambda: u32) -> Result<f64, MatElError> {
        let n = self.fb.len();
        let active: &[usize] = match pair {
            Pair::P01 => &[0, 1],
            Pair::P02 => &[0, 2],
            Pair::P12 => &[1, 2],
            Pair::P23 => &[2, 3],
            Pair::Identity => &[],
        };
        let mut v = match weight {
            Weight::Coulomb => self.slater(r, lambda, active[0], active[1])?,
            Weight::Energy(e) => e,
            Weight::InverseR0 => r.inverse_r(&self.fb[0], &self.fk[0])?,
        };
        for p in 0..n {
            if active.contains(&p) || (weight == Weight::InverseR0 && p == 0) {
                continue;
            }
            v *= self.ov(r, p)?;
        }
        Ok(v)
    }
}

fn lambdas(pair: Pair, bra: &[HalfInt], ket: &[HalfInt]) -> Vec<HalfInt> {
    let (i, j) = match pair {
        Pair::P01 => (0, 1),
        Pair::P02 => (0, 2),
        Pair::P12 => (1, 2),
        Pair::P23 => (2, 3),
        Pair::Identity => return vec![HalfInt::ZERO],
    };
    lambda_range((bra[i], ket[i]), (bra[j], ket[j]))
}

struct Builder<'a> {
    radial: &'a dyn RadialProvider,
    radials: Radials,
    pair: Pair,
    weight: Weight,
    phase: Option<i64>,
    bra_ls: Vec<HalfInt>,
    ket_ls: Vec<HalfInt>,
    cache: BTreeMap<HalfInt, f64>,
    terms: Vec<TermValue>,
}

impl Builder<'_> {
    fn push(&mut self, term: MultipoleTerm, angular: SqrtRational) -> Result<(), MatElError> {
        if angular.is_zero() {
            return Ok(());
        }
        let sign = match self.phase {
            Some(s) => s,
            None => {
                let s = i_power(&self.bra_ls, &self.ket_ls)?;
                self.phase = Some(s);
                s
            }
        };
        let exact = angular.scale_int(sign);
        let lambda = term.lambda;
        let radial = match self.cache.get(&lambda) {
            Some(v) => *v,
            None => {
                let lam = lambda.as_integer().expect("integer multipole") as u32;
                let v = self.radials.factor(self.radial, self.pair, self.weight, lam)?;
                self.cache.insert(lambda, v);
                v
            }
        };
        let angular = exact.to_f64().expect("angular coefficient fits in f64");
        self.terms.push(TermValue { component: "", term, angular, radial, exact });
        Ok(())
    }

    fn finish(mut self) -> MatElResult {
        self.terms.sort_by_key(|t| t.term);
        MatElResult::from_terms(self.terms)
    }
}

fn builder<'a>(bra: &Channel, ket: &Channel, radial: &'a dyn RadialProvider, pair: Pair, weight: Weight, exchange: bool) -> Builder<'a> {
    Builder {
        radial,
        radials: Radials::new(bra, ket, exchange),
        pair,
        weight,
        phase: None,
        bra_ls: bra.orbital_ls(),
        ket_ls: ket.orbital_ls(),
        cache: BTreeMap::new(),
        terms: Vec::new(),
    }
}

fn orb3(c: &Channel) -> Orb3 {
    Orb3 { l: [c.l0, c.target[0].l, c.target[1].l], l12: c.l }
}

fn orb4(c: &Channel) -> Orb4 {
    Orb4 { l: [c.l0, c.target[0].l, c.target[1].l, c.target[2].l], l23: c.l23.unwrap_or(HalfInt::from_twice(-2)), l123: c.l }
}

fn three_electron(bra: &Channel, ket: &Channel, radial: &dyn RadialProvider, pair: Pair, weight: Weight, exchange: bool) -> Result<MatElResult, MatElError> {
    if !check(bra, ket, 3)? {
        return Ok(MatElResult::zero());
    }
    if pair == Pair::P23 {
        return Err(MatElError::ElectronCount { expected: 4, found: 3 });
    }
    let big_l = ket.total_l;
    if bra.total_l != big_l || bra.total_s != ket.total_s {
        return Ok(MatElResult::zero());
    }
    let spin = if exchange {
        spin_block_3e(ket.s, bra.s, ket.total_s)
    } else if spin_direct(&[bra.s], &[ket.s], chain3(ket.s, ket.total_s)) {
        SqrtRational::one()
    } else {
        SqrtRational::zero()
    };
    if spin.is_zero() {
        return Ok(MatElResult::zero());
    }
    let (b, k) = (orb3(bra), orb3(ket));
    let mut out = builder(bra, ket, radial, pair, weight, exchange);
    if !exchange {
        for lambda in lambdas(pair, &b.l, &k.l) {
            let v = direct3(pair, &b, &k, big_l, lambda)?;
            out.push(MultipoleTerm::lambda(lambda), &v * &spin)?;
        }
        return Ok(out.finish());
    }
    let [k0, k1, k2] = k.l;
    for q in q_range(k0, k1, k2, big_l) {
        let r = exchange_box(k0, k1, k2, k.l12, q, big_l);
        if r.is_zero() {
            continue;
        }
        let kx = Orb3 { l: [k1, k0, k2], l12: q };
        let rs = &r * &spin;
        for lambda in lambdas(pair, &b.l, &kx.l) {
            let v = direct3(pair, &b, &kx, big_l, lambda)?;
            out.push(MultipoleTerm { lambda, q: Some(q), p: None }, &v * &rs)?;
        }
    }
    Ok(out.finish())
}

fn four_electron(bra: &Channel, ket: &Channel, radial: &dyn RadialProvider, pair: Pair, weight: Weight, exchange: bool) -> Result<MatElResult, MatElError> {
    if !check(bra, ket, 4)? {
        return Ok(MatElResult::zero());
    }
    let big_l = ket.total_l;
    if bra.total_l != big_l || bra.total_s != ket.total_s {
        return Ok(MatElResult::zero());
    }
    let (Some(s23b), Some(s23k), Some(_), Some(_)) = (bra.s23, ket.s23, bra.l23, ket.l23) else {
        return Ok(MatElResult::zero());
    };
    let spin = if exchange {
        if s23b != s23k {
            SqrtRational::zero()
        } else {
            spin_block_4e(ket.s, bra.s, ket.total_s, s23k)
        }
    } else if spin_direct(&[bra.s, s23b], &[ket.s, s23k], chain4(s23k, ket.s, ket.total_s)) {
        SqrtRational::one()
    } else {
        SqrtRational::zero()
    };
    if spin.is_zero() {
        return Ok(MatElResult::zero());
    }
    let (b, k) = (orb4(bra), orb4(ket));
    let mut out = builder(bra, ket, radial, pair, weight, exchange);
    if !exchange {
        for lambda in lambdas(pair, &b.l, &k.l) {
            let v = direct4(pair, &b, &k, big_l, lambda)?;
            out.push(MultipoleTerm::lambda(lambda), &v * &spin)?;
        }
        return Ok(out.finish());
    }
    let [k0, k1, k2, k3] = k.l;
    for q in q_range(k0, k1, k.l23, big_l) {
        let r = exchange_box(k0, k1, k.l23, k.l123, q, big_l);
        if r.is_zero() {
            continue;
        }
        let kx = Orb4 { l: [k1, k0, k2, k3], l23: k.l23, l123: q };
        let rs = &r * &spin;
        for lambda in lambdas(pair, &b.l, &kx.l) {
            let v = direct4(pair, &b, &kx, big_l, lambda)?;
            out.push(MultipoleTerm { lambda, q: Some(q), p: Some(s23k) }, &v * &rs)?;
        }
    }
    Ok(out.finish())
}

fn weight_of(term: Term, e: f64) -> Weight {
    if term == Term::EExch {
        Weight::Energy(e)
    } else {
        Weight::Coulomb
    }
}

/// Electron–helium-like (three-electron) direct and exchange terms.
pub fn he_element(term: Term, bra: &Channel, ket: &Channel, radial: &dyn RadialProvider, e: f64) -> Result<MatElResult, MatElError> {
    three_electron(bra, ket, radial, pair_of(term), weight_of(term, e), term.is_exchange())
}

/// Electron–lithium-like (four-electron) direct and exchange terms.
pub fn li_element(term: Term, bra: &Channel, ket: &Channel, radial: &dyn RadialProvider, e: f64) -> Result<MatElResult, MatElError> {
    four_electron(bra, ket, radial, pair_of(term), weight_of(term, e), term.is_exchange())
}

/// Exchange term of the projectile–nucleus attraction: the overlap-exchange
/// structure with radial weight `1/r0` in place of the energy.
pub fn nuclear_exch(bra: &Channel, ket: &Channel, radial: &dyn RadialProvider) -> Result<MatElResult, MatElError> {
    match ket.electrons() {
        3 => three_electron(bra, ket, radial, Pair::Identity, Weight::InverseR0, true),
        4 => four_electron(bra, ket, radial, Pair::Identity, Weight::InverseR0, true),
        n => Err(MatElError::ElectronCount { expected: 4, found: n }),
    }
}

/// Direct projectile–nucleus term `δ(target) δ(l0' l0) ∫ u' u / r dr`, times the
/// target overlaps (unity for orthonormal orbitals).
pub fn one_body_nuclear(bra: &Channel, ket: &Channel, radial: &dyn RadialProvider) -> Result<MatElResult, MatElError> {
    let n = ket.electrons();
    if !check(bra, ket, n)? {
        return Ok(MatElResult::zero());
    }
    let same = bra.l0 == ket.l0
        && bra.target == ket.target
        && bra.l23 == ket.l23
        && bra.l == ket.l
        && bra.total_l == ket.total_l
        && bra.s == ket.s
        && bra.s23 == ket.s23
        && bra.total_s == ket.total_s;
    if !same {
        return Ok(MatElResult::zero());
    }
    let mut v = radial.inverse_r(&bra.radial_fn(0), &ket.radial_fn(0))?;
    for p in 1..n {
        v *= radial.overlap(&bra.radial_fn(p), &ket.radial_fn(p))?;
    }
    let t = TermValue { component: "", term: MultipoleTerm::lambda(HalfInt::ZERO), angular: 1.0, radial: v, exact: SqrtRational::one() };
    Ok(MatElResult::from_terms(vec![t]))
}

fn scaled(r: MatElResult, component: &'static str, c: f64) -> Vec<TermValue> {
    r.terms
        .into_iter()
        .map(|mut t| {
            t.component = component;
            t.angular *= c;
            t.exact = t.exact.scale(&num_rational::BigRational::from_float(c).expect("finite coefficient"));
            t
        })
        .collect()
}

/// Full potential `<L'||V||L>` for an `n_target`-electron target:
/// `N(−1/r0 + V01) − [V01x + (N−1)V02x + (N−1)V12x + (N−1)(N−2)/2 V23x − N(Ex + N·(1/r0)x)]`.
/// Terms carry their component name and the coefficient folded into `angular`.
pub fn assemble_v(bra: &Channel, ket: &Channel, radial: &dyn RadialProvider, e: f64, n_target: usize) -> Result<MatElResult, MatElError> {
    let n = n_target as f64;
    let element = match n_target {
        2 => he_element,
        3 => li_element,
        _ => return Err(MatElError::ElectronCount { expected: 3, found: n_target + 1 }),
    };
    if !check(bra, ket, n_target + 1)? {
        return Ok(MatElResult::zero());
    }
    let mut parts: Vec<(&'static str, f64, MatElResult)> = vec![
        ("one_body_nuclear", -n, one_body_nuclear(bra, ket, radial)?),
        ("v01_direct", n, element(Term::V01Direct, bra, ket, radial, e)?),
        ("v01_exch", -1.0, element(Term::V01Exch, bra, ket, radial, e)?),
        ("v02_exch", -(n - 1.0), element(Term::V02Exch, bra, ket, radial, e)?),
        ("v12_exch", -(n - 1.0), element(Term::V12Exch, bra, ket, radial, e)?),
    ];
    let c23 = (n - 1.0) * (n - 2.0) / 2.0;
    if c23 != 0.0 {
        parts.push(("v23_exch", -c23, element(Term::V23Exch, bra, ket, radial, e)?));
    }
    parts.push(("e_exch", n, element(Term::EExch, bra, ket, radial, e)?));
    parts.push(("nuclear_exch", n * n, nuclear_exch(bra, ket, radial)?));
    let terms = parts.into_iter().flat_map(|(name, c, r)| scaled(r, name, c)).collect();
    Ok(MatElResult::from_terms(terms))
}
