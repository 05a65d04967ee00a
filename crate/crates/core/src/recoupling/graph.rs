use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::exactnum::{triangle_ok, HalfInt, PiScaled, PrimeRational, SqrtRational};
use crate::wigner::{square_nine_j, triple_y, NineJArgs};

/// A momentum slot: a literal value or a named label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rank {
    Lit(HalfInt),
    Sym(String),
}

impl Rank {
    pub fn sym(s: &str) -> Self {
        Rank::Sym(s.to_string())
    }

    fn resolve(&self, env: &Env) -> HalfInt {
        match self {
            Rank::Lit(v) => *v,
            Rank::Sym(s) => env.get(s),
        }
    }

    fn name(&self) -> Option<&str> {
        match self {
            Rank::Lit(_) => None,
            Rank::Sym(s) => Some(s),
        }
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Lit(v) => write!(f, "{v}"),
            Rank::Sym(s) => write!(f, "{s}"),
        }
    }
}

/// A tensor line of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorLeaf {
    pub id: String,
    pub rank: Rank,
    /// Coordinate tag such as `r0`, or a spin index.
    pub particle: Option<String>,
}

/// Binary coupling of tensors, `[A B]^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CouplingTree {
    Leaf(TensorLeaf),
    Node { left: Box<CouplingTree>, right: Box<CouplingTree>, rank: Rank },
}

impl CouplingTree {
    pub fn rank(&self) -> &Rank {
        match self {
            CouplingTree::Leaf(l) => &l.rank,
            CouplingTree::Node { rank, .. } => rank,
        }
    }

    fn triads(&self, out: &mut Vec<[Rank; 3]>) {
        if let CouplingTree::Node { left, right, rank } = self {
            out.push([left.rank().clone(), right.rank().clone(), rank.clone()]);
            left.triads(out);
            right.triads(out);
        }
    }

    fn leaves<'a>(&'a self, out: &mut Vec<&'a TensorLeaf>) {
        match self {
            CouplingTree::Leaf(l) => out.push(l),
            CouplingTree::Node { left, right, .. } => {
                left.leaves(out);
                right.leaves(out);
            }
        }
    }

    fn labels(&self, out: &mut BTreeSet<String>) {
        let mut t = Vec::new();
        self.triads(&mut t);
        for r in t.iter().flatten() {
            if let Some(n) = r.name() {
                out.insert(n.to_string());
            }
        }
        if let CouplingTree::Leaf(l) = self {
            if let Some(n) = l.rank.name() {
                out.insert(n.to_string());
            }
        }
    }
}

impl fmt::Display for CouplingTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CouplingTree::Leaf(l) => match &l.particle {
                Some(p) => write!(f, "{}@{}", l.rank, p),
                None => write!(f, "{}", l.rank),
            },
            CouplingTree::Node { left, right, rank } => write!(f, "[{left} {right}]{rank}"),
        }
    }
}

/// One recoupling box: the square 9-j `[a b e; c d f; g h i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecouplingStep {
    pub slots: [Rank; 9],
}

impl RecouplingStep {
    fn triads(&self) -> [[Rank; 3]; 6] {
        let s = &self.slots;
        let t = |a: usize, b: usize, c: usize| [s[a].clone(), s[b].clone(), s[c].clone()];
        [t(0, 1, 2), t(3, 4, 5), t(6, 7, 8), t(0, 3, 6), t(1, 4, 7), t(2, 5, 8)]
    }
}

/// Terminal box `[λ | l' | l]`, the invariant integral of three harmonics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndBox {
    pub lambda: Rank,
    pub bra: Rank,
    pub ket: Rank,
}

/// Signed linear combination of labels, used in phase exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearExpr {
    pub terms: Vec<(i32, Rank)>,
}

impl LinearExpr {
    fn eval(&self, env: &Env) -> HalfInt {
        self.terms.iter().fold(HalfInt::ZERO, |acc, (c, r)| acc + HalfInt::from_twice(c * r.resolve(env).twice()))
    }
}

impl fmt::Display for LinearExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (c, r)) in self.terms.iter().enumerate() {
            let sign = if *c < 0 { "-" } else if k > 0 { "+" } else { "" };
            let mag = c.abs();
            if mag == 1 {
                write!(f, "{sign}{r}")?;
            } else {
                write!(f, "{sign}{mag}{r}")?;
            }
        }
        Ok(())
    }
}

/// Prefactors carried outside the boxes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// `i^(expr)`; nonzero terms must have an even exponent.
    IPower(LinearExpr),
    /// `(-1)^(expr)`.
    Sign(LinearExpr),
    /// `x̂^power`, recorded with the label it normalizes.
    Hat(Rank, i32),
    /// `δ_{ab}`.
    Delta(Rank, Rank),
    /// A rational constant.
    Rational(i64, i64),
    /// Angular weight `4π/λ̂` of one multipole of `1/r12`.
    Multipole(Rank),
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("line {0}: {1}")]
    Parse(usize, String),
    #[error("invariance violated: {0}")]
    Invariance(String),
    #[error("label {0} is neither assigned nor summed")]
    Unbound(String),
    #[error("summed label {0} has no triad that fixes its range")]
    Unbounded(String),
    #[error("phase exponent {0} is odd on a nonzero term")]
    OddPhase(HalfInt),
    #[error("end box with half-integer rank")]
    EndBoxRank,
}

/// A recoupling graph: bra, ket and operator coupling trees, the ordered boxes
/// that bring the ket scheme onto the bra scheme, end boxes and prefactors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecouplingGraph {
    pub name: String,
    pub bra: Option<CouplingTree>,
    pub ket: Option<CouplingTree>,
    pub operator: Option<CouplingTree>,
    pub summed: Vec<String>,
    pub factors: Vec<Factor>,
    pub steps: Vec<RecouplingStep>,
    pub endboxes: Vec<EndBox>,
}

/// Label values during evaluation.
#[derive(Clone, Debug, Default)]
struct Env {
    names: Vec<String>,
    values: Vec<HalfInt>,
    index: HashMap<String, usize>,
}

impl Env {
    fn get(&self, s: &str) -> HalfInt {
        self.values[self.index[s]]
    }

    fn set(&mut self, s: &str, v: HalfInt) {
        match self.index.get(s) {
            Some(&i) => self.values[i] = v,
            None => {
                self.index.insert(s.to_string(), self.names.len());
                self.names.push(s.to_string());
                self.values.push(v);
            }
        }
    }
}

/// One nonzero term of a graph sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphTerm {
    pub summed: BTreeMap<String, HalfInt>,
    pub value: PiScaled,
}

/// Graph value with its per-term breakdown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphValue {
    pub total: PiScaled,
    pub terms: Vec<GraphTerm>,
}

impl RecouplingGraph {
    /// Every named label in the graph.
    pub fn labels(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for t in [&self.bra, &self.ket, &self.operator].into_iter().flatten() {
            t.labels(&mut out);
        }
        let mut add = |r: &Rank| {
            if let Some(n) = r.name() {
                out.insert(n.to_string());
            }
        };
        for s in &self.steps {
            s.slots.iter().for_each(&mut add);
        }
        for e in &self.endboxes {
            [&e.lambda, &e.bra, &e.ket].into_iter().for_each(&mut add);
        }
        for f in &self.factors {
            match f {
                Factor::IPower(e) | Factor::Sign(e) => e.terms.iter().for_each(|(_, r)| add(r)),
                Factor::Hat(r, _) | Factor::Multipole(r) => add(r),
                Factor::Delta(a, b) => {
                    add(a);
                    add(b);
                }
                Factor::Rational(..) => {}
            }
        }
        out
    }

    /// Labels that must come from the caller.
    pub fn external_labels(&self) -> Vec<String> {
        self.labels().into_iter().filter(|l| !self.summed.contains(l)).collect()
    }

    /// Rejects graphs that are not scalar invariants.
    pub fn check_invariance(&self) -> Result<(), GraphError> {
        if let Some(op) = &self.operator {
            if *op.rank() != Rank::Lit(HalfInt::ZERO) {
                return Err(GraphError::Invariance(format!("operator couples to {} instead of 0", op.rank())));
            }
        }
        match (&self.bra, &self.ket) {
            (Some(b), Some(k)) => {
                if b.rank() != k.rank() {
                    return Err(GraphError::Invariance(format!("bra rank {} differs from ket rank {}", b.rank(), k.rank())));
                }
                let particles = |t: &CouplingTree| {
                    let mut v = Vec::new();
                    t.leaves(&mut v);
                    v.iter().filter_map(|l| l.particle.clone()).collect::<BTreeSet<_>>()
                };
                if particles(b) != particles(k) {
                    return Err(GraphError::Invariance("bra and ket act on different coordinates".into()));
                }
                if let Some(op) = &self.operator {
                    if !particles(op).is_subset(&particles(k)) {
                        return Err(GraphError::Invariance("operator acts on a coordinate absent from the states".into()));
                    }
                }
                Ok(())
            }
            (None, None) => Ok(()),
            _ => Err(GraphError::Invariance("bra and ket must both be given".into())),
        }
    }

    fn all_triads(&self) -> Vec<[Rank; 3]> {
        let mut t = Vec::new();
        for s in &self.steps {
            t.extend(s.triads());
        }
        for e in &self.endboxes {
            t.push([e.lambda.clone(), e.bra.clone(), e.ket.clone()]);
        }
        for tree in [&self.bra, &self.ket, &self.operator].into_iter().flatten() {
            tree.triads(&mut t);
        }
        t
    }

    /// Order in which summed labels are enumerated, each with the triads that
    /// bound it once the earlier labels are fixed.
    fn summation_plan(&self) -> Result<Vec<(String, Vec<(Rank, Rank)>)>, GraphError> {
        let triads = self.all_triads();
        let mut bound: BTreeSet<String> = self.external_labels().into_iter().collect();
        let mut pending: Vec<String> = self.summed.clone();
        let mut plan = Vec::new();
        let is_bound = |r: &Rank, bound: &BTreeSet<String>| r.name().is_none_or(|n| bound.contains(n));
        while !pending.is_empty() {
            let mut progress = false;
            for k in 0..pending.len() {
                let x = &pending[k];
                let mut pairs = Vec::new();
                for t in &triads {
                    for pos in 0..3 {
                        if t[pos].name() == Some(x.as_str()) {
                            let (a, b) = (&t[(pos + 1) % 3], &t[(pos + 2) % 3]);
                            if a.name() != Some(x.as_str()) && b.name() != Some(x.as_str()) && is_bound(a, &bound) && is_bound(b, &bound) {
                                pairs.push((a.clone(), b.clone()));
                            }
                        }
                    }
                }
                if !pairs.is_empty() {
                    let x = pending.remove(k);
                    bound.insert(x.clone());
                    plan.push((x, pairs));
                    progress = true;
                    break;
                }
            }
            if !progress {
                return Err(GraphError::Unbounded(pending[0].clone()));
            }
        }
        Ok(plan)
    }

    fn term_value(&self, env: &Env) -> Result<PiScaled, GraphError> {
        let mut acc = SqrtRational::one();
        let mut half_power = 0;
        let mut ipower = HalfInt::ZERO;
        for f in &self.factors {
            match f {
                Factor::Delta(a, b) => {
                    if a.resolve(env) != b.resolve(env) {
                        return Ok(PiScaled::zero());
                    }
                }
                Factor::Hat(r, p) => {
                    let d = i64::from(r.resolve(env).dim());
                    let v = PrimeRational::from_int(d).pow(i64::from(*p));
                    acc = &acc * &SqrtRational::signed_sqrt(&v);
                }
                Factor::Multipole(r) => {
                    let d = i64::from(r.resolve(env).dim());
                    acc = &acc * &SqrtRational::signed_sqrt(&PrimeRational::from_int(d).pow(-1));
                    half_power += 2;
                }
                Factor::Sign(e) => {
                    let v = e.eval(env);
                    let n = v.as_integer().ok_or(GraphError::OddPhase(v))?;
                    if n.rem_euclid(2) == 1 {
                        acc = -acc;
                    }
                }
                Factor::IPower(e) => ipower = ipower + e.eval(env),
                Factor::Rational(p, q) => acc = acc.scale(&PrimeRational::from_ratio(*p, *q).to_big_rational()),
            }
        }
        for e in &self.endboxes {
            let v = triple_y(e.lambda.resolve(env), e.bra.resolve(env), e.ket.resolve(env)).map_err(|_| GraphError::EndBoxRank)?;
            if v.is_zero() {
                return Ok(PiScaled::zero());
            }
            acc = &acc * &v.value;
            half_power += v.half_power;
        }
        for s in &self.steps {
            let r: Vec<HalfInt> = s.slots.iter().map(|r| r.resolve(env)).collect();
            let v = square_nine_j(&NineJArgs::new([[r[0], r[1], r[2]], [r[3], r[4], r[5]], [r[6], r[7], r[8]]]));
            if v.is_zero() {
                return Ok(PiScaled::zero());
            }
            acc = &acc * &v;
        }
        if acc.is_zero() {
            return Ok(PiScaled::zero());
        }
        let n = ipower.as_integer().ok_or(GraphError::OddPhase(ipower))?;
        if n.rem_euclid(2) != 0 {
            return Err(GraphError::OddPhase(ipower));
        }
        if n.rem_euclid(4) == 2 {
            acc = -acc;
        }
        Ok(PiScaled::new(acc, half_power))
    }

    fn trees_admissible(&self, env: &Env) -> bool {
        let mut t = Vec::new();
        for tree in [&self.bra, &self.ket, &self.operator].into_iter().flatten() {
            tree.triads(&mut t);
        }
        t.iter().all(|[a, b, c]| triangle_ok(a.resolve(env), b.resolve(env), c.resolve(env)))
    }

    /// Sums the graph over its summed labels at the given external assignment.
    pub fn evaluate(&self, assignment: &BTreeMap<String, HalfInt>) -> Result<GraphValue, GraphError> {
        self.check_invariance()?;
        let mut env = Env::default();
        for l in self.external_labels() {
            let v = assignment.get(&l).ok_or_else(|| GraphError::Unbound(l.clone()))?;
            env.set(&l, *v);
        }
        let plan = self.summation_plan()?;
        let mut terms = Vec::new();
        if self.trees_admissible_partial(&env) {
            self.sum_rec(&plan, 0, &mut env, &mut terms)?;
        }
        let total = terms.iter().fold(PiScaled::zero(), |acc: PiScaled, t: &GraphTerm| add_pi(&acc, &t.value));
        Ok(GraphValue { total, terms })
    }

    /// External triangles only; summed labels are checked per term.
    fn trees_admissible_partial(&self, env: &Env) -> bool {
        let mut t = Vec::new();
        for tree in [&self.bra, &self.ket, &self.operator].into_iter().flatten() {
            tree.triads(&mut t);
        }
        t.iter().all(|tri| {
            if tri.iter().any(|r| r.name().is_some_and(|n| !env.index.contains_key(n))) {
                return true;
            }
            triangle_ok(tri[0].resolve(env), tri[1].resolve(env), tri[2].resolve(env))
        })
    }

    fn sum_rec(&self, plan: &[(String, Vec<(Rank, Rank)>)], k: usize, env: &mut Env, out: &mut Vec<GraphTerm>) -> Result<(), GraphError> {
        if k == plan.len() {
            if !self.trees_admissible(env) {
                return Ok(());
            }
            let v = self.term_value(env)?;
            if !v.is_zero() {
                let summed = plan.iter().map(|(n, _)| (n.clone(), env.get(n))).collect();
                out.push(GraphTerm { summed, value: v });
            }
            return Ok(());
        }
        let (name, pairs) = &plan[k];
        let mut lo = i32::MIN;
        let mut hi = i32::MAX;
        let mut parity = None;
        for (a, b) in pairs {
            let (a, b) = (a.resolve(env).twice(), b.resolve(env).twice());
            if a < 0 || b < 0 {
                return Ok(());
            }
            lo = lo.max((a - b).abs());
            hi = hi.min(a + b);
            let p = (a + b).rem_euclid(2);
            match parity {
                None => parity = Some(p),
                Some(q) if q != p => return Ok(()),
                _ => {}
            }
        }
        let mut x = lo;
        while x <= hi {
            env.set(name, HalfInt::from_twice(x));
            self.sum_rec(plan, k + 1, env, out)?;
            x += 2;
        }
        Ok(())
    }

    /// Ranges each summed label may take at an assignment, for diagnostics.
    pub fn summation_order(&self) -> Result<Vec<String>, GraphError> {
        Ok(self.summation_plan()?.into_iter().map(|(n, _)| n).collect())
    }
}

pub(crate) fn add_pi(a: &PiScaled, b: &PiScaled) -> PiScaled {
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    assert_eq!(a.half_power, b.half_power, "adding values with different powers of 4 pi");
    PiScaled::new(&a.value + &b.value, a.half_power)
}
