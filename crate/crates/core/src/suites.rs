//! Semantic equality of tapes and the executable law corpus: every axiom
//! scheme and derived law instantiated at small types, with morphism
//! metavariables replaced by fresh generators carrying seeded random
//! matrices, and checked exactly.
//!
//! Case ids are `suite/row/binding#k`. Rows whose instances contain no
//! morphism metavariable are deterministic and run once per binding.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::circuit::{self, CircuitTerm, MonSignature};
use crate::interp::{EvalError, Interpretation};
use crate::kleisli::{self, FinCarrier, KMorphism, TheoryModel};
use crate::objects::{Monomial, Polynomial, Sort};
use crate::semiring::{Natural, Rational, Semiring};
use crate::tape::{self, Ctx, TapeTerm};
use crate::theory::{self, OpSymbol, SigmaTerm, TheoryKind};

/// Semirings we can draw random generator matrices over.
pub trait RandomWeight: Semiring {
    /// One random column of a generator matrix with `rows` entries.
    fn random_column<R: Rng + ?Sized>(rows: usize, rng: &mut R) -> Vec<Self>;
}

impl RandomWeight for Rational {
    /// Substochastic: `kᵢ/d` with `Σkᵢ ≤ d`.
    fn random_column<R: Rng + ?Sized>(rows: usize, rng: &mut R) -> Vec<Self> {
        let ks: Vec<u64> = (0..rows).map(|_| rng.random_range(0..4u64)).collect();
        let d = (ks.iter().sum::<u64>() + rng.random_range(0..3u64)).max(1);
        ks.into_iter().map(|k| Rational::new(k, d)).collect()
    }
}

impl RandomWeight for Natural {
    fn random_column<R: Rng + ?Sized>(rows: usize, rng: &mut R) -> Vec<Self> {
        (0..rows).map(|_| Natural::new(rng.random_range(0..3u64))).collect()
    }
}

pub fn random_matrix<S: RandomWeight, R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> KMorphism<S> {
    let columns = (0..cols)
        .map(|_| {
            S::random_column(rows, rng)
                .into_iter()
                .enumerate()
                .filter(|(_, w)| !w.is_zero())
                .collect()
        })
        .collect();
    KMorphism::from_columns(rows, columns)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemEq<S> {
    Equal,
    Unequal { row: usize, col: usize, lhs: S, rhs: S },
    TypeError(String),
}

/// Decides `⟦t1⟧ = ⟦t2⟧` exactly.
pub fn sem_eq<S: Semiring>(
    t1: &TapeTerm,
    t2: &TapeTerm,
    sig: &MonSignature,
    interp: &Interpretation<S>,
) -> Result<SemEq<S>, EvalError> {
    let ctx = Ctx::new(sig, &interp.model.theory);
    let ty1 = match t1.type_of(&ctx) {
        Ok(t) => t,
        Err(e) => return Ok(SemEq::TypeError(format!("left: {e}"))),
    };
    let ty2 = match t2.type_of(&ctx) {
        Ok(t) => t,
        Err(e) => return Ok(SemEq::TypeError(format!("right: {e}"))),
    };
    if ty1 != ty2 {
        return Ok(SemEq::TypeError(format!(
            "left is {} -> {}, right is {} -> {}",
            ty1.0, ty1.1, ty2.0, ty2.1
        )));
    }
    Ok(compare(&interp.eval_tape(t1)?, &interp.eval_tape(t2)?))
}

fn compare<S: Semiring>(a: &KMorphism<S>, b: &KMorphism<S>) -> SemEq<S> {
    if a.shape() != b.shape() {
        return SemEq::TypeError(format!("shapes {:?} and {:?}", a.shape(), b.shape()));
    }
    match a.first_difference(b) {
        None => SemEq::Equal,
        Some((row, col, lhs, rhs)) => SemEq::Unequal { row, col, lhs, rhs },
    }
}

/// Suite bounds. Carrier sizes come from the interpretation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub sorts: usize,
    pub len: usize,
    pub poly: usize,
    pub instances: usize,
    pub seed: u64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            sorts: 2,
            len: 2,
            poly: 2,
            instances: 5,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail {
        row: usize,
        col: usize,
        lhs: String,
        rhs: String,
    },
    Error(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseResult {
    pub id: String,
    pub outcome: Outcome,
    /// Term pair and the fresh generators, for non-passing cases.
    pub repro: Option<String>,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }

    /// The law this case instantiates: `suite/row`.
    pub fn row(&self) -> &str {
        let mut parts = self.id.splitn(3, '/');
        let suite = parts.next().unwrap_or("");
        let row = parts.next().unwrap_or("");
        &self.id[..suite.len() + 1 + row.len()]
    }
}

impl fmt::Display for CaseResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            Outcome::Pass => write!(f, "{} PASS -", self.id),
            Outcome::Fail { row, col, lhs, rhs } => {
                write!(f, "{} FAIL row={row} col={col} lhs={lhs} rhs={rhs}", self.id)
            }
            Outcome::Error(e) => write!(f, "{} ERROR {e}", self.id),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub cases: Vec<CaseResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.cases.iter().all(CaseResult::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseResult> {
        self.cases.iter().filter(|c| !c.passed())
    }

    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.passed()).count()
    }

    /// Distinct rows, in order of first appearance.
    pub fn rows(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for c in &self.cases {
            let r = c.row();
            if !out.contains(&r) {
                out.push(r);
            }
        }
        out
    }

    pub fn cases_of<'a>(&'a self, row: &'a str) -> impl Iterator<Item = &'a CaseResult> + 'a {
        self.cases.iter().filter(move |c| c.row() == row)
    }

    pub fn extend(&mut self, other: Report) {
        self.cases.extend(other.cases);
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A signature and interpretation that fresh generators get added to.
#[derive(Clone)]
pub struct Env<S> {
    pub sig: MonSignature,
    pub interp: Interpretation<S>,
    fresh: Vec<String>,
}

impl Env<Rational> {
    /// Sorts `A`, `B` with carriers of size 2 and 3, PCA at `params`.
    pub fn standard_pca(params: &[Rational]) -> Self {
        let theory = theory::pca(params).expect("parameters in (0,1)");
        let model = TheoryModel::pca(theory).expect("standard weights");
        Self::standard(model)
    }
}

impl Env<Natural> {
    /// Sorts `A`, `B` with carriers of size 2 and 3, commutative monoids.
    pub fn standard_cm() -> Self {
        let model = TheoryModel::cm(theory::cm()).expect("standard weights");
        Self::standard(model)
    }
}

impl<S: RandomWeight> Env<S> {
    pub fn new(sig: MonSignature, interp: Interpretation<S>) -> Self {
        Env {
            sig,
            interp,
            fresh: Vec::new(),
        }
    }

    fn standard(model: TheoryModel<S>) -> Self {
        let mut sig = MonSignature::new();
        let mut interp = Interpretation::new(model);
        for (name, size) in [("A", 2), ("B", 3)] {
            sig.add_sort(Sort::new(name)).expect("fresh sort");
            interp.set_sort(Sort::new(name), FinCarrier::new(size));
        }
        Env::new(sig, interp)
    }

    pub fn ctx(&self) -> Ctx<'_> {
        Ctx::new(&self.sig, &self.interp.model.theory)
    }

    /// A fresh generator `U → V` with a random matrix.
    pub fn gen<R: Rng + ?Sized>(&mut self, u: &Monomial, v: &Monomial, rng: &mut R) -> CircuitTerm {
        let mut k = self.fresh.len();
        let name = loop {
            let candidate = format!("?g{k}");
            if self.sig.gen(&candidate).is_none() {
                break candidate;
            }
            k += 1;
        };
        self.sig
            .add_gen(&name, u.clone(), v.clone())
            .expect("sorts of the suite are declared");
        let rows = self.interp.mono_size(v).expect("carrier");
        let cols = self.interp.mono_size(u).expect("carrier");
        self.interp.set_gen(&name, random_matrix(rows, cols, rng));
        self.fresh.push(name.clone());
        CircuitTerm::gen(&name)
    }

    /// A random tape `P → Q`: each summand of `P` runs a random Σ-term, and
    /// each branch of it a fresh generator into a random summand of `Q`.
    pub fn tape<R: Rng + ?Sized>(&mut self, p: &Polynomial, q: &Polynomial, rng: &mut R) -> TapeTerm {
        if p.is_zero() {
            return tape::cobang(q);
        }
        let (binary, constant) = self.base_ops();
        let mut branches = Vec::new();
        for u in p.monomials() {
            let up = u.to_poly();
            if q.is_zero() {
                branches.push(TapeTerm::Op(constant.clone(), u.clone()));
                continue;
            }
            let m = rng.random_range(1..=2usize);
            let t = random_sigma(&binary, &constant, m, 2, rng);
            let head = tape::term(&t, m, &up).expect("well-formed random term");
            let mut legs = Vec::new();
            for _ in 0..m {
                let l = rng.random_range(0..q.len());
                let g = self.gen(u, &q.monomials()[l], rng);
                legs.push(tape::plus_all([
                    tape::cobang(&Polynomial(q.monomials()[..l].to_vec())),
                    TapeTerm::Circuit(g),
                    tape::cobang(&Polynomial(q.monomials()[l + 1..].to_vec())),
                ]));
            }
            branches.push(TapeTerm::seq(
                TapeTerm::seq(head, tape::plus_all(legs)),
                tape::codiag_n(q, m),
            ));
        }
        TapeTerm::seq(tape::plus_all(branches), tape::codiag_n(q, p.len()))
    }

    /// Binary operations at the base parameters, and the constant.
    pub fn base_ops(&self) -> (Vec<OpSymbol>, OpSymbol) {
        let th = &self.interp.model.theory;
        match th.kind {
            TheoryKind::Pca => (
                th.base_params().iter().cloned().map(OpSymbol::convex).collect(),
                OpSymbol::star(),
            ),
            TheoryKind::Cm => (alloc::vec![OpSymbol::plus()], OpSymbol::zero()),
        }
    }

    fn ops(&self) -> Vec<OpSymbol> {
        let (mut ops, c) = self.base_ops();
        ops.push(c);
        ops
    }

    pub fn type_of(&self, t: &TapeTerm) -> Result<(Polynomial, Polynomial), String> {
        t.type_of(&self.ctx()).map_err(|e| e.to_string())
    }

    pub fn tensor(&self, a: &TapeTerm, b: &TapeTerm) -> Result<TapeTerm, String> {
        tape::tensor(a, b, &self.ctx()).map_err(|e| e.to_string())
    }

    pub fn right(&self, t: &TapeTerm, s: &Polynomial) -> Result<TapeTerm, String> {
        tape::right(t, s, &self.ctx()).map_err(|e| e.to_string())
    }

    /// Monomials of length `≤ len` over the first `sorts` sorts.
    pub fn monomials(&self, sorts: usize, len: usize) -> Vec<Monomial> {
        let base: Vec<Sort> = self.sig.sorts().iter().take(sorts).cloned().collect();
        let mut out = alloc::vec![Monomial::one()];
        let mut layer = alloc::vec![Monomial::one()];
        for _ in 0..len {
            let next: Vec<Monomial> = layer
                .iter()
                .flat_map(|m| base.iter().map(move |s| m.concat(&Monomial::sort(s.clone()))))
                .collect();
            out.extend(next.iter().cloned());
            layer = next;
        }
        out
    }

    fn repro(&self, lhs: &str, rhs: &str) -> String {
        let mut s = format!("lhs: {lhs}\nrhs: {rhs}\n");
        for (sort, c) in self.interp.sorts() {
            s.push_str(&format!("sort {} = {}\n", sort.name(), c.size()));
        }
        for name in &self.fresh {
            if let (Some(d), Some(m)) = (self.sig.gen(name), self.interp.gen_matrix(name)) {
                s.push_str(&format!("gen {name} : {} -> {} = {m}\n", d.ar, d.coar));
            }
        }
        s
    }
}

/// Polynomials with at most `k` summands drawn from `monos`.
pub fn polynomials(monos: &[Monomial], k: usize) -> Vec<Polynomial> {
    let mut out = alloc::vec![Polynomial::zero()];
    let mut layer = alloc::vec![Polynomial::zero()];
    for _ in 0..k {
        let next: Vec<Polynomial> = layer
            .iter()
            .flat_map(|p| monos.iter().map(move |m| p.plus(&m.to_poly())))
            .collect();
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn random_sigma<R: Rng + ?Sized>(
    binary: &[OpSymbol],
    constant: &OpSymbol,
    m: usize,
    depth: usize,
    rng: &mut R,
) -> SigmaTerm {
    if depth == 0 || binary.is_empty() || rng.random_ratio(1, 3) {
        if rng.random_ratio(1, 6) {
            SigmaTerm::constant(constant.clone())
        } else {
            SigmaTerm::Var(rng.random_range(1..=m))
        }
    } else {
        let f = binary[rng.random_range(0..binary.len())].clone();
        SigmaTerm::bin(
            f,
            random_sigma(binary, constant, m, depth - 1, rng),
            random_sigma(binary, constant, m, depth - 1, rng),
        )
    }
}

fn pick<T: Clone, R: Rng + ?Sized>(xs: &[T], rng: &mut R) -> T {
    xs[rng.random_range(0..xs.len())].clone()
}

fn rand_poly<R: Rng + ?Sized>(monos: &[Monomial], k: usize, rng: &mut R) -> Polynomial {
    let n = rng.random_range(0..=k);
    Polynomial::from_monomials((0..n).map(|_| pick(monos, rng)))
}

fn fnv(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// One side of a case.
pub enum Side<S> {
    Tape(TapeTerm),
    Matrix(KMorphism<S>),
}

impl<S> From<TapeTerm> for Side<S> {
    fn from(t: TapeTerm) -> Self {
        Side::Tape(t)
    }
}

impl<S: Semiring> fmt::Display for Side<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Tape(t) => write!(f, "{t}"),
            Side::Matrix(m) => write!(f, "matrix {m}"),
        }
    }
}

type Built<S> = Result<(Side<S>, Side<S>), String>;

fn pair<S>(a: TapeTerm, b: TapeTerm) -> Built<S> {
    Ok((Side::Tape(a), Side::Tape(b)))
}

fn seq(items: impl IntoIterator<Item = TapeTerm>) -> TapeTerm {
    tape::seq_all(items).expect("nonempty")
}

struct Runner<'a, S> {
    base: &'a Env<S>,
    bounds: &'a Bounds,
    suite: &'static str,
    report: Report,
}

impl<'a, S: RandomWeight> Runner<'a, S> {
    fn new(base: &'a Env<S>, bounds: &'a Bounds, suite: &'static str) -> Self {
        Runner {
            base,
            bounds,
            suite,
            report: Report::default(),
        }
    }

    fn rng(&self, id: &str) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(fnv(id) ^ self.bounds.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    /// Runs `bounds.instances` seeded instances of a row at a binding.
    fn random<F>(&mut self, row: &str, binding: &str, mut build: F)
    where
        F: FnMut(&mut Env<S>, &mut ChaCha8Rng) -> Built<S>,
    {
        for k in 0..self.bounds.instances {
            let id = format!("{}/{row}/{binding}#{k}", self.suite);
            self.case(id, &mut build);
        }
    }

    /// A row instance without morphism metavariables.
    fn fixed<F>(&mut self, row: &str, binding: &str, mut build: F)
    where
        F: FnMut(&mut Env<S>, &mut ChaCha8Rng) -> Built<S>,
    {
        let id = format!("{}/{row}/{binding}#0", self.suite);
        self.case(id, &mut build);
    }

    fn case<F>(&mut self, id: String, build: &mut F)
    where
        F: FnMut(&mut Env<S>, &mut ChaCha8Rng) -> Built<S>,
    {
        let mut env = self.base.clone();
        env.fresh.clear();
        let mut rng = self.rng(&id);
        let (outcome, repro) = match build(&mut env, &mut rng) {
            Err(e) => (Outcome::Error(e), None),
            Ok((l, r)) => {
                let outcome = check(&env, &l, &r);
                let repro = match outcome {
                    Outcome::Pass => None,
                    _ => Some(env.repro(&l.to_string(), &r.to_string())),
                };
                (outcome, repro)
            }
        };
        self.report.cases.push(CaseResult { id, outcome, repro });
    }
}

fn check<S: Semiring>(env: &Env<S>, l: &Side<S>, r: &Side<S>) -> Outcome {
    let res = match (l, r) {
        (Side::Tape(a), Side::Tape(b)) => sem_eq(a, b, &env.sig, &env.interp),
        _ => side_matrix(env, l).and_then(|a| side_matrix(env, r).map(|b| compare(&a, &b))),
    };
    match res {
        Ok(SemEq::Equal) => Outcome::Pass,
        Ok(SemEq::Unequal { row, col, lhs, rhs }) => Outcome::Fail {
            row,
            col,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        },
        Ok(SemEq::TypeError(e)) => Outcome::Error(e),
        Err(e) => Outcome::Error(e.to_string()),
    }
}

fn side_matrix<S: Semiring>(env: &Env<S>, s: &Side<S>) -> Result<KMorphism<S>, EvalError> {
    match s {
        Side::Matrix(m) => Ok(m.clone()),
        Side::Tape(t) => {
            let ctx = Ctx::new(&env.sig, &env.interp.model.theory);
            if let Err(e) = t.type_of(&ctx) {
                return Err(EvalError::Unsound(e.to_string()));
            }
            env.interp.eval_tape(t)
        }
    }
}

fn b1(u: &Monomial) -> String {
    format!("U={u}")
}

fn b2(u: &Monomial, v: &Monomial) -> String {
    format!("U={u},V={v}")
}

/// Every row of the tape axioms: the symmetric monoidal laws for `⊕` on
/// tapes and for `⊗` inside `[-]`, the finite-coproduct and operation laws,
/// the theory's equations, and the comonoid laws of the cd extension.
pub fn axiom_suite<S: RandomWeight>(base: &Env<S>, bounds: &Bounds) -> Report {
    let mut r = Runner::new(base, bounds, "axiom");
    let monos = base.monomials(bounds.sorts, bounds.len);
    let k = bounds.poly;
    let id = |u: &Monomial| TapeTerm::IdMon(u.clone());

    // ⊕ layer
    for u in &monos {
        r.random("sum.assoc", &b1(u), |e, g| {
            let (q, s, t) = (rand_poly(&monos, k, g), rand_poly(&monos, k, g), rand_poly(&monos, k, g));
            let up = u.to_poly();
            let (f1, f2, f3) = (e.tape(&up, &q, g), e.tape(&q, &s, g), e.tape(&s, &t, g));
            pair(
                TapeTerm::seq(TapeTerm::seq(f1.clone(), f2.clone()), f3.clone()),
                TapeTerm::seq(f1, TapeTerm::seq(f2, f3)),
            )
        });
        r.random("sum.id-left", &b1(u), |e, g| {
            let q = rand_poly(&monos, k, g);
            let f = e.tape(&u.to_poly(), &q, g);
            pair(TapeTerm::seq(id(u), f.clone()), f)
        });
        r.random("sum.id-right", &b1(u), |e, g| {
            let p = rand_poly(&monos, k, g);
            let f = e.tape(&p, &u.to_poly(), g);
            pair(TapeTerm::seq(f.clone(), id(u)), f)
        });
        r.random("sum.interchange", &b1(u), |e, g| {
            let up = u.to_poly();
            let [q1, r1, p2, q2, r2] = core::array::from_fn(|_| rand_poly(&monos, k, g));
            let (f1, g1) = (e.tape(&up, &q1, g), e.tape(&q1, &r1, g));
            let (f2, g2) = (e.tape(&p2, &q2, g), e.tape(&q2, &r2, g));
            pair(
                TapeTerm::seq(TapeTerm::sum(f1.clone(), f2.clone()), TapeTerm::sum(g1.clone(), g2.clone())),
                TapeTerm::sum(TapeTerm::seq(f1, g1), TapeTerm::seq(f2, g2)),
            )
        });
        r.random("sum.unit", &b1(u), |e, g| {
            let q = rand_poly(&monos, k, g);
            let f = e.tape(&u.to_poly(), &q, g);
            pair(TapeTerm::sum(TapeTerm::IdZero, f.clone()), TapeTerm::sum(f, TapeTerm::IdZero))
        });
        r.random("sum.monoidal-assoc", &b1(u), |e, g| {
            let [q1, p2, q2, p3, q3] = core::array::from_fn(|_| rand_poly(&monos, k, g));
            let f1 = e.tape(&u.to_poly(), &q1, g);
            let (f2, f3) = (e.tape(&p2, &q2, g), e.tape(&p3, &q3, g));
            pair(
                TapeTerm::sum(TapeTerm::sum(f1.clone(), f2.clone()), f3.clone()),
                TapeTerm::sum(f1, TapeTerm::sum(f2, f3)),
            )
        });
        for v in &monos {
            r.fixed("sum.sym-inv", &b2(u, v), |_, _| {
                pair(
                    TapeTerm::seq(
                        TapeTerm::SymPlus(u.clone(), v.clone()),
                        TapeTerm::SymPlus(v.clone(), u.clone()),
                    ),
                    TapeTerm::sum(id(u), id(v)),
                )
            });
            r.random("sum.sym-nat", &b2(u, v), |e, g| {
                let w = pick(&monos, g);
                let f = e.tape(&u.to_poly(), &w.to_poly(), g);
                pair(
                    TapeTerm::seq(TapeTerm::sum(f.clone(), id(v)), TapeTerm::SymPlus(w.clone(), v.clone())),
                    TapeTerm::seq(TapeTerm::SymPlus(u.clone(), v.clone()), TapeTerm::sum(id(v), f)),
                )
            });
        }
    }

    // ⊗ layer, inside [-]
    let c = |x: CircuitTerm| TapeTerm::Circuit(x);
    for u in &monos {
        r.random("tensor.assoc", &b1(u), |e, g| {
            let (v, w, x) = (pick(&monos, g), pick(&monos, g), pick(&monos, g));
            let (f1, f2, f3) = (e.gen(u, &v, g), e.gen(&v, &w, g), e.gen(&w, &x, g));
            pair(
                c(CircuitTerm::seq(CircuitTerm::seq(f1.clone(), f2.clone()), f3.clone())),
                c(CircuitTerm::seq(f1, CircuitTerm::seq(f2, f3))),
            )
        });
        r.random("tensor.id-left", &b1(u), |e, g| {
            let v = pick(&monos, g);
            let f = e.gen(u, &v, g);
            pair(c(CircuitTerm::seq(circuit::id(u), f.clone())), c(f))
        });
        r.random("tensor.id-right", &b1(u), |e, g| {
            let v = pick(&monos, g);
            let f = e.gen(&v, u, g);
            pair(c(CircuitTerm::seq(f.clone(), circuit::id(u))), c(f))
        });
        r.random("tensor.interchange", &b1(u), |e, g| {
            let [v1, w1, u2, v2, w2] = core::array::from_fn(|_| pick(&monos, g));
            let (f1, g1) = (e.gen(u, &v1, g), e.gen(&v1, &w1, g));
            let (f2, g2) = (e.gen(&u2, &v2, g), e.gen(&v2, &w2, g));
            pair(
                c(CircuitTerm::seq(
                    CircuitTerm::tensor(f1.clone(), f2.clone()),
                    CircuitTerm::tensor(g1.clone(), g2.clone()),
                )),
                c(CircuitTerm::tensor(CircuitTerm::seq(f1, g1), CircuitTerm::seq(f2, g2))),
            )
        });
        r.random("tensor.unit", &b1(u), |e, g| {
            let v = pick(&monos, g);
            let f = e.gen(u, &v, g);
            pair(
                c(CircuitTerm::tensor(CircuitTerm::IdOne, f.clone())),
                c(CircuitTerm::tensor(f, CircuitTerm::IdOne)),
            )
        });
        r.random("tensor.monoidal-assoc", &b1(u), |e, g| {
            let [v1, u2, v2, u3, v3] = core::array::from_fn(|_| pick(&monos, g));
            let (f1, f2, f3) = (e.gen(u, &v1, g), e.gen(&u2, &v2, g), e.gen(&u3, &v3, g));
            pair(
                c(CircuitTerm::tensor(CircuitTerm::tensor(f1.clone(), f2.clone()), f3.clone())),
                c(CircuitTerm::tensor(f1, CircuitTerm::tensor(f2, f3))),
            )
        });
        for v in &monos {
            r.fixed("tensor.sym-inv", &b2(u, v), |_, _| {
                pair(
                    c(CircuitTerm::seq(circuit::sym(u, v), circuit::sym(v, u))),
                    c(circuit::id(&u.concat(v))),
                )
            });
            r.random("tensor.sym-nat", &b2(u, v), |e, g| {
                let w = pick(&monos, g);
                let s = e.gen(u, &w, g);
                pair(
                    c(CircuitTerm::seq(
                        CircuitTerm::tensor(s.clone(), circuit::id(v)),
                        circuit::sym(&w, v),
                    )),
                    c(CircuitTerm::seq(circuit::sym(u, v), CircuitTerm::tensor(circuit::id(v), s))),
                )
            });
        }
    }

    // finite coproducts, operations, [-] as a functor, E
    let nabla = |u: &Monomial| TapeTerm::Codiag(u.clone());
    let bang = |u: &Monomial| TapeTerm::Cobang(u.clone());
    for u in &monos {
        r.fixed("fc.codiag-assoc", &b1(u), |_, _| {
            pair(
                TapeTerm::seq(TapeTerm::sum(id(u), nabla(u)), nabla(u)),
                TapeTerm::seq(TapeTerm::sum(nabla(u), id(u)), nabla(u)),
            )
        });
        r.fixed("fc.codiag-unit", &b1(u), |_, _| {
            pair(TapeTerm::seq(TapeTerm::sum(bang(u), id(u)), nabla(u)), id(u))
        });
        r.fixed("fc.codiag-comm", &b1(u), |_, _| {
            pair(TapeTerm::seq(TapeTerm::SymPlus(u.clone(), u.clone()), nabla(u)), nabla(u))
        });
        r.random("fc.codiag-nat", &b1(u), |e, g| {
            let v = pick(&monos, g);
            let x = e.gen(u, &v, g);
            pair(
                TapeTerm::seq(nabla(u), c(x.clone())),
                TapeTerm::seq(TapeTerm::sum(c(x.clone()), c(x)), nabla(&v)),
            )
        });
        r.random("fc.cobang-nat", &b1(u), |e, g| {
            let v = pick(&monos, g);
            let x = e.gen(u, &v, g);
            pair(TapeTerm::seq(bang(u), c(x)), bang(&v))
        });
        for f in base.ops() {
            let n = f.arity();
            let fu = TapeTerm::Op(f.clone(), u.clone());
            let nu = u.to_poly().repeat(n);
            let bind = format!("U={u},f={f}");
            r.fixed("op.codiag", &bind, |_, _| {
                pair(
                    TapeTerm::seq(nabla(u), fu.clone()),
                    TapeTerm::seq(TapeTerm::sum(fu.clone(), fu.clone()), tape::codiag(&nu)),
                )
            });
            r.fixed("op.cobang", &bind, |_, _| {
                pair(TapeTerm::seq(bang(u), fu.clone()), tape::cobang(&nu))
            });
            r.random("op.nat", &bind, |e, g| {
                let q = rand_poly(&monos, k, g);
                let t = e.tape(&u.to_poly(), &q, g);
                pair(
                    TapeTerm::seq(t.clone(), tape::op(&f, &q)),
                    TapeTerm::seq(fu.clone(), tape::repeat(&t, n)),
                )
            });
        }
        r.fixed("circ.id", &b1(u), |_, _| pair(c(circuit::id(u)), id(u)));
        r.random("circ.seq", &b1(u), |e, g| {
            let (v, w) = (pick(&monos, g), pick(&monos, g));
            let (x, y) = (e.gen(u, &v, g), e.gen(&v, &w, g));
            pair(c(CircuitTerm::seq(x.clone(), y.clone())), TapeTerm::seq(c(x), c(y)))
        });
        for eq in base.interp.model.theory.equations() {
            let up = u.to_poly();
            r.fixed("theory.eq", &format!("U={u},e={}", eq.name), |_, _| {
                let l = tape::term(&eq.lhs, eq.context, &up).map_err(|e| e.to_string())?;
                let rt = tape::term(&eq.rhs, eq.context, &up).map_err(|e| e.to_string())?;
                pair(l, rt)
            });
        }
    }

    // comonoid laws of the cd extension
    for u in &monos {
        let cp = circuit::copier(u);
        let dc = circuit::discharger(u);
        let iu = circuit::id(u);
        r.fixed("cd.copy-assoc", &b1(u), |_, _| {
            pair(
                c(CircuitTerm::seq(cp.clone(), CircuitTerm::tensor(cp.clone(), iu.clone()))),
                c(CircuitTerm::seq(cp.clone(), CircuitTerm::tensor(iu.clone(), cp.clone()))),
            )
        });
        r.fixed("cd.copy-unit", &b1(u), |_, _| {
            pair(
                c(CircuitTerm::seq(cp.clone(), CircuitTerm::tensor(dc.clone(), iu.clone()))),
                c(CircuitTerm::seq(cp.clone(), CircuitTerm::tensor(iu.clone(), dc.clone()))),
            )
        });
        r.fixed("cd.copy-counit", &b1(u), |_, _| {
            pair(
                c(CircuitTerm::seq(cp.clone(), CircuitTerm::tensor(iu.clone(), dc.clone()))),
                c(iu.clone()),
            )
        });
        r.fixed("cd.copy-comm", &b1(u), |_, _| {
            pair(c(CircuitTerm::seq(cp.clone(), circuit::sym(u, u))), c(cp.clone()))
        });
        for v in &monos {
            r.fixed("cd.copy-coherence", &b2(u, v), |_, _| {
                pair(
                    c(circuit::copier(&u.concat(v))),
                    c(CircuitTerm::seq(
                        CircuitTerm::tensor(circuit::copier(u), circuit::copier(v)),
                        CircuitTerm::tensor_all([
                            circuit::id(u),
                            circuit::sym(u, v),
                            circuit::id(v),
                        ]),
                    )),
                )
            });
            r.fixed("cd.discard-coherence", &b2(u, v), |_, _| {
                pair(
                    c(circuit::discharger(&u.concat(v))),
                    c(CircuitTerm::tensor(circuit::discharger(u), circuit::discharger(v))),
                )
            });
        }
    }
    r.report
}

/// `δˡ_{Y,nX} : Y⊗⊕ⁿX → ⊕ⁿ(Y⊗X)`.
pub fn dl_n(y: &Polynomial, x: &Polynomial, n: usize) -> TapeTerm {
    match n {
        0 => TapeTerm::IdZero,
        1 => tape::id(&y.tensor(x)),
        _ => TapeTerm::seq(
            tape::dl(y, x, &x.repeat(n - 1)),
            tape::plus(tape::id(&y.tensor(x)), dl_n(y, x, n - 1)),
        ),
    }
}

/// Derived laws: distributivity lemmas for `∇` and `¡`, functionality and
/// totality of the monoid structure and of the structural isomorphisms, the
/// coherence of copier with `⊕`, lemmas on `⟨f⟩` and `∇ⁿ`, naturality of
/// `⟨t⟩`, the enrichment equations, the whiskering algebra, and the
/// constants against their matrices.
pub fn lemma_suite<S: RandomWeight>(base: &Env<S>, bounds: &Bounds) -> Report {
    let mut report = distributivity_lemmas(base, bounds);
    report.extend(map_lemmas(base, bounds));
    report.extend(copier_coherence(base, bounds));
    report.extend(op_lemmas(base, bounds));
    report.extend(enrichment(base, bounds));
    report.extend(whiskering_laws(base, bounds));
    report.extend(transport(base, bounds));
    report
}

fn polys_of<S: RandomWeight>(base: &Env<S>, bounds: &Bounds) -> (Vec<Monomial>, Vec<Polynomial>) {
    let monos = base.monomials(bounds.sorts, bounds.len);
    let polys = polynomials(&monos, bounds.poly);
    (monos, polys)
}

fn bx(x: &Polynomial) -> String {
    format!("X={x}")
}

/// `∇` and `¡` on a product, through either distributor.
pub fn distributivity_lemmas<S: RandomWeight>(base: &Env<S>, bounds: &Bounds) -> Report {
    let mut r = Runner::new(base, bounds, "lemma");
    let (monos, _) = polys_of(base, bounds);
    let k = bounds.poly;
    r.random("dist.codiag", "random", |e, g| {
        let (x, y) = (rand_poly(&monos, k, g), rand_poly(&monos, k, g));
        pair(tape::codiag(&x.tensor(&y)), e.tensor(&tape::codiag(&x), &tape::id(&y))?)
    });
    r.random("dist.codiag-left", "random", |e, g| {
        let (x, y) = (rand_poly(&monos, k, g), rand_poly(&monos, k, g));
        pair(
            tape::codiag(&x.tensor(&y)),
            TapeTerm::seq(tape::dl_inv(&x, &y, &y), e.tensor(&tape::id(&x), &tape::codiag(&y))?),
        )
    });
    r.random("dist.cobang", "random", |e, g| {
        let (x, y) = (rand_poly(&monos, k, g), rand_poly(&monos, k, g));
        pair(tape::cobang(&x.tensor(&y)), e.tensor(&tape::cobang(&x), &tape::id(&y))?)
    });
    r.random("dist.cobang-left", "random", |e, g| {
        let (x, y) = (rand_poly(&monos, k, g), rand_poly(&monos, k, g));
        pair(tape::cobang(&x.tensor(&y)), e.tensor(&tape::id(&x), &tape::cobang(&y))?)
    });
    r.report
}

/// The monoid `(∇, ¡)` against copier and discharger, and the structural
/// isomorphisms as maps.
pub fn map_lemmas<S: RandomWeight>(base: &Env<S>, bounds: &Bounds) -> Report {
    let mut r = Runner::new(base, bounds, "lemma");
    let (_, polys) = polys_of(base, bounds);
    let one = Polynomial::one();
    for x in &polys {
        let xx = x.tensor(x);
        let x2 = x.plus(x);
        let b = bx(x);
        r.fixed("map.codiag-copier", &b, |_, _| {
            pair(
                TapeTerm::seq(tape::codiag(x), tape::copier(x)),
                TapeTerm::seq(tape::plus(tape::copier(x), tape::copier(x)), tape::codiag(&xx)),
            )
        });
        r.fixed("map.codiag-discharger", &b, |_, _| {
            pair(
                TapeTerm::seq(tape::codiag(x), tape::discharger(x)),
                TapeTerm::seq(tape::plus(tape::discharger(x), tape::discharger(x)), tape::codiag(&one)),
            )
        });
        r.fixed("map.cobang-copier", &b, |_, _| {
            pair(TapeTerm::seq(tape::cobang(x), tape::copier(x)), tape::cobang(&xx))
        });
        r.fixed("map.cobang-discharger", &b, |_, _| {
            pair(TapeTerm::seq(tape::cobang(x), tape::discharger(x)), tape::cobang(&one))
        });
        r.fixed("map.codiag-functional", &b, |e, _| {
            pair(
                TapeTerm::seq(tape::codiag(x), tape::copier(x)),
                TapeTerm::seq(tape::copier(&x2), e.tensor(&tape::codiag(x), &tape::codiag(x))?),
            )
        });
        r.fixed("map.codiag-total", &b, |_, _| {
            pair(TapeTerm::seq(tape::codiag(x), tape::discharger(x)), tape::discharger(&x2))
        });
        r.fixed("map.cobang-functional", &b, |e, _| {
            pair(
                TapeTerm::seq(tape::cobang(x), tape::copier(x)),
                TapeTerm::seq(
                    tape::copier(&Polynomial::zero()),
                    e.tensor(&tape::cobang(x), &tape::cobang(x))?,
                ),
            )
        });
        r.fixed("map.cobang-total", &b, |_, _| {
            pair(
                TapeTerm::seq(tape::cobang(x), tape::discharger(x)),
                tape::discharger(&Polynomial::zero()),
            )
        });
    }

    // structural isomorphisms are maps; short monomials keep P⊗P small
    let short = base.monomials(bounds.sorts, 1);
    let k = bounds.poly;
    let is_map = |e: &Env<S>, f: TapeTerm, dup: bool| -> Built<S> {
        let (p, q) = e.type_of(&f)?;
        if dup {
            pair(
                TapeTerm::seq(f.clone(), tape::copier(&q)),
                TapeTerm::seq(tape::copier(&p), e.tensor(&f, &f)?),
            )
        } else {
            pair(TapeTerm::seq(f, tape::discharger(&q)), tape::discharger(&p))
        }
    };
    for dup in [true, false] {
        let kind = if dup { "functional" } else { "total" };
        r.random(&format!("map.sym-plus-{kind}"), "random", |e, g| {
            let (x, y) = (rand_poly(&short, k, g), rand_poly(&short, k, g));
            is_map(e, tape::sym_plus(&x, &y), dup)
        });
        r.random(&format!("map.sym-tensor-{kind}"), "random", |e, g| {
            let (x, y) = (rand_poly(&short, k, g), rand_poly(&short, k, g));
            is_map(e, tape::sym_tensor(&x, &y), dup)
        });
        r.random(&format!("map.dl-{kind}"), "random", |e, g| {
            let [x, y, z] = core::array::from_fn(|_| rand_poly(&short, k, g));
            is_map(e, tape::dl(&x, &y, &z), dup)
        });
        r.random(&format!("map.dl-inv-{kind}"), "random", |e, g| {
            let [x, y, z] = core::array::from_fn(|_| rand_poly(&short, k, g));
            is_map(e, tape::dl_inv(&x, &y, &z), dup)
        });
    }
    r.report
}

/// Copier and discharger against their matrices for every polynomial at
/// the bounds, and the coherence of both with `⊕`.
pub fn copier_coherence<S: RandomWeight>(base: &Env<S>, bounds: &Bounds) -> Report {
    let mut r = Runner::new(base, bounds, "lemma");
    let (monos, polys) = polys_of(base, bounds);
    for x in &polys {
        let b = bx(x);
        r.fixed("cd.copier-canonical", &b, |e, _| {
            let m = e.interp.canonical_copy(x).map_err(|e| e.to_string())?;
            Ok((Side::Tape(tape::copier(x)), Side::Matrix(m)))
        });
        r.fixed("cd.discharger-ones", &b, |e, _| {
            let n = e.interp.size_of(x).map_err(|e| e.to_string())?;
            Ok((Side::Tape(tape::discharger(x)), Side::Matrix(kleisli::discharger(n))))
        });
    }
    let sums = polynomials(&monos, 1);
    for x in &sums {
        for y in &sums {
            let b = format!("X={x},Y={y}");
            r.fixed("cd.copier-sum", &b, |_, _| {
                let (xy, yx) = (x.tensor(y), y.tensor(x));
                pair(
                    tape::copier(&x.plus(y)),
                    TapeTerm::seq(
                        tape::plus(
                            tape::plus(tape::copier(x), tape::cobang(&xy)),
                            tape::plus(tape::cobang(&yx), tape::copier(y)),
                        ),
                        tape::plus(tape::dl_inv(x, x, y), tape::dl_inv(y, x, y)),
                    ),
                )
            });
            r.fixed("cd.discharger-sum", &b, |_, _| {
                pair(
                    tape::discharger(&x.plus(y)),
                    TapeTerm::seq(
                        tape::plus(tape::discharger(x), tape::discharger(y)),
                        tape::codiag(&Polynomial::one()),
                    ),
                )
            });
        }
    }
    r.report
}

/// `⟨f⟩` and `∇ⁿ` against products, and naturality of `⟨f⟩` and `⟨t⟩`.
pub fn op_lemmas<S: RandomWeight>(base: &Env<S>, bounds: &Bounds) -> Report {
    let mut r = Runner::new(base, bounds, "lemma");
    let (monos, _) = polys_of(base, bounds);
    let k = bounds.poly;
    for f in base.ops() {
        let n = f.arity();
        let bf = format!("f={f}");
        r.random("op.tensor-right", &bf, |e, g| {
            let (x, y) = (rand_poly(&monos, k, g), rand_poly(&monos, k, g));
            pair(e.tensor(&tape::op(&f, &x), &tape::id(&y))?, tape::op(&f, &x.tensor(&y)))
        });
        r.random("op.tensor-left", &bf, |e, g| {
            let (x, y) = (rand_poly(&monos, k, g), rand_poly(&monos, k, g));
            pair(
                TapeTerm::seq(e.tensor(&tape::id(&y), &tape::op(&f, &x))?, dl_n(&y, &x, n)),
                tape::op(&f, &y.tensor(&x)),
            )
        });
        r.random("op.nat", &bf, |e, g| {
            let (p, q) = (rand_poly(&monos, k, g), rand_poly(&monos, k, g));
            let h = e.tape(&p, &q, g);
            pair(
                TapeTerm::seq(h.clone(), tape::op(&f, &q)),
                TapeTerm::seq(tape::op(&f, &p), tape::repeat(&h, n)),
            )
        });
    }
    for n in 0..=3usize {
        let bn = format!("n={n}");
        r.random("codiag-n.tensor-right", &bn, |e, g| {
            let (x, y) = (rand_poly(&monos, k, g), rand_poly(&monos, k, g));
            pair(e.tensor(&tape::codiag_n(&x, n), &tape::id(&y))?, tape::codiag_n(&x.tensor(&y), n))
        });
        r.random("codiag-n.tensor-left", &bn, |e, g| {
            let (x, y) = (rand_poly(&monos, k, g), rand_poly(&monos, k, g));
            pair(
                e.tensor(&tape::id(&y), &tape::codiag_n(&x, n))?,
                TapeTerm::seq(dl_n(&y, &x, n), tape::codiag_n(&y.tensor(&x), n)),
            )
        });
    }
    r.random("term.nat", "random", |e, g| {
        let (p, q) = (rand_poly(&monos, k, g), rand_poly(&monos, k, g));
        let (binary, constant) = e.base_ops();
        let n = g.random_range(1..=3usize);
        let t = random_sigma(&binary, &constant, n, 3, g);
        let h = e.tape(&p, &q, g);
        let tq = tape::term(&t, n, &q).map_err(|e| e.to_string())?;
        let tp = tape::term(&t, n, &p).map_err(|e| e.to_string())?;
        pair(TapeTerm::seq(h.clone(), tq), TapeTerm::seq(tp, tape::repeat(&h, n)))
    });
    r.report
}

/// `t̂(h₁..hₙ) = ⟨t⟩_X ; ⊕hᵢ ; ∇ⁿ_Y`.
pub fn enriched(t: &SigmaTerm, n: usize, x: &Polynomial, y: &Polynomial, hs: &[TapeTerm]) -> Result<TapeTerm, String> {
    debug_assert_eq!(hs.len(), n);
    let head = tape::term(t, n, x).map_err(|e| e.to_string())?;
    Ok(seq([head, tape::plus_all(hs.iter().cloned()), tape::codiag_n(y, n)]))
}

/// The four equations making homsets models of the theory, compatibly
/// with `;` and `⊗`.
pub fn enrichment<S: RandomWeight>(base: &Env<S>, bounds: &Bounds) -> Report {
    let mut r = Runner::new(base, bounds, "lemma");
    let monos = base.monomials(bounds.sorts, bounds.len);
    let short = base.monomials(bounds.sorts, 1);
    let k = bounds.poly;
    type Setup = (SigmaTerm, usize, Polynomial, Polynomial, Vec<TapeTerm>);
    fn setup<S: RandomWeight>(e: &mut Env<S>, g: &mut ChaCha8Rng, monos: &[Monomial], k: usize) -> Setup {
        let (binary, constant) = e.base_ops();
        let n = g.random_range(1..=3usize);
        let t = random_sigma(&binary, &constant, n, 2, g);
        let (x, y) = (rand_poly(monos, k, g), rand_poly(monos, k, g));
        let hs = (0..n).map(|_| e.tape(&x, &y, g)).collect();
        (t, n, x, y, hs)
    }
    r.random("enrich.post", "random", |e, g| {
        let (t, n, x, y, hs) = setup(e, g, &monos, k);
        let z = rand_poly(&monos, k, g);
        let h = e.tape(&y, &z, g);
        let l = TapeTerm::seq(enriched(&t, n, &x, &y, &hs)?, h.clone());
        let hs2: Vec<TapeTerm> = hs.into_iter().map(|hi| TapeTerm::seq(hi, h.clone())).collect();
        pair(l, enriched(&t, n, &x, &z, &hs2)?)
    });
    r.random("enrich.pre", "random", |e, g| {
        let (t, n, x, y, hs) = setup(e, g, &monos, k);
        let w = rand_poly(&monos, k, g);
        let h = e.tape(&w, &x, g);
        let l = TapeTerm::seq(h.clone(), enriched(&t, n, &x, &y, &hs)?);
        let hs2: Vec<TapeTerm> = hs.into_iter().map(|hi| TapeTerm::seq(h.clone(), hi)).collect();
        pair(l, enriched(&t, n, &w, &y, &hs2)?)
    });
    r.random("enrich.tensor-right", "random", |e, g| {
        let (t, n, x, y, hs) = setup(e, g, &short, k);
        let (z, u) = (rand_poly(&short, k, g), rand_poly(&short, k, g));
        let h = e.tape(&z, &u, g);
        let l = e.tensor(&enriched(&t, n, &x, &y, &hs)?, &h)?;
        let hs2 = hs.iter().map(|hi| e.tensor(hi, &h)).collect::<Result<Vec<_>, _>>()?;
        pair(l, enriched(&t, n, &x.tensor(&z), &y.tensor(&u), &hs2)?)
    });
    r.random("enrich.tensor-left", "random", |e, g| {
        let (t, n, x, y, hs) = setup(e, g, &short, k);
        let (z, u) = (rand_poly(&short, k, g), rand_poly(&short, k, g));
        let h = e.tape(&z, &u, g);
        let l = e.tensor(&h, &enriched(&t, n, &x, &y, &hs)?)?;
        let hs2 = hs.iter().map(|hi| e.tensor(&h, hi)).collect::<Result<Vec<_>, _>>()?;
        pair(l, enriched(&t, n, &z.tensor(&x), &u.tensor(&y), &hs2)?)
    });
    r.report
}

/// The whiskering algebra, one row per law and side.
pub fn whiskering_laws<S: RandomWeight>(base: &Env<S>, bounds: &Bounds) -> Report {
    let mut r = Runner::new(base, bounds, "lemma");
    let monos = base.monomials(bounds.sorts, bounds.len);
    // whiskering objects stay short so that products of three remain small
    let short = base.monomials(bounds.sorts, 1);
    let k = bounds.poly;
    let rp = |g: &mut ChaCha8Rng| rand_poly(&monos, k, g);
    let rs = |g: &mut ChaCha8Rng| rand_poly(&short, k, g);
    let l = tape::left;

    r.random("W1.left", "random", |_, g| {
        let (p, s) = (rp(g), rs(g));
        pair(l(&s, &tape::id(&p)), tape::id(&s.tensor(&p)))
    });
    r.random("W1.right", "random", |e, g| {
        let (p, s) = (rp(g), rs(g));
        pair(e.right(&tape::id(&p), &s)?, tape::id(&p.tensor(&s)))
    });
    r.random("W2.left", "random", |e, g| {
        let [p, q, rr] = core::array::from_fn(|_| rp(g));
        let s = rs(g);
        let (t1, t2) = (e.tape(&p, &q, g), e.tape(&q, &rr, g));
        pair(l(&s, &TapeTerm::seq(t1.clone(), t2.clone())), TapeTerm::seq(l(&s, &t1), l(&s, &t2)))
    });
    r.random("W2.right", "random", |e, g| {
        let [p, q, rr] = core::array::from_fn(|_| rp(g));
        let s = rs(g);
        let (t1, t2) = (e.tape(&p, &q, g), e.tape(&q, &rr, g));
        pair(
            e.right(&TapeTerm::seq(t1.clone(), t2.clone()), &s)?,
            TapeTerm::seq(e.right(&t1, &s)?, e.right(&t2, &s)?),
        )
    });
    r.random("W3.left", "random", |e, g| {
        let (p, q) = (rp(g), rp(g));
        let t = e.tape(&p, &q, g);
        pair(l(&Polynomial::one(), &t), t)
    });
    r.random("W3.right", "random", |e, g| {
        let (p, q) = (rp(g), rp(g));
        let t = e.tape(&p, &q, g);
        pair(e.right(&t, &Polynomial::one())?, t)
    });
    r.random("W4.left", "random", |e, g| {
        let (p, q) = (rp(g), rp(g));
        let t = e.tape(&p, &q, g);
        pair(l(&Polynomial::zero(), &t), TapeTerm::IdZero)
    });
    r.random("W4.right", "random", |e, g| {
        let (p, q) = (rp(g), rp(g));
        let t = e.tape(&p, &q, g);
        pair(e.right(&t, &Polynomial::zero())?, TapeTerm::IdZero)
    });
    r.random("W5.left", "random", |e, g| {
        let [p1, q1, p2, q2] = core::array::from_fn(|_| rp(g));
        let s = rs(g);
        let (t1, t2) = (e.tape(&p1, &q1, g), e.tape(&p2, &q2, g));
        pair(
            l(&s, &TapeTerm::sum(t1.clone(), t2.clone())),
            seq([
                tape::dl(&s, &p1, &p2),
                tape::plus(l(&s, &t1), l(&s, &t2)),
                tape::dl_inv(&s, &q1, &q2),
            ]),
        )
    });
    r.random("W5.right", "random", |e, g| {
        let [p1, q1, p2, q2] = core::array::from_fn(|_| rp(g));
        let s = rs(g);
        let (t1, t2) = (e.tape(&p1, &q1, g), e.tape(&p2, &q2, g));
        pair(
            e.right(&TapeTerm::sum(t1.clone(), t2.clone()), &s)?,
            tape::plus(e.right(&t1, &s)?, e.right(&t2, &s)?),
        )
    });
    r.random("W6.left", "random", |e, g| {
        let (p, q) = (rp(g), rp(g));
        let (s, t) = (rs(g), rs(g));
        let f = e.tape(&p, &q, g);
        pair(l(&s.plus(&t), &f), tape::plus(l(&s, &f), l(&t, &f)))
    });
    r.random("W6.right", "random", |e, g| {
        let (p, q) = (rp(g), rp(g));
        let (s, t) = (rs(g), rs(g));
        let f = e.tape(&p, &q, g);
        pair(
            e.right(&f, &s.plus(&t))?,
            seq([
                tape::dl(&p, &s, &t),
                tape::plus(e.right(&f, &s)?, e.right(&f, &t)?),
                tape::dl_inv(&q, &s, &t),
            ]),
        )
    });
    r.random("W7", "random", |e, g| {
        let [p1, q1, p2, q2] = core::array::from_fn(|_| rs(g));
        let (t1, t2) = (e.tape(&p1, &q1, g), e.tape(&p2, &q2, g));
        pair(
            TapeTerm::seq(l(&p1, &t2), e.right(&t1, &q2)?),
            TapeTerm::seq(e.right(&t1, &p2)?, l(&q1, &t2)),
        )
    });
    r.random("W8", "random", |e, g| {
        let (u, s) = (pick(&monos, g), rs(g));
        pair(
            e.right(&TapeTerm::Codiag(u.clone()), &s)?,
            tape::codiag(&Polynomial::left_mono(&u, &s)),
        )
    });
    r.random("W9", "random", |e, g| {
        let (u, s) = (pick(&monos, g), rs(g));
        pair(
            e.right(&TapeTerm::Cobang(u.clone()), &s)?,
            tape::cobang(&Polynomial::left_mono(&u, &s)),
        )
    });
    r.random("W10", "random", |e, g| {
        let (p, q, s) = (rp(g), rp(g), rs(g));
        pair(
            e.right(&tape::sym_plus(&p, &q), &s)?,
            tape::sym_plus(&p.tensor(&s), &q.tensor(&s)),
        )
    });
    r.random("W11", "random", |e, g| {
        let (p, q, s) = (rs(g), rs(g), rs(g));
        pair(
            tape::sym_tensor(&p.tensor(&q), &s),
            TapeTerm::seq(l(&p, &tape::sym_tensor(&q, &s)), e.right(&tape::sym_tensor(&p, &s), &q)?),
        )
    });
    r.random("W12", "random", |e, g| {
        let (p, q, s) = (rp(g), rp(g), rs(g));
        let t = e.tape(&p, &q, g);
        pair(
            TapeTerm::seq(e.right(&t, &s)?, tape::sym_tensor(&q, &s)),
            TapeTerm::seq(tape::sym_tensor(&p, &s), l(&s, &t)),
        )
    });
    r.random("W13", "random", |e, g| {
        let (p, q, s, t) = (rp(g), rp(g), rs(g), rs(g));
        let f = e.tape(&p, &q, g);
        pair(l(&s, &e.right(&f, &t)?), e.right(&l(&s, &f), &t)?)
    });
    r.random("W14", "random", |e, g| {
        let (p, q, s, t) = (rp(g), rp(g), rs(g), rs(g));
        let f = e.tape(&p, &q, g);
        pair(l(&s.tensor(&t), &f), l(&s, &l(&t, &f)))
    });
    r.random("W15", "random", |e, g| {
        let (p, q, s, t) = (rp(g), rp(g), rs(g), rs(g));
        let f = e.tape(&p, &q, g);
        pair(e.right(&f, &t.tensor(&s))?, e.right(&e.right(&f, &t)?, &s)?)
    });
    r.random("W16", "random", |e, g| {
        let [p, q, rr, s] = core::array::from_fn(|_| rs(g));
        pair(
            e.right(&tape::dl(&p, &q, &rr), &s)?,
            tape::dl(&p, &q.tensor(&s), &rr.tensor(&s)),
        )
    });
    r.random("W17", "random", |_, g| {
        let [p, q, rr, s] = core::array::from_fn(|_| rs(g));
        pair(
            l(&s, &tape::dl(&p, &q, &rr)),
            TapeTerm::seq(
                tape::dl(&s.tensor(&p), &q, &rr),
                tape::dl_inv(&s, &p.tensor(&q), &p.tensor(&rr)),
            ),
        )
    });
    r.random("W18", "random", |e, g| {
        let (u, s) = (pick(&monos, g), rs(g));
        let f = pick(&e.ops(), g);
        pair(
            e.right(&TapeTerm::Op(f.clone(), u.clone()), &s)?,
            tape::op(&f, &Polynomial::left_mono(&u, &s)),
        )
    });
    r.report
}

/// Derived constants and `⊗` of tapes against the matrix structure,
/// transported along the carrier bijections `β_{P,R}`.
pub fn transport<S: RandomWeight>(base: &Env<S>, bounds: &Bounds) -> Report {
    let mut r = Runner::new(base, bounds, "lemma");
    let (monos, polys) = polys_of(base, bounds);
    let short = base.monomials(bounds.sorts, 1);
    let k = bounds.poly;
    let err = |e: EvalError| e.to_string();
    for p in &polys {
        let b = bx(p);
        r.fixed("transport.id", &b, |e, _| {
            let n = e.interp.size_of(p).map_err(err)?;
            Ok((tape::id(p).into(), Side::Matrix(KMorphism::identity(n))))
        });
        r.fixed("transport.codiag", &b, |e, _| {
            let n = e.interp.size_of(p).map_err(err)?;
            Ok((tape::codiag(p).into(), Side::Matrix(kleisli::codiag(n))))
        });
        r.fixed("transport.cobang", &b, |e, _| {
            let n = e.interp.size_of(p).map_err(err)?;
            Ok((tape::cobang(p).into(), Side::Matrix(kleisli::cobang(n))))
        });
        for f in base.ops() {
            r.fixed("transport.op", &format!("X={p},f={f}"), |e, _| {
                let n = e.interp.size_of(p).map_err(err)?;
                let m = e.interp.model.op(&f, n).map_err(|e| e.to_string())?;
                Ok((tape::op(&f, p).into(), Side::Matrix(m)))
            });
        }
    }
    r.random("transport.sym-plus", "random", |e, g| {
        let (p, q) = (rand_poly(&monos, k, g), rand_poly(&monos, k, g));
        let (m, n) = (e.interp.size_of(&p).map_err(err)?, e.interp.size_of(&q).map_err(err)?);
        Ok((tape::sym_plus(&p, &q).into(), Side::Matrix(kleisli::sym_p(m, n))))
    });
    r.random("transport.sym-tensor", "random", |e, g| {
        let (p, q) = (rand_poly(&monos, k, g), rand_poly(&monos, k, g));
        let i = &e.interp;
        let (m, n) = (i.size_of(&p).map_err(err)?, i.size_of(&q).map_err(err)?);
        let lhs = i.tensor_bijection(&p, &q).map_err(err)?.transpose();
        let mat = lhs
            .then(&kleisli::sym_t(m, n))
            .and_then(|x| x.then(&i.tensor_bijection(&q, &p).expect("carriers")))
            .map_err(|e| e.to_string())?;
        Ok((tape::sym_tensor(&p, &q).into(), Side::Matrix(mat)))
    });
    r.random("transport.dl", "random", |e, g| {
        let [p, q, s] = core::array::from_fn(|_| rand_poly(&monos, k, g));
        let i = &e.interp;
        let sz = |x: &Polynomial| i.size_of(x).map_err(err);
        let into = i.tensor_bijection(&p, &q.plus(&s)).map_err(err)?.transpose();
        let out = i
            .tensor_bijection(&p, &q)
            .map_err(err)?
            .oplus(&i.tensor_bijection(&p, &s).map_err(err)?);
        let mat = into
            .then(&kleisli::dl(sz(&p)?, sz(&q)?, sz(&s)?))
            .and_then(|x| x.then(&out))
            .map_err(|e| e.to_string())?;
        Ok((tape::dl(&p, &q, &s).into(), Side::Matrix(mat)))
    });
    r.random("transport.tensor", "random", |e, g| {
        let [p, q, s, t] = core::array::from_fn(|_| rand_poly(&short, k, g));
        let (t1, t2) = (e.tape(&p, &q, g), e.tape(&s, &t, g));
        let i = &e.interp;
        let (m1, m2) = (i.eval_tape(&t1).map_err(err)?, i.eval_tape(&t2).map_err(err)?);
        let mat = i
            .tensor_bijection(&p, &s)
            .map_err(err)?
            .transpose()
            .then(&m1.tensor(&m2))
            .and_then(|x| x.then(&i.tensor_bijection(&q, &t).expect("carriers")))
            .map_err(|e| e.to_string())?;
        Ok((e.tensor(&t1, &t2)?.into(), Side::Matrix(mat)))
    });
    r.report
}
