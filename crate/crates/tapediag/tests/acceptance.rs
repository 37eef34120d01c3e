//! Acceptance checks, one line per criterion. Runs without the test harness
//! so the lines are always printed; exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tapediag::ast::normalize_whitespace;
use tapediag::cli;
use tapediag::elab::{load, Program};
use tapediag::parser::parse_module;
use tapediag::render::render_svg;
use tapediag_core::circuit::MonSignature;
use tapediag_core::interp::Interpretation;
use tapediag_core::kleisli::{self, FinCarrier, KMorphism, TheoryModel};
use tapediag_core::objects::{self, Monomial, ObjTerm, Polynomial, Sort};
use tapediag_core::semiring::{Natural, Rational, Semiring};
use tapediag_core::suites::{self, Bounds, Env, RandomWeight, Report};
use tapediag_core::tape;
use tapediag_core::theory::{self, OpSymbol, SigmaTerm};

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn r(n: u64, d: u64) -> Rational {
    Rational::new(n, d)
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Check) -> Check {
    let start = Instant::now();
    let out = f()?;
    let took = start.elapsed();
    if let Some(l) = limit {
        ensure!(took < l, "took {:.2} s, limit {} s", took.as_secs_f64(), l.as_secs());
    }
    Ok(format!("{out} ({:.2} s)", took.as_secs_f64()))
}

// 1. object normalizer

/// Random term of depth at most `depth` with at most `budget` leaves, so
/// that multiplying out stays small.
fn random_obj(rng: &mut ChaCha8Rng, depth: u32, budget: usize) -> ObjTerm {
    if depth == 0 || budget < 2 || rng.random_bool(0.2) {
        return match rng.random_range(0..5) {
            0 => ObjTerm::One,
            1 => ObjTerm::Zero,
            k => ObjTerm::sort(["A", "B", "C"][k - 2]),
        };
    }
    let left = rng.random_range(1..budget);
    let (a, b) = (random_obj(rng, depth - 1, left), random_obj(rng, depth - 1, budget - left));
    if rng.random_bool(0.5) {
        ObjTerm::tensor(a, b)
    } else {
        ObjTerm::sum(a, b)
    }
}

/// Lists of words, multiplied out directly.
fn words(t: &ObjTerm) -> Vec<Vec<String>> {
    match t {
        ObjTerm::One => vec![vec![]],
        ObjTerm::Zero => vec![],
        ObjTerm::Sort(s) => vec![vec![s.name().to_string()]],
        ObjTerm::Sum(a, b) => {
            let mut v = words(a);
            v.extend(words(b));
            v
        }
        ObjTerm::Tensor(a, b) => {
            let (x, y) = (words(a), words(b));
            x.iter()
                .flat_map(|u| y.iter().map(move |v| u.iter().chain(v).cloned().collect()))
                .collect()
        }
    }
}

fn poly_words(p: &Polynomial) -> Vec<Vec<String>> {
    p.monomials()
        .iter()
        .map(|m| m.sorts().iter().map(|s| s.name().to_string()).collect())
        .collect()
}

fn criterion_1() -> Check {
    timed(Some(Duration::from_secs(1)), || {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let sorts: BTreeSet<Sort> = ["A", "B", "C"].iter().map(|s| Sort::new(s)).collect();
        let terms: Vec<ObjTerm> = (0..1000).map(|_| random_obj(&mut rng, 6, 24)).collect();
        let mut max_depth = 0;
        for (i, t) in terms.iter().enumerate() {
            max_depth = max_depth.max(t.depth());
            let p = objects::normalize(t, &sorts).map_err(|e| e.to_string())?;
            ensure!(poly_words(&p) == words(t), "term {i} `{t}` normalizes to `{p}`");
            let again = objects::normalize(&objects::embed(&p), &sorts).map_err(|e| e.to_string())?;
            ensure!(again == p, "term {i}: not idempotent, `{p}` then `{again}`");
            let q = objects::normalize_unchecked(&terms[(i * 7 + 3) % terms.len()]);
            let direct = objects::normalize_unchecked(&ObjTerm::tensor(objects::embed(&p), objects::embed(&q)));
            ensure!(p.tensor(&q) == direct, "term {i}: polyTensor `{p}` (x) `{q}` disagrees");
        }
        ensure!(max_depth <= 6, "depth {max_depth}");
        Ok(format!("1000 terms up to depth {max_depth}, idempotent, polyTensor agrees"))
    })
}

// 2. structural maps at matrix level

fn dense_perm(m: &KMorphism<Rational>, f: impl Fn(usize) -> usize) -> bool {
    let (rows, cols) = m.shape();
    rows == cols
        && (0..cols).all(|x| (0..rows).all(|y| m.get(y, x) == if y == f(x) { Rational::one() } else { Rational::zero() }))
}

fn random_rational(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> KMorphism<Rational> {
    let rs = (0..rows)
        .map(|_| (0..cols).map(|_| r(rng.random_range(0..4), rng.random_range(1..5))).collect())
        .collect();
    KMorphism::from_rows(rs, cols).unwrap()
}

fn criterion_2() -> Check {
    timed(Some(Duration::from_secs(5)), || {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut checked = 0;
        for x in 0..4 {
            for y in 0..4 {
                ensure!(
                    dense_perm(&kleisli::sym_t(x, y), |k| (k % y) * x + k / y),
                    "symT({x},{y})"
                );
                ensure!(
                    dense_perm(&kleisli::sym_p(x, y), |k| if k < x { y + k } else { k - x }),
                    "symP({x},{y})"
                );
                for z in 0..4 {
                    let n = y + z;
                    let dl = kleisli::dl::<Rational>(x, y, z);
                    let want = |k: usize| {
                        let (a, j) = (k / n, k % n);
                        if j < y {
                            a * y + j
                        } else {
                            x * y + a * z + (j - y)
                        }
                    };
                    ensure!(dense_perm(&dl, want), "dl({x},{y},{z})");
                    ensure!(dense_perm(&kleisli::dr(x, y, z), |k| k), "dr({x},{y},{z})");
                    ensure!(dl.as_permutation().is_some(), "dl({x},{y},{z}) not a permutation");
                    let back = dl.then(&kleisli::dl_inv(x, y, z)).map_err(|e| e.to_string())?;
                    ensure!(back == KMorphism::identity(x * n), "dl;dl^-1 at ({x},{y},{z})");
                    let dr = kleisli::dr::<Rational>(x, y, z);
                    let back = dr.then(&kleisli::dr_inv(x, y, z)).map_err(|e| e.to_string())?;
                    ensure!(back == KMorphism::identity((x + y) * z), "dr;dr^-1 at ({x},{y},{z})");
                    // (f ⊗ (g ⊕ h)) ; dl = dl ; ((f ⊗ g) ⊕ (f ⊗ h))
                    let (x2, y2, z2) = (rng.random_range(0..4), rng.random_range(0..4), rng.random_range(0..4));
                    let f = random_rational(&mut rng, x2, x);
                    let g = random_rational(&mut rng, y2, y);
                    let h = random_rational(&mut rng, z2, z);
                    let lhs = f.tensor(&g.oplus(&h)).then(&kleisli::dl(x2, y2, z2)).map_err(|e| e.to_string())?;
                    let rhs = dl.then(&f.tensor(&g).oplus(&f.tensor(&h))).map_err(|e| e.to_string())?;
                    ensure!(lhs == rhs, "dl naturality at ({x},{y},{z}) -> ({x2},{y2},{z2})");
                    checked += 1;
                }
            }
        }
        Ok(format!("{checked} size triples: permutations, dl naturality, dl;dl^-1 = id"))
    })
}

// 3, 4, 6. suites

const AXIOM_ROWS: &[&str] = &[
    "sum.assoc", "sum.id-left", "sum.id-right", "sum.interchange", "sum.unit", "sum.monoidal-assoc",
    "sum.sym-inv", "sum.sym-nat", "tensor.assoc", "tensor.id-left", "tensor.id-right", "tensor.interchange",
    "tensor.unit", "tensor.monoidal-assoc", "tensor.sym-inv", "tensor.sym-nat", "fc.codiag-assoc",
    "fc.codiag-unit", "fc.codiag-comm", "fc.codiag-nat", "fc.cobang-nat", "op.codiag", "op.cobang", "op.nat",
    "circ.id", "circ.seq", "theory.eq", "cd.copy-assoc", "cd.copy-unit", "cd.copy-counit", "cd.copy-comm",
    "cd.copy-coherence", "cd.discard-coherence",
];

fn w_rows() -> Vec<String> {
    let mut v = Vec::new();
    for i in 1..=18 {
        if i <= 6 {
            v.push(format!("W{i}.left"));
            v.push(format!("W{i}.right"));
        } else {
            v.push(format!("W{i}"));
        }
    }
    v
}

fn covers(report: &Report, suite: &str, rows: &[String], min: usize) -> Check {
    if let Some(f) = report.failures().next() {
        return Err(format!("{f}"));
    }
    for row in rows {
        let id = format!("{suite}/{row}");
        let n = report.cases_of(&id).count();
        ensure!(n >= min, "{id}: {n} cases, need {min}");
    }
    Ok(format!("{} cases", report.cases.len()))
}

fn pca() -> Env<Rational> {
    Env::standard_pca(&[r(1, 2), r(1, 3), r(2, 5)])
}

trait Suite {
    fn run<S: RandomWeight>(&self, env: &Env<S>, b: &Bounds) -> Report;
}

fn on_both(s: &impl Suite, check: impl Fn(&Report) -> Check) -> Check {
    let b = Bounds::default();
    let a = check(&s.run(&pca(), &b)).map_err(|e| format!("PCA: {e}"))?;
    let c = check(&s.run(&Env::standard_cm(), &b)).map_err(|e| format!("CM: {e}"))?;
    Ok(format!("PCA {a}, CM {c}"))
}

struct Axioms;
impl Suite for Axioms {
    fn run<S: RandomWeight>(&self, env: &Env<S>, b: &Bounds) -> Report {
        suites::axiom_suite(env, b)
    }
}

struct Whiskering;
impl Suite for Whiskering {
    fn run<S: RandomWeight>(&self, env: &Env<S>, b: &Bounds) -> Report {
        suites::whiskering_laws(env, b)
    }
}

struct Propositions;
impl Suite for Propositions {
    fn run<S: RandomWeight>(&self, env: &Env<S>, b: &Bounds) -> Report {
        let mut r = suites::distributivity_lemmas(env, b);
        r.extend(suites::map_lemmas(env, b));
        r.extend(suites::enrichment(env, b));
        r.extend(suites::op_lemmas(env, b));
        r
    }
}

fn criterion_3() -> Check {
    timed(Some(Duration::from_secs(60)), || {
        let rows: Vec<String> = AXIOM_ROWS.iter().map(|s| s.to_string()).collect();
        on_both(&Axioms, |r| {
            ensure!(r.rows().len() == rows.len(), "{} rows, expected {}", r.rows().len(), rows.len());
            covers(r, "axiom", &rows, 5)
        })
    })
}

fn criterion_4() -> Check {
    timed(None, || on_both(&Whiskering, |r| covers(r, "lemma", &w_rows(), 3)))
}

fn criterion_6() -> Check {
    let mut rows: Vec<String> = ["dist.codiag", "dist.codiag-left", "dist.cobang", "dist.cobang-left"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    for k in ["codiag", "cobang"] {
        for p in ["copier", "discharger", "functional", "total"] {
            rows.push(format!("map.{k}-{p}"));
        }
    }
    for e in ["post", "pre", "tensor-right", "tensor-left"] {
        rows.push(format!("enrich.{e}"));
    }
    rows.push("op.nat".into());
    timed(None, || on_both(&Propositions, |r| covers(r, "lemma", &rows, 1)))
}

// 5. copier and discharger

fn monomials_upto2() -> Vec<Monomial> {
    let s = [Sort::new("A"), Sort::new("B")];
    let mut out = vec![Monomial::one()];
    for a in &s {
        out.push(Monomial::sort(a.clone()));
    }
    for a in &s {
        for b in &s {
            out.push(Monomial::from_sorts([a.clone(), b.clone()]));
        }
    }
    out
}

fn grid_env(a: usize, b: usize) -> Env<Rational> {
    let mut sig = MonSignature::new();
    let model = TheoryModel::pca(theory::pca(&[r(1, 2)]).unwrap()).unwrap();
    let mut i = Interpretation::new(model);
    for (name, n) in [("A", a), ("B", b)] {
        sig.add_sort(Sort::new(name)).unwrap();
        i.set_sort(Sort::new(name), FinCarrier::new(n));
    }
    Env::new(sig, i)
}

fn criterion_5() -> Check {
    timed(None, || {
        let monos = monomials_upto2();
        let mut polys = vec![Polynomial::zero()];
        for m in &monos {
            polys.push(m.to_poly());
            for n in &monos {
                polys.push(Polynomial::from_monomials([m.clone(), n.clone()]));
            }
        }
        ensure!(polys.len() == 57, "{} polynomials", polys.len());
        let mut checked = 0;
        for a in 0..4 {
            for b in 0..4 {
                let env = grid_env(a, b);
                let size = |m: &Monomial| m.sorts().iter().map(|s| if s.name() == "A" { a } else { b }).product::<usize>();
                for p in &polys {
                    let sizes: Vec<usize> = p.monomials().iter().map(size).collect();
                    let k = sizes.len();
                    let n: usize = sizes.iter().sum();
                    // blocks of P⊗P are (i, j) in row-major order, pairs left-major
                    let mut start = vec![0; k * k];
                    let mut acc = 0;
                    for i in 0..k {
                        for j in 0..k {
                            start[i * k + j] = acc;
                            acc += sizes[i] * sizes[j];
                        }
                    }
                    let mut cols = Vec::new();
                    for i in 0..k {
                        for x in 0..sizes[i] {
                            cols.push(vec![(start[i * k + i] + x * sizes[i] + x, Rational::one())]);
                        }
                    }
                    let want_copy = KMorphism::from_columns(acc, cols);
                    let got = env.interp.eval_tape(&tape::copier(p)).map_err(|e| e.to_string())?;
                    ensure!(got == want_copy, "copier_{p} at |A|={a}, |B|={b}: {got} vs {want_copy}");
                    let got = env.interp.eval_tape(&tape::discharger(p)).map_err(|e| e.to_string())?;
                    let ones = KMorphism::from_rows(vec![vec![Rational::one(); n]], n).unwrap();
                    ensure!(got == ones, "discharger_{p} at |A|={a}, |B|={b}: {got}");
                    checked += 1;
                }
                let report = suites::copier_coherence(&env, &Bounds::default());
                let rows: Vec<String> = ["cd.copier-canonical", "cd.discharger-ones", "cd.copier-sum", "cd.discharger-sum"]
                    .iter()
                    .map(|s| s.to_string())
                    .collect();
                covers(&report, "lemma", &rows, 1).map_err(|e| format!("|A|={a}, |B|={b}: {e}"))?;
            }
        }
        Ok(format!("{checked} (P, carriers) pairs against the direct copy and all-ones maps, sum coherence holds"))
    })
}

// 7. model soundness

/// Fractions by hand.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Frac(u64, u64);

impl Frac {
    fn norm(n: u64, d: u64) -> Frac {
        let (mut a, mut b) = (n, d);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        Frac(n / a, d / a)
    }
    fn mul(self, o: Frac) -> Frac {
        Frac::norm(self.0 * o.0, self.1 * o.1)
    }
    fn div(self, o: Frac) -> Frac {
        Frac::norm(self.0 * o.1, self.1 * o.0)
    }
    fn one_minus(self) -> Frac {
        Frac::norm(self.1 - self.0, self.1)
    }
    fn q(self) -> Rational {
        r(self.0, self.1)
    }
}

fn criterion_7() -> Check {
    timed(None, || {
        let ps = [Frac(1, 2), Frac(1, 3), Frac(2, 5)];
        let th = theory::pca(&ps.map(Frac::q)).map_err(|e| e.to_string())?;
        let model = TheoryModel::pca(th.clone()).map_err(|e| e.to_string())?;
        let bad = model.soundness().map_err(|e| e.to_string())?;
        ensure!(bad.is_empty(), "PCA: {:?}", bad[0]);
        ensure!(th.equations().len() == 15, "PCA has {} equations", th.equations().len());
        ensure!(Frac(1, 2).mul(Frac(2, 3)).div(Frac(1, 6).one_minus()) == Frac(2, 5), "hand arithmetic");
        let mut assoc = 0;
        for p in ps {
            for q in ps {
                let pq = p.mul(q);
                let inner = p.mul(q.one_minus()).div(pq.one_minus());
                let name = format!("assoc[{},{}]", p.q(), q.q());
                let e = th.equations().iter().find(|e| e.name == name).ok_or(format!("missing {name}"))?;
                let want_rhs = SigmaTerm::bin(
                    OpSymbol::convex(pq.q()),
                    SigmaTerm::var(1),
                    SigmaTerm::bin(OpSymbol::convex(inner.q()), SigmaTerm::var(2), SigmaTerm::var(3)),
                );
                ensure!(e.rhs == want_rhs, "{name}: rhs {} expected {want_rhs}", e.rhs);
                let want = vec![pq.q(), p.mul(q.one_minus()).q(), p.one_minus().q()];
                for side in [&e.lhs, &e.rhs] {
                    let v = model.eval_vector(side, 3).map_err(|e| e.to_string())?;
                    ensure!(v == want, "{name}: {side} gives {v:?}, expected {want:?}");
                }
                assoc += 1;
            }
            let comm = format!("comm[{}]", p.q());
            let e = th.equations().iter().find(|e| e.name == comm).ok_or(format!("missing {comm}"))?;
            let want = vec![p.q(), p.one_minus().q()];
            ensure!(model.eval_vector(&e.lhs, 2).map_err(|e| e.to_string())? == want, "{comm}");
            ensure!(model.eval_vector(&e.rhs, 2).map_err(|e| e.to_string())? == want, "{comm}");
        }
        let cm = TheoryModel::cm(theory::cm()).map_err(|e| e.to_string())?;
        let bad = cm.soundness().map_err(|e| e.to_string())?;
        ensure!(bad.is_empty(), "CM: {:?}", bad[0]);
        let n = cm.theory.equations().len();
        ensure!(n == 3, "CM has {n} equations");
        for e in cm.theory.equations() {
            let l = cm.eval_vector(&e.lhs, e.context).map_err(|e| e.to_string())?;
            let ones = l.iter().all(|w| *w == Natural::one() || w.is_zero());
            ensure!(ones, "{e}: {l:?}");
        }
        Ok(format!("15 PCA equations ({assoc} reparameterized associativity instances) and {n} CM equations sound"))
    })
}

// 8. probabilistic Boolean circuits

const GATES: &str = "sort A;
gen AND : A A -> A;
gen OR : A A -> A;
gen NOT : A -> A;
gen zero : 1 -> A;
gen one : 1 -> A;
interp Bool {
  A = {0, 1};
  AND = [[1, 1, 1, 0], [0, 0, 0, 1]];
  OR = [[1, 0, 0, 0], [0, 1, 1, 1]];
  NOT = [[0, 1], [1, 0]];
  zero = [[1], [0]];
  one = [[0], [1]];
}
def fail = op<star>@1 ; cobang@A;
def mux = [copy@A (x) id@A A ; id@A (x) sym@A,A (x) id@A ; AND (x) (NOT (x) id@A ; AND) ; OR];
";

fn example(p: &str, c: &str, d: &str) -> Result<Program, String> {
    let src = format!(
        "{GATES}def flip = op<+_{p}>@1 ; ([one] (+) [zero]) ; codiag@A;
def and_or = op<+_{p}>@A A ; ([AND] (+) [OR]) ; codiag@A;
def c = {c};
def d = {d};
def via_mux = flip (x) c (x) d ; mux;
def via_tapes = op<+_{p}>@1 ; (c (+) d) ; codiag@A;
"
    );
    load(&src).map_err(|e| e.to_string())
}

fn eval(p: &Program, name: &str) -> Result<Vec<Vec<Rational>>, String> {
    let t = &p.def(name).ok_or(format!("no {name}"))?.term;
    Ok(p.interps["Bool"].eval(t).map_err(|e| e.to_string())?.to_dense())
}

fn criterion_8() -> Check {
    timed(Some(Duration::from_secs(1)), || {
        let and = [[1u64, 1, 1, 0], [0, 0, 0, 1]];
        let or = [[1u64, 0, 0, 0], [0, 1, 1, 1]];
        let gate = |c: &str| if c == "[one]" { [0u64, 1] } else { [1u64, 0] };
        for (num, den) in [(1, 2), (1, 3), (2, 5)] {
            let (p, q) = (r(num, den), r(den - num, den));
            let ps = format!("{num}/{den}");
            let prog = example(&ps, "[one]", "fail")?;
            ensure!(eval(&prog, "flip")? == vec![vec![q.clone()], vec![p.clone()]], "Flip_{ps}");
            let got = eval(&prog, "and_or")?;
            for y in 0..2 {
                for x in 0..4 {
                    let want = p.mul(&r(and[y][x], 1)).add(&q.mul(&r(or[y][x], 1)));
                    ensure!(got[y][x] == want, "and_or_{ps} at ({y},{x}): {} vs {want}", got[y][x]);
                }
            }
            for c in ["[one]", "[zero]"] {
                let prog = example(&ps, c, "fail")?;
                let zero = vec![vec![Rational::zero()]; 2];
                ensure!(eval(&prog, "via_mux")? == zero, "multiplexer with failing d is not zero (c = {c})");
                let want: Vec<Vec<Rational>> = gate(c).iter().map(|w| vec![p.mul(&r(*w, 1))]).collect();
                ensure!(eval(&prog, "via_tapes")? == want, "tape choice with failing d (c = {c})");
                for d in ["[one]", "[zero]"] {
                    let prog = example(&ps, c, d)?;
                    let (m, t) = (eval(&prog, "via_mux")?, eval(&prog, "via_tapes")?);
                    ensure!(m == t, "p = {ps}, c = {c}, d = {d}: {m:?} vs {t:?}");
                    let want: Vec<Vec<Rational>> = (0..2)
                        .map(|y| vec![p.mul(&r(gate(c)[y], 1)).add(&q.mul(&r(gate(d)[y], 1)))])
                        .collect();
                    ensure!(m == want, "p = {ps}, c = {c}, d = {d}: {m:?}");
                }
            }
        }
        Ok("Flip, AND/OR choice, failing and deterministic multiplexer at p = 1/2, 1/3, 2/5".into())
    })
}

// 9. frontend

fn corpus() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "tape"))
        .collect();
    files.sort();
    files
}

fn run(args: &[&str]) -> (i32, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = cli::run(std::iter::once("tapediag").chain(args.iter().copied()), &mut out, &mut err);
    (code, String::from_utf8_lossy(&out).into_owned())
}

fn criterion_9() -> Check {
    timed(None, || {
        let files = corpus();
        ensure!(files.len() >= 10, "{} corpus files", files.len());
        let mut svgs = 0;
        for f in &files {
            let src = fs::read_to_string(f).map_err(|e| e.to_string())?;
            let m = parse_module(&src).map_err(|e| format!("{}: {e}", f.display()))?;
            ensure!(
                normalize_whitespace(&m.to_string()) == normalize_whitespace(&src),
                "{} does not round-trip",
                f.display()
            );
            let p = load(&src).map_err(|e| format!("{}: {e}", f.display()))?;
            for d in &p.defs {
                let a = render_svg(&d.term, &p.ctx()).map_err(|e| e.to_string())?;
                let b = render_svg(&d.term, &p.ctx()).map_err(|e| e.to_string())?;
                ensure!(a == b, "{}: render of {} differs", f.display(), d.name);
                ensure!(a.starts_with("<?xml") && a.contains("version=\"1.1\""), "not SVG 1.1");
                svgs += 1;
            }
        }
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
        let mux = dir.join("multiplexer.tape").to_string_lossy().into_owned();
        let fail = dir.join("multiplexer_fail.tape").to_string_lossy().into_owned();
        let eq = |file: &str, l: &str, r: &str| run(&["eq", file, "--left", l, "--right", r, "--interp", "Bool"]);
        ensure!(eq(&mux, "via_mux", "via_tapes") == (cli::OK, String::new()), "equal pair");
        let (code, witness) = eq(&fail, "via_mux", "via_tapes");
        ensure!(code == cli::UNEQUAL && witness.contains("differ at row 1, column 0"), "failing pair: {code} {witness}");
        ensure!(eq(&fail, "via_mux", "mux").0 == cli::INVALID, "type error");
        ensure!(eq(&fail, "via_mux", "missing").0 == cli::USAGE, "unknown name");
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let out = |n: &str| dir.path().join(n).to_string_lossy().into_owned();
        for o in ["a.svg", "b.svg"] {
            let (code, _) = run(&["render", &mux, "--term", "via_mux", "-o", &out(o)]);
            ensure!(code == cli::OK, "render exit {code}");
        }
        ensure!(fs::read(out("a.svg")).ok() == fs::read(out("b.svg")).ok(), "render files differ");
        Ok(format!("{} files round-trip, eq exits 0/1/2/3 as specified, {svgs} renders byte-identical", files.len()))
    })
}

type Criterion = (&'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("object normalizer", criterion_1),
        ("structural coherence of matrices", criterion_2),
        ("axiom suite", criterion_3),
        ("whiskering laws W1-W18", criterion_4),
        ("copier and discharger coherence", criterion_5),
        ("propositions as tests", criterion_6),
        ("model soundness", criterion_7),
        ("probabilistic Boolean circuits", criterion_8),
        ("frontend", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        match f() {
            Ok(detail) => println!("criterion {} PASS {name}: {detail}", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {e}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
