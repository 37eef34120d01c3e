//! From syntax to core terms: name resolution, object normalization, typing
//! of definitions, and construction of interpretations.
//!
//! Interpretations are assembled after the whole module is read, because a
//! definition may use a fresh `+_p` that the PCA theory (and so every model
//! of it) has to be extended with.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use tapediag_core::circuit::{self, CircuitTerm, MonSignature};
use tapediag_core::interp::{EvalError, Interpretation};
use tapediag_core::kleisli::{FinCarrier, KMorphism, TheoryModel};
use tapediag_core::objects::{normalize, Monomial, ObjTerm, Polynomial, Sort};
use tapediag_core::semiring::{Natural, Rational, Semiring};
use tapediag_core::suites::{self, Bounds, Env, RandomWeight, Report, SemEq};
use tapediag_core::tape::{self, Ctx, TapeTerm};
use tapediag_core::theory::{self, AlgebraicTheory, OpSymbol, SigmaTerm, TheoryKind};

use crate::ast::{self, Circ, Decl, InterpItem, Obj, OpLit, Rat, Sigma, Tape, TapeAtom};
use crate::diag::Diagnostic;
use crate::lexer::Pos;

#[derive(Clone, Debug)]
pub struct Def {
    pub name: String,
    pub term: TapeTerm,
    pub dom: Polynomial,
    pub cod: Polynomial,
    pub pos: Pos,
}

#[derive(Clone, Debug)]
pub struct EqCheck {
    pub left: String,
    pub right: String,
    pub interp: String,
    pub pos: Pos,
}

/// An interpretation in one of the two supported models.
#[derive(Clone)]
pub enum Semantics {
    Pca(Interpretation<Rational>),
    Cm(Interpretation<Natural>),
}

/// Outcome of comparing two tapes, with values already printed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Unequal { row: usize, col: usize, lhs: String, rhs: String },
    TypeError(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Axiom,
    Lemma,
    All,
}

fn compare<S: Semiring>(r: SemEq<S>) -> Comparison {
    match r {
        SemEq::Equal => Comparison::Equal,
        SemEq::Unequal { row, col, lhs, rhs } => Comparison::Unequal {
            row,
            col,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        },
        SemEq::TypeError(e) => Comparison::TypeError(e),
    }
}

fn run_suite<S: RandomWeight>(sig: &MonSignature, i: &Interpretation<S>, b: &Bounds, w: Which) -> Report {
    let env = Env::new(sig.clone(), i.clone());
    let mut r = Report::default();
    if w != Which::Lemma {
        r.extend(suites::axiom_suite(&env, b));
    }
    if w != Which::Axiom {
        r.extend(suites::lemma_suite(&env, b));
    }
    r
}

impl Semantics {
    pub fn eval(&self, t: &TapeTerm) -> Result<KMorphism<Rational>, EvalError> {
        match self {
            Semantics::Pca(i) => i.eval_tape(t),
            Semantics::Cm(i) => Ok(i.eval_tape(t)?.map(|w| Rational::from(w))),
        }
    }

    pub fn compare(&self, sig: &MonSignature, a: &TapeTerm, b: &TapeTerm) -> Result<Comparison, EvalError> {
        Ok(match self {
            Semantics::Pca(i) => compare(suites::sem_eq(a, b, sig, i)?),
            Semantics::Cm(i) => compare(suites::sem_eq(a, b, sig, i)?),
        })
    }

    pub fn suite(&self, sig: &MonSignature, bounds: &Bounds, which: Which) -> Report {
        match self {
            Semantics::Pca(i) => run_suite(sig, i, bounds, which),
            Semantics::Cm(i) => run_suite(sig, i, bounds, which),
        }
    }
}

/// An elaborated module.
#[derive(Clone)]
pub struct Program {
    pub sig: MonSignature,
    pub theory: AlgebraicTheory,
    pub defs: Vec<Def>,
    pub interps: BTreeMap<String, Semantics>,
    pub checks: Vec<EqCheck>,
}

impl std::fmt::Debug for Program {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Program")
            .field("theory", &self.theory.name)
            .field("defs", &self.defs)
            .field("interps", &self.interps.keys().collect::<Vec<_>>())
            .finish()
    }
}

impl Program {
    pub fn def(&self, name: &str) -> Option<&Def> {
        self.defs.iter().find(|d| d.name == name)
    }

    pub fn ctx(&self) -> Ctx<'_> {
        Ctx::new(&self.sig, &self.theory)
    }
}

fn err<T>(pos: Pos, msg: impl Into<String>) -> Result<T, Diagnostic> {
    Err(Diagnostic::new(pos, msg))
}

fn rational(r: &Rat) -> Result<Rational, Diagnostic> {
    Rational::from_str(&r.to_string()).or_else(|e| err(r.pos, e.to_string()))
}

struct PendingInterp {
    name: String,
    pos: Pos,
    model: Option<ast::Name>,
    carriers: Vec<(Sort, FinCarrier)>,
    matrices: Vec<(String, Pos, Vec<Vec<Rational>>, usize)>,
}

struct Elab {
    sig: MonSignature,
    theory: Option<AlgebraicTheory>,
    defs: Vec<Def>,
    pending: Vec<PendingInterp>,
    checks: Vec<EqCheck>,
}

pub fn elaborate(m: &ast::Module) -> Result<Program, Diagnostic> {
    let mut e = Elab {
        sig: MonSignature::new(),
        theory: None,
        defs: Vec::new(),
        pending: Vec::new(),
        checks: Vec::new(),
    };
    for d in &m.decls {
        e.decl(d)?;
    }
    e.finish()
}

/// Parses and elaborates in one step.
pub fn load(src: &str) -> Result<Program, Diagnostic> {
    elaborate(&crate::parser::parse_module(src)?)
}

/// Normalizes an object against a set of sorts.
pub fn object(o: &Obj, sorts: &BTreeSet<Sort>, pos: Pos) -> Result<Polynomial, Diagnostic> {
    normalize(&obj_term(o), sorts).or_else(|e| err(obj_pos(o).unwrap_or(pos), e.to_string()))
}

pub fn obj_term(o: &Obj) -> ObjTerm {
    match o {
        Obj::Sort(n) => ObjTerm::sort(&n.text),
        Obj::One => ObjTerm::One,
        Obj::Zero => ObjTerm::Zero,
        Obj::Tensor(a, b, _) => ObjTerm::tensor(obj_term(a), obj_term(b)),
        Obj::Sum(a, b) => ObjTerm::sum(obj_term(a), obj_term(b)),
        Obj::Paren(x) => obj_term(x),
    }
}

fn obj_pos(o: &Obj) -> Option<Pos> {
    match o {
        Obj::Sort(n) => Some(n.pos),
        Obj::One | Obj::Zero => None,
        Obj::Tensor(a, b, _) | Obj::Sum(a, b) => obj_pos(a).or_else(|| obj_pos(b)),
        Obj::Paren(x) => obj_pos(x),
    }
}

fn first_pos(t: &Tape) -> Pos {
    match t {
        Tape::Seq(a, _) | Tape::Tensor(a, _) | Tape::Sum(a, _) | Tape::Paren(a) => first_pos(a),
        Tape::Atom(_, p) => *p,
    }
}

impl Elab {
    fn theory(&mut self) -> &mut AlgebraicTheory {
        self.theory
            .get_or_insert_with(|| theory::pca(&[]).expect("no parameters"))
    }

    fn sorts(&self) -> &BTreeSet<Sort> {
        self.sig.sorts()
    }

    fn obj(&self, o: &Obj, pos: Pos) -> Result<Polynomial, Diagnostic> {
        object(o, self.sorts(), pos)
    }

    fn mono(&self, o: &Obj, pos: Pos) -> Result<Monomial, Diagnostic> {
        let p = self.obj(o, pos)?;
        match p.as_monomial() {
            Some(u) => Ok(u.clone()),
            None => err(pos, format!("`{o}` normalizes to `{p}`, which is not a monomial")),
        }
    }

    fn name_taken(&self, n: &str) -> bool {
        self.sig.gen(n).is_some() || self.defs.iter().any(|d| d.name == n)
    }

    fn decl(&mut self, d: &Decl) -> Result<(), Diagnostic> {
        match d {
            Decl::Sort(n) => {
                if self.sig.add_sort(Sort::new(&n.text)).is_err() {
                    return err(n.pos, format!("sort `{}` is declared twice", n.text));
                }
            }
            Decl::Gen { name, ar, coar } => {
                if self.name_taken(&name.text) {
                    return err(name.pos, format!("`{}` is already defined", name.text));
                }
                let ar = self.mono(ar, name.pos)?;
                let coar = self.mono(coar, name.pos)?;
                self.sig
                    .add_gen(&name.text, ar, coar)
                    .or_else(|e| err(name.pos, e.to_string()))?;
            }
            Decl::Theory { name, params, .. } => {
                if self.theory.is_some() {
                    return err(name.pos, "only one theory may be declared, before any use of operations");
                }
                let ps = params.iter().map(rational).collect::<Result<Vec<_>, _>>()?;
                if name.text == "CM" && !ps.is_empty() {
                    return err(name.pos, "CM takes no parameters");
                }
                let t = AlgebraicTheory::builtin(&name.text, &ps).or_else(|e| err(name.pos, e.to_string()))?;
                self.theory = Some(t);
            }
            Decl::Interp { name, items } => self.interp(name, items)?,
            Decl::Def { name, body } => {
                if self.name_taken(&name.text) {
                    return err(name.pos, format!("`{}` is already defined", name.text));
                }
                let term = self.tape(body)?;
                let (dom, cod) = self.type_of(&term, first_pos(body))?;
                self.defs.push(Def {
                    name: name.text.clone(),
                    term,
                    dom,
                    cod,
                    pos: name.pos,
                });
            }
            Decl::CheckType { name, dom, cod } => {
                let (dom, cod) = (self.obj(dom, name.pos)?, self.obj(cod, name.pos)?);
                let def = self.lookup(&name.text, name.pos)?;
                if def.dom != dom || def.cod != cod {
                    return err(
                        name.pos,
                        format!(
                            "`{}` has type {} -> {}, not {dom} -> {cod}",
                            name.text, def.dom, def.cod
                        ),
                    );
                }
            }
            Decl::CheckEq { left, right, interp } => {
                self.lookup(&left.text, left.pos)?;
                self.lookup(&right.text, right.pos)?;
                if !self.pending.iter().any(|p| p.name == interp.text) {
                    return err(interp.pos, format!("unknown interpretation `{}`", interp.text));
                }
                self.checks.push(EqCheck {
                    left: left.text.clone(),
                    right: right.text.clone(),
                    interp: interp.text.clone(),
                    pos: left.pos,
                });
            }
        }
        Ok(())
    }

    fn lookup(&self, name: &str, pos: Pos) -> Result<&Def, Diagnostic> {
        match self.defs.iter().find(|d| d.name == name) {
            Some(d) => Ok(d),
            None => err(pos, format!("unknown definition `{name}`")),
        }
    }

    fn type_of(&mut self, t: &TapeTerm, pos: Pos) -> Result<(Polynomial, Polynomial), Diagnostic> {
        let theory = self.theory().clone();
        t.type_of(&Ctx::new(&self.sig, &theory))
            .or_else(|e| err(pos, e.to_string()))
    }

    fn interp(&mut self, name: &ast::Name, items: &[InterpItem]) -> Result<(), Diagnostic> {
        if self.pending.iter().any(|p| p.name == name.text) {
            return err(name.pos, format!("interpretation `{}` is declared twice", name.text));
        }
        let mut p = PendingInterp {
            name: name.text.clone(),
            pos: name.pos,
            model: None,
            carriers: Vec::new(),
            matrices: Vec::new(),
        };
        for item in items {
            match item {
                InterpItem::Carrier { sort, labels } => {
                    let s = Sort::new(&sort.text);
                    if !self.sig.has_sort(&s) {
                        return err(sort.pos, format!("unknown sort `{}`", sort.text));
                    }
                    if p.carriers.iter().any(|(t, _)| *t == s) {
                        return err(sort.pos, format!("carrier of `{}` given twice", sort.text));
                    }
                    let distinct: BTreeSet<&String> = labels.iter().collect();
                    if distinct.len() != labels.len() {
                        return err(sort.pos, "carrier labels must be distinct");
                    }
                    p.carriers.push((s, FinCarrier::labelled(labels.clone())));
                }
                InterpItem::Matrix { gen, rows } => {
                    let Some(g) = self.sig.gen(&gen.text) else {
                        return err(gen.pos, format!("unknown generator `{}`", gen.text));
                    };
                    if p.matrices.iter().any(|m| m.0 == gen.text) {
                        return err(gen.pos, format!("matrix of `{}` given twice", gen.text));
                    }
                    let size = |u: &Monomial| -> Result<usize, Diagnostic> {
                        u.sorts().iter().try_fold(1, |acc, s| {
                            match p.carriers.iter().find(|(t, _)| t == s) {
                                Some((_, c)) => Ok(acc * c.size()),
                                None => err(gen.pos, format!("carrier of `{s}` must be given before `{}`", gen.text)),
                            }
                        })
                    };
                    let (r, c) = (size(&g.coar)?, size(&g.ar)?);
                    let vals = rows
                        .iter()
                        .map(|row| row.iter().map(rational).collect::<Result<Vec<_>, _>>())
                        .collect::<Result<Vec<_>, _>>()?;
                    if vals.len() != r || vals.iter().any(|row| row.len() != c) {
                        return err(
                            gen.pos,
                            format!("`{}` needs a {r}x{c} matrix (rows are outputs)", gen.text),
                        );
                    }
                    p.matrices.push((gen.text.clone(), gen.pos, vals, c));
                }
                InterpItem::Model { theory } => p.model = Some(theory.clone()),
            }
        }
        for s in self.sig.sorts() {
            if !p.carriers.iter().any(|(t, _)| t == s) {
                return err(name.pos, format!("interpretation `{}` gives no carrier for `{s}`", name.text));
            }
        }
        for g in self.sig.gens() {
            if !p.matrices.iter().any(|m| *m.0 == *g.name) {
                return err(name.pos, format!("interpretation `{}` gives no matrix for `{}`", name.text, g.name));
            }
        }
        self.pending.push(p);
        Ok(())
    }

    fn finish(mut self) -> Result<Program, Diagnostic> {
        let theory = self.theory().clone();
        let mut interps = BTreeMap::new();
        for p in &self.pending {
            if let Some(m) = &p.model {
                if m.text != theory.name {
                    return err(m.pos, format!("model `{}` does not match the theory `{}`", m.text, theory.name));
                }
            }
            let sem = match theory.kind {
                TheoryKind::Pca => {
                    let model = TheoryModel::pca(theory.clone()).or_else(|e| err(p.pos, e.to_string()))?;
                    let mut i = Interpretation::new(model);
                    for (s, c) in &p.carriers {
                        i.set_sort(s.clone(), c.clone());
                    }
                    for (g, pos, rows, cols) in &p.matrices {
                        let m = KMorphism::from_rows(rows.clone(), *cols).or_else(|e| err(*pos, e.to_string()))?;
                        i.set_gen(g, m);
                    }
                    i.validate(&self.sig).or_else(|e| err(p.pos, e.to_string()))?;
                    Semantics::Pca(i)
                }
                TheoryKind::Cm => {
                    let model = TheoryModel::cm(theory.clone()).or_else(|e| err(p.pos, e.to_string()))?;
                    let mut i = Interpretation::new(model);
                    for (s, c) in &p.carriers {
                        i.set_sort(s.clone(), c.clone());
                    }
                    for (g, pos, rows, cols) in &p.matrices {
                        let nat = rows
                            .iter()
                            .map(|r| {
                                r.iter()
                                    .map(|w| match w.is_integer() {
                                        true => Natural::from_str(&w.to_string()).or_else(|e| err(*pos, e.to_string())),
                                        false => err(*pos, format!("CM weights are natural numbers, found `{w}`")),
                                    })
                                    .collect::<Result<Vec<_>, _>>()
                            })
                            .collect::<Result<Vec<_>, _>>()?;
                        let m = KMorphism::from_rows(nat, *cols).or_else(|e| err(*pos, e.to_string()))?;
                        i.set_gen(g, m);
                    }
                    i.validate(&self.sig).or_else(|e| err(p.pos, e.to_string()))?;
                    Semantics::Cm(i)
                }
            };
            interps.insert(p.name.clone(), sem);
        }
        Ok(Program {
            sig: self.sig,
            theory,
            defs: self.defs,
            interps,
            checks: self.checks,
        })
    }

    fn op(&mut self, lit: &OpLit, pos: Pos) -> Result<OpSymbol, Diagnostic> {
        let sym = match (lit.name.as_str(), &lit.param) {
            ("+", Some(p)) => OpSymbol::convex(rational(p)?),
            ("+", None) => OpSymbol::plus(),
            ("0", None) => OpSymbol::zero(),
            ("star", None) => OpSymbol::star(),
            _ => return err(pos, format!("unknown operation `{lit}`")),
        };
        let t = self.theory();
        if !t.has_op(&sym) {
            t.add_op(sym.clone())
                .or_else(|e| err(pos, format!("{e} (theory {})", t.name)))?;
        }
        Ok(sym)
    }

    fn sigma(&mut self, s: &Sigma, pos: Pos) -> Result<SigmaTerm, Diagnostic> {
        Ok(match s {
            Sigma::Var(i) => SigmaTerm::var(*i),
            Sigma::Const(op) => SigmaTerm::constant(self.op(op, pos)?),
            Sigma::Bin(op, a, b) => {
                let op = self.op(op, pos)?;
                SigmaTerm::bin(op, self.sigma(a, pos)?, self.sigma(b, pos)?)
            }
            Sigma::Paren(x) => self.sigma(x, pos)?,
        })
    }

    fn tape(&mut self, t: &Tape) -> Result<TapeTerm, Diagnostic> {
        match t {
            Tape::Seq(a, b) => {
                let (x, y) = (self.tape(a)?, self.tape(b)?);
                let s = TapeTerm::seq(x, y);
                self.type_of(&s, first_pos(b))?;
                Ok(s)
            }
            Tape::Sum(a, b) => Ok(TapeTerm::sum(self.tape(a)?, self.tape(b)?)),
            Tape::Tensor(a, b) => {
                let (x, y) = (self.tape(a)?, self.tape(b)?);
                let theory = self.theory().clone();
                tape::tensor(&x, &y, &Ctx::new(&self.sig, &theory)).or_else(|e| err(first_pos(b), e.to_string()))
            }
            Tape::Paren(x) => self.tape(x),
            Tape::Atom(a, pos) => self.atom(a, *pos),
        }
    }

    fn atom(&mut self, a: &TapeAtom, pos: Pos) -> Result<TapeTerm, Diagnostic> {
        Ok(match a {
            TapeAtom::Id(u) => tape::id(&self.obj(u, pos)?),
            TapeAtom::IdZero => TapeTerm::IdZero,
            TapeAtom::SymPlus(u, v) => tape::sym_plus(&self.obj(u, pos)?, &self.obj(v, pos)?),
            TapeAtom::Codiag(u) => tape::codiag(&self.obj(u, pos)?),
            TapeAtom::Cobang(u) => tape::cobang(&self.obj(u, pos)?),
            TapeAtom::Op(f, u) => {
                let f = self.op(f, pos)?;
                tape::op(&f, &self.obj(u, pos)?)
            }
            TapeAtom::Term(s, u) => {
                let s = self.sigma(s, pos)?;
                let p = self.obj(u, pos)?;
                tape::term(&s, s.max_var(), &p).or_else(|e| err(pos, e.to_string()))?
            }
            TapeAtom::Copier(u) => tape::copier(&self.obj(u, pos)?),
            TapeAtom::Discard(u) => tape::discharger(&self.obj(u, pos)?),
            TapeAtom::Dl(p, q, r) => tape::dl(&self.obj(p, pos)?, &self.obj(q, pos)?, &self.obj(r, pos)?),
            TapeAtom::Circuit(c) => {
                let c = self.circ(c)?;
                c.type_of(&self.sig).or_else(|e| err(pos, e.to_string()))?;
                TapeTerm::tape(c)
            }
            TapeAtom::Ref(n) => self.lookup(n, pos)?.term.clone(),
        })
    }

    fn circ(&self, c: &Circ) -> Result<CircuitTerm, Diagnostic> {
        Ok(match c {
            Circ::Seq(a, b) => CircuitTerm::seq(self.circ(a)?, self.circ(b)?),
            Circ::Tensor(a, b) => CircuitTerm::tensor(self.circ(a)?, self.circ(b)?),
            Circ::Paren(x) => self.circ(x)?,
            Circ::Id(u, p) => circuit::id(&self.mono(u, *p)?),
            Circ::Gen(n) => {
                if self.sig.gen(&n.text).is_none() {
                    return err(n.pos, format!("unknown generator `{}`", n.text));
                }
                CircuitTerm::gen(&n.text)
            }
            Circ::Sym(u, v, p) => circuit::sym(&self.mono(u, *p)?, &self.mono(v, *p)?),
            Circ::Copy(u, p) => circuit::copier(&self.mono(u, *p)?),
            Circ::Del(u, p) => circuit::discharger(&self.mono(u, *p)?),
        })
    }
}
