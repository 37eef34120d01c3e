//! Algebraic theories: signatures of (possibly rational-parameterized)
//! operation symbols, Σ-terms in a finite context, and equation instances.
//!
//! Parameterized families such as `+_p` are kept extensionally: a theory only
//! carries the parameter values it was instantiated at.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::semiring::{Rational, Semiring};

/// An operation symbol `f` with its arity and parameter values.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpSymbol {
    name: Arc<str>,
    arity: usize,
    params: Vec<Rational>,
}

impl OpSymbol {
    pub fn new(name: &str, arity: usize, params: Vec<Rational>) -> Self {
        OpSymbol {
            name: Arc::from(name),
            arity,
            params,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn params(&self) -> &[Rational] {
        &self.params
    }

    /// `+_p` of the pointed convex algebras.
    pub fn convex(p: Rational) -> Self {
        OpSymbol::new("+", 2, alloc::vec![p])
    }

    /// The point `⋆`.
    pub fn star() -> Self {
        OpSymbol::new("star", 0, Vec::new())
    }

    /// Binary `+` of commutative monoids.
    pub fn plus() -> Self {
        OpSymbol::new("+", 2, Vec::new())
    }

    /// The unit `0` of commutative monoids.
    pub fn zero() -> Self {
        OpSymbol::new("0", 0, Vec::new())
    }
}

impl fmt::Display for OpSymbol {
    /// `+_1/3`, `star`, `+`, `0`; several parameters are comma separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        for (i, p) in self.params.iter().enumerate() {
            f.write_str(if i == 0 { "_" } else { "," })?;
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for OpSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A Σ-term; variables are 1-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum SigmaTerm {
    Var(usize),
    App(OpSymbol, Vec<SigmaTerm>),
}

impl SigmaTerm {
    pub fn var(i: usize) -> Self {
        SigmaTerm::Var(i)
    }

    pub fn app(op: OpSymbol, args: Vec<SigmaTerm>) -> Self {
        SigmaTerm::App(op, args)
    }

    /// Binary application, the common case.
    pub fn bin(op: OpSymbol, l: SigmaTerm, r: SigmaTerm) -> Self {
        SigmaTerm::App(op, alloc::vec![l, r])
    }

    pub fn constant(op: OpSymbol) -> Self {
        SigmaTerm::App(op, Vec::new())
    }

    /// Largest variable index occurring in the term (0 if none).
    pub fn max_var(&self) -> usize {
        match self {
            SigmaTerm::Var(i) => *i,
            SigmaTerm::App(_, args) => args.iter().map(SigmaTerm::max_var).max().unwrap_or(0),
        }
    }

    pub fn ops(&self) -> BTreeSet<OpSymbol> {
        let mut out = BTreeSet::new();
        self.collect_ops(&mut out);
        out
    }

    fn collect_ops(&self, out: &mut BTreeSet<OpSymbol>) {
        if let SigmaTerm::App(op, args) = self {
            out.insert(op.clone());
            for a in args {
                a.collect_ops(out);
            }
        }
    }
}

impl fmt::Display for SigmaTerm {
    /// Binary operators print infix and fully parenthesized below the root.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &SigmaTerm, top: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                SigmaTerm::Var(i) => write!(f, "x{i}"),
                SigmaTerm::App(op, args) if args.is_empty() => write!(f, "{op}"),
                SigmaTerm::App(op, args) if args.len() == 2 => {
                    if !top {
                        f.write_str("(")?;
                    }
                    go(&args[0], false, f)?;
                    write!(f, " {op} ")?;
                    go(&args[1], false, f)?;
                    if !top {
                        f.write_str(")")?;
                    }
                    Ok(())
                }
                SigmaTerm::App(op, args) => {
                    write!(f, "{op}(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        go(a, true, f)?;
                    }
                    f.write_str(")")
                }
            }
        }
        go(self, true, f)
    }
}

impl fmt::Debug for SigmaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TheoryError {
    #[error("variable x{index} is outside the context of size {context}")]
    OutOfContext { index: usize, context: usize },
    #[error("operation `{op}` expects {expected} arguments, got {found}")]
    ArityMismatch {
        op: String,
        expected: usize,
        found: usize,
    },
    #[error("unknown operation `{0}`")]
    UnknownOp(String),
    #[error("parameter {0} is outside the open interval (0, 1)")]
    ParamOutOfRange(String),
    #[error("substitution expects {expected} arguments, got {found}")]
    ContextMismatch { expected: usize, found: usize },
    #[error("unknown theory `{0}`")]
    UnknownTheory(String),
}

/// Well-formedness of `t` in a context of `n` variables.
pub fn check_term(t: &SigmaTerm, n: usize) -> Result<(), TheoryError> {
    match t {
        SigmaTerm::Var(i) => {
            if *i == 0 || *i > n {
                Err(TheoryError::OutOfContext {
                    index: *i,
                    context: n,
                })
            } else {
                Ok(())
            }
        }
        SigmaTerm::App(op, args) => {
            if op.arity() != args.len() {
                return Err(TheoryError::ArityMismatch {
                    op: op.to_string(),
                    expected: op.arity(),
                    found: args.len(),
                });
            }
            args.iter().try_for_each(|a| check_term(a, n))
        }
    }
}

/// Simultaneous substitution of `xᵢ` by `args[i-1]`.
///
/// `t` lives in context `args.len()`; all `args` live in context `n`.
pub fn substitute(t: &SigmaTerm, args: &[SigmaTerm], n: usize) -> Result<SigmaTerm, TheoryError> {
    check_term(t, args.len())?;
    for a in args {
        check_term(a, n)?;
    }
    Ok(subst_unchecked(t, args))
}

fn subst_unchecked(t: &SigmaTerm, args: &[SigmaTerm]) -> SigmaTerm {
    match t {
        SigmaTerm::Var(i) => args[*i - 1].clone(),
        SigmaTerm::App(op, xs) => {
            SigmaTerm::App(op.clone(), xs.iter().map(|x| subst_unchecked(x, args)).collect())
        }
    }
}

/// An equation `lhs = rhs` over `context` variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Equation {
    pub name: String,
    pub context: usize,
    pub lhs: SigmaTerm,
    pub rhs: SigmaTerm,
}

impl Equation {
    pub fn new(name: String, context: usize, lhs: SigmaTerm, rhs: SigmaTerm) -> Self {
        Equation {
            name,
            context,
            lhs,
            rhs,
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} = {}", self.name, self.lhs, self.rhs)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TheoryKind {
    /// Pointed convex algebras, presenting subdistributions.
    Pca,
    /// Commutative monoids, presenting finitary multisets.
    Cm,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AlgebraicTheory {
    pub name: String,
    pub kind: TheoryKind,
    params: Vec<Rational>,
    ops: BTreeSet<OpSymbol>,
    equations: Vec<Equation>,
}

impl AlgebraicTheory {
    pub fn ops(&self) -> impl Iterator<Item = &OpSymbol> {
        self.ops.iter()
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn has_op(&self, op: &OpSymbol) -> bool {
        self.ops.contains(op)
    }

    /// The base parameters supplied at instantiation (PCA only).
    pub fn base_params(&self) -> &[Rational] {
        &self.params
    }

    /// Adds a parameter instance of a family already in the theory, e.g. a
    /// fresh `+_p` in PCA. The new operation carries no extra equations.
    pub fn add_op(&mut self, op: OpSymbol) -> Result<(), TheoryError> {
        match self.kind {
            TheoryKind::Pca if op.name() == "+" && op.arity() == 2 && op.params().len() == 1 => {
                if !op.params()[0].is_proper_probability() {
                    return Err(TheoryError::ParamOutOfRange(op.params()[0].to_string()));
                }
                self.ops.insert(op);
                Ok(())
            }
            _ if self.ops.contains(&op) => Ok(()),
            _ => Err(TheoryError::UnknownOp(op.to_string())),
        }
    }

    /// Checks that the term is well formed and uses only declared operations.
    pub fn check(&self, t: &SigmaTerm, n: usize) -> Result<(), TheoryError> {
        check_term(t, n)?;
        match t.ops().into_iter().find(|op| !self.has_op(op)) {
            Some(op) => Err(TheoryError::UnknownOp(op.to_string())),
            None => Ok(()),
        }
    }

    /// Looks up an operation by its printed name, e.g. `+_1/3` or `star`.
    pub fn op_by_name(&self, name: &str) -> Option<&OpSymbol> {
        self.ops.iter().find(|op| op.to_string() == name)
    }

    pub fn builtin(name: &str, params: &[Rational]) -> Result<Self, TheoryError> {
        match name {
            "PCA" => pca(params),
            "CM" => Ok(cm()),
            other => Err(TheoryError::UnknownTheory(other.to_string())),
        }
    }
}

fn x(i: usize) -> SigmaTerm {
    SigmaTerm::Var(i)
}

/// Pointed convex algebras instantiated at the given parameters.
///
/// For every `p` the commutativity and idempotence instances are added, and
/// for every ordered pair `(p, q)` the reparameterized associativity
/// `(x₁ +_q x₂) +_p x₃ = x₁ +_{pq} (x₂ +_{p(1−q)/(1−pq)} x₃)`.
pub fn pca(params: &[Rational]) -> Result<AlgebraicTheory, TheoryError> {
    let mut ps: Vec<Rational> = Vec::new();
    for p in params {
        if !p.is_proper_probability() {
            return Err(TheoryError::ParamOutOfRange(p.to_string()));
        }
        if !ps.contains(p) {
            ps.push(p.clone());
        }
    }
    let mut ops = BTreeSet::new();
    ops.insert(OpSymbol::star());
    let mut equations = Vec::new();
    for p in &ps {
        let one_minus_p = p.one_minus().expect("p < 1");
        ops.insert(OpSymbol::convex(p.clone()));
        ops.insert(OpSymbol::convex(one_minus_p.clone()));
        equations.push(Equation::new(
            format!("comm[{p}]"),
            2,
            SigmaTerm::bin(OpSymbol::convex(p.clone()), x(1), x(2)),
            SigmaTerm::bin(OpSymbol::convex(one_minus_p), x(2), x(1)),
        ));
        equations.push(Equation::new(
            format!("idem[{p}]"),
            1,
            SigmaTerm::bin(OpSymbol::convex(p.clone()), x(1), x(1)),
            x(1),
        ));
    }
    for p in &ps {
        for q in &ps {
            let pq = p.mul(q);
            let denom = pq.one_minus().expect("pq < 1");
            let inner = p
                .mul(&q.one_minus().expect("q < 1"))
                .checked_div(&denom)
                .expect("1 - pq > 0");
            ops.insert(OpSymbol::convex(q.clone()));
            ops.insert(OpSymbol::convex(pq.clone()));
            ops.insert(OpSymbol::convex(inner.clone()));
            equations.push(Equation::new(
                format!("assoc[{p},{q}]"),
                3,
                SigmaTerm::bin(
                    OpSymbol::convex(p.clone()),
                    SigmaTerm::bin(OpSymbol::convex(q.clone()), x(1), x(2)),
                    x(3),
                ),
                SigmaTerm::bin(
                    OpSymbol::convex(pq),
                    x(1),
                    SigmaTerm::bin(OpSymbol::convex(inner), x(2), x(3)),
                ),
            ));
        }
    }
    Ok(AlgebraicTheory {
        name: String::from("PCA"),
        kind: TheoryKind::Pca,
        params: ps,
        ops,
        equations,
    })
}

/// Commutative monoids: associativity, commutativity and unit of `+`.
pub fn cm() -> AlgebraicTheory {
    let plus = OpSymbol::plus;
    let zero = || SigmaTerm::constant(OpSymbol::zero());
    let equations = alloc::vec![
        Equation::new(
            String::from("assoc"),
            3,
            SigmaTerm::bin(plus(), SigmaTerm::bin(plus(), x(1), x(2)), x(3)),
            SigmaTerm::bin(plus(), x(1), SigmaTerm::bin(plus(), x(2), x(3))),
        ),
        Equation::new(
            String::from("comm"),
            2,
            SigmaTerm::bin(plus(), x(1), x(2)),
            SigmaTerm::bin(plus(), x(2), x(1)),
        ),
        Equation::new(
            String::from("unit"),
            1,
            SigmaTerm::bin(plus(), x(1), zero()),
            x(1),
        ),
    ];
    let ops = [OpSymbol::plus(), OpSymbol::zero()].into_iter().collect();
    AlgebraicTheory {
        name: String::from("CM"),
        kind: TheoryKind::Cm,
        params: Vec::new(),
        ops,
        equations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn half() -> Rational {
        Rational::new(1, 2)
    }

    #[test]
    fn check_term_cases() {
        assert!(check_term(&x(1), 1).is_ok());
        let bad = SigmaTerm::bin(OpSymbol::convex(half()), x(1), x(3));
        assert_eq!(
            check_term(&bad, 2),
            Err(TheoryError::OutOfContext { index: 3, context: 2 })
        );
        let ok = SigmaTerm::bin(
            OpSymbol::convex(Rational::new(1, 3)),
            SigmaTerm::constant(OpSymbol::star()),
            x(2),
        );
        assert!(check_term(&ok, 2).is_ok());
        let wrong_arity = SigmaTerm::app(OpSymbol::star(), alloc::vec![x(1)]);
        assert!(matches!(
            check_term(&wrong_arity, 1),
            Err(TheoryError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn substitution_cases() {
        let s = SigmaTerm::constant(OpSymbol::star());
        assert_eq!(substitute(&x(1), std::slice::from_ref(&s), 0).unwrap(), s);
        let p = OpSymbol::convex(half());
        assert_eq!(
            substitute(&SigmaTerm::bin(p.clone(), x(1), x(2)), &[x(2), x(1)], 2).unwrap(),
            SigmaTerm::bin(p.clone(), x(2), x(1))
        );
        assert_eq!(
            substitute(&SigmaTerm::bin(p.clone(), x(1), x(1)), std::slice::from_ref(&s), 0).unwrap(),
            SigmaTerm::bin(p, s.clone(), s)
        );
        assert!(matches!(
            substitute(&x(2), &[x(1)], 1),
            Err(TheoryError::OutOfContext { .. })
        ));
    }

    #[test]
    fn substitution_is_associative_and_unital() {
        let p = OpSymbol::convex(Rational::new(1, 3));
        let t = SigmaTerm::bin(p.clone(), x(1), SigmaTerm::bin(p.clone(), x(2), x(1)));
        let ident = [x(1), x(2)];
        assert_eq!(substitute(&t, &ident, 2).unwrap(), t);
        let u = [SigmaTerm::bin(p.clone(), x(2), x(1)), x(1)];
        let v = [x(2), SigmaTerm::constant(OpSymbol::star())];
        let left = substitute(&substitute(&t, &u, 2).unwrap(), &v, 2).unwrap();
        let uv: Vec<SigmaTerm> = u.iter().map(|a| substitute(a, &v, 2).unwrap()).collect();
        assert_eq!(left, substitute(&t, &uv, 2).unwrap());
    }

    #[test]
    fn pca_instances() {
        let th = pca(&[half(), Rational::new(1, 3)]).unwrap();
        let comm = th.equations().iter().find(|e| e.name == "comm[1/2]").unwrap();
        assert_eq!(comm.lhs, SigmaTerm::bin(OpSymbol::convex(half()), x(1), x(2)));
        assert_eq!(comm.rhs, SigmaTerm::bin(OpSymbol::convex(half()), x(2), x(1)));
        let assoc = th.equations().iter().find(|e| e.name == "assoc[1/3,1/2]").unwrap();
        match &assoc.rhs {
            SigmaTerm::App(outer, args) => {
                assert_eq!(outer.params(), &[Rational::new(1, 6)]);
                match &args[1] {
                    SigmaTerm::App(inner, _) => assert_eq!(inner.params(), &[Rational::new(1, 5)]),
                    _ => panic!("inner application expected"),
                }
            }
            _ => panic!("application expected"),
        }
        for e in th.equations() {
            th.check(&e.lhs, e.context).unwrap();
            th.check(&e.rhs, e.context).unwrap();
        }
        assert_eq!(th.base_params(), &[half(), Rational::new(1, 3)]);
    }

    #[test]
    fn pca_rejects_out_of_range() {
        assert!(matches!(
            pca(&[Rational::from_integer(1)]),
            Err(TheoryError::ParamOutOfRange(_))
        ));
        assert!(pca(&[Rational::from_integer(0)]).is_err());
    }

    #[test]
    fn cm_presentation() {
        let th = cm();
        let assoc = &th.equations()[0];
        assert_eq!(assoc.to_string(), "assoc: (x1 + x2) + x3 = x1 + (x2 + x3)");
        assert!(th.has_op(&OpSymbol::zero()));
    }

    #[test]
    fn display_of_terms() {
        let t = SigmaTerm::bin(
            OpSymbol::convex(half()),
            SigmaTerm::bin(
                OpSymbol::convex(Rational::new(1, 3)),
                x(1),
                SigmaTerm::constant(OpSymbol::star()),
            ),
            x(1),
        );
        assert_eq!(t.to_string(), "(x1 +_1/3 star) +_1/2 x1");
    }
}
