//! Tapes: the outer layer. Terms, typing over polynomials, and the derived
//! structure (sums of constants over polynomials, distributors, symmetries
//! for `⊗`, whiskerings, `⊗` of tapes, `⟨f⟩_P`, `⟨t⟩_P`, copier/discharger).
//!
//! Derived constants on a single monomial coincide with the primitive, so the
//! builders return the primitive there. `id_0` summands are dropped by the
//! builders (it is the strict unit of `⊕`); the raw constructors never
//! simplify.

use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::circuit::{self, CircuitError, CircuitTerm, MonSignature};
use crate::objects::{Monomial, Polynomial};
use crate::theory::{AlgebraicTheory, OpSymbol, SigmaTerm, TheoryError};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum TapeTerm {
    IdMon(Monomial),
    IdZero,
    Circuit(CircuitTerm),
    SymPlus(Monomial, Monomial),
    Seq(Box<TapeTerm>, Box<TapeTerm>),
    Sum(Box<TapeTerm>, Box<TapeTerm>),
    Cobang(Monomial),
    Codiag(Monomial),
    Op(OpSymbol, Monomial),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TapeError {
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Theory(#[from] TheoryError),
    #[error("operation `{0}` is not in the theory")]
    UnknownOp(String),
    #[error("cannot compose tapes: `{left}` does not match `{right}`")]
    Mismatch { left: String, right: String },
}

/// What typing needs to know.
#[derive(Clone, Copy)]
pub struct Ctx<'a> {
    pub sig: &'a MonSignature,
    pub theory: &'a AlgebraicTheory,
}

impl<'a> Ctx<'a> {
    pub fn new(sig: &'a MonSignature, theory: &'a AlgebraicTheory) -> Self {
        Ctx { sig, theory }
    }
}

impl TapeTerm {
    pub fn seq(a: TapeTerm, b: TapeTerm) -> Self {
        TapeTerm::Seq(Box::new(a), Box::new(b))
    }

    pub fn sum(a: TapeTerm, b: TapeTerm) -> Self {
        TapeTerm::Sum(Box::new(a), Box::new(b))
    }

    /// `[c]`.
    pub fn tape(c: CircuitTerm) -> Self {
        TapeTerm::Circuit(c)
    }

    /// `(dom, cod)`.
    pub fn type_of(&self, ctx: &Ctx<'_>) -> Result<(Polynomial, Polynomial), TapeError> {
        match self {
            TapeTerm::IdMon(u) => {
                ctx.sig.check_monomial(u)?;
                Ok((u.to_poly(), u.to_poly()))
            }
            TapeTerm::IdZero => Ok((Polynomial::zero(), Polynomial::zero())),
            TapeTerm::Circuit(c) => {
                let (u, v) = c.type_of(ctx.sig)?;
                Ok((u.to_poly(), v.to_poly()))
            }
            TapeTerm::SymPlus(u, v) => {
                ctx.sig.check_monomial(u)?;
                ctx.sig.check_monomial(v)?;
                Ok((
                    Polynomial::from_monomials([u.clone(), v.clone()]),
                    Polynomial::from_monomials([v.clone(), u.clone()]),
                ))
            }
            TapeTerm::Seq(a, b) => {
                let (p, q) = a.type_of(ctx)?;
                let (q2, r) = b.type_of(ctx)?;
                if q != q2 {
                    return Err(TapeError::Mismatch {
                        left: alloc::format!("{q}"),
                        right: alloc::format!("{q2}"),
                    });
                }
                Ok((p, r))
            }
            TapeTerm::Sum(a, b) => {
                let (p1, q1) = a.type_of(ctx)?;
                let (p2, q2) = b.type_of(ctx)?;
                Ok((p1.plus(&p2), q1.plus(&q2)))
            }
            TapeTerm::Cobang(u) => {
                ctx.sig.check_monomial(u)?;
                Ok((Polynomial::zero(), u.to_poly()))
            }
            TapeTerm::Codiag(u) => {
                ctx.sig.check_monomial(u)?;
                Ok((Polynomial::from_monomials([u.clone(), u.clone()]), u.to_poly()))
            }
            TapeTerm::Op(f, u) => {
                ctx.sig.check_monomial(u)?;
                if !ctx.theory.has_op(f) {
                    return Err(TapeError::UnknownOp(alloc::format!("{f}")));
                }
                Ok((u.to_poly(), u.to_poly().repeat(f.arity())))
            }
        }
    }

    /// Number of AST nodes, circuits counted as one.
    pub fn size(&self) -> usize {
        match self {
            TapeTerm::Seq(a, b) | TapeTerm::Sum(a, b) => 1 + a.size() + b.size(),
            _ => 1,
        }
    }
}

impl fmt::Display for TapeTerm {
    /// Fully parenthesized; the frontend printer is the minimal one.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TapeTerm::IdMon(u) => write!(f, "id@{u}"),
            TapeTerm::IdZero => f.write_str("id0"),
            TapeTerm::Circuit(c) => write!(f, "[{c}]"),
            TapeTerm::SymPlus(u, v) => write!(f, "sym+@{u},{v}"),
            TapeTerm::Seq(a, b) => write!(f, "({a} ; {b})"),
            TapeTerm::Sum(a, b) => write!(f, "({a} (+) {b})"),
            TapeTerm::Cobang(u) => write!(f, "cobang@{u}"),
            TapeTerm::Codiag(u) => write!(f, "codiag@{u}"),
            TapeTerm::Op(op, u) => write!(f, "op<{op}>@{u}"),
        }
    }
}

impl fmt::Debug for TapeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `a ⊕ b`, dropping `id_0` operands.
pub fn plus(a: TapeTerm, b: TapeTerm) -> TapeTerm {
    match (a, b) {
        (TapeTerm::IdZero, b) => b,
        (a, TapeTerm::IdZero) => a,
        (a, b) => TapeTerm::sum(a, b),
    }
}

/// Left-nested `⊕` of a list, `id_0` when empty.
pub fn plus_all<I: IntoIterator<Item = TapeTerm>>(items: I) -> TapeTerm {
    items.into_iter().fold(TapeTerm::IdZero, plus)
}

/// `⊕ⁿ t`.
pub fn repeat(t: &TapeTerm, n: usize) -> TapeTerm {
    plus_all((0..n).map(|_| t.clone()))
}

/// Left-nested `;` of a nonempty list.
pub fn seq_all<I: IntoIterator<Item = TapeTerm>>(items: I) -> Option<TapeTerm> {
    items.into_iter().reduce(TapeTerm::seq)
}

/// `id_P = ⊕ id_U`.
pub fn id(p: &Polynomial) -> TapeTerm {
    plus_all(p.monomials().iter().cloned().map(TapeTerm::IdMon))
}

/// `¡_P : 0 → P`.
pub fn cobang(p: &Polynomial) -> TapeTerm {
    plus_all(p.monomials().iter().cloned().map(TapeTerm::Cobang))
}

/// `∇_P : P ⊕ P → P`.
pub fn codiag(p: &Polynomial) -> TapeTerm {
    match p.split_first() {
        None => TapeTerm::IdZero,
        Some((u, rest)) if rest.is_zero() => TapeTerm::Codiag(u),
        Some((u, rest)) => TapeTerm::seq(
            plus_all([
                TapeTerm::IdMon(u.clone()),
                sym_plus(&rest, &u.to_poly()),
                id(&rest),
            ]),
            plus(TapeTerm::Codiag(u), codiag(&rest)),
        ),
    }
}

/// `∇ᵐ_P : ⊕ᵐ P → P`, with `∇⁰ = ¡`, `∇¹ = id`, `∇^{m+1} = (id ⊕ ∇ᵐ);∇`.
pub fn codiag_n(p: &Polynomial, m: usize) -> TapeTerm {
    match m {
        0 => cobang(p),
        1 => id(p),
        _ => TapeTerm::seq(plus(id(p), codiag_n(p, m - 1)), codiag(p)),
    }
}

/// `σ⊕_{P,Q} : P ⊕ Q → Q ⊕ P`.
pub fn sym_plus(p: &Polynomial, q: &Polynomial) -> TapeTerm {
    if p.is_zero() {
        return id(q);
    }
    if q.is_zero() {
        return id(p);
    }
    let (u, p_rest) = p.split_first().expect("nonempty");
    if !p_rest.is_zero() {
        // σ⊕_{U⊕P',Q} = (id_U ⊕ σ⊕_{P',Q}) ; (σ⊕_{U,Q} ⊕ id_P')
        return TapeTerm::seq(
            plus(TapeTerm::IdMon(u.clone()), sym_plus(&p_rest, q)),
            plus(sym_plus(&u.to_poly(), q), id(&p_rest)),
        );
    }
    let (w, q_rest) = q.split_first().expect("nonempty");
    if q_rest.is_zero() {
        return TapeTerm::SymPlus(u, w);
    }
    // σ⊕_{U,W⊕Q'} = (σ⊕_{U,W} ⊕ id_Q') ; (id_W ⊕ σ⊕_{U,Q'})
    TapeTerm::seq(
        plus(TapeTerm::SymPlus(u.clone(), w.clone()), id(&q_rest)),
        plus(TapeTerm::IdMon(w), sym_plus(p, &q_rest)),
    )
}

/// `δˡ_{P,Q,R} : P⊗(Q⊕R) → P⊗Q ⊕ P⊗R`.
pub fn dl(p: &Polynomial, q: &Polynomial, r: &Polynomial) -> TapeTerm {
    match p.split_first() {
        None => TapeTerm::IdZero,
        Some((u, rest)) => {
            let uqr = Polynomial::left_mono(&u, &q.plus(r));
            TapeTerm::seq(
                plus(id(&uqr), dl(&rest, q, r)),
                plus_all([
                    id(&Polynomial::left_mono(&u, q)),
                    sym_plus(&Polynomial::left_mono(&u, r), &rest.tensor(q)),
                    id(&rest.tensor(r)),
                ]),
            )
        }
    }
}

/// `δˡ⁻¹_{P,Q,R}`, the mirror image of [`dl`].
pub fn dl_inv(p: &Polynomial, q: &Polynomial, r: &Polynomial) -> TapeTerm {
    match p.split_first() {
        None => TapeTerm::IdZero,
        Some((u, rest)) => {
            let uqr = Polynomial::left_mono(&u, &q.plus(r));
            TapeTerm::seq(
                plus_all([
                    id(&Polynomial::left_mono(&u, q)),
                    sym_plus(&rest.tensor(q), &Polynomial::left_mono(&u, r)),
                    id(&rest.tensor(r)),
                ]),
                plus(id(&uqr), dl_inv(&rest, q, r)),
            )
        }
    }
}

/// `σ_{P,Q} : P⊗Q → Q⊗P`.
pub fn sym_tensor(p: &Polynomial, q: &Polynomial) -> TapeTerm {
    match q.split_first() {
        None => TapeTerm::IdZero,
        Some((v, rest)) => TapeTerm::seq(
            dl(p, &v.to_poly(), &rest),
            plus(
                plus_all(
                    p.monomials()
                        .iter()
                        .map(|u| TapeTerm::Circuit(circuit::sym(u, &v))),
                ),
                sym_tensor(p, &rest),
            ),
        ),
    }
}

/// `⟨f⟩_P : P → ⊕ⁿ P`.
pub fn op(f: &OpSymbol, p: &Polynomial) -> TapeTerm {
    match p.split_first() {
        None => TapeTerm::IdZero,
        Some((u, rest)) if rest.is_zero() => TapeTerm::Op(f.clone(), u),
        Some((u, rest)) => TapeTerm::seq(
            plus(TapeTerm::Op(f.clone(), u.clone()), op(f, &rest)),
            dl_inv(&Polynomial::ordinal(f.arity()), &u.to_poly(), &rest),
        ),
    }
}

/// `⟨t⟩_P : P → ⊕ⁿ P` for a Σ-term over `n` variables.
pub fn term(t: &SigmaTerm, n: usize, p: &Polynomial) -> Result<TapeTerm, TheoryError> {
    crate::theory::check_term(t, n)?;
    Ok(term_unchecked(t, n, p))
}

fn term_unchecked(t: &SigmaTerm, n: usize, p: &Polynomial) -> TapeTerm {
    match t {
        SigmaTerm::Var(i) => plus_all([
            cobang(&p.repeat(i - 1)),
            id(p),
            cobang(&p.repeat(n - i)),
        ]),
        SigmaTerm::App(f, args) => TapeTerm::seq(
            TapeTerm::seq(
                op(f, p),
                plus_all(args.iter().map(|a| term_unchecked(a, n, p))),
            ),
            codiag_n(&p.repeat(n), args.len()),
        ),
    }
}

/// `copier_P : P → P⊗P`.
pub fn copier(p: &Polynomial) -> TapeTerm {
    match p.split_first() {
        None => TapeTerm::IdZero,
        Some((u, rest)) if rest.is_zero() => TapeTerm::Circuit(circuit::copier(&u)),
        Some((u, rest)) => plus_all([
            TapeTerm::Circuit(circuit::copier(&u)),
            cobang(&Polynomial::left_mono(&u, &rest)),
            TapeTerm::seq(
                plus(cobang(&Polynomial::right_mono(&rest, &u)), copier(&rest)),
                dl_inv(&rest, &u.to_poly(), &rest),
            ),
        ]),
    }
}

/// `discharger_P : P → 1`.
pub fn discharger(p: &Polynomial) -> TapeTerm {
    match p.split_first() {
        None => TapeTerm::Cobang(Monomial::one()),
        Some((u, rest)) if rest.is_zero() => TapeTerm::Circuit(circuit::discharger(&u)),
        Some((u, rest)) => TapeTerm::seq(
            plus(TapeTerm::Circuit(circuit::discharger(&u)), discharger(&rest)),
            TapeTerm::Codiag(Monomial::one()),
        ),
    }
}

/// Left monomial whiskering `U ⋉ t`.
pub fn left_mono(u: &Monomial, t: &TapeTerm) -> TapeTerm {
    match t {
        TapeTerm::IdMon(v) => TapeTerm::IdMon(u.concat(v)),
        TapeTerm::IdZero => TapeTerm::IdZero,
        TapeTerm::Circuit(c) => {
            TapeTerm::Circuit(CircuitTerm::tensor(circuit::id(u), c.clone()))
        }
        TapeTerm::SymPlus(v, w) => TapeTerm::SymPlus(u.concat(v), u.concat(w)),
        TapeTerm::Seq(a, b) => TapeTerm::seq(left_mono(u, a), left_mono(u, b)),
        TapeTerm::Sum(a, b) => TapeTerm::sum(left_mono(u, a), left_mono(u, b)),
        TapeTerm::Cobang(v) => TapeTerm::Cobang(u.concat(v)),
        TapeTerm::Codiag(v) => TapeTerm::Codiag(u.concat(v)),
        TapeTerm::Op(f, v) => TapeTerm::Op(f.clone(), u.concat(v)),
    }
}

/// Right monomial whiskering `t ⋊ U`.
pub fn right_mono(t: &TapeTerm, u: &Monomial) -> TapeTerm {
    match t {
        TapeTerm::IdMon(v) => TapeTerm::IdMon(v.concat(u)),
        TapeTerm::IdZero => TapeTerm::IdZero,
        TapeTerm::Circuit(c) => {
            TapeTerm::Circuit(CircuitTerm::tensor(c.clone(), circuit::id(u)))
        }
        TapeTerm::SymPlus(v, w) => TapeTerm::SymPlus(v.concat(u), w.concat(u)),
        TapeTerm::Seq(a, b) => TapeTerm::seq(right_mono(a, u), right_mono(b, u)),
        TapeTerm::Sum(a, b) => TapeTerm::sum(right_mono(a, u), right_mono(b, u)),
        TapeTerm::Cobang(v) => TapeTerm::Cobang(v.concat(u)),
        TapeTerm::Codiag(v) => TapeTerm::Codiag(v.concat(u)),
        TapeTerm::Op(f, v) => TapeTerm::Op(f.clone(), v.concat(u)),
    }
}

/// Left polynomial whiskering `S ⋉ t`.
pub fn left(s: &Polynomial, t: &TapeTerm) -> TapeTerm {
    plus_all(s.monomials().iter().map(|w| left_mono(w, t)))
}

/// Right polynomial whiskering `t ⋊ S`, sandwiched between distributors.
pub fn right(t: &TapeTerm, s: &Polynomial, ctx: &Ctx<'_>) -> Result<TapeTerm, TapeError> {
    let (p, q) = t.type_of(ctx)?;
    Ok(right_typed(t, s, &p, &q))
}

/// [`right`] for a tape already known to have type `p → q`.
pub fn right_typed(t: &TapeTerm, s: &Polynomial, p: &Polynomial, q: &Polynomial) -> TapeTerm {
    match s.split_first() {
        None => TapeTerm::IdZero,
        Some((w, rest)) if rest.is_zero() => right_mono(t, &w),
        Some((w, rest)) => {
            let w_p = w.to_poly();
            seq_all([
                dl(p, &w_p, &rest),
                plus(right_mono(t, &w), right_typed(t, &rest, p, q)),
                dl_inv(q, &w_p, &rest),
            ])
            .expect("nonempty")
        }
    }
}

/// `t₁ ⊗ t₂ = P⋉t₂ ; t₁⋊S` for `t₁ : P → Q`, `t₂ : R → S`.
pub fn tensor(t1: &TapeTerm, t2: &TapeTerm, ctx: &Ctx<'_>) -> Result<TapeTerm, TapeError> {
    let (p, q) = t1.type_of(ctx)?;
    let (_, s) = t2.type_of(ctx)?;
    Ok(TapeTerm::seq(left(&p, t2), right_typed(t1, &s, &p, &q)))
}
