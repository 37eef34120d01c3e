//! Objects of the sesquistrict rig category.
//!
//! Raw object terms are built from sorts, `1`, `0`, `⊗` and `⊕`. Orienting the
//! object equations left to right gives a confluent and terminating rewrite
//! system whose normal forms are polynomials: words of words over sorts.
//!
//! Objects are identified up to the full rewrite system, including
//! left-distributivity over arbitrary left factors. At the morphism level the
//! left distributor stays an explicit tape (see [`crate::tape::dl`]).

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

/// A basic sort, identified by its (nonempty) name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sort(Arc<str>);

impl Sort {
    /// Panics on an empty name.
    pub fn new(name: &str) -> Self {
        assert!(!name.is_empty(), "sort names are nonempty");
        Sort(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A word over sorts; the empty word is the unit `1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub Vec<Sort>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn sort(s: Sort) -> Self {
        Monomial(alloc::vec![s])
    }

    pub fn from_sorts<I: IntoIterator<Item = Sort>>(sorts: I) -> Self {
        Monomial(sorts.into_iter().collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sorts(&self) -> &[Sort] {
        &self.0
    }

    /// Concatenation `UV`.
    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Monomial(v)
    }

    /// Splits off the first sort: `A U' ↦ (A, U')`.
    pub fn split_first(&self) -> Option<(Sort, Monomial)> {
        self.0
            .split_first()
            .map(|(a, rest)| (a.clone(), Monomial(rest.to_vec())))
    }

    /// The polynomial with this single monomial.
    pub fn to_poly(&self) -> Polynomial {
        Polynomial(alloc::vec![self.clone()])
    }
}

fn write_sorts(f: &mut fmt::Formatter<'_>, sorts: &[Sort]) -> fmt::Result {
    // Single-character names are juxtaposed (`AB`); longer ones are spaced.
    let compact = sorts.iter().all(|s| s.name().chars().count() == 1);
    for (i, s) in sorts.iter().enumerate() {
        if i > 0 && !compact {
            f.write_str(" ")?;
        }
        f.write_str(s.name())?;
    }
    Ok(())
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("1")
        } else {
            write_sorts(f, &self.0)
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A word of monomials; the empty word is `0`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Polynomial(pub Vec<Monomial>);

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial(Vec::new())
    }

    pub fn one() -> Self {
        Monomial::one().to_poly()
    }

    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(ms: I) -> Self {
        Polynomial(ms.into_iter().collect())
    }

    /// `⊕ⁿ 1`, the object standing for the finite ordinal `n`.
    pub fn ordinal(n: usize) -> Self {
        Polynomial(alloc::vec![Monomial::one(); n])
    }

    /// `⊕ⁿ P`.
    pub fn repeat(&self, n: usize) -> Self {
        let mut v = Vec::with_capacity(self.0.len() * n);
        for _ in 0..n {
            v.extend(self.0.iter().cloned());
        }
        Polynomial(v)
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Returns the single monomial, if there is exactly one.
    pub fn as_monomial(&self) -> Option<&Monomial> {
        match self.0.as_slice() {
            [m] => Some(m),
            _ => None,
        }
    }

    /// Splits off the first monomial: `U ⊕ P' ↦ (U, P')`.
    pub fn split_first(&self) -> Option<(Monomial, Polynomial)> {
        self.0
            .split_first()
            .map(|(u, rest)| (u.clone(), Polynomial(rest.to_vec())))
    }

    /// Concatenation `P ⊕ Q`.
    pub fn plus(&self, other: &Polynomial) -> Polynomial {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Polynomial(v)
    }

    /// `P ⊗ Q = ⊕ᵢ ⊕ⱼ UᵢVⱼ`, row-major in `(i, j)`.
    pub fn tensor(&self, other: &Polynomial) -> Polynomial {
        let mut v = Vec::with_capacity(self.0.len() * other.0.len());
        for u in &self.0 {
            for w in &other.0 {
                v.push(u.concat(w));
            }
        }
        Polynomial(v)
    }

    /// `U ⊗ P` for a monomial on the left.
    pub fn left_mono(u: &Monomial, p: &Polynomial) -> Polynomial {
        Polynomial(p.0.iter().map(|w| u.concat(w)).collect())
    }

    /// `P ⊗ U` for a monomial on the right.
    pub fn right_mono(p: &Polynomial, u: &Monomial) -> Polynomial {
        Polynomial(p.0.iter().map(|w| w.concat(u)).collect())
    }

    pub fn sorts(&self) -> BTreeSet<Sort> {
        self.0.iter().flat_map(|m| m.0.iter().cloned()).collect()
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        m.to_poly()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" (+) ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Raw object term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ObjTerm {
    Sort(Sort),
    One,
    Zero,
    Tensor(Box<ObjTerm>, Box<ObjTerm>),
    Sum(Box<ObjTerm>, Box<ObjTerm>),
}

impl ObjTerm {
    pub fn sort(name: &str) -> Self {
        ObjTerm::Sort(Sort::new(name))
    }

    pub fn tensor(a: ObjTerm, b: ObjTerm) -> Self {
        ObjTerm::Tensor(Box::new(a), Box::new(b))
    }

    pub fn sum(a: ObjTerm, b: ObjTerm) -> Self {
        ObjTerm::Sum(Box::new(a), Box::new(b))
    }

    pub fn sorts(&self) -> BTreeSet<Sort> {
        let mut out = BTreeSet::new();
        self.collect_sorts(&mut out);
        out
    }

    fn collect_sorts(&self, out: &mut BTreeSet<Sort>) {
        match self {
            ObjTerm::Sort(s) => {
                out.insert(s.clone());
            }
            ObjTerm::One | ObjTerm::Zero => {}
            ObjTerm::Tensor(a, b) | ObjTerm::Sum(a, b) => {
                a.collect_sorts(out);
                b.collect_sorts(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            ObjTerm::Sort(_) | ObjTerm::One | ObjTerm::Zero => 0,
            ObjTerm::Tensor(a, b) | ObjTerm::Sum(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

impl fmt::Display for ObjTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjTerm::Sort(s) => write!(f, "{s}"),
            ObjTerm::One => f.write_str("1"),
            ObjTerm::Zero => f.write_str("0"),
            ObjTerm::Tensor(a, b) => write!(f, "({a} (x) {b})"),
            ObjTerm::Sum(a, b) => write!(f, "({a} (+) {b})"),
        }
    }
}

impl fmt::Debug for ObjTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ObjectError {
    #[error("unregistered sort `{0}`")]
    UnknownSort(String),
}

/// Applies one oriented object equation at the root, if any matches.
///
/// The rules, in the order they are tried:
/// `(X⊗Y)⊗Z → X⊗(Y⊗Z)`, `1⊗X → X`, `X⊗1 → X`, `0⊗X → 0`, `X⊗0 → 0`,
/// `(X⊕Y)⊗Z → (X⊗Z)⊕(Y⊗Z)`, `A⊗(Y⊕Z) → (A⊗Y)⊕(A⊗Z)` for a sort `A`,
/// `(X⊕Y)⊕Z → X⊕(Y⊕Z)`, `0⊕X → X`, `X⊕0 → X`.
pub fn rewrite_root(t: &ObjTerm) -> Option<ObjTerm> {
    use ObjTerm::*;
    match t {
        Tensor(x, z) => match (&**x, &**z) {
            (Tensor(a, b), _) => Some(ObjTerm::tensor(
                (**a).clone(),
                ObjTerm::tensor((**b).clone(), (**z).clone()),
            )),
            (One, _) => Some((**z).clone()),
            (_, One) => Some((**x).clone()),
            (Zero, _) => Some(Zero),
            (_, Zero) => Some(Zero),
            (Sum(a, b), _) => Some(ObjTerm::sum(
                ObjTerm::tensor((**a).clone(), (**z).clone()),
                ObjTerm::tensor((**b).clone(), (**z).clone()),
            )),
            (Sort(_), Sum(a, b)) => Some(ObjTerm::sum(
                ObjTerm::tensor((**x).clone(), (**a).clone()),
                ObjTerm::tensor((**x).clone(), (**b).clone()),
            )),
            _ => None,
        },
        Sum(x, z) => match (&**x, &**z) {
            (Sum(a, b), _) => Some(ObjTerm::sum(
                (**a).clone(),
                ObjTerm::sum((**b).clone(), (**z).clone()),
            )),
            (Zero, _) => Some((**z).clone()),
            (_, Zero) => Some((**x).clone()),
            _ => None,
        },
        _ => None,
    }
}

/// Innermost normalization to a normal-form term. Subterms are normalized
/// first, then combined by `tensor_nf`/`sum_nf`, which apply the rules at the
/// root and never revisit a normal subterm. The system is confluent, so this
/// agrees with any other rewrite order.
pub fn normal_term(t: &ObjTerm) -> ObjTerm {
    match t {
        ObjTerm::Tensor(a, b) => tensor_nf(normal_term(a), normal_term(b)),
        ObjTerm::Sum(a, b) => sum_nf(normal_term(a), normal_term(b)),
        leaf => leaf.clone(),
    }
}

fn tensor_nf(x: ObjTerm, z: ObjTerm) -> ObjTerm {
    use ObjTerm::*;
    match (x, z) {
        (Tensor(a, b), z) => tensor_nf(*a, tensor_nf(*b, z)),
        (One, z) => z,
        (x, One) => x,
        (Zero, _) | (_, Zero) => Zero,
        (Sum(a, b), z) => sum_nf(tensor_nf(*a, z.clone()), tensor_nf(*b, z)),
        (x @ Sort(_), Sum(a, b)) => sum_nf(tensor_nf(x.clone(), *a), tensor_nf(x, *b)),
        (x, z) => ObjTerm::tensor(x, z),
    }
}

fn sum_nf(x: ObjTerm, z: ObjTerm) -> ObjTerm {
    use ObjTerm::*;
    match (x, z) {
        (Sum(a, b), z) => sum_nf(*a, sum_nf(*b, z)),
        (Zero, z) => z,
        (x, Zero) => x,
        (x, z) => ObjTerm::sum(x, z),
    }
}

/// Reads a polynomial off a normal-form term; `None` if `t` is not normal.
pub fn read_polynomial(t: &ObjTerm) -> Option<Polynomial> {
    fn monomial(t: &ObjTerm) -> Option<Monomial> {
        match t {
            ObjTerm::One => Some(Monomial::one()),
            ObjTerm::Sort(s) => Some(Monomial::sort(s.clone())),
            ObjTerm::Tensor(a, rest) => match &**a {
                ObjTerm::Sort(s) => {
                    let tail = monomial(rest)?;
                    if tail.is_one() {
                        return None;
                    }
                    let mut v = alloc::vec![s.clone()];
                    v.extend(tail.0);
                    Some(Monomial(v))
                }
                _ => None,
            },
            _ => None,
        }
    }
    match t {
        ObjTerm::Zero => Some(Polynomial::zero()),
        ObjTerm::Sum(a, rest) => {
            let head = monomial(a)?;
            let tail = read_polynomial(rest)?;
            if tail.is_zero() {
                return None;
            }
            let mut v = alloc::vec![head];
            v.extend(tail.0);
            Some(Polynomial(v))
        }
        other => monomial(other).map(Polynomial::from),
    }
}

/// Normalizes an object term to its polynomial form.
///
/// Every sort must belong to `registered`.
pub fn normalize(t: &ObjTerm, registered: &BTreeSet<Sort>) -> Result<Polynomial, ObjectError> {
    if let Some(s) = t.sorts().into_iter().find(|s| !registered.contains(s)) {
        return Err(ObjectError::UnknownSort(String::from(s.name())));
    }
    Ok(normalize_unchecked(t))
}

/// Normalization without the sort registry check.
pub fn normalize_unchecked(t: &ObjTerm) -> Polynomial {
    let nf = normal_term(t);
    read_polynomial(&nf).expect("normal forms of the object rewrite system are polynomials")
}

/// Right-bracketed term for a monomial: `A ⊗ (B ⊗ C)`, `1` when empty.
pub fn embed_monomial(m: &Monomial) -> ObjTerm {
    let mut iter = m.0.iter().rev();
    match iter.next() {
        None => ObjTerm::One,
        Some(last) => iter.fold(ObjTerm::Sort(last.clone()), |acc, s| {
            ObjTerm::tensor(ObjTerm::Sort(s.clone()), acc)
        }),
    }
}

/// Right-bracketed term for a polynomial: `U₁ ⊕ (U₂ ⊕ U₃)`, `0` when empty.
pub fn embed(p: &Polynomial) -> ObjTerm {
    let mut iter = p.0.iter().rev();
    match iter.next() {
        None => ObjTerm::Zero,
        Some(last) => iter.fold(embed_monomial(last), |acc, m| {
            ObjTerm::sum(embed_monomial(m), acc)
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: &str) -> ObjTerm {
        ObjTerm::sort(n)
    }

    fn mono(names: &[&str]) -> Monomial {
        Monomial::from_sorts(names.iter().map(|n| Sort::new(n)))
    }

    fn poly(ms: &[&[&str]]) -> Polynomial {
        Polynomial::from_monomials(ms.iter().map(|m| mono(m)))
    }

    fn all_sorts() -> BTreeSet<Sort> {
        ["A", "B", "C", "D"].iter().map(|n| Sort::new(n)).collect()
    }

    #[test]
    fn left_distributes_over_sort() {
        let t = ObjTerm::tensor(s("A"), ObjTerm::sum(s("B"), s("C")));
        assert_eq!(normalize(&t, &all_sorts()).unwrap(), poly(&[&["A", "B"], &["A", "C"]]));
    }

    #[test]
    fn units_and_annihilators() {
        let x = ObjTerm::sum(s("A"), s("B"));
        assert_eq!(
            normalize_unchecked(&ObjTerm::tensor(ObjTerm::Zero, x.clone())),
            Polynomial::zero()
        );
        assert_eq!(
            normalize_unchecked(&ObjTerm::tensor(x.clone(), ObjTerm::Zero)),
            Polynomial::zero()
        );
        assert_eq!(
            normalize_unchecked(&ObjTerm::tensor(ObjTerm::One, x.clone())),
            normalize_unchecked(&x)
        );
    }

    #[test]
    fn mixed_product_of_sums() {
        // hand rewrite: (A⊕1)⊗(B⊕C) → A(B⊕C) ⊕ 1(B⊕C) → AB ⊕ AC ⊕ B ⊕ C
        let t = ObjTerm::tensor(
            ObjTerm::sum(s("A"), ObjTerm::One),
            ObjTerm::sum(s("B"), s("C")),
        );
        assert_eq!(
            normalize_unchecked(&t),
            poly(&[&["A", "B"], &["A", "C"], &["B"], &["C"]])
        );
    }

    #[test]
    fn rejects_unregistered_sort() {
        let reg: BTreeSet<Sort> = [Sort::new("A")].into_iter().collect();
        let t = ObjTerm::tensor(s("A"), s("Q"));
        assert_eq!(normalize(&t, &reg), Err(ObjectError::UnknownSort("Q".into())));
    }

    #[test]
    fn poly_tensor_examples() {
        let p = poly(&[&["A"], &["B", "C"]]);
        let q = poly(&[&["D"], &[]]);
        assert_eq!(
            p.tensor(&q),
            poly(&[&["A", "D"], &["A"], &["B", "C", "D"], &["B", "C"]])
        );
        assert_eq!(mono(&["A"]).to_poly().tensor(&mono(&["B"]).to_poly()), poly(&[&["A", "B"]]));
        assert_eq!(p.tensor(&Polynomial::zero()), Polynomial::zero());
        assert_eq!(Polynomial::one().tensor(&p), p);
    }

    #[test]
    fn embed_is_right_bracketed() {
        let p = poly(&[&["A"], &["B", "C"]]);
        assert_eq!(
            embed(&p),
            ObjTerm::sum(s("A"), ObjTerm::tensor(s("B"), s("C")))
        );
        assert_eq!(embed(&Polynomial::zero()), ObjTerm::Zero);
        assert_eq!(embed(&Polynomial::one()), ObjTerm::One);
        let p = poly(&[&["A"], &[], &["C"]]);
        assert_eq!(
            embed(&p),
            ObjTerm::sum(s("A"), ObjTerm::sum(ObjTerm::One, s("C")))
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(poly(&[&["A", "B"], &[], &["C"]]).to_string(), "AB (+) 1 (+) C");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(mono(&["Bool", "Nat"]).to_string(), "Bool Nat");
    }
}
