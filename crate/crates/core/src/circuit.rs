//! Circuits: the inner layer of tape diagrams, string diagrams over a
//! monoidal signature with a copier and discharger on every sort.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

use crate::objects::{Monomial, Sort};

/// A generator `s : ar → coar`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenDecl {
    pub name: Arc<str>,
    pub ar: Monomial,
    pub coar: Monomial,
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MonSignature {
    sorts: BTreeSet<Sort>,
    gens: BTreeMap<Arc<str>, GenDecl>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CircuitError {
    #[error("unknown generator `{0}`")]
    UnknownGen(String),
    #[error("unknown sort `{0}`")]
    UnknownSort(String),
    #[error("duplicate declaration of `{0}`")]
    Duplicate(String),
    #[error("cannot compose circuits: `{left}` does not match `{right}`")]
    Mismatch { left: String, right: String },
}

impl MonSignature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_sort(&mut self, s: Sort) -> Result<(), CircuitError> {
        if !self.sorts.insert(s.clone()) {
            return Err(CircuitError::Duplicate(String::from(s.name())));
        }
        Ok(())
    }

    pub fn add_gen(&mut self, name: &str, ar: Monomial, coar: Monomial) -> Result<(), CircuitError> {
        for s in ar.sorts().iter().chain(coar.sorts()) {
            if !self.sorts.contains(s) {
                return Err(CircuitError::UnknownSort(String::from(s.name())));
            }
        }
        let key: Arc<str> = Arc::from(name);
        if self.gens.contains_key(&key) {
            return Err(CircuitError::Duplicate(String::from(name)));
        }
        self.gens.insert(
            key.clone(),
            GenDecl {
                name: key,
                ar,
                coar,
            },
        );
        Ok(())
    }

    pub fn sorts(&self) -> &BTreeSet<Sort> {
        &self.sorts
    }

    pub fn has_sort(&self, s: &Sort) -> bool {
        self.sorts.contains(s)
    }

    pub fn gen(&self, name: &str) -> Option<&GenDecl> {
        self.gens.get(name)
    }

    pub fn gens(&self) -> impl Iterator<Item = &GenDecl> {
        self.gens.values()
    }

    pub fn check_monomial(&self, u: &Monomial) -> Result<(), CircuitError> {
        match u.sorts().iter().find(|s| !self.sorts.contains(*s)) {
            Some(s) => Err(CircuitError::UnknownSort(String::from(s.name()))),
            None => Ok(()),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum CircuitTerm {
    Id(Sort),
    IdOne,
    Gen(Arc<str>),
    Sym(Sort, Sort),
    Seq(Box<CircuitTerm>, Box<CircuitTerm>),
    Tensor(Box<CircuitTerm>, Box<CircuitTerm>),
    Copier(Sort),
    Discharger(Sort),
}

impl CircuitTerm {
    pub fn gen(name: &str) -> Self {
        CircuitTerm::Gen(Arc::from(name))
    }

    pub fn seq(a: CircuitTerm, b: CircuitTerm) -> Self {
        CircuitTerm::Seq(Box::new(a), Box::new(b))
    }

    pub fn tensor(a: CircuitTerm, b: CircuitTerm) -> Self {
        CircuitTerm::Tensor(Box::new(a), Box::new(b))
    }

    /// Left-nested tensor of a list; `id_1` when empty.
    pub fn tensor_all<I: IntoIterator<Item = CircuitTerm>>(items: I) -> Self {
        items
            .into_iter()
            .reduce(CircuitTerm::tensor)
            .unwrap_or(CircuitTerm::IdOne)
    }

    /// `(dom, cod)`.
    pub fn type_of(&self, sig: &MonSignature) -> Result<(Monomial, Monomial), CircuitError> {
        let known = |s: &Sort| {
            if sig.has_sort(s) {
                Ok(())
            } else {
                Err(CircuitError::UnknownSort(String::from(s.name())))
            }
        };
        match self {
            CircuitTerm::Id(a) => {
                known(a)?;
                Ok((Monomial::sort(a.clone()), Monomial::sort(a.clone())))
            }
            CircuitTerm::IdOne => Ok((Monomial::one(), Monomial::one())),
            CircuitTerm::Gen(name) => sig
                .gen(name)
                .map(|g| (g.ar.clone(), g.coar.clone()))
                .ok_or_else(|| CircuitError::UnknownGen(String::from(&**name))),
            CircuitTerm::Sym(a, b) => {
                known(a)?;
                known(b)?;
                Ok((
                    Monomial::from_sorts([a.clone(), b.clone()]),
                    Monomial::from_sorts([b.clone(), a.clone()]),
                ))
            }
            CircuitTerm::Seq(c, d) => {
                let (u, v) = c.type_of(sig)?;
                let (v2, w) = d.type_of(sig)?;
                if v != v2 {
                    return Err(CircuitError::Mismatch {
                        left: alloc::format!("{v}"),
                        right: alloc::format!("{v2}"),
                    });
                }
                Ok((u, w))
            }
            CircuitTerm::Tensor(c, d) => {
                let (u1, v1) = c.type_of(sig)?;
                let (u2, v2) = d.type_of(sig)?;
                Ok((u1.concat(&u2), v1.concat(&v2)))
            }
            CircuitTerm::Copier(a) => {
                known(a)?;
                Ok((
                    Monomial::sort(a.clone()),
                    Monomial::from_sorts([a.clone(), a.clone()]),
                ))
            }
            CircuitTerm::Discharger(a) => {
                known(a)?;
                Ok((Monomial::sort(a.clone()), Monomial::one()))
            }
        }
    }

    /// Generator names occurring in the term.
    pub fn gens(&self) -> BTreeSet<Arc<str>> {
        let mut out = BTreeSet::new();
        self.collect_gens(&mut out);
        out
    }

    fn collect_gens(&self, out: &mut BTreeSet<Arc<str>>) {
        match self {
            CircuitTerm::Gen(n) => {
                out.insert(n.clone());
            }
            CircuitTerm::Seq(a, b) | CircuitTerm::Tensor(a, b) => {
                a.collect_gens(out);
                b.collect_gens(out);
            }
            _ => {}
        }
    }
}

impl fmt::Display for CircuitTerm {
    /// Fully parenthesized; the frontend printer is the minimal one.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CircuitTerm::Id(a) => write!(f, "id@{a}"),
            CircuitTerm::IdOne => f.write_str("id@1"),
            CircuitTerm::Gen(n) => f.write_str(n),
            CircuitTerm::Sym(a, b) => write!(f, "sym@{a},{b}"),
            CircuitTerm::Seq(a, b) => write!(f, "({a} ; {b})"),
            CircuitTerm::Tensor(a, b) => write!(f, "({a} (x) {b})"),
            CircuitTerm::Copier(a) => write!(f, "copy@{a}"),
            CircuitTerm::Discharger(a) => write!(f, "del@{a}"),
        }
    }
}

impl fmt::Debug for CircuitTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `id_U` as a tensor of sort identities.
pub fn id(u: &Monomial) -> CircuitTerm {
    CircuitTerm::tensor_all(u.sorts().iter().cloned().map(CircuitTerm::Id))
}

/// `σ_{U,V} : UV → VU`.
pub fn sym(u: &Monomial, v: &Monomial) -> CircuitTerm {
    if v.is_one() {
        return id(u);
    }
    if u.is_one() {
        return id(v);
    }
    if u.len() >= 2 {
        // σ_{AU',W} = (id_A ⊗ σ_{U',W}) ; (σ_{A,W} ⊗ id_U')
        let (a, rest) = u.split_first().expect("nonempty");
        let a_m = Monomial::sort(a.clone());
        return CircuitTerm::seq(
            CircuitTerm::tensor(CircuitTerm::Id(a), sym(&rest, v)),
            CircuitTerm::tensor(sym(&a_m, v), id(&rest)),
        );
    }
    if v.len() >= 2 {
        // σ_{U,BW'} = (σ_{U,B} ⊗ id_W') ; (id_B ⊗ σ_{U,W'})
        let (b, rest) = v.split_first().expect("nonempty");
        let b_m = Monomial::sort(b.clone());
        return CircuitTerm::seq(
            CircuitTerm::tensor(sym(u, &b_m), id(&rest)),
            CircuitTerm::tensor(CircuitTerm::Id(b), sym(u, &rest)),
        );
    }
    CircuitTerm::Sym(u.sorts()[0].clone(), v.sorts()[0].clone())
}

/// `copier_U : U → UU`.
pub fn copier(u: &Monomial) -> CircuitTerm {
    match u.split_first() {
        None => CircuitTerm::IdOne,
        Some((a, rest)) if rest.is_one() => CircuitTerm::Copier(a),
        Some((a, rest)) => {
            let a_m = Monomial::sort(a.clone());
            CircuitTerm::seq(
                CircuitTerm::tensor(CircuitTerm::Copier(a.clone()), copier(&rest)),
                CircuitTerm::tensor(
                    CircuitTerm::tensor(CircuitTerm::Id(a), sym(&a_m, &rest)),
                    id(&rest),
                ),
            )
        }
    }
}

/// `discharger_U : U → 1`.
pub fn discharger(u: &Monomial) -> CircuitTerm {
    CircuitTerm::tensor_all(u.sorts().iter().cloned().map(CircuitTerm::Discharger))
}
