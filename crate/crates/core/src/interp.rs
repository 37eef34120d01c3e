//! Interpretations of a monoidal signature and the induced semantics of
//! circuits and tapes as Kleisli matrices.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::circuit::{CircuitTerm, MonSignature};
use crate::kleisli::{self, FinCarrier, KError, KMorphism, TheoryModel};
use crate::objects::{Monomial, Polynomial, Sort};
use crate::semiring::Semiring;
use crate::tape::TapeTerm;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("sort `{0}` has no carrier")]
    UnknownSort(String),
    #[error("generator `{0}` has no matrix")]
    UnknownGen(String),
    #[error("generator `{name}` should be {expected_rows}x{expected_cols}, its matrix is {rows}x{cols}")]
    GenShape {
        name: String,
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("model is unsound for `{0}`")]
    Unsound(String),
    #[error(transparent)]
    Kleisli(#[from] KError),
}

/// Carrier of a polynomial: one block per monomial, tuples left-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCarrier {
    pub sizes: Vec<usize>,
    pub offsets: Vec<usize>,
    pub total: usize,
}

impl PolyCarrier {
    /// Global index of the element at `offset` within block `i`.
    pub fn index(&self, block: usize, offset: usize) -> usize {
        debug_assert!(offset < self.sizes[block]);
        self.offsets[block] + offset
    }

    /// `(block, offset)` of a global index.
    pub fn locate(&self, global: usize) -> (usize, usize) {
        let block = match self.offsets.binary_search(&global) {
            Ok(mut b) => {
                // skip empty blocks sharing the same offset
                while self.sizes[b] == 0 {
                    b += 1;
                }
                b
            }
            Err(b) => b - 1,
        };
        (block, global - self.offsets[block])
    }
}

#[derive(Clone)]
pub struct Interpretation<S> {
    sorts: BTreeMap<Sort, FinCarrier>,
    gens: BTreeMap<Arc<str>, KMorphism<S>>,
    pub model: TheoryModel<S>,
}

impl<S: Semiring> Interpretation<S> {
    pub fn new(model: TheoryModel<S>) -> Self {
        Interpretation {
            sorts: BTreeMap::new(),
            gens: BTreeMap::new(),
            model,
        }
    }

    pub fn set_sort(&mut self, s: Sort, c: FinCarrier) {
        self.sorts.insert(s, c);
    }

    pub fn set_gen(&mut self, name: &str, m: KMorphism<S>) {
        self.gens.insert(Arc::from(name), m);
    }

    pub fn with_sort(mut self, s: Sort, c: FinCarrier) -> Self {
        self.set_sort(s, c);
        self
    }

    pub fn with_generator(mut self, name: &str, m: KMorphism<S>) -> Self {
        self.set_gen(name, m);
        self
    }

    pub fn sort_carrier(&self, s: &Sort) -> Result<&FinCarrier, EvalError> {
        self.sorts
            .get(s)
            .ok_or_else(|| EvalError::UnknownSort(String::from(s.name())))
    }

    pub fn sorts(&self) -> impl Iterator<Item = (&Sort, &FinCarrier)> {
        self.sorts.iter()
    }

    pub fn gen_matrix(&self, name: &str) -> Option<&KMorphism<S>> {
        self.gens.get(name)
    }

    pub fn gens(&self) -> impl Iterator<Item = (&str, &KMorphism<S>)> {
        self.gens.iter().map(|(k, v)| (&**k, v))
    }

    /// `∏ |α(A)|` over the sorts of `u`.
    pub fn mono_size(&self, u: &Monomial) -> Result<usize, EvalError> {
        u.sorts()
            .iter()
            .try_fold(1usize, |acc, s| Ok(acc * self.sort_carrier(s)?.size()))
    }

    pub fn carrier_of(&self, p: &Polynomial) -> Result<PolyCarrier, EvalError> {
        let sizes = p
            .monomials()
            .iter()
            .map(|u| self.mono_size(u))
            .collect::<Result<Vec<_>, _>>()?;
        let mut offsets = Vec::with_capacity(sizes.len());
        let mut total = 0;
        for s in &sizes {
            offsets.push(total);
            total += s;
        }
        Ok(PolyCarrier {
            sizes,
            offsets,
            total,
        })
    }

    pub fn size_of(&self, p: &Polynomial) -> Result<usize, EvalError> {
        Ok(self.carrier_of(p)?.total)
    }

    /// Checks generator shapes against the signature and the model's soundness.
    pub fn validate(&self, sig: &MonSignature) -> Result<(), EvalError> {
        for g in sig.gens() {
            let m = self
                .gens
                .get(&g.name)
                .ok_or_else(|| EvalError::UnknownGen(String::from(&*g.name)))?;
            let (rows, cols) = (self.mono_size(&g.coar)?, self.mono_size(&g.ar)?);
            if m.shape() != (rows, cols) {
                return Err(EvalError::GenShape {
                    name: String::from(&*g.name),
                    expected_rows: rows,
                    expected_cols: cols,
                    rows: m.rows(),
                    cols: m.cols(),
                });
            }
        }
        if let Some(f) = self.model.soundness()?.into_iter().next() {
            return Err(EvalError::Unsound(f.equation));
        }
        Ok(())
    }

    pub fn eval_circuit(&self, c: &CircuitTerm) -> Result<KMorphism<S>, EvalError> {
        let size = |s: &Sort| Ok::<usize, EvalError>(self.sort_carrier(s)?.size());
        Ok(match c {
            CircuitTerm::Id(a) => KMorphism::identity(size(a)?),
            CircuitTerm::IdOne => KMorphism::identity(1),
            CircuitTerm::Gen(name) => self
                .gens
                .get(name)
                .cloned()
                .ok_or_else(|| EvalError::UnknownGen(String::from(&**name)))?,
            CircuitTerm::Sym(a, b) => kleisli::sym_t(size(a)?, size(b)?),
            CircuitTerm::Seq(x, y) => self.eval_circuit(x)?.then(&self.eval_circuit(y)?)?,
            CircuitTerm::Tensor(x, y) => self.eval_circuit(x)?.tensor(&self.eval_circuit(y)?),
            CircuitTerm::Copier(a) => kleisli::copier(size(a)?),
            CircuitTerm::Discharger(a) => kleisli::discharger(size(a)?),
        })
    }

    pub fn eval_tape(&self, t: &TapeTerm) -> Result<KMorphism<S>, EvalError> {
        Ok(match t {
            TapeTerm::IdMon(u) => KMorphism::identity(self.mono_size(u)?),
            TapeTerm::IdZero => KMorphism::identity(0),
            TapeTerm::Circuit(c) => self.eval_circuit(c)?,
            TapeTerm::SymPlus(u, v) => kleisli::sym_p(self.mono_size(u)?, self.mono_size(v)?),
            TapeTerm::Seq(a, b) => self.eval_tape(a)?.then(&self.eval_tape(b)?)?,
            TapeTerm::Sum(a, b) => self.eval_tape(a)?.oplus(&self.eval_tape(b)?),
            TapeTerm::Cobang(u) => kleisli::cobang(self.mono_size(u)?),
            TapeTerm::Codiag(u) => kleisli::codiag(self.mono_size(u)?),
            TapeTerm::Op(f, u) => self.model.op(f, self.mono_size(u)?)?,
        })
    }

    /// The bijection `β_{P,R}` from left-major pairs over `|P|·|R|` to the
    /// carrier of the polynomial `P ⊗ R`.
    pub fn tensor_bijection(&self, p: &Polynomial, r: &Polynomial) -> Result<KMorphism<S>, EvalError> {
        let cp = self.carrier_of(p)?;
        let cr = self.carrier_of(r)?;
        let cpr = self.carrier_of(&p.tensor(r))?;
        let n = cp.total * cr.total;
        let rn = r.len();
        Ok(KMorphism::from_fn_perm(n, n, |k| {
            let (x, y) = (k / cr.total, k % cr.total);
            let (i, a) = cp.locate(x);
            let (j, b) = cr.locate(y);
            cpr.index(i * rn + j, a * cr.sizes[j] + b)
        }))
    }

    /// `x ↦ δ_{(x,x)}` on the carrier of `P`, landing in the carrier of `P ⊗ P`.
    pub fn canonical_copy(&self, p: &Polynomial) -> Result<KMorphism<S>, EvalError> {
        let n = self.size_of(p)?;
        Ok(kleisli::copier::<S>(n).then(&self.tensor_bijection(p, p)?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semiring::Rational;
    use crate::theory;

    fn r(n: u64, d: u64) -> Rational {
        Rational::new(n, d)
    }

    fn interp() -> Interpretation<Rational> {
        let model = TheoryModel::pca(theory::pca(&[r(1, 3)]).unwrap()).unwrap();
        let and = KMorphism::from_fn_perm(2, 4, |k| (k / 2) & (k % 2));
        Interpretation::new(model)
            .with_sort(Sort::new("A"), FinCarrier::new(2))
            .with_sort(Sort::new("B"), FinCarrier::new(3))
            .with_generator("AND", and)
    }

    fn mono(s: &str) -> Monomial {
        Monomial::from_sorts(s.chars().map(|c| Sort::new(c.encode_utf8(&mut [0; 4]))))
    }

    #[test]
    fn carriers() {
        let i = interp();
        let c = i.carrier_of(&Polynomial::from_monomials([mono("A"), mono("B")])).unwrap();
        assert_eq!((c.total, c.offsets.clone()), (5, alloc::vec![0, 2]));
        assert_eq!(i.mono_size(&mono("AB")).unwrap(), 6);
        assert_eq!(i.size_of(&Polynomial::zero()).unwrap(), 0);
        let c = i
            .carrier_of(&Polynomial::from_monomials([mono(""), mono(""), mono("A")]))
            .unwrap();
        assert_eq!(c.locate(1), (1, 0));
        assert_eq!(c.locate(3), (2, 1));
    }

    #[test]
    fn locate_skips_empty_blocks() {
        let c = PolyCarrier {
            sizes: alloc::vec![2, 0, 0, 3],
            offsets: alloc::vec![0, 2, 2, 2],
            total: 5,
        };
        assert_eq!(c.locate(2), (3, 0));
        assert_eq!(c.locate(1), (0, 1));
    }

    #[test]
    fn evaluates_circuits() {
        let i = interp();
        let and = i.eval_circuit(&CircuitTerm::gen("AND")).unwrap();
        assert_eq!(and.to_dense()[1], alloc::vec![r(0, 1), r(0, 1), r(0, 1), r(1, 1)]);
        assert_eq!(i.eval_circuit(&CircuitTerm::IdOne).unwrap(), KMorphism::identity(1));
        let not = KMorphism::from_fn_perm(2, 2, |x| 1 - x);
        let i = i.with_generator("NOT", not);
        let a = Sort::new("A");
        let c = CircuitTerm::seq(
            CircuitTerm::Copier(a.clone()),
            CircuitTerm::tensor(CircuitTerm::gen("NOT"), CircuitTerm::Id(a)),
        );
        // x ↦ (¬x, x): 0 ↦ (1,0) = 2, 1 ↦ (0,1) = 1
        assert_eq!(
            i.eval_circuit(&c).unwrap(),
            KMorphism::from_fn_perm(4, 2, |x| if x == 0 { 2 } else { 1 })
        );
    }

    #[test]
    fn id_zero_is_empty() {
        assert_eq!(interp().eval_tape(&TapeTerm::IdZero).unwrap().shape(), (0, 0));
    }

    #[test]
    fn tensor_bijection_on_monomials_is_identity() {
        let i = interp();
        let (a, b) = (mono("A").to_poly(), mono("B").to_poly());
        assert_eq!(i.tensor_bijection(&a, &b).unwrap(), KMorphism::identity(6));
    }

    #[test]
    fn tensor_bijection_on_sums() {
        let i = interp();
        let p = Polynomial::from_monomials([mono("A"), mono("B")]);
        let q = Polynomial::from_monomials([mono(""), mono("A")]);
        // P⊗Q = A ⊕ AA ⊕ B ⊕ BA with offsets 0, 2, 6, 9
        let beta = i.tensor_bijection(&p, &q).unwrap().as_permutation().unwrap();
        // p = 1 (A, a=1), q = 2 (A block, b=1): AA block, 1·2+1 = 3, global 5
        assert_eq!(beta[3 + 2], 5);
        // p = 3 (B, a=1), q = 0 (1 block): B block offset 6 + 1
        assert_eq!(beta[3 * 3], 7);
    }
}
