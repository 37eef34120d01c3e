//! Finite-carrier Kleisli arrows as exact sparse matrices over a semiring.
//!
//! A morphism `X → Y` is a `|Y| × |X|` matrix whose entry `(y, x)` is the
//! weight of output `y` on input `x`. Composition `f ; g` is the product `g·f`.
//! Index encodings are fixed once: pairs are left-major (`x·|X'| + x'`) and
//! sums put the left block first.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::semiring::{Natural, Rational, Semiring};
use crate::theory::{AlgebraicTheory, OpSymbol, SigmaTerm, TheoryKind};

/// A finite carrier `{0, …, size-1}`, optionally with element labels.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FinCarrier {
    size: usize,
    labels: Option<Arc<[String]>>,
}

impl FinCarrier {
    pub fn new(size: usize) -> Self {
        FinCarrier { size, labels: None }
    }

    pub fn labelled(labels: Vec<String>) -> Self {
        FinCarrier {
            size: labels.len(),
            labels: Some(labels.into()),
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Label of element `i`, falling back to its index.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => i.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KError {
    #[error("cannot compose: codomain has {left} elements, domain has {right}")]
    ComposeMismatch { left: usize, right: usize },
    #[error("ragged matrix literal: row {row} has {found} entries, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("no weights for operation `{0}` in the model")]
    UnknownOp(String),
    #[error("operation `{op}` has arity {arity} but {weights} weights")]
    WeightArity {
        op: String,
        arity: usize,
        weights: usize,
    },
    #[error("entrywise operation on matrices of different shapes")]
    ShapeMismatch,
}

/// Sparse `rows × cols` matrix stored by columns; each column is sorted by
/// row index and holds no zero entries.
#[derive(Clone, PartialEq, Eq)]
pub struct KMorphism<S> {
    rows: usize,
    cols: Vec<Vec<(usize, S)>>,
}

impl<S: Semiring> KMorphism<S> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        KMorphism {
            rows,
            cols: alloc::vec![Vec::new(); cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn_perm(n, n, |x| x)
    }

    /// Deterministic map `x ↦ δ_{f(x)}`.
    pub fn from_fn_perm(cod: usize, dom: usize, f: impl Fn(usize) -> usize) -> Self {
        let cols = (0..dom)
            .map(|x| {
                let y = f(x);
                debug_assert!(y < cod);
                alloc::vec![(y, S::one())]
            })
            .collect();
        KMorphism { rows: cod, cols }
    }

    /// Builds a matrix from its columns, each a list of `(row, weight)` pairs.
    /// Repeated rows are summed; zeros are dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, S)>>) -> Self {
        let cols = columns
            .into_iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, S> = BTreeMap::new();
                for (r, w) in col {
                    assert!(r < rows, "row index out of range");
                    let e = acc.entry(r).or_insert_with(S::zero);
                    *e = e.add(&w);
                }
                acc.into_iter().filter(|(_, w)| !w.is_zero()).collect()
            })
            .collect();
        KMorphism { rows, cols }
    }

    /// Builds a matrix from dense rows; `cols` is needed when there are no rows.
    pub fn from_rows(rows: Vec<Vec<S>>, cols: usize) -> Result<Self, KError> {
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(KError::Ragged {
                    row: i,
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        let n = rows.len();
        let mut columns = alloc::vec![Vec::new(); cols];
        for (y, r) in rows.into_iter().enumerate() {
            for (x, w) in r.into_iter().enumerate() {
                if !w.is_zero() {
                    columns[x].push((y, w));
                }
            }
        }
        Ok(KMorphism {
            rows: n,
            cols: columns,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    /// `(cod, dom)`.
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols.len())
    }

    pub fn column(&self, x: usize) -> &[(usize, S)] {
        &self.cols[x]
    }

    pub fn get(&self, y: usize, x: usize) -> S {
        match self.cols[x].binary_search_by_key(&y, |(r, _)| *r) {
            Ok(i) => self.cols[x][i].1.clone(),
            Err(_) => S::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<S>> {
        let mut out = alloc::vec![alloc::vec![S::zero(); self.cols.len()]; self.rows];
        for (x, col) in self.cols.iter().enumerate() {
            for (y, w) in col {
                out[*y][x] = w.clone();
            }
        }
        out
    }

    /// `self ; g`, the matrix product `g · self`.
    pub fn then(&self, g: &KMorphism<S>) -> Result<KMorphism<S>, KError> {
        if self.rows != g.cols() {
            return Err(KError::ComposeMismatch {
                left: self.rows,
                right: g.cols(),
            });
        }
        let mut scratch: Vec<Option<S>> = alloc::vec![None; g.rows];
        let mut touched: Vec<usize> = Vec::new();
        let cols = self
            .cols
            .iter()
            .map(|col| {
                for (y, w) in col {
                    for (z, v) in &g.cols[*y] {
                        let prod = v.mul(w);
                        match &mut scratch[*z] {
                            Some(acc) => *acc = acc.add(&prod),
                            slot @ None => {
                                *slot = Some(prod);
                                touched.push(*z);
                            }
                        }
                    }
                }
                touched.sort_unstable();
                let out: Vec<(usize, S)> = touched
                    .drain(..)
                    .filter_map(|z| scratch[z].take().filter(|w| !w.is_zero()).map(|w| (z, w)))
                    .collect();
                out
            })
            .collect();
        Ok(KMorphism { rows: g.rows, cols })
    }

    /// Kronecker product under the left-major pair index.
    pub fn tensor(&self, g: &KMorphism<S>) -> KMorphism<S> {
        let (r1, c1) = self.shape();
        let (r2, c2) = g.shape();
        let mut cols = Vec::with_capacity(c1 * c2);
        for x in 0..c1 {
            for x2 in 0..c2 {
                let mut col = Vec::with_capacity(self.cols[x].len() * g.cols[x2].len());
                for (y, w) in &self.cols[x] {
                    for (y2, v) in &g.cols[x2] {
                        col.push((y * r2 + y2, w.mul(v)));
                    }
                }
                col.retain(|(_, w): &(usize, S)| !w.is_zero());
                cols.push(col);
            }
        }
        KMorphism {
            rows: r1 * r2,
            cols,
        }
    }

    /// Block diagonal sum, left block first.
    pub fn oplus(&self, g: &KMorphism<S>) -> KMorphism<S> {
        let mut cols = self.cols.clone();
        let shift = self.rows;
        cols.extend(
            g.cols
                .iter()
                .map(|c| c.iter().map(|(y, w)| (y + shift, w.clone())).collect()),
        );
        KMorphism {
            rows: self.rows + g.rows,
            cols,
        }
    }

    /// Entrywise sum.
    pub fn add(&self, g: &KMorphism<S>) -> Result<KMorphism<S>, KError> {
        if self.shape() != g.shape() {
            return Err(KError::ShapeMismatch);
        }
        let columns = self
            .cols
            .iter()
            .zip(&g.cols)
            .map(|(a, b)| a.iter().chain(b.iter()).cloned().collect())
            .collect();
        Ok(Self::from_columns(self.rows, columns))
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &S) -> KMorphism<S> {
        let cols = self
            .cols
            .iter()
            .map(|c| {
                c.iter()
                    .map(|(y, w)| (*y, s.mul(w)))
                    .filter(|(_, w)| !w.is_zero())
                    .collect()
            })
            .collect();
        KMorphism {
            rows: self.rows,
            cols,
        }
    }

    /// If every column is some `δ_y` with distinct `y` covering the rows,
    /// returns the bijection `x ↦ y`.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        if self.rows != self.cols.len() {
            return None;
        }
        let mut seen = alloc::vec![false; self.rows];
        let mut out = Vec::with_capacity(self.rows);
        for col in &self.cols {
            match col.as_slice() {
                [(y, w)] if *w == S::one() && !seen[*y] => {
                    seen[*y] = true;
                    out.push(*y);
                }
                _ => return None,
            }
        }
        Some(out)
    }

    /// Inverse of a permutation matrix, i.e. its transpose.
    pub fn transpose(&self) -> KMorphism<S> {
        let mut cols: Vec<Vec<(usize, S)>> = alloc::vec![Vec::new(); self.rows];
        for (x, col) in self.cols.iter().enumerate() {
            for (y, w) in col {
                cols[*y].push((x, w.clone()));
            }
        }
        KMorphism {
            rows: self.cols.len(),
            cols,
        }
    }

    /// First entry `(row, col)` where `self` and `other` differ, scanning
    /// rows then columns; `None` if equal. Shapes must agree.
    pub fn first_difference(&self, other: &KMorphism<S>) -> Option<(usize, usize, S, S)> {
        debug_assert_eq!(self.shape(), other.shape());
        let mut best: Option<(usize, usize)> = None;
        for x in 0..self.cols.len() {
            if self.cols[x] != other.cols[x] {
                let a = &self.cols[x];
                let b = &other.cols[x];
                let mut rows: Vec<usize> = a.iter().chain(b.iter()).map(|(y, _)| *y).collect();
                rows.sort_unstable();
                rows.dedup();
                for y in rows {
                    if self.get(y, x) != other.get(y, x) {
                        if best.is_none_or(|(by, bx)| (y, x) < (by, bx)) {
                            best = Some((y, x));
                        }
                        break;
                    }
                }
            }
        }
        best.map(|(y, x)| (y, x, self.get(y, x), other.get(y, x)))
    }

    pub fn map<T: Semiring>(&self, f: impl Fn(&S) -> T) -> KMorphism<T> {
        KMorphism {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|(y, w)| (*y, f(w)))
                        .filter(|(_, w)| !w.is_zero())
                        .collect()
                })
                .collect(),
        }
    }
}

impl KMorphism<Rational> {
    /// Column sums are at most one.
    pub fn is_substochastic(&self) -> bool {
        self.cols.iter().all(|c| {
            let total = Rational::sum(c.iter().map(|(_, w)| w));
            total.one_minus().is_some()
        })
    }
}

impl<S: Semiring> fmt::Display for KMorphism<S> {
    /// Nested rows, e.g. `[[2/3],[1/3]]`; a matrix without rows prints `[]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (y, row) in self.to_dense().iter().enumerate() {
            if y > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (x, w) in row.iter().enumerate() {
                if x > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{w}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl<S: Semiring> fmt::Debug for KMorphism<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} {}", self.rows, self.cols.len(), self)
    }
}

/// `σ⊗ : m·n → n·m`, `x·n + y ↦ y·m + x`.
pub fn sym_t<S: Semiring>(m: usize, n: usize) -> KMorphism<S> {
    KMorphism::from_fn_perm(m * n, m * n, |i| (i % n) * m + i / n)
}

/// `σ⊕ : m + n → n + m`, swapping the two blocks.
pub fn sym_p<S: Semiring>(m: usize, n: usize) -> KMorphism<S> {
    KMorphism::from_fn_perm(m + n, m + n, |i| if i < m { n + i } else { i - m })
}

/// `δˡ : X⊗(Y⊕Z) → X⊗Y ⊕ X⊗Z`.
pub fn dl<S: Semiring>(x: usize, y: usize, z: usize) -> KMorphism<S> {
    let n = x * (y + z);
    KMorphism::from_fn_perm(n, n, |i| {
        let (a, b) = (i / (y + z), i % (y + z));
        if b < y {
            a * y + b
        } else {
            x * y + a * z + (b - y)
        }
    })
}

pub fn dl_inv<S: Semiring>(x: usize, y: usize, z: usize) -> KMorphism<S> {
    dl::<S>(x, y, z).transpose()
}

/// `δʳ : (X⊕Y)⊗Z → X⊗Z ⊕ Y⊗Z`; the identity under the fixed encodings.
pub fn dr<S: Semiring>(x: usize, y: usize, z: usize) -> KMorphism<S> {
    KMorphism::identity((x + y) * z)
}

pub fn dr_inv<S: Semiring>(x: usize, y: usize, z: usize) -> KMorphism<S> {
    dr::<S>(x, y, z).transpose()
}

/// `n → n·n`, `x ↦ δ_{(x,x)}`.
pub fn copier<S: Semiring>(n: usize) -> KMorphism<S> {
    KMorphism::from_fn_perm(n * n, n, |x| x * n + x)
}

/// `n → 1`, all ones.
pub fn discharger<S: Semiring>(n: usize) -> KMorphism<S> {
    KMorphism::from_fn_perm(1, n, |_| 0)
}

/// `n + n → n`, two identity blocks.
pub fn codiag<S: Semiring>(n: usize) -> KMorphism<S> {
    KMorphism::from_fn_perm(n, 2 * n, |i| i % n.max(1))
}

/// `0 → n`.
pub fn cobang<S: Semiring>(n: usize) -> KMorphism<S> {
    KMorphism::zero(n, 0)
}

/// `⟨f⟩ : n → arity·n`, block `j` equal to `wⱼ · I`.
pub fn op_matrix<S: Semiring>(weights: &[S], n: usize) -> KMorphism<S> {
    let columns = (0..n)
        .map(|x| {
            weights
                .iter()
                .enumerate()
                .filter(|(_, w)| !w.is_zero())
                .map(|(j, w)| (j * n + x, w.clone()))
                .collect()
        })
        .collect();
    KMorphism {
        rows: weights.len() * n,
        cols: columns,
    }
}

/// Weights `w(f) ∈ Sⁿ` for each operation of a theory.
#[derive(Clone, Debug)]
pub struct TheoryModel<S> {
    pub theory: AlgebraicTheory,
    weights: BTreeMap<OpSymbol, Vec<S>>,
}

/// An equation whose two sides evaluate to different weight vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoundnessFailure<S> {
    pub equation: String,
    pub lhs: Vec<S>,
    pub rhs: Vec<S>,
}

impl<S: Semiring> TheoryModel<S> {
    /// Builds a model from explicit weights; every operation must get
    /// exactly `arity` weights.
    pub fn new(theory: AlgebraicTheory, weights: BTreeMap<OpSymbol, Vec<S>>) -> Result<Self, KError> {
        for op in theory.ops() {
            match weights.get(op) {
                None => return Err(KError::UnknownOp(op.to_string())),
                Some(w) if w.len() != op.arity() => {
                    return Err(KError::WeightArity {
                        op: op.to_string(),
                        arity: op.arity(),
                        weights: w.len(),
                    })
                }
                _ => {}
            }
        }
        Ok(TheoryModel { theory, weights })
    }

    pub fn weights(&self, op: &OpSymbol) -> Result<&[S], KError> {
        self.weights
            .get(op)
            .map(Vec::as_slice)
            .ok_or_else(|| KError::UnknownOp(op.to_string()))
    }

    pub fn op(&self, op: &OpSymbol, n: usize) -> Result<KMorphism<S>, KError> {
        Ok(op_matrix(self.weights(op)?, n))
    }

    /// `evalVector(t) ∈ Sⁿ`: `xᵢ ↦ eᵢ`, `f(t₁..tₘ) ↦ Σⱼ wⱼ(f)·evalVector(tⱼ)`.
    pub fn eval_vector(&self, t: &SigmaTerm, n: usize) -> Result<Vec<S>, KError> {
        match t {
            SigmaTerm::Var(i) => {
                let mut v = alloc::vec![S::zero(); n];
                v[*i - 1] = S::one();
                Ok(v)
            }
            SigmaTerm::App(op, args) => {
                let w = self.weights(op)?;
                let mut acc = alloc::vec![S::zero(); n];
                for (wj, tj) in w.iter().zip(args) {
                    let v = self.eval_vector(tj, n)?;
                    for (a, b) in acc.iter_mut().zip(v) {
                        *a = a.add(&wj.mul(&b));
                    }
                }
                Ok(acc)
            }
        }
    }

    /// Checks every equation of the theory as a weight-vector identity.
    pub fn soundness(&self) -> Result<Vec<SoundnessFailure<S>>, KError> {
        let mut failures = Vec::new();
        for e in self.theory.equations() {
            let l = self.eval_vector(&e.lhs, e.context)?;
            let r = self.eval_vector(&e.rhs, e.context)?;
            if l != r {
                failures.push(SoundnessFailure {
                    equation: e.to_string(),
                    lhs: l,
                    rhs: r,
                });
            }
        }
        Ok(failures)
    }

    /// Registers a new operation instance together with its weights.
    pub fn add_op(&mut self, op: OpSymbol, w: Vec<S>) -> Result<(), KError> {
        if w.len() != op.arity() {
            return Err(KError::WeightArity {
                op: op.to_string(),
                arity: op.arity(),
                weights: w.len(),
            });
        }
        self.theory
            .add_op(op.clone())
            .map_err(|_| KError::UnknownOp(op.to_string()))?;
        self.weights.insert(op, w);
        Ok(())
    }
}

impl TheoryModel<Rational> {
    /// Subdistribution model: `w(+_p) = (p, 1−p)`, `w(⋆) = ()`.
    pub fn pca(theory: AlgebraicTheory) -> Result<Self, KError> {
        if theory.kind != TheoryKind::Pca {
            return Err(KError::UnknownOp(theory.name.clone()));
        }
        let weights = theory
            .ops()
            .map(|op| (op.clone(), pca_weights(op)))
            .collect();
        Self::new(theory, weights)
    }

    /// Adds `+_p` with its standard weights.
    pub fn add_convex(&mut self, p: Rational) -> Result<(), KError> {
        let op = OpSymbol::convex(p);
        let w = pca_weights(&op);
        self.add_op(op, w)
    }
}

fn pca_weights(op: &OpSymbol) -> Vec<Rational> {
    match op.params() {
        [p] => alloc::vec![p.clone(), p.one_minus().expect("p in (0,1)")],
        _ => Vec::new(),
    }
}

impl TheoryModel<Natural> {
    /// Multiset model: `w(+) = (1, 1)`, `w(0) = ()`.
    pub fn cm(theory: AlgebraicTheory) -> Result<Self, KError> {
        if theory.kind != TheoryKind::Cm {
            return Err(KError::UnknownOp(theory.name.clone()));
        }
        let weights = theory
            .ops()
            .map(|op| (op.clone(), alloc::vec![Natural::one(); op.arity()]))
            .collect();
        Self::new(theory, weights)
    }
}
