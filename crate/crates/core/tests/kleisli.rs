//! Sparse Kleisli matrices against dense arithmetic written out here.

use proptest::prelude::*;
use tapediag_core::kleisli::{self, KMorphism};
use tapediag_core::semiring::{Rational, Semiring};

type M = KMorphism<Rational>;
type Dense = Vec<Vec<Rational>>;

fn rat() -> impl Strategy<Value = Rational> {
    (0u64..4, 1u64..4).prop_map(|(n, d)| Rational::new(n, d))
}

fn mat(rows: usize, cols: usize) -> impl Strategy<Value = M> {
    prop::collection::vec(prop::collection::vec(rat(), cols), rows)
        .prop_map(move |rs| KMorphism::from_rows(rs, cols).unwrap())
}

fn mul(a: &Dense, b: &Dense, inner: usize, n: usize) -> Dense {
    // a: m×k, b: k×n, returns a·b
    let m = a.len();
    (0..m)
        .map(|i| {
            (0..n)
                .map(|j| (0..inner).fold(Rational::zero(), |acc, l| acc.add(&a[i][l].mul(&b[l][j]))))
                .collect()
        })
        .collect()
}

fn kron(a: &Dense, b: &Dense, acols: usize, bcols: usize) -> Dense {
    let mut out = vec![vec![Rational::zero(); acols * bcols]; a.len() * b.len()];
    for (i, ar) in a.iter().enumerate() {
        for (k, br) in b.iter().enumerate() {
            for j in 0..acols {
                for l in 0..bcols {
                    out[i * b.len() + k][j * bcols + l] = ar[j].mul(&br[l]);
                }
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn composition_is_matrix_product(
        (f, g) in (0usize..4, 0usize..4, 0usize..4)
            .prop_flat_map(|(x, y, z)| (mat(y, x), mat(z, y)))
    ) {
        let fg = f.then(&g).unwrap();
        prop_assert_eq!(fg.to_dense(), mul(&g.to_dense(), &f.to_dense(), f.rows(), f.cols()));
    }

    #[test]
    fn tensor_is_left_major_kronecker(
        (f, g) in (0usize..3, 0usize..3, 0usize..3, 0usize..3)
            .prop_flat_map(|(a, b, c, d)| (mat(a, b), mat(c, d)))
    ) {
        let t = f.tensor(&g);
        prop_assert_eq!(t.to_dense(), kron(&f.to_dense(), &g.to_dense(), f.cols(), g.cols()));
    }

    #[test]
    fn dl_is_natural(
        (f, g, h) in (1usize..3, 1usize..3, 0usize..3, 0usize..3, 0usize..3, 0usize..3)
            .prop_flat_map(|(a, b, c, d, e, k)| (mat(b, a), mat(d, c), mat(k, e)))
    ) {
        // (f ⊗ (g ⊕ h)) ; δˡ = δˡ ; ((f ⊗ g) ⊕ (f ⊗ h))
        let lhs = f.tensor(&g.oplus(&h))
            .then(&kleisli::dl(f.rows(), g.rows(), h.rows())).unwrap();
        let rhs = kleisli::dl::<Rational>(f.cols(), g.cols(), h.cols())
            .then(&f.tensor(&g).oplus(&f.tensor(&h))).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn structural_maps_are_permutations() {
    for x in 0..4 {
        for y in 0..4 {
            assert!(kleisli::sym_t::<Rational>(x, y).as_permutation().is_some());
            assert!(kleisli::sym_p::<Rational>(x, y).as_permutation().is_some());
            for z in 0..4 {
                let d = kleisli::dl::<Rational>(x, y, z);
                assert!(d.as_permutation().is_some());
                assert!(kleisli::dr::<Rational>(x, y, z).as_permutation().is_some());
                let back = d.then(&kleisli::dl_inv(x, y, z)).unwrap();
                assert_eq!(back, KMorphism::identity(x * (y + z)));
            }
        }
    }
}

#[test]
fn symmetry_matches_pair_swap() {
    // σ(i, j) = (j, i) on left-major pairs
    let s = kleisli::sym_t::<Rational>(2, 3).to_dense();
    for i in 0..2 {
        for j in 0..3 {
            assert_eq!(s[j * 2 + i][i * 3 + j], Rational::one());
        }
    }
}
