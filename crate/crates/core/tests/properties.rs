mod common;

use common::props::{self, iterate_f, same_verdict};
use proptest::prelude::*;
use radlayer::fixtures;
use radlayer::homology::{injective_dimension, projective_dimension};
use radlayer::linalg::Matrix;
use radlayer::rep::Representation;
use radlayer::torsion::{algebra_layer_length, layer_length, layer_step, torsion_quotient, torsion_radical, SimpleSubset};

#[test]
fn shift_identity() {
    props::shift_identity();
}

#[test]
fn zero_layer_length_means_torsionfree() {
    props::zero_layer_length_means_torsionfree();
}

#[test]
fn algebra_layer_length_bounds_every_module() {
    props::algebra_layer_length_bounds_every_module();
}

#[test]
fn layer_length_of_direct_sum_is_max() {
    props::layer_length_of_direct_sum_is_max();
}

#[test]
fn torsion_pair_laws() {
    props::torsion_pair_laws();
}

#[test]
fn vanishing_layer_length_iff_all_simples() {
    props::vanishing_layer_length_iff_all_simples();
}

#[test]
fn duality_of_dimensions() {
    props::duality_of_dimensions();
}

#[test]
fn covers_are_minimal() {
    props::covers_are_minimal();
}

#[test]
fn torsion_matches_brute_force_over_f2() {
    props::torsion_matches_brute_force_over_f2();
}

// ---- randomized ----

fn kronecker_module(a: usize, b: usize, entries: &[i64]) -> Representation {
    let alg = common::load("KR");
    let f = alg.field();
    let x = Matrix::from_rows(f, b, a, entries[..a * b].iter().map(|&e| f.from_i64(e)).collect());
    let y = Matrix::from_rows(f, b, a, entries[a * b..2 * a * b].iter().map(|&e| f.from_i64(e)).collect());
    Representation::new_checked(alg, vec![a, b], vec![x, y]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_kronecker_modules(a in 1usize..4, b in 1usize..4, entries in prop::collection::vec(-2i64..3, 18), mask in 0u64..4) {
        let m = kronecker_module(a, b, &entries);
        let v = SimpleSubset::from_mask(2, mask);
        let n = layer_length(&v, &m).length;
        for j in 0..=n {
            prop_assert_eq!(layer_length(&v, &iterate_f(&v, &m, j)).length + j, n);
        }
        let t = torsion_radical(&v, &m).into_module();
        let tt = torsion_radical(&v, &t);
        prop_assert_eq!(tt.dims(), t.dims());
        let q = torsion_quotient(&v, &m);
        prop_assert!(torsion_radical(&v, &q).is_zero());
        prop_assert!(n <= algebra_layer_length(m.algebra(), &v));
        let pd = projective_dimension(&m, 10).unwrap().verdict;
        let id = injective_dimension(&m.dual(), 10).unwrap().verdict;
        prop_assert!(same_verdict(pd, id));
        prop_assert!(pd.finite().is_some_and(|d| d <= 1));
    }

    #[test]
    fn random_e41_subsets(mask in 0u64..32, w in 0usize..5) {
        let alg = fixtures::e41(4, 1).unwrap();
        let v = SimpleSubset::from_mask(5, mask);
        let p = Representation::projective(&alg, w).unwrap();
        let n = layer_length(&v, &p).length;
        prop_assert_eq!(layer_length(&v, &layer_step(&v, &p)).length + n.min(1), n);
        prop_assert!(n <= algebra_layer_length(&alg, &v));
    }
}
