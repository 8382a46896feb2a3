//! Cross-module checks through the public API.

use std::sync::Arc;

use gerst_core::algebra::FiniteAlgebra;
use gerst_core::chains::{cellular_complex, evaluate, evaluation_defect, same_homology, subcomplex_iprime};
use gerst_core::cosimplicial::{Cosimplicial, EndomorphismOperad};
use gerst_core::formula::{enumerate, parse};
use gerst_core::hochschild::{cohomology, Cochain, Complex};
use gerst_core::posets::{enumerate_tn, nerve_homology, order_pairs};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn algebra(name: &str) -> Arc<FiniteAlgebra> {
    Arc::new(FiniteAlgebra::builtin(name).unwrap())
}

#[test]
fn cells_and_nerve_agree_for_three_symbols() {
    let cells = cellular_complex(3).unwrap();
    let h = cells.homology().unwrap();
    assert!(same_homology(&h, &nerve_homology(3).unwrap()));
    assert_eq!(cells.euler_characteristic() as i128, enumerate_tn(3).unwrap().euler_characteristic());
    let counted: usize = (0..=2).map(|d| enumerate(3, Some(d)).unwrap().len()).sum();
    assert_eq!(cells.ranks().iter().sum::<usize>(), counted);
}

#[test]
fn every_iprime_subcomplex_is_acyclic_for_three_symbols() {
    for op in order_pairs(3).unwrap() {
        let h = subcomplex_iprime(3, &op).unwrap().reduced_homology().unwrap();
        assert!(h.iter().all(|g| g.is_zero()), "{op:?}");
    }
}

#[test]
fn basic_cells_evaluate_to_basic_operations() {
    let alg = algebra("mat2(3)");
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let x = Cochain::random(&alg, 2, &mut rng).unwrap();
    let y = Cochain::random(&alg, 1, &mut rng).unwrap();
    let xs = [x.clone(), y.clone()];
    assert_eq!(evaluate(&parse("1(2)").unwrap(), &xs).unwrap(), x.brace(&[y.clone()]).unwrap());
    assert_eq!(evaluate(&parse("1*2").unwrap(), &xs).unwrap(), x.cup(&y).unwrap());
}

#[test]
fn cosimplicial_pairing_matches_cup_cell() {
    let alg = algebra("trunc(0,3)");
    let op = EndomorphismOperad::new(alg.clone());
    let cos = Cosimplicial::new(&op).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (p, q) in [(0, 2), (1, 1), (2, 1)] {
        let x = Cochain::random(&alg, p, &mut rng).unwrap();
        let y = Cochain::random(&alg, q, &mut rng).unwrap();
        let cell = evaluate(&parse("1*2").unwrap(), &[x.clone(), y.clone()]).unwrap();
        assert_eq!(cos.pair(&x, &y).unwrap(), cell);
    }
}

#[test]
fn normalized_and_unnormalized_cohomology_agree() {
    for name in ["dual(2)", "groupZ2(3)"] {
        let alg = algebra(name);
        for p in 0..=2 {
            let a = cohomology(&alg, p, Complex::Normalized).unwrap();
            let b = cohomology(&alg, p, Complex::Unnormalized).unwrap();
            assert_eq!((a.rank, a.torsion), (b.rank, b.torsion), "{name} p = {p}");
        }
    }
}

proptest! {
    #[test]
    fn signed_evaluation_is_a_chain_map_over_integers(
        seed: u64,
        f in prop::sample::select(vec!["1(2)", "1*2", "1(2,3)", "1(2(3))", "1(2)*3"]),
        extra in prop::collection::vec(0usize..2, 3),
    ) {
        let alg = algebra("trunc(0,3)");
        let f = parse(f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xs: Vec<Cochain> = f
            .valences()
            .iter()
            .zip(&extra)
            .map(|(&v, &e)| Cochain::random_normalized(&alg, v.max(1) + e, &mut rng).unwrap())
            .collect();
        prop_assert!(evaluation_defect(&f, &xs).unwrap().is_zero());
    }
}
