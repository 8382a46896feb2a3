use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::algebra::FiniteAlgebra;
use crate::formula::{enumerate, parse, Formula};
use crate::hochschild::Cochain;
use crate::posets::{enumerate_tn, nerve_homology, order_pairs, OrderPair};

fn f(text: &str) -> Formula {
    parse(text).unwrap()
}

fn chain(terms: &[(i64, &str)]) -> CellChain {
    let mut out = CellChain::zero();
    for &(c, t) in terms {
        out.add_term(c, f(t));
    }
    out
}

#[test]
fn circle_complex() {
    let c = cellular_complex(2).unwrap();
    assert_eq!(c.ranks(), vec![2, 2]);
    let b = CellChain::cell(f("1(2)")).boundary();
    assert!(b == chain(&[(1, "1*2"), (-1, "2*1")]) || b == chain(&[(-1, "1*2"), (1, "2*1")]), "{b}");
    assert_eq!(c.homology().unwrap(), vec![HomologyGroup::free(1), HomologyGroup::free(1)]);
}

#[test]
fn cellular_rejects_bad_types() {
    assert!(cellular_complex(0).is_err());
    assert!(cellular_complex(6).is_err());
}

#[test]
fn cellular_boundary_squares_to_zero() {
    for n in 1..=4 {
        let c = cellular_complex(n).unwrap();
        assert_eq!(c.square_defect(), None, "n = {n}");
        let counts: Vec<usize> = (0..n).map(|d| enumerate(n, Some(d)).unwrap().len()).collect();
        assert_eq!(c.ranks(), counts);
    }
}

#[test]
fn cellular_matches_nerve() {
    for n in 1..=3 {
        let cells = cellular_complex(n).unwrap().homology().unwrap();
        assert!(same_homology(&cells, &nerve_homology(n).unwrap()), "n = {n}");
    }
}

#[test]
fn euler_characteristics_agree() {
    for n in 1..=4 {
        let cells = cellular_complex(n).unwrap().euler_characteristic();
        assert_eq!(cells as i128, enumerate_tn(n).unwrap().euler_characteristic(), "n = {n}");
        assert_eq!(cells, if n == 1 { 1 } else { 0 });
    }
}

#[test]
fn compose_examples() {
    assert_eq!(compose_cells(&f("1(2)"), 2, &f("1(2)")).unwrap(), chain(&[(1, "1(2(3))")]));
    let c = compose_cells(&f("1(2)"), 1, &f("1(2)")).unwrap();
    let mut cells: Vec<Formula> = c.terms().map(|(g, _)| g.clone()).collect();
    let mut want = vec![f("1(2(3))"), f("1(2,3)"), f("1(3,2)")];
    cells.sort();
    want.sort();
    assert_eq!(cells, want);
    assert!(c.terms().all(|(_, v)| v.abs() == 1));
    assert_eq!(c.degree(), Some(2));
}

#[test]
fn compose_is_a_chain_map() {
    let mut checked = 0;
    for n in 1..=3 {
        for j in 1..=4 - n {
            for a in enumerate(n, None).unwrap() {
                for b in enumerate(j, None).unwrap() {
                    for k in 1..=n {
                        let defect = chain_map_defect(&a, k, &b).unwrap();
                        assert!(defect.is_zero(), "{a} o_{k} {b}: {defect}");
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 100);
}

#[test]
fn brace_cup_relation() {
    for n in 0..=3 {
        let left = brace_cup_left(n).unwrap();
        let right = brace_cup_right(n).unwrap();
        assert!(left == right || left == right.scaled(-1), "n = {n}: {left} vs {right}");
        assert_eq!(left.len(), n + 1);
    }
}

#[test]
fn permute_carries_koszul_sign() {
    let c = CellChain::cell(f("1(3)*2(4)"));
    assert_eq!(c.permute(&[2, 1, 3, 4]).unwrap(), chain(&[(-1, "2(3)*1(4)")]));
    assert_eq!(c.permute(&[1, 2, 4, 3]).unwrap(), chain(&[(1, "1(4)*2(3)")]));
}

#[test]
fn orientation_of_simple_thickenings() {
    for g in ["1(_,2)", "1(2,_)", "1(2(_))", "1(_)", "1(_,_)"] {
        assert_eq!(subdivision_orientation(&f(g)).abs(), 1, "{g}");
    }
}

#[test]
fn iprime_examples() {
    let full = OrderPair::new(&[1, 2], &[(1, 2)]).unwrap();
    let c = subcomplex_iprime(2, &full).unwrap();
    let mut cells: Vec<&str> = (0..=1).flat_map(|d| c.basis(d).iter().map(|s| s.as_str())).collect();
    cells.sort();
    assert_eq!(cells, vec!["1(2)", "1*2", "2*1"]);
    assert!(c.reduced_homology().unwrap().iter().all(HomologyGroup::is_zero));

    let bare = OrderPair::new(&[1, 2], &[]).unwrap();
    let c = subcomplex_iprime(2, &bare).unwrap();
    assert_eq!(c.ranks(), vec![1]);
    assert_eq!(c.basis(0), ["1*2"]);
    assert!(subcomplex_iprime(3, &bare).is_err());
}

#[test]
fn iprime_is_closed_and_contractible() {
    for n in 1..=3 {
        for op in order_pairs(n).unwrap() {
            let c = subcomplex_iprime(n, &op).unwrap();
            assert!(c.reduced_homology().unwrap().iter().all(HomologyGroup::is_zero), "{op}");
        }
    }
}

#[test]
fn braid_hexagon_bounds() {
    assert!(braid_check());
    let signs = braid_filling().unwrap().unwrap();
    assert!(signs.iter().all(|s| s.abs() == 1));
    for path in BRAID_PATHS {
        for (label, _, _) in path {
            assert_eq!(f(label).dim(), 1);
        }
    }
    let [p, q] = braid_paths().unwrap().unwrap();
    assert_eq!(p.boundary(), q.boundary());
    assert_eq!(p.boundary(), chain(&[(1, "3*2*1"), (-1, "1*2*3")]));
}

#[test]
fn chain_display() {
    assert_eq!(chain(&[(1, "1*2"), (-2, "2*1")]).to_string(), "1*2 - 2·2*1");
    assert_eq!(CellChain::zero().to_string(), "0");
}

fn algebra(name: &str) -> Arc<FiniteAlgebra> {
    Arc::new(FiniteAlgebra::builtin(name).unwrap())
}

/// Random normalized inputs with arity `max(vᵢ, 1)` plus a random bit, so
/// both parities occur.
fn inputs(alg: &Arc<FiniteAlgebra>, c: &Formula, rng: &mut ChaCha8Rng) -> Vec<Cochain> {
    c.valences()
        .iter()
        .map(|&v| {
            let a = v.max(1) + rng.gen_range(0..2);
            Cochain::random_normalized(alg, a, rng).unwrap()
        })
        .collect()
}

#[test]
fn evaluate_nested_example() {
    let alg = algebra("mat2(3)");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let arities = [1, 0, 2, 0, 0, 1];
    let xs: Vec<Cochain> = arities.iter().map(|&a| Cochain::random_normalized(&alg, a, &mut rng).unwrap()).collect();
    let got = evaluate(&f("3(1(2*4),6(5))"), &xs).unwrap();
    let inner = xs[0].brace(&[xs[1].cup(&xs[3]).unwrap()]).unwrap();
    let want = xs[2].brace(&[inner, xs[5].brace(&[xs[4].clone()]).unwrap()]).unwrap();
    assert_eq!(got, want);
    assert_eq!(got.arity(), 0);
}

#[test]
fn evaluate_cup_and_errors() {
    let alg = algebra("dual(2)");
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let x = Cochain::random_normalized(&alg, 1, &mut rng).unwrap();
    let y = Cochain::random_normalized(&alg, 2, &mut rng).unwrap();
    assert_eq!(evaluate(&f("1*2"), &[x.clone(), y.clone()]).unwrap(), x.cup(&y).unwrap());
    assert_eq!(evaluate(&f("2*1"), &[x.clone(), y.clone()]).unwrap(), y.cup(&x).unwrap());
    assert!(evaluate(&f("1*2"), &[x.clone()]).is_err());
    assert!(evaluation_sign(&f("1*2"), &[1]).is_err());
}

#[test]
fn evaluation_sign_examples() {
    assert_eq!(evaluation_sign(&f("1*2"), &[1, 1]).unwrap(), 1);
    assert_eq!(evaluation_sign(&f("2*1"), &[1, 1]).unwrap(), -1);
    assert_eq!(evaluation_sign(&f("2*1"), &[2, 1]).unwrap(), 1);
    assert_eq!(evaluation_sign(&f("1(2)"), &[2, 1]).unwrap(), -1);
    assert_eq!(evaluation_sign(&f("1(2)"), &[1, 1]).unwrap(), 1);
}

#[test]
fn evaluation_is_a_chain_map_mod_two() {
    let alg = algebra("dual(2)");
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for c in ["1(2)", "1(2,3)", "1(2(3))", "2(1*3)", "1*2(3)"] {
        let c = f(c);
        for _ in 0..20 {
            let xs = inputs(&alg, &c, &mut rng);
            assert!(evaluation_defect(&c, &xs).unwrap().is_zero(), "{c}");
        }
    }
}

#[test]
fn twisted_evaluation_is_a_chain_map_over_integers() {
    let alg = algebra("mat2(0)");
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 1..=3 {
        for c in enumerate(n, None).unwrap() {
            let xs = inputs(&alg, &c, &mut rng);
            if xs.iter().map(Cochain::arity).sum::<usize>() > 6 {
                continue;
            }
            assert!(evaluation_defect(&c, &xs).unwrap().is_zero(), "{c}");
            let naive = evaluate(&c, &xs).unwrap();
            let signed = evaluate_signed(&c, &xs).unwrap();
            assert!(signed == naive || signed == naive.neg());
        }
    }
    let alg = algebra("trunc(0,3)");
    for c in ["1(2,3,4)", "1(2(3),4(5))", "2(1*4,3)", "3(2(4),1)"] {
        let c = f(c);
        let xs = inputs(&alg, &c, &mut rng);
        assert!(evaluation_defect(&c, &xs).unwrap().is_zero(), "{c}");
    }
}

#[test]
fn evaluation_intertwines_composition() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (name, signed) in [("dual(2)", false), ("mat2(0)", true)] {
        let alg = algebra(name);
        let mut checked = 0;
        for n in 1..=3 {
            for j in 1..=4 - n {
                for a in enumerate(n, None).unwrap() {
                    for b in enumerate(j, None).unwrap() {
                        for k in 1..=n {
                            let c = compose_cells(&a, k, &b).unwrap();
                            let Some((cell, _)) = c.terms().next() else { continue };
                            let xs = inputs(&alg, cell, &mut rng);
                            if xs.iter().map(Cochain::arity).sum::<usize>() > 6 {
                                continue;
                            }
                            let rhs = compose_evaluations(&a, k, &b, &xs, signed).unwrap();
                            let mut lhs = Cochain::zero(&alg, rhs.arity()).unwrap();
                            for (h, s) in c.terms() {
                                let e = if signed { evaluate_signed(h, &xs) } else { evaluate(h, &xs) };
                                lhs = lhs.add_scaled(&e.unwrap(), s).unwrap();
                            }
                            let matches = lhs == rhs || (signed && lhs == rhs.neg());
                            assert!(matches, "{a} o_{k} {b} over {name}");
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 100, "{checked}");
    }
}
