use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::*;

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

fn texts(fs: &[Formula]) -> Vec<String> {
    fs.iter().map(|x| x.to_string()).collect()
}

fn sorted(mut v: Vec<String>) -> Vec<String> {
    v.sort();
    v
}

#[test]
fn parse_examples() {
    let a = f("2(1(3,5),4)");
    assert_eq!(a.valences(), vec![2, 2, 0, 0, 0]);
    assert!(a.is_type(5));
    let b = f("4(2,3)*1(5)");
    assert!(matches!(&b, Formula::Cup(fs) if fs.len() == 2));
    let c = f("1(2*_ ,_)");
    assert_eq!(c.to_string(), "1(2*_,_)");
    assert_eq!(f(&c.to_string()), c);
    assert_eq!(f(" 1 ( 2 ) * 3 ").to_string(), "1(2)*3");
}

#[test]
fn parse_errors_carry_offsets() {
    assert_eq!(parse("1(2,1)"), Err(Error::Parse { offset: 4, message: "symbol 1 repeated".into() }));
    assert!(matches!(parse("1(2"), Err(Error::Parse { offset: 3, .. })));
    assert!(matches!(parse("1)"), Err(Error::Parse { offset: 1, .. })));
    assert!(matches!(parse("_(1)"), Err(Error::Parse { offset: 1, .. })));
    assert!(matches!(parse(""), Err(Error::Parse { offset: 0, .. })));
    assert!(matches!(parse("0"), Err(Error::Parse { offset: 0, .. })));
}

#[test]
fn enumerate_small_types() {
    assert_eq!(texts(&enumerate(1, None).unwrap()), ["1"]);
    assert_eq!(texts(&enumerate(2, None).unwrap()), ["1(2)", "1*2", "2(1)", "2*1"]);
    assert_eq!(texts(&enumerate(2, Some(1)).unwrap()), ["1(2)", "2(1)"]);
    assert!(enumerate(0, None).is_err());
    assert!(enumerate(7, None).is_err());
}

/// Binary μ-trees with arbitrary nesting, then flattened and deduplicated.
fn naive(symbols: &[usize]) -> BTreeSet<String> {
    fn trees(symbols: &[usize]) -> Vec<Formula> {
        let mut out = Vec::new();
        let n = symbols.len();
        for root in 0..n {
            let rest: Vec<usize> = symbols.iter().enumerate().filter(|&(k, _)| k != root).map(|(_, &s)| s).collect();
            for es in entry_lists(&rest) {
                out.push(Formula::Sym(symbols[root], es));
            }
        }
        // μ(a, b) for every split into two nonempty parts
        for mask in 1..(1u32 << n) - 1 {
            let a: Vec<usize> = (0..n).filter(|k| mask & (1 << k) != 0).map(|k| symbols[k]).collect();
            let b: Vec<usize> = (0..n).filter(|k| mask & (1 << k) == 0).map(|k| symbols[k]).collect();
            for x in trees(&a) {
                for y in trees(&b) {
                    out.push(Formula::Cup(vec![x.clone(), y]));
                }
            }
        }
        out
    }
    fn entry_lists(symbols: &[usize]) -> Vec<Vec<Formula>> {
        if symbols.is_empty() {
            return vec![Vec::new()];
        }
        let n = symbols.len();
        let mut out = Vec::new();
        for mask in 1..(1u32 << n) {
            let a: Vec<usize> = (0..n).filter(|k| mask & (1 << k) != 0).map(|k| symbols[k]).collect();
            let b: Vec<usize> = (0..n).filter(|k| mask & (1 << k) == 0).map(|k| symbols[k]).collect();
            for x in trees(&a) {
                for mut rest in entry_lists(&b) {
                    rest.insert(0, x.clone());
                    out.push(rest);
                }
            }
        }
        out
    }
    trees(symbols).into_iter().map(|t| t.canonical().to_string()).collect()
}

#[test]
fn enumeration_matches_naive_generator() {
    for n in 1..=4 {
        let symbols: Vec<usize> = (1..=n).collect();
        let fast = enumerate(n, None).unwrap();
        let set: BTreeSet<String> = texts(&fast).into_iter().collect();
        assert_eq!(set.len(), fast.len(), "duplicates at n = {n}");
        assert_eq!(set, naive(&symbols), "n = {n}");
    }
}

#[test]
fn valence_examples() {
    let g = f("3(2,4(5,6),1,7)*8(9)");
    let v = g.valences();
    assert_eq!((v[2], v[3], v[7]), (4, 2, 1));
    assert_eq!(v.iter().filter(|&&x| x == 0).count(), 6);
    assert_eq!(g.dim(), 7);
    assert!(f("1*2").valences().iter().all(|&x| x == 0));
    // total valence against the tableau length minus one label per symbol
    for h in enumerate(4, None).unwrap() {
        assert_eq!(h.tableau().labels().len(), h.dim() + 4);
    }
}

#[test]
fn face_examples() {
    let face = |s: &str, i, j| f(s).face(i, j).unwrap().to_string();
    assert_eq!(face("1(2)", 1, 0), "2*1");
    assert_eq!(face("1(2)", 1, 1), "1*2");
    assert_eq!(face("1(2,3)", 1, 0), "2*1(3)");
    assert_eq!(face("1(2,3)", 1, 1), "1(2*3)");
    assert_eq!(face("1(2,3)", 1, 2), "1(2)*3");
    assert_eq!(face("1(2(3))", 1, 0), "2(3)*1");
    assert_eq!(face("1(2(3))", 1, 1), "1*2(3)");
    assert_eq!(face("1(2(3))", 2, 0), "1(3*2)");
    assert_eq!(face("1(2(3))", 2, 1), "1(2*3)");
    assert_eq!(face("1(2*3,4)", 1, 1), "1(2*3*4)");
    assert!(f("1*2").face(1, 0).is_err());
    assert!(f("1(2)").face(1, 2).is_err());
}

#[test]
fn faces_commute_as_sets() {
    // ∂∂f computed in either order yields the same multiset of codimension-2 faces
    for n in 2..=4 {
        for g in enumerate(n, None).unwrap() {
            let mut twice: Vec<String> = Vec::new();
            for (_, a) in g.boundary() {
                for (_, b) in a.boundary() {
                    twice.push(b.to_string());
                }
            }
            twice.sort();
            for pair in twice.chunks(2) {
                assert!(pair.len() == 2 && pair[0] == pair[1], "unpaired face {:?} of {g}", pair);
            }
        }
    }
}

#[test]
fn thickenings_of_one_two() {
    let got = sorted(texts(&f("1(2)").thickenings(1)));
    let want = sorted(
        ["1(_,2)", "1(2,_)", "1(2(_))", "1(_*2)", "1(2*_)", "_*1(2)", "1(2)*_"].iter().map(|s| s.to_string()).collect(),
    );
    assert_eq!(got, want);
    assert_eq!(texts(&f("1(2)").thickenings(0)), ["1(2)"]);
    let top = sorted(texts(&f("1(2)").top_thickenings(1)));
    assert_eq!(top, ["1(2(_))", "1(2,_)", "1(_,2)"]);
}

/// Insert one id at every grammatical position: as a cup factor next to any
/// factor, or as a new entry in any gap of a symbol.
fn single_insertions(g: &Formula) -> Vec<Formula> {
    let mut out = Vec::new();
    // whole-formula cups
    out.push(Formula::cup(vec![Formula::Id, g.clone()]));
    out.push(Formula::cup(vec![g.clone(), Formula::Id]));
    match g {
        Formula::Cup(fs) => {
            for k in 0..fs.len() {
                for inner in single_insertions_inside(&fs[k]) {
                    let mut c = fs.clone();
                    c[k] = inner;
                    out.push(Formula::cup(c));
                }
                for pos in 1..fs.len() {
                    let mut c = fs.clone();
                    c.insert(pos, Formula::Id);
                    out.push(Formula::cup(c));
                }
            }
        }
        other => out.extend(single_insertions_inside(other)),
    }
    out.into_iter().map(Formula::canonical).collect()
}

fn single_insertions_inside(a: &Formula) -> Vec<Formula> {
    let mut out = Vec::new();
    match a {
        Formula::Sym(i, es) => {
            for gap in 0..=es.len() {
                let mut c = es.clone();
                c.insert(gap, Formula::Id);
                out.push(Formula::Sym(*i, c));
            }
            for k in 0..es.len() {
                for inner in single_insertions(&es[k]) {
                    let mut c = es.clone();
                    c[k] = inner;
                    out.push(Formula::Sym(*i, c));
                }
            }
        }
        Formula::Id => {}
        _ => unreachable!("no e in thickenings"),
    }
    out
}

fn brute_thickenings(base: &Formula, k: usize) -> BTreeSet<String> {
    let mut level: BTreeSet<Formula> = [base.clone()].into_iter().collect();
    for _ in 0..k {
        level = level.iter().flat_map(single_insertions).collect();
    }
    level.into_iter().filter(|g| g.reduce().as_ref() == Some(base)).map(|g| g.to_string()).collect()
}

#[test]
fn thickenings_match_brute_force() {
    for s in ["1", "1*2", "1(2)", "2(1)", "1(2,3)", "1(2(3))", "2*1(3)"] {
        let base = f(s);
        for k in 0..=3 {
            let fast = base.thickenings(k);
            let set: BTreeSet<String> = texts(&fast).into_iter().collect();
            assert_eq!(set.len(), fast.len(), "duplicates for {s}, k = {k}");
            assert_eq!(set, brute_thickenings(&base, k), "{s}, k = {k}");
            let top: BTreeSet<String> = texts(&base.top_thickenings(k)).into_iter().collect();
            let filtered: BTreeSet<String> =
                fast.iter().filter(|g| g.dim() == base.dim() + k).map(|g| g.to_string()).collect();
            assert_eq!(top, filtered, "top thickenings of {s}, k = {k}");
        }
    }
    assert_eq!(f("1*2").thickenings(2).len(), brute_thickenings(&f("1*2"), 2).len());
}

#[test]
fn reduce_examples() {
    assert_eq!(f("1(2*_,_,3(4(_)))").reduce().unwrap().to_string(), "1(2,3(4))");
    assert_eq!(f("1(2)").reduce().unwrap(), f("1(2)"));
    assert_eq!(f("_*_").reduce(), None);
    for n in 1..=3 {
        for g in enumerate(n, None).unwrap() {
            for k in 0..=2 {
                for t in g.thickenings(k) {
                    assert_eq!(t.id_count(), k);
                    assert_eq!(t.reduce().as_ref(), Some(&g));
                }
            }
        }
    }
}

#[test]
fn substitute_examples() {
    let r = f("1(2(3),4*5,6(7,8))").substitute(1, &f("1(2,_,3,_,_)")).unwrap();
    assert_eq!(r.to_string(), "1(2,4(5),3,6*7,8(9,10))");
    assert_eq!(f("1(2)").substitute(2, &f("1")).unwrap().to_string(), "1(2)");
    assert_eq!(f("1(2)").substitute(2, &f("1(2)")).unwrap().to_string(), "1(2(3))");
    assert_eq!(f("1(2)").substitute(1, &f("1(_,2)")).unwrap().to_string(), "1(3,2)");
    assert_eq!(f("1(2)").substitute(1, &f("_*1(2)")).unwrap().to_string(), "3*1(2)");
    assert!(f("1(2)").substitute(1, &f("1(2)")).is_err());
}

#[test]
fn substitute_counts() {
    for a in enumerate(3, None).unwrap() {
        for k in 1..=3 {
            let v = a.valence(k).unwrap();
            for b in enumerate(2, None).unwrap() {
                for g in b.thickenings(v) {
                    let r = a.substitute(k, &g).unwrap();
                    assert!(r.uses_symbols(4));
                    assert_eq!(r.dim(), a.dim() - v + g.dim(), "{a} *{k} {g}");
                    assert!(r.is_canonical());
                }
            }
        }
    }
}

#[test]
fn tableau_example() {
    let t = f("3(2(1,_),4,_,_,5(6))").tableau();
    let labels: Vec<String> = t.labels().iter().map(|(i, j)| alloc::format!("s{i}{j}")).collect();
    assert_eq!(labels, ["s30", "s20", "s10", "s21", "s22", "s31", "s40", "s32", "s33", "s34", "s50", "s60", "s51", "s35"]);
    assert_eq!(t.text, "3(2(1,_),4,_,_,5(6))");
    // labels sit on parentheses, commas and valence-0 symbols
    for c in &t.cells {
        let ch = t.text.as_bytes()[c.offset];
        match c.mark {
            TableauMark::Id => assert_eq!(ch, b'_'),
            TableauMark::Label { symbol, .. } => {
                assert!(matches!(ch, b'(' | b',' | b')') || ch == b'0' + symbol as u8)
            }
        }
    }
    assert_eq!(f("1").tableau().labels(), [(1, 0)]);
}

#[test]
fn prune_and_degeneracy() {
    assert_eq!(f("1(e,2)").prune(1).unwrap().to_string(), "1(2)");
    assert_eq!(f("e(1,2)").prune(1).unwrap().to_string(), "1*2");
    assert_eq!(f("e(1,2,3)").prune(1).unwrap().to_string(), "1*2*3");
    assert_eq!(f("1(e(2))").prune(1).unwrap().to_string(), "1(2)");
    assert_eq!(f("e*1").prune(1).unwrap().to_string(), "1");
    assert_eq!(f("e(1)*e").prune(2).unwrap().to_string(), "e(1)");
    assert!(f("1").prune(1).is_err());
    assert_eq!(f("1(2)").degeneracy(2).unwrap().to_string(), "1(e)");
    assert_eq!(f("1(2,3)").degeneracy(1).unwrap().to_string(), "e(1,2)");
    assert!(f("1(2)").degeneracy(3).is_err());
}

#[test]
fn permutation_action() {
    assert_eq!(f("1(2)").permute(&[2, 1]).unwrap().to_string(), "2(1)");
    let perms = crate::posets::permutations(3);
    for g in enumerate(3, None).unwrap() {
        assert_eq!(g.permute(&[1, 2, 3]).unwrap(), g);
        for s in &perms {
            for t in &perms {
                let st: Vec<usize> = (0..3).map(|i| s[t[i] - 1]).collect();
                assert_eq!(g.permute(&st).unwrap(), g.permute(t).unwrap().permute(s).unwrap());
            }
        }
    }
}

#[test]
fn order_pair_examples() {
    let o = f("1(2)").order_pair().unwrap();
    assert_eq!(o.to_string(), "t=12;p=1<2");
    assert_eq!(f("2*1").order_pair().unwrap().to_string(), "t=21;p=");
    let o = f("3(2(1,5),4)").order_pair().unwrap();
    assert_eq!(o.total(), [3, 2, 1, 5, 4]);
    let want = crate::posets::close(5, &[(3, 2), (3, 4), (2, 1), (2, 5)]);
    assert_eq!(o.partial_bits(), want);
    assert!(o.p_less(3, 1) && o.p_less(3, 5) && !o.p_less(2, 4));
}

#[test]
fn faces_lower_order_pairs() {
    for n in 2..=4 {
        for g in enumerate(n, None).unwrap() {
            let o = g.order_pair().unwrap();
            for (_, h) in g.boundary() {
                let oh = h.order_pair().unwrap();
                assert!(oh.leq(&o), "{h} vs {g}");
            }
        }
    }
}
