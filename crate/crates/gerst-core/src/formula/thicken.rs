use alloc::vec;
use alloc::vec::Vec;

use super::Formula;
use crate::error::{Error, Result};

/// Weak compositions of `k` into `parts` parts.
fn compositions(k: usize, parts: usize) -> Vec<Vec<usize>> {
    if parts == 0 {
        return if k == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in compositions(k - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Ordered sequences of positive integers summing to `k`.
fn positive_compositions(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=k {
        for mut rest in positive_compositions(k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every way of picking one element from each list.
fn product(choices: &[Vec<Formula>]) -> Vec<Vec<Formula>> {
    let mut out = vec![Vec::new()];
    for options in choices {
        let mut next = Vec::with_capacity(out.len() * options.len());
        for prefix in &out {
            for o in options {
                let mut p = prefix.clone();
                p.push(o.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn ids(m: usize) -> Vec<Formula> {
    vec![Formula::Id; m]
}

/// Thickenings of a formula with `k` ids. With `top`, ids only appear as
/// single-id entries of integer symbols.
fn thicken(f: &Formula, k: usize, top: bool) -> Vec<Formula> {
    let atoms = f.factors();
    let r = atoms.len();
    let mut out = Vec::new();
    for comp in compositions(k, 2 * r + 1) {
        // comp[2m] ids before atom m (and after the last), comp[2m+1] ids inside atom m
        if top && (0..=r).any(|m| comp[2 * m] > 0) {
            continue;
        }
        let choices: Vec<Vec<Formula>> = (0..r).map(|m| thicken_atom(&atoms[m], comp[2 * m + 1], top)).collect();
        for picked in product(&choices) {
            let mut factors = ids(comp[0]);
            for (m, a) in picked.into_iter().enumerate() {
                factors.push(a);
                factors.extend(ids(comp[2 * m + 2]));
            }
            out.push(Formula::cup(factors));
        }
    }
    out
}

fn thicken_atom(a: &Formula, k: usize, top: bool) -> Vec<Formula> {
    let Formula::Sym(i, es) = a else {
        return if k == 0 { vec![a.clone()] } else { Vec::new() };
    };
    let v = es.len();
    let mut out = Vec::new();
    for comp in compositions(k, 2 * v + 1) {
        // comp[2m] ids in the gap before entry m, comp[2m+1] ids inside entry m
        let gap_runs: Vec<Vec<Vec<usize>>> = (0..=v)
            .map(|m| if top { vec![vec![1; comp[2 * m]]] } else { positive_compositions(comp[2 * m]) })
            .collect();
        let inner: Vec<Vec<Formula>> = (0..v).map(|m| thicken(&es[m], comp[2 * m + 1], top)).collect();
        for picked in product(&inner) {
            let mut gaps: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
            for runs in &gap_runs {
                let mut next = Vec::new();
                for prefix in &gaps {
                    for run in runs {
                        let mut p = prefix.clone();
                        p.push(run.clone());
                        next.push(p);
                    }
                }
                gaps = next;
            }
            for gap in gaps {
                let mut entries = Vec::new();
                for m in 0..=v {
                    entries.extend(gap[m].iter().map(|&c| Formula::cup(ids(c))));
                    if m < v {
                        entries.push(picked[m].clone());
                    }
                }
                out.push(Formula::Sym(*i, entries));
            }
        }
    }
    out
}

impl Formula {
    /// All formulas with `k` ids that reduce to `self`.
    pub fn thickenings(&self, k: usize) -> Vec<Formula> {
        thicken(self, k, false)
    }

    /// Thickenings of top dimension: each id is a whole entry of an integer symbol.
    pub fn top_thickenings(&self, k: usize) -> Vec<Formula> {
        thicken(self, k, true)
    }

    /// Removes every id together with the typography around it.
    ///
    /// Returns `None` when nothing but ids remains.
    pub fn reduce(&self) -> Option<Formula> {
        match self {
            Formula::Id => None,
            Formula::Sym(i, es) => Some(Formula::Sym(*i, es.iter().filter_map(Formula::reduce).collect())),
            Formula::Eps(es) => Some(Formula::Eps(es.iter().filter_map(Formula::reduce).collect())),
            Formula::Cup(fs) => {
                let kept: Vec<Formula> = fs.iter().filter_map(Formula::reduce).collect();
                (!kept.is_empty()).then(|| Formula::cup(kept))
            }
        }
    }

    /// `self ∗_k g`: `g`, shifted to start at `k`, replaces symbol `k`; the
    /// ids of `g` receive the entries of `k` in order and later symbols of
    /// `self` shift up.
    pub fn substitute(&self, k: usize, g: &Formula) -> Result<Formula> {
        let n = self.type_n();
        let entries = self.atom(k).ok_or(Error::OutOfRange { what: "symbol", index: k, bound: n })?;
        if g.id_count() != entries.len() {
            return Err(Error::Invalid(alloc::format!(
                "substituted formula has {} ids but symbol {k} has {} entries",
                g.id_count(),
                entries.len()
            )));
        }
        let j = g.type_n();
        if !g.uses_symbols(j) || !self.uses_symbols(n) {
            return Err(Error::Invalid("substitution needs symbols 1..n in both formulas".into()));
        }
        let shift = |i: usize| if i > k { i + j - 1 } else { i };
        let moved: Vec<Formula> = entries.iter().map(|e| e.relabel(&shift)).collect();
        let mut fill = moved.into_iter();
        let inner = g.relabel(&|i| i + k - 1).fill_ids(&mut fill);
        Ok(self.relabel(&shift).replace_atom(k, &mut |_| inner.clone()).canonical())
    }

    /// Replaces the ids, left to right, by the supplied formulas.
    pub(crate) fn fill_ids(&self, with: &mut dyn Iterator<Item = Formula>) -> Formula {
        match self {
            Formula::Id => with.next().expect("enough fillers"),
            Formula::Sym(i, es) => Formula::Sym(*i, es.iter().map(|e| e.fill_ids(with)).collect()),
            Formula::Eps(es) => Formula::Eps(es.iter().map(|e| e.fill_ids(with)).collect()),
            Formula::Cup(fs) => Formula::cup(fs.iter().map(|e| e.fill_ids(with)).collect()),
        }
    }
}

impl Formula {
    /// Removes the ids whose left-to-right index is flagged in `drop`, with
    /// the typography around them, keeping the others.
    pub fn remove_ids(&self, drop: &[bool]) -> Option<Formula> {
        let mut next = 0;
        self.remove_ids_at(drop, &mut next).map(Formula::canonical)
    }

    fn remove_ids_at(&self, drop: &[bool], next: &mut usize) -> Option<Formula> {
        match self {
            Formula::Id => {
                let gone = drop.get(*next).copied().unwrap_or(false);
                *next += 1;
                (!gone).then_some(Formula::Id)
            }
            Formula::Sym(i, es) => Some(Formula::Sym(*i, es.iter().filter_map(|e| e.remove_ids_at(drop, next)).collect())),
            Formula::Eps(es) => Some(Formula::Eps(es.iter().filter_map(|e| e.remove_ids_at(drop, next)).collect())),
            Formula::Cup(fs) => {
                let kept: Vec<Formula> = fs.iter().filter_map(|e| e.remove_ids_at(drop, next)).collect();
                (!kept.is_empty()).then(|| Formula::cup(kept))
            }
        }
    }

    /// Whether the formula consists of ids only.
    pub fn is_pure_id(&self) -> bool {
        match self {
            Formula::Id => true,
            Formula::Cup(fs) => fs.iter().all(Formula::is_pure_id),
            _ => false,
        }
    }
}
