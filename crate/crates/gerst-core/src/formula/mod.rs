//! Formulas: trees over integer symbols, the cup `*`, the input `_` and `e`.
//!
//! A formula of type `n` uses each of `1..=n` once and indexes the cell
//! `Δ^{v(1)} × ⋯ × Δ^{v(n)}`, where `v(i)` is the number of entries of `i`.
//! Formulas with `_` symbols are thickenings; formulas with `e` are
//! ε-formulas. Cup chains are kept flat, so equal formulas are equal trees.

mod enumerate;
mod epsilon;
mod tableau;
mod text;
mod thicken;

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::posets::OrderPair;

pub use enumerate::enumerate;
pub use tableau::{Tableau, TableauCell, TableauMark};
pub use text::parse;

/// A node of a formula tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    /// Integer symbol `i` with its entries.
    Sym(usize, Vec<Formula>),
    /// The input symbol `_`.
    Id,
    /// The symbol `e` with its entries.
    Eps(Vec<Formula>),
    /// Cup chain of at least two factors, none of them a chain.
    Cup(Vec<Formula>),
}

impl Formula {
    /// The integer symbol `i` with no entries.
    pub fn sym(i: usize) -> Formula {
        Formula::Sym(i, Vec::new())
    }

    /// Cup product of the factors, flattened. A single factor is returned as is.
    ///
    /// Panics on an empty factor list.
    pub fn cup(factors: Vec<Formula>) -> Formula {
        let mut flat = Vec::with_capacity(factors.len());
        for f in factors {
            match f {
                Formula::Cup(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        assert!(!flat.is_empty(), "cup of no factors");
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            Formula::Cup(flat)
        }
    }

    /// Flattens nested cup chains everywhere.
    pub fn canonical(self) -> Formula {
        match self {
            Formula::Sym(i, es) => Formula::Sym(i, es.into_iter().map(Formula::canonical).collect()),
            Formula::Eps(es) => Formula::Eps(es.into_iter().map(Formula::canonical).collect()),
            Formula::Cup(fs) => Formula::cup(fs.into_iter().map(Formula::canonical).collect()),
            Formula::Id => Formula::Id,
        }
    }

    pub fn is_canonical(&self) -> bool {
        match self {
            Formula::Sym(_, es) | Formula::Eps(es) => es.iter().all(Formula::is_canonical),
            Formula::Cup(fs) => {
                fs.len() >= 2 && fs.iter().all(|f| !matches!(f, Formula::Cup(_)) && f.is_canonical())
            }
            Formula::Id => true,
        }
    }

    /// Cup factors: the chain's factors, or the formula itself.
    pub fn factors(&self) -> &[Formula] {
        match self {
            Formula::Cup(fs) => fs,
            other => core::slice::from_ref(other),
        }
    }

    /// Pre-order walk over all nodes.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Formula)) {
        visit(self);
        match self {
            Formula::Sym(_, es) | Formula::Eps(es) | Formula::Cup(es) => {
                for e in es {
                    e.walk(visit);
                }
            }
            Formula::Id => {}
        }
    }

    /// Integer symbols in order of appearance.
    pub fn symbols(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.walk(&mut |f| {
            if let Formula::Sym(i, _) = f {
                out.push(*i);
            }
        });
        out
    }

    /// Number of integer symbols.
    pub fn type_n(&self) -> usize {
        self.symbols().len()
    }

    pub fn id_count(&self) -> usize {
        let mut k = 0;
        self.walk(&mut |f| k += usize::from(*f == Formula::Id));
        k
    }

    pub fn eps_count(&self) -> usize {
        let mut k = 0;
        self.walk(&mut |f| k += usize::from(matches!(f, Formula::Eps(_))));
        k
    }

    /// True iff the integer symbols are exactly `1..=n` and there are no `_` or `e`.
    pub fn is_type(&self, n: usize) -> bool {
        self.id_count() == 0 && self.eps_count() == 0 && self.uses_symbols(n)
    }

    /// True iff the integer symbols are exactly `1..=n`, each once.
    pub fn uses_symbols(&self, n: usize) -> bool {
        let mut s = self.symbols();
        s.sort_unstable();
        s.len() == n && s.iter().enumerate().all(|(k, &i)| i == k + 1)
    }

    /// Valences `v(i)`, indexed by `i - 1` up to the largest symbol.
    pub fn valences(&self) -> Vec<usize> {
        let syms = self.symbols();
        let mut v = vec![0; syms.iter().copied().max().unwrap_or(0)];
        self.walk(&mut |f| {
            if let Formula::Sym(i, es) = f {
                v[i - 1] = es.len();
            }
        });
        v
    }

    /// Valence of symbol `i`, if present.
    pub fn valence(&self, i: usize) -> Option<usize> {
        self.atom(i).map(|es| es.len())
    }

    /// Entries of symbol `i`, if present.
    pub fn atom(&self, i: usize) -> Option<&[Formula]> {
        let mut found = None;
        self.walk(&mut |f| {
            if let Formula::Sym(j, es) = f {
                if *j == i {
                    found = Some(es.as_slice());
                }
            }
        });
        found
    }

    /// Cell dimension: total valence of integer symbols and `e` symbols.
    pub fn dim(&self) -> usize {
        let mut d = 0;
        self.walk(&mut |f| {
            if let Formula::Sym(_, es) | Formula::Eps(es) = f {
                d += es.len();
            }
        });
        d
    }

    /// Rebuilds the tree with the atom of symbol `i` replaced by `build(entries)`.
    pub(crate) fn replace_atom(&self, i: usize, build: &mut dyn FnMut(&[Formula]) -> Formula) -> Formula {
        match self {
            Formula::Sym(j, es) if *j == i => build(es),
            Formula::Sym(j, es) => Formula::Sym(*j, es.iter().map(|e| e.replace_atom(i, build)).collect()),
            Formula::Eps(es) => Formula::Eps(es.iter().map(|e| e.replace_atom(i, build)).collect()),
            Formula::Cup(fs) => Formula::cup(fs.iter().map(|e| e.replace_atom(i, build)).collect()),
            Formula::Id => Formula::Id,
        }
    }

    /// Applies `map` to every integer symbol.
    pub fn relabel(&self, map: &dyn Fn(usize) -> usize) -> Formula {
        match self {
            Formula::Sym(i, es) => Formula::Sym(map(*i), es.iter().map(|e| e.relabel(map)).collect()),
            Formula::Eps(es) => Formula::Eps(es.iter().map(|e| e.relabel(map)).collect()),
            Formula::Cup(fs) => Formula::Cup(fs.iter().map(|e| e.relabel(map)).collect()),
            Formula::Id => Formula::Id,
        }
    }

    /// Face `∂_{ij}`: `j = 0` moves the first entry of `i` out to the left,
    /// `0 < j < v(i)` cups entries `j` and `j + 1`, `j = v(i)` moves the last
    /// entry out to the right.
    pub fn face(&self, i: usize, j: usize) -> Result<Formula> {
        let v = self.valence(i).ok_or(Error::OutOfRange { what: "symbol", index: i, bound: self.type_n() })?;
        if v == 0 {
            return Err(Error::Invalid("face of a symbol with no entries".into()));
        }
        if j > v {
            return Err(Error::OutOfRange { what: "face", index: j, bound: v });
        }
        Ok(self.replace_atom(i, &mut |es| {
            if j == 0 {
                Formula::cup(vec![es[0].clone(), Formula::Sym(i, es[1..].to_vec())])
            } else if j == v {
                Formula::cup(vec![Formula::Sym(i, es[..v - 1].to_vec()), es[v - 1].clone()])
            } else {
                let mut out = es[..j - 1].to_vec();
                out.push(Formula::cup(vec![es[j - 1].clone(), es[j].clone()]));
                out.extend_from_slice(&es[j + 1..]);
                Formula::Sym(i, out)
            }
        }))
    }

    /// All faces with their cellular boundary signs `(-1)^{j + Σ_{k<i} v(k)}`.
    pub fn boundary(&self) -> Vec<(i64, Formula)> {
        let v = self.valences();
        let mut out = Vec::new();
        let mut before = 0;
        for (idx, &vi) in v.iter().enumerate() {
            let i = idx + 1;
            for j in 0..=vi {
                if vi > 0 {
                    let sign = if (j + before) % 2 == 0 { 1 } else { -1 };
                    out.push((sign, self.face(i, j).expect("valid face")));
                }
            }
            before += vi;
        }
        out
    }

    /// Replaces each symbol `i` by `tau[i - 1]`.
    pub fn permute(&self, tau: &[usize]) -> Result<Formula> {
        let n = tau.len();
        let mut seen = vec![false; n];
        for &t in tau {
            if t == 0 || t > n || core::mem::replace(&mut seen[t - 1], true) {
                return Err(Error::Invalid("not a permutation".into()));
            }
        }
        if self.symbols().iter().any(|&i| i > n) {
            return Err(Error::Invalid("permutation shorter than the formula type".into()));
        }
        Ok(self.relabel(&|i| tau[i - 1]))
    }

    /// `(t, p)`: first-appearance order and the closed entry relation.
    pub fn order_pair(&self) -> Result<OrderPair> {
        let n = self.type_n();
        if !self.uses_symbols(n) {
            return Err(Error::Invalid("order pair needs symbols 1..n".into()));
        }
        let mut below = Vec::new();
        fn collect(f: &Formula, ancestors: &mut Vec<usize>, below: &mut Vec<(usize, usize)>) {
            match f {
                Formula::Sym(i, es) => {
                    for &a in ancestors.iter() {
                        below.push((a, *i));
                    }
                    ancestors.push(*i);
                    for e in es {
                        collect(e, ancestors, below);
                    }
                    ancestors.pop();
                }
                Formula::Eps(es) | Formula::Cup(es) => {
                    for e in es {
                        collect(e, ancestors, below);
                    }
                }
                Formula::Id => {}
            }
        }
        collect(self, &mut Vec::new(), &mut below);
        OrderPair::new(&self.symbols(), &below)
    }
}

#[cfg(test)]
mod tests;
