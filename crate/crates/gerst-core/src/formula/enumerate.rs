use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::Formula;
use crate::error::{Error, Result};

/// Largest supported type for enumeration.
pub const MAX_TYPE: usize = 6;

struct Tables {
    formulas: Vec<Option<Vec<Formula>>>,
    atoms: Vec<Option<Vec<Formula>>>,
    entries: Vec<Option<Vec<Vec<Formula>>>>,
}

fn subsets(mask: u32) -> impl Iterator<Item = u32> {
    // nonempty submasks in decreasing order
    let mut sub = mask;
    core::iter::from_fn(move || {
        if sub == 0 {
            return None;
        }
        let out = sub;
        sub = (sub - 1) & mask;
        Some(out)
    })
}

impl Tables {
    fn formulas(&mut self, mask: u32) -> Vec<Formula> {
        if let Some(v) = &self.formulas[mask as usize] {
            return v.clone();
        }
        let mut out = self.atoms(mask);
        for first in subsets(mask).filter(|&b| b != mask) {
            let heads = self.atoms(first);
            let tails = self.formulas(mask & !first);
            for h in &heads {
                for t in &tails {
                    out.push(Formula::cup(vec![h.clone(), t.clone()]));
                }
            }
        }
        self.formulas[mask as usize] = Some(out.clone());
        out
    }

    fn atoms(&mut self, mask: u32) -> Vec<Formula> {
        if let Some(v) = &self.atoms[mask as usize] {
            return v.clone();
        }
        let mut out = Vec::new();
        for bit in 0..32 {
            if mask & (1 << bit) != 0 {
                for es in self.entries(mask & !(1 << bit)) {
                    out.push(Formula::Sym(bit as usize + 1, es));
                }
            }
        }
        self.atoms[mask as usize] = Some(out.clone());
        out
    }

    fn entries(&mut self, mask: u32) -> Vec<Vec<Formula>> {
        if mask == 0 {
            return vec![Vec::new()];
        }
        if let Some(v) = &self.entries[mask as usize] {
            return v.clone();
        }
        let mut out = Vec::new();
        for first in subsets(mask) {
            let heads = self.formulas(first);
            let tails = self.entries(mask & !first);
            for h in &heads {
                for t in &tails {
                    let mut es = Vec::with_capacity(t.len() + 1);
                    es.push(h.clone());
                    es.extend_from_slice(t);
                    out.push(es);
                }
            }
        }
        self.entries[mask as usize] = Some(out.clone());
        out
    }
}

/// All formulas of type `n` (optionally of cell dimension `dim`), sorted by text.
pub fn enumerate(n: usize, dim: Option<usize>) -> Result<Vec<Formula>> {
    if n == 0 || n > MAX_TYPE {
        return Err(Error::OutOfRange { what: "formula type", index: n, bound: MAX_TYPE });
    }
    let size = 1usize << n;
    let mut t = Tables { formulas: vec![None; size], atoms: vec![None; size], entries: vec![None; size] };
    let all = t.formulas((size - 1) as u32);
    let mut keyed: Vec<(String, Formula)> =
        all.into_iter().filter(|f| dim.map_or(true, |d| f.dim() == d)).map(|f| (f.to_string(), f)).collect();
    keyed.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, f)| f).collect())
}
