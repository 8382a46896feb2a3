use alloc::vec::Vec;

use super::Formula;
use crate::error::{Error, Result};

impl Formula {
    /// Prunes the `k`-th `e` (1-based, reading order).
    ///
    /// An `e` with entries becomes the iterated cup of its entries (a single
    /// entry is spliced in place); an `e` without entries is removed along
    /// with the adjacent comma, parentheses or `*`.
    pub fn prune(&self, k: usize) -> Result<Formula> {
        let count = self.eps_count();
        if k == 0 || k > count {
            return Err(Error::OutOfRange { what: "epsilon", index: k, bound: count });
        }
        let mut seen = 0;
        self.prune_at(k, &mut seen)
            .map(Formula::canonical)
            .ok_or_else(|| Error::Invalid("pruning leaves an empty formula".into()))
    }

    fn prune_at(&self, k: usize, seen: &mut usize) -> Option<Formula> {
        match self {
            Formula::Eps(es) => {
                *seen += 1;
                if *seen == k {
                    return match es.len() {
                        0 => None,
                        _ => Some(Formula::cup(es.clone())),
                    };
                }
                Some(Formula::Eps(es.iter().filter_map(|e| e.prune_at(k, seen)).collect()))
            }
            Formula::Sym(i, es) => Some(Formula::Sym(*i, es.iter().filter_map(|e| e.prune_at(k, seen)).collect())),
            Formula::Cup(fs) => {
                let kept: Vec<Formula> = fs.iter().filter_map(|e| e.prune_at(k, seen)).collect();
                (!kept.is_empty()).then(|| Formula::cup(kept))
            }
            Formula::Id => Some(Formula::Id),
        }
    }

    /// Replaces symbol `k` by `e` and renumbers the later symbols down by one.
    pub fn degeneracy(&self, k: usize) -> Result<Formula> {
        let n = self.type_n();
        if k == 0 || self.atom(k).is_none() {
            return Err(Error::OutOfRange { what: "symbol", index: k, bound: n });
        }
        let replaced = self.replace_atom(k, &mut |es| Formula::Eps(es.to_vec()));
        Ok(replaced.relabel(&|i| if i > k { i - 1 } else { i }))
    }
}
