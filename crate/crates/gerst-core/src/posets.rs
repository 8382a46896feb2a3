//! Consistent pairs `(t, p)` of a total and a partial order on `{1..n}`,
//! the poset they form, and its nerve.
//!
//! A pair is consistent when `p ⊆ t` and, whenever `i < j < k` in `t` and
//! `i < k` in `p`, also `i < j` in `p`. The order is `(t₁,p₁) ≤ (t₂,p₂)` iff
//! `p₁ ⊆ p₂` and every pair of `t₂` reversed in `t₁` lies in `p₂`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::chains::{HomologyGroup, IntChainComplex, SparseMatrix};
use crate::error::{Error, Result};

/// Largest `n` with a stored relation (relations are 8×8 bit matrices).
pub const MAX_N: usize = 8;

fn bit(i: usize, j: usize) -> u64 {
    1 << ((i - 1) * 8 + (j - 1))
}

/// Transitive closure of a strict relation given as pairs on `{1..n}`.
pub fn close(n: usize, pairs: &[(usize, usize)]) -> u64 {
    let mut rel = 0u64;
    for &(i, j) in pairs {
        rel |= bit(i, j);
    }
    for k in 1..=n {
        for i in 1..=n {
            if rel & bit(i, k) != 0 {
                for j in 1..=n {
                    if rel & bit(k, j) != 0 {
                        rel |= bit(i, j);
                    }
                }
            }
        }
    }
    rel
}

/// Both consistency clauses for a total order `t` (symbols in increasing
/// order) and a transitively closed relation `p`.
pub fn is_consistent(t: &[usize], p: u64) -> bool {
    let n = t.len();
    for a in 0..n {
        let i = t[a];
        if p & bit(i, i) != 0 {
            return false;
        }
        for b in 0..a {
            // t[a] sits after t[b], so p must not contain t[a] < t[b]
            if p & bit(i, t[b]) != 0 {
                return false;
            }
        }
    }
    for a in 0..n {
        for c in a + 1..n {
            if p & bit(t[a], t[c]) != 0 && (a + 1..c).any(|b| p & bit(t[a], t[b]) == 0) {
                return false;
            }
        }
    }
    true
}

/// A consistent pair of a total order and a closed partial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrderPair {
    t: Vec<usize>,
    p: u64,
}

impl OrderPair {
    /// `t` lists the symbols in increasing order; `p` is closed before checking.
    pub fn new(t: &[usize], p: &[(usize, usize)]) -> Result<OrderPair> {
        let n = t.len();
        if n > MAX_N {
            return Err(Error::OutOfRange { what: "order size", index: n, bound: MAX_N });
        }
        let mut seen = [false; MAX_N];
        for &i in t {
            if i == 0 || i > n || core::mem::replace(&mut seen[i - 1], true) {
                return Err(Error::Invalid(format!("total order {t:?} is not a permutation of 1..{n}")));
            }
        }
        if p.iter().any(|&(i, j)| i == 0 || j == 0 || i > n || j > n) {
            return Err(Error::Invalid("partial order mentions a symbol outside 1..n".into()));
        }
        let rel = close(n, p);
        if !is_consistent(t, rel) {
            return Err(Error::Invalid("inconsistent order pair".into()));
        }
        Ok(OrderPair { t: t.to_vec(), p: rel })
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    /// Symbols in `t`-increasing order.
    pub fn total(&self) -> &[usize] {
        &self.t
    }

    /// The closed relation `p`, bit `(i-1)*8 + (j-1)` set iff `i < j`.
    pub fn partial_bits(&self) -> u64 {
        self.p
    }

    pub fn p_less(&self, i: usize, j: usize) -> bool {
        self.p & bit(i, j) != 0
    }

    pub fn t_less(&self, i: usize, j: usize) -> bool {
        let pos = |x| self.t.iter().position(|&y| y == x);
        pos(i) < pos(j)
    }

    /// Pairs `i < j` of `p`, in lexicographic order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if self.p_less(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// Covering pairs of `p`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        self.pairs()
            .into_iter()
            .filter(|&(i, j)| !(1..=n).any(|k| self.p_less(i, k) && self.p_less(k, j)))
            .collect()
    }

    /// `self ≤ other`: `p ⊆ p'` and `t' ∩ tᵒᵖ ⊆ p'`.
    pub fn leq(&self, other: &OrderPair) -> bool {
        if self.n() != other.n() || self.p & !other.p != 0 {
            return false;
        }
        let n = self.n();
        let mut pos = [0usize; MAX_N];
        for (k, &i) in self.t.iter().enumerate() {
            pos[i - 1] = k;
        }
        for a in 0..n {
            for b in a + 1..n {
                let (i, j) = (other.t[a], other.t[b]);
                if pos[j - 1] < pos[i - 1] && !other.p_less(i, j) {
                    return false;
                }
            }
        }
        true
    }
}

impl fmt::Display for OrderPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("t=")?;
        for i in &self.t {
            write!(f, "{i}")?;
        }
        f.write_str(";p=")?;
        let covers: Vec<String> = self.covers().iter().map(|(i, j)| format!("{i}<{j}")).collect();
        f.write_str(&covers.join(","))
    }
}

impl core::str::FromStr for OrderPair {
    type Err = Error;

    /// Reads `t=3142;p=3<1,3<4`; `p` may list any generating pairs.
    fn from_str(s: &str) -> Result<OrderPair> {
        let bad = |m: &str| Error::Invalid(format!("order pair `{s}`: {m}"));
        let s = s.trim();
        let (t_part, p_part) = s.split_once(';').unwrap_or((s, "p="));
        let t_text = t_part.trim().strip_prefix("t=").ok_or_else(|| bad("expected `t=`"))?;
        let p_text = p_part.trim().strip_prefix("p=").ok_or_else(|| bad("expected `p=`"))?;
        let t = t_text
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| bad("t must be digits")))
            .collect::<Result<Vec<_>>>()?;
        let mut pairs = Vec::new();
        for item in p_text.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (a, b) = item.split_once('<').ok_or_else(|| bad("pairs look like `i<j`"))?;
            let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| bad("pair entries must be integers"));
            pairs.push((parse(a)?, parse(b)?));
        }
        OrderPair::new(&t, &pairs)
    }
}

/// Permutations of `1..=n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(a) = (0..n.saturating_sub(1)).rev().find(|&a| cur[a] < cur[a + 1]) else {
            return out;
        };
        let b = (a + 1..n).rev().find(|&b| cur[b] > cur[a]).expect("successor exists");
        cur.swap(a, b);
        cur[a + 1..].reverse();
    }
}

/// The poset of consistent pairs with its order relation as bit rows.
#[derive(Debug, Clone)]
pub struct PosetCategory {
    pub objects: Vec<OrderPair>,
    words: usize,
    leq: Vec<u64>,
}

impl PosetCategory {
    /// Builds the poset on the given objects.
    pub fn new(objects: Vec<OrderPair>) -> PosetCategory {
        let m = objects.len();
        let words = m.div_ceil(64);
        let mut leq = vec![0u64; m * words];
        for a in 0..m {
            for b in 0..m {
                if objects[a].leq(&objects[b]) {
                    leq[a * words + b / 64] |= 1 << (b % 64);
                }
            }
        }
        PosetCategory { objects, words, leq }
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.words + b / 64] & (1 << (b % 64)) != 0
    }

    /// Objects strictly above `a`, in index order.
    pub fn strictly_above(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&b| b != a && self.leq(a, b))
    }

    /// Number of strictly increasing chains with `d + 1` elements, for every `d`.
    pub fn chain_counts(&self) -> Vec<u128> {
        let m = self.len();
        // topological order: fewer pairs in p first; p strictly grows along chains
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&a| self.objects[a].p.count_ones());
        let mut ending: Vec<Vec<u128>> = vec![Vec::new(); m];
        let mut totals: Vec<u128> = Vec::new();
        for &b in &order {
            let mut counts = vec![1u128];
            for &a in &order {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                for (d, &c) in ending[a].iter().enumerate() {
                    if counts.len() <= d + 1 {
                        counts.push(0);
                    }
                    counts[d + 1] += c;
                }
            }
            for (d, &c) in counts.iter().enumerate() {
                if totals.len() <= d {
                    totals.push(0);
                }
                totals[d] += c;
            }
            ending[b] = counts;
        }
        totals
    }

    /// Euler characteristic of the nerve from chain counts.
    pub fn euler_characteristic(&self) -> i128 {
        self.chain_counts().iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i128 } else { -(c as i128) }).sum()
    }

    /// Order complex: chains `x₀ < ⋯ < x_d`, boundary `Σ (-1)^i (omit x_i)`.
    pub fn nerve(&self) -> Result<IntChainComplex> {
        let mut chains: Vec<Vec<Vec<u32>>> = vec![(0..self.len() as u32).map(|a| vec![a]).collect()];
        loop {
            let last = chains.last().expect("degree 0 present");
            let mut next = Vec::new();
            for c in last {
                let top = *c.last().expect("nonempty chain") as usize;
                for b in self.strictly_above(top) {
                    let mut e = c.clone();
                    e.push(b as u32);
                    next.push(e);
                }
            }
            if next.is_empty() {
                break;
            }
            next.sort_unstable();
            chains.push(next);
        }
        let mut boundaries = vec![SparseMatrix::zero(0, chains[0].len())];
        for d in 1..chains.len() {
            let below = &chains[d - 1];
            let cols = chains[d]
                .iter()
                .map(|c| {
                    (0..c.len())
                        .map(|i| {
                            let mut face = c.clone();
                            face.remove(i);
                            let row = below.binary_search(&face).expect("faces of chains are chains");
                            (row, if i % 2 == 0 { 1 } else { -1 })
                        })
                        .collect()
                })
                .collect();
            boundaries.push(SparseMatrix::from_columns(below.len(), cols));
        }
        let bases = chains
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|c| c.iter().map(|&a| self.objects[a as usize].to_string()).collect::<Vec<_>>().join(" < "))
                    .collect()
            })
            .collect();
        IntChainComplex::new(bases, boundaries)
    }
}

/// All consistent pairs on `{1..n}`, sorted by their text form.
pub fn enumerate_tn(n: usize) -> Result<PosetCategory> {
    Ok(PosetCategory::new(order_pairs(n)?))
}

/// The objects of [`enumerate_tn`] without the order relation.
pub fn order_pairs(n: usize) -> Result<Vec<OrderPair>> {
    if n == 0 || n > 6 {
        return Err(Error::OutOfRange { what: "poset size", index: n, bound: 6 });
    }
    let mut out = Vec::new();
    for t in permutations(n) {
        // candidate relations: subsets of the pairs of t
        let tpairs: Vec<(usize, usize)> =
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).map(|(a, b)| (t[a], t[b])).collect();
        for mask in 0u32..(1 << tpairs.len()) {
            let mut rel = 0u64;
            for (k, &(i, j)) in tpairs.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    rel |= bit(i, j);
                }
            }
            if close(n, &pairs_of(n, rel)) == rel && is_consistent(&t, rel) {
                out.push(OrderPair { t: t.clone(), p: rel });
            }
        }
    }
    let mut keyed: Vec<(String, OrderPair)> = out.into_iter().map(|o| (o.to_string(), o)).collect();
    keyed.sort_unstable_by(|a, b| a.0.cmp(&b.0));
    Ok(keyed.into_iter().map(|(_, o)| o).collect())
}

fn pairs_of(n: usize, rel: u64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if rel & bit(i, j) != 0 {
                out.push((i, j));
            }
        }
    }
    out
}

/// Homology of the nerve of the poset of consistent pairs on `{1..n}`.
pub fn nerve_homology(n: usize) -> Result<Vec<HomologyGroup>> {
    enumerate_tn(n)?.nerve()?.homology()
}
