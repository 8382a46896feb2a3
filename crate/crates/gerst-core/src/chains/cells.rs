use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{IntChainComplex, SparseMatrix};
use crate::error::{Error, Result};
use crate::formula::{enumerate, parse, Formula};
use crate::posets::OrderPair;
use crate::subdivision::SigmaShape;

/// Largest type accepted by [`cellular_complex`].
pub const MAX_CELLULAR_TYPE: usize = 5;

/// A formal integer combination of formula cells of one type and degree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CellChain {
    terms: BTreeMap<Formula, i64>,
}

impl CellChain {
    pub fn zero() -> CellChain {
        CellChain::default()
    }

    pub fn cell(f: Formula) -> CellChain {
        CellChain::term(1, f)
    }

    pub fn term(c: i64, f: Formula) -> CellChain {
        let mut out = CellChain::zero();
        out.add_term(c, f);
        out
    }

    pub fn add_term(&mut self, c: i64, f: Formula) {
        if c == 0 {
            return;
        }
        let f = f.canonical();
        let entry = self.terms.entry(f.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&f);
        }
    }

    pub fn add(&mut self, other: &CellChain, c: i64) {
        for (f, &v) in &other.terms {
            self.add_term(c * v, f.clone());
        }
    }

    pub fn scaled(&self, c: i64) -> CellChain {
        let mut out = CellChain::zero();
        out.add(self, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Formula, i64)> {
        self.terms.iter().map(|(f, &c)| (f, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, f: &Formula) -> i64 {
        self.terms.get(f).copied().unwrap_or(0)
    }

    /// Degree of the terms, `None` for the zero chain or mixed degrees.
    pub fn degree(&self) -> Option<usize> {
        let mut dims = self.terms.keys().map(Formula::dim);
        let d = dims.next()?;
        dims.all(|e| e == d).then_some(d)
    }

    /// Cellular boundary with the product orientation of the cells.
    pub fn boundary(&self) -> CellChain {
        let mut out = CellChain::zero();
        for (f, &c) in &self.terms {
            for (s, h) in f.boundary() {
                out.add_term(c * s, h);
            }
        }
        out
    }

    /// Relabels every cell by `tau`, with the sign of reordering the simplex
    /// factors (graded by valence) into the new symbol order.
    pub fn permute(&self, tau: &[usize]) -> Result<CellChain> {
        let mut out = CellChain::zero();
        for (f, &c) in &self.terms {
            let v = f.valences();
            let mut odd = 0;
            for a in 0..v.len() {
                for b in a + 1..v.len() {
                    if tau[a] > tau[b] {
                        odd += v[a] * v[b];
                    }
                }
            }
            out.add_term(if odd % 2 == 0 { c } else { -c }, f.permute(tau)?);
        }
        Ok(out)
    }

    /// Extends [`compose_cells`] bilinearly.
    pub fn compose(&self, k: usize, other: &CellChain) -> Result<CellChain> {
        let mut out = CellChain::zero();
        for (f, &c) in &self.terms {
            for (g, &d) in &other.terms {
                out.add(&compose_cells(f, k, g)?, c * d);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for CellChain {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(out, "0");
        }
        for (idx, (f, &c)) in self.terms.iter().enumerate() {
            let sign = match (idx, c < 0) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            match c.abs() {
                1 => write!(out, "{sign}{f}")?,
                a => write!(out, "{sign}{a}·{f}")?,
            }
        }
        Ok(())
    }
}

/// The cellular chain complex of `𝓕(n)` for `1 ≤ n ≤ 5`.
pub fn cellular_complex(n: usize) -> Result<IntChainComplex> {
    if n == 0 || n > MAX_CELLULAR_TYPE {
        return Err(Error::OutOfRange { what: "cellular type", index: n, bound: MAX_CELLULAR_TYPE });
    }
    cellular_complex_unchecked(n)
}

/// [`cellular_complex`] without the size guard; accepts every enumerable type.
pub fn cellular_complex_unchecked(n: usize) -> Result<IntChainComplex> {
    if n == 0 {
        return Err(Error::OutOfRange { what: "cellular type", index: n, bound: MAX_CELLULAR_TYPE });
    }
    let cells: Vec<Vec<Formula>> = (0..n).map(|d| enumerate(n, Some(d))).collect::<Result<_>>()?;
    complex_on(&cells)
}

fn complex_on(cells: &[Vec<Formula>]) -> Result<IntChainComplex> {
    let index: Vec<BTreeMap<&Formula, usize>> =
        cells.iter().map(|fs| fs.iter().enumerate().map(|(i, f)| (f, i)).collect()).collect();
    let mut boundaries = Vec::with_capacity(cells.len());
    for d in 0..cells.len() {
        if d == 0 {
            boundaries.push(SparseMatrix::zero(0, cells[0].len()));
            continue;
        }
        let mut columns = Vec::with_capacity(cells[d].len());
        for f in &cells[d] {
            let mut col: BTreeMap<usize, i64> = BTreeMap::new();
            for (s, h) in f.boundary() {
                let h = h.canonical();
                let row = *index[d - 1]
                    .get(&h)
                    .ok_or_else(|| Error::Invalid(format!("face {h} of {f} is not a cell of the complex")))?;
                *col.entry(row).or_insert(0) += s;
            }
            columns.push(col.into_iter().filter(|&(_, v)| v != 0).collect());
        }
        boundaries.push(SparseMatrix::from_columns(cells[d - 1].len(), columns));
    }
    let bases = cells.iter().map(|fs| fs.iter().map(ToString::to_string).collect()).collect();
    IntChainComplex::new(bases, boundaries)
}

/// The formulas of type `n` whose order pair lies below `(t, p)`, as a
/// subcomplex of the cellular complex.
pub fn subcomplex_iprime(n: usize, op: &OrderPair) -> Result<IntChainComplex> {
    if op.n() != n {
        return Err(Error::Invalid(format!("order pair {op} is not on {n} symbols")));
    }
    if n == 0 || n > MAX_CELLULAR_TYPE {
        return Err(Error::OutOfRange { what: "cellular type", index: n, bound: MAX_CELLULAR_TYPE });
    }
    let mut cells = Vec::with_capacity(n);
    for d in 0..n {
        let mut kept = Vec::new();
        for f in enumerate(n, Some(d))? {
            if f.order_pair()?.leq(op) {
                kept.push(f);
            }
        }
        cells.push(kept);
    }
    while cells.len() > 1 && cells.last().is_some_and(Vec::is_empty) {
        cells.pop();
    }
    complex_on(&cells)
}

/// Integer determinant by fraction-free elimination.
fn determinant(mut m: Vec<Vec<i64>>) -> i64 {
    let n = m.len();
    let mut sign = 1;
    let mut prev = 1i64;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| m[r][c] != 0) else { return 0 };
        if p != c {
            m.swap(p, c);
            sign = -sign;
        }
        for r in c + 1..n {
            for j in c + 1..n {
                m[r][j] = (m[r][j] * m[c][c] - m[r][c] * m[c][j]) / prev;
            }
            m[r][c] = 0;
        }
        prev = m[c][c];
    }
    if n == 0 {
        1
    } else {
        sign * m[n - 1][n - 1]
    }
}

/// Orientation sign of the fiberwise subdivision `𝓕_{g′} → Δᵛ × 𝓕_{f′}`,
/// with `Δᵛ` first and every simplex in the coordinates `s₁..s_m`.
pub fn subdivision_orientation(g: &Formula) -> i64 {
    let valences = g.valences();
    let mut offset = vec![0; valences.len() + 1];
    for (i, v) in valences.iter().enumerate() {
        offset[i + 1] = offset[i] + v;
    }
    let dim = offset[valences.len()];
    let column = |acc: &mut Vec<i64>, (i, j): (usize, usize)| {
        if j == 0 {
            for jj in 1..=valences[i - 1] {
                acc[offset[i - 1] + jj - 1] -= 1;
            }
        } else {
            acc[offset[i - 1] + j - 1] += 1;
        }
    };
    let shape = SigmaShape::of(g);
    let mut rows = Vec::with_capacity(dim);
    for group in shape.sigma1.iter().skip(1) {
        let mut row = vec![0; dim];
        for &l in group {
            column(&mut row, l);
        }
        rows.push(row);
    }
    for (idx, groups) in shape.sigma2.iter().enumerate() {
        for group in groups.iter().skip(1) {
            let mut row = vec![0; dim];
            for &j in group {
                column(&mut row, (idx + 1, j));
            }
            rows.push(row);
        }
    }
    debug_assert_eq!(rows.len(), dim);
    determinant(rows).signum()
}

/// The cellular operad composition `f ∘_k f′`: the top-dimensional
/// `v_f(k)`-thickenings `g′` of `f′`, each substituted into `f` with the
/// orientation sign of the subdivision and of moving the `f′` factors past
/// the symbols of `f` after `k`.
pub fn compose_cells(f: &Formula, k: usize, f_prime: &Formula) -> Result<CellChain> {
    let n = f.type_n();
    let v = f.valence(k).ok_or(Error::OutOfRange { what: "symbol", index: k, bound: n })?;
    if f.id_count() > 0 || f_prime.id_count() > 0 {
        return Err(Error::Invalid("cells are formulas without ids".into()));
    }
    let after: usize = f.valences()[k..].iter().sum();
    let shift = if (f_prime.dim() * after) % 2 == 0 { 1 } else { -1 };
    let mut out = CellChain::zero();
    for g in f_prime.top_thickenings(v) {
        out.add_term(shift * subdivision_orientation(&g), f.substitute(k, &g)?);
    }
    Ok(out)
}

/// The left side of the brace-cup relation, `b_{n+1} ∘₁ (1*2)`, with
/// `b_{n+1} = 1(2,..,n+1)`.
pub fn brace_cup_left(n: usize) -> Result<CellChain> {
    compose_cells(&brace_cell(n + 1), 1, &parse("1*2")?)
}

/// The right side `Σ_k (b_{k+1} ⌣ b_{n-k}) ∘ τ_k`, `τ_k` moving the second
/// input to position `k + 2`.
pub fn brace_cup_right(n: usize) -> Result<CellChain> {
    let cup = CellChain::cell(parse("1*2")?);
    let mut out = CellChain::zero();
    for k in 0..=n {
        let with_left = cup.compose(1, &CellChain::cell(brace_cell(k + 1)))?;
        let both = with_left.compose(k + 2, &CellChain::cell(brace_cell(n - k + 1)))?;
        let mut tau: Vec<usize> = Vec::with_capacity(n + 2);
        tau.push(1);
        tau.extend(3..=k + 2);
        tau.push(2);
        tau.extend(k + 3..=n + 2);
        out.add(&both.permute(&tau)?, 1);
    }
    Ok(out)
}

/// `1(2,..,m)`; `1` when `m = 1`.
pub fn brace_cell(m: usize) -> Formula {
    Formula::Sym(1, (2..=m).map(Formula::sym).collect())
}

/// `∂(f ∘_k f′) − (∂f) ∘_k f′ − (−1)^{deg f} f ∘_k ∂f′`.
pub fn chain_map_defect(f: &Formula, k: usize, f_prime: &Formula) -> Result<CellChain> {
    let mut out = compose_cells(f, k, f_prime)?.boundary();
    out.add(&CellChain::cell(f.clone()).boundary().compose(k, &CellChain::cell(f_prime.clone()))?, -1);
    let sign = if f.dim() % 2 == 0 { -1 } else { 1 };
    out.add(&CellChain::cell(f.clone()).compose(k, &CellChain::cell(f_prime.clone()).boundary())?, sign);
    Ok(out)
}

/// The hexagon edges as `(label, from, to)` for the two paths from `1*2*3` to `3*2*1`.
pub const BRAID_PATHS: [[(&str, &str, &str); 3]; 2] = [
    [("1*2(3)", "1*2*3", "1*3*2"), ("1(3)*2", "1*3*2", "3*1*2"), ("3*1(2)", "3*1*2", "3*2*1")],
    [("1(2)*3", "1*2*3", "2*1*3"), ("2*1(3)", "2*1*3", "2*3*1"), ("2(3)*1", "2*3*1", "3*2*1")],
];

/// The 2-cells filling the hexagon.
pub const BRAID_CELLS: [&str; 3] = ["1(2,3)", "1(2(3))", "1(3,2)"];

fn directed_edge(label: &str, from: &str, to: &str) -> Result<Option<CellChain>> {
    let e = CellChain::cell(parse(label)?);
    let mut want = CellChain::cell(parse(to)?);
    want.add(&CellChain::cell(parse(from)?), -1);
    let b = e.boundary();
    Ok(if b == want {
        Some(e)
    } else if b == want.scaled(-1) {
        Some(e.scaled(-1))
    } else {
        None
    })
}

/// The two hexagon paths as 1-chains, `None` if an edge does not join its endpoints.
pub fn braid_paths() -> Result<Option<[CellChain; 2]>> {
    let mut out = [CellChain::zero(), CellChain::zero()];
    for (path, chain) in BRAID_PATHS.iter().zip(out.iter_mut()) {
        for &(label, from, to) in path {
            match directed_edge(label, from, to)? {
                Some(e) => chain.add(&e, 1),
                None => return Ok(None),
            }
        }
    }
    Ok(Some(out))
}

/// Signs `(ε₁, ε₂, ε₃)` with `∂(Σ εᵢ cᵢ)` equal to the difference of the two
/// hexagon paths, over the cells [`BRAID_CELLS`].
pub fn braid_filling() -> Result<Option<[i64; 3]>> {
    let Some([p, q]) = braid_paths()? else { return Ok(None) };
    let mut target = p;
    target.add(&q, -1);
    let cells: Vec<CellChain> = BRAID_CELLS.iter().map(|c| parse(c).map(CellChain::cell)).collect::<Result<_>>()?;
    for mask in 0..8u32 {
        let signs = [0, 1, 2].map(|i| if mask >> i & 1 == 0 { 1 } else { -1 });
        let mut sum = CellChain::zero();
        for (c, s) in cells.iter().zip(signs) {
            sum.add(c, s);
        }
        if sum.boundary() == target {
            return Ok(Some(signs));
        }
    }
    Ok(None)
}

/// Whether the hexagon of transpositions bounds the three 2-cells.
pub fn braid_check() -> bool {
    matches!(braid_filling(), Ok(Some(_)))
}

