use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;

use super::{sum, Scalar, SimplexPoint};
use crate::error::{Error, Result};
use crate::formula::{Formula, Tableau, TableauMark};

/// A point of `𝓕_{g,𝐪}`: one simplex point per integer symbol of `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThickCellPoint<S> {
    pub formula: Formula,
    /// `coords[i - 1]` lies in `Δ^{v(i)}_{qᵢ}`.
    pub coords: Vec<SimplexPoint<S>>,
}

impl<S: Scalar> ThickCellPoint<S> {
    pub fn new(formula: Formula, coords: Vec<SimplexPoint<S>>) -> Result<ThickCellPoint<S>> {
        let v = formula.valences();
        let n = formula.type_n();
        if !formula.uses_symbols(n) || coords.len() != n {
            return Err(Error::Invalid(format!("{formula} needs {n} simplex points, got {}", coords.len())));
        }
        for (i, (c, &vi)) in coords.iter().zip(&v).enumerate() {
            if c.dim() != vi {
                return Err(Error::Invalid(format!("symbol {} has valence {vi} but its point has dimension {}", i + 1, c.dim())));
            }
        }
        Ok(ThickCellPoint { formula, coords })
    }

    pub fn sizes(&self) -> Vec<S> {
        self.coords.iter().map(|c| c.size.clone()).collect()
    }

    pub fn check_sizes(&self, q: &[S]) -> Result<()> {
        if q.len() != self.coords.len() || self.coords.iter().zip(q).any(|(c, qi)| !c.size.near(qi)) {
            return Err(Error::Invalid(format!("point sizes do not match {q:?}")));
        }
        Ok(())
    }

    /// Moves the point to the thickening of least dimension containing it:
    /// a zero coordinate `s_{ij}` is dropped whenever the face `∂_{ij}` still
    /// reduces to the same formula.
    pub fn normalized(&self) -> ThickCellPoint<S> {
        let mut out = self.clone();
        let Some(target) = self.formula.reduce() else { return out };
        'outer: loop {
            for i in 1..=out.coords.len() {
                let v = out.coords[i - 1].dim();
                if v == 0 {
                    continue;
                }
                for j in 0..=v {
                    if !out.coords[i - 1].coords[j].near_zero() {
                        continue;
                    }
                    let Ok(h) = out.formula.face(i, j) else { continue };
                    if h.reduce().as_ref() == Some(&target) {
                        out.formula = h;
                        out.coords[i - 1].coords.remove(j);
                        continue 'outer;
                    }
                }
            }
            return out;
        }
    }

    /// Moves the point to the open cell containing it: every zero coordinate
    /// `s_{ij}` is dropped by passing to the face `∂_{ij}`.
    pub fn carrier(&self) -> ThickCellPoint<S> {
        let mut out = self.clone();
        'outer: loop {
            for i in 1..=out.coords.len() {
                let v = out.coords[i - 1].dim();
                for j in 0..=v {
                    if v == 0 || !out.coords[i - 1].coords[j].near_zero() {
                        continue;
                    }
                    let Ok(h) = out.formula.face(i, j) else { continue };
                    out.formula = h.canonical();
                    out.coords[i - 1].coords.remove(j);
                    continue 'outer;
                }
            }
            return out;
        }
    }

    /// Equality up to the gluing of thickened cells.
    pub fn same_point(&self, other: &ThickCellPoint<S>) -> bool {
        let (a, b) = (self.carrier(), other.carrier());
        a.formula == b.formula && a.coords.len() == b.coords.len() && a.coords.iter().zip(&b.coords).all(|(x, y)| x.near(y))
    }

    fn scaled(&self, p: &[S], invert: bool) -> ThickCellPoint<S> {
        let coords = self
            .coords
            .iter()
            .zip(p)
            .map(|(c, pi)| if invert { c.scaled(&(S::one() / pi.clone())) } else { c.scaled(pi) })
            .collect();
        ThickCellPoint { formula: self.formula.clone(), coords }
    }
}

/// How σ₁ and σ₂ read the tableau of a thickening.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaShape {
    /// Labels `(i, j)` summed into each coordinate of σ₁; runs between ids.
    pub sigma1: Vec<Vec<(usize, usize)>>,
    /// For each symbol, the indices `j` summed into each coordinate of σ₂ᵢ;
    /// labels separated only by id entries are merged.
    pub sigma2: Vec<Vec<Vec<usize>>>,
}

impl SigmaShape {
    pub fn of(g: &Formula) -> SigmaShape {
        let mut sigma1 = vec![Vec::new()];
        for cell in Tableau::of(g).cells {
            match cell.mark {
                TableauMark::Id => sigma1.push(Vec::new()),
                TableauMark::Label { symbol, index } => sigma1.last_mut().expect("nonempty").push((symbol, index)),
            }
        }
        let sigma2 = (1..=g.type_n())
            .map(|i| {
                let es = g.atom(i).unwrap_or(&[]);
                let mut groups = vec![vec![0]];
                for (m, e) in es.iter().enumerate() {
                    if e.is_pure_id() {
                        groups.last_mut().expect("nonempty").push(m + 1);
                    } else {
                        groups.push(vec![m + 1]);
                    }
                }
                groups
            })
            .collect();
        SigmaShape { sigma1, sigma2 }
    }
}

/// `σ: 𝓕_{f,k,𝐪} → Δᵏ_{Σq} × 𝓕_{f,𝐪}` on a point of the thickening `x.formula`.
pub fn fiberwise_sigma<S: Scalar>(q: &[S], x: &ThickCellPoint<S>) -> Result<(SimplexPoint<S>, ThickCellPoint<S>)> {
    x.check_sizes(q)?;
    let f = x.formula.reduce().ok_or_else(|| Error::Invalid("a thickening needs an integer symbol".into()))?;
    let shape = SigmaShape::of(&x.formula);
    let at = |(i, j): (usize, usize)| x.coords[i - 1].coords[j].clone();
    let first = shape.sigma1.iter().map(|grp| grp.iter().fold(S::zero(), |acc, &l| acc + at(l))).collect();
    let second = shape
        .sigma2
        .iter()
        .enumerate()
        .map(|(idx, groups)| SimplexPoint {
            size: q[idx].clone(),
            coords: groups.iter().map(|grp| grp.iter().fold(S::zero(), |acc, &j| acc + at((idx + 1, j)))).collect(),
        })
        .collect();
    Ok((SimplexPoint { size: sum(q), coords: first }, ThickCellPoint { formula: f, coords: second }))
}

/// Inverse of [`fiberwise_sigma`]: the cut points of `a` are laid over the
/// label segments of `y` read in tableau order, each cut inserting an id.
/// The result is normalized.
pub fn fiberwise_sigma_inverse<S: Scalar>(a: &SimplexPoint<S>, y: &ThickCellPoint<S>) -> Result<ThickCellPoint<S>> {
    let f = &y.formula;
    if f.id_count() != 0 {
        return Err(Error::Invalid(format!("{f} is not a formula without ids")));
    }
    let q = y.sizes();
    if !a.size.near(&sum(&q)) {
        return Err(Error::Invalid("simplex size is not the total of the cell sizes".into()));
    }
    let labels = Tableau::of(f).labels();
    let len = |t: usize| y.coords[labels[t].0 - 1].coords[labels[t].1].clone();
    let mut ends = Vec::with_capacity(labels.len());
    let mut acc = S::zero();
    for t in 0..labels.len() {
        acc = acc + len(t);
        ends.push(acc.clone());
    }
    let positive: Vec<usize> = (0..labels.len()).filter(|&t| !len(t).near_zero()).collect();
    let mut cuts_in: Vec<Vec<S>> = vec![Vec::new(); labels.len()];
    let mut cut = S::zero();
    let mut from = 0;
    for m in 0..a.dim() {
        cut = cut + a.coords[m].clone();
        while from + 1 < positive.len() && ends[positive[from]] < cut && !ends[positive[from]].near(&cut) {
            from += 1;
        }
        let t = positive.get(from).copied().unwrap_or(0);
        cuts_in[t].push(cut.clone());
    }

    let mut counts: Vec<Vec<usize>> = y.coords.iter().map(|c| vec![0; c.coords.len()]).collect();
    let mut pieces: Vec<Vec<S>> = vec![Vec::new(); y.coords.len()];
    for (i, c) in y.coords.iter().enumerate() {
        for j in 0..c.coords.len() {
            let t = labels.iter().position(|&l| l == (i + 1, j)).expect("every label appears");
            let start = ends[t].clone() - len(t);
            let mut prev = start;
            for c in &cuts_in[t] {
                pieces[i].push(c.clone() - prev);
                prev = c.clone();
            }
            pieces[i].push(ends[t].clone() - prev);
            counts[i][j] = cuts_in[t].len();
        }
    }
    let g = insert_ids(f, &counts);
    let coords = pieces.into_iter().zip(&q).map(|(cs, qi)| SimplexPoint { size: qi.clone(), coords: cs }).collect();
    Ok(ThickCellPoint::new(g, coords)?.normalized())
}

fn insert_ids(f: &Formula, counts: &[Vec<usize>]) -> Formula {
    match f {
        Formula::Sym(i, es) => {
            let c = &counts[i - 1];
            let mut out = Vec::new();
            for j in 0..=es.len() {
                out.extend(core::iter::repeat(Formula::Id).take(c[j]));
                if j < es.len() {
                    out.push(insert_ids(&es[j], counts));
                }
            }
            Formula::Sym(*i, out)
        }
        Formula::Cup(fs) => Formula::cup(fs.iter().map(|e| insert_ids(e, counts)).collect()),
        Formula::Eps(es) => Formula::Eps(es.iter().map(|e| insert_ids(e, counts)).collect()),
        Formula::Id => Formula::Id,
    }
}

fn check_weights<S: Scalar>(p: &[S], n: usize) -> Result<()> {
    if p.len() != n {
        return Err(Error::Invalid(format!("weights have length {} but the formula has type {n}", p.len())));
    }
    if p.iter().any(|x| *x <= S::zero()) {
        return Err(Error::Invalid(format!("weights {p:?} must be positive")));
    }
    if !sum(p).near(&S::one()) {
        return Err(Error::Invalid(format!("weights {p:?} must sum to 1")));
    }
    Ok(())
}

/// `σ(𝐩): 𝓕_{f,k} → Δᵏ × 𝓕_f`, the fiberwise subdivision conjugated by
/// scaling symbol `i` by `pᵢ`.
pub fn sigma_p<S: Scalar>(p: &[S], x: &ThickCellPoint<S>) -> Result<(SimplexPoint<S>, ThickCellPoint<S>)> {
    check_weights(p, x.coords.len())?;
    x.check_sizes(&vec![S::one(); p.len()])?;
    let (a, y) = fiberwise_sigma(p, &x.scaled(p, false))?;
    Ok((a, y.scaled(p, true)))
}

/// Inverse of [`sigma_p`].
pub fn sigma_p_inverse<S: Scalar>(p: &[S], a: &SimplexPoint<S>, y: &ThickCellPoint<S>) -> Result<ThickCellPoint<S>> {
    check_weights(p, y.coords.len())?;
    y.check_sizes(&vec![S::one(); p.len()])?;
    Ok(fiberwise_sigma_inverse(a, &y.scaled(p, false))?.scaled(p, true))
}

/// Data for the associativity square of the fiberwise subdivision: `g` an
/// `l`-thickening of `f`, `h′` a `v_g(k)`-thickening of `f′`, weights `𝐩`, `𝐩′`.
#[derive(Debug, Clone)]
pub struct AssociativityCase<S> {
    pub f: Formula,
    pub f_prime: Formula,
    pub k: usize,
    pub g: Formula,
    pub h_prime: Formula,
    pub p: Vec<S>,
    pub p_prime: Vec<S>,
}

impl<S: Scalar> AssociativityCase<S> {
    pub fn new(g: Formula, k: usize, h_prime: Formula, p: Vec<S>, p_prime: Vec<S>) -> Result<AssociativityCase<S>> {
        let f = g.reduce().ok_or_else(|| Error::Invalid("g has no integer symbol".into()))?;
        let f_prime = h_prime.reduce().ok_or_else(|| Error::Invalid("h′ has no integer symbol".into()))?;
        let vk = g.valence(k).ok_or(Error::OutOfRange { what: "symbol", index: k, bound: g.type_n() })?;
        if h_prime.id_count() != vk {
            return Err(Error::Invalid(format!("h′ needs {vk} ids")));
        }
        check_weights(&p, f.type_n())?;
        check_weights(&p_prime, f_prime.type_n())?;
        Ok(AssociativityCase { f, f_prime, k, g, h_prime, p, p_prime })
    }

    /// `g′`: `h′` without the ids that receive pure-id entries of `g`.
    pub fn g_prime(&self) -> Formula {
        let drop: Vec<bool> = self.g.atom(self.k).unwrap_or(&[]).iter().map(Formula::is_pure_id).collect();
        self.h_prime.remove_ids(&drop).expect("h′ has an integer symbol")
    }

    /// `𝐩 ∘_k 𝐩′`.
    pub fn composed_weights(&self) -> Vec<S> {
        let k = self.k;
        let mut out = self.p[..k - 1].to_vec();
        out.extend(self.p_prime.iter().map(|x| self.p[k - 1].clone() * x.clone()));
        out.extend_from_slice(&self.p[k..]);
        out
    }

    /// The thickening `g ∗_k h′` carrying the points of the square.
    pub fn top(&self) -> Result<Formula> {
        self.g.substitute(self.k, &self.h_prime)
    }

    /// Runs both paths of the square on `x ∈ 𝓕_{g∗_k h′}`; `Ok(true)` when they agree.
    pub fn check(&self, x: &ThickCellPoint<S>) -> Result<bool> {
        let (k, j) = (self.k, self.f_prime.type_n());
        let top = self.top()?;
        if x.formula != top {
            return Err(Error::Invalid(format!("point is not on {top}")));
        }
        let g_prime = self.g_prime();
        if top.reduce() != Some(self.f.substitute(k, &g_prime)?) {
            return Ok(false);
        }
        let inner = |pt: &ThickCellPoint<S>, formula: Formula| ThickCellPoint {
            formula,
            coords: pt.coords[k - 1..k - 1 + j].to_vec(),
        };
        let outer = |pt: &ThickCellPoint<S>| {
            let mut out = pt.coords[..k - 1].to_vec();
            out.extend_from_slice(&pt.coords[k - 1 + j..]);
            out
        };

        let (a, y) = sigma_p(&self.composed_weights(), x)?;
        let (b, z) = sigma_p(&self.p_prime, &inner(&y, g_prime))?;

        let (c, w) = sigma_p(&self.p_prime, &inner(x, self.h_prime.clone()))?;
        let mut on_g = x.coords[..k - 1].to_vec();
        on_g.push(c);
        on_g.extend_from_slice(&x.coords[k - 1 + j..]);
        let (a2, u) = sigma_p(&self.p, &ThickCellPoint::new(self.g.clone(), on_g)?)?;

        let rest_left = outer(&y);
        let mut rest_right = u.coords.clone();
        let uk = rest_right.remove(k - 1);
        Ok(a.near(&a2)
            && b.near(&uk)
            && z.coords.len() == w.coords.len()
            && z.coords.iter().zip(&w.coords).all(|(s, t)| s.near(t))
            && rest_left.len() == rest_right.len()
            && rest_left.iter().zip(&rest_right).all(|(s, t)| s.near(t)))
    }
}

/// Runs [`AssociativityCase::check`] on a batch of points.
pub fn associativity_check<S: Scalar>(case: &AssociativityCase<S>, points: &[ThickCellPoint<S>]) -> Result<bool> {
    for x in points {
        if !case.check(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A random point of `Δⁿ_size` with rational-valued coordinates; with
/// `boundary`, some coordinates may vanish.
pub fn random_simplex_point<S: Scalar, R: Rng + ?Sized>(rng: &mut R, n: usize, size: &S, boundary: bool) -> SimplexPoint<S> {
    loop {
        let w: Vec<i64> = (0..=n)
            .map(|_| if boundary && rng.gen_ratio(1, 4) { 0 } else { rng.gen_range(1..=60) })
            .collect();
        let total: i64 = w.iter().sum();
        if total == 0 {
            continue;
        }
        let coords = w.iter().map(|&x| S::from_ratio(x, total) * size.clone()).collect();
        return SimplexPoint { size: size.clone(), coords };
    }
}

/// A random point of `𝓕_{g,𝐪}`.
pub fn random_cell_point<S: Scalar, R: Rng + ?Sized>(rng: &mut R, g: &Formula, q: &[S], boundary: bool) -> ThickCellPoint<S> {
    let coords = g.valences().iter().zip(q).map(|(&v, qi)| random_simplex_point(rng, v, qi, boundary)).collect();
    ThickCellPoint { formula: g.clone(), coords }
}
