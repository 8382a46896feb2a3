//! The defining relations among the unit, cup product and braces, as exact
//! identities checked on random normalized cochains.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;

use super::{BraceConvention, Cochain};
use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};

/// Largest arity of the two sides a sampled instance may produce.
pub const MAX_OUTPUT_ARITY: usize = 6;

/// Largest input arity used when sampling.
pub const MAX_INPUT_ARITY: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `e⌣x = x⌣e = x`.
    Unit,
    /// `(x⌣y)⌣z = x⌣(y⌣z)`.
    CupAssociative,
    /// `x₁{x₂,..,xₙ} = 0` when some `xᵢ` is the unit.
    Normalized,
    /// `(x₁·x₂){y₁..yₙ} = Σₖ (-1)^ε x₁{y₁..yₖ}·x₂{yₖ₊₁..yₙ}`, `ε = |x₂| Σ_{j≤k} |yⱼ|`.
    BraceOfProduct,
    /// `x{x₁..xₘ}{y₁..yₙ}` expanded over interleavings.
    BraceOfBrace,
    /// `∂(x⌣y) = ∂x⌣y + (-1)^p x⌣∂y` for `x` of arity `p`.
    CupLeibniz,
    /// The differential of a brace in terms of braces and cups.
    BraceDifferential,
}

impl Relation {
    pub const ALL: [Relation; 7] = [
        Relation::Unit,
        Relation::CupAssociative,
        Relation::Normalized,
        Relation::BraceOfProduct,
        Relation::BraceOfBrace,
        Relation::CupLeibniz,
        Relation::BraceDifferential,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Relation::Unit => "unit",
            Relation::CupAssociative => "cup-associative",
            Relation::Normalized => "normalized",
            Relation::BraceOfProduct => "brace-of-product",
            Relation::BraceOfBrace => "brace-of-brace",
            Relation::CupLeibniz => "cup-leibniz",
            Relation::BraceDifferential => "brace-differential",
        }
    }

    pub fn from_name(name: &str) -> Option<Relation> {
        Relation::ALL.into_iter().find(|r| r.name() == name)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Inputs for one relation. `split` is the number of inner cochains `xₚ`
/// for [`Relation::BraceOfBrace`] and the position of the unit for
/// [`Relation::Normalized`]; other relations ignore it.
#[derive(Debug, Clone)]
pub struct Instance {
    pub relation: Relation,
    pub inputs: Vec<Cochain>,
    pub split: usize,
}

/// A failed instance with the first basis tuple where the sides differ.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub instance: Instance,
    pub tuple: Vec<usize>,
    pub lhs: Vec<i64>,
    pub rhs: Vec<i64>,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arities: Vec<usize> = self.instance.inputs.iter().map(Cochain::arity).collect();
        write!(
            f,
            "{} fails for input arities {:?} (split {}) at tuple {:?}: {:?} != {:?}",
            self.instance.relation, arities, self.instance.split, self.tuple, self.lhs, self.rhs
        )
    }
}

fn parity(a: usize) -> usize {
    // |x| = arity - 1
    (a + 1) % 2
}

fn signed(c: Cochain, odd: usize) -> Cochain {
    if odd % 2 == 0 {
        c
    } else {
        c.neg()
    }
}

/// `x{ys}` with `x{} = x`.
fn brace_or_self(x: &Cochain, ys: &[Cochain], conv: BraceConvention) -> Result<Cochain> {
    if ys.is_empty() {
        Ok(x.clone())
    } else {
        x.brace_with(ys, conv)
    }
}

/// A brace with more arguments than inputs is zero at a nominal arity; such
/// terms are dropped so that every summand lives in `arity`.
fn sum(terms: Vec<Cochain>, alg: &Arc<FiniteAlgebra>, arity: usize) -> Result<Cochain> {
    let mut acc = Cochain::zero(alg, arity)?;
    for t in terms {
        if t.arity() != arity && t.is_zero() {
            continue;
        }
        acc = acc.add(&t)?;
    }
    Ok(acc)
}

/// All `0 ≤ i₁ ≤ j₁ ≤ i₂ ≤ .. ≤ jₘ ≤ n`, as `[(i₁, j₁), ..]`.
pub(crate) fn interleavings(m: usize, n: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(m: usize, n: usize, from: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in from..=n {
            for j in i..=n {
                cur.push((i, j));
                go(m, n, j, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(m, n, 0, &mut Vec::new(), &mut out);
    out
}

/// Both sides of the relation on the given inputs.
pub fn sides(inst: &Instance, conv: BraceConvention) -> Result<(Cochain, Cochain)> {
    let (lhs, rhs) = raw_sides(inst, conv)?;
    let alg = lhs.algebra().clone();
    let arities: Vec<usize> = inst.inputs.iter().map(Cochain::arity).collect();
    let arity = output_arity(inst.relation, &arities).unwrap_or(0);
    Ok((sum(vec![lhs], &alg, arity)?, sum(vec![rhs], &alg, arity)?))
}

fn raw_sides(inst: &Instance, conv: BraceConvention) -> Result<(Cochain, Cochain)> {
    let xs = &inst.inputs;
    let arities: Vec<usize> = xs.iter().map(Cochain::arity).collect();
    let arity = output_arity(inst.relation, &arities).unwrap_or(0);
    let need = |k: usize| -> Result<()> {
        if xs.len() < k {
            return Err(Error::Invalid(alloc::format!("{} needs at least {k} inputs", inst.relation)));
        }
        Ok(())
    };
    match inst.relation {
        Relation::Unit => {
            need(1)?;
            let e = Cochain::unit(xs[0].algebra());
            let left = e.cup(&xs[0])?;
            let right = xs[0].cup(&e)?;
            // both identities at once: e⌣x + x⌣e = 2x
            Ok((left.add(&right)?, xs[0].scale(2)))
        }
        Relation::CupAssociative => {
            need(3)?;
            Ok((xs[0].cup(&xs[1])?.cup(&xs[2])?, xs[0].cup(&xs[1].cup(&xs[2])?)?))
        }
        Relation::Normalized => {
            need(1)?;
            let mut ys = xs[1..].to_vec();
            let at = inst.split.min(ys.len());
            ys.insert(at, Cochain::unit(xs[0].algebra()));
            let lhs = xs[0].brace_with(&ys, conv)?;
            let rhs = Cochain::zero(xs[0].algebra(), arity)?;
            Ok((lhs, rhs))
        }
        Relation::BraceOfProduct => {
            need(3)?;
            let (x1, x2, ys) = (&xs[0], &xs[1], &xs[2..]);
            let lhs = x1.dot(x2)?.brace_with(ys, conv)?;
            let mut terms = Vec::new();
            for k in 0..=ys.len() {
                let eps = parity(x2.arity()) * ys[..k].iter().map(|y| parity(y.arity())).sum::<usize>();
                let a = brace_or_self(x1, &ys[..k], conv)?;
                let b = brace_or_self(x2, &ys[k..], conv)?;
                terms.push(signed(a.dot(&b)?, eps));
            }
            let rhs = sum(terms, x1.algebra(), arity)?;
            Ok((lhs, rhs))
        }
        Relation::BraceOfBrace => {
            let m = inst.split;
            need(m + 2)?;
            let (x, inner, ys) = (&xs[0], &xs[1..=m], &xs[m + 1..]);
            let n = ys.len();
            let lhs = brace_or_self(x, inner, conv)?.brace_with(ys, conv)?;
            let mut terms = Vec::new();
            for seq in interleavings(m, n) {
                let mut args = Vec::new();
                let mut eps = 0;
                let mut next = 0;
                for (p, &(i, j)) in seq.iter().enumerate() {
                    args.extend_from_slice(&ys[next..i]);
                    args.push(brace_or_self(&inner[p], &ys[i..j], conv)?);
                    eps += parity(inner[p].arity()) * ys[..i].iter().map(|y| parity(y.arity())).sum::<usize>();
                    next = j;
                }
                args.extend_from_slice(&ys[next..]);
                terms.push(signed(x.brace_with(&args, conv)?, eps));
            }
            let rhs = sum(terms, x.algebra(), arity)?;
            Ok((lhs, rhs))
        }
        Relation::CupLeibniz => {
            need(2)?;
            let (x, y) = (&xs[0], &xs[1]);
            let lhs = x.cup(y)?.differential()?;
            let rhs = x.differential()?.cup(y)?.add(&signed(x.cup(&y.differential()?)?, x.arity()))?;
            Ok((lhs, rhs))
        }
        Relation::BraceDifferential => {
            need(2)?;
            let (x, ys) = (&xs[0], &xs[1..]);
            let m = ys.len();
            let p: Vec<usize> = ys.iter().map(|y| parity(y.arity())).collect();
            let lhs = x.brace_with(ys, conv)?.differential()?;
            let mut terms = Vec::new();
            terms.push(signed(x.differential()?.brace_with(ys, conv)?, p.iter().sum()));
            for i in 0..m {
                let mut zs = ys.to_vec();
                zs[i] = ys[i].differential()?;
                terms.push(signed(x.brace_with(&zs, conv)?, p[i + 1..].iter().sum()));
            }
            let rest: usize = p[1..].iter().sum();
            terms.push(signed(ys[0].cup(&brace_or_self(x, &ys[1..], conv)?)?, 1 + p[0] * (1 + rest)));
            for i in 0..m.saturating_sub(1) {
                let mut zs = ys[..i].to_vec();
                zs.push(ys[i].cup(&ys[i + 1])?);
                zs.extend_from_slice(&ys[i + 2..]);
                let eps = p[i] * (1 + p[i + 1]) + p[i + 2..].iter().sum::<usize>();
                terms.push(signed(x.brace_with(&zs, conv)?, eps));
            }
            let head = brace_or_self(x, &ys[..m - 1], conv)?;
            let eps = 1 + parity(head.arity()) * ys[m - 1].arity();
            terms.push(signed(head.cup(&ys[m - 1])?, eps));
            let rhs = sum(terms, x.algebra(), arity)?;
            Ok((lhs, rhs))
        }
    }
}

/// Arity of both sides; `None` when every brace involved is empty.
fn output_arity(rel: Relation, a: &[usize]) -> Option<usize> {
    let total: usize = a.iter().sum();
    match rel {
        Relation::Unit | Relation::CupAssociative => Some(total),
        Relation::Normalized => total.checked_sub(a.len()),
        Relation::BraceOfProduct => total.checked_sub(a.len().saturating_sub(2)),
        Relation::BraceOfBrace => total.checked_sub(a.len().saturating_sub(1)),
        Relation::CupLeibniz => Some(total + 1),
        Relation::BraceDifferential => (total + 2).checked_sub(a.len()),
    }
}

/// Random inputs for `rel`: input arities are at most [`MAX_INPUT_ARITY`]
/// and both sides have arity at most [`MAX_OUTPUT_ARITY`].
pub fn sample<R: Rng + ?Sized>(rel: Relation, alg: &Arc<FiniteAlgebra>, rng: &mut R) -> Result<Instance> {
    loop {
        let mut split = 0;
        let arities: Vec<usize> = match rel {
            Relation::Unit => alloc::vec![rng.gen_range(0..=MAX_INPUT_ARITY)],
            Relation::CupAssociative => (0..3).map(|_| rng.gen_range(0..=MAX_INPUT_ARITY)).collect(),
            Relation::CupLeibniz => (0..2).map(|_| rng.gen_range(0..=MAX_INPUT_ARITY)).collect(),
            Relation::Normalized => {
                let x = rng.gen_range(1..=MAX_INPUT_ARITY);
                let n = rng.gen_range(0..x);
                split = rng.gen_range(0..=n);
                let mut a = alloc::vec![x];
                a.extend((0..n).map(|_| rng.gen_range(0..=MAX_INPUT_ARITY)));
                a
            }
            Relation::BraceOfProduct => {
                let n = rng.gen_range(1..=3);
                (0..n + 2).map(|_| rng.gen_range(0..=MAX_INPUT_ARITY)).collect()
            }
            Relation::BraceOfBrace => {
                split = rng.gen_range(1..=2);
                let n = rng.gen_range(1..=3);
                let mut a = alloc::vec![rng.gen_range(split..=MAX_INPUT_ARITY)];
                a.extend((0..split + n).map(|_| rng.gen_range(0..=MAX_INPUT_ARITY)));
                a
            }
            Relation::BraceDifferential => {
                let x = rng.gen_range(1..=MAX_INPUT_ARITY);
                let m = rng.gen_range(1..=x);
                let mut a = alloc::vec![x];
                a.extend((0..m).map(|_| rng.gen_range(0..=MAX_INPUT_ARITY)));
                a
            }
        };
        if output_arity(rel, &arities).is_none_or(|a| a > MAX_OUTPUT_ARITY) {
            continue;
        }
        let inputs = arities
            .iter()
            .map(|&a| Cochain::random_normalized(alg, a, rng))
            .collect::<Result<Vec<_>>>()?;
        return Ok(Instance { relation: rel, inputs, split });
    }
}

/// Checks `trials` random instances; returns the first failure.
pub fn check_relation<R: Rng + ?Sized>(
    rel: Relation,
    alg: &Arc<FiniteAlgebra>,
    rng: &mut R,
    trials: usize,
    conv: BraceConvention,
) -> Result<Option<Counterexample>> {
    for _ in 0..trials {
        let instance = sample(rel, alg, rng)?;
        let (lhs, rhs) = sides(&instance, conv)?;
        if let Some((tuple, l, r)) = lhs.first_difference(&rhs) {
            return Ok(Some(Counterexample { instance, tuple, lhs: l, rhs: r }));
        }
    }
    Ok(None)
}
