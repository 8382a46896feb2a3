use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::hochschild::Cochain;

/// Evaluates a formula on cochains: symbol `i` becomes `xᵢ`, a symbol with
/// entries becomes the brace of `xᵢ` with the evaluated entries, `*` the cup
/// product, `_` the identity cochain, and `e` the unit (with entries, the cup
/// of the entries).
pub fn evaluate(f: &Formula, xs: &[Cochain]) -> Result<Cochain> {
    let n = f.type_n();
    if xs.len() < n {
        return Err(Error::Invalid(alloc::format!("{f} needs {n} cochains, got {}", xs.len())));
    }
    let alg = xs.first().map(Cochain::algebra).ok_or_else(|| Error::Invalid("no cochains supplied".into()))?;
    eval(f, xs, alg)
}

fn eval(f: &Formula, xs: &[Cochain], alg: &Arc<FiniteAlgebra>) -> Result<Cochain> {
    match f {
        Formula::Sym(i, es) if es.is_empty() => Ok(xs[i - 1].clone()),
        Formula::Sym(i, es) => {
            let ys: Vec<Cochain> = es.iter().map(|e| eval(e, xs, alg)).collect::<Result<_>>()?;
            xs[i - 1].brace(&ys)
        }
        Formula::Cup(fs) => {
            let mut acc = eval(&fs[0], xs, alg)?;
            for g in &fs[1..] {
                acc = acc.cup(&eval(g, xs, alg)?)?;
            }
            Ok(acc)
        }
        Formula::Id => Ok(Cochain::identity(alg)),
        Formula::Eps(es) if es.is_empty() => Ok(Cochain::unit(alg)),
        Formula::Eps(es) => eval(&Formula::cup(es.clone()), xs, alg),
    }
}

/// Parity of the twist below `f`, with the arity and cell dimension sums of
/// the subtree.
fn twist(f: &Formula, a: &[usize]) -> (usize, usize, usize) {
    let entries = |es: &[Formula]| {
        let parts: Vec<(usize, usize, usize)> = es.iter().map(|e| twist(e, a)).collect();
        let mut parity: usize = parts.iter().map(|p| p.0).sum();
        for (r, &(_, ar, dr)) in parts.iter().enumerate() {
            for &(_, as_, ds) in &parts[r + 1..] {
                parity += as_ * (ar + dr + 1) + dr * (ds + 1);
            }
        }
        let arity: usize = parts.iter().map(|p| p.1).sum();
        let dim: usize = parts.iter().map(|p| p.2).sum();
        (parity, arity, dim)
    };
    match f {
        Formula::Sym(i, es) => {
            let (ai, k) = (a[i - 1], es.len());
            let (p, ar, dr) = entries(es);
            let parity = p + (ai + 1) * ar + k * dr + k * k.saturating_sub(1) / 2;
            (parity, ai + ar, k + dr)
        }
        Formula::Cup(fs) | Formula::Eps(fs) => {
            let parts: Vec<(usize, usize, usize)> = fs.iter().map(|g| twist(g, a)).collect();
            let mut parity: usize = parts.iter().map(|p| p.0).sum();
            for (r, &(_, ar, _)) in parts.iter().enumerate() {
                for &(_, _, ds) in &parts[r + 1..] {
                    parity += ar * ds;
                }
            }
            (parity, parts.iter().map(|p| p.1).sum::<usize>(), parts.iter().map(|p| p.2).sum::<usize>())
        }
        Formula::Id => (0, 0, 0),
    }
}

/// Sign making `θ(f; x) = κ · evaluate(f, x)` a chain map, for inputs of
/// the given arities.
///
/// The sign is the Koszul sign of reading inputs and cell factors in order of
/// appearance, times local signs at each node: a symbol `i` with `k` entries
/// contributes `k(k-1)/2 + (aᵢ + 1)·A + k·D`, each pair of its entries
/// `r < s` contributes `Aₛ(Aᵣ + Dᵣ + 1) + Dᵣ(Dₛ + 1)`, and each pair of cup
/// factors `r < s` contributes `AᵣDₛ`. Here `A` and `D` are the sums of input
/// arities and cell dimensions below.
pub fn evaluation_sign(f: &Formula, arities: &[usize]) -> Result<i64> {
    let n = f.type_n();
    if arities.len() < n {
        return Err(Error::Invalid(alloc::format!("{f} needs {n} arities, got {}", arities.len())));
    }
    let order = f.symbols();
    let v = f.valences();
    let mut parity = twist(f, arities).0;
    for (x, &i) in order.iter().enumerate() {
        for &j in &order[x + 1..] {
            if i > j {
                parity += arities[i - 1] * arities[j - 1] + v[i - 1] * v[j - 1];
            }
        }
    }
    Ok(if parity % 2 == 0 { 1 } else { -1 })
}

/// `θ(f; x) = κ · evaluate(f, x)`, see [`evaluation_sign`].
pub fn evaluate_signed(f: &Formula, xs: &[Cochain]) -> Result<Cochain> {
    let arities: Vec<usize> = xs.iter().map(Cochain::arity).collect();
    let e = evaluate(f, xs)?;
    Ok(if evaluation_sign(f, &arities)? == 1 { e } else { e.neg() })
}

/// `δθ(f; x) − θ(∂f; x) − Σᵢ (-1)^{dim f + Σ_{j<i} a_j} θ(f; .., δxᵢ, ..)`.
///
/// Zero exactly when the evaluation intertwines the cellular boundary with
/// the Hochschild differential on these inputs.
pub fn evaluation_defect(f: &Formula, xs: &[Cochain]) -> Result<Cochain> {
    let mut acc = evaluate_signed(f, xs)?.differential()?;
    for (s, h) in f.boundary() {
        acc = acc.add_scaled(&evaluate_signed(&h, xs)?, -s)?;
    }
    let mut before = f.dim();
    for i in 0..xs.len().min(f.type_n()) {
        let mut ys = xs.to_vec();
        ys[i] = xs[i].differential()?;
        let term = evaluate_signed(f, &ys)?;
        acc = acc.add_scaled(&term, if before % 2 == 0 { -1 } else { 1 })?;
        before += xs[i].arity();
    }
    Ok(acc)
}

/// `θ(f)` with `θ(f′)` substituted in input `k` (1-based): the operation
/// composite matching the cell `f ∘ₖ f′`. Uses [`evaluate_signed`] when
/// `signed`, else [`evaluate`].
pub fn compose_evaluations(f: &Formula, k: usize, f_prime: &Formula, xs: &[Cochain], signed: bool) -> Result<Cochain> {
    let (n, j) = (f.type_n(), f_prime.type_n());
    if k == 0 || k > n {
        return Err(Error::Invalid(alloc::format!("slot {k} out of range for {f}")));
    }
    if xs.len() < n + j - 1 {
        return Err(Error::Invalid(alloc::format!("composite needs {} cochains, got {}", n + j - 1, xs.len())));
    }
    let ev = |g: &Formula, ys: &[Cochain]| if signed { evaluate_signed(g, ys) } else { evaluate(g, ys) };
    let mut ys = xs[..k - 1].to_vec();
    ys.push(ev(f_prime, &xs[k - 1..k - 1 + j])?);
    ys.extend_from_slice(&xs[k - 1 + j..]);
    ev(f, &ys)
}
