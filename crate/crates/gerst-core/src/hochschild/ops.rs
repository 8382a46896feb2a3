use alloc::vec::Vec;

use super::{check_size, Cochain};
use crate::algebra::same_algebra;
use crate::error::{Error, Result};

/// How the brace sign `ε = Σ |y_j| i_j` counts the inputs `i_j` in front of `y_j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BraceConvention {
    /// Slots of the composed cochain left of `y_j`: free slots of `x`
    /// plus the full arities of earlier insertions. This is the default.
    #[default]
    ComposedSlots,
    /// Slots of `x` alone left of the slot receiving `y_j`.
    OuterSlots,
}

fn pow(d: usize, e: usize) -> usize {
    d.pow(e as u32)
}

impl Cochain {
    fn same(&self, other: &Cochain) -> Result<()> {
        if same_algebra(&self.alg, &other.alg) {
            Ok(())
        } else {
            Err(Error::MismatchedAlgebras)
        }
    }

    /// Coface `d^i`, `0 <= i <= p + 1`.
    pub fn coface(&self, i: usize) -> Result<Cochain> {
        let p = self.arity;
        if i > p + 1 {
            return Err(Error::OutOfRange { what: "coface", index: i, bound: p + 1 });
        }
        let alg = &self.alg;
        let d = alg.dim();
        let r = alg.ring();
        let mut out = Cochain::zero(alg, p + 1)?;
        if i == 0 || i == p + 1 {
            let rest = pow(d, p);
            for a in 0..d {
                for t in 0..rest {
                    let v = &self.values[t * d..(t + 1) * d];
                    // (a, t) for d^0 and (t, a) for d^{p+1}
                    let idx = if i == 0 { a * rest + t } else { t * d + a };
                    let o = &mut out.values[idx * d..(idx + 1) * d];
                    for (c, &vc) in v.iter().enumerate() {
                        if vc == 0 {
                            continue;
                        }
                        let prod = if i == 0 { alg.product(a, c) } else { alg.product(c, a) };
                        for (oc, &t) in o.iter_mut().zip(prod) {
                            *oc = r.mul_add(*oc, vc, t);
                        }
                    }
                }
            }
        } else {
            let pre = pow(d, i - 1);
            let post = pow(d, p - i);
            for a in 0..pre {
                for b1 in 0..d {
                    for b2 in 0..d {
                        let merged = alg.product(b1, b2);
                        for c in 0..post {
                            let idx = ((a * d + b1) * d + b2) * post + c;
                            let o = &mut out.values[idx * d..(idx + 1) * d];
                            for (m, &w) in merged.iter().enumerate() {
                                if w == 0 {
                                    continue;
                                }
                                let src = (a * d + m) * post + c;
                                for (oc, &v) in o.iter_mut().zip(&self.values[src * d..(src + 1) * d]) {
                                    *oc = r.mul_add(*oc, w, v);
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Codegeneracy `s_i x = x ∘_{i+1} e`: the unit fed into input `i + 1`.
    pub fn codegeneracy(&self, i: usize) -> Result<Cochain> {
        let p = self.arity;
        if p == 0 || i >= p {
            return Err(Error::OutOfRange { what: "codegeneracy", index: i, bound: p });
        }
        let unit = Cochain::unit(&self.alg);
        self.circ(i + 1, &unit)
    }

    /// Hochschild differential `Σ_{i=0}^{p+1} (-1)^i d^i x`.
    pub fn differential(&self) -> Result<Cochain> {
        let mut acc = Cochain::zero(&self.alg, self.arity + 1)?;
        for i in 0..=self.arity + 1 {
            acc = acc.add_scaled(&self.coface(i)?, if i % 2 == 0 { 1 } else { -1 })?;
        }
        Ok(acc)
    }

    /// True iff every codegeneracy vanishes, i.e. `x` is zero whenever an input is `1`.
    pub fn is_normalized(&self) -> bool {
        (0..self.arity).all(|i| self.codegeneracy(i).map(|c| c.is_zero()).unwrap_or(false))
    }

    /// Projection onto normalized cochains.
    ///
    /// Choose the basis vector `e_b` with invertible unit coordinate `u_b` and
    /// trade it for `1`. The result keeps the values of `x` on tuples avoiding
    /// `e_b` and vanishes whenever an input is `1`, which forces
    /// `x(.., e_b, ..) = -u_b^{-1} Σ_{c≠b} u_c x(.., e_c, ..)` slot by slot.
    pub fn project_normalized(&self) -> Result<Cochain> {
        let alg = &self.alg;
        let r = alg.ring();
        let b = alg
            .unit_pivot()
            .ok_or_else(|| Error::Unsupported("unit has no invertible coordinate".into()))?;
        let scale = r.neg(r.inverse(alg.unit()[b]).expect("pivot is invertible"));
        let u = alg.unit();
        let d = alg.dim();
        let mut vals = self.values.clone();
        for slot in 0..self.arity {
            let pre = pow(d, slot);
            let post = pow(d, self.arity - slot - 1) * d;
            for a in 0..pre {
                let base = a * d * post;
                for k in 0..post {
                    let mut acc = 0;
                    for c in (0..d).filter(|&c| c != b && u[c] != 0) {
                        acc = r.mul_add(acc, u[c], vals[base + c * post + k]);
                    }
                    vals[base + b * post + k] = r.mul(scale, acc);
                }
            }
        }
        Ok(Cochain { alg: alg.clone(), arity: self.arity, values: vals })
    }

    /// Cup product `(x⌣y)(r_1..r_{p+q}) = x(r_1..r_p) y(r_{p+1}..r_{p+q})`, no sign.
    pub fn cup(&self, y: &Cochain) -> Result<Cochain> {
        self.same(y)?;
        let alg = &self.alg;
        let d = alg.dim();
        let mut out = Cochain::zero(alg, self.arity + y.arity)?;
        let ny = y.tuple_count();
        for a in 0..self.tuple_count() {
            let xa = &self.values[a * d..(a + 1) * d];
            if xa.iter().all(|&v| v == 0) {
                continue;
            }
            for b in 0..ny {
                let idx = a * ny + b;
                alg.mul_acc(xa, &y.values[b * d..(b + 1) * d], &mut out.values[idx * d..(idx + 1) * d]);
            }
        }
        Ok(out)
    }

    /// Partial composition `x ∘_k y`: `y` fills input `k` (1-based) of `x`, no sign.
    pub fn circ(&self, k: usize, y: &Cochain) -> Result<Cochain> {
        self.same(y)?;
        let p = self.arity;
        if k == 0 || k > p {
            return Err(Error::OutOfRange { what: "composition slot", index: k, bound: p });
        }
        let alg = &self.alg;
        let r = alg.ring();
        let d = alg.dim();
        let q = y.arity;
        let mut out = Cochain::zero(alg, p + q - 1)?;
        let pre = pow(d, k - 1);
        let post = pow(d, p - k);
        let mid = pow(d, q);
        for a in 0..pre {
            for m in 0..mid {
                let w = &y.values[m * d..(m + 1) * d];
                for c in 0..post {
                    let idx = (a * mid + m) * post + c;
                    let o = &mut out.values[idx * d..(idx + 1) * d];
                    for (b, &wb) in w.iter().enumerate() {
                        if wb == 0 {
                            continue;
                        }
                        let src = (a * d + b) * post + c;
                        for (oc, &v) in o.iter_mut().zip(&self.values[src * d..(src + 1) * d]) {
                            *oc = r.mul_add(*oc, wb, v);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Brace `x{y_1,..,y_n}` with the default sign convention.
    pub fn brace(&self, ys: &[Cochain]) -> Result<Cochain> {
        self.brace_with(ys, BraceConvention::default())
    }

    /// Brace `x{y_1,..,y_n} = Σ (-1)^ε x(id,..,y_1,..,y_n,..,id)` over
    /// order-preserving placements, `ε = Σ_j |y_j| i_j`.
    pub fn brace_with(&self, ys: &[Cochain], convention: BraceConvention) -> Result<Cochain> {
        if ys.is_empty() {
            return Err(Error::Invalid("brace needs at least one argument".into()));
        }
        for y in ys {
            self.same(y)?;
        }
        let p = self.arity;
        let n = ys.len();
        let out_arity = (p + ys.iter().map(|y| y.arity).sum::<usize>()).saturating_sub(n);
        if n > p {
            // fewer inputs than arguments: the sum is empty
            return Cochain::zero(&self.alg, out_arity);
        }
        check_size(self.alg.dim(), out_arity)?;
        let mut acc = Cochain::zero(&self.alg, out_arity)?;
        let mut pos: Vec<usize> = (1..=n).collect();
        loop {
            let mut eps = 0usize;
            let mut inserted = 0usize;
            for (l, y) in ys.iter().enumerate() {
                let front = match convention {
                    BraceConvention::ComposedSlots => pos[l] - 1 - l + inserted,
                    BraceConvention::OuterSlots => pos[l] - 1,
                };
                eps += (y.arity + 1) * front; // |y| = arity - 1, parity of |y| = arity + 1
                inserted += y.arity;
            }
            let mut term = self.clone();
            for l in (0..n).rev() {
                term = term.circ(pos[l], &ys[l])?;
            }
            acc = acc.add_scaled(&term, if eps % 2 == 0 { 1 } else { -1 })?;
            // next increasing sequence in 1..=p
            let mut l = n;
            while l > 0 && pos[l - 1] == p - (n - l) {
                l -= 1;
            }
            if l == 0 {
                break;
            }
            pos[l - 1] += 1;
            for m in l..n {
                pos[m] = pos[m - 1] + 1;
            }
        }
        Ok(acc)
    }

    /// Gerstenhaber bracket `[x,y] = x{y} - (-1)^{|x||y|} y{x}`.
    pub fn bracket(&self, y: &Cochain) -> Result<Cochain> {
        if self.arity == 0 || y.arity == 0 {
            return Err(Error::Invalid("bracket needs arities at least 1".into()));
        }
        let sign = if (self.arity - 1) * (y.arity - 1) % 2 == 0 { -1 } else { 1 };
        self.brace(core::slice::from_ref(y))?.add_scaled(&y.brace(core::slice::from_ref(self))?, sign)
    }

    /// Product on the desuspension, `x·y = μ{x,y} = (-1)^{|y| p} x⌣y` for `x` of arity `p`.
    ///
    /// This is the product for which braces distribute over products with the
    /// sign `|x_2| Σ_{j≤k} |y_j|`.
    pub fn dot(&self, y: &Cochain) -> Result<Cochain> {
        let c = self.cup(y)?;
        Ok(if (y.arity + 1) * self.arity % 2 == 0 { c } else { c.neg() })
    }
}
