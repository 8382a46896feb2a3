//! Prismatic subdivision of simplices and the fiberwise subdivision of
//! thickened cells, in exact rational or floating arithmetic.
//!
//! Simplices are sized: `Δⁿ_p` holds `(s₀..sₙ)` with `sᵢ ≥ 0` and `Σ sᵢ = p`.

mod fiberwise;

use alloc::format;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

use crate::error::{Error, Result};

pub use fiberwise::{
    associativity_check, fiberwise_sigma, fiberwise_sigma_inverse, random_cell_point, random_simplex_point, sigma_p,
    sigma_p_inverse, AssociativityCase, SigmaShape, ThickCellPoint,
};

/// Tolerance for floating comparisons.
pub const TOLERANCE: f64 = 1e-12;

/// Coordinate arithmetic: exact for [`BigRational`], within [`TOLERANCE`] for `f64`.
pub trait Scalar: Num + Clone + PartialOrd + Debug + Neg<Output = Self> {
    fn from_ratio(num: i64, den: i64) -> Self;
    fn near(&self, other: &Self) -> bool;
    fn to_f64(&self) -> f64;

    fn near_zero(&self) -> bool {
        self.near(&Self::zero())
    }

    fn is_negative_beyond_tolerance(&self) -> bool {
        *self < Self::zero() && !self.near_zero()
    }
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> f64 {
        num as f64 / den as f64
    }

    fn near(&self, other: &f64) -> bool {
        (self - other).abs() <= TOLERANCE * (1.0 + self.abs().max(other.abs()))
    }

    fn to_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn near(&self, other: &BigRational) -> bool {
        self == other
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }
}

/// Sum of a slice of scalars.
pub fn sum<S: Scalar>(xs: &[S]) -> S {
    xs.iter().fold(S::zero(), |acc, x| acc + x.clone())
}

/// A point of `Δⁿ_p`.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint<S> {
    pub size: S,
    pub coords: Vec<S>,
}

impl<S: Scalar> SimplexPoint<S> {
    /// Checks nonnegativity and the coordinate sum.
    pub fn new(size: S, coords: Vec<S>) -> Result<SimplexPoint<S>> {
        if coords.is_empty() {
            return Err(Error::Invalid("a simplex point needs at least one coordinate".into()));
        }
        if coords.iter().any(Scalar::is_negative_beyond_tolerance) {
            return Err(Error::Invalid(format!("negative coordinate in {coords:?}")));
        }
        if !sum(&coords).near(&size) {
            return Err(Error::Invalid(format!("coordinates {coords:?} do not sum to {size:?}")));
        }
        Ok(SimplexPoint { size, coords })
    }

    /// The point with coordinates summing to their own total.
    pub fn from_coords(coords: Vec<S>) -> Result<SimplexPoint<S>> {
        SimplexPoint::new(sum(&coords), coords)
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn near(&self, other: &SimplexPoint<S>) -> bool {
        self.coords.len() == other.coords.len()
            && self.size.near(&other.size)
            && self.coords.iter().zip(&other.coords).all(|(a, b)| a.near(b))
    }

    pub fn scaled(&self, c: &S) -> SimplexPoint<S> {
        SimplexPoint {
            size: self.size.clone() * c.clone(),
            coords: self.coords.iter().map(|x| x.clone() * c.clone()).collect(),
        }
    }
}

/// A point of `Dⁿ`: piece `split` is `Δ^split × Δ^{n-split}`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrismPoint<S> {
    pub split: usize,
    pub left: SimplexPoint<S>,
    pub right: SimplexPoint<S>,
}

impl<S: Scalar> PrismPoint<S> {
    pub fn new(left: SimplexPoint<S>, right: SimplexPoint<S>) -> PrismPoint<S> {
        PrismPoint { split: left.dim(), left, right }
    }

    pub fn n(&self) -> usize {
        self.left.dim() + self.right.dim()
    }

    /// The glued representative with the smallest split:
    /// `(d^{p+1} s, t) ~ (s, d⁰ t)`.
    pub fn normalized(&self) -> PrismPoint<S> {
        let mut out = self.clone();
        while out.split > 0 && out.left.coords.last().is_some_and(Scalar::near_zero) {
            out.left.coords.pop();
            out.right.coords.insert(0, S::zero());
            out.split -= 1;
        }
        out
    }

    /// Equality up to the gluing relation.
    pub fn same_point(&self, other: &PrismPoint<S>) -> bool {
        let (a, b) = (self.normalized(), other.normalized());
        a.split == b.split && a.left.near(&b.left) && a.right.near(&b.right)
    }
}

fn check_u<S: Scalar>(u: &S) -> Result<()> {
    if *u <= S::zero() || *u >= S::one() {
        return Err(Error::Invalid(format!("subdivision parameter {u:?} is not in (0, 1)")));
    }
    Ok(())
}

/// `σⁿ_{p,q}`: `(s, t) ↦ (s₀..s_{k-1}, s_k + t₀, t₁..)`.
pub fn sigma_pq<S: Scalar>(n: usize, p: &S, q: &S, pt: &PrismPoint<S>) -> Result<SimplexPoint<S>> {
    if pt.n() != n {
        return Err(Error::Invalid(format!("prism point lives in D^{} not D^{n}", pt.n())));
    }
    if !pt.left.size.near(p) || !pt.right.size.near(q) {
        return Err(Error::Invalid("prism point sizes do not match".into()));
    }
    let k = pt.split;
    let mut coords = pt.left.coords[..k].to_vec();
    coords.push(pt.left.coords[k].clone() + pt.right.coords[0].clone());
    coords.extend_from_slice(&pt.right.coords[1..]);
    Ok(SimplexPoint { size: p.clone() + q.clone(), coords })
}

/// Inverse of [`sigma_pq`]; the split is the first index where the running
/// sum reaches `p`.
pub fn sigma_pq_inverse<S: Scalar>(n: usize, p: &S, q: &S, x: &SimplexPoint<S>) -> Result<PrismPoint<S>> {
    if x.dim() != n {
        return Err(Error::Invalid(format!("point lives in Δ^{} not Δ^{n}", x.dim())));
    }
    if !x.size.near(&(p.clone() + q.clone())) {
        return Err(Error::Invalid("point size is not p + q".into()));
    }
    let mut before = S::zero();
    let mut k = n;
    for (i, c) in x.coords.iter().enumerate() {
        let after = before.clone() + c.clone();
        if after >= *p || after.near(p) {
            k = i;
            break;
        }
        before = after;
    }
    let mut left = x.coords[..k].to_vec();
    let sk = p.clone() - before;
    let t0 = x.coords[k].clone() - sk.clone();
    left.push(sk);
    let mut right = alloc::vec![t0];
    right.extend_from_slice(&x.coords[k + 1..]);
    Ok(PrismPoint {
        split: k,
        left: SimplexPoint { size: p.clone(), coords: left },
        right: SimplexPoint { size: q.clone(), coords: right },
    })
}

/// `σⁿ(u)` on `Dⁿ` with unit-size pieces.
pub fn sigma_u<S: Scalar>(n: usize, u: &S, pt: &PrismPoint<S>) -> Result<SimplexPoint<S>> {
    check_u(u)?;
    let v = S::one() - u.clone();
    let scaled = PrismPoint { split: pt.split, left: pt.left.scaled(u), right: pt.right.scaled(&v) };
    sigma_pq(n, u, &v, &scaled)
}

/// Inverse of [`sigma_u`] for a point of size 1.
pub fn sigma_u_inverse<S: Scalar>(n: usize, u: &S, x: &SimplexPoint<S>) -> Result<PrismPoint<S>> {
    check_u(u)?;
    if !x.size.near(&S::one()) {
        return Err(Error::Invalid("point must have size 1".into()));
    }
    let v = S::one() - u.clone();
    let pt = sigma_pq_inverse(n, u, &v, x)?;
    let inv_u = S::one() / u.clone();
    let inv_v = S::one() / v;
    Ok(PrismPoint { split: pt.split, left: pt.left.scaled(&inv_u), right: pt.right.scaled(&inv_v) })
}
