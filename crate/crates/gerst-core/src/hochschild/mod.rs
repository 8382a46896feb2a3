//! Hochschild cochains of a [`FiniteAlgebra`] and the operations on them.
//!
//! A cochain of arity `p` is stored densely as its values on all basis
//! `p`-tuples. Tuples are indexed with the first input most significant.
//! The desuspension degree of a `p`-cochain is `p - 1`.

mod cohomology;
mod ops;
pub mod relations;

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicUsize, Ordering};

use rand::Rng;

use crate::algebra::{same_algebra, FiniteAlgebra};
use crate::error::{Error, Result};

pub use cohomology::{cohomology, CohomologyReport, Complex};
pub use ops::BraceConvention;

static SIZE_CAP: AtomicUsize = AtomicUsize::new(1 << 20);

/// Maximum number of stored coefficients `d^(p+1)` for one cochain.
pub fn size_cap() -> usize {
    SIZE_CAP.load(Ordering::Relaxed)
}

/// Overrides the cochain size cap (default `2^20`).
pub fn set_size_cap(cap: usize) {
    SIZE_CAP.store(cap, Ordering::Relaxed);
}

pub(crate) fn check_size(d: usize, p: usize) -> Result<usize> {
    let entries = (d as u128).checked_pow(p as u32 + 1).unwrap_or(u128::MAX);
    let cap = size_cap();
    if entries > cap as u128 {
        return Err(Error::SizeCap { entries, cap });
    }
    Ok(entries as usize)
}

/// A multilinear map `R^{⊗p} -> R`, stored on basis tuples.
#[derive(Debug, Clone)]
pub struct Cochain {
    alg: Arc<FiniteAlgebra>,
    arity: usize,
    values: Vec<i64>,
}

impl PartialEq for Cochain {
    fn eq(&self, other: &Cochain) -> bool {
        self.arity == other.arity && self.values == other.values && same_algebra(&self.alg, &other.alg)
    }
}

impl Eq for Cochain {}

impl Cochain {
    pub fn zero(alg: &Arc<FiniteAlgebra>, arity: usize) -> Result<Cochain> {
        let n = check_size(alg.dim(), arity)?;
        Ok(Cochain { alg: alg.clone(), arity, values: vec![0; n] })
    }

    /// Builds a cochain from `value(tuple) -> coordinates`.
    pub fn from_fn(
        alg: &Arc<FiniteAlgebra>,
        arity: usize,
        mut value: impl FnMut(&[usize]) -> Vec<i64>,
    ) -> Result<Cochain> {
        let mut x = Cochain::zero(alg, arity)?;
        let d = alg.dim();
        let r = alg.ring();
        let mut tuple = vec![0; arity];
        for t in 0..x.tuple_count() {
            decode(t, d, &mut tuple);
            let v = value(&tuple);
            if v.len() != d {
                return Err(Error::Invalid("cochain value has wrong length".into()));
            }
            for (slot, c) in x.values[t * d..(t + 1) * d].iter_mut().zip(v) {
                *slot = r.reduce(c);
            }
        }
        Ok(x)
    }

    /// Builds a cochain from raw values laid out as `values[tuple * d + c]`.
    pub fn from_values(alg: &Arc<FiniteAlgebra>, arity: usize, values: Vec<i64>) -> Result<Cochain> {
        let n = check_size(alg.dim(), arity)?;
        if values.len() != n {
            return Err(Error::Invalid("cochain value table has wrong length".into()));
        }
        let r = alg.ring();
        Ok(Cochain { alg: alg.clone(), arity, values: values.into_iter().map(|c| r.reduce(c)).collect() })
    }

    /// The 0-cochain `e` picking out the unit.
    pub fn unit(alg: &Arc<FiniteAlgebra>) -> Cochain {
        Cochain { alg: alg.clone(), arity: 0, values: alg.unit().to_vec() }
    }

    /// The 0-cochain with value `a`.
    pub fn constant(alg: &Arc<FiniteAlgebra>, a: &[i64]) -> Result<Cochain> {
        Cochain::from_values(alg, 0, a.to_vec())
    }

    /// The identity 1-cochain.
    pub fn identity(alg: &Arc<FiniteAlgebra>) -> Cochain {
        let one = alg.ring().reduce(1);
        Cochain::from_fn(alg, 1, |t| {
            let mut v = vec![0; alg.dim()];
            v[t[0]] = one;
            v
        })
        .expect("identity fits any cap")
    }

    /// The multiplication 2-cochain `μ`.
    pub fn multiplication(alg: &Arc<FiniteAlgebra>) -> Result<Cochain> {
        Cochain::from_fn(alg, 2, |t| alg.product(t[0], t[1]).to_vec())
    }

    /// Uniformly random values (in `[-2, 2]` over `Z`).
    pub fn random<R: Rng + ?Sized>(alg: &Arc<FiniteAlgebra>, arity: usize, rng: &mut R) -> Result<Cochain> {
        let mut x = Cochain::zero(alg, arity)?;
        let m = alg.ring().modulus();
        for v in x.values.iter_mut() {
            *v = if m == 0 { rng.gen_range(-2..=2) } else { rng.gen_range(0..m as i64) };
        }
        Ok(x)
    }

    /// A random normalized cochain.
    pub fn random_normalized<R: Rng + ?Sized>(
        alg: &Arc<FiniteAlgebra>,
        arity: usize,
        rng: &mut R,
    ) -> Result<Cochain> {
        Cochain::random(alg, arity, rng)?.project_normalized()
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.alg
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Desuspension degree `p - 1`.
    pub fn degree(&self) -> isize {
        self.arity as isize - 1
    }

    /// Raw values, `values[tuple * d + c]`.
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Number of basis tuples, `d^p`.
    pub fn tuple_count(&self) -> usize {
        self.values.len() / self.alg.dim()
    }

    /// Value on a basis tuple.
    pub fn value(&self, tuple: &[usize]) -> &[i64] {
        let d = self.alg.dim();
        let t = encode(tuple, d);
        &self.values[t * d..(t + 1) * d]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        self.combine(other, 1)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.combine(other, -1)
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, other: &Cochain, c: i64) -> Result<Cochain> {
        self.combine(other, c)
    }

    fn combine(&self, other: &Cochain, c: i64) -> Result<Cochain> {
        if !same_algebra(&self.alg, &other.alg) {
            return Err(Error::MismatchedAlgebras);
        }
        if self.arity != other.arity {
            return Err(Error::Invalid("cochains of different arity".into()));
        }
        let r = self.alg.ring();
        let c = r.reduce(c);
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| r.mul_add(a, c, b)).collect();
        Ok(Cochain { alg: self.alg.clone(), arity: self.arity, values })
    }

    pub fn scale(&self, c: i64) -> Cochain {
        let r = self.alg.ring();
        let c = r.reduce(c);
        Cochain { alg: self.alg.clone(), arity: self.arity, values: self.values.iter().map(|&v| r.mul(v, c)).collect() }
    }

    pub fn neg(&self) -> Cochain {
        self.scale(-1)
    }

    /// First basis tuple where `self` and `other` differ, for counterexample reports.
    pub fn first_difference(&self, other: &Cochain) -> Option<(Vec<usize>, Vec<i64>, Vec<i64>)> {
        if self.arity != other.arity {
            return Some((Vec::new(), Vec::new(), Vec::new()));
        }
        let d = self.alg.dim();
        (0..self.tuple_count()).find_map(|t| {
            let (a, b) = (&self.values[t * d..(t + 1) * d], &other.values[t * d..(t + 1) * d]);
            (a != b).then(|| {
                let mut tuple = vec![0; self.arity];
                decode(t, d, &mut tuple);
                (tuple, a.to_vec(), b.to_vec())
            })
        })
    }
}

/// Decodes a tuple index into digits, first digit most significant.
pub(crate) fn decode(mut t: usize, d: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = t % d;
        t /= d;
    }
}

pub(crate) fn encode(tuple: &[usize], d: usize) -> usize {
    tuple.iter().fold(0, |acc, &a| acc * d + a)
}
