use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use super::{check_size, decode, Cochain};
use crate::algebra::FiniteAlgebra;
use crate::chains::{invariant_factors, rank_mod_prime, SparseMatrix};
use crate::error::{Error, Result};

/// Which cochain complex to take cohomology of.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Complex {
    /// Cochains vanishing whenever an input is `1`.
    Normalized,
    /// All cochains.
    Unnormalized,
}

/// `H^p` as a free rank plus torsion (torsion only over `Z`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyReport {
    pub degree: usize,
    pub rank: usize,
    pub torsion: Vec<BigUint>,
}

/// Coordinates on `C^p` (all tuples) or on normalized `C̄^p` (tuples avoiding the unit pivot).
struct Coords {
    alg: Arc<FiniteAlgebra>,
    complex: Complex,
    pivot: usize,
}

impl Coords {
    fn letters(&self) -> usize {
        match self.complex {
            Complex::Normalized => self.alg.dim() - 1,
            Complex::Unnormalized => self.alg.dim(),
        }
    }

    fn len(&self, p: usize) -> usize {
        self.letters().pow(p as u32) * self.alg.dim()
    }

    fn letter(&self, a: usize) -> usize {
        match self.complex {
            Complex::Normalized if a >= self.pivot => a + 1,
            _ => a,
        }
    }

    /// Tuple index in the full cochain table for coordinate tuple index `t`.
    fn full_index(&self, t: usize, p: usize) -> usize {
        let mut digits = vec![0; p];
        decode(t, self.letters(), &mut digits);
        digits.iter().fold(0, |acc, &a| acc * self.alg.dim() + self.letter(a))
    }

    fn lift(&self, p: usize, coord: usize) -> Result<Cochain> {
        let d = self.alg.dim();
        let mut x = Cochain::zero(&self.alg, p)?;
        let idx = self.full_index(coord / d, p);
        x.values[idx * d + coord % d] = self.alg.ring().reduce(1);
        match self.complex {
            Complex::Normalized => x.project_normalized(),
            Complex::Unnormalized => Ok(x),
        }
    }

    fn restrict(&self, x: &Cochain) -> Vec<(usize, i64)> {
        let d = self.alg.dim();
        let p = x.arity();
        let mut out = Vec::new();
        for t in 0..self.letters().pow(p as u32) {
            let idx = self.full_index(t, p);
            for c in 0..d {
                let v = x.values[idx * d + c];
                if v != 0 {
                    out.push((t * d + c, v));
                }
            }
        }
        out
    }

    /// Matrix of `∂: C^p -> C^{p+1}` in these coordinates.
    fn differential_matrix(&self, p: usize) -> Result<SparseMatrix> {
        let cols = (0..self.len(p))
            .map(|k| Ok(self.restrict(&self.lift(p, k)?.differential()?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(SparseMatrix::from_columns(self.len(p + 1), cols))
    }
}

/// `H^p` of the (normalized or full) Hochschild complex over `Z` or `Z/prime`.
pub fn cohomology(alg: &Arc<FiniteAlgebra>, p: usize, complex: Complex) -> Result<CohomologyReport> {
    let ring = alg.ring();
    if !ring.is_integers() && !ring.is_prime_field() {
        return Err(Error::Unsupported(format!("cohomology over Z/{} (composite modulus)", ring.modulus())));
    }
    check_size(alg.dim(), p + 1)?;
    let pivot = match complex {
        Complex::Normalized => alg
            .unit_pivot()
            .ok_or_else(|| Error::Unsupported("unit has no invertible coordinate".into()))?,
        Complex::Unnormalized => 0,
    };
    let coords = Coords { alg: alg.clone(), complex, pivot };
    let outgoing = coords.differential_matrix(p)?;
    let incoming = if p == 0 { None } else { Some(coords.differential_matrix(p - 1)?) };
    let n = coords.len(p);
    if ring.is_integers() {
        let out_rank = invariant_factors(&outgoing).len();
        let (in_rank, torsion) = match &incoming {
            Some(m) => {
                let f = invariant_factors(m);
                (f.len(), f.into_iter().filter(|t| !t.is_one()).collect())
            }
            None => (0, Vec::new()),
        };
        Ok(CohomologyReport { degree: p, rank: n - out_rank - in_rank, torsion })
    } else {
        let m = ring.modulus();
        let out_rank = rank_mod_prime(&outgoing.to_dense(), m);
        let in_rank = incoming.map_or(0, |mat| rank_mod_prime(&mat.to_dense(), m));
        Ok(CohomologyReport { degree: p, rank: n - out_rank - in_rank, torsion: Vec::new() })
    }
}
