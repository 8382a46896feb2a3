use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;

use super::snf::invariant_factors;
use super::SparseMatrix;
use crate::error::{Error, Result};

/// A bounded chain complex of free abelian groups `C_0 <- C_1 <- ...`.
///
/// `boundaries[d]` maps degree `d` to degree `d - 1`; `boundaries[0]` has no rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntChainComplex {
    bases: Vec<Vec<String>>,
    boundaries: Vec<SparseMatrix>,
}

/// One homology group `Z^rank ⊕ ⨁ Z/t`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyGroup {
    pub rank: usize,
    pub torsion: Vec<BigUint>,
}

impl HomologyGroup {
    pub fn free(rank: usize) -> HomologyGroup {
        HomologyGroup { rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl IntChainComplex {
    /// Checks shapes; `∂∂ = 0` is checked by [`homology`](Self::homology).
    pub fn new(bases: Vec<Vec<String>>, boundaries: Vec<SparseMatrix>) -> Result<IntChainComplex> {
        if bases.len() != boundaries.len() {
            return Err(Error::Invalid("one boundary matrix per degree is required".into()));
        }
        for (d, m) in boundaries.iter().enumerate() {
            let rows = if d == 0 { 0 } else { bases[d - 1].len() };
            if m.cols() != bases[d].len() || m.rows() != rows {
                return Err(Error::Invalid(format!("boundary in degree {d} has the wrong shape")));
            }
        }
        Ok(IntChainComplex { bases, boundaries })
    }

    /// The complex with one generator in degree 0.
    pub fn point() -> IntChainComplex {
        IntChainComplex { bases: alloc::vec![alloc::vec!["pt".to_string()]], boundaries: alloc::vec![SparseMatrix::zero(0, 1)] }
    }

    pub fn top_degree(&self) -> Option<usize> {
        self.bases.len().checked_sub(1)
    }

    pub fn basis(&self, d: usize) -> &[String] {
        self.bases.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn boundary(&self, d: usize) -> Option<&SparseMatrix> {
        self.boundaries.get(d)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.bases.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.ranks().iter().enumerate().map(|(d, &r)| if d % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
    }

    /// First degree `d` with `∂_{d-1} ∂_d != 0`, if any.
    pub fn square_defect(&self) -> Option<usize> {
        (2..self.boundaries.len()).find(|&d| {
            self.boundaries[d - 1].mul(&self.boundaries[d]).map_or(true, |m| !m.is_zero())
        })
    }

    /// Homology in every degree via Smith normal form. Refuses if `∂∂ != 0`.
    pub fn homology(&self) -> Result<Vec<HomologyGroup>> {
        if let Some(d) = self.square_defect() {
            return Err(Error::Invalid(format!("boundary squares to a nonzero map in degree {d}")));
        }
        let factors: Vec<Vec<BigUint>> = self.boundaries.iter().map(invariant_factors).collect();
        let n = self.bases.len();
        Ok((0..n)
            .map(|d| {
                let out_rank = factors[d].len();
                let (in_rank, torsion) = match factors.get(d + 1) {
                    Some(f) => (f.len(), f.iter().filter(|t| !t.is_one()).cloned().collect()),
                    None => (0, Vec::new()),
                };
                HomologyGroup { rank: self.bases[d].len() - out_rank - in_rank, torsion }
            })
            .collect())
    }

    /// Reduced homology: degree-0 rank lowered by one for a nonempty complex.
    pub fn reduced_homology(&self) -> Result<Vec<HomologyGroup>> {
        let mut h = self.homology()?;
        if let Some(h0) = h.first_mut() {
            h0.rank = h0.rank.saturating_sub(1);
        }
        Ok(h)
    }

    /// The subcomplex spanned by the chosen generators in each degree.
    ///
    /// Fails if the selection is not closed under the boundary.
    pub fn subcomplex(&self, keep: &[Vec<usize>]) -> Result<IntChainComplex> {
        let mut bases = Vec::new();
        let mut bounds = Vec::new();
        for d in 0..self.bases.len() {
            let cols = keep.get(d).cloned().unwrap_or_default();
            let rows: Vec<usize> = if d == 0 { Vec::new() } else { keep.get(d - 1).cloned().unwrap_or_default() };
            let m = &self.boundaries[d];
            for &j in &cols {
                if m.column(j).iter().any(|&(i, _)| rows.binary_search(&i).is_err()) {
                    return Err(Error::Invalid(format!("selection not closed under the boundary in degree {d}")));
                }
            }
            bases.push(cols.iter().map(|&j| self.bases[d][j].clone()).collect());
            bounds.push(m.submatrix(&rows, &cols));
        }
        while bases.last().is_some_and(|b: &Vec<String>| b.is_empty()) {
            bases.pop();
            bounds.pop();
        }
        IntChainComplex::new(bases, bounds)
    }
}

/// Degreewise equality, treating missing degrees as zero.
pub fn same_homology(a: &[HomologyGroup], b: &[HomologyGroup]) -> bool {
    let zero = HomologyGroup::default();
    (0..a.len().max(b.len())).all(|d| a.get(d).unwrap_or(&zero) == b.get(d).unwrap_or(&zero))
}

/// Formats homology as `H0: Z, H1: Z`.
pub fn format_homology(h: &[HomologyGroup]) -> String {
    h.iter().enumerate().map(|(d, g)| format!("H{d}: {g}")).collect::<Vec<_>>().join(", ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn point_and_interval() {
        assert_eq!(IntChainComplex::point().homology().unwrap(), vec![HomologyGroup::free(1)]);
        // two vertices joined by an edge
        let c = IntChainComplex::new(
            vec![vec!["a".into(), "b".into()], vec!["ab".into()]],
            vec![SparseMatrix::zero(0, 2), SparseMatrix::from_columns(2, vec![vec![(0, -1), (1, 1)]])],
        )
        .unwrap();
        assert_eq!(c.homology().unwrap(), vec![HomologyGroup::free(1), HomologyGroup::free(0)]);
        assert!(c.reduced_homology().unwrap().iter().all(HomologyGroup::is_zero));
    }

    #[test]
    fn projective_plane_torsion() {
        // minimal CW structure: one cell per dimension, boundaries 0 and 2
        let c = IntChainComplex::new(
            vec![vec!["v".into()], vec!["e".into()], vec!["f".into()]],
            vec![
                SparseMatrix::zero(0, 1),
                SparseMatrix::from_columns(1, vec![vec![]]),
                SparseMatrix::from_columns(1, vec![vec![(0, 2)]]),
            ],
        )
        .unwrap();
        let h = c.homology().unwrap();
        assert_eq!(format_homology(&h), "H0: Z, H1: Z/2, H2: 0");
    }

    #[test]
    fn refuses_non_complex() {
        let c = IntChainComplex::new(
            vec![vec!["v".into()], vec!["e".into()], vec!["f".into()]],
            vec![
                SparseMatrix::zero(0, 1),
                SparseMatrix::from_columns(1, vec![vec![(0, 1)]]),
                SparseMatrix::from_columns(1, vec![vec![(0, 1)]]),
            ],
        )
        .unwrap();
        assert!(c.homology().is_err());
    }
}
