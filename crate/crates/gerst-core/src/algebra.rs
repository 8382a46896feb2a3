//! Finite-rank associative unital algebras presented by structure constants.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Ground ring `Z` (modulus 0) or `Z/m`.
///
/// Coefficients are `i64`. Over `Z/m` they are kept in `[0, m)`; over `Z`
/// arithmetic is checked and panics on overflow rather than wrapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Ring {
    modulus: u64,
}

impl Ring {
    pub fn new(modulus: u64) -> Result<Ring> {
        if modulus > i64::MAX as u64 / 4 {
            return Err(Error::Unsupported(format!("modulus {modulus} is too large")));
        }
        Ok(Ring { modulus })
    }

    pub const fn integers() -> Ring {
        Ring { modulus: 0 }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_integers(&self) -> bool {
        self.modulus == 0
    }

    /// True when the ring is a field, i.e. the modulus is prime.
    pub fn is_prime_field(&self) -> bool {
        let m = self.modulus;
        if m < 2 {
            return false;
        }
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                return false;
            }
            d += 1;
        }
        true
    }

    #[inline]
    pub fn reduce(&self, a: i64) -> i64 {
        if self.modulus == 0 {
            a
        } else {
            a.rem_euclid(self.modulus as i64)
        }
    }

    #[inline]
    pub fn add(&self, a: i64, b: i64) -> i64 {
        if self.modulus == 0 {
            a.checked_add(b).expect("coefficient overflow over Z")
        } else {
            ((a as i128 + b as i128).rem_euclid(self.modulus as i128)) as i64
        }
    }

    #[inline]
    pub fn sub(&self, a: i64, b: i64) -> i64 {
        if self.modulus == 0 {
            a.checked_sub(b).expect("coefficient overflow over Z")
        } else {
            ((a as i128 - b as i128).rem_euclid(self.modulus as i128)) as i64
        }
    }

    #[inline]
    pub fn mul(&self, a: i64, b: i64) -> i64 {
        if self.modulus == 0 {
            a.checked_mul(b).expect("coefficient overflow over Z")
        } else {
            ((a as i128 * b as i128).rem_euclid(self.modulus as i128)) as i64
        }
    }

    #[inline]
    pub fn neg(&self, a: i64) -> i64 {
        self.sub(0, a)
    }

    /// `a + b*c`.
    #[inline]
    pub fn mul_add(&self, a: i64, b: i64, c: i64) -> i64 {
        if self.modulus == 0 {
            let p = b.checked_mul(c).expect("coefficient overflow over Z");
            a.checked_add(p).expect("coefficient overflow over Z")
        } else {
            ((a as i128 + b as i128 * c as i128).rem_euclid(self.modulus as i128)) as i64
        }
    }

    /// Multiplicative inverse, if `a` is a unit.
    pub fn inverse(&self, a: i64) -> Option<i64> {
        let a = self.reduce(a);
        if self.modulus == 0 {
            return match a {
                1 => Some(1),
                -1 => Some(-1),
                _ => None,
            };
        }
        let m = self.modulus as i64;
        let (mut r0, mut r1) = (m, a);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 == 1 {
            Some(t0.rem_euclid(m))
        } else {
            None
        }
    }

    /// `(-1)^k` as a ring element.
    #[inline]
    pub fn sign(&self, k: usize) -> i64 {
        if k % 2 == 0 {
            self.reduce(1)
        } else {
            self.reduce(-1)
        }
    }
}

/// Violations found by [`FiniteAlgebra::validate`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Basis triples `(i, j, l)` with `(e_i e_j) e_l != e_i (e_j e_l)`.
    pub associativity: Vec<(usize, usize, usize)>,
    /// Basis indices `i` with `unit * e_i != e_i`.
    pub left_unit: Vec<usize>,
    /// Basis indices `i` with `e_i * unit != e_i`.
    pub right_unit: Vec<usize>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.associativity.is_empty() && self.left_unit.is_empty() && self.right_unit.is_empty()
    }
}

/// An algebra of rank `dim` with basis `e_0..e_{d-1}` and `e_i e_j = Σ_c table[i][j][c] e_c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    ring: Ring,
    dim: usize,
    labels: Vec<String>,
    unit: Vec<i64>,
    table: Vec<i64>,
    name: String,
}

impl FiniteAlgebra {
    /// Builds an algebra from nested structure constants `table[i][j][c]`.
    ///
    /// Shapes are checked; the algebra axioms are not (see [`validate`](Self::validate)).
    pub fn new(
        ring: Ring,
        labels: Vec<String>,
        unit: Vec<i64>,
        table: &[Vec<Vec<i64>>],
    ) -> Result<FiniteAlgebra> {
        let d = labels.len();
        if d == 0 {
            return Err(Error::Invalid("algebra dimension must be positive".into()));
        }
        if unit.len() != d {
            return Err(Error::Invalid(format!("unit has {} coordinates, expected {d}", unit.len())));
        }
        if table.len() != d || table.iter().any(|row| row.len() != d || row.iter().any(|v| v.len() != d)) {
            return Err(Error::Invalid(format!("table must have shape {d}x{d}x{d}")));
        }
        let flat = table.iter().flatten().flatten().map(|&c| ring.reduce(c)).collect();
        Ok(FiniteAlgebra {
            ring,
            dim: d,
            labels,
            unit: unit.into_iter().map(|c| ring.reduce(c)).collect(),
            table: flat,
            name: String::from("custom"),
        })
    }

    /// Resolves a builtin name: `Z`, `Z/m`, `dual(m)`, `trunc(m,k)`, `mat2(m)`, `groupZ2(m)`.
    ///
    /// A modulus of `0` means the integers.
    pub fn builtin(name: &str) -> Result<FiniteAlgebra> {
        let compact: String = name.chars().filter(|c| !c.is_whitespace()).collect();
        let unknown = || Error::UnknownName(name.to_string());
        let mut alg = if compact == "Z" {
            Self::cyclic(Ring::integers())
        } else if let Some(rest) = compact.strip_prefix("Z/") {
            Self::cyclic(Ring::new(rest.parse().map_err(|_| unknown())?)?)
        } else {
            let open = compact.find('(').ok_or_else(unknown)?;
            let args = compact[open..]
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(unknown)?;
            let nums = args
                .split(',')
                .map(|a| a.parse::<u64>())
                .collect::<core::result::Result<Vec<_>, _>>()
                .map_err(|_| unknown())?;
            match (&compact[..open], nums.as_slice()) {
                ("dual", [m]) => Self::truncated(Ring::new(*m)?, 2)?,
                ("trunc", [m, k]) => Self::truncated(Ring::new(*m)?, *k as usize)?,
                ("mat2", [m]) => Self::matrices2(Ring::new(*m)?),
                ("groupZ2", [m]) => Self::group_z2(Ring::new(*m)?),
                _ => return Err(unknown()),
            }
        };
        alg.name = compact;
        Ok(alg)
    }

    fn cyclic(ring: Ring) -> FiniteAlgebra {
        FiniteAlgebra {
            ring,
            dim: 1,
            labels: vec!["1".into()],
            unit: vec![ring.reduce(1)],
            table: vec![ring.reduce(1)],
            name: String::new(),
        }
    }

    /// `R[x]/x^k` with basis `1, x, .., x^{k-1}`.
    fn truncated(ring: Ring, k: usize) -> Result<FiniteAlgebra> {
        if k == 0 {
            return Err(Error::Invalid("truncation degree must be positive".into()));
        }
        let labels = (0..k)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        let mut table = vec![0; k * k * k];
        for i in 0..k {
            for j in 0..k {
                if i + j < k {
                    table[(i * k + j) * k + i + j] = ring.reduce(1);
                }
            }
        }
        let mut unit = vec![0; k];
        unit[0] = ring.reduce(1);
        Ok(FiniteAlgebra { ring, dim: k, labels, unit, table, name: String::new() })
    }

    /// 2x2 matrices with basis `e11, e12, e21, e22`; the unit is `e11 + e22`.
    fn matrices2(ring: Ring) -> FiniteAlgebra {
        let labels = ["e11", "e12", "e21", "e22"].iter().map(|s| s.to_string()).collect();
        let mut table = vec![0; 64];
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for e in 0..2 {
                        if b == c {
                            table[((a * 2 + b) * 4 + (c * 2 + e)) * 4 + a * 2 + e] = ring.reduce(1);
                        }
                    }
                }
            }
        }
        let one = ring.reduce(1);
        FiniteAlgebra { ring, dim: 4, labels, unit: vec![one, 0, 0, one], table, name: String::new() }
    }

    /// Group algebra of `Z/2` with basis `1, g`.
    fn group_z2(ring: Ring) -> FiniteAlgebra {
        let one = ring.reduce(1);
        let mut table = vec![0; 8];
        for i in 0..2 {
            for j in 0..2 {
                table[(i * 2 + j) * 2 + ((i + j) % 2)] = one;
            }
        }
        FiniteAlgebra {
            ring,
            dim: 2,
            labels: vec!["1".into(), "g".into()],
            unit: vec![one, 0],
            table,
            name: String::new(),
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[i64] {
        &self.unit
    }

    /// The builtin name this algebra was created from, or `custom`.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    /// Coordinates of `e_i e_j`.
    #[inline]
    pub fn product(&self, i: usize, j: usize) -> &[i64] {
        let d = self.dim;
        &self.table[(i * d + j) * d..(i * d + j + 1) * d]
    }

    /// Structure constants as nested vectors, `table[i][j][c]`.
    pub fn table(&self) -> Vec<Vec<Vec<i64>>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.product(i, j).to_vec()).collect())
            .collect()
    }

    /// Bilinear product of coordinate vectors, accumulated into `out`.
    pub fn mul_acc(&self, a: &[i64], b: &[i64], out: &mut [i64]) {
        let r = self.ring;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let w = r.mul(ai, bj);
                for (o, &t) in out.iter_mut().zip(self.product(i, j)) {
                    if t != 0 {
                        *o = r.mul_add(*o, w, t);
                    }
                }
            }
        }
    }

    /// Product of coordinate vectors.
    pub fn mul_coords(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.dim];
        self.mul_acc(a, b, &mut out);
        out
    }

    /// Reports associativity and unit-law violations; empty iff the axioms hold.
    pub fn validate(&self) -> ValidationReport {
        let d = self.dim;
        let mut report = ValidationReport::default();
        let basis = |i: usize| {
            let mut v = vec![0; d];
            v[i] = self.ring.reduce(1);
            v
        };
        for i in 0..d {
            for j in 0..d {
                let ij = self.product(i, j).to_vec();
                for l in 0..d {
                    let left = self.mul_coords(&ij, &basis(l));
                    let right = self.mul_coords(&basis(i), self.product(j, l));
                    if left != right {
                        report.associativity.push((i, j, l));
                    }
                }
            }
        }
        for i in 0..d {
            let e = basis(i);
            if self.mul_coords(&self.unit, &e) != e {
                report.left_unit.push(i);
            }
            if self.mul_coords(&e, &self.unit) != e {
                report.right_unit.push(i);
            }
        }
        report
    }

    /// Index of the first basis vector whose unit coordinate is invertible.
    ///
    /// Replacing that basis vector by the unit gives a basis containing `1`,
    /// which is how normalized cochains are coordinatized.
    pub fn unit_pivot(&self) -> Option<usize> {
        (0..self.dim).find(|&i| self.ring.inverse(self.unit[i]).is_some())
    }

    /// The element `e_i`.
    pub fn basis_element(self: &Arc<Self>, i: usize) -> Result<AlgebraElement> {
        if i >= self.dim {
            return Err(Error::OutOfRange { what: "basis", index: i, bound: self.dim });
        }
        let mut coords = vec![0; self.dim];
        coords[i] = self.ring.reduce(1);
        Ok(AlgebraElement { alg: self.clone(), coords })
    }

    /// The unit as an element.
    pub fn one(self: &Arc<Self>) -> AlgebraElement {
        AlgebraElement { alg: self.clone(), coords: self.unit.clone() }
    }
}

/// Two handles denote the same algebra.
pub fn same_algebra(a: &Arc<FiniteAlgebra>, b: &Arc<FiniteAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// An element of a [`FiniteAlgebra`] in basis coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    alg: Arc<FiniteAlgebra>,
    coords: Vec<i64>,
}

impl AlgebraElement {
    pub fn new(alg: Arc<FiniteAlgebra>, coords: Vec<i64>) -> Result<AlgebraElement> {
        if coords.len() != alg.dim {
            return Err(Error::Invalid(format!(
                "element has {} coordinates, expected {}",
                coords.len(),
                alg.dim
            )));
        }
        let r = alg.ring;
        Ok(AlgebraElement { coords: coords.into_iter().map(|c| r.reduce(c)).collect(), alg })
    }

    pub fn algebra(&self) -> &Arc<FiniteAlgebra> {
        &self.alg
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if !same_algebra(&self.alg, &other.alg) {
            return Err(Error::MismatchedAlgebras);
        }
        let r = self.alg.ring;
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| r.add(a, b)).collect();
        Ok(AlgebraElement { alg: self.alg.clone(), coords })
    }

    pub fn multiply(&self, other: &AlgebraElement) -> Result<AlgebraElement> {
        if !same_algebra(&self.alg, &other.alg) {
            return Err(Error::MismatchedAlgebras);
        }
        Ok(AlgebraElement { alg: self.alg.clone(), coords: self.alg.mul_coords(&self.coords, &other.coords) })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(name: &str) -> Arc<FiniteAlgebra> {
        Arc::new(FiniteAlgebra::builtin(name).unwrap())
    }

    #[test]
    fn builtins_are_valid() {
        for name in ["Z", "Z/4", "Z/7", "dual(2)", "dual(0)", "trunc(2,3)", "trunc(0,4)", "mat2(3)", "mat2(0)", "groupZ2(3)"] {
            assert!(FiniteAlgebra::builtin(name).unwrap().validate().is_empty(), "{name}");
        }
    }

    #[test]
    fn builtin_shapes() {
        let d = FiniteAlgebra::builtin("dual(2)").unwrap();
        assert_eq!(d.dim(), 2);
        assert_eq!(d.labels(), &["1".to_string(), "x".to_string()]);
        let m = FiniteAlgebra::builtin("mat2(2)").unwrap();
        assert_eq!(m.dim(), 4);
        assert_eq!(m.unit(), &[1, 0, 0, 1]);
        let g = FiniteAlgebra::builtin("groupZ2(3)").unwrap();
        assert_eq!(g.product(1, 1), &[1, 0]);
        assert!(matches!(FiniteAlgebra::builtin("quat(2)"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn small_products() {
        let d = arc("dual(2)");
        let x = d.basis_element(1).unwrap();
        assert_eq!(x.multiply(&x).unwrap().coords(), &[0, 0]);
        let m = arc("mat2(5)");
        let e11 = m.basis_element(0).unwrap();
        let e12 = m.basis_element(1).unwrap();
        assert_eq!(e11.multiply(&e12).unwrap(), e12);
        let z4 = arc("Z/4");
        let two = AlgebraElement::new(z4.clone(), vec![2]).unwrap();
        let three = AlgebraElement::new(z4, vec![3]).unwrap();
        assert_eq!(two.multiply(&three).unwrap().coords(), &[2]);
        assert_eq!(two.multiply(&x), Err(Error::MismatchedAlgebras));
    }

    #[test]
    fn perturbed_table_is_reported() {
        let m = FiniteAlgebra::builtin("mat2(3)").unwrap();
        let mut table = m.table();
        table[0][1][1] += 1;
        let bad = FiniteAlgebra::new(m.ring(), m.labels().to_vec(), m.unit().to_vec(), &table).unwrap();
        assert!(!bad.validate().is_empty());
    }

    #[test]
    fn bilinear_on_basis_sums() {
        for name in ["dual(3)", "trunc(0,3)", "mat2(3)", "groupZ2(0)"] {
            let alg = arc(name);
            let d = alg.dim();
            let r = alg.ring();
            // every 0/1 coordinate vector, split as a sum of its basis vectors
            for mask_a in 0u32..(1 << d) {
                for mask_b in 0u32..(1 << d) {
                    let vec_of = |m: u32| (0..d).map(|i| ((m >> i) & 1) as i64).collect::<Vec<_>>();
                    let whole = alg.mul_coords(&vec_of(mask_a), &vec_of(mask_b));
                    let mut sum = vec![0; d];
                    for i in (0..d).filter(|i| mask_a >> i & 1 == 1) {
                        for j in (0..d).filter(|j| mask_b >> j & 1 == 1) {
                            for (s, &t) in sum.iter_mut().zip(alg.product(i, j)) {
                                *s = r.add(*s, t);
                            }
                        }
                    }
                    assert_eq!(whole, sum, "{name}");
                }
            }
        }
    }

    #[test]
    fn inverses() {
        let r = Ring::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(r.mul(a, r.inverse(a).unwrap()), 1);
        }
        assert_eq!(Ring::new(4).unwrap().inverse(2), None);
        assert_eq!(Ring::integers().inverse(-1), Some(-1));
        assert!(Ring::new(13).unwrap().is_prime_field());
        assert!(!Ring::new(12).unwrap().is_prime_field());
    }
}
