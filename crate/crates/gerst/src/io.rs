//! Text and JSON formats for algebras, monoids, chain complexes and homology.

use std::path::Path;
use std::sync::Arc;

use gerst_core::algebra::{FiniteAlgebra, Ring};
use gerst_core::chains::{HomologyGroup, IntChainComplex, SparseMatrix};
use gerst_core::cosimplicial::FiniteMonoid;
use gerst_core::hochschild::Cochain;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// `{"modulus": m, "dim": d, "basis": [..], "unit": [..], "table": [[[..]]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    pub modulus: u64,
    pub dim: usize,
    pub basis: Vec<String>,
    pub unit: Vec<i64>,
    pub table: Vec<Vec<Vec<i64>>>,
}

impl AlgebraFile {
    pub fn of(alg: &FiniteAlgebra) -> AlgebraFile {
        AlgebraFile {
            modulus: alg.ring().modulus(),
            dim: alg.dim(),
            basis: alg.labels().to_vec(),
            unit: alg.unit().to_vec(),
            table: alg.table(),
        }
    }

    /// Builds the algebra and rejects it unless it is associative and unital.
    pub fn build(self) -> Result<FiniteAlgebra> {
        if self.basis.len() != self.dim {
            return Err(Error::Usage(format!("dim is {} but {} basis labels are given", self.dim, self.basis.len())));
        }
        let alg = FiniteAlgebra::new(Ring::new(self.modulus)?, self.basis, self.unit, &self.table)?;
        let report = alg.validate();
        if !report.is_empty() {
            return Err(Error::Usage(format!("not a unital associative algebra: {report:?}")));
        }
        Ok(alg)
    }
}

pub fn algebra_to_json(alg: &FiniteAlgebra) -> String {
    serde_json::to_string(&AlgebraFile::of(alg)).expect("algebra serializes")
}

pub fn algebra_from_json(text: &str) -> Result<FiniteAlgebra> {
    serde_json::from_str::<AlgebraFile>(text)?.build()
}

/// A builtin name, or a path to an algebra JSON file.
pub fn resolve_algebra(spec: &str) -> Result<Arc<FiniteAlgebra>> {
    if spec.ends_with(".json") || Path::new(spec).is_file() {
        let mut alg = algebra_from_json(&std::fs::read_to_string(spec)?)?;
        alg.set_name(spec);
        return Ok(Arc::new(alg));
    }
    Ok(Arc::new(FiniteAlgebra::builtin(spec)?))
}

/// `{"algebra": name, "arity": p, "values": [..]}`, values laid out as
/// `values[tuple * d + coordinate]` with tuples in lexicographic order.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CochainFile {
    pub algebra: String,
    pub arity: usize,
    pub values: Vec<i64>,
}

pub fn cochain_to_json(x: &Cochain) -> String {
    let file = CochainFile { algebra: x.algebra().name().into(), arity: x.arity(), values: x.values().to_vec() };
    serde_json::to_string(&file).expect("cochain serializes")
}

/// Reads a cochain, resolving its algebra with [`resolve_algebra`].
pub fn cochain_from_json(text: &str) -> Result<Cochain> {
    let file: CochainFile = serde_json::from_str(text)?;
    let alg = resolve_algebra(&file.algebra)?;
    Ok(Cochain::from_values(&alg, file.arity, file.values)?)
}

/// `{"size": k, "unit": u, "table": [[..]]}`, with optional `labels`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MonoidFile {
    pub size: usize,
    pub unit: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl MonoidFile {
    pub fn of(m: &FiniteMonoid) -> MonoidFile {
        MonoidFile { size: m.size(), unit: m.unit(), table: m.table().to_vec(), labels: Some(m.labels().to_vec()) }
    }

    pub fn build(self) -> Result<FiniteMonoid> {
        if self.table.len() != self.size {
            return Err(Error::Usage(format!("size is {} but the table has {} rows", self.size, self.table.len())));
        }
        let labels = self.labels.unwrap_or_else(|| (0..self.size).map(|i| i.to_string()).collect());
        Ok(FiniteMonoid::new(labels, self.table, self.unit)?)
    }
}

pub fn monoid_from_json(text: &str) -> Result<FiniteMonoid> {
    serde_json::from_str::<MonoidFile>(text)?.build()
}

/// A builtin name (`Z/k`, `max(k)`), inline JSON, or a path to a JSON file.
pub fn resolve_monoid(spec: &str) -> Result<FiniteMonoid> {
    let spec = spec.trim();
    if spec.starts_with('{') {
        return monoid_from_json(spec);
    }
    if spec.ends_with(".json") || Path::new(spec).is_file() {
        return monoid_from_json(&std::fs::read_to_string(spec)?);
    }
    Ok(FiniteMonoid::builtin(spec)?)
}

/// One degree of a chain complex: basis labels and the dense boundary to
/// the degree below (rows indexed by the lower basis).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DegreeFile {
    pub basis: Vec<String>,
    pub boundary: Vec<Vec<i64>>,
}

/// `{"degrees": [{"basis": [..], "boundary": [[..]]}, ..]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexFile {
    pub degrees: Vec<DegreeFile>,
}

impl ComplexFile {
    pub fn of(c: &IntChainComplex) -> ComplexFile {
        let degrees = (0..c.ranks().len())
            .map(|d| DegreeFile {
                basis: c.basis(d).to_vec(),
                boundary: c.boundary(d).map(SparseMatrix::to_dense).unwrap_or_default(),
            })
            .collect();
        ComplexFile { degrees }
    }

    pub fn build(self) -> Result<IntChainComplex> {
        let mut bases = Vec::new();
        let mut boundaries = Vec::new();
        for (d, deg) in self.degrees.into_iter().enumerate() {
            let rows = if d == 0 { 0 } else { bases.last().map_or(0, |b: &Vec<String>| b.len()) };
            let cols = deg.basis.len();
            if deg.boundary.len() != rows || deg.boundary.iter().any(|r| r.len() != cols) {
                return Err(Error::Usage(format!("boundary in degree {d} must be {rows}x{cols}")));
            }
            boundaries.push(if rows == 0 { SparseMatrix::zero(0, cols) } else { SparseMatrix::from_dense(&deg.boundary, cols) });
            bases.push(deg.basis);
        }
        Ok(IntChainComplex::new(bases, boundaries)?)
    }
}

pub fn complex_to_json(c: &IntChainComplex) -> String {
    serde_json::to_string(&ComplexFile::of(c)).expect("complex serializes")
}

pub fn complex_from_json(text: &str) -> Result<IntChainComplex> {
    serde_json::from_str::<ComplexFile>(text)?.build()
}

fn torsion_value(t: &impl ToString) -> Value {
    let s = t.to_string();
    s.parse::<u64>().map_or(Value::String(s), Value::from)
}

/// `[{"degree": d, "rank": r, "torsion": [..]}, ..]`.
pub fn homology_to_json(h: &[HomologyGroup]) -> Value {
    Value::Array(
        h.iter()
            .enumerate()
            .map(|(d, g)| json!({"degree": d, "rank": g.rank, "torsion": g.torsion.iter().map(torsion_value).collect::<Vec<_>>()}))
            .collect(),
    )
}

/// `degree,rank,torsion` with torsion coefficients joined by `;`.
pub fn homology_to_csv(h: &[HomologyGroup]) -> String {
    let mut out = String::from("degree,rank,torsion\n");
    for (d, g) in h.iter().enumerate() {
        let torsion: Vec<String> = g.torsion.iter().map(ToString::to_string).collect();
        out.push_str(&format!("{d},{},{}\n", g.rank, torsion.join(";")));
    }
    out
}
