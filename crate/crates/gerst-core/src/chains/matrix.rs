use alloc::vec;
use alloc::vec::Vec;

/// Integer matrix stored column-wise; each column is a row-sorted list of nonzero entries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> SparseMatrix {
        SparseMatrix { rows, cols: vec![Vec::new(); cols] }
    }

    /// Builds from columns; entries are summed per row and zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> SparseMatrix {
        let cols = columns.into_iter().map(normalize_column).collect::<Vec<_>>();
        debug_assert!(cols.iter().flatten().all(|&(r, _)| r < rows));
        SparseMatrix { rows, cols }
    }

    pub fn from_dense(dense: &[Vec<i64>], cols: usize) -> SparseMatrix {
        let rows = dense.len();
        let columns = (0..cols)
            .map(|j| (0..rows).filter(|&i| dense[i][j] != 0).map(|i| (i, dense[i][j])).collect())
            .collect();
        SparseMatrix { rows, cols: columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, i64)] {
        &self.cols[j]
    }

    pub fn columns(&self) -> &[Vec<(usize, i64)>] {
        &self.cols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.cols[j].binary_search_by_key(&i, |e| e.0).map(|k| self.cols[j][k].1).unwrap_or(0)
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols.len()]; self.rows];
        for (j, col) in self.cols.iter().enumerate() {
            for &(i, v) in col {
                d[i][j] = v;
            }
        }
        d
    }

    /// `self * other`, or `None` if an entry overflows `i64`.
    pub fn mul(&self, other: &SparseMatrix) -> Option<SparseMatrix> {
        assert_eq!(self.cols.len(), other.rows, "dimension mismatch");
        let mut out = Vec::with_capacity(other.cols.len());
        for col in &other.cols {
            let mut acc: Vec<(usize, i64)> = Vec::new();
            for &(k, b) in col {
                for &(i, a) in &self.cols[k] {
                    acc.push((i, a.checked_mul(b)?));
                }
            }
            out.push(checked_normalize(acc)?);
        }
        Some(SparseMatrix { rows: self.rows, cols: out })
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Restriction to the given rows and columns, reindexed in the order given.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> SparseMatrix {
        let mut row_map = vec![usize::MAX; self.rows];
        for (new, &old) in rows.iter().enumerate() {
            row_map[old] = new;
        }
        let columns = cols
            .iter()
            .map(|&j| {
                self.cols[j]
                    .iter()
                    .filter(|&&(i, _)| row_map[i] != usize::MAX)
                    .map(|&(i, v)| (row_map[i], v))
                    .collect()
            })
            .collect();
        SparseMatrix::from_columns(rows.len(), columns)
    }
}

fn normalize_column(mut col: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    col.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(col.len());
    for (i, v) in col {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

fn checked_normalize(mut col: Vec<(usize, i64)>) -> Option<Vec<(usize, i64)>> {
    col.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(col.len());
    for (i, v) in col {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = last.1.checked_add(v)?,
            _ => out.push((i, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    Some(out)
}
