//! Sparse integer matrices stored by column.

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    /// Each column sorted by row index, without zeros.
    columns: Vec<Vec<(usize, i64)>>,
}

/// Triplet dump of a matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TripletDump {
    pub rows: usize,
    pub cols: usize,
    /// `[row, col, value]`, ordered by column then row.
    pub entries: Vec<(usize, usize, i64)>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, columns: vec![vec![]; cols] }
    }

    /// Duplicates are summed; zeros dropped.
    pub fn from_triplets(rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, i64)>) -> Self {
        let mut columns: Vec<Vec<(usize, i64)>> = vec![vec![]; cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            columns[c].push((r, v));
        }
        for col in &mut columns {
            normalize(col);
        }
        Self { rows, cols, columns }
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_triplets(
            r,
            c,
            rows.iter().enumerate().flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &v)| (i, j, v))),
        )
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, 1)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, c: usize) -> &[(usize, i64)] {
        &self.columns[c]
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.columns[c].binary_search_by_key(&r, |e| e.0).map_or(0, |i| self.columns[c][i].1)
    }

    pub fn triplets(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.columns.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |&(r, v)| (r, c, v)))
    }

    pub fn dump(&self) -> TripletDump {
        TripletDump { rows: self.rows, cols: self.cols, entries: self.triplets().collect() }
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (r, c, v) in self.triplets() {
            out[r][c] = v;
        }
        out
    }

    pub fn transpose(&self) -> Self {
        Self::from_triplets(self.cols, self.rows, self.triplets().map(|(r, c, v)| (c, r, v)))
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut columns = Vec::with_capacity(rhs.cols);
        let mut acc: Vec<i64> = vec![0; self.rows];
        let mut touched: Vec<usize> = vec![];
        for col in &rhs.columns {
            for &(k, b) in col {
                for &(r, a) in &self.columns[k] {
                    if acc[r] == 0 {
                        touched.push(r);
                    }
                    acc[r] += a * b;
                }
            }
            touched.sort_unstable();
            touched.dedup();
            let mut out = vec![];
            for &r in &touched {
                if acc[r] != 0 {
                    out.push((r, acc[r]));
                }
                acc[r] = 0;
            }
            touched.clear();
            columns.push(out);
        }
        SparseMatrix { rows: self.rows, cols: rhs.cols, columns }
    }

    pub fn scale(&self, k: i64) -> SparseMatrix {
        Self::from_triplets(self.rows, self.cols, self.triplets().map(|(r, c, v)| (r, c, v * k)))
    }

    pub fn add(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch");
        Self::from_triplets(self.rows, self.cols, self.triplets().chain(rhs.triplets()))
    }

    /// Entries reduced into `0..p`.
    pub fn reduce_mod(&self, p: i64) -> SparseMatrix {
        Self::from_triplets(self.rows, self.cols, self.triplets().map(|(r, c, v)| (r, c, v.rem_euclid(p))))
    }
}

fn normalize(col: &mut Vec<(usize, i64)>) {
    col.sort_unstable_by_key(|e| e.0);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(col.len());
    for &(r, v) in col.iter() {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|e| e.1 != 0);
    *col = out;
}
