//! Smith normal form over the integers.
//!
//! [`invariant_factors`] is the fast path used for homology: sparse
//! elimination on unit pivots (fewest-fill first), then dense reduction of
//! whatever is left with smallest-magnitude pivoting. It runs on checked
//! `i128` and restarts on big integers if anything overflows.
//! [`smith_normal_form`] is a plain dense algorithm that also records the
//! unimodular transforms.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::SparseMatrix;

/// Integer arithmetic that may refuse to continue on overflow.
trait Coef: Clone + PartialEq + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn vanishes(&self) -> bool;
    fn abs_cmp_key(&self) -> BigInt;
    fn is_unit(&self) -> bool;
    /// `self − q·other`.
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self>;
    /// Quotient rounded toward zero.
    fn quot(&self, other: &Self) -> Self;
    fn to_big(&self) -> BigInt;
}

impl Coef for i128 {
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn vanishes(&self) -> bool {
        *self == 0
    }
    fn abs_cmp_key(&self) -> BigInt {
        BigInt::from(self.unsigned_abs())
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*other)?)
    }
    fn quot(&self, other: &Self) -> Self {
        self / other
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coef for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs_cmp_key(&self) -> BigInt {
        self.abs()
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self> {
        Some(self - q * other)
    }
    fn quot(&self, other: &Self) -> Self {
        self / other
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Nonzero invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors {
    pub rank: usize,
    /// Factors greater than one, ascending, each dividing the next.
    pub torsion: Vec<BigInt>,
}

pub fn invariant_factors(a: &SparseMatrix) -> InvariantFactors {
    let diag = reduce::<i128>(a).map(|d| d.iter().map(Coef::to_big).collect()).unwrap_or_else(|| {
        reduce::<BigInt>(a).expect("big integers never overflow")
    });
    let chain = divisibility_chain(diag);
    InvariantFactors { rank: chain.len(), torsion: chain.into_iter().filter(|d| !d.is_one()).collect() }
}

/// Sorts nonzero diagonal entries into a divisibility chain of positive
/// integers with the same product structure.
pub fn divisibility_chain(diag: Vec<BigInt>) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = diag.into_iter().map(|x| x.abs()).filter(|x| !Zero::is_zero(x)).collect();
    let n = d.len();
    for i in 0..n {
        for j in i + 1..n {
            let g = d[i].gcd(&d[j]);
            let l = &d[i] / &g * &d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// Diagonal entries after elimination (not yet a divisibility chain).
fn reduce<T: Coef>(a: &SparseMatrix) -> Option<Vec<T>> {
    // rows as sorted maps col → value, and the rows meeting each column
    let mut rows: Vec<BTreeMap<usize, T>> = vec![BTreeMap::new(); a.rows()];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); a.cols()];
    for (r, c, v) in a.triplets() {
        rows[r].insert(c, T::from_i64(v));
        col_rows[c].insert(r);
    }
    let mut diag: Vec<T> = vec![];

    // unit pivots, fewest expected fill-in first
    loop {
        let mut best: Option<(usize, usize, usize)> = None;
        'search: for (r, row) in rows.iter().enumerate() {
            for (&c, v) in row {
                if !v.is_unit() {
                    continue;
                }
                let cost = (row.len() - 1) * (col_rows[c].len() - 1);
                if best.is_none_or(|b| cost < b.2) {
                    best = Some((r, c, cost));
                    if cost == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((pr, pc, _)) = best else { break };
        let pivot_row = std::mem::take(&mut rows[pr]);
        for c in pivot_row.keys() {
            col_rows[*c].remove(&pr);
        }
        let pv = pivot_row[&pc].clone();
        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for r in targets {
            // row_r -= (a[r,pc] / pv) · row_pr; pv = ±1 so the quotient is exact
            let q = rows[r][&pc].quot(&pv);
            for (&c, v) in &pivot_row {
                let next = match rows[r].get(&c) {
                    Some(cur) => cur.sub_mul(&q, v)?,
                    None => T::from_i64(0).sub_mul(&q, v)?,
                };
                if next.vanishes() {
                    rows[r].remove(&c);
                    col_rows[c].remove(&r);
                } else {
                    rows[r].insert(c, next);
                    col_rows[c].insert(r);
                }
            }
        }
        diag.push(pv);
    }

    // dense remainder
    let live_rows: Vec<usize> = (0..a.rows()).filter(|&r| !rows[r].is_empty()).collect();
    let mut live_cols: Vec<usize> = live_rows.iter().flat_map(|&r| rows[r].keys().copied()).collect();
    live_cols.sort_unstable();
    live_cols.dedup();
    let col_pos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut m: Vec<Vec<T>> = live_rows
        .iter()
        .map(|&r| {
            let mut row = vec![T::from_i64(0); live_cols.len()];
            for (c, v) in &rows[r] {
                row[col_pos[c]] = v.clone();
            }
            row
        })
        .collect();
    diag.extend(dense_diagonalize(&mut m)?);
    Some(diag)
}

/// Diagonalizes in place by row and column operations; returns the
/// nonzero diagonal.
fn dense_diagonalize<T: Coef>(m: &mut [Vec<T>]) -> Option<Vec<T>> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = vec![];
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = min_entry(m, t) else { break };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t].vanishes() {
                    continue;
                }
                let q = m[i][t].quot(&m[t][t]);
                let (top, rest) = m.split_at_mut(i);
                for (x, y) in rest[0][t..cols].iter_mut().zip(&top[t][t..cols]) {
                    *x = x.sub_mul(&q, y)?;
                }
                if !m[i][t].vanishes() {
                    clean = false;
                }
            }
            for c in t + 1..cols {
                if m[t][c].vanishes() {
                    continue;
                }
                let q = m[t][c].quot(&m[t][t]);
                for row in m.iter_mut().skip(t) {
                    row[c] = row[c].sub_mul(&q, &row[t])?;
                }
                if !m[t][c].vanishes() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
            // bring the smallest remainder in row/column t to the pivot
            let mut best = (t, t);
            for i in t..rows {
                if !m[i][t].vanishes() && m[i][t].abs_cmp_key() < m[best.0][best.1].abs_cmp_key() {
                    best = (i, t);
                }
            }
            for c in t..cols {
                if !m[t][c].vanishes() && m[t][c].abs_cmp_key() < m[best.0][best.1].abs_cmp_key() {
                    best = (t, c);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(m[t][t].clone());
        t += 1;
    }
    Some(diag)
}

fn min_entry<T: Coef>(m: &[Vec<T>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in m.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.vanishes() {
                continue;
            }
            let k = v.abs_cmp_key();
            if best.as_ref().is_none_or(|b| k < b.2) {
                let unit = k.is_one();
                best = Some((i, j, k));
                if unit {
                    return best.map(|b| (b.0, b.1));
                }
            }
        }
    }
    best.map(|b| (b.0, b.1))
}

/// `U · A · V = D` with `D` diagonal, `d₁ | d₂ | …`, and `U`, `V` unimodular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub rows: usize,
    pub cols: usize,
    /// Nonzero diagonal entries of `D`, positive, in divisibility order.
    pub diagonal: Vec<BigInt>,
    pub u: Vec<Vec<BigInt>>,
    pub v: Vec<Vec<BigInt>>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// The full diagonal matrix `D`.
    pub fn d_matrix(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, x) in self.diagonal.iter().enumerate() {
            d[i][i] = x.clone();
        }
        d
    }
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// Dense Smith normal form with transforms.
pub fn smith_normal_form(a: &SparseMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m: Vec<Vec<BigInt>> = a.to_dense().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
    let mut u = identity(rows);
    let mut v = identity(cols);
    let swap_rows = |m: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        m.swap(i, j);
        u.swap(i, j);
    };
    let swap_cols = |m: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
    };
    // row_i -= q · row_j, mirrored in U
    fn row_op(m: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], i: usize, j: usize, q: &BigInt) {
        for k in 0..m[i].len() {
            let x = &m[j][k] * q;
            m[i][k] -= x;
        }
        for k in 0..u[i].len() {
            let x = &u[j][k] * q;
            u[i][k] -= x;
        }
    }
    // col_i -= q · col_j, mirrored in V
    fn col_op(m: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], i: usize, j: usize, q: &BigInt) {
        for row in m.iter_mut() {
            let x = &row[j] * q;
            row[i] -= x;
        }
        for row in v.iter_mut() {
            let x = &row[j] * q;
            row[i] -= x;
        }
    }

    let mut diagonal = vec![];
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = min_entry(&m, t) else { break };
        swap_rows(&mut m, &mut u, t, pr);
        swap_cols(&mut m, &mut v, t, pc);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if !m[i][t].is_zero() {
                    let q = &m[i][t] / &m[t][t];
                    row_op(&mut m, &mut u, i, t, &q);
                    clean &= m[i][t].is_zero();
                }
            }
            for c in t + 1..cols {
                if !m[t][c].is_zero() {
                    let q = &m[t][c] / &m[t][t];
                    col_op(&mut m, &mut v, c, t, &q);
                    clean &= m[t][c].is_zero();
                }
            }
            if clean {
                // the pivot must divide the rest of the block
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|c| !(&m[i][c] % &m[t][t]).is_zero()));
                match bad {
                    None => break,
                    Some(i) => {
                        // row_t += row_i brings a non-multiple into row t
                        row_op(&mut m, &mut u, t, i, &BigInt::from(-1));
                        continue;
                    }
                }
            }
            let mut best = (t, t);
            for i in t..rows {
                if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for c in t..cols {
                if !m[t][c].is_zero() && m[t][c].abs() < m[best.0][best.1].abs() {
                    best = (t, c);
                }
            }
            swap_rows(&mut m, &mut u, t, best.0);
            swap_cols(&mut m, &mut v, t, best.1);
        }
        if m[t][t].is_negative() {
            for x in m[t].iter_mut() {
                *x = -&*x;
            }
            for x in u[t].iter_mut() {
                *x = -&*x;
            }
        }
        diagonal.push(m[t][t].clone());
        t += 1;
    }
    SmithDecomposition { rows, cols, diagonal, u, v }
}

/// Converts a factor to `u64` when it fits.
pub fn small(x: &BigInt) -> Option<u64> {
    x.to_u64()
}
