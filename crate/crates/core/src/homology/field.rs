//! Ranks over prime fields and over Q.

use std::collections::BTreeMap;

use super::matrix::SparseMatrix;
use super::snf::invariant_factors;

fn inverse_mod(a: u64, p: u64) -> u64 {
    // Fermat, p prime
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Rank of `a` reduced mod the prime `p` (`p < 2^31`).
pub fn rank_mod_p(a: &SparseMatrix, p: u64) -> usize {
    let to_field = |v: i64| v.rem_euclid(p as i64) as u64;
    let mut rows: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); a.rows()];
    for (r, c, v) in a.triplets() {
        let x = to_field(v);
        if x != 0 {
            rows[r].insert(c, x);
        }
    }
    rows.retain(|r| !r.is_empty());
    // shortest rows first keeps fill-in down
    rows.sort_by_key(BTreeMap::len);
    // pivot column → reduced pivot row, leading coefficient 1
    let mut pivots: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
    for mut row in rows {
        while let Some((&lead, &v)) = row.iter().find(|(c, _)| pivots.contains_key(c)) {
            let prow = &pivots[&lead];
            for (&c, &w) in prow {
                let cur = row.get(&c).copied().unwrap_or(0);
                let next = (cur + p - v * w % p) % p;
                if next == 0 {
                    row.remove(&c);
                } else {
                    row.insert(c, next);
                }
            }
        }
        if let Some((&lead, &v)) = row.iter().next() {
            let inv = inverse_mod(v, p);
            row.values_mut().for_each(|x| *x = *x * inv % p);
            pivots.insert(lead, row);
        }
    }
    pivots.len()
}

/// Rank over Q, which equals the rank over Z.
pub fn rank_q(a: &SparseMatrix) -> usize {
    invariant_factors(a).rank
}
