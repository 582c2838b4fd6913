//! Independent oracles: state circles by union-find over crossing ends, the
//! classical Khovanov cube with unordered tensor products and the usual
//! edge signs, the unsigned cube over GF(2), dense integer elimination,
//! and the state-sum Ĵ.
#![allow(dead_code)]

use std::collections::BTreeMap;

use vkh::code::{Passage, Sign};
use vkh::VirtualLinkDiagram;

/// `q`-polynomials as exponent → coefficient, zero terms removed.
pub type Poly = BTreeMap<i32, i64>;

pub fn poly_of(p: &vkh::LaurentPolynomial) -> Poly {
    p.terms().collect()
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_default() += ca * cb;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

// end roles: 0 over-in, 1 over-out, 2 under-in, 3 under-out
const OI: usize = 0;
const OO: usize = 1;
const UI: usize = 2;
const UO: usize = 3;

pub struct Cube {
    pub n: usize,
    pub free: usize,
    pub positive: Vec<bool>,
    /// Pairs of ends joined by arcs.
    arcs: Vec<(usize, usize)>,
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// Circle index (0..γ-without-free-loops) of every end.
pub struct Circles {
    pub of_end: Vec<usize>,
    pub count: usize,
}

impl Cube {
    pub fn new(d: &VirtualLinkDiagram) -> Self {
        let n = d.crossing_count();
        let mut positive = vec![true; n];
        let mut arcs = vec![];
        for comp in d.components() {
            let m = comp.len();
            for k in 0..m {
                let p = comp[k];
                let q = comp[(k + 1) % m];
                positive[p.crossing] = p.sign == Sign::Positive;
                let out = 4 * p.crossing + if p.passage == Passage::Over { OO } else { UO };
                let inn = 4 * q.crossing + if q.passage == Passage::Over { OI } else { UI };
                arcs.push((out, inn));
            }
        }
        Cube { n, free: d.free_loops(), positive, arcs }
    }

    /// Pairs of ends joined by the smoothing of crossing `c`.
    fn smoothing(&self, c: usize, b: bool) -> [(usize, usize); 2] {
        let oriented = self.positive[c] != b;
        let e = |r: usize| 4 * c + r;
        if oriented {
            [(e(OI), e(UO)), (e(UI), e(OO))]
        } else {
            [(e(OI), e(UI)), (e(OO), e(UO))]
        }
    }

    pub fn circles(&self, s: u64) -> Circles {
        let mut dsu = Dsu((0..4 * self.n).collect());
        for &(a, b) in &self.arcs {
            dsu.union(a, b);
        }
        for c in 0..self.n {
            for (a, b) in self.smoothing(c, s >> c & 1 == 1) {
                dsu.union(a, b);
            }
        }
        let mut ids = BTreeMap::new();
        let of_end: Vec<usize> = (0..4 * self.n)
            .map(|e| {
                let r = dsu.find(e);
                let next = ids.len();
                *ids.entry(r).or_insert(next)
            })
            .collect();
        Circles { of_end, count: ids.len() }
    }

    pub fn gamma(&self, s: u64) -> usize {
        self.circles(s).count + self.free
    }

    fn n_minus(&self) -> usize {
        self.positive.iter().filter(|&&p| !p).count()
    }

    /// (−1)^{n₋} q^{n₊−2n₋} Σ_s (−q)^{|s|} (q + q⁻¹)^{γ(s)}.
    pub fn jones_hat(&self) -> Poly {
        let loop_value: Poly = [(-1, 1), (1, 1)].into_iter().collect();
        let mut total = Poly::new();
        for s in 0..1u64 << self.n {
            let h = s.count_ones() as i32;
            let mut term: Poly = [(h, if h % 2 == 0 { 1 } else { -1 })].into_iter().collect();
            for _ in 0..self.gamma(s) {
                term = poly_mul(&term, &loop_value);
            }
            for (e, c) in term {
                *total.entry(e).or_default() += c;
            }
        }
        let nm = self.n_minus() as i32;
        let np = self.n as i32 - nm;
        let sign = if nm % 2 == 0 { 1 } else { -1 };
        let out: Poly = total.into_iter().filter(|&(_, c)| c != 0).map(|(e, c)| (e + np - 2 * nm, sign * c)).collect();
        out
    }

    /// Complex of the cube. With `signed`, the classical theory over Z with
    /// edge sign (−1)^{#1s before k}; 1→1 edges are not allowed. Without,
    /// the unsigned cube (meant for GF(2)) where 1→1 edges are zero.
    pub fn complex(&self, signed: bool) -> OracleComplex {
        let nm = self.n_minus() as i32;
        let np = self.n as i32 - nm;
        let states: Vec<Circles> = (0..1u64 << self.n).map(|s| self.circles(s)).collect();
        let key = |s: u64, labels: u64| {
            let g = states[s as usize].count + self.free;
            let h = s.count_ones() as i32;
            (h - nm, g as i32 - 2 * labels.count_ones() as i32 + h + np - 2 * nm)
        };
        let mut index: BTreeMap<(u64, u64), usize> = BTreeMap::new();
        let mut dims: BTreeMap<(i32, i32), usize> = BTreeMap::new();
        for s in 0..1u64 << self.n {
            let g = states[s as usize].count + self.free;
            for labels in 0..1u64 << g {
                let d = dims.entry(key(s, labels)).or_default();
                index.insert((s, labels), *d);
                *d += 1;
            }
        }
        let mut entries: BTreeMap<(i32, i32), BTreeMap<(usize, usize), i64>> = BTreeMap::new();
        for s in 0..1u64 << self.n {
            let src = &states[s as usize];
            let g = src.count + self.free;
            for k in (0..self.n).filter(|&k| s >> k & 1 == 0) {
                let t = s | 1 << k;
                let tgt = &states[t as usize];
                let sign = if signed && (s & ((1 << k) - 1)).count_ones() % 2 == 1 { -1 } else { 1 };
                let src_at: Vec<usize> = (0..4).map(|r| src.of_end[4 * k + r]).collect();
                let tgt_at: Vec<usize> = (0..4).map(|r| tgt.of_end[4 * k + r]).collect();
                let mut src_set = src_at.clone();
                src_set.sort_unstable();
                src_set.dedup();
                let mut tgt_set = tgt_at.clone();
                tgt_set.sort_unstable();
                tgt_set.dedup();
                // circle correspondence away from crossing k, via any end
                let mut carry = vec![usize::MAX; g];
                for e in 0..4 * self.n {
                    if !src_set.contains(&src.of_end[e]) {
                        carry[src.of_end[e]] = tgt.of_end[e];
                    }
                }
                for f in 0..self.free {
                    carry[src.count + f] = tgt.count + f;
                }
                for labels in 0..1u64 << g {
                    let x = |c: usize| labels >> c & 1 == 1;
                    let mut base = 0u64;
                    for c in (0..g).filter(|c| !src_set.contains(c)) {
                        if x(c) {
                            base |= 1 << carry[c];
                        }
                    }
                    let images: Vec<u64> = match (src_set.len(), tgt_set.len()) {
                        (2, 1) => {
                            let (a, b) = (x(src_set[0]), x(src_set[1]));
                            let m = tgt_set[0];
                            match (a, b) {
                                (false, false) => vec![base],
                                (true, true) => vec![],
                                _ => vec![base | 1 << m],
                            }
                        }
                        (1, 2) => {
                            let (p, q) = (tgt_set[0], tgt_set[1]);
                            if x(src_set[0]) {
                                vec![base | 1 << p | 1 << q]
                            } else {
                                vec![base | 1 << p, base | 1 << q]
                            }
                        }
                        _ => {
                            assert!(!signed, "1-1 edge in a classical cube");
                            vec![]
                        }
                    };
                    let from = key(s, labels);
                    let col = index[&(s, labels)];
                    for img in images {
                        let row = index[&(t, img)];
                        *entries.entry(from).or_default().entry((row, col)).or_default() += sign;
                    }
                }
            }
        }
        OracleComplex { dims, entries }
    }
}

pub struct OracleComplex {
    pub dims: BTreeMap<(i32, i32), usize>,
    /// ∂ out of each bidegree as (row, col) → value.
    pub entries: BTreeMap<(i32, i32), BTreeMap<(usize, usize), i64>>,
}

impl OracleComplex {
    fn dense(&self, key: (i32, i32)) -> Vec<Vec<i128>> {
        let rows = self.dims.get(&(key.0 + 1, key.1)).copied().unwrap_or(0);
        let cols = self.dims.get(&key).copied().unwrap_or(0);
        let mut m = vec![vec![0i128; cols]; rows];
        if let Some(e) = self.entries.get(&key) {
            for (&(r, c), &v) in e {
                m[r][c] += v as i128;
            }
        }
        m
    }

    /// (i, j) → (free rank, torsion), nonzero groups only.
    pub fn homology_z(&self) -> BTreeMap<(i32, i32), (usize, Vec<u64>)> {
        let factors: BTreeMap<(i32, i32), Vec<i128>> = self.dims.keys().map(|&k| (k, invariant_factors(self.dense(k)))).collect();
        let mut out = BTreeMap::new();
        for (&(i, j), &dim) in &self.dims {
            let out_rank = factors[&(i, j)].len();
            let incoming = factors.get(&(i - 1, j)).cloned().unwrap_or_default();
            let free = dim - out_rank - incoming.len();
            let torsion: Vec<u64> = incoming.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect();
            if free > 0 || !torsion.is_empty() {
                out.insert((i, j), (free, torsion));
            }
        }
        out
    }

    /// (i, j) → Betti number over GF(2), nonzero entries only.
    pub fn betti_mod2(&self) -> BTreeMap<(i32, i32), usize> {
        let ranks: BTreeMap<(i32, i32), usize> = self.dims.keys().map(|&k| (k, rank_mod2(&self.dense(k)))).collect();
        self.dims
            .iter()
            .map(|(&(i, j), &dim)| ((i, j), dim - ranks[&(i, j)] - ranks.get(&(i - 1, j)).copied().unwrap_or(0)))
            .filter(|&(_, b)| b > 0)
            .collect()
    }

    pub fn d_squared_zero(&self) -> bool {
        self.dims.keys().all(|&(i, j)| {
            let a = self.dense((i, j));
            let b = self.dense((i + 1, j));
            b.iter().all(|row| (0..a.first().map_or(0, Vec::len)).all(|c| row.iter().enumerate().map(|(k, v)| v * a[k][c]).sum::<i128>() == 0))
        })
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Nonzero invariant factors of a dense matrix, as a divisibility chain.
pub fn invariant_factors(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut diag = vec![];
    let mut t = 0;
    loop {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if m[i][j] != 0 && best.is_none_or(|(a, b)| m[i][j].abs() < m[a][b].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        let mut done = false;
        while !done {
            done = true;
            for i in t + 1..rows {
                let q = m[i][t] / m[t][t];
                if q != 0 {
                    let (top, rest) = m.split_at_mut(i);
                    for (x, y) in rest[0][t..cols].iter_mut().zip(&top[t][t..cols]) {
                        *x -= q * y;
                    }
                }
                if m[i][t] != 0 {
                    m.swap(t, i);
                    done = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j] / m[t][t];
                if q != 0 {
                    for row in m.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    for row in m.iter_mut() {
                        row.swap(t, j);
                    }
                    done = false;
                }
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    // (a, b) → (gcd, lcm) until sorted into a chain
    let k = diag.len();
    for i in 0..k {
        for j in i + 1..k {
            let g = gcd(diag[i], diag[j]);
            let l = diag[i] / g * diag[j];
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

pub fn rank_mod2(m: &[Vec<i128>]) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let words = cols.div_ceil(64);
    let mut rows: Vec<Vec<u64>> = m
        .iter()
        .map(|r| {
            let mut bits = vec![0u64; words];
            for (c, v) in r.iter().enumerate() {
                if v.rem_euclid(2) == 1 {
                    bits[c / 64] |= 1 << (c % 64);
                }
            }
            bits
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c / 64] >> (c % 64) & 1 == 1) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[c / 64] >> (c % 64) & 1 == 1 {
                row.iter_mut().zip(&pivot).for_each(|(a, b)| *a ^= b);
            }
        }
        rank += 1;
    }
    rank
}

/// Integral table of the library in the oracle's shape.
pub fn table_map(t: &vkh::homology::HomologyTable) -> BTreeMap<(i32, i32), (usize, Vec<u64>)> {
    t.groups.iter().map(|g| ((g.i, g.j.expect("graded")), (g.free, g.torsion.clone()))).collect()
}

pub fn betti_map(t: &vkh::homology::HomologyTable) -> BTreeMap<(i32, i32), usize> {
    t.groups.iter().filter(|g| g.free > 0).map(|g| ((g.i, g.j.expect("graded")), g.free)).collect()
}

pub fn fixtures() -> Vec<(String, VirtualLinkDiagram)> {
    let text = include_str!("../../../../fixtures/corpus.txt");
    vkh::code::corpus::parse_corpus(text)
        .into_iter()
        .map(|e| (e.name.unwrap_or(e.code), e.diagram.expect("fixtures parse")))
        .collect()
}
