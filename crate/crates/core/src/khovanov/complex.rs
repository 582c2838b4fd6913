//! Assembly of the normalized complex from the edge maps.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::convention::Convention;
use super::edge::EdgePlan;
use super::{Frobenius, Ring};
use crate::code::VirtualLinkDiagram;
use crate::error::{Error, Result};
use crate::homology::matrix::{SparseMatrix, TripletDump};
use crate::poly::LaurentPolynomial;

/// Row, column, coefficient.
type Triplet = (usize, usize, i64);
type Bidegree = (i32, i32);
use crate::state::{CubeGeometry, State, DEFAULT_CROSSING_CAP};

/// A basis element: a state and its circle labels (bit `c` = X on circle `c`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Generator {
    pub state: State,
    pub labels: u64,
}

#[derive(Clone, Debug)]
pub struct ChainGroup {
    pub i: i32,
    /// None when the complex carries no quantum grading.
    pub j: Option<i32>,
    pub basis: Vec<Generator>,
    /// ∂ from this group to the group at `(i + 1, j)`.
    pub differential: SparseMatrix,
}

impl ChainGroup {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug)]
pub struct BigradedComplex {
    pub ring: Ring,
    pub quantum_graded: bool,
    pub crossings: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    /// Keyed by `(i, j)`, with `j = 0` throughout when not quantum graded.
    groups: BTreeMap<(i32, i32), ChainGroup>,
}

#[derive(Clone, Debug)]
pub struct BuildOptions {
    pub convention: Convention,
    pub frobenius: Frobenius,
    pub cap: usize,
    /// Verify ∂∘∂ = 0 before returning.
    pub check: bool,
}

impl Default for BuildOptions {
    fn default() -> Self {
        Self { convention: Convention::default(), frobenius: Frobenius::STANDARD, cap: DEFAULT_CROSSING_CAP, check: true }
    }
}

/// Builds the normalized complex for `ring`, asserting ∂∘∂ = 0.
pub fn build_complex(d: &VirtualLinkDiagram, ring: Ring) -> Result<BigradedComplex> {
    let opts = BuildOptions { frobenius: ring.frobenius(), ..BuildOptions::default() };
    let mut c = build_complex_with(d, &opts)?;
    c.ring = ring;
    Ok(c)
}

/// Reverses the low `width` bits: label words compare circle 0 first.
fn word_key(labels: u64, width: usize) -> u64 {
    if width == 0 {
        0
    } else {
        labels.reverse_bits() >> (64 - width)
    }
}

pub fn build_complex_with(d: &VirtualLinkDiagram, opts: &BuildOptions) -> Result<BigradedComplex> {
    let g = CubeGeometry::new(d);
    let resolutions = g.resolve_all(opts.cap)?;
    let n = d.crossing_count();
    let (np, nm) = (d.n_plus() as i32, d.n_minus() as i32);
    let graded = opts.frobenius.is_standard();
    let key = |s: State, labels: u64, gamma: usize| {
        let h = s.height() as i32;
        let xs = labels.count_ones() as i32;
        let j = if graded { gamma as i32 - 2 * xs + h + np - 2 * nm } else { 0 };
        (h - nm, j)
    };

    // bases, and the index of each generator inside its group
    let mut bases: BTreeMap<(i32, i32), Vec<Generator>> = BTreeMap::new();
    let mut index: Vec<Vec<usize>> = Vec::with_capacity(resolutions.len());
    for r in &resolutions {
        let gamma = r.circles.len();
        let mut idx = vec![0; 1 << gamma];
        for w in 0..1u64 << gamma {
            let labels = word_key(w, gamma);
            let basis = bases.entry(key(r.state, labels, gamma)).or_default();
            idx[labels as usize] = basis.len();
            basis.push(Generator { state: r.state, labels });
        }
        index.push(idx);
    }

    // edge maps, one state at a time
    let per_state: Vec<Result<Vec<(Bidegree, Triplet)>>> = resolutions
        .par_iter()
        .map(|src| {
            let mut out = vec![];
            let mut buf = vec![];
            let gamma = src.circles.len();
            for k in (0..n).filter(|&k| !src.state.bit(k)) {
                let tgt = &resolutions[src.state.with_bit(k).0 as usize];
                let plan = EdgePlan::new(&g, &opts.convention, src, tgt, k)?;
                for labels in 0..1u64 << gamma {
                    plan.apply(labels, opts.frobenius, &mut buf);
                    let from = key(src.state, labels, gamma);
                    let col = index[src.state.0 as usize][labels as usize];
                    for &(t, c) in &buf {
                        debug_assert!(!graded || key(tgt.state, t, tgt.circles.len()).1 == from.1);
                        out.push((from, (index[tgt.state.0 as usize][t as usize], col, c)));
                    }
                }
            }
            Ok(out)
        })
        .collect();
    let mut triplets: BTreeMap<(i32, i32), Vec<Triplet>> = BTreeMap::new();
    for part in per_state {
        for (from, entry) in part? {
            triplets.entry(from).or_default().push(entry);
        }
    }

    let mut groups = BTreeMap::new();
    for (&(i, j), basis) in &bases {
        let rows = bases.get(&(i + 1, j)).map_or(0, Vec::len);
        let differential = SparseMatrix::from_triplets(rows, basis.len(), triplets.remove(&(i, j)).unwrap_or_default());
        groups.insert((i, j), ChainGroup { i, j: graded.then_some(j), basis: basis.clone(), differential });
    }
    let ring = if graded { Ring::Z } else { Ring::Frobenius(opts.frobenius) };
    let c = BigradedComplex { ring, quantum_graded: graded, crossings: n, n_plus: np as usize, n_minus: nm as usize, groups };
    if opts.check {
        c.check_d_squared()?;
    }
    Ok(c)
}

/// JSON dump: per group, its dimension and the triplets of ∂.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ComplexDump {
    pub ring: String,
    pub quantum_graded: bool,
    pub groups: Vec<GroupDump>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupDump {
    pub i: i32,
    pub j: Option<i32>,
    pub dim: usize,
    pub differential: TripletDump,
}

impl BigradedComplex {
    pub fn groups(&self) -> impl Iterator<Item = &ChainGroup> {
        self.groups.values()
    }

    fn key(&self, i: i32, j: Option<i32>) -> (i32, i32) {
        (i, if self.quantum_graded { j.expect("graded complex needs j") } else { 0 })
    }

    pub fn group(&self, i: i32, j: Option<i32>) -> Option<&ChainGroup> {
        self.groups.get(&self.key(i, j))
    }

    pub fn dim(&self, i: i32, j: Option<i32>) -> usize {
        self.group(i, j).map_or(0, ChainGroup::dim)
    }

    /// ∂^{i,j}, with the right shape even where a group is empty.
    pub fn differential(&self, i: i32, j: Option<i32>) -> SparseMatrix {
        match self.group(i, j) {
            Some(g) => g.differential.clone(),
            None => SparseMatrix::zeros(self.dim(i + 1, j), 0),
        }
    }

    /// Bidegrees `(i, j)` carrying generators.
    pub fn bidegrees(&self) -> Vec<(i32, Option<i32>)> {
        self.groups.values().map(|g| (g.i, g.j)).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.groups.values().map(ChainGroup::dim).sum()
    }

    /// Nonzero entries of ∂∘∂ out of each bidegree; empty when ∂∘∂ = 0.
    pub fn d_squared_defects(&self) -> Vec<(i32, Option<i32>, usize)> {
        self.groups
            .values()
            .filter_map(|g| {
                let next = self.group(g.i + 1, g.j)?;
                let nnz = next.differential.mul(&g.differential).nnz();
                (nnz > 0).then_some((g.i, g.j, nnz))
            })
            .collect()
    }

    pub fn check_d_squared(&self) -> Result<()> {
        match self.d_squared_defects().first() {
            None => Ok(()),
            Some(&(i, j, nonzero)) => Err(Error::AnticommutativityViolation { i, j: j.unwrap_or(0), nonzero }),
        }
    }

    /// Σ (−1)^i q^j dim C^{i,j}; None without a quantum grading.
    pub fn euler_characteristic(&self) -> Option<LaurentPolynomial> {
        if !self.quantum_graded {
            return None;
        }
        let mut p = LaurentPolynomial::zero();
        for g in self.groups.values() {
            let sign = if g.i % 2 == 0 { 1 } else { -1 };
            p.add_term(sign * g.dim() as i64, g.j.unwrap());
        }
        Some(p)
    }

    pub fn dump(&self) -> ComplexDump {
        ComplexDump {
            ring: self.ring.to_string(),
            quantum_graded: self.quantum_graded,
            groups: self
                .groups
                .values()
                .map(|g| GroupDump { i: g.i, j: g.j, dim: g.dim(), differential: g.differential.dump() })
                .collect(),
        }
    }
}
