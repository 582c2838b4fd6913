//! Maps along single cube edges.
//!
//! A generator of a state is a wedge of one label per circle, written in
//! canonical circle order, where `X` on a circle means `X` in its reference
//! orientation. Labels are stored as a bitmask: bit `c` set means `X` on
//! circle `c`. Every wedge factor is treated as odd when reordering.

use serde::Serialize;

use super::convention::Convention;
use super::Frobenius;
use crate::code::VirtualLinkDiagram;
use crate::error::Result;
use crate::homology::matrix::SparseMatrix;
use crate::state::{BifurcationKind, CubeGeometry, Resolution, State};

/// Sign of the permutation sorting `seq`.
fn sort_sign(seq: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Everything about one cube edge that does not depend on the generator.
#[derive(Clone, Debug)]
pub(crate) struct EdgePlan {
    pub kind: BifurcationKind,
    /// Participating source circles, first one first.
    src_front: Vec<usize>,
    tgt_front: Vec<usize>,
    /// ε per participating circle.
    src_eps: Vec<i64>,
    tgt_eps: Vec<i64>,
    /// Non-participating circles: (source id, target id).
    rest: Vec<(usize, usize)>,
    /// Product of the two reordering signs.
    sign: i64,
}

impl EdgePlan {
    pub fn new(g: &CubeGeometry, conv: &Convention, src: &Resolution, tgt: &Resolution, k: usize) -> Result<Self> {
        let b = g.bifurcation(src, tgt, k);
        let (src_front, tgt_front) = match b.kind {
            BifurcationKind::Single11 => {
                return Ok(Self {
                    kind: b.kind,
                    src_front: vec![],
                    tgt_front: vec![],
                    src_eps: vec![],
                    tgt_eps: vec![],
                    rest: vec![],
                    sign: 0,
                })
            }
            BifurcationKind::Merge21 => {
                let (a, c) = conv.circle_order(g, src, k)?;
                (vec![a, c], vec![b.target_circles[0]])
            }
            BifurcationKind::Split12 => {
                let (a, c) = conv.circle_order(g, tgt, k)?;
                (vec![b.source_circles[0]], vec![a, c])
            }
        };
        let src_eps = src_front.iter().map(|&c| conv.orientation_sign(g, src, k, c).map(i64::from)).collect::<Result<_>>()?;
        let tgt_eps = tgt_front.iter().map(|&c| conv.orientation_sign(g, tgt, k, c).map(i64::from)).collect::<Result<_>>()?;

        let src_arc_circles = src.circles.iter().filter(|c| !c.arcs.is_empty()).count();
        let tgt_arc_circles = tgt.circles.iter().filter(|c| !c.arcs.is_empty()).count();
        let rest: Vec<(usize, usize)> = src
            .circles
            .iter()
            .filter(|c| !src_front.contains(&c.id))
            .map(|c| {
                let t = match c.arcs.first() {
                    Some(&(arc, _)) => tgt.arc_circle[arc],
                    None => tgt_arc_circles + (c.id - src_arc_circles),
                };
                (c.id, t)
            })
            .collect();
        let src_seq: Vec<usize> = src_front.iter().copied().chain(rest.iter().map(|r| r.0)).collect();
        let tgt_seq: Vec<usize> = tgt_front.iter().copied().chain(rest.iter().map(|r| r.1)).collect();
        let sign = sort_sign(&src_seq) * sort_sign(&tgt_seq);
        Ok(Self { kind: b.kind, src_front, tgt_front, src_eps, tgt_eps, rest, sign })
    }

    /// Image of the generator `labels` as `(target labels, coefficient)`.
    ///
    /// Reversing a circle's orientation acts on its labels by the algebra
    /// involution `1 ↦ 1`, `X ↦ h − X`, which is `X ↦ −X` when `h = 0`.
    pub fn apply(&self, labels: u64, frob: Frobenius, out: &mut Vec<(u64, i64)>) {
        out.clear();
        if self.kind == BifurcationKind::Single11 {
            return;
        }
        let (h, t) = (frob.h, frob.t);
        let x = |c: usize| labels >> c & 1 == 1;
        let mut rest_bits = 0u64;
        for &(s, t) in &self.rest {
            if x(s) {
                rest_bits |= 1 << t;
            }
        }
        // the source word in local bases: (bitmask over the source front, coefficient)
        let mut local: Vec<(u64, i64)> = vec![(0, self.sign)];
        for (i, &c) in self.src_front.iter().enumerate() {
            if x(c) {
                local = flip_factor(&local, i, self.src_eps[i], h);
            }
        }
        let mut images: Vec<(u64, i64)> = vec![];
        for &(word, coeff) in &local {
            let terms: [(u64, i64); 3] = match (self.kind, word) {
                (BifurcationKind::Merge21, 0b00) => [(0b0, 1), (0, 0), (0, 0)],
                (BifurcationKind::Merge21, 0b01 | 0b10) => [(0b1, 1), (0, 0), (0, 0)],
                (BifurcationKind::Merge21, _) => [(0b1, h), (0b0, t), (0, 0)],
                (BifurcationKind::Split12, 0) => [(0b10, 1), (0b01, 1), (0b00, -h)],
                (BifurcationKind::Split12, _) => [(0b11, 1), (0b00, t), (0, 0)],
                (BifurcationKind::Single11, _) => unreachable!(),
            };
            images.extend(terms.iter().filter(|term| term.1 != 0).map(|&(img, k)| (img, coeff * k)));
        }
        // back to reference bases, one X factor at a time
        for (i, &eps) in self.tgt_eps.iter().enumerate() {
            let (with_x, mut without): (Vec<_>, Vec<_>) = images.iter().partition(|&&(w, _)| w >> i & 1 == 1);
            without.extend(flip_factor(&with_x, i, eps, h));
            images = without;
        }
        images.sort_unstable();
        for (img, c) in images {
            let mut bits = rest_bits;
            for (i, &tc) in self.tgt_front.iter().enumerate() {
                if img >> i & 1 == 1 {
                    bits |= 1 << tc;
                }
            }
            match out.last_mut() {
                Some(last) if last.0 == bits => last.1 += c,
                _ => out.push((bits, c)),
            }
        }
        out.retain(|e| e.1 != 0);
    }
}

/// Rewrites factor `i` (an `X` in every word of `words`) in the other
/// orientation when `eps = −1`: `X ↦ −X + h·1`.
fn flip_factor(words: &[(u64, i64)], i: usize, eps: i64, h: i64) -> Vec<(u64, i64)> {
    let mut out = Vec::with_capacity(2 * words.len());
    for &(w, c) in words {
        let w = w | 1 << i;
        if eps == 1 {
            out.push((w, c));
        } else {
            out.push((w, -c));
            if h != 0 {
                out.push((w & !(1 << i), h * c));
            }
        }
    }
    out
}

/// The matrix of one cube edge in the full generator bases of its two
/// states (generator index = label bitmask).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeMap {
    pub source: State,
    pub target: State,
    pub crossing: usize,
    pub kind: BifurcationKind,
    #[serde(skip)]
    pub matrix: SparseMatrix,
}

pub(crate) fn edge_map_with(
    g: &CubeGeometry,
    conv: &Convention,
    src: &Resolution,
    tgt: &Resolution,
    k: usize,
    frob: Frobenius,
) -> Result<EdgeMap> {
    let plan = EdgePlan::new(g, conv, src, tgt, k)?;
    let (m, n) = (1usize << tgt.circles.len(), 1usize << src.circles.len());
    let mut triplets = vec![];
    let mut buf = vec![];
    for labels in 0..n as u64 {
        plan.apply(labels, frob, &mut buf);
        triplets.extend(buf.iter().map(|&(t, c)| (t as usize, labels as usize, c)));
    }
    Ok(EdgeMap {
        source: src.state,
        target: tgt.state,
        crossing: k,
        kind: plan.kind,
        matrix: SparseMatrix::from_triplets(m, n, triplets),
    })
}

/// The edge map from `state` along crossing `k` (bit `k` of `state` clear).
pub fn edge_map(d: &VirtualLinkDiagram, state: State, k: usize) -> Result<EdgeMap> {
    frobenius_edge_map(d, state, k, Frobenius::STANDARD)
}

pub fn frobenius_edge_map(d: &VirtualLinkDiagram, state: State, k: usize, frob: Frobenius) -> Result<EdgeMap> {
    edge_map_in(d, &Convention::default(), state, k, frob)
}

pub fn edge_map_in(d: &VirtualLinkDiagram, conv: &Convention, state: State, k: usize, frob: Frobenius) -> Result<EdgeMap> {
    if k >= d.crossing_count() {
        return Err(crate::error::Error::UnknownCrossing(k));
    }
    assert!(!state.bit(k), "cube edges run from the A- to the B-smoothing");
    let g = CubeGeometry::new(d);
    edge_map_with(&g, conv, &g.resolve(state), &g.resolve(state.with_bit(k)), k, frob)
}

/// The two composites around the square spanned by crossings `k` and `l`
/// at `state`: (∂_l ∘ ∂_k, ∂_k ∘ ∂_l).
pub fn face_compositions(d: &VirtualLinkDiagram, state: State, k: usize, l: usize) -> Result<(SparseMatrix, SparseMatrix)> {
    assert!(k != l && !state.bit(k) && !state.bit(l));
    let g = CubeGeometry::new(d);
    let conv = Convention::default();
    let f = Frobenius::STANDARD;
    let s00 = g.resolve(state);
    let s10 = g.resolve(state.with_bit(k));
    let s01 = g.resolve(state.with_bit(l));
    let s11 = g.resolve(state.with_bit(k).with_bit(l));
    let a = edge_map_with(&g, &conv, &s10, &s11, l, f)?.matrix.mul(&edge_map_with(&g, &conv, &s00, &s10, k, f)?.matrix);
    let b = edge_map_with(&g, &conv, &s01, &s11, k, f)?.matrix.mul(&edge_map_with(&g, &conv, &s00, &s01, l, f)?.matrix);
    Ok((a, b))
}
