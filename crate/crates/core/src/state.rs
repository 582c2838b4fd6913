//! The state cube: smoothings, state circles and the bifurcation carried by
//! each cube edge.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::code::{Arc, End, EndRole, Sign, VirtualLinkDiagram};
use crate::error::{Error, Result};

/// Default cap on the number of crossings for exhaustive cube work.
pub const DEFAULT_CROSSING_CAP: usize = 20;

/// A vertex of the state cube: bit `k` is 0 for the A-smoothing and 1 for
/// the B-smoothing of crossing `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct State(pub u64);

impl State {
    pub fn all_a() -> Self {
        State(0)
    }

    pub fn all_b(n: usize) -> Self {
        State(if n == 0 { 0 } else { u64::MAX >> (64 - n) })
    }

    pub fn bit(self, k: usize) -> bool {
        self.0 >> k & 1 == 1
    }

    pub fn with_bit(self, k: usize) -> Self {
        State(self.0 | 1 << k)
    }

    /// β(s): number of B-smoothings.
    pub fn height(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn smoothing(self, k: usize) -> Smoothing {
        if self.bit(k) {
            Smoothing::B
        } else {
            Smoothing::A
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Smoothing {
    A,
    B,
}

/// The two end pairs joined by a smoothing. The A-smoothing of a positive
/// crossing is the oriented one; for a negative crossing it is the B one.
pub fn smoothing_pairs(sign: Sign, smoothing: Smoothing) -> [(EndRole, EndRole); 2] {
    use EndRole::*;
    let oriented = [(OverIn, UnderOut), (UnderIn, OverOut)];
    let unoriented = [(OverIn, UnderIn), (OverOut, UnderOut)];
    match (sign, smoothing) {
        (Sign::Positive, Smoothing::A) | (Sign::Negative, Smoothing::B) => oriented,
        _ => unoriented,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Direction {
    With,
    Against,
}

impl Direction {
    pub fn reverse(self) -> Self {
        match self {
            Direction::With => Direction::Against,
            Direction::Against => Direction::With,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateCircle {
    pub id: usize,
    /// Cyclic arc sequence in the reference orientation. Empty for free loops.
    pub arcs: Vec<(usize, Direction)>,
}

/// Circles of one state, in canonical order (by minimal arc, free loops last).
///
/// The reference orientation of a circle is the one that runs along its
/// minimal arc in the diagram's direction.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub state: State,
    pub circles: Vec<StateCircle>,
    /// Circle containing each arc.
    pub arc_circle: Vec<usize>,
    /// Direction in which that circle's reference orientation runs the arc.
    pub arc_direction: Vec<Direction>,
}

impl Resolution {
    pub fn circle_count(&self) -> usize {
        self.circles.len()
    }
}

/// Precomputed end tables for fast circle tracing.
#[derive(Clone, Debug)]
pub struct CubeGeometry {
    n: usize,
    free_loops: usize,
    arcs: Vec<Arc>,
    signs: Vec<Sign>,
    /// `end_arc[4*c + role]` = (arc, true if the end is the arc's start).
    end_arc: Vec<(usize, bool)>,
    /// `partner[smoothing][4*c + role]` = role joined to `role` at `c`.
    partner: [Vec<EndRole>; 2],
}

fn end_index(e: End) -> usize {
    4 * e.crossing + e.role.index()
}

impl CubeGeometry {
    pub fn new(d: &VirtualLinkDiagram) -> Self {
        let n = d.crossing_count();
        let arcs = d.arcs();
        let signs = d.signs();
        let mut end_arc = vec![(usize::MAX, false); 4 * n];
        for a in &arcs {
            end_arc[end_index(a.from)] = (a.id, true);
            end_arc[end_index(a.to)] = (a.id, false);
        }
        let mut partner = [vec![EndRole::OverIn; 4 * n], vec![EndRole::OverIn; 4 * n]];
        for (c, &sign) in signs.iter().enumerate() {
            for (si, sm) in [Smoothing::A, Smoothing::B].into_iter().enumerate() {
                for (x, y) in smoothing_pairs(sign, sm) {
                    partner[si][4 * c + x.index()] = y;
                    partner[si][4 * c + y.index()] = x;
                }
            }
        }
        Self { n, free_loops: d.free_loops(), arcs, signs, end_arc, partner }
    }

    pub fn crossing_count(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn sign(&self, crossing: usize) -> Sign {
        self.signs[crossing]
    }

    /// Arc attached at an end, and whether the end is that arc's start.
    pub fn arc_at(&self, e: End) -> (usize, bool) {
        self.end_arc[end_index(e)]
    }

    pub fn partner(&self, state: State, e: End) -> EndRole {
        let si = usize::from(state.bit(e.crossing));
        self.partner[si][end_index(e)]
    }

    pub fn resolve(&self, state: State) -> Resolution {
        let m = self.arcs.len();
        let mut arc_circle = vec![usize::MAX; m];
        let mut arc_direction = vec![Direction::With; m];
        let mut circles = Vec::new();
        for start in 0..m {
            if arc_circle[start] != usize::MAX {
                continue;
            }
            let id = circles.len();
            let mut seq = Vec::new();
            let (mut arc, mut dir) = (start, Direction::With);
            loop {
                arc_circle[arc] = id;
                arc_direction[arc] = dir;
                seq.push((arc, dir));
                let a = &self.arcs[arc];
                let exit = if dir == Direction::With { a.to } else { a.from };
                let next = End { crossing: exit.crossing, role: self.partner(state, exit) };
                let (b, at_start) = self.arc_at(next);
                arc = b;
                dir = if at_start { Direction::With } else { Direction::Against };
                if arc == start {
                    debug_assert_eq!(dir, Direction::With);
                    break;
                }
            }
            circles.push(StateCircle { id, arcs: seq });
        }
        for _ in 0..self.free_loops {
            circles.push(StateCircle { id: circles.len(), arcs: vec![] });
        }
        Resolution { state, circles, arc_circle, arc_direction }
    }

    /// The four ends at `crossing`, paired by the smoothing of `state`.
    pub fn local_pairs(&self, state: State, crossing: usize) -> [(End, End); 2] {
        let pairs = smoothing_pairs(self.signs[crossing], state.smoothing(crossing));
        pairs.map(|(x, y)| (End { crossing, role: x }, End { crossing, role: y }))
    }

    /// Circle (in `res`) through the end `e`.
    pub fn circle_at(&self, res: &Resolution, e: End) -> usize {
        res.arc_circle[self.arc_at(e).0]
    }

    /// Classifies the cube edge from `state` along crossing `k`.
    pub fn bifurcation(
        &self,
        source: &Resolution,
        target: &Resolution,
        k: usize,
    ) -> Bifurcation {
        debug_assert!(!source.state.bit(k) && target.state == source.state.with_bit(k));
        let src_pairs = self.local_pairs(source.state, k);
        let tgt_pairs = self.local_pairs(target.state, k);
        let src: Vec<usize> = src_pairs.iter().map(|(e, _)| self.circle_at(source, *e)).collect();
        let tgt: Vec<usize> = tgt_pairs.iter().map(|(e, _)| self.circle_at(target, *e)).collect();
        let kind = match (src[0] == src[1], tgt[0] == tgt[1]) {
            (false, true) => BifurcationKind::Merge21,
            (true, false) => BifurcationKind::Split12,
            (true, true) => BifurcationKind::Single11,
            (false, false) => unreachable!("a smoothing change touches at most two circles"),
        };
        let mut source_circles = src.clone();
        source_circles.dedup();
        let mut target_circles = tgt.clone();
        target_circles.dedup();
        let local_ends = EndRole::ALL.map(|role| {
            let e = End { crossing: k, role };
            LocalEnd { end: e, source_circle: self.circle_at(source, e), target_circle: self.circle_at(target, e) }
        });
        Bifurcation { crossing: k, kind, source_circles, target_circles, local_ends }
    }

    fn check_cap(&self, cap: usize) -> Result<()> {
        if self.n > cap {
            return Err(Error::StateSpaceTooLarge { crossings: self.n, cap });
        }
        Ok(())
    }

    /// Resolves every state of the cube, indexed by `State.0`.
    pub fn resolve_all(&self, cap: usize) -> Result<Vec<Resolution>> {
        self.check_cap(cap)?;
        Ok((0..1u64 << self.n).map(|s| self.resolve(State(s))).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum BifurcationKind {
    Merge21,
    Split12,
    Single11,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalEnd {
    pub end: End,
    pub source_circle: usize,
    pub target_circle: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bifurcation {
    pub crossing: usize,
    pub kind: BifurcationKind,
    /// Participating circles in the source state (1 or 2).
    pub source_circles: Vec<usize>,
    /// Participating circles in the target state (1 or 2).
    pub target_circles: Vec<usize>,
    pub local_ends: [LocalEnd; 4],
}

pub fn resolve(d: &VirtualLinkDiagram, state: State) -> Resolution {
    CubeGeometry::new(d).resolve(state)
}

/// Edge of the cube from `state` along crossing `k`; bit `k` must be 0.
pub fn cube_edge(d: &VirtualLinkDiagram, state: State, k: usize) -> Result<Bifurcation> {
    if k >= d.crossing_count() {
        return Err(Error::UnknownCrossing(k));
    }
    assert!(!state.bit(k), "cube edges run from the A- to the B-smoothing");
    let g = CubeGeometry::new(d);
    Ok(g.bifurcation(&g.resolve(state), &g.resolve(state.with_bit(k)), k))
}

/// For each height, the sorted multiset of circle counts of its states.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StateSumSummary {
    pub crossings: usize,
    pub rows: BTreeMap<usize, Vec<usize>>,
}

impl StateSumSummary {
    pub fn compute(d: &VirtualLinkDiagram, cap: usize) -> Result<Self> {
        use rayon::prelude::*;

        let g = CubeGeometry::new(d);
        g.check_cap(cap)?;
        let counts: Vec<(usize, usize)> = (0..1u64 << g.n)
            .into_par_iter()
            .map(|s| (State(s).height(), g.resolve(State(s)).circle_count()))
            .collect();
        let mut rows: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (h, gamma) in counts {
            rows.entry(h).or_default().push(gamma);
        }
        for v in rows.values_mut() {
            v.sort_unstable();
        }
        Ok(Self { crossings: g.n, rows })
    }
}
