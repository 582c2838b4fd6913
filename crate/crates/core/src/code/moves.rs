//! Diagram transformations on Gauss codes: virtualization and the three
//! Reidemeister moves.
//!
//! Bigon and triangle faces are found combinatorially by tracing the faces
//! of the surface determined by the signed code.

use serde::{Deserialize, Serialize};

use super::{End, EndRole, Pass, Passage, Sign, VirtualLinkDiagram};
use crate::error::{Error, Result};
use crate::state::{CubeGeometry, Direction};

/// The end following `role` counterclockwise. With both strands pointing
/// up, a positive crossing has over-in at SW, under-in at SE, over-out at
/// NE and under-out at NW; a negative crossing swaps the two strands.
pub(crate) fn ccw_next(sign: Sign, role: EndRole) -> EndRole {
    use EndRole::*;
    let order = match sign {
        Sign::Positive => [OverIn, UnderIn, OverOut, UnderOut],
        Sign::Negative => [UnderIn, OverIn, UnderOut, OverOut],
    };
    let i = order.iter().position(|&r| r == role).unwrap();
    order[(i + 1) % 4]
}

/// Position on the diagram where new passes are inserted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArcRef {
    /// The arc leaving pass `position` of `component`.
    Arc { component: usize, position: usize },
    /// A crossing-free circle.
    FreeLoop(usize),
}

/// Chirality of a Reidemeister I curl.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Kink {
    pub sign: Sign,
    /// The strand meets the new crossing first as overpass.
    pub over_first: bool,
}

impl Kink {
    pub const ALL: [Kink; 4] = [
        Kink { sign: Sign::Positive, over_first: true },
        Kink { sign: Sign::Positive, over_first: false },
        Kink { sign: Sign::Negative, over_first: true },
        Kink { sign: Sign::Negative, over_first: false },
    ];
}

/// Shape of a Reidemeister II bigon. The over arc receives `O a, O b`; the
/// under arc receives `U a, U b`, or `U b, U a` when `under_reversed`.
/// Crossing `a` has `first_sign`, crossing `b` the opposite sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct R2Variant {
    pub under_reversed: bool,
    pub first_sign: Sign,
}

impl R2Variant {
    pub const ALL: [R2Variant; 4] = [
        R2Variant { under_reversed: false, first_sign: Sign::Positive },
        R2Variant { under_reversed: false, first_sign: Sign::Negative },
        R2Variant { under_reversed: true, first_sign: Sign::Positive },
        R2Variant { under_reversed: true, first_sign: Sign::Negative },
    ];
}

/// A removable Reidemeister II pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bigon {
    pub crossings: (usize, usize),
}

/// A Reidemeister III face. Each segment is `(component, position)` of the
/// first of two consecutive passes; the move reverses every segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Triangle {
    pub crossings: [usize; 3],
    pub segments: [(usize, usize); 3],
}

struct Insertion {
    target: ArcRef,
    passes: Vec<Pass>,
}

impl VirtualLinkDiagram {
    /// Virtualization at `crossing`: the over and under strands trade places
    /// while the crossing keeps its sign. The state cube and the atom are
    /// unchanged.
    pub fn virtualize(&self, crossing: usize) -> Result<VirtualLinkDiagram> {
        if crossing >= self.crossing_count() {
            return Err(Error::UnknownCrossing(crossing));
        }
        let comps = self
            .components()
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&p| if p.crossing == crossing { Pass { passage: p.passage.flip(), ..p } } else { p })
                    .collect()
            })
            .collect();
        Ok(VirtualLinkDiagram::from_parts(comps, self.free_loops()))
    }

    fn check_arc(&self, at: ArcRef) -> Result<()> {
        let ok = match at {
            ArcRef::Arc { component, position } => {
                component < self.components().len() && position < self.components()[component].len()
            }
            ArcRef::FreeLoop(i) => i < self.free_loops(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::MoveNotApplicable(format!("no arc at {at:?}")))
        }
    }

    /// Inserts pass sequences; insertions on the same arc are placed in the
    /// order given. New crossings use indices `>= crossing_count()`.
    fn insert(&self, insertions: Vec<Insertion>) -> Result<VirtualLinkDiagram> {
        for ins in &insertions {
            self.check_arc(ins.target)?;
        }
        let mut comps: Vec<Vec<Pass>> = self.components().to_vec();
        let mut free_used = vec![None; self.free_loops()];
        // free loops hit by an insertion become components
        for ins in &insertions {
            if let ArcRef::FreeLoop(i) = ins.target {
                if free_used[i].is_none() {
                    free_used[i] = Some(comps.len());
                    comps.push(vec![]);
                }
            }
        }
        // group per (component, position), insert back to front
        let mut keyed: Vec<((usize, usize), Vec<Pass>)> = vec![];
        for ins in insertions {
            let key = match ins.target {
                ArcRef::Arc { component, position } => (component, position + 1),
                ArcRef::FreeLoop(i) => (free_used[i].unwrap(), 0),
            };
            match keyed.iter_mut().find(|(k, _)| *k == key) {
                Some((_, v)) => v.extend(ins.passes),
                None => keyed.push((key, ins.passes)),
            }
        }
        keyed.sort_by_key(|k| std::cmp::Reverse(k.0));
        for ((c, pos), passes) in keyed {
            comps[c].splice(pos..pos, passes);
        }
        let remaining_free = free_used.iter().filter(|u| u.is_none()).count();
        Ok(VirtualLinkDiagram::from_parts(comps, remaining_free))
    }

    /// Splices raw pass sequences into arcs; the caller keeps the pairing valid.
    pub(crate) fn insert_passes(&self, items: Vec<(ArcRef, Vec<Pass>)>) -> Result<VirtualLinkDiagram> {
        self.insert(items.into_iter().map(|(target, passes)| Insertion { target, passes }).collect())
    }

    /// Reidemeister I: adds a curl on the given arc.
    pub fn apply_r1(&self, at: ArcRef, kink: Kink) -> Result<VirtualLinkDiagram> {
        let c = self.crossing_count();
        let (first, second) =
            if kink.over_first { (Passage::Over, Passage::Under) } else { (Passage::Under, Passage::Over) };
        self.insert(vec![Insertion {
            target: at,
            passes: vec![Pass::new(c, first, kink.sign), Pass::new(c, second, kink.sign)],
        }])
    }

    /// Reidemeister II: pushes `under` beneath `over`, creating two crossings.
    /// When both refer to the same arc the over pair comes first along it.
    pub fn apply_r2(&self, over: ArcRef, under: ArcRef, variant: R2Variant) -> Result<VirtualLinkDiagram> {
        let (a, b) = (self.crossing_count(), self.crossing_count() + 1);
        let (sa, sb) = (variant.first_sign, variant.first_sign.flip());
        let over_passes = vec![Pass::new(a, Passage::Over, sa), Pass::new(b, Passage::Over, sb)];
        let mut under_passes = vec![Pass::new(a, Passage::Under, sa), Pass::new(b, Passage::Under, sb)];
        if variant.under_reversed {
            under_passes.reverse();
        }
        self.insert(vec![
            Insertion { target: over, passes: over_passes },
            Insertion { target: under, passes: under_passes },
        ])
    }

    /// Faces of the surface carried by the code: each crossing keeps the
    /// cyclic order of its ends fixed by its sign, and a face is traced by
    /// always leaving a crossing through the end that follows the arrival
    /// end counterclockwise. Faces are lists of `(arc, direction)`.
    pub fn faces(&self) -> Vec<Vec<(usize, Direction)>> {
        let arcs = self.arcs();
        let g = CubeGeometry::new(self);
        let mut seen = vec![[false; 2]; arcs.len()];
        let mut faces = vec![];
        for start in 0..arcs.len() {
            for d0 in [Direction::With, Direction::Against] {
                if seen[start][d0 as usize] {
                    continue;
                }
                let mut face = vec![];
                let (mut arc, mut dir) = (start, d0);
                while !seen[arc][dir as usize] {
                    seen[arc][dir as usize] = true;
                    face.push((arc, dir));
                    let a = &arcs[arc];
                    let arrive = if dir == Direction::With { a.to } else { a.from };
                    let leave = End { crossing: arrive.crossing, role: ccw_next(g.sign(arrive.crossing), arrive.role) };
                    let (b, at_start) = g.arc_at(leave);
                    arc = b;
                    dir = if at_start { Direction::With } else { Direction::Against };
                }
                faces.push(face);
            }
        }
        faces
    }

    /// Bigon faces bounded by an over-over arc and an under-under arc
    /// between two crossings of opposite sign.
    pub fn find_r2_bigons(&self) -> Vec<Bigon> {
        let arcs = self.arcs();
        let mut out = vec![];
        for face in self.faces() {
            if face.len() != 2 {
                continue;
            }
            let (p, q) = (&arcs[face[0].0], &arcs[face[1].0]);
            let mut xs = [p.from.crossing, p.to.crossing];
            let mut ys = [q.from.crossing, q.to.crossing];
            xs.sort_unstable();
            ys.sort_unstable();
            if xs[0] == xs[1] || xs != ys || self.crossing_sign(xs[0]) == self.crossing_sign(xs[1]) {
                continue;
            }
            let pattern = |a: &super::Arc| (a.from.role.passage(), a.to.role.passage());
            let pats = [pattern(p), pattern(q)];
            let oo = (Passage::Over, Passage::Over);
            let uu = (Passage::Under, Passage::Under);
            if pats.contains(&oo) && pats.contains(&uu) {
                let b = Bigon { crossings: (xs[0], xs[1]) };
                if !out.contains(&b) {
                    out.push(b);
                }
            }
        }
        out
    }

    /// Inverse Reidemeister II: removes the bigon formed by crossings `a`, `b`.
    pub fn remove_r2(&self, a: usize, b: usize) -> Result<VirtualLinkDiagram> {
        let key = (a.min(b), a.max(b));
        if !self.find_r2_bigons().iter().any(|g| g.crossings == key) {
            return Err(Error::MoveNotApplicable(format!("crossings {} and {} do not bound a bigon", a + 1, b + 1)));
        }
        let mut free = self.free_loops();
        let mut comps = vec![];
        for c in self.components() {
            let kept: Vec<Pass> = c.iter().copied().filter(|p| p.crossing != a && p.crossing != b).collect();
            if kept.is_empty() {
                free += 1;
            } else {
                comps.push(kept);
            }
        }
        Ok(VirtualLinkDiagram::from_parts(comps, free))
    }

    /// Triangle faces on three distinct crossings with one over-over, one
    /// under-under and one mixed side.
    pub fn find_r3_triangles(&self) -> Vec<Triangle> {
        let arcs = self.arcs();
        let mut out: Vec<Triangle> = vec![];
        for face in self.faces() {
            if face.len() != 3 {
                continue;
            }
            let cell: Vec<usize> = face.iter().map(|(a, _)| *a).collect();
            let mut crossings: Vec<usize> =
                cell.iter().flat_map(|&a| [arcs[a].from.crossing, arcs[a].to.crossing]).collect();
            crossings.sort_unstable();
            crossings.dedup();
            if crossings.len() != 3 || cell.iter().any(|&a| arcs[a].from.crossing == arcs[a].to.crossing) {
                continue;
            }
            let pattern = |a: usize| (arcs[a].from.role.passage(), arcs[a].to.role.passage());
            if cell.iter().all(|&a| pattern(a).0 != pattern(a).1) {
                continue;
            }
            let mut segments = [(0, 0); 3];
            for (slot, &a) in cell.iter().enumerate() {
                segments[slot] = self.arc_position(a);
            }
            segments.sort_unstable();
            let t = Triangle { crossings: [crossings[0], crossings[1], crossings[2]], segments };
            if !out.contains(&t) {
                out.push(t);
            }
        }
        out
    }

    /// Reidemeister III across a triangle face.
    pub fn apply_r3(&self, triangle: &Triangle) -> Result<VirtualLinkDiagram> {
        if !self.find_r3_triangles().contains(triangle) {
            return Err(Error::MoveNotApplicable("not an R3 triangle of this diagram".into()));
        }
        let mut comps: Vec<Vec<Pass>> = self.components().to_vec();
        for &(c, pos) in &triangle.segments {
            let len = comps[c].len();
            comps[c].swap(pos, (pos + 1) % len);
        }
        Ok(VirtualLinkDiagram::from_parts(comps, self.free_loops()))
    }
}
