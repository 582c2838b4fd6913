//! Oriented virtual link diagrams as signed Gauss codes.
//!
//! Virtual crossings are never stored: a signed Gauss code determines the
//! diagram up to detour moves, so two drawings that differ only in where
//! their virtual crossings sit are the same value here.

mod canonical;
pub mod corpus;
mod moves;
mod parse;
pub mod random;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{ParseError, ParseErrorKind, Result};

pub use moves::{ArcRef, Bigon, Kink, R2Variant, Triangle};
#[cfg(test)]
pub(crate) use moves::ccw_next;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Passage {
    Over,
    Under,
}

impl Passage {
    pub fn flip(self) -> Self {
        match self {
            Passage::Over => Passage::Under,
            Passage::Under => Passage::Over,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// One passage of a component through a classical crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pass {
    /// 0-based crossing index; printed as `crossing + 1`.
    pub crossing: usize,
    pub passage: Passage,
    pub sign: Sign,
}

impl Pass {
    pub fn new(crossing: usize, passage: Passage, sign: Sign) -> Self {
        Self { crossing, passage, sign }
    }
}

impl fmt::Display for Pass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.passage {
            Passage::Over => 'O',
            Passage::Under => 'U',
        };
        let s = match self.sign {
            Sign::Positive => '+',
            Sign::Negative => '-',
        };
        write!(f, "{p}{}{s}", self.crossing + 1)
    }
}

/// Role of a half-edge end at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EndRole {
    OverIn,
    OverOut,
    UnderIn,
    UnderOut,
}

impl EndRole {
    pub const ALL: [EndRole; 4] =
        [EndRole::OverIn, EndRole::OverOut, EndRole::UnderIn, EndRole::UnderOut];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn passage(self) -> Passage {
        match self {
            EndRole::OverIn | EndRole::OverOut => Passage::Over,
            EndRole::UnderIn | EndRole::UnderOut => Passage::Under,
        }
    }

    pub fn is_incoming(self) -> bool {
        matches!(self, EndRole::OverIn | EndRole::UnderIn)
    }

    fn of(passage: Passage, incoming: bool) -> Self {
        match (passage, incoming) {
            (Passage::Over, true) => EndRole::OverIn,
            (Passage::Over, false) => EndRole::OverOut,
            (Passage::Under, true) => EndRole::UnderIn,
            (Passage::Under, false) => EndRole::UnderOut,
        }
    }
}

/// A half-edge end: crossing × local role.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct End {
    pub crossing: usize,
    pub role: EndRole,
}

/// A branch of the diagram between two consecutive passes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Arc {
    pub id: usize,
    pub component: usize,
    /// Out-end of the pass this arc leaves.
    pub from: End,
    /// In-end of the pass this arc enters.
    pub to: End,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VirtualLinkDiagram {
    components: Vec<Vec<Pass>>,
    free_loops: usize,
    crossings: usize,
}

impl VirtualLinkDiagram {
    /// Builds a diagram from raw passes. Crossing indices may be arbitrary;
    /// they are renumbered densely in order of first appearance.
    pub fn new(components: Vec<Vec<Pass>>, free_loops: usize) -> Result<Self> {
        let labelled: Vec<Vec<(u64, Passage, Sign)>> = components
            .iter()
            .map(|c| c.iter().map(|p| (p.crossing as u64 + 1, p.passage, p.sign)).collect())
            .collect();
        Ok(Self::from_labels(&labelled, free_loops).map_err(|(kind, _)| ParseError::new(kind, 1))?)
    }

    /// Validates label pairing and renumbers labels densely.
    /// On failure returns the error kind and the flat index of the offending pass.
    pub(crate) fn from_labels(
        components: &[Vec<(u64, Passage, Sign)>],
        free_loops: usize,
    ) -> std::result::Result<Self, (ParseErrorKind, usize)> {
        use std::collections::HashMap;

        struct Seen {
            index: usize,
            over: usize,
            under: usize,
            sign: Sign,
            first_pos: usize,
        }
        let mut seen: HashMap<u64, Seen> = HashMap::new();
        let mut order = 0usize;
        let mut flat = 0usize;
        for comp in components {
            for &(label, passage, sign) in comp {
                let entry = seen.entry(label).or_insert_with(|| {
                    order += 1;
                    Seen { index: order - 1, over: 0, under: 0, sign, first_pos: flat }
                });
                if entry.sign != sign {
                    return Err((ParseErrorKind::SignMismatch(label), flat));
                }
                match passage {
                    Passage::Over => entry.over += 1,
                    Passage::Under => entry.under += 1,
                }
                if entry.over > 1 || entry.under > 1 {
                    return Err((ParseErrorKind::UnpairedLabel(label), flat));
                }
                flat += 1;
            }
        }
        if let Some((label, s)) = seen
            .iter()
            .filter(|(_, s)| s.over != 1 || s.under != 1)
            .min_by_key(|(_, s)| s.first_pos)
        {
            return Err((ParseErrorKind::UnpairedLabel(*label), s.first_pos));
        }

        let mut out = Vec::new();
        let mut free = free_loops;
        for comp in components {
            if comp.is_empty() {
                free += 1;
                continue;
            }
            out.push(
                comp.iter()
                    .map(|&(label, passage, sign)| Pass::new(seen[&label].index, passage, sign))
                    .collect(),
            );
        }
        Ok(Self { components: out, free_loops: free, crossings: seen.len() })
    }

    /// The diagram of `k` crossing-free unknotted circles.
    pub fn unlink(k: usize) -> Self {
        Self { components: vec![], free_loops: k, crossings: 0 }
    }

    pub fn components(&self) -> &[Vec<Pass>] {
        &self.components
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// Number of classical crossings.
    pub fn crossing_count(&self) -> usize {
        self.crossings
    }

    /// Number of link components, free loops included.
    pub fn component_count(&self) -> usize {
        self.components.len() + self.free_loops
    }

    pub fn is_empty(&self) -> bool {
        self.crossings == 0 && self.free_loops == 0
    }

    pub fn crossing_sign(&self, crossing: usize) -> Sign {
        self.passes().find(|p| p.crossing == crossing).map(|p| p.sign).expect("crossing exists")
    }

    pub fn signs(&self) -> Vec<Sign> {
        let mut signs = vec![Sign::Positive; self.crossings];
        for p in self.passes() {
            signs[p.crossing] = p.sign;
        }
        signs
    }

    pub fn passes(&self) -> impl Iterator<Item = &Pass> {
        self.components.iter().flatten()
    }

    pub fn n_plus(&self) -> usize {
        self.signs().iter().filter(|&&s| s == Sign::Positive).count()
    }

    pub fn n_minus(&self) -> usize {
        self.crossings - self.n_plus()
    }

    pub fn writhe(&self) -> i32 {
        self.n_plus() as i32 - self.n_minus() as i32
    }

    /// Arcs in traversal order; arc `k` leaves the `k`-th pass (flattened).
    pub fn arcs(&self) -> Vec<Arc> {
        let mut arcs = Vec::with_capacity(2 * self.crossings);
        for (ci, comp) in self.components.iter().enumerate() {
            let len = comp.len();
            for i in 0..len {
                let a = comp[i];
                let b = comp[(i + 1) % len];
                arcs.push(Arc {
                    id: arcs.len(),
                    component: ci,
                    from: End { crossing: a.crossing, role: EndRole::of(a.passage, false) },
                    to: End { crossing: b.crossing, role: EndRole::of(b.passage, true) },
                });
            }
        }
        arcs
    }

    /// Global arc id of the arc leaving pass `position` of `component`.
    pub fn arc_id(&self, component: usize, position: usize) -> usize {
        self.components[..component].iter().map(Vec::len).sum::<usize>() + position
    }

    /// Inverse of [`arc_id`](Self::arc_id).
    pub fn arc_position(&self, arc: usize) -> (usize, usize) {
        let mut rest = arc;
        for (ci, comp) in self.components.iter().enumerate() {
            if rest < comp.len() {
                return (ci, rest);
            }
            rest -= comp.len();
        }
        panic!("arc {arc} out of range")
    }

    /// Whether every connected piece of the atom is a sphere, i.e. the code
    /// is realizable without virtual crossings. Crossing-free diagrams count.
    pub fn is_classical(&self) -> bool {
        crate::atom::Atom::build(self).map(|a| a.is_planar()).unwrap_or(true)
    }

    /// Builds a diagram from passes produced by a transformation. Crossing
    /// indices keep their relative order and are compacted to `0..n`.
    pub(crate) fn from_parts(mut components: Vec<Vec<Pass>>, free_loops: usize) -> Self {
        let mut used: Vec<usize> = components.iter().flatten().map(|p| p.crossing).collect();
        used.sort_unstable();
        used.dedup();
        for p in components.iter_mut().flatten() {
            p.crossing = used.binary_search(&p.crossing).unwrap();
        }
        let mut free = free_loops;
        components.retain(|c| {
            if c.is_empty() {
                free += 1;
            }
            !c.is_empty()
        });
        let d = Self { components, free_loops: free, crossings: used.len() };
        debug_assert!(d.pairing_holds(), "transformation broke label pairing: {d}");
        d
    }

    /// Every crossing occurs once over and once under, with one sign.
    pub fn pairing_holds(&self) -> bool {
        let mut over = vec![0; self.crossings];
        let mut under = vec![0; self.crossings];
        let mut sign = vec![None; self.crossings];
        for p in self.passes() {
            if p.crossing >= self.crossings {
                return false;
            }
            match p.passage {
                Passage::Over => over[p.crossing] += 1,
                Passage::Under => under[p.crossing] += 1,
            }
            if *sign[p.crossing].get_or_insert(p.sign) != p.sign {
                return false;
            }
        }
        over.iter().chain(&under).all(|&k| k == 1)
    }
}

impl fmt::Display for VirtualLinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.serialize())
    }
}

impl std::str::FromStr for VirtualLinkDiagram {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::parse(s)
    }
}
