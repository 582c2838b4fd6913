//! Crossing-local conventions: where each end sits in the standard picture
//! of a crossing, the local positive orientation of the circles through it,
//! and which of two circles at a crossing counts as the first.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::code::{End, EndRole, Sign};
use crate::error::{Error, Result};
use crate::state::{CubeGeometry, Direction, Resolution};

/// Corner of the standard crossing picture, listed clockwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Position {
    NW,
    NE,
    SE,
    SW,
}

impl Position {
    pub const ALL: [Position; 4] = [Position::NW, Position::NE, Position::SE, Position::SW];

    fn index(self) -> usize {
        self as usize
    }

    /// Quarter turn clockwise.
    pub fn rotate(self) -> Self {
        Self::ALL[(self.index() + 1) % 4]
    }

    /// Mirror across the vertical axis.
    pub fn reflect(self) -> Self {
        match self {
            Position::NW => Position::NE,
            Position::NE => Position::NW,
            Position::SE => Position::SW,
            Position::SW => Position::SE,
        }
    }

    /// The local positive orientation runs down the left side, up the right
    /// side, rightward along the top and leftward along the bottom: it
    /// leaves the crossing at NE and SW and enters at NW and SE.
    pub fn outgoing(self) -> bool {
        matches!(self, Position::NE | Position::SW)
    }
}

/// Position of every end role, per crossing sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConventionTable {
    /// Indexed by [`EndRole::index`].
    pub positive: [Position; 4],
    pub negative: [Position; 4],
}

impl ConventionTable {
    /// Both strands point up. Positive: over strand SW→NE, under strand
    /// SE→NW. Negative: over strand SE→NW, under strand SW→NE.
    pub const STANDARD: ConventionTable = ConventionTable {
        // OverIn, OverOut, UnderIn, UnderOut
        positive: [Position::SW, Position::NE, Position::SE, Position::NW],
        negative: [Position::SE, Position::NW, Position::SW, Position::NE],
    };

    pub fn position(&self, sign: Sign, role: EndRole) -> Position {
        match sign {
            Sign::Positive => self.positive[role.index()],
            Sign::Negative => self.negative[role.index()],
        }
    }

    /// Role sitting at `pos` for a crossing of sign `sign`.
    pub fn role_at(&self, sign: Sign, pos: Position) -> EndRole {
        *EndRole::ALL.iter().find(|&&r| self.position(sign, r) == pos).expect("table is a bijection")
    }

    pub fn is_bijective(&self) -> bool {
        [self.positive, self.negative].iter().all(|row| {
            let mut seen = [false; 4];
            row.iter().for_each(|p| seen[p.index()] = true);
            seen.iter().all(|&s| s)
        })
    }

    /// Applies a symmetry of the square to the picture of one sign:
    /// `g % 4` quarter turns, preceded by a mirror when `g >= 4`.
    pub fn transformed(&self, sign: Sign, g: u8) -> Self {
        let apply = |p: Position| {
            let mut q = if g >= 4 { p.reflect() } else { p };
            for _ in 0..g % 4 {
                q = q.rotate();
            }
            q
        };
        let mut out = *self;
        let row = match sign {
            Sign::Positive => &mut out.positive,
            Sign::Negative => &mut out.negative,
        };
        *row = row.map(apply);
        out
    }

    /// All 64 images of the standard table under independent symmetries of
    /// the positive and negative pictures.
    pub fn all_symmetric() -> Vec<(u8, u8, ConventionTable)> {
        let mut out = vec![];
        for gp in 0..8 {
            for gn in 0..8 {
                let t = Self::STANDARD.transformed(Sign::Positive, gp).transformed(Sign::Negative, gn);
                out.push((gp, gn, t));
            }
        }
        out
    }
}

impl Default for ConventionTable {
    fn default() -> Self {
        Self::STANDARD
    }
}

/// A table for every crossing: a default plus per-crossing overrides.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Convention {
    pub default: ConventionTable,
    pub overrides: BTreeMap<usize, ConventionTable>,
    /// Deliberately inconsistent rule for negative controls.
    pub defect: Option<Defect>,
}

/// Ways to break the convention on purpose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Defect {
    /// Reverse the local orientation at negative crossings.
    FlipNegativeOrientation,
    /// Take the first circle at NE instead of NW at negative crossings.
    FirstAtNeOnNegative,
}

impl Convention {
    pub fn uniform(table: ConventionTable) -> Self {
        Self { default: table, overrides: BTreeMap::new(), defect: None }
    }

    /// The standard table with the picture at each listed crossing turned
    /// by a quarter.
    pub fn rotated_at(crossings: impl IntoIterator<Item = usize>, signs: &[Sign]) -> Self {
        let mut c = Self::default();
        for k in crossings {
            c.overrides.insert(k, ConventionTable::STANDARD.transformed(signs[k], 1));
        }
        c
    }

    pub fn table(&self, crossing: usize) -> &ConventionTable {
        self.overrides.get(&crossing).unwrap_or(&self.default)
    }

    pub fn position(&self, g: &CubeGeometry, e: End) -> Position {
        self.table(e.crossing).position(g.sign(e.crossing), e.role)
    }

    pub fn end_at(&self, g: &CubeGeometry, crossing: usize, pos: Position) -> End {
        End { crossing, role: self.table(crossing).role_at(g.sign(crossing), pos) }
    }

    /// ε with X in the reference orientation = ε · X in the local positive
    /// orientation at `crossing`. Inapplicable when `circle` misses the
    /// crossing or its ends there disagree with any single local orientation.
    pub fn orientation_sign(&self, g: &CubeGeometry, res: &Resolution, crossing: usize, circle: usize) -> Result<i32> {
        let mut eps = None;
        for role in EndRole::ALL {
            let e = End { crossing, role };
            let (arc, is_start) = g.arc_at(e);
            if res.arc_circle[arc] != circle {
                continue;
            }
            let leaves = (res.arc_direction[arc] == Direction::With) == is_start;
            let mut s = if leaves == self.position(g, e).outgoing() { 1 } else { -1 };
            if self.defect == Some(Defect::FlipNegativeOrientation) && g.sign(crossing) == Sign::Negative {
                s = -s;
            }
            match eps {
                None => eps = Some(s),
                Some(x) if x != s => return Err(Error::Inapplicable),
                _ => {}
            }
        }
        eps.ok_or(Error::Inapplicable)
    }

    /// The two circles through the crossing, the one at NW first.
    /// Inapplicable when one circle takes both local pieces.
    pub fn circle_order(&self, g: &CubeGeometry, res: &Resolution, crossing: usize) -> Result<(usize, usize)> {
        let corner = match self.defect {
            Some(Defect::FirstAtNeOnNegative) if g.sign(crossing) == Sign::Negative => Position::NE,
            _ => Position::NW,
        };
        let nw = self.end_at(g, crossing, corner);
        let first = g.circle_at(res, nw);
        let second = EndRole::ALL
            .iter()
            .map(|&role| g.circle_at(res, End { crossing, role }))
            .find(|&c| c != first)
            .ok_or(Error::Inapplicable)?;
        Ok((first, second))
    }
}
