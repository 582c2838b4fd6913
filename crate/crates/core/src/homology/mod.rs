//! Exact homology of the bigraded complexes.

pub mod field;
pub mod matrix;
pub mod snf;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::atom::Atom;
use crate::error::{Error, Result};
use crate::khovanov::{BigradedComplex, Ring};
use crate::poly::LaurentPolynomial;

pub use field::{rank_mod_p, rank_q};
pub use matrix::SparseMatrix;
pub use snf::{invariant_factors, smith_normal_form, InvariantFactors, SmithDecomposition};

/// One homology group `Z^free ⊕ Z/t₁ ⊕ …`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Group {
    pub i: i32,
    pub j: Option<i32>,
    pub free: usize,
    /// Invariant factors above one, ascending.
    pub torsion: Vec<u64>,
}

impl Group {
    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyTable {
    pub ring: String,
    /// Nonzero groups, sorted by `(i, j)`.
    pub groups: Vec<Group>,
}

/// Coefficient field for [`homology_over_field`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Field {
    Q,
    Gf(u64),
}

impl HomologyTable {
    pub fn get(&self, i: i32, j: Option<i32>) -> Option<&Group> {
        self.groups.iter().find(|g| g.i == i && g.j == j)
    }

    pub fn free(&self, i: i32, j: Option<i32>) -> usize {
        self.get(i, j).map_or(0, |g| g.free)
    }

    /// Same groups at every bidegree, ignoring the ring tag.
    pub fn same_groups(&self, other: &HomologyTable) -> bool {
        self.groups == other.groups
    }

    pub fn torsion_count(&self) -> usize {
        self.groups.iter().map(|g| g.torsion.len()).sum()
    }

    pub fn total_rank(&self) -> usize {
        self.groups.iter().map(|g| g.free).sum()
    }

    /// Σ (−1)^i q^j free(i, j); None when ungraded.
    pub fn euler_characteristic(&self) -> Option<LaurentPolynomial> {
        let mut p = LaurentPolynomial::zero();
        for g in &self.groups {
            let sign = if g.i % 2 == 0 { 1 } else { -1 };
            p.add_term(sign * g.free as i64, g.j?);
        }
        Some(p)
    }

    /// Betti numbers over GF(p) predicted from an integral table by
    /// universal coefficients: free part, plus factors divisible by `p`
    /// here and one homological degree up.
    pub fn predicted_mod_p(&self, p: u64) -> BTreeMap<(i32, Option<i32>), usize> {
        let divisible = |g: Option<&Group>| g.map_or(0, |g| g.torsion.iter().filter(|&&t| t % p == 0).count());
        let mut keys: Vec<(i32, Option<i32>)> = self.groups.iter().map(|g| (g.i, g.j)).collect();
        keys.extend(self.groups.iter().filter(|g| !g.torsion.is_empty()).map(|g| (g.i - 1, g.j)));
        keys.into_iter()
            .map(|(i, j)| ((i, j), self.free(i, j) + divisible(self.get(i, j)) + divisible(self.get(i + 1, j))))
            .filter(|&(_, n)| n > 0)
            .collect()
    }

    /// Betti numbers keyed by bidegree.
    pub fn betti(&self) -> BTreeMap<(i32, Option<i32>), usize> {
        self.groups.iter().filter(|g| g.free > 0).map(|g| ((g.i, g.j), g.free)).collect()
    }
}

impl fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring {}", self.ring)?;
        if self.groups.is_empty() {
            return writeln!(f, "  (zero)");
        }
        writeln!(f, "{:>5} {:>5}  group", "i", "j")?;
        for g in &self.groups {
            let j = g.j.map_or("-".to_string(), |j| j.to_string());
            let mut parts = vec![];
            if g.free > 0 {
                parts.push(if g.free == 1 { "Z".to_string() } else { format!("Z^{}", g.free) });
            }
            parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
            writeln!(f, "{:>5} {:>5}  {}", g.i, j, parts.join(" + "))?;
        }
        Ok(())
    }
}

/// Homology in the coefficients the complex was built for.
pub fn homology(c: &BigradedComplex) -> Result<HomologyTable> {
    match c.ring {
        Ring::Q => homology_over_field(c, Field::Q),
        Ring::Z2 => homology_over_field(c, Field::Gf(2)),
        Ring::Gfp(p) => homology_over_field(c, Field::Gf(p)),
        Ring::Z | Ring::Frobenius(_) => integral(c),
    }
}

fn integral(c: &BigradedComplex) -> Result<HomologyTable> {
    let factors: BTreeMap<(i32, Option<i32>), InvariantFactors> =
        c.groups().collect::<Vec<_>>().par_iter().map(|g| ((g.i, g.j), invariant_factors(&g.differential))).collect();
    let mut groups = vec![];
    for g in c.groups() {
        let out = factors[&(g.i, g.j)].rank;
        let incoming = factors.get(&(g.i - 1, g.j));
        let rank_in = incoming.map_or(0, |f| f.rank);
        let free = g.dim().checked_sub(out + rank_in).ok_or_else(|| {
            Error::InconsistentComplex(format!("ranks {out} + {rank_in} exceed dimension {} at ({}, {:?})", g.dim(), g.i, g.j))
        })?;
        let torsion = incoming
            .map(|f| &f.torsion[..])
            .unwrap_or(&[])
            .iter()
            .map(|t| snf::small(t).ok_or_else(|| Error::InconsistentComplex(format!("torsion coefficient {t} exceeds 64 bits"))))
            .collect::<Result<Vec<u64>>>()?;
        let group = Group { i: g.i, j: g.j, free, torsion };
        if !group.is_zero() {
            groups.push(group);
        }
    }
    Ok(HomologyTable { ring: c.ring.to_string(), groups })
}

/// Betti numbers over Q or GF(p), by exact elimination.
pub fn homology_over_field(c: &BigradedComplex, field: Field) -> Result<HomologyTable> {
    let ranks: BTreeMap<(i32, Option<i32>), usize> = c
        .groups()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|g| {
            let r = match field {
                Field::Q => rank_q(&g.differential),
                Field::Gf(p) => rank_mod_p(&g.differential, p),
            };
            ((g.i, g.j), r)
        })
        .collect();
    let mut groups = vec![];
    for g in c.groups() {
        let out = ranks[&(g.i, g.j)];
        let rank_in = ranks.get(&(g.i - 1, g.j)).copied().unwrap_or(0);
        let free = g.dim().checked_sub(out + rank_in).ok_or_else(|| {
            Error::InconsistentComplex(format!("ranks {out} + {rank_in} exceed dimension {} at ({}, {:?})", g.dim(), g.i, g.j))
        })?;
        if free > 0 {
            groups.push(Group { i: g.i, j: g.j, free, torsion: vec![] });
        }
    }
    let ring = match field {
        Field::Q => Ring::Q,
        Field::Gf(2) => Ring::Z2,
        Field::Gf(p) => Ring::Gfp(p),
    };
    Ok(HomologyTable { ring: ring.to_string(), groups })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ThicknessReport {
    /// Occupied diagonals `δ = j − 2i`, ascending.
    pub diagonals: Vec<i32>,
    /// Number of occupied diagonals.
    pub occupied: usize,
    /// `(δmax − δmin)/2 + 1`: diagonals counted two units of `δ` apart, as
    /// for classical knots. Half-integral when both parities of `δ` occur.
    pub thickness: f64,
    pub atom_genus: usize,
    pub bound: usize,
    /// `thickness > 2 + genus`.
    pub violation: bool,
}

impl fmt::Display for ThicknessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "thickness {} ({} occupied diagonals {:?}), atom genus {}, bound {}{}",
            self.thickness,
            self.occupied,
            self.diagonals,
            self.atom_genus,
            self.bound,
            if self.violation { "  VIOLATION" } else { "" }
        )
    }
}

/// Thickness of the quantum-graded part of `t` against the atom genus.
pub fn thickness(t: &HomologyTable, a: &Atom) -> ThicknessReport {
    thickness_for_genus(t, a.genus())
}

/// As [`thickness`], for a diagram whose atom has genus `genus` (zero for
/// crossingless diagrams).
pub fn thickness_for_genus(t: &HomologyTable, genus: usize) -> ThicknessReport {
    let mut diagonals: Vec<i32> = t.groups.iter().filter_map(|g| g.j.map(|j| j - 2 * g.i)).collect();
    diagonals.sort_unstable();
    diagonals.dedup();
    let span = match (diagonals.first(), diagonals.last()) {
        (Some(lo), Some(hi)) => Some(hi - lo),
        _ => None,
    };
    let bound = 2 + genus;
    ThicknessReport {
        occupied: diagonals.len(),
        thickness: span.map_or(0.0, |s| f64::from(s) / 2.0 + 1.0),
        violation: span.is_some_and(|s| s as usize > 2 * bound - 2),
        diagonals,
        atom_genus: genus,
        bound,
    }
}
