//! Seeded random diagrams and move pairs for fuzzing.
//!
//! A random diagram on `n` crossings is a uniformly shuffled list of the
//! passes `O1..On, U1..Un` with independent uniform signs, cut into between
//! one and `max_components` non-empty cyclic words. Every such list is a
//! valid signed Gauss code, so nothing is rejected.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use super::{ArcRef, Kink, Pass, Passage, R2Variant, Sign, VirtualLinkDiagram};

pub type DiagramRng = ChaCha8Rng;

pub fn rng(seed: u64) -> DiagramRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_sign(rng: &mut impl Rng) -> Sign {
    if rng.gen() {
        Sign::Positive
    } else {
        Sign::Negative
    }
}

pub fn random_diagram(rng: &mut impl Rng, n: usize, max_components: usize) -> VirtualLinkDiagram {
    if n == 0 {
        return VirtualLinkDiagram::unlink(1);
    }
    let signs: Vec<Sign> = (0..n).map(|_| random_sign(rng)).collect();
    let mut passes: Vec<Pass> = (0..n)
        .flat_map(|c| [Pass::new(c, Passage::Over, signs[c]), Pass::new(c, Passage::Under, signs[c])])
        .collect();
    passes.shuffle(rng);
    let k = rng.gen_range(1..=max_components.clamp(1, 2 * n));
    let mut cuts: Vec<usize> = (1..2 * n).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts[..k - 1].to_vec();
    cuts.sort_unstable();
    cuts.insert(0, 0);
    cuts.push(2 * n);
    let comps = cuts.windows(2).map(|w| passes[w[0]..w[1]].to_vec()).collect();
    VirtualLinkDiagram::from_parts(comps, 0)
}

/// Every place where passes may be inserted.
pub fn arc_refs(d: &VirtualLinkDiagram) -> Vec<ArcRef> {
    let mut out: Vec<ArcRef> = d
        .components()
        .iter()
        .enumerate()
        .flat_map(|(component, c)| (0..c.len()).map(move |position| ArcRef::Arc { component, position }))
        .collect();
    out.extend((0..d.free_loops()).map(ArcRef::FreeLoop));
    out
}

pub fn random_r1(rng: &mut impl Rng, d: &VirtualLinkDiagram) -> VirtualLinkDiagram {
    let at = *arc_refs(d).choose(rng).expect("diagram is non-empty");
    let kink = *Kink::ALL.choose(rng).unwrap();
    d.apply_r1(at, kink).expect("arc exists")
}

pub fn random_r2(rng: &mut impl Rng, d: &VirtualLinkDiagram) -> VirtualLinkDiagram {
    let refs = arc_refs(d);
    let over = *refs.choose(rng).expect("diagram is non-empty");
    let under = *refs.choose(rng).unwrap();
    let variant = *R2Variant::ALL.choose(rng).unwrap();
    d.apply_r2(over, under, variant).expect("arcs exist")
}

/// Three new crossings forming a triangle face on three chosen arcs. The
/// local model is three straight lines with directions `(1,0)`, `(1,1)`,
/// `(-1,1)` (each possibly reversed) stacked at random heights.
pub fn with_triangle(rng: &mut impl Rng, d: &VirtualLinkDiagram) -> VirtualLinkDiagram {
    let dirs: [(i32, i32); 3] = [(1, 0), (1, 1), (-1, 1)];
    let flip: [bool; 3] = [rng.gen(), rng.gen(), rng.gen()];
    let dir = |l: usize| if flip[l] { (-dirs[l].0, -dirs[l].1) } else { dirs[l] };
    let mut height = [0usize, 1, 2];
    height.shuffle(rng);
    // crossing labels for the pairs (0,1), (0,2), (1,2)
    let base = d.crossing_count();
    let label = |a: usize, b: usize| base + a + b - 1;
    // order of the two other lines met along line l in its reference direction
    let order: [[usize; 2]; 3] = [[1, 2], [0, 2], [0, 1]];
    let mut lines: Vec<Vec<Pass>> = vec![];
    for l in 0..3 {
        let mut others = order[l];
        if flip[l] {
            others.reverse();
        }
        let passes = others
            .iter()
            .map(|&m| {
                let (over, under) = if height[l] > height[m] { (l, m) } else { (m, l) };
                let (u, v) = (dir(over), dir(under));
                let sign = if u.0 * v.1 - u.1 * v.0 > 0 { Sign::Positive } else { Sign::Negative };
                let passage = if over == l { Passage::Over } else { Passage::Under };
                Pass::new(label(l, m), passage, sign)
            })
            .collect();
        lines.push(passes);
    }
    let refs = arc_refs(d);
    let targets: Vec<ArcRef> = (0..3).map(|_| *refs.choose(rng).expect("diagram is non-empty")).collect();
    d.insert_passes(targets.into_iter().zip(lines).collect()).expect("arcs exist")
}

/// A diagram carrying an R3 triangle, paired with the result of the move.
pub fn random_r3_pair(rng: &mut impl Rng, d: &VirtualLinkDiagram) -> (VirtualLinkDiagram, VirtualLinkDiagram) {
    let before = with_triangle(rng, d);
    let tris = before.find_r3_triangles();
    let t = tris.choose(rng).expect("the inserted triangle is a face");
    let after = before.apply_r3(t).expect("triangle was just found");
    (before, after)
}
