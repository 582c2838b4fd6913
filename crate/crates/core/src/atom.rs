//! Atoms: the frame of a diagram (one vertex per classical crossing) with
//! black cells glued along the all-B state circles and white cells along
//! the all-A state circles.

use serde::Serialize;

use crate::code::{EndRole, VirtualLinkDiagram};
use crate::error::{Error, Result};
use crate::state::{CubeGeometry, Direction, State, StateCircle};

#[derive(Clone, Debug)]
pub struct Atom {
    vertices: usize,
    free_loops: usize,
    /// Frame edges as pairs of half-edges; half-edge `4*c + role` sits at vertex `c`.
    edges: Vec<(usize, usize)>,
    black_cells: Vec<StateCircle>,
    white_cells: Vec<StateCircle>,
    /// Per half-edge: [edge mate, opposite at vertex, black corner mate, white corner mate].
    mates: Vec<[usize; 4]>,
    pieces: Vec<Piece>,
}

/// One connected piece of the underlying surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Piece {
    pub euler_char: i64,
    pub orientable: bool,
}

impl Piece {
    /// Orientable genus, or the number of cross-caps when non-orientable.
    pub fn genus(&self) -> usize {
        if self.orientable {
            ((2 - self.euler_char) / 2) as usize
        } else {
            (2 - self.euler_char) as usize
        }
    }
}

fn opposite(role: EndRole) -> EndRole {
    match role {
        EndRole::OverIn => EndRole::OverOut,
        EndRole::OverOut => EndRole::OverIn,
        EndRole::UnderIn => EndRole::UnderOut,
        EndRole::UnderOut => EndRole::UnderIn,
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
    }
}

impl Atom {
    pub fn build(d: &VirtualLinkDiagram) -> Result<Atom> {
        let n = d.crossing_count();
        if n == 0 {
            return Err(Error::EmptyDiagram);
        }
        let g = CubeGeometry::new(d);
        let white = g.resolve(State::all_a()).circles;
        let black = g.resolve(State::all_b(n)).circles;
        let white_cells: Vec<StateCircle> = white.into_iter().filter(|c| !c.arcs.is_empty()).collect();
        let black_cells: Vec<StateCircle> = black.into_iter().filter(|c| !c.arcs.is_empty()).collect();

        let idx = |e: crate::code::End| 4 * e.crossing + e.role.index();
        let edges: Vec<(usize, usize)> = g.arcs().iter().map(|a| (idx(a.from), idx(a.to))).collect();
        let mut mates = vec![[0usize; 4]; 4 * n];
        for &(x, y) in &edges {
            mates[x][0] = y;
            mates[y][0] = x;
        }
        for c in 0..n {
            for role in EndRole::ALL {
                let e = crate::code::End { crossing: c, role };
                let h = idx(e);
                mates[h][1] = 4 * c + opposite(role).index();
                mates[h][2] = 4 * c + g.partner(State::all_b(n), e).index();
                mates[h][3] = 4 * c + g.partner(State::all_a(), e).index();
            }
        }

        // connected pieces of the frame
        let mut uf = UnionFind((0..n).collect());
        for a in g.arcs() {
            uf.union(a.from.crossing, a.to.crossing);
        }
        let roots: Vec<usize> = (0..n).map(|c| uf.find(c)).collect();
        let mut piece_ids: Vec<usize> = roots.clone();
        piece_ids.sort_unstable();
        piece_ids.dedup();
        let piece_of = |c: usize| piece_ids.binary_search(&roots[c]).unwrap();
        let arc_piece = |arc: usize| piece_of(g.arcs()[arc].from.crossing);

        let mut chi = vec![0i64; piece_ids.len()];
        for c in 0..n {
            chi[piece_of(c)] += 1;
        }
        for a in 0..edges.len() {
            chi[arc_piece(a)] -= 1;
        }
        for cell in black_cells.iter().chain(&white_cells) {
            chi[arc_piece(cell.arcs[0].0)] += 1;
        }

        let orientable = orientability(&black_cells, &white_cells, edges.len(), piece_ids.len(), arc_piece);
        let pieces = chi
            .into_iter()
            .zip(orientable)
            .map(|(euler_char, orientable)| Piece { euler_char, orientable })
            .collect();

        Ok(Atom { vertices: n, free_loops: d.free_loops(), edges, black_cells, white_cells, mates, pieces })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn black_cells(&self) -> &[StateCircle] {
        &self.black_cells
    }

    pub fn white_cells(&self) -> &[StateCircle] {
        &self.white_cells
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// V − E + F of the surface.
    pub fn euler_char(&self) -> i64 {
        self.pieces.iter().map(|p| p.euler_char).sum()
    }

    pub fn orientable(&self) -> bool {
        self.pieces.iter().all(|p| p.orientable)
    }

    /// Sum of the genera of the connected pieces; orientable genus for
    /// orientable pieces, non-orientable genus otherwise.
    pub fn genus(&self) -> usize {
        self.pieces.iter().map(Piece::genus).sum()
    }

    /// Every piece is a sphere.
    pub fn is_planar(&self) -> bool {
        self.pieces.iter().all(|p| p.orientable && p.euler_char == 2)
    }

    /// Complete invariant of the frame with its A-structure and cell coloring.
    pub fn canonical_code(&self) -> AtomCode {
        let h = self.mates.len();
        let mut seen = vec![false; h];
        let mut pieces = vec![];
        for start in 0..h {
            if seen[start] {
                continue;
            }
            let mut members = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < members.len() {
                for &m in &self.mates[members[i]] {
                    if !seen[m] {
                        seen[m] = true;
                        members.push(m);
                    }
                }
                i += 1;
            }
            let code = members.iter().map(|&root| self.bfs_code(root)).min().unwrap();
            pieces.push(code);
        }
        pieces.sort();
        AtomCode { pieces, free_loops: self.free_loops }
    }

    fn bfs_code(&self, root: usize) -> Vec<u32> {
        let mut number = vec![u32::MAX; self.mates.len()];
        let mut order = vec![root];
        number[root] = 0;
        let mut code = vec![];
        let mut i = 0;
        while i < order.len() {
            for &m in &self.mates[order[i]] {
                if number[m] == u32::MAX {
                    number[m] = order.len() as u32;
                    order.push(m);
                }
                code.push(number[m]);
            }
            i += 1;
        }
        code
    }

    pub fn to_json(&self) -> AtomJson {
        let cells = |cs: &[StateCircle]| cs.iter().map(|c| c.arcs.iter().map(|(a, _)| *a).collect()).collect();
        AtomJson {
            vertices: self.vertices,
            edges: self.edges.iter().map(|&(x, y)| [x / 4, y / 4]).collect(),
            black_cells: cells(&self.black_cells),
            white_cells: cells(&self.white_cells),
            free_loops: self.free_loops,
            euler_char: self.euler_char(),
            orientable: self.orientable(),
            genus: self.genus(),
        }
    }
}

/// Orientable iff cells can be oriented so each frame edge is run in
/// opposite directions by its black and its white cell.
fn orientability(
    black: &[StateCircle],
    white: &[StateCircle],
    arcs: usize,
    pieces: usize,
    arc_piece: impl Fn(usize) -> usize,
) -> Vec<bool> {
    // cell index and direction per arc, from each color
    let mut on_black = vec![(0usize, Direction::With); arcs];
    let mut on_white = vec![(0usize, Direction::With); arcs];
    for (i, c) in black.iter().enumerate() {
        for &(a, dir) in &c.arcs {
            on_black[a] = (i, dir);
        }
    }
    for (i, c) in white.iter().enumerate() {
        for &(a, dir) in &c.arcs {
            on_white[a] = (black.len() + i, dir);
        }
    }
    let cells = black.len() + white.len();
    // adjacency: (other cell, flip) with flip = whether orientations must differ
    let mut adj: Vec<Vec<(usize, bool)>> = vec![vec![]; cells];
    for a in 0..arcs {
        let (b, db) = on_black[a];
        let (w, dw) = on_white[a];
        // o_b·db = -(o_w·dw)  ⇔  o_b = o_w exactly when db ≠ dw
        let flip = db == dw;
        adj[b].push((w, flip));
        adj[w].push((b, flip));
    }
    let mut ok = vec![true; pieces];
    let mut color: Vec<Option<bool>> = vec![None; cells];
    let first_arc = |cell: usize| {
        if cell < black.len() {
            black[cell].arcs[0].0
        } else {
            white[cell - black.len()].arcs[0].0
        }
    };
    for s in 0..cells {
        if color[s].is_some() {
            continue;
        }
        color[s] = Some(false);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            let cu = color[u].unwrap();
            for &(v, flip) in &adj[u] {
                let want = cu ^ flip;
                match color[v] {
                    None => {
                        color[v] = Some(want);
                        stack.push(v);
                    }
                    Some(cv) if cv != want => ok[arc_piece(first_arc(s))] = false,
                    _ => {}
                }
            }
        }
    }
    ok
}

impl PartialEq for Atom {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.edges.len() == other.edges.len()
            && self.black_cells.len() == other.black_cells.len()
            && self.white_cells.len() == other.white_cells.len()
            && self.canonical_code() == other.canonical_code()
    }
}

impl Eq for Atom {}

pub fn atoms_equal(a: &Atom, b: &Atom) -> bool {
    a == b
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomCode {
    pieces: Vec<Vec<u32>>,
    free_loops: usize,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct AtomJson {
    pub vertices: usize,
    /// Each frame edge as its pair of end vertices.
    pub edges: Vec<[usize; 2]>,
    pub black_cells: Vec<Vec<usize>>,
    pub white_cells: Vec<Vec<usize>>,
    pub free_loops: usize,
    pub euler_char: i64,
    pub orientable: bool,
    pub genus: usize,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(s: &str) -> Atom {
        Atom::build(&VirtualLinkDiagram::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn trefoil_is_a_sphere() {
        let a = atom("O1+U2+O3+U1+O2+U3+");
        assert_eq!(a.euler_char(), 2);
        assert!(a.orientable());
        assert_eq!(a.genus(), 0);
    }

    #[test]
    fn virtual_trefoil_is_projective_plane() {
        let a = atom("O1+O2+U1+U2+");
        assert_eq!(a.euler_char(), 1);
        assert!(!a.orientable());
        assert_eq!(a.genus(), 1);
    }

    #[test]
    fn empty_diagram_has_no_atom() {
        assert!(matches!(Atom::build(&VirtualLinkDiagram::unlink(1)), Err(Error::EmptyDiagram)));
    }

    #[test]
    fn equality() {
        let t = atom("O1+U2+O3+U1+O2+U3+");
        assert_eq!(t, t.clone());
        assert_ne!(t, atom("O1-U2-O3+U4+O2-U1-O4+U3+"));
        // same code, different rotation and labels
        assert_eq!(t, atom("U3+O2+U1+O3+U2+O1+"));
    }

    #[test]
    fn virtualization_keeps_atom() {
        let d = VirtualLinkDiagram::parse("O1+O2+U1+U2+").unwrap();
        for c in 0..2 {
            let v = d.virtualize(c).unwrap();
            assert_eq!(Atom::build(&v).unwrap(), Atom::build(&d).unwrap());
        }
    }

    #[test]
    fn connected_sum_of_alternating_is_planar() {
        // trefoil # figure-eight
        let a = atom("O1+U2+O3+U1+O2+O4-U5-O6+U7+O5-U4-O7+U6+U3+");
        assert_eq!(a.pieces().len(), 1);
        assert_eq!(a.genus(), 0);
        assert!(a.orientable());
    }
}
