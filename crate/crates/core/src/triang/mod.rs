//! Generalised triangulations of closed 3-manifolds.
//!
//! A triangulation is a list of abstract tetrahedra whose facets are glued in
//! pairs by vertex permutations. Facet `k` of a tetrahedron is the triangle
//! opposite vertex `k`. Edge slots follow the vertex-pair order
//! `{0,1},{0,2},{0,3},{1,2},{1,3},{2,3}`, so slots `k` and `5-k` are always
//! opposite edges.
//!
//! The skeleton (vertex, edge and triangle classes) is computed once at
//! construction. Classes are numbered in order of their smallest
//! `(tetrahedron, slot)` representative.

mod format;
mod lens;
mod pachner;
mod perm;

pub use format::parse_triangulation;
pub use lens::{generate_bipyramid_lens_space, generate_lens_space, LensError};
pub use pachner::{pachner_23, random_pachner_23, MoveError};
pub use perm::Perm4;

use std::collections::VecDeque;
use thiserror::Error;

/// Vertex pairs of the six edge slots.
pub const EDGE_VERTICES: [[usize; 2]; 6] = [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3], [2, 3]];

/// Vertices of each facet in increasing order.
pub const FACE_VERTICES: [[usize; 3]; 4] = [[1, 2, 3], [0, 2, 3], [0, 1, 3], [0, 1, 2]];

/// Slot of the edge joining tetrahedron vertices `a` and `b`.
pub fn edge_slot(a: usize, b: usize) -> usize {
    debug_assert!(a != b && a < 4 && b < 4);
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    match (lo, hi) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        _ => 5,
    }
}

/// Edge slots of facet `f` listed as `[u1u2, u0u2, u0u1]` for the facet
/// vertices `u0 < u1 < u2`, which is the order of the simplicial boundary.
pub fn face_edge_slots(f: usize) -> [usize; 3] {
    let [u0, u1, u2] = FACE_VERTICES[f];
    [edge_slot(u1, u2), edge_slot(u0, u2), edge_slot(u0, u1)]
}

/// One side of a facet identification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub tet: usize,
    pub perm: Perm4,
}

impl Gluing {
    pub fn new(tet: usize, perm: Perm4) -> Self {
        Gluing { tet, perm }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangulationError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("facet {facet} of tetrahedron {tet} is glued to missing tetrahedron {target}")]
    TargetOutOfRange {
        tet: usize,
        facet: usize,
        target: usize,
    },
    #[error("facet {facet} of tetrahedron {tet} is glued to itself")]
    FacetGluedToItself { tet: usize, facet: usize },
    #[error("facet {facet} of tetrahedron {tet} receives more than one gluing")]
    FacetGluedTwice { tet: usize, facet: usize },
    #[error("facet {facet} of tetrahedron {tet} is unglued")]
    Unglued { tet: usize, facet: usize },
    #[error("gluing of facet {facet} of tetrahedron {tet} is not matched by its partner")]
    InconsistentGluing { tet: usize, facet: usize },
}

/// First violated condition found by [`Triangulation::check_closed_manifold`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ManifoldError {
    #[error("boundary facet: facet {facet} of tetrahedron {tet} is unglued")]
    BoundaryFacet { tet: usize, facet: usize },
    #[error("edge {edge} (tetrahedron {tet}, slot {slot}) is identified with itself in reverse")]
    ReversedEdge { edge: usize, tet: usize, slot: usize },
    #[error("link of vertex {vertex} has Euler characteristic {euler}, expected 2")]
    VertexLink { vertex: usize, euler: i64 },
    #[error("Euler characteristic v - e + f - n = {value}, expected 0")]
    EulerCharacteristic { value: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ManifoldDiagnosis {
    pub tetrahedra: usize,
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    /// Number of connected components (β0).
    pub components: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Skeleton {
    vertex_of: Vec<[usize; 4]>,
    edge_of: Vec<[usize; 6]>,
    edge_sign: Vec<[i8; 6]>,
    triangle_of: Vec<[usize; 4]>,
    triangle_sign: Vec<[i8; 4]>,
    vertex_count: usize,
    edge_reps: Vec<(usize, usize)>,
    triangle_reps: Vec<(usize, usize)>,
    reversed_edges: Vec<(usize, usize, usize)>,
    components: usize,
}

/// A generalised triangulation together with its skeleton.
///
/// Immutable once built; every modification returns a new value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    gluings: Vec<[Option<Gluing>; 4]>,
    skeleton: Skeleton,
}

impl Triangulation {
    /// Builds a triangulation from per-facet gluings, checking that the
    /// gluing relation is a fixed-point-free partial involution. Facets with
    /// `None` are boundary facets; [`check_closed_manifold`] rejects them.
    ///
    /// [`check_closed_manifold`]: Triangulation::check_closed_manifold
    pub fn new(gluings: Vec<[Option<Gluing>; 4]>) -> Result<Self, TriangulationError> {
        let n = gluings.len();
        for (tet, row) in gluings.iter().enumerate() {
            for (facet, g) in row.iter().enumerate() {
                let Some(g) = g else { continue };
                if g.tet >= n {
                    return Err(TriangulationError::TargetOutOfRange {
                        tet,
                        facet,
                        target: g.tet,
                    });
                }
                let target_facet = g.perm.apply(facet);
                if g.tet == tet && target_facet == facet {
                    return Err(TriangulationError::FacetGluedToItself { tet, facet });
                }
                match gluings[g.tet][target_facet] {
                    Some(back) if back.tet == tet && back.perm == g.perm.inverse() => {}
                    Some(_) => return Err(TriangulationError::InconsistentGluing { tet, facet }),
                    None => return Err(TriangulationError::InconsistentGluing { tet, facet }),
                }
            }
        }
        let skeleton = Skeleton::compute(&gluings);
        Ok(Triangulation { gluings, skeleton })
    }

    /// Number of tetrahedra.
    pub fn size(&self) -> usize {
        self.gluings.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.skeleton.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.skeleton.edge_reps.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.skeleton.triangle_reps.len()
    }

    pub fn components(&self) -> usize {
        self.skeleton.components
    }

    pub fn gluing(&self, tet: usize, facet: usize) -> Option<Gluing> {
        self.gluings[tet][facet]
    }

    pub fn gluings(&self) -> &[[Option<Gluing>; 4]] {
        &self.gluings
    }

    pub fn is_closed(&self) -> bool {
        self.gluings.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// Vertex class of corner `corner` of tetrahedron `tet`.
    pub fn vertex(&self, tet: usize, corner: usize) -> usize {
        self.skeleton.vertex_of[tet][corner]
    }

    /// Edge class of slot `slot` of tetrahedron `tet`.
    pub fn edge(&self, tet: usize, slot: usize) -> usize {
        self.skeleton.edge_of[tet][slot]
    }

    /// Edge classes of all six slots of a tetrahedron.
    pub fn tet_edges(&self, tet: usize) -> [usize; 6] {
        self.skeleton.edge_of[tet]
    }

    /// +1 if the slot, oriented from its lower to its higher vertex, agrees
    /// with the orientation of its edge class representative.
    pub fn edge_sign(&self, tet: usize, slot: usize) -> i8 {
        self.skeleton.edge_sign[tet][slot]
    }

    /// Triangle class of facet `facet` of tetrahedron `tet`.
    pub fn triangle(&self, tet: usize, facet: usize) -> usize {
        self.skeleton.triangle_of[tet][facet]
    }

    /// +1 if the facet with increasing vertex order agrees with the
    /// orientation of its triangle class representative.
    pub fn triangle_sign(&self, tet: usize, facet: usize) -> i8 {
        self.skeleton.triangle_sign[tet][facet]
    }

    /// Representative `(tet, slot)` of an edge class.
    pub fn edge_rep(&self, edge: usize) -> (usize, usize) {
        self.skeleton.edge_reps[edge]
    }

    /// Representative `(tet, facet)` of a triangle class.
    pub fn triangle_rep(&self, tri: usize) -> (usize, usize) {
        self.skeleton.triangle_reps[tri]
    }

    /// The tetrahedron facets making up a triangle class: two for interior
    /// triangles (possibly in the same tetrahedron), one on the boundary.
    pub fn triangle_members(&self, tri: usize) -> Vec<(usize, usize)> {
        let (tet, facet) = self.triangle_rep(tri);
        let mut out = vec![(tet, facet)];
        if let Some(g) = self.gluings[tet][facet] {
            out.push((g.tet, g.perm.apply(facet)));
        }
        out
    }

    /// Edge classes of a triangle with orientation signs, in boundary order
    /// `[u1u2, u0u2, u0u1]` of its representative. An edge class meeting the
    /// triangle twice appears twice.
    pub fn triangle_edges(&self, tri: usize) -> [(usize, i8); 3] {
        let (tet, facet) = self.triangle_rep(tri);
        face_edge_slots(facet).map(|s| (self.edge(tet, s), self.edge_sign(tet, s)))
    }

    /// Tail and head vertex classes of an edge class, following the
    /// orientation of its representative.
    pub fn edge_endpoints(&self, edge: usize) -> (usize, usize) {
        let (tet, slot) = self.edge_rep(edge);
        let [a, b] = EDGE_VERTICES[slot];
        (self.vertex(tet, a), self.vertex(tet, b))
    }

    /// Checks that the triangulation is a closed 3-manifold: all facets
    /// glued, no edge identified with its own reverse, every vertex link a
    /// 2-sphere, and Euler characteristic zero.
    pub fn check_closed_manifold(&self) -> Result<ManifoldDiagnosis, ManifoldError> {
        for (tet, row) in self.gluings.iter().enumerate() {
            for (facet, g) in row.iter().enumerate() {
                if g.is_none() {
                    return Err(ManifoldError::BoundaryFacet { tet, facet });
                }
            }
        }
        if let Some(&(edge, tet, slot)) = self.skeleton.reversed_edges.first() {
            return Err(ManifoldError::ReversedEdge { edge, tet, slot });
        }

        // Link of a vertex: one triangle per tetrahedron corner, one edge per
        // triangle corner, one vertex per edge end.
        let v = self.vertex_count();
        let mut link_euler = vec![0i64; v];
        for row in &self.skeleton.vertex_of {
            for &vc in row {
                link_euler[vc] += 1;
            }
        }
        for tri in 0..self.triangle_count() {
            let (tet, facet) = self.triangle_rep(tri);
            for &u in &FACE_VERTICES[facet] {
                link_euler[self.vertex(tet, u)] -= 1;
            }
        }
        for edge in 0..self.edge_count() {
            let (tail, head) = self.edge_endpoints(edge);
            link_euler[tail] += 1;
            link_euler[head] += 1;
        }
        if let Some((vertex, &euler)) = link_euler.iter().enumerate().find(|(_, &x)| x != 2) {
            return Err(ManifoldError::VertexLink { vertex, euler });
        }

        let value = v as i64 - self.edge_count() as i64 + self.triangle_count() as i64
            - self.size() as i64;
        if value != 0 {
            return Err(ManifoldError::EulerCharacteristic { value });
        }
        Ok(ManifoldDiagnosis {
            tetrahedra: self.size(),
            vertices: v,
            edges: self.edge_count(),
            triangles: self.triangle_count(),
            components: self.components(),
        })
    }

    /// Serialises to the TRI text format accepted by [`parse_triangulation`].
    pub fn to_tri_string(&self) -> String {
        format::write_triangulation(self)
    }
}

impl Skeleton {
    fn compute(gluings: &[[Option<Gluing>; 4]]) -> Skeleton {
        let n = gluings.len();
        const NONE: usize = usize::MAX;

        // Vertices: corners joined across every glued facet containing them.
        let mut vertex_of = vec![[NONE; 4]; n];
        let mut vertex_count = 0;
        for t in 0..n {
            for c in 0..4 {
                if vertex_of[t][c] != NONE {
                    continue;
                }
                let id = vertex_count;
                vertex_count += 1;
                vertex_of[t][c] = id;
                let mut queue = VecDeque::from([(t, c)]);
                while let Some((tt, cc)) = queue.pop_front() {
                    for f in (0..4).filter(|&f| f != cc) {
                        if let Some(g) = gluings[tt][f] {
                            let (nt, nc) = (g.tet, g.perm.apply(cc));
                            if vertex_of[nt][nc] == NONE {
                                vertex_of[nt][nc] = id;
                                queue.push_back((nt, nc));
                            }
                        }
                    }
                }
            }
        }

        // Edges, with orientation relative to the class representative.
        let mut edge_of = vec![[NONE; 6]; n];
        let mut edge_sign = vec![[0i8; 6]; n];
        let mut edge_reps = Vec::new();
        let mut reversed_edges = Vec::new();
        for t in 0..n {
            for s in 0..6 {
                if edge_of[t][s] != NONE {
                    continue;
                }
                let id = edge_reps.len();
                edge_reps.push((t, s));
                edge_of[t][s] = id;
                edge_sign[t][s] = 1;
                let mut reversed = false;
                let mut queue = VecDeque::from([(t, s)]);
                while let Some((tt, ss)) = queue.pop_front() {
                    let [a, b] = EDGE_VERTICES[ss];
                    let sign = edge_sign[tt][ss];
                    for f in (0..4).filter(|&f| f != a && f != b) {
                        let Some(g) = gluings[tt][f] else { continue };
                        let (pa, pb) = (g.perm.apply(a), g.perm.apply(b));
                        let ns = edge_slot(pa, pb);
                        let nsign = if pa < pb { sign } else { -sign };
                        if edge_of[g.tet][ns] == NONE {
                            edge_of[g.tet][ns] = id;
                            edge_sign[g.tet][ns] = nsign;
                            queue.push_back((g.tet, ns));
                        } else if edge_sign[g.tet][ns] != nsign {
                            reversed = true;
                        }
                    }
                }
                if reversed {
                    reversed_edges.push((id, t, s));
                }
            }
        }

        // Triangles: one facet pair each.
        let mut triangle_of = vec![[NONE; 4]; n];
        let mut triangle_sign = vec![[0i8; 4]; n];
        let mut triangle_reps = Vec::new();
        for t in 0..n {
            for f in 0..4 {
                if triangle_of[t][f] != NONE {
                    continue;
                }
                let id = triangle_reps.len();
                triangle_reps.push((t, f));
                triangle_of[t][f] = id;
                triangle_sign[t][f] = 1;
                if let Some(g) = gluings[t][f] {
                    let nf = g.perm.apply(f);
                    let images = FACE_VERTICES[f].map(|u| g.perm.apply(u));
                    triangle_of[g.tet][nf] = id;
                    triangle_sign[g.tet][nf] = sort_sign(images);
                }
            }
        }

        // Connected components of the dual graph.
        let mut comp = vec![NONE; n];
        let mut components = 0;
        for t in 0..n {
            if comp[t] != NONE {
                continue;
            }
            comp[t] = components;
            let mut queue = VecDeque::from([t]);
            while let Some(tt) = queue.pop_front() {
                for g in gluings[tt].iter().flatten() {
                    if comp[g.tet] == NONE {
                        comp[g.tet] = components;
                        queue.push_back(g.tet);
                    }
                }
            }
            components += 1;
        }

        Skeleton {
            vertex_of,
            edge_of,
            edge_sign,
            triangle_of,
            triangle_sign,
            vertex_count,
            edge_reps,
            triangle_reps,
            reversed_edges,
            components,
        }
    }
}

/// Sign of the permutation sorting three distinct values.
fn sort_sign(v: [usize; 3]) -> i8 {
    let inversions = (v[0] > v[1]) as u8 + (v[0] > v[2]) as u8 + (v[1] > v[2]) as u8;
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
