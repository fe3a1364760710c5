//! Lens space triangulations.
//!
//! [`generate_lens_space`] builds the one-vertex layered triangulation: start
//! from the one-tetrahedron solid torus whose boundary edges meet the
//! meridian 1, 2 and 3 times, layer tetrahedra onto boundary edges following
//! the Euclidean algorithm, then fold the two boundary triangles together.
//!
//! Folding across a boundary edge of meridian weight `w_k` identifies the
//! other two edges (weights `w_i`, `w_j`) and kills the curve meeting them
//! once each. The result has `|H1| = w_i + w_j` when `w_k = |w_i - w_j|`,
//! and `|w_i - w_j|` otherwise. For `L(p,q)` with `q < p/2` we fold the
//! solid torus with weights `(p-2q, q, p-q)` across the edge of weight
//! `p-2q`; this kills `-(a + 2b)` in the boundary basis and yields
//! `L(p, -q⁻¹) ≅ L(p,q)`.
//!
//! [`generate_bipyramid_lens_space`] is the classical two-vertex model: `p`
//! tetrahedra around the axis of a lens-shaped ball, with the upper half of
//! the boundary glued to the lower half after a `q/p` turn.

use super::{Gluing, Perm4, Triangulation};
use crate::homology::integral_h1;
use num_integer::Integer;
use num_traits::ToPrimitive;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LensError {
    #[error("invalid lens space parameters L({p},{q}): need p >= 1 and gcd(p, q) = 1")]
    InvalidParameters { p: u64, q: i64 },
    #[error("construction of L({p},{q}) failed its self-check: {reason}")]
    SelfCheck { p: u64, q: i64, reason: String },
}

/// Boundary triangle of a layered solid torus: a facet given by its three
/// vertices, listed so that vertex `i` is opposite boundary edge label `i`.
#[derive(Clone, Copy, Debug)]
struct BoundaryFace {
    tet: usize,
    verts: [usize; 3],
}

impl BoundaryFace {
    fn facet(&self) -> usize {
        6 - self.verts[0] - self.verts[1] - self.verts[2]
    }

    fn rotated(self, by: usize) -> Self {
        let v = self.verts;
        BoundaryFace {
            tet: self.tet,
            verts: [v[by % 3], v[(by + 1) % 3], v[(by + 2) % 3]],
        }
    }
}

/// Layered solid torus with a two-triangle boundary torus.
///
/// Invariant: boundary edge `i` is the edge of `a` opposite `a.verts[i]` and
/// the edge of `b` opposite `b.verts[i]`; the two copies are identified by
/// `a.verts[j] ~ b.verts[k]`, `a.verts[k] ~ b.verts[j]` for `{i,j,k} = {0,1,2}`.
struct LayeredSolidTorus {
    gluings: Vec<[Option<Gluing>; 4]>,
    a: BoundaryFace,
    b: BoundaryFace,
    weights: [u64; 3],
}

impl LayeredSolidTorus {
    /// One tetrahedron with facet 3 glued to facet 0 by `0→1, 1→2, 2→3`.
    fn base() -> Self {
        let p = Perm4::from_images([1, 2, 3, 0]);
        let mut gluings = vec![[None; 4]];
        gluings[0][3] = Some(Gluing::new(0, p));
        gluings[0][0] = Some(Gluing::new(0, p.inverse()));
        LayeredSolidTorus {
            gluings,
            a: BoundaryFace { tet: 0, verts: [2, 3, 0] },
            b: BoundaryFace { tet: 0, verts: [1, 0, 3] },
            weights: [3, 2, 1],
        }
    }

    fn label_of_weight(&self, w: u64) -> usize {
        self.weights.iter().position(|&x| x == w).expect("weight present on boundary")
    }

    fn rotate(&mut self, by: usize) {
        self.a = self.a.rotated(by);
        self.b = self.b.rotated(by);
        self.weights = [
            self.weights[by % 3],
            self.weights[(by + 1) % 3],
            self.weights[(by + 2) % 3],
        ];
    }

    /// Layers a new tetrahedron across boundary edge `label`.
    fn layer(&mut self, label: usize) {
        self.rotate(label);
        let (a, b) = (self.a, self.b);
        let new = self.gluings.len();
        self.gluings.push([None; 4]);
        // Facet 3 = (0,1,2) onto a with 0→a1, 1→a2, 2→a0;
        // facet 2 = (0,1,3) onto b with 0→b2, 1→b1, 3→b0.
        let to_a = Perm4::mapping([0, 1, 2, 3], [a.verts[1], a.verts[2], a.verts[0], a.facet()]);
        let to_b = Perm4::mapping([0, 1, 3, 2], [b.verts[2], b.verts[1], b.verts[0], b.facet()]);
        self.gluings[new][3] = Some(Gluing::new(a.tet, to_a));
        self.gluings[a.tet][a.facet()] = Some(Gluing::new(new, to_a.inverse()));
        self.gluings[new][2] = Some(Gluing::new(b.tet, to_b));
        self.gluings[b.tet][b.facet()] = Some(Gluing::new(new, to_b.inverse()));

        let [w0, w1, w2] = self.weights;
        let fresh = if w0 == w1 + w2 { w1.abs_diff(w2) } else { w1 + w2 };
        self.a = BoundaryFace { tet: new, verts: [1, 3, 2] };
        self.b = BoundaryFace { tet: new, verts: [0, 2, 3] };
        self.weights = [fresh, w1, w2];
    }

    /// Grows the solid torus until its boundary weights are `{x, y, x+y}`.
    fn grow_to(target: (u64, u64)) -> Self {
        let mut path = Vec::new();
        let (mut x, mut y) = (target.0.min(target.1), target.0.max(target.1));
        while (x, y) != (1, 2) {
            path.push((x, y));
            let (nx, ny) = (x, y - x);
            (x, y) = (nx.min(ny), nx.max(ny));
        }
        let mut lst = Self::base();
        for &(x, y) in path.iter().rev() {
            // The new pair keeps the smaller weight and the old sum; drop the
            // weight that is not kept.
            let old_sum = y;
            let drop = lst
                .weights
                .iter()
                .copied()
                .find(|&w| w != x && w != old_sum)
                .expect("layering step exists");
            let label = lst.label_of_weight(drop);
            lst.layer(label);
        }
        lst
    }

    /// Folds the two boundary triangles across edge `label`, closing up.
    fn fold(mut self, label: usize) -> Vec<[Option<Gluing>; 4]> {
        self.rotate(label);
        let (a, b) = (self.a, self.b);
        let p = Perm4::mapping(
            [a.verts[0], a.verts[1], a.verts[2], a.facet()],
            [b.verts[0], b.verts[2], b.verts[1], b.facet()],
        );
        self.gluings[a.tet][a.facet()] = Some(Gluing::new(b.tet, p));
        self.gluings[b.tet][b.facet()] = Some(Gluing::new(a.tet, p.inverse()));
        self.gluings
    }
}

/// One-vertex layered triangulation of the lens space `L(p,q)`.
///
/// `L(1, q)` is the 3-sphere. Any `q` coprime to `p` is accepted and reduced
/// modulo `p`; `q` and `p - q` give the same manifold.
pub fn generate_lens_space(p: u64, q: i64) -> Result<Triangulation, LensError> {
    let invalid = LensError::InvalidParameters { p, q };
    if p == 0 {
        return Err(invalid);
    }
    let q_mod = q.rem_euclid(p as i64) as u64;
    if p > 1 && q_mod.gcd(&p) != 1 {
        return Err(invalid);
    }
    let (lst_pair, fold_weight) = match p {
        1 => ((1, 2), 3),
        2 => ((1, 3), 4),
        3 => ((1, 4), 5),
        _ => {
            let r = q_mod.min(p - q_mod);
            ((p - 2 * r, r), p - 2 * r)
        }
    };
    let lst = LayeredSolidTorus::grow_to(lst_pair);
    let label = lst.label_of_weight(fold_weight);
    let gluings = lst.fold(label);
    let t = Triangulation::new(gluings).map_err(|e| LensError::SelfCheck {
        p,
        q,
        reason: e.to_string(),
    })?;
    verify_lens(&t, p, q, Some(1))?;
    Ok(t)
}

/// Two-vertex triangulation of `L(p,q)` with `p` tetrahedra, `p >= 2`.
///
/// Tetrahedron `i` has vertices `(N, S, v_i, v_{i+1})`. Facet 2 meets
/// tetrahedron `i+1` around the axis; the upper facet `(N, v_i, v_{i+1})`
/// is glued to the lower facet `(S, v_{i+q}, v_{i+q+1})` of tetrahedron
/// `i+q`.
pub fn generate_bipyramid_lens_space(p: u64, q: i64) -> Result<Triangulation, LensError> {
    if p < 2 || (q.rem_euclid(p as i64) as u64).gcd(&p) != 1 {
        return Err(LensError::InvalidParameters { p, q });
    }
    let n = p as usize;
    let shift = q.rem_euclid(p as i64) as usize;
    let swap23 = Perm4::from_images([0, 1, 3, 2]);
    let swap01 = Perm4::from_images([1, 0, 2, 3]);
    let mut gluings = vec![[None; 4]; n];
    for (i, row) in gluings.iter_mut().enumerate() {
        row[2] = Some(Gluing::new((i + 1) % n, swap23));
        row[3] = Some(Gluing::new((i + n - 1) % n, swap23));
        row[1] = Some(Gluing::new((i + shift) % n, swap01));
        row[0] = Some(Gluing::new((i + n - shift) % n, swap01));
    }
    let t = Triangulation::new(gluings).map_err(|e| LensError::SelfCheck {
        p,
        q,
        reason: e.to_string(),
    })?;
    verify_lens(&t, p, q, Some(2))?;
    Ok(t)
}

fn verify_lens(t: &Triangulation, p: u64, q: i64, vertices: Option<usize>) -> Result<(), LensError> {
    let fail = |reason: String| LensError::SelfCheck { p, q, reason };
    t.check_closed_manifold().map_err(|e| fail(e.to_string()))?;
    if let Some(v) = vertices {
        if t.vertex_count() != v {
            return Err(fail(format!("expected {v} vertices, found {}", t.vertex_count())));
        }
    }
    let h1 = integral_h1(t);
    let order_ok = match p {
        1 => h1.is_trivial(),
        _ => {
            h1.free_rank == 0
                && h1.torsion.len() == 1
                && h1.torsion[0].to_u64() == Some(p)
        }
    };
    if !order_ok {
        return Err(fail(format!("H1 = {h1}, expected Z/{p}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_tetrahedron_folds() {
        // The three folds of the one-tetrahedron solid torus.
        for (p, q) in [(1u64, 0i64), (4, 1), (5, 2)] {
            let t = generate_lens_space(p, q).unwrap();
            assert_eq!(t.size(), 1, "L({p},{q})");
            assert_eq!(t.vertex_count(), 1);
        }
    }

    #[test]
    fn small_lens_spaces_are_one_vertex() {
        for p in 1..=40u64 {
            for q in 0..p as i64 {
                if p > 1 && (q as u64).gcd(&p) != 1 {
                    continue;
                }
                let t = generate_lens_space(p, q).unwrap();
                assert_eq!(t.vertex_count(), 1);
                assert_eq!(t.edge_count(), t.size() + 1);
            }
        }
    }

    #[test]
    fn tetrahedron_count_of_lp1() {
        // L(p,1) layers p-4 tetrahedra onto the base for p >= 5.
        for p in 5..30u64 {
            assert_eq!(generate_lens_space(p, 1).unwrap().size() as u64, p - 3);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(generate_lens_space(0, 1).is_err());
        assert!(generate_lens_space(8, 2).is_err());
        assert!(generate_bipyramid_lens_space(1, 0).is_err());
        assert!(generate_bipyramid_lens_space(9, 3).is_err());
    }

    #[test]
    fn bipyramid_models() {
        for p in 2..=12u64 {
            for q in 1..p as i64 {
                if (q as u64).gcd(&p) != 1 {
                    continue;
                }
                let t = generate_bipyramid_lens_space(p, q).unwrap();
                assert_eq!(t.size() as u64, p);
                assert_eq!(t.vertex_count(), 2);
            }
        }
    }

    #[test]
    fn round_trip_through_text() {
        let t = generate_lens_space(3, 1).unwrap();
        let u = crate::triang::parse_triangulation(&t.to_tri_string()).unwrap();
        assert_eq!(
            (u.vertex_count(), u.edge_count(), u.triangle_count()),
            (t.vertex_count(), t.edge_count(), t.triangle_count())
        );
        assert_eq!(u, t);
    }
}
