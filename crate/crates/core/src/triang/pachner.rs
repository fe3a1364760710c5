//! Pachner 2-3 moves.

use super::{Gluing, Perm4, Triangulation, FACE_VERTICES};
use rand::Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("triangle {0} does not exist")]
    NoSuchTriangle(usize),
    #[error("triangle {0} lies on the boundary")]
    BoundaryTriangle(usize),
    #[error("triangle {0} joins a tetrahedron to itself; 2-3 move unsupported")]
    SameTetrahedron(usize),
    #[error("no triangle admits a 2-3 move")]
    NoCandidate,
}

/// Replaces the two distinct tetrahedra meeting along triangle class `tri`
/// by three tetrahedra around a new edge. Returns a new triangulation with
/// one more tetrahedron; the input is untouched.
///
/// The untouched tetrahedra keep their indices (shifted down past the two
/// removed ones) and the three new tetrahedra are appended.
pub fn pachner_23(t: &Triangulation, tri: usize) -> Result<Triangulation, MoveError> {
    if tri >= t.triangle_count() {
        return Err(MoveError::NoSuchTriangle(tri));
    }
    let (t0, f0) = t.triangle_rep(tri);
    let g = t.gluing(t0, f0).ok_or(MoveError::BoundaryTriangle(tri))?;
    let t1 = g.tet;
    if t1 == t0 {
        return Err(MoveError::SameTetrahedron(tri));
    }
    let pi = g.perm;
    let top = f0;
    let bottom = pi.apply(f0);
    let a = FACE_VERTICES[f0];

    let n = t.size();
    let mut index = vec![usize::MAX; n];
    let mut next = 0;
    for (old, slot) in index.iter_mut().enumerate() {
        if old != t0 && old != t1 {
            *slot = next;
            next += 1;
        }
    }
    let new_base = next;

    // New tetrahedron k has vertices (top, bottom, a[k+1], a[k+2]); its
    // facet 1 is the old facet a[k] of t0 and its facet 0 is the old facet
    // pi(a[k]) of t1. `embed` maps new vertices to old vertices of that old
    // tetrahedron, sending the omitted vertex to the old facet index.
    let mut replaced: Vec<((usize, usize), (usize, usize, Perm4))> = Vec::with_capacity(6);
    for k in 0..3 {
        let (x, y, z) = (a[k], a[(k + 1) % 3], a[(k + 2) % 3]);
        let new_tet = new_base + k;
        replaced.push(((t0, x), (new_tet, 1, Perm4::mapping([0, 1, 2, 3], [top, x, y, z]))));
        let (px, py, pz) = (pi.apply(x), pi.apply(y), pi.apply(z));
        replaced.push(((t1, px), (new_tet, 0, Perm4::mapping([0, 1, 2, 3], [px, bottom, py, pz]))));
    }
    let lookup = |tet: usize, facet: usize| {
        replaced
            .iter()
            .find(|((ot, of), _)| *ot == tet && *of == facet)
            .map(|(_, v)| *v)
    };

    let mut gluings: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; new_base + 3];
    for old in (0..n).filter(|&o| o != t0 && o != t1) {
        for facet in 0..4 {
            let Some(g) = t.gluing(old, facet) else { continue };
            if g.tet != t0 && g.tet != t1 {
                gluings[index[old]][facet] = Some(Gluing::new(index[g.tet], g.perm));
            }
        }
    }

    for &((old_tet, old_facet), (new_tet, new_facet, embed)) in &replaced {
        let Some(g) = t.gluing(old_tet, old_facet) else { continue };
        let to_old_target = g.perm.compose(embed);
        let glued = match lookup(g.tet, g.perm.apply(old_facet)) {
            Some((other_new, _, other_embed)) => {
                Gluing::new(other_new, other_embed.inverse().compose(to_old_target))
            }
            None => {
                let target = index[g.tet];
                let target_facet = g.perm.apply(old_facet);
                gluings[target][target_facet] = Some(Gluing::new(new_tet, to_old_target.inverse()));
                Gluing::new(target, to_old_target)
            }
        };
        gluings[new_tet][new_facet] = Some(glued);
    }

    // Internal faces around the new edge (top, bottom).
    let swap23 = Perm4::from_images([0, 1, 3, 2]);
    for k in 0..3 {
        let this = new_base + k;
        let next = new_base + (k + 1) % 3;
        gluings[this][2] = Some(Gluing::new(next, swap23));
        gluings[next][3] = Some(Gluing::new(this, swap23));
    }

    Ok(Triangulation::new(gluings).expect("2-3 move produces a consistent gluing"))
}

/// Applies a 2-3 move on a uniformly chosen eligible triangle.
pub fn random_pachner_23<R: Rng + ?Sized>(t: &Triangulation, rng: &mut R) -> Result<Triangulation, MoveError> {
    let candidates: Vec<usize> = (0..t.triangle_count())
        .filter(|&tri| {
            let (tet, facet) = t.triangle_rep(tri);
            t.gluing(tet, facet).is_some_and(|g| g.tet != tet)
        })
        .collect();
    if candidates.is_empty() {
        return Err(MoveError::NoCandidate);
    }
    let tri = candidates[rng.gen_range(0..candidates.len())];
    pachner_23(t, tri)
}
