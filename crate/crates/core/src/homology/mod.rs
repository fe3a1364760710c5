//! Simplicial homology of triangulations: Z2 Betti numbers, the space of
//! triangle-parity cocycles, and integral first homology.
//!
//! Orientation convention: an edge class is oriented like its representative
//! slot (lower to higher vertex), a triangle class like its representative
//! facet with increasing vertex order, a tetrahedron by `0123`.

mod snf;

pub use snf::{integer_rank, invariant_factors, torsion_order};

use crate::triang::{face_edge_slots, Triangulation};
use crate::z2::{Echelon, Z2Matrix, Z2Vector};
use num_bigint::BigUint;
use num_traits::One;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("triangulation has boundary: facet {facet} of tetrahedron {tet} is unglued")]
    NotClosed { tet: usize, facet: usize },
}

/// Boundary maps over Z2: `d1` is vertices × edges, `d2` edges × triangles,
/// `d3` triangles × tetrahedra.
#[derive(Clone, Debug)]
pub struct ChainComplexZ2 {
    pub d1: Z2Matrix,
    pub d2: Z2Matrix,
    pub d3: Z2Matrix,
}

/// Integer boundary maps with the same shapes as [`ChainComplexZ2`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexZ {
    pub d1: Vec<Vec<i64>>,
    pub d2: Vec<Vec<i64>>,
    pub d3: Vec<Vec<i64>>,
}

impl ChainComplexZ {
    pub fn new(t: &Triangulation) -> Self {
        let (v, e, f, n) = (t.vertex_count(), t.edge_count(), t.triangle_count(), t.size());
        let mut d1 = vec![vec![0i64; e]; v];
        for edge in 0..e {
            let (tail, head) = t.edge_endpoints(edge);
            d1[head][edge] += 1;
            d1[tail][edge] -= 1;
        }
        let mut d2 = vec![vec![0i64; f]; e];
        for tri in 0..f {
            for (i, (edge, sign)) in t.triangle_edges(tri).into_iter().enumerate() {
                let face_sign = if i % 2 == 0 { 1 } else { -1 };
                d2[edge][tri] += face_sign * sign as i64;
            }
        }
        let mut d3 = vec![vec![0i64; n]; f];
        for tet in 0..n {
            for facet in 0..4 {
                let face_sign = if facet % 2 == 0 { 1 } else { -1 };
                d3[t.triangle(tet, facet)][tet] += face_sign * t.triangle_sign(tet, facet) as i64;
            }
        }
        ChainComplexZ { d1, d2, d3 }
    }
}

impl ChainComplexZ2 {
    pub fn new(t: &Triangulation) -> Self {
        let (v, e, f, n) = (t.vertex_count(), t.edge_count(), t.triangle_count(), t.size());
        let mut d1 = Z2Matrix::zeros(v, e);
        for edge in 0..e {
            let (tail, head) = t.edge_endpoints(edge);
            d1.flip(tail, edge);
            d1.flip(head, edge);
        }
        let mut d2 = Z2Matrix::zeros(e, f);
        for tri in 0..f {
            for (edge, _) in t.triangle_edges(tri) {
                d2.flip(edge, tri);
            }
        }
        let mut d3 = Z2Matrix::zeros(f, n);
        for tet in 0..n {
            for facet in 0..4 {
                d3.flip(t.triangle(tet, facet), tet);
            }
        }
        ChainComplexZ2 { d1, d2, d3 }
    }
}

fn require_closed(t: &Triangulation) -> Result<(), HomologyError> {
    for tet in 0..t.size() {
        for facet in 0..4 {
            if t.gluing(tet, facet).is_none() {
                return Err(HomologyError::NotClosed { tet, facet });
            }
        }
    }
    Ok(())
}

/// `(β0, β1)` with Z2 coefficients.
pub fn betti_z2(t: &Triangulation) -> Result<(usize, usize), HomologyError> {
    require_closed(t)?;
    let c = ChainComplexZ2::new(t);
    let e = t.edge_count();
    let rank1 = c.d1.rank();
    let rank2 = c.d2.rank();
    Ok((t.vertex_count() - rank1, e - rank1 - rank2))
}

/// Triangle × edge incidence mod 2 (multiplicity counted), the system whose
/// kernel is the cocycle space.
pub fn triangle_parity_system(t: &Triangulation) -> Z2Matrix {
    let mut m = Z2Matrix::zeros(t.triangle_count(), t.edge_count());
    for tri in 0..t.triangle_count() {
        for (edge, _) in t.triangle_edges(tri) {
            m.flip(tri, edge);
        }
    }
    m
}

/// Basis of `{θ : E → Z2 | every triangle has even colour sum}`. For a
/// one-vertex triangulation its dimension is β1(Z2); in general it is
/// `β1 + v − β0`.
pub fn adm3_basis(t: &Triangulation) -> Vec<Z2Vector> {
    triangle_parity_system(t).kernel_basis()
}

/// Row space of the vertex coboundary: the cocycles cohomologous to zero.
pub fn coboundaries(t: &Triangulation) -> Echelon {
    let c = ChainComplexZ2::new(t);
    c.d1.echelon()
}

/// `H1(T; Z) ≅ Z^free_rank ⊕ Z/d1 ⊕ … ⊕ Z/dk` with `1 < d1 | … | dk`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegralH1 {
    pub free_rank: usize,
    pub torsion: Vec<BigUint>,
}

impl IntegralH1 {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Rank of `H1 ⊗ Z2`.
    pub fn z2_rank(&self) -> usize {
        self.free_rank + self.torsion.iter().filter(|d| !d.bit(0)).count()
    }

    pub fn torsion_order(&self) -> BigUint {
        torsion_order(&self.torsion)
    }
}

impl fmt::Display for IntegralH1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        f.write_str(&parts.join(" + "))
    }
}

/// Integral first homology from the Smith normal form of `∂2`; the free rank
/// is `dim ker ∂1 − rank ∂2`.
pub fn integral_h1(t: &Triangulation) -> IntegralH1 {
    let c = ChainComplexZ::new(t);
    let rank1 = integer_rank(&c.d1);
    let factors = invariant_factors(&c.d2);
    let rank2 = factors.len();
    let torsion = factors.into_iter().filter(|d| !d.is_one()).collect();
    IntegralH1 {
        free_rank: t.edge_count() - rank1 - rank2,
        torsion,
    }
}

/// Checks `∂1∂2 = 0` and `∂2∂3 = 0` over Z and over Z2.
pub fn boundaries_compose_to_zero(t: &Triangulation) -> bool {
    let z = ChainComplexZ::new(t);
    let product_zero = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| {
        a.iter().all(|row| {
            let cols = b.first().map_or(0, Vec::len);
            (0..cols).all(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum::<i64>() == 0)
        })
    };
    let z2 = ChainComplexZ2::new(t);
    let z2_zero = |a: &Z2Matrix, b: &Z2Matrix| a.mul(b).map(|m| m.is_zero()).unwrap_or(false);
    product_zero(&z.d1, &z.d2)
        && product_zero(&z.d2, &z.d3)
        && z2_zero(&z2.d1, &z2.d2)
        && z2_zero(&z2.d2, &z2.d3)
}

/// Whether `θ` satisfies every triangle parity constraint.
pub fn is_cocycle(t: &Triangulation, theta: &Z2Vector) -> bool {
    (0..t.triangle_count()).all(|tri| {
        let (tet, facet) = t.triangle_rep(tri);
        !face_edge_slots(facet)
            .iter()
            .fold(false, |acc, &s| acc ^ theta.get(t.edge(tet, s)))
    })
}
