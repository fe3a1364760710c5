//! Exact `TV(4,q)` by summing over Z2 cocycles.
//!
//! For a cocycle `θ` (colours 0 and ½) the admissible `r = 4` colourings
//! reducing to `θ` are the lifts where every 0-edge may become 1 subject to
//! the triangles of type `(0,0,0)` staying even. All of them weigh
//! `±z^χ(S_θ)`, with the sign given by the parity of the number of octagons,
//! which is a quadratic form on the lift space. Counting its zeros gives the
//! class sum in closed form.

mod dyadic;
mod laurent;

pub use dyadic::DyadicSqrt2;
pub use laurent::LaurentZ;

use crate::homology::{adm3_basis, betti_z2, coboundaries, HomologyError};
use crate::triang::{ManifoldError, Triangulation};
use crate::z2::{CanonicalForm, Echelon, QuadraticFormZ2, Z2Matrix, Z2Vector};
use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use std::collections::BTreeMap;
use thiserror::Error;

/// Edge slots meeting at each corner of a tetrahedron.
const CORNER_STARS: [u8; 4] = [0b000111, 0b011001, 0b101010, 0b110100];
/// Opposite slot pairs as bit masks.
const OPPOSITE_PAIRS: [(usize, usize); 3] = [(0, 5), (1, 4), (2, 3)];

/// Largest cocycle space that [`tv4_compute`] will enumerate.
pub const MAX_CLASS_SPACE_DIM: usize = 40;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Tv4Error {
    #[error("q = {0} is not one of 1, 3, 5, 7")]
    InvalidQ(u32),
    #[error("not a closed 3-manifold: {0}")]
    NotClosed(#[from] ManifoldError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error("colouring has {found} entries, triangulation has {expected} edges")]
    WrongLength { expected: usize, found: usize },
    #[error("colouring is not admissible on triangle {triangle}")]
    Inadmissible { triangle: usize },
    #[error("tetrahedron {tet} has half-coloured edge pattern {mask:06b}, which admissible colourings cannot produce")]
    TetrahedronPattern { tet: usize, mask: u8 },
    #[error("cocycle space has dimension {0}, above the enumeration limit")]
    TooManyClasses(usize),
    #[error("could not start worker pool: {0}")]
    WorkerPool(String),
}

/// `z = -[2]`: `-√2` for `q ∈ {1, 7}`, `+√2` for `q ∈ {3, 5}`. Returned as
/// the sign of `z`.
pub fn z_sign(q: u32) -> Result<i8, Tv4Error> {
    match q {
        1 | 7 => Ok(-1),
        3 | 5 => Ok(1),
        _ => Err(Tv4Error::InvalidQ(q)),
    }
}

/// An `r = 3` colouring: bit set means colour ½.
pub type Colouring3 = Z2Vector;

/// An `r = 4` colouring stored as doubled colours `0, 1, 2` for `0, ½, 1`.
pub type Colouring4 = Vec<u8>;

/// Colour 1 becomes 0, ½ stays ½.
pub fn reduce(c4: &[u8]) -> Colouring3 {
    Z2Vector::from_bits(c4.iter().map(|&c| c == 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TetType {
    Empty,
    /// Three ½-edges around one corner: a normal triangle.
    Triangle,
    /// Four ½-edges, the two 0-edges opposite: a normal quadrilateral.
    Quad,
}

/// Mask of slots of `tet` coloured ½ by `theta`.
fn half_mask(t: &Triangulation, tet: usize, theta: &Z2Vector) -> u8 {
    (0..6).fold(0u8, |m, s| m | ((theta.get(t.edge(tet, s)) as u8) << s))
}

fn classify_tet(t: &Triangulation, tet: usize, theta: &Z2Vector) -> Result<TetType, Tv4Error> {
    let mask = half_mask(t, tet, theta);
    if mask == 0 {
        return Ok(TetType::Empty);
    }
    if CORNER_STARS.contains(&mask) {
        return Ok(TetType::Triangle);
    }
    if OPPOSITE_PAIRS.iter().any(|&(x, y)| mask == 0b111111 & !(1 << x | 1 << y)) {
        return Ok(TetType::Quad);
    }
    Err(Tv4Error::TetrahedronPattern { tet, mask })
}

fn check_length(t: &Triangulation, theta: &Z2Vector) -> Result<(), Tv4Error> {
    if theta.len() != t.edge_count() {
        return Err(Tv4Error::WrongLength {
            expected: t.edge_count(),
            found: theta.len(),
        });
    }
    Ok(())
}

/// Number of ½-edges of a triangle, with multiplicity.
fn triangle_halves(t: &Triangulation, tri: usize, theta: &Z2Vector) -> usize {
    t.triangle_edges(tri).iter().filter(|(e, _)| theta.get(*e)).count()
}

/// Cell counts of the surface `S_θ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceStats {
    /// Edges coloured ½ (surface vertices).
    pub m0: usize,
    /// Triangles of type (0,½,½) (surface edges).
    pub m1: usize,
    pub m_tri: usize,
    pub m_quad: usize,
    pub chi: i64,
}

pub fn surface_stats(t: &Triangulation, theta: &Colouring3) -> Result<SurfaceStats, Tv4Error> {
    check_length(t, theta)?;
    let m0 = theta.count_ones();
    let mut m1 = 0;
    for tri in 0..t.triangle_count() {
        match triangle_halves(t, tri, theta) {
            0 => {}
            2 => m1 += 1,
            _ => return Err(Tv4Error::Inadmissible { triangle: tri }),
        }
    }
    let (mut m_tri, mut m_quad) = (0, 0);
    for tet in 0..t.size() {
        match classify_tet(t, tet, theta)? {
            TetType::Empty => {}
            TetType::Triangle => m_tri += 1,
            TetType::Quad => m_quad += 1,
        }
    }
    let chi = m0 as i64 - m1 as i64 + m_tri as i64 + m_quad as i64;
    Ok(SurfaceStats {
        m0,
        m1,
        m_tri,
        m_quad,
        chi,
    })
}

/// Edge classes split by their role in the lift space of `θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgePartition {
    /// Coloured ½.
    pub e0: Vec<usize>,
    /// Coloured 0 and in some (0,0,0) triangle.
    pub e1: Vec<usize>,
    /// Coloured 0, only in (0,½,½) triangles.
    pub e2: Vec<usize>,
}

impl EdgePartition {
    /// Position of each edge among the lift coordinates `E1 ++ E2`.
    pub fn coordinates(&self, edge_count: usize) -> Vec<Option<usize>> {
        let mut coord = vec![None; edge_count];
        for (i, &e) in self.e1.iter().chain(&self.e2).enumerate() {
            coord[e] = Some(i);
        }
        coord
    }

    pub fn lift_len(&self) -> usize {
        self.e1.len() + self.e2.len()
    }
}

pub fn edge_partition(t: &Triangulation, theta: &Colouring3) -> Result<EdgePartition, Tv4Error> {
    check_length(t, theta)?;
    let e = t.edge_count();
    let mut in_zero_triangle = vec![false; e];
    for tri in 0..t.triangle_count() {
        match triangle_halves(t, tri, theta) {
            0 => t.triangle_edges(tri).iter().for_each(|(edge, _)| in_zero_triangle[*edge] = true),
            2 => {}
            _ => return Err(Tv4Error::Inadmissible { triangle: tri }),
        }
    }
    let mut part = EdgePartition {
        e0: Vec::new(),
        e1: Vec::new(),
        e2: Vec::new(),
    };
    for edge in 0..e {
        if theta.get(edge) {
            part.e0.push(edge);
        } else if in_zero_triangle[edge] {
            part.e1.push(edge);
        } else {
            part.e2.push(edge);
        }
    }
    Ok(part)
}

/// The matrix `M` whose columns parametrise the lifts of `θ`, and the
/// kernel dimension `m` of the (0,0,0)-triangle system on `E1`.
///
/// Rows are the lift coordinates `E1 ++ E2`; the first `m` columns are the
/// kernel basis, the rest are unit vectors on `E2`.
pub fn colouring_space(t: &Triangulation, theta: &Colouring3, part: &EdgePartition) -> (Z2Matrix, usize) {
    let coord = part.coordinates(t.edge_count());
    let n1 = part.e1.len();
    let mut system_rows = Vec::new();
    for tri in 0..t.triangle_count() {
        if triangle_halves(t, tri, theta) != 0 {
            continue;
        }
        let mut row = Z2Vector::zeros(n1);
        for (edge, _) in t.triangle_edges(tri) {
            row.flip(coord[edge].expect("edges of a (0,0,0) triangle lie in E1"));
        }
        system_rows.push(row);
    }
    let system = Z2Matrix::from_rows(n1, system_rows).expect("rows sized to E1");
    let kernel = system.kernel_basis();
    let m = kernel.len();
    let rows = part.lift_len();
    let mut columns: Vec<Z2Vector> = kernel
        .into_iter()
        .map(|b| Z2Vector::from_bits(b.iter().chain(std::iter::repeat_n(false, part.e2.len()))))
        .collect();
    columns.extend((n1..rows).map(|i| Z2Vector::unit(rows, i)));
    (Z2Matrix::from_columns(rows, &columns).expect("columns sized to lift coordinates"), m)
}

/// Octagon parity as a quadratic form on the lift parameters: `vᵀRv` is the
/// number of octagons, mod 2, of the lift `M·v`.
pub fn octagon_form(t: &Triangulation, theta: &Colouring3, part: &EdgePartition, m: &Z2Matrix) -> Result<QuadraticFormZ2, Tv4Error> {
    let coord = part.coordinates(t.edge_count());
    let mut terms = Vec::new();
    for tet in 0..t.size() {
        if classify_tet(t, tet, theta)? != TetType::Quad {
            continue;
        }
        let mask = half_mask(t, tet, theta);
        let &(xs, ys) = OPPOSITE_PAIRS
            .iter()
            .find(|&&(x, y)| mask & (1 << x | 1 << y) == 0)
            .expect("quad tetrahedron has a 0-coloured opposite pair");
        let cx = coord[t.edge(tet, xs)].expect("0-edge has a lift coordinate");
        let cy = coord[t.edge(tet, ys)].expect("0-edge has a lift coordinate");
        terms.push((cx, cy));
    }
    let q = QuadraticFormZ2::from_terms(part.lift_len(), &terms);
    Ok(q.conjugate(m).expect("M has one row per lift coordinate"))
}

/// Which entry of the triple invariant a class feeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Bucket {
    /// `θ` is a coboundary (for one-vertex inputs: `θ = 0`).
    Trivial = 0,
    /// Non-trivial, `χ(S_θ)` even.
    EvenChi = 1,
    /// `χ(S_θ)` odd.
    OddChi = 2,
}

/// Everything computed for one cocycle; independent of `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassRecord {
    pub theta: Z2Vector,
    pub coboundary: bool,
    pub stats: SurfaceStats,
    /// Dimension `m + |E2|` of the lift space.
    pub dim: usize,
    pub canonical: CanonicalForm,
    /// Lifts with an even number of octagons.
    pub zeros: BigUint,
    /// `2·zeros − 2^dim`.
    pub signed_count: BigInt,
}

impl ClassRecord {
    pub fn bucket(&self) -> Bucket {
        if self.coboundary {
            Bucket::Trivial
        } else if self.stats.chi % 2 == 0 {
            Bucket::EvenChi
        } else {
            Bucket::OddChi
        }
    }

    /// Lifts with an odd number of octagons.
    pub fn odd(&self) -> BigUint {
        (BigUint::from(1u32) << self.dim) - &self.zeros
    }

    /// `signed_count · z^χ` with `z = sign·√2`.
    pub fn contribution(&self, sign: i8) -> DyadicSqrt2 {
        DyadicSqrt2::from_int(self.signed_count.clone()) * DyadicSqrt2::signed_sqrt2_pow(sign, self.stats.chi)
    }
}

fn record_with(t: &Triangulation, theta: Z2Vector, cob: &Echelon) -> Result<ClassRecord, Tv4Error> {
    let stats = surface_stats(t, &theta)?;
    let part = edge_partition(t, &theta)?;
    let (m, _) = colouring_space(t, &theta, &part);
    let form = octagon_form(t, &theta, &part, &m)?;
    let canonical = form.canonical();
    Ok(ClassRecord {
        coboundary: cob.contains(&theta),
        theta,
        stats,
        dim: canonical.dim,
        zeros: canonical.count_zeros(),
        signed_count: canonical.signed_count(),
        canonical,
    })
}

/// Per-class record for an admissible `θ`.
pub fn class_record(t: &Triangulation, theta: &Colouring3) -> Result<ClassRecord, Tv4Error> {
    record_with(t, theta.clone(), &coboundaries(t))
}

/// `Σ` of the weights (vertex weights omitted) of all lifts of `θ`.
pub fn class_contribution(t: &Triangulation, theta: &Colouring3, q: u32) -> Result<(DyadicSqrt2, ClassRecord), Tv4Error> {
    let sign = z_sign(q)?;
    let record = class_record(t, theta)?;
    Ok((record.contribution(sign), record))
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Tv4Options {
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
}

/// Result of [`tv4_compute`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TVReport {
    pub q: u32,
    pub z_sign: i8,
    pub tetrahedra: usize,
    pub vertices: usize,
    /// First Betti number with Z2 coefficients.
    pub beta1: usize,
    /// Dimension of the enumerated cocycle space (`β1 + v − 1` when connected).
    pub class_space_dim: usize,
    /// One record per cocycle, sorted by `θ`.
    pub classes: Vec<ClassRecord>,
    /// State sum without vertex weights.
    pub raw: DyadicSqrt2,
    /// `raw · (1/4)^v`.
    pub normalized: DyadicSqrt2,
    /// Raw sums over buckets trivial, even `χ`, odd `χ`.
    pub triple_raw: [DyadicSqrt2; 3],
    /// `triple_raw · (1/4)^v`.
    pub triple: [DyadicSqrt2; 3],
    /// `P_T(z) = Σ_θ signed_count(θ) z^χ(θ)`.
    pub polynomial: LaurentZ,
    /// `b⁺_m`: lifts with even octagon count over classes with `χ = m`.
    pub b_plus: BTreeMap<i64, BigUint>,
    /// `b⁻_m`: lifts with odd octagon count over classes with `χ = m`.
    pub b_minus: BTreeMap<i64, BigUint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OctagonParity {
    Even,
    Odd,
}

impl TVReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// `b⁺_m` or `b⁻_m`.
    pub fn b(&self, m: i64, parity: OctagonParity) -> BigUint {
        let table = match parity {
            OctagonParity::Even => &self.b_plus,
            OctagonParity::Odd => &self.b_minus,
        };
        table.get(&m).cloned().unwrap_or_default()
    }

    /// Number of admissible `r = 4` colourings.
    pub fn colouring_count(&self) -> BigUint {
        self.b_plus.values().chain(self.b_minus.values()).sum()
    }

    /// Assembles a report from per-class records in any order.
    pub fn from_records(t: &Triangulation, q: u32, beta1: usize, class_space_dim: usize, mut classes: Vec<ClassRecord>) -> Result<Self, Tv4Error> {
        let sign = z_sign(q)?;
        classes.sort_by(|a, b| a.theta.cmp(&b.theta));
        let mut triple_raw = [DyadicSqrt2::zero(), DyadicSqrt2::zero(), DyadicSqrt2::zero()];
        let mut polynomial = LaurentZ::new();
        let mut b_plus: BTreeMap<i64, BigUint> = BTreeMap::new();
        let mut b_minus: BTreeMap<i64, BigUint> = BTreeMap::new();
        for c in &classes {
            triple_raw[c.bucket() as usize] += &c.contribution(sign);
            polynomial.add_term(c.stats.chi, &c.signed_count);
            *b_plus.entry(c.stats.chi).or_default() += &c.zeros;
            *b_minus.entry(c.stats.chi).or_default() += c.odd();
        }
        let raw: DyadicSqrt2 = triple_raw.iter().sum();
        let shift = -2 * t.vertex_count() as i64;
        Ok(TVReport {
            q,
            z_sign: sign,
            tetrahedra: t.size(),
            vertices: t.vertex_count(),
            beta1,
            class_space_dim,
            normalized: raw.scale_pow2(shift),
            triple: triple_raw.clone().map(|x| x.scale_pow2(shift)),
            raw,
            triple_raw,
            polynomial,
            b_plus,
            b_minus,
            classes,
        })
    }
}

/// Every element of the span of `basis`, indexed by the bits of `i`.
fn span_element(basis: &[Z2Vector], len: usize, i: u64) -> Z2Vector {
    let mut v = Z2Vector::zeros(len);
    for (j, b) in basis.iter().enumerate() {
        if i >> j & 1 == 1 {
            v ^= b;
        }
    }
    v
}

pub fn tv4_compute(t: &Triangulation, q: u32) -> Result<TVReport, Tv4Error> {
    tv4_compute_with(t, q, &Tv4Options::default())
}

/// Enumerates every cocycle, evaluates each class, and assembles the report.
///
/// Inputs with several vertices are accepted; the cocycle space then has
/// dimension `β1 + v − 1`, doubling the work for each extra vertex.
pub fn tv4_compute_with(t: &Triangulation, q: u32, opts: &Tv4Options) -> Result<TVReport, Tv4Error> {
    z_sign(q)?;
    t.check_closed_manifold()?;
    let (_, beta1) = betti_z2(t)?;
    let basis = adm3_basis(t);
    let dim = basis.len();
    if dim > MAX_CLASS_SPACE_DIM {
        return Err(Tv4Error::TooManyClasses(dim));
    }
    if t.vertex_count() > 1 {
        log::warn!(
            "triangulation has {} vertices; enumerating 2^{} cocycles instead of 2^{}",
            t.vertex_count(),
            dim,
            beta1
        );
    }
    let cob = coboundaries(t);
    let e = t.edge_count();
    let work = || {
        (0..1u64 << dim)
            .into_par_iter()
            .map(|i| record_with(t, span_element(&basis, e, i), &cob))
            .collect::<Result<Vec<_>, _>>()
    };
    let classes = match opts.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|err| Tv4Error::WorkerPool(err.to_string()))?
            .install(work)?,
        None => work()?,
    };
    TVReport::from_records(t, q, beta1, dim, classes)
}

/// `b⁺_m` or `b⁻_m` from the per-class zero counts.
pub fn count_by_chi_parity(t: &Triangulation, m: i64, parity: OctagonParity) -> Result<BigUint, Tv4Error> {
    Ok(tv4_compute(t, 1)?.b(m, parity))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triang::{generate_lens_space, parse_triangulation};

    #[test]
    fn z_choice_by_q() {
        assert_eq!(z_sign(1), Ok(-1));
        assert_eq!(z_sign(7), Ok(-1));
        assert_eq!(z_sign(3), Ok(1));
        assert_eq!(z_sign(5), Ok(1));
        assert_eq!(z_sign(2), Err(Tv4Error::InvalidQ(2)));
    }

    #[test]
    fn reduction_drops_colour_one() {
        assert_eq!(reduce(&[0, 0, 0]), Z2Vector::zeros(3));
        assert_eq!(reduce(&[2, 1, 0, 2]).to_string(), "0100");
        assert_eq!(reduce(&[1, 1, 0]).to_string(), "110");
    }

    #[test]
    fn zero_class_on_one_vertex_input() {
        let t = generate_lens_space(8, 1).unwrap();
        let zero = Z2Vector::zeros(t.edge_count());
        let part = edge_partition(&t, &zero).unwrap();
        assert!(part.e0.is_empty() && part.e2.is_empty());
        assert_eq!(part.e1.len(), t.edge_count());
        let stats = surface_stats(&t, &zero).unwrap();
        assert_eq!(stats.chi, 0);
        let (m, dim) = colouring_space(&t, &zero, &part);
        assert_eq!(dim, 1);
        assert_eq!(m.cols(), 1);
        let (c, rec) = class_contribution(&t, &zero, 1).unwrap();
        assert_eq!(c, DyadicSqrt2::from_int(2));
        assert!(rec.canonical.rank == 0 && rec.coboundary);
    }

    #[test]
    fn empty_lift_space_contributes_plus_or_minus_z_power() {
        // All lift coordinates fixed: the contribution is ±z^χ.
        let t = generate_lens_space(4, 1).unwrap();
        for tc in tv4_compute(&t, 1).unwrap().classes {
            if tc.dim == 0 {
                assert_eq!(tc.signed_count.magnitude(), &BigUint::from(1u32));
            }
        }
    }

    #[test]
    fn inadmissible_colouring_is_rejected() {
        let t = generate_lens_space(5, 1).unwrap();
        let mut theta = Z2Vector::zeros(t.edge_count());
        theta.set(0, true);
        assert!(matches!(surface_stats(&t, &theta), Err(Tv4Error::Inadmissible { .. })));
        assert!(matches!(
            surface_stats(&t, &Z2Vector::zeros(1)),
            Err(Tv4Error::WrongLength { .. })
        ));
    }

    #[test]
    fn boundary_input_is_rejected() {
        let t = parse_triangulation("tets 2\n1:0123 1:0123 1:0123 1:0123\n0:0123 0:0123 0:0123 0:0123\n").unwrap();
        assert!(tv4_compute(&t, 1).is_ok());
        let open = Triangulation::new(vec![[None; 4]]).unwrap();
        assert!(matches!(tv4_compute(&open, 1), Err(Tv4Error::NotClosed(_))));
    }

    #[test]
    fn exact_values_for_small_lens_spaces() {
        let one = DyadicSqrt2::one();
        let zero = DyadicSqrt2::zero();
        assert_eq!(tv4_compute(&generate_lens_space(16, 1).unwrap(), 1).unwrap().normalized, one);
        assert_eq!(tv4_compute(&generate_lens_space(16, 3).unwrap(), 1).unwrap().normalized, zero);
        assert_eq!(tv4_compute(&generate_lens_space(8, 3).unwrap(), 1).unwrap().normalized, one);
        assert_eq!(tv4_compute(&generate_lens_space(8, 1).unwrap(), 1).unwrap().normalized, zero);
    }

    #[test]
    fn jobs_do_not_change_the_report() {
        let t = generate_lens_space(24, 5).unwrap();
        let a = tv4_compute_with(&t, 3, &Tv4Options { jobs: Some(1) }).unwrap();
        let b = tv4_compute_with(&t, 3, &Tv4Options { jobs: Some(4) }).unwrap();
        assert_eq!(a, b);
    }
}
