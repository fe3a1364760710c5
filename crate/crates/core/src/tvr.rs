//! Brute-force state sums.
//!
//! [`tv_r_bruteforce`] evaluates the general `TV(r,q)` weights in complex
//! floating point by backtracking over all admissible colourings.
//! [`tv4_bruteforce_exact`] enumerates the `r = 4` colourings and weighs each
//! one exactly as `(−1)^α z^χ`, where `α` counts octagons.
//!
//! Colours are stored doubled: colour `i ∈ {0, ½, …, (r−2)/2}` is `2i`.

use crate::triang::{face_edge_slots, Triangulation};
use crate::tv4::{reduce, surface_stats, z_sign, DyadicSqrt2, Tv4Error};
use crate::z2::Z2Vector;
use num_bigint::BigUint;
use num_complex::Complex64;
use num_integer::Integer;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::atomic::{AtomicU64, Ordering};
use thiserror::Error;

/// Default cap on search nodes visited by the backtracking enumerations.
pub const DEFAULT_BUDGET: u64 = 387_420_489; // 3^18

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TvrError {
    #[error("invalid parameters r = {r}, q = {q}: need r >= 3, 0 < q < 2r, gcd(r, q) = 1")]
    InvalidParameters { r: u32, q: u32 },
    #[error("enumeration budget of {budget} search nodes exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("colours {colours:?} are not admissible")]
    Inadmissible { colours: Vec<u8> },
    #[error("triangulation is not closed")]
    NotClosed,
    #[error(transparent)]
    Tv4(#[from] Tv4Error),
}

/// Quantum integers at `ζ = exp(iπq/r)`.
#[derive(Clone, Debug)]
pub struct QuantumRing {
    r: u32,
    q: u32,
    zeta: Complex64,
    brackets: Vec<Complex64>,
    factorials: Vec<Complex64>,
}

impl QuantumRing {
    pub fn new(r: u32, q: u32) -> Result<Self, TvrError> {
        if r < 3 || q == 0 || q >= 2 * r || r.gcd(&q) != 1 {
            return Err(TvrError::InvalidParameters { r, q });
        }
        let zeta = Complex64::from_polar(1.0, PI * q as f64 / r as f64);
        let denom = zeta - zeta.inv();
        let top = 3 * r as usize + 2;
        let mut brackets = vec![Complex64::new(1.0, 0.0)];
        brackets.extend((1..=top).map(|i| (zeta.powi(i as i32) - zeta.powi(-(i as i32))) / denom));
        // [r] vanishes exactly, so every factorial from [r]! on is zero.
        let mut factorials = Vec::with_capacity(top + 1);
        let mut acc = Complex64::new(1.0, 0.0);
        for (i, b) in brackets.iter().enumerate() {
            acc = if i >= r as usize { Complex64::new(0.0, 0.0) } else { acc * b };
            factorials.push(acc);
        }
        Ok(QuantumRing {
            r,
            q,
            zeta,
            brackets,
            factorials,
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn zeta(&self) -> Complex64 {
        self.zeta
    }

    /// `[i]`, with `[0] = 1`.
    pub fn bracket(&self, i: usize) -> Complex64 {
        self.brackets[i]
    }

    /// `[i]! = [i][i−1]…[1][0]`.
    pub fn factorial(&self, i: usize) -> Complex64 {
        self.factorials[i]
    }

    /// Number of colours, `r − 1`.
    pub fn colour_count(&self) -> u8 {
        (self.r - 1) as u8
    }

    pub fn vertex_weight(&self) -> Complex64 {
        let d = self.zeta - self.zeta.inv();
        Complex64::new(d.norm_sqr() / (2.0 * self.r as f64), 0.0)
    }

    /// Weight of an edge of doubled colour `c`: `(−1)^c [c+1]`.
    pub fn edge_weight(&self, c: u8) -> Complex64 {
        let w = self.bracket(c as usize + 1);
        if c % 2 == 1 {
            -w
        } else {
            w
        }
    }

    /// Parity, triangle inequalities and the upper bound, on doubled colours.
    pub fn triangle_admissible(&self, a: u8, b: u8, c: u8) -> bool {
        let (a, b, c) = (a as u32, b as u32, c as u32);
        (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b && a + b + c <= 2 * (self.r - 2)
    }

    pub fn triangle_weight(&self, a: u8, b: u8, c: u8) -> Result<Complex64, TvrError> {
        if !self.triangle_admissible(a, b, c) {
            return Err(TvrError::Inadmissible { colours: vec![a, b, c] });
        }
        let (a, b, c) = (a as usize, b as usize, c as usize);
        let s = (a + b + c) / 2;
        let num = self.factorial(s - c) * self.factorial(s - b) * self.factorial(s - a);
        let w = num / self.factorial(s + 1);
        Ok(if s % 2 == 1 { -w } else { w })
    }

    /// Weight of a tetrahedron whose slots `0..6` carry doubled colours `c`.
    pub fn tet_weight(&self, c: [u8; 6]) -> Result<Complex64, TvrError> {
        for f in 0..4 {
            let [x, y, z] = face_edge_slots(f).map(|s| c[s]);
            if !self.triangle_admissible(x, y, z) {
                return Err(TvrError::Inadmissible { colours: c.to_vec() });
            }
        }
        let i = c.map(|x| x as usize);
        let tri = [
            (i[0] + i[1] + i[3]) / 2,
            (i[0] + i[2] + i[4]) / 2,
            (i[1] + i[2] + i[5]) / 2,
            (i[3] + i[4] + i[5]) / 2,
        ];
        let quad = [
            (i[0] + i[1] + i[4] + i[5]) / 2,
            (i[0] + i[2] + i[3] + i[5]) / 2,
            (i[1] + i[2] + i[3] + i[4]) / 2,
        ];
        let lo = *tri.iter().max().expect("four triangles");
        let hi = *quad.iter().min().expect("three quads");
        let mut sum = Complex64::new(0.0, 0.0);
        for z in lo..=hi {
            let tau: Complex64 = tri.iter().map(|&t| self.factorial(z - t)).product();
            let kappa: Complex64 = quad.iter().map(|&k| self.factorial(k - z)).product();
            let term = self.factorial(z + 1) / (tau * kappa);
            sum += if z % 2 == 1 { -term } else { term };
        }
        Ok(sum)
    }
}

/// Backtracking over edge colourings with triangle admissibility checked as
/// soon as a triangle's last edge is coloured.
struct Search<'a> {
    colours: u8,
    admissible: &'a (dyn Fn(u8, u8, u8) -> bool + Sync),
    tri_edges: Vec<[usize; 3]>,
    closing: Vec<Vec<usize>>,
    budget: u64,
    visited: &'a AtomicU64,
}

impl<'a> Search<'a> {
    fn new(t: &Triangulation, colours: u8, admissible: &'a (dyn Fn(u8, u8, u8) -> bool + Sync), budget: u64, visited: &'a AtomicU64) -> Self {
        let tri_edges: Vec<[usize; 3]> = (0..t.triangle_count()).map(|f| t.triangle_edges(f).map(|(e, _)| e)).collect();
        let mut closing = vec![Vec::new(); t.edge_count()];
        for (f, edges) in tri_edges.iter().enumerate() {
            closing[*edges.iter().max().expect("three edges")].push(f);
        }
        Search {
            colours,
            admissible,
            tri_edges,
            closing,
            budget,
            visited,
        }
    }

    fn run(&self, first: Option<u8>, visit: &mut dyn FnMut(&[u8])) -> Result<(), TvrError> {
        let mut colouring = vec![0u8; self.closing.len()];
        match first {
            Some(c) if !colouring.is_empty() => {
                colouring[0] = c;
                if self.tick()? && self.consistent(&colouring, 0) {
                    self.descend(&mut colouring, 1, visit)?;
                }
                Ok(())
            }
            _ => self.descend(&mut colouring, 0, visit),
        }
    }

    fn tick(&self) -> Result<bool, TvrError> {
        if self.visited.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(TvrError::BudgetExceeded { budget: self.budget });
        }
        Ok(true)
    }

    fn consistent(&self, colouring: &[u8], edge: usize) -> bool {
        self.closing[edge].iter().all(|&f| {
            let [a, b, c] = self.tri_edges[f].map(|e| colouring[e]);
            (self.admissible)(a, b, c)
        })
    }

    fn descend(&self, colouring: &mut Vec<u8>, edge: usize, visit: &mut dyn FnMut(&[u8])) -> Result<(), TvrError> {
        if edge == colouring.len() {
            visit(colouring);
            return Ok(());
        }
        for c in 0..self.colours {
            self.tick()?;
            colouring[edge] = c;
            if self.consistent(colouring, edge) {
                self.descend(colouring, edge + 1, visit)?;
            }
        }
        Ok(())
    }
}

fn require_closed(t: &Triangulation) -> Result<(), TvrError> {
    if t.is_closed() {
        Ok(())
    } else {
        Err(TvrError::NotClosed)
    }
}

/// Full weight of one colouring, vertex weights included.
pub fn colouring_weight(ring: &QuantumRing, t: &Triangulation, colouring: &[u8]) -> Result<Complex64, TvrError> {
    let mut w = ring.vertex_weight().powi(t.vertex_count() as i32);
    for &c in colouring {
        w *= ring.edge_weight(c);
    }
    for f in 0..t.triangle_count() {
        let [a, b, c] = t.triangle_edges(f).map(|(e, _)| colouring[e]);
        w *= ring.triangle_weight(a, b, c)?;
    }
    for tet in 0..t.size() {
        w *= ring.tet_weight(t.tet_edges(tet).map(|e| colouring[e]))?;
    }
    Ok(w)
}

/// `TV(r,q)` by backtracking, including vertex weights. Parallel over the
/// colour of edge 0; partial sums are added in colour order.
pub fn tv_r_bruteforce(t: &Triangulation, r: u32, q: u32, budget: u64) -> Result<Complex64, TvrError> {
    require_closed(t)?;
    let ring = QuantumRing::new(r, q)?;
    let visited = AtomicU64::new(0);
    let admissible = |a, b, c| ring.triangle_admissible(a, b, c);
    let search = Search::new(t, ring.colour_count(), &admissible, budget, &visited);
    let partial: Vec<Result<Complex64, TvrError>> = (0..ring.colour_count())
        .into_par_iter()
        .map(|c0| {
            let mut sum = Complex64::new(0.0, 0.0);
            let mut failure = None;
            search.run(Some(c0), &mut |col| match colouring_weight(&ring, t, col) {
                Ok(w) => sum += w,
                Err(e) => failure = Some(e),
            })?;
            failure.map_or(Ok(sum), Err)
        })
        .collect();
    partial.into_iter().sum()
}

/// Number of admissible `TV(r,·)` colourings, by backtracking.
pub fn count_admissible(t: &Triangulation, r: u32, budget: u64) -> Result<u64, TvrError> {
    let ring = QuantumRing::new(r, 1)?;
    let visited = AtomicU64::new(0);
    let admissible = |a, b, c| ring.triangle_admissible(a, b, c);
    let search = Search::new(t, ring.colour_count(), &admissible, budget, &visited);
    let mut count = 0u64;
    search.run(None, &mut |_| count += 1)?;
    Ok(count)
}

/// Every admissible `r = 4` colouring (doubled colours), in lexicographic
/// order of the edge colour vector.
pub fn adm4_colourings(t: &Triangulation, budget: u64) -> Result<Vec<Vec<u8>>, TvrError> {
    let ring = QuantumRing::new(4, 1)?;
    let visited = AtomicU64::new(0);
    let admissible = |a, b, c| ring.triangle_admissible(a, b, c);
    let search = Search::new(t, 3, &admissible, budget, &visited);
    let mut out = Vec::new();
    search.run(None, &mut |c| out.push(c.to_vec()))?;
    Ok(out)
}

/// Shape of a tetrahedron under an `r = 4` colouring, for sign bookkeeping.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum SignChange {
    None,
    /// Two opposite edges coloured 1, the rest ½.
    Octagon,
    /// Any other tetrahedron whose weight flips sign under reduction.
    Other,
}

fn tet_sign_change(c: [u8; 6]) -> SignChange {
    let ones = c.iter().filter(|&&x| x == 2).count();
    let halves = c.iter().filter(|&&x| x == 1).count();
    match (ones, halves) {
        (2, 4) => SignChange::Octagon,
        (1, 4) | (2, 3) => SignChange::Other,
        _ => SignChange::None,
    }
}

/// Result of [`tv4_bruteforce_exact`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactBruteForce {
    /// State sum without vertex weights.
    pub raw: DyadicSqrt2,
    /// `|Adm(T,4)|`.
    pub colourings: u64,
    pub b_plus: BTreeMap<i64, BigUint>,
    pub b_minus: BTreeMap<i64, BigUint>,
    /// Lifts with even and odd octagon count, per reduced colouring.
    pub per_class: BTreeMap<Z2Vector, (u64, u64)>,
    /// Whether `(−1)^γ = (−1)^α` held for every colouring, where `γ` counts
    /// all faces whose weight changes sign under reduction.
    pub gamma_agrees: bool,
}

/// Exact `r = 4` state sum by enumeration of `Adm(T,4)`.
pub fn tv4_bruteforce_exact(t: &Triangulation, q: u32, budget: u64) -> Result<ExactBruteForce, TvrError> {
    require_closed(t)?;
    let sign = z_sign(q)?;
    let mut out = ExactBruteForce {
        raw: DyadicSqrt2::zero(),
        colourings: 0,
        b_plus: BTreeMap::new(),
        b_minus: BTreeMap::new(),
        per_class: BTreeMap::new(),
        gamma_agrees: true,
    };
    let mut signed_by_chi: BTreeMap<i64, i64> = BTreeMap::new();
    for c in adm4_colourings(t, budget)? {
        let mut alpha = 0usize;
        let mut gamma = 0usize;
        for tet in 0..t.size() {
            match tet_sign_change(t.tet_edges(tet).map(|e| c[e])) {
                SignChange::Octagon => {
                    alpha += 1;
                    gamma += 1;
                }
                SignChange::Other => gamma += 1,
                SignChange::None => {}
            }
        }
        for f in 0..t.triangle_count() {
            let mut cols = t.triangle_edges(f).map(|(e, _)| c[e]);
            cols.sort_unstable();
            if cols == [1, 1, 2] {
                gamma += 1;
            }
        }
        out.gamma_agrees &= alpha % 2 == gamma % 2;
        let theta = reduce(&c);
        let chi = surface_stats(t, &theta)?.chi;
        let even = alpha.is_multiple_of(2);
        *signed_by_chi.entry(chi).or_default() += if even { 1 } else { -1 };
        let table = if even { &mut out.b_plus } else { &mut out.b_minus };
        *table.entry(chi).or_default() += 1u32;
        let counts = out.per_class.entry(theta).or_default();
        if even {
            counts.0 += 1;
        } else {
            counts.1 += 1;
        }
        out.colourings += 1;
    }
    out.raw = signed_by_chi
        .into_iter()
        .map(|(chi, n)| DyadicSqrt2::from_int(n) * DyadicSqrt2::signed_sqrt2_pow(sign, chi))
        .sum();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triang::{generate_lens_space, parse_triangulation};

    const TOL: f64 = 1e-12;

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() < tol
    }

    #[test]
    fn bracket_identities() {
        for r in 3..=9u32 {
            for q in 1..2 * r {
                let Ok(ring) = QuantumRing::new(r, q) else { continue };
                assert!(ring.bracket(r as usize).norm() < TOL, "[r] at r={r}, q={q}");
                for i in r as usize..=2 * r as usize {
                    assert!(ring.factorial(i).norm() < TOL);
                }
                assert!(close(ring.bracket(1), Complex64::new(1.0, 0.0), TOL));
            }
        }
        assert!(QuantumRing::new(4, 2).is_err());
        assert!(QuantumRing::new(2, 1).is_err());
    }

    #[test]
    fn r4_weight_table() {
        let s2 = std::f64::consts::SQRT_2;
        for (q, z) in [(1u32, -s2), (7, -s2), (3, s2), (5, s2)] {
            let ring = QuantumRing::new(4, q).unwrap();
            let re = |x: f64| Complex64::new(x, 0.0);
            assert!(close(ring.bracket(2), re(-z), TOL));
            assert!(close(ring.bracket(3), re(1.0), TOL));
            assert!(close(ring.vertex_weight(), re(0.25), TOL));
            assert!(close(ring.edge_weight(0), re(1.0), TOL));
            assert!(close(ring.edge_weight(1), re(z), TOL));
            assert!(close(ring.edge_weight(2), re(1.0), TOL));
            assert!(close(ring.triangle_weight(0, 0, 0).unwrap(), re(1.0), TOL));
            assert!(close(ring.triangle_weight(0, 1, 1).unwrap(), re(1.0 / z), TOL));
            assert!(close(ring.triangle_weight(1, 1, 2).unwrap(), re(-1.0 / z), TOL));
            assert!(close(ring.triangle_weight(0, 2, 2).unwrap(), re(1.0), TOL));
            // Normal triangle, quad and octagon pieces.
            assert!(close(ring.tet_weight([1, 1, 1, 0, 0, 0]).unwrap(), re(z), TOL));
            assert!(close(ring.tet_weight([0, 1, 1, 1, 1, 0]).unwrap(), re(z), TOL));
            assert!(close(ring.tet_weight([2, 1, 1, 1, 1, 2]).unwrap(), re(-z), TOL));
            assert!(ring.triangle_weight(0, 0, 1).is_err());
        }
    }

    #[test]
    fn reduction_changes_only_flagged_tetrahedra() {
        // For every admissible r = 4 tetrahedron colouring, the weight of the
        // colouring and of its reduction differ exactly by the flagged sign.
        let ring = QuantumRing::new(4, 1).unwrap();
        let mut seen = 0;
        for code in 0..729u32 {
            let mut c = [0u8; 6];
            let mut x = code;
            for slot in c.iter_mut() {
                *slot = (x % 3) as u8;
                x /= 3;
            }
            let Ok(w) = ring.tet_weight(c) else { continue };
            seen += 1;
            let reduced = c.map(|x| if x == 2 { 0 } else { x });
            let w0 = ring.tet_weight(reduced).unwrap();
            let flip = tet_sign_change(c) != SignChange::None;
            let expected = if flip { -w0 } else { w0 };
            assert!(close(w, expected, 1e-12), "{c:?}: {w} vs {expected}");
        }
        assert!(seen > 0);
    }

    #[test]
    fn backtracking_matches_unpruned_filter() {
        let t = generate_lens_space(5, 2).unwrap();
        for r in 3..=5u32 {
            let ring = QuantumRing::new(r, 1).unwrap();
            let k = ring.colour_count() as u32;
            let e = t.edge_count() as u32;
            let mut naive = 0;
            for code in 0..k.pow(e) {
                let col: Vec<u8> = (0..e).map(|i| ((code / k.pow(i)) % k) as u8).collect();
                let ok = (0..t.triangle_count()).all(|f| {
                    let [a, b, c] = t.triangle_edges(f).map(|(x, _)| col[x]);
                    ring.triangle_admissible(a, b, c)
                });
                naive += ok as u64;
            }
            assert_eq!(count_admissible(&t, r, DEFAULT_BUDGET).unwrap(), naive);
        }
    }

    #[test]
    fn all_zero_colouring_contributes_one() {
        let t = generate_lens_space(7, 2).unwrap();
        let res = tv4_bruteforce_exact(&t, 1, DEFAULT_BUDGET).unwrap();
        let zero = Z2Vector::zeros(t.edge_count());
        assert!(res.per_class[&zero].0 >= 1);
        assert!(res.gamma_agrees);
    }

    #[test]
    fn budget_is_enforced() {
        let t = parse_triangulation("tets 2\n1:0123 1:0123 1:0123 1:0123\n0:0123 0:0123 0:0123 0:0123\n").unwrap();
        assert_eq!(tv_r_bruteforce(&t, 5, 1, 10), Err(TvrError::BudgetExceeded { budget: 10 }));
        assert!(tv_r_bruteforce(&t, 5, 1, DEFAULT_BUDGET).is_ok());
    }

    #[test]
    fn sphere_has_unit_normalised_invariant() {
        // The one-tetrahedron 3-sphere: TV(r,q)(S³) is |v| for this weighting.
        let t = generate_lens_space(1, 0).unwrap();
        for (r, q) in [(3u32, 1u32), (4, 1), (4, 3), (5, 1), (5, 3), (6, 1)] {
            let ring = QuantumRing::new(r, q).unwrap();
            let v = tv_r_bruteforce(&t, r, q, DEFAULT_BUDGET).unwrap();
            assert!(close(v, ring.vertex_weight(), 1e-9), "r={r} q={q}: {v}");
        }
    }
}
