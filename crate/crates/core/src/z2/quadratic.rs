//! Quadratic forms over Z2.
//!
//! A form is `v ↦ vᵀRv` with `R` upper triangular. Diagonal entries are
//! genuine square terms `x_i²`; as functions they act like linear terms
//! since `x² = x` over Z2, and a change of variables keeps them square
//! terms because cross terms of `(Σ c_i x_i)²` vanish in characteristic 2.
//!
//! Canonicalisation splits off hyperbolic blocks `x_1x_2` one at a time
//! (a symplectic Gram-Schmidt on the polar form `R + Rᵀ`). Each block is
//! classified by its four values; what is left is the radical, on which the
//! form is additive. The result is one of the three non-degenerate types
//! plus an all-zero part.

use super::{DimensionMismatch, Z2Matrix, Z2Vector};
use num_bigint::{BigInt, BigUint};
use num_traits::One;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticFormZ2 {
    r: Z2Matrix,
}

/// The three non-degenerate canonical types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormKind {
    /// `x1x2 + … + x_{ℓ-2}x_{ℓ-1} + x_ℓ²`, `ℓ` odd.
    Odd,
    /// `x1x2 + … + x_{ℓ-1}x_ℓ`, `ℓ` even (also the empty form, `ℓ = 0`).
    EvenPlus,
    /// `x1x2 + … + x_{ℓ-1}x_ℓ + x_{ℓ-1}² + x_ℓ²`, `ℓ` even.
    EvenMinus,
}

/// Canonical type of a form: a non-degenerate part of rank `rank` and kind
/// `kind`, direct sum with the zero form in `dim - rank` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CanonicalForm {
    pub rank: usize,
    pub kind: FormKind,
    pub dim: usize,
}

impl CanonicalForm {
    /// Number of zeros, `2^{dim-rank}` times the count of the non-degenerate part.
    pub fn count_zeros(&self) -> BigUint {
        let (k, l) = (self.dim, self.rank);
        if l == 0 {
            return BigUint::one() << k;
        }
        match self.kind {
            FormKind::Odd => BigUint::one() << (k - 1),
            FormKind::EvenPlus => ((BigUint::one() << (l / 2)) + 1u32) << (k - l / 2 - 1),
            FormKind::EvenMinus => ((BigUint::one() << (l / 2)) - 1u32) << (k - l / 2 - 1),
        }
    }

    /// `#zeros − #ones = Σ_v (−1)^{Q(v)}`.
    pub fn signed_count(&self) -> BigInt {
        let (k, l) = (self.dim, self.rank);
        match self.kind {
            _ if l == 0 => BigInt::one() << k,
            FormKind::Odd => BigInt::ZERO,
            FormKind::EvenPlus => BigInt::one() << (k - l / 2),
            FormKind::EvenMinus => -(BigInt::one() << (k - l / 2)),
        }
    }
}

impl QuadraticFormZ2 {
    /// The form `vᵀMv` for a square matrix `M`; the lower triangle is folded
    /// into the upper one.
    pub fn new(m: Z2Matrix) -> Result<Self, DimensionMismatch> {
        if m.rows() != m.cols() {
            return Err(DimensionMismatch {
                expected: m.rows(),
                found: m.cols(),
            });
        }
        let k = m.rows();
        let mut r = Z2Matrix::zeros(k, k);
        for i in 0..k {
            for j in m.row(i).ones() {
                let (a, b) = if i <= j { (i, j) } else { (j, i) };
                r.flip(a, b);
            }
        }
        Ok(QuadraticFormZ2 { r })
    }

    pub fn zero(k: usize) -> Self {
        QuadraticFormZ2 {
            r: Z2Matrix::zeros(k, k),
        }
    }

    /// Sum of monomials `x_i x_j` (with `i == j` meaning `x_i²`).
    pub fn from_terms(k: usize, terms: &[(usize, usize)]) -> Self {
        let mut r = Z2Matrix::zeros(k, k);
        for &(i, j) in terms {
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            r.flip(a, b);
        }
        QuadraticFormZ2 { r }
    }

    pub fn dim(&self) -> usize {
        self.r.rows()
    }

    /// Upper-triangular matrix of the form.
    pub fn matrix(&self) -> &Z2Matrix {
        &self.r
    }

    pub fn is_zero(&self) -> bool {
        self.r.is_zero()
    }

    pub fn evaluate(&self, v: &Z2Vector) -> Result<bool, DimensionMismatch> {
        if v.len() != self.dim() {
            return Err(DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            });
        }
        Ok(self.eval_unchecked(v))
    }

    fn eval_unchecked(&self, v: &Z2Vector) -> bool {
        v.ones().fold(false, |acc, i| acc ^ self.r.row(i).dot(v))
    }

    /// The form `v ↦ Q(Mv)`, where `M` has `dim()` rows.
    pub fn conjugate(&self, m: &Z2Matrix) -> Result<QuadraticFormZ2, DimensionMismatch> {
        if m.rows() != self.dim() {
            return Err(DimensionMismatch {
                expected: self.dim(),
                found: m.rows(),
            });
        }
        let rm = self.r.mul(m)?;
        let full = m.transpose().mul(&rm)?;
        QuadraticFormZ2::new(full)
    }

    /// Polar bilinear form `B(x,y) = Q(x+y) + Q(x) + Q(y)`, matrix `R + Rᵀ`.
    pub fn polar(&self) -> Z2Matrix {
        let k = self.dim();
        let mut b = Z2Matrix::zeros(k, k);
        for i in 0..k {
            for j in self.r.row(i).ones() {
                if i != j {
                    b.flip(i, j);
                    b.flip(j, i);
                }
            }
        }
        b
    }

    pub fn canonical(&self) -> CanonicalForm {
        let k = self.dim();
        let polar = self.polar();
        let apply_polar = |v: &Z2Vector| -> Z2Vector { Z2Vector::from_bits(polar.row_vectors().iter().map(|row| row.dot(v))) };

        let mut pool: Vec<Z2Vector> = (0..k).map(|i| Z2Vector::unit(k, i)).collect();
        pool.reverse();
        let mut pairs = 0usize;
        let mut arf = false;
        let mut radical_nonzero = false;

        while let Some(u) = pool.pop() {
            let bu = apply_polar(&u);
            let Some(pos) = pool.iter().rposition(|w| w.dot(&bu)) else {
                // u is orthogonal to everything left: radical direction.
                radical_nonzero |= self.eval_unchecked(&u);
                continue;
            };
            let w = pool.remove(pos);
            let bw = apply_polar(&w);
            arf ^= self.block_is_minus(&u, &w);
            pairs += 1;
            for x in pool.iter_mut() {
                let (cu, cw) = (x.dot(&bu), x.dot(&bw));
                if cw {
                    *x ^= &u;
                }
                if cu {
                    *x ^= &w;
                }
            }
        }

        let (rank, kind) = if radical_nonzero {
            (2 * pairs + 1, FormKind::Odd)
        } else if arf {
            (2 * pairs, FormKind::EvenMinus)
        } else {
            (2 * pairs, FormKind::EvenPlus)
        };
        CanonicalForm { rank, kind, dim: k }
    }

    /// Classifies the restriction to a hyperbolic plane `span(u, w)` by its
    /// truth table: 3 zeros is `x1x2`, 1 zero is `x1x2 + x1² + x2²`.
    fn block_is_minus(&self, u: &Z2Vector, w: &Z2Vector) -> bool {
        let uw = u ^ w;
        let zeros = 1 + [u, w, &uw].iter().filter(|v| !self.eval_unchecked(v)).count();
        debug_assert!(zeros == 1 || zeros == 3);
        zeros == 1
    }

    pub fn count_zeros(&self) -> BigUint {
        self.canonical().count_zeros()
    }
}

impl fmt::Debug for QuadraticFormZ2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuadraticFormZ2({self})")
    }
}

impl fmt::Display for QuadraticFormZ2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for i in 0..self.dim() {
            for j in self.r.row(i).ones() {
                if i == j {
                    terms.push(format!("x{}^2", i + 1));
                } else {
                    terms.push(format!("x{}x{}", i + 1, j + 1));
                }
            }
        }
        if terms.is_empty() {
            write!(f, "0 (k={})", self.dim())
        } else {
            write!(f, "{} (k={})", terms.join(" + "), self.dim())
        }
    }
}
