//! Smith normal form over the integers.
//!
//! Elimination runs on machine integers with checked arithmetic and restarts
//! on big integers the first time anything overflows.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

trait Entry: Clone + Zero + PartialEq {
    fn magnitude_lt(&self, other: &Self) -> bool;
    /// `self - q * x`, or `None` on overflow.
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self>;
    /// Truncated quotient, or `None` on overflow.
    fn quotient(&self, d: &Self) -> Option<Self>;
    fn into_big(self) -> BigInt;
}

impl Entry for i64 {
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*x)?)
    }
    fn quotient(&self, d: &Self) -> Option<Self> {
        self.checked_div(*d)
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Entry for BigInt {
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn sub_mul(&self, q: &Self, x: &Self) -> Option<Self> {
        Some(self - q * x)
    }
    fn quotient(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }
    fn into_big(self) -> BigInt {
        self
    }
}

/// Nonzero invariant factors `d1 | d2 | …` of an integer matrix given as
/// rows. Their number is the rank.
pub fn invariant_factors(rows: &[Vec<i64>]) -> Vec<BigUint> {
    let diagonal = match diagonalise(rows.to_vec()) {
        Some(d) => d.into_iter().map(Entry::into_big).collect(),
        None => {
            log::debug!("Smith normal form overflowed i64, retrying with big integers");
            let big = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
            diagonalise::<BigInt>(big).expect("big-integer elimination cannot overflow")
        }
    };
    divisibility_chain(diagonal.into_iter().map(|d| d.magnitude().clone()).collect())
}

/// Rank over the rationals.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    invariant_factors(rows).len()
}

/// Replaces pairs `(a, b)` by `(gcd, lcm)` until each entry divides the next.
fn divisibility_chain(mut d: Vec<BigUint>) -> Vec<BigUint> {
    d.sort();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            if !(&d[j] % &d[i]).is_zero() {
                let g = d[i].gcd(&d[j]);
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
    }
    d
}

/// Diagonalises by row and column operations, returning the nonzero
/// diagonal entries (not yet in divisibility order).
fn diagonalise<T: Entry>(mut a: Vec<Vec<T>>) -> Option<Vec<T>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = smallest_nonzero(&a, (t..rows).flat_map(|i| (t..cols).map(move |j| (i, j)))) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let pivot = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].quotient(&pivot)?;
                if !q.is_zero() {
                    let (head, tail) = a.split_at_mut(i);
                    let src = &head[t];
                    for (x, s) in tail[0][t..].iter_mut().zip(&src[t..]) {
                        *x = x.sub_mul(&q, s)?;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].quotient(&pivot)?;
                if !q.is_zero() {
                    for row in a[t..].iter_mut() {
                        let s = row[t].clone();
                        row[j] = row[j].sub_mul(&q, &s)?;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                break;
            }
            // A remainder smaller than the pivot survived; move it to the pivot.
            let candidates = (t..rows).map(|i| (i, t)).chain((t + 1..cols).map(|j| (t, j)));
            let (pi, pj) = smallest_nonzero(&a, candidates).expect("pivot is nonzero");
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
        }
        diagonal.push(a[t][t].clone());
        t += 1;
    }
    Some(diagonal)
}

fn smallest_nonzero<T: Entry>(
    a: &[Vec<T>],
    positions: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, j) in positions {
        if a[i][j].is_zero() {
            continue;
        }
        if best.is_none_or(|(bi, bj)| a[i][j].magnitude_lt(&a[bi][bj])) {
            best = Some((i, j));
        }
    }
    best
}

/// Order of a finite abelian group with the given invariant factors.
pub fn torsion_order(torsion: &[BigUint]) -> BigUint {
    torsion.iter().product()
}
