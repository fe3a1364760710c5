use super::DyadicSqrt2;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Sparse Laurent polynomial `Σ a_m z^m` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentZ {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentZ {
    pub fn new() -> Self {
        LaurentZ::default()
    }

    pub fn add_term(&mut self, m: i64, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(m).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    pub fn coeff(&self, m: i64) -> BigInt {
        self.coeffs.get(&m).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(&m, c)| (m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest and highest exponent with a nonzero coefficient.
    pub fn degree_span(&self) -> Option<(i64, i64)> {
        Some((*self.coeffs.keys().next()?, *self.coeffs.keys().next_back()?))
    }

    /// Value at `z = s√2`, `s = ±1`.
    pub fn evaluate_at_signed_sqrt2(&self, sign: i8) -> DyadicSqrt2 {
        self.terms()
            .map(|(m, c)| DyadicSqrt2::from_int(c.clone()) * DyadicSqrt2::signed_sqrt2_pow(sign, m))
            .sum()
    }
}

impl fmt::Display for LaurentZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match i {
                0 if c.is_negative() => f.write_str("-")?,
                0 => {}
                _ => write!(f, " {sign} ")?,
            }
            let mag = c.abs();
            let monomial = match m {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{m}"),
            };
            if monomial.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&monomial)?;
            } else {
                write!(f, "{mag}{monomial}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn accumulates_and_cancels() {
        let mut p = LaurentZ::new();
        p.add_term(-2, &BigInt::from(3));
        p.add_term(1, &BigInt::from(-1));
        p.add_term(1, &BigInt::from(1));
        p.add_term(0, &BigInt::from(4));
        assert_eq!(p.coeff(1), BigInt::zero());
        assert_eq!(p.degree_span(), Some((-2, 0)));
        assert_eq!(p.to_string(), "3z^-2 + 4");
    }

    #[test]
    fn evaluation_at_both_roots() {
        let mut p = LaurentZ::new();
        p.add_term(1, &BigInt::from(1));
        p.add_term(-1, &BigInt::from(2));
        // z + 2/z = z + z = 2z at z² = 2
        assert_eq!(p.evaluate_at_signed_sqrt2(1), DyadicSqrt2::new(0, 2, 0));
        assert_eq!(p.evaluate_at_signed_sqrt2(-1), DyadicSqrt2::new(0, -2, 0));
        assert!(LaurentZ::new().evaluate_at_signed_sqrt2(1).is_zero());
    }
}
