//! Truncated base-p digit expansions of rational numbers.
//!
//! Two indexing conventions coexist on purpose. [`expand`] starts at the
//! valuation of its input, so the first digit is nonzero and negative
//! exponents can appear. [`digits_from_zero`] always indexes from exponent 0
//! with leading zeros and therefore requires a p-adic integer; all tree code
//! consumes digits positionally, so it uses this form.

use crate::valuation::{valuation_int, valuation_rat, Prime, Rational, Valuation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ExpansionError {
    #[error("digit count must be at least 1")]
    ZeroCount,
    #[error("{value} is not a {prime}-adic integer")]
    NotPadicInteger { value: Rational, prime: Prime },
}

/// True when p does not divide the denominator of r, i.e. the expansion of r
/// has no negative powers of p.
pub fn is_padic_integer(r: &Rational, p: Prime) -> bool {
    valuation_int(r.denom(), p) == Valuation::Finite(0)
}

fn mod_inverse(b: &BigInt, modulus: &BigInt) -> BigInt {
    let g = b.extended_gcd(modulus);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(modulus)
}

/// The residue of a/b modulo p^count, computed through the modular inverse of
/// the denominator. Requires p not dividing b.
fn residue_mod_pk(r: &Rational, p: Prime, count: usize) -> BigInt {
    let modulus = p.power(count);
    let inv = mod_inverse(r.denom(), &modulus);
    (r.numer() * inv).mod_floor(&modulus)
}

/// Digits c_0..c_{count-1} with r congruent to their partial sum mod p^count,
/// leading zeros included.
///
/// A count of 0 yields the empty digit list.
pub fn digits_from_zero(r: &Rational, p: Prime, count: usize) -> Result<Vec<u64>, ExpansionError> {
    if !is_padic_integer(r, p) {
        return Err(ExpansionError::NotPadicInteger {
            value: r.clone(),
            prime: p,
        });
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    let mut x = residue_mod_pk(r, p, count);
    let pb = p.to_bigint();
    let mut digits = Vec::with_capacity(count);
    for _ in 0..count {
        let (q, d) = x.div_rem(&pb);
        digits.push(d.to_u64().expect("digit below p"));
        x = q;
    }
    Ok(digits)
}

/// A truncated expansion r = d_0·p^s + d_1·p^(s+1) + ... starting at the
/// exponent s = nu_p(r), so d_0 is nonzero unless r = 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitExpansion {
    prime: Prime,
    start_exponent: i64,
    digits: Vec<u64>,
    source: Rational,
}

impl DigitExpansion {
    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn start_exponent(&self) -> i64 {
        self.start_exponent
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// The rational the expansion was computed from.
    pub fn source(&self) -> &Rational {
        &self.source
    }

    /// Exact value of the retained digits, sum of d_i·p^(s+i).
    pub fn partial_sum(&self) -> Rational {
        let t = Rational::from(truncation_value(&self.digits, self.prime));
        t * self.prime.power_rat(self.start_exponent)
    }
}

impl fmt::Display for DigitExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            return write!(f, "0");
        }
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{d}·{}^{}", self.prime, self.start_exponent + i as i64)?;
        }
        Ok(())
    }
}

/// The first `count` digits of r starting at exponent nu_p(r).
///
/// Zero expands to the empty digit list for any count; otherwise the digits
/// satisfy nu_p(r - partial_sum) >= start_exponent + count.
pub fn expand(r: &Rational, p: Prime, count: usize) -> Result<DigitExpansion, ExpansionError> {
    if r.is_zero() {
        return Ok(DigitExpansion {
            prime: p,
            start_exponent: 0,
            digits: Vec::new(),
            source: r.clone(),
        });
    }
    if count == 0 {
        return Err(ExpansionError::ZeroCount);
    }
    let v = valuation_rat(r, p).finite().expect("nonzero value");
    let unit = r * p.power_rat(-v);
    let digits = digits_from_zero(&unit, p, count)?;
    Ok(DigitExpansion {
        prime: p,
        start_exponent: v,
        digits,
        source: r.clone(),
    })
}

/// Value of a digit string anchored at exponent 0: sum of digits[j]·p^j.
pub fn truncation_value(digits: &[u64], p: Prime) -> BigInt {
    let pb = p.to_bigint();
    let mut acc = BigInt::zero();
    for &d in digits.iter().rev() {
        debug_assert!(d < p.get());
        acc = acc * &pb + BigInt::from(d);
    }
    acc
}

/// The largest r with r1 congruent to r2 mod p^r, as nu_p(r1 - r2); Infinite
/// when the inputs are equal. Both inputs must be p-adic integers.
pub fn congruence_order(
    r1: &Rational,
    r2: &Rational,
    p: Prime,
) -> Result<Valuation, ExpansionError> {
    for r in [r1, r2] {
        if !is_padic_integer(r, p) {
            return Err(ExpansionError::NotPadicInteger {
                value: r.clone(),
                prime: p,
            });
        }
    }
    Ok(valuation_rat(&(r1 - r2), p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: u64) -> Prime {
        Prime::new(v).unwrap()
    }

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn padic_integer_membership() {
        assert!(is_padic_integer(&rat(5, 2), p(3)));
        assert!(!is_padic_integer(&rat(4, 5), p(5)));
        assert!(!is_padic_integer(&rat(4, 3), p(3)));
        assert!(is_padic_integer(&rat(0, 1), p(2)));
        assert!(is_padic_integer(&rat(-6, 1), p(3)));
    }

    #[test]
    fn expand_rational_units() {
        let e = expand(&rat(5, 2), p(3), 5).unwrap();
        assert_eq!(e.start_exponent(), 0);
        assert_eq!(e.digits(), &[1, 2, 1, 1, 1]);
        assert_eq!(e.to_string(), "1·3^0 + 2·3^1 + 1·3^2 + 1·3^3 + 1·3^4");
    }

    #[test]
    fn expand_shifts_to_the_valuation() {
        let e = expand(&rat(-6, 1), p(3), 5).unwrap();
        assert_eq!(e.start_exponent(), 1);
        assert_eq!(e.digits(), &[1, 2, 2, 2, 2]);

        let e = expand(&rat(2, 5), p(2), 6).unwrap();
        assert_eq!(e.start_exponent(), 1);
        assert_eq!(e.digits(), &[1, 0, 1, 1, 0, 0]);

        let e = expand(&rat(4, 5), p(5), 3).unwrap();
        assert_eq!(e.start_exponent(), -1);
        assert_eq!(e.digits(), &[4, 0, 0]);
        assert_eq!(e.to_string(), "4·5^-1 + 0·5^0 + 0·5^1");
    }

    #[test]
    fn expand_zero_and_bad_count() {
        let e = expand(&rat(0, 1), p(7), 3).unwrap();
        assert!(e.digits().is_empty());
        assert_eq!(e.to_string(), "0");
        assert_eq!(expand(&rat(3, 1), p(7), 0), Err(ExpansionError::ZeroCount));
    }

    #[test]
    fn expand_partial_sum_is_congruent() {
        for (n, d, pr, count) in [(5i64, 2i64, 3u64, 5usize), (2, 5, 2, 6), (4, 5, 5, 3)] {
            let r = rat(n, d);
            let e = expand(&r, p(pr), count).unwrap();
            let diff = &r - e.partial_sum();
            let bound = e.start_exponent() + count as i64;
            assert!(valuation_rat(&diff, p(pr)) >= Valuation::Finite(bound));
        }
    }

    #[test]
    fn digits_from_zero_keeps_leading_zeros() {
        assert_eq!(
            digits_from_zero(&rat(-6, 1), p(3), 5).unwrap(),
            vec![0, 1, 2, 2, 2]
        );
        assert_eq!(
            digits_from_zero(&rat(9, 1), p(2), 4).unwrap(),
            vec![1, 0, 0, 1]
        );
        assert_eq!(
            digits_from_zero(&rat(0, 1), p(5), 3).unwrap(),
            vec![0, 0, 0]
        );
        assert_eq!(digits_from_zero(&rat(7, 1), p(5), 0).unwrap(), vec![]);
        assert!(matches!(
            digits_from_zero(&rat(4, 5), p(5), 3),
            Err(ExpansionError::NotPadicInteger { .. })
        ));
    }

    #[test]
    fn truncation_values() {
        assert_eq!(truncation_value(&[0, 1, 0, 0], p(2)), BigInt::from(2));
        assert_eq!(truncation_value(&[], p(7)), BigInt::from(0));
        assert_eq!(truncation_value(&[1, 2, 1, 1, 1], p(3)), BigInt::from(124));
    }

    #[test]
    fn congruence_orders() {
        assert_eq!(
            congruence_order(&rat(16, 1), &rat(2, 5), p(2)),
            Ok(Valuation::Finite(1))
        );
        assert_eq!(
            congruence_order(&rat(9, 1), &rat(-1, 3), p(2)),
            Ok(Valuation::Finite(2))
        );
        assert_eq!(
            congruence_order(&rat(5, 2), &rat(5, 2), p(3)),
            Ok(Valuation::Infinite)
        );
        assert!(congruence_order(&rat(1, 2), &rat(0, 1), p(2)).is_err());
    }
}
