//! Roots of integer polynomials in the p-adic integers, found by
//! breadth-first lifting of solutions mod p^k, with certification of simple
//! roots and Newton extension of certified prefixes.

use crate::expansion::{digits_from_zero, truncation_value};
use crate::poly::Polynomial;
use crate::valuation::{valuation_int, valuation_rat, Prime, Rational, Valuation};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LiftError {
    #[error("cannot lift roots of the zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial has non-integer coefficients")]
    NonIntegerCoefficients,
    #[error("lifting exceeded the node budget of {budget}")]
    BudgetExceeded { budget: usize },
    #[error("prefix is not certified")]
    NotCertified,
}

/// Resource bounds for breadth-first lifting. The budget caps the number of
/// candidate residues examined across all levels; pathological polynomials
/// (or huge primes) abort with an explicit error instead of running away.
#[derive(Clone, Copy, Debug)]
pub struct LiftConfig {
    pub node_budget: usize,
}

impl Default for LiftConfig {
    fn default() -> Self {
        LiftConfig {
            node_budget: 100_000,
        }
    }
}

/// The first k digits of a potential root of one polynomial. When certified,
/// Hensel's criterion guarantees a unique p-adic integer root extending these
/// digits; uncertified prefixes merely survive lifting to this depth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootPrefix {
    prime: Prime,
    digits: Vec<u64>,
    certified: bool,
}

impl RootPrefix {
    pub fn prime(&self) -> Prime {
        self.prime
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn certified(&self) -> bool {
        self.certified
    }

    /// The residue the digits stand for, sum of d_j·p^j.
    pub fn value(&self) -> BigInt {
        truncation_value(&self.digits, self.prime)
    }
}

fn integer_coeffs(f: &Polynomial) -> Result<Vec<BigInt>, LiftError> {
    if f.is_zero() {
        return Err(LiftError::ZeroPolynomial);
    }
    f.integer_coeffs().ok_or(LiftError::NonIntegerCoefficients)
}

fn eval_mod(coeffs: &[BigInt], x: &BigInt, modulus: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = (acc * x + c).mod_floor(modulus);
    }
    acc
}

/// All residues c in [0, p^k) with F(c) congruent to 0 mod p^k, in ascending
/// order, found by lifting solutions level by level.
pub fn roots_mod_pk(f: &Polynomial, p: Prime, k: usize) -> Result<Vec<BigInt>, LiftError> {
    roots_mod_pk_with(f, p, k, &LiftConfig::default())
}

pub fn roots_mod_pk_with(
    f: &Polynomial,
    p: Prime,
    k: usize,
    config: &LiftConfig,
) -> Result<Vec<BigInt>, LiftError> {
    let coeffs = integer_coeffs(f)?;
    let mut solutions = vec![BigInt::zero()];
    let mut examined: u128 = 0;
    let pb = p.to_bigint();
    let mut modulus = BigInt::from(1);
    for _ in 0..k {
        examined = examined.saturating_add(solutions.len() as u128 * p.get() as u128);
        if examined > config.node_budget as u128 {
            return Err(LiftError::BudgetExceeded {
                budget: config.node_budget,
            });
        }
        let step = modulus.clone();
        modulus *= &pb;
        let mut next = Vec::new();
        for c in &solutions {
            for t in 0..p.get() {
                let candidate = c + &step * BigInt::from(t);
                if eval_mod(&coeffs, &candidate, &modulus).is_zero() {
                    next.push(candidate);
                }
            }
        }
        next.sort();
        solutions = next;
    }
    Ok(solutions)
}

/// The strengthened simple-root criterion: with mu the valuation of F'(x) and
/// v that of F(x), the prefix of length k at x is certified when mu is
/// finite, k > 2·mu, and v >= k + mu. The margin of mu over the bare
/// congruence F(x) = 0 mod p^k is what forces an actual root to share all k
/// digits of x rather than merely the first k - mu.
fn certify(coeffs: &[BigInt], derivative: &[BigInt], x: &BigInt, k: usize, p: Prime) -> bool {
    let eval = |cs: &[BigInt]| -> BigInt {
        let mut acc = BigInt::zero();
        for c in cs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    let Valuation::Finite(mu) = valuation_int(&eval(derivative), p) else {
        return false;
    };
    if k as i64 <= 2 * mu {
        return false;
    }
    valuation_int(&eval(coeffs), p) >= Valuation::Finite(k as i64 + mu)
}

/// Length-`depth` digit prefixes of every residue surviving lifting to
/// p^depth, each with its certification flag, ordered by residue value.
pub fn zp_root_prefixes(
    f: &Polynomial,
    p: Prime,
    depth: usize,
) -> Result<Vec<RootPrefix>, LiftError> {
    zp_root_prefixes_with(f, p, depth, &LiftConfig::default())
}

pub fn zp_root_prefixes_with(
    f: &Polynomial,
    p: Prime,
    depth: usize,
    config: &LiftConfig,
) -> Result<Vec<RootPrefix>, LiftError> {
    let coeffs = integer_coeffs(f)?;
    let derivative: Vec<BigInt> = f
        .derivative()
        .integer_coeffs()
        .expect("derivative of an integer polynomial");
    let roots = roots_mod_pk_with(f, p, depth, config)?;
    Ok(roots
        .into_iter()
        .map(|c| {
            let digits = digits_from_zero(&Rational::from(c.clone()), p, depth)
                .expect("integers are p-adic integers");
            let certified = certify(&coeffs, &derivative, &c, depth, p);
            RootPrefix {
                prime: p,
                digits,
                certified,
            }
        })
        .collect())
}

/// Deepens a certified prefix by `extra` digits with exact Newton iteration;
/// the result keeps the original digits and is certified at the new length.
pub fn extend_certified(
    f: &Polynomial,
    prefix: &RootPrefix,
    extra: usize,
) -> Result<RootPrefix, LiftError> {
    if !prefix.certified {
        return Err(LiftError::NotCertified);
    }
    let coeffs = integer_coeffs(f)?;
    let derivative_poly = f.derivative();
    let derivative: Vec<BigInt> = derivative_poly
        .integer_coeffs()
        .expect("derivative of an integer polynomial");
    let p = prefix.prime;
    let target_len = prefix.digits.len() + extra;

    let mut z = Rational::from(prefix.value());
    let mu = match valuation_rat(&derivative_poly.evaluate(&z), p) {
        Valuation::Finite(mu) => mu,
        Valuation::Infinite => return Err(LiftError::NotCertified),
    };
    let goal = Valuation::Finite(target_len as i64 + mu);
    while valuation_rat(&f.evaluate(&z), p) < goal {
        let step = f.evaluate(&z) / derivative_poly.evaluate(&z);
        z = z - step;
    }
    let digits = digits_from_zero(&z, p, target_len).expect("Newton iterate stays p-adic");
    debug_assert_eq!(&digits[..prefix.digits.len()], &prefix.digits[..]);
    let certified = certify(
        &coeffs,
        &derivative,
        &truncation_value(&digits, p),
        target_len,
        p,
    );
    debug_assert!(certified);
    Ok(RootPrefix {
        prime: p,
        digits,
        certified,
    })
}
