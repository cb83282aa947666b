//! p-adic valuations and the p-adic absolute value.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use std::fmt;
use std::ops::Add;
use thiserror::Error;

/// Exact rational number, always stored reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PrimeError {
    #[error("{0} is smaller than 2")]
    TooSmall(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// A prime modulus, validated at construction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Prime(u64);

impl Prime {
    /// Validates primality with a deterministic Miller-Rabin test (the witness
    /// set 2..=37 is exact for all 64-bit inputs).
    pub fn new(p: u64) -> Result<Self, PrimeError> {
        if p < 2 {
            return Err(PrimeError::TooSmall(p));
        }
        if !is_prime_u64(p) {
            return Err(PrimeError::NotPrime(p));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn to_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// p^k as a big integer.
    pub fn power(self, k: usize) -> BigInt {
        Pow::pow(&self.to_bigint(), k)
    }

    /// p^k as a rational; `k` may be negative.
    pub fn power_rat(self, k: i64) -> Rational {
        let mag = Pow::pow(&self.to_bigint(), k.unsigned_abs() as usize);
        if k >= 0 {
            Rational::from(mag)
        } else {
            Rational::new(BigInt::one(), mag)
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &MR_WITNESSES {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The value of nu_p: a finite integer, or Infinite for input 0.
///
/// Infinite compares greater than every finite valuation and absorbs addition.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    /// Adds a finite offset, leaving Infinite fixed.
    pub fn shift(self, d: i64) -> Valuation {
        match self {
            Valuation::Finite(v) => Valuation::Finite(v + d),
            Valuation::Infinite => Valuation::Infinite,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Largest x with p^x dividing n; Infinite for n = 0.
pub fn valuation_int(n: &BigInt, p: Prime) -> Valuation {
    if n.is_zero() {
        return Valuation::Infinite;
    }
    let p = p.to_bigint();
    let mut v = 0i64;
    let mut cur = n.clone();
    loop {
        let (q, r) = cur.div_rem(&p);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        v += 1;
        cur = q;
    }
}

/// nu_p(a/b) = nu_p(a) - nu_p(b); Infinite for 0.
pub fn valuation_rat(r: &Rational, p: Prime) -> Valuation {
    if r.is_zero() {
        return Valuation::Infinite;
    }
    let num = valuation_int(r.numer(), p)
        .finite()
        .expect("nonzero numerator");
    let den = valuation_int(r.denom(), p)
        .finite()
        .expect("nonzero denominator");
    Valuation::Finite(num - den)
}

/// |r|_p = p^(-nu_p(r)), with |0|_p = 0.
pub fn padic_abs(r: &Rational, p: Prime) -> Rational {
    match valuation_rat(r, p) {
        Valuation::Infinite => Rational::zero(),
        Valuation::Finite(v) => p.power_rat(-v),
    }
}
