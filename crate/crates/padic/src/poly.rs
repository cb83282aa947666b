//! Polynomials over the rationals, rational-root factorization, and the
//! factored form consumed by the analytic tree engine.

pub mod parse;

use crate::valuation::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactorError {
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("coefficient {0} is too large for the rational root search")]
    CoefficientTooLarge(BigInt),
}

/// Dense polynomial in n with rational coefficients; index = degree of term.
/// The zero polynomial is the empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    /// Builds from coefficients in ascending degree order, trimming trailing
    /// zeros so the leading coefficient is nonzero.
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial {
            coeffs: vec![Rational::one()],
        }
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn from_int_coeffs(coeffs: &[i64]) -> Self {
        Polynomial::new(
            coeffs
                .iter()
                .map(|&c| Rational::from(BigInt::from(c)))
                .collect(),
        )
    }

    /// Coefficients in ascending degree order, leading coefficient nonzero.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Exact Horner evaluation.
    pub fn evaluate(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rational::from(BigInt::from(i)))
            .collect();
        Polynomial::new(coeffs)
    }

    /// The least common multiple D of the coefficient denominators together
    /// with the integer coefficients of D times this polynomial.
    pub fn clear_denominators(&self) -> (BigInt, Vec<BigInt>) {
        let d = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&d / c.denom()))
            .collect();
        (d, coeffs)
    }

    /// Some(coefficients) when every coefficient is an integer.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.denom().is_one().then(|| c.numer().clone()))
            .collect()
    }

    /// The polynomial m -> f(offset + scale·m).
    pub fn compose_affine(&self, offset: &Rational, scale: &Rational) -> Polynomial {
        let shift = Polynomial::new(vec![offset.clone(), scale.clone()]);
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * &shift + Polynomial::constant(c.clone());
        }
        acc
    }

    fn scale(&self, s: &Rational) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Exact division, panicking unless the divisor divides self.
    fn divide_exact(&self, divisor: &Polynomial) -> Polynomial {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dd = divisor.coeffs.len() - 1;
        let lead = &divisor.coeffs[dd];
        if rem.len() <= dd {
            assert!(self.is_zero(), "non-divisible polynomial division");
            return Polynomial::zero();
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = &rem[i] / lead;
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = &rem[idx] - dc * &q;
            }
            quot[i - dd] = q;
        }
        assert!(
            rem.iter().all(|c| c.is_zero()),
            "non-divisible polynomial division"
        );
        Polynomial::new(quot)
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut coeffs = vec![Rational::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i] = &coeffs[i] + c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            coeffs[i] = &coeffs[i] + c;
        }
        Polynomial::new(coeffs)
    }
}

impl std::ops::Add<Polynomial> for Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &rhs.scale(&-Rational::one())
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + a * b;
            }
        }
        Polynomial::new(coeffs)
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    coeff: &Rational,
    degree: usize,
) -> fmt::Result {
    let mag = coeff.abs();
    if first {
        if coeff.is_negative() {
            write!(f, "-")?;
        }
    } else if coeff.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if degree == 0 || !mag.is_one() {
        write!(f, "{mag}")?;
    }
    match degree {
        0 => Ok(()),
        1 => write!(f, "n"),
        _ => write!(f, "n^{degree}"),
    }
}

impl fmt::Display for Polynomial {
    /// Renders in the expression grammar accepted by the parser, highest
    /// degree first, e.g. "9/2n^2 - 39n - 27/2".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_term(f, first, c, deg)?;
            first = false;
        }
        Ok(())
    }
}

/// A canonical integer linear factor a·n + b with a > 0 and gcd(a, b) = 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearFactor {
    a: BigInt,
    b: BigInt,
}

impl LinearFactor {
    /// Canonicalizes a·n + b by dividing out gcd(a, b) and making a positive;
    /// returns the extracted rational scale alongside the factor. None when
    /// a = 0.
    pub fn extract(a: Rational, b: Rational) -> Option<(Rational, LinearFactor)> {
        if a.is_zero() {
            return None;
        }
        let d = a.denom().lcm(b.denom());
        let ai = a.numer() * (&d / a.denom());
        let bi = b.numer() * (&d / b.denom());
        let mut g = ai.gcd(&bi);
        if ai.is_negative() {
            g = -g;
        }
        let factor = LinearFactor {
            a: &ai / &g,
            b: &bi / &g,
        };
        Some((Rational::new(g, d), factor))
    }

    /// The factor v·n - u vanishing at the root u/v.
    pub fn from_root(root: &Rational) -> LinearFactor {
        LinearFactor {
            a: root.denom().clone(),
            b: -root.numer(),
        }
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// The exact root -b/a.
    pub fn root(&self) -> Rational {
        Rational::new(-self.b.clone(), self.a.clone())
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::new(vec![
            Rational::from(self.b.clone()),
            Rational::from(self.a.clone()),
        ])
    }
}

impl fmt::Display for LinearFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_polynomial())
    }
}

/// A polynomial split as constant · product of linear factors · residual,
/// where the residual has integer coefficients, content 1, a positive leading
/// coefficient, and no rational roots (the constant polynomial 1 when the
/// factorization is complete). Repeated factors appear with repetition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPolynomial {
    constant: Rational,
    linear_factors: Vec<LinearFactor>,
    residual: Polynomial,
}

impl FactoredPolynomial {
    /// The zero polynomial: constant 0, no factors.
    pub fn zero() -> Self {
        FactoredPolynomial {
            constant: Rational::zero(),
            linear_factors: Vec::new(),
            residual: Polynomial::one(),
        }
    }

    /// A completely factored polynomial: constant times linear factors.
    pub fn from_linear(constant: Rational, mut factors: Vec<LinearFactor>) -> Self {
        if constant.is_zero() {
            return FactoredPolynomial::zero();
        }
        factors.sort();
        FactoredPolynomial {
            constant,
            linear_factors: factors,
            residual: Polynomial::one(),
        }
    }

    pub(crate) fn from_parts(
        constant: Rational,
        mut factors: Vec<LinearFactor>,
        residual: Polynomial,
    ) -> Self {
        if constant.is_zero() {
            return FactoredPolynomial::zero();
        }
        factors.sort();
        FactoredPolynomial {
            constant,
            linear_factors: factors,
            residual,
        }
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }

    pub fn linear_factors(&self) -> &[LinearFactor] {
        &self.linear_factors
    }

    pub fn residual(&self) -> &Polynomial {
        &self.residual
    }

    pub fn is_zero(&self) -> bool {
        self.constant.is_zero()
    }

    /// True when the residual is the constant polynomial 1, i.e. the
    /// polynomial is a rational constant times linear integer factors.
    pub fn is_completely_factored(&self) -> bool {
        self.residual.is_one()
    }

    /// Exact product of all parts.
    pub fn expand(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut acc = self.residual.scale(&self.constant);
        for factor in &self.linear_factors {
            acc = &acc * &factor.to_polynomial();
        }
        acc
    }

    pub fn evaluate(&self, x: &Rational) -> Rational {
        let mut acc = &self.constant * self.residual.evaluate(x);
        for factor in &self.linear_factors {
            acc = acc * factor.to_polynomial().evaluate(x);
        }
        acc
    }
}

impl fmt::Display for FactoredPolynomial {
    /// Renders in the expression grammar accepted by the parser, with runs of
    /// a repeated factor collapsed to a power, e.g. "3/2*(n - 9)*(3n + 1)".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut wrote = false;
        if !self.constant.is_one() || (self.linear_factors.is_empty() && self.residual.is_one()) {
            write!(f, "{}", self.constant)?;
            wrote = true;
        }
        let mut i = 0;
        while i < self.linear_factors.len() {
            let factor = &self.linear_factors[i];
            let mut count = 1;
            while self.linear_factors.get(i + count) == Some(factor) {
                count += 1;
            }
            if wrote {
                write!(f, "*")?;
            }
            write!(f, "({factor})")?;
            if count > 1 {
                write!(f, "^{count}")?;
            }
            wrote = true;
            i += count;
        }
        if !self.residual.is_one() {
            if wrote {
                write!(f, "*({})", self.residual)?;
            } else {
                write!(f, "{}", self.residual)?;
            }
        }
        Ok(())
    }
}

/// Ascending divisors of |v|, for nonzero v. Fails when the trial-division
/// scan would exceed the desk-scale bound.
fn divisors(v: &BigInt) -> Result<Vec<BigInt>, FactorError> {
    const SCAN_LIMIT: u128 = 10_000_000;
    let n = v
        .abs()
        .to_u128()
        .ok_or_else(|| FactorError::CoefficientTooLarge(v.clone()))?;
    debug_assert!(n > 0);
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i: u128 = 1;
    while i * i <= n {
        if i > SCAN_LIMIT {
            return Err(FactorError::CoefficientTooLarge(v.clone()));
        }
        if n % i == 0 {
            small.push(BigInt::from(i));
            if i * i != n {
                large.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    large.reverse();
    small.extend(large);
    Ok(small)
}

/// One rational root of the primitive integer polynomial held in `coeffs`
/// (ascending degree, nonzero constant term), or None.
fn find_rational_root(coeffs: &[BigInt]) -> Result<Option<Rational>, FactorError> {
    let poly = Polynomial::new(coeffs.iter().map(|c| Rational::from(c.clone())).collect());
    let numerators = divisors(&coeffs[0])?;
    let denominators = divisors(coeffs.last().expect("nonzero polynomial"))?;
    for q in &denominators {
        for u in &numerators {
            if !u.gcd(q).is_one() {
                continue;
            }
            for sign in [1, -1] {
                let candidate = Rational::new(u * BigInt::from(sign), q.clone());
                if poly.evaluate(&candidate).is_zero() {
                    return Ok(Some(candidate));
                }
            }
        }
    }
    Ok(None)
}

/// Splits f as constant · linear factors · residual: clears denominators,
/// extracts the integer content and sign into the constant, deflates every
/// rational root of the remaining primitive polynomial into a LinearFactor,
/// and leaves the root-free quotient as the residual. Round-trips through
/// [`FactoredPolynomial::expand`].
pub fn factor_rational(f: &Polynomial) -> Result<FactoredPolynomial, FactorError> {
    if f.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let (d, int_coeffs) = f.clear_denominators();
    let mut content = int_coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if int_coeffs.last().expect("nonzero polynomial").is_negative() {
        content = -content;
    }
    let mut coeffs: Vec<BigInt> = int_coeffs.iter().map(|c| c / &content).collect();
    let constant = Rational::new(content, d);
    let mut factors = Vec::new();

    let zeros = coeffs
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero polynomial");
    for _ in 0..zeros {
        factors.push(LinearFactor::from_root(&Rational::zero()));
    }
    coeffs.drain(..zeros);

    while coeffs.len() > 1 {
        let Some(root) = find_rational_root(&coeffs)? else {
            break;
        };
        let factor = LinearFactor::from_root(&root);
        let poly = Polynomial::new(coeffs.iter().map(|c| Rational::from(c.clone())).collect());
        let quotient = poly.divide_exact(&factor.to_polynomial());
        coeffs = quotient
            .integer_coeffs()
            .expect("integer quotient of a primitive polynomial");
        factors.push(factor);
    }

    let residual = if coeffs.len() > 1 {
        Polynomial::new(coeffs.into_iter().map(Rational::from).collect())
    } else {
        debug_assert!(coeffs[0].is_one());
        Polynomial::one()
    };
    Ok(FactoredPolynomial::from_parts(constant, factors, residual))
}

pub use parse::{parse, ParseError};
