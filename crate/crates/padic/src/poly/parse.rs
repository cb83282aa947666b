//! Recursive descent parser for polynomial expressions in the variable n.
//!
//! Grammar, whitespace-insensitive, with implicit multiplication between
//! adjacent factors:
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor ('*'? factor)*
//! factor  := primary ('^' uint)*
//! primary := uint ('/' uint)? | 'n' | '(' expr ')'
//! ```
//!
//! A top-level product keeps its written structure: parenthesized linear
//! groups become linear factors directly, and only the product of the
//! higher-degree groups is sent through rational-root factorization.

use super::{factor_rational, FactorError, FactoredPolynomial, LinearFactor, Polynomial};
use crate::valuation::Rational;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

const MAX_EXPONENT: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character '{ch}' at position {pos}")]
    UnexpectedChar { ch: char, pos: usize },
    #[error("expected {what} at position {pos}")]
    Expected { what: &'static str, pos: usize },
    #[error("zero denominator in rational literal at position {pos}")]
    ZeroDenominator { pos: usize },
    #[error("exponent at position {pos} exceeds the maximum of 64")]
    ExponentTooLarge { pos: usize },
    #[error(transparent)]
    Factor(#[from] FactorError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(BigInt),
    Var,
    LParen,
    RParen,
    Caret,
    Star,
    Slash,
    Plus,
    Minus,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, ch) = chars[i];
        let tok = match ch {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '0'..='9' => {
                let mut value = BigInt::zero();
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    value = value * BigInt::from(10) + BigInt::from(chars[i].1 as u8 - b'0');
                    i += 1;
                }
                out.push((Tok::Num(value), pos));
                continue;
            }
            'n' => Tok::Var,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '^' => Tok::Caret,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            _ => return Err(ParseError::UnexpectedChar { ch, pos }),
        };
        out.push((tok, pos));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let tok = self.toks.get(self.pos).map(|(t, _)| t.clone());
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn eat(&mut self, tok: Tok) -> bool {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_uint(&mut self, what: &'static str) -> Result<(BigInt, usize), ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Num(v)) => Ok((v, pos)),
            _ => Err(ParseError::Expected { what, pos }),
        }
    }

    fn parse_primary(&mut self) -> Result<Polynomial, ParseError> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Num(numer)) => {
                let value = if self.eat(Tok::Slash) {
                    let (denom, dpos) = self.expect_uint("an integer after '/'")?;
                    if denom.is_zero() {
                        return Err(ParseError::ZeroDenominator { pos: dpos });
                    }
                    Rational::new(numer, denom)
                } else {
                    Rational::from(numer)
                };
                Ok(Polynomial::constant(value))
            }
            Some(Tok::Var) => Ok(Polynomial::from_int_coeffs(&[0, 1])),
            Some(Tok::LParen) => {
                let inner = self.parse_expr()?;
                if self.eat(Tok::RParen) {
                    Ok(inner)
                } else {
                    Err(ParseError::Expected {
                        what: "')'",
                        pos: self.here(),
                    })
                }
            }
            _ => Err(ParseError::Expected {
                what: "a number, 'n', or '('",
                pos,
            }),
        }
    }

    /// A primary with its chained exponents folded into one power.
    fn parse_factor(&mut self) -> Result<(Polynomial, usize), ParseError> {
        let base = self.parse_primary()?;
        let mut exp: usize = 1;
        while self.eat(Tok::Caret) {
            let (value, pos) = self.expect_uint("an exponent")?;
            let value = value
                .to_usize()
                .filter(|&v| v <= MAX_EXPONENT)
                .ok_or(ParseError::ExponentTooLarge { pos })?;
            exp = exp
                .checked_mul(value)
                .filter(|&v| v <= MAX_EXPONENT)
                .ok_or(ParseError::ExponentTooLarge { pos })?;
        }
        Ok((base, exp))
    }

    /// A product of factors, kept as the list of written groups with powers
    /// expanded into repetition.
    fn parse_term(&mut self) -> Result<Vec<Polynomial>, ParseError> {
        let mut groups = Vec::new();
        let (base, exp) = self.parse_factor()?;
        push_power(&mut groups, base, exp);
        loop {
            let explicit = self.eat(Tok::Star);
            let adjacent = matches!(
                self.peek(),
                Some(Tok::Num(_)) | Some(Tok::Var) | Some(Tok::LParen)
            );
            if !explicit && !adjacent {
                break;
            }
            let (base, exp) = self.parse_factor()?;
            push_power(&mut groups, base, exp);
        }
        Ok(groups)
    }

    fn parse_expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut negate = false;
        if !self.eat(Tok::Plus) {
            negate = self.eat(Tok::Minus);
        }
        let mut total = product(&self.parse_term()?);
        if negate {
            total = negated(&total);
        }
        loop {
            let subtract = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.pos += 1;
            let term = product(&self.parse_term()?);
            total = if subtract {
                &total - &term
            } else {
                &total + &term
            };
        }
        Ok(total)
    }

    /// Like parse_expr, but a pure product keeps its group structure.
    fn parse_top(&mut self) -> Result<Vec<Polynomial>, ParseError> {
        let mut negate = false;
        if !self.eat(Tok::Plus) {
            negate = self.eat(Tok::Minus);
        }
        let mut groups = self.parse_term()?;
        if matches!(self.peek(), Some(Tok::Plus) | Some(Tok::Minus)) {
            let mut total = product(&groups);
            if negate {
                total = negated(&total);
            }
            loop {
                let subtract = match self.peek() {
                    Some(Tok::Plus) => false,
                    Some(Tok::Minus) => true,
                    _ => break,
                };
                self.pos += 1;
                let term = product(&self.parse_term()?);
                total = if subtract {
                    &total - &term
                } else {
                    &total + &term
                };
            }
            groups = vec![total];
        } else if negate {
            groups.push(Polynomial::constant(-Rational::one()));
        }
        if self.peek().is_some() {
            return Err(ParseError::Expected {
                what: "end of input",
                pos: self.here(),
            });
        }
        Ok(groups)
    }
}

fn push_power(groups: &mut Vec<Polynomial>, base: Polynomial, exp: usize) {
    if exp == 0 {
        groups.push(Polynomial::one());
    } else {
        groups.extend(std::iter::repeat_n(base, exp));
    }
}

fn product(groups: &[Polynomial]) -> Polynomial {
    groups.iter().fold(Polynomial::one(), |acc, g| &acc * g)
}

fn negated(p: &Polynomial) -> Polynomial {
    &Polynomial::zero() - p
}

/// Collapses written groups into the factored form: constant groups multiply
/// into the constant, degree-1 groups normalize to linear factors, and the
/// product of everything else is factored by rational roots.
fn assemble(groups: Vec<Polynomial>) -> Result<FactoredPolynomial, ParseError> {
    if groups.iter().any(Polynomial::is_zero) {
        return Ok(FactoredPolynomial::zero());
    }
    let mut constant = Rational::one();
    let mut factors: Vec<LinearFactor> = Vec::new();
    let mut residual_product = Polynomial::one();
    for g in &groups {
        match g.degree().expect("nonzero group") {
            0 => constant = &constant * &g.coeffs()[0],
            1 => {
                let (scale, factor) =
                    LinearFactor::extract(g.coeffs()[1].clone(), g.coeffs()[0].clone())
                        .expect("degree-one group");
                constant = constant * scale;
                factors.push(factor);
            }
            _ => residual_product = &residual_product * g,
        }
    }
    let mut residual = Polynomial::one();
    if !residual_product.is_one() {
        let sub = factor_rational(&residual_product)?;
        constant = &constant * sub.constant();
        factors.extend_from_slice(sub.linear_factors());
        residual = sub.residual().clone();
    }
    Ok(FactoredPolynomial::from_parts(constant, factors, residual))
}

/// Parses an expression into factored form, preserving explicit linear
/// factors from the input and factoring everything else by rational roots.
pub fn parse(text: &str) -> Result<FactoredPolynomial, ParseError> {
    let toks = tokenize(text)?;
    let mut parser = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let groups = parser.parse_top()?;
    assemble(groups)
}
