//! Recursive-descent parser for polynomial expressions.
//!
//! Grammar: variables `z1..z{n-1}` and `w`; conjugation prefix `~` (so
//! `~z1`, `~w` are the polarized partners); integer and rational literals
//! `p/q`; the imaginary unit `i`; the radical token `r<s>` (only under a
//! `qi-sqrt<s>` field); operators `+ - * ^` and parentheses. `^` takes a
//! nonnegative integer exponent and binds tighter than `*`.

use crate::error::Error;
use crate::poly::PolarizedPolynomial;
use crate::scalar::{Scalar, ScalarField};
use num_bigint::BigInt;
use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(BigRational),
    ImaginaryUnit,
    Radical(u32),
    Var { conjugated: bool, index: VarIndex },
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum VarIndex {
    Z(usize),
    W,
}

struct Lexer<'a> {
    text: &'a [u8],
    pos: usize,
    n: usize,
    field: ScalarField,
}

impl<'a> Lexer<'a> {
    fn err(&self, pos: usize, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    fn tokens(&mut self) -> Result<Vec<(usize, Token)>, Error> {
        let mut out = Vec::new();
        while self.pos < self.text.len() {
            let start = self.pos;
            let c = self.text[self.pos] as char;
            match c {
                ' ' | '\t' | '\n' | '\r' => {
                    self.pos += 1;
                }
                '+' => {
                    self.pos += 1;
                    out.push((start, Token::Plus));
                }
                '-' => {
                    self.pos += 1;
                    out.push((start, Token::Minus));
                }
                '*' => {
                    self.pos += 1;
                    out.push((start, Token::Star));
                }
                '^' => {
                    self.pos += 1;
                    out.push((start, Token::Caret));
                }
                '(' => {
                    self.pos += 1;
                    out.push((start, Token::LParen));
                }
                ')' => {
                    self.pos += 1;
                    out.push((start, Token::RParen));
                }
                '~' => {
                    self.pos += 1;
                    let idx = self.lex_var(start)?;
                    out.push((
                        start,
                        Token::Var {
                            conjugated: true,
                            index: idx,
                        },
                    ));
                }
                'z' | 'w' => {
                    let idx = self.lex_var(start)?;
                    out.push((
                        start,
                        Token::Var {
                            conjugated: false,
                            index: idx,
                        },
                    ));
                }
                'i' => {
                    self.pos += 1;
                    out.push((start, Token::ImaginaryUnit));
                }
                'r' => {
                    self.pos += 1;
                    let digits = self.lex_digits();
                    if digits.is_empty() {
                        return Err(self.err(start, "expected digits after radical token `r`"));
                    }
                    let base: u32 = digits
                        .parse()
                        .map_err(|_| self.err(start, "radical base out of range"))?;
                    match self.field.radical_base() {
                        None => {
                            return Err(self.err(
                                start,
                                format!(
                                    "radical token r{base} requires the field qi-sqrt{base}"
                                ),
                            ));
                        }
                        Some(s) if s != base => {
                            return Err(self.err(
                                start,
                                format!("radical token r{base} does not match field qi-sqrt{s}"),
                            ));
                        }
                        Some(_) => {}
                    }
                    out.push((start, Token::Radical(base)));
                }
                '0'..='9' => {
                    let numer = self.lex_digits();
                    let numer: BigInt = numer.parse().unwrap();
                    let mut denom = BigInt::from(1);
                    if self.pos < self.text.len() && self.text[self.pos] == b'/' {
                        self.pos += 1;
                        let d = self.lex_digits();
                        if d.is_empty() {
                            return Err(self.err(self.pos, "expected denominator digits"));
                        }
                        denom = d.parse().unwrap();
                        if denom == BigInt::from(0) {
                            return Err(self.err(start, "zero denominator"));
                        }
                    }
                    out.push((start, Token::Number(BigRational::new(numer, denom))));
                }
                other => {
                    return Err(self.err(start, format!("unexpected character `{other}`")));
                }
            }
        }
        Ok(out)
    }

    fn lex_digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.text[start..self.pos]).into_owned()
    }

    fn lex_var(&mut self, start: usize) -> Result<VarIndex, Error> {
        let c = self.text.get(self.pos).copied().map(|b| b as char);
        match c {
            Some('w') => {
                self.pos += 1;
                Ok(VarIndex::W)
            }
            Some('z') => {
                self.pos += 1;
                let digits = self.lex_digits();
                if digits.is_empty() {
                    return Err(self.err(start, "expected an index after `z`"));
                }
                let k: usize = digits
                    .parse()
                    .map_err(|_| self.err(start, "variable index out of range"))?;
                if k == 0 || k > self.n - 1 {
                    return Err(self.err(
                        start,
                        format!(
                            "unknown variable z{k}: dimension {} allows z1..z{} and w",
                            self.n,
                            self.n - 1
                        ),
                    ));
                }
                Ok(VarIndex::Z(k - 1))
            }
            _ => Err(self.err(start, "expected a variable name")),
        }
    }
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    n: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|(p, _)| *p)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.here(),
            msg: msg.into(),
        }
    }

    fn expr(&mut self) -> Result<PolarizedPolynomial, Error> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?).unwrap();
                }
                Some(Token::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?).unwrap();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<PolarizedPolynomial, Error> {
        let mut acc = self.factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.bump();
            acc = acc.mul(&self.factor()?).unwrap();
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<PolarizedPolynomial, Error> {
        if matches!(self.peek(), Some(Token::Minus)) {
            self.bump();
            return Ok(self.factor()?.neg());
        }
        let base = self.atom()?;
        if matches!(self.peek(), Some(Token::Caret)) {
            self.bump();
            match self.bump() {
                Some(Token::Number(q)) => {
                    if !q.is_integer() {
                        return Err(self.err("exponent must be a nonnegative integer"));
                    }
                    let e: u32 = q
                        .to_integer()
                        .try_into()
                        .map_err(|_| self.err("exponent must be a nonnegative integer"))?;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.err("expected an integer exponent after `^`")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PolarizedPolynomial, Error> {
        let n = self.n;
        match self.bump() {
            Some(Token::Number(q)) => Ok(PolarizedPolynomial::constant(
                n,
                Scalar::from_rational(q),
            )),
            Some(Token::ImaginaryUnit) => Ok(PolarizedPolynomial::constant(n, Scalar::i())),
            Some(Token::Radical(s)) => Ok(PolarizedPolynomial::constant(n, Scalar::sqrt_base(s))),
            Some(Token::Var { conjugated, index }) => Ok(match (conjugated, index) {
                (false, VarIndex::Z(k)) => PolarizedPolynomial::var_z(n, k),
                (false, VarIndex::W) => PolarizedPolynomial::var_w(n),
                (true, VarIndex::Z(k)) => PolarizedPolynomial::var_zeta(n, k),
                (true, VarIndex::W) => PolarizedPolynomial::var_eta(n),
            }),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(self.err("expected `)`")),
                }
            }
            _ => Err(self.err("expected a value")),
        }
    }
}

/// Parses an expression into a polarized polynomial on `C^n`; conjugated
/// variables map to the `(zeta, eta)` block.
pub fn parse_poly(
    text: &str,
    n: usize,
    field: ScalarField,
) -> Result<PolarizedPolynomial, Error> {
    if n < 1 {
        return Err(Error::InvalidInput("dimension must be at least 1".into()));
    }
    let mut lexer = Lexer {
        text: text.as_bytes(),
        pos: 0,
        n,
        field,
    };
    let tokens = lexer.tokens()?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        n,
        end: text.len(),
    };
    let poly = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse {
            pos: parser.here(),
            msg: "trailing input".into(),
        });
    }
    Ok(poly)
}

/// Parses a comma-separated list of compact scalars as a diagonal base
/// point `(p, conj p)` for dimension `n`.
pub fn parse_point(text: &str, n: usize) -> Result<crate::poly::Point, Error> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != n {
        return Err(Error::InvalidInput(format!(
            "point needs {n} coordinates, got {}",
            parts.len()
        )));
    }
    let mut p = Vec::with_capacity(n);
    for part in parts {
        p.push(Scalar::parse_compact(part.trim()).map_err(|msg| Error::Parse { pos: 0, msg })?);
    }
    Ok(crate::poly::Point::diagonal(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::PolarizedPolynomial as P;

    #[test]
    fn parses_normal_form() {
        let p = parse_poly("w + ~w + z1*~z1", 2, ScalarField::Qi).unwrap();
        let expected = P::var_w(2)
            .add(&P::var_eta(2))
            .unwrap()
            .add(&P::var_z(2, 0).mul(&P::var_zeta(2, 0)).unwrap())
            .unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn parses_rational_imaginary_coefficient() {
        let p = parse_poly("3/4*i*z1", 2, ScalarField::Qi).unwrap();
        let expected = P::var_z(2, 0).scale(&Scalar::i().mul(&Scalar::from_ratio(3, 4)));
        assert_eq!(p, expected);
    }

    #[test]
    fn parses_sqrt2_counterexample() {
        let field = ScalarField::QiSqrt(2);
        let p = parse_poly(
            "z1^2*~z1^2 - r2*z1*~z1*z2*~z2 + z2^2*~z2^2",
            3,
            field,
        )
        .unwrap();
        assert_eq!(crate::matrix::rank_of(&p), 3);
    }

    #[test]
    fn radical_without_field_flag_is_rejected() {
        let e = parse_poly("r2*z1", 2, ScalarField::Qi).unwrap_err();
        match e {
            Error::Parse { pos, msg } => {
                assert_eq!(pos, 0);
                assert!(msg.contains("qi-sqrt2"), "{msg}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn unknown_variable_and_syntax_errors_carry_positions() {
        let e = parse_poly("w + z5", 3, ScalarField::Qi).unwrap_err();
        match e {
            Error::Parse { pos, msg } => {
                assert_eq!(pos, 4);
                assert!(msg.contains("z5"));
            }
            other => panic!("unexpected error {other:?}"),
        }
        let e2 = parse_poly("w + ", 2, ScalarField::Qi).unwrap_err();
        assert!(matches!(e2, Error::Parse { pos: 4, .. }));
        let e3 = parse_poly("(w + ~w", 2, ScalarField::Qi).unwrap_err();
        assert!(matches!(e3, Error::Parse { .. }));
    }

    #[test]
    fn powers_bind_tighter_than_products() {
        let p = parse_poly("2*z1^2", 2, ScalarField::Qi).unwrap();
        let expected = P::var_z(2, 0).pow(2).scale(&Scalar::from_int(2));
        assert_eq!(p, expected);
        let q = parse_poly("-z1^2", 2, ScalarField::Qi).unwrap();
        assert_eq!(q, P::var_z(2, 0).pow(2).neg());
    }

    #[test]
    fn parse_point_diagonal() {
        let pt = parse_point("1, -1/2i", 2).unwrap();
        assert_eq!(pt.p[0], Scalar::one());
        assert_eq!(pt.q[1], Scalar::i().mul(&Scalar::from_ratio(1, 2)));
    }
}
