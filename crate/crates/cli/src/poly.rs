//! Recursive-descent parser for polynomials with rational coefficients.
//!
//! Grammar:
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := unary (("*" | "/") unary)*
//! unary  := ("+" | "-") unary | power
//! power  := atom ("^" integer)?
//! atom   := integer | variable | "(" expr ")"
//! ```
//! Variables are `x1, x2, …` with aliases `x, y, z, w` for the first four.
//! Division is only allowed by nonzero constants.

use std::collections::BTreeMap;

use monodromy_core::{BigInt, Support, Vector};
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("column {column}: {kind}")]
pub struct ParseError {
    /// One-based character column.
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected {0}")]
    Unexpected(String),
    #[error("expected {expected}, found {found}")]
    Expected { expected: &'static str, found: String },
    #[error("unknown variable {0:?}")]
    UnknownVariable(String),
    #[error("negative exponent")]
    NegativeExponent,
    #[error("exponent {0} is too large")]
    ExponentTooLarge(String),
    #[error("division by a non-constant or zero expression")]
    BadDivision,
    #[error("the polynomial is zero")]
    ZeroPolynomial,
    #[error("{0}")]
    InvalidSupport(String),
}

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 1000;

/// Sparse polynomial: monomial (variable index -> exponent) to coefficient.
type Monomial = BTreeMap<usize, u32>;

#[derive(Clone, Debug, Default, PartialEq)]
struct Poly(BTreeMap<Monomial, BigRational>);

impl Poly {
    fn constant(c: BigRational) -> Self {
        let mut p = Poly::default();
        if !c.is_zero() {
            p.0.insert(Monomial::new(), c);
        }
        p
    }

    fn variable(index: usize) -> Self {
        let mut p = Poly::default();
        p.0.insert(Monomial::from([(index, 1)]), BigRational::one());
        p
    }

    fn as_constant(&self) -> Option<BigRational> {
        match self.0.len() {
            0 => Some(BigRational::zero()),
            1 => self.0.get(&Monomial::new()).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        let entry = self.0.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.retain(|_, v| !v.is_zero());
        }
    }

    fn add(mut self, other: Poly, sign: i32) -> Self {
        for (m, c) in other.0 {
            self.add_term(m, if sign < 0 { -c } else { c });
        }
        self
    }

    fn mul(&self, other: &Poly) -> Self {
        let mut out = Poly::default();
        for (ma, ca) in &self.0 {
            for (mb, cb) in &other.0 {
                let mut m = ma.clone();
                for (v, e) in mb {
                    *m.entry(*v).or_insert(0) += e;
                }
                out.add_term(m, ca * cb);
            }
        }
        out
    }

    fn scale(mut self, c: &BigRational) -> Self {
        self.0.values_mut().for_each(|v| *v *= c);
        self
    }

    fn pow(&self, e: u32) -> Self {
        let mut out = Poly::constant(BigRational::one());
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn new(source: &str) -> Self {
        Self {
            chars: source.chars().enumerate().collect(),
            pos: 0,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|(_, c)| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn column(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|(i, _)| i + 1)
            .unwrap_or(self.chars.len() + 1)
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            column: self.column(),
            kind,
        }
    }

    fn found(&mut self) -> String {
        match self.peek() {
            Some(c) => format!("{c:?}"),
            None => "end of input".to_string(),
        }
    }

    fn expect(&mut self, c: char, what: &'static str) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            let found = self.found();
            Err(self.error(ParseErrorKind::Expected {
                expected: what,
                found,
            }))
        }
    }

    fn parse(mut self) -> Result<Poly, ParseError> {
        let p = self.expr()?;
        if self.peek().is_some() {
            let found = self.found();
            return Err(self.error(ParseErrorKind::Expected {
                expected: "an operator or end of input",
                found,
            }));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.term()?;
        while let Some(op @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = acc.add(rhs, if op == '-' { -1 } else { 1 });
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.unary()?;
        while let Some(op @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let start = self.pos;
            let rhs = self.unary()?;
            if op == '*' {
                acc = acc.mul(&rhs);
            } else {
                match rhs.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc.scale(&c.recip()),
                    _ => {
                        self.pos = start;
                        self.skip_ws();
                        return Err(self.error(ParseErrorKind::BadDivision));
                    }
                }
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(self.unary()?.scale(&-BigRational::one()))
            }
            Some('+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek() {
            Some('-') => Err(self.error(ParseErrorKind::NegativeExponent)),
            Some(c) if c.is_ascii_digit() => {
                let column = self.column();
                let digits = self.digits();
                match digits.parse::<u32>() {
                    Ok(e) if e <= MAX_EXPONENT => Ok(base.pow(e)),
                    _ => Err(ParseError {
                        column,
                        kind: ParseErrorKind::ExponentTooLarge(digits),
                    }),
                }
            }
            _ => {
                let found = self.found();
                Err(self.error(ParseErrorKind::Expected {
                    expected: "a nonnegative integer exponent",
                    found,
                }))
            }
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some((_, c)) = self.chars.get(self.pos).filter(|(_, c)| c.is_ascii_digit()) {
            s.push(*c);
            self.pos += 1;
        }
        s
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let p = self.expr()?;
                self.expect(')', "\")\"")?;
                Ok(p)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let value: BigInt = digits.parse().expect("ascii digits");
                Ok(Poly::constant(BigRational::from_integer(value)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let column = self.column();
                let mut name = String::new();
                while let Some((_, c)) = self
                    .chars
                    .get(self.pos)
                    .filter(|(_, c)| c.is_ascii_alphanumeric() || *c == '_')
                {
                    name.push(*c);
                    self.pos += 1;
                }
                variable_index(&name).map(Poly::variable).ok_or(ParseError {
                    column,
                    kind: ParseErrorKind::UnknownVariable(name),
                })
            }
            Some(c) => Err(self.error(ParseErrorKind::Unexpected(format!("{c:?}")))),
            None => Err(self.error(ParseErrorKind::Unexpected("end of input".into()))),
        }
    }
}

/// Zero-based index of a variable name, if it is one.
fn variable_index(name: &str) -> Option<usize> {
    match name {
        "x" => Some(0),
        "y" => Some(1),
        "z" => Some(2),
        "w" => Some(3),
        _ => {
            let digits = name.strip_prefix('x')?;
            if digits.is_empty() || digits.starts_with('0') || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return None;
            }
            digits.parse::<usize>().ok().map(|i| i - 1)
        }
    }
}

/// Parses a polynomial into its support with exact coefficients. The number
/// of variables is the largest index used, but at least two.
pub fn parse_polynomial(text: &str) -> Result<Support, ParseError> {
    let poly = Parser::new(text).parse()?;
    let at_end = text.chars().count() + 1;
    if poly.0.is_empty() {
        return Err(ParseError {
            column: at_end,
            kind: ParseErrorKind::ZeroPolynomial,
        });
    }
    let n = poly
        .0
        .keys()
        .flat_map(|m| m.keys().copied())
        .max()
        .map_or(2, |i| (i + 1).max(2));
    let terms = poly.0.into_iter().map(|(m, c)| {
        let mut v = vec![BigInt::zero(); n];
        for (i, e) in m {
            v[i] = BigInt::from(e);
        }
        (Vector::new(v), c)
    });
    Support::with_coefficients(n, terms).map_err(|e| ParseError {
        column: at_end,
        kind: ParseErrorKind::InvalidSupport(e.to_string()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn terms(text: &str) -> Vec<(Vec<i64>, (i64, i64))> {
        let spec = parse_polynomial(text).unwrap();
        spec.coefficients()
            .unwrap()
            .iter()
            .map(|(v, c)| {
                let coords = v.coords().iter().map(|x| i64::try_from(x).unwrap()).collect();
                let num = i64::try_from(c.numer()).unwrap();
                let den = i64::try_from(c.denom()).unwrap();
                (coords, (num, den))
            })
            .collect()
    }

    #[test]
    fn basic_supports() {
        assert_eq!(
            terms("x^3 + y^3 + x^2*y^2"),
            vec![(vec![0, 3], (1, 1)), (vec![2, 2], (1, 1)), (vec![3, 0], (1, 1))]
        );
        assert_eq!(
            terms("x^2 + 2*x*y + y^2"),
            vec![(vec![0, 2], (1, 1)), (vec![1, 1], (2, 1)), (vec![2, 0], (1, 1))]
        );
        assert_eq!(terms("x^2 - x^2 + y"), vec![(vec![0, 1], (1, 1))]);
    }

    #[test]
    fn rationals_parentheses_and_indices() {
        assert_eq!(terms("(x+y)^2/2"), terms("x^2/2 + x*y + 1/2*y^2"));
        assert_eq!(terms("-3/4*x1 + x3"), vec![(vec![0, 0, 1], (1, 1)), (vec![1, 0, 0], (-3, 4))]);
        assert_eq!(terms("x*y - y*x + 7"), vec![(vec![0, 0], (7, 1))]);
        let spec = parse_polynomial("w + z").unwrap();
        assert_eq!(spec.n(), 4);
        assert_eq!(parse_polynomial("x").unwrap().n(), 2);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_polynomial("x^-2 + y").unwrap_err();
        assert_eq!(e, ParseError { column: 3, kind: ParseErrorKind::NegativeExponent });
        let e = parse_polynomial("x + q^2").unwrap_err();
        assert_eq!(e.column, 5);
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("q".into()));
        assert_eq!(parse_polynomial("x0").unwrap_err().kind, ParseErrorKind::UnknownVariable("x0".into()));
        assert_eq!(parse_polynomial("(x + y").unwrap_err().column, 7);
        assert_eq!(parse_polynomial("x / y").unwrap_err(), ParseError { column: 5, kind: ParseErrorKind::BadDivision });
        assert_eq!(parse_polynomial("x / (1 - 1)").unwrap_err().kind, ParseErrorKind::BadDivision);
        assert_eq!(parse_polynomial("x - x").unwrap_err().kind, ParseErrorKind::ZeroPolynomial);
        assert!(matches!(parse_polynomial("2x").unwrap_err().kind, ParseErrorKind::Expected { .. }));
        assert!(matches!(parse_polynomial("").unwrap_err().kind, ParseErrorKind::Unexpected(_)));
        assert!(matches!(parse_polynomial("x^99999").unwrap_err().kind, ParseErrorKind::ExponentTooLarge(_)));
        assert_eq!(parse_polynomial("x $ y").unwrap_err().column, 3);
    }
}
