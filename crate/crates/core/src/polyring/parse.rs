//! Recursive-descent parser for the polynomial grammar
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := rational | var | var '^' nat | '(' expr ')' ['^' nat] | '-' factor
//! rational := int | int '/' posint
//! ```
//!
//! The parser is generic over the value being built so the exterior-form
//! grammar (which adds `e{i,…}` basis tokens) reuses it unchanged.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::{Coeff, Monomial, Polynomial, RingSpec};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Int(BigInt),
    Ident(String),
    Basis(Vec<usize>),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
    End,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "{n}"),
            Tok::Ident(s) => f.write_str(s),
            Tok::Basis(idx) => {
                let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
                write!(f, "e{{{}}}", parts.join(","))
            }
            Tok::Plus => f.write_str("+"),
            Tok::Minus => f.write_str("-"),
            Tok::Star => f.write_str("*"),
            Tok::Slash => f.write_str("/"),
            Tok::Caret => f.write_str("^"),
            Tok::LParen => f.write_str("("),
            Tok::RParen => f.write_str(")"),
            Tok::Comma => f.write_str(","),
            Tok::End => f.write_str("end of input"),
        }
    }
}

/// Positions are 1-based character columns.
pub(crate) fn tokenize(text: &str, basis_tokens: bool) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), pos));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            if basis_tokens && s == "e" && i < chars.len() && chars[i] == '{' {
                i += 1;
                let body_start = i;
                while i < chars.len() && chars[i] != '}' {
                    i += 1;
                }
                if i >= chars.len() {
                    return Err(Error::Syntax {
                        pos,
                        msg: "unterminated basis element `e{`".into(),
                    });
                }
                let body: String = chars[body_start..i].iter().collect();
                i += 1;
                let mut indices = Vec::new();
                if !body.trim().is_empty() {
                    for part in body.split(',') {
                        let idx: usize = part.trim().parse().map_err(|_| Error::Syntax {
                            pos,
                            msg: format!("bad basis index `{}`", part.trim()),
                        })?;
                        indices.push(idx);
                    }
                }
                out.push((Tok::Basis(indices), pos));
            } else if basis_tokens && super::is_basis_shorthand(&s) {
                let idx: usize = s[1..].parse().map_err(|_| Error::Syntax {
                    pos,
                    msg: format!("bad basis index in `{s}`"),
                })?;
                out.push((Tok::Basis(vec![idx]), pos));
            } else {
                out.push((Tok::Ident(s), pos));
            }
            continue;
        }
        return Err(Error::Syntax {
            pos,
            msg: format!("unexpected character `{c}`"),
        });
    }
    out.push((Tok::End, chars.len() + 1));
    Ok(out)
}

/// The value domain a parse is evaluated into.
pub(crate) trait ExprAlgebra {
    type Value: Clone;
    fn rational(&self, c: Coeff) -> Self::Value;
    fn variable(&self, name: &str, pos: usize) -> Result<Self::Value>;
    fn basis(&self, _indices: &[usize], pos: usize) -> Result<Self::Value> {
        Err(Error::Syntax {
            pos,
            msg: "basis elements are not allowed here".into(),
        })
    }
    fn add(&self, a: Self::Value, b: Self::Value, pos: usize) -> Result<Self::Value>;
    fn neg(&self, a: Self::Value) -> Self::Value;
    fn mul(&self, a: Self::Value, b: Self::Value, pos: usize) -> Result<Self::Value>;
    fn pow(&self, a: Self::Value, n: u32, pos: usize) -> Result<Self::Value>;
}

pub(crate) struct Parser<'a, A: ExprAlgebra> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    alg: &'a A,
}

impl<'a, A: ExprAlgebra> Parser<'a, A> {
    pub(crate) fn new(toks: Vec<(Tok, usize)>, alg: &'a A) -> Self {
        Parser { toks, at: 0, alg }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, wanted: &str) -> Error {
        let found = match self.peek() {
            Tok::End => "end of input".to_string(),
            t => format!("`{t}`"),
        };
        Error::Syntax {
            pos: self.pos(),
            msg: format!("expected {wanted}, found {found}"),
        }
    }

    pub(crate) fn at_end(&self) -> bool {
        *self.peek() == Tok::End
    }

    pub(crate) fn eat_comma(&mut self) -> bool {
        if *self.peek() == Tok::Comma {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect_end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("operator or end of input"))
        }
    }

    pub(crate) fn expr(&mut self) -> Result<A::Value> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    let (_, pos) = self.bump();
                    let rhs = self.term()?;
                    acc = self.alg.add(acc, rhs, pos)?;
                }
                Tok::Minus => {
                    let (_, pos) = self.bump();
                    let rhs = self.term()?;
                    acc = self.alg.add(acc, self.alg.neg(rhs), pos)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<A::Value> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            let (_, pos) = self.bump();
            let rhs = self.factor()?;
            acc = self.alg.mul(acc, rhs, pos)?;
        }
        Ok(acc)
    }

    fn exponent(&mut self) -> Result<Option<u32>> {
        if *self.peek() != Tok::Caret {
            return Ok(None);
        }
        self.bump();
        match self.bump() {
            (Tok::Int(n), pos) => n.to_u32().map(Some).ok_or(Error::Syntax {
                pos,
                msg: "exponent too large".into(),
            }),
            (_, pos) => Err(Error::Syntax {
                pos,
                msg: "expected a natural exponent".into(),
            }),
        }
    }

    fn factor(&mut self) -> Result<A::Value> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Minus => {
                self.bump();
                let f = self.factor()?;
                Ok(self.alg.neg(f))
            }
            Tok::Int(n) => {
                self.bump();
                let mut c = Coeff::from_integer(n);
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.bump() {
                        (Tok::Int(d), dpos) => {
                            if d.is_zero() {
                                return Err(Error::Syntax {
                                    pos: dpos,
                                    msg: "zero denominator".into(),
                                });
                            }
                            c /= Coeff::from_integer(d);
                        }
                        (_, dpos) => {
                            return Err(Error::Syntax {
                                pos: dpos,
                                msg: "expected a positive integer denominator".into(),
                            })
                        }
                    }
                }
                Ok(self.alg.rational(c))
            }
            Tok::Ident(name) => {
                self.bump();
                let v = self.alg.variable(&name, pos)?;
                match self.exponent()? {
                    Some(n) => self.alg.pow(v, n, pos),
                    None => Ok(v),
                }
            }
            Tok::Basis(idx) => {
                self.bump();
                self.alg.basis(&idx, pos)
            }
            Tok::LParen => {
                self.bump();
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.bump();
                match self.exponent()? {
                    Some(n) => self.alg.pow(inner, n, pos),
                    None => Ok(inner),
                }
            }
            _ => Err(self.unexpected("a number, variable or `(`")),
        }
    }
}

pub(crate) struct PolyAlgebra<'r> {
    pub ring: &'r RingSpec,
}

impl ExprAlgebra for PolyAlgebra<'_> {
    type Value = Polynomial;

    fn rational(&self, c: Coeff) -> Polynomial {
        Polynomial::constant(self.ring, c)
    }

    fn variable(&self, name: &str, pos: usize) -> Result<Polynomial> {
        match self.ring.var_index(name) {
            Some(i) => Ok(Polynomial::monomial(
                self.ring,
                Monomial::var(self.ring.nvars(), i, 1),
                Coeff::from_integer(1.into()),
            )),
            None => Err(Error::UnknownVariable {
                name: name.to_string(),
                pos,
            }),
        }
    }

    fn add(&self, a: Polynomial, b: Polynomial, _pos: usize) -> Result<Polynomial> {
        Ok(&a + &b)
    }

    fn neg(&self, a: Polynomial) -> Polynomial {
        -a
    }

    fn mul(&self, a: Polynomial, b: Polynomial, _pos: usize) -> Result<Polynomial> {
        Ok(&a * &b)
    }

    fn pow(&self, a: Polynomial, n: u32, _pos: usize) -> Result<Polynomial> {
        Ok(a.pow(n))
    }
}

/// Parses one polynomial in canonical form.
pub fn parse_polynomial(text: &str, ring: &RingSpec) -> Result<Polynomial> {
    let alg = PolyAlgebra { ring };
    let mut parser = Parser::new(tokenize(text, false)?, &alg);
    let p = parser.expr()?;
    parser.expect_end()?;
    Ok(p)
}

/// Parses a comma-separated list of polynomials; the empty string is the empty list.
pub fn parse_polynomial_list(text: &str, ring: &RingSpec) -> Result<Vec<Polynomial>> {
    let alg = PolyAlgebra { ring };
    let mut parser = Parser::new(tokenize(text, false)?, &alg);
    let mut out = Vec::new();
    if parser.at_end() {
        return Ok(out);
    }
    loop {
        out.push(parser.expr()?);
        if !parser.eat_comma() {
            break;
        }
    }
    parser.expect_end()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::MonomialOrder;
    use proptest::prelude::*;

    fn ring() -> RingSpec {
        RingSpec::grevlex(&["x", "y"]).unwrap()
    }

    #[test]
    fn grammar_examples() {
        let r = ring();
        let p = parse_polynomial("x^2 - y*x + 1/2", &r).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(p.to_string(), "x^2 - x*y + 1/2");
        assert!(parse_polynomial("0", &r).unwrap().is_zero());
        assert_eq!(
            parse_polynomial("x*(x+y)", &r).unwrap().to_string(),
            "x^2 + x*y"
        );
        assert_eq!(
            parse_polynomial("-(x - 1)^2", &r).unwrap().to_string(),
            "-x^2 + 2*x - 1"
        );
        assert_eq!(parse_polynomial(" - - x", &r).unwrap().to_string(), "x");
        assert_eq!(parse_polynomial("6/4", &r).unwrap().to_string(), "3/2");
    }

    #[test]
    fn errors_carry_positions() {
        let r = ring();
        assert_eq!(
            parse_polynomial("x + z", &r),
            Err(Error::UnknownVariable {
                name: "z".into(),
                pos: 5
            })
        );
        match parse_polynomial("x + * y", &r) {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_polynomial("x)", &r),
            Err(Error::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_polynomial("1/0", &r),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_polynomial("x/2", &r),
            Err(Error::Syntax { .. })
        ));
        assert!(matches!(
            parse_polynomial("", &r),
            Err(Error::Syntax { pos: 1, .. })
        ));
        assert!(matches!(
            parse_polynomial("x # y", &r),
            Err(Error::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse_polynomial("e{1}", &r),
            Err(Error::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_polynomial("e1", &r),
            Err(Error::UnknownVariable { .. })
        ));
    }

    #[test]
    fn lists() {
        let r = RingSpec::grevlex(&["x", "y", "z"]).unwrap();
        let l = parse_polynomial_list("x*y, x*z", &r).unwrap();
        assert_eq!(l.len(), 2);
        assert!(parse_polynomial_list("", &r).unwrap().is_empty());
        assert!(parse_polynomial_list("x,", &r).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        let term = (proptest::collection::vec(0u32..4, 3), -20i64..20, 1i64..6);
        proptest::collection::vec(term, 0..6).prop_map(|ts| {
            let r = RingSpec::grevlex(&["x", "y", "z"]).unwrap();
            Polynomial::from_terms(
                &r,
                ts.into_iter()
                    .map(|(e, n, d)| (Monomial::from_exponents(e), Coeff::new(n.into(), d.into()))),
            )
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(p in arb_poly()) {
            let q = parse_polynomial(&p.to_string(), p.ring()).unwrap();
            prop_assert_eq!(&q, &p);
            // canonical form is idempotent under re-normalisation
            let again = Polynomial::from_terms(p.ring(), p.terms().iter().cloned());
            prop_assert_eq!(again, p.clone());
            let lex = p.ring().with_order(MonomialOrder::Lex).unwrap();
            let pl = p.with_ring(&lex);
            prop_assert_eq!(parse_polynomial(&pl.to_string(), &lex).unwrap(), pl);
        }

        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }
    }
}
