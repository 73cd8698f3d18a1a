//! Parser for the expression language.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := ("-" | "+")? factor ("*" factor)*
//! factor := atom ("^" signed-integer)?
//! atom   := "x" | "y" | "q" | "dx" | "dy" | "t1" | "t2" | "t3" | "tau"
//!         | integer ("/" integer)? | "(" expr ")"
//! ```
//!
//! `*` is the noncommutative product and keeps the order of its factors.
//! The 1-form symbols need a calculus.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::PlaneElement;
use crate::error::{Error, Result};
use crate::forms::{Calculus, Coordinate, GradedForm};
use crate::scalars::QScalar;

/// A parsed and normal-ordered expression.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Element(PlaneElement),
    Form(GradedForm),
}

impl Expr {
    pub fn degree(&self) -> usize {
        match self {
            Expr::Element(_) => 0,
            Expr::Form(f) => f.degree(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Expr::Element(e) => e.is_zero(),
            Expr::Form(f) => f.is_zero(),
        }
    }

    /// The value as a form of its degree.
    pub fn into_form(self) -> GradedForm {
        match self {
            Expr::Element(e) => GradedForm::function(e),
            Expr::Form(f) => f,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Element(e) => write!(f, "{e}"),
            Expr::Form(g) => write!(f, "{g}"),
        }
    }
}

/// Parses `text`; 1-form symbols resolve against `calc` when given.
pub fn parse(text: &str, calc: Option<&Calculus>) -> Result<Expr> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, at: 0, end: text.len(), calc };
    let v = p.expr()?;
    if let Some(t) = p.peek() {
        return Err(Error::Parse { pos: t.pos, msg: format!("unexpected '{}'", t.kind) });
    }
    Ok(match (v, calc) {
        (Value::Fn(e), _) => Expr::Element(e),
        (Value::Form(f), _) if f.degree() == 0 => Expr::Element(f.coeff(&[])),
        (Value::Form(f), _) => Expr::Form(f),
    })
}

/// Parses an algebra element, rejecting forms of positive degree.
pub fn parse_element(text: &str) -> Result<PlaneElement> {
    match parse(text, None)? {
        Expr::Element(e) => Ok(e),
        Expr::Form(f) => Err(Error::DegreeMismatch(0, f.degree())),
    }
}

/// Parses a form of the given degree against a calculus.
pub fn parse_form(text: &str, calc: &Calculus, degree: usize) -> Result<GradedForm> {
    let f = parse(text, Some(calc))?.into_form();
    if f.degree() != degree && !f.is_zero() {
        return Err(Error::DegreeMismatch(degree, f.degree()));
    }
    Ok(if f.is_zero() { GradedForm::zero(degree) } else { f })
}

#[derive(Clone, Debug, PartialEq)]
enum Kind {
    Ident(String),
    Int(BigInt),
    Op(char),
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Kind::Ident(s) => write!(f, "{s}"),
            Kind::Int(i) => write!(f, "{i}"),
            Kind::Op(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: Kind,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
        } else if ch.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, c)) = chars.peek().filter(|(_, c)| c.is_ascii_digit()) {
                s.push(c);
                chars.next();
            }
            out.push(Token { kind: Kind::Int(s.parse().expect("digits")), pos });
        } else if ch.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&(_, c)) = chars.peek().filter(|(_, c)| c.is_ascii_alphanumeric()) {
                s.push(c);
                chars.next();
            }
            out.push(Token { kind: Kind::Ident(s), pos });
        } else if "+-*^/()".contains(ch) {
            out.push(Token { kind: Kind::Op(ch), pos });
            chars.next();
        } else {
            return Err(Error::Parse { pos, msg: format!("unexpected character '{ch}'") });
        }
    }
    Ok(out)
}

enum Value {
    Fn(PlaneElement),
    Form(GradedForm),
}

struct Parser<'a> {
    tokens: Vec<Token>,
    at: usize,
    end: usize,
    calc: Option<&'a Calculus>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek().is_some_and(|t| t.kind == Kind::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect_int(&mut self) -> Result<BigInt> {
        match self.peek() {
            Some(Token { kind: Kind::Int(i), .. }) => {
                let i = i.clone();
                self.at += 1;
                Ok(i)
            }
            _ => Err(Error::Parse { pos: self.pos(), msg: "expected an integer".into() }),
        }
    }

    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            let pos = self.pos();
            if self.eat('+') {
                let t = self.term()?;
                acc = self.add(acc, t, pos, false)?;
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.add(acc, t, pos, true)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Value> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.factor()?;
        loop {
            let pos = self.pos();
            if !self.eat('*') {
                break;
            }
            let f = self.factor()?;
            acc = self.mul(acc, f, pos)?;
        }
        Ok(if negate { neg(acc) } else { acc })
    }

    fn factor(&mut self) -> Result<Value> {
        let base = self.atom()?;
        let pos = self.pos();
        if !self.eat('^') {
            return Ok(base);
        }
        let negative = self.eat('-');
        let k = self.expect_int()?;
        let k: i64 = i64::try_from(&k).map_err(|_| Error::Parse { pos, msg: "exponent too large".into() })?;
        let k = if negative { -k } else { k };
        match base {
            Value::Fn(e) => e.pow(k).map(Value::Fn).map_err(|e| Error::Parse { pos, msg: e.to_string() }),
            Value::Form(f) => {
                if k < 0 {
                    return Err(Error::Parse { pos, msg: "forms have no inverse".into() });
                }
                let mut acc = Value::Fn(PlaneElement::one());
                for _ in 0..k {
                    acc = self.mul(acc, Value::Form(f.clone()), pos)?;
                }
                Ok(acc)
            }
        }
    }

    fn atom(&mut self) -> Result<Value> {
        let Some(tok) = self.peek().cloned() else {
            return Err(Error::Parse { pos: self.end, msg: "unexpected end of input".into() });
        };
        self.at += 1;
        match tok.kind {
            Kind::Op('(') => {
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse { pos: self.pos(), msg: "expected ')'".into() });
                }
                Ok(v)
            }
            Kind::Int(num) => {
                let den = if self.eat('/') { self.expect_int()? } else { BigInt::from(1) };
                if den.is_zero() {
                    return Err(Error::Parse { pos: tok.pos, msg: "zero denominator".into() });
                }
                let r = BigRational::new(num, den);
                Ok(Value::Fn(PlaneElement::scalar(QScalar::from_ratio(&r))))
            }
            Kind::Ident(name) => self.symbol(&name, tok.pos),
            Kind::Op(c) => Err(Error::Parse { pos: tok.pos, msg: format!("unexpected '{c}'") }),
        }
    }

    fn symbol(&self, name: &str, pos: usize) -> Result<Value> {
        match name {
            "x" => return Ok(Value::Fn(PlaneElement::x())),
            "y" => return Ok(Value::Fn(PlaneElement::y())),
            "q" => return Ok(Value::Fn(PlaneElement::scalar(QScalar::q()))),
            _ => {}
        }
        let unknown = || Error::UnknownSymbol { pos, symbol: name.to_string() };
        let calc = self.calc.ok_or_else(unknown)?;
        let form = match name {
            "dx" => calc.differential(Coordinate::Dx),
            "dy" => calc.differential(Coordinate::Dy),
            "tau" => calc.differential(Coordinate::Tau),
            _ => {
                let a = name
                    .strip_prefix('t')
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&a| (1..=calc.n()).contains(&a) && a <= 3)
                    .ok_or_else(unknown)?;
                calc.theta_form(a - 1)
            }
        };
        Ok(Value::Form(form))
    }

    fn add(&self, a: Value, b: Value, pos: usize, subtract: bool) -> Result<Value> {
        let b = if subtract { neg(b) } else { b };
        match (a, b) {
            (Value::Fn(x), Value::Fn(y)) => Ok(Value::Fn(&x + &y)),
            (a, b) => {
                let (fa, fb) = (as_form(a), as_form(b));
                if fa.is_zero() {
                    return Ok(Value::Form(fb));
                }
                if fb.is_zero() {
                    return Ok(Value::Form(fa));
                }
                if fa.degree() != fb.degree() {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("cannot add forms of degree {} and {}", fa.degree(), fb.degree()),
                    });
                }
                Ok(Value::Form(&fa + &fb))
            }
        }
    }

    fn mul(&self, a: Value, b: Value, pos: usize) -> Result<Value> {
        match (a, b) {
            (Value::Fn(x), Value::Fn(y)) => Ok(Value::Fn(&x * &y)),
            (a, b) => {
                let calc = self.calc.expect("forms only arise with a calculus");
                calc.wedge(&as_form(a), &as_form(b))
                    .map(Value::Form)
                    .map_err(|e| Error::Parse { pos, msg: e.to_string() })
            }
        }
    }
}

fn as_form(v: Value) -> GradedForm {
    match v {
        Value::Fn(e) => GradedForm::function(e),
        Value::Form(f) => f,
    }
}

fn neg(v: Value) -> Value {
    match v {
        Value::Fn(e) => Value::Fn(-&e),
        Value::Form(f) => Value::Form(-f),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{self, PresetId};

    #[test]
    fn defining_relation_vanishes() {
        assert!(parse_element("x*y - q*y*x").unwrap().is_zero());
    }

    #[test]
    fn inverse_powers_are_normal_ordered() {
        let e = parse_element("y^-1 * x^-1").unwrap();
        assert_eq!(e, PlaneElement::monomial(-1, -1, QScalar::q_pow(-1)));
    }

    #[test]
    fn rational_literals_and_parentheses() {
        let e = parse_element("(1/4 + 3/4)*x - x").unwrap();
        assert!(e.is_zero());
        let s = parse_element("2*q*(q^2 + 1)^-1").unwrap();
        let expected =
            &QScalar::from_int(2) * &(&QScalar::q() * &(&QScalar::q_pow(2) + &QScalar::one()).inv().unwrap());
        assert_eq!(s, PlaneElement::scalar(expected));
    }

    #[test]
    fn coordinate_relation_in_calc2a() {
        let calc = presets::build(PresetId::Calc2a, None).unwrap();
        assert!(parse("x * dx - q * dx * x", Some(&calc)).unwrap().is_zero());
    }

    #[test]
    fn form_symbols_need_a_calculus() {
        assert!(matches!(parse("dx", None), Err(Error::UnknownSymbol { pos: 0, .. })));
        let calc = presets::build(PresetId::Calc2a, None).unwrap();
        assert!(matches!(parse("x + t3", Some(&calc)), Err(Error::UnknownSymbol { pos: 4, .. })));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(parse("x + * y", None), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse("(x", None), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse("x $ y", None), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse("x y", None), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn mixed_degrees_do_not_add() {
        let calc = presets::build(PresetId::Calc2a, None).unwrap();
        assert!(parse("x + dx", Some(&calc)).is_err());
    }

    #[test]
    fn printing_then_parsing_is_identity() {
        let calc = presets::build(PresetId::Calc3a, None).unwrap();
        for text in ["x*dy - q*dy*x", "t2*t1 + x^-2*y*t3*t1", "(q^2 + 1)^-1*x*y^-3 - 2/3", "tau*tau"] {
            let e = parse(text, Some(&calc)).unwrap();
            let again = parse(&e.to_string(), Some(&calc)).unwrap();
            if e.is_zero() {
                assert!(again.is_zero());
            } else {
                assert_eq!(e, again, "{text} -> {e}");
            }
        }
    }
}
