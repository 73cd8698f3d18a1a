use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::commutative::Laurent;
use crate::error::{Error, Result};
use crate::scalars::{LimitQ1, QScalar};

/// Exponent pair `(m, n)` of the normal-ordered monomial `x^m y^n`.
pub type Monomial = (i64, i64);

/// An element of the generalized quantum plane, `sum c_mn(q) x^m y^n`
/// with every `x` written to the left of every `y`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PlaneElement {
    terms: BTreeMap<Monomial, QScalar>,
}

/// Coefficient picked up when `x^a y^b * x^c y^d` is normal ordered:
/// moving `y^b` past `x^c` costs `q^(-b c)`.
pub fn reorder_factor(b: i64, c: i64) -> QScalar {
    QScalar::q_pow(-b * c)
}

impl PlaneElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(QScalar::one())
    }

    pub fn scalar(c: QScalar) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(m: i64, n: i64, c: QScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((m, n), c);
        }
        PlaneElement { terms }
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, QScalar::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, QScalar::one())
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (Monomial, QScalar)>) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, &c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &QScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: i64, n: i64) -> QScalar {
        self.terms.get(&(m, n)).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, k: Monomial, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    /// The scalar value when the element lies in the span of `1`.
    pub fn as_scalar(&self) -> Option<QScalar> {
        match self.terms.len() {
            0 => Some(QScalar::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// The single term of a monomial element.
    pub fn as_monomial(&self) -> Option<(Monomial, &QScalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    pub fn scale(&self, s: &QScalar) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        PlaneElement { terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect() }
    }

    pub fn commutator(&self, other: &PlaneElement) -> PlaneElement {
        &(self * other) - &(other * self)
    }

    /// For generic `q` the center is the scalars, so centrality is a
    /// support check.
    pub fn is_central(&self) -> bool {
        self.terms.keys().all(|&k| k == (0, 0))
    }

    /// Inverse of a monomial with nonzero coefficient:
    /// `(c x^m y^n)^-1 = c^-1 q^(-mn) x^-m y^-n`.
    pub fn inverse(&self) -> Result<Self> {
        let ((m, n), c) =
            self.as_monomial().ok_or_else(|| Error::NotInvertible(format!("{self} is not a single monomial")))?;
        let coeff = &c.inv()? * &QScalar::q_pow(-m * n);
        Ok(Self::monomial(-m, -n, coeff))
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    pub fn map_coeffs(&self, f: impl Fn(&QScalar) -> Result<QScalar>) -> Result<Self> {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(*k, &f(c)?);
        }
        Ok(out)
    }

    /// Commutative image at `q = 1`; errors on the first coefficient with a pole.
    pub fn eval_q1(&self) -> Result<Laurent> {
        let mut out = Laurent::zero();
        for (&(m, n), c) in &self.terms {
            match c.limit_q1() {
                LimitQ1::Value(v) => out.add_term((m, n), &v),
                LimitQ1::Pole(order) => return Err(Error::PoleAtOne { monomial: monomial_string(m, n), order }),
            }
        }
        Ok(out)
    }

    /// Largest pole order at `q = 1` among the coefficients, 0 if regular.
    pub fn pole_order_q1(&self) -> u32 {
        self.terms
            .values()
            .map(|c| match c.limit_q1() {
                LimitQ1::Pole(k) => k,
                LimitQ1::Value(_) => 0,
            })
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<(i64, i64)> {
        self.as_monomial().map(|(k, _)| k)
    }
}

pub(crate) fn monomial_string(m: i64, n: i64) -> String {
    let mut parts = Vec::new();
    match m {
        0 => {}
        1 => parts.push("x".to_string()),
        _ => parts.push(format!("x^{m}")),
    }
    match n {
        0 => {}
        1 => parts.push("y".to_string()),
        _ => parts.push(format!("y^{n}")),
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Writes `c*monomial` in the expression grammar, folding signs into the
/// separator. Returns whether anything was written.
pub(crate) fn write_term(f: &mut fmt::Formatter<'_>, first: bool, c: &QScalar, body: &str) -> fmt::Result {
    let negative_leading = c.is_negative_term();
    let (sign, mag) = if negative_leading { ("-", -c) } else { ("+", c.clone()) };
    if first {
        if sign == "-" {
            write!(f, "-")?;
        }
    } else {
        write!(f, " {sign} ")?;
    }
    match (mag.is_one(), body.is_empty()) {
        (true, true) => write!(f, "1"),
        (true, false) => write!(f, "{body}"),
        (false, true) => write!(f, "{}", paren(&mag)),
        (false, false) => write!(f, "{}*{body}", paren(&mag)),
    }
}

fn paren(c: &QScalar) -> String {
    if c.is_compound() {
        format!("({c})")
    } else {
        c.to_string()
    }
}

impl fmt::Display for PlaneElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(m, n), c)) in self.terms.iter().enumerate() {
            let body = if (m, n) == (0, 0) { String::new() } else { monomial_string(m, n) };
            write_term(f, i == 0, c, &body)?;
        }
        Ok(())
    }
}

impl Add for &PlaneElement {
    type Output = PlaneElement;
    fn add(self, rhs: &PlaneElement) -> PlaneElement {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c);
        }
        out
    }
}

impl Sub for &PlaneElement {
    type Output = PlaneElement;
    fn sub(self, rhs: &PlaneElement) -> PlaneElement {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, &-c);
        }
        out
    }
}

impl Neg for &PlaneElement {
    type Output = PlaneElement;
    fn neg(self) -> PlaneElement {
        PlaneElement { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Mul for &PlaneElement {
    type Output = PlaneElement;
    fn mul(self, rhs: &PlaneElement) -> PlaneElement {
        let mut out = PlaneElement::zero();
        for (&(a, b), c1) in &self.terms {
            for (&(c, d), c2) in &rhs.terms {
                let coeff = &(c1 * c2) * &reorder_factor(b, c);
                out.add_term((a + c, b + d), &coeff);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for PlaneElement {
            type Output = PlaneElement;
            fn $m(self, rhs: PlaneElement) -> PlaneElement {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&PlaneElement> for PlaneElement {
            type Output = PlaneElement;
            fn $m(self, rhs: &PlaneElement) -> PlaneElement {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PlaneElement {
    type Output = PlaneElement;
    fn neg(self) -> PlaneElement {
        -&self
    }
}

impl From<QScalar> for PlaneElement {
    fn from(c: QScalar) -> Self {
        Self::scalar(c)
    }
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    m: i64,
    n: i64,
    c: QScalar,
}

impl Serialize for PlaneElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<WireTerm> = self.terms.iter().map(|(&(m, n), c)| WireTerm { m, n, c: c.clone() }).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for PlaneElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<WireTerm>::deserialize(d)?;
        let mut out = PlaneElement::zero();
        for t in v {
            if out.terms.contains_key(&(t.m, t.n)) {
                return Err(D::Error::custom("duplicate monomial"));
            }
            out.add_term((t.m, t.n), &t.c);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ZPoly;

    fn x() -> PlaneElement {
        PlaneElement::x()
    }
    fn y() -> PlaneElement {
        PlaneElement::y()
    }
    fn mono(m: i64, n: i64, c: QScalar) -> PlaneElement {
        PlaneElement::monomial(m, n, c)
    }

    #[test]
    fn defining_relation() {
        assert_eq!(&y() * &x(), mono(1, 1, QScalar::q_pow(-1)));
        assert!((&(&x() * &y()) - &(&y() * &x()).scale(&QScalar::q())).is_zero());
    }

    #[test]
    fn inverse_generators_reorder() {
        let yi = y().inverse().unwrap();
        let xi = x().inverse().unwrap();
        let prod = &yi * &xi;
        assert_eq!(prod, mono(-1, -1, QScalar::q_pow(-1)));
        // candidate inverse of xy: (xy)(y^-1 x^-1) = 1
        let xy = &x() * &y();
        assert!((&xy * &(&yi * &xi)).as_scalar().unwrap().is_one());
        assert!((&xy.inverse().unwrap() * &xy).as_scalar().unwrap().is_one());
    }

    #[test]
    fn reordering_single_crossing() {
        // (x^2 y)(x y^2): one y crosses one x
        let a = mono(2, 1, QScalar::one());
        let b = mono(1, 2, QScalar::one());
        assert_eq!(&a * &b, mono(3, 3, QScalar::q_pow(-1)));
    }

    #[test]
    fn commutators() {
        assert!(x().commutator(&x()).is_zero());
        // [x^2, y] = (1 - q^-2) x^2 y
        let c = mono(2, 0, QScalar::one()).commutator(&y());
        let expected = &QScalar::one() - &QScalar::q_pow(-2);
        assert_eq!(c, mono(2, 1, expected));
    }

    #[test]
    fn centrality() {
        assert!(PlaneElement::one().is_central());
        assert!(!x().is_central());
        let xy = &x() * &y();
        assert!(!xy.is_central());
        assert!(!x().commutator(&xy).is_zero());
    }

    #[test]
    fn general_inversion_is_rejected() {
        assert!((&x() + &y()).inverse().is_err());
        assert!(PlaneElement::zero().inverse().is_err());
    }

    #[test]
    fn classical_image() {
        let e = &x() + &y().scale(&QScalar::q());
        assert_eq!(e.eval_q1().unwrap().to_string(), "y + x");
        let k = QScalar::new(ZPoly::from_i64s(&[0, 1]), ZPoly::from_i64s(&[-1, 1])).unwrap();
        let lambda = y().scale(&k);
        match lambda.eval_q1() {
            Err(Error::PoleAtOne { order, .. }) => assert_eq!(order, 1),
            other => panic!("expected pole, got {other:?}"),
        }
        let regular = lambda.scale(&QScalar::from_poly(ZPoly::from_i64s(&[-1, 1])));
        assert_eq!(regular.eval_q1().unwrap(), y().eval_q1().unwrap());
    }

    #[test]
    fn wire_format_is_sorted() {
        let e = &mono(1, 0, QScalar::from_int(2)) + &mono(-1, 3, QScalar::one());
        let s = serde_json::to_string(&e).unwrap();
        assert!(s.starts_with(r#"[{"m":-1,"n":3"#));
        let back: PlaneElement = serde_json::from_str(&s).unwrap();
        assert_eq!(back, e);
    }
}
