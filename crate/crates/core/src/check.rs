//! Exact comparisons: every identity the workbench verifies is reduced to
//! a list of `lhs = rhs` pairs of canonical values.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{Laurent, PlaneElement};
use crate::climit::CRational;
use crate::forms::{word_string, GradedForm};
use crate::scalars::QScalar;

/// A canonical value on one side of an identity.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Scalar(QScalar),
    Element(PlaneElement),
    Form(GradedForm),
    Laurent(Laurent),
    Rational(CRational),
    Flag(bool),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => write!(f, "{s}"),
            Value::Element(e) => write!(f, "{e}"),
            Value::Form(w) => write!(f, "{w}"),
            Value::Laurent(l) => write!(f, "{l}"),
            Value::Rational(r) => write!(f, "{r}"),
            Value::Flag(b) => write!(f, "{b}"),
        }
    }
}

impl From<QScalar> for Value {
    fn from(v: QScalar) -> Self {
        Value::Scalar(v)
    }
}

impl From<PlaneElement> for Value {
    fn from(v: PlaneElement) -> Self {
        Value::Element(v)
    }
}

impl From<GradedForm> for Value {
    fn from(v: GradedForm) -> Self {
        Value::Form(v)
    }
}

impl From<Laurent> for Value {
    fn from(v: Laurent) -> Self {
        Value::Laurent(v)
    }
}

impl From<CRational> for Value {
    fn from(v: CRational) -> Self {
        Value::Rational(v)
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Flag(v)
    }
}

/// Outcome of evaluating a comparison at a numeric value of `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NumericStatus {
    Pass,
    Fail,
    /// Some coefficient has a pole at the chosen `q`.
    Singular,
}

/// One `lhs = rhs` instance of an identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub label: String,
    pub lhs: Value,
    pub rhs: Value,
}

impl Comparison {
    pub fn new(label: impl Into<String>, lhs: impl Into<Value>, rhs: impl Into<Value>) -> Self {
        Comparison { label: label.into(), lhs: lhs.into(), rhs: rhs.into() }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }

    /// `lhs - rhs` where a difference makes sense.
    pub fn residual(&self) -> String {
        let diff = match (&self.lhs, &self.rhs) {
            (Value::Scalar(a), Value::Scalar(b)) => (a - b).to_string(),
            (Value::Element(a), Value::Element(b)) => (a - b).to_string(),
            (Value::Form(a), Value::Form(b)) if a.degree() == b.degree() => (a - b).to_string(),
            (Value::Laurent(a), Value::Laurent(b)) => (a - b).to_string(),
            (Value::Rational(a), Value::Rational(b)) => (a - b).to_string(),
            (a, b) => format!("{a} vs {b}"),
        };
        format!("{}: {}", self.label, diff)
    }

    /// Re-evaluates both sides with `q` replaced by a rational number.
    pub fn numeric(&self, q: &BigRational) -> NumericStatus {
        match (numeric_image(&self.lhs, q), numeric_image(&self.rhs, q)) {
            (Image::Exact, Image::Exact) => {
                if self.holds() {
                    NumericStatus::Pass
                } else {
                    NumericStatus::Fail
                }
            }
            (Image::Singular, _) | (_, Image::Singular) => NumericStatus::Singular,
            (Image::Numbers(a), Image::Numbers(b)) if a == b => NumericStatus::Pass,
            _ => NumericStatus::Fail,
        }
    }
}

enum Image {
    /// No dependence on `q`.
    Exact,
    Singular,
    Numbers(BTreeMap<(String, i64, i64), BigRational>),
}

fn numeric_image(v: &Value, q: &BigRational) -> Image {
    let mut out = BTreeMap::new();
    let mut push = |key: (String, i64, i64), c: &QScalar| -> bool {
        match c.eval(q) {
            Some(r) => {
                if !r.is_zero() {
                    out.insert(key, r);
                }
                true
            }
            None => false,
        }
    };
    let ok = match v {
        Value::Scalar(s) => push((String::new(), 0, 0), s),
        Value::Element(e) => e.terms().all(|(&(m, n), c)| push((String::new(), m, n), c)),
        Value::Form(w) => w.scalar_entries().all(|(word, (m, n), c)| push((word_string(word), m, n), c)),
        _ => return Image::Exact,
    };
    if ok {
        Image::Numbers(out)
    } else {
        Image::Singular
    }
}

/// Keeps only the comparisons that fail.
pub fn failures(cmps: &[Comparison]) -> Vec<&Comparison> {
    cmps.iter().filter(|c| !c.holds()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ZPoly;

    #[test]
    fn numeric_layer_detects_poles() {
        let k = QScalar::new(ZPoly::from_i64s(&[0, 1]), ZPoly::from_i64s(&[-1, 1])).unwrap();
        let c = Comparison::new("k", k.clone(), k);
        assert!(c.holds());
        assert_eq!(c.numeric(&BigRational::from_integer(1.into())), NumericStatus::Singular);
        assert_eq!(c.numeric(&BigRational::from_integer(2.into())), NumericStatus::Pass);
    }

    #[test]
    fn residual_is_difference() {
        let c = Comparison::new("x", PlaneElement::x(), PlaneElement::y());
        assert!(!c.holds());
        assert_eq!(c.residual(), "x: -y + x");
    }
}
