//! Commutative Laurent polynomials in `x, y` over the rationals: the q = 1
//! image of the quantum plane.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::plane::{monomial_string, Monomial, PlaneElement};
use crate::scalars::QScalar;

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent {
    terms: BTreeMap<Monomial, BigRational>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(m: i64, n: i64, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((m, n), c);
        }
        Laurent { terms }
    }

    pub fn x() -> Self {
        Self::monomial(1, 0, BigRational::one())
    }

    pub fn y() -> Self {
        Self::monomial(0, 1, BigRational::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: i64, n: i64) -> BigRational {
        self.terms.get(&(m, n)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub(crate) fn add_term(&mut self, k: Monomial, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let v = self.terms.entry(k).or_insert_with(BigRational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Laurent { terms: self.terms.iter().map(|(k, c)| (*k, c * s)).collect() }
    }

    /// Multiplication by the unit `x^m y^n`.
    pub fn shift(&self, m: i64, n: i64) -> Self {
        Laurent { terms: self.terms.iter().map(|(&(a, b), c)| ((a + m, b + n), c.clone())).collect() }
    }

    pub fn min_exponents(&self) -> Option<(i64, i64)> {
        let mx = self.terms.keys().map(|k| k.0).min()?;
        let my = self.terms.keys().map(|k| k.1).min()?;
        Some((mx, my))
    }

    pub fn as_monomial(&self) -> Option<(Monomial, &BigRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(k, c)| (*k, c))
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Lexicographically largest monomial (x exponent first).
    pub fn leading(&self) -> Option<(Monomial, &BigRational)> {
        self.terms.iter().next_back().map(|(k, c)| (*k, c))
    }

    pub fn dx(&self) -> Self {
        let mut out = Self::zero();
        for (&(m, n), c) in &self.terms {
            out.add_term((m - 1, n), &(c * BigRational::from_integer(BigInt::from(m))));
        }
        out
    }

    pub fn dy(&self) -> Self {
        let mut out = Self::zero();
        for (&(m, n), c) in &self.terms {
            out.add_term((m, n - 1), &(c * BigRational::from_integer(BigInt::from(n))));
        }
        out
    }

    /// Normal-ordered lift with the same coefficients.
    pub fn lift(&self) -> PlaneElement {
        PlaneElement::from_terms(self.terms.iter().map(|(k, c)| (*k, QScalar::from_ratio(c))))
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (&(m, n), c) in &self.terms {
            if (m < 0 && x.is_zero()) || (n < 0 && y.is_zero()) {
                return None;
            }
            acc += c * pow_rat(x, m) * pow_rat(y, n);
        }
        Some(acc)
    }
}

fn pow_rat(b: &BigRational, e: i64) -> BigRational {
    let p = num_traits::pow(b.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&(m, n), c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let body = monomial_string(m, n);
            if (m, n) == (0, 0) {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{body}")?;
            } else {
                write!(f, "{mag}*{body}")?;
            }
        }
        Ok(())
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c);
        }
        out
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        self + &(-rhs)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&(a, b), c1) in &self.terms {
            for (&(c, d), c2) in &rhs.terms {
                out.add_term((a + c, b + d), &(c1 * c2));
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct WireTerm {
    m: i64,
    n: i64,
    c: String,
}

impl Serialize for Laurent {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<WireTerm> = self.terms.iter().map(|(&(m, n), c)| WireTerm { m, n, c: c.to_string() }).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Laurent {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let v = Vec::<WireTerm>::deserialize(d)?;
        let mut out = Laurent::zero();
        for t in v {
            let c: BigRational = t.c.parse().map_err(|_| D::Error::custom(format!("bad rational '{}'", t.c)))?;
            out.add_term((t.m, t.n), &c);
        }
        Ok(out)
    }
}
