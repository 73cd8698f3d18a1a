//! The coefficient field Q(q): rational functions of the deformation parameter.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::poly::ZPoly;
use crate::error::{Error, Result};

/// An exact element of Q(q) kept in canonical form: `gcd(num, den) = 1`
/// in Z[q] and the leading coefficient of `den` is positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QScalar {
    num: ZPoly,
    den: ZPoly,
}

/// Behaviour of a scalar as `q -> 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitQ1 {
    Value(BigRational),
    Pole(u32),
}

impl QScalar {
    pub fn new(num: ZPoly, den: ZPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: ZPoly, den: ZPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let (mut num, mut den) = if den.is_one() {
            (num, den)
        } else {
            let g = num.gcd(&den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g).expect("gcd divides numerator"), den.div_exact(&g).expect("gcd divides denominator"))
            }
        };
        if den.lc().is_negative() {
            num = -&num;
            den = -&den;
        }
        QScalar { num, den }
    }

    pub fn zero() -> Self {
        QScalar { num: ZPoly::zero(), den: ZPoly::one() }
    }

    pub fn one() -> Self {
        QScalar { num: ZPoly::one(), den: ZPoly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        QScalar { num: ZPoly::constant(n), den: ZPoly::one() }
    }

    pub fn from_ratio(r: &BigRational) -> Self {
        Self::canonical(ZPoly::constant(r.numer().clone()), ZPoly::constant(r.denom().clone()))
    }

    pub fn from_poly(p: ZPoly) -> Self {
        QScalar { num: p, den: ZPoly::one() }
    }

    /// The deformation parameter itself.
    pub fn q() -> Self {
        Self::from_poly(ZPoly::monomial(BigInt::one(), 1))
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let m = ZPoly::monomial(BigInt::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(m)
        } else {
            QScalar { num: ZPoly::one(), den: m }
        }
    }

    pub fn num(&self) -> &ZPoly {
        &self.num
    }

    pub fn den(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value as a rational number when it does not depend on `q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(BigRational::new(self.num.tc(), self.den.tc()))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &QScalar) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..k.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Value or pole order at `q = 1`.
    pub fn limit_q1(&self) -> LimitQ1 {
        let d1 = self.den.eval_at_one();
        if !d1.is_zero() {
            return LimitQ1::Value(BigRational::new(self.num.eval_at_one(), d1));
        }
        // canonical form: the factor (q - 1) cannot also divide the numerator
        LimitQ1::Pole(self.den.multiplicity_at_one())
    }

    /// Value at a rational `q`; `None` at a pole.
    pub fn eval(&self, at: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(at) / d)
    }

    /// Substitutes `q -> r` for a rational function `r`.
    pub fn substitute(&self, r: &QScalar) -> Result<QScalar> {
        let horner = |p: &ZPoly| {
            let mut acc = QScalar::zero();
            for c in p.coeffs().iter().rev() {
                acc = &(&acc * r) + &QScalar::from_bigint(c.clone());
            }
            acc
        };
        horner(&self.num).checked_div(&horner(&self.den))
    }
}

impl Default for QScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Add for &QScalar {
    type Output = QScalar;
    fn add(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return QScalar::canonical(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        QScalar::canonical(num, &self.den * &rhs.den)
    }
}

impl Sub for &QScalar {
    type Output = QScalar;
    fn sub(self, rhs: &QScalar) -> QScalar {
        self + &(-rhs)
    }
}

impl Mul for &QScalar {
    type Output = QScalar;
    fn mul(self, rhs: &QScalar) -> QScalar {
        if self.is_zero() || rhs.is_zero() {
            return QScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QScalar::from_poly(&self.num * &rhs.num);
        }
        // cross-cancel before multiplying to keep the gcds small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let mut num = &n1 * &n2;
        let mut den = &d1 * &d2;
        if den.lc().is_negative() {
            num = -&num;
            den = -&den;
        }
        QScalar { num, den }
    }
}

impl Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: QScalar) -> QScalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, rhs: &QScalar) -> QScalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        -&self
    }
}

impl AddAssign<&QScalar> for QScalar {
    fn add_assign(&mut self, rhs: &QScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QScalar> for QScalar {
    fn sub_assign(&mut self, rhs: &QScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&QScalar> for QScalar {
    fn mul_assign(&mut self, rhs: &QScalar) {
        *self = &*self * rhs;
    }
}

impl Sum for QScalar {
    fn sum<I: Iterator<Item = QScalar>>(iter: I) -> Self {
        iter.fold(QScalar::zero(), |a, b| a + b)
    }
}

impl QScalar {
    /// Splits off the power of `q` and the constant content of the
    /// denominator: `self = L / rest` with `L` a Laurent polynomial in `q`
    /// (exponent, coefficient pairs, descending) and `rest` free of both.
    fn laurent_split(&self) -> (Vec<(i64, BigRational)>, Option<ZPoly>) {
        let coeffs = self.den.coeffs();
        let k = coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let rest = ZPoly::from_coeffs(coeffs[k..].to_vec());
        let (scale, rest) = if rest.is_constant() { (rest.lc(), None) } else { (BigInt::one(), Some(rest)) };
        let mut terms: Vec<(i64, BigRational)> =
            self.num.terms().map(|(e, c)| (e as i64 - k as i64, BigRational::new(c.clone(), scale.clone()))).collect();
        terms.reverse();
        (terms, rest)
    }

    /// True when a rendering as a factor needs parentheses.
    pub(crate) fn is_compound(&self) -> bool {
        self.num.terms().count() > 1
    }

    /// True when the rendering starts with a minus sign that can be pulled
    /// out as the sign of a term.
    pub(crate) fn is_negative_term(&self) -> bool {
        !self.is_compound() && self.num.lc().is_negative()
    }
}

fn write_laurent(f: &mut fmt::Formatter<'_>, terms: &[(i64, BigRational)]) -> fmt::Result {
    for (i, (e, c)) in terms.iter().enumerate() {
        let abs = c.abs();
        if i == 0 {
            if c.is_negative() {
                write!(f, "-")?;
            }
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        match (*e, abs.is_one()) {
            (0, _) => write!(f, "{abs}")?,
            (1, true) => write!(f, "q")?,
            (1, false) => write!(f, "{abs}*q")?,
            (_, true) => write!(f, "q^{e}")?,
            (_, false) => write!(f, "{abs}*q^{e}")?,
        }
    }
    Ok(())
}

impl fmt::Display for QScalar {
    /// Renders in the expression grammar, e.g. `(q^2 - 1)*(q^2 + 1)^-1`
    /// or `-q^-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let (terms, rest) = self.laurent_split();
        let Some(rest) = rest else {
            return write_laurent(f, &terms);
        };
        match terms.as_slice() {
            [(0, c)] if c.is_one() => write!(f, "({rest})^-1"),
            [(0, c)] if (-c).is_one() => write!(f, "-({rest})^-1"),
            [_] => {
                write_laurent(f, &terms)?;
                write!(f, "*({rest})^-1")
            }
            _ => {
                write!(f, "(")?;
                write_laurent(f, &terms)?;
                write!(f, ")*({rest})^-1")
            }
        }
    }
}

/// Wire form: `{"num": [[exp, int], ...], "den": [[exp, int], ...]}` with
/// zero-free, exponent-ascending coefficient lists. Integers that do not fit
/// in an `i64` are written as decimal strings.
#[derive(Serialize, Deserialize)]
struct WireScalar {
    num: Vec<(u32, WireInt)>,
    den: Vec<(u32, WireInt)>,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireInt {
    Small(i64),
    Big(String),
}

impl WireInt {
    fn from_big(b: &BigInt) -> Self {
        i64::try_from(b).map_or_else(|_| WireInt::Big(b.to_string()), WireInt::Small)
    }

    fn to_big(&self) -> std::result::Result<BigInt, String> {
        match self {
            WireInt::Small(v) => Ok(BigInt::from(*v)),
            WireInt::Big(s) => s.parse().map_err(|_| format!("bad integer '{s}'")),
        }
    }
}

fn wire_poly(p: &ZPoly) -> Vec<(u32, WireInt)> {
    p.terms().map(|(k, c)| (k as u32, WireInt::from_big(c))).collect()
}

fn unwire_poly(terms: &[(u32, WireInt)]) -> std::result::Result<ZPoly, String> {
    let mut acc = ZPoly::zero();
    for (k, c) in terms {
        acc = &acc + &ZPoly::monomial(c.to_big()?, *k as usize);
    }
    Ok(acc)
}

impl Serialize for QScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WireScalar { num: wire_poly(&self.num), den: wire_poly(&self.den) }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = WireScalar::deserialize(d)?;
        let num = unwire_poly(&w.num).map_err(D::Error::custom)?;
        let den = unwire_poly(&w.den).map_err(D::Error::custom)?;
        QScalar::new(num, den).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> ZPoly {
        ZPoly::from_i64s(c)
    }

    fn frac(n: &[i64], d: &[i64]) -> QScalar {
        QScalar::new(poly(n), poly(d)).unwrap()
    }

    #[test]
    fn common_factor_cancels() {
        // (q^2 - 1)/(q - 1) = q + 1
        assert_eq!(frac(&[-1, 0, 1], &[-1, 1]), QScalar::from_poly(poly(&[1, 1])));
    }

    #[test]
    fn inverse_pair_multiplies_to_one() {
        let a = frac(&[0, 1], &[-1, 1]);
        let b = frac(&[-1, 1], &[0, 1]);
        assert!((&a * &b).is_one());
    }

    #[test]
    fn normalization_of_second_calculus_is_nonzero() {
        let s = QScalar::one().checked_div(&QScalar::from_poly(poly(&[-1, 0, 0, 0, 1]))).unwrap();
        assert!(!s.is_zero());
        assert_eq!(s.to_string(), "(q^4 - 1)^-1");
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(QScalar::one().checked_div(&QScalar::zero()), Err(Error::DivisionByZero));
        assert!(QScalar::new(poly(&[1]), ZPoly::zero()).is_err());
    }

    #[test]
    fn limits_at_one() {
        let r = |n: i64, d: i64| LimitQ1::Value(BigRational::new(n.into(), d.into()));
        assert_eq!(frac(&[-1, 0, 1], &[-1, 1]).limit_q1(), r(2, 1));
        assert_eq!(frac(&[0, 1], &[-1, 1]).limit_q1(), LimitQ1::Pole(1));
        // (2q - q^2 - 1) / ((q^2 + 1)(q - 1)) has numerator -(q - 1)^2
        let den = &poly(&[1, 0, 1]) * &poly(&[-1, 1]);
        assert_eq!(QScalar::new(poly(&[-1, 2, -1]), den).unwrap().limit_q1(), r(0, 1));
    }

    #[test]
    fn denominator_sign_is_normalized() {
        let a = frac(&[1], &[1, -1]);
        assert!(a.den().lc().is_positive());
        assert_eq!(a, -frac(&[1], &[-1, 1]));
    }

    #[test]
    fn substitution_of_inverse_power() {
        // q/(q^2+1) with q -> q^-4 is q^4/(q^8+1)
        let s = frac(&[0, 1], &[1, 0, 1]).substitute(&QScalar::q_pow(-4)).unwrap();
        assert_eq!(s, frac(&[0, 0, 0, 0, 1], &[1, 0, 0, 0, 0, 0, 0, 0, 1]));
    }

    #[test]
    fn json_round_trip_keeps_big_integers() {
        let big: BigInt = "123456789012345678901234567890".parse().unwrap();
        let s = QScalar::new(ZPoly::from_coeffs(vec![big, 1.into()]), poly(&[3, 0, 1])).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        let back: QScalar = serde_json::from_str(&text).unwrap();
        assert_eq!(s, back);
        let one = serde_json::to_string(&frac(&[-1, 0, 1], &[1, 0, 1])).unwrap();
        assert_eq!(one, r#"{"num":[[0,-1],[2,1]],"den":[[0,1],[2,1]]}"#);
    }
}
