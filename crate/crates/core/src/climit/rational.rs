//! Rational functions of the commuting coordinates `x, y`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Laurent;
use crate::error::{Error, Result};
use crate::scalars::ZPoly;

/// Polynomial in `x` with coefficients in `Z[y]`; index is the `x` power.
#[derive(Clone, Debug, PartialEq, Eq)]
struct BPoly {
    coeffs: Vec<ZPoly>,
}

impl BPoly {
    fn trimmed(mut coeffs: Vec<ZPoly>) -> Self {
        while coeffs.last().is_some_and(ZPoly::is_zero) {
            coeffs.pop();
        }
        BPoly { coeffs }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn lc(&self) -> &ZPoly {
        self.coeffs.last().expect("nonzero polynomial")
    }

    /// Integer-coefficient polynomial with non-negative exponents.
    fn from_laurent(l: &Laurent) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for (&(m, n), c) in l.terms() {
            debug_assert!(m >= 0 && n >= 0 && c.is_integer());
            let (m, n) = (m as usize, n as usize);
            if rows.len() <= m {
                rows.resize(m + 1, Vec::new());
            }
            if rows[m].len() <= n {
                rows[m].resize(n + 1, BigInt::zero());
            }
            rows[m][n] = c.to_integer();
        }
        Self::trimmed(rows.into_iter().map(ZPoly::from_coeffs).collect())
    }

    fn to_laurent(&self) -> Laurent {
        let mut out = Laurent::zero();
        for (m, p) in self.coeffs.iter().enumerate() {
            for (n, c) in p.terms() {
                out.add_term((m as i64, n as i64), &BigRational::from_integer(c.clone()));
            }
        }
        out
    }

    fn content(&self) -> ZPoly {
        self.coeffs.iter().fold(ZPoly::zero(), |g, c| g.gcd(c))
    }

    fn div_coeffs(&self, c: &ZPoly) -> Self {
        Self::trimmed(self.coeffs.iter().map(|p| p.div_exact(c).expect("content divides")).collect())
    }

    fn primitive_part(&self) -> Self {
        self.div_coeffs(&self.content())
    }

    fn scale(&self, c: &ZPoly) -> Self {
        Self::trimmed(self.coeffs.iter().map(|p| p * c).collect())
    }

    fn pseudo_rem(&self, b: &BPoly) -> BPoly {
        let db = b.degree();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= db {
            let shift = r.degree() - db;
            let lr = r.lc().clone();
            let mut next = r.scale(b.lc()).coeffs;
            for (i, bc) in b.coeffs.iter().enumerate() {
                next[i + shift] = &next[i + shift] - &(&lr * bc);
            }
            r = Self::trimmed(next);
        }
        r
    }

    fn gcd(&self, other: &BPoly) -> BPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let c = self.content().gcd(&other.content());
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = if r.is_zero() { r } else { r.primitive_part() };
        }
        a.primitive_part().scale(&c)
    }

    /// Exact quotient; the divisor must divide `self` over `Z[y][x]`.
    fn div_exact(&self, b: &BPoly) -> BPoly {
        let db = b.degree();
        let mut r = self.clone();
        let mut quot = vec![ZPoly::zero(); self.degree().saturating_sub(db) + 1];
        while !r.is_zero() {
            assert!(r.degree() >= db, "inexact bivariate division");
            let shift = r.degree() - db;
            let qc = r.lc().div_exact(b.lc()).expect("inexact bivariate division");
            let mut next = r.coeffs.clone();
            for (i, bc) in b.coeffs.iter().enumerate() {
                next[i + shift] = &next[i + shift] - &(&qc * bc);
            }
            quot[shift] = qc;
            r = Self::trimmed(next);
        }
        Self::trimmed(quot)
    }
}

/// Multiplier clearing all coefficient denominators.
fn denominator_lcm(l: &Laurent) -> BigInt {
    l.terms().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()))
}

/// A rational function `num / den` of commuting `x, y` with rational
/// coefficients.
///
/// Canonical form: `den` is a polynomial with no monomial factor whose
/// lexicographically leading coefficient is 1, and `num / den` is in
/// lowest terms; `num` may carry negative exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WireRational", into = "WireRational")]
pub struct CRational {
    num: Laurent,
    den: Laurent,
}

#[derive(Serialize, Deserialize)]
struct WireRational {
    num: Laurent,
    den: Laurent,
}

impl TryFrom<WireRational> for CRational {
    type Error = Error;
    fn try_from(w: WireRational) -> Result<Self> {
        CRational::new(w.num, w.den)
    }
}

impl From<CRational> for WireRational {
    fn from(r: CRational) -> Self {
        WireRational { num: r.num, den: r.den }
    }
}

impl CRational {
    pub fn new(num: Laurent, den: Laurent) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (dx, dy) = den.min_exponents().expect("nonzero");
        let den = den.shift(-dx, -dy);
        let num = num.shift(-dx, -dy);
        let (nx, ny) = num.min_exponents().expect("nonzero");
        let num_poly = num.shift(-nx, -ny);

        let sn = denominator_lcm(&num_poly);
        let sd = denominator_lcm(&den);
        let a = BPoly::from_laurent(&num_poly.scale(&BigRational::from_integer(sn.clone())));
        let b = BPoly::from_laurent(&den.scale(&BigRational::from_integer(sd.clone())));
        let g = a.gcd(&b);
        let num = a.div_exact(&g).to_laurent().scale(&BigRational::new(BigInt::one(), sn)).shift(nx, ny);
        let den = b.div_exact(&g).to_laurent().scale(&BigRational::new(BigInt::one(), sd));
        let lead = den.leading().expect("nonzero").1.recip();
        Ok(CRational { num: num.scale(&lead), den: den.scale(&lead) })
    }

    pub fn from_laurent(l: Laurent) -> Self {
        CRational { num: l, den: Laurent::one() }
    }

    pub fn zero() -> Self {
        Self::from_laurent(Laurent::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(Laurent::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_laurent(Laurent::constant(c))
    }

    pub fn num(&self) -> &Laurent {
        &self.num
    }

    pub fn den(&self) -> &Laurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value as a Laurent polynomial, when the denominator is 1.
    pub fn as_laurent(&self) -> Option<&Laurent> {
        (self.den == Laurent::one()).then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &CRational) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        CRational { num: self.num.scale(s), den: self.den.clone() }
    }

    pub fn dx(&self) -> Self {
        let top = &(&self.num.dx() * &self.den) - &(&self.num * &self.den.dx());
        Self::new(top, &self.den * &self.den).expect("nonzero denominator")
    }

    pub fn dy(&self) -> Self {
        let top = &(&self.num.dy() * &self.den) - &(&self.num * &self.den.dy());
        Self::new(top, &self.den * &self.den).expect("nonzero denominator")
    }

    pub fn eval(&self, x: &BigRational, y: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x, y)?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x, y)? / d)
    }
}

impl fmt::Display for CRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Laurent::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Add for &CRational {
    type Output = CRational;
    fn add(self, rhs: &CRational) -> CRational {
        if self.den == rhs.den {
            return CRational::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        let top = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        CRational::new(top, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Sub for &CRational {
    type Output = CRational;
    fn sub(self, rhs: &CRational) -> CRational {
        self + &(-rhs)
    }
}

impl Neg for &CRational {
    type Output = CRational;
    fn neg(self) -> CRational {
        CRational { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &CRational {
    type Output = CRational;
    fn mul(self, rhs: &CRational) -> CRational {
        CRational::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn poly(terms: &[(i64, i64, i64)]) -> Laurent {
        let mut out = Laurent::zero();
        for &(m, n, c) in terms {
            out.add_term((m, n), &r(c));
        }
        out
    }

    #[test]
    fn common_factor_cancels() {
        // (x^2 - y^2) / (x + y) = x - y
        let v = CRational::new(poly(&[(2, 0, 1), (0, 2, -1)]), poly(&[(1, 0, 1), (0, 1, 1)])).unwrap();
        assert_eq!(v.as_laurent(), Some(&poly(&[(1, 0, 1), (0, 1, -1)])));
    }

    #[test]
    fn monomial_denominator_moves_to_numerator() {
        let v = CRational::new(poly(&[(0, 0, 1), (0, 4, 1)]), poly(&[(4, 0, 2)])).unwrap();
        let expect = poly(&[(-4, 0, 1), (-4, 4, 1)]).scale(&BigRational::new(1.into(), 2.into()));
        assert_eq!(v.as_laurent(), Some(&expect));
    }

    #[test]
    fn canonical_form_is_unique() {
        let a = CRational::new(poly(&[(0, 0, 2)]), poly(&[(1, 0, 2), (0, 1, -4)])).unwrap();
        let b = CRational::new(poly(&[(0, 1, 3)]), poly(&[(1, 1, 3), (0, 2, -6)])).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.den(), &poly(&[(1, 0, 1), (0, 1, -2)]));
        assert_eq!(a.num(), &Laurent::one());
    }

    #[test]
    fn quotient_rule() {
        // d/dx (1/(x+y)) = -1/(x+y)^2
        let v = CRational::new(Laurent::one(), poly(&[(1, 0, 1), (0, 1, 1)])).unwrap();
        let expect = CRational::new(poly(&[(0, 0, -1)]), poly(&[(2, 0, 1), (1, 1, 2), (0, 2, 1)])).unwrap();
        assert_eq!(v.dx(), expect);
    }
}
