use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::rational::CRational;
use crate::error::{Error, Result};

/// An ordinary differential form on the plane with rational coefficients
/// on the basis `1`; `dx, dy`; `dx∧dy`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CForm {
    degree: usize,
    coeffs: Vec<CRational>,
}

fn width(degree: usize) -> usize {
    if degree == 1 {
        2
    } else {
        1
    }
}

impl CForm {
    pub fn zero(degree: usize) -> Self {
        assert!(degree <= 2, "forms on the plane have degree at most 2");
        CForm { degree, coeffs: vec![CRational::zero(); width(degree)] }
    }

    pub fn function(f: CRational) -> Self {
        CForm { degree: 0, coeffs: vec![f] }
    }

    /// `a dx + b dy`.
    pub fn one_form(a: CRational, b: CRational) -> Self {
        CForm { degree: 1, coeffs: vec![a, b] }
    }

    /// `c dx∧dy`.
    pub fn two_form(c: CRational) -> Self {
        CForm { degree: 2, coeffs: vec![c] }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[CRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &CRational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CRational::is_zero)
    }

    pub fn scale(&self, f: &CRational) -> Self {
        CForm { degree: self.degree, coeffs: self.coeffs.iter().map(|c| f * c).collect() }
    }

    pub fn d(&self) -> Self {
        match self.degree {
            0 => CForm::one_form(self.coeffs[0].dx(), self.coeffs[0].dy()),
            1 => CForm::two_form(&self.coeffs[1].dx() - &self.coeffs[0].dy()),
            _ => CForm::zero(2),
        }
    }

    pub fn wedge(&self, other: &CForm) -> Result<Self> {
        let deg = self.degree + other.degree;
        if deg > 2 {
            return Err(Error::DegreeTooHigh(deg));
        }
        Ok(match (self.degree, other.degree) {
            (0, _) => other.scale(&self.coeffs[0]),
            (_, 0) => self.scale(&other.coeffs[0]),
            _ => {
                let (a, b) = (&self.coeffs[0], &self.coeffs[1]);
                let (c, e) = (&other.coeffs[0], &other.coeffs[1]);
                CForm::two_form(&(a * e) - &(b * c))
            }
        })
    }
}

impl fmt::Display for CForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: &[&str] = match self.degree {
            0 => &[""],
            1 => &["dx", "dy"],
            _ => &["dx^dy"],
        };
        let mut first = true;
        for (c, name) in self.coeffs.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if name.is_empty() {
                write!(f, "{c}")?;
            } else {
                write!(f, "({c})*{name}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &CForm {
    type Output = CForm;
    fn add(self, rhs: &CForm) -> CForm {
        assert_eq!(self.degree, rhs.degree, "adding forms of different degree");
        CForm { degree: self.degree, coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect() }
    }
}

impl Sub for &CForm {
    type Output = CForm;
    fn sub(self, rhs: &CForm) -> CForm {
        self + &(-rhs)
    }
}

impl Neg for &CForm {
    type Output = CForm;
    fn neg(self) -> CForm {
        CForm { degree: self.degree, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Laurent;

    #[test]
    fn d_of_exact_form_vanishes() {
        let f = CRational::new(&Laurent::x() * &Laurent::y(), &Laurent::x() + &Laurent::y()).unwrap();
        let df = CForm::function(f).d();
        assert!(df.d().is_zero());
    }

    #[test]
    fn dx_wedge_dy() {
        let dx = CForm::one_form(CRational::one(), CRational::zero());
        let dy = CForm::one_form(CRational::zero(), CRational::one());
        assert_eq!(dx.wedge(&dy).unwrap(), CForm::two_form(CRational::one()));
        assert_eq!(dy.wedge(&dx).unwrap(), CForm::two_form(-&CRational::one()));
        assert!(dx.wedge(&dx).unwrap().is_zero());
    }
}
