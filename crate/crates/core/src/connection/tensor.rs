use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::algebra::{monomial_string, write_term, PlaneElement};
use crate::error::{Error, Result};
use crate::forms::{pair, Calculus, GradedForm};
use crate::scalars::{QMatrix, QScalar};

/// Coefficients `S^{ab}_{cd}` of `σ(θ^a ⊗ θ^b) = S^{ab}_{cd} θ^c ⊗ θ^d`,
/// row `(ab)`, column `(cd)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SigmaTensor {
    s: QMatrix,
}

fn side(m: &QMatrix) -> Option<usize> {
    let n = (m.rows() as f64).sqrt().round() as usize;
    (n > 0 && n * n == m.rows() && m.cols() == m.rows()).then_some(n)
}

impl SigmaTensor {
    pub fn new(s: QMatrix) -> Result<Self> {
        side(&s).ok_or_else(|| {
            Error::DimensionMismatch(format!("sigma must be n^2 x n^2, got {}x{}", s.rows(), s.cols()))
        })?;
        Ok(SigmaTensor { s })
    }

    /// `S^{ab}_{cd} = δ^b_c δ^a_d`.
    pub fn flip(n: usize) -> Self {
        SigmaTensor {
            s: QMatrix::from_fn(n * n, n * n, |r, c| {
                if r == pair(n, c % n, c / n) {
                    QScalar::one()
                } else {
                    QScalar::zero()
                }
            }),
        }
    }

    pub fn identity(n: usize) -> Self {
        SigmaTensor { s: QMatrix::identity(n * n) }
    }

    pub fn n(&self) -> usize {
        side(&self.s).expect("checked at construction")
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.s
    }

    pub fn get(&self, a: usize, b: usize, c: usize, d: usize) -> &QScalar {
        let n = self.n();
        self.s.get(pair(n, a, b), pair(n, c, d))
    }

    pub fn apply(&self, t: &TensorBi) -> TensorBi {
        let n = self.n();
        let mut out = TensorBi::zero(n);
        for (&(a, b), f) in &t.terms {
            for c in 0..n {
                for d in 0..n {
                    let s = self.get(a, b, c, d);
                    if !s.is_zero() {
                        out.add_term(c, d, &f.scale(s));
                    }
                }
            }
        }
        out
    }

    /// Replaces `q` by `r` in every entry.
    pub fn substitute(&self, r: &QScalar) -> Result<Self> {
        Ok(SigmaTensor { s: self.s.try_map(|e| e.substitute(r))? })
    }
}

/// Central metric coefficients `g^{ab} = g(θ^a ⊗ θ^b)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MetricTensor {
    g: QMatrix,
}

impl MetricTensor {
    pub fn new(g: QMatrix) -> Result<Self> {
        if g.rows() != g.cols() || g.rows() == 0 {
            return Err(Error::DimensionMismatch("metric must be square".into()));
        }
        g.inverse().map_err(|_| Error::NotInvertible("metric is degenerate".into()))?;
        Ok(MetricTensor { g })
    }

    pub fn euclidean(n: usize) -> Self {
        MetricTensor { g: QMatrix::identity(n) }
    }

    pub fn n(&self) -> usize {
        self.g.rows()
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.g
    }

    pub fn get(&self, a: usize, b: usize) -> &QScalar {
        self.g.get(a, b)
    }

    /// Lower-index components `g_{ab}`, the inverse matrix.
    pub fn lower(&self) -> QMatrix {
        self.g.inverse().expect("checked at construction")
    }
}

/// `Σ f_{ab} θ^a ⊗ θ^b`, unreduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorBi {
    n: usize,
    terms: BTreeMap<(usize, usize), PlaneElement>,
}

impl TensorBi {
    pub fn zero(n: usize) -> Self {
        TensorBi { n, terms: BTreeMap::new() }
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> PlaneElement) -> Self {
        let mut out = Self::zero(n);
        for a in 0..n {
            for b in 0..n {
                out.add_term(a, b, &f(a, b));
            }
        }
        out
    }

    /// `α ⊗ β` for 1-forms; frame generators commute with coefficients.
    pub fn tensor(alpha: &GradedForm, beta: &GradedForm, n: usize) -> Result<Self> {
        if alpha.degree() != 1 || beta.degree() != 1 {
            return Err(Error::DegreeMismatch(alpha.degree().max(beta.degree()), 1));
        }
        let mut out = Self::zero(n);
        for (w1, f1) in alpha.terms() {
            for (w2, f2) in beta.terms() {
                out.add_term(w1[0], w2[0], &(f1 * f2));
            }
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, a: usize, b: usize) -> PlaneElement {
        self.terms.get(&(a, b)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &PlaneElement)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, a: usize, b: usize, f: &PlaneElement) {
        if f.is_zero() {
            return;
        }
        let slot = self.terms.entry((a, b)).or_default();
        *slot = &*slot + f;
        if slot.is_zero() {
            self.terms.remove(&(a, b));
        }
    }

    pub fn left_mul(&self, f: &PlaneElement) -> Self {
        let mut out = Self::zero(self.n);
        for (&(a, b), c) in &self.terms {
            out.add_term(a, b, &(f * c));
        }
        out
    }

    pub fn right_mul(&self, f: &PlaneElement) -> Self {
        let mut out = Self::zero(self.n);
        for (&(a, b), c) in &self.terms {
            out.add_term(a, b, &(c * f));
        }
        out
    }

    /// The wedge projection onto 2-forms.
    pub fn project(&self, calc: &Calculus) -> GradedForm {
        calc.quadratic_form(|a, b| self.coeff(a, b))
    }
}

impl fmt::Display for TensorBi {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(a, b), coeff) in &self.terms {
            for (&(m, n), c) in coeff.terms() {
                let frame = format!("t{}⊗t{}", a + 1, b + 1);
                let body = if (m, n) == (0, 0) { frame } else { format!("{}*{frame}", monomial_string(m, n)) };
                write_term(f, first, c, &body)?;
                first = false;
            }
        }
        Ok(())
    }
}

impl Add for &TensorBi {
    type Output = TensorBi;
    fn add(self, rhs: &TensorBi) -> TensorBi {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c);
        }
        out
    }
}

impl Sub for &TensorBi {
    type Output = TensorBi;
    fn sub(self, rhs: &TensorBi) -> TensorBi {
        self + &(-rhs)
    }
}

impl Neg for &TensorBi {
    type Output = TensorBi;
    fn neg(self) -> TensorBi {
        TensorBi { n: self.n, terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

#[derive(Serialize, Deserialize)]
struct WireEntry {
    i: usize,
    j: usize,
    coeff: PlaneElement,
}

#[derive(Serialize, Deserialize)]
struct WireTensor {
    n: usize,
    terms: Vec<WireEntry>,
}

impl Serialize for TensorBi {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WireTensor {
            n: self.n,
            terms: self.terms.iter().map(|(&(i, j), c)| WireEntry { i: i + 1, j: j + 1, coeff: c.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TensorBi {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let w = WireTensor::deserialize(d)?;
        let mut out = TensorBi::zero(w.n);
        for e in w.terms {
            if e.i == 0 || e.j == 0 || e.i > w.n || e.j > w.n {
                return Err(D::Error::custom("tensor index out of range"));
            }
            out.add_term(e.i - 1, e.j - 1, &e.coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flip_swaps_factors() {
        let t = TensorBi::from_fn(2, |a, b| if (a, b) == (0, 1) { PlaneElement::x() } else { PlaneElement::zero() });
        let s = SigmaTensor::flip(2).apply(&t);
        assert_eq!(s.coeff(1, 0), PlaneElement::x());
        assert!(s.coeff(0, 1).is_zero());
    }

    #[test]
    fn degenerate_metric_is_rejected() {
        assert!(MetricTensor::new(QMatrix::zeros(2, 2)).is_err());
    }
}
