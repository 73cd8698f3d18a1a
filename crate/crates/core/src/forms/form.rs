use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::exterior::Word;
use crate::algebra::{monomial_string, write_term, PlaneElement};
use crate::scalars::QScalar;

/// A homogeneous element of the frame-based differential algebra,
/// `Σ f_w θ^w` with algebra coefficients on the left of canonical words.
///
/// Construction through [`crate::forms::Calculus`] guarantees that words
/// are basis words of the quotient; the arithmetic here is plain linear
/// algebra on the stored coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedForm {
    degree: usize,
    terms: BTreeMap<Word, PlaneElement>,
}

impl GradedForm {
    pub fn zero(degree: usize) -> Self {
        GradedForm { degree, terms: BTreeMap::new() }
    }

    pub fn function(f: PlaneElement) -> Self {
        let mut out = Self::zero(0);
        out.add_term(Vec::new(), &f);
        out
    }

    /// Caller is responsible for passing canonical words of equal length.
    pub(crate) fn from_terms(degree: usize, terms: impl IntoIterator<Item = (Word, PlaneElement)>) -> Self {
        let mut out = Self::zero(degree);
        for (w, f) in terms {
            debug_assert_eq!(w.len(), degree);
            out.add_term(w, &f);
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &PlaneElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[usize]) -> PlaneElement {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    /// The coefficient of a degree-0 form.
    pub fn as_function(&self) -> Option<PlaneElement> {
        (self.degree == 0).then(|| self.coeff(&[]))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, w: Word, f: &PlaneElement) {
        if f.is_zero() {
            return;
        }
        let slot = self.terms.entry(w.clone()).or_default();
        *slot = &*slot + f;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
    }

    pub fn left_mul(&self, f: &PlaneElement) -> Self {
        GradedForm::from_terms(self.degree, self.terms.iter().map(|(w, c)| (w.clone(), f * c)))
    }

    /// Right multiplication; frame words commute with the algebra.
    pub fn right_mul(&self, f: &PlaneElement) -> Self {
        GradedForm::from_terms(self.degree, self.terms.iter().map(|(w, c)| (w.clone(), c * f)))
    }

    pub fn scale(&self, s: &QScalar) -> Self {
        GradedForm::from_terms(self.degree, self.terms.iter().map(|(w, c)| (w.clone(), c.scale(s))))
    }

    /// Applies `f` to every scalar coefficient.
    pub fn map_scalars(&self, f: impl Fn(&QScalar) -> crate::Result<QScalar>) -> crate::Result<Self> {
        let mut out = Self::zero(self.degree);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &c.map_coeffs(&f)?);
        }
        Ok(out)
    }

    /// All scalar coefficients, keyed by word and monomial.
    pub fn scalar_entries(&self) -> impl Iterator<Item = (&Word, (i64, i64), &QScalar)> {
        self.terms.iter().flat_map(|(w, f)| f.terms().map(move |(k, c)| (w, *k, c)))
    }
}

pub(crate) fn word_string(w: &[usize]) -> String {
    w.iter().map(|a| format!("t{}", a + 1)).collect::<Vec<_>>().join("*")
}

impl fmt::Display for GradedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, coeff) in &self.terms {
            for (&(m, n), c) in coeff.terms() {
                let mut body = Vec::new();
                if (m, n) != (0, 0) {
                    body.push(monomial_string(m, n));
                }
                if !w.is_empty() {
                    body.push(word_string(w));
                }
                write_term(f, first, c, &body.join("*"))?;
                first = false;
            }
        }
        Ok(())
    }
}

impl Add for &GradedForm {
    type Output = GradedForm;
    fn add(self, rhs: &GradedForm) -> GradedForm {
        assert_eq!(self.degree, rhs.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c);
        }
        out
    }
}

impl Sub for &GradedForm {
    type Output = GradedForm;
    fn sub(self, rhs: &GradedForm) -> GradedForm {
        self + &(-rhs)
    }
}

impl Neg for &GradedForm {
    type Output = GradedForm;
    fn neg(self) -> GradedForm {
        GradedForm { degree: self.degree, terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Neg for GradedForm {
    type Output = GradedForm;
    fn neg(self) -> GradedForm {
        -&self
    }
}

#[derive(Serialize, Deserialize)]
struct WireForm {
    degree: usize,
    terms: Vec<WireWord>,
}

#[derive(Serialize, Deserialize)]
struct WireWord {
    word: Vec<usize>,
    coeff: PlaneElement,
}

impl Serialize for GradedForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        WireForm {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| WireWord { word: w.iter().map(|a| a + 1).collect(), coeff: c.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedForm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let wire = WireForm::deserialize(d)?;
        let mut out = GradedForm::zero(wire.degree);
        for t in wire.terms {
            if t.word.len() != wire.degree || t.word.contains(&0) {
                return Err(D::Error::custom("word does not match form degree"));
            }
            out.add_term(t.word.iter().map(|a| a - 1).collect(), &t.coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_reparseable_shape() {
        let f = GradedForm::from_terms(
            2,
            [(vec![0, 1], PlaneElement::x().scale(&-QScalar::q())), (vec![1, 0], PlaneElement::one())],
        );
        assert_eq!(f.to_string(), "-q*x*t1*t2 + t2*t1");
    }

    #[test]
    fn cancellation_prunes_words() {
        let a = GradedForm::from_terms(1, [(vec![0], PlaneElement::y())]);
        assert!((&a - &a).is_zero());
    }

    #[test]
    fn json_round_trip() {
        let a = GradedForm::from_terms(1, [(vec![1], PlaneElement::x())]);
        let s = serde_json::to_string(&a).unwrap();
        assert!(s.contains("\"word\":[2]"));
        let back: GradedForm = serde_json::from_str(&s).unwrap();
        assert_eq!(a, back);
    }
}
