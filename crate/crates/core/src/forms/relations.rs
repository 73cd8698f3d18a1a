use std::fmt;

use serde::{Deserialize, Serialize};

use super::calculus::{Calculus, Coordinate};
use crate::algebra::{monomial_string, write_term, PlaneElement};
use crate::error::Result;

/// `g · dξ = Σ_ν dξ^ν h_ν`: a generator times a coordinate differential,
/// rewritten with every differential on the left of its coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordinateRelation {
    pub generator: String,
    pub differential: Coordinate,
    pub coordinates: Vec<Coordinate>,
    pub right_coefficients: Vec<PlaneElement>,
}

impl fmt::Display for CoordinateRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*{} = ", self.generator, self.differential)?;
        let mut first = true;
        for (c, h) in self.coordinates.iter().zip(&self.right_coefficients) {
            for (&(m, n), s) in h.terms() {
                let body = if (m, n) == (0, 0) {
                    c.name().to_string()
                } else {
                    format!("{}*{}", c.name(), monomial_string(m, n))
                };
                write_term(f, first, s, &body)?;
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Calculus {
    /// For every generator and coordinate differential, the relation
    /// moving the generator to the right of the differentials.
    pub fn relation_report(&self) -> Result<Vec<CoordinateRelation>> {
        let mut out = Vec::new();
        for (name, g) in [("x", PlaneElement::x()), ("y", PlaneElement::y())] {
            for (mu, &c) in self.coordinates().iter().enumerate() {
                let form = self.coordinate_form(mu).left_mul(&g);
                out.push(CoordinateRelation {
                    generator: name.to_string(),
                    differential: c,
                    coordinates: self.coordinates().to_vec(),
                    right_coefficients: self.to_right_coordinates(&form)?,
                });
            }
        }
        Ok(out)
    }
}
