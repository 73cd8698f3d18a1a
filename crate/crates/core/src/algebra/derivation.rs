use super::plane::PlaneElement;
use crate::error::{Error, Result};
use crate::scalars::QScalar;

/// A derivation of the quantum plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    /// `f -> [lambda, f]`.
    Inner(PlaneElement),
    /// Determined by the images of the generators, extended by Leibniz.
    Outer { image_x: PlaneElement, image_y: PlaneElement },
}

impl Derivation {
    pub fn inner(lambda: PlaneElement) -> Self {
        Derivation::Inner(lambda)
    }

    /// Builds an outer derivation after checking that it respects `xy = q yx`.
    pub fn outer(image_x: PlaneElement, image_y: PlaneElement) -> Result<Self> {
        let x = PlaneElement::x();
        let y = PlaneElement::y();
        let lhs = &(&image_x * &y) + &(&x * &image_y);
        let rhs = (&(&image_y * &x) + &(&y * &image_x)).scale(&QScalar::q());
        let defect = &lhs - &rhs;
        if !defect.is_zero() {
            return Err(Error::InconsistentDerivation(format!("defect {defect}")));
        }
        Ok(Derivation::Outer { image_x, image_y })
    }

    pub fn lambda(&self) -> Option<&PlaneElement> {
        match self {
            Derivation::Inner(l) => Some(l),
            Derivation::Outer { .. } => None,
        }
    }

    pub fn apply(&self, f: &PlaneElement) -> PlaneElement {
        match self {
            Derivation::Inner(lambda) => lambda.commutator(f),
            Derivation::Outer { image_x, image_y } => {
                let mut out = PlaneElement::zero();
                for (&(m, n), c) in f.terms() {
                    let xm = PlaneElement::monomial(m, 0, QScalar::one());
                    let yn = PlaneElement::monomial(0, n, QScalar::one());
                    let ex = power_image(&PlaneElement::x(), image_x, m);
                    let ey = power_image(&PlaneElement::y(), image_y, n);
                    let t = &(&ex * &yn) + &(&xm * &ey);
                    out = &out + &t.scale(c);
                }
                out
            }
        }
    }
}

/// Image of `g^k` under a derivation sending `g` to `image`, using
/// `e(g^-1) = -g^-1 e(g) g^-1` for negative powers.
fn power_image(g: &PlaneElement, image: &PlaneElement, k: i64) -> PlaneElement {
    if k == 0 {
        return PlaneElement::zero();
    }
    let (base, base_image) = if k > 0 {
        (g.clone(), image.clone())
    } else {
        let gi = g.inverse().expect("generators are invertible");
        let img = -&(&(&gi * image) * &gi);
        (gi, img)
    };
    let k = k.unsigned_abs() as usize;
    let mut out = PlaneElement::zero();
    for i in 0..k {
        let left = base.pow(i as i64).expect("positive power");
        let right = base.pow((k - 1 - i) as i64).expect("positive power");
        out = &out + &(&(&left * &base_image) * &right);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::ZPoly;

    fn k() -> QScalar {
        QScalar::new(ZPoly::from_i64s(&[0, 1]), ZPoly::from_i64s(&[-1, 1])).unwrap()
    }

    #[test]
    fn inner_derivation_of_first_calculus() {
        let e1 = Derivation::inner(PlaneElement::y().scale(&k()));
        let xy = &PlaneElement::x() * &PlaneElement::y();
        assert_eq!(e1.apply(&PlaneElement::x()), -&xy);
        assert!(e1.apply(&PlaneElement::y()).is_zero());
    }

    #[test]
    fn inner_derivation_of_second_calculus() {
        let norm = QScalar::one().checked_div(&QScalar::from_poly(ZPoly::from_i64s(&[-1, 0, 0, 0, 1]))).unwrap();
        let lambda = PlaneElement::monomial(-2, 2, norm);
        let e1 = Derivation::inner(lambda);
        let expected = PlaneElement::monomial(
            -2,
            3,
            -QScalar::one().checked_div(&QScalar::from_poly(ZPoly::from_i64s(&[1, 0, 1]))).unwrap(),
        );
        assert_eq!(e1.apply(&PlaneElement::y()), expected);
    }

    #[test]
    fn outer_scaling_derivation() {
        let e = Derivation::outer(PlaneElement::x(), PlaneElement::zero()).unwrap();
        let x2 = PlaneElement::monomial(2, 0, QScalar::one());
        assert_eq!(e.apply(&x2), x2.scale(&QScalar::from_int(2)));
        let xinv = PlaneElement::monomial(-1, 3, QScalar::one());
        assert_eq!(e.apply(&xinv), -&xinv);
    }

    #[test]
    fn inconsistent_outer_rule_is_rejected() {
        // x -> y, y -> 0 breaks the defining relation
        assert!(Derivation::outer(PlaneElement::y(), PlaneElement::zero()).is_err());
    }
}
