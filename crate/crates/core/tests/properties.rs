use num_rational::BigRational;
use proptest::prelude::*;
use qplane::algebra::Derivation;
use qplane::climit::{
    cartan_connection, gauss_curvature, poisson, poisson_via_commutator, structure_equation_check, CForm, CRational,
};
use qplane::expr::{parse, parse_element};
use qplane::presets::{self, PresetId};
use qplane::scalars::{LimitQ1, ZPoly};
use qplane::{Calculus, GradedForm, Laurent, PlaneElement, QMatrix, QScalar};
use std::sync::OnceLock;

fn calculi() -> &'static Vec<Calculus> {
    static CALCULI: OnceLock<Vec<Calculus>> = OnceLock::new();
    CALCULI.get_or_init(|| PresetId::ALL.iter().map(|&id| presets::build(id, None).unwrap()).collect())
}

fn scalar() -> impl Strategy<Value = QScalar> {
    (prop::collection::vec(-4i64..=4, 1..=3), prop::collection::vec(-3i64..=3, 1..=2)).prop_map(|(n, d)| {
        let den = ZPoly::from_i64s(&d);
        let den = if den.is_zero() { ZPoly::one() } else { den };
        QScalar::new(ZPoly::from_i64s(&n), den).unwrap()
    })
}

fn small_scalar() -> impl Strategy<Value = QScalar> {
    (-3i64..=3, -1i64..=1).prop_map(|(c, k)| {
        let c = if c == 0 { 1 } else { c };
        &QScalar::from_int(c) * &QScalar::q_pow(k)
    })
}

fn element() -> impl Strategy<Value = PlaneElement> {
    prop::collection::vec(((-2i64..=2, -2i64..=2), small_scalar()), 1..=3).prop_map(PlaneElement::from_terms)
}

fn monomial() -> impl Strategy<Value = PlaneElement> {
    ((-2i64..=2, -2i64..=2), small_scalar()).prop_map(|((m, n), c)| PlaneElement::monomial(m, n, c))
}

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-2i64..=2, -2i64..=2, 1i64..=4), 1..=2).prop_map(|terms| {
        terms.into_iter().fold(Laurent::zero(), |acc, (m, n, c)| {
            &acc + &Laurent::monomial(m, n, BigRational::from_integer(c.into()))
        })
    })
}

fn nonzero_laurent_monomial() -> impl Strategy<Value = Laurent> {
    (-2i64..=2, -2i64..=2, 1i64..=3).prop_map(|(m, n, c)| Laurent::monomial(m, n, BigRational::from_integer(c.into())))
}

/// A one-form on a preset: coefficients of the frame.
fn one_form(calc: &Calculus, coeffs: &[PlaneElement]) -> GradedForm {
    calc.one_form(&coeffs[..calc.n()])
}

/// `a·dx + b·dy` on the commutative chart.
fn cform_one(a: Laurent, b: Laurent) -> CForm {
    CForm::one_form(CRational::from_laurent(a), CRational::from_laurent(b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_laws(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn limit_is_multiplicative(a in scalar(), b in scalar()) {
        if let (LimitQ1::Value(la), LimitQ1::Value(lb)) = (a.limit_q1(), b.limit_q1()) {
            prop_assert_eq!((&a * &b).limit_q1(), LimitQ1::Value(la * lb));
        }
    }

    #[test]
    fn rank_is_independent_of_elimination_order(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 3)) {
        let m = QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| QScalar::from_int(v)).collect()).collect()).unwrap();
        prop_assert_eq!(m.rank(), m.rref_ordered(&[3, 1, 2, 0]).pivots.len());
        prop_assert_eq!(m.rank(), m.transpose().rank());
    }

    #[test]
    fn plane_product_is_associative(a in element(), b in element(), c in element()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn plane_degrees_add(a in monomial(), b in monomial()) {
        let (ma, na) = a.total_degree().unwrap();
        let (mb, nb) = b.total_degree().unwrap();
        prop_assert_eq!((&a * &b).total_degree(), Some((ma + mb, na + nb)));
    }

    #[test]
    fn derivations_satisfy_leibniz(f in element(), g in element(), lambda in element()) {
        let inner = Derivation::inner(lambda);
        let outer = Derivation::outer(PlaneElement::x(), PlaneElement::zero()).unwrap();
        for e in [inner, outer] {
            prop_assert_eq!(e.apply(&(&f * &g)), &(&e.apply(&f) * &g) + &(&f * &e.apply(&g)));
        }
    }

    #[test]
    fn inner_derivations_kill_scalars(lambda in element(), c in scalar()) {
        prop_assert!(Derivation::inner(lambda).apply(&PlaneElement::scalar(c)).is_zero());
    }

    #[test]
    fn d_squared_vanishes(preset in 0usize..5, f in element(), coeffs in prop::collection::vec(monomial(), 3)) {
        let calc = &calculi()[preset];
        prop_assert!(calc.d(&calc.d(&GradedForm::function(f)).unwrap()).unwrap().is_zero());
        let w = one_form(calc, &coeffs);
        prop_assert!(calc.d(&calc.d(&w).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn graded_leibniz(preset in 0usize..5, f in element(), a in prop::collection::vec(monomial(), 3), b in prop::collection::vec(monomial(), 3)) {
        let calc = &calculi()[preset];
        let ff = GradedForm::function(f);
        let (wa, wb) = (one_form(calc, &a), one_form(calc, &b));
        for (x, y) in [(&ff, &wa), (&wa, &ff), (&wa, &wb)] {
            prop_assert!(calc.identity_leibniz(x, y).unwrap().iter().all(|c| c.holds()));
        }
    }

    #[test]
    fn frame_duality(preset in 0usize..5, f in element()) {
        let calc = &calculi()[preset];
        let df = calc.df(&f);
        for a in 0..calc.n() {
            prop_assert_eq!(df.coeff(&[a]), calc.derivation(a).apply(&f));
        }
    }

    #[test]
    fn poisson_laws(f in laurent(), g in laurent(), h in laurent()) {
        prop_assert_eq!(poisson(&f, &g), -&poisson(&g, &f));
        prop_assert_eq!(poisson(&f, &(&g * &h)), &(&poisson(&f, &g) * &h) + &(&g * &poisson(&f, &h)));
        let jacobi = &(&poisson(&f, &poisson(&g, &h)) + &poisson(&g, &poisson(&h, &f))) + &poisson(&h, &poisson(&f, &g));
        prop_assert!(jacobi.is_zero());
    }

    #[test]
    fn poisson_routes_agree(f in laurent(), g in laurent()) {
        prop_assert_eq!(poisson_via_commutator(&f, &g).unwrap(), poisson(&f, &g));
    }

    #[test]
    fn commutative_d_squared(f in laurent(), a in laurent(), b in laurent()) {
        let fun = CForm::function(CRational::from_laurent(f));
        prop_assert!(fun.d().d().is_zero());
        prop_assert!(cform_one(a, b).d().d().is_zero());
    }

    #[test]
    fn cartan_connection_solves_structure_equations(a in nonzero_laurent_monomial(), b in laurent(), d in nonzero_laurent_monomial()) {
        let frame = [cform_one(a, b), cform_one(Laurent::zero(), d)];
        let omega = cartan_connection(&frame).unwrap();
        prop_assert!(structure_equation_check(&frame, &omega).unwrap().iter().all(|c| c.holds()));
    }

    #[test]
    fn curvature_scales_inversely_with_frame(a in nonzero_laurent_monomial(), b in laurent(), d in nonzero_laurent_monomial()) {
        let frame = [cform_one(a, b), cform_one(Laurent::zero(), d)];
        let k = gauss_curvature(&frame).unwrap();
        for c in [2i64, 3] {
            let s = BigRational::from_integer(c.into());
            let scaled: Vec<CForm> = frame.iter().map(|t| t.scale(&CRational::constant(s.clone()))).collect();
            let inv_sq = BigRational::new(1.into(), (c * c).into());
            prop_assert_eq!(gauss_curvature(&scaled).unwrap(), k.scale(&inv_sq));
        }
    }

    #[test]
    fn printed_elements_parse_back(f in element()) {
        prop_assert_eq!(parse_element(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn printed_forms_parse_back(preset in 0usize..5, coeffs in prop::collection::vec(monomial(), 3)) {
        let calc = &calculi()[preset];
        let w = one_form(calc, &coeffs);
        prop_assert_eq!(parse(&w.to_string(), Some(calc)).unwrap().into_form(), w);
    }
}
