use serde::{Deserialize, Serialize};

use super::cform::CForm;
use super::rational::CRational;
use crate::algebra::{Laurent, PlaneElement};
use crate::check::Comparison;
use crate::connection::{omega0, SigmaTensor};
use crate::error::{Error, Result};
use crate::forms::{Calculus, Coordinate};
use crate::scalars::{QScalar, ZPoly};

/// `{f, g} = xy (∂f/∂x ∂g/∂y - ∂f/∂y ∂g/∂x)`.
pub fn poisson(f: &Laurent, g: &Laurent) -> Laurent {
    let xy = &Laurent::x() * &Laurent::y();
    let j = &(&f.dx() * &g.dy()) - &(&f.dy() * &g.dx());
    &xy * &j
}

/// `{f, g} = lim (q - 1)^{-1} [f, g]` computed on normal-ordered lifts.
pub fn poisson_via_commutator(f: &Laurent, g: &Laurent) -> Result<Laurent> {
    let inv = QScalar::new(ZPoly::one(), ZPoly::from_i64s(&[-1, 1]))?;
    let comm = f.lift().commutator(&g.lift()).scale(&inv);
    comm.eval_q1()
}

/// The commutative limit of a frame-based calculus on the plane.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassicalChart {
    /// `p_a = lim (q - 1) λ_a`; absent for outer calculi.
    pub p: Option<Vec<Laurent>>,
    /// Limit frame `θ^a` on `dx, dy`.
    pub frame: Vec<CForm>,
}

fn laurent_rational(l: Laurent) -> CRational {
    CRational::from_laurent(l)
}

/// Limits the frame and, for inner calculi, the momenta `p_a`.
pub fn classical_chart(calc: &Calculus) -> Result<ClassicalChart> {
    let coords = calc.coordinates();
    if calc.n() != 2 || coords != [Coordinate::Dx, Coordinate::Dy] {
        return Err(Error::Unsupported("the classical chart needs a two-generator frame on dx, dy".into()));
    }
    let p = match calc.spec().lambdas() {
        Some(ls) => {
            let qm1 = QScalar::from_poly(ZPoly::from_i64s(&[-1, 1]));
            Some(ls.iter().map(|l| l.scale(&qm1).eval_q1()).collect::<Result<Vec<_>>>()?)
        }
        None => None,
    };
    let f = calc.frame_inverse();
    let mut frame = Vec::with_capacity(2);
    for a in 0..2 {
        let mut coeffs = Vec::with_capacity(2);
        for (mu, c) in coords.iter().enumerate() {
            let entry = f.get(a, mu).eval_q1().map_err(|e| match e {
                Error::PoleAtOne { monomial, order } => {
                    Error::PoleAtOne { monomial: format!("{monomial} in the {c} component of theta^{}", a + 1), order }
                }
                other => other,
            })?;
            coeffs.push(laurent_rational(entry));
        }
        frame.push(CForm::one_form(coeffs[0].clone(), coeffs[1].clone()));
    }
    Ok(ClassicalChart { p, frame })
}

fn frame_det(frame: &[CForm]) -> Result<CRational> {
    if frame.len() != 2 || frame.iter().any(|f| f.degree() != 1) {
        return Err(Error::DegenerateFrame("need two 1-forms".into()));
    }
    let det = frame[0].wedge(&frame[1])?.coeff(0).clone();
    if det.is_zero() {
        return Err(Error::DegenerateFrame("theta^1 ∧ theta^2 vanishes".into()));
    }
    Ok(det)
}

/// The connection form `ω^1_2` with `dθ^1 = -ω^1_2 ∧ θ^2` and
/// `dθ^2 = ω^1_2 ∧ θ^1`.
pub fn cartan_connection(frame: &[CForm]) -> Result<CForm> {
    let det = frame_det(frame)?;
    let h1 = frame[0].d().coeff(0).checked_div(&det)?;
    let h2 = frame[1].d().coeff(0).checked_div(&det)?;
    Ok(-&(&frame[0].scale(&h1) + &frame[1].scale(&h2)))
}

/// Residuals of the two structure equations for a candidate `ω^1_2`.
pub fn structure_equation_check(frame: &[CForm], omega: &CForm) -> Result<Vec<Comparison>> {
    let first = -&omega.wedge(&frame[1])?;
    let second = omega.wedge(&frame[0])?;
    Ok(vec![
        Comparison::new("d theta^1 = -omega ∧ theta^2", frame[0].d().coeff(0).clone(), first.coeff(0).clone()),
        Comparison::new("d theta^2 = omega ∧ theta^1", frame[1].d().coeff(0).clone(), second.coeff(0).clone()),
    ])
}

/// `K` from `dω^1_2 = -K θ^1 ∧ θ^2`.
pub fn gauss_curvature(frame: &[CForm]) -> Result<CRational> {
    let det = frame_det(frame)?;
    let omega = cartan_connection(frame)?;
    Ok(-&omega.d().coeff(0).checked_div(&det)?)
}

/// `{p_c, x^a} θ^c_b = δ^a_b`.
pub fn frame_equation_check(p: &[Laurent], frame: &[CForm]) -> Result<Vec<Comparison>> {
    if p.len() != 2 || frame.len() != 2 {
        return Err(Error::DimensionMismatch("frame equation needs two momenta and two frame forms".into()));
    }
    let coords = [Laurent::x(), Laurent::y()];
    let mut out = Vec::new();
    for (a, xa) in coords.iter().enumerate() {
        for b in 0..2 {
            let mut v = CRational::zero();
            for (c, pc) in p.iter().enumerate() {
                let br = laurent_rational(poisson(pc, xa));
                v = &v + &(&br * frame[c].coeff(b));
            }
            let expect = if a == b { CRational::one() } else { CRational::zero() };
            out.push(Comparison::new(format!("frame equation ({}, {})", a + 1, b + 1), v, expect));
        }
    }
    Ok(out)
}

/// Result of comparing the limit of `ω_(0)` with the Cartan connection.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrosscheckReport {
    pub candidate: CForm,
    pub cartan: CForm,
    pub residual: CForm,
}

impl CrosscheckReport {
    pub fn matches(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Maps `lim ω_(0)^a_{bc} θ^b` to a frame connection form through the
/// antisymmetric part `½(ω^1_2 - ω^2_1)` and compares with the Cartan
/// connection of the limit frame.
pub fn connection_limit_crosscheck(calc: &Calculus, s: &SigmaTensor) -> Result<CrosscheckReport> {
    let conn = omega0(calc, s)?;
    if let Some((idx, mono, order)) = conn.first_pole() {
        let label: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
        return Err(Error::PoleAtOne {
            monomial: format!("{mono} in omega^{}_{}{}", label[0], label[1], label[2]),
            order,
        });
    }
    let chart = classical_chart(calc)?;
    let frame = &chart.frame;
    let limit_form = |a: usize, c: usize| -> Result<CForm> {
        let mut acc = CForm::zero(1);
        for (b, fb) in frame.iter().enumerate() {
            let w = conn.omega.get(&[a, b, c]).eval_q1()?;
            acc = &acc + &fb.scale(&laurent_rational(w));
        }
        Ok(acc)
    };
    let half = CRational::constant(num_rational::BigRational::new(1.into(), 2.into()));
    let candidate = (&limit_form(0, 1)? - &limit_form(1, 0)?).scale(&half);
    let cartan = cartan_connection(frame)?;
    let residual = &candidate - &cartan;
    Ok(CrosscheckReport { candidate, cartan, residual })
}

/// Rational lift of a limit plane element, used by property tests.
pub fn limit_of(f: &PlaneElement) -> Result<CRational> {
    Ok(laurent_rational(f.eval_q1()?))
}
