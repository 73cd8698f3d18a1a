use std::fmt;

use serde::{Deserialize, Serialize};

use super::exterior::{ExteriorAlgebra, Word, MAX_DEGREE};
use super::form::GradedForm;
use super::structure::{decompose_bracket, pair, StructureData, Table};
use crate::algebra::{AlgebraMatrix, Derivation, PlaneElement};
use crate::error::{Error, Result};
use crate::scalars::{QMatrix, QScalar};

/// A coordinate 1-form the frame is expressed against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coordinate {
    Dx,
    Dy,
    /// `τ = x dy - q dy x`.
    Tau,
}

impl Coordinate {
    pub fn name(self) -> &'static str {
        match self {
            Coordinate::Dx => "dx",
            Coordinate::Dy => "dy",
            Coordinate::Tau => "tau",
        }
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Input data of a calculus.
#[derive(Clone, Debug)]
pub struct CalculusSpec {
    pub derivations: Vec<Derivation>,
    /// `C^{ab}_{cd}` at row `(ab)`, column `(cd)`.
    pub c: QMatrix,
    pub coordinates: Vec<Coordinate>,
    /// Frame indices from lowest to highest elimination priority in the
    /// degree-2 quotient; words led by high-priority generators are
    /// rewritten in terms of the others.
    pub basis_order: Vec<usize>,
}

impl CalculusSpec {
    pub fn new(derivations: Vec<Derivation>, c: QMatrix, coordinates: Vec<Coordinate>) -> Self {
        let n = derivations.len();
        CalculusSpec { derivations, c, coordinates, basis_order: (0..n).collect() }
    }

    pub fn with_basis_order(mut self, order: Vec<usize>) -> Self {
        self.basis_order = order;
        self
    }

    pub fn n(&self) -> usize {
        self.derivations.len()
    }

    pub fn is_inner(&self) -> bool {
        self.derivations.iter().all(|d| d.lambda().is_some())
    }

    pub fn lambdas(&self) -> Option<Vec<PlaneElement>> {
        self.derivations.iter().map(|d| d.lambda().cloned()).collect()
    }
}

/// A built differential calculus. Immutable once constructed.
#[derive(Clone, Debug)]
pub struct Calculus {
    pub(crate) spec: CalculusSpec,
    pub(crate) exterior: ExteriorAlgebra,
    pub(crate) frame: AlgebraMatrix,
    pub(crate) frame_inverse: AlgebraMatrix,
    pub(crate) right_inverse: AlgebraMatrix,
    pub(crate) structure: std::result::Result<StructureData, Error>,
    pub(crate) dtheta: std::result::Result<Vec<GradedForm>, Error>,
}

impl Calculus {
    pub fn build(spec: CalculusSpec) -> Result<Self> {
        let n = spec.n();
        if n == 0 {
            return Err(Error::DimensionMismatch("a calculus needs at least one derivation".into()));
        }
        if spec.c.rows() != n * n || spec.c.cols() != n * n {
            return Err(Error::DimensionMismatch(format!("C must be {0}x{0} for {1} derivations", n * n, n)));
        }
        if !spec.c.mul(&spec.c)?.is_identity() {
            return Err(Error::CNotInvolution);
        }
        if spec.coordinates.len() != n {
            return Err(Error::FrameDoesNotExist(format!(
                "{} coordinate differentials for {} derivations",
                spec.coordinates.len(),
                n
            )));
        }
        let exterior = ExteriorAlgebra::new(&spec.c, &spec.basis_order)?;
        let frame = frame_matrix(&spec);
        let frame_inverse =
            frame.inverse().map_err(|e| Error::FrameDoesNotExist(format!("frame matrix is singular ({e})")))?;
        let right_inverse = frame
            .transpose()
            .inverse()
            .map_err(|e| Error::FrameDoesNotExist(format!("transposed frame matrix is singular ({e})")))?;
        let mut calc = Calculus {
            spec,
            exterior,
            frame,
            frame_inverse,
            right_inverse,
            structure: Err(Error::OuterStructureUnavailable),
            dtheta: Err(Error::OuterStructureUnavailable),
        };
        if let Some(lambdas) = calc.spec.lambdas() {
            match calc.extract(&lambdas) {
                Ok((s, dt)) => {
                    calc.structure = Ok(s);
                    calc.dtheta = Ok(dt);
                }
                Err(e) => {
                    calc.structure = Err(e.clone());
                    calc.dtheta = Err(e);
                }
            }
        } else {
            calc.dtheta = calc.dtheta_coordinate_route();
        }
        Ok(calc)
    }

    fn extract(&self, lambdas: &[PlaneElement]) -> Result<(StructureData, Vec<GradedForm>)> {
        let n = self.n();
        let (d, k) = decompose_bracket(lambdas, &self.spec.c)?;
        let theta = -self.one_form(lambdas);
        let half = QScalar::from_ratio(&num_rational::BigRational::new(1.into(), 2.into()));
        let mut dtheta = Vec::with_capacity(n);
        for a in 0..n {
            let ta = self.theta_form(a);
            // -[θ, θ^a] - 1/2 D^a_{bc} θ^b θ^c
            let mut out = -&(&self.wedge(&theta, &ta)? + &self.wedge(&ta, &theta)?);
            for b in 0..n {
                for c in 0..n {
                    let dv = d.get(&[a, b, c]);
                    if !dv.is_zero() {
                        let w = self.word_form(&[b, c], &PlaneElement::scalar(&dv * &half));
                        out = &out - &w;
                    }
                }
            }
            dtheta.push(out);
        }
        let c_abc = self.structure_elements(&dtheta);
        let data = StructureData {
            c_abc,
            d,
            k,
            theta,
            frame_coord: self.frame_inverse.clone(),
            frame_coord_inverse: self.frame.clone(),
        };
        Ok((data, dtheta))
    }

    /// Reads `C^a_{bc}` off `dθ^a`: the unique representative satisfying
    /// the twisted antisymmetry is `-v(1 - C)` for the coefficient vector
    /// `v` of `dθ^a` on the basis words.
    fn structure_elements(&self, dtheta: &[GradedForm]) -> Table<PlaneElement> {
        let n = self.n();
        let c = &self.spec.c;
        let mut out = Table::zeros(n, 3);
        for (a, form) in dtheta.iter().enumerate() {
            for b in 0..n {
                for cc in 0..n {
                    let col = pair(n, b, cc);
                    let mut acc = PlaneElement::zero();
                    for (w, v) in form.terms() {
                        let row = pair(n, w[0], w[1]);
                        let delta = if row == col { QScalar::one() } else { QScalar::zero() };
                        let f = &delta - c.get(row, col);
                        acc = &acc - &v.scale(&f);
                    }
                    out.set(&[a, b, cc], acc);
                }
            }
        }
        out
    }

    pub fn spec(&self) -> &CalculusSpec {
        &self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn c(&self) -> &QMatrix {
        &self.spec.c
    }

    pub fn exterior(&self) -> &ExteriorAlgebra {
        &self.exterior
    }

    pub fn coordinates(&self) -> &[Coordinate] {
        &self.spec.coordinates
    }

    /// `E[μ][a] = e_a(ξ^μ)`.
    pub fn frame_matrix(&self) -> &AlgebraMatrix {
        &self.frame
    }

    /// `F = E^{-1}`, so `θ^a = F[a][μ] dξ^μ`.
    pub fn frame_inverse(&self) -> &AlgebraMatrix {
        &self.frame_inverse
    }

    pub fn structure(&self) -> Result<&StructureData> {
        self.structure.as_ref().map_err(Clone::clone)
    }

    pub fn dtheta(&self) -> Result<&[GradedForm]> {
        self.dtheta.as_ref().map(Vec::as_slice).map_err(Clone::clone)
    }

    pub fn derivation(&self, a: usize) -> &Derivation {
        &self.spec.derivations[a]
    }

    /// The frame generator `θ^a`.
    pub fn theta_form(&self, a: usize) -> GradedForm {
        GradedForm::from_terms(1, [(vec![a], PlaneElement::one())])
    }

    /// `Σ w_a θ^a`.
    pub fn one_form(&self, coeffs: &[PlaneElement]) -> GradedForm {
        GradedForm::from_terms(1, coeffs.iter().enumerate().map(|(a, f)| (vec![a], f.clone())))
    }

    /// `f θ^w`, reduced onto the canonical basis.
    pub fn word_form(&self, word: &[usize], f: &PlaneElement) -> GradedForm {
        let mut out = GradedForm::zero(word.len());
        if f.is_zero() {
            return out;
        }
        for (bw, s) in self.exterior.reduce(word) {
            out.add_term(bw.clone(), &f.scale(s));
        }
        out
    }

    /// Brings an arbitrary (possibly non-canonical) form onto the basis.
    pub fn reduce(&self, form: &GradedForm) -> GradedForm {
        let mut out = GradedForm::zero(form.degree());
        for (w, f) in form.terms() {
            out = &out + &self.word_form(w, f);
        }
        out
    }

    pub fn wedge(&self, a: &GradedForm, b: &GradedForm) -> Result<GradedForm> {
        let deg = a.degree() + b.degree();
        if deg > MAX_DEGREE {
            return Err(Error::DegreeTooHigh(deg));
        }
        let mut out = GradedForm::zero(deg);
        for (w1, f1) in a.terms() {
            for (w2, f2) in b.terms() {
                let word: Word = w1.iter().chain(w2).copied().collect();
                out = &out + &self.word_form(&word, &(f1 * f2));
            }
        }
        Ok(out)
    }

    /// `df = Σ (e_a f) θ^a`.
    pub fn df(&self, f: &PlaneElement) -> GradedForm {
        let coeffs: Vec<PlaneElement> = self.spec.derivations.iter().map(|e| e.apply(f)).collect();
        self.one_form(&coeffs)
    }

    /// Exterior derivative, extended from functions and `dθ^a` by the
    /// graded Leibniz rule.
    pub fn d(&self, form: &GradedForm) -> Result<GradedForm> {
        let p = form.degree();
        if p + 1 > MAX_DEGREE {
            return Err(Error::DegreeTooHigh(p + 1));
        }
        if p == 0 {
            return Ok(self.df(&form.coeff(&[])));
        }
        let dtheta = self.dtheta()?;
        let mut out = GradedForm::zero(p + 1);
        for (w, f) in form.terms() {
            let tw = self.word_form(w, &PlaneElement::one());
            out = &out + &self.wedge(&self.df(f), &tw)?;
            for (i, &a) in w.iter().enumerate() {
                let left = self.word_form(&w[..i], f);
                let right = self.word_form(&w[i + 1..], &PlaneElement::one());
                let mut t = self.wedge(&self.wedge(&left, &dtheta[a])?, &right)?;
                if i % 2 == 1 {
                    t = -t;
                }
                out = &out + &t;
            }
        }
        Ok(out)
    }

    /// The 1-form `dξ^μ` for the `mu`-th coordinate.
    pub fn coordinate_form(&self, mu: usize) -> GradedForm {
        self.one_form(self.frame.row(mu))
    }

    /// The 1-form named by `c`, whether or not it is one of the coordinates.
    pub fn differential(&self, c: Coordinate) -> GradedForm {
        match c {
            Coordinate::Dx => self.df(&PlaneElement::x()),
            Coordinate::Dy => self.df(&PlaneElement::y()),
            Coordinate::Tau => {
                let dy = self.df(&PlaneElement::y());
                let x = PlaneElement::x();
                &dy.left_mul(&x) - &dy.right_mul(&x).scale(&QScalar::q())
            }
        }
    }

    /// `Σ h_μ dξ^μ`.
    pub fn from_coordinates(&self, h: &[PlaneElement]) -> GradedForm {
        let n = self.n();
        let coeffs: Vec<PlaneElement> = (0..n)
            .map(|a| {
                h.iter().enumerate().fold(PlaneElement::zero(), |acc, (mu, hm)| &acc + &(hm * self.frame.get(mu, a)))
            })
            .collect();
        self.one_form(&coeffs)
    }

    fn frame_coeffs(&self, form: &GradedForm) -> Result<Vec<PlaneElement>> {
        if form.degree() != 1 {
            return Err(Error::DegreeMismatch(form.degree(), 1));
        }
        Ok((0..self.n()).map(|a| form.coeff(&[a])).collect())
    }

    /// Left coefficients `h_μ` with `form = Σ h_μ dξ^μ`.
    pub fn to_coordinates(&self, form: &GradedForm) -> Result<Vec<PlaneElement>> {
        let w = self.frame_coeffs(form)?;
        Ok((0..self.n())
            .map(|mu| {
                w.iter()
                    .enumerate()
                    .fold(PlaneElement::zero(), |acc, (a, wa)| &acc + &(wa * self.frame_inverse.get(a, mu)))
            })
            .collect())
    }

    /// Right coefficients `h_μ` with `form = Σ dξ^μ h_μ`.
    pub fn to_right_coordinates(&self, form: &GradedForm) -> Result<Vec<PlaneElement>> {
        let w = self.frame_coeffs(form)?;
        Ok((0..self.n())
            .map(|mu| {
                w.iter()
                    .enumerate()
                    .fold(PlaneElement::zero(), |acc, (a, wa)| &acc + &(self.right_inverse.get(mu, a) * wa))
            })
            .collect())
    }

    /// `dθ^a = d(F[a][μ]) dξ^μ + F[a][μ] d(dξ^μ)`, using only the
    /// derivations, the wedge, and `d(dx) = d(dy) = 0`,
    /// `dτ = dx dy + q dy dx`.
    pub fn dtheta_coordinate_route(&self) -> Result<Vec<GradedForm>> {
        let n = self.n();
        let mut out = Vec::with_capacity(n);
        for a in 0..n {
            let mut acc = GradedForm::zero(2);
            for (mu, &c) in self.spec.coordinates.iter().enumerate() {
                let fam = self.frame_inverse.get(a, mu);
                acc = &acc + &self.wedge(&self.df(fam), &self.coordinate_form(mu))?;
                acc = &acc + &self.coordinate_second_differential(c)?.left_mul(fam);
            }
            out.push(acc);
        }
        Ok(out)
    }

    /// `d(dξ)` for a coordinate differential, from its definition.
    pub fn coordinate_second_differential(&self, c: Coordinate) -> Result<GradedForm> {
        match c {
            Coordinate::Dx | Coordinate::Dy => Ok(GradedForm::zero(2)),
            Coordinate::Tau => {
                let dx = self.differential(Coordinate::Dx);
                let dy = self.differential(Coordinate::Dy);
                Ok(&self.wedge(&dx, &dy)? + &self.wedge(&dy, &dx)?.scale(&QScalar::q()))
            }
        }
    }
}

fn frame_matrix(spec: &CalculusSpec) -> AlgebraMatrix {
    let x = PlaneElement::x();
    let y = PlaneElement::y();
    let rows = spec
        .coordinates
        .iter()
        .map(|c| {
            spec.derivations
                .iter()
                .map(|e| match c {
                    Coordinate::Dx => e.apply(&x),
                    Coordinate::Dy => e.apply(&y),
                    Coordinate::Tau => {
                        let ey = e.apply(&y);
                        &(&x * &ey) - &(&ey * &x).scale(&QScalar::q())
                    }
                })
                .collect()
        })
        .collect();
    AlgebraMatrix::new(rows)
}
