//! General identities every consistent calculus satisfies. Each method
//! returns the list of exact comparisons making up the identity.

use num_rational::BigRational;

use super::calculus::Calculus;
use super::form::GradedForm;
use super::structure::{pair, twisted_bracket};
use crate::algebra::PlaneElement;
use crate::check::Comparison;
use crate::error::{Error, Result};
use crate::scalars::QScalar;

fn half() -> QScalar {
    QScalar::from_ratio(&BigRational::new(1.into(), 2.into()))
}

fn delta(a: usize, b: usize) -> QScalar {
    if a == b {
        QScalar::one()
    } else {
        QScalar::zero()
    }
}

impl Calculus {
    fn lambdas(&self) -> Result<Vec<PlaneElement>> {
        self.spec.lambdas().ok_or(Error::OuterStructureUnavailable)
    }

    /// `Σ_{bc} T_{bc} θ^b θ^c` for a coefficient function over index pairs.
    pub fn quadratic_form(&self, mut t: impl FnMut(usize, usize) -> PlaneElement) -> GradedForm {
        let n = self.n();
        let mut out = GradedForm::zero(2);
        for b in 0..n {
            for c in 0..n {
                let f = t(b, c);
                if !f.is_zero() {
                    out = &out + &self.word_form(&[b, c], &f);
                }
            }
        }
        out
    }

    /// `d(d ω) = 0`.
    pub fn identity_d_squared(&self, form: &GradedForm) -> Result<Vec<Comparison>> {
        let dd = self.d(&self.d(form)?)?;
        Ok(vec![Comparison::new(format!("d(d({form}))"), dd, GradedForm::zero(form.degree() + 2))])
    }

    /// `d(a b) = (da) b + (-1)^|a| a (db)`.
    pub fn identity_leibniz(&self, a: &GradedForm, b: &GradedForm) -> Result<Vec<Comparison>> {
        let lhs = self.d(&self.wedge(a, b)?)?;
        let mut rhs = self.wedge(&self.d(a)?, b)?;
        let second = self.wedge(a, &self.d(b)?)?;
        rhs = if a.degree().is_multiple_of(2) { &rhs + &second } else { &rhs - &second };
        Ok(vec![Comparison::new(format!("d(({a})({b}))"), lhs, rhs)])
    }

    /// `d(f θ^a) = d(θ^a f)` for every frame generator: the differential
    /// respects the bimodule relation.
    pub fn identity_d_respects_bimodule(&self, f: &PlaneElement) -> Result<Vec<Comparison>> {
        let dtheta = self.dtheta()?;
        let df = self.df(f);
        let mut out = Vec::new();
        for (a, dta) in dtheta.iter().enumerate() {
            let ta = self.theta_form(a);
            let left = &self.wedge(&df, &ta)? + &dta.left_mul(f);
            let right = &dta.right_mul(f) - &self.wedge(&ta, &df)?;
            out.push(Comparison::new(format!("d(f t{0}) = d(t{0} f), f = {f}", a + 1), left, right));
        }
        Ok(out)
    }

    /// The differential kills every degree-2 relation
    /// `θ^a θ^b + C^{ab}_{cd} θ^c θ^d`, computed on unreduced words.
    pub fn identity_d_respects_relations(&self) -> Result<Vec<Comparison>> {
        let n = self.n();
        let dtheta = self.dtheta()?;
        let c = self.c();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let mut acc = GradedForm::zero(3);
                for cc in 0..n {
                    for dd in 0..n {
                        let mut coeff = c.get(pair(n, a, b), pair(n, cc, dd)).clone();
                        if (a, b) == (cc, dd) {
                            coeff += &QScalar::one();
                        }
                        if coeff.is_zero() {
                            continue;
                        }
                        let first = self.wedge(&dtheta[cc], &self.theta_form(dd))?;
                        let second = self.wedge(&self.theta_form(cc), &dtheta[dd])?;
                        acc = &acc + &(&first - &second).scale(&coeff);
                    }
                }
                out.push(Comparison::new(
                    format!("d(t{0} t{1} + C^{0}{1}_cd tc td)", a + 1, b + 1),
                    acc,
                    GradedForm::zero(3),
                ));
            }
        }
        Ok(out)
    }

    /// `dθ^a` from the structure data agrees with the route through the
    /// coordinate differentials.
    pub fn identity_dtheta_routes(&self) -> Result<Vec<Comparison>> {
        let direct = self.dtheta()?;
        let coord = self.dtheta_coordinate_route()?;
        Ok(direct
            .iter()
            .zip(coord)
            .enumerate()
            .map(|(a, (l, r))| Comparison::new(format!("d t{}", a + 1), l.clone(), r))
            .collect())
    }

    /// `θ^a(e_b) = δ^a_b` and coordinate/frame conversions are inverse.
    pub fn identity_frame_roundtrip(&self) -> Result<Vec<Comparison>> {
        let n = self.n();
        let mut out = Vec::new();
        for a in 0..n {
            let coords = self.to_coordinates(&self.theta_form(a))?;
            let back = self.from_coordinates(&coords);
            out.push(Comparison::new(format!("t{} via coordinates", a + 1), back, self.theta_form(a)));
        }
        for (mu, &c) in self.coordinates().iter().enumerate() {
            let h = self.to_coordinates(&self.coordinate_form(mu))?;
            for (nu, hn) in h.into_iter().enumerate() {
                let expect = if mu == nu { PlaneElement::one() } else { PlaneElement::zero() };
                out.push(Comparison::new(format!("{c} coordinate {}", nu + 1), hn, expect));
            }
            out.push(Comparison::new(
                format!("{c} from its definition"),
                self.coordinate_form(mu),
                self.differential(c),
            ));
        }
        Ok(out)
    }

    /// Every covector vanishing on the quotient satisfies `A(1 - C) = 0`.
    /// The covectors are `e_w - reduce(w)`, optionally recombined with the
    /// given weights.
    pub fn identity_completeness(&self, weights: Option<&[QScalar]>) -> Vec<Comparison> {
        let n = self.n();
        let n2 = n * n;
        let c = self.c();
        let mut kernel: Vec<Vec<QScalar>> = Vec::new();
        for w in 0..n2 {
            let word = [w / n, w % n];
            let mut v = vec![QScalar::zero(); n2];
            v[w] = QScalar::one();
            for (bw, s) in self.exterior.reduce(&word) {
                v[pair(n, bw[0], bw[1])] -= s;
            }
            if v.iter().any(|e| !e.is_zero()) {
                kernel.push(v);
            }
        }
        if let Some(ws) = weights {
            let mut combo = vec![QScalar::zero(); n2];
            for (v, s) in kernel.iter().zip(ws.iter().cycle()) {
                for (slot, e) in combo.iter_mut().zip(v) {
                    *slot += &(e * s);
                }
            }
            kernel = vec![combo];
        }
        let mut out = Vec::new();
        for (i, a) in kernel.iter().enumerate() {
            // the covector must also vanish on the quotient
            let form = self.quadratic_form(|b, cc| PlaneElement::scalar(a[pair(n, b, cc)].clone()));
            out.push(Comparison::new(format!("kernel covector {} is a relation", i + 1), form, GradedForm::zero(2)));
            for col in 0..n2 {
                let mut v = a[col].clone();
                for (row, ar) in a.iter().enumerate() {
                    v -= &(c.get(row, col) * ar);
                }
                out.push(Comparison::new(
                    format!("covector {} at ({},{})", i + 1, col / n + 1, col % n + 1),
                    v,
                    QScalar::zero(),
                ));
            }
        }
        out
    }

    /// `[λ_b, λ_c]_C = λ_a D^a_{bc} + K_{bc}`.
    pub fn identity_twisted_bracket(&self) -> Result<Vec<Comparison>> {
        let s = self.structure()?;
        let l = self.lambdas()?;
        let n = self.n();
        let mut out = Vec::new();
        for b in 0..n {
            for c in 0..n {
                let lhs = twisted_bracket(&l, self.c(), b, c);
                let mut rhs = PlaneElement::scalar(s.k.get(&[b, c]));
                for (a, la) in l.iter().enumerate() {
                    rhs = &rhs + &la.scale(&s.d.get(&[a, b, c]));
                }
                out.push(Comparison::new(format!("[l{}, l{}]_C", b + 1, c + 1), lhs, rhs));
            }
        }
        Ok(out)
    }

    /// `X + X C = 0` in the lower index pair for `C^a_{bc}`, `D^a_{bc}`
    /// and `K_{bc}`.
    pub fn identity_twisted_antisymmetry(&self) -> Result<Vec<Comparison>> {
        let s = self.structure()?;
        let n = self.n();
        let c = self.c();
        let mut out = Vec::new();
        for b in 0..n {
            for cc in 0..n {
                let col = pair(n, b, cc);
                let mut k = s.k.get(&[b, cc]);
                for d in 0..n {
                    for e in 0..n {
                        k += &(&s.k.get(&[d, e]) * c.get(pair(n, d, e), col));
                    }
                }
                out.push(Comparison::new(format!("K + KC at ({},{})", b + 1, cc + 1), k, QScalar::zero()));
                for a in 0..n {
                    let mut ca = s.c_abc.get(&[a, b, cc]);
                    let mut da = s.d.get(&[a, b, cc]);
                    for d in 0..n {
                        for e in 0..n {
                            let ce = c.get(pair(n, d, e), col);
                            if ce.is_zero() {
                                continue;
                            }
                            ca = &ca + &s.c_abc.get(&[a, d, e]).scale(ce);
                            da += &(&s.d.get(&[a, d, e]) * ce);
                        }
                    }
                    let idx = format!("{},{},{}", a + 1, b + 1, cc + 1);
                    out.push(Comparison::new(format!("C + CC at ({idx})"), ca, PlaneElement::zero()));
                    out.push(Comparison::new(format!("D + DC at ({idx})"), da, QScalar::zero()));
                }
            }
        }
        Ok(out)
    }

    /// `dθ^a = -1/2 C^a_{bc} θ^b θ^c` with the extracted structure elements.
    pub fn identity_structure_elements(&self) -> Result<Vec<Comparison>> {
        let s = self.structure()?;
        let dtheta = self.dtheta()?;
        let h = half();
        Ok((0..self.n())
            .map(|a| {
                let rhs = self.quadratic_form(|b, c| -&s.c_abc.get(&[a, b, c]).scale(&h));
                Comparison::new(format!("d t{}", a + 1), dtheta[a].clone(), rhs)
            })
            .collect())
    }

    /// `C^a_{bc} - D^a_{bc} + L^a_{bc} - L^a_{de} C^{de}_{bc} = 0` with
    /// `L^a_{bc} = λ_b δ^a_c + λ_c δ^a_b`.
    pub fn identity_structure_consistency(&self) -> Result<Vec<Comparison>> {
        let s = self.structure()?;
        let l = self.lambdas()?;
        let n = self.n();
        let c = self.c();
        let sym =
            |a: usize, b: usize, cc: usize| -> PlaneElement { &l[b].scale(&delta(a, cc)) + &l[cc].scale(&delta(a, b)) };
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for cc in 0..n {
                    let mut v = &s.c_abc.get(&[a, b, cc]) - &PlaneElement::scalar(s.d.get(&[a, b, cc]));
                    v = &v + &sym(a, b, cc);
                    for d in 0..n {
                        for e in 0..n {
                            let ce = c.get(pair(n, d, e), pair(n, b, cc));
                            if !ce.is_zero() {
                                v = &v - &sym(a, d, e).scale(ce);
                            }
                        }
                    }
                    out.push(Comparison::new(
                        format!("consistency at ({},{},{})", a + 1, b + 1, cc + 1),
                        v,
                        PlaneElement::zero(),
                    ));
                }
            }
        }
        Ok(out)
    }

    /// `df = -[θ, f]`.
    pub fn identity_theta_generates(&self, f: &PlaneElement) -> Result<Vec<Comparison>> {
        let theta = &self.structure()?.theta;
        let comm = &theta.right_mul(f) - &theta.left_mul(f);
        Ok(vec![Comparison::new(format!("d({f}) = -[theta, {f}]"), self.df(f), -comm)])
    }

    /// `g θ² = 1/2 g (λ_a D^a_{bc} + K_{bc}) θ^b θ^c` for a left multiplier `g`.
    pub fn identity_theta_square(&self, g: &PlaneElement) -> Result<Vec<Comparison>> {
        let s = self.structure()?;
        let l = self.lambdas()?;
        let h = half();
        let lhs = self.wedge(&s.theta, &s.theta)?.left_mul(g);
        let rhs = self
            .quadratic_form(|b, c| {
                let mut v = PlaneElement::scalar(s.k.get(&[b, c]));
                for (a, la) in l.iter().enumerate() {
                    v = &v + &la.scale(&s.d.get(&[a, b, c]));
                }
                v.scale(&h)
            })
            .left_mul(g);
        Ok(vec![Comparison::new(format!("({g}) theta^2"), lhs, rhs)])
    }

    /// `dθ + θ² = -1/2 K_{ab} θ^a θ^b`.
    pub fn identity_theta_curvature(&self) -> Result<Vec<Comparison>> {
        let s = self.structure()?;
        let h = half();
        let lhs = &self.d(&s.theta)? + &self.wedge(&s.theta, &s.theta)?;
        let rhs = self.quadratic_form(|a, b| PlaneElement::scalar(-&(&s.k.get(&[a, b]) * &h)));
        Ok(vec![Comparison::new("d theta + theta^2", lhs, rhs)])
    }

    /// `[e_b, e_c]_C f = (e_a f) C^a_{bc}` for the given `f`.
    pub fn identity_dual_maurer_cartan(&self, f: &PlaneElement) -> Result<Vec<Comparison>> {
        let s = self.structure()?;
        let n = self.n();
        let c = self.c();
        let e = |a: usize, g: &PlaneElement| self.derivation(a).apply(g);
        let first: Vec<PlaneElement> = (0..n).map(|a| e(a, f)).collect();
        let mut out = Vec::new();
        for b in 0..n {
            for cc in 0..n {
                let mut lhs = e(b, &first[cc]);
                for d in 0..n {
                    for (ee, fe) in first.iter().enumerate() {
                        let coeff = c.get(pair(n, d, ee), pair(n, b, cc));
                        if !coeff.is_zero() {
                            lhs = &lhs - &e(d, fe).scale(coeff);
                        }
                    }
                }
                let rhs = (0..n).fold(PlaneElement::zero(), |acc, a| &acc + &(&first[a] * &s.c_abc.get(&[a, b, cc])));
                out.push(Comparison::new(format!("[e{}, e{}]_C ({f})", b + 1, cc + 1), lhs, rhs));
            }
        }
        Ok(out)
    }
}
