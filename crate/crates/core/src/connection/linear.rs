use serde::{Deserialize, Serialize};

use super::tensor::{MetricTensor, SigmaTensor, TensorBi};
use crate::algebra::PlaneElement;
use crate::check::Comparison;
use crate::error::{Error, Result};
use crate::forms::{all_indices, index_key, pair, Calculus, GradedForm, Table};
use crate::scalars::{LimitQ1, QMatrix, QScalar};

/// A linear connection `Dθ^a = -ω^a_{bc} θ^b ⊗ θ^c` together with its
/// generalized permutation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConnectionData {
    pub omega: Table<PlaneElement>,
    pub chi: Table<QScalar>,
    pub sigma: SigmaTensor,
}

fn delta(a: usize, b: usize) -> bool {
    a == b
}

fn check_sizes(s: &SigmaTensor, n: usize) -> Result<()> {
    if s.n() != n {
        return Err(Error::DimensionMismatch(format!("sigma has n = {}, expected {}", s.n(), n)));
    }
    Ok(())
}

/// `(1 + S)(1 - C) = 0`, entrywise.
pub fn sigma_check(s: &SigmaTensor, c: &QMatrix) -> Result<Vec<Comparison>> {
    if s.matrix().rows() != c.rows() {
        return Err(Error::DimensionMismatch("sigma and C differ in size".into()));
    }
    let n2 = c.rows();
    let one = QMatrix::identity(n2);
    let prod = one.add(s.matrix())?.mul(&one.sub(c)?)?;
    let n = s.n();
    Ok((0..n2)
        .flat_map(|r| (0..n2).map(move |col| (r, col)))
        .map(|(r, col)| {
            Comparison::new(
                format!("(1+S)(1-C) at ({},{})", index_key(&[r / n, r % n]), index_key(&[col / n, col % n])),
                prod.get(r, col).clone(),
                QScalar::zero(),
            )
        })
        .collect())
}

/// `ω_(0)^a_{bc} = λ_d (S^{ad}_{bc} - δ^d_b δ^a_c)` with zero offset.
pub fn omega0(calc: &Calculus, s: &SigmaTensor) -> Result<ConnectionData> {
    let lambdas = calc
        .spec()
        .lambdas()
        .ok_or_else(|| Error::Unsupported("connections are only built over inner calculi".into()))?;
    let n = calc.n();
    check_sizes(s, n)?;
    let omega = Table::from_fn(n, 3, |i| {
        let (a, b, c) = (i[0], i[1], i[2]);
        let mut v = PlaneElement::zero();
        for (d, ld) in lambdas.iter().enumerate() {
            let mut coeff = s.get(a, d, b, c).clone();
            if delta(d, b) && delta(a, c) {
                coeff -= &QScalar::one();
            }
            v = &v + &ld.scale(&coeff);
        }
        v
    });
    Ok(ConnectionData { omega, chi: Table::zeros(n, 3), sigma: s.clone() })
}

impl ConnectionData {
    pub fn n(&self) -> usize {
        self.omega.n()
    }

    /// The same connection with the central offset replaced by `chi`.
    pub fn with_offset(&self, chi: Table<QScalar>) -> Self {
        let n = self.n();
        let omega = Table::from_fn(n, 3, |i| {
            let shift = &chi.get(i) - &self.chi.get(i);
            &self.omega.get(i) + &PlaneElement::scalar(shift)
        });
        ConnectionData { omega, chi, sigma: self.sigma.clone() }
    }

    /// `Dθ^a = -ω^a_{bc} θ^b ⊗ θ^c`.
    pub fn covariant_derivative(&self, a: usize) -> TensorBi {
        TensorBi::from_fn(self.n(), |b, c| -&self.omega.get(&[a, b, c]))
    }

    /// `D(f θ^a)` by the left Leibniz rule: `df ⊗ θ^a + f Dθ^a`.
    pub fn apply_left(&self, calc: &Calculus, f: &PlaneElement, a: usize) -> Result<TensorBi> {
        let first = TensorBi::tensor(&calc.df(f), &calc.theta_form(a), self.n())?;
        Ok(&first + &self.covariant_derivative(a).left_mul(f))
    }

    /// `D(θ^a f)` by the right Leibniz rule: `(Dθ^a) f + σ(θ^a ⊗ df)`.
    pub fn apply_right(&self, calc: &Calculus, f: &PlaneElement, a: usize) -> Result<TensorBi> {
        let second = self.sigma.apply(&TensorBi::tensor(&calc.theta_form(a), &calc.df(f), self.n())?);
        Ok(&self.covariant_derivative(a).right_mul(f) + &second)
    }

    /// First entry with a pole at `q = 1`, if any.
    pub fn first_pole(&self) -> Option<(Vec<usize>, String, u32)> {
        for (idx, f) in self.omega.entries() {
            for (&(m, n), c) in f.terms() {
                if let LimitQ1::Pole(order) = c.limit_q1() {
                    return Some((idx.clone(), crate::algebra::monomial_string(m, n), order));
                }
            }
        }
        None
    }

    pub fn is_q1_regular(&self) -> bool {
        self.first_pole().is_none()
    }
}

/// `D_(0)θ^a = -θ ⊗ θ^a + σ(θ^a ⊗ θ)`.
pub fn d0_via_theta(calc: &Calculus, s: &SigmaTensor, a: usize) -> Result<TensorBi> {
    let theta = &calc.structure()?.theta;
    let n = calc.n();
    let ta = calc.theta_form(a);
    let first = TensorBi::tensor(theta, &ta, n)?;
    let second = s.apply(&TensorBi::tensor(&ta, theta, n)?);
    Ok(&second - &first)
}

/// `Θ^a = dθ^a - π(Dθ^a)`.
pub fn torsion(calc: &Calculus, conn: &ConnectionData) -> Result<Vec<GradedForm>> {
    let dtheta = calc.dtheta()?;
    Ok(dtheta.iter().enumerate().map(|(a, dt)| dt - &conn.covariant_derivative(a).project(calc)).collect())
}

/// `ω^a_{bc} - ω^a_{de} C^{de}_{bc} = C^a_{bc}`.
pub fn torsionfree_check(calc: &Calculus, conn: &ConnectionData) -> Result<Vec<Comparison>> {
    let s = calc.structure()?;
    let n = calc.n();
    let c = calc.c();
    let mut out = Vec::new();
    for idx in all_indices(n, 3) {
        let (a, b, cc) = (idx[0], idx[1], idx[2]);
        let mut lhs = conn.omega.get(&idx);
        for d in 0..n {
            for e in 0..n {
                let ce = c.get(pair(n, d, e), pair(n, b, cc));
                if !ce.is_zero() {
                    lhs = &lhs - &conn.omega.get(&[a, d, e]).scale(ce);
                }
            }
        }
        out.push(Comparison::new(format!("torsion-free at ({})", index_key(&idx)), lhs, s.c_abc.get(&idx)));
    }
    Ok(out)
}

/// `S^{ae}_{dh} g^{hf} S^{cb}_{ef} = g^{ac} δ^b_d`.
pub fn metric_check(s: &SigmaTensor, g: &MetricTensor) -> Result<Vec<Comparison>> {
    let n = s.n();
    if g.n() != n {
        return Err(Error::DimensionMismatch("metric and sigma differ in size".into()));
    }
    let mut out = Vec::new();
    for idx in all_indices(n, 4) {
        let (a, b, c, d) = (idx[0], idx[1], idx[2], idx[3]);
        let mut lhs = QScalar::zero();
        for e in 0..n {
            for h in 0..n {
                let s1 = s.get(a, e, d, h);
                if s1.is_zero() {
                    continue;
                }
                for f in 0..n {
                    let gh = g.get(h, f);
                    if gh.is_zero() {
                        continue;
                    }
                    lhs += &(&(s1 * gh) * s.get(c, b, e, f));
                }
            }
        }
        let rhs = if b == d { g.get(a, c).clone() } else { QScalar::zero() };
        out.push(Comparison::new(format!("metric at (a,b,c,d) = ({})", index_key(&idx)), lhs, rhs));
    }
    Ok(out)
}

/// The matrix layout of the metric condition for the euclidean metric:
/// `S · S' = 1` with `S'[(r1 r2)][(c1 c2)] = S^{c1 r1}_{c2 r2}`.
pub fn metric_matrix_check(s: &SigmaTensor) -> Result<Vec<Comparison>> {
    let n = s.n();
    let n2 = n * n;
    let rearranged = QMatrix::from_fn(n2, n2, |r, c| s.get(c / n, r / n, c % n, r % n).clone());
    let prod = s.matrix().mul(&rearranged)?;
    let one = QMatrix::identity(n2);
    Ok((0..n2)
        .flat_map(|r| (0..n2).map(move |c| (r, c)))
        .map(|(r, c)| {
            Comparison::new(
                format!("matrix form at ({},{})", r + 1, c + 1),
                prod.get(r, c).clone(),
                one.get(r, c).clone(),
            )
        })
        .collect())
}

/// `ω^a_{bc} + ω_{ce}^f S^{ae}_{bf} = 0` with `ω_{ce}^f = g_{cd} ω^d_{eh} g^{hf}`.
pub fn metric_omega_check(conn: &ConnectionData, g: &MetricTensor) -> Result<Vec<Comparison>> {
    let n = conn.n();
    if g.n() != n {
        return Err(Error::DimensionMismatch("metric and connection differ in size".into()));
    }
    let lower = g.lower();
    let lowered = Table::from_fn(n, 3, |i| {
        let (c, e, f) = (i[0], i[1], i[2]);
        let mut v = PlaneElement::zero();
        for d in 0..n {
            for h in 0..n {
                let k = lower.get(c, d) * g.get(h, f);
                if !k.is_zero() {
                    v = &v + &conn.omega.get(&[d, e, h]).scale(&k);
                }
            }
        }
        v
    });
    let mut out = Vec::new();
    for idx in all_indices(n, 3) {
        let (a, b, c) = (idx[0], idx[1], idx[2]);
        let mut v = conn.omega.get(&idx);
        for e in 0..n {
            for f in 0..n {
                let s = conn.sigma.get(a, e, b, f);
                if !s.is_zero() {
                    v = &v + &lowered.get(&[c, e, f]).scale(s);
                }
            }
        }
        out.push(Comparison::new(
            format!("metric compatibility of omega at ({})", index_key(&idx)),
            v,
            PlaneElement::zero(),
        ));
    }
    Ok(out)
}

/// `g^{ab} = S^{ab}_{cd} g^{cd}`.
pub fn sigma_symmetry_check(s: &SigmaTensor, g: &MetricTensor) -> Result<Vec<Comparison>> {
    let n = s.n();
    if g.n() != n {
        return Err(Error::DimensionMismatch("metric and sigma differ in size".into()));
    }
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let mut rhs = QScalar::zero();
            for c in 0..n {
                for d in 0..n {
                    rhs += &(s.get(a, b, c, d) * g.get(c, d));
                }
            }
            out.push(Comparison::new(format!("g^{}{} = S g", a + 1, b + 1), g.get(a, b).clone(), rhs));
        }
    }
    Ok(out)
}
