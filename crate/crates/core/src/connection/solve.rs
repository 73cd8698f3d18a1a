//! Exact solution of the metric condition for `σ` over the block ansatz
//! (corner entries and middle block nonzero) by a lexicographic Gröbner
//! basis over `Q(q)` and back-substitution.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::linear::{metric_check, sigma_check};
use super::tensor::{MetricTensor, SigmaTensor};
use crate::error::{Error, Result};
use crate::scalars::{QMatrix, QScalar, ZPoly};

type Exps = Vec<u32>;

/// Polynomial in several variables over `Q(q)`; exponent vectors compare
/// lexicographically with the first variable largest.
#[derive(Clone, Debug, PartialEq, Eq)]
struct MPoly {
    terms: BTreeMap<Exps, QScalar>,
}

impl MPoly {
    fn zero() -> Self {
        MPoly { terms: BTreeMap::new() }
    }

    fn constant(nvars: usize, c: QScalar) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![0; nvars], &c);
        p
    }

    fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero();
        p.add_term(e, &QScalar::one());
        p
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Exps, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn leading(&self) -> (&Exps, &QScalar) {
        self.terms.iter().next_back().expect("nonzero polynomial")
    }

    fn add(&self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    fn sub(&self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), &-c);
        }
        out
    }

    fn mul_term(&self, e: &[u32], c: &QScalar) -> MPoly {
        let mut out = MPoly::zero();
        for (k, v) in &self.terms {
            let ek: Exps = k.iter().zip(e).map(|(a, b)| a + b).collect();
            out.add_term(ek, &(v * c));
        }
        out
    }

    fn mul(&self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in &rhs.terms {
            out = out.add(&self.mul_term(e, c));
        }
        out
    }

    fn monic(&self) -> MPoly {
        let inv = self.leading().1.inv().expect("nonzero leading coefficient");
        MPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c * &inv)).collect() }
    }

    /// Variables that occur with positive exponent.
    fn support(&self) -> Vec<bool> {
        let nvars = self.terms.keys().next().map_or(0, Vec::len);
        (0..nvars).map(|i| self.terms.keys().any(|e| e[i] > 0)).collect()
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn diff(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Full reduction of `p` by a set of monic polynomials.
fn reduce(p: &MPoly, basis: &[MPoly]) -> MPoly {
    let mut rem = MPoly::zero();
    let mut p = p.clone();
    while !p.is_zero() {
        let (le, lc) = {
            let (e, c) = p.leading();
            (e.clone(), c.clone())
        };
        match basis.iter().find(|g| divides(g.leading().0, &le)) {
            Some(g) => {
                let shift = diff(&le, g.leading().0);
                p = p.sub(&g.mul_term(&shift, &lc));
            }
            None => {
                rem.add_term(le.clone(), &lc);
                p.terms.remove(&le);
            }
        }
    }
    rem
}

/// Reduced lexicographic Gröbner basis by Buchberger's algorithm with the
/// coprime-leading-monomial criterion.
fn groebner(input: &[MPoly]) -> Vec<MPoly> {
    let mut basis: Vec<MPoly> = Vec::new();
    for p in input {
        let r = reduce(p, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let (li, lj) = (basis[i].leading().0.clone(), basis[j].leading().0.clone());
        let l = lcm(&li, &lj);
        if li.iter().zip(&lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let s =
            basis[i].mul_term(&diff(&l, &li), &QScalar::one()).sub(&basis[j].mul_term(&diff(&l, &lj), &QScalar::one()));
        let r = reduce(&s, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
            let k = basis.len() - 1;
            pairs.extend((0..k).map(|i| (i, k)));
        }
    }
    // minimal, then reduced
    let mut minimal: Vec<MPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis
            .iter()
            .enumerate()
            .any(|(j, h)| j != i && divides(h.leading().0, g.leading().0) && (h.leading().0 != g.leading().0 || j < i));
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let lead = {
            let (e, c) = minimal[i].leading();
            let mut m = MPoly::zero();
            m.add_term(e.clone(), c);
            m
        };
        let tail = minimal[i].sub(&lead);
        reduced.push(lead.add(&reduce(&tail, &others)).monic());
    }
    reduced.sort_by(|a, b| a.leading().0.cmp(b.leading().0));
    reduced
}

/// Univariate polynomial over `Q(q)`, ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
struct UPoly {
    coeffs: Vec<QScalar>,
}

impl UPoly {
    fn new(mut coeffs: Vec<QScalar>) -> Self {
        while coeffs.last().is_some_and(QScalar::is_zero) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    fn monic(&self) -> UPoly {
        let inv = self.coeffs.last().expect("nonzero").inv().expect("nonzero");
        UPoly::new(self.coeffs.iter().map(|c| c * &inv).collect())
    }

    fn derivative(&self) -> UPoly {
        UPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * &QScalar::from_int(k as i64)).collect())
    }

    fn rem(&self, b: &UPoly) -> UPoly {
        let mut r = self.coeffs.clone();
        let db = b.degree();
        let inv = b.coeffs[db].inv().expect("nonzero divisor");
        while r.len() > db && !r.is_empty() {
            let top = r.len() - 1;
            let f = &r[top] * &inv;
            for (i, c) in b.coeffs.iter().enumerate() {
                let v = &r[top - db + i] - &(&f * c);
                r[top - db + i] = v;
            }
            r.pop();
            while r.last().is_some_and(QScalar::is_zero) {
                r.pop();
            }
        }
        UPoly::new(r)
    }

    fn quo(&self, b: &UPoly) -> UPoly {
        let mut r = self.coeffs.clone();
        let db = b.degree();
        if r.len() <= db {
            return UPoly::new(Vec::new());
        }
        let mut quot = vec![QScalar::zero(); r.len() - db];
        let inv = b.coeffs[db].inv().expect("nonzero divisor");
        for top in (db..r.len()).rev() {
            let f = &r[top] * &inv;
            for (i, c) in b.coeffs.iter().enumerate() {
                let v = &r[top - db + i] - &(&f * c);
                r[top - db + i] = v;
            }
            quot[top - db] = f;
        }
        UPoly::new(quot)
    }

    fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    fn square_free(&self) -> UPoly {
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            self.monic()
        } else {
            self.quo(&g).monic()
        }
    }
}

fn rational_sqrt(r: &BigInt) -> Option<BigInt> {
    if r.is_negative() {
        return None;
    }
    let s = r.sqrt();
    (&s * &s == *r).then_some(s)
}

/// Square root of an integer polynomial within `Z[q]`, if it exists.
fn poly_sqrt(p: &ZPoly) -> Option<ZPoly> {
    if p.is_zero() {
        return Some(ZPoly::zero());
    }
    let deg = p.degree()?;
    if deg % 2 == 1 {
        return None;
    }
    let d = deg / 2;
    let c = p.coeffs();
    let top = rational_sqrt(&p.lc())?;
    let mut r = vec![BigRational::zero(); d + 1];
    r[d] = BigRational::from_integer(top);
    for k in (0..d).rev() {
        let mut acc = BigRational::from_integer(c[d + k].clone());
        for i in (k + 1)..d {
            let j = d + k - i;
            if j > k && j < d + 1 && j != d {
                acc -= &r[i] * &r[j];
            }
        }
        r[k] = acc / (BigRational::from_integer(2.into()) * &r[d]);
    }
    if r.iter().any(|x| !x.is_integer()) {
        return None;
    }
    let root = ZPoly::from_coeffs(r.iter().map(|x| x.to_integer()).collect());
    (&root * &root == *p).then_some(root)
}

/// Square root inside `Q(q)`, if it exists.
fn qscalar_sqrt(v: &QScalar) -> Option<QScalar> {
    let prod = v.num() * v.den();
    let root = poly_sqrt(&prod)?;
    QScalar::new(root, v.den().clone()).ok()
}

/// Roots in `Q(q)` of a nonzero univariate polynomial.
fn roots(p: &UPoly) -> Result<Vec<QScalar>> {
    let sf = p.square_free();
    match sf.degree() {
        0 => Ok(Vec::new()),
        1 => Ok(vec![-&sf.coeffs[0]]),
        2 => {
            let (c, b) = (&sf.coeffs[0], &sf.coeffs[1]);
            let disc = &(b * b) - &(c * &QScalar::from_int(4));
            let half = QScalar::from_ratio(&BigRational::new(1.into(), 2.into()));
            match qscalar_sqrt(&disc) {
                None => Ok(Vec::new()),
                Some(s) => {
                    let mut out = vec![(&(-b) - &s) * half.clone(), (&(-b) + &s) * half];
                    out.sort_by_key(|r| r.to_string());
                    out.dedup();
                    Ok(out)
                }
            }
        }
        k => Err(Error::Unsupported(format!("root finding for a square-free factor of degree {k} over Q(q)"))),
    }
}

fn substitute(p: &MPoly, var: usize, values: &BTreeMap<usize, QScalar>) -> UPoly {
    let mut coeffs: Vec<QScalar> = Vec::new();
    for (e, c) in &p.terms {
        let mut v = c.clone();
        for (i, &k) in e.iter().enumerate() {
            if i != var && k > 0 {
                let x = values.get(&i).expect("assigned variable");
                v = &v * &x.pow(k as i64).expect("non-negative power");
            }
        }
        let k = e[var] as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, QScalar::zero());
        }
        coeffs[k] += &v;
    }
    UPoly::new(coeffs)
}

/// All common zeros of a zero-dimensional lexicographic basis with
/// coordinates in `Q(q)`.
fn solve_triangular(basis: &[MPoly], nvars: usize) -> Result<Vec<BTreeMap<usize, QScalar>>> {
    let mut partial: Vec<BTreeMap<usize, QScalar>> = vec![BTreeMap::new()];
    for var in (0..nvars).rev() {
        let relevant: Vec<&MPoly> = basis
            .iter()
            .filter(|g| {
                let sup = g.support();
                sup[var] && sup.iter().enumerate().all(|(i, &s)| !s || i >= var)
            })
            .collect();
        let mut next = Vec::new();
        for assign in &partial {
            // polynomials not involving var must vanish identically
            let consistent = basis.iter().all(|g| {
                let sup = g.support();
                if sup[var] || sup.iter().enumerate().any(|(i, &s)| s && i < var) {
                    return true;
                }
                substitute(g, var, assign).is_zero()
            });
            if !consistent {
                continue;
            }
            let mut g = UPoly::new(Vec::new());
            for p in &relevant {
                g = g.gcd(&substitute(p, var, assign));
            }
            if g.is_zero() {
                return Err(Error::Unsupported("the metric condition has a positive-dimensional solution set".into()));
            }
            for r in roots(&g)? {
                let mut a = assign.clone();
                a.insert(var, r);
                next.push(a);
            }
        }
        partial = next;
    }
    Ok(partial)
}

/// Positions of the ansatz unknowns in the `4 x 4` matrix.
const ANSATZ: [(usize, usize); 8] = [(0, 0), (0, 3), (3, 0), (3, 3), (1, 1), (1, 2), (2, 1), (2, 2)];

/// Every `σ` of the block ansatz satisfying `(1+S)(1-C) = 0` and the
/// metric condition for `g`, with entries in `Q(q)`.
pub fn solve_sigma(c: &QMatrix, g: &MetricTensor) -> Result<Vec<SigmaTensor>> {
    if c.rows() != 4 || c.cols() != 4 || g.n() != 2 {
        return Err(Error::Unsupported(
            "solve_sigma handles two-generator frames only; use the metric check to verify a given sigma".into(),
        ));
    }
    for r in 0..4 {
        for col in 0..4 {
            if !ANSATZ.contains(&(r, col)) && !c.get(r, col).is_zero() {
                return Err(Error::Unsupported(format!(
                    "C has a nonzero entry at ({}, {}) outside the block shape; use the metric check instead",
                    r + 1,
                    col + 1
                )));
            }
        }
    }
    let nv = ANSATZ.len();
    let entry = |r: usize, col: usize| -> MPoly {
        match ANSATZ.iter().position(|&p| p == (r, col)) {
            Some(i) => MPoly::var(nv, i),
            None => MPoly::zero(),
        }
    };
    let one_minus_c = QMatrix::identity(4).sub(c)?;
    let mut equations = Vec::new();
    // (1 + S)(1 - C) = 0
    for r in 0..4 {
        for col in 0..4 {
            let mut e = MPoly::constant(nv, one_minus_c.get(r, col).clone());
            for k in 0..4 {
                let f = one_minus_c.get(k, col);
                if !f.is_zero() {
                    e = e.add(&entry(r, k).mul(&MPoly::constant(nv, f.clone())));
                }
            }
            if !e.is_zero() {
                equations.push(e);
            }
        }
    }
    // S^{ae}_{dh} g^{hf} S^{cb}_{ef} = g^{ac} δ^b_d
    let s = |a: usize, b: usize, c: usize, d: usize| entry(2 * a + b, 2 * c + d);
    for a in 0..2 {
        for b in 0..2 {
            for cc in 0..2 {
                for d in 0..2 {
                    let mut e = MPoly::zero();
                    for ee in 0..2 {
                        for h in 0..2 {
                            for f in 0..2 {
                                let gh = g.get(h, f);
                                if gh.is_zero() {
                                    continue;
                                }
                                let t = s(a, ee, d, h).mul(&s(cc, b, ee, f));
                                e = e.add(&t.mul(&MPoly::constant(nv, gh.clone())));
                            }
                        }
                    }
                    if b == d {
                        e = e.sub(&MPoly::constant(nv, g.get(a, cc).clone()));
                    }
                    if !e.is_zero() {
                        equations.push(e);
                    }
                }
            }
        }
    }
    let basis = groebner(&equations);
    if basis.iter().any(|p| p.terms.len() == 1 && p.leading().0.iter().all(|&k| k == 0)) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for assign in solve_triangular(&basis, nv)? {
        let mut m = QMatrix::zeros(4, 4);
        for (i, &(r, col)) in ANSATZ.iter().enumerate() {
            m.set(r, col, assign[&i].clone());
        }
        let sigma = SigmaTensor::new(m)?;
        let ok =
            sigma_check(&sigma, c)?.iter().all(|x| x.holds()) && metric_check(&sigma, g)?.iter().all(|x| x.holds());
        if ok && !out.contains(&sigma) {
            out.push(sigma);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_square_roots() {
        let p = ZPoly::from_i64s(&[1, 2, 1]);
        assert_eq!(poly_sqrt(&p), Some(ZPoly::from_i64s(&[1, 1])));
        let p = ZPoly::from_i64s(&[1, 0, 2, 0, 1]);
        assert_eq!(poly_sqrt(&p), Some(ZPoly::from_i64s(&[1, 0, 1])));
        assert_eq!(poly_sqrt(&ZPoly::from_i64s(&[2])), None);
        assert_eq!(poly_sqrt(&ZPoly::from_i64s(&[1, 1])), None);
        let p = ZPoly::from_i64s(&[4, 4, 1]);
        assert_eq!(poly_sqrt(&p), Some(ZPoly::from_i64s(&[2, 1])));
    }

    #[test]
    fn groebner_of_a_small_system() {
        // x^2 - 1, x*y - 1 in lex x > y: basis {x - y, y^2 - 1}
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let one = MPoly::constant(2, QScalar::one());
        let gb = groebner(&[x.mul(&x).sub(&one), x.mul(&y).sub(&one)]);
        assert_eq!(gb.len(), 2);
        let sols = solve_triangular(&gb, 2).unwrap();
        assert_eq!(sols.len(), 2);
        for s in sols {
            assert_eq!(s[&0], s[&1]);
            assert_eq!(&s[&0] * &s[&0], QScalar::one());
        }
    }

    #[test]
    fn quadratic_with_rational_function_roots() {
        // u^2 - (q + q^-1) u + 1 = (u - q)(u - q^-1)
        let p = UPoly::new(vec![QScalar::one(), -(&QScalar::q() + &QScalar::q_pow(-1)), QScalar::one()]);
        let r = roots(&p).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.contains(&QScalar::q()) && r.contains(&QScalar::q_pow(-1)));
    }
}
