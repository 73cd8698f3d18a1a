use std::collections::{BTreeMap, BTreeSet};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::form::GradedForm;
use crate::algebra::{AlgebraMatrix, Monomial, PlaneElement};
use crate::error::{Error, Result};
use crate::scalars::{QMatrix, QScalar, Solution};

/// Values that can live in a sparse [`Table`].
pub trait TableEntry: Clone + Default + PartialEq {
    fn is_zero_entry(&self) -> bool;
}

impl TableEntry for QScalar {
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
}

impl TableEntry for PlaneElement {
    fn is_zero_entry(&self) -> bool {
        self.is_zero()
    }
}

/// Sparse indexed array `T[i_1, ..., i_r]` with indices in `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table<T> {
    n: usize,
    rank: usize,
    entries: BTreeMap<Vec<usize>, T>,
}

impl<T: TableEntry> Table<T> {
    pub fn zeros(n: usize, rank: usize) -> Self {
        Table { n, rank, entries: BTreeMap::new() }
    }

    pub fn from_fn(n: usize, rank: usize, mut f: impl FnMut(&[usize]) -> T) -> Self {
        let mut t = Self::zeros(n, rank);
        for idx in all_indices(n, rank) {
            let v = f(&idx);
            t.set(&idx, v);
        }
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn get(&self, idx: &[usize]) -> T {
        self.entries.get(idx).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, idx: &[usize], v: T) {
        assert_eq!(idx.len(), self.rank);
        if v.is_zero_entry() {
            self.entries.remove(idx);
        } else {
            self.entries.insert(idx.to_vec(), v);
        }
    }

    /// Nonzero entries in index order.
    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &T)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }
}

pub(crate) fn all_indices(n: usize, rank: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p| {
                (0..n).map(move |a| {
                    let mut v = p.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    out
}

pub(crate) fn index_key(idx: &[usize]) -> String {
    idx.iter().map(|a| (a + 1).to_string()).collect::<Vec<_>>().join(",")
}

#[derive(Serialize, Deserialize)]
struct WireTable<T> {
    n: usize,
    rank: usize,
    entries: BTreeMap<String, T>,
}

impl<T: TableEntry + Serialize> Serialize for Table<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WireTable {
            n: self.n,
            rank: self.rank,
            entries: self.entries.iter().map(|(k, v)| (index_key(k), v.clone())).collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: TableEntry + Deserialize<'de>> Deserialize<'de> for Table<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let wire = WireTable::<T>::deserialize(d)?;
        let mut t = Table::zeros(wire.n, wire.rank);
        for (k, v) in wire.entries {
            let idx: Vec<usize> = k
                .split(',')
                .map(|p| p.parse::<usize>().ok().filter(|&a| a >= 1 && a <= wire.n).map(|a| a - 1))
                .collect::<Option<_>>()
                .ok_or_else(|| D::Error::custom(format!("bad index key '{k}'")))?;
            if idx.len() != wire.rank {
                return Err(D::Error::custom(format!("index key '{k}' has wrong rank")));
            }
            t.set(&idx, v);
        }
        Ok(t)
    }
}

/// Derived geometry of an inner calculus.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureData {
    /// `C^a_{bc}` in `dθ^a = -1/2 C^a_{bc} θ^b θ^c`, indexed `[a, b, c]`.
    pub c_abc: Table<PlaneElement>,
    /// `D^a_{bc}`, indexed `[a, b, c]`.
    pub d: Table<QScalar>,
    /// `K_{bc}`.
    pub k: Table<QScalar>,
    /// `θ = -λ_a θ^a`.
    pub theta: GradedForm,
    /// `θ^a = F[a][μ] dξ^μ`.
    pub frame_coord: AlgebraMatrix,
    /// `dξ^μ = E[μ][a] θ^a`.
    pub frame_coord_inverse: AlgebraMatrix,
}

/// Index of the pair `(a, b)` in an `n^2`-dimensional tensor square.
pub(crate) fn pair(n: usize, a: usize, b: usize) -> usize {
    a * n + b
}

/// `[λ_b, λ_c]_C = λ_b λ_c - C^{de}_{bc} λ_d λ_e`.
pub fn twisted_bracket(lambdas: &[PlaneElement], c: &QMatrix, b: usize, cc: usize) -> PlaneElement {
    let n = lambdas.len();
    let mut out = &lambdas[b] * &lambdas[cc];
    for d in 0..n {
        for e in 0..n {
            let coeff = c.get(pair(n, d, e), pair(n, b, cc));
            if !coeff.is_zero() {
                out = &out - &(&lambdas[d] * &lambdas[e]).scale(coeff);
            }
        }
    }
    out
}

/// Solves `[λ_b, λ_c]_C = λ_a D^a_{bc} + K_{bc}` for central `D`, `K`.
pub fn decompose_bracket(lambdas: &[PlaneElement], c: &QMatrix) -> Result<(Table<QScalar>, Table<QScalar>)> {
    let n = lambdas.len();
    let brackets: Vec<Vec<PlaneElement>> =
        (0..n).map(|b| (0..n).map(|cc| twisted_bracket(lambdas, c, b, cc)).collect()).collect();
    let mut support: BTreeSet<Monomial> = BTreeSet::new();
    support.insert((0, 0));
    for l in lambdas.iter().chain(brackets.iter().flatten()) {
        support.extend(l.terms().map(|(k, _)| *k));
    }
    let support: Vec<Monomial> = support.into_iter().collect();
    let a = QMatrix::from_fn(support.len(), n + 1, |i, j| {
        let (m, k) = support[i];
        if j < n {
            lambdas[j].coeff(m, k)
        } else if (m, k) == (0, 0) {
            QScalar::one()
        } else {
            QScalar::zero()
        }
    });
    if a.rank() != n + 1 {
        return Err(Error::IncompatibleLambda("the lambda_a and 1 are linearly dependent".into()));
    }
    let mut d = Table::zeros(n, 3);
    let mut k = Table::zeros(n, 2);
    for (b, row) in brackets.iter().enumerate() {
        for (cc, bracket) in row.iter().enumerate() {
            let rhs: Vec<QScalar> = support.iter().map(|&(m, j)| bracket.coeff(m, j)).collect();
            match a.solve(&rhs)? {
                Solution::Unique(z) => {
                    for (ai, v) in z.iter().take(n).enumerate() {
                        d.set(&[ai, b, cc], v.clone());
                    }
                    k.set(&[b, cc], z[n].clone());
                }
                _ => {
                    return Err(Error::IncompatibleLambda(format!(
                        "twisted bracket of lambda_{} and lambda_{} is not of the form lambda_a D^a + K",
                        b + 1,
                        cc + 1
                    )))
                }
            }
        }
    }
    Ok((d, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_json_round_trip() {
        let t = Table::from_fn(2, 3, |i| if i == [0, 1, 0] { QScalar::q() } else { QScalar::zero() });
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.contains("\"1,2,1\""));
        let back: Table<QScalar> = serde_json::from_str(&s).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn dependent_lambdas_are_rejected() {
        let l = vec![PlaneElement::x(), PlaneElement::x().scale(&QScalar::q())];
        let c = QMatrix::identity(4);
        assert!(matches!(decompose_bracket(&l, &c), Err(Error::IncompatibleLambda(_))));
    }
}
