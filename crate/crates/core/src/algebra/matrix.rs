use serde::{Deserialize, Serialize};

use super::plane::PlaneElement;
use crate::error::{Error, Result};

/// Square or rectangular matrix with entries in the quantum plane.
/// Products respect the noncommutative order of the entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraMatrix {
    rows: Vec<Vec<PlaneElement>>,
}

impl AlgebraMatrix {
    pub fn new(rows: Vec<Vec<PlaneElement>>) -> Self {
        AlgebraMatrix { rows }
    }

    pub fn identity(n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| if i == j { PlaneElement::one() } else { PlaneElement::zero() }).collect())
            .collect();
        AlgebraMatrix { rows }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    pub fn get(&self, i: usize, j: usize) -> &PlaneElement {
        &self.rows[i][j]
    }

    pub fn row(&self, i: usize) -> &[PlaneElement] {
        &self.rows[i]
    }

    pub fn transpose(&self) -> Self {
        let (r, c) = (self.nrows(), self.ncols());
        AlgebraMatrix { rows: (0..c).map(|j| (0..r).map(|i| self.rows[i][j].clone()).collect()).collect() }
    }

    pub fn mul(&self, rhs: &AlgebraMatrix) -> Result<Self> {
        if self.ncols() != rhs.nrows() {
            return Err(Error::DimensionMismatch("algebra matrix product".into()));
        }
        let rows = (0..self.nrows())
            .map(|i| {
                (0..rhs.ncols())
                    .map(|j| {
                        (0..self.ncols())
                            .fold(PlaneElement::zero(), |acc, k| &acc + &(&self.rows[i][k] * &rhs.rows[k][j]))
                    })
                    .collect()
            })
            .collect();
        Ok(AlgebraMatrix { rows })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.nrows())
    }

    /// Two-sided inverse by Gauss-Jordan elimination with left row
    /// operations. Every pivot must be a unit, i.e. a single monomial.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.nrows();
        if self.ncols() != n {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let mut a = self.rows.clone();
        let mut inv = Self::identity(n).rows;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a[r][col].as_monomial().is_some())
                .ok_or_else(|| Error::NotInvertible(format!("no invertible pivot in column {}", col + 1)))?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let u_inv = a[col][col].inverse()?;
            a[col] = a[col].iter().map(|e| &u_inv * e).collect();
            inv[col] = inv[col].iter().map(|e| &u_inv * e).collect();
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in 0..n {
                    let t = &factor * &a[col][j];
                    a[r][j] = &a[r][j] - &t;
                    let t = &factor * &inv[col][j];
                    inv[r][j] = &inv[r][j] - &t;
                }
            }
        }
        let left = AlgebraMatrix { rows: inv };
        if !self.mul(&left)?.is_identity() {
            return Err(Error::NotInvertible("left inverse is not a right inverse".into()));
        }
        Ok(left)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::QScalar;

    #[test]
    fn triangular_monomial_matrix_inverts() {
        let x = PlaneElement::x();
        let y = PlaneElement::y();
        let m = AlgebraMatrix::new(vec![
            vec![&x * &y, PlaneElement::zero()],
            vec![&(&x * &x) + &y, y.scale(&QScalar::q())],
        ]);
        let inv = m.inverse().unwrap();
        assert!(inv.mul(&m).unwrap().is_identity());
        assert!(m.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn non_unit_pivot_is_rejected() {
        let m = AlgebraMatrix::new(vec![vec![&PlaneElement::x() + &PlaneElement::y()]]);
        assert!(m.inverse().is_err());
    }
}
