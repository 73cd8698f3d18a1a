//! The twisted exterior algebra: frame words modulo `θ^a θ^b + C^{ab}_{cd} θ^c θ^d`.

use crate::error::{Error, Result};
use crate::scalars::{QMatrix, QScalar};

/// A word in the frame generators, 0-based indices.
pub type Word = Vec<usize>;

/// Highest form degree kept.
pub const MAX_DEGREE: usize = 3;

#[derive(Clone, Debug)]
struct Level {
    basis: Vec<Word>,
    /// For every word (indexed lexicographically) its expansion on `basis`.
    reduction: Vec<Vec<(usize, QScalar)>>,
}

/// Quotient data for degrees 0 through 3.
///
/// In degree `p` the relations are `u ⊗ r ⊗ v` for every relation row `r`
/// of `1 + C` at every position. The canonical basis consists of the
/// non-pivot words of a deterministic row reduction whose column order
/// prefers eliminating words that are "descending" with respect to a
/// generator priority order.
#[derive(Clone, Debug)]
pub struct ExteriorAlgebra {
    n: usize,
    levels: Vec<Level>,
}

pub(crate) fn word_index(word: &[usize], n: usize) -> usize {
    word.iter().fold(0, |acc, &a| acc * n + a)
}

fn index_word(mut idx: usize, n: usize, len: usize) -> Word {
    let mut w = vec![0; len];
    for slot in w.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    w
}

impl ExteriorAlgebra {
    /// `order` lists generators from lowest to highest elimination priority.
    pub fn new(c: &QMatrix, order: &[usize]) -> Result<Self> {
        let n2 = c.rows();
        let n = (n2 as f64).sqrt().round() as usize;
        if n * n != n2 || c.cols() != n2 || n == 0 {
            return Err(Error::DimensionMismatch(format!("C must be n^2 x n^2, got {}x{}", c.rows(), c.cols())));
        }
        let mut sorted = order.to_vec();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(Error::InvalidParameter("basis order must be a permutation of the frame indices".into()));
        }
        let mut rank = vec![0; n];
        for (pos, &g) in order.iter().enumerate() {
            rank[g] = pos;
        }
        let one_plus_c = QMatrix::identity(n2).add(c)?;
        let mut levels = Vec::with_capacity(MAX_DEGREE + 1);
        for p in 0..=MAX_DEGREE {
            levels.push(Self::build_level(n, p, &one_plus_c, &rank));
        }
        Ok(ExteriorAlgebra { n, levels })
    }

    fn build_level(n: usize, p: usize, one_plus_c: &QMatrix, rank: &[usize]) -> Level {
        let size = n.pow(p as u32);
        if p < 2 {
            let basis: Vec<Word> = (0..size).map(|i| index_word(i, n, p)).collect();
            let reduction = (0..size).map(|i| vec![(i, QScalar::one())]).collect();
            return Level { basis, reduction };
        }
        let n2 = n * n;
        let mut rows: Vec<Vec<QScalar>> = Vec::new();
        for pos in 0..p - 1 {
            let prefixes = n.pow(pos as u32);
            let suffixes = n.pow((p - 2 - pos) as u32);
            for u in 0..prefixes {
                for v in 0..suffixes {
                    for r in 0..n2 {
                        let rel = one_plus_c.row(r);
                        if rel.iter().all(QScalar::is_zero) {
                            continue;
                        }
                        let mut row = vec![QScalar::zero(); size];
                        for (cd, coeff) in rel.iter().enumerate() {
                            if !coeff.is_zero() {
                                let idx = (u * n2 + cd) * suffixes + v;
                                row[idx] = coeff.clone();
                            }
                        }
                        rows.push(row);
                    }
                }
            }
        }
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by(|&a, &b| {
            let ka: Vec<usize> = index_word(a, n, p).iter().map(|&g| rank[g]).collect();
            let kb: Vec<usize> = index_word(b, n, p).iter().map(|&g| rank[g]).collect();
            kb.cmp(&ka)
        });
        let (pivot_of_row, reduced) = if rows.is_empty() {
            (Vec::new(), QMatrix::zeros(0, size))
        } else {
            let m = QMatrix::from_rows(rows).expect("uniform rows");
            let r = m.rref_ordered(&order);
            (r.pivots, r.matrix)
        };
        let basis_idx: Vec<usize> = (0..size).filter(|i| !pivot_of_row.contains(i)).collect();
        let position = |w: usize| basis_idx.binary_search(&w).ok();
        let mut reduction = vec![Vec::new(); size];
        for &w in &basis_idx {
            reduction[w] = vec![(position(w).expect("basis word"), QScalar::one())];
        }
        for (row, &pc) in pivot_of_row.iter().enumerate() {
            let mut exp = Vec::new();
            for &w in &basis_idx {
                let e = reduced.get(row, w);
                if !e.is_zero() {
                    exp.push((position(w).expect("basis word"), -e));
                }
            }
            reduction[pc] = exp;
        }
        Level { basis: basis_idx.iter().map(|&i| index_word(i, n, p)).collect(), reduction }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self, degree: usize) -> &[Word] {
        &self.levels[degree].basis
    }

    pub fn dimension(&self, degree: usize) -> usize {
        self.levels[degree].basis.len()
    }

    /// Expansion of an arbitrary word on the canonical basis of its degree.
    pub fn reduce(&self, word: &[usize]) -> Vec<(&Word, &QScalar)> {
        let level = &self.levels[word.len()];
        level.reduction[word_index(word, self.n)].iter().map(|(i, c)| (&level.basis[*i], c)).collect()
    }

    pub fn is_basis_word(&self, word: &[usize]) -> bool {
        self.levels[word.len()].basis.iter().any(|b| b == word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn first_calculus_c() -> QMatrix {
        let mut c = QMatrix::zeros(4, 4);
        c.set(0, 0, QScalar::one());
        c.set(3, 3, QScalar::one());
        c.set(1, 2, QScalar::q());
        c.set(2, 1, QScalar::q_pow(-1));
        c
    }

    #[test]
    fn quotient_of_first_calculus() {
        let ext = ExteriorAlgebra::new(&first_calculus_c(), &[0, 1]).unwrap();
        assert_eq!(ext.basis(2), &[vec![0, 1]]);
        // θ²θ¹ = -q^-1 θ¹θ²
        let red = ext.reduce(&[1, 0]);
        assert_eq!(red, vec![(&vec![0, 1], &-QScalar::q_pow(-1))]);
        assert!(ext.reduce(&[0, 0]).is_empty());
        assert_eq!(ext.dimension(3), 0);
    }

    #[test]
    fn flip_gives_ordinary_exterior_algebra() {
        let c = QMatrix::from_fn(9, 9, |i, j| {
            let (a, b) = (i / 3, i % 3);
            if j == b * 3 + a {
                QScalar::one()
            } else {
                QScalar::zero()
            }
        });
        let ext = ExteriorAlgebra::new(&c, &[0, 1, 2]).unwrap();
        assert_eq!(ext.dimension(2), 3);
        assert_eq!(ext.dimension(3), 1);
        assert_eq!(ext.reduce(&[2, 1, 0]), vec![(&vec![0, 1, 2], &QScalar::from_int(-1))]);
    }
}
