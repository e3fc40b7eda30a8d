//! Small dense exact linear algebra over the coefficient field, for the
//! Gram systems, eigenvector extractions and rank comparisons used when
//! expanding orthogonal bases and testing operator identities.

use alloc::vec::Vec;

use crate::ring::Scalar;

/// A dense row-major matrix of exact scalars.
#[derive(Clone, Debug)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Scalar>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: alloc::vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    fn row_scale(&mut self, i: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.at(i, j) * c;
            self.set(i, j, v);
        }
    }

    fn row_axpy(&mut self, dst: usize, src: usize, c: &Scalar) {
        for j in 0..self.cols {
            let v = self.at(dst, j) + &(self.at(src, j) * c);
            self.set(dst, j, v);
        }
    }

    fn row_swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let c = self.cols;
            self.data.swap(a * c + j, b * c + j);
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            self.row_swap(r, p);
            let inv = self.at(r, c).inverse();
            self.row_scale(r, &inv);
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = -self.at(i, c);
                    self.row_axpy(i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of the right kernel.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut out = Vec::new();
        let mut is_pivot = alloc::vec![None; self.cols];
        for (pi, &pc) in pivots.iter().enumerate() {
            is_pivot[pc] = Some(pi);
        }
        for free in 0..self.cols {
            if is_pivot[free].is_some() {
                continue;
            }
            let mut v = alloc::vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = -m.at(pi, free);
            }
            out.push(v);
        }
        out
    }

    /// Unique solution of a square invertible system `self · x = rhs`.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, rhs.len());
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let pivots = aug.rref();
        if pivots.len() != self.cols || pivots.iter().enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        Some((0..self.cols).map(|i| aug.at(i, self.cols).clone()).collect())
    }
}

/// Dimension of the span of the given vectors.
pub fn span_rank(vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Mat::from_rows(vectors.to_vec()).rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn solve_and_rank() {
        let m = Mat::from_rows(alloc::vec![
            alloc::vec![s(2), s(1)],
            alloc::vec![s(1), s(3)],
        ]);
        let x = m.solve(&[s(5), s(10)]).unwrap();
        assert_eq!(x[0], s(1));
        assert_eq!(x[1], s(3));
        assert_eq!(m.rank(), 2);

        let sing = Mat::from_rows(alloc::vec![
            alloc::vec![s(1), s(2)],
            alloc::vec![s(2), s(4)],
        ]);
        assert_eq!(sing.rank(), 1);
        assert!(sing.solve(&[s(1), s(1)]).is_none());
        let ker = sing.kernel_basis();
        assert_eq!(ker.len(), 1);
        // Kernel vector satisfies the defining equation.
        let v = &ker[0];
        assert!((&(sing.at(0, 0) * &v[0]) + &(sing.at(0, 1) * &v[1])).is_zero());
    }

    #[test]
    fn kernel_with_u_entries() {
        let u = Scalar::u_pow(1);
        let m = Mat::from_rows(alloc::vec![alloc::vec![u.clone(), -&Scalar::one()]]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        assert_eq!(&(&u * &ker[0][0]) - &ker[0][1], Scalar::zero());
    }
}
