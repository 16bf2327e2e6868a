//! Dense matrices over an exact field, with row reduction, kernels,
//! cokernels, and solving. Desk scale only.

use alloc::vec::Vec;
use alloc::{vec};

use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    pub rows: usize,
    pub cols: usize,
    dat: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn filled(rows: usize, cols: usize, v: T) -> Matrix<T> {
        Matrix { rows, cols, dat: vec![v; rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Matrix<T> {
        let r = rows.len();
        let c = rows.first().map(|x| x.len()).unwrap_or(0);
        let mut dat = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            dat.extend(row);
        }
        Matrix { rows: r, cols: c, dat }
    }

    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.dat[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.dat[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Matrix<T> {
        let mut dat = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                dat.push(self.at(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, dat }
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }
}

pub fn zero<F: Field>(f: &F, rows: usize, cols: usize) -> Matrix<F::Elem> {
    Matrix::filled(rows, cols, f.zero())
}

pub fn identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    let mut m = zero(f, n, n);
    for i in 0..n {
        m.set(i, i, f.one());
    }
    m
}

pub fn add<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!((a.rows, a.cols), (b.rows, b.cols));
    let mut out = a.clone();
    for i in 0..a.rows {
        for j in 0..a.cols {
            out.set(i, j, f.add(a.at(i, j), b.at(i, j)));
        }
    }
    out
}

pub fn scale<F: Field>(f: &F, c: &F::Elem, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let mut out = a.clone();
    for i in 0..a.rows {
        for j in 0..a.cols {
            out.set(i, j, f.mul(c, a.at(i, j)));
        }
    }
    out
}

pub fn mul<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols, b.rows, "dimension mismatch");
    let mut out = zero(f, a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            if f.is_zero(a.at(i, k)) {
                continue;
            }
            for j in 0..b.cols {
                let v = f.add(out.at(i, j), &f.mul(a.at(i, k), b.at(k, j)));
                out.set(i, j, v);
            }
        }
    }
    out
}

pub fn is_zero_matrix<F: Field>(f: &F, a: &Matrix<F::Elem>) -> bool {
    (0..a.rows).all(|i| (0..a.cols).all(|j| f.is_zero(a.at(i, j))))
}

/// Reduced row echelon form with pivot columns.
pub fn rref<F: Field>(f: &F, a: &Matrix<F::Elem>) -> (Matrix<F::Elem>, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols {
        let Some(pr) = (row..m.rows).find(|&r| !f.is_zero(m.at(r, col))) else {
            continue;
        };
        for j in 0..m.cols {
            let tmp = m.at(row, j).clone();
            let v = m.at(pr, j).clone();
            m.set(row, j, v);
            m.set(pr, j, tmp);
        }
        let inv = f.inv(m.at(row, col)).unwrap();
        for j in 0..m.cols {
            m.set(row, j, f.mul(&inv, m.at(row, j)));
        }
        for r in 0..m.rows {
            if r != row && !f.is_zero(m.at(r, col)) {
                let c = m.at(r, col).clone();
                for j in 0..m.cols {
                    let v = f.sub(m.at(r, j), &f.mul(&c, m.at(row, j)));
                    m.set(r, j, v);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.rows {
            break;
        }
    }
    (m, pivots)
}

pub fn rank<F: Field>(f: &F, a: &Matrix<F::Elem>) -> usize {
    rref(f, a).1.len()
}

/// Kernel basis as columns: a cols x k matrix K with A K = 0 of full
/// column rank k = cols - rank.
pub fn kernel<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let (r, pivots) = rref(f, a);
    let free: Vec<usize> = (0..a.cols).filter(|c| !pivots.contains(c)).collect();
    let mut k = zero(f, a.cols, free.len());
    for (idx, &fc) in free.iter().enumerate() {
        k.set(fc, idx, f.one());
        for (prow, &pc) in pivots.iter().enumerate() {
            k.set(pc, idx, f.neg(r.at(prow, fc)));
        }
    }
    k
}

/// Cokernel projection as rows: a (rows - rank) x rows matrix P with
/// P A = 0 of full row rank.
pub fn cokernel<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    kernel(f, &a.transpose()).transpose()
}

/// Solve A x = b; None when inconsistent.
pub fn solve<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
    assert_eq!(a.rows, b.len());
    let mut aug = zero(f, a.rows, a.cols + 1);
    for i in 0..a.rows {
        for j in 0..a.cols {
            aug.set(i, j, a.at(i, j).clone());
        }
        aug.set(i, a.cols, b[i].clone());
    }
    let (r, pivots) = rref(f, &aug);
    if pivots.contains(&a.cols) {
        return None;
    }
    let mut x = vec![f.zero(); a.cols];
    for (prow, &pc) in pivots.iter().enumerate() {
        x[pc] = r.at(prow, a.cols).clone();
    }
    Some(x)
}

/// Inverse of a square matrix; None when singular.
pub fn inverse<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut aug = zero(f, n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, a.at(i, j).clone());
        }
        aug.set(i, n + i, f.one());
    }
    let (r, pivots) = rref(f, &aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    let mut out = zero(f, n, n);
    for i in 0..n {
        for j in 0..n {
            out.set(i, j, r.at(i, n + j).clone());
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rat, Rationals};

    #[test]
    fn rank_kernel_f5() {
        let f = PrimeField::new(5);
        // [1 2; 2 4] has rank 1 over F5
        let a = Matrix::from_rows(vec![vec![1u64, 2], vec![2, 4]]);
        assert_eq!(rank(&f, &a), 1);
        let k = kernel(&f, &a);
        assert_eq!(k.cols, 1);
        assert!(is_zero_matrix(&f, &mul(&f, &a, &k)));
        let c = cokernel(&f, &a);
        assert_eq!(c.rows, 1);
        assert!(is_zero_matrix(&f, &mul(&f, &c, &a)));
    }

    #[test]
    fn solve_and_invert_rationals() {
        let f = Rationals;
        let a = Matrix::from_rows(vec![
            vec![Rat::new(2, 1), Rat::new(1, 1)],
            vec![Rat::new(1, 1), Rat::new(1, 1)],
        ]);
        let x = solve(&f, &a, &[Rat::new(3, 1), Rat::new(2, 1)]).unwrap();
        assert_eq!(x, vec![Rat::new(1, 1), Rat::new(1, 1)]);
        let inv = inverse(&f, &a).unwrap();
        assert_eq!(mul(&f, &a, &inv), identity(&f, 2));
    }

    #[test]
    fn singular_inverse_is_none() {
        let f = PrimeField::new(5);
        let a = Matrix::from_rows(vec![vec![1u64, 2], vec![2, 4]]);
        assert!(inverse(&f, &a).is_none());
    }
}
