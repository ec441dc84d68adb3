//! Dense exact matrices over [`Scalar`] with Gauss–Jordan elimination.
//!
//! Dimensions in this crate are tiny (at most a few hundred), so a dense
//! representation with a zero-skip multiply is both simple and fast.  All
//! pivoting decisions test exact nonzeroness.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff::{ParameterSet, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    ps: ParameterSet,
    entries: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularMatrix;

impl fmt::Display for SingularMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "matrix is singular over the scalar field")
    }
}

impl core::error::Error for SingularMatrix {}

impl Mat {
    pub fn zero(ps: &ParameterSet, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            ps: ps.clone(),
            entries: vec![ps.zero(); rows * cols],
        }
    }

    pub fn identity(ps: &ParameterSet, n: usize) -> Self {
        let mut m = Self::zero(ps, n, n);
        for i in 0..n {
            m[(i, i)] = ps.one();
        }
        m
    }

    pub fn params(&self) -> &ParameterSet {
        &self.ps
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Mat::zero(&self.ps, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.mul(b);
                    out[(i, j)] = out[(i, j)].add(&prod);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e = e.add(o);
        }
        out
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e = e.sub(o);
        }
        out
    }

    pub fn scale(&self, c: &Scalar) -> Mat {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.mul(c);
        }
        out
    }

    /// First (row, col) at which the matrices differ, if any.
    pub fn first_difference(&self, other: &Mat) -> Option<(usize, usize)> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self[(i, j)] != other[(i, j)] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    /// Exact inverse by Gauss–Jordan elimination with free pivot choice
    /// among exactly-nonzero entries.
    pub fn invert(&self) -> Result<Mat, SingularMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Mat::identity(&self.ps, n);
        let mut pivot_row_of_col: Vec<Option<usize>> = vec![None; n];
        let mut used_row = vec![false; n];
        for col in 0..n {
            // prefer a structurally simple pivot: any exact nonzero
            let mut pivot = None;
            for row in 0..n {
                if !used_row[row] && !a[(row, col)].is_zero() {
                    pivot = Some(row);
                    break;
                }
            }
            let row = pivot.ok_or(SingularMatrix)?;
            used_row[row] = true;
            pivot_row_of_col[col] = Some(row);
            let p = a[(row, col)].clone();
            let pinv = p.inv().expect("pivot nonzero");
            for j in 0..n {
                a[(row, j)] = a[(row, j)].mul(&pinv);
                inv[(row, j)] = inv[(row, j)].mul(&pinv);
            }
            for r in 0..n {
                if r == row || a[(r, col)].is_zero() {
                    continue;
                }
                let f = a[(r, col)].clone();
                for j in 0..n {
                    let t = a[(row, j)].mul(&f);
                    a[(r, j)] = a[(r, j)].sub(&t);
                    let t = inv[(row, j)].mul(&f);
                    inv[(r, j)] = inv[(r, j)].sub(&t);
                }
            }
        }
        // rows were eliminated in arbitrary order; permute back
        let mut out = Mat::zero(&self.ps, n, n);
        for col in 0..n {
            let row = pivot_row_of_col[col].unwrap();
            for j in 0..n {
                out[(col, j)] = inv[(row, j)].clone();
            }
        }
        Ok(out)
    }
}

impl core::ops::Index<(usize, usize)> for Mat {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.entries[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }
}

/// Outcome of an exact linear solve `A x = b`.
#[derive(Clone, Debug)]
pub enum LinearSolution {
    /// No solution.
    Inconsistent,
    /// Unique solution vector.
    Unique(Vec<Scalar>),
    /// Affine family: particular solution (free variables set to zero) plus
    /// a kernel basis, one vector per free variable.
    Affine {
        particular: Vec<Scalar>,
        kernel: Vec<Vec<Scalar>>,
    },
}

/// Solve `A x = b` exactly by row reduction.
pub fn solve_linear(a: &Mat, b: &[Scalar]) -> LinearSolution {
    assert_eq!(a.rows, b.len());
    let ps = a.params().clone();
    let (m, n) = (a.rows, a.cols);
    // augmented matrix
    let mut aug = Mat::zero(&ps, m, n + 1);
    for i in 0..m {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        aug[(i, n)] = b[i].clone();
    }
    let mut pivot_col_of_row: Vec<usize> = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let mut pivot = None;
        for r in row..m {
            if !aug[(r, col)].is_zero() {
                pivot = Some(r);
                break;
            }
        }
        let Some(pr) = pivot else { continue };
        // swap
        if pr != row {
            for j in 0..=n {
                let tmp = aug[(pr, j)].clone();
                aug[(pr, j)] = aug[(row, j)].clone();
                aug[(row, j)] = tmp;
            }
        }
        let pinv = aug[(row, col)].inv().expect("pivot nonzero");
        for j in col..=n {
            aug[(row, j)] = aug[(row, j)].mul(&pinv);
        }
        for r in 0..m {
            if r == row || aug[(r, col)].is_zero() {
                continue;
            }
            let f = aug[(r, col)].clone();
            for j in col..=n {
                let t = aug[(row, j)].mul(&f);
                aug[(r, j)] = aug[(r, j)].sub(&t);
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == m {
            break;
        }
    }
    // consistency: zero row with nonzero rhs
    for r in row..m {
        if !aug[(r, n)].is_zero() {
            return LinearSolution::Inconsistent;
        }
    }
    let pivot_cols: Vec<usize> = pivot_col_of_row.clone();
    let is_pivot = |c: usize| pivot_cols.contains(&c);
    let mut particular = vec![ps.zero(); n];
    for (r, &c) in pivot_cols.iter().enumerate() {
        particular[c] = aug[(r, n)].clone();
    }
    let free: Vec<usize> = (0..n).filter(|&c| !is_pivot(c)).collect();
    if free.is_empty() {
        return LinearSolution::Unique(particular);
    }
    let mut kernel = Vec::new();
    for &fc in &free {
        let mut v = vec![ps.zero(); n];
        v[fc] = ps.one();
        for (r, &c) in pivot_cols.iter().enumerate() {
            v[c] = aug[(r, fc)].neg();
        }
        kernel.push(v);
    }
    LinearSolution::Affine { particular, kernel }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn invert_symbolic() {
        let ps = ParameterSet::new(&["a"]);
        let a = ps.param("a");
        let mut m = Mat::identity(&ps, 2);
        m[(0, 1)] = a.clone();
        let inv = m.invert().unwrap();
        assert_eq!(inv[(0, 1)], a.neg());
        assert_eq!(m.mul(&inv), Mat::identity(&ps, 2));
    }

    #[test]
    fn singular_detected() {
        let ps = ParameterSet::empty();
        let m = Mat::zero(&ps, 2, 2);
        assert_eq!(m.invert(), Err(SingularMatrix));
    }

    #[test]
    fn solve_unique_and_affine() {
        let ps = ParameterSet::empty();
        let mut a = Mat::zero(&ps, 2, 2);
        a[(0, 0)] = ps.int(1);
        a[(1, 1)] = ps.int(2);
        match solve_linear(&a, &[ps.int(3), ps.int(4)]) {
            LinearSolution::Unique(x) => {
                assert_eq!(x, vec![ps.int(3), ps.int(2)]);
            }
            other => panic!("expected unique, got {other:?}"),
        }
        let mut b = Mat::zero(&ps, 1, 2);
        b[(0, 0)] = ps.int(1);
        b[(0, 1)] = ps.int(1);
        match solve_linear(&b, &[ps.int(1)]) {
            LinearSolution::Affine { particular, kernel } => {
                assert_eq!(particular, vec![ps.int(1), ps.int(0)]);
                assert_eq!(kernel.len(), 1);
            }
            other => panic!("expected affine, got {other:?}"),
        }
    }
}
