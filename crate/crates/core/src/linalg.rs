//! Dense symmetric positive-definite solves for the ridge normal equations.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Dot product with four independent accumulators. The summation order is
/// fixed, so results are reproducible bit-for-bit.
#[inline]
pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    let n = a.len().min(b.len());
    let (a, b) = (&a[..n], &b[..n]);
    let mut acc = [T::zero(); 4];
    let mut ca = a.chunks_exact(4);
    let mut cb = b.chunks_exact(4);
    for (x, y) in (&mut ca).zip(&mut cb) {
        acc[0] = acc[0] + x[0] * y[0];
        acc[1] = acc[1] + x[1] * y[1];
        acc[2] = acc[2] + x[2] * y[2];
        acc[3] = acc[3] + x[3] * y[3];
    }
    let tail = ca
        .remainder()
        .iter()
        .zip(cb.remainder())
        .fold(T::zero(), |s, (&x, &y)| s + x * y);
    (acc[0] + acc[1]) + (acc[2] + acc[3]) + tail
}

/// Lower Cholesky factor of a row-major `n x n` SPD matrix.
#[derive(Debug, Clone)]
pub struct Cholesky<T> {
    n: usize,
    lower: Vec<T>,
}

impl<T: Scalar> Cholesky<T> {
    /// Factors `matrix`; only its lower triangle is read.
    pub fn factor(matrix: &[T], n: usize) -> Result<Self> {
        assert_eq!(matrix.len(), n * n, "matrix must be n x n");
        let mut l = vec![T::zero(); n * n];
        let max_diag = (0..n)
            .map(|i| matrix[i * n + i].abs())
            .fold(T::zero(), T::max);
        let tol = T::epsilon() * T::lit(n.max(1) as f64) * max_diag;
        for i in 0..n {
            for j in 0..=i {
                let v = matrix[i * n + j] - dot(&l[i * n..i * n + j], &l[j * n..j * n + j]);
                if i == j {
                    if !(v > tol) {
                        return Err(Error::SingularSystem(format!(
                            "pivot {i} of {n} is {v:e} (tolerance {tol:e})"
                        )));
                    }
                    l[i * n + i] = v.sqrt();
                } else {
                    l[i * n + j] = v / l[j * n + j];
                }
            }
        }
        Ok(Self { n, lower: l })
    }

    pub fn solve(&self, rhs: &[T]) -> Vec<T> {
        let n = self.n;
        let l = &self.lower;
        let mut y = rhs.to_vec();
        for i in 0..n {
            let d = dot(&l[i * n..i * n + i], &y[..i]);
            y[i] = (y[i] - d) / l[i * n + i];
        }
        for i in (0..n).rev() {
            let dot = (i + 1..n).fold(T::zero(), |acc, k| acc + l[k * n + i] * y[k]);
            y[i] = (y[i] - dot) / l[i * n + i];
        }
        y
    }
}

/// Solves `matrix * x = rhs` for a symmetric positive-definite matrix given
/// in full row-major form, with `refinements` rounds of iterative refinement.
pub fn solve_spd<T: Scalar>(matrix: &[T], n: usize, rhs: &[T], refinements: usize) -> Result<Vec<T>> {
    let chol = Cholesky::factor(matrix, n)?;
    let mut x = chol.solve(rhs);
    for _ in 0..refinements {
        let residual: Vec<T> = (0..n)
            .map(|i| {
                let row = &matrix[i * n..(i + 1) * n];
                rhs[i] - dot(row, &x)
            })
            .collect();
        let dx = chol.solve(&residual);
        for (xi, d) in x.iter_mut().zip(dx) {
            *xi = *xi + d;
        }
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularSystem("solution is not finite".into()));
    }
    Ok(x)
}

/// Ridge least squares `min |A x - y|^2 + lambda |x|^2` by Householder QR of
/// the stacked matrix `[A; sqrt(lambda) I]`. `a` is row-major `rows x cols`.
pub fn ridge_qr<T: Scalar>(a: &[T], rows: usize, cols: usize, y: &[T], lambda: T) -> Result<Vec<T>> {
    assert_eq!(a.len(), rows * cols, "matrix must be rows x cols");
    assert_eq!(y.len(), rows, "rhs must have one entry per row");
    let extra = if lambda > T::zero() { cols } else { 0 };
    let m = rows + extra;
    if m < cols {
        return Err(Error::SingularSystem(format!(
            "{rows} equations cannot determine {cols} unknowns"
        )));
    }
    // Column-major working copy.
    let mut q = vec![T::zero(); m * cols];
    for i in 0..rows {
        for j in 0..cols {
            q[j * m + i] = a[i * cols + j];
        }
    }
    let root = lambda.sqrt();
    for j in 0..extra {
        q[j * m + rows + j] = root;
    }
    let mut b = y.to_vec();
    b.resize(m, T::zero());

    let scale = q.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
    let tol = T::epsilon() * T::lit(m as f64) * scale;
    for k in 0..cols {
        let (head, tail) = q.split_at_mut((k + 1) * m);
        let col = &mut head[k * m..];
        let norm = col[k..].iter().fold(T::zero(), |acc, &v| acc + v * v).sqrt();
        if !(norm > tol) {
            return Err(Error::SingularSystem(format!(
                "column {k} of {cols} is numerically dependent (norm {norm:e})"
            )));
        }
        let alpha = if col[k] > T::zero() { -norm } else { norm };
        col[k] = col[k] - alpha;
        let vnorm2 = col[k..].iter().fold(T::zero(), |acc, &v| acc + v * v);
        let v = &col[k..];
        let reflect = |target: &mut [T]| {
            let dot = v.iter().zip(target.iter()).fold(T::zero(), |acc, (&a, &b)| acc + a * b);
            let f = T::lit(2.0) * dot / vnorm2;
            for (t, &vi) in target.iter_mut().zip(v) {
                *t = *t - f * vi;
            }
        };
        for other in tail.chunks_exact_mut(m) {
            reflect(&mut other[k..]);
        }
        reflect(&mut b[k..]);
        // R diagonal; the reflector below it is no longer needed.
        col[k] = alpha;
    }
    let mut x = vec![T::zero(); cols];
    for k in (0..cols).rev() {
        let dot = (k + 1..cols).fold(T::zero(), |acc, j| acc + q[j * m + k] * x[j]);
        x[k] = (b[k] - dot) / q[k * m + k];
    }
    if x.iter().any(|v| !v.is_finite()) {
        return Err(Error::SingularSystem("solution is not finite".into()));
    }
    Ok(x)
}
