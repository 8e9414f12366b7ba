//! Eigendecomposition of Hermitian matrices by the cyclic complex Jacobi method.

use num_complex::Complex;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 64;

/// `A = V diag(values) V†`, eigenvalues ascending, eigenvectors as columns of `vectors`.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    pub values: Vec<T>,
    pub vectors: ComplexMatrix<T>,
}

impl<T: Real> HermitianEigen<T> {
    /// Decomposes `a`, which must be Hermitian within the construction tolerance.
    pub fn new(a: &ComplexMatrix<T>) -> Result<Self> {
        let err = a.hermiticity_error();
        if !(err < T::construct_tol()) {
            return Err(Error::invalid("hermitian matrix", format!("max |A - A^H| = {err:e}")));
        }
        let mut work = a.clone();
        work.symmetrize();
        jacobi(work)
    }

    /// Same as [`HermitianEigen::new`] but symmetrizes first instead of checking.
    /// For products such as `√ρ σ √ρ` that are Hermitian only up to roundoff.
    pub(crate) fn of_symmetrized(a: &ComplexMatrix<T>) -> Result<Self> {
        let mut work = a.clone();
        work.symmetrize();
        jacobi(work)
    }

    /// Spectral function `V diag(f(λ)) V†`.
    pub fn map_spectrum(&self, f: impl Fn(T) -> Complex<T>) -> ComplexMatrix<T> {
        let n = self.values.len();
        let fv: Vec<Complex<T>> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        let mut out = ComplexMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..n {
                    acc = acc + v[(i, k)] * fv[k] * v[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }

    pub fn min_value(&self) -> T {
        self.values.first().copied().unwrap_or_else(T::zero)
    }
}

fn off_diagonal_norm<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.dim();
    let mut acc = T::zero();
    for i in 0..n {
        for j in (i + 1)..n {
            acc = acc + a[(i, j)].norm_sqr();
        }
    }
    (acc + acc).sqrt()
}

fn jacobi<T: Real>(mut a: ComplexMatrix<T>) -> Result<HermitianEigen<T>> {
    let n = a.dim();
    let mut v = ComplexMatrix::identity(n);
    let scale = a.entries().iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt();
    let target = T::epsilon() * scale;

    let mut converged = n == 1 || scale == T::zero();
    for _ in 0..MAX_SWEEPS {
        if converged {
            break;
        }
        if off_diagonal_norm(&a) <= target {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > target {
        return Err(Error::Numeric(format!(
            "Jacobi eigensolver did not converge in {MAX_SWEEPS} sweeps"
        )));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.partial_cmp(&a[(j, j)].re).expect("finite eigenvalues"));
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// One unitary plane rotation annihilating `a[p][q]`.
///
/// With `a[p][q] = |g| e^{iφ}`, the rotation is `W = diag(1, e^{-iφ}) · [[c, s], [-s, c]]`
/// restricted to the `(p, q)` plane, and `A ← W† A W`, `V ← V W`.
fn rotate<T: Real>(a: &mut ComplexMatrix<T>, v: &mut ComplexMatrix<T>, p: usize, q: usize) {
    let g = a[(p, q)];
    let abs_g = g.norm();
    if abs_g == T::zero() {
        return;
    }
    let phase = g.unscale(abs_g);
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let theta = (aqq - app) / (abs_g + abs_g);
    let t = if theta == T::zero() {
        T::one()
    } else {
        theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    let c_cx = Complex::new(c, T::zero());
    let s_cx = Complex::new(s, T::zero());
    let w_qp = -(phase.conj()).scale(s);
    let w_qq = phase.conj().scale(c);

    let n = a.dim();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * c_cx + akq * w_qp;
        a[(k, q)] = akp * s_cx + akq * w_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = apk * c_cx + aqk * w_qp.conj();
        a[(q, k)] = apk * s_cx + aqk * w_qq.conj();
    }
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * c_cx + vkq * w_qp;
        v[(k, q)] = vkp * s_cx + vkq * w_qq;
    }
    let zero = Complex::new(T::zero(), T::zero());
    a[(p, q)] = zero;
    a[(q, p)] = zero;
    a[(p, p)].im = T::zero();
    a[(q, q)].im = T::zero();
}
