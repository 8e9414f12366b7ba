//! Independent reference computations used to cross-check the fast paths.
//! Nothing here touches the eigensolver.

use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::quantum::ComplexMatrix;
use crate::scalar::Real;

/// `e^{−iHt}` from the truncated series `Σ_{k ≤ terms} (−iHt)^k / k!`.
///
/// When the induced 1-norm of `Ht` exceeds 1 the series is evaluated on
/// `Ht / 2^s` and squared `s` times; for `‖Ht‖₁ ≤ 1` this is exactly the
/// plain truncated sum. Without the scaling step a 40-term sum stops
/// converging once the spectral radius passes roughly 10.
pub fn taylor_exponential<T: Real>(h: &ComplexMatrix<T>, t: T, terms: usize) -> Result<ComplexMatrix<T>> {
    let n = h.dim();
    let norm = one_norm(h) * t.abs();
    let mut squarings = 0u32;
    let mut scale = T::one();
    while norm * scale > T::one() {
        scale = scale * T::lit(0.5);
        squarings += 1;
    }
    let generator = h.scale(Complex::new(T::zero(), -(t * scale)));
    let mut sum = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    for k in 1..=terms {
        let inv_k = T::one() / T::from_usize(k).expect("term index fits scalar");
        term = (&term * &generator).scale_real(inv_k);
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    if !sum.is_finite() {
        return Err(Error::Numeric("Taylor series overflowed".into()));
    }
    Ok(sum)
}

/// Largest column sum of moduli.
pub fn one_norm<T: Real>(a: &ComplexMatrix<T>) -> T {
    let n = a.dim();
    (0..n)
        .map(|j| (0..n).fold(T::zero(), |acc, i| acc + a[(i, j)].norm()))
        .fold(T::zero(), T::max)
}

/// `‖a − b‖₂ / max(‖a‖₂, ‖b‖₂)`, zero when both vectors vanish.
pub fn relative_error<T: Real>(a: &[T], b: &[T]) -> T {
    let norm = |v: &mut dyn Iterator<Item = T>| v.fold(T::zero(), |acc, x| acc + x * x).sqrt();
    let diff = norm(&mut a.iter().zip(b).map(|(&x, &y)| x - y));
    let scale = norm(&mut a.iter().copied()).max(norm(&mut b.iter().copied()));
    if scale == T::zero() {
        T::zero()
    } else {
        diff / scale
    }
}

/// Hermitian matrix with every entry of modulus at most `max_entry`:
/// real diagonal, off-diagonal entries uniform in the disc of that radius.
pub fn random_hermitian<T: Real, R: Rng>(dim: usize, max_entry: f64, rng: &mut R) -> ComplexMatrix<T> {
    let mut m = ComplexMatrix::zeros(dim);
    for i in 0..dim {
        m[(i, i)] = Complex::new(T::lit(rng.gen_range(-max_entry..=max_entry)), T::zero());
        for j in (i + 1)..dim {
            let r = max_entry * rng.gen::<f64>().sqrt();
            let phi = rng.gen_range(0.0..std::f64::consts::TAU);
            let z = Complex::new(T::lit(r * phi.cos()), T::lit(r * phi.sin()));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_norm_is_plain_series() {
        let h = ComplexMatrix::<f64>::from_diagonal(&[0.25, -0.5]);
        let e = taylor_exponential(&h, 1.0, 40).unwrap();
        assert!((e[(0, 0)] - Complex::new(0.0, -0.25).exp()).norm() < 1e-15);
        assert!((e[(1, 1)] - Complex::new(0.0, 0.5).exp()).norm() < 1e-15);
    }

    #[test]
    fn large_norm_still_accurate() {
        let h = ComplexMatrix::<f64>::from_diagonal(&[30.0, -17.0]);
        let e = taylor_exponential(&h, 1.0, 40).unwrap();
        assert!((e[(0, 0)] - Complex::new(0.0, -30.0).exp()).norm() < 1e-12);
        assert!((e[(1, 1)] - Complex::new(0.0, 17.0).exp()).norm() < 1e-12);
    }

    #[test]
    fn relative_error_cases() {
        assert_eq!(relative_error(&[0.0, 0.0], &[0.0, 0.0]), 0.0);
        assert!((relative_error(&[1.0, 0.0], &[1.0, 0.1]) - 0.1 / 1.01f64.sqrt()).abs() < 1e-15);
    }
}
