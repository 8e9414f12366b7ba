use crate::error::{Error, Result};
use crate::scalar::Real;

/// Central-difference gradient `(f(θ + h e_k) − f(θ − h e_k)) / 2h`.
///
/// Coordinates are probed in index order, `+h` before `−h`, so any
/// side effects or floating-point reductions in `f` happen in a fixed order.
pub fn fd_gradient<T: Real>(mut f: impl FnMut(&[T]) -> T, theta: &[T], h: T) -> Result<Vec<T>> {
    try_fd_gradient(|x| Ok(f(x)), theta, h)
}

/// [`fd_gradient`] for objectives that can fail on their own.
pub fn try_fd_gradient<T: Real>(mut f: impl FnMut(&[T]) -> Result<T>, theta: &[T], h: T) -> Result<Vec<T>> {
    if !(h > T::zero()) || !h.is_finite() {
        return Err(Error::invalid("finite-difference step", format!("{h} must be > 0")));
    }
    let two_h = h + h;
    let mut probe = theta.to_vec();
    let mut grad = Vec::with_capacity(theta.len());
    for k in 0..theta.len() {
        let base = theta[k];
        probe[k] = base + h;
        let plus = f(&probe)?;
        probe[k] = base - h;
        let minus = f(&probe)?;
        probe[k] = base;
        if !(plus.is_finite() && minus.is_finite()) {
            return Err(Error::NonFinite { coordinate: k });
        }
        grad.push((plus - minus) / two_h);
    }
    Ok(grad)
}
