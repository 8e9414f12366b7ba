use num_complex::Complex;

use super::eigen::HermitianEigen;
use super::matrix::ComplexMatrix;
use super::pauli::MAX_QUBITS;
use crate::encoding::ProbabilityVector;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Hermitian, unit-trace, positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    matrix: ComplexMatrix<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates all three invariants at the construction tolerance.
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        let tol = T::construct_tol();
        let herm = matrix.hermiticity_error();
        if !(herm < tol) {
            return Err(Error::invalid(
                "density matrix",
                format!("not Hermitian: max |A - A^H| = {herm:e}"),
            ));
        }
        let tr = matrix.trace();
        if !((tr.re - T::one()).abs() < tol && tr.im.abs() < tol) {
            return Err(Error::invalid("density matrix", format!("trace {tr} != 1")));
        }
        let min = HermitianEigen::new(&matrix)?.min_value();
        if !(min >= -tol) {
            return Err(Error::invalid("density matrix", format!("negative eigenvalue {min:e}")));
        }
        Ok(Self { matrix })
    }

    /// Skips validation; callers guarantee the invariants hold by construction.
    pub(crate) fn from_matrix_unchecked(matrix: ComplexMatrix<T>) -> Self {
        Self { matrix }
    }

    /// `|index⟩⟨index|` on `n_qubits` qubits.
    pub fn basis_state(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = register_dim(n_qubits)?;
        if index >= dim {
            return Err(Error::Dimension(format!("basis index {index} >= {dim}")));
        }
        let mut m = ComplexMatrix::zeros(dim);
        m[(index, index)] = Complex::new(T::one(), T::zero());
        Ok(Self { matrix: m })
    }

    /// `|0…0⟩⟨0…0|`.
    pub fn ground_state(n_qubits: usize) -> Result<Self> {
        Self::basis_state(n_qubits, 0)
    }

    pub fn maximally_mixed(n_qubits: usize) -> Result<Self> {
        let dim = register_dim(n_qubits)?;
        let p = T::one() / T::from_usize(dim).expect("dimension fits scalar");
        Ok(Self {
            matrix: ComplexMatrix::from_diagonal(&vec![p; dim]),
        })
    }

    /// Convex combination `α self + (1 − α) other`.
    pub fn mix(&self, other: &Self, alpha: T) -> Result<Self> {
        self.matrix.check_same_dim(&other.matrix)?;
        if !(alpha >= T::zero() && alpha <= T::one()) {
            return Err(Error::invalid("mixing weight", format!("{alpha} outside [0, 1]")));
        }
        let m = &self.matrix.scale_real(alpha) + &other.matrix.scale_real(T::one() - alpha);
        Ok(Self { matrix: m })
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix<T> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> T {
        self.matrix.trace_of_product(&self.matrix).expect("same matrix").re
    }

    pub fn eigenvalues(&self) -> Result<Vec<T>> {
        Ok(HermitianEigen::of_symmetrized(&self.matrix)?.values)
    }
}

fn register_dim(n_qubits: usize) -> Result<usize> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::Dimension(format!(
            "{n_qubits} qubits outside supported range 1..={MAX_QUBITS}"
        )));
    }
    Ok(1 << n_qubits)
}

/// `e^{-iHt}` through the spectral decomposition `H = V Λ V†`.
pub fn evolve_unitary<T: Real>(h: &ComplexMatrix<T>, t: T) -> Result<ComplexMatrix<T>> {
    if !t.is_finite() {
        return Err(Error::invalid("evolution time", "must be finite"));
    }
    let eig = HermitianEigen::new(h)?;
    Ok(eig.map_spectrum(|l| {
        let phase = -(l * t);
        Complex::new(phase.cos(), phase.sin())
    }))
}

/// `UρU†`.
pub fn conjugate<T: Real>(u: &ComplexMatrix<T>, rho: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
    u.check_same_dim(&rho.matrix)?;
    let err = u.unitarity_error();
    if !(err < T::construct_tol()) {
        return Err(Error::invalid("unitary", format!("max |U^H U - I| = {err:e}")));
    }
    let mut out = u.matmul_unchecked(&rho.matrix).matmul_unchecked(&u.adjoint());
    out.symmetrize();
    Ok(DensityMatrix::from_matrix_unchecked(out))
}

/// `½ Σ |eig(ρ − σ)|`, clamped to `[0, 1]`.
pub fn trace_distance<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    rho.matrix.check_same_dim(&sigma.matrix)?;
    let diff = &rho.matrix - &sigma.matrix;
    let eig = HermitianEigen::of_symmetrized(&diff)?;
    let sum = eig.values.iter().fold(T::zero(), |acc, l| acc + l.abs());
    Ok((sum * T::lit(0.5)).max(T::zero()).min(T::one()))
}

/// Uhlmann fidelity `(Tr √(√ρ σ √ρ))²`, clamped to `[0, 1]`.
pub fn fidelity<T: Real>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    rho.matrix.check_same_dim(&sigma.matrix)?;
    let tol = T::derived_tol();
    let eig_rho = HermitianEigen::of_symmetrized(&rho.matrix)?;
    if eig_rho.min_value() < -tol {
        return Err(Error::Numeric(format!(
            "fidelity: eigenvalue {:e} of first argument below -{tol:e}",
            eig_rho.min_value()
        )));
    }
    let floor_rho = roundoff_floor(&eig_rho.values);
    let sqrt_rho = eig_rho.map_spectrum(|l| Complex::new(if l > floor_rho { l.sqrt() } else { T::zero() }, T::zero()));
    let inner = sqrt_rho.matmul_unchecked(&sigma.matrix).matmul_unchecked(&sqrt_rho);
    let eig = HermitianEigen::of_symmetrized(&inner)?;
    if eig.min_value() < -tol {
        return Err(Error::Numeric(format!(
            "fidelity: eigenvalue {:e} of sqrt(rho) sigma sqrt(rho) below -{tol:e}",
            eig.min_value()
        )));
    }
    // eigenvalues at roundoff level would otherwise contribute ~sqrt(eps) each
    let floor = roundoff_floor(&eig.values);
    let root_sum = eig
        .values
        .iter()
        .fold(T::zero(), |acc, &m| if m > floor { acc + m.sqrt() } else { acc });
    Ok((root_sum * root_sum).max(T::zero()).min(T::one()))
}

fn roundoff_floor<T: Real>(values: &[T]) -> T {
    let largest = values.iter().fold(T::zero(), |a, &v| a.max(v.abs()));
    T::lit(values.len() as f64) * T::epsilon() * largest
}

/// Computational-basis readout: real diagonal, clamped at zero and renormalized.
pub fn measure_probabilities<T: Real>(rho: &DensityMatrix<T>) -> Result<ProbabilityVector<T>> {
    let probs: Vec<T> = rho.matrix.diagonal().iter().map(|z| z.re.max(T::zero())).collect();
    let sum = probs.iter().fold(T::zero(), |a, &b| a + b);
    if !((sum - T::one()).abs() <= T::prob_tol()) {
        return Err(Error::Numeric(format!(
            "measured probabilities sum to {sum}, expected 1"
        )));
    }
    Ok(ProbabilityVector::from_vec_unchecked(
        probs.into_iter().map(|p| p / sum).collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::pauli::{pauli_matrix, PauliString};
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn pauli(s: &str) -> ComplexMatrix<f64> {
        pauli_matrix(&s.parse::<PauliString>().unwrap())
    }

    fn diag(p: &[f64]) -> DensityMatrix<f64> {
        DensityMatrix::new(ComplexMatrix::from_diagonal(p)).unwrap()
    }

    #[test]
    fn density_matrix_validation() {
        assert!(DensityMatrix::new(ComplexMatrix::from_diagonal(&[0.5, 0.6])).is_err());
        assert!(DensityMatrix::new(ComplexMatrix::from_diagonal(&[1.5, -0.5])).is_err());
        let non_herm = ComplexMatrix::<f64>::from_real_rows(&[&[0.5, 0.1], &[0.0, 0.5]]).unwrap();
        assert!(DensityMatrix::new(non_herm).is_err());
        assert!(DensityMatrix::<f64>::basis_state(1, 2).is_err());
        assert!(DensityMatrix::<f64>::maximally_mixed(11).is_err());
    }

    #[test]
    fn zero_time_is_identity() {
        let h = pauli("XZ");
        let u = evolve_unitary(&h, 0.0).unwrap();
        assert!(u.max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn half_pi_x_rotation() {
        let u = evolve_unitary(&pauli("X"), FRAC_PI_2).unwrap();
        let expected = pauli("X").scale(Complex::new(0.0, -1.0));
        assert!(u.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn evolve_rejects_non_hermitian() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]).unwrap();
        assert!(matches!(evolve_unitary(&a, 1.0), Err(Error::Invalid { .. })));
    }

    #[test]
    fn conjugate_examples() {
        let zero = DensityMatrix::<f64>::basis_state(1, 0).unwrap();
        let same = conjugate(&ComplexMatrix::identity(2), &zero).unwrap();
        assert_eq!(same, zero);
        let flipped = conjugate(&pauli("X"), &zero).unwrap();
        assert_eq!(flipped, DensityMatrix::basis_state(1, 1).unwrap());
        let u = evolve_unitary(&pauli("Y"), FRAC_PI_4).unwrap();
        let half = conjugate(&u, &zero).unwrap();
        assert!((half.matrix()[(0, 0)].re - 0.5).abs() < 1e-12);
        assert!((half.matrix()[(1, 1)].re - 0.5).abs() < 1e-12);
        let p = measure_probabilities(&half).unwrap();
        assert!((p[0] - 0.5).abs() < 1e-12 && (p[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn conjugate_checks_inputs() {
        let zero = DensityMatrix::<f64>::basis_state(1, 0).unwrap();
        assert!(matches!(
            conjugate(&ComplexMatrix::identity(4), &zero),
            Err(Error::Dimension(_))
        ));
        let not_unitary = ComplexMatrix::from_diagonal(&[1.0, 2.0]);
        assert!(conjugate(&not_unitary, &zero).is_err());
    }

    #[test]
    fn trace_distance_examples() {
        let a = diag(&[1.0, 0.0]);
        let b = diag(&[0.0, 1.0]);
        assert_eq!(trace_distance(&a, &a).unwrap(), 0.0);
        assert!((trace_distance(&a, &b).unwrap() - 1.0).abs() < 1e-15);
        let t = trace_distance(&diag(&[0.75, 0.25]), &diag(&[0.5, 0.5])).unwrap();
        assert!((t - 0.25).abs() < 1e-15);
        assert!(trace_distance(&a, &DensityMatrix::maximally_mixed(2).unwrap()).is_err());
    }

    #[test]
    fn fidelity_examples() {
        let a = diag(&[1.0, 0.0]);
        let b = diag(&[0.0, 1.0]);
        let mixed = diag(&[0.75, 0.25]);
        assert!((fidelity(&mixed, &mixed).unwrap() - 1.0).abs() < 1e-12);
        assert!(fidelity(&a, &b).unwrap().abs() < 1e-15);
        let expected = (0.375f64.sqrt() + 0.125f64.sqrt()).powi(2);
        let f = fidelity(&mixed, &diag(&[0.5, 0.5])).unwrap();
        assert!((f - expected).abs() < 1e-12);
        assert!((f - 0.933).abs() < 1e-3);
    }

    #[test]
    fn measurement_examples() {
        let p = measure_probabilities(&DensityMatrix::<f64>::basis_state(1, 0).unwrap()).unwrap();
        assert_eq!(p.as_slice(), &[1.0, 0.0]);
        let p = measure_probabilities(&DensityMatrix::<f64>::maximally_mixed(2).unwrap()).unwrap();
        assert_eq!(p.as_slice(), &[0.25; 4]);
    }

    #[test]
    fn measurement_rejects_unnormalized() {
        let bad = DensityMatrix::from_matrix_unchecked(ComplexMatrix::from_diagonal(&[0.5, 0.6]));
        assert!(matches!(measure_probabilities(&bad), Err(Error::Numeric(_))));
    }

    #[test]
    fn mix_is_convex_combination() {
        let a = diag(&[1.0, 0.0]);
        let b = diag(&[0.0, 1.0]);
        let m = a.mix(&b, 0.25).unwrap();
        assert_eq!(m, diag(&[0.25, 0.75]));
        assert!(a.mix(&b, 1.5).is_err());
    }

    #[test]
    fn purity_of_mixture() {
        assert!((diag(&[0.75, 0.25]).purity() - 0.625).abs() < 1e-15);
    }
}
