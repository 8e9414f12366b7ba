use num_complex::Complex;

use crate::error::{Error, Result};
use crate::quantum::{conjugate, evolve_unitary, ComplexMatrix, DensityMatrix, HamiltonianSpec};
use crate::scalar::Real;

/// Scores are pushed into `[SCORE_FLOOR, 1 − SCORE_FLOOR]` before any logarithm.
pub const SCORE_FLOOR: f64 = 1e-9;

/// Hamiltonian-evolution generator `ρ_g = U_G ρ_0 U_G†`, `U_G = e^{−i(H_G + λV_G)t}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorModel<T> {
    pub spec: HamiltonianSpec<T>,
    pub initial_state: DensityMatrix<T>,
}

impl<T: Real> GeneratorModel<T> {
    /// Starts from `|0…0⟩`.
    pub fn new(spec: HamiltonianSpec<T>) -> Result<Self> {
        let initial_state = DensityMatrix::ground_state(spec.n_qubits())?;
        Ok(Self { spec, initial_state })
    }

    pub fn with_initial_state(spec: HamiltonianSpec<T>, initial_state: DensityMatrix<T>) -> Result<Self> {
        if initial_state.dim() != spec.dim() {
            return Err(Error::Dimension(format!(
                "initial state dimension {} vs Hamiltonian dimension {}",
                initial_state.dim(),
                spec.dim()
            )));
        }
        Ok(Self { spec, initial_state })
    }

    pub fn unitary(&self) -> Result<ComplexMatrix<T>> {
        evolve_unitary(&self.spec.assemble()?, self.spec.time())
    }

    pub fn with_params(&self, theta: &[T]) -> Result<Self> {
        Ok(Self {
            spec: self.spec.with_params(theta)?,
            initial_state: self.initial_state.clone(),
        })
    }
}

/// `U_D` evolution followed by the projector `|0⟩⟨0|` on qubit 0.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminatorModel<T> {
    pub spec: HamiltonianSpec<T>,
    readout: ComplexMatrix<T>,
}

impl<T: Real> DiscriminatorModel<T> {
    pub fn new(spec: HamiltonianSpec<T>) -> Self {
        let dim = spec.dim();
        let half = dim / 2;
        // |0><0| on qubit 0 is the upper half of the basis
        let diag: Vec<T> = (0..dim).map(|i| if i < half { T::one() } else { T::zero() }).collect();
        Self {
            spec,
            readout: ComplexMatrix::from_diagonal(&diag),
        }
    }

    pub fn readout(&self) -> &ComplexMatrix<T> {
        &self.readout
    }

    pub fn unitary(&self) -> Result<ComplexMatrix<T>> {
        evolve_unitary(&self.spec.assemble()?, self.spec.time())
    }

    /// Heisenberg-picture effect `U_D† M U_D`, so that `D(ρ) = Tr(effect · ρ)`.
    pub fn effect(&self) -> Result<ComplexMatrix<T>> {
        let u = self.unitary()?;
        Ok(u.adjoint().matmul_unchecked(&self.readout).matmul_unchecked(&u))
    }

    pub fn with_params(&self, theta: &[T]) -> Result<Self> {
        Ok(Self {
            spec: self.spec.with_params(theta)?,
            readout: self.readout.clone(),
        })
    }
}

pub fn generate<T: Real>(g: &GeneratorModel<T>) -> Result<DensityMatrix<T>> {
    conjugate(&g.unitary()?, &g.initial_state)
}

/// `D(ρ) = Tr(M U_D ρ U_D†)` clamped to `[0, 1]`.
pub fn discriminate<T: Real>(d: &DiscriminatorModel<T>, rho: &DensityMatrix<T>) -> Result<T> {
    score_with_effect(&d.effect()?, rho)
}

pub(crate) fn score_with_effect<T: Real>(effect: &ComplexMatrix<T>, rho: &DensityMatrix<T>) -> Result<T> {
    let v = effect.trace_of_product(rho.matrix())?.re;
    if !v.is_finite() {
        return Err(Error::Numeric("discriminator score is not finite".into()));
    }
    Ok(v.max(T::zero()).min(T::one()))
}

fn clamp_score<T: Real>(s: T) -> T {
    let floor = T::lit(SCORE_FLOOR);
    s.max(floor).min(T::one() - floor)
}

/// `−[log D_real + log(1 − D_fake)]` on clamped scores.
pub fn discriminator_loss_from_scores<T: Real>(d_real: T, d_fake: T) -> T {
    -(clamp_score(d_real).ln() + (T::one() - clamp_score(d_fake)).ln())
}

/// Non-saturating `−log D_fake` on a clamped score.
pub fn generator_loss_from_score<T: Real>(d_fake: T) -> T {
    -clamp_score(d_fake).ln()
}

pub fn loss_discriminator<T: Real>(
    rho_r: &DensityMatrix<T>,
    g: &GeneratorModel<T>,
    d: &DiscriminatorModel<T>,
) -> Result<T> {
    let rho_g = generate(g)?;
    let effect = d.effect()?;
    Ok(discriminator_loss_from_scores(
        score_with_effect(&effect, rho_r)?,
        score_with_effect(&effect, &rho_g)?,
    ))
}

pub fn loss_generator<T: Real>(g: &GeneratorModel<T>, d: &DiscriminatorModel<T>) -> Result<T> {
    Ok(generator_loss_from_score(discriminate(d, &generate(g)?)?))
}

/// `Re Tr(ρ_r U_D) + Re Tr(ρ_g U_G U_D)` with `ρ_g = generate(g)`, exactly as the
/// trace expression is written: `U_G` is applied again on top of the generated state.
pub fn objective_literal<T: Real>(
    rho_r: &DensityMatrix<T>,
    g: &GeneratorModel<T>,
    d: &DiscriminatorModel<T>,
) -> Result<T> {
    let u_g = g.unitary()?;
    let rho_g = conjugate(&u_g, &g.initial_state)?;
    let u_d = d.unitary()?;
    literal_with_unitaries(rho_r, &rho_g, &u_g, &u_d)
}

pub(crate) fn literal_with_unitaries<T: Real>(
    rho_r: &DensityMatrix<T>,
    rho_g: &DensityMatrix<T>,
    u_g: &ComplexMatrix<T>,
    u_d: &ComplexMatrix<T>,
) -> Result<T> {
    let real_term: Complex<T> = rho_r.matrix().trace_of_product(u_d)?;
    let gen_term = rho_g.matrix().trace_of_product(&u_g.matmul(u_d)?)?;
    Ok(real_term.re + gen_term.re)
}
