//! Classical GAN baseline on the same discrete-distribution task.
//!
//! The generator is a softmax over outcome logits and the discriminator a
//! per-outcome logistic score with a shared bias. Losses are taken in
//! expectation over both distributions, so there is no sampling noise and
//! gradients are exact.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::encoding::ProbabilityVector;
use crate::error::{Error, Result};
use crate::metrics::{classical_fidelity, tv_distance};
use crate::qgan::train::{check_target, init_params, ConvergenceTracker};
use crate::qgan::{IterationRecord, TrainingConfig, TrainingResult};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct ClassicalGanModel<T> {
    /// One logit per outcome.
    pub generator_logits: Vec<T>,
    /// One score per outcome followed by the bias.
    pub discriminator_weights: Vec<T>,
}

impl<T: Real> ClassicalGanModel<T> {
    pub fn new(generator_logits: Vec<T>, discriminator_weights: Vec<T>) -> Result<Self> {
        if discriminator_weights.len() != generator_logits.len() + 1 {
            return Err(Error::Dimension(format!(
                "{} discriminator weights for {} outcomes (expected outcomes + 1)",
                discriminator_weights.len(),
                generator_logits.len()
            )));
        }
        Ok(Self {
            generator_logits,
            discriminator_weights,
        })
    }

    pub fn generator_probs(&self) -> Result<ProbabilityVector<T>> {
        classical_generator_probs(&self.generator_logits)
    }

    pub fn discriminator_scores(&self) -> Vec<T> {
        let n = self.generator_logits.len();
        let bias = self.discriminator_weights[n];
        self.discriminator_weights[..n]
            .iter()
            .map(|&w| sigmoid(w + bias))
            .collect()
    }

    /// `(L_D, L_G)` in expectation form.
    pub fn losses(&self, target: &ProbabilityVector<T>) -> Result<(T, T)> {
        let p_g = self.generator_probs()?;
        let logits = self.logits();
        let mut l_d = T::zero();
        let mut l_g = T::zero();
        for ((&s, &pr), &pg) in logits.iter().zip(target.iter()).zip(p_g.iter()) {
            let log_d = -softplus(-s);
            let log_not_d = -softplus(s);
            l_d = l_d - pr * log_d - pg * log_not_d;
            l_g = l_g - pg * log_d;
        }
        Ok((l_d, l_g))
    }

    /// `∂L_D/∂w`, bias last.
    pub fn discriminator_grad(&self, target: &ProbabilityVector<T>) -> Result<Vec<T>> {
        let p_g = self.generator_probs()?;
        let d = self.discriminator_scores();
        let mut grad: Vec<T> = d
            .iter()
            .zip(target.iter())
            .zip(p_g.iter())
            .map(|((&dx, &pr), &pg)| pg * dx - pr * (T::one() - dx))
            .collect();
        let bias = grad.iter().fold(T::zero(), |a, &b| a + b);
        grad.push(bias);
        Ok(grad)
    }

    /// `∂L_G/∂φ_k = p_k (a_k − Σ_x p_x a_x)` with `a_x = −log D(x)`.
    pub fn generator_grad(&self) -> Result<Vec<T>> {
        let p_g = self.generator_probs()?;
        let a: Vec<T> = self.logits().into_iter().map(softplus_neg).collect();
        let mean = p_g.iter().zip(&a).fold(T::zero(), |acc, (&p, &ax)| acc + p * ax);
        Ok(p_g.iter().zip(&a).map(|(&p, &ax)| p * (ax - mean)).collect())
    }

    fn logits(&self) -> Vec<T> {
        let n = self.generator_logits.len();
        let bias = self.discriminator_weights[n];
        self.discriminator_weights[..n].iter().map(|&w| w + bias).collect()
    }
}

/// `−log σ(s) = softplus(−s)`.
fn softplus_neg<T: Real>(s: T) -> T {
    softplus(-s)
}

/// `log(1 + e^x)` without overflow.
fn softplus<T: Real>(x: T) -> T {
    if x > T::zero() {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

fn sigmoid<T: Real>(x: T) -> T {
    if x >= T::zero() {
        T::one() / (T::one() + (-x).exp())
    } else {
        let e = x.exp();
        e / (T::one() + e)
    }
}

/// Softmax with max-subtraction.
pub fn classical_generator_probs<T: Real>(phi: &[T]) -> Result<ProbabilityVector<T>> {
    if let Some(i) = phi.iter().position(|x| !x.is_finite()) {
        return Err(Error::invalid("generator logits", format!("entry {i} is not finite")));
    }
    let max = phi.iter().copied().fold(T::neg_infinity(), T::max);
    let exps: Vec<T> = phi.iter().map(|&x| (x - max).exp()).collect();
    let sum = exps.iter().fold(T::zero(), |a, &b| a + b);
    ProbabilityVector::new(exps.into_iter().map(|e| e / sum).collect())
}

/// `σ(w[outcome] + bias)` where the bias is the last weight.
pub fn classical_discriminator<T: Real>(w: &[T], outcome: usize) -> Result<T> {
    if w.len() < 2 || outcome >= w.len() - 1 {
        return Err(Error::Dimension(format!(
            "outcome {outcome} out of range for {} weights",
            w.len()
        )));
    }
    Ok(sigmoid(w[outcome] + w[w.len() - 1]))
}

/// Same schedule, seeding and convergence rule as [`crate::qgan::train`].
///
/// Generator logits start at zero (the uniform distribution); discriminator
/// weights are drawn from the seeded stream.
pub fn train_classical<T: Real>(config: &TrainingConfig, target: &ProbabilityVector<T>) -> Result<TrainingResult<T>> {
    check_target(config, target)?;
    let dim = target.len();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut model = ClassicalGanModel::new(vec![T::zero(); dim], init_params(&mut rng, dim + 1))?;
    let lr_g = T::lit(config.learning_rate_g);
    let lr_d = T::lit(config.learning_rate_d);

    let mut history = Vec::new();
    let mut tracker = ConvergenceTracker::new(config.epsilon, config.patience);
    let mut converged_at = None;
    let mut failure = None;

    for iteration in 1..=config.max_iterations {
        let start = Instant::now();
        let step = (|| -> Result<(T, T, T, T)> {
            for _ in 0..config.d_steps_per_g_step {
                let g = model.discriminator_grad(target)?;
                for (w, gw) in model.discriminator_weights.iter_mut().zip(g) {
                    *w = *w - lr_d * gw;
                }
            }
            let g = model.generator_grad()?;
            for (phi, gp) in model.generator_logits.iter_mut().zip(g) {
                *phi = *phi - lr_g * gp;
            }
            let (l_d, l_g) = model.losses(target)?;
            if !(l_d.is_finite() && l_g.is_finite()) {
                return Err(Error::Numeric("non-finite classical loss".into()));
            }
            let p_g = model.generator_probs()?;
            Ok((l_g, l_d, tv_distance(&p_g, target)?, classical_fidelity(&p_g, target)?))
        })();
        let (loss_g, loss_d, tv, fid) = match step {
            Ok(v) => v,
            Err(e) => {
                failure = Some(format!("iteration {iteration}: {e}"));
                break;
            }
        };
        history.push(IterationRecord {
            iteration,
            loss_g,
            loss_d,
            tv_to_target: tv,
            fidelity_to_target: fid,
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        });
        if tracker.push(tv.as_f64()) {
            converged_at = Some(iteration);
            break;
        }
    }

    let final_generated = model
        .generator_probs()
        .unwrap_or_else(|_| ProbabilityVector::from_vec_unchecked(vec![T::nan(); dim]));
    Ok(TrainingResult {
        history,
        converged: converged_at.is_some(),
        iterations_to_convergence: converged_at,
        final_generated,
        generator_params: model.generator_logits,
        discriminator_params: model.discriminator_weights,
        failure,
    })
}
