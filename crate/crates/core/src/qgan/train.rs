use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::ansatz::{default_enhancement, Ansatz};
use super::gradient::try_fd_gradient;
use super::model::{
    discriminator_loss_from_scores, generate, generator_loss_from_score, literal_with_unitaries, score_with_effect,
    DiscriminatorModel, GeneratorModel,
};
use crate::encoding::{encode_distribution, ProbabilityVector};
use crate::error::{Error, Result};
use crate::metrics::{tv_distance, RunSummary};
use crate::quantum::{conjugate, fidelity, measure_probabilities, DensityMatrix, HamiltonianSpec, MAX_QUBITS};
use crate::scalar::Real;

/// Half-width of the uniform initialization interval for trainable parameters.
pub const INIT_SCALE: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ObjectiveMode {
    /// Cross-entropy game on projector readout scores.
    Probabilistic,
    /// Real part of the two-trace expression, maximized by D and minimized by G.
    Literal,
}

impl FromStr for ObjectiveMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "probabilistic" => Ok(ObjectiveMode::Probabilistic),
            "literal" => Ok(ObjectiveMode::Literal),
            other => Err(Error::invalid(
                "objective_mode",
                format!("{other:?} is not one of probabilistic, literal"),
            )),
        }
    }
}

impl fmt::Display for ObjectiveMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ObjectiveMode::Probabilistic => "probabilistic",
            ObjectiveMode::Literal => "literal",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingConfig {
    pub n_qubits: usize,
    pub generator_ansatz: Ansatz,
    pub discriminator_ansatz: Ansatz,
    pub lambda_g: f64,
    pub lambda_d: f64,
    pub objective_mode: ObjectiveMode,
    pub learning_rate_g: f64,
    pub learning_rate_d: f64,
    pub fd_step: f64,
    pub max_iterations: usize,
    pub d_steps_per_g_step: usize,
    pub epsilon: f64,
    pub patience: usize,
    pub seed: u64,
    pub evolution_time: f64,
}

impl TrainingConfig {
    pub fn new(n_qubits: usize) -> Self {
        Self {
            n_qubits,
            generator_ansatz: Ansatz::Default,
            discriminator_ansatz: Ansatz::Default,
            lambda_g: 0.0,
            lambda_d: 0.0,
            objective_mode: ObjectiveMode::Probabilistic,
            learning_rate_g: 0.05,
            learning_rate_d: 0.05,
            fd_step: 1e-4,
            max_iterations: 5000,
            d_steps_per_g_step: 1,
            epsilon: 0.01,
            patience: 10,
            seed: 0,
            evolution_time: 1.0,
        }
    }

    /// Sets `λ` on both players.
    pub fn with_lambda(mut self, lambda: f64) -> Self {
        self.lambda_g = lambda;
        self.lambda_d = lambda;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field: &'static str, reason: String| Err(Error::invalid(field, reason));
        if self.n_qubits == 0 || self.n_qubits > MAX_QUBITS {
            return bad("n_qubits", format!("{} outside 1..={MAX_QUBITS}", self.n_qubits));
        }
        if !(self.epsilon > 0.0 && self.epsilon < 1.0) {
            return bad("epsilon", format!("{} outside (0, 1)", self.epsilon));
        }
        if !(self.fd_step > 0.0 && self.fd_step <= 0.1) {
            return bad("fd_step", format!("{} outside (0, 0.1]", self.fd_step));
        }
        for (name, lr) in [
            ("learning_rate_g", self.learning_rate_g),
            ("learning_rate_d", self.learning_rate_d),
        ] {
            if !(lr > 0.0 && lr <= 10.0) {
                return bad(name, format!("{lr} outside (0, 10]"));
            }
        }
        for (name, l) in [("lambda_g", self.lambda_g), ("lambda_d", self.lambda_d)] {
            if !(l >= 0.0 && l.is_finite()) {
                return bad(name, format!("{l} must be finite and >= 0"));
            }
        }
        if self.max_iterations == 0 {
            return bad("max_iterations", "must be positive".into());
        }
        if self.d_steps_per_g_step == 0 {
            return bad("d_steps_per_g_step", "must be positive".into());
        }
        if self.patience == 0 {
            return bad("patience", "must be positive".into());
        }
        if !self.evolution_time.is_finite() {
            return bad("evolution_time", "must be finite".into());
        }
        Ok(())
    }

    pub fn generator_spec<T: Real>(&self) -> Result<HamiltonianSpec<T>> {
        player_spec(self, &self.generator_ansatz, self.lambda_g)
    }

    pub fn discriminator_spec<T: Real>(&self) -> Result<HamiltonianSpec<T>> {
        player_spec(self, &self.discriminator_ansatz, self.lambda_d)
    }
}

fn player_spec<T: Real>(cfg: &TrainingConfig, ansatz: &Ansatz, lambda: f64) -> Result<HamiltonianSpec<T>> {
    let n = cfg.n_qubits;
    let base = ansatz.terms(n)?.into_iter().map(|p| (T::zero(), p)).collect();
    let enh = default_enhancement(n)?.into_iter().map(|p| (T::one(), p)).collect();
    HamiltonianSpec::new(n, base, enh, T::lit(lambda))?.with_time(T::lit(cfg.evolution_time))
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord<T> {
    pub iteration: usize,
    pub loss_g: T,
    pub loss_d: T,
    pub tv_to_target: T,
    pub fidelity_to_target: T,
    pub wall_time_ms: f64,
}

impl<T: Real> IterationRecord<T> {
    /// Equality on every field except the wall-clock time.
    pub fn same_values(&self, other: &Self) -> bool {
        self.iteration == other.iteration
            && self.loss_g.to_bits_eq(other.loss_g)
            && self.loss_d.to_bits_eq(other.loss_d)
            && self.tv_to_target.to_bits_eq(other.tv_to_target)
            && self.fidelity_to_target.to_bits_eq(other.fidelity_to_target)
    }
}

trait BitsEq {
    fn to_bits_eq(self, other: Self) -> bool;
}

impl<T: Real> BitsEq for T {
    fn to_bits_eq(self, other: Self) -> bool {
        self.integer_decode() == other.integer_decode()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrainingResult<T> {
    pub history: Vec<IterationRecord<T>>,
    pub converged: bool,
    pub iterations_to_convergence: Option<usize>,
    pub final_generated: ProbabilityVector<T>,
    pub generator_params: Vec<T>,
    pub discriminator_params: Vec<T>,
    /// Set when a numeric error cut the run short; `history` holds every completed iteration.
    pub failure: Option<String>,
}

impl<T: Real> TrainingResult<T> {
    pub fn tv_history(&self) -> Vec<T> {
        self.history.iter().map(|r| r.tv_to_target).collect()
    }

    /// Bitwise comparison of everything except wall-clock timings.
    pub fn same_values(&self, other: &Self) -> bool {
        self.history.len() == other.history.len()
            && self.history.iter().zip(&other.history).all(|(a, b)| a.same_values(b))
            && self.converged == other.converged
            && self.iterations_to_convergence == other.iterations_to_convergence
            && self.final_generated == other.final_generated
            && self.generator_params == other.generator_params
            && self.discriminator_params == other.discriminator_params
            && self.failure == other.failure
    }

    pub fn summary(&self, seed: u64) -> RunSummary {
        let last = self.history.last();
        RunSummary {
            seed,
            iterations_to_convergence: self.iterations_to_convergence,
            final_tv: last.map(|r| r.tv_to_target.as_f64()),
            final_fidelity: last.map(|r| r.fidelity_to_target.as_f64()),
        }
    }
}

/// Running `K`-window convergence tracker shared by both training loops.
#[derive(Debug, Clone)]
pub(crate) struct ConvergenceTracker {
    epsilon: f64,
    patience: usize,
    run: usize,
}

impl ConvergenceTracker {
    pub(crate) fn new(epsilon: f64, patience: usize) -> Self {
        Self {
            epsilon,
            patience,
            run: 0,
        }
    }

    /// Returns true once `patience` consecutive values are below `epsilon`.
    pub(crate) fn push(&mut self, tv: f64) -> bool {
        if tv < self.epsilon {
            self.run += 1;
        } else {
            self.run = 0;
        }
        self.run >= self.patience
    }
}

pub(crate) fn init_params<T: Real>(rng: &mut ChaCha8Rng, n: usize) -> Vec<T> {
    (0..n).map(|_| T::lit(rng.gen_range(-INIT_SCALE..INIT_SCALE))).collect()
}

pub(crate) fn check_target<T: Real>(cfg: &TrainingConfig, target: &ProbabilityVector<T>) -> Result<()> {
    cfg.validate()?;
    if target.len() != 1 << cfg.n_qubits {
        return Err(Error::Dimension(format!(
            "target has {} outcomes, expected 2^{}",
            target.len(),
            cfg.n_qubits
        )));
    }
    Ok(())
}

/// One gradient-ascent step of the discriminator objective
/// `log D(ρ_r) + log(1 − D(ρ_g))` with `ρ_g` frozen.
pub fn discriminator_step<T: Real>(
    d: &mut DiscriminatorModel<T>,
    rho_r: &DensityMatrix<T>,
    rho_g: &DensityMatrix<T>,
    learning_rate: T,
    h: T,
) -> Result<()> {
    let theta = d.spec.params();
    let grad = try_fd_gradient(
        |p| {
            let probe = d.with_params(p)?;
            let effect = probe.effect()?;
            Ok(discriminator_loss_from_scores(
                score_with_effect(&effect, rho_r)?,
                score_with_effect(&effect, rho_g)?,
            ))
        },
        &theta,
        h,
    )?;
    let next: Vec<T> = theta.iter().zip(&grad).map(|(&t, &g)| t - learning_rate * g).collect();
    d.spec.set_params(&next)
}

struct QuantumGame<'a, T> {
    cfg: &'a TrainingConfig,
    target: &'a ProbabilityVector<T>,
    rho_r: DensityMatrix<T>,
    g: GeneratorModel<T>,
    d: DiscriminatorModel<T>,
    lr_g: T,
    lr_d: T,
    h: T,
}

struct Snapshot<T> {
    loss_g: T,
    loss_d: T,
    tv: T,
    fidelity: T,
    probs: ProbabilityVector<T>,
}

impl<T: Real> QuantumGame<'_, T> {
    fn step(&mut self) -> Result<()> {
        match self.cfg.objective_mode {
            ObjectiveMode::Probabilistic => self.step_probabilistic(),
            ObjectiveMode::Literal => self.step_literal(),
        }
    }

    fn step_probabilistic(&mut self) -> Result<()> {
        let rho_g = generate(&self.g)?;
        for _ in 0..self.cfg.d_steps_per_g_step {
            discriminator_step(&mut self.d, &self.rho_r, &rho_g, self.lr_d, self.h)?;
        }
        let effect = self.d.effect()?;
        let theta = self.g.spec.params();
        let grad = try_fd_gradient(
            |p| {
                let rho = generate(&self.g.with_params(p)?)?;
                Ok(generator_loss_from_score(score_with_effect(&effect, &rho)?))
            },
            &theta,
            self.h,
        )?;
        self.descend_generator(&theta, &grad)
    }

    fn step_literal(&mut self) -> Result<()> {
        let u_g = self.g.unitary()?;
        let rho_g = conjugate(&u_g, &self.g.initial_state)?;
        for _ in 0..self.cfg.d_steps_per_g_step {
            let theta = self.d.spec.params();
            // ascent on the objective is descent on its negation
            let grad = try_fd_gradient(
                |p| {
                    let u_d = self.d.with_params(p)?.unitary()?;
                    Ok(-literal_with_unitaries(&self.rho_r, &rho_g, &u_g, &u_d)?)
                },
                &theta,
                self.h,
            )?;
            let next: Vec<T> = theta.iter().zip(&grad).map(|(&t, &g)| t - self.lr_d * g).collect();
            self.d.spec.set_params(&next)?;
        }
        let u_d = self.d.unitary()?;
        let theta = self.g.spec.params();
        let grad = try_fd_gradient(
            |p| {
                let probe = self.g.with_params(p)?;
                let u = probe.unitary()?;
                let rho = conjugate(&u, &probe.initial_state)?;
                literal_with_unitaries(&self.rho_r, &rho, &u, &u_d)
            },
            &theta,
            self.h,
        )?;
        self.descend_generator(&theta, &grad)
    }

    fn descend_generator(&mut self, theta: &[T], grad: &[T]) -> Result<()> {
        let next: Vec<T> = theta.iter().zip(grad).map(|(&t, &g)| t - self.lr_g * g).collect();
        self.g.spec.set_params(&next)
    }

    fn snapshot(&self) -> Result<Snapshot<T>> {
        let u_g = self.g.unitary()?;
        let rho_g = conjugate(&u_g, &self.g.initial_state)?;
        let (loss_g, loss_d) = match self.cfg.objective_mode {
            ObjectiveMode::Probabilistic => {
                let effect = self.d.effect()?;
                let real = score_with_effect(&effect, &self.rho_r)?;
                let fake = score_with_effect(&effect, &rho_g)?;
                (
                    generator_loss_from_score(fake),
                    discriminator_loss_from_scores(real, fake),
                )
            }
            ObjectiveMode::Literal => {
                let v = literal_with_unitaries(&self.rho_r, &rho_g, &u_g, &self.d.unitary()?)?;
                (v, -v)
            }
        };
        if !(loss_g.is_finite() && loss_d.is_finite()) {
            return Err(Error::Numeric("non-finite loss".into()));
        }
        let probs = measure_probabilities(&rho_g)?;
        Ok(Snapshot {
            loss_g,
            loss_d,
            tv: tv_distance(&probs, self.target)?,
            fidelity: fidelity(&rho_g, &self.rho_r)?,
            probs,
        })
    }
}

/// Alternating minimax training of the quantum generator against the
/// quantum discriminator.
///
/// Each iteration runs `d_steps_per_g_step` discriminator updates against
/// the current generated state, then one generator update against the
/// updated discriminator; metrics are recorded after both. Training stops
/// once the TV distance to `target` has stayed below `epsilon` for
/// `patience` consecutive iterations.
pub fn train<T: Real>(config: &TrainingConfig, target: &ProbabilityVector<T>) -> Result<TrainingResult<T>> {
    check_target(config, target)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut g_spec = config.generator_spec::<T>()?;
    let mut d_spec = config.discriminator_spec::<T>()?;
    g_spec.set_params(&init_params(&mut rng, g_spec.n_params()))?;
    d_spec.set_params(&init_params(&mut rng, d_spec.n_params()))?;

    let mut game = QuantumGame {
        cfg: config,
        target,
        rho_r: encode_distribution(target),
        g: GeneratorModel::new(g_spec)?,
        d: DiscriminatorModel::new(d_spec),
        lr_g: T::lit(config.learning_rate_g),
        lr_d: T::lit(config.learning_rate_d),
        h: T::lit(config.fd_step),
    };

    let mut history = Vec::new();
    let mut tracker = ConvergenceTracker::new(config.epsilon, config.patience);
    let mut converged_at = None;
    let mut failure = None;
    let mut last_probs = None;

    for iteration in 1..=config.max_iterations {
        let start = Instant::now();
        let snap = match game.step().and_then(|_| game.snapshot()) {
            Ok(s) => s,
            Err(e) => {
                failure = Some(format!("iteration {iteration}: {e}"));
                break;
            }
        };
        history.push(IterationRecord {
            iteration,
            loss_g: snap.loss_g,
            loss_d: snap.loss_d,
            tv_to_target: snap.tv,
            fidelity_to_target: snap.fidelity,
            wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
        });
        last_probs = Some(snap.probs);
        if tracker.push(snap.tv.as_f64()) {
            converged_at = Some(iteration);
            break;
        }
    }

    let final_generated = match last_probs {
        Some(p) => p,
        None => generate(&game.g)
            .and_then(|rho| measure_probabilities(&rho))
            .unwrap_or_else(|_| ProbabilityVector::from_vec_unchecked(vec![T::nan(); target.len()])),
    };
    Ok(TrainingResult {
        history,
        converged: converged_at.is_some(),
        iterations_to_convergence: converged_at,
        final_generated,
        generator_params: game.g.spec.params(),
        discriminator_params: game.d.spec.params(),
        failure,
    })
}
