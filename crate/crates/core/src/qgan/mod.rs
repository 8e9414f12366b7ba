//! Quantum generator and discriminator, both objective formulations, and the
//! alternating minimax training loop driven by finite-difference gradients.

pub mod ansatz;
pub mod gradient;
pub mod grid;
pub mod model;
pub mod train;

pub use ansatz::{default_enhancement, Ansatz};
pub use gradient::{fd_gradient, try_fd_gradient};
pub use grid::{discriminator_objective, fit_discriminator, grid_search_discriminator, GridOptimum};
pub use model::{
    discriminate, discriminator_loss_from_scores, generate, generator_loss_from_score, loss_discriminator,
    loss_generator, objective_literal, DiscriminatorModel, GeneratorModel, SCORE_FLOOR,
};
pub use train::{discriminator_step, train, IterationRecord, ObjectiveMode, TrainingConfig, TrainingResult};
