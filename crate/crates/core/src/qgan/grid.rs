//! Brute-force maximization of the discriminator objective, used as an
//! oracle for the gradient-based discriminator updates.

use super::model::{discriminator_loss_from_scores, score_with_effect, DiscriminatorModel};
use super::train::discriminator_step;
use crate::error::{Error, Result};
use crate::quantum::DensityMatrix;
use crate::scalar::Real;

/// Objective differences at or below this are treated as ties.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct GridOptimum<T> {
    pub params: Vec<T>,
    pub objective: T,
}

/// `log D(ρ_r) + log(1 − D(ρ_g))` on clamped scores; the quantity the discriminator maximizes.
pub fn discriminator_objective<T: Real>(
    d: &DiscriminatorModel<T>,
    rho_r: &DensityMatrix<T>,
    rho_g: &DensityMatrix<T>,
) -> Result<T> {
    let effect = d.effect()?;
    Ok(-discriminator_loss_from_scores(
        score_with_effect(&effect, rho_r)?,
        score_with_effect(&effect, rho_g)?,
    ))
}

/// Evaluates the discriminator objective on a `grid_steps`-point uniform grid
/// over `[−π, π]` per parameter and returns the first maximum in row-major order.
pub fn grid_search_discriminator<T: Real>(
    rho_r: &DensityMatrix<T>,
    rho_g: &DensityMatrix<T>,
    d: &DiscriminatorModel<T>,
    grid_steps: usize,
) -> Result<GridOptimum<T>> {
    let n_params = d.spec.n_params();
    if n_params > 2 {
        return Err(Error::invalid(
            "grid search",
            format!("{n_params} trainable parameters, at most 2 supported"),
        ));
    }
    if grid_steps < 11 {
        return Err(Error::invalid("grid search", format!("grid_steps {grid_steps} < 11")));
    }
    let pi = T::PI();
    let span = pi + pi;
    let denom = T::from_usize(grid_steps - 1).expect("grid size fits scalar");
    let axis: Vec<T> = (0..grid_steps)
        .map(|i| -pi + span * T::from_usize(i).expect("index fits scalar") / denom)
        .collect();

    let points: Box<dyn Iterator<Item = Vec<T>>> = match n_params {
        0 => Box::new(std::iter::once(Vec::new())),
        1 => Box::new(axis.iter().map(|&a| vec![a])),
        _ => Box::new(axis.iter().flat_map(|&a| axis.iter().map(move |&b| vec![a, b]))),
    };

    let tie = T::lit(TIE_TOLERANCE);
    let mut best: Option<GridOptimum<T>> = None;
    for params in points {
        let value = discriminator_objective(&d.with_params(&params)?, rho_r, rho_g)?;
        let better = match &best {
            None => true,
            Some(b) => value > b.objective + tie,
        };
        if better {
            best = Some(GridOptimum {
                params,
                objective: value,
            });
        }
    }
    Ok(best.expect("grid is non-empty"))
}

/// Runs `steps` discriminator updates against a frozen generated state and
/// returns the final objective.
pub fn fit_discriminator<T: Real>(
    d: &mut DiscriminatorModel<T>,
    rho_r: &DensityMatrix<T>,
    rho_g: &DensityMatrix<T>,
    learning_rate: T,
    h: T,
    steps: usize,
) -> Result<T> {
    for _ in 0..steps {
        discriminator_step(d, rho_r, rho_g, learning_rate, h)?;
    }
    discriminator_objective(d, rho_r, rho_g)
}
