//! Distribution distances and the convergence statistics behind the
//! classical-versus-quantum iteration comparison.

use serde::{Deserialize, Serialize};

use crate::encoding::ProbabilityVector;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Floor applied to `q_i` inside the KL logarithm.
pub const KL_FLOOR: f64 = 1e-12;

/// `½ Σ |p_i − q_i|`.
pub fn tv_distance<T: Real>(p: &ProbabilityVector<T>, q: &ProbabilityVector<T>) -> Result<T> {
    check_len(p, q)?;
    let sum = p
        .iter()
        .zip(q.iter())
        .fold(T::zero(), |acc, (&a, &b)| acc + (a - b).abs());
    Ok((sum * T::lit(0.5)).min(T::one()))
}

/// `Σ_{p_i > 0} p_i log(p_i / max(q_i, 1e-12))`.
pub fn kl_divergence<T: Real>(p: &ProbabilityVector<T>, q: &ProbabilityVector<T>) -> Result<T> {
    check_len(p, q)?;
    let floor = T::lit(KL_FLOOR);
    Ok(p.iter()
        .zip(q.iter())
        .filter(|(a, _)| **a > T::zero())
        .fold(T::zero(), |acc, (&a, &b)| acc + a * (a / b.max(floor)).ln()))
}

/// Classical fidelity `(Σ √(p_i q_i))²`.
pub fn classical_fidelity<T: Real>(p: &ProbabilityVector<T>, q: &ProbabilityVector<T>) -> Result<T> {
    check_len(p, q)?;
    let bc = p
        .iter()
        .zip(q.iter())
        .fold(T::zero(), |acc, (&a, &b)| acc + (a * b).sqrt());
    Ok((bc * bc).min(T::one()))
}

fn check_len<T: Real>(p: &ProbabilityVector<T>, q: &ProbabilityVector<T>) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::Dimension(format!("lengths {} and {}", p.len(), q.len())));
    }
    Ok(())
}

/// First 1-based index ending a run of `patience` consecutive values below `epsilon`.
pub fn iterations_to_convergence<T: Real>(history: &[T], epsilon: T, patience: usize) -> Option<usize> {
    let patience = patience.max(1);
    let mut run = 0;
    for (i, &tv) in history.iter().enumerate() {
        if tv < epsilon {
            run += 1;
            if run >= patience {
                return Some(i + 1);
            }
        } else {
            run = 0;
        }
    }
    None
}

/// Median with the even-length rule `(a + b) / 2`; `None` for an empty list.
pub fn median(values: &[usize]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_unstable();
    let mid = v.len() / 2;
    Some(if v.len() % 2 == 1 {
        v[mid] as f64
    } else {
        (v[mid - 1] as f64 + v[mid] as f64) / 2.0
    })
}

/// What a single training run contributes to a [`CompareReport`].
#[derive(Debug, Clone, PartialEq)]
pub struct RunSummary {
    pub seed: u64,
    pub iterations_to_convergence: Option<usize>,
    pub final_tv: Option<f64>,
    pub final_fidelity: Option<f64>,
}

/// All seeds of one method (classical, or quantum at a fixed λ).
#[derive(Debug, Clone, PartialEq)]
pub struct MethodRuns {
    pub method: String,
    pub lambda: Option<f64>,
    pub runs: Vec<RunSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MethodReport {
    pub method: String,
    pub lambda: Option<f64>,
    pub seeds: Vec<u64>,
    pub iterations_to_convergence: Vec<Option<usize>>,
    /// Over converged runs only.
    pub median_iterations: Option<f64>,
    pub converged_fraction: f64,
    pub final_tv: Vec<Option<f64>>,
    pub final_fidelity: Vec<Option<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub note: String,
    pub methods: Vec<MethodReport>,
}

const REPORT_NOTE: &str = "Iteration counts are relative to the chosen architectures: the classical \
baseline is a softmax generator with a per-outcome logistic discriminator, the quantum models are \
Pauli-sum Hamiltonian evolutions with a qubit-0 projector readout.";

pub fn build_compare_report(methods: &[MethodRuns]) -> Result<CompareReport> {
    if methods.is_empty() {
        return Err(Error::invalid("compare report", "no methods given"));
    }
    let mut out = Vec::with_capacity(methods.len());
    for m in methods {
        if m.runs.is_empty() {
            return Err(Error::invalid(
                "compare report",
                format!("method {} has no runs", m.method),
            ));
        }
        let counts: Vec<usize> = m.runs.iter().filter_map(|r| r.iterations_to_convergence).collect();
        out.push(MethodReport {
            method: m.method.clone(),
            lambda: m.lambda,
            seeds: m.runs.iter().map(|r| r.seed).collect(),
            iterations_to_convergence: m.runs.iter().map(|r| r.iterations_to_convergence).collect(),
            median_iterations: median(&counts),
            converged_fraction: counts.len() as f64 / m.runs.len() as f64,
            final_tv: m.runs.iter().map(|r| r.final_tv).collect(),
            final_fidelity: m.runs.iter().map(|r| r.final_fidelity).collect(),
        });
    }
    Ok(CompareReport {
        note: REPORT_NOTE.to_string(),
        methods: out,
    })
}
