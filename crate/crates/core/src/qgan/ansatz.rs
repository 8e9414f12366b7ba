use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::quantum::{Pauli, PauliString};

/// Family of trainable Pauli terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ansatz {
    /// `X_q` and `Z_q` on every qubit plus nearest-neighbour `Z_q Z_{q+1}`.
    Default,
    /// The listed single-qubit Paulis on every qubit, e.g. `[X, Y, Z]`.
    PerQubit(Vec<Pauli>),
    /// Explicit Pauli strings, used verbatim.
    Terms(Vec<PauliString>),
}

impl Ansatz {
    pub fn terms(&self, n_qubits: usize) -> Result<Vec<PauliString>> {
        match self {
            Ansatz::Default => {
                let mut out = Vec::with_capacity(3 * n_qubits);
                for q in 0..n_qubits {
                    out.push(PauliString::with_ops(n_qubits, &[(q, Pauli::X)])?);
                    out.push(PauliString::with_ops(n_qubits, &[(q, Pauli::Z)])?);
                }
                for q in 0..n_qubits.saturating_sub(1) {
                    out.push(PauliString::with_ops(n_qubits, &[(q, Pauli::Z), (q + 1, Pauli::Z)])?);
                }
                Ok(out)
            }
            Ansatz::PerQubit(ops) => {
                let mut out = Vec::with_capacity(ops.len() * n_qubits);
                for q in 0..n_qubits {
                    for &p in ops {
                        out.push(PauliString::with_ops(n_qubits, &[(q, p)])?);
                    }
                }
                Ok(out)
            }
            Ansatz::Terms(terms) => {
                if let Some(t) = terms.iter().find(|t| t.n_qubits() != n_qubits) {
                    return Err(Error::Spec(format!(
                        "ansatz term {t} acts on {} qubits, expected {n_qubits}",
                        t.n_qubits()
                    )));
                }
                Ok(terms.clone())
            }
        }
    }
}

/// `Σ_{q < q'} (X_q X_{q'} + Y_q Y_{q'})` with unit weights; empty on one qubit.
pub fn default_enhancement(n_qubits: usize) -> Result<Vec<PauliString>> {
    let mut out = Vec::new();
    for q in 0..n_qubits {
        for r in (q + 1)..n_qubits {
            out.push(PauliString::with_ops(n_qubits, &[(q, Pauli::X), (r, Pauli::X)])?);
            out.push(PauliString::with_ops(n_qubits, &[(q, Pauli::Y), (r, Pauli::Y)])?);
        }
    }
    Ok(out)
}

/// Accepts `default`, a lowercase per-qubit set such as `xyz` or `y`, or a
/// comma-separated list of uppercase Pauli strings such as `XI, IX, ZZ`.
impl FromStr for Ansatz {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "default" {
            return Ok(Ansatz::Default);
        }
        if !s.is_empty() && s.chars().all(|c| matches!(c, 'x' | 'y' | 'z')) {
            let mut ops = Vec::new();
            for c in s.chars() {
                let p = match c {
                    'x' => Pauli::X,
                    'y' => Pauli::Y,
                    _ => Pauli::Z,
                };
                if ops.contains(&p) {
                    return Err(Error::invalid("ansatz", format!("duplicate {c:?} in {s:?}")));
                }
                ops.push(p);
            }
            return Ok(Ansatz::PerQubit(ops));
        }
        let mut terms = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            if tok.is_empty() || !tok.chars().all(|c| matches!(c, 'I' | 'X' | 'Y' | 'Z')) {
                return Err(Error::invalid(
                    "ansatz",
                    format!("{tok:?} is not a set name or an uppercase Pauli string"),
                ));
            }
            terms.push(tok.parse()?);
        }
        Ok(Ansatz::Terms(terms))
    }
}

impl fmt::Display for Ansatz {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ansatz::Default => f.write_str("default"),
            Ansatz::PerQubit(ops) => {
                for p in ops {
                    let c = match p {
                        Pauli::I => 'i',
                        Pauli::X => 'x',
                        Pauli::Y => 'y',
                        Pauli::Z => 'z',
                    };
                    write!(f, "{c}")?;
                }
                Ok(())
            }
            Ansatz::Terms(t) => {
                let parts: Vec<String> = t.iter().map(|p| p.to_string()).collect();
                f.write_str(&parts.join(", "))
            }
        }
    }
}
