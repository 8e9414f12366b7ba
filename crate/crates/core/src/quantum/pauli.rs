use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use super::matrix::ComplexMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Largest register the dense simulator accepts.
pub const MAX_QUBITS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix<T: Real>(self) -> ComplexMatrix<T> {
        let o = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        let i = Complex::new(T::zero(), T::one());
        let data = match self {
            Pauli::I => vec![one, o, o, one],
            Pauli::X => vec![o, one, one, o],
            Pauli::Y => vec![o, -i, i, o],
            Pauli::Z => vec![one, o, o, -one],
        };
        ComplexMatrix::from_row_major(2, data).expect("2x2 Pauli")
    }

    fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Tensor product of single-qubit Paulis; `ops[0]` acts on qubit 0, the leftmost factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    ops: Vec<Pauli>,
}

impl PauliString {
    pub fn new(ops: Vec<Pauli>) -> Result<Self> {
        check_qubits(ops.len())?;
        Ok(Self { ops })
    }

    pub fn identity(n_qubits: usize) -> Result<Self> {
        Self::new(vec![Pauli::I; n_qubits])
    }

    /// `op` on the listed qubits, identity elsewhere.
    pub fn with_ops(n_qubits: usize, placed: &[(usize, Pauli)]) -> Result<Self> {
        let mut ops = vec![Pauli::I; n_qubits];
        for &(q, p) in placed {
            if q >= n_qubits {
                return Err(Error::Dimension(format!(
                    "qubit {q} out of range for {n_qubits} qubits"
                )));
            }
            ops[q] = p;
        }
        Self::new(ops)
    }

    pub fn n_qubits(&self) -> usize {
        self.ops.len()
    }

    pub fn ops(&self) -> &[Pauli] {
        &self.ops
    }

    pub fn matrix<T: Real>(&self) -> ComplexMatrix<T> {
        pauli_matrix(self)
    }
}

fn check_qubits(n: usize) -> Result<()> {
    if n == 0 || n > MAX_QUBITS {
        return Err(Error::Dimension(format!(
            "{n} qubits outside supported range 1..={MAX_QUBITS}"
        )));
    }
    Ok(())
}

/// Dense `2^n × 2^n` matrix of a Pauli string.
///
/// Every Pauli string is a signed permutation matrix with phases in
/// `{±1, ±i}`, so each row has exactly one nonzero entry; it is filled
/// directly rather than by repeated Kronecker products.
pub fn pauli_matrix<T: Real>(s: &PauliString) -> ComplexMatrix<T> {
    let n = s.ops.len();
    let dim = 1usize << n;
    let mut out = ComplexMatrix::zeros(dim);
    for row in 0..dim {
        let mut col = row;
        let mut phase = Complex::new(T::one(), T::zero());
        for (q, op) in s.ops.iter().enumerate() {
            let bit_pos = n - 1 - q;
            let bit = (row >> bit_pos) & 1;
            match op {
                Pauli::I => {}
                Pauli::X => col ^= 1 << bit_pos,
                Pauli::Y => {
                    col ^= 1 << bit_pos;
                    // Y|1> = -i|0>, Y|0> = i|1>; row bit is the output bit
                    phase = phase
                        * if bit == 0 {
                            Complex::new(T::zero(), -T::one())
                        } else {
                            Complex::new(T::zero(), T::one())
                        };
                }
                Pauli::Z => {
                    if bit == 1 {
                        phase = -phase;
                    }
                }
            }
        }
        out[(row, col)] = phase;
    }
    out
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for op in &self.ops {
            write!(f, "{}", op.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let ops = s
            .trim()
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::invalid("pauli string", format!("unknown symbol {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ops)
    }
}
