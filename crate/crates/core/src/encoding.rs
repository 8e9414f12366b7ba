//! Classical data to quantum states: discrete distributions over `2^n`
//! outcomes and their diagonal density-matrix encoding.

use std::fs;
use std::ops::Index;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::quantum::{ComplexMatrix, DensityMatrix, MAX_QUBITS};
use crate::scalar::Real;

/// Nonnegative weights over `2^n` outcomes summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector<T> {
    probs: Vec<T>,
}

impl<T: Real> ProbabilityVector<T> {
    pub fn new(probs: Vec<T>) -> Result<Self> {
        let len = probs.len();
        if len < 2 || !len.is_power_of_two() || len > 1 << MAX_QUBITS {
            return Err(Error::Dimension(format!(
                "probability vector length {len} is not 2^n for 1 <= n <= {MAX_QUBITS}"
            )));
        }
        if let Some(i) = probs.iter().position(|p| !(p.is_finite() && *p >= T::zero())) {
            return Err(Error::invalid(
                "probability vector",
                format!("entry {i} = {} is negative or non-finite", probs[i]),
            ));
        }
        let sum = probs.iter().fold(T::zero(), |a, &b| a + b);
        if !((sum - T::one()).abs() <= T::prob_tol()) {
            return Err(Error::invalid(
                "probability vector",
                format!("entries sum to {sum}, not 1 (normalization)"),
            ));
        }
        Ok(Self { probs })
    }

    pub(crate) fn from_vec_unchecked(probs: Vec<T>) -> Self {
        Self { probs }
    }

    /// Uniform distribution on `n_qubits`.
    pub fn uniform(n_qubits: usize) -> Result<Self> {
        let dim = 1usize << n_qubits.min(MAX_QUBITS + 1);
        let p = T::one() / T::from_usize(dim).expect("dimension fits scalar");
        Self::new(vec![p; dim])
    }

    pub fn as_slice(&self) -> &[T] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn n_qubits(&self) -> usize {
        self.probs.len().trailing_zeros() as usize
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.probs.iter()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.probs.iter().map(|p| p.as_f64()).collect()
    }
}

impl<T> Index<usize> for ProbabilityVector<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.probs[i]
    }
}

/// Normalized histogram of `samples` over `2^n_qubits` outcomes.
pub fn empirical_distribution<T: Real>(samples: &[usize], n_qubits: usize) -> Result<ProbabilityVector<T>> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::Dimension(format!(
            "{n_qubits} qubits outside supported range 1..={MAX_QUBITS}"
        )));
    }
    if samples.is_empty() {
        return Err(Error::invalid("samples", "no samples given"));
    }
    let dim = 1usize << n_qubits;
    let mut counts = vec![0usize; dim];
    for (i, &s) in samples.iter().enumerate() {
        if s >= dim {
            return Err(Error::invalid(
                "samples",
                format!("sample #{i} = {s} outside [0, {dim})"),
            ));
        }
        counts[s] += 1;
    }
    let total = T::from_usize(samples.len()).expect("sample count fits scalar");
    let probs = counts
        .into_iter()
        .map(|c| T::from_usize(c).expect("count fits scalar") / total)
        .collect();
    ProbabilityVector::new(probs)
}

/// `Σ_i p_i |i⟩⟨i|` over computational basis states.
pub fn encode_distribution<T: Real>(p: &ProbabilityVector<T>) -> DensityMatrix<T> {
    DensityMatrix::from_matrix_unchecked(ComplexMatrix::from_diagonal(&p.probs))
}

/// Draws `count` i.i.d. outcomes from `p` by inverse CDF with a seeded ChaCha8 stream.
pub fn draw_samples<T: Real>(p: &ProbabilityVector<T>, count: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cdf: Vec<f64> = p
        .iter()
        .scan(0.0, |acc, &x| {
            *acc += x.as_f64();
            Some(*acc)
        })
        .collect();
    let last_nonzero = p.as_slice().iter().rposition(|&x| x > T::zero()).unwrap_or(0);
    (0..count)
        .map(|_| {
            let u: f64 = rng.gen();
            cdf.iter()
                .position(|&c| u < c)
                .unwrap_or(last_nonzero)
                .min(last_nonzero)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub enum DataSource {
    Inline(Vec<f64>),
    SampleFile(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct DatasetSpec {
    pub source: DataSource,
    pub n_qubits: usize,
}

pub fn load_dataset<T: Real>(spec: &DatasetSpec) -> Result<ProbabilityVector<T>> {
    match &spec.source {
        DataSource::Inline(probs) => {
            let dim = 1usize << spec.n_qubits.min(MAX_QUBITS + 1);
            if probs.len() != dim {
                return Err(Error::Dimension(format!(
                    "inline target has {} entries, expected 2^{} = {dim}",
                    probs.len(),
                    spec.n_qubits
                )));
            }
            ProbabilityVector::new(probs.iter().map(|&p| T::lit(p)).collect())
        }
        DataSource::SampleFile(path) => {
            let samples = read_samples(path)?;
            empirical_distribution(&samples, spec.n_qubits)
        }
    }
}

/// Reads one base-10 nonnegative integer per line (LF or CRLF).
pub fn read_samples(path: &Path) -> Result<Vec<usize>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_samples(&text, &path.display().to_string())
}

pub fn parse_samples(text: &str, origin: &str) -> Result<Vec<usize>> {
    text.lines()
        .enumerate()
        .map(|(i, line)| {
            let line = line.trim_end_matches('\r');
            line.trim().parse::<usize>().map_err(|e| Error::Parse {
                path: origin.to_string(),
                line: i + 1,
                message: format!("expected a nonnegative integer, got {line:?} ({e})"),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn pv(p: &[f64]) -> ProbabilityVector<f64> {
        ProbabilityVector::new(p.to_vec()).unwrap()
    }

    #[test]
    fn histogram_examples() {
        let p: ProbabilityVector<f64> = empirical_distribution(&[0, 0, 1, 1], 1).unwrap();
        assert_eq!(p.as_slice(), &[0.5, 0.5]);
        let p: ProbabilityVector<f64> = empirical_distribution(&[0, 0, 0, 1], 1).unwrap();
        assert_eq!(p.as_slice(), &[0.75, 0.25]);
    }

    #[test]
    fn histogram_errors() {
        assert!(empirical_distribution::<f64>(&[], 1).is_err());
        assert!(empirical_distribution::<f64>(&[0, 2], 1).is_err());
    }

    #[test]
    fn sampled_histogram_tracks_target() {
        let target = pv(&[0.5, 0.0, 0.0, 0.5]);
        let samples = draw_samples(&target, 10_000, 42);
        let est: ProbabilityVector<f64> = empirical_distribution(&samples, 2).unwrap();
        for (e, t) in est.iter().zip(target.iter()) {
            assert!((e - t).abs() < 0.02, "{e} vs {t}");
        }
        assert_eq!(est[1], 0.0);
        assert_eq!(est[2], 0.0);
    }

    #[test]
    fn encoding_examples() {
        let rho = encode_distribution(&pv(&[1.0, 0.0]));
        assert_eq!(rho, DensityMatrix::basis_state(1, 0).unwrap());
        let rho = encode_distribution(&pv(&[0.5, 0.5]));
        assert_eq!(rho.purity(), 0.5);
        let rho = encode_distribution(&pv(&[0.75, 0.25]));
        assert!((rho.purity() - 0.625).abs() < 1e-12);
        assert_eq!(rho.matrix(), &ComplexMatrix::from_diagonal(&[0.75, 0.25]));
    }

    #[test]
    fn probability_vector_validation() {
        assert!(ProbabilityVector::new(vec![0.5, 0.6]).is_err());
        assert!(ProbabilityVector::new(vec![1.0]).is_err());
        assert!(ProbabilityVector::new(vec![0.5, 0.25, 0.25]).is_err());
        assert!(ProbabilityVector::new(vec![1.5, -0.5]).is_err());
        assert!(ProbabilityVector::new(vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn inline_dataset() {
        let spec = DatasetSpec {
            source: DataSource::Inline(vec![0.75, 0.25]),
            n_qubits: 1,
        };
        let p: ProbabilityVector<f64> = load_dataset(&spec).unwrap();
        assert_eq!(p.as_slice(), &[0.75, 0.25]);

        let bad = DatasetSpec {
            source: DataSource::Inline(vec![0.5, 0.6]),
            n_qubits: 1,
        };
        let err = load_dataset::<f64>(&bad).unwrap_err();
        assert!(err.to_string().contains("normalization"), "{err}");

        let wrong_len = DatasetSpec {
            source: DataSource::Inline(vec![0.5, 0.5]),
            n_qubits: 2,
        };
        assert!(matches!(load_dataset::<f64>(&wrong_len), Err(Error::Dimension(_))));
    }

    #[test]
    fn sample_file_dataset() {
        let mut f = tempfile_in_target("samples_ok.txt");
        f.1.write_all(b"0\n1\n0\n0\n").unwrap();
        let spec = DatasetSpec {
            source: DataSource::SampleFile(f.0.clone()),
            n_qubits: 1,
        };
        let p: ProbabilityVector<f64> = load_dataset(&spec).unwrap();
        assert_eq!(p.as_slice(), &[0.75, 0.25]);
        std::fs::remove_file(&f.0).ok();
    }

    #[test]
    fn crlf_and_missing_trailing_newline() {
        assert_eq!(parse_samples("0\r\n1\r\n1", "mem").unwrap(), vec![0, 1, 1]);
    }

    #[test]
    fn parse_error_reports_line() {
        let err = parse_samples("0\n1\nx\n", "mem").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }), "{err}");
        let err = parse_samples("0\n-1\n", "mem").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
    }

    #[test]
    fn missing_file_is_io_error() {
        let spec = DatasetSpec {
            source: DataSource::SampleFile("/nonexistent/samples.txt".into()),
            n_qubits: 1,
        };
        assert!(matches!(load_dataset::<f64>(&spec), Err(Error::Io { .. })));
    }

    fn tempfile_in_target(name: &str) -> (PathBuf, std::fs::File) {
        let dir = std::env::temp_dir().join(format!("qgan-core-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join(name);
        let f = std::fs::File::create(&path).unwrap();
        (path, f)
    }
}
