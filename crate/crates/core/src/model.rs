//! Domain types shared by every analysis: validated probability columns,
//! complex state vectors and the diagonal projectors acting on them.

use std::collections::HashSet;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default tolerance for `|sum - 1|` when validating a probability column.
pub const DEFAULT_SUM_TOLERANCE: f64 = 0.01;

/// Labelled weights summing to exactly 1 (up to floating rounding).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbabilityDistribution {
    labels: Vec<String>,
    weights: Vec<f64>,
}

impl ProbabilityDistribution {
    /// Checks the column and divides by its sum.
    ///
    /// Rejects negative or non-finite weights, and sums further than `tolerance`
    /// from 1: such a deviation means wrong data rather than rounding.
    pub fn normalized(
        column: &'static str,
        labels: Vec<String>,
        weights: Vec<f64>,
        tolerance: f64,
    ) -> Result<Self> {
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(Error::InvalidTolerance(tolerance));
        }
        if labels.len() != weights.len() {
            return Err(Error::LengthMismatch {
                exemplars: labels.len(),
                mu_a: weights.len(),
                mu_b: weights.len(),
                mu_a_or_b: weights.len(),
            });
        }
        check_labels(&labels)?;
        for (label, &w) in labels.iter().zip(&weights) {
            if !(w >= 0.0 && w.is_finite()) {
                return Err(Error::NegativeWeight {
                    column,
                    label: label.clone(),
                    value: w,
                });
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > tolerance {
            return Err(Error::SumOutOfTolerance {
                column,
                sum,
                tolerance,
            });
        }
        let weights = weights.into_iter().map(|w| w / sum).collect();
        Ok(Self { labels, weights })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }
}

fn check_labels(labels: &[String]) -> Result<()> {
    let mut seen = HashSet::with_capacity(labels.len());
    for (row, label) in labels.iter().enumerate() {
        if label.trim().is_empty() {
            return Err(Error::EmptyLabel(row));
        }
        if !seen.insert(label.as_str()) {
            return Err(Error::DuplicateLabel(label.clone()));
        }
    }
    Ok(())
}

/// Unvalidated dataset as read from a file.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct RawDataset {
    pub exemplars: Vec<String>,
    pub mu_a: Vec<f64>,
    pub mu_b: Vec<f64>,
    pub mu_a_or_b: Vec<f64>,
}

/// Choice probabilities for concept A, concept B and the disjunction "A or B"
/// over a shared list of exemplars.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DisjunctionDataset {
    mu_a: ProbabilityDistribution,
    mu_b: ProbabilityDistribution,
    mu_a_or_b: ProbabilityDistribution,
}

impl DisjunctionDataset {
    pub fn exemplars(&self) -> &[String] {
        self.mu_a.labels()
    }

    pub fn len(&self) -> usize {
        self.mu_a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mu_a.is_empty()
    }

    pub fn mu_a(&self) -> &[f64] {
        self.mu_a.weights()
    }

    pub fn mu_b(&self) -> &[f64] {
        self.mu_b.weights()
    }

    pub fn mu_a_or_b(&self) -> &[f64] {
        self.mu_a_or_b.weights()
    }

    pub fn index_of(&self, exemplar: &str) -> Option<usize> {
        self.exemplars().iter().position(|e| e == exemplar)
    }
}

/// Validates a raw dataset and renormalizes each column to sum to 1.
pub fn validate_dataset(raw: RawDataset, tolerance: f64) -> Result<DisjunctionDataset> {
    let n = raw.exemplars.len();
    if raw.mu_a.len() != n || raw.mu_b.len() != n || raw.mu_a_or_b.len() != n {
        return Err(Error::LengthMismatch {
            exemplars: n,
            mu_a: raw.mu_a.len(),
            mu_b: raw.mu_b.len(),
            mu_a_or_b: raw.mu_a_or_b.len(),
        });
    }
    if n < 2 {
        return Err(Error::TooFewExemplars(n));
    }
    let labels = raw.exemplars;
    let mu_a = ProbabilityDistribution::normalized("mu_a", labels.clone(), raw.mu_a, tolerance)?;
    let mu_b = ProbabilityDistribution::normalized("mu_b", labels.clone(), raw.mu_b, tolerance)?;
    let mu_a_or_b =
        ProbabilityDistribution::normalized("mu_a_or_b", labels, raw.mu_a_or_b, tolerance)?;
    Ok(DisjunctionDataset {
        mu_a,
        mu_b,
        mu_a_or_b,
    })
}

/// A vector in `C^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComplexVector(Vec<Complex64>);

impl ComplexVector {
    pub fn new(components: Vec<Complex64>) -> Self {
        Self(components)
    }

    pub fn from_real(components: &[f64]) -> Self {
        Self(components.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    /// Canonical basis vector `e_index` of `C^dim` (0-based).
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = vec![Complex64::new(0.0, 0.0); dim];
        v[index] = Complex64::new(1.0, 0.0);
        Self(v)
    }

    pub fn components(&self) -> &[Complex64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self(self.0.iter().map(|z| z * factor).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_dim(self.dim(), other.dim())?;
        Ok(Self(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }
}

fn same_dim(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::DimensionMismatch { left, right });
    }
    Ok(())
}

/// `<u|v>`, conjugate-linear in `u`.
pub fn inner_product(u: &ComplexVector, v: &ComplexVector) -> Result<Complex64> {
    same_dim(u.dim(), v.dim())?;
    Ok(u.0.iter().zip(&v.0).map(|(a, b)| a.conj() * b).sum())
}

/// Orthogonal projection onto the span of a set of canonical basis vectors.
///
/// Indices are 0-based. Diagonal 0/1 action makes it idempotent and
/// self-adjoint without further checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Projector {
    dim: usize,
    basis_indices: Vec<usize>,
}

impl Projector {
    pub fn new(dim: usize, basis_indices: Vec<usize>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(basis_indices.len());
        for &index in &basis_indices {
            if index >= dim {
                return Err(Error::IndexOutOfRange { index, dim });
            }
            if !seen.insert(index) {
                return Err(Error::DuplicateProjectorIndex(index));
            }
        }
        Ok(Self { dim, basis_indices })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_indices(&self) -> &[usize] {
        &self.basis_indices
    }

    /// `<u|P|v>`.
    pub fn matrix_element(&self, u: &ComplexVector, v: &ComplexVector) -> Result<Complex64> {
        same_dim(u.dim(), self.dim)?;
        same_dim(v.dim(), self.dim)?;
        Ok(self
            .basis_indices
            .iter()
            .map(|&i| u.0[i].conj() * v.0[i])
            .sum())
    }
}

/// `<v|P|v>`, the probability of the outcome `P` in state `v`.
pub fn project_probability(v: &ComplexVector, p: &Projector) -> Result<f64> {
    same_dim(v.dim(), p.dim)?;
    Ok(p.basis_indices.iter().map(|&i| v.0[i].norm_sqr()).sum())
}
