//! Complex Hilbert-space model of a concept disjunction.
//!
//! Given choice probabilities `mu(A)_k`, `mu(B)_k` and `mu(A or B)_k` over `n`
//! exemplars, builds unit vectors `|A>` and `|B>` in `C^(n+1)` with
//! `<A|B> = 0`, together with a family of `n` orthogonal projectors `M_k`, such
//! that
//!
//! ```text
//! mu(A)_k        = <A|M_k|A>
//! mu(B)_k        = <B|M_k|B>
//! mu(A or B)_k   = 1/2 <A+B|M_k|A+B>
//!                = (mu(A)_k + mu(B)_k) / 2 + Re<A|M_k|B>
//! ```
//!
//! The last term is the interference term. `|A>` carries the real amplitudes
//! `sqrt(mu(A)_k)`; `|B>` carries `e^{i beta_k} sqrt(mu(B)_k)` with phases
//! fixed by the interference terms. One anchor exemplar `m` (largest
//! `|lambda_k|`) gets a damped amplitude `c_m` and an extra coordinate `n`
//! absorbs the removed mass so both orthogonality and normalization hold.

use std::cmp::Ordering;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{
    inner_product, project_probability, ComplexVector, DisjunctionDataset, Projector,
};

/// Default clamp for slightly negative `mu(A) mu(B) - I^2` discriminants.
pub const DEFAULT_CLAMP_EPS: f64 = 1e-9;

/// Slack for values that must lie in `[-1, 1]` or `[0, 1]` but drift by rounding.
const BOUND_SLACK: f64 = 1e-9;

/// Largest `|<A|B>|` tolerated by [`build_state_vectors`].
const ORTHOGONALITY_LIMIT: f64 = 1e-6;

/// Below this `|I_k|` an exemplar is classified neutral.
pub const NEUTRAL_THRESHOLD: f64 = 1e-12;

/// `I_k = mu(A or B)_k - (mu(A)_k + mu(B)_k) / 2`, one per exemplar.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct InterferenceTerms(Vec<f64>);

impl InterferenceTerms {
    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

pub fn interference_terms(ds: &DisjunctionDataset) -> InterferenceTerms {
    InterferenceTerms(
        ds.mu_a()
            .iter()
            .zip(ds.mu_b())
            .zip(ds.mu_a_or_b())
            .map(|((a, b), ab)| ab - 0.5 * (a + b))
            .collect(),
    )
}

/// `|lambda_k| = sqrt(mu(A)_k mu(B)_k - I_k^2)`.
///
/// Discriminants in `[-clamp_eps, 0)` are clamped to 0. Anything more negative
/// means `|I_k| > sqrt(mu(A)_k mu(B)_k)` and the exemplar cannot be modelled.
pub fn lambda_magnitudes(ds: &DisjunctionDataset, clamp_eps: f64) -> Result<Vec<f64>> {
    let terms = interference_terms(ds);
    ds.mu_a()
        .iter()
        .zip(ds.mu_b())
        .zip(terms.values())
        .enumerate()
        .map(|(k, ((a, b), i))| {
            let disc = a * b - i * i;
            if disc >= 0.0 {
                Ok(disc.sqrt())
            } else if disc >= -clamp_eps {
                Ok(0.0)
            } else {
                Err(Error::NotRepresentable {
                    index: k,
                    reason: format!(
                        "|I| = {} exceeds sqrt(mu_a * mu_b) = {}",
                        i.abs(),
                        (a * b).sqrt()
                    ),
                })
            }
        })
        .collect()
}

/// Index of the largest magnitude; the smallest index wins ties.
pub fn select_anchor(lambda_abs: &[f64]) -> Result<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (k, &v) in lambda_abs.iter().enumerate() {
        match best {
            Some((_, b)) if v <= b => {}
            _ => best = Some((k, v)),
        }
    }
    best.map(|(k, _)| k).ok_or(Error::EmptyInput)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    /// Applies the sign to a magnitude, keeping it on zero (`-0.0` for `Minus`).
    pub fn apply(self, magnitude: f64) -> f64 {
        match self {
            Sign::Plus => magnitude,
            Sign::Minus => -magnitude,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignSource {
    Greedy,
    UserSupplied,
}

/// The `±` choices for `lambda_k` (and therefore `beta_k`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignAssignment {
    signs: Vec<Sign>,
    source: SignSource,
}

impl SignAssignment {
    pub fn user_supplied(signs: Vec<Sign>) -> Self {
        Self {
            signs,
            source: SignSource::UserSupplied,
        }
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn source(&self) -> SignSource {
        self.source
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    /// Signed values `sign_k * |lambda_k|`.
    pub fn apply(&self, lambda_abs: &[f64]) -> Result<Vec<f64>> {
        if self.signs.len() != lambda_abs.len() {
            return Err(Error::SignLengthMismatch {
                expected: lambda_abs.len(),
                got: self.signs.len(),
            });
        }
        Ok(self
            .signs
            .iter()
            .zip(lambda_abs)
            .map(|(s, &l)| s.apply(l))
            .collect())
    }
}

/// Greedy balancing of the non-anchor signs.
///
/// Non-anchor magnitudes are visited largest first (ties by index) and each
/// takes the sign opposite to the running sum, `-` when the sum is zero. The
/// running sum never exceeds the largest magnitude seen so far, hence
/// `|sum_{k != m} lambda_k| <= |lambda_m|`. The anchor itself is `+`.
pub fn assign_signs(lambda_abs: &[f64], m: usize) -> Result<SignAssignment> {
    let anchor_value = *lambda_abs.get(m).ok_or(Error::IndexOutOfRange {
        index: m,
        dim: lambda_abs.len(),
    })?;
    if let Some((index, &value)) = lambda_abs
        .iter()
        .enumerate()
        .find(|(_, &v)| v > anchor_value || v.is_nan())
    {
        return Err(Error::AnchorNotMaximal {
            anchor: m,
            anchor_value,
            index,
            value,
        });
    }

    let mut order: Vec<usize> = (0..lambda_abs.len()).filter(|&k| k != m).collect();
    order.sort_by(|&i, &j| {
        lambda_abs[j]
            .partial_cmp(&lambda_abs[i])
            .unwrap_or(Ordering::Equal)
            .then(i.cmp(&j))
    });

    let mut signs = vec![Sign::Plus; lambda_abs.len()];
    let mut running = 0.0;
    for k in order {
        let sign = if running < 0.0 {
            Sign::Plus
        } else {
            Sign::Minus
        };
        signs[k] = sign;
        running += sign.apply(lambda_abs[k]);
    }
    Ok(SignAssignment {
        signs,
        source: SignSource::Greedy,
    })
}

fn non_anchor_sum(lambda: &[f64], m: usize) -> f64 {
    lambda
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != m)
        .map(|(_, l)| l)
        .sum()
}

/// Damping factor of the anchor amplitude in `|B>`:
/// `c_m = sqrt(((sum_{k != m} lambda_k)^2 + I_m^2) / (mu(A)_m mu(B)_m))`.
pub fn compute_cm(
    ds: &DisjunctionDataset,
    terms: &InterferenceTerms,
    lambda: &[f64],
    m: usize,
) -> Result<f64> {
    let n = ds.len();
    if lambda.len() != n || terms.len() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: lambda.len().min(terms.len()),
        });
    }
    if m >= n {
        return Err(Error::IndexOutOfRange { index: m, dim: n });
    }
    let rest = non_anchor_sum(lambda, m);
    let i_m = terms.values()[m];
    let numerator = rest * rest + i_m * i_m;
    let mass = ds.mu_a()[m] * ds.mu_b()[m];
    if mass == 0.0 {
        // Only reachable with all lambdas zero; the anchor coordinate then
        // carries no B-amplitude at all.
        if numerator <= BOUND_SLACK * BOUND_SLACK {
            return Ok(0.0);
        }
        return Err(Error::ZeroAnchorMass);
    }
    let c = (numerator / mass).sqrt();
    if c > 1.0 + BOUND_SLACK {
        return Err(Error::ConstraintViolated(c));
    }
    Ok(c.min(1.0))
}

/// Phases `beta_k` in radians, within `(-pi, pi]`.
///
/// For `k != m`, `cos beta_k = I_k / sqrt(mu(A)_k mu(B)_k)` and the sign of
/// `beta_k` follows `lambda_k`. The anchor phase is fixed by both its cosine
/// `I_m / (c_m sqrt(mu(A)_m mu(B)_m))` and its sine
/// `-sum_{k != m} lambda_k / (c_m sqrt(mu(A)_m mu(B)_m))`, the latter coming
/// from `Im<A|B> = 0`.
pub fn compute_phases(
    ds: &DisjunctionDataset,
    terms: &InterferenceTerms,
    lambda: &[f64],
    m: usize,
    c_m: f64,
) -> Result<Vec<f64>> {
    let n = ds.len();
    if lambda.len() != n || terms.len() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: lambda.len().min(terms.len()),
        });
    }
    if m >= n {
        return Err(Error::IndexOutOfRange { index: m, dim: n });
    }
    let mut beta = Vec::with_capacity(n);
    for k in 0..n {
        let i_k = terms.values()[k];
        let root = (ds.mu_a()[k] * ds.mu_b()[k]).sqrt();
        let phase = if k == m {
            if c_m == 0.0 {
                0.0
            } else {
                (-non_anchor_sum(lambda, m)).atan2(i_k)
            }
        } else if root == 0.0 {
            if i_k.abs() > BOUND_SLACK {
                return Err(Error::NotRepresentable {
                    index: k,
                    reason: format!("zero mass product with interference term {i_k}"),
                });
            }
            0.0
        } else {
            let cos = i_k / root;
            if cos.abs() > 1.0 + BOUND_SLACK {
                return Err(Error::NotRepresentable {
                    index: k,
                    reason: format!("phase cosine {cos} outside [-1, 1]"),
                });
            }
            let angle = cos.clamp(-1.0, 1.0).acos();
            if lambda[k].is_sign_negative() {
                -angle
            } else {
                angle
            }
        };
        beta.push(wrap_half_open(phase));
    }
    Ok(beta)
}

/// Maps `-pi` to `pi` so angles lie in `(-pi, pi]`.
fn wrap_half_open(angle: f64) -> f64 {
    if angle <= -std::f64::consts::PI {
        angle + 2.0 * std::f64::consts::PI
    } else {
        angle
    }
}

/// `|A>` and `|B>` in `C^(n+1)`.
pub fn build_state_vectors(
    ds: &DisjunctionDataset,
    m: usize,
    c_m: f64,
    beta: &[f64],
) -> Result<(ComplexVector, ComplexVector)> {
    let n = ds.len();
    if beta.len() != n {
        return Err(Error::DimensionMismatch {
            left: n,
            right: beta.len(),
        });
    }
    if m >= n {
        return Err(Error::IndexOutOfRange { index: m, dim: n });
    }
    let mut a: Vec<Complex64> = ds
        .mu_a()
        .iter()
        .map(|&p| Complex64::new(p.sqrt(), 0.0))
        .collect();
    a.push(Complex64::new(0.0, 0.0));

    let mut b: Vec<Complex64> = ds
        .mu_b()
        .iter()
        .zip(beta)
        .enumerate()
        .map(|(k, (&p, &phase))| {
            let amplitude = if k == m { c_m * p.sqrt() } else { p.sqrt() };
            Complex64::from_polar(amplitude, phase)
        })
        .collect();
    let mu_b_m = ds.mu_b()[m];
    b.push(Complex64::new(
        (mu_b_m * (1.0 - c_m * c_m)).max(0.0).sqrt(),
        0.0,
    ));

    let a = ComplexVector::new(a);
    let b = ComplexVector::new(b);
    let overlap = inner_product(&a, &b)?.norm();
    if overlap > ORTHOGONALITY_LIMIT {
        return Err(Error::OrthogonalityFailure(overlap));
    }
    Ok((a, b))
}

/// `M_k` projects on coordinate `k` for `k != m`; `M_m` projects on the plane
/// of coordinates `m` and `n` (the extra dimension). Indices are 0-based.
pub fn build_projectors(n: usize, m: usize) -> Result<Vec<Projector>> {
    if m >= n {
        return Err(Error::IndexOutOfRange { index: m, dim: n });
    }
    (0..n)
        .map(|k| {
            let indices = if k == m { vec![k, n] } else { vec![k] };
            Projector::new(n + 1, indices)
        })
        .collect()
}

/// Absolute reconstruction errors per exemplar.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExemplarResidual {
    pub mu_a: f64,
    pub mu_b: f64,
    pub mu_a_or_b: f64,
}

impl ExemplarResidual {
    pub fn max(&self) -> f64 {
        self.mu_a.max(self.mu_b).max(self.mu_a_or_b)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Residuals(Vec<ExemplarResidual>);

impl Residuals {
    pub fn per_exemplar(&self) -> &[ExemplarResidual] {
        &self.0
    }

    pub fn max(&self) -> f64 {
        self.0.iter().map(ExemplarResidual::max).fold(0.0, f64::max)
    }
}

/// Compares the quantum probabilities of a state pair against the dataset.
/// The disjunction state is `(|A> + |B>) / sqrt(2)`.
pub fn reconstruction_residuals(
    vector_a: &ComplexVector,
    vector_b: &ComplexVector,
    projectors: &[Projector],
    ds: &DisjunctionDataset,
) -> Result<Residuals> {
    if projectors.len() != ds.len() {
        return Err(Error::DimensionMismatch {
            left: ds.len(),
            right: projectors.len(),
        });
    }
    let disjunction = vector_a
        .add(vector_b)?
        .scale(Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0));
    projectors
        .iter()
        .enumerate()
        .map(|(k, p)| {
            Ok(ExemplarResidual {
                mu_a: (project_probability(vector_a, p)? - ds.mu_a()[k]).abs(),
                mu_b: (project_probability(vector_b, p)? - ds.mu_b()[k]).abs(),
                mu_a_or_b: (project_probability(&disjunction, p)? - ds.mu_a_or_b()[k]).abs(),
            })
        })
        .collect::<Result<Vec<_>>>()
        .map(Residuals)
}

pub fn verify_reconstruction(fit: &InterferenceFit, ds: &DisjunctionDataset) -> Result<Residuals> {
    reconstruction_residuals(&fit.vector_a, &fit.vector_b, &fit.projectors, ds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Classification {
    Strengthening,
    Weakening,
    Neutral,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Strengthening => "strengthening",
            Classification::Weakening => "weakening",
            Classification::Neutral => "neutral",
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Sign of the interference term decides the label; `|beta| >= 90°` coincides
/// with weakening wherever the mass product is positive.
pub fn classify_interference(terms: &InterferenceTerms, beta: &[f64]) -> Vec<Classification> {
    debug_assert_eq!(terms.len(), beta.len());
    terms
        .values()
        .iter()
        .map(|&i| {
            if i.abs() <= NEUTRAL_THRESHOLD {
                Classification::Neutral
            } else if i > 0.0 {
                Classification::Strengthening
            } else {
                Classification::Weakening
            }
        })
        .collect()
}

/// How to order exemplars of one class, strongest effect first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EffectOrder {
    /// By `|I_k|`.
    Magnitude,
    /// By distance of `|beta_k|` from 90°, i.e. by `|cos beta_k|`.
    Angle,
}

/// Indices of exemplars labelled `class`, strongest effect first (ties by index).
pub fn rank_by_effect(
    terms: &InterferenceTerms,
    beta: &[f64],
    class: Classification,
    order: EffectOrder,
) -> Vec<usize> {
    let labels = classify_interference(terms, beta);
    let strength = |k: usize| match order {
        EffectOrder::Magnitude => terms.values()[k].abs(),
        EffectOrder::Angle => beta[k].cos().abs(),
    };
    let mut picked: Vec<usize> = (0..labels.len()).filter(|&k| labels[k] == class).collect();
    picked.sort_by(|&i, &j| {
        strength(j)
            .partial_cmp(&strength(i))
            .unwrap_or(Ordering::Equal)
            .then(i.cmp(&j))
    });
    picked
}

/// The reconstructed model of one disjunction dataset.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterferenceFit {
    pub anchor: usize,
    pub terms: InterferenceTerms,
    pub signs: SignAssignment,
    /// Signed `lambda_k`.
    pub lambda: Vec<f64>,
    pub c_m: f64,
    /// Phases in radians, `(-pi, pi]`.
    pub beta: Vec<f64>,
    pub vector_a: ComplexVector,
    pub vector_b: ComplexVector,
    pub projectors: Vec<Projector>,
    pub residuals: Residuals,
}

impl InterferenceFit {
    pub fn theta_degrees(&self) -> Vec<f64> {
        self.beta.iter().map(|b| b.to_degrees()).collect()
    }

    pub fn classifications(&self) -> Vec<Classification> {
        classify_interference(&self.terms, &self.beta)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.max()
    }
}

/// Full pipeline: terms, magnitudes, anchor, signs, `c_m`, phases, vectors,
/// projectors and a reconstruction check.
///
/// Without `signs` the greedy assignment is used. Supplied signs are taken as
/// given; an assignment breaking the anchor bound surfaces as
/// [`Error::ConstraintViolated`].
pub fn fit_disjunction(
    ds: &DisjunctionDataset,
    signs: Option<&SignAssignment>,
) -> Result<InterferenceFit> {
    let terms = interference_terms(ds);
    let lambda_abs = lambda_magnitudes(ds, DEFAULT_CLAMP_EPS)?;
    let anchor = select_anchor(&lambda_abs)?;
    let signs = match signs {
        Some(s) => {
            if s.len() != ds.len() {
                return Err(Error::SignLengthMismatch {
                    expected: ds.len(),
                    got: s.len(),
                });
            }
            s.clone()
        }
        None => assign_signs(&lambda_abs, anchor)?,
    };
    let lambda = signs.apply(&lambda_abs)?;
    let c_m = compute_cm(ds, &terms, &lambda, anchor)?;
    let beta = compute_phases(ds, &terms, &lambda, anchor, c_m)?;
    let (vector_a, vector_b) = build_state_vectors(ds, anchor, c_m, &beta)?;
    let projectors = build_projectors(ds.len(), anchor)?;
    let residuals = reconstruction_residuals(&vector_a, &vector_b, &projectors, ds)?;
    Ok(InterferenceFit {
        anchor,
        terms,
        signs,
        lambda,
        c_m,
        beta,
        vector_a,
        vector_b,
        projectors,
        residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{validate_dataset, RawDataset};

    fn dataset(rows: &[(f64, f64, f64)]) -> DisjunctionDataset {
        validate_dataset(
            RawDataset {
                exemplars: (0..rows.len()).map(|i| format!("x{i}")).collect(),
                mu_a: rows.iter().map(|r| r.0).collect(),
                mu_b: rows.iter().map(|r| r.1).collect(),
                mu_a_or_b: rows.iter().map(|r| r.2).collect(),
            },
            1.0,
        )
        .unwrap()
    }

    fn orthogonal_supports() -> DisjunctionDataset {
        dataset(&[(1.0, 0.0, 0.5), (0.0, 1.0, 0.5)])
    }

    #[test]
    fn classical_average_has_zero_interference() {
        let ds = dataset(&[(0.2, 0.4, 0.3), (0.8, 0.6, 0.7)]);
        let terms = interference_terms(&ds);
        for &i in terms.values() {
            assert!(i.abs() < 1e-15);
        }
    }

    #[test]
    fn zero_product_row_has_zero_lambda() {
        let ds = dataset(&[(0.0, 0.5, 0.25), (1.0, 0.5, 0.75)]);
        let l = lambda_magnitudes(&ds, DEFAULT_CLAMP_EPS).unwrap();
        assert_eq!(l[0], 0.0);
    }

    #[test]
    fn unrepresentable_row_is_rejected() {
        // |I_0| = 0.45 > sqrt(0.05 * 0.05)
        let ds = dataset(&[(0.05, 0.05, 0.5), (0.95, 0.95, 0.5)]);
        assert!(matches!(
            lambda_magnitudes(&ds, DEFAULT_CLAMP_EPS),
            Err(Error::NotRepresentable { index: 0, .. })
        ));
        assert!(matches!(
            fit_disjunction(&ds, None),
            Err(Error::NotRepresentable { .. })
        ));
    }

    #[test]
    fn anchor_selection() {
        assert_eq!(select_anchor(&[0.1, 0.3, 0.2]).unwrap(), 1);
        assert_eq!(select_anchor(&[0.2, 0.2, 0.2]).unwrap(), 0);
        assert_eq!(select_anchor(&[]), Err(Error::EmptyInput));
    }

    #[test]
    fn greedy_signs_small_cases() {
        let s = assign_signs(&[0.3, 0.2, 0.15], 0).unwrap();
        let lambda = s.apply(&[0.3, 0.2, 0.15]).unwrap();
        let rest = lambda[1] + lambda[2];
        assert!((rest.abs() - 0.05).abs() < 1e-15);
        assert_eq!(s.signs()[0], Sign::Plus);
        assert_eq!(s.source(), SignSource::Greedy);

        // exhaustive check: 0.05 is the best any pattern can do
        let best = [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
            .iter()
            .map(|(a, b)| (a * 0.2 + b * 0.15_f64).abs())
            .fold(f64::INFINITY, f64::min);
        assert!((best - 0.05).abs() < 1e-15);

        let s = assign_signs(&[0.2, 0.1], 0).unwrap();
        assert_eq!(s.signs(), &[Sign::Plus, Sign::Minus]);
    }

    #[test]
    fn greedy_rejects_non_maximal_anchor() {
        assert!(matches!(
            assign_signs(&[0.1, 0.3], 0),
            Err(Error::AnchorNotMaximal { index: 1, .. })
        ));
        assert!(assign_signs(&[0.1, 0.3], 2).is_err());
    }

    #[test]
    fn cm_zero_numerator() {
        let ds = dataset(&[(0.5, 0.5, 0.5), (0.5, 0.5, 0.5)]);
        let terms = interference_terms(&ds);
        assert_eq!(compute_cm(&ds, &terms, &[0.5, 0.0], 0).unwrap(), 0.0);
    }

    #[test]
    fn cm_rejects_bad_user_signs() {
        let ds = dataset(&[(0.5, 0.5, 0.5), (0.25, 0.25, 0.25), (0.25, 0.25, 0.25)]);
        let terms = interference_terms(&ds);
        // lambdas (0.5, 0.25, 0.25): both non-anchors positive sum to 0.5 = |lambda_m|, ok
        assert!((compute_cm(&ds, &terms, &[0.5, 0.25, 0.25], 0).unwrap() - 1.0).abs() < 1e-12);
        assert!(matches!(
            compute_cm(&ds, &terms, &[0.5, 0.25, 0.3], 0),
            Err(Error::ConstraintViolated(_))
        ));
    }

    #[test]
    fn cm_zero_anchor_mass() {
        let ds = orthogonal_supports();
        let terms = interference_terms(&ds);
        assert_eq!(compute_cm(&ds, &terms, &[0.0, 0.0], 0).unwrap(), 0.0);
        assert_eq!(
            compute_cm(&ds, &terms, &[0.0, 0.3], 0),
            Err(Error::ZeroAnchorMass)
        );
    }

    #[test]
    fn phase_of_zero_interference_is_right_angle() {
        let ds = dataset(&[(0.5, 0.5, 0.5), (0.3, 0.3, 0.3), (0.2, 0.2, 0.2)]);
        let terms = interference_terms(&ds);
        let l = lambda_magnitudes(&ds, DEFAULT_CLAMP_EPS).unwrap();
        let lambda = vec![l[0], l[1], -l[2]];
        let c = compute_cm(&ds, &terms, &lambda, 0).unwrap();
        let beta = compute_phases(&ds, &terms, &lambda, 0, c).unwrap();
        assert!((beta[1].to_degrees() - 90.0).abs() < 1e-12);
        assert!((beta[2].to_degrees() + 90.0).abs() < 1e-12);
    }

    #[test]
    fn zero_mass_with_interference_is_not_representable() {
        let ds = dataset(&[(0.5, 0.5, 0.5), (0.5, 0.0, 0.3), (0.0, 0.5, 0.2)]);
        let terms = interference_terms(&ds);
        assert!(matches!(
            compute_phases(&ds, &terms, &[0.5, 0.0, 0.0], 0, 0.5),
            Err(Error::NotRepresentable { index: 1, .. })
        ));
    }

    #[test]
    fn orthogonal_support_dataset() {
        let ds = orthogonal_supports();
        let fit = fit_disjunction(&ds, None).unwrap();
        assert_eq!(fit.terms.values(), &[0.0, 0.0]);
        assert_eq!(
            fit.lambda.iter().map(|l| l.abs()).collect::<Vec<_>>(),
            vec![0.0, 0.0]
        );
        assert_eq!(fit.c_m, 0.0);
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        assert_eq!(fit.vector_a.components(), &[one, zero, zero]);
        assert_eq!(fit.vector_b.components(), &[zero, one, zero]);
        assert!(fit.max_residual() <= 1e-15);
    }

    #[test]
    fn projector_family() {
        let p = build_projectors(24, 18).unwrap();
        assert_eq!(p[18].basis_indices(), &[18, 24]);
        let p = build_projectors(2, 0).unwrap();
        assert_eq!(p[0].basis_indices(), &[0, 2]);
        assert_eq!(p[1].basis_indices(), &[1]);
        assert_eq!(
            build_projectors(2, 2),
            Err(Error::IndexOutOfRange { index: 2, dim: 2 })
        );

        let mut all: Vec<usize> = build_projectors(7, 3)
            .unwrap()
            .iter()
            .flat_map(|p| p.basis_indices().to_vec())
            .collect();
        all.sort_unstable();
        assert_eq!(all, (0..8).collect::<Vec<_>>());
    }

    #[test]
    fn uniform_dataset() {
        let n = 6;
        let u = 1.0 / n as f64;
        let ds = dataset(&vec![(u, u, u); n]);
        let fit = fit_disjunction(&ds, None).unwrap();
        for &b in &fit.beta {
            assert!((b.abs().to_degrees() - 90.0).abs() < 1e-9);
        }
        assert!(fit.max_residual() < 1e-12);
        assert!(fit
            .classifications()
            .iter()
            .all(|&c| c == Classification::Neutral));
    }

    #[test]
    fn wrong_sign_length() {
        let ds = orthogonal_supports();
        let s = SignAssignment::user_supplied(vec![Sign::Plus]);
        assert_eq!(
            fit_disjunction(&ds, Some(&s)),
            Err(Error::SignLengthMismatch {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn classification_labels() {
        let terms = InterferenceTerms(vec![0.01, -0.02, 0.0, 0.03]);
        let beta = [1.0, 2.0, 1.5, 0.5];
        let c = classify_interference(&terms, &beta);
        assert_eq!(
            c,
            vec![
                Classification::Strengthening,
                Classification::Weakening,
                Classification::Neutral,
                Classification::Strengthening
            ]
        );
        assert_eq!(
            rank_by_effect(
                &terms,
                &beta,
                Classification::Strengthening,
                EffectOrder::Magnitude
            ),
            vec![3, 0]
        );
    }
}
