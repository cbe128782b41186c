//! CHSH statistics from coincidence counts, and the product model built from
//! single-experiment marginals.
//!
//! Outcome 1 of each experiment is the first-listed exemplar (e.g. Horse for
//! `A`, Growls for `B`) and scores `+1`; outcome 2 scores `-1`. Counts are taken
//! at face value: a document matching several expressions counts once in each.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest deviation from 1 accepted for a probability table's sum.
const NORMALIZATION_TOLERANCE: f64 = 1e-9;

/// Rounding slack on `[-1, 1]` range checks.
const RANGE_SLACK: f64 = 1e-12;

/// The CHSH bound for local (factorizable) models.
pub const CLASSICAL_BOUND: f64 = 2.0;

/// The four coincidence experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Experiment {
    AB,
    ApB,
    ABp,
    ApBp,
}

impl Experiment {
    pub const ALL: [Experiment; 4] = [
        Experiment::AB,
        Experiment::ApB,
        Experiment::ABp,
        Experiment::ApBp,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Experiment::AB => "AB",
            Experiment::ApB => "ApB",
            Experiment::ABp => "ABp",
            Experiment::ApBp => "ApBp",
        }
    }

    /// The single experiments combined in this coincidence experiment.
    pub fn observables(self) -> (Observable, Observable) {
        match self {
            Experiment::AB => (Observable::A, Observable::B),
            Experiment::ApB => (Observable::Ap, Observable::B),
            Experiment::ABp => (Observable::A, Observable::Bp),
            Experiment::ApBp => (Observable::Ap, Observable::Bp),
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Experiment::AB => "AB",
            Experiment::ApB => "A'B",
            Experiment::ABp => "AB'",
            Experiment::ApBp => "A'B'",
        })
    }
}

/// The four single experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Observable {
    A,
    Ap,
    B,
    Bp,
}

impl Observable {
    pub const ALL: [Observable; 4] = [Observable::A, Observable::Ap, Observable::B, Observable::Bp];

    pub fn key(self) -> &'static str {
        match self {
            Observable::A => "A",
            Observable::Ap => "Ap",
            Observable::B => "B",
            Observable::Bp => "Bp",
        }
    }
}

impl fmt::Display for Observable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Observable::A => "A",
            Observable::Ap => "A'",
            Observable::B => "B",
            Observable::Bp => "B'",
        })
    }
}

/// 2x2 count table of one coincidence experiment.
///
/// `counts[i][j]` counts outcome `i+1` of the first observable together with
/// outcome `j+1` of the second.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoincidenceCounts {
    pub experiment: Experiment,
    pub row_labels: [String; 2],
    pub col_labels: [String; 2],
    pub counts: [[u64; 2]; 2],
}

impl CoincidenceCounts {
    pub fn new(experiment: Experiment, counts: [[u64; 2]; 2]) -> Self {
        Self {
            experiment,
            row_labels: ["1".into(), "2".into()],
            col_labels: ["1".into(), "2".into()],
            counts,
        }
    }

    pub fn with_labels(mut self, rows: [&str; 2], cols: [&str; 2]) -> Self {
        self.row_labels = rows.map(str::to_owned);
        self.col_labels = cols.map(str::to_owned);
        self
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }
}

/// The four coincidence tables, in `AB, A'B, AB', A'B'` order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoincidenceSet {
    tables: [CoincidenceCounts; 4],
}

impl CoincidenceSet {
    /// Tables may arrive in any order but each experiment must appear once.
    pub fn new(tables: [CoincidenceCounts; 4]) -> Result<Self> {
        let mut tables = tables;
        tables.sort_by_key(|t| t.experiment);
        for (t, e) in tables.iter().zip(Experiment::ALL) {
            if t.experiment != e {
                return Err(Error::Parse(format!(
                    "coincidence set needs exactly one table per experiment, missing {e}"
                )));
            }
        }
        Ok(Self { tables })
    }

    pub fn tables(&self) -> &[CoincidenceCounts; 4] {
        &self.tables
    }

    pub fn get(&self, e: Experiment) -> &CoincidenceCounts {
        &self.tables[e as usize]
    }
}

/// Joint probabilities `P(X_i, Y_j)` of one coincidence experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ProbabilityTable(pub [[f64; 2]; 2]);

impl ProbabilityTable {
    pub fn sum(&self) -> f64 {
        self.0.iter().flatten().sum()
    }
}

/// `P_ij = n_ij / total`, each page equally likely.
pub fn probabilities_from_counts(c: &CoincidenceCounts) -> Result<ProbabilityTable> {
    let total = c.total();
    if total == 0 {
        return Err(Error::EmptyTable(c.experiment));
    }
    let total = total as f64;
    Ok(ProbabilityTable(
        c.counts.map(|row| row.map(|n| n as f64 / total)),
    ))
}

/// `E = P11 + P22 - P21 - P12`.
pub fn expectation_value(p: &ProbabilityTable) -> Result<f64> {
    let sum = p.sum();
    if (sum - 1.0).abs() > NORMALIZATION_TOLERANCE {
        return Err(Error::NotNormalized(sum));
    }
    let [[p11, p12], [p21, p22]] = p.0;
    Ok(p11 + p22 - p21 - p12)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Violates,
    Satisfies,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Violates => "violates",
            Verdict::Satisfies => "satisfies",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChshStatistic {
    pub s: f64,
    pub verdict: Verdict,
}

fn check_unit_range(x: f64) -> bool {
    x.is_finite() && x.abs() <= 1.0 + RANGE_SLACK
}

/// `S = E(A'B') + E(A'B) + E(AB') - E(AB)`; violation iff `|S| > 2`.
pub fn chsh_statistic(e_ab: f64, e_apb: f64, e_abp: f64, e_apbp: f64) -> Result<ChshStatistic> {
    for e in [e_ab, e_apb, e_abp, e_apbp] {
        if !check_unit_range(e) {
            return Err(Error::OutOfRangeExpectation(e));
        }
    }
    let s = e_apbp + e_apb + e_abp - e_ab;
    let verdict = if s.abs() > CLASSICAL_BOUND {
        Verdict::Violates
    } else {
        Verdict::Satisfies
    };
    Ok(ChshStatistic { s, verdict })
}

/// Probabilities and expectation of one experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub experiment: Experiment,
    pub probabilities: ProbabilityTable,
    pub expectation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChshReport {
    /// `AB, A'B, AB', A'B'` order.
    pub experiments: [ExperimentResult; 4],
    pub s: f64,
    pub verdict: Verdict,
}

impl ChshReport {
    pub fn expectation(&self, e: Experiment) -> f64 {
        self.experiments[e as usize].expectation
    }

    fn from_results(experiments: [ExperimentResult; 4]) -> Result<Self> {
        let stat = chsh_statistic(
            experiments[0].expectation,
            experiments[1].expectation,
            experiments[2].expectation,
            experiments[3].expectation,
        )?;
        Ok(Self {
            experiments,
            s: stat.s,
            verdict: stat.verdict,
        })
    }
}

/// Runs the four count tables through probabilities, expectations and `S`.
pub fn chsh_from_counts(set: &CoincidenceSet) -> Result<ChshReport> {
    let mut results = Vec::with_capacity(4);
    for table in set.tables() {
        let probabilities = probabilities_from_counts(table)?;
        let expectation = expectation_value(&probabilities)?;
        results.push(ExperimentResult {
            experiment: table.experiment,
            probabilities,
            expectation,
        });
    }
    ChshReport::from_results(results.try_into().expect("four experiments"))
}

/// Outcome counts of one single experiment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarginalPair {
    pub labels: [String; 2],
    pub counts: [u64; 2],
}

impl MarginalPair {
    pub fn new(labels: [&str; 2], counts: [u64; 2]) -> Self {
        Self {
            labels: labels.map(str::to_owned),
            counts,
        }
    }
}

/// Marginal counts of `A`, `A'`, `B`, `B'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarginalCounts {
    #[serde(rename = "A")]
    pub a: MarginalPair,
    #[serde(rename = "Ap")]
    pub a_prime: MarginalPair,
    #[serde(rename = "B")]
    pub b: MarginalPair,
    #[serde(rename = "Bp")]
    pub b_prime: MarginalPair,
}

impl MarginalCounts {
    pub fn get(&self, o: Observable) -> &MarginalPair {
        match o {
            Observable::A => &self.a,
            Observable::Ap => &self.a_prime,
            Observable::B => &self.b,
            Observable::Bp => &self.b_prime,
        }
    }
}

/// Single-experiment probabilities and expectation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MarginalResult {
    pub observable: Observable,
    pub probabilities: [f64; 2],
    pub expectation: f64,
}

/// Factorized ("separated sources") model: `P(X_i, Y_j) = P(X_i) P(Y_j)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProductModel {
    /// `A, A', B, B'` order.
    pub marginals: [MarginalResult; 4],
    pub report: ChshReport,
}

pub fn product_expectations(m: &MarginalCounts) -> Result<ProductModel> {
    let marginal = |o: Observable| -> Result<MarginalResult> {
        let pair = m.get(o);
        let total = pair.counts[0] + pair.counts[1];
        if total == 0 {
            return Err(Error::EmptyMarginal(o));
        }
        let p1 = pair.counts[0] as f64 / total as f64;
        let p2 = pair.counts[1] as f64 / total as f64;
        Ok(MarginalResult {
            observable: o,
            probabilities: [p1, p2],
            expectation: p1 - p2,
        })
    };
    let marginals = [
        marginal(Observable::A)?,
        marginal(Observable::Ap)?,
        marginal(Observable::B)?,
        marginal(Observable::Bp)?,
    ];
    let by = |o: Observable| marginals[Observable::ALL.iter().position(|&x| x == o).unwrap()];

    let experiments = Experiment::ALL.map(|e| {
        let (x, y) = e.observables();
        let (x, y) = (by(x), by(y));
        let probabilities =
            ProbabilityTable(x.probabilities.map(|px| y.probabilities.map(|py| px * py)));
        ExperimentResult {
            experiment: e,
            probabilities,
            expectation: x.expectation * y.expectation,
        }
    });
    Ok(ProductModel {
        marginals,
        report: ChshReport::from_results(experiments)?,
    })
}

/// Evaluates `S = x y + x y' + x' y - x' y'` and reports whether it lies in
/// `[-2, 2]`. For inputs in `[-1, 1]` it always does, since the extremes of
/// this multilinear form sit at the corners where
/// `S = (x + x')(y + y') - 2 x' y'` takes only the values `-2, 0, 2`.
pub fn check_chsh_bound(x: f64, x_prime: f64, y: f64, y_prime: f64) -> Result<bool> {
    for v in [x, x_prime, y, y_prime] {
        if !check_unit_range(v) {
            return Err(Error::OutOfRange(v));
        }
    }
    Ok(chsh_form(x, x_prime, y, y_prime).abs() <= CLASSICAL_BOUND + RANGE_SLACK)
}

pub fn chsh_form(x: f64, x_prime: f64, y: f64, y_prime: f64) -> f64 {
    x * y + x * y_prime + x_prime * y - x_prime * y_prime
}
