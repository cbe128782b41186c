#![allow(dead_code)]

use qcog_core::bell::{CoincidenceSet, Experiment};
use qcog_core::corpus::{Corpus, Document};
use qcog_core::model::{validate_dataset, DisjunctionDataset, RawDataset};
use rand::Rng;

/// Probability vector drawn uniformly from the simplex.
pub fn random_simplex<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let draws: Vec<f64> = (0..n).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
    let sum: f64 = draws.iter().sum();
    draws.into_iter().map(|d| d / sum).collect()
}

/// Shifts `t` towards zero sum while keeping each entry inside `±bound`.
fn project_to_zero_sum(t: &mut [f64], bound: &[f64]) -> bool {
    for _ in 0..200 {
        let r: f64 = t.iter().sum();
        if r.abs() < 1e-16 {
            return true;
        }
        let room: Vec<usize> = (0..t.len())
            .filter(|&k| {
                if r > 0.0 {
                    t[k] > -bound[k]
                } else {
                    t[k] < bound[k]
                }
            })
            .collect();
        if room.is_empty() {
            return false;
        }
        let shift = r / room.len() as f64;
        for k in room {
            t[k] = (t[k] - shift).clamp(-bound[k], bound[k]);
        }
    }
    t.iter().sum::<f64>().abs() < 1e-15
}

/// A dataset that admits the Hilbert-space construction: `mu(A)`, `mu(B)`
/// uniform on the simplex, interference terms within 90% of
/// `sqrt(mu(A) mu(B))` and summing to zero.
pub fn random_representable_dataset<R: Rng>(rng: &mut R, n: usize) -> DisjunctionDataset {
    loop {
        let a = random_simplex(rng, n);
        let b = random_simplex(rng, n);
        let bound: Vec<f64> = a
            .iter()
            .zip(&b)
            .map(|(x, y)| 0.9 * (x * y).sqrt())
            .collect();
        let mut t: Vec<f64> = bound
            .iter()
            .map(|&c| rng.gen_range(-1.0..=1.0) * c)
            .collect();
        if !project_to_zero_sum(&mut t, &bound) {
            continue;
        }
        let ab: Vec<f64> = (0..n).map(|k| 0.5 * (a[k] + b[k]) + t[k]).collect();
        if ab.iter().any(|&p| p < 0.0) {
            continue;
        }
        let raw = RawDataset {
            exemplars: (0..n).map(|k| format!("item{k}")).collect(),
            mu_a: a,
            mu_b: b,
            mu_a_or_b: ab,
        };
        return validate_dataset(raw, 1e-6).expect("generated dataset validates");
    }
}

/// A corpus holding `n_ij` copies of a sentence with each grid phrase.
pub fn synthetic_coincidence_corpus(set: &CoincidenceSet) -> Corpus {
    let mut docs = Vec::new();
    for table in set.tables() {
        for (i, subject) in table.row_labels.iter().enumerate() {
            for (j, verb) in table.col_labels.iter().enumerate() {
                for copy in 0..table.counts[i][j] {
                    docs.push(Document::new(
                        format!("{}-{i}{j}-{copy:06}", table.experiment.key()),
                        format!("The {subject} {verb}."),
                    ));
                }
            }
        }
    }
    Corpus::from_documents(docs).expect("unique ids")
}

pub fn experiment_index(e: Experiment) -> usize {
    Experiment::ALL.iter().position(|&x| x == e).unwrap()
}

/// Published values for the 24-exemplar dataset, in row order.
pub mod printed {
    pub const LAMBDA: [f64; 24] = [
        0.0218, -0.0214, -0.0285, 0.0397, 0.0261, 0.0415, -0.0404, 0.0428, -0.0186, 0.0183, 0.0173,
        -0.0272, -0.0147, 0.0088, -0.0254, 0.0252, -0.0503, 0.0615, 0.0768, -0.0733, -0.0422,
        -0.0238, -0.0178, 0.0193,
    ];

    pub const THETA_DEG: [f64; 24] = [
        83.8854, -94.5520, -95.3620, 91.8715, 57.9533, 95.8648, -113.2431, 87.6039, -105.9806,
        99.3810, 50.0889, -86.4374, -57.6399, 18.6744, -69.0705, 104.7126, -95.6518, 98.0833,
        100.7557, -103.4804, -99.6048, -96.6635, -61.1698, 86.6308,
    ];

    pub const VECTOR_A: [f64; 25] = [
        0.1895, 0.2061, 0.1929, 0.2421, 0.2748, 0.3204, 0.3373, 0.3441, 0.1222, 0.1165, 0.1252,
        0.1291, 0.1002, 0.1182, 0.1059, 0.0974, 0.1800, 0.2308, 0.2967, 0.2823, 0.1194, 0.1181,
        0.1245, 0.1128, 0.0,
    ];

    /// Moduli of the first 24 components of `|B>`; the anchor entry is not
    /// consistent with the printed last component and is not compared.
    pub const VECTOR_B_MODULI: [f64; 24] = [
        0.1154, 0.1040, 0.1484, 0.1640, 0.1120, 0.1302, 0.1302, 0.1246, 0.1580, 0.1596, 0.1798,
        0.2112, 0.1734, 0.2334, 0.2565, 0.2670, 0.2806, 0.2690, 0.2606, 0.2670, 0.3584, 0.2031,
        0.1630, 0.1716,
    ];

    pub const VECTOR_B_LAST: f64 = 0.1565;

    /// 0-based index of Tomato.
    pub const ANCHOR: usize = 18;
}
