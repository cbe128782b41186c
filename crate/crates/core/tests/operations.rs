//! Worked examples for each operation, on the bundled datasets.

mod common;

use common::printed;
use qcog_core::bell::{self, Experiment, Verdict};
use qcog_core::corpus::{self, Corpus, CorpusFormat, Document, PhraseQuery};
use qcog_core::datasets;
use qcog_core::fit::{self, Classification, EffectOrder, Sign, SignSource};
use qcog_core::formats;
use qcog_core::slit::{self, Slit, SlitConfig};
use qcog_core::Error;

const ALMOND: usize = 0;
const ELDERBERRY: usize = 6;
const MUSHROOM: usize = 13;

#[test]
fn table_dataset_validates_with_default_tolerance() {
    let raw = formats::parse_dataset_csv(datasets::FRUITS_VEGETABLES_CSV).unwrap();
    for col in [&raw.mu_a, &raw.mu_b, &raw.mu_a_or_b] {
        let sum: f64 = col.iter().sum();
        assert!((sum - 1.0).abs() > 0.0 && (sum - 1.0).abs() < 1e-3);
    }
    let ds = datasets::fruits_vegetables();
    for col in [ds.mu_a(), ds.mu_b(), ds.mu_a_or_b()] {
        assert!((col.iter().sum::<f64>() - 1.0).abs() < 1e-15);
    }
}

#[test]
fn interference_terms_match_row_arithmetic() {
    // oracle: plain arithmetic on the rounded rows
    let raw = formats::parse_dataset_csv(datasets::FRUITS_VEGETABLES_CSV).unwrap();
    let row_term = |k: usize| raw.mu_a_or_b[k] - 0.5 * (raw.mu_a[k] + raw.mu_b[k]);
    assert!((row_term(ALMOND) - 0.0023).abs() < 1e-12);
    assert!((row_term(ELDERBERRY) + 0.0174).abs() < 1e-12);

    let terms = fit::interference_terms(&datasets::fruits_vegetables());
    for k in 0..24 {
        assert!((terms.values()[k] - row_term(k)).abs() < 5e-5, "row {k}");
    }
    assert!(terms.values().iter().sum::<f64>().abs() < 1e-9);
}

#[test]
fn lambda_magnitudes_and_anchor() {
    let ds = datasets::fruits_vegetables();
    let l = fit::lambda_magnitudes(&ds, fit::DEFAULT_CLAMP_EPS).unwrap();
    assert!((l[ALMOND] - 0.0218).abs() < 2e-3);
    assert!((l[ALMOND] - 0.0217).abs() < 1e-4);
    assert!((l[ELDERBERRY] - 0.0404).abs() < 2e-3);
    assert_eq!(fit::select_anchor(&l).unwrap(), printed::ANCHOR);
    assert_eq!(ds.exemplars()[printed::ANCHOR], "Tomato");
}

#[test]
fn greedy_signs_on_table() {
    let ds = datasets::fruits_vegetables();
    let l = fit::lambda_magnitudes(&ds, fit::DEFAULT_CLAMP_EPS).unwrap();
    let s = fit::assign_signs(&l, printed::ANCHOR).unwrap();
    assert_eq!(s.source(), SignSource::Greedy);
    let lambda = s.apply(&l).unwrap();
    let rest: f64 = (0..24)
        .filter(|&k| k != printed::ANCHOR)
        .map(|k| lambda[k])
        .sum();
    assert!(rest.abs() <= 0.0768);
    assert!(rest.abs() <= l[printed::ANCHOR]);
}

#[test]
fn cm_with_printed_signs() {
    let ds = datasets::fruits_vegetables();
    let signs = datasets::fruits_vegetables_signs(&ds).unwrap();
    for (s, p) in signs.signs().iter().zip(printed::LAMBDA) {
        assert_eq!(*s == Sign::Plus, p > 0.0);
    }
    let fit = fit::fit_disjunction(&ds, Some(&signs)).unwrap();
    assert!((fit.c_m - 0.800).abs() < 5e-3, "c_m = {}", fit.c_m);
    let m = fit.anchor;
    let last = (ds.mu_b()[m] * (1.0 - fit.c_m * fit.c_m)).sqrt();
    assert!((last - printed::VECTOR_B_LAST).abs() < 5e-3);
}

#[test]
fn phases_with_printed_signs() {
    let ds = datasets::fruits_vegetables();
    let signs = datasets::fruits_vegetables_signs(&ds).unwrap();
    let fit = fit::fit_disjunction(&ds, Some(&signs)).unwrap();
    let theta = fit.theta_degrees();
    assert!((theta[ALMOND] - 83.96).abs() < 0.05);
    assert!((theta[ALMOND] - printed::THETA_DEG[ALMOND]).abs() < 0.5);
    assert!((theta[ELDERBERRY] + 113.31).abs() < 0.05);
    assert!((theta[ELDERBERRY] - printed::THETA_DEG[ELDERBERRY]).abs() < 0.5);
    for k in (0..24).filter(|&k| k != fit.anchor) {
        assert!(
            (theta[k] - printed::THETA_DEG[k]).abs() < 0.5,
            "row {k}: {}",
            theta[k]
        );
    }
    // anchor angle: cosine and sine both honoured, ~98.5 degrees on rounded data
    let m = fit.anchor;
    assert!((theta[m] - 98.5).abs() < 0.5);
}

#[test]
fn state_vectors_match_displayed_components() {
    let ds = datasets::fruits_vegetables();
    let fit = fit::fit_disjunction(&ds, None).unwrap();
    let a = fit.vector_a.components();
    for (got, want) in a.iter().zip(printed::VECTOR_A).take(3) {
        assert!((got.re - want).abs() < 5e-4);
        assert_eq!(got.im, 0.0);
    }
    assert!((fit.vector_b.components()[ALMOND].norm() - 0.1154).abs() < 5e-4);
    assert_eq!(fit.vector_a.dim(), 25);
    assert_eq!(fit.projectors[fit.anchor].basis_indices(), &[18, 24]);
}

#[test]
fn reconstruction_on_table() {
    let ds = datasets::fruits_vegetables();
    let fit = fit::fit_disjunction(&ds, None).unwrap();
    assert!(fit.max_residual() <= 1e-9);
    let again = fit::verify_reconstruction(&fit, &ds).unwrap();
    assert_eq!(again, fit.residuals);

    // classical average plus the fitted interference term gives the observed 0.0269
    let b = &fit.vector_b;
    let p = &fit.projectors[ALMOND];
    let cross = p.matrix_element(&fit.vector_a, b).unwrap().re;
    let predicted = 0.5 * (ds.mu_a()[ALMOND] + ds.mu_b()[ALMOND]) + cross;
    assert!((predicted - ds.mu_a_or_b()[ALMOND]).abs() < 1e-12);
    assert!((predicted - 0.0269).abs() < 5e-5);
}

#[test]
fn extreme_interference_effects() {
    let ds = datasets::fruits_vegetables();
    let signs = datasets::fruits_vegetables_signs(&ds).unwrap();
    let fit = fit::fit_disjunction(&ds, Some(&signs)).unwrap();
    let labels = fit.classifications();
    assert_eq!(labels[ELDERBERRY], Classification::Weakening);
    assert_eq!(labels[MUSHROOM], Classification::Strengthening);

    let weakening = fit::rank_by_effect(
        &fit.terms,
        &fit.beta,
        Classification::Weakening,
        EffectOrder::Angle,
    );
    let strengthening = fit::rank_by_effect(
        &fit.terms,
        &fit.beta,
        Classification::Strengthening,
        EffectOrder::Angle,
    );
    assert_eq!(weakening[0], ELDERBERRY);
    assert_eq!(strengthening[0], MUSHROOM);
    assert_eq!(weakening.len() + strengthening.len(), 24);
    // by raw magnitude Mushroom still leads, Pumpkin edges out Elderberry
    let by_size = fit::rank_by_effect(
        &fit.terms,
        &fit.beta,
        Classification::Strengthening,
        EffectOrder::Magnitude,
    );
    assert_eq!(by_size[0], MUSHROOM);
}

#[test]
fn weakening_iff_obtuse_phase() {
    let ds = datasets::fruits_vegetables();
    let fit = fit::fit_disjunction(&ds, None).unwrap();
    for (label, b) in fit.classifications().iter().zip(&fit.beta) {
        match label {
            Classification::Weakening => assert!(b.abs().to_degrees() >= 90.0),
            Classification::Strengthening => assert!(b.abs().to_degrees() < 90.0),
            Classification::Neutral => unreachable!(),
        }
    }
}

#[test]
fn supplied_signs_breaking_the_bound() {
    let ds = datasets::fruits_vegetables();
    let all_plus = fit::SignAssignment::user_supplied(vec![Sign::Plus; 24]);
    assert!(matches!(
        fit::fit_disjunction(&ds, Some(&all_plus)),
        Err(Error::ConstraintViolated(_))
    ));
}

#[test]
fn coincidence_expectations() {
    let set = datasets::animal_acts_counts();
    let p = bell::probabilities_from_counts(set.get(Experiment::AB)).unwrap();
    assert!((p.0[0][0] - 670.0 / 51125.0).abs() < 1e-15);
    assert!((p.0[0][0] - 0.0131).abs() < 5e-5);
    let report = bell::chsh_from_counts(&set).unwrap();
    assert!((report.expectation(Experiment::AB) + 0.9736).abs() < 5e-5);
    assert!((report.expectation(Experiment::ApB) - 0.3702).abs() < 5e-5);
    assert!((report.s - 2.8722).abs() < 1e-4);
    assert_eq!(report.verdict, Verdict::Violates);
}

#[test]
fn product_model_values() {
    let m = datasets::animal_acts_marginals();
    let model = bell::product_expectations(&m).unwrap();
    assert!((model.marginals[0].probabilities[0] - 0.4899).abs() < 5e-5);
    assert!((model.report.expectation(Experiment::AB) + 0.0186).abs() < 5e-5);
    assert!((model.report.expectation(Experiment::ApB) + 0.6807).abs() < 5e-5);
    assert!((model.report.s + 0.7575).abs() < 1e-4);
    assert_eq!(model.report.verdict, Verdict::Satisfies);
    for e in &model.report.experiments {
        assert!((e.probabilities.sum() - 1.0).abs() < 1e-12);
        let p = e.probabilities;
        let from_table = bell::expectation_value(&p).unwrap();
        assert!((from_table - e.expectation).abs() < 1e-12);
    }
}

#[test]
fn load_corpus_from_directory_and_lines() {
    let dir = tempfile::tempdir().unwrap();
    for (name, body) in [
        ("b.txt", "bear growls"),
        ("a.txt", "horse whinnies"),
        ("c.txt", "cat"),
    ] {
        std::fs::write(dir.path().join(name), body).unwrap();
    }
    std::fs::write(dir.path().join("ignored.md"), "horse growls").unwrap();
    let c = corpus::load_corpus(dir.path(), CorpusFormat::OneDocPerFile).unwrap();
    assert_eq!(c.len(), 3);
    let ids: Vec<&str> = c.documents().iter().map(Document::id).collect();
    assert_eq!(ids, vec!["a.txt", "b.txt", "c.txt"]);

    let file = dir.path().join("lines.txt");
    std::fs::write(&file, "one\ntwo\nthree\nfour\nfive\n").unwrap();
    let c = corpus::load_corpus(&file, CorpusFormat::OneDocPerLine).unwrap();
    let ids: Vec<&str> = c.documents().iter().map(Document::id).collect();
    assert_eq!(ids, vec!["1", "2", "3", "4", "5"]);

    std::fs::write(&file, b"horse \xff growls\n").unwrap();
    let c = corpus::load_corpus(&file, CorpusFormat::OneDocPerLine).unwrap();
    assert!(c.documents()[0].body().contains('\u{fffd}'));

    assert!(matches!(
        corpus::load_corpus(dir.path().join("missing"), CorpusFormat::OneDocPerFile),
        Err(Error::Io { .. })
    ));
    let empty = tempfile::tempdir().unwrap();
    assert!(matches!(
        corpus::load_corpus(empty.path(), CorpusFormat::OneDocPerFile),
        Err(Error::EmptyCorpus(_))
    ));
}

#[test]
fn phrase_matching_every_document() {
    let c = Corpus::from_documents(vec![
        Document::new("1", "a horse growls"),
        Document::new("2", "HORSE GROWLS!"),
    ])
    .unwrap();
    let q = PhraseQuery::parse("horse growls").unwrap();
    assert_eq!(corpus::count_documents_with_phrase(&c, &q), c.len() as u64);
}

#[test]
fn synthetic_corpus_reproduces_coincidence_tables() {
    let set = datasets::animal_acts_counts();
    let c = common::synthetic_coincidence_corpus(&set);
    let built = corpus::build_coincidence_counts(&c, &datasets::animal_acts_grid()).unwrap();
    assert_eq!(built, set);
}

#[test]
fn scaled_marginal_corpus() {
    // one document per word; subjects scaled down by 1e6, verbs by 1e3
    let m = datasets::animal_acts_marginals();
    let mut docs = Vec::new();
    for (pair, scale) in [
        (&m.a, 1e6),
        (&m.a_prime, 1e6),
        (&m.b, 1e3),
        (&m.b_prime, 1e3),
    ] {
        for (label, &count) in pair.labels.iter().zip(&pair.counts) {
            let scaled = (count as f64 / scale).round() as u64;
            for i in 0..scaled {
                docs.push(Document::new(format!("{label}-{i}"), label.clone()));
            }
        }
    }
    let c = Corpus::from_documents(docs).unwrap();
    let counts = corpus::build_marginal_counts(&c, &datasets::animal_acts_grid()).unwrap();
    assert_eq!(counts.a.counts, [169, 176]);
    let model = bell::product_expectations(&counts).unwrap();
    assert!((model.marginals[0].probabilities[0] - 0.4899).abs() < 1e-3);
}

#[test]
fn amplitude_normalization_by_quadrature() {
    let cfg = SlitConfig::new(500e-9, 1e-4, 1.0, 5e-4);
    let centre = -0.5 * cfg.separation;
    let n = 20_001;
    let (lo, hi) = (centre - 8.0 * cfg.sigma, centre + 8.0 * cfg.sigma);
    let x: Vec<f64> = (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect();
    let y: Vec<f64> = x
        .iter()
        .map(|&xi| slit::wave_amplitude(&cfg, Slit::A, xi).unwrap().norm_sqr())
        .collect();
    assert!((slit::trapezoid(&x, &y) - 1.0).abs() < 1e-6);
}

#[test]
fn fringe_spacing_on_sample_config() {
    let cfg = SlitConfig::new(500e-9, 1e-4, 1.0, 5e-4);
    let expected = cfg.small_angle_fringe_spacing();
    assert!((expected - 5e-3).abs() < 1e-15);

    // the default grid ends inside the first side fringe; widen it
    let wide = cfg.with_grid(-1.5e-2, 1.5e-2, 30_001);
    let profile = slit::screen_profile(&wide).unwrap();
    let spacing = slit::fringe_spacing(&profile).unwrap();
    assert!(
        (spacing - expected).abs() / expected < 0.05,
        "spacing {spacing}"
    );

    // an envelope narrower than the fringe period leaves a single density peak
    assert!(slit::density_peak_spacing(&profile).is_none());
}

#[test]
fn raw_density_fringes_under_a_wide_envelope() {
    let cfg = SlitConfig::new(500e-9, 1e-4, 1.0, 2e-2).with_grid(-0.05, 0.05, 20_001);
    let profile = slit::screen_profile(&cfg).unwrap();
    let expected = cfg.small_angle_fringe_spacing();
    let spacing = slit::density_peak_spacing(&profile).unwrap();
    assert!(
        (spacing - expected).abs() / expected < 0.05,
        "spacing {spacing}"
    );
}
