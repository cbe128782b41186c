use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use clap::ValueEnum;
use num_complex::Complex64;
use serde::Serialize;

use qcog_core::bell::{self, MarginalCounts};
use qcog_core::corpus::{self, ConceptPairGrid, CorpusFormat};
use qcog_core::fit::{self, Classification, EffectOrder, SignSource};
use qcog_core::model::{self, ComplexVector, RawDataset, DEFAULT_SUM_TOLERANCE};
use qcog_core::slit::{self, SlitConfig};
use qcog_core::{datasets, formats};

use crate::report::{
    emit, io_error, read_text, ChshOut, CliError, CliResult, FitReport, FitRow, InputRecord,
    RunReport,
};
use crate::{
    ChshArgs, ChshDemo, CorpusArgs, FitArgs, FitDemo, FormatArg, Mode, SlitArgs, VerifyArgs,
};

/// Residual above which a recomputed fit counts as broken.
const RESIDUAL_LIMIT: f64 = 1e-9;

#[derive(Serialize)]
struct NoOptions {}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value()
        .expect("no skipped variants")
        .get_name()
        .to_owned()
}

fn pairs(v: &ComplexVector) -> Vec<[f64; 2]> {
    v.components().iter().map(|c| [c.re, c.im]).collect()
}

#[derive(Serialize)]
struct FitOptions {
    tolerance: f64,
}

pub fn run_fit(a: &FitArgs) -> CliResult {
    let mut inputs = Vec::new();
    let text = match (&a.input, a.demo) {
        (Some(p), _) => read_text(p)?,
        (None, Some(FitDemo::FruitsVegetables)) => datasets::FRUITS_VEGETABLES_CSV.to_owned(),
        (None, None) => unreachable!("clap requires a source"),
    };
    let source = match &a.input {
        Some(p) => p.display().to_string(),
        None => "bundled:fruits-vegetables".to_owned(),
    };
    inputs.push(InputRecord::new(source, text.as_bytes()));

    let raw = formats::parse_dataset_csv(&text)?;
    let mut warnings = Vec::new();
    for (name, col) in [
        ("mu_a", &raw.mu_a),
        ("mu_b", &raw.mu_b),
        ("mu_a_or_b", &raw.mu_a_or_b),
    ] {
        let sum: f64 = col.iter().sum();
        if (sum - 1.0).abs() > 1e-12 && (sum - 1.0).abs() <= a.tolerance {
            warnings.push(format!("column {name} sums to {sum}; renormalized"));
        }
    }
    let ds = model::validate_dataset(raw, a.tolerance)?;

    let signs_text = match (&a.signs, a.bundled_signs) {
        (Some(p), _) => {
            let t = read_text(p)?;
            inputs.push(InputRecord::new(p.display().to_string(), t.as_bytes()));
            Some(t)
        }
        (None, true) => {
            let t = datasets::FRUITS_VEGETABLES_SIGNS_CSV;
            inputs.push(InputRecord::new(
                "bundled:fruits-vegetables-signs",
                t.as_bytes(),
            ));
            Some(t.to_owned())
        }
        (None, false) => None,
    };
    let signs = signs_text
        .map(|t| formats::parse_signs_csv(&t, &ds))
        .transpose()?;
    let f = fit::fit_disjunction(&ds, signs.as_ref())?;

    let theta = f.theta_degrees();
    let classes = f.classifications();
    let rows = (0..ds.len())
        .map(|k| FitRow {
            exemplar: ds.exemplars()[k].clone(),
            mu_a: ds.mu_a()[k],
            mu_b: ds.mu_b()[k],
            mu_a_or_b: ds.mu_a_or_b()[k],
            interference: f.terms.values()[k],
            lambda: f.lambda[k],
            theta_deg: theta[k],
            classification: classes[k].as_str().to_owned(),
        })
        .collect();
    let result = FitReport {
        anchor_index: f.anchor,
        anchor_exemplar: ds.exemplars()[f.anchor].clone(),
        sign_source: match f.signs.source() {
            SignSource::Greedy => "greedy",
            SignSource::UserSupplied => "user-supplied",
        }
        .to_owned(),
        c_m: f.c_m,
        rows,
        vector_a: pairs(&f.vector_a),
        vector_b: pairs(&f.vector_b),
        max_residual: f.max_residual(),
    };
    let report = RunReport::new(
        "fit",
        inputs,
        FitOptions {
            tolerance: a.tolerance,
        },
        warnings,
        result,
    );
    emit(a.out.as_deref(), &report.to_json())?;

    if let Some(out) = &a.out {
        let names = ds.exemplars();
        let top = |c| {
            fit::rank_by_effect(&f.terms, &f.beta, c, EffectOrder::Angle)
                .first()
                .map_or("none", |&k| names[k].as_str())
        };
        println!(
            "fit: {} exemplars, anchor {} (index {}), c_m = {:.4}, max residual {:.1e}",
            ds.len(),
            names[f.anchor],
            f.anchor,
            f.c_m,
            f.max_residual()
        );
        println!(
            "strongest strengthening: {}; strongest weakening: {}",
            top(Classification::Strengthening),
            top(Classification::Weakening)
        );
        for w in &report.warnings {
            println!("warning: {w}");
        }
        println!("report written to {}", out.display());
    }
    Ok(())
}

pub fn run_verify(a: &VerifyArgs) -> CliResult {
    let text = read_text(&a.report)?;
    let rep: FitReport = serde_json::from_str(&text)
        .map_err(|e| qcog_core::Error::Parse(format!("fit report: {e}")))?;
    let raw = RawDataset {
        exemplars: rep.rows.iter().map(|r| r.exemplar.clone()).collect(),
        mu_a: rep.rows.iter().map(|r| r.mu_a).collect(),
        mu_b: rep.rows.iter().map(|r| r.mu_b).collect(),
        mu_a_or_b: rep.rows.iter().map(|r| r.mu_a_or_b).collect(),
    };
    let ds = model::validate_dataset(raw, DEFAULT_SUM_TOLERANCE)?;
    if rep.anchor_index >= ds.len() {
        return Err(qcog_core::Error::IndexOutOfRange {
            index: rep.anchor_index,
            dim: ds.len(),
        }
        .into());
    }
    let vector = |v: &[[f64; 2]]| {
        ComplexVector::new(v.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
    };
    let projectors = fit::build_projectors(ds.len(), rep.anchor_index)?;
    let residuals = fit::reconstruction_residuals(
        &vector(&rep.vector_a),
        &vector(&rep.vector_b),
        &projectors,
        &ds,
    )?;
    let max = residuals.max();
    println!(
        "verify: max residual {max:.3e} (recorded {:.3e})",
        rep.max_residual
    );
    if (max - rep.max_residual).abs() > a.tolerance {
        return Err(CliError::Mismatch(format!(
            "recomputed residual {max:e} differs from recorded {:e}",
            rep.max_residual
        )));
    }
    if max > RESIDUAL_LIMIT {
        return Err(CliError::Mismatch(format!(
            "residual {max:e} exceeds {RESIDUAL_LIMIT:e}"
        )));
    }
    Ok(())
}

fn chsh_summary(out: &ChshOut) {
    for e in &out.experiments {
        println!("E({}) = {:.4}", e.experiment, e.expectation);
    }
    println!("S = {:.4} ({} |S| <= 2)", out.s, out.verdict);
}

pub fn run_chsh(a: &ChshArgs) -> CliResult {
    enum Source {
        Counts(String, String),
        Marginals(String, String),
    }
    let src = match (&a.counts, &a.marginals, a.demo) {
        (Some(p), _, _) => Source::Counts(p.display().to_string(), read_text(p)?),
        (_, Some(p), _) => Source::Marginals(p.display().to_string(), read_text(p)?),
        (_, _, Some(ChshDemo::AnimalActs)) => Source::Counts(
            "bundled:animal-acts".into(),
            datasets::ANIMAL_ACTS_COUNTS_JSON.into(),
        ),
        (_, _, Some(ChshDemo::AnimalActsProduct)) => Source::Marginals(
            "bundled:animal-acts-marginals".into(),
            datasets::ANIMAL_ACTS_MARGINALS_JSON.into(),
        ),
        (None, None, None) => unreachable!("clap requires a source"),
    };
    let (input, out) = match src {
        Source::Counts(name, text) => {
            let set = formats::parse_counts_json(&text)?;
            let r = bell::chsh_from_counts(&set)?;
            (
                InputRecord::new(name, text.as_bytes()),
                ChshOut::coincidence(&set, &r),
            )
        }
        Source::Marginals(name, text) => {
            let m = formats::parse_marginals_json(&text)?;
            let p = bell::product_expectations(&m)?;
            (
                InputRecord::new(name, text.as_bytes()),
                ChshOut::product(&m, &p),
            )
        }
    };
    let report = RunReport::new("chsh", vec![input], NoOptions {}, Vec::new(), out);
    emit(a.out.as_deref(), &report.to_json())?;
    if let Some(path) = &a.out {
        chsh_summary(&report.result);
        println!("report written to {}", path.display());
    }
    Ok(())
}

#[derive(Serialize)]
struct CorpusOptions {
    format: String,
    mode: String,
    chsh: bool,
}

#[derive(Serialize)]
struct CorpusOut {
    documents: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    coincidence_counts: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    marginal_counts: Option<MarginalCounts>,
    #[serde(skip_serializing_if = "Option::is_none")]
    chsh: Option<ChshOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    product: Option<ChshOut>,
}

pub fn run_corpus(a: &CorpusArgs) -> CliResult {
    let format = match a.format {
        FormatArg::Auto if a.corpus.is_dir() => CorpusFormat::OneDocPerFile,
        FormatArg::Auto | FormatArg::OneDocPerLine => CorpusFormat::OneDocPerLine,
        FormatArg::OneDocPerFile => CorpusFormat::OneDocPerFile,
    };
    let c = corpus::load_corpus(&a.corpus, format)?;
    let mut corpus_bytes = Vec::new();
    for d in c.documents() {
        corpus_bytes.extend_from_slice(d.id().as_bytes());
        corpus_bytes.push(0);
        corpus_bytes.extend_from_slice(d.body().as_bytes());
        corpus_bytes.push(0);
    }
    let mut inputs = vec![InputRecord::new(
        a.corpus.display().to_string(),
        &corpus_bytes,
    )];

    let (grid_name, grid_text) = match &a.grid {
        Some(p) => (p.display().to_string(), read_text(p)?),
        None => (
            "bundled:animal-acts-grid".to_owned(),
            datasets::ANIMAL_ACTS_GRID_JSON.to_owned(),
        ),
    };
    inputs.push(InputRecord::new(grid_name, grid_text.as_bytes()));
    let grid = ConceptPairGrid::from_json(&grid_text)?;

    let mut out = CorpusOut {
        documents: c.len(),
        coincidence_counts: None,
        marginal_counts: None,
        chsh: None,
        product: None,
    };
    if matches!(a.mode, Mode::Coincidence | Mode::Both) {
        let set = corpus::build_coincidence_counts(&c, &grid)?;
        let json = formats::counts_to_json(set.tables());
        if let Some(p) = &a.counts_out {
            let mut text = serde_json::to_string_pretty(&json).expect("counts serialize");
            text.push('\n');
            std::fs::write(p, text).map_err(|e| io_error(p, e))?;
        }
        if a.chsh {
            out.chsh = Some(ChshOut::coincidence(&set, &bell::chsh_from_counts(&set)?));
        }
        out.coincidence_counts = Some(json);
    }
    if matches!(a.mode, Mode::Marginal | Mode::Both) {
        let m = corpus::build_marginal_counts(&c, &grid)?;
        if a.chsh {
            out.product = Some(ChshOut::product(&m, &bell::product_expectations(&m)?));
        }
        out.marginal_counts = Some(m);
    }

    let options = CorpusOptions {
        format: value_name(&match format {
            CorpusFormat::OneDocPerFile => FormatArg::OneDocPerFile,
            CorpusFormat::OneDocPerLine => FormatArg::OneDocPerLine,
        }),
        mode: value_name(&a.mode),
        chsh: a.chsh,
    };
    let report = RunReport::new("corpus", inputs, options, Vec::new(), out);
    emit(a.out.as_deref(), &report.to_json())?;
    if let Some(path) = &a.out {
        println!("corpus: {} documents", report.result.documents);
        if let Some(ch) = &report.result.chsh {
            println!("coincidence model:");
            chsh_summary(ch);
        }
        if let Some(pr) = &report.result.product {
            println!("product model:");
            chsh_summary(pr);
        }
        println!("report written to {}", path.display());
    }
    Ok(())
}

#[derive(Serialize)]
struct Integrals {
    quantum: f64,
    classical: f64,
    interference: f64,
}

#[derive(Serialize)]
struct SlitOut {
    profile: String,
    profile_sha256: String,
    small_angle_fringe_spacing: f64,
    fringe_spacing: Option<f64>,
    integrals: Integrals,
}

pub fn run_slit(a: &SlitArgs) -> CliResult {
    let base = SlitConfig::new(a.wavelength, a.separation, a.distance, a.sigma);
    let (x_min, x_max) = match (a.xmin, a.xmax) {
        (Some(lo), Some(hi)) => (lo, hi),
        _ => (base.x_min, base.x_max),
    };
    let cfg = base.with_grid(x_min, x_max, a.points);
    let profile = slit::screen_profile(&cfg)?;

    let mut csv = Vec::new();
    profile.write_csv(&mut csv).expect("writing to memory");
    write_file(&a.out, &csv)?;

    let spacing = slit::fringe_spacing(&profile);
    let expected = cfg.small_angle_fringe_spacing();
    let mut warnings = Vec::new();
    if spacing.is_none() {
        warnings.push(format!(
            "no side fringe inside the grid; the first one lies near x = {expected:.4e} m"
        ));
    }
    println!(
        "slit: {} points on [{:.4e}, {:.4e}] m, wavelength*L/s = {expected:.4e} m",
        profile.len(),
        cfg.x_min,
        cfg.x_max
    );
    match spacing {
        Some(d) => println!("fringe spacing on the grid: {d:.4e} m"),
        None => println!("warning: {}", warnings[0]),
    }
    println!("profile written to {}", a.out.display());

    if let Some(path) = &a.report {
        let out = SlitOut {
            profile: a.out.display().to_string(),
            profile_sha256: crate::report::sha256_hex(&csv),
            small_angle_fringe_spacing: expected,
            fringe_spacing: spacing,
            integrals: Integrals {
                quantum: slit::trapezoid(&profile.x, &profile.rho_quantum),
                classical: slit::trapezoid(&profile.x, &profile.rho_classical),
                interference: slit::trapezoid(&profile.x, &profile.interference),
            },
        };
        let report = RunReport::new("slit", Vec::new(), cfg, warnings, out);
        write_file(path, report.to_json().as_bytes())?;
        println!("report written to {}", path.display());
    }
    Ok(())
}

fn write_file(path: &Path, bytes: &[u8]) -> CliResult {
    let f = File::create(path).map_err(|e| io_error(path, e))?;
    let mut w = BufWriter::new(f);
    w.write_all(bytes)
        .and_then(|_| w.flush())
        .map_err(|e| io_error(path, e))
}
