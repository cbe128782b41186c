//! Text formats read and written by the command-line tool.
//!
//! * dataset CSV: header `exemplar,mu_a,mu_b,mu_a_or_b`
//! * signs CSV: header `exemplar,sign`, sign one of `+`, `-`, `+1`, `-1`, `1`
//! * counts JSON: keys `AB`, `ApB`, `ABp`, `ApBp`, each
//!   `{"rows": [X1, X2], "cols": [Y1, Y2], "n11": .., "n12": .., "n21": .., "n22": ..}`
//! * marginals JSON: keys `A`, `Ap`, `B`, `Bp`, each `{"labels": [..], "counts": [..]}`

use serde::{Deserialize, Serialize};

use crate::bell::{CoincidenceCounts, CoincidenceSet, Experiment, MarginalCounts};
use crate::error::{Error, Result};
use crate::fit::{Sign, SignAssignment};
use crate::model::{DisjunctionDataset, RawDataset};

pub const DATASET_HEADER: [&str; 4] = ["exemplar", "mu_a", "mu_b", "mu_a_or_b"];
pub const SIGNS_HEADER: [&str; 2] = ["exemplar", "sign"];

fn reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
}

fn check_header(rdr: &mut csv::Reader<&[u8]>, expected: &[&str]) -> Result<()> {
    let header = rdr
        .headers()
        .map_err(|e| Error::Parse(format!("csv header: {e}")))?;
    if header.iter().ne(expected.iter().copied()) {
        return Err(Error::Parse(format!(
            "expected csv header `{}`, found `{}`",
            expected.join(","),
            header.iter().collect::<Vec<_>>().join(",")
        )));
    }
    Ok(())
}

fn parse_f64(field: &str, line: u64) -> Result<f64> {
    field
        .parse()
        .map_err(|_| Error::Parse(format!("line {line}: `{field}` is not a number")))
}

pub fn parse_dataset_csv(text: &str) -> Result<RawDataset> {
    let mut rdr = reader(text);
    check_header(&mut rdr, &DATASET_HEADER)?;
    let mut raw = RawDataset::default();
    for record in rdr.records() {
        let record = record.map_err(|e| Error::Parse(format!("csv: {e}")))?;
        let line = record.position().map_or(0, |p| p.line());
        raw.exemplars.push(record[0].to_owned());
        raw.mu_a.push(parse_f64(&record[1], line)?);
        raw.mu_b.push(parse_f64(&record[2], line)?);
        raw.mu_a_or_b.push(parse_f64(&record[3], line)?);
    }
    Ok(raw)
}

fn parse_sign(field: &str, line: u64) -> Result<Sign> {
    match field {
        "+" | "+1" | "1" => Ok(Sign::Plus),
        "-" | "-1" => Ok(Sign::Minus),
        other => Err(Error::Parse(format!(
            "line {line}: `{other}` is not a sign"
        ))),
    }
}

/// Reads one sign per exemplar of `ds`, matched by name in any row order.
pub fn parse_signs_csv(text: &str, ds: &DisjunctionDataset) -> Result<SignAssignment> {
    let mut rdr = reader(text);
    check_header(&mut rdr, &SIGNS_HEADER)?;
    let mut signs: Vec<Option<Sign>> = vec![None; ds.len()];
    for record in rdr.records() {
        let record = record.map_err(|e| Error::Parse(format!("csv: {e}")))?;
        let line = record.position().map_or(0, |p| p.line());
        let k = ds.index_of(&record[0]).ok_or_else(|| {
            Error::Parse(format!("line {line}: unknown exemplar `{}`", &record[0]))
        })?;
        if signs[k].replace(parse_sign(&record[1], line)?).is_some() {
            return Err(Error::Parse(format!(
                "line {line}: second sign for `{}`",
                &record[0]
            )));
        }
    }
    let signs = signs
        .into_iter()
        .enumerate()
        .map(|(k, s)| {
            s.ok_or_else(|| Error::Parse(format!("no sign for exemplar `{}`", ds.exemplars()[k])))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SignAssignment::user_supplied(signs))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TableJson {
    rows: [String; 2],
    cols: [String; 2],
    n11: u64,
    n12: u64,
    n21: u64,
    n22: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CountsJson {
    #[serde(rename = "AB")]
    ab: TableJson,
    #[serde(rename = "ApB")]
    apb: TableJson,
    #[serde(rename = "ABp")]
    abp: TableJson,
    #[serde(rename = "ApBp")]
    apbp: TableJson,
}

impl TableJson {
    fn into_counts(self, e: Experiment) -> CoincidenceCounts {
        CoincidenceCounts {
            experiment: e,
            row_labels: self.rows,
            col_labels: self.cols,
            counts: [[self.n11, self.n12], [self.n21, self.n22]],
        }
    }

    fn from_counts(c: &CoincidenceCounts) -> Self {
        let [[n11, n12], [n21, n22]] = c.counts;
        Self {
            rows: c.row_labels.clone(),
            cols: c.col_labels.clone(),
            n11,
            n12,
            n21,
            n22,
        }
    }
}

pub fn parse_counts_json(text: &str) -> Result<CoincidenceSet> {
    let parsed: CountsJson =
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("counts json: {e}")))?;
    CoincidenceSet::new([
        parsed.ab.into_counts(Experiment::AB),
        parsed.apb.into_counts(Experiment::ApB),
        parsed.abp.into_counts(Experiment::ABp),
        parsed.apbp.into_counts(Experiment::ApBp),
    ])
}

/// Counts in the same schema [`parse_counts_json`] reads.
pub fn counts_to_json(tables: &[CoincidenceCounts; 4]) -> serde_json::Value {
    let mut map = serde_json::Map::new();
    for t in tables {
        map.insert(
            t.experiment.key().to_owned(),
            serde_json::to_value(TableJson::from_counts(t)).expect("plain struct"),
        );
    }
    serde_json::Value::Object(map)
}

pub fn parse_marginals_json(text: &str) -> Result<MarginalCounts> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("marginals json: {e}")))
}
