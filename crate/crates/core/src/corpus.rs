//! Document-frequency counts over a local text corpus, assembled into the
//! coincidence and marginal tables of a subject/verb grid.
//!
//! A document matches a phrase when its normalized token stream holds the
//! phrase tokens consecutively. Normalization lowercases, turns every
//! non-alphanumeric character into a separator, and splits on whitespace.
//! Each document counts at most once per phrase.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bell::{
    CoincidenceCounts, CoincidenceSet, Experiment, MarginalCounts, MarginalPair, Observable,
};
use crate::error::{Error, Result};

/// Lowercased alphanumeric word tokens of `text`.
pub fn normalize_tokens(text: &str) -> Vec<String> {
    // lowercase first: some letters lowercase to a base letter plus a combining mark
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_owned)
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusFormat {
    /// Every `.txt` file in a directory is one document; the file name is its id.
    OneDocPerFile,
    /// Every non-blank line of one file is a document; the 1-based line number is its id.
    OneDocPerLine,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    id: String,
    body: String,
    tokens: Vec<String>,
}

impl Document {
    pub fn new(id: impl Into<String>, body: impl Into<String>) -> Self {
        let body = body.into();
        let tokens = normalize_tokens(&body);
        Self {
            id: id.into(),
            body,
            tokens,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn body(&self) -> &str {
        &self.body
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    fn contains(&self, phrase: &[String]) -> bool {
        self.tokens.windows(phrase.len()).any(|w| w == phrase)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusSource {
    pub path: PathBuf,
    pub format: CorpusFormat,
}

/// Documents sorted by id.
#[derive(Debug, Clone)]
pub struct Corpus {
    documents: Vec<Document>,
    source: Option<CorpusSource>,
}

impl Corpus {
    pub fn from_documents(documents: Vec<Document>) -> Result<Self> {
        let mut documents = documents;
        documents.sort_by(|a, b| a.id.cmp(&b.id));
        if let Some(w) = documents.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::DuplicateDocumentId(w[0].id.clone()));
        }
        Ok(Self {
            documents,
            source: None,
        })
    }

    pub fn documents(&self) -> &[Document] {
        &self.documents
    }

    pub fn source(&self) -> Option<&CorpusSource> {
        self.source.as_ref()
    }

    pub fn len(&self) -> usize {
        self.documents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.documents.is_empty()
    }
}

fn read_lossy(path: &Path) -> Result<String> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

pub fn load_corpus(path: impl AsRef<Path>, format: CorpusFormat) -> Result<Corpus> {
    let path = path.as_ref();
    let documents = match format {
        CorpusFormat::OneDocPerFile => {
            let mut docs = Vec::new();
            for entry in fs::read_dir(path).map_err(|e| Error::io(path, e))? {
                let entry = entry.map_err(|e| Error::io(path, e))?;
                let file = entry.path();
                if !file.is_file() || file.extension().is_none_or(|ext| ext != "txt") {
                    continue;
                }
                let id = entry.file_name().to_string_lossy().into_owned();
                docs.push(Document::new(id, read_lossy(&file)?));
            }
            docs
        }
        CorpusFormat::OneDocPerLine => read_lossy(path)?
            .lines()
            .enumerate()
            .filter(|(_, line)| !line.trim().is_empty())
            .map(|(i, line)| Document::new((i + 1).to_string(), line))
            .collect(),
    };
    if documents.is_empty() {
        return Err(Error::EmptyCorpus(path.display().to_string()));
    }
    let mut corpus = Corpus::from_documents(documents)?;
    corpus.source = Some(CorpusSource {
        path: path.to_path_buf(),
        format,
    });
    Ok(corpus)
}

/// A nonempty sequence of normalized word tokens.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PhraseQuery {
    tokens: Vec<String>,
}

impl PhraseQuery {
    /// Normalizes free text, e.g. `"Horse growls"` becomes `[horse, growls]`.
    pub fn parse(text: &str) -> Result<Self> {
        let tokens = normalize_tokens(text);
        if tokens.is_empty() {
            return Err(Error::EmptyQuery(text.to_owned()));
        }
        Ok(Self { tokens })
    }

    pub fn from_tokens<S: Into<String>>(tokens: impl IntoIterator<Item = S>) -> Result<Self> {
        let tokens: Vec<String> = tokens.into_iter().map(Into::into).collect();
        if tokens.is_empty() {
            return Err(Error::EmptyQuery(String::new()));
        }
        for t in &tokens {
            if normalize_tokens(t) != [t.as_str()] {
                return Err(Error::InvalidToken(t.clone()));
            }
        }
        Ok(Self { tokens })
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }
}

/// Number of documents containing the phrase at least once.
pub fn count_documents_with_phrase(c: &Corpus, q: &PhraseQuery) -> u64 {
    c.documents
        .par_iter()
        .map(|d| u64::from(d.contains(&q.tokens)))
        .sum()
}

/// Subject pairs `(A, A')` and verb pairs `(B, B')` of a coincidence design.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GridJson")]
pub struct ConceptPairGrid {
    subjects: [[String; 2]; 2],
    verbs: [[String; 2]; 2],
}

#[derive(Deserialize)]
struct GridJson {
    subjects: [[String; 2]; 2],
    verbs: [[String; 2]; 2],
}

impl TryFrom<GridJson> for ConceptPairGrid {
    type Error = Error;

    fn try_from(g: GridJson) -> Result<Self> {
        ConceptPairGrid::new(g.subjects, g.verbs)
    }
}

impl ConceptPairGrid {
    /// Words are normalized; all eight must be distinct single words.
    pub fn new(subjects: [[String; 2]; 2], verbs: [[String; 2]; 2]) -> Result<Self> {
        let [s0, s1] = subjects;
        let [v0, v1] = verbs;
        let subjects = [normalize_pair(s0)?, normalize_pair(s1)?];
        let verbs = [normalize_pair(v0)?, normalize_pair(v1)?];

        let mut seen = HashSet::new();
        for w in subjects.iter().chain(&verbs).flatten() {
            if !seen.insert(w.as_str()) {
                return Err(Error::DuplicateGridWord(w.clone()));
            }
        }
        Ok(Self { subjects, verbs })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: GridJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("grid: {e}")))?;
        Self::try_from(parsed)
    }

    pub fn subjects(&self) -> &[[String; 2]; 2] {
        &self.subjects
    }

    pub fn verbs(&self) -> &[[String; 2]; 2] {
        &self.verbs
    }

    /// The two outcome words of a single experiment.
    pub fn pair(&self, o: Observable) -> &[String; 2] {
        match o {
            Observable::A => &self.subjects[0],
            Observable::Ap => &self.subjects[1],
            Observable::B => &self.verbs[0],
            Observable::Bp => &self.verbs[1],
        }
    }
}

fn normalize_word(w: String) -> Result<String> {
    match normalize_tokens(&w).as_slice() {
        [single] => Ok(single.clone()),
        _ => Err(Error::InvalidGridWord(w)),
    }
}

fn normalize_pair([a, b]: [String; 2]) -> Result<[String; 2]> {
    Ok([normalize_word(a)?, normalize_word(b)?])
}

fn pair_labels(p: &[String; 2]) -> [&str; 2] {
    [p[0].as_str(), p[1].as_str()]
}

/// Counts every subject-verb phrase of the grid, zero tables included.
pub fn coincidence_tables(c: &Corpus, g: &ConceptPairGrid) -> [CoincidenceCounts; 4] {
    Experiment::ALL.map(|e| {
        let (x, y) = e.observables();
        let (rows, cols) = (g.pair(x), g.pair(y));
        let counts = rows.clone().map(|subject| {
            cols.clone().map(|verb| {
                let q = PhraseQuery {
                    tokens: vec![subject.clone(), verb],
                };
                count_documents_with_phrase(c, &q)
            })
        });
        CoincidenceCounts::new(e, counts).with_labels(pair_labels(rows), pair_labels(cols))
    })
}

/// Coincidence tables of the grid; fails if any experiment has no matches at all.
pub fn build_coincidence_counts(c: &Corpus, g: &ConceptPairGrid) -> Result<CoincidenceSet> {
    let tables = coincidence_tables(c, g);
    let empty: Vec<Experiment> = tables
        .iter()
        .filter(|t| t.total() == 0)
        .map(|t| t.experiment)
        .collect();
    if !empty.is_empty() {
        return Err(Error::AllZeroTable(empty));
    }
    CoincidenceSet::new(tables)
}

/// Single-word document frequencies of all eight grid words, unchecked.
pub fn marginal_tables(c: &Corpus, g: &ConceptPairGrid) -> MarginalCounts {
    let pair = |o: Observable| {
        let words = g.pair(o);
        let counts = words
            .clone()
            .map(|w| count_documents_with_phrase(c, &PhraseQuery { tokens: vec![w] }));
        MarginalPair::new(pair_labels(words), counts)
    };
    MarginalCounts {
        a: pair(Observable::A),
        a_prime: pair(Observable::Ap),
        b: pair(Observable::B),
        b_prime: pair(Observable::Bp),
    }
}

pub fn build_marginal_counts(c: &Corpus, g: &ConceptPairGrid) -> Result<MarginalCounts> {
    let m = marginal_tables(c, g);
    for o in Observable::ALL {
        if m.get(o).counts == [0, 0] {
            return Err(Error::EmptyMarginal(o));
        }
    }
    Ok(m)
}
