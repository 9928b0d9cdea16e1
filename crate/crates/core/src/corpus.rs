//! Post ingestion and text normalization.
//!
//! Posts come from JSON-lines or CSV files. Each one is length-filtered on its
//! raw text and then cleaned into a [`CleanDoc`]: URLs, hashtags and usernames
//! are stripped, non-letters become spaces, everything is lowercased, and
//! stopwords are dropped.

use std::collections::HashSet;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};
use std::path::{Path, PathBuf};
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

const DEFAULT_STOPWORDS: &str = include_str!("../data/stopwords.txt");

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: malformed record: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: post id must be non-empty")]
    EmptyId { line: usize },
    #[error("line {line}: duplicate post id `{id}`")]
    DuplicateId { line: usize, id: String },
    #[error("line {line}: weight must be > 0, got {weight}")]
    InvalidWeight { line: usize, weight: f64 },
    #[error("line {line}: polarity {polarity} outside [-1, 1]")]
    PolarityOutOfRange { line: usize, polarity: f64 },
}

/// Input file layout for [`load_posts`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InputFormat {
    Jsonl,
    Csv,
}

/// A single ingested social-media post.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Post {
    pub id: String,
    pub text: String,
    /// Engagement multiplier applied on top of the topic weight.
    pub weight: f64,
    /// Pre-computed sentiment; bypasses lexicon scoring when present.
    pub polarity: Option<f64>,
}

impl Post {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            text: text.into(),
            weight: 1.0,
            polarity: None,
        }
    }

    pub fn with_weight(mut self, weight: f64) -> Self {
        self.weight = weight;
        self
    }

    pub fn with_polarity(mut self, polarity: f64) -> Self {
        self.polarity = Some(polarity);
        self
    }

    /// Length of the raw text in Unicode scalar values.
    pub fn char_len(&self) -> usize {
        self.text.chars().count()
    }
}

#[derive(Debug, Deserialize)]
struct RawPost {
    id: String,
    text: String,
    #[serde(default)]
    weight: Option<f64>,
    #[serde(default)]
    polarity: Option<f64>,
}

/// Tokenized, normalized form of a [`Post`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanDoc {
    pub post_id: String,
    pub tokens: Vec<String>,
    pub clean_text: String,
}

impl CleanDoc {
    pub fn new(post_id: impl Into<String>, tokens: Vec<String>) -> Self {
        let clean_text = tokens.join(" ");
        Self {
            post_id: post_id.into(),
            tokens,
            clean_text,
        }
    }

    /// Documents with no surviving tokens are excluded downstream.
    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

/// Set of lowercase words removed during preprocessing.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stopwords(HashSet<String>);

impl Stopwords {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The small English list bundled with the crate.
    pub fn english() -> Self {
        Self::parse(DEFAULT_STOPWORDS)
    }

    /// One word per line; blank lines and `#` comments are ignored.
    pub fn parse(contents: &str) -> Self {
        Self(
            contents
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(str::to_lowercase)
                .collect(),
        )
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, CorpusError> {
        let path = path.as_ref();
        let contents = std::fs::read_to_string(path).map_err(|source| CorpusError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(Self::parse(&contents))
    }

    pub fn contains(&self, word: &str) -> bool {
        self.0.contains(word)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<S: Into<String>> FromIterator<S> for Stopwords {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Self(iter.into_iter().map(|s| s.into().to_lowercase()).collect())
    }
}

/// Reads posts from `path` in the given format.
pub fn load_posts(path: impl AsRef<Path>, format: InputFormat) -> Result<Vec<Post>, CorpusError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| CorpusError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_posts(file, format).map_err(|e| match e {
        CorpusError::Io { source, .. } => CorpusError::Io {
            path: path.to_path_buf(),
            source,
        },
        other => other,
    })
}

/// Reads posts from any reader. Records are returned in input order.
pub fn read_posts<R: Read>(reader: R, format: InputFormat) -> Result<Vec<Post>, CorpusError> {
    let raw = match format {
        InputFormat::Jsonl => read_jsonl(reader)?,
        InputFormat::Csv => read_csv(reader)?,
    };

    let mut seen = HashSet::new();
    let mut posts = Vec::with_capacity(raw.len());
    for (line, r) in raw {
        if r.id.is_empty() {
            return Err(CorpusError::EmptyId { line });
        }
        if !seen.insert(r.id.clone()) {
            return Err(CorpusError::DuplicateId { line, id: r.id });
        }
        let weight = r.weight.unwrap_or(1.0);
        if !(weight > 0.0 && weight.is_finite()) {
            return Err(CorpusError::InvalidWeight { line, weight });
        }
        if let Some(p) = r.polarity {
            if !(-1.0..=1.0).contains(&p) {
                return Err(CorpusError::PolarityOutOfRange { line, polarity: p });
            }
        }
        posts.push(Post {
            id: r.id,
            text: r.text,
            weight,
            polarity: r.polarity,
        });
    }
    Ok(posts)
}

fn read_jsonl<R: Read>(reader: R) -> Result<Vec<(usize, RawPost)>, CorpusError> {
    let mut out = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|source| CorpusError::Io {
            path: PathBuf::new(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawPost = serde_json::from_str(&line).map_err(|e| CorpusError::Malformed {
            line: line_no,
            message: e.to_string(),
        })?;
        out.push((line_no, raw));
    }
    Ok(out)
}

fn read_csv<R: Read>(reader: R) -> Result<Vec<(usize, RawPost)>, CorpusError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = rdr.headers().map_err(csv_error)?.clone();
    let mut out = Vec::new();
    let mut record = csv::StringRecord::new();
    loop {
        match rdr.read_record(&mut record) {
            Ok(false) => break,
            Ok(true) => {
                let line = record.position().map_or(0, |p| p.line() as usize);
                let raw: RawPost = record.deserialize(Some(&headers)).map_err(|e| CorpusError::Malformed {
                    line,
                    message: e.to_string(),
                })?;
                out.push((line, raw));
            }
            Err(e) => return Err(csv_error(e)),
        }
    }
    Ok(out)
}

fn csv_error(e: csv::Error) -> CorpusError {
    let line = e.position().map_or(0, |p| p.line() as usize);
    match e.into_kind() {
        csv::ErrorKind::Io(source) => CorpusError::Io {
            path: PathBuf::new(),
            source,
        },
        kind => CorpusError::Malformed {
            line,
            message: format!("{kind:?}"),
        },
    }
}

/// Keeps posts whose raw text has at least `min_chars` characters.
pub fn filter_short(posts: Vec<Post>, min_chars: usize) -> Vec<Post> {
    posts.into_iter().filter(|p| p.char_len() >= min_chars).collect()
}

fn non_letters() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"[^\p{L}]").expect("valid regex"))
}

fn is_url(token: &str) -> bool {
    ["http://", "https://", "www."].iter().any(|prefix| {
        token
            .get(..prefix.len())
            .is_some_and(|head| head.eq_ignore_ascii_case(prefix))
    })
}

fn is_marker(token: &str) -> bool {
    token.starts_with('#') || token.starts_with('@')
}

/// Normalizes a post into tokens.
///
/// Marker-bearing tokens (URLs, `#hashtags`, `@usernames`) are removed first,
/// while their prefixes are still visible. Non-letters are then replaced by
/// spaces so that `road,bridge` yields two tokens.
pub fn preprocess(post: &Post, stopwords: &Stopwords) -> CleanDoc {
    CleanDoc::new(post.id.clone(), tokenize(&post.text, stopwords))
}

/// The token pipeline behind [`preprocess`], usable on bare strings.
pub fn tokenize(text: &str, stopwords: &Stopwords) -> Vec<String> {
    let kept: Vec<&str> = text
        .split_whitespace()
        .filter(|t| !is_url(t) && !is_marker(t))
        .collect();
    let joined = kept.join(" ");
    let letters = non_letters().replace_all(&joined, " ");
    let lowered = letters.to_lowercase();
    // a few letters lowercase into letter + combining mark
    let lowered = non_letters().replace_all(&lowered, " ");

    lowered
        .split_whitespace()
        .filter(|t| !stopwords.contains(t))
        .map(str::to_owned)
        .collect()
}
