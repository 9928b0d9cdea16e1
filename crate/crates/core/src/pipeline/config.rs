use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::corpus::InputFormat;
use crate::fuzzy::{DEFAULT_RAMP, DEFAULT_SCALE};
use crate::sentiment::DEFAULT_NEG_WINDOW;
use crate::topics::{DEFAULT_MAX_ITERS, DEFAULT_RESTARTS, DEFAULT_TEMPERATURE};

pub const DEFAULT_MIN_CHARS: usize = 60;
pub const DEFAULT_N_TERMS: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

/// Everything that determines a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub input: PathBuf,
    pub format: InputFormat,
    /// Stopword file; the bundled English list when absent.
    pub stopwords: Option<PathBuf>,
    /// Lexicon file; the bundled miniature lexicon when absent.
    pub lexicon: Option<PathBuf>,
    pub min_chars: usize,
    /// Number of topics. May be omitted when a distribution matrix is given.
    pub topics: Option<usize>,
    pub seed: u64,
    pub temperature: f64,
    pub scale: f64,
    pub ramp: f64,
    pub n_terms: usize,
    pub neg_window: usize,
    pub max_iters: usize,
    /// k-means seedings tried; the most cohesive wins.
    pub restarts: usize,
    pub out: PathBuf,
    pub report: ReportFormat,
    pub svg: bool,
    /// Topics drawn in the SVG; the five most prevalent when absent.
    pub svg_topics: Option<Vec<usize>>,
    /// Externally computed document vectors (JSON lines).
    pub vectors: Option<PathBuf>,
    /// Supplied topic distribution; skips clustering entirely.
    pub dist_matrix: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            input: PathBuf::new(),
            format: InputFormat::Jsonl,
            stopwords: None,
            lexicon: None,
            min_chars: DEFAULT_MIN_CHARS,
            topics: None,
            seed: 0,
            temperature: DEFAULT_TEMPERATURE,
            scale: DEFAULT_SCALE,
            ramp: DEFAULT_RAMP,
            n_terms: DEFAULT_N_TERMS,
            neg_window: DEFAULT_NEG_WINDOW,
            max_iters: DEFAULT_MAX_ITERS,
            restarts: DEFAULT_RESTARTS,
            out: PathBuf::from("out"),
            report: ReportFormat::Json,
            svg: false,
            svg_topics: None,
            vectors: None,
            dist_matrix: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), PipelineError> {
        let fail = |msg: String| Err(PipelineError::Config(msg));
        if self.min_chars < 1 {
            return fail("min_chars must be >= 1".into());
        }
        if let Some(k) = self.topics {
            if k < 1 {
                return fail("topics must be >= 1".into());
            }
        } else if self.dist_matrix.is_none() {
            return fail("topics is required unless a distribution matrix is supplied".into());
        }
        if !(self.temperature > 0.0 && self.temperature.is_finite()) {
            return fail(format!("temperature must be > 0, got {}", self.temperature));
        }
        if !(self.scale > 0.0 && self.scale.is_finite()) {
            return fail(format!("scale must be > 0, got {}", self.scale));
        }
        if !(self.ramp > 0.0 && self.ramp <= 1.0) {
            return fail(format!("ramp must lie in (0, 1], got {}", self.ramp));
        }
        if self.n_terms < 1 {
            return fail("n_terms must be >= 1".into());
        }
        if self.max_iters < 1 {
            return fail("max_iters must be >= 1".into());
        }
        if self.restarts < 1 {
            return fail("restarts must be >= 1".into());
        }
        if self.vectors.is_some() && self.dist_matrix.is_some() {
            return fail("vectors and dist_matrix are mutually exclusive".into());
        }
        if matches!(&self.svg_topics, Some(sel) if sel.is_empty()) {
            return fail("svg_topics must not be empty".into());
        }
        Ok(())
    }
}
