//! End-to-end runs: configuration, stage orchestration, and report output.

mod config;
mod report;
mod run;
mod svg;

use std::io;
use std::path::PathBuf;

use thiserror::Error;

use crate::corpus::CorpusError;
use crate::fuzzy::FuzzyError;
use crate::sentiment::LexiconError;
use crate::topics::TopicsError;

pub use config::{ReportFormat, RunConfig, DEFAULT_MIN_CHARS, DEFAULT_N_TERMS};
pub use report::{
    emit_report, read_json_report, reports_to_csv, round6, write_outputs, CSV_HEADER, DEFAULT_SVG_TOPICS,
};
pub use run::{run_pipeline, run_with, RunInputs, RunMetadata, RunOutput, TopicReport, TopicSource};
pub use svg::{emit_tfn_svg, render_tfn_svg, select_series, TfnSeries};

/// Pipeline failure, tagged with the stage that produced it.
#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("config: {0}")]
    Config(String),
    #[error("corpus: {0}")]
    Corpus(#[from] CorpusError),
    #[error("sentiment: {0}")]
    Sentiment(#[from] LexiconError),
    #[error("topics: {0}")]
    Topics(#[from] TopicsError),
    #[error("fuzzy: topic {topic}: {source}")]
    Fuzzy {
        topic: usize,
        #[source]
        source: FuzzyError,
    },
    #[error("report: failed to write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("report: {0}")]
    Report(String),
}

impl PipelineError {
    pub fn stage(&self) -> &'static str {
        match self {
            Self::Config(_) => "config",
            Self::Corpus(_) => "corpus",
            Self::Sentiment(_) => "sentiment",
            Self::Topics(_) => "topics",
            Self::Fuzzy { .. } => "fuzzy",
            Self::Io { .. } | Self::Report(_) => "report",
        }
    }
}
