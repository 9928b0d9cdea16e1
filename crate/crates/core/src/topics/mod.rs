//! Topic discovery: document vectors, spherical k-means clusters, c-TF-IDF
//! topic terms, and soft per-document topic distributions.

mod assign;
mod ctfidf;
mod kmeans;
mod vectorize;

use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub use assign::{load_distribution, read_distribution, soft_assign, topic_prevalence, TopicDistribution};
pub use ctfidf::{ctfidf_top_terms, ctfidf_weight, TermWeight};
pub use kmeans::{cluster, ClusterOptions, TopicModel};
pub use vectorize::{idf, load_vectors, read_vectors, vectorize, DocVector, VectorSpace};

pub const DEFAULT_TEMPERATURE: f64 = 0.25;
pub const DEFAULT_MAX_ITERS: usize = 100;
pub const DEFAULT_RESTARTS: usize = 4;

#[derive(Debug, Error)]
pub enum TopicsError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("every document is empty after preprocessing")]
    AllDocsEmpty,
    #[error("topic count {k} must be between 1 and the number of documents ({n})")]
    InvalidTopicCount { k: usize, n: usize },
    #[error("cluster {0} has no documents")]
    EmptyCluster(usize),
    #[error("temperature must be > 0, got {0}")]
    InvalidTemperature(f64),
    #[error("line {line}: vector has dimension {found}, expected {expected}")]
    DimensionMismatch { line: usize, expected: usize, found: usize },
    #[error("line {line}: vector for `{id}` cannot be normalized")]
    DegenerateVector { line: usize, id: String },
    #[error("line {line}: duplicate id `{id}`")]
    DuplicateId { line: usize, id: String },
    #[error("line {line}: topic distribution row {message}")]
    InvalidRow { line: usize, message: String },
}
