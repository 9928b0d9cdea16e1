use std::collections::{BTreeSet, HashMap, HashSet};
use std::fs::File;
use std::io::{BufRead, BufReader, Read};
use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::TopicsError;
use crate::corpus::CleanDoc;

/// Unit-length sparse document vector. Entries are `(dimension, weight)`
/// pairs sorted by dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct DocVector {
    pub post_id: String,
    pub values: Vec<(usize, f64)>,
}

impl DocVector {
    /// Normalizes a dense vector. Returns `None` for zero or non-finite input.
    pub fn from_dense(post_id: impl Into<String>, dense: &[f64]) -> Option<Self> {
        let values: Vec<(usize, f64)> = dense.iter().copied().enumerate().filter(|&(_, v)| v != 0.0).collect();
        Self::normalized(post_id.into(), values)
    }

    fn normalized(post_id: String, mut values: Vec<(usize, f64)>) -> Option<Self> {
        let norm = values.iter().map(|(_, v)| v * v).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return None;
        }
        for (_, v) in &mut values {
            *v /= norm;
        }
        Some(Self { post_id, values })
    }

    pub fn norm(&self) -> f64 {
        self.values.iter().map(|(_, v)| v * v).sum::<f64>().sqrt()
    }

    /// Dot product against a dense vector.
    pub fn dot(&self, dense: &[f64]) -> f64 {
        self.values.iter().map(|&(i, v)| v * dense[i]).sum()
    }

    pub fn get(&self, dim: usize) -> f64 {
        self.values
            .binary_search_by_key(&dim, |&(i, _)| i)
            .map_or(0.0, |pos| self.values[pos].1)
    }
}

/// Vectors ready for clustering, plus the ids of documents that could not be
/// vectorized.
#[derive(Debug, Clone)]
pub struct VectorSpace {
    pub dim: usize,
    /// Term for each dimension; empty when vectors were supplied externally.
    pub vocabulary: Vec<String>,
    pub vectors: Vec<DocVector>,
    pub excluded: Vec<String>,
}

/// Smoothed inverse document frequency: `ln((1 + n_docs) / (1 + df)) + 1`.
pub fn idf(df: usize, n_docs: usize) -> f64 {
    ((1.0 + n_docs as f64) / (1.0 + df as f64)).ln() + 1.0
}

/// TF-IDF vectors over the corpus vocabulary, L2-normalized.
///
/// Empty documents are left out of the vectors and listed in `excluded`.
/// Dimensions follow the sorted vocabulary, so the output does not depend on
/// hash ordering.
pub fn vectorize(docs: &[CleanDoc]) -> Result<VectorSpace, TopicsError> {
    let (live, empty): (Vec<&CleanDoc>, Vec<&CleanDoc>) = docs.iter().partition(|d| !d.is_empty());
    if live.is_empty() {
        return Err(TopicsError::AllDocsEmpty);
    }

    let vocabulary: Vec<String> = live
        .iter()
        .flat_map(|d| d.tokens.iter().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let index: HashMap<&str, usize> = vocabulary.iter().enumerate().map(|(i, t)| (t.as_str(), i)).collect();

    let mut df = vec![0usize; vocabulary.len()];
    let counts: Vec<Vec<(usize, usize)>> = live
        .iter()
        .map(|d| {
            let mut tf: HashMap<usize, usize> = HashMap::new();
            for t in &d.tokens {
                *tf.entry(index[t.as_str()]).or_default() += 1;
            }
            let mut tf: Vec<_> = tf.into_iter().collect();
            tf.sort_unstable();
            for &(i, _) in &tf {
                df[i] += 1;
            }
            tf
        })
        .collect();

    let n = live.len();
    let vectors = live
        .iter()
        .zip(counts)
        .map(|(d, tf)| {
            let values = tf.into_iter().map(|(i, c)| (i, c as f64 * idf(df[i], n))).collect();
            DocVector::normalized(d.post_id.clone(), values).expect("non-empty doc has weight")
        })
        .collect();

    Ok(VectorSpace {
        dim: vocabulary.len(),
        vocabulary,
        vectors,
        excluded: empty.iter().map(|d| d.post_id.clone()).collect(),
    })
}

#[derive(Debug, Deserialize)]
struct VectorRecord {
    id: String,
    vector: Vec<f64>,
}

/// Reads externally computed document vectors (`{"id": .., "vector": [..]}`
/// per line), normalizing each to unit length.
pub fn load_vectors(path: impl AsRef<Path>) -> Result<(usize, Vec<DocVector>), TopicsError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| TopicsError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_vectors(file).map_err(|e| match e {
        TopicsError::Io { source, .. } => TopicsError::Io {
            path: path.to_path_buf(),
            source,
        },
        other => other,
    })
}

pub fn read_vectors<R: Read>(reader: R) -> Result<(usize, Vec<DocVector>), TopicsError> {
    let mut dim = None;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (idx, line) in BufReader::new(reader).lines().enumerate() {
        let line_no = idx + 1;
        let line = line.map_err(|source| TopicsError::Io {
            path: PathBuf::new(),
            source,
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: VectorRecord = serde_json::from_str(&line).map_err(|e| TopicsError::Malformed {
            line: line_no,
            message: e.to_string(),
        })?;
        let expected = *dim.get_or_insert(rec.vector.len());
        if rec.vector.len() != expected {
            return Err(TopicsError::DimensionMismatch {
                line: line_no,
                expected,
                found: rec.vector.len(),
            });
        }
        if !seen.insert(rec.id.clone()) {
            return Err(TopicsError::DuplicateId {
                line: line_no,
                id: rec.id,
            });
        }
        let v = DocVector::from_dense(rec.id.clone(), &rec.vector).ok_or(TopicsError::DegenerateVector {
            line: line_no,
            id: rec.id,
        })?;
        out.push(v);
    }
    Ok((dim.unwrap_or(0), out))
}
