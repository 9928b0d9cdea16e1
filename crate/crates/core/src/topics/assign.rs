use std::collections::HashSet;
use std::fs::File;
use std::io::Read;
use std::path::Path;

use super::{DocVector, TopicModel, TopicsError};

const ROW_SUM_TOLERANCE: f64 = 1e-6;

/// Per-document topic membership. Each row sums to one.
#[derive(Debug, Clone, PartialEq)]
pub struct TopicDistribution {
    pub post_ids: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    k: usize,
}

impl TopicDistribution {
    /// Validates and stores supplied rows. Rows must be non-negative and sum
    /// to one within 1e-6; they are rescaled to sum to one exactly.
    pub fn from_rows(post_ids: Vec<String>, rows: Vec<Vec<f64>>, k: usize) -> Result<Self, TopicsError> {
        assert_eq!(post_ids.len(), rows.len());
        let mut out = Vec::with_capacity(rows.len());
        for (i, row) in rows.into_iter().enumerate() {
            out.push(check_row(i + 1, row, k)?);
        }
        Ok(Self { post_ids, rows: out, k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, topic: usize) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().map(move |r| r[topic])
    }

    pub fn row_of(&self, post_id: &str) -> Option<&[f64]> {
        self.post_ids
            .iter()
            .position(|id| id == post_id)
            .map(|i| self.rows[i].as_slice())
    }

    /// Most probable topic per row, ties to the lowest index.
    pub fn argmax(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .fold(
                        (0, f64::NEG_INFINITY),
                        |best, (k, &p)| if p > best.1 { (k, p) } else { best },
                    )
                    .0
            })
            .collect()
    }
}

fn check_row(line: usize, mut row: Vec<f64>, k: usize) -> Result<Vec<f64>, TopicsError> {
    if row.len() != k {
        return Err(TopicsError::InvalidRow {
            line,
            message: format!("has {} columns, expected {k}", row.len()),
        });
    }
    if let Some(bad) = row.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(TopicsError::InvalidRow {
            line,
            message: format!("entry {bad} outside [0, 1]"),
        });
    }
    let sum: f64 = row.iter().sum();
    if (sum - 1.0).abs() > ROW_SUM_TOLERANCE {
        return Err(TopicsError::InvalidRow {
            line,
            message: format!("sums to {sum}, expected 1"),
        });
    }
    if sum != 1.0 {
        row.iter_mut().for_each(|p| *p /= sum);
    }
    Ok(row)
}

/// Softmax of `cosine / temperature` over the model's centroids, per vector.
pub fn soft_assign(
    vectors: &[DocVector],
    model: &TopicModel,
    temperature: f64,
) -> Result<TopicDistribution, TopicsError> {
    if !(temperature > 0.0 && temperature.is_finite()) {
        return Err(TopicsError::InvalidTemperature(temperature));
    }
    let rows = vectors
        .iter()
        .map(|v| {
            let logits: Vec<f64> = model.centroids.iter().map(|c| v.dot(c) / temperature).collect();
            softmax(&logits)
        })
        .collect();
    Ok(TopicDistribution {
        post_ids: vectors.iter().map(|v| v.post_id.clone()).collect(),
        rows,
        k: model.k(),
    })
}

fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|z| (z - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / sum).collect()
}

/// Column sums: the total topic probability mass across documents.
pub fn topic_prevalence(dist: &TopicDistribution) -> Vec<f64> {
    let mut out = vec![0.0; dist.k];
    for row in &dist.rows {
        for (acc, p) in out.iter_mut().zip(row) {
            *acc += p;
        }
    }
    out
}

/// Reads a supplied distribution matrix: a CSV with a header row whose first
/// column is the post id and whose remaining columns are topic probabilities.
pub fn load_distribution(path: impl AsRef<Path>) -> Result<TopicDistribution, TopicsError> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|source| TopicsError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_distribution(file)
}

pub fn read_distribution<R: Read>(reader: R) -> Result<TopicDistribution, TopicsError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let malformed = |e: csv::Error| TopicsError::Malformed {
        line: e.position().map_or(0, |p| p.line() as usize),
        message: e.to_string(),
    };
    let headers = rdr.headers().map_err(malformed)?.clone();
    if headers.len() < 2 {
        return Err(TopicsError::Malformed {
            line: 1,
            message: "expected a post id column followed by at least one topic column".into(),
        });
    }
    let k = headers.len() - 1;

    let mut ids = Vec::new();
    let mut rows = Vec::new();
    let mut seen = HashSet::new();
    for record in rdr.records() {
        let record = record.map_err(malformed)?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        let id = record.get(0).unwrap_or_default().trim().to_owned();
        if !seen.insert(id.clone()) {
            return Err(TopicsError::DuplicateId { line, id });
        }
        let row = record
            .iter()
            .skip(1)
            .map(|f| f.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| TopicsError::Malformed {
                line,
                message: e.to_string(),
            })?;
        rows.push(check_row(line, row, k)?);
        ids.push(id);
    }
    Ok(TopicDistribution { post_ids: ids, rows, k })
}
