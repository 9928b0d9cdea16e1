use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::TopicsError;
use crate::corpus::CleanDoc;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermWeight {
    pub term: String,
    pub weight: f64,
}

/// Class-based TF-IDF weight `tf_tc * ln(1 + avg_words / tf_t)`.
///
/// `tf_tc` is the term's count inside the cluster, `tf_t` its count across all
/// clusters and `avg_words` the mean number of tokens per cluster.
pub fn ctfidf_weight(tf_tc: usize, tf_t: usize, avg_words: f64) -> f64 {
    if tf_tc == 0 {
        return 0.0;
    }
    tf_tc as f64 * (1.0 + avg_words / tf_t as f64).ln()
}

/// Ranks each cluster's terms by c-TF-IDF and keeps the best `n_terms`.
///
/// Each cluster is treated as the concatenation of its documents. Ties are
/// broken lexicographically.
pub fn ctfidf_top_terms(clusters: &[Vec<&CleanDoc>], n_terms: usize) -> Result<Vec<Vec<TermWeight>>, TopicsError> {
    if let Some(empty) = clusters.iter().position(Vec::is_empty) {
        return Err(TopicsError::EmptyCluster(empty));
    }

    let per_cluster: Vec<HashMap<&str, usize>> = clusters
        .iter()
        .map(|docs| {
            let mut counts = HashMap::new();
            for t in docs.iter().flat_map(|d| &d.tokens) {
                *counts.entry(t.as_str()).or_insert(0) += 1;
            }
            counts
        })
        .collect();

    let mut global: HashMap<&str, usize> = HashMap::new();
    for counts in &per_cluster {
        for (&t, &c) in counts {
            *global.entry(t).or_insert(0) += c;
        }
    }
    let total_words: usize = global.values().sum();
    let avg_words = total_words as f64 / clusters.len() as f64;

    Ok(per_cluster
        .iter()
        .map(|counts| {
            let mut scored: Vec<TermWeight> = counts
                .iter()
                .map(|(&t, &c)| TermWeight {
                    term: t.to_owned(),
                    weight: ctfidf_weight(c, global[t], avg_words),
                })
                .collect();
            scored.sort_by(|a, b| b.weight.total_cmp(&a.weight).then_with(|| a.term.cmp(&b.term)));
            scored.truncate(n_terms);
            scored
        })
        .collect())
}
