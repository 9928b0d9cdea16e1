//! Fuzzy aggregation of per-post polarity into per-topic sentiment.
//!
//! A topic's sentiment is a symmetric triangular fuzzy number whose core is
//! the weighted mean polarity and whose half-width is a multiple of the
//! weighted standard deviation. The number is then reduced to how possible
//! "positive opinion" and "negative opinion" are given that sentiment.

mod stats;
mod tfn;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use stats::{weighted_mean, weighted_std, WeightedSample};
pub use tfn::{build_tfn, conformity, possibility, ConformityTuple, OpinionConcept, OpinionKind, Tfn, DEFAULT_RAMP};

/// Default multiplier between the weighted standard deviation and the
/// half-width of the support.
pub const DEFAULT_SCALE: f64 = 1.0;

#[derive(Debug, Error, PartialEq)]
pub enum FuzzyError {
    #[error("{values} values but {weights} weights")]
    LengthMismatch { values: usize, weights: usize },
    #[error("weights must be finite and non-negative, got {0}")]
    InvalidWeight(f64),
    #[error("values must be finite, got {0}")]
    NonFiniteValue(f64),
    #[error("all weights are zero")]
    ZeroTotalWeight,
    #[error("invalid triangular number ({a}, {m}, {b})")]
    InvalidTfn { a: f64, m: f64, b: f64 },
}

/// Aggregated sentiment for one topic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TopicSentiment {
    pub tfn: Tfn,
    pub sigma: f64,
    pub conformity: ConformityTuple,
}

/// Aggregates one topic's sentiment.
///
/// Each post's weight is its topic probability times its own weight
/// multiplier.
pub fn aggregate_topic(
    polarities: &[f64],
    dist_column: &[f64],
    post_weights: &[f64],
    scale: f64,
    ramp: f64,
) -> Result<TopicSentiment, FuzzyError> {
    if dist_column.len() != polarities.len() || post_weights.len() != polarities.len() {
        return Err(FuzzyError::LengthMismatch {
            values: polarities.len(),
            weights: dist_column.len().min(post_weights.len()),
        });
    }
    let weights = dist_column.iter().zip(post_weights).map(|(d, w)| d * w).collect();
    let sample = WeightedSample::new(polarities.to_vec(), weights)?;
    Ok(aggregate_sample(&sample, scale, ramp))
}

pub fn aggregate_sample(sample: &WeightedSample, scale: f64, ramp: f64) -> TopicSentiment {
    let m = weighted_mean(sample);
    let sigma = weighted_std(sample);
    let tfn = build_tfn(m, sigma, scale);
    TopicSentiment {
        tfn,
        sigma,
        conformity: conformity(&tfn, ramp),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_topic_one() {
        let r = aggregate_topic(&[0.5, 0.35, -0.2], &[0.5, 0.3, 0.2], &[1.0; 3], 1.0, 0.2).unwrap();
        assert!((r.tfn.m - 0.315).abs() < 1e-12);
        assert!((r.sigma - 0.325250).abs() < 1e-6);
        assert_eq!(r.conformity.positivity, 1.0);
        assert!((r.conformity.negativity - 0.019514).abs() < 1e-6);
    }

    #[test]
    fn constant_polarity_is_a_point() {
        let r = aggregate_topic(&[0.5; 4], &[0.1, 0.2, 0.3, 0.4], &[1.0, 2.0, 1.0, 5.0], 1.0, 0.2).unwrap();
        assert_eq!(r.tfn, Tfn::point(0.5));
        assert_eq!(
            r.conformity,
            ConformityTuple {
                positivity: 1.0,
                negativity: 0.0
            }
        );
    }

    #[test]
    fn post_weights_multiply_topic_weights() {
        let a = aggregate_topic(&[0.5, -0.5], &[0.5, 0.5], &[3.0, 1.0], 1.0, 0.2).unwrap();
        let b = aggregate_topic(&[0.5, -0.5], &[0.75, 0.25], &[1.0, 1.0], 1.0, 0.2).unwrap();
        assert!((a.tfn.m - 0.25).abs() < 1e-15);
        assert!((a.tfn.m - b.tfn.m).abs() < 1e-15);
        assert!((a.sigma - b.sigma).abs() < 1e-15);
    }

    #[test]
    fn single_contributor_collapses() {
        let r = aggregate_topic(&[0.9, -0.3, 0.1], &[0.0, 1.0, 0.0], &[1.0; 3], 1.0, 0.2).unwrap();
        assert_eq!(r.tfn, Tfn::point(-0.3));
    }

    #[test]
    fn all_zero_weights_fail() {
        assert_eq!(
            aggregate_topic(&[0.1, 0.2], &[0.0, 0.0], &[1.0, 1.0], 1.0, 0.2),
            Err(FuzzyError::ZeroTotalWeight)
        );
    }
}
