//! Per-topic fuzzy sentiment for short social-media posts.
//!
//! A run cleans the posts ([`corpus`]), scores each post's polarity
//! ([`sentiment`]), discovers topics and a soft topic distribution per post
//! ([`topics`]), and aggregates polarity per topic into a triangular fuzzy
//! number reduced to a positivity/negativity pair ([`fuzzy`]). [`pipeline`]
//! wires the stages together and writes JSON/CSV reports and SVG plots.

pub mod corpus;
pub mod fuzzy;
pub mod pipeline;
pub mod sentiment;
pub mod synthetic;
pub mod topics;

pub use corpus::{CleanDoc, InputFormat, Post, Stopwords};
pub use fuzzy::{ConformityTuple, OpinionConcept, Tfn, TopicSentiment};
pub use pipeline::{run_pipeline, PipelineError, RunConfig, RunOutput, TopicReport};
pub use sentiment::{Lexicon, PolarityScore};
pub use topics::{TopicDistribution, TopicModel};
