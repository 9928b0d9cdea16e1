use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::{PipelineError, RunConfig};
use crate::corpus::{self, CleanDoc, Post, Stopwords};
use crate::fuzzy::{self, Tfn};
use crate::sentiment::{Lexicon, Scorer};
use crate::topics::{self, ClusterOptions, DocVector, TermWeight, TopicDistribution, TopicsError};

/// How the topic distribution was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopicSource {
    /// TF-IDF vectors clustered with spherical k-means.
    Clustered,
    /// Supplied vectors clustered with spherical k-means.
    Vectors,
    /// Supplied distribution matrix.
    Fixture,
}

/// One row of the topic table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopicReport {
    pub topic: usize,
    pub top_terms: Vec<TermWeight>,
    pub prevalence: f64,
    pub tfn: Tfn,
    pub sigma: f64,
    pub positivity: f64,
    pub negativity: f64,
    /// Documents whose most probable topic is this one.
    pub documents: usize,
    /// Set when the support reaches outside the polarity range [-1, 1].
    pub support_out_of_range: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub documents_in: usize,
    pub filtered_short: usize,
    pub empty_after_cleaning: usize,
    /// Cleaned documents with no vector or distribution row.
    pub excluded: usize,
    pub clustered: usize,
    pub topics: usize,
    pub seed: u64,
    pub source: TopicSource,
    pub supplied_polarities: usize,
    pub empty_ids: Vec<String>,
    pub excluded_ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunOutput {
    pub config: RunConfig,
    pub metadata: RunMetadata,
    /// Sorted by prevalence, most prevalent first.
    pub reports: Vec<TopicReport>,
}

/// In-memory inputs of a run.
#[derive(Debug, Clone, Default)]
pub struct RunInputs {
    pub posts: Vec<Post>,
    pub stopwords: Stopwords,
    pub lexicon: Lexicon,
    /// Dimension and vectors, keyed by post id.
    pub vectors: Option<(usize, Vec<DocVector>)>,
    pub distribution: Option<TopicDistribution>,
}

impl RunInputs {
    /// Loads every file named by `config`.
    pub fn load(config: &RunConfig) -> Result<Self, PipelineError> {
        let posts = corpus::load_posts(&config.input, config.format)?;
        let stopwords = match &config.stopwords {
            Some(p) => Stopwords::load(p)?,
            None => Stopwords::english(),
        };
        let lexicon = match &config.lexicon {
            Some(p) => Lexicon::load(p)?,
            None => Lexicon::english(),
        };
        let vectors = config.vectors.as_ref().map(topics::load_vectors).transpose()?;
        let distribution = config.dist_matrix.as_ref().map(topics::load_distribution).transpose()?;
        Ok(Self {
            posts,
            stopwords,
            lexicon,
            vectors,
            distribution,
        })
    }
}

/// Loads the configured inputs and runs every stage.
pub fn run_pipeline(config: &RunConfig) -> Result<RunOutput, PipelineError> {
    config.validate()?;
    let inputs = RunInputs::load(config)?;
    run_with(inputs, config)
}

struct Assigned {
    dist: TopicDistribution,
    hard: Vec<usize>,
    excluded_ids: Vec<String>,
    source: TopicSource,
}

type PostDoc = (Post, CleanDoc);

/// Runs the pipeline on already loaded inputs.
///
/// Stages: length filter, cleaning, polarity per post, topic distribution,
/// one fuzzy number per topic, and conformity per topic.
pub fn run_with(inputs: RunInputs, config: &RunConfig) -> Result<RunOutput, PipelineError> {
    config.validate()?;
    let RunInputs {
        posts,
        stopwords,
        lexicon,
        vectors,
        distribution,
    } = inputs;

    let documents_in = posts.len();
    let posts = corpus::filter_short(posts, config.min_chars);
    let filtered_short = documents_in - posts.len();

    let (live, empty): (Vec<PostDoc>, Vec<PostDoc>) = posts
        .into_iter()
        .map(|p| {
            let doc = corpus::preprocess(&p, &stopwords);
            (p, doc)
        })
        .partition(|(_, d)| !d.is_empty());
    let empty_ids: Vec<String> = empty.into_iter().map(|(p, _)| p.id).collect();

    let assigned = match (distribution, vectors) {
        (Some(dist), _) => assign_fixture(&live, dist, config)?,
        (None, Some((dim, vs))) => assign_clustered(&live, dim, vs, config)?,
        (None, None) => {
            let docs: Vec<CleanDoc> = live.iter().map(|(_, d)| d.clone()).collect();
            let space = topics::vectorize(&docs)?;
            let mut a = assign_clustered(&live, space.dim, space.vectors, config)?;
            a.source = TopicSource::Clustered;
            a
        }
    };

    let by_id: HashMap<&str, &(Post, CleanDoc)> = live.iter().map(|pd| (pd.0.id.as_str(), pd)).collect();
    let rows: Vec<&(Post, CleanDoc)> = assigned.dist.post_ids.iter().map(|id| by_id[id.as_str()]).collect();
    let k = assigned.dist.k();

    let scorer = Scorer::new(&lexicon).neg_window(config.neg_window);
    let polarities: Vec<f64> = rows.iter().map(|(p, d)| scorer.resolve(p, d).value).collect();
    let post_weights: Vec<f64> = rows.iter().map(|(p, _)| p.weight).collect();
    let supplied_polarities = rows.iter().filter(|(p, _)| p.polarity.is_some()).count();

    let mut clusters: Vec<Vec<&CleanDoc>> = vec![Vec::new(); k];
    for ((_, doc), &c) in rows.iter().zip(&assigned.hard) {
        clusters[c].push(doc);
    }
    let top_terms = top_terms_allowing_empty(&clusters, config.n_terms)?;
    let prevalence = topics::topic_prevalence(&assigned.dist);

    let mut reports = Vec::with_capacity(k);
    for topic in 0..k {
        let column: Vec<f64> = assigned.dist.column(topic).collect();
        let agg = fuzzy::aggregate_topic(&polarities, &column, &post_weights, config.scale, config.ramp)
            .map_err(|source| PipelineError::Fuzzy { topic, source })?;
        reports.push(TopicReport {
            topic,
            top_terms: top_terms[topic].clone(),
            prevalence: prevalence[topic],
            tfn: agg.tfn,
            sigma: agg.sigma,
            positivity: agg.conformity.positivity,
            negativity: agg.conformity.negativity,
            documents: clusters[topic].len(),
            support_out_of_range: agg.tfn.a < -1.0 || agg.tfn.b > 1.0,
        });
    }
    reports.sort_by(|x, y| y.prevalence.total_cmp(&x.prevalence).then(x.topic.cmp(&y.topic)));

    Ok(RunOutput {
        config: config.clone(),
        metadata: RunMetadata {
            documents_in,
            filtered_short,
            empty_after_cleaning: empty_ids.len(),
            excluded: assigned.excluded_ids.len(),
            clustered: rows.len(),
            topics: k,
            seed: config.seed,
            source: assigned.source,
            supplied_polarities,
            empty_ids,
            excluded_ids: assigned.excluded_ids,
        },
        reports,
    })
}

fn assign_fixture(
    live: &[(Post, CleanDoc)],
    dist: TopicDistribution,
    config: &RunConfig,
) -> Result<Assigned, PipelineError> {
    if let Some(k) = config.topics {
        if k != dist.k() {
            return Err(PipelineError::Config(format!(
                "topics = {k} but the distribution matrix has {} columns",
                dist.k()
            )));
        }
    }
    let mut ids = Vec::new();
    let mut rows = Vec::new();
    let mut excluded_ids = Vec::new();
    for (post, _) in live {
        match dist.row_of(&post.id) {
            Some(row) => {
                ids.push(post.id.clone());
                rows.push(row.to_vec());
            }
            None => excluded_ids.push(post.id.clone()),
        }
    }
    if ids.is_empty() {
        return Err(TopicsError::AllDocsEmpty.into());
    }
    let dist = TopicDistribution::from_rows(ids, rows, dist.k())?;
    let hard = dist.argmax();
    Ok(Assigned {
        dist,
        hard,
        excluded_ids,
        source: TopicSource::Fixture,
    })
}

fn assign_clustered(
    live: &[(Post, CleanDoc)],
    dim: usize,
    vectors: Vec<DocVector>,
    config: &RunConfig,
) -> Result<Assigned, PipelineError> {
    let k = config.topics.expect("validated");
    let mut by_id: HashMap<String, DocVector> = vectors.into_iter().map(|v| (v.post_id.clone(), v)).collect();
    let mut ordered = Vec::with_capacity(live.len());
    let mut excluded_ids = Vec::new();
    for (post, _) in live {
        match by_id.remove(&post.id) {
            Some(v) => ordered.push(v),
            None => excluded_ids.push(post.id.clone()),
        }
    }
    if ordered.is_empty() {
        return Err(TopicsError::AllDocsEmpty.into());
    }

    let options = ClusterOptions {
        k,
        seed: config.seed,
        max_iters: config.max_iters,
        restarts: config.restarts,
    };
    let model = topics::cluster(&ordered, dim, options)?;
    let dist = topics::soft_assign(&ordered, &model, config.temperature)?;
    Ok(Assigned {
        dist,
        hard: model.assignments,
        excluded_ids,
        source: TopicSource::Vectors,
    })
}

/// c-TF-IDF over the non-empty clusters; empty ones get no terms. Only a
/// supplied distribution can leave a topic without documents.
fn top_terms_allowing_empty(clusters: &[Vec<&CleanDoc>], n_terms: usize) -> Result<Vec<Vec<TermWeight>>, TopicsError> {
    let filled: Vec<usize> = (0..clusters.len()).filter(|&c| !clusters[c].is_empty()).collect();
    let groups: Vec<Vec<&CleanDoc>> = filled.iter().map(|&c| clusters[c].clone()).collect();
    let ranked = topics::ctfidf_top_terms(&groups, n_terms)?;
    let mut out = vec![Vec::new(); clusters.len()];
    for (c, terms) in filled.into_iter().zip(ranked) {
        out[c] = terms;
    }
    Ok(out)
}
