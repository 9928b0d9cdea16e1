use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DocVector, TermWeight, TopicsError, DEFAULT_MAX_ITERS, DEFAULT_RESTARTS};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClusterOptions {
    pub k: usize,
    pub seed: u64,
    pub max_iters: usize,
    /// Independent seedings; the run with the highest total similarity wins.
    pub restarts: usize,
}

impl ClusterOptions {
    pub fn new(k: usize, seed: u64) -> Self {
        Self {
            k,
            seed,
            max_iters: DEFAULT_MAX_ITERS,
            restarts: DEFAULT_RESTARTS,
        }
    }
}

/// Clustering result. `assignments[i]` is the hard cluster of `post_ids[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TopicModel {
    /// Unit-length centroids in the document vector space.
    pub centroids: Vec<Vec<f64>>,
    pub post_ids: Vec<String>,
    pub assignments: Vec<usize>,
    /// Filled in by c-TF-IDF once clusters are known.
    pub top_terms: Vec<Vec<TermWeight>>,
    pub iterations: usize,
}

impl TopicModel {
    pub fn k(&self) -> usize {
        self.centroids.len()
    }

    pub fn cluster_of(&self, post_id: &str) -> Option<usize> {
        self.post_ids
            .iter()
            .position(|id| id == post_id)
            .map(|i| self.assignments[i])
    }

    /// Member indices per cluster, each in ascending order.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.k()];
        for (i, &c) in self.assignments.iter().enumerate() {
            groups[c].push(i);
        }
        groups
    }
}

fn cosine_distance(v: &DocVector, centroid: &[f64]) -> f64 {
    (1.0 - v.dot(centroid)).max(0.0)
}

fn densify(v: &DocVector, dim: usize) -> Vec<f64> {
    let mut out = vec![0.0; dim];
    for &(i, x) in &v.values {
        out[i] = x;
    }
    out
}

/// Index of the most similar centroid; ties go to the lowest index.
fn nearest(v: &DocVector, centroids: &[Vec<f64>]) -> usize {
    let mut best = 0;
    let mut best_sim = f64::NEG_INFINITY;
    for (k, c) in centroids.iter().enumerate() {
        let sim = v.dot(c);
        if sim > best_sim {
            best = k;
            best_sim = sim;
        }
    }
    best
}

/// Draws an index with probability proportional to `weights`.
fn sample_weighted(weights: &[f64], total: f64, rng: &mut ChaCha8Rng) -> usize {
    let target = rng.gen::<f64>() * total;
    let mut acc = 0.0;
    let mut pick = None;
    for (i, &w) in weights.iter().enumerate() {
        if w <= 0.0 {
            continue;
        }
        acc += w;
        pick = Some(i);
        if acc > target {
            break;
        }
    }
    pick.expect("positive total has a positive entry")
}

/// Greedy k-means++ seeding under cosine distance: each step draws
/// `2 + ln k` candidates by squared distance and keeps the one that lowers
/// the total potential most.
fn seed_centroids(vectors: &[DocVector], dim: usize, k: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let n = vectors.len();
    let trials = 2 + (k as f64).ln().floor() as usize;
    let mut chosen = vec![false; n];
    let first = rng.gen_range(0..n);
    chosen[first] = true;
    let mut centroids = vec![densify(&vectors[first], dim)];
    let mut d2: Vec<f64> = vectors
        .iter()
        .map(|v| cosine_distance(v, &centroids[0]).powi(2))
        .collect();

    while centroids.len() < k {
        let total: f64 = d2.iter().sum();
        let (pick, next_d2) = if total > 0.0 {
            let mut best: Option<(usize, f64, Vec<f64>)> = None;
            for _ in 0..trials {
                let cand = sample_weighted(&d2, total, rng);
                let c = densify(&vectors[cand], dim);
                let cand_d2: Vec<f64> = d2
                    .iter()
                    .zip(vectors)
                    .map(|(&d, v)| d.min(cosine_distance(v, &c).powi(2)))
                    .collect();
                let potential: f64 = cand_d2.iter().sum();
                if best.as_ref().is_none_or(|b| potential < b.1) {
                    best = Some((cand, potential, cand_d2));
                }
            }
            let (pick, _, next) = best.expect("at least one trial");
            (pick, next)
        } else {
            // every remaining point coincides with a centroid
            let free: Vec<usize> = (0..n).filter(|&i| !chosen[i]).collect();
            (free[rng.gen_range(0..free.len())], d2.clone())
        };
        chosen[pick] = true;
        centroids.push(densify(&vectors[pick], dim));
        d2 = next_d2;
    }
    centroids
}

/// Moves the worst-fitting member of a multi-member cluster into each empty
/// cluster. Returns whether anything moved.
fn fill_empty(vectors: &[DocVector], centroids: &mut [Vec<f64>], assign: &mut [usize], dim: usize) -> bool {
    let k = centroids.len();
    let mut sizes = vec![0usize; k];
    for &c in assign.iter() {
        sizes[c] += 1;
    }
    let mut moved = false;
    for empty in 0..k {
        if sizes[empty] > 0 {
            continue;
        }
        let donor = (0..vectors.len())
            .filter(|&i| sizes[assign[i]] > 1)
            .min_by(|&a, &b| {
                let sa = vectors[a].dot(&centroids[assign[a]]);
                let sb = vectors[b].dot(&centroids[assign[b]]);
                sa.total_cmp(&sb)
            })
            .expect("k <= n leaves a multi-member cluster");
        sizes[assign[donor]] -= 1;
        sizes[empty] = 1;
        assign[donor] = empty;
        centroids[empty] = densify(&vectors[donor], dim);
        moved = true;
    }
    moved
}

fn update_centroids(vectors: &[DocVector], centroids: &mut [Vec<f64>], assign: &[usize], dim: usize) {
    let mut sums = vec![vec![0.0; dim]; centroids.len()];
    for (v, &c) in vectors.iter().zip(assign) {
        for &(i, x) in &v.values {
            sums[c][i] += x;
        }
    }
    for (centroid, sum) in centroids.iter_mut().zip(sums) {
        let norm = sum.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            *centroid = sum.into_iter().map(|x| x / norm).collect();
        }
    }
}

struct Run {
    centroids: Vec<Vec<f64>>,
    assign: Vec<usize>,
    iterations: usize,
    cohesion: f64,
}

fn lloyd(vectors: &[DocVector], dim: usize, k: usize, max_iters: usize, rng: &mut ChaCha8Rng) -> Run {
    let mut centroids = seed_centroids(vectors, dim, k, rng);
    let mut assign = vec![usize::MAX; vectors.len()];
    let mut iterations = 0;

    for _ in 0..max_iters.max(1) {
        iterations += 1;
        let mut changed = false;
        for (a, v) in assign.iter_mut().zip(vectors) {
            let best = nearest(v, &centroids);
            if *a != best {
                *a = best;
                changed = true;
            }
        }
        changed |= fill_empty(vectors, &mut centroids, &mut assign, dim);
        update_centroids(vectors, &mut centroids, &assign, dim);
        if !changed {
            break;
        }
    }

    let cohesion = vectors.iter().zip(&assign).map(|(v, &c)| v.dot(&centroids[c])).sum();
    Run {
        centroids,
        assign,
        iterations,
        cohesion,
    }
}

/// Spherical k-means with seeded greedy k-means++ initialization.
///
/// The result depends only on `(vectors, dim, options)`. Every cluster is
/// guaranteed at least one member.
pub fn cluster(vectors: &[DocVector], dim: usize, options: ClusterOptions) -> Result<TopicModel, TopicsError> {
    let n = vectors.len();
    let k = options.k;
    if k < 1 || k > n {
        return Err(TopicsError::InvalidTopicCount { k, n });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut best = lloyd(vectors, dim, k, options.max_iters, &mut rng);
    for _ in 1..options.restarts.max(1) {
        let run = lloyd(vectors, dim, k, options.max_iters, &mut rng);
        if run.cohesion > best.cohesion + 1e-9 {
            best = run;
        }
    }

    Ok(TopicModel {
        top_terms: vec![Vec::new(); k],
        centroids: best.centroids,
        post_ids: vectors.iter().map(|v| v.post_id.clone()).collect(),
        assignments: best.assign,
        iterations: best.iterations,
    })
}
