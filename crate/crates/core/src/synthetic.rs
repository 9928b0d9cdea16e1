//! Seeded synthetic corpora with known topic structure.
//!
//! Used by the test suites, the benchmark-sized runs and the CLI `synth`
//! command. Every group draws from its own vocabulary, so a correct topic
//! model recovers the groups exactly.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::corpus::Post;

/// Words that make up one synthetic topic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedGroup {
    pub name: String,
    pub topical: Vec<String>,
    /// Sentiment word pools. Each document plants words from one pool,
    /// chosen uniformly.
    pub sentiment_pools: Vec<Vec<String>>,
}

impl SeedGroup {
    fn new(name: &str, topical: &[&str], pools: &[&[&str]]) -> Self {
        Self {
            name: name.into(),
            topical: topical.iter().map(|s| s.to_string()).collect(),
            sentiment_pools: pools
                .iter()
                .map(|p| p.iter().map(|s| s.to_string()).collect())
                .collect(),
        }
    }

    /// Every word the group can emit.
    pub fn vocabulary(&self) -> Vec<String> {
        let mut v: Vec<String> = self
            .topical
            .iter()
            .chain(self.sentiment_pools.iter().flatten())
            .cloned()
            .collect();
        v.sort();
        v.dedup();
        v
    }
}

/// Three groups: uniformly positive transit posts, uniformly negative tax
/// posts, and park posts split between praise and complaint.
pub fn planted_groups() -> Vec<SeedGroup> {
    vec![
        SeedGroup::new(
            "transit",
            &[
                "tram",
                "bus",
                "ticket",
                "station",
                "driver",
                "route",
                "schedule",
                "platform",
                "commuter",
                "timetable",
                "carriage",
                "depot",
            ],
            &[&["good", "great", "excellent", "happy"]],
        ),
        SeedGroup::new(
            "taxes",
            &[
                "tax",
                "budget",
                "council",
                "pension",
                "wage",
                "salary",
                "inflation",
                "invoice",
                "payment",
                "fiscal",
                "treasury",
                "levy",
            ],
            &[&["bad", "terrible", "awful", "sad"]],
        ),
        SeedGroup::new(
            "parks",
            &[
                "park",
                "tree",
                "garden",
                "bench",
                "playground",
                "lawn",
                "fountain",
                "meadow",
                "flowers",
                "pond",
                "trail",
                "picnic",
            ],
            &[&["nice", "beautiful", "pleasant"], &["dirty", "ugly", "noisy"]],
        ),
    ]
}

/// `n` groups of letter-only pseudo-words, each with a random sentiment mix.
pub fn generated_groups(n: usize, words_per_group: usize) -> Vec<SeedGroup> {
    let positive = [
        "good",
        "great",
        "nice",
        "happy",
        "beautiful",
        "safe",
        "clean",
        "friendly",
    ];
    let negative = ["bad", "awful", "dirty", "slow", "broken", "expensive", "noisy", "wrong"];
    (0..n)
        .map(|g| {
            let topical = (0..words_per_group).map(|j| pseudo_word(g, j)).collect();
            let pools = match g % 3 {
                0 => vec![positive[..4].to_vec()],
                1 => vec![negative[..4].to_vec()],
                _ => vec![positive[4..].to_vec(), negative[4..].to_vec()],
            };
            SeedGroup {
                name: format!("group{g}"),
                topical,
                sentiment_pools: pools
                    .into_iter()
                    .map(|p| p.into_iter().map(String::from).collect())
                    .collect(),
            }
        })
        .collect()
}

/// Deterministic lowercase word unique to `(group, index)`.
fn pseudo_word(group: usize, index: usize) -> String {
    const CONSONANTS: &[u8] = b"bdfgklmnprstvz";
    const VOWELS: &[u8] = b"aeiou";
    let mut out = String::from("q");
    for mut n in [group, index] {
        loop {
            out.push(CONSONANTS[n % CONSONANTS.len()] as char);
            n /= CONSONANTS.len();
            out.push(VOWELS[n % VOWELS.len()] as char);
            n /= VOWELS.len();
            if n == 0 {
                break;
            }
        }
        out.push('x');
    }
    out
}

/// Generates `docs_per_group` posts per group, round-robin across groups.
///
/// Each post holds six to nine topical words and two sentiment words and is
/// padded with topical words until it is at least 60 characters long.
pub fn corpus(groups: &[SeedGroup], docs_per_group: usize, seed: u64) -> Vec<Post> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut posts = Vec::with_capacity(groups.len() * docs_per_group);
    for i in 0..docs_per_group {
        for (g, group) in groups.iter().enumerate() {
            let n_topical = rng.gen_range(6..=9);
            let mut words: Vec<&str> = (0..n_topical)
                .map(|_| group.topical.choose(&mut rng).expect("non-empty vocabulary").as_str())
                .collect();
            let pool = group
                .sentiment_pools
                .choose(&mut rng)
                .expect("at least one sentiment pool");
            for _ in 0..2 {
                words.push(pool.choose(&mut rng).expect("non-empty pool"));
            }
            words.shuffle(&mut rng);
            let mut text = words.join(" ");
            while text.chars().count() < 60 {
                text.push(' ');
                text.push_str(group.topical.choose(&mut rng).expect("non-empty vocabulary"));
            }
            posts.push(Post::new(format!("g{g}-{i}"), text));
        }
    }
    posts
}
