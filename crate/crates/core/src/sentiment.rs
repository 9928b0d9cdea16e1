//! Lexicon-based polarity scoring.

use std::collections::{HashMap, HashSet};
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::{CleanDoc, Post};

const DEFAULT_LEXICON: &str = include_str!("../data/lexicon.tsv");

/// Number of preceding tokens inspected for negators and intensifiers.
pub const DEFAULT_NEG_WINDOW: usize = 1;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: polarity {value} for `{word}` outside [-1, 1]")]
    PolarityOutOfRange { line: usize, word: String, value: f64 },
    #[error("line {line}: intensifier `{word}` needs a multiplier > 0, got {value}")]
    InvalidMultiplier { line: usize, word: String, value: f64 },
    #[error("line {line}: duplicate word `{word}`")]
    DuplicateWord { line: usize, word: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Entries,
    Negators,
    Intensifiers,
}

/// Polarity lexicon with negation and intensifier patterns.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Lexicon {
    entries: HashMap<String, f64>,
    negators: HashSet<String>,
    intensifiers: HashMap<String, f64>,
}

impl Lexicon {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The miniature English lexicon bundled with the crate.
    pub fn english() -> Self {
        Self::parse(DEFAULT_LEXICON).expect("bundled lexicon is valid")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, LexiconError> {
        let path = path.as_ref();
        let contents = std::fs::read_to_string(path).map_err(|source| LexiconError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&contents)
    }

    /// Parses the tab-separated lexicon format.
    ///
    /// Lines before any section header are `word<TAB>polarity`. A `[negators]`
    /// section lists one word per line and an `[intensifiers]` section holds
    /// `word<TAB>multiplier` pairs. Blank lines and `#` comments are skipped.
    /// Words are lowercased, and a word may appear in only one of the three
    /// sets.
    pub fn parse(contents: &str) -> Result<Self, LexiconError> {
        let mut lex = Self::default();
        let mut section = Section::Entries;
        let mut seen = HashSet::new();

        for (idx, raw) in contents.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            match trimmed.to_ascii_lowercase().as_str() {
                "[negators]" => {
                    section = Section::Negators;
                    continue;
                }
                "[intensifiers]" => {
                    section = Section::Intensifiers;
                    continue;
                }
                s if s.starts_with('[') => {
                    return Err(LexiconError::Parse {
                        line,
                        message: format!("unknown section {trimmed}"),
                    })
                }
                _ => {}
            }

            let mut fields = trimmed.split('\t').map(str::trim);
            let word = fields.next().unwrap_or_default().to_lowercase();
            let value = fields.next();
            if fields.next().is_some() {
                return Err(LexiconError::Parse {
                    line,
                    message: "too many fields".into(),
                });
            }
            if !seen.insert(word.clone()) {
                return Err(LexiconError::DuplicateWord { line, word });
            }

            match section {
                Section::Negators => {
                    if value.is_some() {
                        return Err(LexiconError::Parse {
                            line,
                            message: format!("negator `{word}` takes no value"),
                        });
                    }
                    lex.negators.insert(word);
                }
                Section::Entries => {
                    let value = parse_value(line, &word, value)?;
                    if !(-1.0..=1.0).contains(&value) {
                        return Err(LexiconError::PolarityOutOfRange { line, word, value });
                    }
                    lex.entries.insert(word, value);
                }
                Section::Intensifiers => {
                    let value = parse_value(line, &word, value)?;
                    if !(value > 0.0 && value.is_finite()) {
                        return Err(LexiconError::InvalidMultiplier { line, word, value });
                    }
                    lex.intensifiers.insert(word, value);
                }
            }
        }
        Ok(lex)
    }

    pub fn with_entry(mut self, word: &str, polarity: f64) -> Self {
        assert!((-1.0..=1.0).contains(&polarity));
        self.entries.insert(word.to_lowercase(), polarity);
        self
    }

    pub fn with_negator(mut self, word: &str) -> Self {
        self.negators.insert(word.to_lowercase());
        self
    }

    pub fn with_intensifier(mut self, word: &str, multiplier: f64) -> Self {
        assert!(multiplier > 0.0);
        self.intensifiers.insert(word.to_lowercase(), multiplier);
        self
    }

    /// Copy with every entry polarity negated.
    pub fn negated(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|(w, p)| (w.clone(), -p)).collect(),
            ..self.clone()
        }
    }

    pub fn polarity(&self, word: &str) -> Option<f64> {
        self.entries.get(word).copied()
    }

    pub fn is_negator(&self, word: &str) -> bool {
        self.negators.contains(word)
    }

    pub fn multiplier(&self, word: &str) -> Option<f64> {
        self.intensifiers.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn parse_value(line: usize, word: &str, value: Option<&str>) -> Result<f64, LexiconError> {
    let raw = value.ok_or_else(|| LexiconError::Parse {
        line,
        message: format!("missing value for `{word}` (expected word<TAB>number)"),
    })?;
    raw.parse::<f64>().map_err(|e| LexiconError::Parse {
        line,
        message: format!("invalid number `{raw}`: {e}"),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolaritySource {
    Computed,
    Supplied,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarityScore {
    pub post_id: String,
    pub value: f64,
    pub source: PolaritySource,
}

/// Lexicon scorer with a configurable negation window.
#[derive(Debug, Clone)]
pub struct Scorer<'a> {
    lexicon: &'a Lexicon,
    neg_window: usize,
}

impl<'a> Scorer<'a> {
    pub fn new(lexicon: &'a Lexicon) -> Self {
        Self {
            lexicon,
            neg_window: DEFAULT_NEG_WINDOW,
        }
    }

    pub fn neg_window(mut self, window: usize) -> Self {
        self.neg_window = window;
        self
    }

    /// Mean polarity of the lexicon hits in `tokens`, in [-1, 1].
    ///
    /// Each hit is flipped once per negator among the preceding `neg_window`
    /// tokens and scaled by every intensifier there. No hits scores 0.
    pub fn score_tokens<S: AsRef<str>>(&self, tokens: &[S]) -> f64 {
        let mut sum = 0.0;
        let mut hits = 0usize;
        for (i, tok) in tokens.iter().enumerate() {
            let Some(polarity) = self.lexicon.polarity(tok.as_ref()) else {
                continue;
            };
            let mut factor = 1.0;
            for prev in &tokens[i.saturating_sub(self.neg_window)..i] {
                let prev = prev.as_ref();
                if self.lexicon.is_negator(prev) {
                    factor = -factor;
                }
                if let Some(m) = self.lexicon.multiplier(prev) {
                    factor *= m;
                }
            }
            sum += polarity * factor;
            hits += 1;
        }
        if hits == 0 {
            return 0.0;
        }
        (sum / hits as f64).clamp(-1.0, 1.0)
    }

    pub fn score(&self, doc: &CleanDoc) -> PolarityScore {
        PolarityScore {
            post_id: doc.post_id.clone(),
            value: self.score_tokens(&doc.tokens),
            source: PolaritySource::Computed,
        }
    }

    /// Prefers the polarity carried by the post record over a computed score.
    pub fn resolve(&self, post: &Post, doc: &CleanDoc) -> PolarityScore {
        match post.polarity {
            Some(value) => PolarityScore {
                post_id: post.id.clone(),
                value,
                source: PolaritySource::Supplied,
            },
            None => self.score(doc),
        }
    }
}

/// Scores `doc` with the default negation window.
pub fn score_polarity(doc: &CleanDoc, lex: &Lexicon) -> PolarityScore {
    Scorer::new(lex).score(doc)
}

pub fn resolve_polarity(post: &Post, doc: &CleanDoc, lex: &Lexicon) -> PolarityScore {
    Scorer::new(lex).resolve(post, doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn doc(tokens: &[&str]) -> CleanDoc {
        CleanDoc::new("d", tokens.iter().map(|s| s.to_string()).collect())
    }

    fn good_bad() -> Lexicon {
        Lexicon::empty()
            .with_entry("good", 0.7)
            .with_entry("bad", -0.7)
            .with_negator("not")
    }

    #[test]
    fn parses_entries() {
        let lex = Lexicon::parse("good\t0.7\nbad\t-0.7\n").unwrap();
        assert_eq!(lex.len(), 2);
        assert_eq!(lex.polarity("good"), Some(0.7));
        assert_eq!(lex.polarity("bad"), Some(-0.7));
    }

    #[test]
    fn out_of_range_polarity_names_line() {
        let err = Lexicon::parse("fine\t0.1\ngood\t1.5\n").unwrap_err();
        assert!(matches!(err, LexiconError::PolarityOutOfRange { line: 2, .. }));
    }

    #[test]
    fn empty_lexicon_scores_zero() {
        let lex = Lexicon::parse("").unwrap();
        assert!(lex.is_empty());
        assert_eq!(score_polarity(&doc(&["good"]), &lex).value, 0.0);
    }

    #[test]
    fn sections_and_duplicates() {
        let lex = Lexicon::parse("# c\ngood\t0.7\n\n[negators]\nnot\n[intensifiers]\nvery\t1.5\n").unwrap();
        assert!(lex.is_negator("not"));
        assert_eq!(lex.multiplier("very"), Some(1.5));

        let dup = Lexicon::parse("good\t0.7\n[negators]\ngood\n").unwrap_err();
        assert!(matches!(dup, LexiconError::DuplicateWord { line: 3, .. }));

        let bad_num = Lexicon::parse("good\tx\n").unwrap_err();
        assert!(matches!(bad_num, LexiconError::Parse { line: 1, .. }));

        let missing = Lexicon::parse("good\n").unwrap_err();
        assert!(matches!(missing, LexiconError::Parse { line: 1, .. }));

        let mult = Lexicon::parse("[intensifiers]\nvery\t0\n").unwrap_err();
        assert!(matches!(mult, LexiconError::InvalidMultiplier { line: 2, .. }));
    }

    #[test]
    fn bundled_lexicon_loads() {
        let lex = Lexicon::english();
        assert!(lex.len() >= 40);
        assert!(lex.is_negator("not"));
    }

    #[test]
    fn single_hit() {
        assert_eq!(score_polarity(&doc(&["good"]), &good_bad()).value, 0.7);
    }

    #[test]
    fn negation_flips_hit() {
        assert_eq!(score_polarity(&doc(&["not", "good"]), &good_bad()).value, -0.7);
    }

    #[test]
    fn negator_outside_window_ignored() {
        let lex = good_bad();
        let tokens = ["not", "really", "good"];
        assert_eq!(Scorer::new(&lex).score_tokens(&tokens), 0.7);
        assert_eq!(Scorer::new(&lex).neg_window(2).score_tokens(&tokens), -0.7);
    }

    #[test]
    fn double_negation_cancels() {
        let lex = good_bad();
        let s = Scorer::new(&lex).neg_window(2);
        assert_eq!(s.score_tokens(&["not", "not", "good"]), 0.7);
    }

    #[test]
    fn intensifier_scales_and_clamps() {
        let lex = good_bad().with_intensifier("very", 2.0);
        let s = Scorer::new(&lex);
        assert_eq!(s.score_tokens(&["very", "good"]), 1.0);
        assert!((s.score_tokens(&["very", "good", "bad"]) - 0.35).abs() < 1e-12);
    }

    #[test]
    fn no_hits_scores_zero() {
        assert_eq!(score_polarity(&doc(&["the", "sky"]), &good_bad()).value, 0.0);
    }

    #[test]
    fn mixed_order() {
        let lex = good_bad();
        let s = Scorer::new(&lex);
        assert!(s.score_tokens(&["good", "good"]) >= s.score_tokens(&["good", "bad"]));
    }

    #[test]
    fn resolve_prefers_supplied() {
        let lex = good_bad();
        let post = Post::new("p", "terrible awful").with_polarity(0.5);
        let r = resolve_polarity(&post, &doc(&["bad"]), &lex);
        assert_eq!(r.value, 0.5);
        assert_eq!(r.source, PolaritySource::Supplied);

        let post = Post::new("p", "good");
        let r = resolve_polarity(&post, &doc(&["good"]), &lex);
        assert_eq!((r.value, r.source), (0.7, PolaritySource::Computed));

        let r = resolve_polarity(&post, &doc(&[]), &lex);
        assert_eq!((r.value, r.source), (0.0, PolaritySource::Computed));
    }

    fn token_strategy() -> impl Strategy<Value = Vec<String>> {
        prop::collection::vec(
            prop::sample::select(vec!["good", "bad", "not", "very", "sky", "great", "awful"]),
            0..20,
        )
        .prop_map(|v| v.into_iter().map(String::from).collect())
    }

    fn rich_lexicon() -> Lexicon {
        good_bad()
            .with_entry("great", 1.0)
            .with_entry("awful", -1.0)
            .with_intensifier("very", 1.8)
    }

    proptest! {
        #[test]
        fn score_in_range(tokens in token_strategy(), window in 0usize..4) {
            let lex = rich_lexicon();
            let v = Scorer::new(&lex).neg_window(window).score_tokens(&tokens);
            prop_assert!((-1.0..=1.0).contains(&v));
        }

        #[test]
        fn negated_lexicon_negates_score(tokens in token_strategy(), window in 0usize..4) {
            let lex = rich_lexicon();
            let neg = lex.negated();
            let a = Scorer::new(&lex).neg_window(window).score_tokens(&tokens);
            let b = Scorer::new(&neg).neg_window(window).score_tokens(&tokens);
            prop_assert_eq!(a, -b);
        }

        #[test]
        fn deterministic(tokens in token_strategy()) {
            let lex = rich_lexicon();
            let a = Scorer::new(&lex).score_tokens(&tokens);
            let b = Scorer::new(&lex).score_tokens(&tokens);
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
    }
}
