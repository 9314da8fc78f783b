//! Synthetic corpora and random vectors for tests, probes and demos.
//!
//! The topic generator draws every document from one topic's private
//! keyword pool mixed with a stopword pool shared by all topics. Stopwords
//! follow a Zipf law and are the only words in the accompanying lexicon, so
//! topic keywords look rare in "general language".

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eval::LabeledDocument;
use crate::sparse::{unit_normalize, SparseVector};

const STOPWORDS: [&str; 100] = [
    "the", "of", "and", "to", "a", "in", "is", "that", "for", "it", "as", "was", "with", "be",
    "by", "on", "not", "he", "this", "are", "or", "his", "from", "at", "which", "but", "have",
    "an", "had", "they", "you", "were", "their", "one", "all", "we", "can", "her", "has",
    "there", "been", "if", "more", "when", "will", "would", "who", "so", "no", "she", "other",
    "its", "may", "these", "what", "them", "than", "some", "him", "time", "into", "only", "do",
    "could", "new", "about", "two", "then", "first", "also", "any", "my", "now", "such",
    "like", "our", "over", "man", "me", "even", "most", "made", "after", "many", "before",
    "must", "through", "back", "years", "where", "much", "your", "way", "well", "down",
    "should", "because", "each", "just", "those",
];

const SYLLABLES: [&str; 16] = [
    "ba", "ko", "ri", "tu", "me", "sa", "lo", "ni", "pe", "du", "gi", "fa", "zo", "vy", "hu",
    "qe",
];

/// Parameters of the two-pool topic generator.
#[derive(Debug, Clone, PartialEq)]
pub struct TopicCorpusSpec {
    pub topics: usize,
    pub keywords_per_topic: usize,
    pub stopwords: usize,
    pub docs_per_topic: usize,
    pub min_tokens: usize,
    pub max_tokens: usize,
    /// Probability that a token is drawn from the topic's keyword pool.
    pub keyword_share: f64,
    pub seed: u64,
}

impl Default for TopicCorpusSpec {
    fn default() -> Self {
        Self {
            topics: 2,
            keywords_per_topic: 50,
            stopwords: 100,
            docs_per_topic: 200,
            min_tokens: 20,
            max_tokens: 60,
            keyword_share: 0.5,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticCorpus {
    pub documents: Vec<LabeledDocument>,
    /// `(word, raw_count)` pairs for a general-language lexicon.
    pub lexicon_counts: Vec<(String, u64)>,
}

impl SyntheticCorpus {
    pub fn topic_label(topic: usize) -> String {
        format!("topic{topic}")
    }

    /// Lexicon in the `term<TAB>count` file format.
    pub fn lexicon_tsv(&self) -> String {
        self.lexicon_counts
            .iter()
            .map(|(w, c)| format!("{w}\t{c}\n"))
            .collect()
    }

    /// Documents as JSON lines with `text` and `label` fields.
    pub fn labeled_jsonl(&self) -> String {
        self.documents
            .iter()
            .map(|d| {
                let mut line = serde_json::json!({ "text": d.text, "label": d.label }).to_string();
                line.push('\n');
                line
            })
            .collect()
    }
}

/// Pseudo-word for keyword `index` of `topic`. The leading syllable pair
/// encodes the topic, so pools never overlap.
pub fn topic_keyword(topic: usize, index: usize) -> String {
    let n = SYLLABLES.len();
    let mut word = String::new();
    for digit in [topic / n, topic % n, index / n % n, index % n] {
        word.push_str(SYLLABLES[digit]);
    }
    if index >= n * n {
        word.push_str(&(index / (n * n)).to_string());
    }
    word
}

pub fn stopword(index: usize) -> String {
    match STOPWORDS.get(index) {
        Some(w) => (*w).to_owned(),
        None => format!("stop{index}"),
    }
}

pub fn generate_topic_corpus(spec: &TopicCorpusSpec) -> SyntheticCorpus {
    assert!(spec.topics > 0 && spec.keywords_per_topic > 0 && spec.stopwords > 0);
    assert!(spec.min_tokens > 0 && spec.min_tokens <= spec.max_tokens);
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let stop_words: Vec<String> = (0..spec.stopwords).map(stopword).collect();
    let zipf =
        WeightedIndex::new((1..=spec.stopwords).map(|r| 1.0 / r as f64)).expect("positive weights");

    let mut documents = Vec::with_capacity(spec.topics * spec.docs_per_topic);
    for topic in 0..spec.topics {
        let keywords: Vec<String> = (0..spec.keywords_per_topic)
            .map(|k| topic_keyword(topic, k))
            .collect();
        for doc in 0..spec.docs_per_topic {
            let len = rng.random_range(spec.min_tokens..=spec.max_tokens);
            let words: Vec<&str> = (0..len)
                .map(|_| {
                    if rng.random::<f64>() < spec.keyword_share {
                        keywords[rng.random_range(0..keywords.len())].as_str()
                    } else {
                        stop_words[zipf.sample(&mut rng)].as_str()
                    }
                })
                .collect();
            documents.push(LabeledDocument {
                id: format!("{topic}-{doc}"),
                text: words.join(" "),
                label: SyntheticCorpus::topic_label(topic),
            });
        }
    }

    let lexicon_counts = stop_words
        .into_iter()
        .enumerate()
        .map(|(r, w)| (w, (1_000_000.0 / (r + 1) as f64).round() as u64))
        .collect();
    SyntheticCorpus {
        documents,
        lexicon_counts,
    }
}

/// A random nonnegative unit vector with `nnz` distinct nonzero entries.
pub fn random_unit_vector(rng: &mut impl Rng, dim: usize, nnz: usize) -> SparseVector {
    let nnz = nnz.min(dim);
    let idx = rand::seq::index::sample(rng, dim, nnz);
    let pairs: Vec<(u32, f64)> = idx
        .into_iter()
        .map(|i| (i as u32, rng.random_range(0.01..1.0)))
        .collect();
    unit_normalize(&SparseVector::from_pairs(dim, pairs).expect("indices below dim"))
}
