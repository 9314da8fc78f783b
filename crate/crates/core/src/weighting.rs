//! Term weighting: Normal Exclusion, Bi-Normal Separation and smoothed IDF,
//! plus the word-frequency lexicon that Normal Exclusion compares against.
//!
//! Normal Exclusion scores a term by how far apart its document rate in the
//! positive corpus and its relative frequency in general language sit on the
//! probit scale:
//!
//! ```text
//! NE(t) = | F⁻¹(clamp(tpr + ε)) − F⁻¹(clamp(freq + ε)) |
//! ```
//!
//! where `clamp` restricts its argument to `[ε, 1 − ε]`. Bi-Normal Separation
//! is the same expression with an empirical negative-class rate in place of
//! the lexicon frequency.

use std::collections::HashMap;
use std::fmt;
use std::io::BufRead;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normal::inverse_normal_cdf;
use crate::sparse::{unit_normalize, SparseVector};
use crate::text::{TermStatistics, Vocabulary};

pub const DEFAULT_EPSILON: f64 = 0.0005;

/// Probability offset, guaranteed to lie in the open interval `(0, 0.5)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Epsilon(f64);

impl Epsilon {
    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value < 0.5 {
            Ok(Self(value))
        } else {
            Err(Error::InvalidEpsilon(value))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    /// Offsets a rate by ε and clamps it into `[ε, 1 − ε]`.
    pub fn offset(self, rate: f64) -> f64 {
        (rate + self.0).clamp(self.0, 1.0 - self.0)
    }
}

impl Default for Epsilon {
    fn default() -> Self {
        Self(DEFAULT_EPSILON)
    }
}

impl TryFrom<f64> for Epsilon {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self> {
        Epsilon::new(value)
    }
}

impl From<Epsilon> for f64 {
    fn from(e: Epsilon) -> f64 {
        e.0
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct WeightingConfig {
    pub epsilon: Epsilon,
    pub lexicon_path: Option<PathBuf>,
}

/// Which document representation a model is built on.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Weighting {
    #[default]
    #[serde(rename = "ne-tf")]
    NeTf,
    #[serde(rename = "tf-idf")]
    TfIdf,
}

impl Weighting {
    pub const ALL: [Weighting; 2] = [Weighting::NeTf, Weighting::TfIdf];

    pub fn name(self) -> &'static str {
        match self {
            Weighting::NeTf => "ne-tf",
            Weighting::TfIdf => "tf-idf",
        }
    }
}

impl fmt::Display for Weighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Weighting {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Weighting::ALL
            .into_iter()
            .find(|w| w.name() == s)
            .ok_or_else(|| Error::UnknownWeighting(s.to_owned()))
    }
}

fn probit_separation(a: f64, b: f64, epsilon: Epsilon) -> f64 {
    let qa = inverse_normal_cdf(epsilon.offset(a)).expect("offset rate lies in (0, 1)");
    let qb = inverse_normal_cdf(epsilon.offset(b)).expect("offset rate lies in (0, 1)");
    (qa - qb).abs()
}

/// Bi-Normal Separation of a term with positive rate `tpr` and negative rate `fpr`.
pub fn bns_score(tpr: f64, fpr: f64, epsilon: Epsilon) -> f64 {
    probit_separation(tpr, fpr, epsilon)
}

/// Normal Exclusion of a term with positive rate `tpr` and lexicon frequency `word_freq`.
pub fn ne_score(tpr: f64, word_freq: f64, epsilon: Epsilon) -> f64 {
    probit_separation(tpr, word_freq, epsilon)
}

/// Relative frequencies of words in general language.
///
/// Absent words have frequency exactly 0.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WordFrequencyTable {
    freq: HashMap<String, f64>,
    total_tokens: u64,
}

impl WordFrequencyTable {
    /// Normalizes raw counts by their sum. Terms are lowercased and repeated
    /// terms have their counts added.
    pub fn from_counts<S: AsRef<str>>(counts: impl IntoIterator<Item = (S, u64)>) -> Self {
        let mut raw: HashMap<String, u64> = HashMap::new();
        for (term, count) in counts {
            *raw.entry(term.as_ref().to_lowercase()).or_insert(0) += count;
        }
        let total_tokens: u64 = raw.values().sum();
        let freq = raw
            .into_iter()
            .map(|(t, c)| {
                let f = if total_tokens > 0 {
                    c as f64 / total_tokens as f64
                } else {
                    0.0
                };
                (t, f)
            })
            .collect();
        Self { freq, total_tokens }
    }

    /// Reads `term<TAB>raw_count` lines. Blank lines are ignored.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
        Self::from_reader(std::io::BufReader::new(file), path)
    }

    pub fn from_reader(reader: impl BufRead, source: impl AsRef<Path>) -> Result<Self> {
        let source = source.as_ref();
        let mut counts = Vec::new();
        for (i, line) in reader.lines().enumerate() {
            let line_no = i + 1;
            let line = line.map_err(|e| Error::io(source, e))?;
            let line = line.trim_end_matches('\r');
            if line.trim().is_empty() {
                continue;
            }
            let (term, count) = line
                .split_once('\t')
                .filter(|(t, _)| !t.is_empty())
                .ok_or_else(|| Error::MalformedLexiconLine {
                    path: source.to_path_buf(),
                    line: line_no,
                })?;
            let count: u64 = count
                .trim()
                .parse()
                .map_err(|_| Error::InvalidLexiconCount {
                    path: source.to_path_buf(),
                    line: line_no,
                    value: count.to_owned(),
                })?;
            counts.push((term.to_owned(), count));
        }
        let table = Self::from_counts(counts);
        if table.total_tokens == 0 {
            return Err(Error::EmptyLexicon(source.to_path_buf()));
        }
        Ok(table)
    }

    pub fn freq(&self, term: &str) -> f64 {
        self.freq.get(term).copied().unwrap_or(0.0)
    }

    pub fn total_tokens(&self) -> u64 {
        self.total_tokens
    }

    pub fn len(&self) -> usize {
        self.freq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.freq.is_empty()
    }
}

/// One nonnegative weight per vocabulary dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightVector(Vec<f64>);

impl WeightVector {
    pub fn new(weights: Vec<f64>) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !(**w >= 0.0 && w.is_finite())) {
            return Err(Error::InvalidArgument(format!(
                "weights must be finite and nonnegative, found {w}"
            )));
        }
        Ok(Self(weights))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, index: usize) -> f64 {
        self.0[index]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

fn check_stats(stats: &TermStatistics, vocab_len: usize) -> Result<()> {
    if vocab_len == 0 {
        return Err(Error::EmptyCorpus);
    }
    if stats.len() != vocab_len {
        return Err(Error::DimensionMismatch {
            expected: vocab_len,
            found: stats.len(),
        });
    }
    Ok(())
}

/// Normal Exclusion weight for every vocabulary term.
pub fn ne_weight_vector(
    stats: &TermStatistics,
    vocab: &Vocabulary,
    table: &WordFrequencyTable,
    epsilon: Epsilon,
) -> Result<WeightVector> {
    check_stats(stats, vocab.len())?;
    let weights = vocab
        .terms()
        .iter()
        .enumerate()
        .map(|(d, term)| ne_score(stats.rate(d), table.freq(term), epsilon))
        .collect();
    Ok(WeightVector(weights))
}

/// Bi-Normal Separation weights from a positive and a negative corpus over
/// the same vocabulary.
pub fn bns_weight_vector(
    positive: &TermStatistics,
    negative: &TermStatistics,
    epsilon: Epsilon,
) -> Result<WeightVector> {
    check_stats(negative, positive.len())?;
    let weights = (0..positive.len())
        .map(|d| bns_score(positive.rate(d), negative.rate(d), epsilon))
        .collect();
    Ok(WeightVector(weights))
}

/// Smoothed inverse document frequency `ln(N / (1 + df))`, floored at zero.
pub fn idf_weight_vector(stats: &TermStatistics) -> Result<WeightVector> {
    check_stats(stats, stats.len())?;
    let n = stats.n_docs() as f64;
    let weights = (0..stats.len())
        .map(|d| (n / (1.0 + stats.doc_count(d) as f64)).ln().max(0.0))
        .collect();
    Ok(WeightVector(weights))
}

/// Scales a term-frequency vector by per-term weights and normalizes it to
/// unit length.
pub fn weighted_unit_vector(tf: &SparseVector, weights: &WeightVector) -> Result<SparseVector> {
    Ok(unit_normalize(&tf.hadamard(weights.as_slice())?))
}

pub fn ne_tf_vector(tf: &SparseVector, ne_weights: &WeightVector) -> Result<SparseVector> {
    weighted_unit_vector(tf, ne_weights)
}

pub fn tfidf_vector(tf: &SparseVector, corpus_doc_freqs: &TermStatistics) -> Result<SparseVector> {
    tf.check_dim(corpus_doc_freqs.len())?;
    weighted_unit_vector(tf, &idf_weight_vector(corpus_doc_freqs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{build_vocabulary, document_frequency_rates, term_frequencies, tokenize};
    use proptest::prelude::*;
    use std::io::Cursor;

    fn eps() -> Epsilon {
        Epsilon::default()
    }

    #[test]
    fn epsilon_bounds() {
        assert!(Epsilon::new(0.0).is_err());
        assert!(Epsilon::new(0.5).is_err());
        assert!(Epsilon::new(f64::NAN).is_err());
        assert_eq!(Epsilon::new(0.01).unwrap().get(), 0.01);
        assert_eq!(eps().offset(1.0), 0.9995);
        assert_eq!(eps().offset(0.0), 0.0005);
    }

    // Expected values computed with 40-digit mpmath: sqrt(2)*erfinv(2p-1).
    #[test]
    fn bns_examples() {
        assert_eq!(bns_score(0.1, 0.1, eps()), 0.0);
        assert!((bns_score(0.5, 0.0, eps()) - 3.291_780_045_957_327).abs() < 1e-9);
        assert!((bns_score(1.0, 0.0, eps()) - 6.581_053_462_983_79).abs() < 1e-9);
    }

    #[test]
    fn ne_examples() {
        assert_eq!(ne_score(0.3, 0.3, eps()), 0.0);
        let table = WordFrequencyTable::from_counts([("the", 10u64)]);
        let absent = table.freq("zarnich");
        assert_eq!(absent, 0.0);
        assert!((ne_score(0.5, absent, eps()) - 3.291_780_045_957_327).abs() < 1e-9);
        assert!((ne_score(0.8, 0.01, eps()) - 3.151_393_010_226_267).abs() < 1e-9);
    }

    #[test]
    fn lexicon_parses_and_normalizes() {
        let t = WordFrequencyTable::from_reader(Cursor::new("the\t900\nof\t100\n"), "lex").unwrap();
        assert_eq!(t.freq("the"), 0.9);
        assert_eq!(t.freq("of"), 0.1);
        assert_eq!(t.freq("zarnich"), 0.0);
        assert_eq!(t.total_tokens(), 1000);
    }

    #[test]
    fn lexicon_errors_are_distinct() {
        let err = |s: &str| WordFrequencyTable::from_reader(Cursor::new(s.to_owned()), "lex");
        assert!(matches!(err(""), Err(Error::EmptyLexicon(_))));
        assert!(matches!(err("\n\n"), Err(Error::EmptyLexicon(_))));
        assert!(matches!(
            err("the 900"),
            Err(Error::MalformedLexiconLine { line: 1, .. })
        ));
        assert!(matches!(
            err("the\t9\nof\tmany"),
            Err(Error::InvalidLexiconCount { line: 2, .. })
        ));
        assert!(matches!(
            WordFrequencyTable::load("/definitely/not/here.tsv"),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn lexicon_lowercases_and_merges() {
        let t = WordFrequencyTable::from_counts([("The", 1u64), ("the", 1), ("a", 2)]);
        assert_eq!(t.freq("the"), 0.5);
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn ne_weight_vector_composes_scores() {
        let corpus = vec![tokenize("a b"), tokenize("a c"), tokenize("a")];
        let vocab = build_vocabulary(&corpus).unwrap();
        let stats = document_frequency_rates(&corpus, &vocab).unwrap();
        let table = WordFrequencyTable::from_counts([("a", 3u64), ("b", 1)]);
        let w = ne_weight_vector(&stats, &vocab, &table, eps()).unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.get(0), ne_score(1.0, 0.75, eps()));
        assert_eq!(w.get(1), ne_score(1.0 / 3.0, 0.25, eps()));
        assert_eq!(w.get(2), ne_score(1.0 / 3.0, 0.0, eps()));

        let single = vec![tokenize("a")];
        let vocab = build_vocabulary(&single).unwrap();
        let stats = document_frequency_rates(&single, &vocab).unwrap();
        let table = WordFrequencyTable::from_counts([("a", 1u64)]);
        assert_eq!(ne_weight_vector(&stats, &vocab, &table, eps()).unwrap().as_slice(), &[0.0]);
    }

    #[test]
    fn ne_tf_examples() {
        let tf = SparseVector::from_dense(&[0.5, 0.5]);
        let w = WeightVector::new(vec![3.0, 4.0]).unwrap();
        let v = ne_tf_vector(&tf, &w).unwrap();
        let d = v.to_dense();
        assert!((d[0] - 0.6).abs() < 1e-15 && (d[1] - 0.8).abs() < 1e-15);
        assert!(ne_tf_vector(&SparseVector::zeros(2), &w).unwrap().is_zero());
        let zero_w = WeightVector::new(vec![0.0, 0.0]).unwrap();
        assert!(ne_tf_vector(&tf, &zero_w).unwrap().is_zero());
        assert!(ne_tf_vector(&SparseVector::zeros(3), &w).is_err());
    }

    #[test]
    fn tfidf_examples() {
        // 8 documents; "rare" appears in one, "common" in all.
        let mut corpus = vec![tokenize("common rare")];
        corpus.extend((0..7).map(|_| tokenize("common")));
        let vocab = build_vocabulary(&corpus).unwrap();
        let stats = document_frequency_rates(&corpus, &vocab).unwrap();
        let idf = idf_weight_vector(&stats).unwrap();
        let common = vocab.lookup("common").unwrap();
        let rare = vocab.lookup("rare").unwrap();
        assert_eq!(idf.get(common), 0.0);
        assert!((idf.get(rare) - 4f64.ln()).abs() < 1e-15);

        let tf = term_frequencies(&tokenize("rare"), &vocab);
        let v = tfidf_vector(&tf, &stats).unwrap();
        assert_eq!(v.get(rare), 1.0);
        let tf = term_frequencies(&tokenize("common"), &vocab);
        assert!(tfidf_vector(&tf, &stats).unwrap().is_zero());
        assert!(tfidf_vector(&SparseVector::zeros(2), &stats).unwrap().is_zero());
        assert!(tfidf_vector(&SparseVector::zeros(5), &stats).is_err());
    }

    #[test]
    fn bns_weights_from_two_corpora() {
        let pos = vec![tokenize("virus vaccine"), tokenize("vaccine the")];
        let neg = vec![tokenize("the match"), tokenize("the goal")];
        let vocab = build_vocabulary(&pos).unwrap();
        let ps = document_frequency_rates(&pos, &vocab).unwrap();
        let ns = document_frequency_rates(&neg, &vocab).unwrap();
        let w = bns_weight_vector(&ps, &ns, eps()).unwrap();
        let the = vocab.lookup("the").unwrap();
        let vaccine = vocab.lookup("vaccine").unwrap();
        assert!(w.get(vaccine) > w.get(the));
    }

    #[test]
    fn weighting_names_round_trip() {
        for w in Weighting::ALL {
            assert_eq!(w.name().parse::<Weighting>().unwrap(), w);
        }
        assert!(matches!("bm25".parse::<Weighting>(), Err(Error::UnknownWeighting(_))));
    }

    proptest! {
        #[test]
        fn ne_tf_has_unit_or_zero_norm(vals in prop::collection::vec(0.0f64..1.0, 1..40),
                                       ws in prop::collection::vec(0.0f64..7.0, 40)) {
            let tf = SparseVector::from_dense(&vals);
            let w = WeightVector::new(ws[..vals.len()].to_vec()).unwrap();
            let v = ne_tf_vector(&tf, &w).unwrap();
            let n = v.norm();
            prop_assert!(v.is_zero() || (n - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn ne_is_symmetric(t in 0.0f64..=1.0, f in 0.0f64..=1.0) {
            prop_assert_eq!(ne_score(t, f, eps()), ne_score(f, t, eps()));
        }
    }
}
