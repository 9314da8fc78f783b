//! Tokenization, vocabulary construction and per-document term statistics.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sparse::SparseVector;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub id: String,
    pub text: String,
}

impl Document {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            text: text.into(),
        }
    }
}

/// Lowercases `text` and splits it on every maximal run of non-alphanumeric
/// characters. Never yields empty terms.
pub fn tokenize(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_owned)
        .collect()
}

/// Bijection between distinct terms and dimension indices `0..len`.
///
/// Terms are held in lexicographic order so the same corpus always produces
/// the same index assignment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct Vocabulary {
    terms: Vec<String>,
    index: HashMap<String, u32>,
}

impl Vocabulary {
    pub fn from_sorted_terms(terms: Vec<String>) -> Result<Self> {
        if terms.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "vocabulary terms must be strictly increasing".into(),
            ));
        }
        let index = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i as u32))
            .collect();
        Ok(Self { terms, index })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lookup(&self, term: &str) -> Option<usize> {
        self.index.get(term).map(|&i| i as usize)
    }

    pub fn term(&self, index: usize) -> Option<&str> {
        self.terms.get(index).map(String::as_str)
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }
}

impl TryFrom<Vec<String>> for Vocabulary {
    type Error = Error;

    fn try_from(terms: Vec<String>) -> Result<Self> {
        Vocabulary::from_sorted_terms(terms)
    }
}

impl From<Vocabulary> for Vec<String> {
    fn from(v: Vocabulary) -> Self {
        v.terms
    }
}

/// Collects the distinct terms of a tokenized corpus.
pub fn build_vocabulary<D, T>(corpus: &[D]) -> Result<Vocabulary>
where
    D: AsRef<[T]>,
    T: AsRef<str>,
{
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let set: BTreeSet<&str> = corpus
        .iter()
        .flat_map(|doc| doc.as_ref().iter().map(AsRef::as_ref))
        .collect();
    Vocabulary::from_sorted_terms(set.into_iter().map(str::to_owned).collect())
}

/// Per-term occurrence count divided by the document's total token count.
///
/// Out-of-vocabulary tokens are dropped but still count towards the length,
/// so the weights sum to the in-vocabulary share of the document.
pub fn term_frequencies<T: AsRef<str>>(tokens: &[T], vocab: &Vocabulary) -> SparseVector {
    if tokens.is_empty() {
        return SparseVector::zeros(vocab.len());
    }
    let mut counts: HashMap<u32, u32> = HashMap::new();
    for tok in tokens {
        if let Some(i) = vocab.lookup(tok.as_ref()) {
            *counts.entry(i as u32).or_insert(0) += 1;
        }
    }
    let total = tokens.len() as f64;
    let mut entries: Vec<(u32, f64)> = counts
        .into_iter()
        .map(|(i, c)| (i, c as f64 / total))
        .collect();
    entries.sort_unstable_by_key(|&(i, _)| i);
    SparseVector::from_sorted_unchecked(vocab.len(), entries)
}

/// Number of documents containing each vocabulary term, out of `n_docs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermStatistics {
    n_docs: usize,
    doc_counts: Vec<u32>,
}

impl TermStatistics {
    pub fn n_docs(&self) -> usize {
        self.n_docs
    }

    pub fn len(&self) -> usize {
        self.doc_counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doc_counts.is_empty()
    }

    pub fn doc_count(&self, index: usize) -> u32 {
        self.doc_counts[index]
    }

    /// Fraction of documents containing the term at `index`.
    pub fn rate(&self, index: usize) -> f64 {
        self.doc_counts[index] as f64 / self.n_docs as f64
    }

    pub fn rates(&self) -> Vec<f64> {
        (0..self.doc_counts.len()).map(|i| self.rate(i)).collect()
    }
}

pub fn document_frequency_rates<D, T>(corpus: &[D], vocab: &Vocabulary) -> Result<TermStatistics>
where
    D: AsRef<[T]>,
    T: AsRef<str>,
{
    if corpus.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    let mut doc_counts = vec![0u32; vocab.len()];
    let mut seen = vec![false; vocab.len()];
    let mut touched = Vec::new();
    for doc in corpus {
        for tok in doc.as_ref() {
            if let Some(i) = vocab.lookup(tok.as_ref()) {
                if !seen[i] {
                    seen[i] = true;
                    touched.push(i);
                }
            }
        }
        for i in touched.drain(..) {
            seen[i] = false;
            doc_counts[i] += 1;
        }
    }
    Ok(TermStatistics {
        n_docs: corpus.len(),
        doc_counts,
    })
}

/// Reads a one-document-per-line UTF-8 file. Every line, including blank
/// ones, becomes an entry; a final line terminator does not start a new one.
/// Carriage returns before the line feed are stripped.
pub fn read_line_corpus(path: impl AsRef<std::path::Path>) -> Result<Vec<String>> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let body = bytes.strip_suffix(b"\n").unwrap_or(&bytes);
    if body.is_empty() {
        return Ok(Vec::new());
    }
    body.split(|&b| b == b'\n')
        .enumerate()
        .map(|(i, line)| {
            let line = line.strip_suffix(b"\r").unwrap_or(line);
            String::from_utf8(line.to_vec()).map_err(|_| Error::MalformedRecord {
                path: path.to_path_buf(),
                line: i + 1,
                message: "invalid UTF-8".into(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn toks(words: &[&str]) -> Vec<String> {
        words.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn tokenize_examples() {
        assert_eq!(tokenize("Hello, World!"), toks(&["hello", "world"]));
        assert!(tokenize("").is_empty());
        assert_eq!(
            tokenize("COVID-19 vaccines"),
            toks(&["covid", "19", "vaccines"])
        );
        assert!(tokenize("  ...!!  ").is_empty());
    }

    #[test]
    fn vocabulary_is_sorted_and_bijective() {
        let v = build_vocabulary(&[toks(&["b", "a"]), toks(&["a", "c"])]).unwrap();
        assert_eq!(v.terms(), &toks(&["a", "b", "c"])[..]);
        for (i, t) in v.terms().iter().enumerate() {
            assert_eq!(v.lookup(t), Some(i));
            assert_eq!(v.term(i), Some(t.as_str()));
        }
        assert_eq!(build_vocabulary(&[toks(&["x"])]).unwrap().len(), 1);
        let empty: Vec<Vec<String>> = vec![];
        assert!(matches!(build_vocabulary(&empty), Err(Error::EmptyCorpus)));
    }

    #[test]
    fn vocabulary_serde_rejects_unsorted() {
        let v: Vocabulary = serde_json::from_str(r#"["a","b"]"#).unwrap();
        assert_eq!(v.lookup("b"), Some(1));
        assert!(serde_json::from_str::<Vocabulary>(r#"["b","a"]"#).is_err());
    }

    #[test]
    fn term_frequency_examples() {
        let vocab = build_vocabulary(&[toks(&["a", "b"])]).unwrap();
        let tf = term_frequencies(&toks(&["a", "a", "b"]), &vocab);
        assert_eq!(tf.to_dense(), vec![2.0 / 3.0, 1.0 / 3.0]);
        assert!(term_frequencies::<String>(&[], &vocab).is_zero());
        assert!(term_frequencies(&toks(&["z", "z"]), &vocab).is_zero());
        let partial = term_frequencies(&toks(&["a", "z", "z", "z"]), &vocab);
        assert_eq!(partial.to_dense(), vec![0.25, 0.0]);
    }

    #[test]
    fn document_frequency_examples() {
        let corpus = vec![toks(&["a"]), toks(&["a", "b", "b"])];
        let vocab = build_vocabulary(&corpus).unwrap();
        let stats = document_frequency_rates(&corpus, &vocab).unwrap();
        assert_eq!(stats.rate(0), 1.0);
        assert_eq!(stats.rate(1), 0.5);

        let wider = build_vocabulary(&[toks(&["a", "q"])]).unwrap();
        let stats = document_frequency_rates(&[toks(&["a"])], &wider).unwrap();
        assert_eq!(stats.rates(), vec![1.0, 0.0]);

        let empty: Vec<Vec<String>> = vec![];
        assert!(document_frequency_rates(&empty, &vocab).is_err());
    }

    #[test]
    fn line_corpus_reading() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.txt");
        std::fs::write(&p, "one doc\r\n\nthird\n").unwrap();
        assert_eq!(read_line_corpus(&p).unwrap(), vec!["one doc", "", "third"]);
        std::fs::write(&p, "").unwrap();
        assert!(read_line_corpus(&p).unwrap().is_empty());
        std::fs::write(&p, b"ok\n\xff\xfe\n").unwrap();
        assert!(matches!(
            read_line_corpus(&p),
            Err(Error::MalformedRecord { line: 2, .. })
        ));
    }

    proptest! {
        #[test]
        fn tokenize_is_idempotent(s in "\\PC{0,40}") {
            let once = tokenize(&s);
            prop_assert_eq!(tokenize(&once.join(" ")), once);
        }

        #[test]
        fn tf_weights_bounded(doc in prop::collection::vec("[a-e]", 0..30),
                              vocab_src in prop::collection::vec("[a-c]", 1..5)) {
            let vocab = build_vocabulary(&[vocab_src]).unwrap();
            let tf = term_frequencies(&doc, &vocab);
            let in_vocab = doc.iter().filter(|t| vocab.lookup(t).is_some()).count();
            prop_assert!(tf.iter().all(|(_, w)| w > 0.0));
            if !doc.is_empty() {
                let expected = in_vocab as f64 / doc.len() as f64;
                prop_assert!((tf.sum() - expected).abs() < 1e-12);
                prop_assert!(tf.sum() <= 1.0 + 1e-12);
            }
        }

        #[test]
        fn vocabulary_permutation_invariant(mut corpus in prop::collection::vec(
                prop::collection::vec("[a-z]{1,3}", 0..6), 1..6), rot in 0usize..6) {
            let a = build_vocabulary(&corpus).unwrap();
            let k = rot % corpus.len();
            corpus.rotate_left(k);
            corpus.reverse();
            prop_assert_eq!(a, build_vocabulary(&corpus).unwrap());
        }
    }
}
