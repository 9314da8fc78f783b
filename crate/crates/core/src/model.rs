//! Trained text classifier: vocabulary, term weights and box bounds, with a
//! versioned JSON file format.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::conical::{ConicalBox, PredictOptions, Prediction};
use crate::error::{Error, Result};
use crate::sparse::SparseVector;
use crate::text::{build_vocabulary, document_frequency_rates, term_frequencies, tokenize, Vocabulary};
use crate::weighting::{
    idf_weight_vector, ne_score, ne_weight_vector, weighted_unit_vector, Epsilon, WeightVector,
    Weighting, WordFrequencyTable,
};

pub const MODEL_FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct TrainOptions {
    pub weighting: Weighting,
    pub epsilon: Epsilon,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConicalModel {
    format_version: u32,
    weighting: Weighting,
    epsilon: Epsilon,
    vocabulary: Vocabulary,
    weights: WeightVector,
    bounds: ConicalBox,
}

impl ConicalModel {
    /// Trains on raw positive documents.
    ///
    /// `lexicon` is required for NE-TF and ignored for TF-IDF. A document
    /// whose weighted vector is zero aborts training with its index.
    pub fn train<S: AsRef<str>>(
        docs: &[S],
        lexicon: Option<&WordFrequencyTable>,
        opts: TrainOptions,
    ) -> Result<Self> {
        let tokens: Vec<Vec<String>> = docs.iter().map(|d| tokenize(d.as_ref())).collect();
        Self::train_tokens(&tokens, lexicon, opts)
    }

    pub fn train_tokens(
        tokens: &[Vec<String>],
        lexicon: Option<&WordFrequencyTable>,
        opts: TrainOptions,
    ) -> Result<Self> {
        let vocabulary = build_vocabulary(tokens)?;
        if vocabulary.is_empty() {
            return Err(Error::DegenerateDocument { index: 0 });
        }
        let stats = document_frequency_rates(tokens, &vocabulary)?;
        let weights = match opts.weighting {
            Weighting::NeTf => {
                let table = lexicon.ok_or_else(|| {
                    Error::InvalidArgument("ne-tf weighting requires a lexicon".into())
                })?;
                ne_weight_vector(&stats, &vocabulary, table, opts.epsilon)?
            }
            Weighting::TfIdf => idf_weight_vector(&stats)?,
        };
        let vectors = tokens
            .iter()
            .map(|t| weighted_unit_vector(&term_frequencies(t, &vocabulary), &weights))
            .collect::<Result<Vec<_>>>()?;
        let bounds = ConicalBox::fit(&vectors)?;
        Ok(Self {
            format_version: MODEL_FORMAT_VERSION,
            weighting: opts.weighting,
            epsilon: opts.epsilon,
            vocabulary,
            weights,
            bounds,
        })
    }

    pub fn vocabulary(&self) -> &Vocabulary {
        &self.vocabulary
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn bounds(&self) -> &ConicalBox {
        &self.bounds
    }

    pub fn weighting(&self) -> Weighting {
        self.weighting
    }

    pub fn epsilon(&self) -> Epsilon {
        self.epsilon
    }

    pub fn set_tolerance(&mut self, tolerance: f64) -> Result<()> {
        self.bounds = self.bounds.clone().with_tolerance(tolerance)?;
        Ok(())
    }

    pub fn vectorize_tokens<T: AsRef<str>>(&self, tokens: &[T]) -> SparseVector {
        weighted_unit_vector(&term_frequencies(tokens, &self.vocabulary), &self.weights)
            .expect("term frequencies share the vocabulary dimension")
    }

    pub fn vectorize(&self, text: &str) -> SparseVector {
        self.vectorize_tokens(&tokenize(text))
    }

    pub fn predict_text(&self, text: &str) -> Prediction {
        self.bounds
            .predict(&self.vectorize(text))
            .expect("vectorized text shares the model dimension")
    }

    pub fn predict(&self, v: &SparseVector) -> Result<Prediction> {
        self.bounds.predict(v)
    }

    pub fn predict_with(&self, v: &SparseVector, opts: PredictOptions) -> Result<Prediction> {
        self.bounds.predict_with(v, opts)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(json: &str) -> Result<Self> {
        #[derive(Deserialize)]
        struct Header {
            format_version: u32,
        }
        let header: Header = serde_json::from_str(json)?;
        if header.format_version > MODEL_FORMAT_VERSION {
            return Err(Error::UnsupportedModelVersion {
                found: header.format_version,
                supported: MODEL_FORMAT_VERSION,
            });
        }
        let model: ConicalModel = serde_json::from_str(json)?;
        let dims = [model.weights.len(), model.bounds.dim()];
        if let Some(&found) = dims.iter().find(|&&d| d != model.vocabulary.len()) {
            return Err(Error::DimensionMismatch {
                expected: model.vocabulary.len(),
                found,
            });
        }
        Ok(model)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        let mut json = self.to_json()?;
        json.push('\n');
        let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        file.write_all(json.as_bytes())
            .and_then(|_| file.flush())
            .map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let json = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&json)
    }
}

/// One row of a Normal Exclusion inspection listing.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermWeight {
    pub term: String,
    pub tpr: f64,
    pub lexicon_freq: f64,
    pub score: f64,
}

/// Scores every corpus term with Normal Exclusion and returns the `top_k`
/// highest, ties broken by term.
pub fn top_ne_terms<S: AsRef<str>>(
    docs: &[S],
    lexicon: &WordFrequencyTable,
    epsilon: Epsilon,
    top_k: usize,
) -> Result<Vec<TermWeight>> {
    let tokens: Vec<Vec<String>> = docs.iter().map(|d| tokenize(d.as_ref())).collect();
    let vocab = build_vocabulary(&tokens)?;
    let stats = document_frequency_rates(&tokens, &vocab)?;
    let mut rows: Vec<TermWeight> = vocab
        .terms()
        .iter()
        .enumerate()
        .map(|(d, term)| {
            let tpr = stats.rate(d);
            let lexicon_freq = lexicon.freq(term);
            TermWeight {
                term: term.clone(),
                tpr,
                lexicon_freq,
                score: ne_score(tpr, lexicon_freq, epsilon),
            }
        })
        .collect();
    rows.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.term.cmp(&b.term)));
    rows.truncate(top_k);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conical::Label;

    fn lexicon() -> WordFrequencyTable {
        WordFrequencyTable::from_counts([("the", 500u64), ("of", 300), ("a", 200), ("news", 5)])
    }

    const DOCS: [&str; 3] = [
        "The keylogger records every keystroke of the victim",
        "A keylogger hides in the background",
        "Install the keylogger and capture passwords",
    ];

    #[test]
    fn training_docs_are_in_topic() {
        let m = ConicalModel::train(&DOCS, Some(&lexicon()), TrainOptions::default()).unwrap();
        for d in DOCS {
            assert_eq!(m.predict_text(d).label, Label::InTopic);
        }
        let p = m.predict_text("completely unrelated words");
        assert_eq!(p.label, Label::OutOfTopic);
        assert_eq!(p.dims_checked, 0);
    }

    #[test]
    fn ne_tf_needs_lexicon_but_tfidf_does_not() {
        assert!(ConicalModel::train(&DOCS, None, TrainOptions::default()).is_err());
        let opts = TrainOptions {
            weighting: Weighting::TfIdf,
            ..Default::default()
        };
        // "keylogger" is in every document and gets zero IDF weight, but the
        // remaining terms keep each vector nonzero.
        let m = ConicalModel::train(&DOCS, None, opts).unwrap();
        assert_eq!(m.weights().get(m.vocabulary().lookup("keylogger").unwrap()), 0.0);
    }

    #[test]
    fn degenerate_and_empty_corpora() {
        let empty: [&str; 0] = [];
        assert!(matches!(
            ConicalModel::train(&empty, Some(&lexicon()), TrainOptions::default()),
            Err(Error::EmptyCorpus)
        ));
        assert!(matches!(
            ConicalModel::train(&["alpha beta", "!!!"], Some(&lexicon()), TrainOptions::default()),
            Err(Error::DegenerateDocument { index: 1 })
        ));
    }

    #[test]
    fn json_round_trip_and_version_gate() {
        let m = ConicalModel::train(&DOCS, Some(&lexicon()), TrainOptions::default()).unwrap();
        let json = m.to_json().unwrap();
        assert!(json.starts_with("{\"format_version\":1,"));
        assert_eq!(ConicalModel::from_json(&json).unwrap(), m);

        let newer = json.replacen("\"format_version\":1", "\"format_version\":2", 1);
        assert!(matches!(
            ConicalModel::from_json(&newer),
            Err(Error::UnsupportedModelVersion { found: 2, supported: 1 })
        ));
        assert!(ConicalModel::from_json("{not json").is_err());
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("model.json");
        let m = ConicalModel::train(&DOCS, Some(&lexicon()), TrainOptions::default()).unwrap();
        m.save(&path).unwrap();
        assert_eq!(ConicalModel::load(&path).unwrap(), m);
        assert!(matches!(
            ConicalModel::load(dir.path().join("missing.json")),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn rare_topic_term_outranks_stopword() {
        let rows = top_ne_terms(&DOCS, &lexicon(), Epsilon::default(), 100).unwrap();
        let rank = |t: &str| rows.iter().position(|r| r.term == t).unwrap();
        assert!(rank("keylogger") < rank("the"));
        assert_eq!(rows[0].term, "keylogger");
        assert!(top_ne_terms(&DOCS, &lexicon(), Epsilon::default(), 0).unwrap().is_empty());
    }
}
