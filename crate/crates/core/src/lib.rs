//! One-class topic classification.
//!
//! Documents become term-frequency vectors over a vocabulary taken from the
//! positive training corpus. Each term is weighted by Normal Exclusion, a
//! probit-scale distance between its document rate in the corpus and its
//! frequency in general language, and the result is normalized to unit
//! length. The classifier stores the per-dimension maximum and minimum of
//! the training vectors; a new document is in-topic when its vector is
//! nonzero and falls inside those bounds in every dimension.
//!
//! ```
//! use conical_core::{ConicalModel, Label, TrainOptions, WordFrequencyTable};
//!
//! let lexicon = WordFrequencyTable::from_counts([("the", 900u64), ("of", 100)]);
//! let docs = ["the keylogger logs keys", "a keylogger of the kernel"];
//! let model = ConicalModel::train(&docs, Some(&lexicon), TrainOptions::default())?;
//! assert_eq!(model.predict_text(docs[0]).label, Label::InTopic);
//! assert_eq!(model.predict_text("gardening tips").label, Label::OutOfTopic);
//! # Ok::<(), conical_core::Error>(())
//! ```

pub mod conical;
pub mod decompose;
pub mod error;
pub mod eval;
pub mod model;
pub mod normal;
pub mod sparse;
pub mod synth;
pub mod text;
pub mod weighting;

pub use conical::{ConicalBox, Label, PredictOptions, Prediction};
pub use decompose::{decompose_between, DecompositionResult};
pub use error::{Error, Result};
pub use eval::{
    compute_metrics, run_evaluation, split_dataset, time_scaling_probe, EvalConfig, EvalReport,
    LabeledDataset, LabeledDocument, Metrics, SplitSpec,
};
pub use model::{ConicalModel, TrainOptions};
pub use normal::inverse_normal_cdf;
pub use sparse::{unit_normalize, SparseVector};
pub use text::{
    build_vocabulary, document_frequency_rates, read_line_corpus, term_frequencies, tokenize,
    Vocabulary,
};
pub use weighting::{bns_score, ne_score, Epsilon, WeightVector, Weighting, WordFrequencyTable};
