//! One-vs-rest evaluation: dataset splits, repeated train/test runs, the five
//! classification metrics and wall-time measurement.

use std::io::BufRead;
use std::path::Path;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::conical::{ConicalBox, PredictOptions};
use crate::error::{Error, Result};
use crate::model::{ConicalModel, TrainOptions};
use crate::synth::random_unit_vector;
use crate::weighting::{Weighting, WordFrequencyTable};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledDocument {
    #[serde(default)]
    pub id: String,
    pub text: String,
    pub label: String,
}

/// Documents with topic labels; one label is the positive class and every
/// other label is pooled into the negative class.
#[derive(Debug, Clone)]
pub struct LabeledDataset {
    documents: Vec<LabeledDocument>,
    positive_label: String,
}

impl LabeledDataset {
    pub fn new(documents: Vec<LabeledDocument>, positive_label: impl Into<String>) -> Result<Self> {
        let positive_label = positive_label.into();
        if !documents.iter().any(|d| d.label == positive_label) {
            return Err(Error::MissingPositiveLabel(positive_label));
        }
        Ok(Self {
            documents,
            positive_label,
        })
    }

    pub fn documents(&self) -> &[LabeledDocument] {
        &self.documents
    }

    pub fn positive_label(&self) -> &str {
        &self.positive_label
    }

    pub fn is_positive(&self, index: usize) -> bool {
        self.documents[index].label == self.positive_label
    }

    fn class_indices(&self) -> (Vec<usize>, Vec<usize>) {
        (0..self.documents.len()).partition(|&i| self.is_positive(i))
    }
}

/// Reads one JSON object per line with a string `text` and a `label`
/// (string, number or boolean). Blank lines are skipped.
pub fn read_labeled_jsonl(path: impl AsRef<Path>) -> Result<Vec<LabeledDocument>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    parse_labeled_jsonl(std::io::BufReader::new(file), path)
}

pub fn parse_labeled_jsonl(reader: impl BufRead, source: &Path) -> Result<Vec<LabeledDocument>> {
    let malformed = |line: usize, message: String| Error::MalformedRecord {
        path: source.to_path_buf(),
        line,
        message,
    };
    let mut docs = Vec::new();
    for (i, line) in reader.split(b'\n').enumerate() {
        let line_no = i + 1;
        let bytes = line.map_err(|e| Error::io(source, e))?;
        let line = std::str::from_utf8(&bytes)
            .map_err(|_| malformed(line_no, "invalid UTF-8".into()))?
            .trim();
        if line.is_empty() {
            continue;
        }
        let value: serde_json::Value =
            serde_json::from_str(line).map_err(|e| malformed(line_no, e.to_string()))?;
        let text = value
            .get("text")
            .and_then(|t| t.as_str())
            .ok_or_else(|| malformed(line_no, "missing string field `text`".into()))?;
        let label = match value.get("label") {
            Some(serde_json::Value::String(s)) => s.clone(),
            Some(v @ (serde_json::Value::Number(_) | serde_json::Value::Bool(_))) => v.to_string(),
            _ => return Err(malformed(line_no, "missing field `label`".into())),
        };
        let id = match value.get("id") {
            Some(serde_json::Value::String(s)) => s.clone(),
            Some(v) if !v.is_null() => v.to_string(),
            _ => line_no.to_string(),
        };
        docs.push(LabeledDocument {
            id,
            text: text.to_owned(),
            label,
        });
    }
    Ok(docs)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitSpec {
    pub positive_train: f64,
    pub positive_validation: f64,
    pub positive_test: f64,
    pub negative_validation: f64,
    pub negative_test: f64,
    pub seed: u64,
}

impl Default for SplitSpec {
    fn default() -> Self {
        Self {
            positive_train: 0.70,
            positive_validation: 0.15,
            positive_test: 0.15,
            negative_validation: 0.50,
            negative_test: 0.50,
            seed: 0,
        }
    }
}

impl SplitSpec {
    pub fn with_seed(self, seed: u64) -> Self {
        Self { seed, ..self }
    }

    fn validate(&self) -> Result<()> {
        let fractions = [
            self.positive_train,
            self.positive_validation,
            self.positive_test,
            self.negative_validation,
            self.negative_test,
        ];
        let pos = self.positive_train + self.positive_validation + self.positive_test;
        let neg = self.negative_validation + self.negative_test;
        if fractions.iter().any(|f| !(0.0..=1.0).contains(f))
            || (pos - 1.0).abs() > 1e-9
            || (neg - 1.0).abs() > 1e-9
        {
            return Err(Error::InvalidArgument(
                "split fractions must be in [0, 1] and sum to 1 per class".into(),
            ));
        }
        Ok(())
    }
}

/// Document indices of one split. Training holds positives only.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DatasetSplit {
    pub train: Vec<usize>,
    pub validation: Vec<usize>,
    pub test: Vec<usize>,
}

// Share of `n` for the first of two parts in ratio a:b, rounding up.
fn first_share(n: usize, a: f64, b: f64) -> usize {
    if a + b <= 0.0 {
        return 0;
    }
    ((n as f64 * a / (a + b)) - 1e-9).ceil().max(0.0) as usize
}

pub fn split_dataset(ds: &LabeledDataset, spec: &SplitSpec) -> Result<DatasetSplit> {
    spec.validate()?;
    let (mut pos, mut neg) = ds.class_indices();
    if pos.len() < 3 {
        return Err(Error::InsufficientDocuments {
            class: "positive",
            needed: 3,
            found: pos.len(),
        });
    }
    if neg.len() < 2 {
        return Err(Error::InsufficientDocuments {
            class: "negative",
            needed: 2,
            found: neg.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    pos.shuffle(&mut rng);
    neg.shuffle(&mut rng);

    let n_train = ((pos.len() as f64 * spec.positive_train) + 1e-9).floor() as usize;
    let rest = pos.len() - n_train;
    let n_pos_val = first_share(rest, spec.positive_validation, spec.positive_test).min(rest);
    let n_neg_val =
        first_share(neg.len(), spec.negative_validation, spec.negative_test).min(neg.len());

    let test_pos = pos.split_off(n_train + n_pos_val);
    let val_pos = pos.split_off(n_train);
    let test_neg = neg.split_off(n_neg_val);
    let mut validation = val_pos;
    validation.extend(neg);
    let mut test = test_pos;
    test.extend(test_neg);
    Ok(DatasetSplit {
        train: pos,
        validation,
        test,
    })
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confusion {
    pub tp: usize,
    pub fp: usize,
    pub tn: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
}

impl Confusion {
    pub fn total(&self) -> usize {
        self.tp + self.fp + self.tn + self.fn_
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub accuracy: f64,
    pub balanced_accuracy: f64,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Metrics {
    pub const NAMES: [&'static str; 5] =
        ["accuracy", "balanced_accuracy", "precision", "recall", "f1"];

    pub fn values(&self) -> [f64; 5] {
        [
            self.accuracy,
            self.balanced_accuracy,
            self.precision,
            self.recall,
            self.f1,
        ]
    }
}

fn ratio(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

impl From<Confusion> for Metrics {
    /// Undefined ratios (zero denominators) are reported as 0. Balanced
    /// accuracy averages the per-class rates of the classes present.
    fn from(c: Confusion) -> Self {
        let precision = ratio(c.tp, c.tp + c.fp);
        let recall = ratio(c.tp, c.tp + c.fn_);
        let tnr = ratio(c.tn, c.tn + c.fp);
        let rates: Vec<f64> = [(c.tp + c.fn_, recall), (c.tn + c.fp, tnr)]
            .into_iter()
            .filter(|(support, _)| *support > 0)
            .map(|(_, r)| r)
            .collect();
        let balanced_accuracy = rates.iter().sum::<f64>() / rates.len().max(1) as f64;
        let f1 = if precision + recall > 0.0 {
            2.0 * precision * recall / (precision + recall)
        } else {
            0.0
        };
        Metrics {
            accuracy: ratio(c.tp + c.tn, c.total()),
            balanced_accuracy,
            precision,
            recall,
            f1,
        }
    }
}

pub fn confusion(predictions: &[bool], truth: &[bool]) -> Result<Confusion> {
    if predictions.len() != truth.len() {
        return Err(Error::LengthMismatch {
            predictions: predictions.len(),
            truth: truth.len(),
        });
    }
    if predictions.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut c = Confusion::default();
    for (&p, &t) in predictions.iter().zip(truth) {
        match (p, t) {
            (true, true) => c.tp += 1,
            (true, false) => c.fp += 1,
            (false, false) => c.tn += 1,
            (false, true) => c.fn_ += 1,
        }
    }
    Ok(c)
}

/// Metrics for binary predictions where `true` means in-topic.
pub fn compute_metrics(predictions: &[bool], truth: &[bool]) -> Result<Metrics> {
    confusion(predictions, truth).map(Metrics::from)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct MeanStd {
    pub mean: f64,
    pub std: f64,
}

impl MeanStd {
    /// Mean and sample (n − 1) standard deviation; std is 0 for one sample.
    pub fn of(values: &[f64]) -> Self {
        if values.is_empty() {
            return Self::default();
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let std = if values.len() > 1 {
            (values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        Self { mean, std }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricSummary {
    pub accuracy: MeanStd,
    pub balanced_accuracy: MeanStd,
    pub precision: MeanStd,
    pub recall: MeanStd,
    pub f1: MeanStd,
}

impl MetricSummary {
    fn of(runs: &[Metrics]) -> Self {
        let col = |f: fn(&Metrics) -> f64| MeanStd::of(&runs.iter().map(f).collect::<Vec<_>>());
        Self {
            accuracy: col(|m| m.accuracy),
            balanced_accuracy: col(|m| m.balanced_accuracy),
            precision: col(|m| m.precision),
            recall: col(|m| m.recall),
            f1: col(|m| m.f1),
        }
    }

    pub fn values(&self) -> [MeanStd; 5] {
        [
            self.accuracy,
            self.balanced_accuracy,
            self.precision,
            self.recall,
            self.f1,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub repetition: usize,
    pub seed: u64,
    pub test: Metrics,
    pub test_confusion: Confusion,
    pub validation: Metrics,
    /// Vectorization, training and test-set prediction, in seconds.
    pub wall_time_s: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalConfig {
    pub split: SplitSpec,
    pub repetitions: usize,
    pub train: TrainOptions,
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            split: SplitSpec::default(),
            repetitions: 20,
            train: TrainOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub positive_label: String,
    pub weighting: Weighting,
    pub seed: u64,
    pub repetitions: usize,
    pub test: MetricSummary,
    pub validation: MetricSummary,
    pub wall_time_s: MeanStd,
    pub runs: Vec<RunRecord>,
}

/// Repeats split / train / predict `cfg.repetitions` times. Repetition `i`
/// splits with seed `cfg.split.seed + i`.
pub fn run_evaluation(
    ds: &LabeledDataset,
    cfg: &EvalConfig,
    lexicon: Option<&WordFrequencyTable>,
) -> Result<EvalReport> {
    if cfg.repetitions == 0 {
        return Err(Error::InvalidArgument("repetitions must be at least 1".into()));
    }
    let docs = ds.documents();
    let mut runs = Vec::with_capacity(cfg.repetitions);
    for repetition in 0..cfg.repetitions {
        let seed = cfg.split.seed.wrapping_add(repetition as u64);
        let split = split_dataset(ds, &cfg.split.with_seed(seed))?;

        let start = Instant::now();
        let train: Vec<&str> = split.train.iter().map(|&i| docs[i].text.as_str()).collect();
        let model = ConicalModel::train(&train, lexicon, cfg.train)?;
        let test_pred: Vec<bool> = split
            .test
            .iter()
            .map(|&i| model.predict_text(&docs[i].text).label.is_in_topic())
            .collect();
        let wall_time_s = start.elapsed().as_secs_f64();

        let test_truth: Vec<bool> = split.test.iter().map(|&i| ds.is_positive(i)).collect();
        let val_pred: Vec<bool> = split
            .validation
            .iter()
            .map(|&i| model.predict_text(&docs[i].text).label.is_in_topic())
            .collect();
        let val_truth: Vec<bool> = split.validation.iter().map(|&i| ds.is_positive(i)).collect();

        let test_confusion = confusion(&test_pred, &test_truth)?;
        runs.push(RunRecord {
            repetition,
            seed,
            test: test_confusion.into(),
            test_confusion,
            validation: compute_metrics(&val_pred, &val_truth)?,
            wall_time_s,
        });
    }
    let tests: Vec<Metrics> = runs.iter().map(|r| r.test).collect();
    let vals: Vec<Metrics> = runs.iter().map(|r| r.validation).collect();
    let times: Vec<f64> = runs.iter().map(|r| r.wall_time_s).collect();
    Ok(EvalReport {
        positive_label: ds.positive_label().to_owned(),
        weighting: cfg.train.weighting,
        seed: cfg.split.seed,
        repetitions: cfg.repetitions,
        test: MetricSummary::of(&tests),
        validation: MetricSummary::of(&vals),
        wall_time_s: MeanStd::of(&times),
        runs,
    })
}

impl EvalReport {
    /// Fixed-width table of test and validation metrics plus wall time.
    pub fn render_table(&self) -> String {
        let mut out = format!(
            "positive label: {}  weighting: {}  repetitions: {}  seed: {}\n",
            self.positive_label, self.weighting, self.repetitions, self.seed
        );
        out.push_str(&format!(
            "{:<18} {:>17} {:>17}\n",
            "metric", "test", "validation"
        ));
        for ((name, t), v) in Metrics::NAMES
            .iter()
            .zip(self.test.values())
            .zip(self.validation.values())
        {
            out.push_str(&format!(
                "{:<18} {:>7.3} ± {:<7.3} {:>7.3} ± {:<7.3}\n",
                name, t.mean, t.std, v.mean, v.std
            ));
        }
        out.push_str(&format!(
            "{:<18} {:>7.3} ± {:<7.3}\n",
            "time_s", self.wall_time_s.mean, self.wall_time_s.std
        ));
        out
    }

    /// Machine-readable record holding only the deterministic summary
    /// (no timings), so identical inputs give identical bytes.
    pub fn summary_json(&self) -> String {
        serde_json::json!({
            "kind": "summary",
            "positive_label": self.positive_label,
            "weighting": self.weighting,
            "seed": self.seed,
            "repetitions": self.repetitions,
            "test": self.test,
            "validation": self.validation,
        })
        .to_string()
    }

    /// One JSON line per repetition, then the summary line, then a timing line.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for run in &self.runs {
            let mut rec = serde_json::to_value(run).expect("run record serializes");
            rec["kind"] = "run".into();
            out.push_str(&rec.to_string());
            out.push('\n');
        }
        out.push_str(&self.summary_json());
        out.push('\n');
        out.push_str(
            &serde_json::json!({ "kind": "timing", "wall_time_s": self.wall_time_s }).to_string(),
        );
        out.push('\n');
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeRow {
    pub n: usize,
    pub seconds: f64,
    /// Time relative to the previous row; `None` when undefined.
    pub ratio: Option<f64>,
}

/// Times batch prediction of `n` random unit vectors (with `nnz` stored
/// entries each) for every `n` in `n_list`, keeping the fastest of `trials`
/// runs per size.
pub fn time_scaling_probe(
    bounds: &ConicalBox,
    n_list: &[usize],
    nnz: usize,
    trials: usize,
    opts: PredictOptions,
    seed: u64,
) -> Result<Vec<ProbeRow>> {
    if n_list.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument("n_list must be ascending".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<ProbeRow> = Vec::with_capacity(n_list.len());
    for &n in n_list {
        let batch: Vec<_> = (0..n)
            .map(|_| random_unit_vector(&mut rng, bounds.dim(), nnz))
            .collect();
        let mut best = f64::INFINITY;
        for _ in 0..trials.max(1) {
            let start = Instant::now();
            let preds = bounds.predict_batch_with(&batch, opts)?;
            std::hint::black_box(&preds);
            best = best.min(start.elapsed().as_secs_f64());
        }
        let ratio = match rows.last() {
            Some(prev) if prev.n > 0 && n > 0 && prev.seconds > 0.0 => Some(best / prev.seconds),
            _ => None,
        };
        rows.push(ProbeRow {
            n,
            seconds: best,
            ratio,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Cursor;

    fn dataset(pos: usize, neg: usize) -> LabeledDataset {
        let docs = (0..pos)
            .map(|i| LabeledDocument {
                id: format!("p{i}"),
                text: format!("alpha beta w{i}"),
                label: "pos".into(),
            })
            .chain((0..neg).map(|i| LabeledDocument {
                id: format!("n{i}"),
                text: format!("gamma delta v{i}"),
                label: "neg".into(),
            }))
            .collect();
        LabeledDataset::new(docs, "pos").unwrap()
    }

    #[test]
    fn split_proportions() {
        let ds = dataset(100, 10);
        let s = split_dataset(&ds, &SplitSpec::default()).unwrap();
        let count = |idx: &[usize], pos: bool| idx.iter().filter(|&&i| ds.is_positive(i) == pos).count();
        assert_eq!(s.train.len(), 70);
        assert!(s.train.iter().all(|&i| ds.is_positive(i)));
        assert_eq!(count(&s.validation, true), 15);
        assert_eq!(count(&s.test, true), 15);
        assert_eq!(count(&s.validation, false), 5);
        assert_eq!(count(&s.test, false), 5);
    }

    #[test]
    fn split_rounding_favors_validation() {
        // 11 positives: floor(7.7) = 7 train, remaining 4 -> 2 / 2.
        // 7 negatives: 4 validation, 3 test.
        let ds = dataset(11, 7);
        let s = split_dataset(&ds, &SplitSpec::default()).unwrap();
        let positives = |idx: &[usize]| idx.iter().filter(|&&i| ds.is_positive(i)).count();
        assert_eq!(s.train.len(), 7);
        assert_eq!(positives(&s.validation), 2);
        assert_eq!(positives(&s.test), 2);
        assert_eq!(s.validation.len() - 2, 4);
        assert_eq!(s.test.len() - 2, 3);
    }

    #[test]
    fn split_is_partition_and_seeded() {
        let ds = dataset(37, 23);
        let spec = SplitSpec::default().with_seed(9);
        let s = split_dataset(&ds, &spec).unwrap();
        let mut all: Vec<usize> = s.train.iter().chain(&s.validation).chain(&s.test).copied().collect();
        all.sort_unstable();
        assert_eq!(all, (0..60).collect::<Vec<_>>());
        assert_eq!(s, split_dataset(&ds, &spec).unwrap());
        assert_ne!(s, split_dataset(&ds, &spec.with_seed(10)).unwrap());
    }

    #[test]
    fn split_errors_name_the_class() {
        let err = split_dataset(&dataset(2, 5), &SplitSpec::default()).unwrap_err();
        assert!(err.to_string().contains("positive"));
        let err = split_dataset(&dataset(5, 1), &SplitSpec::default()).unwrap_err();
        assert!(err.to_string().contains("negative"));
        let negatives_only = vec![LabeledDocument {
            id: "1".into(),
            text: "gamma".into(),
            label: "neg".into(),
        }];
        assert!(matches!(
            LabeledDataset::new(negatives_only, "pos"),
            Err(Error::MissingPositiveLabel(_))
        ));
    }

    #[test]
    fn metric_examples() {
        let all = compute_metrics(&[true, false, true], &[true, false, true]).unwrap();
        assert_eq!(all.values(), [1.0; 5]);

        let m = compute_metrics(&[true, true, false, false], &[true, false, false, true]).unwrap();
        assert_eq!(m.values(), [0.5; 5]);

        let none = compute_metrics(&[false, false, false], &[true, false, true]).unwrap();
        assert_eq!(none.recall, 0.0);
        assert_eq!(none.precision, 0.0);
        assert_eq!(none.f1, 0.0);

        assert!(matches!(compute_metrics(&[], &[]), Err(Error::EmptyInput)));
        assert!(matches!(
            compute_metrics(&[true], &[true, false]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn metrics_match_independent_tally() {
        let preds = [true, false, true, true, false, false, true, false, true, true];
        let truth = [true, true, false, true, false, true, true, false, false, true];
        let m = compute_metrics(&preds, &truth).unwrap();
        // Tally: TP=4 (0,3,6,9), FP=2 (2,8), TN=2 (4,7), FN=2 (1,5).
        assert_eq!(m.accuracy, 0.6);
        assert_eq!(m.precision, 4.0 / 6.0);
        assert_eq!(m.recall, 4.0 / 6.0);
        assert_eq!(m.balanced_accuracy, (4.0 / 6.0 + 0.5) / 2.0);
    }

    #[test]
    fn balanced_equals_plain_on_balanced_classes() {
        let preds = [true, false, true, false, false, true];
        let truth = [true, true, true, false, false, false];
        let m = compute_metrics(&preds, &truth).unwrap();
        assert!((m.accuracy - m.balanced_accuracy).abs() < 1e-15);
    }

    #[test]
    fn mean_std() {
        assert_eq!(MeanStd::of(&[0.7]), MeanStd { mean: 0.7, std: 0.0 });
        let s = MeanStd::of(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(s.mean, 2.5);
        assert!((s.std - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn parse_jsonl_records() {
        let src = "{\"text\":\"hello\",\"label\":\"a\"}\n\n{\"text\":\"x\",\"label\":3,\"id\":\"z\"}\n";
        let docs = parse_labeled_jsonl(Cursor::new(src), Path::new("f")).unwrap();
        assert_eq!(docs.len(), 2);
        assert_eq!(docs[0].id, "1");
        assert_eq!(docs[1].label, "3");
        assert_eq!(docs[1].id, "z");

        let bad = parse_labeled_jsonl(Cursor::new("{\"text\":\"a\",\"label\":\"b\"}\n{\"label\":\"b\"}"), Path::new("f"));
        assert!(matches!(bad, Err(Error::MalformedRecord { line: 2, .. })));
        let bad = parse_labeled_jsonl(Cursor::new(b"{\"text\":\"\xff\"}".to_vec()), Path::new("f"));
        assert!(matches!(bad, Err(Error::MalformedRecord { line: 1, .. })));
    }

    #[test]
    fn single_repetition_has_zero_std() {
        let ds = dataset(20, 10);
        let cfg = EvalConfig {
            repetitions: 1,
            train: TrainOptions {
                weighting: Weighting::TfIdf,
                ..Default::default()
            },
            ..Default::default()
        };
        let r = run_evaluation(&ds, &cfg, None).unwrap();
        assert!(r.test.values().iter().all(|m| m.std == 0.0));
        assert_eq!(r.runs.len(), 1);
        assert!(r.wall_time_s.mean > 0.0);
        let lines = r.to_jsonl();
        assert_eq!(lines.lines().count(), 3);
        assert!(lines.lines().nth(1).unwrap().contains("\"kind\":\"summary\""));
    }

    #[test]
    fn probe_marks_undefined_ratios() {
        let b = ConicalBox::fit(&[random_unit_vector(&mut ChaCha8Rng::seed_from_u64(1), 50, 5)]).unwrap();
        let rows = time_scaling_probe(&b, &[0, 100, 200], 5, 1, PredictOptions::default(), 0).unwrap();
        assert_eq!(rows[0].ratio, None);
        assert_eq!(rows[1].ratio, None);
        assert!(rows[2].ratio.is_some());
        assert!(time_scaling_probe(&b, &[5, 1], 5, 1, PredictOptions::default(), 0).is_err());
    }
}
