//! Subcommands of the `conical` binary.
//!
//! Each command writes its report to the supplied writer so the binary and
//! the tests share one code path. Any error maps to exit status 1.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use conical_core::eval::read_labeled_jsonl;
use conical_core::model::top_ne_terms;
use conical_core::synth::{generate_topic_corpus, SyntheticCorpus, TopicCorpusSpec};
use conical_core::weighting::DEFAULT_EPSILON;
use conical_core::{
    read_line_corpus, run_evaluation, ConicalModel, EvalConfig, Epsilon, LabeledDataset,
    SplitSpec, TrainOptions, Weighting, WordFrequencyTable,
};

#[derive(Debug, Parser)]
#[command(name = "conical", version, about = "One-class topic classification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train a model on a one-document-per-line corpus of positive examples.
    Train(TrainArgs),
    /// Classify every line of a document file with a trained model.
    Predict(PredictArgs),
    /// Run the repeated one-vs-rest evaluation on a labeled JSON-lines file.
    Eval(EvalArgs),
    /// List corpus terms ranked by Normal Exclusion score.
    Weights(WeightsArgs),
    /// Write a synthetic two-topic corpus and matching lexicon.
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct WeightingArgs {
    /// Probability offset applied before the inverse normal CDF.
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    pub epsilon: f64,
    /// Word-frequency lexicon, one `term<TAB>count` per line.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    pub corpus: PathBuf,
    #[command(flatten)]
    pub weighting_args: WeightingArgs,
    /// Document representation: ne-tf or tf-idf.
    #[arg(long, default_value = "ne-tf")]
    pub weighting: String,
    /// Model output path.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    pub model: PathBuf,
    pub docs: PathBuf,
    /// Write predictions here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub labeled: PathBuf,
    /// Label treated as the positive class; all others are negative.
    #[arg(long)]
    pub positive: String,
    #[command(flatten)]
    pub weighting_args: WeightingArgs,
    #[arg(long, default_value = "ne-tf")]
    pub weighting: String,
    #[arg(long, default_value_t = 20)]
    pub repetitions: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Also write per-run, summary and timing records as JSON lines.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    pub corpus: PathBuf,
    #[command(flatten)]
    pub weighting_args: WeightingArgs,
    #[arg(long, default_value_t = 20)]
    pub top_k: usize,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Directory receiving corpus.jsonl, lexicon.tsv and topic<N>.txt files.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub docs_per_topic: usize,
    #[arg(long, default_value_t = 2)]
    pub topics: usize,
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Train(a) => cmd_train(&a, stdout),
        Command::Predict(a) => cmd_predict(&a, stdout),
        Command::Eval(a) => cmd_eval(&a, stdout),
        Command::Weights(a) => cmd_weights(&a, stdout),
        Command::Synth(a) => cmd_synth(&a, stdout),
    }
}

fn check_output_path(path: &Path) -> Result<()> {
    let parent = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    if !parent.is_dir() {
        bail!("output directory {} does not exist", parent.display());
    }
    Ok(())
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn parse_weighting(name: &str) -> Result<Weighting> {
    Ok(name.parse::<Weighting>()?)
}

fn load_lexicon(args: &WeightingArgs, weighting: Weighting) -> Result<Option<WordFrequencyTable>> {
    match (&args.lexicon, weighting) {
        (Some(path), _) => Ok(Some(WordFrequencyTable::load(path)?)),
        (None, Weighting::NeTf) => bail!("--lexicon is required for ne-tf weighting"),
        (None, Weighting::TfIdf) => Ok(None),
    }
}

/// Non-blank lines of a corpus file, with their 1-based line numbers.
fn read_training_lines(path: &Path) -> Result<(Vec<String>, Vec<usize>)> {
    let (lines, numbers) = read_line_corpus(path)?
        .into_iter()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| (l, i + 1))
        .unzip::<_, _, Vec<_>, Vec<_>>();
    if lines.is_empty() {
        bail!("{}: empty corpus", path.display());
    }
    Ok((lines, numbers))
}

pub fn cmd_train(a: &TrainArgs, out: &mut dyn Write) -> Result<()> {
    let weighting = parse_weighting(&a.weighting)?;
    let epsilon = Epsilon::new(a.weighting_args.epsilon)?;
    check_output_path(&a.out)?;
    let lexicon = load_lexicon(&a.weighting_args, weighting)?;
    let (docs, line_numbers) = read_training_lines(&a.corpus)?;
    let model = ConicalModel::train(&docs, lexicon.as_ref(), TrainOptions { weighting, epsilon })
        .map_err(|e| match e {
            conical_core::Error::DegenerateDocument { index } => anyhow::anyhow!(
                "{}:{}: document has no weighted terms",
                a.corpus.display(),
                line_numbers[index]
            ),
            e => e.into(),
        })?;
    model.save(&a.out)?;
    writeln!(out, "documents: {}", docs.len())?;
    writeln!(out, "vocabulary size: {}", model.vocabulary().len())?;
    writeln!(out, "nonzero min dimensions: {}", model.bounds().required_dims())?;
    writeln!(out, "weighting: {}", model.weighting())?;
    writeln!(out, "model written to {}", a.out.display())?;
    Ok(())
}

pub fn cmd_predict(a: &PredictArgs, out: &mut dyn Write) -> Result<()> {
    let model = ConicalModel::load(&a.model)?;
    if let Some(p) = &a.out {
        check_output_path(p)?;
    }
    let docs = read_line_corpus(&a.docs)?;
    let mut report = String::new();
    for (i, doc) in docs.iter().enumerate() {
        let p = model.predict_text(doc);
        report.push_str(&format!("{i}\t{}\t{}\n", p.label, p.dims_checked));
    }
    match &a.out {
        Some(path) => write_file(path, &report),
        None => Ok(out.write_all(report.as_bytes())?),
    }
}

pub fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> Result<()> {
    let weighting = parse_weighting(&a.weighting)?;
    let epsilon = Epsilon::new(a.weighting_args.epsilon)?;
    if a.repetitions == 0 {
        bail!("--repetitions must be at least 1");
    }
    if let Some(p) = &a.out {
        check_output_path(p)?;
    }
    let lexicon = load_lexicon(&a.weighting_args, weighting)?;
    let docs = read_labeled_jsonl(&a.labeled)?;
    let dataset = LabeledDataset::new(docs, a.positive.clone())?;
    let cfg = EvalConfig {
        split: SplitSpec::default().with_seed(a.seed),
        repetitions: a.repetitions,
        train: TrainOptions { weighting, epsilon },
    };
    let report = run_evaluation(&dataset, &cfg, lexicon.as_ref())?;
    out.write_all(report.render_table().as_bytes())?;
    if let Some(path) = &a.out {
        write_file(path, &report.to_jsonl())?;
    }
    Ok(())
}

pub fn cmd_weights(a: &WeightsArgs, out: &mut dyn Write) -> Result<()> {
    let epsilon = Epsilon::new(a.weighting_args.epsilon)?;
    let lexicon = load_lexicon(&a.weighting_args, Weighting::NeTf)?.expect("ne-tf requires one");
    let (docs, _) = read_training_lines(&a.corpus)?;
    let rows = top_ne_terms(&docs, &lexicon, epsilon, a.top_k)?;
    writeln!(out, "term\ttpr\tlexicon_freq\tscore")?;
    for r in rows {
        writeln!(
            out,
            "{}\t{:.6}\t{:.6e}\t{:.6}",
            r.term, r.tpr, r.lexicon_freq, r.score
        )?;
    }
    Ok(())
}

pub fn cmd_synth(a: &SynthArgs, out: &mut dyn Write) -> Result<()> {
    if a.topics < 2 || a.docs_per_topic == 0 {
        bail!("need at least two topics and one document per topic");
    }
    std::fs::create_dir_all(&a.out).with_context(|| format!("creating {}", a.out.display()))?;
    let corpus = generate_topic_corpus(&TopicCorpusSpec {
        topics: a.topics,
        docs_per_topic: a.docs_per_topic,
        seed: a.seed,
        ..Default::default()
    });
    write_file(&a.out.join("corpus.jsonl"), &corpus.labeled_jsonl())?;
    write_file(&a.out.join("lexicon.tsv"), &corpus.lexicon_tsv())?;
    for topic in 0..a.topics {
        let label = SyntheticCorpus::topic_label(topic);
        let text: String = corpus
            .documents
            .iter()
            .filter(|d| d.label == label)
            .map(|d| format!("{}\n", d.text))
            .collect();
        write_file(&a.out.join(format!("{label}.txt")), &text)?;
    }
    writeln!(
        out,
        "wrote {} documents in {} topics to {}",
        corpus.documents.len(),
        a.topics,
        a.out.display()
    )?;
    Ok(())
}
