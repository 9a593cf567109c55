//! The `evex` command line: a deterministic pipeline from annotated-sentence
//! JSON to scored event predictions.
//!
//! Commands compose into a chain — `ingest → translate → align` to build a
//! Portuguese corpus from English annotations, `gen-triggers` / `gen-qa` to
//! emit training data, `extract → score` to run and evaluate the two models —
//! plus `stats` for corpus counts. Every command accepts `--config FILE`
//! (JSON, any subset of [`Config`]'s fields) with command-line flags taking
//! precedence, and drops a `*.meta.json` sidecar next to each primary output
//! recording the effective config hash and the content hashes of all inputs
//! and outputs.
//!
//! Exit codes: 0 on success, 1 when input or configuration is invalid, 2 when
//! the environment fails (file i/o, missing cache entries, backend errors).

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::align::{
    align_bundle, read_bundle, run_per_sentence, sha256_hex, translate_corpus_texts, write_bundle,
    AlignConfig, AlignmentClients, DictionaryClient, EmptyDictionary, IdentityMt, Lemmatizer,
    LowercaseLemmatizer, MtClient, NullAligner, ReplayClient, Stage, WordAligner,
};
use crate::arguments::{
    extract_arguments, qa_items_for_corpus, AlwaysImpossibleQa, QaBackend, QaConfig,
    TableQaBackend,
};
use crate::corpus::{corpus_stats, Corpus, DocumentLayout};
use crate::error::{Error, Result};
use crate::formats::conll::write_conll_iob;
use crate::formats::predictions::{
    predictions_to_json, read_predictions, write_predictions, PredictedArgumentRecord,
    PredictedSentence, PredictedTriggerRecord, Predictions,
};
use crate::formats::squad::write_squad_json;
use crate::formats::{read_corpus_auto, read_file, write_corpus_json, write_file};
use crate::iob::LabelInventory;
use crate::ontology::EventOntology;
use crate::scorer::{evaluate, render_tasks, EvaluationReport, ScoreReport};
use crate::templates::QuestionTemplateSet;
use crate::trigger::{
    labels_file_contents, predict_triggers, AllOutsideBackend, TableTriggerBackend,
    TokenLabelBackend,
};

/// Pipeline settings. Every field has a default, a JSON config file may set
/// any subset (unknown keys are rejected), and command-line flags override
/// file values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    /// Language tag of annotated source input.
    pub src_lang: String,
    /// Language tag annotations are projected into.
    pub tgt_lang: String,
    /// Enabled alignment stages, any subset of
    /// exact / lemma / dictionary / aligner / fuzzy.
    pub stages: Vec<String>,
    /// Minimum similarity for the fuzzy alignment stage, in (0, 1].
    pub fuzzy_threshold: f64,
    /// Neighboring sentences on each side of a trigger's sentence included
    /// in its question-answering context (0 = that sentence alone).
    pub context_window: usize,
    /// Margin the best answer span must clear over the no-answer score.
    pub null_threshold: f64,
    /// Maximum answer span length in tokens.
    pub max_answer_tokens: usize,
    /// Client wiring for translate/align: "identity" (pass-through stubs) or
    /// "replay" (recorded response caches under `cache_dir`).
    pub clients: String,
    /// Directory holding replay caches (mt.json, dictionary.json,
    /// aligner.json, lemmatizer.json).
    pub cache_dir: PathBuf,
    /// Live service endpoints. Must stay empty: this build ships no network
    /// clients — record caches and use `clients = "replay"` instead.
    pub endpoints: BTreeMap<String, String>,
    /// Worker threads for per-sentence work. Output is byte-identical for
    /// every value.
    pub jobs: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            src_lang: "en".into(),
            tgt_lang: "pt".into(),
            stages: Stage::ALL.iter().map(|s| s.name().to_owned()).collect(),
            fuzzy_threshold: 0.5,
            context_window: 0,
            null_threshold: 0.0,
            max_answer_tokens: 30,
            clients: "identity".into(),
            cache_dir: PathBuf::from("caches"),
            endpoints: BTreeMap::new(),
            jobs: 1,
        }
    }
}

impl Config {
    /// Loads a config file, or the defaults when no file is given.
    pub fn load(path: Option<&Path>) -> Result<Config> {
        match path {
            None => Ok(Config::default()),
            Some(path) => serde_json::from_str(&read_file(path)?)
                .map_err(|e| Error::json(format!("config file {}", path.display()), e)),
        }
    }

    /// Checks every field once flag overrides have been applied.
    pub fn validate(&self) -> Result<()> {
        if !(self.fuzzy_threshold > 0.0 && self.fuzzy_threshold <= 1.0) {
            return Err(Error::Config(format!(
                "fuzzy_threshold must be in (0, 1], got {}",
                self.fuzzy_threshold
            )));
        }
        if !self.null_threshold.is_finite() {
            return Err(Error::Config(format!(
                "null_threshold must be finite, got {}",
                self.null_threshold
            )));
        }
        if self.max_answer_tokens == 0 {
            return Err(Error::Config("max_answer_tokens must be at least 1".into()));
        }
        if self.jobs == 0 {
            return Err(Error::Config("jobs must be at least 1".into()));
        }
        if self.stages.is_empty() {
            return Err(Error::Config("at least one alignment stage must be enabled".into()));
        }
        for stage in &self.stages {
            Stage::parse(stage)?;
        }
        if !self.endpoints.is_empty() {
            return Err(Error::Config(
                "live service endpoints are not supported by this build; \
                 record response caches and set clients to \"replay\""
                    .into(),
            ));
        }
        match self.clients.as_str() {
            "identity" | "replay" => Ok(()),
            other => Err(Error::Config(format!(
                "unknown clients mode {other:?}; expected \"identity\" or \"replay\""
            ))),
        }
    }

    fn align_config(&self) -> Result<AlignConfig> {
        let stages = self
            .stages
            .iter()
            .map(|s| Stage::parse(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(AlignConfig {
            src_lang: self.src_lang.clone(),
            tgt_lang: self.tgt_lang.clone(),
            stages,
            fuzzy_threshold: self.fuzzy_threshold,
        })
    }

    fn qa_config(&self) -> QaConfig {
        QaConfig {
            context_window: self.context_window,
            null_threshold: self.null_threshold,
            max_answer_tokens: self.max_answer_tokens,
        }
    }

    /// Hash of the effective configuration, recorded in output sidecars.
    pub fn sha256(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        sha256_hex(json.as_bytes())
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "evex",
    version,
    about = "Event extraction pipeline: annotation projection, trigger tagging, QA-based argument extraction, scoring",
    propagate_version = true
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Convert annotated-sentence JSON into canonical corpus JSON
    Ingest(IngestCmd),
    /// Machine-translate sentence and annotation texts
    Translate(TranslateCmd),
    /// Anchor translated annotations in the translated sentences
    Align(AlignCmd),
    /// Write IOB2 token/tag training data for trigger tagging
    GenTriggers(GenTriggersCmd),
    /// Write extractive-QA training data for argument extraction
    GenQa(GenQaCmd),
    /// Tag triggers and extract arguments with the chosen backend
    Extract(ExtractCmd),
    /// Score a prediction file against gold annotations
    Score(ScoreCmd),
    /// Report aggregate corpus counts
    Stats(StatsCmd),
}

#[derive(Debug, Args)]
struct CommonOpts {
    /// JSON config file; command-line flags override its values
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Worker threads for per-sentence work (any value gives identical output)
    #[arg(long, value_name = "N")]
    jobs: Option<usize>,
}

#[derive(Debug, Args)]
struct IngestCmd {
    /// Input annotated-sentence JSON (or already-canonical corpus JSON)
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Output canonical corpus JSON
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    /// Language tag to record on the corpus
    #[arg(long, value_name = "LANG")]
    src: Option<String>,
    /// Split tag to record on the corpus
    #[arg(long, value_name = "NAME", default_value = "test")]
    split: String,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Debug, Args)]
struct TranslateCmd {
    /// Input corpus JSON
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Output translation bundle JSON
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    /// Source language tag
    #[arg(long, value_name = "LANG")]
    src: Option<String>,
    /// Target language tag
    #[arg(long, value_name = "LANG")]
    tgt: Option<String>,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Debug, Args)]
struct AlignCmd {
    /// Input translation bundle JSON (from `translate`)
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Output corpus JSON in the target language
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    /// Alignment report path (default: output path with a .report.json extension)
    #[arg(long, value_name = "FILE")]
    report: Option<PathBuf>,
    /// Comma-separated stage subset: exact,lemma,dictionary,aligner,fuzzy
    #[arg(long, value_name = "LIST")]
    stages: Option<String>,
    /// Minimum fuzzy-stage similarity in (0, 1]
    #[arg(long, value_name = "T")]
    threshold: Option<f64>,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Debug, Args)]
struct GenTriggersCmd {
    /// Input corpus JSON
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Output CoNLL token/tag file (tag inventory goes to *.labels.txt)
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Debug, Args)]
struct GenQaCmd {
    /// Input corpus JSON
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Output SQuAD-v2 JSON
    #[arg(long, value_name = "FILE")]
    out: PathBuf,
    /// Neighboring sentences on each side used as QA context
    #[arg(long, value_name = "K")]
    context_window: Option<usize>,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BackendKind {
    /// Gold-lookup tables for both triggers and arguments
    MockOracle,
    /// Gold-lookup triggers, every question judged unanswerable
    MockCls,
    /// Every token tagged outside any trigger (predicts nothing)
    MockAllO,
}

#[derive(Debug, Args)]
struct ExtractCmd {
    /// Input corpus JSON
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Output prediction JSON (stdout when omitted)
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Inference backend
    #[arg(long, value_enum, default_value_t = BackendKind::MockOracle)]
    backend: BackendKind,
    /// Neighboring sentences on each side used as QA context
    #[arg(long, value_name = "K")]
    context_window: Option<usize>,
    /// Margin the best answer span must clear over the no-answer score
    #[arg(long, value_name = "T")]
    null_threshold: Option<f64>,
    /// Maximum answer span length in tokens
    #[arg(long, value_name = "N")]
    max_answer_tokens: Option<usize>,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TaskKind {
    Triggers,
    Arguments,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Table,
    Json,
}

#[derive(Debug, Args)]
struct ScoreCmd {
    /// Gold corpus JSON
    #[arg(long, value_name = "FILE")]
    gold: PathBuf,
    /// Prediction JSON (from `extract`)
    #[arg(long, value_name = "FILE")]
    pred: PathBuf,
    /// Which scores to report
    #[arg(long, value_enum, default_value_t = TaskKind::All)]
    task: TaskKind,
    /// Output format on stdout
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
    /// Also write the report as JSON to this path
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(flatten)]
    common: CommonOpts,
}

#[derive(Debug, Args)]
struct StatsCmd {
    /// Input corpus JSON
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Write the counts as JSON to this path instead of only stdout
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(flatten)]
    common: CommonOpts,
}

/// Parses `argv` and runs the selected command, translating the outcome into
/// a process exit code: 0 success, 1 invalid input or configuration (clap
/// usage errors included), 2 i/o or client failure. `--help` and `--version`
/// exit 0.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(error) => {
            eprintln!("error: {error}");
            if error.is_validation() {
                1
            } else {
                2
            }
        }
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Ingest(cmd) => run_ingest(cmd),
        Command::Translate(cmd) => run_translate(cmd),
        Command::Align(cmd) => run_align(cmd),
        Command::GenTriggers(cmd) => run_gen_triggers(cmd),
        Command::GenQa(cmd) => run_gen_qa(cmd),
        Command::Extract(cmd) => run_extract(cmd),
        Command::Score(cmd) => run_score(cmd),
        Command::Stats(cmd) => run_stats(cmd),
    }
}

#[derive(Serialize)]
struct RunMeta {
    command: String,
    config_sha256: String,
    inputs: BTreeMap<String, String>,
    outputs: BTreeMap<String, String>,
}

fn file_sha256(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(sha256_hex(&bytes))
}

/// Writes the run-metadata sidecar next to the first output: for `x.json` it
/// lands at `x.meta.json`.
fn write_meta(command: &str, config: &Config, inputs: &[&Path], outputs: &[&Path]) -> Result<()> {
    let primary = outputs.first().expect("commands with sidecars have an output");
    let mut meta = RunMeta {
        command: command.to_owned(),
        config_sha256: config.sha256(),
        inputs: BTreeMap::new(),
        outputs: BTreeMap::new(),
    };
    for path in inputs {
        meta.inputs
            .insert(path.display().to_string(), file_sha256(path)?);
    }
    for path in outputs {
        meta.outputs
            .insert(path.display().to_string(), file_sha256(path)?);
    }
    let json = serde_json::to_string_pretty(&meta)
        .map_err(|e| Error::json("run metadata", e))?
        + "\n";
    write_file(&primary.with_extension("meta.json"), &json)
}

fn mt_client(config: &Config) -> Result<Box<dyn MtClient>> {
    Ok(match config.clients.as_str() {
        "replay" => Box::new(ReplayClient::open(config.cache_dir.join("mt.json"))?),
        _ => Box::new(IdentityMt),
    })
}

fn dictionary_client(config: &Config) -> Result<Box<dyn DictionaryClient>> {
    Ok(match config.clients.as_str() {
        "replay" => Box::new(ReplayClient::open(config.cache_dir.join("dictionary.json"))?),
        _ => Box::new(EmptyDictionary),
    })
}

fn aligner_client(config: &Config) -> Result<Box<dyn WordAligner>> {
    Ok(match config.clients.as_str() {
        "replay" => Box::new(ReplayClient::open(config.cache_dir.join("aligner.json"))?),
        _ => Box::new(NullAligner),
    })
}

fn lemmatizer_client(config: &Config) -> Result<Box<dyn Lemmatizer>> {
    Ok(match config.clients.as_str() {
        "replay" => Box::new(ReplayClient::open(config.cache_dir.join("lemmatizer.json"))?),
        _ => Box::new(LowercaseLemmatizer),
    })
}

fn run_ingest(cmd: IngestCmd) -> Result<()> {
    let mut config = Config::load(cmd.common.config.as_deref())?;
    if let Some(src) = cmd.src {
        config.src_lang = src;
    }
    if let Some(jobs) = cmd.common.jobs {
        config.jobs = jobs;
    }
    config.validate()?;
    let corpus = read_corpus_auto(&cmd.input, EventOntology::bundled(), &config.src_lang, &cmd.split)?;
    write_corpus_json(&corpus, &cmd.out)?;
    write_meta("ingest", &config, &[&cmd.input], &[&cmd.out])
}

fn run_translate(cmd: TranslateCmd) -> Result<()> {
    let mut config = Config::load(cmd.common.config.as_deref())?;
    if let Some(src) = cmd.src {
        config.src_lang = src;
    }
    if let Some(tgt) = cmd.tgt {
        config.tgt_lang = tgt;
    }
    if let Some(jobs) = cmd.common.jobs {
        config.jobs = jobs;
    }
    config.validate()?;
    let corpus = read_corpus_auto(&cmd.input, EventOntology::bundled(), &config.src_lang, "test")?;
    let mt = mt_client(&config)?;
    let bundle = translate_corpus_texts(&corpus, &*mt, &config.align_config()?, config.jobs)?;
    write_bundle(&bundle, &cmd.out)?;
    write_meta("translate", &config, &[&cmd.input], &[&cmd.out])
}

fn run_align(cmd: AlignCmd) -> Result<()> {
    let mut config = Config::load(cmd.common.config.as_deref())?;
    if let Some(stages) = &cmd.stages {
        config.stages = stages
            .split(',')
            .map(|s| s.trim().to_owned())
            .filter(|s| !s.is_empty())
            .collect();
    }
    if let Some(threshold) = cmd.threshold {
        config.fuzzy_threshold = threshold;
    }
    if let Some(jobs) = cmd.common.jobs {
        config.jobs = jobs;
    }
    config.validate()?;

    let bundle = read_bundle(&cmd.input, EventOntology::bundled())?;
    let mt = IdentityMt; // translation already happened; the cascade never calls it
    let dictionary = dictionary_client(&config)?;
    let aligner = aligner_client(&config)?;
    let lemmatizer = lemmatizer_client(&config)?;
    let clients = AlignmentClients {
        mt: &mt,
        dictionary: &*dictionary,
        aligner: &*aligner,
        lemmatizer: &*lemmatizer,
    };
    let (corpus, report) = align_bundle(&bundle, &clients, &config.align_config()?, config.jobs)?;

    write_corpus_json(&corpus, &cmd.out)?;
    let report_path = cmd
        .report
        .unwrap_or_else(|| cmd.out.with_extension("report.json"));
    let report_json = serde_json::to_string_pretty(&report)
        .map_err(|e| Error::json("alignment report", e))?
        + "\n";
    write_file(&report_path, &report_json)?;
    write_meta("align", &config, &[&cmd.input], &[&cmd.out, &report_path])
}

fn run_gen_triggers(cmd: GenTriggersCmd) -> Result<()> {
    let mut config = Config::load(cmd.common.config.as_deref())?;
    if let Some(jobs) = cmd.common.jobs {
        config.jobs = jobs;
    }
    config.validate()?;
    let ontology = EventOntology::bundled();
    let corpus = read_corpus_auto(&cmd.input, ontology, &config.tgt_lang, "test")?;
    write_conll_iob(&corpus, &cmd.out)?;
    let labels_path = cmd.out.with_extension("labels.txt");
    write_file(&labels_path, &labels_file_contents(&LabelInventory::new(ontology)))?;
    write_meta("gen-triggers", &config, &[&cmd.input], &[&cmd.out, &labels_path])
}

fn run_gen_qa(cmd: GenQaCmd) -> Result<()> {
    let mut config = Config::load(cmd.common.config.as_deref())?;
    if let Some(k) = cmd.context_window {
        config.context_window = k;
    }
    if let Some(jobs) = cmd.common.jobs {
        config.jobs = jobs;
    }
    config.validate()?;
    let ontology = EventOntology::bundled();
    let corpus = read_corpus_auto(&cmd.input, ontology, &config.tgt_lang, "test")?;
    let items = qa_items_for_corpus(
        &corpus,
        config.context_window,
        QuestionTemplateSet::bundled(),
        ontology,
    )?;
    write_squad_json(&items, &cmd.out)?;
    write_meta("gen-qa", &config, &[&cmd.input], &[&cmd.out])
}

/// Runs trigger tagging and argument extraction over a whole corpus,
/// producing predictions with document-global character offsets.
pub fn run_extraction(
    corpus: &Corpus,
    trigger_backend: &dyn TokenLabelBackend,
    qa_backend: &dyn QaBackend,
    templates: &QuestionTemplateSet,
    ontology: &EventOntology,
    inventory: &LabelInventory,
    qa_config: &QaConfig,
    jobs: usize,
) -> Result<Predictions> {
    let layout = DocumentLayout::new(corpus.sentences());
    let indices: Vec<usize> = (0..corpus.sentences().len()).collect();
    let sentences = run_per_sentence(&indices, jobs, |&index| {
        let sentence = &corpus.sentences()[index];
        let base = layout.base(index);
        let triggers = predict_triggers(sentence, trigger_backend, inventory)?;
        let mut trigger_records = Vec::with_capacity(triggers.len());
        let mut argument_records = Vec::new();
        for (trigger_ref, trigger) in triggers.iter().enumerate() {
            trigger_records.push(PredictedTriggerRecord {
                text: trigger.span.text().to_owned(),
                start: base + trigger.span.start(),
                end: base + trigger.span.end(),
                event_type: trigger.event_type.label().to_owned(),
            });
            let arguments = extract_arguments(
                corpus.sentences(),
                &layout,
                index,
                trigger,
                qa_backend,
                templates,
                ontology,
                qa_config,
            )?;
            for argument in arguments {
                argument_records.push(PredictedArgumentRecord {
                    trigger_ref,
                    role: argument.role,
                    text: argument.text,
                    start: argument.start,
                    end: argument.end,
                });
            }
        }
        Ok(PredictedSentence {
            id: sentence.id().to_owned(),
            triggers: trigger_records,
            arguments: argument_records,
        })
    })?;
    Ok(Predictions { sentences })
}

fn run_extract(cmd: ExtractCmd) -> Result<()> {
    let mut config = Config::load(cmd.common.config.as_deref())?;
    if let Some(k) = cmd.context_window {
        config.context_window = k;
    }
    if let Some(threshold) = cmd.null_threshold {
        config.null_threshold = threshold;
    }
    if let Some(max) = cmd.max_answer_tokens {
        config.max_answer_tokens = max;
    }
    if let Some(jobs) = cmd.common.jobs {
        config.jobs = jobs;
    }
    config.validate()?;

    let ontology = EventOntology::bundled();
    let templates = QuestionTemplateSet::bundled();
    let corpus = read_corpus_auto(&cmd.input, ontology, &config.tgt_lang, "test")?;
    let inventory = LabelInventory::new(ontology);
    let qa_config = config.qa_config();

    let trigger_backend: Box<dyn TokenLabelBackend> = match cmd.backend {
        BackendKind::MockOracle | BackendKind::MockCls => {
            Box::new(TableTriggerBackend::from_corpus(&corpus, &inventory)?)
        }
        BackendKind::MockAllO => Box::new(AllOutsideBackend),
    };
    let qa_backend: Box<dyn QaBackend> = match cmd.backend {
        BackendKind::MockOracle => {
            let items =
                qa_items_for_corpus(&corpus, qa_config.context_window, templates, ontology)?;
            Box::new(TableQaBackend::from_qa_items(&items))
        }
        BackendKind::MockCls | BackendKind::MockAllO => Box::new(AlwaysImpossibleQa),
    };

    let predictions = run_extraction(
        &corpus,
        &*trigger_backend,
        &*qa_backend,
        templates,
        ontology,
        &inventory,
        &qa_config,
        config.jobs,
    )?;
    match &cmd.out {
        Some(out) => {
            write_predictions(&predictions, out)?;
            write_meta("extract", &config, &[&cmd.input], &[out])
        }
        None => {
            print!("{}", predictions_to_json(&predictions));
            Ok(())
        }
    }
}

fn tasks_to_report<'a>(
    report: &'a EvaluationReport,
    task: TaskKind,
) -> Vec<(&'static str, &'a ScoreReport)> {
    match task {
        TaskKind::Triggers => vec![("trigger", &report.triggers)],
        TaskKind::Arguments => vec![("argument", &report.arguments)],
        TaskKind::All => vec![
            ("trigger", &report.triggers),
            ("argument", &report.arguments),
        ],
    }
}

fn report_json(report: &EvaluationReport, task: TaskKind) -> Result<String> {
    let value = match task {
        TaskKind::Triggers => serde_json::json!({ "triggers": report.triggers }),
        TaskKind::Arguments => serde_json::json!({ "arguments": report.arguments }),
        TaskKind::All => {
            serde_json::to_value(report).map_err(|e| Error::json("score report", e))?
        }
    };
    Ok(serde_json::to_string_pretty(&value).map_err(|e| Error::json("score report", e))? + "\n")
}

fn run_score(cmd: ScoreCmd) -> Result<()> {
    let mut config = Config::load(cmd.common.config.as_deref())?;
    if let Some(jobs) = cmd.common.jobs {
        config.jobs = jobs;
    }
    config.validate()?;
    let gold = read_corpus_auto(&cmd.gold, EventOntology::bundled(), &config.tgt_lang, "test")?;
    let predictions = read_predictions(&cmd.pred)?;
    let report = evaluate(&predictions, &gold)?;

    match cmd.format {
        OutputFormat::Table => print!("{}", render_tasks(&tasks_to_report(&report, cmd.task))),
        OutputFormat::Json => print!("{}", report_json(&report, cmd.task)?),
    }
    if let Some(out) = &cmd.out {
        write_file(out, &report_json(&report, cmd.task)?)?;
        write_meta("score", &config, &[&cmd.gold, &cmd.pred], &[out])?;
    }
    Ok(())
}

fn run_stats(cmd: StatsCmd) -> Result<()> {
    let mut config = Config::load(cmd.common.config.as_deref())?;
    if let Some(jobs) = cmd.common.jobs {
        config.jobs = jobs;
    }
    config.validate()?;
    let corpus = read_corpus_auto(&cmd.input, EventOntology::bundled(), &config.tgt_lang, "test")?;
    let stats = corpus_stats(&corpus);
    let json = serde_json::to_string_pretty(&stats)
        .map_err(|e| Error::json("corpus stats", e))?
        + "\n";
    print!("{json}");
    if let Some(out) = &cmd.out {
        write_file(out, &json)?;
        write_meta("stats", &config, &[&cmd.input], &[out])?;
    }
    Ok(())
}
