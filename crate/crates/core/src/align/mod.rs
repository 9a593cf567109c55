//! Projection of gold annotations onto machine-translated text.
//!
//! Translating an annotated corpus sentence-by-sentence loses the character
//! offsets of its gold spans; this module re-locates each translated
//! annotation inside the translated sentence through a cascade of
//! increasingly permissive stages:
//!
//! 0. **exact** — case-insensitive substring search;
//! 1. **lemma** — match the annotation's lemma sequence against the
//!    sentence's lemma sequence;
//! 2. **dictionary** — retry exact and lemma matching with alternative
//!    translations of the *source* annotation (each alternative is tried
//!    exact-then-lemma before moving to the next);
//! 3. **aligner** — project the source token positions through word-alignment
//!    links and take the contiguous cover of the linked target tokens;
//! 4. **fuzzy** — score every candidate token n-gram with the maximum of
//!    normalized Levenshtein similarity and gestalt ratio, accepting the best
//!    candidate at or above a threshold.
//!
//! The first stage that produces a span wins. Annotations that exhaust the
//! cascade are reported and dropped: a mention whose *trigger* cannot be
//! aligned disappears entirely, while an unalignable argument only removes
//! that argument.

pub mod cache;
pub mod clients;

use serde::{Deserialize, Serialize};

use crate::corpus::{Argument, Corpus, EventMention, Sentence, Span, Token, Trigger};
use crate::error::{Error, Result};
use crate::similarity::{gestalt_ratio, levenshtein_similarity};
use crate::text;

pub use cache::{cache_key, sha256_hex, FileCache, Recording, ReplayClient};
pub use clients::{
    AlignmentClients, DictionaryClient, EmptyDictionary, IdentityMt, Lemmatizer,
    LowercaseLemmatizer, MtClient, NullAligner, TableAligner, TableDictionary, TableLemmatizer,
    TableMt, WordAligner,
};

/// The cascade stages, in execution order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stage {
    Exact,
    Lemma,
    Dictionary,
    Aligner,
    Fuzzy,
}

impl Stage {
    pub const ALL: [Stage; 5] = [
        Stage::Exact,
        Stage::Lemma,
        Stage::Dictionary,
        Stage::Aligner,
        Stage::Fuzzy,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Stage::Exact => "exact",
            Stage::Lemma => "lemma",
            Stage::Dictionary => "dictionary",
            Stage::Aligner => "aligner",
            Stage::Fuzzy => "fuzzy",
        }
    }

    pub fn parse(name: &str) -> Result<Stage> {
        Stage::ALL
            .into_iter()
            .find(|s| s.name() == name)
            .ok_or_else(|| {
                Error::Config(format!(
                    "unknown alignment stage {name:?} (expected one of exact, lemma, dictionary, aligner, fuzzy)"
                ))
            })
    }
}

/// Which stage produced a span, or that none did.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AlignmentStatus {
    Exact,
    Lemma,
    Dictionary,
    Aligner,
    Fuzzy,
    Unaligned,
}

/// Outcome of aligning one annotation: the located span (if any), the stage
/// that found it, and a confidence score (1.0 for the deterministic stages,
/// the similarity score for the fuzzy stage, 0.0 when unaligned).
#[derive(Debug, Clone, PartialEq)]
pub struct AlignmentResult {
    pub span: Option<Span>,
    pub status: AlignmentStatus,
    pub score: f64,
}

/// Cascade configuration.
#[derive(Debug, Clone)]
pub struct AlignConfig {
    pub src_lang: String,
    pub tgt_lang: String,
    /// Enabled stages; execution always follows the canonical order
    /// regardless of the order given here.
    pub stages: Vec<Stage>,
    /// Minimum fuzzy-stage score for a candidate to be accepted.
    pub fuzzy_threshold: f64,
}

impl Default for AlignConfig {
    fn default() -> Self {
        AlignConfig {
            src_lang: "en".into(),
            tgt_lang: "pt".into(),
            stages: Stage::ALL.to_vec(),
            fuzzy_threshold: 0.5,
        }
    }
}

impl AlignConfig {
    fn enabled(&self, stage: Stage) -> bool {
        self.stages.contains(&stage)
    }
}

/// A machine-translated sentence: NFC text plus its token layer (computed
/// with the crate tokenizer, since translations come with no tokenization).
#[derive(Debug, Clone)]
pub struct TranslatedSentence {
    text: String,
    tokens: Vec<Token>,
}

impl TranslatedSentence {
    pub fn new(text: impl Into<String>) -> Self {
        let text = text::nfc(&text.into()).into_owned();
        let tokens = Token::tokenize(&text);
        TranslatedSentence { text, tokens }
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    fn ngram_span(&self, first: usize, last: usize) -> Result<Span> {
        Span::new(&self.text, self.tokens[first].start, self.tokens[last].end)
    }
}

/// Stage 0: leftmost case-insensitive occurrence of the translated
/// annotation in the translated sentence.
pub fn stage_exact(tgt: &TranslatedSentence, translated_annotation: &str) -> Option<Span> {
    let needle = translated_annotation.trim();
    let (start, end) = text::find_ci(tgt.text(), needle)?;
    Some(Span::new(tgt.text(), start, end).expect("find_ci returns in-bounds spans"))
}

/// Stage 1: lemmatize both the translated annotation and the sentence tokens
/// and find the leftmost contiguous lemma-sequence match.
pub fn stage_lemma_match(
    tgt: &TranslatedSentence,
    translated_annotation: &str,
    lemmatizer: &dyn Lemmatizer,
    config: &AlignConfig,
) -> Result<Option<Span>> {
    let annotation_tokens: Vec<String> = Token::tokenize(translated_annotation.trim())
        .into_iter()
        .map(|t| t.text)
        .collect();
    if annotation_tokens.is_empty() || tgt.tokens().is_empty() {
        return Ok(None);
    }
    let sentence_tokens: Vec<String> = tgt.tokens().iter().map(|t| t.text.clone()).collect();
    let annotation_lemmas = lemmas_of(lemmatizer, &annotation_tokens, &config.tgt_lang)?;
    let sentence_lemmas = lemmas_of(lemmatizer, &sentence_tokens, &config.tgt_lang)?;
    let window = annotation_lemmas.len();
    if window > sentence_lemmas.len() {
        return Ok(None);
    }
    for start in 0..=(sentence_lemmas.len() - window) {
        if sentence_lemmas[start..start + window] == annotation_lemmas[..] {
            return Ok(Some(tgt.ngram_span(start, start + window - 1)?));
        }
    }
    Ok(None)
}

fn lemmas_of(lemmatizer: &dyn Lemmatizer, tokens: &[String], lang: &str) -> Result<Vec<String>> {
    let lemmas = lemmatizer.lemmatize(tokens, lang)?;
    if lemmas.len() != tokens.len() {
        return Err(Error::backend(
            "lemmatize",
            format!(
                "returned {} lemmas for {} tokens",
                lemmas.len(),
                tokens.len()
            ),
        ));
    }
    Ok(lemmas.iter().map(|l| text::casefold(l)).collect())
}

/// Stage 2: look up alternative translations of the *source* annotation and
/// retry exact-then-lemma matching with each alternative in order.
pub fn stage_dictionary(
    tgt: &TranslatedSentence,
    source_annotation: &str,
    dictionary: &dyn DictionaryClient,
    lemmatizer: &dyn Lemmatizer,
    config: &AlignConfig,
) -> Result<Option<Span>> {
    let alternatives =
        dictionary.lookup_alternatives(source_annotation, &config.src_lang, &config.tgt_lang)?;
    for alternative in &alternatives {
        if let Some(span) = stage_exact(tgt, alternative) {
            return Ok(Some(span));
        }
        if let Some(span) = stage_lemma_match(tgt, alternative, lemmatizer, config)? {
            return Ok(Some(span));
        }
    }
    Ok(None)
}

/// Stage 3: project the source annotation's token positions through word
/// alignment links and take the contiguous token cover of the linked target
/// positions.
pub fn stage_word_aligner(
    src_sentence: &Sentence,
    tgt: &TranslatedSentence,
    src_annotation_span: &Span,
    aligner: &dyn WordAligner,
    config: &AlignConfig,
) -> Result<Option<Span>> {
    if tgt.tokens().is_empty() {
        return Ok(None);
    }
    let src_tokens: Vec<String> = src_sentence.tokens().iter().map(|t| t.text.clone()).collect();
    let tgt_tokens: Vec<String> = tgt.tokens().iter().map(|t| t.text.clone()).collect();
    let links = aligner.align(&src_tokens, &tgt_tokens, &config.src_lang, &config.tgt_lang)?;
    for &(i, j) in &links {
        if i >= src_tokens.len() || j >= tgt_tokens.len() {
            return Err(Error::backend(
                "align",
                format!("link ({i}, {j}) out of range"),
            ));
        }
    }
    let (src_first, src_after_last) = src_sentence.tokens_overlapping_span(src_annotation_span);
    let mut linked: Vec<usize> = links
        .iter()
        .filter(|(i, _)| (src_first..src_after_last).contains(i))
        .map(|&(_, j)| j)
        .collect();
    linked.sort_unstable();
    match (linked.first(), linked.last()) {
        (Some(&first), Some(&last)) => Ok(Some(tgt.ngram_span(first, last)?)),
        _ => Ok(None),
    }
}

/// Stage 4: score every contiguous token n-gram of the sentence (n from 1 to
/// the annotation's token count plus two) against the translated annotation
/// and accept the best candidate scoring at or above the threshold.
///
/// The score is the maximum of normalized Levenshtein similarity and gestalt
/// ratio, computed case-insensitively. Ties prefer fewer tokens, then the
/// leftmost start.
pub fn stage_fuzzy(
    tgt: &TranslatedSentence,
    translated_annotation: &str,
    config: &AlignConfig,
) -> Option<(Span, f64)> {
    let annotation = translated_annotation.trim();
    let annotation_token_count = Token::tokenize(annotation).len();
    if annotation_token_count == 0 || tgt.tokens().is_empty() {
        return None;
    }
    let folded_annotation = text::casefold(annotation);
    let max_len = (annotation_token_count + 2).min(tgt.tokens().len());
    let mut best: Option<(f64, usize, usize)> = None; // (score, n, start)
    for start in 0..tgt.tokens().len() {
        for n in 1..=max_len.min(tgt.tokens().len() - start) {
            let candidate = text::char_slice(
                tgt.text(),
                tgt.tokens()[start].start,
                tgt.tokens()[start + n - 1].end,
            )
            .expect("token range within bounds");
            let folded_candidate = text::casefold(candidate);
            let score = levenshtein_similarity(&folded_annotation, &folded_candidate)
                .max(gestalt_ratio(&folded_annotation, &folded_candidate));
            if fuzzy_candidate_better((score, n, start), best) {
                best = Some((score, n, start));
            }
        }
    }
    let (score, n, start) = best?;
    if score < config.fuzzy_threshold {
        return None;
    }
    let span = tgt
        .ngram_span(start, start + n - 1)
        .expect("candidate range within bounds");
    Some((span, score))
}

/// Candidate ordering for the fuzzy stage: higher score wins, then fewer
/// tokens, then the smaller start index.
fn fuzzy_candidate_better(
    candidate: (f64, usize, usize),
    best: Option<(f64, usize, usize)>,
) -> bool {
    match best {
        None => true,
        Some((best_score, best_n, best_start)) => {
            let (score, n, start) = candidate;
            if score != best_score {
                return score > best_score;
            }
            if n != best_n {
                return n < best_n;
            }
            start < best_start
        }
    }
}

/// Runs the enabled cascade stages in canonical order until one locates the
/// annotation, also returning which stages were attempted.
pub fn align_annotation_traced(
    src_sentence: &Sentence,
    tgt: &TranslatedSentence,
    src_annotation_span: &Span,
    translated_annotation: &str,
    clients: &AlignmentClients<'_>,
    config: &AlignConfig,
) -> Result<(AlignmentResult, Vec<Stage>)> {
    let mut attempted = Vec::new();
    for stage in Stage::ALL {
        if !config.enabled(stage) {
            continue;
        }
        attempted.push(stage);
        let hit = match stage {
            Stage::Exact => stage_exact(tgt, translated_annotation)
                .map(|span| (span, AlignmentStatus::Exact, 1.0)),
            Stage::Lemma => {
                stage_lemma_match(tgt, translated_annotation, clients.lemmatizer, config)?
                    .map(|span| (span, AlignmentStatus::Lemma, 1.0))
            }
            Stage::Dictionary => stage_dictionary(
                tgt,
                src_annotation_span.text(),
                clients.dictionary,
                clients.lemmatizer,
                config,
            )?
            .map(|span| (span, AlignmentStatus::Dictionary, 1.0)),
            Stage::Aligner => {
                stage_word_aligner(src_sentence, tgt, src_annotation_span, clients.aligner, config)?
                    .map(|span| (span, AlignmentStatus::Aligner, 1.0))
            }
            Stage::Fuzzy => stage_fuzzy(tgt, translated_annotation, config)
                .map(|(span, score)| (span, AlignmentStatus::Fuzzy, score)),
        };
        if let Some((span, status, score)) = hit {
            return Ok((
                AlignmentResult {
                    span: Some(span),
                    status,
                    score,
                },
                attempted,
            ));
        }
    }
    Ok((
        AlignmentResult {
            span: None,
            status: AlignmentStatus::Unaligned,
            score: 0.0,
        },
        attempted,
    ))
}

/// Aligns one annotation, without the stage trace.
pub fn align_annotation(
    src_sentence: &Sentence,
    tgt: &TranslatedSentence,
    src_annotation_span: &Span,
    translated_annotation: &str,
    clients: &AlignmentClients<'_>,
    config: &AlignConfig,
) -> Result<AlignmentResult> {
    align_annotation_traced(
        src_sentence,
        tgt,
        src_annotation_span,
        translated_annotation,
        clients,
        config,
    )
    .map(|(result, _)| result)
}

/// Attempt/hit counters for one cascade stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageReport {
    pub stage: String,
    pub attempts: usize,
    pub hits: usize,
}

/// An annotation the cascade could not locate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnalignedAnnotation {
    pub sentence_id: String,
    /// `"trigger"` or `"argument"`.
    pub kind: String,
    /// Source-language annotation text.
    #[serde(rename = "annotation_text")]
    pub text: String,
    /// Its machine translation, which the cascade failed to locate.
    pub translated: String,
}

/// Summary of a corpus translation run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlignmentReport {
    pub sentences: usize,
    pub mentions_total: usize,
    pub mentions_aligned: usize,
    pub mentions_dropped: usize,
    pub arguments_total: usize,
    pub arguments_aligned: usize,
    pub arguments_dropped: usize,
    /// Per-stage counters in cascade order.
    #[serde(rename = "per_stage_counts")]
    pub stages: Vec<StageReport>,
    pub unaligned: Vec<UnalignedAnnotation>,
}

impl AlignmentReport {
    fn empty() -> Self {
        AlignmentReport {
            sentences: 0,
            mentions_total: 0,
            mentions_aligned: 0,
            mentions_dropped: 0,
            arguments_total: 0,
            arguments_aligned: 0,
            arguments_dropped: 0,
            stages: Stage::ALL
                .iter()
                .map(|s| StageReport {
                    stage: s.name().to_owned(),
                    attempts: 0,
                    hits: 0,
                })
                .collect(),
            unaligned: Vec::new(),
        }
    }

    /// Counter for a stage, by canonical name.
    pub fn stage(&self, stage: Stage) -> &StageReport {
        self.stages
            .iter()
            .find(|s| s.stage == stage.name())
            .expect("all stages present")
    }

    fn record(&mut self, attempted: &[Stage], status: AlignmentStatus) {
        for stage in attempted {
            let entry = self
                .stages
                .iter_mut()
                .find(|s| s.stage == stage.name())
                .expect("all stages present");
            entry.attempts += 1;
        }
        let hit_stage = match status {
            AlignmentStatus::Exact => Some(Stage::Exact),
            AlignmentStatus::Lemma => Some(Stage::Lemma),
            AlignmentStatus::Dictionary => Some(Stage::Dictionary),
            AlignmentStatus::Aligner => Some(Stage::Aligner),
            AlignmentStatus::Fuzzy => Some(Stage::Fuzzy),
            AlignmentStatus::Unaligned => None,
        };
        if let Some(stage) = hit_stage {
            let entry = self
                .stages
                .iter_mut()
                .find(|s| s.stage == stage.name())
                .expect("all stages present");
            entry.hits += 1;
        }
    }

    fn merge(&mut self, other: AlignmentReport) {
        self.sentences += other.sentences;
        self.mentions_total += other.mentions_total;
        self.mentions_aligned += other.mentions_aligned;
        self.mentions_dropped += other.mentions_dropped;
        self.arguments_total += other.arguments_total;
        self.arguments_aligned += other.arguments_aligned;
        self.arguments_dropped += other.arguments_dropped;
        for (mine, theirs) in self.stages.iter_mut().zip(other.stages) {
            mine.attempts += theirs.attempts;
            mine.hits += theirs.hits;
        }
        self.unaligned.extend(other.unaligned);
    }
}

/// Machine translations of one sentence and its annotation texts, before any
/// anchoring. Mention entries parallel the source sentence's mention list;
/// argument entries parallel each mention's argument list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct SentenceTranslation {
    pub sentence_id: String,
    pub text: String,
    pub mentions: Vec<MentionTranslation>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct MentionTranslation {
    pub trigger: String,
    pub arguments: Vec<String>,
}

/// The output of the translation phase: the untouched source corpus plus the
/// raw machine translations of every sentence and annotation. Anchoring the
/// annotations in the translated sentences is the separate alignment phase.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TranslationBundle {
    pub src_language: String,
    pub tgt_language: String,
    pub split: String,
    pub source: Corpus,
    pub translations: Vec<SentenceTranslation>,
}

impl TranslationBundle {
    /// Checks the parallel-shape invariant: one translation per sentence
    /// (matching ids, in order), one mention entry per mention, one argument
    /// entry per argument.
    pub fn validate(&self) -> Result<()> {
        if self.translations.len() != self.source.sentences().len() {
            return Err(Error::LengthMismatch {
                detail: format!(
                    "{} translations for {} source sentences",
                    self.translations.len(),
                    self.source.sentences().len()
                ),
            });
        }
        for (sentence, translation) in self.source.sentences().iter().zip(&self.translations) {
            if sentence.id() != translation.sentence_id {
                return Err(Error::LengthMismatch {
                    detail: format!(
                        "translation order mismatch: source sentence {:?} paired with \
                         translation of {:?}",
                        sentence.id(),
                        translation.sentence_id
                    ),
                });
            }
            if sentence.mentions().len() != translation.mentions.len() {
                return Err(Error::LengthMismatch {
                    detail: format!(
                        "sentence {:?}: {} mention translations for {} mentions",
                        sentence.id(),
                        translation.mentions.len(),
                        sentence.mentions().len()
                    ),
                });
            }
            for (mention, mention_translation) in
                sentence.mentions().iter().zip(&translation.mentions)
            {
                if mention.arguments().len() != mention_translation.arguments.len() {
                    return Err(Error::LengthMismatch {
                        detail: format!(
                            "sentence {:?}: {} argument translations for {} arguments",
                            sentence.id(),
                            mention_translation.arguments.len(),
                            mention.arguments().len()
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

/// Serializes a bundle as pretty-printed JSON.
pub fn bundle_to_json(bundle: &TranslationBundle) -> String {
    let mut json = serde_json::to_string_pretty(bundle).expect("bundle serializes");
    json.push('\n');
    json
}

/// Parses a bundle, re-validating the embedded corpus and the parallel
/// shape.
pub fn bundle_from_json(
    json: &str,
    ontology: &crate::ontology::EventOntology,
) -> Result<TranslationBundle> {
    #[derive(serde::Deserialize)]
    struct RawBundle {
        src_language: String,
        tgt_language: String,
        split: String,
        source: serde_json::Value,
        translations: Vec<SentenceTranslation>,
    }
    let raw: RawBundle =
        serde_json::from_str(json).map_err(|e| Error::json("translation bundle", e))?;
    let bundle = TranslationBundle {
        src_language: raw.src_language,
        tgt_language: raw.tgt_language,
        split: raw.split,
        source: crate::formats::corpus_from_value(raw.source, ontology)?,
        translations: raw.translations,
    };
    bundle.validate()?;
    Ok(bundle)
}

pub fn write_bundle(bundle: &TranslationBundle, path: &std::path::Path) -> Result<()> {
    crate::formats::write_file(path, &bundle_to_json(bundle))
}

pub fn read_bundle(
    path: &std::path::Path,
    ontology: &crate::ontology::EventOntology,
) -> Result<TranslationBundle> {
    bundle_from_json(&crate::formats::read_file(path)?, ontology)
}

/// Runs a fallible per-sentence job over `items`, sequentially for
/// `jobs <= 1` and on a bounded thread pool otherwise, preserving input
/// order. Validation errors abort immediately; transport errors are
/// aggregated so one flaky call does not hide the others.
pub(crate) fn run_per_sentence<T, R, F>(items: &[T], jobs: usize, job: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Send + Sync,
{
    let outcomes: Vec<Result<R>> = if jobs > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Config(format!("cannot build thread pool: {e}")))?;
        pool.install(|| items.par_iter().map(&job).collect())
    } else {
        items.iter().map(&job).collect()
    };

    let mut results = Vec::with_capacity(outcomes.len());
    let mut transport_failures = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(result) => results.push(result),
            Err(error) if !error.is_validation() => {
                transport_failures.push(error.to_string());
            }
            Err(error) => return Err(error),
        }
    }
    if !transport_failures.is_empty() {
        return Err(Error::AlignmentIo {
            failures: transport_failures,
        });
    }
    Ok(results)
}

/// Phase one: machine-translate every sentence text and every annotation
/// text. No anchoring happens here; the result pairs the source corpus with
/// its raw translations.
pub fn translate_corpus_texts(
    corpus: &Corpus,
    mt: &dyn MtClient,
    config: &AlignConfig,
    jobs: usize,
) -> Result<TranslationBundle> {
    let translations = run_per_sentence(corpus.sentences(), jobs, |sentence| {
        let text = text::nfc(&mt.translate(sentence.text(), &config.src_lang, &config.tgt_lang)?)
            .into_owned();
        let mentions = sentence
            .mentions()
            .iter()
            .map(|mention| {
                let trigger = mt.translate(
                    mention.trigger().span.text(),
                    &config.src_lang,
                    &config.tgt_lang,
                )?;
                let arguments = mention
                    .arguments()
                    .iter()
                    .map(|argument| {
                        mt.translate(argument.span.text(), &config.src_lang, &config.tgt_lang)
                    })
                    .collect::<Result<Vec<String>>>()?;
                Ok(MentionTranslation { trigger, arguments })
            })
            .collect::<Result<Vec<MentionTranslation>>>()?;
        Ok(SentenceTranslation {
            sentence_id: sentence.id().to_owned(),
            text,
            mentions,
        })
    })?;
    Ok(TranslationBundle {
        src_language: config.src_lang.clone(),
        tgt_language: config.tgt_lang.clone(),
        split: corpus.split().to_owned(),
        source: corpus.clone(),
        translations,
    })
}

fn align_sentence(
    sentence: &Sentence,
    translation: &SentenceTranslation,
    clients: &AlignmentClients<'_>,
    config: &AlignConfig,
) -> Result<(Sentence, AlignmentReport)> {
    let mut report = AlignmentReport::empty();
    report.sentences = 1;
    let tgt = TranslatedSentence::new(translation.text.clone());

    let mut mentions = Vec::new();
    for (mention, mention_translation) in
        sentence.mentions().iter().zip(&translation.mentions)
    {
        report.mentions_total += 1;
        let trigger = mention.trigger();
        let (result, attempted) = align_annotation_traced(
            sentence,
            &tgt,
            &trigger.span,
            &mention_translation.trigger,
            clients,
            config,
        )?;
        report.record(&attempted, result.status);
        let Some(trigger_span) = result.span else {
            report.mentions_dropped += 1;
            report.unaligned.push(UnalignedAnnotation {
                sentence_id: sentence.id().to_owned(),
                kind: "trigger".into(),
                text: trigger.span.text().to_owned(),
                translated: mention_translation.trigger.clone(),
            });
            continue;
        };
        report.mentions_aligned += 1;

        let mut arguments = Vec::new();
        for (argument, translated_argument) in mention
            .arguments()
            .iter()
            .zip(&mention_translation.arguments)
        {
            report.arguments_total += 1;
            let (result, attempted) = align_annotation_traced(
                sentence,
                &tgt,
                &argument.span,
                translated_argument,
                clients,
                config,
            )?;
            report.record(&attempted, result.status);
            match result.span {
                Some(span) => {
                    report.arguments_aligned += 1;
                    arguments.push(Argument {
                        span,
                        role: argument.role.clone(),
                    });
                }
                None => {
                    report.arguments_dropped += 1;
                    report.unaligned.push(UnalignedAnnotation {
                        sentence_id: sentence.id().to_owned(),
                        kind: "argument".into(),
                        text: argument.span.text().to_owned(),
                        translated: translated_argument.clone(),
                    });
                }
            }
        }

        mentions.push(EventMention::from_validated(
            sentence.id().to_owned(),
            Trigger {
                span: trigger_span,
                event_type: trigger.event_type.clone(),
            },
            arguments,
        ));
    }

    let translated_sentence = Sentence::new(
        sentence.id().to_owned(),
        tgt.text().to_owned(),
        tgt.tokens().to_vec(),
        mentions,
    )?;
    Ok((translated_sentence, report))
}

/// Phase two: anchor every translated annotation in its translated sentence
/// through the cascade, producing the target-language corpus and the
/// alignment report.
///
/// Sentences are preserved one-to-one (a sentence with no surviving mentions
/// stays in the corpus). Mentions whose trigger cannot be aligned are
/// excluded from the output corpus, as are individually unalignable
/// arguments; every exclusion is recorded in the report. The bundle's
/// language pair overrides the one in `config`. With `jobs > 1`, sentences
/// are processed in parallel; output is identical to the sequential run.
pub fn align_bundle(
    bundle: &TranslationBundle,
    clients: &AlignmentClients<'_>,
    config: &AlignConfig,
    jobs: usize,
) -> Result<(Corpus, AlignmentReport)> {
    bundle.validate()?;
    let config = AlignConfig {
        src_lang: bundle.src_language.clone(),
        tgt_lang: bundle.tgt_language.clone(),
        ..config.clone()
    };
    let pairs: Vec<(&Sentence, &SentenceTranslation)> = bundle
        .source
        .sentences()
        .iter()
        .zip(&bundle.translations)
        .collect();
    let outcomes = run_per_sentence(&pairs, jobs, |&(sentence, translation)| {
        align_sentence(sentence, translation, clients, &config)
    })?;

    let mut sentences = Vec::with_capacity(outcomes.len());
    let mut report = AlignmentReport::empty();
    for (sentence, sentence_report) in outcomes {
        sentences.push(sentence);
        report.merge(sentence_report);
    }
    let translated = Corpus::new(bundle.tgt_language.clone(), bundle.split.clone(), sentences)?;
    Ok((translated, report))
}

/// Translates a corpus and projects every annotation through the cascade:
/// [`translate_corpus_texts`] followed by [`align_bundle`].
pub fn translate_corpus(
    corpus: &Corpus,
    clients: &AlignmentClients<'_>,
    config: &AlignConfig,
    jobs: usize,
) -> Result<(Corpus, AlignmentReport)> {
    let bundle = translate_corpus_texts(corpus, clients.mt, config, jobs)?;
    align_bundle(&bundle, clients, config, jobs)
}
