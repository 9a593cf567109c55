//! Argument extraction as extractive question answering.
//!
//! For every legal role of a trigger's event type, a natural-language
//! question is asked against a context window around the trigger's sentence.
//! The answering model scores answer-span starts and ends over the assembled
//! `[CLS] question [SEP] context [SEP]` sequence; a span at or above the
//! no-answer (CLS) score wins, otherwise the role is absent. The model sits
//! behind [`QaBackend`], so the pipeline runs identically against a served
//! model or the deterministic table backends used in tests.

use std::collections::HashMap;

use crate::corpus::{Corpus, DocumentLayout, Sentence, Trigger};
use crate::error::{Error, Result};
use crate::formats::squad::QAItem;
use crate::ontology::EventOntology;
use crate::templates::{contextualize, generate_qa_items, QuestionTemplateSet};
use crate::text;

pub const CLS_TOKEN: &str = "[CLS]";
pub const SEP_TOKEN: &str = "[SEP]";

/// The assembled QA sequence: `[CLS] question [SEP] context [SEP]`, with the
/// token index ranges of the question and context segments and, for context
/// tokens, their character spans within the context string.
#[derive(Debug, Clone)]
pub struct QAInput {
    question: String,
    context: String,
    tokens: Vec<String>,
    question_range: (usize, usize),
    context_range: (usize, usize),
    context_spans: Vec<(usize, usize)>,
}

impl QAInput {
    pub fn assemble(question: &str, context: &str) -> QAInput {
        let question_tokens = crate::corpus::Token::tokenize(question);
        let context_tokens = crate::corpus::Token::tokenize(context);

        let mut tokens = Vec::with_capacity(question_tokens.len() + context_tokens.len() + 3);
        tokens.push(CLS_TOKEN.to_owned());
        let question_start = tokens.len();
        tokens.extend(question_tokens.iter().map(|t| t.text.clone()));
        let question_end = tokens.len();
        tokens.push(SEP_TOKEN.to_owned());
        let context_start = tokens.len();
        tokens.extend(context_tokens.iter().map(|t| t.text.clone()));
        let context_end = tokens.len();
        tokens.push(SEP_TOKEN.to_owned());

        QAInput {
            question: question.to_owned(),
            context: context.to_owned(),
            tokens,
            question_range: (question_start, question_end),
            context_range: (context_start, context_end),
            context_spans: context_tokens.iter().map(|t| (t.start, t.end)).collect(),
        }
    }

    pub fn question(&self) -> &str {
        &self.question
    }

    pub fn context(&self) -> &str {
        &self.context
    }

    /// Full token sequence, including `[CLS]` and `[SEP]`.
    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        false // always holds at least [CLS] and two [SEP]
    }

    /// Index of the no-answer token.
    pub fn cls_index(&self) -> usize {
        0
    }

    /// Token index range `[start, end)` of the question segment.
    pub fn question_range(&self) -> (usize, usize) {
        self.question_range
    }

    /// Token index range `[start, end)` of the context segment.
    pub fn context_range(&self) -> (usize, usize) {
        self.context_range
    }

    /// Character span (within the context string) of the context token at
    /// sequence index `seq_index`; `None` for non-context positions.
    pub fn context_char_span(&self, seq_index: usize) -> Option<(usize, usize)> {
        let (start, end) = self.context_range;
        if (start..end).contains(&seq_index) {
            Some(self.context_spans[seq_index - start])
        } else {
            None
        }
    }
}

/// Start and end scores over an assembled QA sequence.
#[derive(Debug, Clone)]
pub struct SpanLogits {
    pub start: Vec<f64>,
    pub end: Vec<f64>,
}

impl SpanLogits {
    fn check(&self, input: &QAInput) -> Result<()> {
        if self.start.len() != input.len() || self.end.len() != input.len() {
            return Err(Error::ShapeMismatch {
                detail: format!(
                    "logit lengths ({}, {}) do not match sequence length {}",
                    self.start.len(),
                    self.end.len(),
                    input.len()
                ),
            });
        }
        Ok(())
    }
}

/// An answer-span candidate: sequence token indices (inclusive) and the sum
/// of its start and end scores.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpanCandidate {
    pub start_index: usize,
    pub end_index: usize,
    pub score: f64,
}

/// Enumerates every candidate answer span: both endpoints inside the context
/// segment, at most `max_answer_tokens` tokens long, scored
/// `start[i] + end[j]`. Sorted best-first: higher score, then fewer tokens,
/// then the smaller start index.
pub fn valid_spans(
    input: &QAInput,
    logits: &SpanLogits,
    max_answer_tokens: usize,
) -> Result<Vec<SpanCandidate>> {
    logits.check(input)?;
    let (context_start, context_end) = input.context_range();
    let mut candidates = Vec::new();
    for i in context_start..context_end {
        for j in i..context_end.min(i + max_answer_tokens) {
            candidates.push(SpanCandidate {
                start_index: i,
                end_index: j,
                score: logits.start[i] + logits.end[j],
            });
        }
    }
    candidates.sort_by(|a, b| {
        b.score
            .total_cmp(&a.score)
            .then_with(|| (a.end_index - a.start_index).cmp(&(b.end_index - b.start_index)))
            .then_with(|| a.start_index.cmp(&b.start_index))
    });
    Ok(candidates)
}

/// Outcome of answer selection: either a character span within the context,
/// or no answer.
#[derive(Debug, Clone, PartialEq)]
pub enum Answer {
    Span {
        /// Character offsets within the context string.
        char_start: usize,
        char_end: usize,
        score: f64,
        null_score: f64,
    },
    Impossible {
        null_score: f64,
        /// Score of the best rejected candidate, if any existed.
        best_score: Option<f64>,
    },
}

/// Picks the best candidate span or declares the question unanswerable.
///
/// The no-answer score is `start[cls] + end[cls]`. The question is
/// unanswerable when no candidate exists or when the best candidate's score
/// falls below `null_score + null_threshold`; raising the threshold therefore
/// makes predictions more conservative.
pub fn select_answer(
    input: &QAInput,
    logits: &SpanLogits,
    max_answer_tokens: usize,
    null_threshold: f64,
) -> Result<Answer> {
    let candidates = valid_spans(input, logits, max_answer_tokens)?;
    let cls = input.cls_index();
    let null_score = logits.start[cls] + logits.end[cls];
    let Some(best) = candidates.first() else {
        return Ok(Answer::Impossible {
            null_score,
            best_score: None,
        });
    };
    if best.score < null_score + null_threshold {
        return Ok(Answer::Impossible {
            null_score,
            best_score: Some(best.score),
        });
    }
    let (char_start, _) = input
        .context_char_span(best.start_index)
        .expect("candidate start inside context");
    let (_, char_end) = input
        .context_char_span(best.end_index)
        .expect("candidate end inside context");
    Ok(Answer::Span {
        char_start,
        char_end,
        score: best.score,
        null_score,
    })
}

/// Extractive QA scorer over assembled sequences.
pub trait QaBackend: Send + Sync {
    fn span_logits(&self, input: &QAInput) -> Result<SpanLogits>;
}

/// A window of consecutive sentences serving as QA context, anchored in
/// document coordinates.
#[derive(Debug, Clone)]
pub struct ContextWindow {
    first_sentence: usize,
    last_sentence: usize,
    char_base: usize,
    text: String,
}

impl ContextWindow {
    /// Sentence index range `[first, last]` (inclusive).
    pub fn sentence_range(&self) -> (usize, usize) {
        (self.first_sentence, self.last_sentence)
    }

    /// The window text (a substring of the document text).
    pub fn text(&self) -> &str {
        &self.text
    }

    /// Character offset of the window within the document text.
    pub fn char_base(&self) -> usize {
        self.char_base
    }

    /// Rebases a window-local character offset to document coordinates.
    pub fn to_document(&self, local: usize) -> usize {
        self.char_base + local
    }
}

/// Cuts the window of sentences `[sentence_index − k, sentence_index + k]`,
/// clamped to the document: `k` neighboring sentences on each side, so `k=0`
/// is the trigger's sentence alone. Windows never cross document boundaries.
pub fn context_window(
    layout: &DocumentLayout,
    sentences: &[Sentence],
    sentence_index: usize,
    k: usize,
) -> ContextWindow {
    assert!(sentence_index < sentences.len(), "sentence index out of range");
    let count = sentences.len();
    let first = sentence_index.saturating_sub(k);
    let last = sentence_index.saturating_add(k).min(count - 1);
    let char_base = layout.base(first);
    let char_end = layout.base(last) + text::char_len(sentences[last].text());
    let window_text = text::char_slice(layout.text(), char_base, char_end)
        .expect("window bounds within document")
        .to_owned();
    ContextWindow {
        first_sentence: first,
        last_sentence: last,
        char_base,
        text: window_text,
    }
}

/// Extraction thresholds and context shape.
#[derive(Debug, Clone)]
pub struct QaConfig {
    /// Neighboring sentences on each side of the trigger's sentence included
    /// in the QA context (0 = that sentence alone).
    pub context_window: usize,
    /// Margin the best span must clear over the no-answer score.
    pub null_threshold: f64,
    /// Maximum answer length in tokens.
    pub max_answer_tokens: usize,
}

impl Default for QaConfig {
    fn default() -> Self {
        QaConfig {
            context_window: 0,
            null_threshold: 0.0,
            max_answer_tokens: 30,
        }
    }
}

/// An extracted argument with document-global character offsets.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct PredictedArgument {
    pub role: String,
    pub text: String,
    pub start: usize,
    pub end: usize,
    #[serde(skip)]
    pub score: f64,
}

/// Asks one question per legal role of the trigger's event type (in ontology
/// role order) and keeps the roles whose answer beats the no-answer score.
/// Offsets in the result are document-global.
pub fn extract_arguments(
    sentences: &[Sentence],
    layout: &DocumentLayout,
    sentence_index: usize,
    trigger: &Trigger,
    backend: &dyn QaBackend,
    templates: &QuestionTemplateSet,
    ontology: &EventOntology,
    config: &QaConfig,
) -> Result<Vec<PredictedArgument>> {
    let label = trigger.event_type.label();
    let roles = ontology
        .role_set(label)
        .ok_or_else(|| Error::UnknownEventType(label.to_owned()))?;
    let window = context_window(layout, sentences, sentence_index, config.context_window);

    let mut predicted = Vec::new();
    for role in roles {
        let question = contextualize(templates.question_for(label, role)?, trigger.span.text());
        let input = QAInput::assemble(&question, window.text());
        let logits = backend.span_logits(&input).map_err(|error| match error {
            Error::Backend { operation, detail } => Error::Backend {
                operation,
                detail: format!(
                    "{detail} (sentence {:?}, role {role})",
                    sentences[sentence_index].id()
                ),
            },
            other => other,
        })?;
        match select_answer(&input, &logits, config.max_answer_tokens, config.null_threshold)? {
            Answer::Span {
                char_start,
                char_end,
                score,
                ..
            } => {
                let answer_text = text::char_slice(window.text(), char_start, char_end)
                    .expect("selected span within context")
                    .to_owned();
                predicted.push(PredictedArgument {
                    role: role.clone(),
                    text: answer_text,
                    start: window.to_document(char_start),
                    end: window.to_document(char_end),
                    score,
                });
            }
            Answer::Impossible { .. } => {}
        }
    }
    Ok(predicted)
}

/// Generates one question-answering item per (mention, legal role) over the
/// whole corpus, each with its context cut by [`context_window`] and gold
/// answer offsets rebased into window coordinates. Roles without a gold
/// argument become unanswerable items.
pub fn qa_items_for_corpus(
    corpus: &Corpus,
    k: usize,
    templates: &QuestionTemplateSet,
    ontology: &EventOntology,
) -> Result<Vec<QAItem>> {
    let layout = DocumentLayout::new(corpus.sentences());
    let mut items = Vec::new();
    for (index, sentence) in corpus.sentences().iter().enumerate() {
        if sentence.mentions().is_empty() {
            continue;
        }
        let cut = context_window(&layout, corpus.sentences(), index, k);
        let base = layout.base(index) - cut.char_base();
        for (mention_index, mention) in sentence.mentions().iter().enumerate() {
            items.extend(generate_qa_items(
                mention,
                mention_index,
                cut.text(),
                base,
                templates,
                ontology,
            )?);
        }
    }
    Ok(items)
}

const PEAK_LOGIT: f64 = 8.0;

/// QA oracle keyed by `(question, context)`: answers with a recorded
/// character span (peaked logits over the covering tokens) or, for recorded
/// no-answer pairs and unknown questions, with CLS-peaked logits.
pub struct TableQaBackend {
    answers: HashMap<(String, String), Option<(usize, usize)>>,
}

impl TableQaBackend {
    pub fn new() -> Self {
        TableQaBackend {
            answers: HashMap::new(),
        }
    }

    /// Records an answer (context-local character span) or an explicit
    /// no-answer for a question/context pair.
    pub fn with(
        mut self,
        question: &str,
        context: &str,
        answer: Option<(usize, usize)>,
    ) -> Self {
        self.answers
            .insert((question.to_owned(), context.to_owned()), answer);
        self
    }

    /// Builds the oracle from QA items: the first gold answer of each item
    /// (no-answer for impossible items).
    pub fn from_qa_items(items: &[QAItem]) -> Self {
        let mut backend = TableQaBackend::new();
        for item in items {
            let answer = if item.is_impossible {
                None
            } else {
                item.answers.first().map(|a| {
                    (
                        a.answer_start,
                        a.answer_start + text::char_len(&a.text),
                    )
                })
            };
            backend
                .answers
                .insert((item.question.clone(), item.context.clone()), answer);
        }
        backend
    }
}

impl Default for TableQaBackend {
    fn default() -> Self {
        TableQaBackend::new()
    }
}

impl QaBackend for TableQaBackend {
    fn span_logits(&self, input: &QAInput) -> Result<SpanLogits> {
        let key = (input.question().to_owned(), input.context().to_owned());
        let mut start = vec![0.0; input.len()];
        let mut end = vec![0.0; input.len()];
        match self.answers.get(&key).copied().flatten() {
            Some((char_start, char_end)) => {
                let (context_start, context_end) = input.context_range();
                let first = (context_start..context_end)
                    .find(|&i| input.context_char_span(i).unwrap().0 == char_start);
                let last = (context_start..context_end)
                    .find(|&i| input.context_char_span(i).unwrap().1 == char_end);
                let (Some(first), Some(last)) = (first, last) else {
                    return Err(Error::backend(
                        "qa-table",
                        format!(
                            "recorded answer span {char_start}..{char_end} does not \
                             fall on token boundaries of the context"
                        ),
                    ));
                };
                start[first] = PEAK_LOGIT;
                end[last] = PEAK_LOGIT;
            }
            None => {
                start[input.cls_index()] = PEAK_LOGIT;
                end[input.cls_index()] = PEAK_LOGIT;
            }
        }
        Ok(SpanLogits { start, end })
    }
}

/// Backend that declares every question unanswerable.
#[derive(Debug, Default)]
pub struct AlwaysImpossibleQa;

impl QaBackend for AlwaysImpossibleQa {
    fn span_logits(&self, input: &QAInput) -> Result<SpanLogits> {
        let mut start = vec![0.0; input.len()];
        let mut end = vec![0.0; input.len()];
        start[input.cls_index()] = PEAK_LOGIT;
        end[input.cls_index()] = PEAK_LOGIT;
        Ok(SpanLogits { start, end })
    }
}
