//! The annotated-corpus object model.
//!
//! A [`Corpus`] is a list of sentences; each sentence owns its text, a token
//! layer, and zero or more event mentions (one trigger plus any number of
//! role-labelled arguments). Every span is a character range into the owning
//! sentence's text, and constructors validate that invariant eagerly so that
//! downstream stages never need to re-check it.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ontology::{EventOntology, EventType};
use crate::text;

/// A character range into a sentence text, together with the covered text.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Span {
    start: usize,
    end: usize,
    text: String,
}

impl Span {
    /// Builds the span `start..end` over `owner`, extracting the covered
    /// text. Fails if the range is out of bounds, reversed, or empty.
    pub fn new(owner: &str, start: usize, end: usize) -> Result<Self> {
        if start >= end {
            return Err(Error::Offset {
                start,
                end,
                len: text::char_len(owner),
                detail: "span must be non-empty with start < end".into(),
            });
        }
        match text::char_slice(owner, start, end) {
            Some(covered) => Ok(Span {
                start,
                end,
                text: covered.to_owned(),
            }),
            None => Err(Error::Offset {
                start,
                end,
                len: text::char_len(owner),
                detail: "span exceeds text bounds".into(),
            }),
        }
    }

    /// Rebuilds a span from its parts, validating against the owning text.
    pub fn from_parts(owner: &str, start: usize, end: usize, expected_text: &str) -> Result<Self> {
        let span = Span::new(owner, start, end)?;
        if span.text != expected_text {
            return Err(Error::Offset {
                start,
                end,
                len: text::char_len(owner),
                detail: format!(
                    "span text {:?} does not match text at offsets ({:?})",
                    expected_text, span.text
                ),
            });
        }
        Ok(span)
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// Length in characters.
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees start < end
    }

    /// Whether the two spans share at least one character position.
    pub fn overlaps(&self, other: &Span) -> bool {
        self.start < other.end && other.start < self.end
    }
}

/// The word a mention is anchored to, with its event type.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Trigger {
    pub span: Span,
    pub event_type: EventType,
}

/// A role-labelled participant span of an event mention.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Argument {
    pub span: Span,
    pub role: String,
}

/// One event mention: a trigger plus its arguments, anchored to a sentence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EventMention {
    sentence_id: String,
    trigger: Trigger,
    arguments: Vec<Argument>,
}

impl EventMention {
    /// Validates that every argument role is legal for the trigger's event
    /// type before assembling the mention.
    pub fn new(
        sentence_id: impl Into<String>,
        trigger: Trigger,
        arguments: Vec<Argument>,
        ontology: &EventOntology,
    ) -> Result<Self> {
        let roles = ontology
            .role_set(trigger.event_type.label())
            .ok_or_else(|| Error::UnknownEventType(trigger.event_type.label().to_owned()))?;
        for argument in &arguments {
            if !roles.iter().any(|r| r == &argument.role) {
                return Err(Error::InvalidRole {
                    event_type: trigger.event_type.label().to_owned(),
                    role: argument.role.clone(),
                });
            }
        }
        Ok(EventMention {
            sentence_id: sentence_id.into(),
            trigger,
            arguments,
        })
    }

    /// Reassembles a mention from parts taken from an already-validated
    /// mention (same trigger type, a subset of its arguments), where
    /// re-checking roles against an ontology would be redundant.
    pub(crate) fn from_validated(
        sentence_id: String,
        trigger: Trigger,
        arguments: Vec<Argument>,
    ) -> Self {
        EventMention {
            sentence_id,
            trigger,
            arguments,
        }
    }

    pub fn sentence_id(&self) -> &str {
        &self.sentence_id
    }

    pub fn trigger(&self) -> &Trigger {
        &self.trigger
    }

    pub fn arguments(&self) -> &[Argument] {
        &self.arguments
    }
}

/// A surface token with its character range.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    pub text: String,
    pub start: usize,
    pub end: usize,
}

impl Token {
    /// Tokenizes `text` with the crate tokenizer (alphanumeric runs plus
    /// standalone punctuation characters).
    pub fn tokenize(text: &str) -> Vec<Token> {
        text::token_ranges(text)
            .into_iter()
            .map(|(start, end)| Token {
                text: text::char_slice(text, start, end)
                    .expect("token range within bounds")
                    .to_owned(),
                start,
                end,
            })
            .collect()
    }
}

/// A sentence with its token layer and event mentions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sentence {
    id: String,
    text: String,
    tokens: Vec<Token>,
    mentions: Vec<EventMention>,
}

impl Sentence {
    /// Validates the full sentence invariant set: tokens must match their
    /// offsets, be strictly ordered, and tile the non-whitespace content of
    /// the text; every mention span must lie inside the text and carry the
    /// covered substring; every mention must name this sentence.
    pub fn new(
        id: impl Into<String>,
        text: impl Into<String>,
        tokens: Vec<Token>,
        mentions: Vec<EventMention>,
    ) -> Result<Self> {
        let id = id.into();
        let text = text.into();
        let text_len = text::char_len(&text);

        let mut previous_end = 0usize;
        let mut tiled = String::new();
        for token in &tokens {
            if token.start < previous_end || token.start >= token.end || token.end > text_len {
                return Err(Error::Offset {
                    start: token.start,
                    end: token.end,
                    len: text_len,
                    detail: format!("token {:?} out of order or out of bounds", token.text),
                });
            }
            let covered = text::char_slice(&text, token.start, token.end)
                .expect("bounds checked above");
            if covered != token.text {
                return Err(Error::Offset {
                    start: token.start,
                    end: token.end,
                    len: text_len,
                    detail: format!(
                        "token text {:?} does not match text at offsets ({:?})",
                        token.text, covered
                    ),
                });
            }
            previous_end = token.end;
            tiled.push_str(&token.text);
        }
        let non_whitespace: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if tiled != non_whitespace {
            return Err(Error::Format {
                what: "sentence tokens".into(),
                detail: format!(
                    "tokens of sentence {:?} do not tile its non-whitespace content",
                    id
                ),
            });
        }

        for mention in &mentions {
            if mention.sentence_id != id {
                return Err(Error::Format {
                    what: "event mention".into(),
                    detail: format!(
                        "mention names sentence {:?} but is attached to {:?}",
                        mention.sentence_id, id
                    ),
                });
            }
            let mut spans = vec![&mention.trigger.span];
            spans.extend(mention.arguments.iter().map(|a| &a.span));
            for span in spans {
                Span::from_parts(&text, span.start, span.end, &span.text)?;
            }
        }

        Ok(Sentence {
            id,
            text,
            tokens,
            mentions,
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn mentions(&self) -> &[EventMention] {
        &self.mentions
    }

    /// Replaces the mention list, revalidating spans against this sentence.
    pub fn with_mentions(&self, mentions: Vec<EventMention>) -> Result<Sentence> {
        Sentence::new(self.id.clone(), self.text.clone(), self.tokens.clone(), mentions)
    }

    /// The token index range `[i, j)` whose boundaries coincide exactly with
    /// the span, or `None` when the span does not start and end on token
    /// boundaries.
    pub fn token_range_for_span(&self, span: &Span) -> Option<(usize, usize)> {
        let first = self.tokens.iter().position(|t| t.start == span.start())?;
        let last = self.tokens.iter().position(|t| t.end == span.end())?;
        if last < first {
            return None;
        }
        Some((first, last + 1))
    }

    /// The token index range `[i, j)` of tokens overlapping the span's
    /// character range (at least one character in common). Empty when the
    /// span covers only whitespace.
    pub fn tokens_overlapping_span(&self, span: &Span) -> (usize, usize) {
        let mut first = None;
        let mut last = None;
        for (idx, token) in self.tokens.iter().enumerate() {
            if token.start < span.end() && span.start() < token.end {
                if first.is_none() {
                    first = Some(idx);
                }
                last = Some(idx);
            }
        }
        match (first, last) {
            (Some(f), Some(l)) => (f, l + 1),
            _ => (0, 0),
        }
    }
}

/// A whole annotated corpus: a language tag, a split tag, and sentences with
/// unique identifiers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Corpus {
    language: String,
    split: String,
    sentences: Vec<Sentence>,
}

impl Corpus {
    pub fn new(
        language: impl Into<String>,
        split: impl Into<String>,
        sentences: Vec<Sentence>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for sentence in &sentences {
            if !seen.insert(sentence.id.clone()) {
                return Err(Error::Format {
                    what: "corpus".into(),
                    detail: format!("duplicate sentence id {:?}", sentence.id),
                });
            }
        }
        Ok(Corpus {
            language: language.into(),
            split: split.into(),
            sentences,
        })
    }

    pub fn language(&self) -> &str {
        &self.language
    }

    pub fn split(&self) -> &str {
        &self.split
    }

    pub fn sentences(&self) -> &[Sentence] {
        &self.sentences
    }
}

/// Aggregate corpus counts.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct CorpusStats {
    pub sentences: usize,
    pub event_mentions: usize,
    pub triggers: usize,
    pub arguments: usize,
    pub distinct_trigger_surfaces: usize,
}

/// Counts sentences, mentions, triggers, and arguments, plus the number of
/// distinct trigger surface forms (case-sensitive, on the NFC text stored in
/// the spans).
pub fn corpus_stats(corpus: &Corpus) -> CorpusStats {
    let mut mentions = 0;
    let mut arguments = 0;
    let mut surfaces = HashSet::new();
    for sentence in corpus.sentences() {
        for mention in sentence.mentions() {
            mentions += 1;
            arguments += mention.arguments().len();
            surfaces.insert(mention.trigger().span.text().to_owned());
        }
    }
    CorpusStats {
        sentences: corpus.sentences().len(),
        event_mentions: mentions,
        triggers: mentions,
        arguments,
        distinct_trigger_surfaces: surfaces.len(),
    }
}

/// Character-offset layout of a document formed by joining sentences with a
/// single space, used to anchor per-sentence spans in document coordinates.
#[derive(Debug, Clone)]
pub struct DocumentLayout {
    text: String,
    bases: Vec<usize>,
}

impl DocumentLayout {
    pub fn new(sentences: &[Sentence]) -> Self {
        let mut text = String::new();
        let mut bases = Vec::with_capacity(sentences.len());
        let mut offset = 0usize;
        for (idx, sentence) in sentences.iter().enumerate() {
            if idx > 0 {
                text.push(' ');
                offset += 1;
            }
            bases.push(offset);
            text.push_str(sentence.text());
            offset += text::char_len(sentence.text());
        }
        DocumentLayout { text, bases }
    }

    /// The joined document text.
    pub fn text(&self) -> &str {
        &self.text
    }

    /// Character offset of sentence `index` within the document text.
    pub fn base(&self, index: usize) -> usize {
        self.bases[index]
    }

    /// Rebases a sentence-local character offset to document coordinates.
    pub fn to_document(&self, sentence_index: usize, local_offset: usize) -> usize {
        self.bases[sentence_index] + local_offset
    }
}
