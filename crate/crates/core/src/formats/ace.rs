//! Reader for annotated-sentence JSON with word-index spans.
//!
//! The input is a JSON array of sentence records. Each record carries the
//! raw sentence string, its word list, and gold event mentions whose trigger
//! and argument spans are *word index* ranges (`end` exclusive) into the word
//! list. This reader converts everything to validated character offsets:
//!
//! * text and words are normalized to Unicode NFC first;
//! * each word is located in the sentence left to right, allowing arbitrary
//!   whitespace between words but nothing else;
//! * event labels accept both `Type.Subtype` and `Type:Subtype` spellings and
//!   are stored dot-separated;
//! * `Time-…` argument sub-roles (e.g. `Time-Within`) collapse to `Time`.

use serde::Deserialize;

use crate::corpus::{Argument, Corpus, EventMention, Sentence, Span, Token, Trigger};
use crate::error::{Error, Result};
use crate::ontology::EventOntology;
use crate::text;

#[derive(Deserialize)]
struct RawRecord {
    sentence: String,
    words: Vec<String>,
    #[serde(rename = "golden-event-mentions", default)]
    mentions: Vec<RawMention>,
}

#[derive(Deserialize)]
struct RawMention {
    trigger: RawSpan,
    event_type: String,
    #[serde(default)]
    arguments: Vec<RawArgument>,
}

#[derive(Deserialize)]
struct RawSpan {
    start: usize,
    end: usize,
    #[serde(default)]
    text: Option<String>,
}

#[derive(Deserialize)]
struct RawArgument {
    start: usize,
    end: usize,
    role: String,
    #[serde(default)]
    text: Option<String>,
}

/// Locates each word in the sentence text, left to right, and returns their
/// character ranges. Words must appear in order, separated by whitespace
/// only, and nothing but whitespace may remain after the last word.
fn word_offsets(sentence: &str, words: &[String]) -> Result<Vec<(usize, usize)>> {
    let chars: Vec<char> = sentence.chars().collect();
    let mut offsets = Vec::with_capacity(words.len());
    let mut cursor = 0usize;
    for word in words {
        while cursor < chars.len() && chars[cursor].is_whitespace() {
            cursor += 1;
        }
        let word_chars: Vec<char> = word.chars().collect();
        if word_chars.is_empty() {
            return Err(Error::format("sentence words", "empty word"));
        }
        let end = cursor + word_chars.len();
        if end > chars.len() || chars[cursor..end] != word_chars[..] {
            return Err(Error::Offset {
                start: cursor,
                end,
                len: chars.len(),
                detail: format!("word {word:?} not found at its expected position"),
            });
        }
        offsets.push((cursor, end));
        cursor = end;
    }
    if chars[cursor..].iter().any(|c| !c.is_whitespace()) {
        return Err(Error::format(
            "sentence words",
            "sentence text has content not covered by the word list",
        ));
    }
    Ok(offsets)
}

fn char_span_for_words(
    text: &str,
    offsets: &[(usize, usize)],
    start_word: usize,
    end_word: usize,
    expected_text: Option<&str>,
) -> Result<Span> {
    if start_word >= end_word || end_word > offsets.len() {
        return Err(Error::Offset {
            start: start_word,
            end: end_word,
            len: offsets.len(),
            detail: "word-index span out of range".into(),
        });
    }
    let span = Span::new(text, offsets[start_word].0, offsets[end_word - 1].1)?;
    if let Some(expected) = expected_text {
        let expected = text::nfc(expected);
        if text::normalize_ws(&expected) != text::normalize_ws(span.text()) {
            return Err(Error::Offset {
                start: start_word,
                end: end_word,
                len: offsets.len(),
                detail: format!(
                    "annotation text {:?} disagrees with words at those indices ({:?})",
                    expected,
                    span.text()
                ),
            });
        }
    }
    Ok(span)
}

fn canonical_event_label(raw: &str) -> String {
    raw.replace(':', ".")
}

fn canonical_role(raw: &str) -> &str {
    if raw.starts_with("Time-") {
        "Time"
    } else {
        raw
    }
}

/// Parses an annotated-sentence JSON string into a [`Corpus`]. Sentences get
/// identifiers `s0`, `s1`, … in input order.
pub fn corpus_from_ace_json(
    json: &str,
    language: &str,
    split: &str,
    ontology: &EventOntology,
) -> Result<Corpus> {
    let records: Vec<RawRecord> =
        serde_json::from_str(json).map_err(|e| Error::json("annotated-sentence JSON", e))?;
    let mut sentences = Vec::with_capacity(records.len());
    for (index, record) in records.into_iter().enumerate() {
        let id = format!("s{index}");
        let sentence_text = text::nfc(&record.sentence).into_owned();
        let words: Vec<String> = record
            .words
            .iter()
            .map(|w| text::nfc(w).into_owned())
            .collect();
        let offsets = word_offsets(&sentence_text, &words)?;
        let tokens: Vec<Token> = words
            .iter()
            .zip(&offsets)
            .map(|(word, &(start, end))| Token {
                text: word.clone(),
                start,
                end,
            })
            .collect();

        let mut mentions = Vec::with_capacity(record.mentions.len());
        for raw_mention in record.mentions {
            let event_type =
                ontology.event_type(&canonical_event_label(&raw_mention.event_type))?;
            let trigger_span = char_span_for_words(
                &sentence_text,
                &offsets,
                raw_mention.trigger.start,
                raw_mention.trigger.end,
                raw_mention.trigger.text.as_deref(),
            )?;
            let trigger = Trigger {
                span: trigger_span,
                event_type,
            };
            let mut arguments = Vec::with_capacity(raw_mention.arguments.len());
            for raw_argument in raw_mention.arguments {
                arguments.push(Argument {
                    span: char_span_for_words(
                        &sentence_text,
                        &offsets,
                        raw_argument.start,
                        raw_argument.end,
                        raw_argument.text.as_deref(),
                    )?,
                    role: canonical_role(&raw_argument.role).to_owned(),
                });
            }
            mentions.push(EventMention::new(id.clone(), trigger, arguments, ontology)?);
        }
        sentences.push(Sentence::new(id, sentence_text, tokens, mentions)?);
    }
    Corpus::new(language, split, sentences)
}

/// File-path convenience wrapper over [`corpus_from_ace_json`].
pub fn read_ace_json(
    path: &std::path::Path,
    language: &str,
    split: &str,
    ontology: &EventOntology,
) -> Result<Corpus> {
    corpus_from_ace_json(&super::read_file(path)?, language, split, ontology)
}
