//! Interchange file formats.
//!
//! Four external formats are supported next to the crate's own canonical
//! corpus JSON:
//!
//! * annotated-sentence JSON with word-index spans ([`ace`]),
//! * CoNLL-style token/tag files for trigger tagging ([`conll`]),
//! * SQuAD-v2 reading-comprehension JSON for arguments ([`squad`]),
//! * prediction JSON with document-global offsets ([`predictions`]).
//!
//! The canonical corpus JSON written here is simply the serialization of
//! [`Corpus`] (character-offset spans, explicit token layer); reading it
//! re-validates every invariant through the regular constructors.

pub mod ace;
pub mod conll;
pub mod predictions;
pub mod squad;

use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::corpus::{Argument, Corpus, EventMention, Sentence, Span, Token, Trigger};
use crate::error::{Error, Result};
use crate::ontology::EventOntology;

pub(crate) fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
        }
    }
    fs::write(path, contents).map_err(|e| Error::io(path, e))
}

#[derive(Deserialize)]
struct RawCorpus {
    language: String,
    split: String,
    sentences: Vec<RawSentence>,
}

#[derive(Deserialize)]
struct RawSentence {
    id: String,
    text: String,
    tokens: Vec<RawToken>,
    mentions: Vec<RawMention>,
}

#[derive(Deserialize)]
struct RawToken {
    text: String,
    start: usize,
    end: usize,
}

#[derive(Deserialize)]
struct RawMention {
    sentence_id: String,
    trigger: RawTrigger,
    arguments: Vec<RawArgument>,
}

#[derive(Deserialize)]
struct RawTrigger {
    span: RawSpan,
    event_type: String,
}

#[derive(Deserialize)]
struct RawSpan {
    start: usize,
    end: usize,
    text: String,
}

#[derive(Deserialize)]
struct RawArgument {
    span: RawSpan,
    role: String,
}

/// Serializes a corpus as pretty-printed canonical JSON.
pub fn corpus_to_json(corpus: &Corpus) -> String {
    let mut json = serde_json::to_string_pretty(corpus).expect("corpus serializes");
    json.push('\n');
    json
}

/// Parses canonical corpus JSON, re-validating every model invariant.
pub fn corpus_from_json(json: &str, ontology: &EventOntology) -> Result<Corpus> {
    let raw: RawCorpus =
        serde_json::from_str(json).map_err(|e| Error::json("corpus JSON", e))?;
    corpus_from_raw(raw, ontology)
}

/// Like [`corpus_from_json`], for an already-parsed JSON value (canonical
/// corpora embedded in other documents).
pub fn corpus_from_value(value: serde_json::Value, ontology: &EventOntology) -> Result<Corpus> {
    let raw: RawCorpus =
        serde_json::from_value(value).map_err(|e| Error::json("corpus JSON", e))?;
    corpus_from_raw(raw, ontology)
}

fn corpus_from_raw(raw: RawCorpus, ontology: &EventOntology) -> Result<Corpus> {
    let mut sentences = Vec::with_capacity(raw.sentences.len());
    for raw_sentence in raw.sentences {
        let text = raw_sentence.text;
        let tokens = raw_sentence
            .tokens
            .into_iter()
            .map(|t| Token {
                text: t.text,
                start: t.start,
                end: t.end,
            })
            .collect();
        let mut mentions = Vec::with_capacity(raw_sentence.mentions.len());
        for raw_mention in raw_sentence.mentions {
            let trigger_span = Span::from_parts(
                &text,
                raw_mention.trigger.span.start,
                raw_mention.trigger.span.end,
                &raw_mention.trigger.span.text,
            )?;
            let trigger = Trigger {
                span: trigger_span,
                event_type: ontology.event_type(&raw_mention.trigger.event_type)?,
            };
            let mut arguments = Vec::with_capacity(raw_mention.arguments.len());
            for raw_argument in raw_mention.arguments {
                arguments.push(Argument {
                    span: Span::from_parts(
                        &text,
                        raw_argument.span.start,
                        raw_argument.span.end,
                        &raw_argument.span.text,
                    )?,
                    role: raw_argument.role,
                });
            }
            mentions.push(EventMention::new(
                raw_mention.sentence_id,
                trigger,
                arguments,
                ontology,
            )?);
        }
        sentences.push(Sentence::new(raw_sentence.id, text, tokens, mentions)?);
    }
    Corpus::new(raw.language, raw.split, sentences)
}

/// Writes canonical corpus JSON to `path`.
pub fn write_corpus_json(corpus: &Corpus, path: &Path) -> Result<()> {
    write_file(path, &corpus_to_json(corpus))
}

/// Reads canonical corpus JSON from `path`.
pub fn read_corpus_json(path: &Path, ontology: &EventOntology) -> Result<Corpus> {
    corpus_from_json(&read_file(path)?, ontology)
}

/// Reads a corpus from either supported JSON layout, telling them apart by
/// the top-level value: an array is annotated-sentence input (word-index
/// spans), an object is canonical corpus JSON. `language` and `split` apply
/// only to the former; canonical files carry their own tags.
pub fn read_corpus_auto(
    path: &Path,
    ontology: &EventOntology,
    language: &str,
    split: &str,
) -> Result<Corpus> {
    let json = read_file(path)?;
    let trimmed = json.trim_start();
    if trimmed.starts_with('[') {
        ace::corpus_from_ace_json(&json, language, split, ontology)
    } else {
        corpus_from_json(&json, ontology)
    }
}
