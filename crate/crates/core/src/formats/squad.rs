//! SQuAD-v2 style reading-comprehension JSON.
//!
//! Argument extraction is trained and evaluated as extractive QA with
//! unanswerable questions, so the interchange file follows the SQuAD v2
//! layout: `{version, data: [{title, paragraphs: [{context, qas}]}]}` with
//! `answer_start` expressed in characters. Items sharing a context are
//! grouped into one paragraph when they are consecutive, everything sits
//! under a single article, and the writer's output is deterministic down to
//! the byte (two-space pretty printing, fixed key order).

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text;

/// One question over a context, with its (possibly empty) gold answers.
#[derive(Debug, Clone, PartialEq)]
pub struct QAItem {
    pub id: String,
    pub question: String,
    pub context: String,
    pub answers: Vec<QAAnswer>,
    pub is_impossible: bool,
}

/// A gold answer: the exact answer text and its character offset into the
/// context.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QAAnswer {
    pub text: String,
    pub answer_start: usize,
}

impl QAItem {
    /// Validates the item invariants: an impossible item has no answers, a
    /// possible one has at least one, and every answer text must occur in the
    /// context at exactly its `answer_start`.
    pub fn new(
        id: impl Into<String>,
        question: impl Into<String>,
        context: impl Into<String>,
        answers: Vec<QAAnswer>,
        is_impossible: bool,
    ) -> Result<Self> {
        let item = QAItem {
            id: id.into(),
            question: question.into(),
            context: context.into(),
            answers,
            is_impossible,
        };
        if item.is_impossible && !item.answers.is_empty() {
            return Err(Error::format(
                "QA item",
                format!("item {:?} is impossible but has answers", item.id),
            ));
        }
        if !item.is_impossible && item.answers.is_empty() {
            return Err(Error::format(
                "QA item",
                format!("item {:?} is answerable but has no answers", item.id),
            ));
        }
        for answer in &item.answers {
            let end = answer.answer_start + text::char_len(&answer.text);
            let at_offset = text::char_slice(&item.context, answer.answer_start, end);
            if at_offset != Some(answer.text.as_str()) {
                return Err(Error::Offset {
                    start: answer.answer_start,
                    end,
                    len: text::char_len(&item.context),
                    detail: format!(
                        "answer {:?} of item {:?} does not occur at its offset",
                        answer.text, item.id
                    ),
                });
            }
        }
        Ok(item)
    }
}

#[derive(Serialize, Deserialize)]
struct SquadFile {
    version: String,
    data: Vec<SquadArticle>,
}

#[derive(Serialize, Deserialize)]
struct SquadArticle {
    title: String,
    paragraphs: Vec<SquadParagraph>,
}

#[derive(Serialize, Deserialize)]
struct SquadParagraph {
    context: String,
    qas: Vec<SquadQuestion>,
}

#[derive(Serialize, Deserialize)]
struct SquadQuestion {
    id: String,
    question: String,
    answers: Vec<QAAnswer>,
    is_impossible: bool,
}

/// Serializes items to SQuAD-v2 JSON text. Consecutive items with the same
/// context share a paragraph; output bytes are deterministic.
pub fn qa_items_to_squad_json(items: &[QAItem]) -> String {
    let mut paragraphs: Vec<SquadParagraph> = Vec::new();
    for item in items {
        let question = SquadQuestion {
            id: item.id.clone(),
            question: item.question.clone(),
            answers: item.answers.clone(),
            is_impossible: item.is_impossible,
        };
        match paragraphs.last_mut() {
            Some(paragraph) if paragraph.context == item.context => {
                paragraph.qas.push(question);
            }
            _ => paragraphs.push(SquadParagraph {
                context: item.context.clone(),
                qas: vec![question],
            }),
        }
    }
    let file = SquadFile {
        version: "v2.0".into(),
        data: vec![SquadArticle {
            title: "events".into(),
            paragraphs,
        }],
    };
    let mut json = serde_json::to_string_pretty(&file).expect("squad file serializes");
    json.push('\n');
    json
}

/// Parses SQuAD-v2 JSON text back into a flat item list (article and
/// paragraph structure is flattened in order), validating every item.
pub fn qa_items_from_squad_json(json: &str) -> Result<Vec<QAItem>> {
    let file: SquadFile =
        serde_json::from_str(json).map_err(|e| Error::json("SQuAD JSON", e))?;
    let mut items = Vec::new();
    for article in file.data {
        for paragraph in article.paragraphs {
            for qa in paragraph.qas {
                items.push(QAItem::new(
                    qa.id,
                    qa.question,
                    paragraph.context.clone(),
                    qa.answers,
                    qa.is_impossible,
                )?);
            }
        }
    }
    Ok(items)
}

/// Writes items as SQuAD-v2 JSON to `path`.
pub fn write_squad_json(items: &[QAItem], path: &Path) -> Result<()> {
    super::write_file(path, &qa_items_to_squad_json(items))
}

/// Reads SQuAD-v2 JSON from `path`.
pub fn read_squad_json(path: &Path) -> Result<Vec<QAItem>> {
    qa_items_from_squad_json(&super::read_file(path)?)
}
