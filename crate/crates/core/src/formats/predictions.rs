//! The prediction interchange file: what the extraction pipeline writes and
//! the scorer reads.
//!
//! Offsets are document-global characters, where the document is the corpus
//! text formed by joining all sentences with single spaces (see
//! [`DocumentLayout`](crate::corpus::DocumentLayout)). Each argument refers
//! to its trigger by index into the same sentence's trigger list.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{read_file, write_file};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictedTriggerRecord {
    pub text: String,
    pub start: usize,
    pub end: usize,
    pub event_type: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictedArgumentRecord {
    /// Index into the owning sentence's trigger list.
    pub trigger_ref: usize,
    pub role: String,
    pub text: String,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PredictedSentence {
    pub id: String,
    pub triggers: Vec<PredictedTriggerRecord>,
    pub arguments: Vec<PredictedArgumentRecord>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Predictions {
    pub sentences: Vec<PredictedSentence>,
}

impl Predictions {
    /// Structural checks: every argument's `trigger_ref` must point at a
    /// trigger of its own sentence.
    pub fn validate(&self) -> Result<()> {
        for sentence in &self.sentences {
            for argument in &sentence.arguments {
                if argument.trigger_ref >= sentence.triggers.len() {
                    return Err(Error::Format {
                        what: "predictions".into(),
                        detail: format!(
                            "sentence {:?}: argument {:?} refers to trigger {} but only {} exist",
                            sentence.id,
                            argument.role,
                            argument.trigger_ref,
                            sentence.triggers.len()
                        ),
                    });
                }
            }
        }
        Ok(())
    }
}

pub fn predictions_to_json(predictions: &Predictions) -> String {
    let mut json =
        serde_json::to_string_pretty(predictions).expect("predictions always serialize");
    json.push('\n');
    json
}

pub fn predictions_from_json(json: &str) -> Result<Predictions> {
    let predictions: Predictions =
        serde_json::from_str(json).map_err(|e| Error::json("predictions", e))?;
    predictions.validate()?;
    Ok(predictions)
}

pub fn write_predictions(predictions: &Predictions, path: &Path) -> Result<()> {
    write_file(path, &predictions_to_json(predictions))
}

pub fn read_predictions(path: &Path) -> Result<Predictions> {
    predictions_from_json(&read_file(path)?)
}
