//! Trigger tagging as token classification.
//!
//! A trigger tagger scores every sentence token against the full IOB label
//! inventory; the per-token argmax sequence is then decoded back into typed
//! trigger spans. The scoring model is behind [`TokenLabelBackend`] so the
//! pipeline runs the same way against a served model or the deterministic
//! table backends used in tests.

use std::collections::HashMap;

use crate::corpus::{Corpus, Sentence, Trigger};
use crate::error::{Error, Result};
use crate::iob::{iob_decode, iob_encode, IobLabel, LabelInventory};

/// Token-classification scorer: one score per inventory label per token.
pub trait TokenLabelBackend: Send + Sync {
    /// Returns a `tokens.len() × inventory.len()` score matrix.
    fn label_scores(
        &self,
        tokens: &[String],
        inventory: &LabelInventory,
    ) -> Result<Vec<Vec<f64>>>;
}

/// Per-row argmax with ties broken toward the lower label index (NaN scores
/// never win).
pub fn argmax_labels(
    scores: &[Vec<f64>],
    inventory: &LabelInventory,
) -> Result<Vec<IobLabel>> {
    let mut labels = Vec::with_capacity(scores.len());
    for row in scores {
        if row.len() != inventory.len() {
            return Err(Error::ShapeMismatch {
                detail: format!(
                    "label score row has {} entries for an inventory of {}",
                    row.len(),
                    inventory.len()
                ),
            });
        }
        let mut best = 0usize;
        for (index, &score) in row.iter().enumerate().skip(1) {
            if score.is_nan() {
                continue;
            }
            if row[best].is_nan() || score > row[best] {
                best = index;
            }
        }
        labels.push(
            inventory
                .label_at(best)
                .expect("argmax index within inventory")
                .clone(),
        );
    }
    Ok(labels)
}

/// Runs the backend over one sentence and decodes the argmax label sequence
/// into triggers.
pub fn predict_triggers(
    sentence: &Sentence,
    backend: &dyn TokenLabelBackend,
    inventory: &LabelInventory,
) -> Result<Vec<Trigger>> {
    let tokens: Vec<String> = sentence.tokens().iter().map(|t| t.text.clone()).collect();
    let scores = backend.label_scores(&tokens, inventory)?;
    if scores.len() != tokens.len() {
        return Err(Error::ShapeMismatch {
            detail: format!(
                "backend returned {} score rows for {} tokens",
                scores.len(),
                tokens.len()
            ),
        });
    }
    let labels = argmax_labels(&scores, inventory)?;
    iob_decode(sentence.text(), sentence.tokens(), &labels)
}

/// Backend that reproduces the gold label sequences of the corpus it was
/// built from: a lookup oracle for exercising the pipeline without a model.
/// Sentences it has never seen get all-outside scores.
pub struct TableTriggerBackend {
    by_tokens: HashMap<Vec<String>, Vec<usize>>,
}

impl TableTriggerBackend {
    pub fn from_corpus(corpus: &Corpus, inventory: &LabelInventory) -> Result<Self> {
        let mut by_tokens = HashMap::new();
        for sentence in corpus.sentences() {
            let labels = iob_encode(sentence)?;
            let positions: Vec<usize> = labels
                .iter()
                .map(|label| {
                    inventory.position(label).ok_or_else(|| Error::ShapeMismatch {
                        detail: format!("label {label} not in inventory"),
                    })
                })
                .collect::<Result<_>>()?;
            let tokens: Vec<String> =
                sentence.tokens().iter().map(|t| t.text.clone()).collect();
            by_tokens.insert(tokens, positions);
        }
        Ok(TableTriggerBackend { by_tokens })
    }
}

impl TokenLabelBackend for TableTriggerBackend {
    fn label_scores(
        &self,
        tokens: &[String],
        inventory: &LabelInventory,
    ) -> Result<Vec<Vec<f64>>> {
        match self.by_tokens.get(tokens) {
            Some(positions) => Ok(positions
                .iter()
                .map(|&p| one_hot(p, inventory.len()))
                .collect()),
            None => Ok(all_outside_scores(tokens.len(), inventory)),
        }
    }
}

/// Backend that labels every token outside any trigger — the degenerate
/// baseline (never predicts an event).
#[derive(Debug, Default)]
pub struct AllOutsideBackend;

impl TokenLabelBackend for AllOutsideBackend {
    fn label_scores(
        &self,
        tokens: &[String],
        inventory: &LabelInventory,
    ) -> Result<Vec<Vec<f64>>> {
        Ok(all_outside_scores(tokens.len(), inventory))
    }
}

fn all_outside_scores(rows: usize, inventory: &LabelInventory) -> Vec<Vec<f64>> {
    (0..rows)
        .map(|_| one_hot(inventory.outside(), inventory.len()))
        .collect()
}

fn one_hot(position: usize, len: usize) -> Vec<f64> {
    let mut row = vec![0.0; len];
    row[position] = 1.0;
    row
}

/// The label inventory serialized one tag per line (the order models are
/// trained against), with a trailing newline.
pub fn labels_file_contents(inventory: &LabelInventory) -> String {
    let mut out = String::new();
    for label in inventory.labels() {
        out.push_str(&label.to_string());
        out.push('\n');
    }
    out
}
