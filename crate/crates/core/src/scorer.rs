//! Precision/recall/F1 scoring of trigger and argument predictions.
//!
//! Both tasks are scored over flat item lists, where an item is a labelled
//! character span in document coordinates. Two views are computed:
//! *classification* requires span and label to match, *identification* only
//! the span. Matching is one-to-one: each gold item can satisfy at most one
//! prediction and vice versa. Unmatched predictions that overlap a gold item
//! of the same label (boundary errors) or cover the exact span under another
//! label (label confusions) are reported as near misses.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, DocumentLayout};
use crate::error::{Error, Result};
use crate::formats::predictions::Predictions;
use crate::text;

/// A scoreable unit: a labelled span with document-global character offsets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Item {
    pub start: usize,
    pub end: usize,
    pub label: String,
    pub text: String,
}

/// Precision, recall, and F1 with their underlying counts. Rates are in
/// `[0, 1]`; undefined ratios (empty denominators) are 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Metrics {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub correct: usize,
    pub predicted: usize,
    pub gold: usize,
}

impl Metrics {
    pub fn compute(correct: usize, predicted: usize, gold: usize) -> Metrics {
        let precision = if predicted == 0 {
            0.0
        } else {
            correct as f64 / predicted as f64
        };
        let recall = if gold == 0 {
            0.0
        } else {
            correct as f64 / gold as f64
        };
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        Metrics {
            precision,
            recall,
            f1,
            correct,
            predicted,
            gold,
        }
    }
}

/// How an unmatched prediction relates to an unmatched gold item.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NearMissKind {
    /// Same span, different label.
    SameSpan,
    /// Same label; the prediction strictly contains the gold span.
    PredictionContainsGold,
    /// Same label; the gold span strictly contains the prediction.
    GoldContainsPrediction,
    /// Same label; the spans overlap without containment.
    PartialOverlap,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NearMiss {
    pub kind: NearMissKind,
    pub predicted: Item,
    pub gold: Item,
}

/// Scores for one task (triggers or arguments).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreReport {
    pub classification: Metrics,
    pub identification: Metrics,
    pub near_misses: Vec<NearMiss>,
}

fn one_to_one_matches<K: Eq + std::hash::Hash>(
    predicted_keys: Vec<K>,
    gold_keys: Vec<K>,
) -> (usize, Vec<bool>, Vec<bool>) {
    let mut gold_available: HashMap<&K, Vec<usize>> = HashMap::new();
    for (index, key) in gold_keys.iter().enumerate().rev() {
        gold_available.entry(key).or_default().push(index);
    }
    let mut predicted_matched = vec![false; predicted_keys.len()];
    let mut gold_matched = vec![false; gold_keys.len()];
    let mut correct = 0;
    for (index, key) in predicted_keys.iter().enumerate() {
        if let Some(stack) = gold_available.get_mut(key) {
            if let Some(gold_index) = stack.pop() {
                predicted_matched[index] = true;
                gold_matched[gold_index] = true;
                correct += 1;
            }
        }
    }
    (correct, predicted_matched, gold_matched)
}

/// Scores predictions against gold items; both views plus near misses.
pub fn score_items(predicted: &[Item], gold: &[Item]) -> ScoreReport {
    let (correct_class, predicted_matched, gold_matched) = one_to_one_matches(
        predicted
            .iter()
            .map(|i| (i.start, i.end, i.label.clone()))
            .collect(),
        gold.iter()
            .map(|i| (i.start, i.end, i.label.clone()))
            .collect(),
    );
    let (correct_ident, _, _) = one_to_one_matches(
        predicted.iter().map(|i| (i.start, i.end)).collect(),
        gold.iter().map(|i| (i.start, i.end)).collect(),
    );

    let mut near_misses = Vec::new();
    for (pi, prediction) in predicted.iter().enumerate() {
        if predicted_matched[pi] {
            continue;
        }
        for (gi, gold_item) in gold.iter().enumerate() {
            if gold_matched[gi] {
                continue;
            }
            let overlaps = prediction.start < gold_item.end && gold_item.start < prediction.end;
            if !overlaps {
                continue;
            }
            let same_span =
                prediction.start == gold_item.start && prediction.end == gold_item.end;
            let kind = if same_span {
                // Labels must differ here, or classification would have
                // matched the pair.
                NearMissKind::SameSpan
            } else if prediction.label != gold_item.label {
                continue;
            } else if prediction.start <= gold_item.start && gold_item.end <= prediction.end {
                NearMissKind::PredictionContainsGold
            } else if gold_item.start <= prediction.start && prediction.end <= gold_item.end {
                NearMissKind::GoldContainsPrediction
            } else {
                NearMissKind::PartialOverlap
            };
            near_misses.push(NearMiss {
                kind,
                predicted: prediction.clone(),
                gold: gold_item.clone(),
            });
        }
    }

    ScoreReport {
        classification: Metrics::compute(correct_class, predicted.len(), gold.len()),
        identification: Metrics::compute(correct_ident, predicted.len(), gold.len()),
        near_misses,
    }
}

/// Gold items of a corpus in document coordinates: trigger items labelled
/// with the event type, argument items labelled `event type:role`.
pub fn items_from_corpus(corpus: &Corpus) -> (Vec<Item>, Vec<Item>) {
    let layout = DocumentLayout::new(corpus.sentences());
    let mut triggers = Vec::new();
    let mut arguments = Vec::new();
    for (index, sentence) in corpus.sentences().iter().enumerate() {
        let base = layout.base(index);
        for mention in sentence.mentions() {
            let trigger = mention.trigger();
            triggers.push(Item {
                start: base + trigger.span.start(),
                end: base + trigger.span.end(),
                label: trigger.event_type.label().to_owned(),
                text: trigger.span.text().to_owned(),
            });
            for argument in mention.arguments() {
                arguments.push(Item {
                    start: base + argument.span.start(),
                    end: base + argument.span.end(),
                    label: format!("{}:{}", trigger.event_type.label(), argument.role),
                    text: argument.span.text().to_owned(),
                });
            }
        }
    }
    (triggers, arguments)
}

/// Prediction items in document coordinates, cross-checked against the gold
/// corpus: sentence ids must exist and each predicted text must occur at its
/// offsets in the document text.
pub fn items_from_predictions(
    predictions: &Predictions,
    corpus: &Corpus,
) -> Result<(Vec<Item>, Vec<Item>)> {
    predictions.validate()?;
    let layout = DocumentLayout::new(corpus.sentences());
    let known_ids: std::collections::HashSet<&str> =
        corpus.sentences().iter().map(|s| s.id()).collect();
    let mut seen_ids = std::collections::HashSet::new();

    let mut triggers = Vec::new();
    let mut arguments = Vec::new();
    for sentence in &predictions.sentences {
        if !known_ids.contains(sentence.id.as_str()) {
            return Err(Error::Format {
                what: "predictions".into(),
                detail: format!("unknown sentence id {:?}", sentence.id),
            });
        }
        if !seen_ids.insert(sentence.id.as_str()) {
            return Err(Error::Format {
                what: "predictions".into(),
                detail: format!("duplicate sentence id {:?}", sentence.id),
            });
        }
        let check_text = |start: usize, end: usize, text: &str| -> Result<()> {
            match text::char_slice(layout.text(), start, end) {
                Some(covered) if covered == text => Ok(()),
                _ => Err(Error::Format {
                    what: "predictions".into(),
                    detail: format!(
                        "sentence {:?}: text {:?} does not occur at document offsets {}..{}",
                        sentence.id, text, start, end
                    ),
                }),
            }
        };
        for trigger in &sentence.triggers {
            check_text(trigger.start, trigger.end, &trigger.text)?;
            triggers.push(Item {
                start: trigger.start,
                end: trigger.end,
                label: trigger.event_type.clone(),
                text: trigger.text.clone(),
            });
        }
        for argument in &sentence.arguments {
            check_text(argument.start, argument.end, &argument.text)?;
            let event_type = &sentence.triggers[argument.trigger_ref].event_type;
            arguments.push(Item {
                start: argument.start,
                end: argument.end,
                label: format!("{}:{}", event_type, argument.role),
                text: argument.text.clone(),
            });
        }
    }
    Ok((triggers, arguments))
}

/// Trigger and argument scores for one prediction file against one corpus.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvaluationReport {
    pub triggers: ScoreReport,
    pub arguments: ScoreReport,
}

pub fn evaluate(predictions: &Predictions, corpus: &Corpus) -> Result<EvaluationReport> {
    let (gold_triggers, gold_arguments) = items_from_corpus(corpus);
    let (predicted_triggers, predicted_arguments) = items_from_predictions(predictions, corpus)?;
    Ok(EvaluationReport {
        triggers: score_items(&predicted_triggers, &gold_triggers),
        arguments: score_items(&predicted_arguments, &gold_arguments),
    })
}

fn percent(rate: f64) -> f64 {
    (rate * 1000.0).round() / 10.0
}

/// Renders classification and identification rows for the named tasks as a
/// fixed-width text table, rates ×100 with one decimal.
pub fn render_tasks(tasks: &[(&str, &ScoreReport)]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<26} {:>6} {:>6} {:>6} {:>8} {:>9} {:>6}\n",
        "task", "P", "R", "F1", "correct", "predicted", "gold"
    ));
    let mut rows: Vec<(String, &Metrics)> = Vec::new();
    for (name, report) in tasks {
        rows.push((format!("{name} classification"), &report.classification));
        rows.push((format!("{name} identification"), &report.identification));
    }
    for (name, metrics) in rows {
        out.push_str(&format!(
            "{:<26} {:>6.1} {:>6.1} {:>6.1} {:>8} {:>9} {:>6}\n",
            name,
            percent(metrics.precision),
            percent(metrics.recall),
            percent(metrics.f1),
            metrics.correct,
            metrics.predicted,
            metrics.gold
        ));
    }
    out
}

/// Renders both tasks of an evaluation report.
pub fn render_report(report: &EvaluationReport) -> String {
    render_tasks(&[
        ("trigger", &report.triggers),
        ("argument", &report.arguments),
    ])
}
