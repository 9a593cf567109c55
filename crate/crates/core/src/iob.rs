//! IOB2 encoding of triggers over the token layer.
//!
//! Trigger tagging is a per-token classification task: each token gets `O`,
//! `B-<label>`, or `I-<label>`, where `<label>` is a full `Type.Subtype`
//! event label. With the bundled 33-subtype ontology that yields 67 tag
//! classes. Encoding requires triggers to sit exactly on token boundaries;
//! decoding is total over any label sequence (an `I-` tag without a matching
//! predecessor opens a new span, the usual IOB2 repair).

use std::collections::HashMap;
use std::fmt;

use crate::corpus::{Sentence, Span, Token, Trigger};
use crate::error::{Error, Result};
use crate::ontology::{EventOntology, EventType};

/// One IOB2 tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IobLabel {
    Outside,
    Begin(EventType),
    Inside(EventType),
}

impl IobLabel {
    /// Parses `"O"`, `"B-<label>"`, or `"I-<label>"`, validating the event
    /// label against the ontology.
    pub fn parse(tag: &str, ontology: &EventOntology) -> Result<IobLabel> {
        if tag == "O" {
            return Ok(IobLabel::Outside);
        }
        if let Some(label) = tag.strip_prefix("B-") {
            return Ok(IobLabel::Begin(ontology.event_type(label)?));
        }
        if let Some(label) = tag.strip_prefix("I-") {
            return Ok(IobLabel::Inside(ontology.event_type(label)?));
        }
        Err(Error::format(
            "IOB tag",
            format!("{tag:?} is not O, B-<label>, or I-<label>"),
        ))
    }
}

impl fmt::Display for IobLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IobLabel::Outside => f.write_str("O"),
            IobLabel::Begin(t) => write!(f, "B-{}", t.label()),
            IobLabel::Inside(t) => write!(f, "I-{}", t.label()),
        }
    }
}

/// The fixed, ordered tag set for a given ontology: `O` first, then `B-` and
/// `I-` tags for each event label in lexicographic order. Classifier
/// backends emit one score per entry in this order, and argmax ties break
/// toward the lower index.
#[derive(Debug, Clone)]
pub struct LabelInventory {
    labels: Vec<IobLabel>,
    positions: HashMap<String, usize>,
}

impl LabelInventory {
    pub fn new(ontology: &EventOntology) -> Self {
        let mut labels = vec![IobLabel::Outside];
        for label in ontology.labels() {
            let event_type = ontology.event_type(label).expect("label from ontology");
            labels.push(IobLabel::Begin(event_type.clone()));
            labels.push(IobLabel::Inside(event_type));
        }
        let positions = labels
            .iter()
            .enumerate()
            .map(|(idx, label)| (label.to_string(), idx))
            .collect();
        LabelInventory { labels, positions }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[IobLabel] {
        &self.labels
    }

    pub fn label_at(&self, index: usize) -> Option<&IobLabel> {
        self.labels.get(index)
    }

    pub fn position(&self, label: &IobLabel) -> Option<usize> {
        self.positions.get(&label.to_string()).copied()
    }

    /// Index of the `O` tag (always 0).
    pub fn outside(&self) -> usize {
        0
    }
}

/// Encodes the sentence's triggers as one IOB2 tag per token.
///
/// Fails with [`Error::SpanTokenMismatch`] when a trigger span does not
/// coincide with token boundaries and [`Error::OverlappingTriggers`] when two
/// triggers claim the same token.
pub fn iob_encode(sentence: &Sentence) -> Result<Vec<IobLabel>> {
    let mut labels = vec![IobLabel::Outside; sentence.tokens().len()];
    let mut claimed: Vec<Option<&Span>> = vec![None; sentence.tokens().len()];
    for mention in sentence.mentions() {
        let trigger = mention.trigger();
        let (first, after_last) = sentence
            .token_range_for_span(&trigger.span)
            .ok_or_else(|| Error::SpanTokenMismatch {
                sentence_id: sentence.id().to_owned(),
                start: trigger.span.start(),
                end: trigger.span.end(),
            })?;
        for token_idx in first..after_last {
            if let Some(other) = claimed[token_idx] {
                return Err(Error::OverlappingTriggers {
                    sentence_id: sentence.id().to_owned(),
                    a_start: other.start(),
                    a_end: other.end(),
                    b_start: trigger.span.start(),
                    b_end: trigger.span.end(),
                });
            }
            claimed[token_idx] = Some(&trigger.span);
            labels[token_idx] = if token_idx == first {
                IobLabel::Begin(trigger.event_type.clone())
            } else {
                IobLabel::Inside(trigger.event_type.clone())
            };
        }
    }
    Ok(labels)
}

/// Decodes a tag sequence back into triggers over the given token layer.
///
/// Total over arbitrary tag sequences: an `I-x` tag that does not continue a
/// run of the same label opens a new span, as if it were `B-x`. Fails only
/// when `labels` and `tokens` differ in length.
pub fn iob_decode(text: &str, tokens: &[Token], labels: &[IobLabel]) -> Result<Vec<Trigger>> {
    if tokens.len() != labels.len() {
        return Err(Error::LengthMismatch {
            detail: format!(
                "{} tokens but {} labels",
                tokens.len(),
                labels.len()
            ),
        });
    }
    let mut triggers = Vec::new();
    let mut open: Option<(EventType, usize, usize)> = None; // (type, first, last)
    let flush = |open: &mut Option<(EventType, usize, usize)>,
                     triggers: &mut Vec<Trigger>|
     -> Result<()> {
        if let Some((event_type, first, last)) = open.take() {
            let span = Span::new(text, tokens[first].start, tokens[last].end)?;
            triggers.push(Trigger { span, event_type });
        }
        Ok(())
    };
    for (idx, label) in labels.iter().enumerate() {
        match label {
            IobLabel::Outside => flush(&mut open, &mut triggers)?,
            IobLabel::Begin(event_type) => {
                flush(&mut open, &mut triggers)?;
                open = Some((event_type.clone(), idx, idx));
            }
            IobLabel::Inside(event_type) => match &mut open {
                Some((current, _, last)) if current == event_type => *last = idx,
                _ => {
                    flush(&mut open, &mut triggers)?;
                    open = Some((event_type.clone(), idx, idx));
                }
            },
        }
    }
    flush(&mut open, &mut triggers)?;
    Ok(triggers)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{EventMention, Token};
    use crate::ontology::EventOntology;

    fn ontology() -> &'static EventOntology {
        EventOntology::bundled()
    }

    fn die(text: &str, start: usize, end: usize) -> Trigger {
        Trigger {
            span: Span::new(text, start, end).unwrap(),
            event_type: ontology().event_type("Life.Die").unwrap(),
        }
    }

    fn sentence_with_triggers(text: &str, triggers: Vec<Trigger>) -> Sentence {
        let mentions = triggers
            .into_iter()
            .map(|t| EventMention::new("s0", t, vec![], ontology()).unwrap())
            .collect();
        Sentence::new("s0", text, Token::tokenize(text), mentions).unwrap()
    }

    #[test]
    fn inventory_has_one_outside_plus_two_per_label() {
        let inventory = LabelInventory::new(ontology());
        assert_eq!(inventory.len(), 67);
        assert_eq!(inventory.label_at(0), Some(&IobLabel::Outside));
        assert_eq!(
            inventory.label_at(1).unwrap().to_string(),
            "B-Business.Declare-Bankruptcy"
        );
        assert_eq!(
            inventory.label_at(2).unwrap().to_string(),
            "I-Business.Declare-Bankruptcy"
        );
        assert_eq!(
            inventory.position(&IobLabel::Outside),
            Some(0)
        );
    }

    #[test]
    fn encode_produces_b_then_i_for_multiword_trigger() {
        let text = "O ataque cardíaco matou Elvis .";
        let mut trigger = die(text, 2, 17); // "ataque cardíaco"
        trigger.event_type = ontology().event_type("Conflict.Attack").unwrap();
        let sentence = sentence_with_triggers(text, vec![trigger]);
        let labels: Vec<String> = iob_encode(&sentence)
            .unwrap()
            .iter()
            .map(|l| l.to_string())
            .collect();
        assert_eq!(
            labels,
            vec!["O", "B-Conflict.Attack", "I-Conflict.Attack", "O", "O", "O"]
        );
    }

    #[test]
    fn encode_rejects_mid_token_trigger() {
        let text = "Elvis morreu .";
        let sentence_text = text;
        let trigger = die(sentence_text, 7, 12); // "orreu"
        let err = {
            // Build the sentence without token-boundary enforcement (the
            // corpus model allows it; only encoding rejects it).
            let mention = EventMention::new("s0", trigger, vec![], ontology()).unwrap();
            let sentence =
                Sentence::new("s0", text, Token::tokenize(text), vec![mention]).unwrap();
            iob_encode(&sentence).unwrap_err()
        };
        assert!(matches!(err, Error::SpanTokenMismatch { .. }));
    }

    #[test]
    fn encode_rejects_overlapping_triggers() {
        let text = "ataque cardíaco fatal";
        let a = Trigger {
            span: Span::new(text, 0, 15).unwrap(),
            event_type: ontology().event_type("Conflict.Attack").unwrap(),
        };
        let b = die(text, 7, 15);
        let sentence = sentence_with_triggers(text, vec![a, b]);
        assert!(matches!(
            iob_encode(&sentence).unwrap_err(),
            Error::OverlappingTriggers { .. }
        ));
    }

    #[test]
    fn decode_inverts_encode() {
        let text = "Elvis morreu e Maria casou .";
        let mut marry = die(text, 21, 26); // "casou"
        marry.event_type = ontology().event_type("Life.Marry").unwrap();
        let sentence = sentence_with_triggers(text, vec![die(text, 6, 12), marry]);
        let labels = iob_encode(&sentence).unwrap();
        let decoded = iob_decode(text, sentence.tokens(), &labels).unwrap();
        assert_eq!(decoded.len(), 2);
        assert_eq!(decoded[0].span.text(), "morreu");
        assert_eq!(decoded[0].event_type.label(), "Life.Die");
        assert_eq!(decoded[1].span.text(), "casou");
        assert_eq!(decoded[1].event_type.label(), "Life.Marry");
    }

    #[test]
    fn decode_promotes_orphan_inside_tags() {
        let text = "um dois três";
        let tokens = Token::tokenize(text);
        let die_type = ontology().event_type("Life.Die").unwrap();
        let marry_type = ontology().event_type("Life.Marry").unwrap();
        // I-Life.Die with no opener, then I-Life.Marry breaking the run.
        let labels = vec![
            IobLabel::Inside(die_type.clone()),
            IobLabel::Inside(die_type),
            IobLabel::Inside(marry_type),
        ];
        let decoded = iob_decode(text, &tokens, &labels).unwrap();
        assert_eq!(decoded.len(), 2);
        assert_eq!(decoded[0].span.text(), "um dois");
        assert_eq!(decoded[0].event_type.label(), "Life.Die");
        assert_eq!(decoded[1].span.text(), "três");
        assert_eq!(decoded[1].event_type.label(), "Life.Marry");
    }

    #[test]
    fn decode_rejects_length_mismatch() {
        let text = "um dois";
        let tokens = Token::tokenize(text);
        assert!(matches!(
            iob_decode(text, &tokens, &[IobLabel::Outside]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn tag_parsing_round_trips() {
        let ontology = ontology();
        for tag in ["O", "B-Life.Die", "I-Justice.Arrest-Jail"] {
            assert_eq!(IobLabel::parse(tag, ontology).unwrap().to_string(), tag);
        }
        assert!(IobLabel::parse("B-Life.Fly", ontology).is_err());
        assert!(IobLabel::parse("X-Life.Die", ontology).is_err());
    }
}
