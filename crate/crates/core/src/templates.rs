//! Portuguese question templates for argument extraction.
//!
//! Arguments are extracted by asking one natural-language question per legal
//! role of the trigger's event type. Templates are stored without a question
//! mark; [`contextualize`] anchors a template to a concrete trigger by
//! appending `em <trigger>` and the final `?`, e.g. `Quando ocorre a morte`
//! over the trigger `morreu` becomes `Quando ocorre a morte em morreu?`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use crate::corpus::EventMention;
use crate::error::{Error, Result};
use crate::formats::squad::{QAAnswer, QAItem};
use crate::ontology::EventOntology;

/// A total mapping from (event label, role) to a question template.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuestionTemplateSet {
    questions: BTreeMap<String, BTreeMap<String, String>>,
}

impl QuestionTemplateSet {
    /// The Portuguese template set bundled with the crate, validated to be
    /// total over the bundled ontology.
    pub fn bundled() -> &'static QuestionTemplateSet {
        static BUNDLED: OnceLock<QuestionTemplateSet> = OnceLock::new();
        BUNDLED.get_or_init(|| {
            QuestionTemplateSet::from_json_str(
                include_str!("../data/templates.pt.json"),
                EventOntology::bundled(),
            )
            .expect("bundled templates are valid")
        })
    }

    /// Parses a template set from JSON (`{label: {role: question}}`) and
    /// checks it is *total* over the given ontology: every (label, role)
    /// pair has exactly one non-empty template, no extras, and templates do
    /// not carry their own question mark.
    pub fn from_json_str(json: &str, ontology: &EventOntology) -> Result<Self> {
        let raw: BTreeMap<String, BTreeMap<String, String>> =
            serde_json::from_str(json).map_err(|e| Error::json("question templates", e))?;
        for label in raw.keys() {
            if !ontology.contains(label) {
                return Err(Error::UnknownEventType(label.clone()));
            }
        }
        for label in ontology.labels() {
            let roles = ontology.role_set(label).expect("label from ontology");
            let templates = raw.get(label).ok_or_else(|| Error::MissingTemplate {
                event_type: label.to_owned(),
                role: "*".into(),
            })?;
            for role in roles {
                match templates.get(role) {
                    None => {
                        return Err(Error::MissingTemplate {
                            event_type: label.to_owned(),
                            role: role.clone(),
                        })
                    }
                    Some(question) if question.is_empty() || question.ends_with('?') => {
                        return Err(Error::format(
                            "question templates",
                            format!(
                                "template for {label}/{role} must be non-empty and not end in '?'"
                            ),
                        ))
                    }
                    Some(_) => {}
                }
            }
            for role in templates.keys() {
                if !roles.iter().any(|r| r == role) {
                    return Err(Error::InvalidRole {
                        event_type: label.to_owned(),
                        role: role.clone(),
                    });
                }
            }
        }
        Ok(QuestionTemplateSet { questions: raw })
    }

    /// The template for an event label and role.
    pub fn question_for(&self, label: &str, role: &str) -> Result<&str> {
        self.questions
            .get(label)
            .and_then(|roles| roles.get(role))
            .map(String::as_str)
            .ok_or_else(|| Error::MissingTemplate {
                event_type: label.to_owned(),
                role: role.to_owned(),
            })
    }

    /// Total number of templates.
    pub fn len(&self) -> usize {
        self.questions.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.questions.is_empty()
    }
}

/// Anchors a question template to a concrete trigger:
/// `<template> em <trigger>?`.
pub fn contextualize(question: &str, trigger_text: &str) -> String {
    format!("{question} em {trigger_text}?")
}

/// Builds one QA item per legal role of the mention's event type, in the
/// ontology's role order.
///
/// `context` is the passage the questions are asked against and
/// `context_base` is the character offset of the mention's sentence within
/// that context; gold argument spans are rebased by it. Roles with no gold
/// argument become impossible (unanswerable) items. Item identifiers follow
/// `<sentence_id>:<event_label>:<role>:<mention_index>`, where
/// `mention_index` is the mention's position within its sentence.
pub fn generate_qa_items(
    mention: &EventMention,
    mention_index: usize,
    context: &str,
    context_base: usize,
    templates: &QuestionTemplateSet,
    ontology: &EventOntology,
) -> Result<Vec<QAItem>> {
    let label = mention.trigger().event_type.label();
    let roles = ontology
        .role_set(label)
        .ok_or_else(|| Error::UnknownEventType(label.to_owned()))?;
    let mut items = Vec::with_capacity(roles.len());
    for role in roles {
        let question = contextualize(
            templates.question_for(label, role)?,
            mention.trigger().span.text(),
        );
        let answers: Vec<QAAnswer> = mention
            .arguments()
            .iter()
            .filter(|argument| &argument.role == role)
            .map(|argument| QAAnswer {
                text: argument.span.text().to_owned(),
                answer_start: context_base + argument.span.start(),
            })
            .collect();
        let is_impossible = answers.is_empty();
        items.push(QAItem::new(
            format!("{}:{}:{}:{}", mention.sentence_id(), label, role, mention_index),
            question,
            context,
            answers,
            is_impossible,
        )?);
    }
    Ok(items)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{Argument, Span, Token, Trigger};

    fn ontology() -> &'static EventOntology {
        EventOntology::bundled()
    }

    #[test]
    fn bundled_templates_are_total_over_the_ontology() {
        let templates = QuestionTemplateSet::bundled();
        let expected: usize = ontology()
            .labels()
            .map(|l| ontology().role_set(l).unwrap().len())
            .sum();
        assert_eq!(templates.len(), expected);
        for label in ontology().labels() {
            for role in ontology().role_set(label).unwrap() {
                let question = templates.question_for(label, role).unwrap();
                assert!(!question.is_empty());
                assert!(!question.ends_with('?'));
            }
        }
    }

    #[test]
    fn life_die_question_set() {
        let templates = QuestionTemplateSet::bundled();
        assert_eq!(
            templates.question_for("Life.Die", "Agent").unwrap(),
            "Quem é o assassino"
        );
        assert_eq!(
            templates.question_for("Life.Die", "Victim").unwrap(),
            "Quem morre"
        );
        assert_eq!(
            templates.question_for("Life.Die", "Instrument").unwrap(),
            "Qual é o instrumento utilizado"
        );
        assert_eq!(
            templates.question_for("Life.Die", "Time").unwrap(),
            "Quando ocorre a morte"
        );
        assert_eq!(
            templates.question_for("Life.Die", "Place").unwrap(),
            "Onde ocorre a morte"
        );
    }

    #[test]
    fn contextualize_appends_trigger_and_question_mark() {
        assert_eq!(
            contextualize("Quando ocorre a morte", "morreu"),
            "Quando ocorre a morte em morreu?"
        );
    }

    #[test]
    fn incomplete_template_sets_are_rejected() {
        let missing_role = r#"{"Life.Die": {"Victim": "Quem morre"}}"#;
        assert!(QuestionTemplateSet::from_json_str(missing_role, ontology()).is_err());
        let unknown_label = r#"{"Life.Fly": {"Agent": "Quem voa"}}"#;
        assert!(QuestionTemplateSet::from_json_str(unknown_label, ontology()).is_err());
    }

    #[test]
    fn question_marks_in_templates_are_rejected() {
        let with_mark = include_str!("../data/templates.pt.json")
            .replacen("Quem morre", "Quem morre?", 1);
        assert!(QuestionTemplateSet::from_json_str(&with_mark, ontology()).is_err());
    }

    fn elvis_sentence_text() -> &'static str {
        "Elvis Presley morreu de ataque cardíaco em 1977, Memphis, Tennessee."
    }

    fn elvis_mention() -> EventMention {
        let text = elvis_sentence_text();
        let trigger = Trigger {
            span: Span::new(text, 14, 20).unwrap(),
            event_type: ontology().event_type("Life.Die").unwrap(),
        };
        let arguments = vec![
            Argument {
                span: Span::new(text, 0, 13).unwrap(),
                role: "Victim".into(),
            },
            Argument {
                span: Span::new(text, 40, 47).unwrap(),
                role: "Time".into(),
            },
            Argument {
                span: Span::new(text, 49, 67).unwrap(),
                role: "Place".into(),
            },
        ];
        EventMention::new("s0", trigger, arguments, ontology()).unwrap()
    }

    #[test]
    fn one_item_per_role_with_impossible_gaps() {
        let text = elvis_sentence_text();
        let mention = elvis_mention();
        let items = generate_qa_items(
            &mention,
            0,
            text,
            0,
            QuestionTemplateSet::bundled(),
            ontology(),
        )
        .unwrap();
        assert_eq!(items.len(), 5);

        // Role order follows the ontology: Agent, Victim, Instrument, Time, Place.
        assert_eq!(items[0].id, "s0:Life.Die:Agent:0");
        assert!(items[0].is_impossible);
        assert_eq!(items[0].question, "Quem é o assassino em morreu?");

        assert_eq!(items[1].id, "s0:Life.Die:Victim:0");
        assert_eq!(items[1].answers[0].text, "Elvis Presley");
        assert_eq!(items[1].answers[0].answer_start, 0);

        assert!(items[2].is_impossible); // Instrument

        assert_eq!(items[3].question, "Quando ocorre a morte em morreu?");
        assert_eq!(items[3].answers[0].text, "em 1977");
        assert_eq!(items[3].answers[0].answer_start, 40);

        assert_eq!(items[4].answers[0].text, "Memphis, Tennessee");
        assert_eq!(items[4].answers[0].answer_start, 49);
    }

    #[test]
    fn answers_are_rebased_into_wider_contexts() {
        let sentence_text = elvis_sentence_text();
        let context = format!("Década de 1970. {sentence_text}");
        let base = 16; // characters before the sentence within the context
        let mention = elvis_mention();
        let items = generate_qa_items(
            &mention,
            0,
            &context,
            base,
            QuestionTemplateSet::bundled(),
            ontology(),
        )
        .unwrap();
        assert_eq!(items[1].answers[0].answer_start, 16);
        assert_eq!(items[3].answers[0].answer_start, 56);
        // QAItem validation re-checks the rebased offsets against the context.
        let at_offset = answer_at_offset(&context, &items[3].answers[0]);
        assert_eq!(at_offset, "em 1977");
    }

    fn answer_at_offset<'a>(context: &'a str, answer: &QAAnswer) -> &'a str {
        crate::text::char_slice(
            context,
            answer.answer_start,
            answer.answer_start + crate::text::char_len(&answer.text),
        )
        .unwrap()
    }

    #[test]
    fn duplicate_role_arguments_become_multiple_answers() {
        let text = "Ana e Rui casaram ontem .";
        let trigger = Trigger {
            span: Span::new(text, 10, 17).unwrap(),
            event_type: ontology().event_type("Life.Marry").unwrap(),
        };
        let arguments = vec![
            Argument {
                span: Span::new(text, 0, 3).unwrap(),
                role: "Person".into(),
            },
            Argument {
                span: Span::new(text, 6, 9).unwrap(),
                role: "Person".into(),
            },
        ];
        let mention = EventMention::new("s0", trigger, arguments, ontology()).unwrap();
        let _sentence = crate::corpus::Sentence::new(
            "s0",
            text,
            Token::tokenize(text),
            vec![mention.clone()],
        )
        .unwrap();
        let items =
            generate_qa_items(&mention, 0, text, 0, QuestionTemplateSet::bundled(), ontology())
                .unwrap();
        let person_item = items.iter().find(|i| i.id.contains(":Person:")).unwrap();
        assert_eq!(person_item.answers.len(), 2);
        assert_eq!(items.len(), 3); // Person, Time, Place
    }
}
