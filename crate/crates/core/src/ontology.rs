//! The event-type ontology: 33 event subtypes grouped under 8 top-level
//! types, each with an ordered set of legal argument roles.
//!
//! The bundled table follows the ACE-2005 annotation guidelines. Role order
//! is significant: question generation iterates roles in this order, so it is
//! part of the crate's observable behaviour.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A validated event type label of the form `Type.Subtype` (for example
/// `Life.Die`). Instances can only be obtained through an [`EventOntology`],
/// so holding one is proof the label exists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EventType {
    label: String,
}

impl EventType {
    /// The full `Type.Subtype` label.
    pub fn label(&self) -> &str {
        &self.label
    }

    /// The top-level type (the part before the dot).
    pub fn type_name(&self) -> &str {
        self.label.split_once('.').expect("validated label").0
    }

    /// The subtype (the part after the dot).
    pub fn subtype(&self) -> &str {
        self.label.split_once('.').expect("validated label").1
    }
}

impl fmt::Display for EventType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

impl Serialize for EventType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.label)
    }
}

/// The table of event subtypes and their legal argument roles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventOntology {
    roles: BTreeMap<String, Vec<String>>,
}

impl EventOntology {
    /// The ontology bundled with the crate (8 types, 33 subtypes).
    pub fn bundled() -> &'static EventOntology {
        static BUNDLED: OnceLock<EventOntology> = OnceLock::new();
        BUNDLED.get_or_init(|| {
            EventOntology::from_json_str(include_str!("../data/ontology.json"))
                .expect("bundled ontology is valid")
        })
    }

    /// Parses an ontology from a JSON object mapping `Type.Subtype` labels to
    /// role arrays.
    pub fn from_json_str(json: &str) -> Result<Self> {
        let raw: BTreeMap<String, Vec<String>> = serde_json::from_str(json)
            .map_err(|e| Error::json("event ontology", e))?;
        for (label, roles) in &raw {
            let well_formed = matches!(
                label.split('.').collect::<Vec<_>>().as_slice(),
                [t, s] if !t.is_empty() && !s.is_empty()
            );
            if !well_formed {
                return Err(Error::format(
                    "event ontology",
                    format!("label {label:?} is not of the form Type.Subtype"),
                ));
            }
            if roles.is_empty() {
                return Err(Error::format(
                    "event ontology",
                    format!("label {label:?} has no roles"),
                ));
            }
            let mut seen = std::collections::HashSet::new();
            for role in roles {
                if role.is_empty() || !seen.insert(role) {
                    return Err(Error::format(
                        "event ontology",
                        format!("label {label:?} has an empty or duplicate role"),
                    ));
                }
            }
        }
        Ok(EventOntology { roles: raw })
    }

    /// All labels, in lexicographic order.
    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.roles.keys().map(String::as_str)
    }

    /// Number of subtypes.
    pub fn len(&self) -> usize {
        self.roles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roles.is_empty()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.roles.contains_key(label)
    }

    /// Validates `label` and wraps it as an [`EventType`].
    pub fn event_type(&self, label: &str) -> Result<EventType> {
        if self.contains(label) {
            Ok(EventType {
                label: label.to_owned(),
            })
        } else {
            Err(Error::UnknownEventType(label.to_owned()))
        }
    }

    /// The ordered legal roles for `label`, or `None` if unknown.
    pub fn role_set(&self, label: &str) -> Option<&[String]> {
        self.roles.get(label).map(Vec::as_slice)
    }

    /// The distinct top-level type names, in lexicographic order.
    pub fn type_names(&self) -> Vec<&str> {
        let mut names: Vec<&str> = self
            .roles
            .keys()
            .filter_map(|l| l.split_once('.').map(|(t, _)| t))
            .collect();
        names.dedup();
        names
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_ontology_has_33_subtypes_under_8_types() {
        let ontology = EventOntology::bundled();
        assert_eq!(ontology.len(), 33);
        assert_eq!(
            ontology.type_names(),
            vec![
                "Business",
                "Conflict",
                "Contact",
                "Justice",
                "Life",
                "Movement",
                "Personnel",
                "Transaction"
            ]
        );
    }

    #[test]
    fn life_die_roles_are_ordered() {
        let ontology = EventOntology::bundled();
        assert_eq!(
            ontology.role_set("Life.Die").unwrap(),
            ["Agent", "Victim", "Instrument", "Time", "Place"]
        );
    }

    #[test]
    fn phone_write_has_no_place_role() {
        let ontology = EventOntology::bundled();
        let roles = ontology.role_set("Contact.Phone-Write").unwrap();
        assert!(!roles.contains(&"Place".to_owned()));
        assert_eq!(roles, ["Entity", "Time"]);
    }

    #[test]
    fn unknown_label_is_rejected() {
        let ontology = EventOntology::bundled();
        assert!(matches!(
            ontology.event_type("Life.Fly"),
            Err(Error::UnknownEventType(_))
        ));
    }

    #[test]
    fn event_type_splits_into_type_and_subtype() {
        let event_type = EventOntology::bundled().event_type("Justice.Arrest-Jail").unwrap();
        assert_eq!(event_type.type_name(), "Justice");
        assert_eq!(event_type.subtype(), "Arrest-Jail");
        assert_eq!(event_type.to_string(), "Justice.Arrest-Jail");
    }

    #[test]
    fn malformed_labels_are_rejected_at_load() {
        assert!(EventOntology::from_json_str(r#"{"LifeDie": ["Agent"]}"#).is_err());
        assert!(EventOntology::from_json_str(r#"{"Life.Die": []}"#).is_err());
        assert!(EventOntology::from_json_str(r#"{"Life.Die": ["Agent", "Agent"]}"#).is_err());
        assert!(EventOntology::from_json_str(r#"{"Life.Die.Hard": ["Agent"]}"#).is_err());
    }

    #[test]
    fn every_subtype_has_time_role() {
        let ontology = EventOntology::bundled();
        for label in ontology.labels() {
            let roles = ontology.role_set(label).unwrap();
            assert!(
                roles.contains(&"Time".to_owned()),
                "{label} is missing the Time role"
            );
        }
    }
}
