//! CoNLL-style token/tag files for trigger tagging.
//!
//! One token per line as `token<TAB>tag`, sentences separated by a single
//! blank line, and a trailing newline after the last line. An empty corpus
//! produces an empty file. This is the training-data format for sequence
//! labelling; reading it back yields token/tag sequences, not full sentences
//! (character offsets are not representable here).

use std::path::Path;

use crate::corpus::Corpus;
use crate::error::{Error, Result};
use crate::iob::{iob_encode, IobLabel};
use crate::ontology::EventOntology;

/// A token/tag sequence read back from a CoNLL file.
#[derive(Debug, Clone, PartialEq)]
pub struct ConllSentence {
    pub tokens: Vec<String>,
    pub labels: Vec<IobLabel>,
}

/// Renders the corpus as CoNLL token/tag text. Sentences are encoded with
/// [`iob_encode`], so every trigger must sit on token boundaries.
pub fn corpus_to_conll(corpus: &Corpus) -> Result<String> {
    let mut out = String::new();
    let mut first = true;
    for sentence in corpus.sentences() {
        let labels = iob_encode(sentence)?;
        if sentence.tokens().is_empty() {
            continue;
        }
        if !first {
            out.push('\n');
        }
        first = false;
        for (token, label) in sentence.tokens().iter().zip(&labels) {
            out.push_str(&token.text);
            out.push('\t');
            out.push_str(&label.to_string());
            out.push('\n');
        }
    }
    Ok(out)
}

/// Writes the CoNLL rendering of `corpus` to `path`.
pub fn write_conll_iob(corpus: &Corpus, path: &Path) -> Result<()> {
    super::write_file(path, &corpus_to_conll(corpus)?)
}

/// Parses CoNLL token/tag text, validating tags against the ontology.
pub fn conll_from_str(contents: &str, ontology: &EventOntology) -> Result<Vec<ConllSentence>> {
    let mut sentences = Vec::new();
    let mut tokens = Vec::new();
    let mut labels = Vec::new();
    for (line_number, line) in contents.lines().enumerate() {
        if line.is_empty() {
            if !tokens.is_empty() {
                sentences.push(ConllSentence {
                    tokens: std::mem::take(&mut tokens),
                    labels: std::mem::take(&mut labels),
                });
            }
            continue;
        }
        let (token, tag) = line.split_once('\t').ok_or_else(|| {
            Error::format(
                "CoNLL line",
                format!("line {}: expected token<TAB>tag, got {line:?}", line_number + 1),
            )
        })?;
        if token.is_empty() {
            return Err(Error::format(
                "CoNLL line",
                format!("line {}: empty token", line_number + 1),
            ));
        }
        tokens.push(token.to_owned());
        labels.push(IobLabel::parse(tag, ontology)?);
    }
    if !tokens.is_empty() {
        sentences.push(ConllSentence { tokens, labels });
    }
    Ok(sentences)
}

/// Reads a CoNLL token/tag file.
pub fn read_conll_iob(path: &Path, ontology: &EventOntology) -> Result<Vec<ConllSentence>> {
    conll_from_str(&super::read_file(path)?, ontology)
}
