//! Client interfaces for the external services the alignment cascade relies
//! on: machine translation, bilingual dictionary lookup, word alignment, and
//! lemmatization.
//!
//! The crate deliberately ships no network code. Real deployments implement
//! these traits over whatever service they use; tests and offline pipelines
//! use the deterministic table-driven stubs below or the replay clients in
//! [`super::cache`].

use std::collections::HashMap;

use crate::error::{Error, Result};

/// Sentence- and phrase-level machine translation.
pub trait MtClient: Send + Sync {
    fn translate(&self, text: &str, src_lang: &str, tgt_lang: &str) -> Result<String>;
}

/// Alternative translations of a source-language phrase.
pub trait DictionaryClient: Send + Sync {
    fn lookup_alternatives(&self, text: &str, src_lang: &str, tgt_lang: &str)
        -> Result<Vec<String>>;
}

/// Token-level alignment links between a source and a target sentence.
/// Links are `(source_index, target_index)` pairs.
pub trait WordAligner: Send + Sync {
    fn align(
        &self,
        src_tokens: &[String],
        tgt_tokens: &[String],
        src_lang: &str,
        tgt_lang: &str,
    ) -> Result<Vec<(usize, usize)>>;
}

/// Per-token lemmatization; must return exactly one lemma per input token.
pub trait Lemmatizer: Send + Sync {
    fn lemmatize(&self, tokens: &[String], lang: &str) -> Result<Vec<String>>;
}

/// The four clients the cascade consumes, bundled for convenient passing.
#[derive(Clone, Copy)]
pub struct AlignmentClients<'a> {
    pub mt: &'a dyn MtClient,
    pub dictionary: &'a dyn DictionaryClient,
    pub aligner: &'a dyn WordAligner,
    pub lemmatizer: &'a dyn Lemmatizer,
}

/// Translation stub that returns its input unchanged. Useful when source and
/// target text are already in the same language (e.g. testing the cascade on
/// monolingual data).
#[derive(Debug, Default)]
pub struct IdentityMt;

impl MtClient for IdentityMt {
    fn translate(&self, text: &str, _src: &str, _tgt: &str) -> Result<String> {
        Ok(text.to_owned())
    }
}

/// Table-driven translation stub keyed by `(text, src, tgt)`. Unknown inputs
/// are an error so that fixture recording stays honest.
#[derive(Debug, Default)]
pub struct TableMt {
    entries: HashMap<(String, String, String), String>,
}

impl TableMt {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, text: &str, src: &str, tgt: &str, translation: &str) -> Self {
        self.entries.insert(
            (text.to_owned(), src.to_owned(), tgt.to_owned()),
            translation.to_owned(),
        );
        self
    }
}

impl MtClient for TableMt {
    fn translate(&self, text: &str, src: &str, tgt: &str) -> Result<String> {
        self.entries
            .get(&(text.to_owned(), src.to_owned(), tgt.to_owned()))
            .cloned()
            .ok_or_else(|| Error::backend("translate", format!("no table entry for {text:?}")))
    }
}

/// Dictionary stub with no entries: every lookup yields no alternatives.
#[derive(Debug, Default)]
pub struct EmptyDictionary;

impl DictionaryClient for EmptyDictionary {
    fn lookup_alternatives(&self, _text: &str, _src: &str, _tgt: &str) -> Result<Vec<String>> {
        Ok(Vec::new())
    }
}

/// Table-driven dictionary stub; phrases absent from the table have no
/// alternatives (an empty result, not an error — that is a legitimate
/// dictionary answer).
#[derive(Debug, Default)]
pub struct TableDictionary {
    entries: HashMap<String, Vec<String>>,
}

impl TableDictionary {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, text: &str, alternatives: &[&str]) -> Self {
        self.entries.insert(
            text.to_owned(),
            alternatives.iter().map(|s| (*s).to_owned()).collect(),
        );
        self
    }
}

impl DictionaryClient for TableDictionary {
    fn lookup_alternatives(&self, text: &str, _src: &str, _tgt: &str) -> Result<Vec<String>> {
        Ok(self.entries.get(text).cloned().unwrap_or_default())
    }
}

/// Aligner stub that never links anything.
#[derive(Debug, Default)]
pub struct NullAligner;

impl WordAligner for NullAligner {
    fn align(
        &self,
        _src_tokens: &[String],
        _tgt_tokens: &[String],
        _src: &str,
        _tgt: &str,
    ) -> Result<Vec<(usize, usize)>> {
        Ok(Vec::new())
    }
}

/// Table-driven aligner stub keyed by the exact token sequences. Sentence
/// pairs absent from the table produce no links.
#[derive(Debug, Default)]
pub struct TableAligner {
    entries: HashMap<(String, String), Vec<(usize, usize)>>,
}

fn join_tokens(tokens: &[String]) -> String {
    tokens.join("\u{1}")
}

impl TableAligner {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, src_tokens: &[&str], tgt_tokens: &[&str], links: &[(usize, usize)]) -> Self {
        let src: Vec<String> = src_tokens.iter().map(|s| (*s).to_owned()).collect();
        let tgt: Vec<String> = tgt_tokens.iter().map(|s| (*s).to_owned()).collect();
        self.entries
            .insert((join_tokens(&src), join_tokens(&tgt)), links.to_vec());
        self
    }
}

impl WordAligner for TableAligner {
    fn align(
        &self,
        src_tokens: &[String],
        tgt_tokens: &[String],
        _src: &str,
        _tgt: &str,
    ) -> Result<Vec<(usize, usize)>> {
        Ok(self
            .entries
            .get(&(join_tokens(src_tokens), join_tokens(tgt_tokens)))
            .cloned()
            .unwrap_or_default())
    }
}

/// Lemmatizer stub: tokens found in the table map to their lemma, everything
/// else falls back to simple lowercasing.
#[derive(Debug, Default)]
pub struct TableLemmatizer {
    lemmas: HashMap<String, String>,
}

impl TableLemmatizer {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, token: &str, lemma: &str) -> Self {
        self.lemmas.insert(token.to_owned(), lemma.to_owned());
        self
    }
}

impl Lemmatizer for TableLemmatizer {
    fn lemmatize(&self, tokens: &[String], _lang: &str) -> Result<Vec<String>> {
        Ok(tokens
            .iter()
            .map(|t| {
                self.lemmas
                    .get(t)
                    .cloned()
                    .unwrap_or_else(|| t.to_lowercase())
            })
            .collect())
    }
}

/// Lemmatizer stub that lowercases every token.
#[derive(Debug, Default)]
pub struct LowercaseLemmatizer;

impl Lemmatizer for LowercaseLemmatizer {
    fn lemmatize(&self, tokens: &[String], _lang: &str) -> Result<Vec<String>> {
        Ok(tokens.iter().map(|t| t.to_lowercase()).collect())
    }
}
