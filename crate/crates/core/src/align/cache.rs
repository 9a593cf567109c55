//! File-backed caching and replay for alignment clients.
//!
//! Every client call is addressable by a stable key: the SHA-256 of the JSON
//! array `[operation, text, src, tgt]`. A [`Recording`] wrapper fills a
//! [`FileCache`] from a live client; a [`ReplayClient`] answers exclusively
//! from such a cache and treats misses as transport errors. Recorded caches
//! make pipelines reproducible and network-free.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use serde_json::Value;
use sha2::{Digest, Sha256};

use super::clients::{DictionaryClient, Lemmatizer, MtClient, WordAligner};
use crate::error::{Error, Result};

/// Hex SHA-256 of raw bytes.
pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

/// The cache key for one client call.
pub fn cache_key(operation: &str, text: &str, src: &str, tgt: &str) -> String {
    let encoded = serde_json::to_string(&[operation, text, src, tgt])
        .expect("string array serializes");
    sha256_hex(encoded.as_bytes())
}

/// A JSON-file key/value store with deterministic on-disk layout (sorted
/// keys, pretty-printed). Safe to share across threads.
#[derive(Debug)]
pub struct FileCache {
    path: PathBuf,
    entries: Mutex<BTreeMap<String, Value>>,
}

impl FileCache {
    /// Opens a cache file, starting empty when the file does not exist.
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        let path = path.into();
        let entries = if path.exists() {
            let contents =
                std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
            serde_json::from_str(&contents)
                .map_err(|e| Error::json(format!("cache file {}", path.display()), e))?
        } else {
            BTreeMap::new()
        };
        Ok(FileCache {
            path,
            entries: Mutex::new(entries),
        })
    }

    pub fn get(&self, key: &str) -> Option<Value> {
        self.entries.lock().expect("cache lock").get(key).cloned()
    }

    pub fn put(&self, key: String, value: Value) {
        self.entries.lock().expect("cache lock").insert(key, value);
    }

    pub fn len(&self) -> usize {
        self.entries.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Writes the cache back to its file (sorted keys, two-space indent,
    /// trailing newline).
    pub fn flush(&self) -> Result<()> {
        let entries = self.entries.lock().expect("cache lock");
        let mut json =
            serde_json::to_string_pretty(&*entries).expect("cache serializes");
        json.push('\n');
        if let Some(parent) = self.path.parent() {
            if !parent.as_os_str().is_empty() {
                std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
            }
        }
        std::fs::write(&self.path, json).map_err(|e| Error::io(&self.path, e))
    }
}

fn aligner_text_key(src_tokens: &[String], tgt_tokens: &[String]) -> String {
    serde_json::to_string(&(src_tokens, tgt_tokens)).expect("token lists serialize")
}

fn lemmatizer_text_key(tokens: &[String]) -> String {
    serde_json::to_string(tokens).expect("token list serializes")
}

fn decode<T: serde::de::DeserializeOwned>(operation: &str, value: Value) -> Result<T> {
    serde_json::from_value(value)
        .map_err(|e| Error::json(format!("cached {operation} result"), e))
}

/// Wraps a live client, answering from the cache when possible and recording
/// fresh results otherwise. Implements all four client traits (each consults
/// its own operation-scoped keys), so one instance can wrap any client kind.
pub struct Recording<C> {
    inner: C,
    cache: FileCache,
}

impl<C> Recording<C> {
    pub fn new(inner: C, cache_path: impl Into<PathBuf>) -> Result<Self> {
        Ok(Recording {
            inner,
            cache: FileCache::open(cache_path)?,
        })
    }

    pub fn cache(&self) -> &FileCache {
        &self.cache
    }

    /// Persists everything recorded so far.
    pub fn flush(&self) -> Result<()> {
        self.cache.flush()
    }
}

impl<C: MtClient> MtClient for Recording<C> {
    fn translate(&self, text: &str, src: &str, tgt: &str) -> Result<String> {
        let key = cache_key("translate", text, src, tgt);
        if let Some(value) = self.cache.get(&key) {
            return decode("translate", value);
        }
        let result = self.inner.translate(text, src, tgt)?;
        self.cache.put(key, Value::String(result.clone()));
        Ok(result)
    }
}

impl<C: DictionaryClient> DictionaryClient for Recording<C> {
    fn lookup_alternatives(&self, text: &str, src: &str, tgt: &str) -> Result<Vec<String>> {
        let key = cache_key("lookup_alternatives", text, src, tgt);
        if let Some(value) = self.cache.get(&key) {
            return decode("lookup_alternatives", value);
        }
        let result = self.inner.lookup_alternatives(text, src, tgt)?;
        self.cache
            .put(key, serde_json::to_value(&result).expect("strings serialize"));
        Ok(result)
    }
}

impl<C: WordAligner> WordAligner for Recording<C> {
    fn align(
        &self,
        src_tokens: &[String],
        tgt_tokens: &[String],
        src: &str,
        tgt: &str,
    ) -> Result<Vec<(usize, usize)>> {
        let key = cache_key("align", &aligner_text_key(src_tokens, tgt_tokens), src, tgt);
        if let Some(value) = self.cache.get(&key) {
            return decode("align", value);
        }
        let result = self.inner.align(src_tokens, tgt_tokens, src, tgt)?;
        self.cache
            .put(key, serde_json::to_value(&result).expect("links serialize"));
        Ok(result)
    }
}

impl<C: Lemmatizer> Lemmatizer for Recording<C> {
    fn lemmatize(&self, tokens: &[String], lang: &str) -> Result<Vec<String>> {
        let key = cache_key("lemmatize", &lemmatizer_text_key(tokens), lang, "");
        if let Some(value) = self.cache.get(&key) {
            return decode("lemmatize", value);
        }
        let result = self.inner.lemmatize(tokens, lang)?;
        self.cache
            .put(key, serde_json::to_value(&result).expect("strings serialize"));
        Ok(result)
    }
}

/// A client that answers only from a recorded cache. A miss is a transport
/// error: the cache was recorded without that call, so the pipeline that
/// needs it cannot run offline.
pub struct ReplayClient {
    cache: FileCache,
}

impl ReplayClient {
    pub fn open(path: impl Into<PathBuf>) -> Result<Self> {
        Ok(ReplayClient {
            cache: FileCache::open(path)?,
        })
    }

    fn fetch<T: serde::de::DeserializeOwned>(
        &self,
        operation: &str,
        text: &str,
        src: &str,
        tgt: &str,
    ) -> Result<T> {
        let key = cache_key(operation, text, src, tgt);
        match self.cache.get(&key) {
            Some(value) => decode(operation, value),
            None => Err(Error::backend(
                operation,
                format!(
                    "cache {} has no recorded result for input {:?} ({src}->{tgt})",
                    self.cache.path().display(),
                    text
                ),
            )),
        }
    }
}

impl MtClient for ReplayClient {
    fn translate(&self, text: &str, src: &str, tgt: &str) -> Result<String> {
        self.fetch("translate", text, src, tgt)
    }
}

impl DictionaryClient for ReplayClient {
    fn lookup_alternatives(&self, text: &str, src: &str, tgt: &str) -> Result<Vec<String>> {
        self.fetch("lookup_alternatives", text, src, tgt)
    }
}

impl WordAligner for ReplayClient {
    fn align(
        &self,
        src_tokens: &[String],
        tgt_tokens: &[String],
        src: &str,
        tgt: &str,
    ) -> Result<Vec<(usize, usize)>> {
        self.fetch("align", &aligner_text_key(src_tokens, tgt_tokens), src, tgt)
    }
}

impl Lemmatizer for ReplayClient {
    fn lemmatize(&self, tokens: &[String], lang: &str) -> Result<Vec<String>> {
        self.fetch("lemmatize", &lemmatizer_text_key(tokens), lang, "")
    }
}
