//! Python bindings for the evex event-extraction pipeline.
//!
//! The module mirrors the high-value pieces of the Rust API: string
//! similarity, the event ontology and its question templates, corpus loading
//! with statistics and training-data generation, and an end-to-end oracle
//! extraction + scoring round trip. Structured results cross the boundary as
//! JSON strings so the Python side can `json.loads` them without any
//! conversion-layer dependencies.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use evex::arguments::{qa_items_for_corpus, AlwaysImpossibleQa, QaBackend, QaConfig, TableQaBackend};
use evex::cli::run_extraction;
use evex::corpus::{corpus_stats, Corpus as CoreCorpus};
use evex::formats::conll::corpus_to_conll;
use evex::formats::predictions::{predictions_from_json, predictions_to_json};
use evex::formats::read_corpus_auto;
use evex::formats::squad::qa_items_to_squad_json;
use evex::iob::LabelInventory;
use evex::ontology::EventOntology;
use evex::scorer::evaluate;
use evex::templates::QuestionTemplateSet;
use evex::trigger::TableTriggerBackend;

fn value_error(error: evex::error::Error) -> PyErr {
    PyValueError::new_err(error.to_string())
}

/// Unit edit distance between two strings, counted in characters.
#[pyfunction]
fn levenshtein(a: &str, b: &str) -> usize {
    evex::similarity::levenshtein(a, b)
}

/// Gestalt (Ratcliff-Obershelp) similarity in [0, 1].
#[pyfunction]
fn gestalt_ratio(a: &str, b: &str) -> f64 {
    evex::similarity::gestalt_ratio(a, b)
}

/// All event type labels, dot-separated (`Type.Subtype`).
#[pyfunction]
fn event_types() -> Vec<String> {
    let mut labels: Vec<String> = EventOntology::bundled()
        .labels()
        .map(str::to_owned)
        .collect();
    labels.sort();
    labels
}

/// Legal argument roles of an event type, in canonical question order.
#[pyfunction]
fn roles(event_type: &str) -> PyResult<Vec<String>> {
    EventOntology::bundled()
        .role_set(event_type)
        .map(<[String]>::to_vec)
        .ok_or_else(|| PyValueError::new_err(format!("unknown event type {event_type:?}")))
}

/// The question template for an (event type, role) pair.
#[pyfunction]
fn question(event_type: &str, role: &str) -> PyResult<String> {
    QuestionTemplateSet::bundled()
        .question_for(event_type, role)
        .map(str::to_owned)
        .map_err(value_error)
}

/// Appends the trigger mention to a question template.
#[pyfunction]
fn contextualize(question: &str, trigger: &str) -> String {
    evex::templates::contextualize(question, trigger)
}

/// A loaded, validated corpus.
#[pyclass]
struct Corpus {
    inner: CoreCorpus,
}

/// Loads corpus JSON in either supported layout: annotated-sentence records
/// with word-index spans, or canonical corpus JSON. `language` and `split`
/// only apply to the former; canonical files carry their own tags.
#[pyfunction]
#[pyo3(signature = (path, language = "pt", split = "test"))]
fn load_corpus(path: &str, language: &str, split: &str) -> PyResult<Corpus> {
    let inner = read_corpus_auto(
        std::path::Path::new(path),
        EventOntology::bundled(),
        language,
        split,
    )
    .map_err(value_error)?;
    Ok(Corpus { inner })
}

#[pymethods]
impl Corpus {
    #[getter]
    fn language(&self) -> &str {
        self.inner.language()
    }

    #[getter]
    fn split(&self) -> &str {
        self.inner.split()
    }

    fn __len__(&self) -> usize {
        self.inner.sentences().len()
    }

    fn sentence_texts(&self) -> Vec<String> {
        self.inner
            .sentences()
            .iter()
            .map(|s| s.text().to_owned())
            .collect()
    }

    /// Aggregate counts as a JSON object string.
    fn stats_json(&self) -> PyResult<String> {
        serde_json::to_string_pretty(&corpus_stats(&self.inner))
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    /// IOB2 token/tag lines for trigger-tagger training.
    fn to_conll(&self) -> PyResult<String> {
        corpus_to_conll(&self.inner).map_err(value_error)
    }

    /// SQuAD-v2 JSON for argument-extractor training, with `k` neighboring
    /// sentences on each side as context.
    #[pyo3(signature = (k = 0))]
    fn to_squad_json(&self, k: usize) -> PyResult<String> {
        let items = qa_items_for_corpus(
            &self.inner,
            k,
            QuestionTemplateSet::bundled(),
            EventOntology::bundled(),
        )
        .map_err(value_error)?;
        Ok(qa_items_to_squad_json(&items))
    }

    /// Runs the full extraction pipeline with gold-lookup oracle backends and
    /// returns the prediction JSON. Useful for exercising the machinery and
    /// for producing fixture predictions.
    #[pyo3(signature = (k = 0))]
    fn extract_oracle_json(&self, k: usize) -> PyResult<String> {
        let ontology = EventOntology::bundled();
        let templates = QuestionTemplateSet::bundled();
        let inventory = LabelInventory::new(ontology);
        let trigger_backend =
            TableTriggerBackend::from_corpus(&self.inner, &inventory).map_err(value_error)?;
        let items =
            qa_items_for_corpus(&self.inner, k, templates, ontology).map_err(value_error)?;
        let qa_backend = TableQaBackend::from_qa_items(&items);
        let config = QaConfig {
            context_window: k,
            ..QaConfig::default()
        };
        let predictions = run_extraction(
            &self.inner,
            &trigger_backend,
            &qa_backend,
            templates,
            ontology,
            &inventory,
            &config,
            1,
        )
        .map_err(value_error)?;
        Ok(predictions_to_json(&predictions))
    }

    /// Extraction with a backend that answers nothing: gold triggers, no
    /// arguments. The degenerate baseline for threshold experiments.
    fn extract_unanswerable_json(&self) -> PyResult<String> {
        let ontology = EventOntology::bundled();
        let inventory = LabelInventory::new(ontology);
        let trigger_backend =
            TableTriggerBackend::from_corpus(&self.inner, &inventory).map_err(value_error)?;
        let qa_backend: &dyn QaBackend = &AlwaysImpossibleQa;
        let predictions = run_extraction(
            &self.inner,
            &trigger_backend,
            qa_backend,
            QuestionTemplateSet::bundled(),
            ontology,
            &inventory,
            &QaConfig::default(),
            1,
        )
        .map_err(value_error)?;
        Ok(predictions_to_json(&predictions))
    }

    /// Scores a prediction JSON string against this corpus as gold; returns
    /// the evaluation report as a JSON object string.
    fn score_json(&self, predictions_json: &str) -> PyResult<String> {
        let predictions = predictions_from_json(predictions_json).map_err(value_error)?;
        let report = evaluate(&predictions, &self.inner).map_err(value_error)?;
        serde_json::to_string_pretty(&report).map_err(|e| PyValueError::new_err(e.to_string()))
    }
}

#[pymodule]
fn evex_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_function(wrap_pyfunction!(levenshtein, m)?)?;
    m.add_function(wrap_pyfunction!(gestalt_ratio, m)?)?;
    m.add_function(wrap_pyfunction!(event_types, m)?)?;
    m.add_function(wrap_pyfunction!(roles, m)?)?;
    m.add_function(wrap_pyfunction!(question, m)?)?;
    m.add_function(wrap_pyfunction!(contextualize, m)?)?;
    m.add_function(wrap_pyfunction!(load_corpus, m)?)?;
    m.add_class::<Corpus>()?;
    Ok(())
}
