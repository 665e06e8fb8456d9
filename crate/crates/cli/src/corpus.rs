//! Bundled named inputs shared by the tests, the acceptance suite and the
//! benches.

use std::sync::OnceLock;

use crate::input::InputSpec;

const CORPUS_JSON: &str = include_str!("../corpus/corpus.json");

pub fn corpus() -> &'static [InputSpec] {
    static CORPUS: OnceLock<Vec<InputSpec>> = OnceLock::new();
    CORPUS.get_or_init(|| serde_json::from_str(CORPUS_JSON).expect("bundled corpus parses"))
}

pub fn find(name: &str) -> Option<&'static InputSpec> {
    corpus().iter().find(|s| s.name == name)
}
