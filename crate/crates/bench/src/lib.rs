//! Benchmark fixtures drawn from the bundled corpus.

use toricstab_cli::corpus::corpus;
use toricstab_core::StabilityContext;

/// Every corpus entry with its parsed context.
pub fn corpus_contexts() -> Vec<(String, StabilityContext)> {
    corpus()
        .iter()
        .map(|s| {
            (
                s.name.clone(),
                s.context().expect("bundled corpus is valid"),
            )
        })
        .collect()
}
