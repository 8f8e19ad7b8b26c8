//! Corpus verification: every group is analysed independently, in parallel,
//! and results are reported in corpus order.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use pglab_core::analysis::{AnalysisError, AnalysisOptions, GroupAnalysis};
use pglab_core::genotype::GenoError;

use crate::spec::GroupSpec;

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub spec: String,
    pub order: u64,
    pub passed: bool,
    /// Failure kind and message.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    pub galois_classes: usize,
    #[serde(skip)]
    pub seconds: f64,
}

/// Short name for the failure kind.
pub fn failure_kind(e: &AnalysisError) -> &'static str {
    match e {
        AnalysisError::Geno(GenoError::DualPathMismatch { .. }) => "DualPathMismatch",
        AnalysisError::Geno(GenoError::NonUniqueGenotype(_)) => "NonUniqueGenotype",
        AnalysisError::Geno(_) => "GeneticReductionError",
        AnalysisError::Rat(_) => "ClassificationInconsistency",
        AnalysisError::Char(_) => "CharacterTableError",
        AnalysisError::Burn(_) => "CountMismatch",
    }
}

pub fn verify_one(spec: &GroupSpec, opts: &AnalysisOptions) -> Outcome {
    let start = Instant::now();
    let result = spec
        .build()
        .map_err(|e| format!("GroupError: {e}"))
        .and_then(|g| GroupAnalysis::run(&g, opts).map_err(|e| format!("{}: {e}", failure_kind(&e))));
    let (failure, classes) = match result {
        Ok(a) => match a.counts.failure() {
            Some(e) => (Some(format!("CountMismatch: {e}")), a.classes.len()),
            None => (None, a.classes.len()),
        },
        Err(msg) => (Some(msg), 0),
    };
    Outcome {
        spec: spec.to_string(),
        order: spec.order(),
        passed: failure.is_none(),
        failure,
        galois_classes: classes,
        seconds: start.elapsed().as_secs_f64(),
    }
}

pub fn verify_corpus(specs: &[GroupSpec], opts: &AnalysisOptions) -> Vec<Outcome> {
    specs.par_iter().map(|s| verify_one(s, opts)).collect()
}

pub fn summary_line(outcomes: &[Outcome]) -> String {
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    let status = if failed == 0 { "PASS" } else { "FAIL" };
    format!("{status}: {} groups verified, {} failed", outcomes.len(), failed)
}
