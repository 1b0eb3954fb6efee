//! Grouping of verification records into per-theorem summaries.

use std::collections::BTreeMap;

use qspec_core::verify::VerificationRecord;
use serde::Serialize;

/// Aggregate of all instances of one theorem.
#[derive(Debug, Clone, Serialize)]
pub struct TheoremSummary {
    pub theorem: String,
    pub instances: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Serialize)]
pub struct VerifyOut {
    pub records: Vec<VerificationRecord>,
    pub summary: Vec<TheoremSummary>,
}

/// Groups records by theorem id (sorted), reporting the worst residual.
pub fn summarize(records: &[VerificationRecord]) -> Vec<TheoremSummary> {
    let mut groups: BTreeMap<&str, Vec<&VerificationRecord>> = BTreeMap::new();
    for r in records {
        groups.entry(&r.theorem_id).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|(theorem, rs)| TheoremSummary {
            theorem: theorem.to_string(),
            instances: rs.len(),
            max_residual: rs.iter().map(|r| r.residual).fold(0.0, f64::max),
            tolerance: rs.iter().map(|r| r.tolerance).fold(f64::INFINITY, f64::min),
            pass: rs.iter().all(|r| r.pass),
        })
        .collect()
}

/// One line per theorem on stderr; failing groups are flagged.
pub fn print_human(summary: &[TheoremSummary]) {
    for s in summary {
        let flag = if s.pass { "ok  " } else { "FAIL" };
        eprintln!(
            "{flag} {:<22} instances {:>3}   max residual {:>11.3e}   tolerance {:>8.1e}",
            s.theorem, s.instances, s.max_residual, s.tolerance
        );
    }
    let failing = summary.iter().filter(|s| !s.pass).count();
    if failing > 0 {
        eprintln!("{failing} theorem group(s) failing");
    }
}
