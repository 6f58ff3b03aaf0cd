//! Executable certificates and the verification suite.
//!
//! [`run_suite`] runs, for every configured group, the invariant batteries of
//! the other modules against brute-force oracles plus the transitivity
//! certificates, and collects one line per check:
//!
//! ```text
//! CHECK <name> <group> PASS|FAIL|SKIP <detail>
//! ```

mod battery;
mod certificates;
mod config;

use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

pub use certificates::{
    check_bipartition, check_equal_stabilizer_line, check_hyp_ends_obstruction, check_second_trans,
    length2_translation_along, missing_length2_transporters, Bipartition, EqualStabilizerLine, HypEndsCertificate,
    Pair, SecondTrans,
};
pub use config::{GroupSpec, SuiteConfig};

use crate::permgroup::PermError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("F must be transitive")]
    NotTransitive,
    #[error("degree {0} has fewer than three colors")]
    NeedsThreeColors(u8),
    #[error("malformed config: {0}")]
    Config(String),
    #[error("group {name}: {source}")]
    Group { name: String, source: PermError },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub group: String,
    pub status: Status,
    pub detail: String,
}

impl CheckResult {
    pub fn new(name: &str, group: &str, status: Status, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            group: group.to_string(),
            status,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| r.status == Status::Fail)
    }

    pub fn find(&self, name: &str, group: &str) -> Option<&CheckResult> {
        self.results.iter().find(|r| r.name == name && r.group == group)
    }

    /// `CHECK <name> <group> <status> <detail>` lines.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            writeln!(out, "CHECK {} {} {} {}", r.name, r.group, r.status, r.detail).expect("write to string");
        }
        out
    }

    /// Tab-separated twin of [`Report::to_text`] with a header row.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("check\tgroup\tstatus\tdetail\n");
        for r in &self.results {
            let detail = r.detail.replace(['\t', '\n'], " ");
            writeln!(out, "{}\t{}\t{}\t{}", r.name, r.group, r.status, detail).expect("write to string");
        }
        out
    }
}

/// Runs every battery for every configured group. Deterministic for a fixed
/// config; groups that fail to parse are reported as errors.
pub fn run_suite(config: &SuiteConfig) -> Result<Report, HarnessError> {
    let mut report = Report::default();
    for (i, spec) in config.groups.iter().enumerate() {
        let group = spec.build()?;
        let seed = config
            .seed
            .wrapping_add(0x9e37_79b9_7f4a_7c15_u64.wrapping_mul(i as u64 + 1));
        report.results.extend(battery::run_group(spec, &group, config, seed));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_suite_passes() {
        let report = run_suite(&SuiteConfig::from_toml("").unwrap()).unwrap();
        assert!(report.results.is_empty());
        assert!(report.passed());
    }

    #[test]
    fn wrong_expectation_fails() {
        let cfg = SuiteConfig::from_toml(
            "depth = 3\nsamples = 2\n[[groups]]\nname = \"C4\"\ndegree = 4\ngenerators = \"(1 2 3 4)\"\nexpect_orbits = [1, 3, 8]\n",
        )
        .unwrap();
        let report = run_suite(&cfg).unwrap();
        assert!(!report.passed());
        let failed: Vec<&str> = report.failures().map(|r| r.name.as_str()).collect();
        assert_eq!(failed, ["expect.orbits"]);
    }
}
