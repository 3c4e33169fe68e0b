//! Versioned JSON report envelope shared by every workbench command.
//!
//! Reports must replay byte-identically for identical configurations, so
//! every map in here is ordered and wall-clock timings stay out of the
//! envelope unless explicitly requested.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use crate::checks::SuiteReport;
use crate::tower::ScheduleReport;

pub const SCHEMA: &str = "nilfree/1";

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub config_echo: Value,
    pub lemma_results: Option<Vec<SuiteReport>>,
    pub construction: Option<ConstructionSection>,
    pub tower: Option<TowerSection>,
    pub vanishing: Option<VanishingSection>,
    pub certificates: Vec<CertificateEntry>,
    pub ranks: Option<Vec<RankEntry>>,
    pub timings: Option<BTreeMap<String, u64>>,
}

impl Report {
    pub fn new(config_echo: Value) -> Report {
        Report {
            schema: SCHEMA,
            config_echo,
            lemma_results: None,
            construction: None,
            tower: None,
            vanishing: None,
            certificates: Vec::new(),
            ranks: None,
            timings: None,
        }
    }

    /// Pretty JSON with a trailing newline; the byte-identical surface.
    pub fn to_json_bytes(&self) -> Vec<u8> {
        let mut out = serde_json::to_vec_pretty(self).expect("report serializes");
        out.push(b'\n');
        out
    }
}

/// What the ideal-building stage did: which enumerated elements fit under
/// the truncation, and the resulting slice ranks.
#[derive(Debug, Clone, Serialize)]
pub struct ConstructionSection {
    pub elements: Vec<Value>,
    /// `[degree, rank]` of the ideal slice at every degree up to the bound.
    pub slice_ranks: Vec<[usize; 2]>,
    pub notes: Vec<String>,
}

/// Tower construction summary.
#[derive(Debug, Clone, Serialize)]
pub struct TowerSection {
    pub schedule: Vec<String>,
    pub validation: ScheduleReport,
    pub built: bool,
    /// Per-level sizes of the distinguished sets, when built.
    pub f_sizes: Vec<usize>,
    /// Ideal-slice coverage ratios per level from the cover search, when one
    /// ran: (level, covered, total).
    pub coverage: Vec<(usize, usize, usize)>,
    pub notes: Vec<String>,
}

/// Vanishing sweep outcome for one level transition.
#[derive(Debug, Clone, Serialize)]
pub struct VanishingLevel {
    pub level: usize,
    pub slice_degree: usize,
    pub slice_rank: usize,
    pub vectors_checked: usize,
    pub all_zero: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VanishingSection {
    pub levels: Vec<VanishingLevel>,
    pub all_zero: bool,
}

/// One freeness certificate entry: the collapsed word, the witnessing
/// exponent vector (when found) and the verdict.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CertificateEntry {
    pub word: String,
    pub n: Option<[u32; 6]>,
    pub ok: bool,
    /// Verdict of the map-route search at the matching tower level, when a
    /// tower was supplied and has a level of this degree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tower: Option<TowerRouteEntry>,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct TowerRouteEntry {
    pub level: usize,
    pub n: Option<[u32; 6]>,
    pub status: String,
}

/// Rank-oracle outcome at one degree.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct RankEntry {
    pub degree: usize,
    pub rank: usize,
    pub expected: usize,
    pub free: bool,
    /// Whether the rank verdict matches the certificate verdict at this
    /// degree.
    pub agrees_with_certificates: bool,
}
