//! Enumeration budgets.
//!
//! Every exhaustive routine in the crate checks its work estimate against a
//! [`Budget`] and fails with [`Error::BudgetExceeded`] instead of truncating.
//! The process-wide budget is read once from `THETACUT_BUDGET`, which is
//! either a bare number (the candidate-subset budget) or a comma separated
//! list of `key=value` pairs using the field names below.

use std::sync::OnceLock;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    /// Subsets scanned when building representatives.
    pub candidate_subsets: u128,
    /// Largest GF(2) dimension that may be enumerated element by element.
    pub space_rank: u32,
    /// Largest number of elements a minor search may remove.
    pub minor_removals: usize,
    /// Largest graph handled by the exhaustive graph routines.
    pub graph_vertices: usize,
    /// Largest matrix side handed to the SDP solver.
    pub sdp_side: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            candidate_subsets: 5_000_000,
            space_rank: 25,
            minor_removals: 12,
            graph_vertices: 14,
            sdp_side: 400,
        }
    }
}

impl Budget {
    pub fn parse(text: &str) -> Result<Budget> {
        let mut b = Budget::default();
        let text = text.trim();
        if text.is_empty() {
            return Ok(b);
        }
        if let Ok(n) = parse_count(text) {
            b.candidate_subsets = n;
            return Ok(b);
        }
        for part in text.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("budget entry `{part}` is not key=value")))?;
            let n = parse_count(value.trim())?;
            match key.trim() {
                "candidate_subsets" | "subsets" => b.candidate_subsets = n,
                "space_rank" | "rank" => b.space_rank = n as u32,
                "minor_removals" | "minor" => b.minor_removals = n as usize,
                "graph_vertices" | "vertices" => b.graph_vertices = n as usize,
                "sdp_side" | "side" => b.sdp_side = n as usize,
                other => return Err(Error::Parse(format!("unknown budget key `{other}`"))),
            }
        }
        Ok(b)
    }

    pub fn from_env() -> Result<Budget> {
        match std::env::var("THETACUT_BUDGET") {
            Ok(s) => Budget::parse(&s),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn check_space_rank(&self, what: &'static str, rank: usize) -> Result<()> {
        if rank as u32 > self.space_rank {
            return Err(Error::BudgetExceeded {
                what,
                needed: 1u128 << rank.min(127),
                limit: 1u128 << self.space_rank,
            });
        }
        Ok(())
    }
}

fn parse_count(s: &str) -> Result<u128> {
    if let Ok(n) = s.parse::<u128>() {
        return Ok(n);
    }
    match s.parse::<f64>() {
        Ok(x) if x.is_finite() && x >= 0.0 => Ok(x as u128),
        _ => Err(Error::Parse(format!("invalid budget value `{s}`"))),
    }
}

static CURRENT: OnceLock<Budget> = OnceLock::new();

/// The process-wide budget; falls back to defaults when the environment
/// variable is malformed.
pub fn current() -> Budget {
    *CURRENT.get_or_init(|| Budget::from_env().unwrap_or_default())
}

/// Installs a budget before first use. Returns false if one was already set.
pub fn install(b: Budget) -> bool {
    CURRENT.set(b).is_ok()
}
