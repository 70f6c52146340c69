//! Minimum-cardinality representatives of the classes `F ~ F'` iff `F Δ F'` is a cocycle.

use std::collections::HashMap;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::budget;
use crate::error::{Error, Result};
use crate::gf2::Subset;
use crate::matroid::{BinaryMatroid, Graph};

#[derive(Clone, Debug)]
pub struct RepresentativeBasis {
    k: usize,
    matroid: BinaryMatroid,
    /// Representatives of every class with a member of size at most `2k`,
    /// in scan order; the first `len_k` of them have size at most `k`.
    reps: Vec<Subset>,
    len_k: usize,
    class_index: HashMap<Subset, usize>,
}

/// `Σ_{i ≤ s} C(m, i)`, saturating.
pub fn subsets_up_to(m: usize, s: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for i in 0..=s.min(m) {
        total = total.saturating_add(binom);
        binom = binom.saturating_mul((m - i) as u128) / (i as u128 + 1);
    }
    total
}

impl RepresentativeBasis {
    /// Scans subsets by size, then lexicographically, keeping each subset
    /// whose class has not been seen, up to size `2k`.
    pub fn build(matroid: &BinaryMatroid, k: usize) -> Result<RepresentativeBasis> {
        let m = matroid.m();
        let max_size = (2 * k).min(m);
        let needed = subsets_up_to(m, max_size);
        let limit = budget::current().candidate_subsets;
        if needed > limit {
            return Err(Error::BudgetExceeded {
                what: "representative scan",
                needed,
                limit,
            });
        }
        let total = class_total(matroid);
        let cocycles = matroid.cocycle_basis();
        let mut reps = Vec::new();
        let mut class_index = HashMap::new();
        'scan: for size in 0..=max_size {
            for combo in (0..m).combinations(size) {
                if reps.len() as u128 == total {
                    break 'scan;
                }
                let f = Subset::from_elements(combo);
                let key = cocycles.canonical_form(f);
                if let std::collections::hash_map::Entry::Vacant(slot) = class_index.entry(key) {
                    slot.insert(reps.len());
                    reps.push(f);
                }
            }
        }
        let len_k = reps.iter().take_while(|r| r.len() <= k).count();
        Ok(RepresentativeBasis {
            k,
            matroid: matroid.clone(),
            reps,
            len_k,
            class_index,
        })
    }

    /// A representative for every class: the scan runs until `2^m / |C*|` classes are found.
    pub fn all_classes(matroid: &BinaryMatroid) -> Result<RepresentativeBasis> {
        RepresentativeBasis::build(matroid, matroid.m().div_ceil(2))
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn matroid(&self) -> &BinaryMatroid {
        &self.matroid
    }

    /// `F_k`.
    pub fn reps_k(&self) -> &[Subset] {
        &self.reps[..self.len_k]
    }

    /// `F_2k`.
    pub fn reps_2k(&self) -> &[Subset] {
        &self.reps
    }

    pub fn empty_index(&self) -> usize {
        0
    }

    /// `2^m / |C*|`, the number of classes overall.
    pub fn total_classes(&self) -> u128 {
        class_total(&self.matroid)
    }

    pub fn class_of(&self, f: Subset) -> Result<usize> {
        let key = self.matroid.cocycle_basis().canonical_form(f);
        self.class_index
            .get(&key)
            .copied()
            .ok_or(Error::ClassNotFound(f.bits()))
    }

    /// `entry(i, j)` = class of `reps_k[i] Δ reps_k[j]`.
    pub fn multiplication_table(&self) -> Vec<Vec<usize>> {
        let reps = self.reps_k();
        reps.iter()
            .map(|&a| {
                reps.iter()
                    .map(|&b| self.class_of(a ^ b).expect("sizes at most 2k"))
                    .collect()
            })
            .collect()
    }

    pub fn summary(&self) -> BasisSummary {
        let rows = |reps: &[Subset]| reps.iter().map(|r| r.to_vec()).collect();
        BasisSummary {
            k: self.k,
            m: self.matroid.m(),
            total_classes: self.total_classes(),
            reps_k: rows(self.reps_k()),
            reps_2k: rows(self.reps_2k()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisSummary {
    pub k: usize,
    pub m: usize,
    pub total_classes: u128,
    pub reps_k: Vec<Vec<usize>>,
    pub reps_2k: Vec<Vec<usize>>,
}

fn class_total(matroid: &BinaryMatroid) -> u128 {
    1u128 << matroid.cycle_rank()
}

/// Vertices of odd degree in the edge set `f`.
pub fn tjoin_label(g: &Graph, f: Subset) -> Subset {
    g.odd_vertices(f)
}
