//! Exactness classifiers, brute-force oracles and the inequalities they rest on.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::budget;
use crate::error::{Error, Result};
use crate::gf2::Subset;
use crate::matroid::{zoo, BinaryMatroid, Graph, MinorWitness};
use crate::sdp::{maxcut_bound, theta_bound, Sense, SolverSettings};

/// `constant + Σ_e coefficients[e] x_e`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinearForm {
    pub coefficients: Vec<f64>,
    pub constant: f64,
}

impl LinearForm {
    pub fn new(coefficients: Vec<f64>, constant: f64) -> Result<LinearForm> {
        if coefficients.iter().any(|c| !c.is_finite()) || !constant.is_finite() {
            return Err(Error::InvalidProblem("linear form entries must be finite".into()));
        }
        Ok(LinearForm {
            coefficients,
            constant,
        })
    }

    pub fn zero(m: usize) -> LinearForm {
        LinearForm {
            coefficients: vec![0.0; m],
            constant: 0.0,
        }
    }

    /// Value at the `±1` incidence vector of `c` (`x_e = -1` iff `e ∈ c`).
    pub fn at_cycle(&self, c: Subset) -> f64 {
        self.constant
            + self
                .coefficients
                .iter()
                .enumerate()
                .map(|(e, w)| if c.contains(e) { -w } else { *w })
                .sum::<f64>()
    }

    pub fn at_point(&self, x: &[f64]) -> f64 {
        self.constant + self.coefficients.iter().zip(x).map(|(c, v)| c * v).sum::<f64>()
    }

    /// `(1/2) Σ w_e (1 - x_e)`, the weight of a cut.
    pub fn cut_weight(w: &[f64]) -> LinearForm {
        LinearForm {
            coefficients: w.iter().map(|x| -x / 2.0).collect(),
            constant: w.iter().sum::<f64>() / 2.0,
        }
    }

    fn check(&self, m: &BinaryMatroid) -> Result<()> {
        if self.coefficients.len() != m.m() {
            return Err(Error::DimensionMismatch {
                expected: m.m(),
                got: self.coefficients.len(),
            });
        }
        Ok(())
    }
}

/// Exact optimum over all cycle vectors, with the first optimal cycle in (size, bits) order.
pub fn brute_force_opt(m: &BinaryMatroid, f: &LinearForm, sense: Sense) -> Result<(f64, Subset)> {
    f.check(m)?;
    let mut best: Option<(f64, Subset)> = None;
    for c in m.cycles()? {
        let v = f.at_cycle(c);
        let better = match (best, sense) {
            (None, _) => true,
            (Some((b, _)), Sense::Max) => v > b,
            (Some((b, _)), Sense::Min) => v < b,
        };
        if better {
            best = Some((v, c));
        }
    }
    Ok(best.expect("the empty cycle always exists"))
}

pub fn brute_force_maxcut(g: &Graph, w: &[f64]) -> Result<(f64, Subset)> {
    if w.len() != g.m() {
        return Err(Error::DimensionMismatch {
            expected: g.m(),
            got: w.len(),
        });
    }
    brute_force_opt(&BinaryMatroid::cographic(g), &LinearForm::cut_weight(w), Sense::Max)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelCount {
    pub count: usize,
    /// Distinct values, ascending, with the number of cycles attaining each.
    pub values: Vec<(f64, usize)>,
}

/// Distinct values of `f` over the cycle vectors (values closer than `1e-9` are merged).
pub fn level_count(m: &BinaryMatroid, f: &LinearForm) -> Result<LevelCount> {
    f.check(m)?;
    let mut all: Vec<f64> = m.cycles()?.into_iter().map(|c| f.at_cycle(c)).collect();
    all.sort_by(f64::total_cmp);
    let mut values: Vec<(f64, usize)> = Vec::new();
    for v in all {
        match values.last_mut() {
            Some((last, n)) if (v - *last).abs() <= 1e-9 => *n += 1,
            _ => values.push((v, 1)),
        }
    }
    Ok(LevelCount {
        count: values.len(),
        values,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MetSource {
    /// `x_e ≥ -1` (`upper = false`) or `-x_e ≥ -1`.
    Box { element: usize, upper: bool },
    /// `Σ_F x - Σ_{D \ F} x ≥ 2 - |D|` for odd `F ⊆ D`.
    Cocircuit { cocircuit: Vec<usize>, odd: Vec<usize> },
}

/// `form ≥ rhs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetInequality {
    pub form: LinearForm,
    pub rhs: f64,
    pub source: MetSource,
}

impl MetInequality {
    pub fn slack(&self, x: &[f64]) -> f64 {
        self.form.at_point(x) - self.rhs
    }
}

/// Box constraints, then the odd-subset inequalities of every cocircuit of size at most `max_size`.
pub fn met_inequalities(m: &BinaryMatroid, max_size: Option<usize>) -> Result<Vec<MetInequality>> {
    let n = m.m();
    let mut out = Vec::new();
    for e in 0..n {
        for upper in [false, true] {
            let mut c = vec![0.0; n];
            c[e] = if upper { -1.0 } else { 1.0 };
            out.push(MetInequality {
                form: LinearForm::new(c, 0.0)?,
                rhs: -1.0,
                source: MetSource::Box { element: e, upper },
            });
        }
    }
    for d in m.cocircuits(max_size)? {
        let elems = d.to_vec();
        if elems.len() > 24 {
            return Err(Error::BudgetExceeded {
                what: "odd subsets of a cocircuit",
                needed: 1u128 << (elems.len() - 1),
                limit: 1 << 23,
            });
        }
        for bits in 0u64..1 << elems.len() {
            if bits.count_ones() % 2 == 0 {
                continue;
            }
            let mut c = vec![0.0; n];
            let mut odd = Vec::new();
            for (i, &e) in elems.iter().enumerate() {
                if bits >> i & 1 == 1 {
                    c[e] = 1.0;
                    odd.push(e);
                } else {
                    c[e] = -1.0;
                }
            }
            out.push(MetInequality {
                form: LinearForm::new(c, 0.0)?,
                rhs: 2.0 - elems.len() as f64,
                source: MetSource::Cocircuit {
                    cocircuit: elems.clone(),
                    odd,
                },
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Exact,
    NotExact,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Finding {
    ChordlessCircuit { vertices: Vec<usize>, length: usize },
    NoLongChordlessCircuit { min_length: usize },
    ChordlessCocircuit { elements: Vec<usize>, size: usize },
    NoLongChordlessCocircuit { min_size: usize },
    K5Minor { present: bool },
    ExcludedMinor { name: String, witness: MinorWitness },
    NoExcludedMinor,
    Diameter { value: Option<usize> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactnessReport {
    pub verdict: Verdict,
    pub level: usize,
    pub reason: String,
    pub findings: Vec<Finding>,
}

/// The three excluded minors of the cycle-polytope characterization.
pub fn excluded_minors() -> Vec<(&'static str, BinaryMatroid)> {
    ["F7*", "R10", "M*(K5)"]
        .into_iter()
        .map(|name| (name, zoo::matroid(name).expect("built-in")))
        .collect()
}

/// Level-one exactness from the excluded-minor theorem: inconclusive when
/// an excluded minor is present, otherwise exact iff no chordless cocircuit
/// has five or more elements.
pub fn th1_exact_matroid(m: &BinaryMatroid) -> Result<ExactnessReport> {
    let mut findings = Vec::new();
    for (name, target) in excluded_minors() {
        if let Some(witness) = m.find_minor(&target)? {
            findings.push(Finding::ExcludedMinor {
                name: name.to_string(),
                witness,
            });
            return Ok(ExactnessReport {
                verdict: Verdict::Inconclusive,
                level: 1,
                reason: format!("has an {name} minor"),
                findings,
            });
        }
    }
    findings.push(Finding::NoExcludedMinor);
    match m.chordless_cocircuits(5)?.first() {
        Some(d) => {
            findings.push(Finding::ChordlessCocircuit {
                elements: d.to_vec(),
                size: d.len(),
            });
            Ok(ExactnessReport {
                verdict: Verdict::NotExact,
                level: 1,
                reason: format!("chordless cocircuit size {}", d.len()),
                findings,
            })
        }
        None => {
            findings.push(Finding::NoLongChordlessCocircuit { min_size: 5 });
            Ok(ExactnessReport {
                verdict: Verdict::Exact,
                level: 1,
                reason: "no excluded minor and no chordless cocircuit of size at least 5".into(),
                findings,
            })
        }
    }
}

fn check_graph_size(g: &Graph) -> Result<()> {
    let limit = budget::current().graph_vertices;
    if g.n() > limit {
        return Err(Error::BudgetExceeded {
            what: "graph vertices",
            needed: g.n() as u128,
            limit: limit as u128,
        });
    }
    Ok(())
}

/// Level-one exactness of the cut ideal: no `K_5` minor and no chordless circuit of length ≥ 5.
pub fn th1_exact_graph_cut_ideal(g: &Graph) -> Result<ExactnessReport> {
    check_graph_size(g)?;
    let k5 = g.has_k5_minor()?;
    let circuit = g.chordless_circuit_at_least(5);
    let mut findings = vec![Finding::K5Minor { present: k5 }];
    let mut reasons = Vec::new();
    if k5 {
        reasons.push("K5 minor".to_string());
    }
    match circuit {
        Some(vertices) => {
            let length = vertices.len();
            reasons.push(format!("chordless circuit length {length}"));
            findings.push(Finding::ChordlessCircuit { vertices, length });
        }
        None => findings.push(Finding::NoLongChordlessCircuit { min_length: 5 }),
    }
    let exact = reasons.is_empty();
    Ok(ExactnessReport {
        verdict: if exact { Verdict::Exact } else { Verdict::NotExact },
        level: 1,
        reason: if exact {
            "no K5 minor and no chordless circuit of length at least 5".into()
        } else {
            reasons.join("; ")
        },
        findings,
    })
}

/// One-sided level-two certificate: no `K_5` minor, and either no chordless
/// circuit of length ≥ 9 or diameter at most 2. `Inconclusive` means "not certified".
pub fn th2_sufficient_graph(g: &Graph) -> Result<ExactnessReport> {
    check_graph_size(g)?;
    let k5 = g.has_k5_minor()?;
    let diameter = g.diameter();
    let long = g.chordless_circuit_at_least(9);
    let mut findings = vec![Finding::K5Minor { present: k5 }, Finding::Diameter { value: diameter }];
    match &long {
        Some(vertices) => findings.push(Finding::ChordlessCircuit {
            vertices: vertices.clone(),
            length: vertices.len(),
        }),
        None => findings.push(Finding::NoLongChordlessCircuit { min_length: 9 }),
    }
    let (certified, reason) = if k5 {
        (false, "K5 minor".to_string())
    } else if long.is_none() {
        (true, "no K5 minor and no chordless circuit of length at least 9".to_string())
    } else if diameter.is_some_and(|d| d <= 2) {
        (true, "no K5 minor and diameter at most 2".to_string())
    } else {
        (false, "chordless circuit of length at least 9 and diameter above 2".to_string())
    };
    Ok(ExactnessReport {
        verdict: if certified { Verdict::Exact } else { Verdict::Inconclusive },
        level: 2,
        reason,
        findings,
    })
}

/// Smallest `k` with `TH_k` of the cut ideal of `C_n` equal to the cut polytope.
pub fn circuit_exactness_order(n: usize) -> usize {
    n.div_ceil(4)
}

/// Integer weights in `[-5, 5]` from a fixed-seed stream.
pub fn random_weights(len: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| rng.gen_range(-5i32..=5) as f64).collect()
}

/// `G(n, 1/2)` from a fixed-seed stream.
pub fn random_graph(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).expect("simple graph")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapSummary {
    pub trials: usize,
    pub max_gap: f64,
    pub worst_seed: Option<u64>,
}

/// Largest `maxcut_bound - brute force` over seeds `0..trials`.
pub fn maxcut_gap_trials(g: &Graph, k: usize, trials: usize, settings: &SolverSettings) -> Result<GapSummary> {
    let mut summary = GapSummary {
        trials,
        max_gap: f64::NEG_INFINITY,
        worst_seed: None,
    };
    for seed in 0..trials as u64 {
        let w = random_weights(g.m(), seed);
        let bound = maxcut_bound(g, &w, k, settings)?.bound;
        let gap = bound - brute_force_maxcut(g, &w)?.0;
        if gap > summary.max_gap {
            summary.max_gap = gap;
            summary.worst_seed = Some(seed);
        }
    }
    if trials == 0 {
        summary.max_gap = 0.0;
    }
    Ok(summary)
}

/// Largest `TH_k bound - exact optimum` of random forms `max Σ w_e x_e` over seeds `0..trials`.
pub fn matroid_gap_trials(m: &BinaryMatroid, k: usize, trials: usize, settings: &SolverSettings) -> Result<GapSummary> {
    let mut summary = GapSummary {
        trials,
        max_gap: 0.0,
        worst_seed: None,
    };
    for seed in 0..trials as u64 {
        let f = LinearForm::new(random_weights(m.m(), seed), 0.0)?;
        let bound = theta_bound(m, &f.coefficients, 0.0, k, Sense::Max, settings)?.bound;
        let gap = bound - brute_force_opt(m, &f, Sense::Max)?.0;
        if summary.worst_seed.is_none() || gap > summary.max_gap {
            summary.max_gap = gap;
            summary.worst_seed = Some(seed);
        }
    }
    Ok(summary)
}

pub const GAP_TOLERANCE: f64 = 1e-4;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GapSearch {
    pub random: GapSummary,
    /// Largest gap of unit weights on an induced subgraph.
    pub induced_max_gap: f64,
    /// Vertex set attaining `induced_max_gap`.
    pub induced_witness: Option<Vec<usize>>,
}

impl GapSearch {
    pub fn max_gap(&self) -> f64 {
        self.random.max_gap.max(self.induced_max_gap)
    }
}

/// Random trials plus unit weights on every induced subgraph with at least
/// three vertices. Gaps of the latter kind come from odd-cycle and
/// hypermetric directions that random weights rarely hit.
pub fn maxcut_gap_search(g: &Graph, k: usize, trials: usize, settings: &SolverSettings) -> Result<GapSearch> {
    check_graph_size(g)?;
    let random = maxcut_gap_trials(g, k, trials, settings)?;
    let mut search = GapSearch {
        random,
        induced_max_gap: 0.0,
        induced_witness: None,
    };
    for mask in 0u64..1 << g.n() {
        if mask.count_ones() < 3 {
            continue;
        }
        let inside = |v: usize| mask >> v & 1 == 1;
        let w: Vec<f64> = g
            .edges()
            .iter()
            .map(|&(u, v)| if inside(u) && inside(v) { 1.0 } else { 0.0 })
            .collect();
        if w.iter().sum::<f64>() < 3.0 {
            continue;
        }
        let gap = maxcut_bound(g, &w, k, settings)?.bound - brute_force_maxcut(g, &w)?.0;
        if gap > search.induced_max_gap {
            search.induced_max_gap = gap;
            search.induced_witness = Some(Subset(mask).to_vec());
        }
    }
    Ok(search)
}

/// If `m` shows no gap on the random objectives, every single-element
/// deletion must show none either. Returns whether that held.
pub fn deletion_monotonicity_check(
    m: &BinaryMatroid,
    k: usize,
    trials: usize,
    settings: &SolverSettings,
) -> Result<bool> {
    if m.m() == 0 {
        return Ok(true);
    }
    if matroid_gap_trials(m, k, trials, settings)?.max_gap > GAP_TOLERANCE {
        return Ok(true);
    }
    for e in 0..m.m() {
        let minor = m.delete(e)?;
        if matroid_gap_trials(&minor, k, trials, settings)?.max_gap > GAP_TOLERANCE {
            return Ok(false);
        }
    }
    Ok(true)
}
