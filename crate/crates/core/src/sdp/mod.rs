//! Moment-matrix SDPs: optimize a linear function of `y` over `M(y) ⪰ 0, y_0 = 1`.
//!
//! The solver is ADMM on `M(y) = S, S ⪰ 0`. Because every diagonal entry of
//! `M(y)` is `y_0 = 1`, all entries satisfy `|y_v| ≤ 1`, which turns any
//! PSD dual matrix into an upper bound; a feasible primal point comes from
//! shrinking the iterate towards `y = e_0`. Both are reported.

mod bounds;

pub use bounds::{gw_bound, maxcut_bound, q2_bound, theta_bound, ThetaSolution};

use faer::{Mat, Side};
use serde::{Deserialize, Serialize};

use crate::budget;
use crate::error::{Error, Result};
use crate::moment::MomentTemplate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Max,
    Min,
}

#[derive(Clone, Debug)]
pub struct SdpProblem {
    side: usize,
    nvars: usize,
    var_of: Vec<usize>,
    objective: Vec<f64>,
    constant: f64,
    sense: Sense,
}

impl SdpProblem {
    /// `var_of` is a row-major `side × side` symmetric index matrix with
    /// variable 0 exactly on the diagonal, and every variable used.
    pub fn new(
        side: usize,
        var_of: Vec<usize>,
        objective: Vec<f64>,
        constant: f64,
        sense: Sense,
    ) -> Result<SdpProblem> {
        let nvars = objective.len();
        if var_of.len() != side * side {
            return Err(Error::DimensionMismatch {
                expected: side * side,
                got: var_of.len(),
            });
        }
        if side == 0 || nvars == 0 {
            return Err(Error::InvalidProblem("empty moment matrix".into()));
        }
        let limit = budget::current().sdp_side;
        if side > limit {
            return Err(Error::BudgetExceeded {
                what: "SDP matrix side",
                needed: side as u128,
                limit: limit as u128,
            });
        }
        let mut used = vec![false; nvars];
        for i in 0..side {
            for j in 0..side {
                let v = var_of[i * side + j];
                if v >= nvars {
                    return Err(Error::InvalidProblem(format!("variable {v} out of range")));
                }
                if v != var_of[j * side + i] {
                    return Err(Error::InvalidProblem("variable matrix not symmetric".into()));
                }
                if (i == j) != (v == 0) {
                    return Err(Error::InvalidProblem(
                        "variable 0 must fill exactly the diagonal".into(),
                    ));
                }
                used[v] = true;
            }
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(Error::InvalidProblem(format!("variable {v} never appears")));
        }
        if objective.iter().any(|c| !c.is_finite()) || !constant.is_finite() {
            return Err(Error::InvalidProblem("objective must be finite".into()));
        }
        Ok(SdpProblem {
            side,
            nvars,
            var_of,
            objective,
            constant,
            sense,
        })
    }

    pub fn from_template(
        t: &MomentTemplate,
        objective: Vec<f64>,
        constant: f64,
        sense: Sense,
    ) -> Result<SdpProblem> {
        if objective.len() != t.nvars() {
            return Err(Error::DimensionMismatch {
                expected: t.nvars(),
                got: objective.len(),
            });
        }
        SdpProblem::new(t.side(), t.var_matrix().to_vec(), objective, constant, sense)
    }

    /// `X ⪰ 0, X_ii = 1`; variable `1 + index of (i, j)` for `i < j` in row order.
    pub fn elliptope(n: usize, pair_objective: Vec<f64>, constant: f64, sense: Sense) -> Result<SdpProblem> {
        let npairs = n * n.saturating_sub(1) / 2;
        if pair_objective.len() != npairs {
            return Err(Error::DimensionMismatch {
                expected: npairs,
                got: pair_objective.len(),
            });
        }
        let mut var_of = vec![0; n * n];
        let mut next = 1;
        for i in 0..n {
            for j in i + 1..n {
                var_of[i * n + j] = next;
                var_of[j * n + i] = next;
                next += 1;
            }
        }
        let mut objective = vec![0.0];
        objective.extend(pair_objective);
        SdpProblem::new(n, var_of, objective, constant, sense)
    }

    pub fn side(&self) -> usize {
        self.side
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    /// `constant + Σ_v objective_v y_v`.
    pub fn objective_value(&self, y: &[f64]) -> f64 {
        self.constant + self.objective.iter().zip(y).map(|(c, v)| c * v).sum::<f64>()
    }

    pub fn matrix(&self, y: &[f64]) -> Mat<f64> {
        Mat::from_fn(self.side, self.side, |i, j| y[self.var_of[i * self.side + j]])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverSettings {
    /// Target for the primal residual `‖M(y) - S‖`.
    pub eps_abs: f64,
    /// Target for `(bound - value) / max(1, |value|)`.
    pub eps_rel: f64,
    pub max_iter: usize,
    /// Iterations between certificate evaluations and step-size updates.
    pub check_every: usize,
    pub rho: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            eps_abs: 1e-8,
            eps_rel: 1e-7,
            max_iter: 200_000,
            check_every: 20,
            rho: 1.0,
        }
    }
}

impl SolverSettings {
    pub fn with_tolerance(eps_rel: f64) -> SolverSettings {
        SolverSettings {
            eps_rel,
            eps_abs: eps_rel.min(1e-8),
            ..SolverSettings::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Optimal,
    MaxIterations,
    InfeasibleDetected,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SdpResult {
    pub status: Status,
    /// Objective at `y`, which is feasible.
    pub value: f64,
    /// Certified bound on the optimum: upper for `Max`, lower for `Min`.
    pub bound: f64,
    pub y: Vec<f64>,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub iterations: usize,
}

impl SdpResult {
    pub fn gap(&self) -> f64 {
        (self.bound - self.value).abs()
    }
}

/// Entries of `E_v`, each off-diagonal pair listed once with weight 2.
struct Pattern {
    positions: Vec<Vec<(usize, usize)>>,
    counts: Vec<f64>,
}

impl Pattern {
    fn new(p: &SdpProblem) -> Pattern {
        let mut positions = vec![Vec::new(); p.nvars];
        let mut counts = vec![0.0; p.nvars];
        for i in 0..p.side {
            for j in i..p.side {
                let v = p.var_of[i * p.side + j];
                positions[v].push((i, j));
                counts[v] += if i == j { 1.0 } else { 2.0 };
            }
        }
        Pattern { positions, counts }
    }

    /// `⟨X, E_v⟩` for every `v`.
    fn inner(&self, x: &Mat<f64>) -> Vec<f64> {
        self.positions
            .iter()
            .map(|pos| {
                pos.iter()
                    .map(|&(i, j)| if i == j { x[(i, i)] } else { 2.0 * x[(i, j)] })
                    .sum()
            })
            .collect()
    }

    fn assemble(&self, side: usize, y: &[f64]) -> Mat<f64> {
        let mut a = Mat::zeros(side, side);
        for (v, pos) in self.positions.iter().enumerate() {
            for &(i, j) in pos {
                a[(i, j)] = y[v];
                a[(j, i)] = y[v];
            }
        }
        a
    }
}

/// Splits `z` into its PSD part and the NSD remainder, rebuilding whichever
/// eigenspace is smaller.
fn psd_split(z: &Mat<f64>) -> (Mat<f64>, Mat<f64>) {
    let n = z.nrows();
    let eig = z.self_adjoint_eigen(Side::Lower).expect("finite symmetric matrix");
    let values = eig.S().column_vector();
    // eigenvalues ascend, so the negative ones come first
    let neg = (0..n).take_while(|&i| values[i] < 0.0).count();
    let outer = |start: usize, count: usize| -> Mat<f64> {
        let u = eig.U().subcols(start, count);
        let scaled = Mat::from_fn(n, count, |i, j| u[(i, j)] * values[start + j]);
        &scaled * u.transpose()
    };
    if neg <= n - neg {
        let negative = outer(0, neg);
        (z - &negative, negative)
    } else {
        let positive = outer(neg, n - neg);
        let negative = z - &positive;
        (positive, negative)
    }
}

fn frobenius(a: &Mat<f64>, b: &Mat<f64>) -> f64 {
    let mut sum = 0.0;
    for j in 0..a.ncols() {
        for i in 0..a.nrows() {
            let d = a[(i, j)] - b[(i, j)];
            sum += d * d;
        }
    }
    sum.sqrt()
}

pub(crate) fn min_eigenvalue(a: &Mat<f64>) -> f64 {
    a.self_adjoint_eigenvalues(Side::Lower)
        .expect("finite symmetric matrix")
        .first()
        .copied()
        .unwrap_or(f64::INFINITY)
}

/// Feasible point on the segment from `y` to `e_0` and the matching objective.
fn shrink_to_feasible(p: &SdpProblem, pattern: &Pattern, y: &[f64]) -> Vec<f64> {
    let lambda = min_eigenvalue(&pattern.assemble(p.side, y));
    if lambda >= 0.0 {
        return y.to_vec();
    }
    // M(αy + (1-α)e_0) = αM(y) + (1-α)I has smallest eigenvalue αλ + 1 - α
    let alpha = 1.0 / (1.0 - lambda) * (1.0 - 1e-14);
    let mut out: Vec<f64> = y.iter().map(|v| alpha * v).collect();
    out[0] = 1.0;
    out
}

pub fn solve(p: &SdpProblem, settings: &SolverSettings) -> SdpResult {
    let sign = match p.sense {
        Sense::Max => 1.0,
        Sense::Min => -1.0,
    };
    let n = p.side;
    let pattern = Pattern::new(p);
    let scale = p.objective[1..]
        .iter()
        .fold(0.0f64, |acc, c| acc.max(c.abs()));

    let mut y = vec![0.0; p.nvars];
    y[0] = 1.0;
    let report = |status, y: Vec<f64>, upper: f64, r: f64, s: f64, it: usize| SdpResult {
        status,
        value: p.objective_value(&y),
        bound: p.constant + p.objective[0] + sign * upper,
        y,
        primal_residual: r,
        dual_residual: s,
        iterations: it,
    };
    if scale == 0.0 {
        return report(Status::Optimal, y, 0.0, 0.0, 0.0, 0);
    }
    // maximize c·y with c = sign·objective / scale, excluding the y_0 term
    let c: Vec<f64> = p
        .objective
        .iter()
        .enumerate()
        .map(|(v, o)| if v == 0 { 0.0 } else { sign * o / scale })
        .collect();

    let mut rho = settings.rho;
    let mut s_mat = Mat::<f64>::identity(n, n);
    let mut u = Mat::<f64>::zeros(n, n);
    let (mut r_norm, mut s_norm) = (f64::INFINITY, f64::INFINITY);
    let mut best: Option<(f64, f64, Vec<f64>)> = None; // (upper, lower, feasible y)

    for it in 1..=settings.max_iter {
        let rhs = pattern.inner(&(&s_mat - &u));
        for v in 1..p.nvars {
            y[v] = (rhs[v] + c[v] / rho) / pattern.counts[v];
        }
        let a = pattern.assemble(n, &y);
        let z = &a + &u;
        let (s_new, u_new) = psd_split(&z);
        u = u_new;
        r_norm = frobenius(&a, &s_new);
        s_norm = rho * frobenius(&s_new, &s_mat);
        s_mat = s_new;

        if !r_norm.is_finite() || !s_norm.is_finite() {
            let fallback = best.map(|b| b.2).unwrap_or_else(|| {
                let mut e0 = vec![0.0; p.nvars];
                e0[0] = 1.0;
                e0
            });
            return report(Status::InfeasibleDetected, fallback, f64::INFINITY, r_norm, s_norm, it);
        }

        if it % settings.check_every == 0 || it == settings.max_iter {
            // W = -ρU is PSD; for feasible y, c·y ≤ Σ_v y_v (c_v + ⟨W, E_v⟩)
            let wv: Vec<f64> = pattern.inner(&u).iter().map(|x| -rho * x).collect();
            let upper = wv[0] + (1..p.nvars).map(|v| (c[v] + wv[v]).abs()).sum::<f64>();
            let feasible = shrink_to_feasible(p, &pattern, &y);
            let lower: f64 = (1..p.nvars).map(|v| c[v] * feasible[v]).sum();
            best = Some(match best.take() {
                None => (upper, lower, feasible),
                Some((bu, bl, by)) => {
                    let (l, yy) = if lower >= bl { (lower, feasible) } else { (bl, by) };
                    (bu.min(upper), l, yy)
                }
            });
            let (upper_best, lower_best) = best.as_ref().map(|b| (b.0, b.1)).unwrap();
            let gap = (upper_best - lower_best) * scale;
            let value = lower_best * scale;
            if gap <= settings.eps_rel * value.abs().max(1.0) {
                let (ub, _, yb) = best.unwrap();
                return report(Status::Optimal, yb, ub * scale, r_norm, s_norm, it);
            }
            if r_norm > 10.0 * s_norm {
                rho *= 2.0;
                u *= faer::Scale(0.5);
            } else if s_norm > 10.0 * r_norm {
                rho /= 2.0;
                u *= faer::Scale(2.0);
            }
        }
    }
    let (ub, _, yb) = best.expect("max_iter ≥ 1 evaluates a certificate");
    report(Status::MaxIterations, yb, ub * scale, r_norm, s_norm, settings.max_iter)
}
