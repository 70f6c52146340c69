use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::{BinaryMatroid, Graph};
use crate::moment::{MomentTemplate, Reduction};

use super::{solve, SdpProblem, SdpResult, Sense, SolverSettings, Status};

/// Optimum of a linear form over a relaxation, in the caller's coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaSolution {
    /// Certified bound: no point of the relaxation does better.
    pub bound: f64,
    /// Objective at `x`, a point of the relaxation.
    pub value: f64,
    /// Coordinates `x_e` (edge or element values) of the feasible point.
    pub x: Vec<f64>,
    pub status: Status,
    pub iterations: usize,
    pub primal_residual: f64,
    pub dual_residual: f64,
    /// Side of the moment matrix that was solved (0 when nothing was left after reduction).
    pub side: usize,
}

impl ThetaSolution {
    fn exact(value: f64, x: Vec<f64>) -> ThetaSolution {
        ThetaSolution {
            bound: value,
            value,
            x,
            status: Status::Optimal,
            iterations: 0,
            primal_residual: 0.0,
            dual_residual: 0.0,
            side: 0,
        }
    }

    fn from_result(r: SdpResult, x: Vec<f64>, side: usize) -> ThetaSolution {
        ThetaSolution {
            bound: r.bound,
            value: r.value,
            x,
            status: r.status,
            iterations: r.iterations,
            primal_residual: r.primal_residual,
            dual_residual: r.dual_residual,
            side,
        }
    }
}

/// Optimizes `constant + Σ c_e x_e` over `TH_k` of the cycle ideal of `m`.
/// Coloops and coparallel pairs are reduced away first.
pub fn theta_bound(
    m: &BinaryMatroid,
    c: &[f64],
    constant: f64,
    k: usize,
    sense: Sense,
    settings: &SolverSettings,
) -> Result<ThetaSolution> {
    let red = Reduction::new(m);
    let (rc, r0) = red.reduce_objective(c, constant)?;
    if red.reduced().m() == 0 {
        return Ok(ThetaSolution::exact(r0, red.lift_point(&[])));
    }
    let t = MomentTemplate::build(red.reduced(), k)?;
    let mut objective = vec![0.0; t.nvars()];
    for (e, &ce) in rc.iter().enumerate() {
        if ce == 0.0 {
            continue;
        }
        let v = t.degree1_var(e).ok_or_else(|| {
            Error::InvalidProblem("level 0 cannot express a linear objective".into())
        })?;
        objective[v] += ce;
    }
    let p = SdpProblem::from_template(&t, objective, r0, sense)?;
    let r = solve(&p, settings);
    let x: Vec<f64> = (0..red.reduced().m())
        .map(|e| t.degree1_var(e).map_or(0.0, |v| r.y[v]))
        .collect();
    Ok(ThetaSolution::from_result(r, red.lift_point(&x), t.side()))
}

fn check_weights(g: &Graph, w: &[f64]) -> Result<()> {
    if w.len() != g.m() {
        return Err(Error::DimensionMismatch {
            expected: g.m(),
            got: w.len(),
        });
    }
    if w.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidProblem("weights must be finite".into()));
    }
    Ok(())
}

/// `max (1/2) Σ w_e (1 - x_e)` over `TH_k` of the cut ideal.
pub fn maxcut_bound(g: &Graph, w: &[f64], k: usize, settings: &SolverSettings) -> Result<ThetaSolution> {
    check_weights(g, w)?;
    let c: Vec<f64> = w.iter().map(|x| -x / 2.0).collect();
    let constant = w.iter().sum::<f64>() / 2.0;
    theta_bound(&BinaryMatroid::cographic(g), &c, constant, k, Sense::Max, settings)
}

/// The same objective over the elliptope `X ⪰ 0, X_ii = 1`; `x_e = X_uv`.
pub fn gw_bound(g: &Graph, w: &[f64], settings: &SolverSettings) -> Result<ThetaSolution> {
    check_weights(g, w)?;
    let n = g.n();
    let constant = w.iter().sum::<f64>() / 2.0;
    if n < 2 {
        return Ok(ThetaSolution::exact(constant, vec![]));
    }
    let pair = |u: usize, v: usize| u * n - u * (u + 1) / 2 + (v - u - 1);
    let mut obj = vec![0.0; n * (n - 1) / 2];
    for (&(u, v), &we) in g.edges().iter().zip(w) {
        obj[pair(u, v)] -= we / 2.0;
    }
    let p = SdpProblem::elliptope(n, obj, constant, Sense::Max)?;
    let r = solve(&p, settings);
    let x = g.edges().iter().map(|&(u, v)| r.y[1 + pair(u, v)]).collect();
    Ok(ThetaSolution::from_result(r, x, n))
}

/// The objective over the projection of `TH_1` of the cut ideal of `K_n` onto `E(G)`.
pub fn q2_bound(g: &Graph, w: &[f64], settings: &SolverSettings) -> Result<ThetaSolution> {
    check_weights(g, w)?;
    let n = g.n();
    if n > 10 {
        return Err(Error::BudgetExceeded {
            what: "vertices for the complete-graph lift",
            needed: n as u128,
            limit: 10,
        });
    }
    let kn = Graph::complete(n);
    let mut c = vec![0.0; kn.m()];
    for (&(u, v), &we) in g.edges().iter().zip(w) {
        c[kn.edge_index(u, v).expect("complete graph")] -= we / 2.0;
    }
    let constant = w.iter().sum::<f64>() / 2.0;
    let sol = theta_bound(&BinaryMatroid::cographic(&kn), &c, constant, 1, Sense::Max, settings)?;
    let x = g
        .edges()
        .iter()
        .map(|&(u, v)| sol.x.get(kn.edge_index(u, v).unwrap()).copied().unwrap_or(1.0))
        .collect();
    Ok(ThetaSolution { x, ..sol })
}
