//! Command-line front end. `main.rs` only forwards to [`run`].

mod input;
pub mod report;
pub mod repro;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::analysis::{self, brute_force_maxcut, brute_force_opt, LinearForm};
use crate::basis::RepresentativeBasis;
use crate::budget::{self, Budget};
use crate::error::{Error, Result};
use crate::matroid::Side;
use crate::moment::{MomentTemplate, Reduction};
use crate::sdp::{gw_bound, maxcut_bound, q2_bound, theta_bound, Sense, SolverSettings};

pub use input::Instance;
use report::{
    BasisReport, BoundReport, CompareReport, ExactReport, InstanceInfo, ReproReport, SCHEMA,
};

#[derive(Debug, Parser)]
#[command(name = "thetacut", version, about = "Theta-body bounds for cut and cycle polytopes")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Optimize a linear objective over a theta body.
    Bound(BoundArgs),
    /// Classify exactness of the level-k theta body.
    Exact(ExactArgs),
    /// Print the representative sets and template size.
    Basis(BasisArgs),
    /// Compare level-k, Goemans-Williamson, Q_2 and brute-force max-cut values.
    Compare(CompareArgs),
    /// Run the reproduction table.
    Repro(ReproArgs),
    /// List the built-in instances.
    Zoo(OutputArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct InputArgs {
    /// Built-in instance name, e.g. C5, K5, R10, F7*.
    #[arg(long)]
    pub zoo: Option<String>,
    /// Edge-list file: `n m`, then `u v [w]` per edge.
    #[arg(long)]
    pub graph: Option<std::path::PathBuf>,
    /// Matrix file: `r m`, then `r` rows of 0/1 entries.
    #[arg(long)]
    pub matroid: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rows {
    Cycles,
    Cocycles,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    #[arg(long)]
    pub json: bool,
    /// Leave the timestamp out of JSON output.
    #[arg(long)]
    pub no_timestamp: bool,
}

#[derive(Debug, Args)]
pub struct SolverArgs {
    /// Relative gap at which the solver stops.
    #[arg(long, default_value_t = 1e-7)]
    pub eps: f64,
    #[arg(long, default_value_t = 200_000)]
    pub max_iter: usize,
}

impl SolverArgs {
    fn settings(&self) -> Result<SolverSettings> {
        if !(self.eps > 0.0 && self.eps.is_finite()) || self.max_iter == 0 {
            return Err(Error::InvalidProblem("--eps must be positive and --max-iter nonzero".into()));
        }
        Ok(SolverSettings {
            max_iter: self.max_iter,
            ..SolverSettings::with_tolerance(self.eps)
        })
    }
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// What the rows of a --matroid file span.
    #[arg(long, value_enum, default_value_t = Rows::Cycles)]
    pub rows: Rows,
    /// One weight per line in element order; unit weights when absent.
    #[arg(long)]
    pub weights: Option<std::path::PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Minimize instead of maximize (matroid objectives only).
    #[arg(long)]
    pub min: bool,
    /// Also compute the exact optimum by enumeration.
    #[arg(long)]
    pub brute: bool,
    /// Also compute the Goemans-Williamson bound (graphs only).
    #[arg(long)]
    pub gw: bool,
    /// Also compute the Q_2 bound (graphs only).
    #[arg(long)]
    pub q2: bool,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = Rows::Cycles)]
    pub rows: Rows,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct BasisArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = Rows::Cycles)]
    pub rows: Rows,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    /// Include the moment template (index set and variable triplets).
    #[arg(long)]
    pub template: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub weights: Option<std::path::PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub k: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ReproArgs {
    /// Run only these rows (a row name or its prefix before `-`).
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<String>,
    #[command(flatten)]
    pub output: OutputArgs,
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_budget() {
        2
    } else {
        1
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let informational = !e.use_stderr();
            let text = e.render().to_string();
            if informational {
                let _ = write!(out, "{text}");
                return 0;
            }
            let _ = write!(err, "{text}");
            return 1;
        }
    };
    match execute(&config, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "thetacut: {e}");
            exit_code(&e)
        }
    }
}

/// Runs a parsed configuration, writing the report to `out`.
pub fn execute(config: &RunConfig, out: &mut dyn Write) -> Result<i32> {
    let b = Budget::from_env()?;
    budget::install(b);
    match &config.command {
        Command::Bound(a) => emit(out, &a.output, bound(a, timestamp(&a.output))?),
        Command::Exact(a) => emit(out, &a.output, exact(a, timestamp(&a.output))?),
        Command::Basis(a) => emit(out, &a.output, basis(a, timestamp(&a.output))?),
        Command::Compare(a) => emit(out, &a.output, compare(a, timestamp(&a.output))?),
        Command::Zoo(o) => {
            if o.json {
                let names = crate::matroid::zoo::catalog();
                writeln!(out, "{}", serde_json::to_string_pretty(names).expect("serializable"))
                    .map_err(io_error)?;
            } else {
                for name in crate::matroid::zoo::catalog() {
                    writeln!(out, "{name}").map_err(io_error)?;
                }
            }
            Ok(0)
        }
        Command::Repro(a) => {
            let report = repro_report(a, timestamp(&a.output))?;
            let pass = report.all_pass;
            emit(out, &a.output, report)?;
            Ok(if pass { 0 } else { 1 })
        }
    }
}

fn io_error(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn timestamp(o: &OutputArgs) -> Option<u64> {
    if o.no_timestamp {
        return None;
    }
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .ok()
        .map(|d| d.as_secs())
}

fn emit<R: report::Report>(out: &mut dyn Write, o: &OutputArgs, r: R) -> Result<i32> {
    let text = if o.json { r.to_json() } else { r.to_text() };
    writeln!(out, "{text}").map_err(io_error)?;
    Ok(0)
}

fn side_of(rows: Rows) -> Side {
    match rows {
        Rows::Cycles => Side::Cycle,
        Rows::Cocycles => Side::Cocycle,
    }
}

pub fn bound(a: &BoundArgs, timestamp: Option<u64>) -> Result<BoundReport> {
    let inst = Instance::load(&a.input, side_of(a.rows))?;
    let settings = a.solver.settings()?;
    let w = inst.weights(a.weights.as_deref())?;
    let sense = if a.min { Sense::Min } else { Sense::Max };
    let mut r = BoundReport::new(InstanceInfo::of(&inst), a.k, sense, timestamp);
    match inst.graph() {
        Some(g) => {
            if a.min {
                return Err(Error::InvalidProblem("--min applies to matroid objectives only".into()));
            }
            r.objective = "maxcut".into();
            r.set_solution(&maxcut_bound(g, &w, a.k, &settings)?);
            if a.brute {
                r.set_brute(brute_force_maxcut(g, &w)?.0);
            }
            if a.gw {
                r.gw = Some(report::sig12(gw_bound(g, &w, &settings)?.bound));
            }
            if a.q2 {
                r.q2 = Some(report::sig12(q2_bound(g, &w, &settings)?.bound));
            }
        }
        None => {
            if a.gw || a.q2 {
                return Err(Error::InvalidProblem("--gw and --q2 need a graph input".into()));
            }
            let m = inst.matroid();
            r.set_solution(&theta_bound(m, &w, 0.0, a.k, sense, &settings)?);
            if a.brute {
                let f = LinearForm::new(w.clone(), 0.0)?;
                r.set_brute(brute_force_opt(m, &f, sense)?.0);
            }
        }
    }
    Ok(r)
}

pub fn exact(a: &ExactArgs, timestamp: Option<u64>) -> Result<ExactReport> {
    let inst = Instance::load(&a.input, side_of(a.rows))?;
    let result = match (inst.graph(), a.k) {
        (Some(g), 1) => analysis::th1_exact_graph_cut_ideal(g)?,
        (Some(g), 2) => analysis::th2_sufficient_graph(g)?,
        (None, 1) => analysis::th1_exact_matroid(inst.matroid())?,
        (_, k) => {
            return Err(Error::InvalidProblem(format!(
                "no exactness test for level {k} on this input (graphs: 1 or 2, matroids: 1)"
            )))
        }
    };
    Ok(ExactReport {
        schema: SCHEMA,
        command: "exact".into(),
        instance: InstanceInfo::of(&inst),
        report: result,
        timestamp,
    })
}

pub fn basis(a: &BasisArgs, timestamp: Option<u64>) -> Result<BasisReport> {
    let inst = Instance::load(&a.input, side_of(a.rows))?;
    let basis = RepresentativeBasis::build(inst.matroid(), a.k)?;
    let red = Reduction::new(inst.matroid());
    let template = MomentTemplate::build(red.reduced(), a.k)?;
    Ok(BasisReport {
        schema: SCHEMA,
        command: "basis".into(),
        instance: InstanceInfo::of(&inst),
        basis: basis.summary(),
        reduced_elements: red.reduced().m(),
        side: template.side(),
        nvars: template.nvars(),
        template: a.template.then(|| template.export()),
        timestamp,
    })
}

pub fn compare(a: &CompareArgs, timestamp: Option<u64>) -> Result<CompareReport> {
    let inst = Instance::load(&a.input, Side::Cycle)?;
    let g = inst
        .graph()
        .ok_or_else(|| Error::InvalidProblem("compare needs a graph input".into()))?;
    let settings = a.solver.settings()?;
    let w = inst.weights(a.weights.as_deref())?;
    let th = maxcut_bound(g, &w, a.k, &settings)?;
    let q2 = match q2_bound(g, &w, &settings) {
        Ok(s) => Some(report::sig12(s.bound)),
        Err(e) if e.is_budget() => None,
        Err(e) => return Err(e),
    };
    Ok(CompareReport {
        schema: SCHEMA,
        command: "compare".into(),
        instance: InstanceInfo::of(&inst),
        k: a.k,
        theta: report::sig12(th.bound),
        gw: report::sig12(gw_bound(g, &w, &settings)?.bound),
        q2,
        brute: report::sig12(brute_force_maxcut(g, &w)?.0),
        timestamp,
    })
}

pub fn repro_report(a: &ReproArgs, timestamp: Option<u64>) -> Result<ReproReport> {
    let rows = repro::select(&a.only)?;
    let results: Vec<_> = rows.iter().map(|r| r.run()).collect();
    Ok(ReproReport {
        schema: SCHEMA,
        command: "repro".into(),
        all_pass: results.iter().all(|r| r.pass),
        rows: results,
        timestamp,
    })
}
