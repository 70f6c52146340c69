use std::path::Path;

use crate::error::{Error, Result};
use crate::matroid::{zoo, BinaryMatroid, Graph, Side};

use super::InputArgs;

/// A loaded input: a graph (objectives are cut weights) or a bare matroid.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    graph: Option<Graph>,
    matroid: BinaryMatroid,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

impl Instance {
    pub fn from_graph(name: impl Into<String>, g: Graph) -> Instance {
        Instance {
            name: name.into(),
            matroid: BinaryMatroid::cographic(&g),
            graph: Some(g),
        }
    }

    pub fn from_matroid(name: impl Into<String>, m: BinaryMatroid) -> Instance {
        Instance {
            name: name.into(),
            graph: None,
            matroid: m,
        }
    }

    pub fn load(args: &InputArgs, rows: Side) -> Result<Instance> {
        if let Some(name) = &args.zoo {
            return Ok(match zoo::lookup(name)? {
                zoo::ZooEntry::Graph(g) => Instance::from_graph(name.clone(), g),
                zoo::ZooEntry::Matroid(m) => Instance::from_matroid(name.clone(), m),
            });
        }
        if let Some(path) = &args.graph {
            return Ok(Instance::from_graph(path.display().to_string(), Graph::parse(&read(path)?)?));
        }
        if let Some(path) = &args.matroid {
            let m = BinaryMatroid::parse(&read(path)?, rows)?;
            return Ok(Instance::from_matroid(path.display().to_string(), m));
        }
        Err(Error::InvalidProblem("no input given".into()))
    }

    pub fn graph(&self) -> Option<&Graph> {
        self.graph.as_ref()
    }

    /// The cographic matroid for graphs.
    pub fn matroid(&self) -> &BinaryMatroid {
        &self.matroid
    }

    /// Weights from `path`, else those stored in the graph file, else all ones.
    pub fn weights(&self, path: Option<&Path>) -> Result<Vec<f64>> {
        let m = self.matroid.m();
        let w = match path {
            Some(p) => parse_weights(&read(p)?)?,
            None => match &self.graph {
                Some(g) => g.weights_or_unit(),
                None => vec![1.0; m],
            },
        };
        if w.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: w.len(),
            });
        }
        Ok(w)
    }
}

/// One real per non-blank line; `#` starts a comment line.
pub fn parse_weights(text: &str) -> Result<Vec<f64>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| match l.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => Err(Error::Parse(format!("bad weight `{l}`"))),
        })
        .collect()
}
