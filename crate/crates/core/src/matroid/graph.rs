//! Undirected graphs on vertices `0..n`; edge `i` is ground element `i` of
//! the graphic and cographic matroids.

use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::budget;
use crate::error::{Error, Result};
use crate::gf2::{check_capacity, Subset};

const MAX_VERTICES: usize = 64;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    weights: Option<Vec<f64>>,
    allow_parallel: bool,
}

impl Graph {
    /// A simple graph. Self-loops and repeated edges are rejected.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        Graph::build(n, edges, false)
    }

    /// Like [`Graph::new`] but repeated vertex pairs are kept as parallel edges.
    pub fn with_parallel_edges(n: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        Graph::build(n, edges, true)
    }

    fn build(n: usize, edges: Vec<(usize, usize)>, allow_parallel: bool) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::CapacityExceeded {
                m: n,
                max: MAX_VERTICES,
            });
        }
        check_capacity(edges.len())?;
        let mut seen = HashSet::new();
        let mut normalized = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) uses a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            let e = (u.min(v), u.max(v));
            if !seen.insert(e) && !allow_parallel {
                return Err(Error::InvalidGraph(format!(
                    "repeated edge ({},{}); parallel edges must be enabled explicitly",
                    e.0, e.1
                )));
            }
            normalized.push(e);
        }
        Ok(Graph {
            n,
            edges: normalized,
            weights: None,
            allow_parallel,
        })
    }

    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Graph> {
        if weights.len() != self.edges.len() {
            return Err(Error::DimensionMismatch {
                expected: self.edges.len(),
                got: weights.len(),
            });
        }
        if let Some(w) = weights.iter().find(|w| !w.is_finite()) {
            return Err(Error::InvalidGraph(format!("weight {w} is not finite")));
        }
        self.weights = Some(weights);
        Ok(self)
    }

    pub fn complete(n: usize) -> Graph {
        let edges = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        Graph::new(n, edges).expect("complete graph is valid")
    }

    /// The circuit `C_n` with edges `(i, i+1 mod n)`.
    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "a circuit needs at least 3 vertices");
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)).collect()).expect("cycle is valid")
    }

    /// The wheel `W_n`: rim `C_n` on `0..n` plus hub `n`.
    pub fn wheel(n: usize) -> Graph {
        let mut edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        edges.extend((0..n).map(|i| (i, n)));
        Graph::new(n + 1, edges).expect("wheel is valid")
    }

    pub fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i)).collect()).expect("path is valid")
    }

    pub fn star(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (0, i)).collect()).expect("star is valid")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        let edges = (0..a)
            .flat_map(|i| (0..b).map(move |j| (i, a + j)))
            .collect();
        Graph::new(a + b, edges).expect("complete bipartite graph is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn allows_parallel(&self) -> bool {
        self.allow_parallel
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    /// Edge weights, defaulting to one per edge.
    pub fn weights_or_unit(&self) -> Vec<f64> {
        self.weights
            .clone()
            .unwrap_or_else(|| vec![1.0; self.edges.len()])
    }

    /// Vertex adjacency as bit masks, ignoring edge multiplicity.
    pub fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        adj
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let key = (u.min(v), u.max(v));
        self.edges.iter().position(|&e| e == key)
    }

    /// Edges of the star of vertex `v`.
    pub fn star_of(&self, v: usize) -> Subset {
        Subset::from_elements(
            self.edges
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a == v || b == v)
                .map(|(i, _)| i),
        )
    }

    /// Vertices of odd degree in the edge set `f`: the `T` for which `f` is a `T`-join.
    pub fn odd_vertices(&self, f: Subset) -> Subset {
        let mut t = 0u64;
        for e in f.elements() {
            let (u, v) = self.edges[e];
            t ^= (1 << u) ^ (1 << v);
        }
        Subset(t)
    }

    /// Component label per vertex.
    pub fn components(&self) -> Vec<usize> {
        let adj = self.adjacency();
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for v in Subset(adj[u]).elements() {
                    if label[v] == usize::MAX {
                        label[v] = next;
                        queue.push_back(v);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |c| c + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Edges of a BFS spanning forest.
    pub fn spanning_forest(&self) -> Subset {
        let mut parent_edge = vec![None; self.n];
        let mut seen = vec![false; self.n];
        let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            incident[u].push((v, i));
            incident[v].push((u, i));
        }
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(v, e) in &incident[u] {
                    if !seen[v] {
                        seen[v] = true;
                        parent_edge[v] = Some(e);
                        queue.push_back(v);
                    }
                }
            }
        }
        Subset::from_elements(parent_edge.into_iter().flatten())
    }

    pub fn distances_from(&self, s: usize) -> Vec<Option<usize>> {
        let adj = self.adjacency();
        let mut dist = vec![None; self.n];
        dist[s] = Some(0);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for v in Subset(adj[u]).elements() {
                if dist[v].is_none() {
                    dist[v] = Some(d + 1);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    fn eccentricity(&self, s: usize) -> Option<usize> {
        self.distances_from(s)
            .into_iter()
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }

    /// `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        (0..self.n).try_fold(0, |acc, s| self.eccentricity(s).map(|e| acc.max(e)))
    }

    /// `None` when disconnected.
    pub fn radius(&self) -> Option<usize> {
        (0..self.n).map(|s| self.eccentricity(s)).min().flatten()
    }

    /// An induced (chordless) circuit with at least `min_len` vertices, as a
    /// closed vertex sequence, if one exists. Longest witnesses are not
    /// preferred; the first found is returned.
    pub fn chordless_circuit_at_least(&self, min_len: usize) -> Option<Vec<usize>> {
        let adj = self.adjacency();
        let mut path = Vec::with_capacity(self.n);
        for s in 0..self.n {
            path.clear();
            path.push(s);
            if let Some(c) = extend_induced(&adj, s, &mut path, min_len.max(3)) {
                return Some(c);
            }
        }
        None
    }

    /// Length of the longest chordless circuit (0 for forests).
    pub fn longest_chordless_circuit(&self) -> usize {
        (3..=self.n)
            .rev()
            .find(|&l| self.chordless_circuit_at_least(l).is_some())
            .unwrap_or(0)
    }

    /// Whether `K_5` is a minor of the graph. Exhaustive branch and bound:
    /// vertices of degree at most 3 are contracted into a neighbour (they
    /// cannot be a branch set alone), otherwise an edge is deleted or
    /// contracted.
    pub fn has_k5_minor(&self) -> Result<bool> {
        let limit = budget::current().graph_vertices;
        if self.n > limit {
            return Err(Error::BudgetExceeded {
                what: "K5 minor search (vertices)",
                needed: self.n as u128,
                limit: limit as u128,
            });
        }
        let mut memo = HashSet::new();
        Ok(k5_search(self.adjacency(), &mut memo))
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            match &self.weights {
                Some(w) => writeln!(out, "{u} {v} {}", w[i]).unwrap(),
                None => writeln!(out, "{u} {v}").unwrap(),
            }
        }
        out
    }

    /// Parses `n m` followed by `m` lines `u v [w]`. Blank lines and lines
    /// starting with `#` are skipped. Weights must be given on all edges or
    /// none. Repeated pairs are accepted as parallel edges.
    pub fn parse(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty graph file".into()))?;
        let (n, m) = parse_pair(header)?;
        let mut edges = Vec::with_capacity(m);
        let mut weights = Vec::with_capacity(m);
        for _ in 0..m {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {m} edge lines")))?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 && fields.len() != 3 {
                return Err(Error::Parse(format!("bad edge line `{line}`")));
            }
            let u = parse_usize(fields[0])?;
            let v = parse_usize(fields[1])?;
            edges.push((u, v));
            if let Some(w) = fields.get(2) {
                weights.push(
                    w.parse::<f64>()
                        .map_err(|_| Error::Parse(format!("bad weight `{w}`")))?,
                );
            }
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing lines after edge list".into()));
        }
        if !weights.is_empty() && weights.len() != m {
            return Err(Error::Parse("weights must be given for all edges or none".into()));
        }
        let mut seen = HashSet::new();
        let parallel = edges
            .iter()
            .any(|&(u, v)| !seen.insert((u.min(v), u.max(v))));
        let g = Graph::build(n, edges, parallel)?;
        if weights.is_empty() {
            Ok(g)
        } else {
            g.with_weights(weights)
        }
    }
}

pub(crate) fn parse_usize(s: &str) -> Result<usize> {
    s.parse()
        .map_err(|_| Error::Parse(format!("expected a non-negative integer, got `{s}`")))
}

pub(crate) fn parse_pair(line: &str) -> Result<(usize, usize)> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse(format!("expected two integers, got `{line}`")));
    }
    Ok((parse_usize(fields[0])?, parse_usize(fields[1])?))
}

/// Grows induced paths from `start` through vertices larger than `start`.
fn extend_induced(adj: &[u64], start: usize, path: &mut Vec<usize>, min_len: usize) -> Option<Vec<usize>> {
    let last = *path.last().unwrap();
    let interior: u64 = path[1..]
        .iter()
        .filter(|&&v| v != last)
        .fold(0, |acc, &v| acc | (1 << v));
    let on_path: u64 = path.iter().fold(0, |acc, &v| acc | (1 << v));
    for w in Subset(adj[last]).elements() {
        if w <= start || on_path & (1 << w) != 0 || adj[w] & interior != 0 {
            continue;
        }
        let closes = path.len() >= 2 && adj[w] & (1 << start) != 0;
        if closes {
            if path.len() + 1 >= min_len {
                let mut cycle = path.clone();
                cycle.push(w);
                return Some(cycle);
            }
            continue;
        }
        path.push(w);
        if let Some(c) = extend_induced(adj, start, path, min_len) {
            return Some(c);
        }
        path.pop();
    }
    None
}

fn k5_search(mut adj: Vec<u64>, memo: &mut HashSet<Vec<u64>>) -> bool {
    loop {
        let n = adj.len();
        let edges: u32 = adj.iter().map(|a| a.count_ones()).sum::<u32>() / 2;
        if n < 5 || edges < 10 {
            return false;
        }
        let (v, deg) = min_degree(&adj);
        match deg {
            0 | 1 => adj = remove_vertex(&adj, v),
            2 => {
                let u = adj[v].trailing_zeros() as usize;
                adj = contract(&adj, v, u);
            }
            _ => break,
        }
    }
    if has_clique(&adj, 0, 0, 5) {
        return true;
    }
    if !memo.insert(adj.clone()) {
        return false;
    }
    let (v, deg) = min_degree(&adj);
    if deg == 3 {
        return Subset(adj[v])
            .elements()
            .any(|u| k5_search(contract(&adj, v, u), memo));
    }
    let u = adj[v].trailing_zeros() as usize;
    if k5_search(contract(&adj, v, u), memo) {
        return true;
    }
    let mut deleted = adj.clone();
    deleted[u] &= !(1 << v);
    deleted[v] &= !(1 << u);
    k5_search(deleted, memo)
}

fn min_degree(adj: &[u64]) -> (usize, u32) {
    adj.iter()
        .enumerate()
        .map(|(v, a)| (v, a.count_ones()))
        .min_by_key(|&(v, d)| (d, v))
        .unwrap()
}

fn remove_vertex(adj: &[u64], v: usize) -> Vec<u64> {
    adj.iter()
        .enumerate()
        .filter(|&(u, _)| u != v)
        .map(|(_, &a)| Subset(a).drop_coordinate(v).0)
        .collect()
}

/// Merges `v` into `u`.
fn contract(adj: &[u64], v: usize, u: usize) -> Vec<u64> {
    let mut merged = adj.to_vec();
    let nv = merged[v] & !(1 << u);
    merged[u] = (merged[u] | nv) & !(1 << v) & !(1 << u);
    for w in Subset(nv).elements() {
        merged[w] |= 1 << u;
    }
    remove_vertex(&merged, v)
}

fn has_clique(adj: &[u64], candidates_from: usize, chosen: u64, size: u32) -> bool {
    if chosen.count_ones() == size {
        return true;
    }
    let common = Subset(chosen)
        .elements()
        .fold(Subset::full(adj.len()).0, |acc, v| acc & adj[v]);
    let need = size - chosen.count_ones();
    if (common >> candidates_from).count_ones() < need {
        return false;
    }
    (candidates_from..adj.len())
        .filter(|&v| common & (1 << v) != 0 && adj[v].count_ones() >= size - 1)
        .any(|v| has_clique(adj, v + 1, chosen | (1 << v), size))
}
