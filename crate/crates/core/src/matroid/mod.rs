//! Binary matroids given by their cycle space and its orthogonal complement.

mod graph;
mod minor;
pub mod zoo;

pub use graph::Graph;
pub(crate) use graph::parse_pair;

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::budget;
use crate::error::{Error, Result};
use crate::gf2::{by_size_then_bits, check_capacity, Gf2Matrix, RowEchelon, Subset};

/// Which of the two orthogonal spaces an operation refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Cycle,
    Cocycle,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Cycle => Side::Cocycle,
            Side::Cocycle => Side::Cycle,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryMatroid {
    m: usize,
    cycles: RowEchelon,
    cocycles: RowEchelon,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementClasses {
    pub loops: Vec<usize>,
    pub coloops: Vec<usize>,
    pub parallel: Vec<(usize, usize)>,
    pub coparallel: Vec<(usize, usize)>,
}

/// A generator of the cycle ideal, kept symbolic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Generator {
    /// `x_e^2 - 1`
    Square { element: usize },
    /// `1 - prod_{e in D} x_e` for a chordless cocircuit `D`.
    Cocircuit { elements: Vec<usize> },
}

impl BinaryMatroid {
    /// The matroid whose cycles are the row space of `rows`.
    pub fn from_cycle_space(rows: &Gf2Matrix) -> Result<BinaryMatroid> {
        check_capacity(rows.ncols())?;
        let cycles = rows.row_reduce();
        let cocycles = cycles.complement();
        Ok(BinaryMatroid {
            m: rows.ncols(),
            cycles,
            cocycles,
        })
    }

    /// The matroid whose cocycles are the row space of `rows`; this is how a
    /// representation matrix `M` (cycles = solutions of `Mx = 0`) is read.
    pub fn from_cocycle_space(rows: &Gf2Matrix) -> Result<BinaryMatroid> {
        Ok(BinaryMatroid::from_cycle_space(rows)?.dual())
    }

    /// Cycle space spanned by the fundamental circuits of a spanning forest.
    pub fn graphic(g: &Graph) -> BinaryMatroid {
        let forest = g.spanning_forest();
        let adj_edges = incident_edges(g);
        let mut rows = Vec::new();
        for (e, &(u, v)) in g.edges().iter().enumerate() {
            if forest.contains(e) {
                continue;
            }
            let path = forest_path(g, &adj_edges, forest, u, v);
            rows.push(path.with(e));
        }
        BinaryMatroid::from_cycle_space(&Gf2Matrix::new(g.m(), rows).expect("edge count checked"))
            .expect("edge count checked")
    }

    /// Cycle space = cut space, spanned by vertex stars (one star per
    /// component is redundant and dropped by the reduction).
    pub fn cographic(g: &Graph) -> BinaryMatroid {
        let rows = (0..g.n()).map(|v| g.star_of(v)).collect();
        BinaryMatroid::from_cycle_space(&Gf2Matrix::new(g.m(), rows).expect("edge count checked"))
            .expect("edge count checked")
    }

    pub fn dual(&self) -> BinaryMatroid {
        BinaryMatroid {
            m: self.m,
            cycles: self.cocycles.clone(),
            cocycles: self.cycles.clone(),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.m)
    }

    pub fn space(&self, side: Side) -> &RowEchelon {
        match side {
            Side::Cycle => &self.cycles,
            Side::Cocycle => &self.cocycles,
        }
    }

    pub fn cycle_basis(&self) -> &RowEchelon {
        &self.cycles
    }

    pub fn cocycle_basis(&self) -> &RowEchelon {
        &self.cocycles
    }

    pub fn cycle_rank(&self) -> usize {
        self.cycles.rank()
    }

    pub fn cocycle_rank(&self) -> usize {
        self.cocycles.rank()
    }

    pub fn is_cycle(&self, x: Subset) -> bool {
        self.cycles.contains(x)
    }

    pub fn is_cocycle(&self, x: Subset) -> bool {
        self.cocycles.contains(x)
    }

    pub fn same_cycle_space(&self, other: &BinaryMatroid) -> bool {
        self.m == other.m && self.cycles == other.cycles
    }

    fn check_element(&self, e: usize) -> Result<()> {
        if e >= self.m {
            return Err(Error::InvalidElement {
                element: e,
                m: self.m,
            });
        }
        Ok(())
    }

    /// `M \ e`: cycles avoiding `e`, with `e` removed from the ground set.
    pub fn delete(&self, e: usize) -> Result<BinaryMatroid> {
        self.check_element(e)?;
        let kept = self.cycles.restricted_to(self.ground().without(e));
        let rows = kept.rows().iter().map(|r| r.drop_coordinate(e)).collect();
        BinaryMatroid::from_cycle_space(&Gf2Matrix::new(self.m - 1, rows)?)
    }

    /// `M / e`: cycles projected away from `e`.
    pub fn contract(&self, e: usize) -> Result<BinaryMatroid> {
        self.check_element(e)?;
        let rows = self
            .cycles
            .rows()
            .iter()
            .map(|r| r.drop_coordinate(e))
            .collect();
        BinaryMatroid::from_cycle_space(&Gf2Matrix::new(self.m - 1, rows)?)
    }

    /// `M \ delete / contract` for disjoint sets: cycles avoiding `delete`,
    /// restricted to the surviving elements, which keep their relative order.
    pub fn minor(&self, delete: Subset, contract: Subset) -> Result<BinaryMatroid> {
        if !(delete & contract).is_empty() {
            return Err(Error::InvalidProblem(
                "deletion and contraction sets must be disjoint".into(),
            ));
        }
        if let Some(e) = (delete | contract).elements().find(|&e| e >= self.m) {
            return Err(Error::InvalidElement { element: e, m: self.m });
        }
        let keep = self.ground() & !(delete | contract);
        let rows = self
            .cycles
            .restricted_to(self.ground() & !delete)
            .rows()
            .iter()
            .map(|&r| compress(r, keep))
            .collect();
        BinaryMatroid::from_cycle_space(&Gf2Matrix::new(keep.len(), rows)?)
    }

    /// Every member of the chosen space, sorted by (cardinality, bits).
    pub fn members(&self, side: Side) -> Result<Vec<Subset>> {
        let space = self.space(side);
        budget::current().check_space_rank("space enumeration", space.rank())?;
        let mut v: Vec<Subset> = space.span().collect();
        v.sort_by(by_size_then_bits);
        Ok(v)
    }

    pub fn cycles(&self) -> Result<Vec<Subset>> {
        self.members(Side::Cycle)
    }

    pub fn cocycles(&self) -> Result<Vec<Subset>> {
        self.members(Side::Cocycle)
    }

    /// Whether `x` is a minimal nonempty member of the chosen space.
    pub fn is_minimal_member(&self, x: Subset, side: Side) -> bool {
        let space = self.space(side);
        !x.is_empty() && space.contains(x) && space.restricted_to(x).rank() == 1
    }

    fn minimal_members(&self, side: Side, max_size: Option<usize>) -> Result<Vec<Subset>> {
        let cap = max_size.unwrap_or(usize::MAX);
        let space = self.space(side);
        budget::current().check_space_rank("circuit enumeration", space.rank())?;
        let mut v: Vec<Subset> = space
            .span()
            .filter(|x| !x.is_empty() && x.len() <= cap && space.restricted_to(*x).rank() == 1)
            .collect();
        v.sort_by(by_size_then_bits);
        Ok(v)
    }

    pub fn circuits(&self, max_size: Option<usize>) -> Result<Vec<Subset>> {
        self.minimal_members(Side::Cycle, max_size)
    }

    pub fn cocircuits(&self, max_size: Option<usize>) -> Result<Vec<Subset>> {
        self.minimal_members(Side::Cocycle, max_size)
    }

    pub fn classify_elements(&self) -> ElementClasses {
        let mut out = ElementClasses::default();
        for e in 0..self.m {
            if self.is_cycle(Subset::singleton(e)) {
                out.loops.push(e);
            }
            if self.is_cocycle(Subset::singleton(e)) {
                out.coloops.push(e);
            }
        }
        for e in 0..self.m {
            for f in e + 1..self.m {
                let pair = Subset::from_elements([e, f]);
                if self.is_minimal_member(pair, Side::Cycle) {
                    out.parallel.push((e, f));
                }
                if self.is_minimal_member(pair, Side::Cocycle) {
                    out.coparallel.push((e, f));
                }
            }
        }
        out
    }

    /// Chords of the circuit (`side = Cycle`) or cocircuit `c`.
    ///
    /// `e ∉ c` is a chord iff it is not a loop of that side and `c ∪ {e}`
    /// holds a second independent member, which then contains `e`.
    pub fn chords_of(&self, c: Subset, side: Side) -> Result<Vec<usize>> {
        if !self.is_minimal_member(c, side) {
            return Err(Error::NotACircuit(c.bits()));
        }
        let space = self.space(side);
        Ok((0..self.m)
            .filter(|&e| {
                !c.contains(e)
                    && !space.contains(Subset::singleton(e))
                    && space.restricted_to(c.with(e)).rank() == 2
            })
            .collect())
    }

    /// Witnesses `(c1, c2)` with `c1 ∩ c2 = {e}` and `c1 Δ c2 = c` for a chord `e`.
    pub fn chord_witness(&self, c: Subset, e: usize, side: Side) -> Option<(Subset, Subset)> {
        if c.contains(e) || e >= self.m {
            return None;
        }
        let space = self.space(side);
        if space.contains(Subset::singleton(e)) {
            return None;
        }
        let local = space.restricted_to(c.with(e));
        let c1 = *local.rows().iter().find(|r| r.contains(e))?;
        let c2 = c1 ^ c;
        debug_assert_eq!(c1 & c2, Subset::singleton(e));
        Some((c1, c2))
    }

    /// Cocircuits without chords, optionally only those with at least `min_size` elements.
    pub fn chordless_cocircuits(&self, min_size: usize) -> Result<Vec<Subset>> {
        let mut out = Vec::new();
        for d in self.cocircuits(None)? {
            if d.len() >= min_size && self.chords_of(d, Side::Cocycle)?.is_empty() {
                out.push(d);
            }
        }
        Ok(out)
    }

    /// `x_e^2 - 1` for every element and `1 - x^D` for every chordless cocircuit `D`.
    pub fn generating_set(&self) -> Result<Vec<Generator>> {
        let mut gens: Vec<Generator> = (0..self.m)
            .map(|element| Generator::Square { element })
            .collect();
        gens.extend(
            self.chordless_cocircuits(0)?
                .into_iter()
                .map(|d| Generator::Cocircuit { elements: d.to_vec() }),
        );
        Ok(gens)
    }

    /// Whether `target` is isomorphic to some minor of `self`.
    pub fn has_minor(&self, target: &BinaryMatroid) -> Result<bool> {
        Ok(self.find_minor(target)?.is_some())
    }

    /// A deletion/contraction pair producing a copy of `target`.
    pub fn find_minor(&self, target: &BinaryMatroid) -> Result<Option<MinorWitness>> {
        minor::find_minor(self, target)
    }

    pub fn isomorphism(&self, other: &BinaryMatroid) -> Result<Option<Vec<usize>>> {
        minor::isomorphism(self, other)
    }

    /// Rows spanning the cycle space in the matroid file format.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.cycles.rank(), self.m);
        for row in self.cycles.rows() {
            let line: Vec<&str> = (0..self.m)
                .map(|j| if row.contains(j) { "1" } else { "0" })
                .collect();
            writeln!(out, "{}", line.join(" ")).unwrap();
        }
        out
    }

    /// Parses `r m` followed by `r` rows of `m` 0/1 entries. The rows span
    /// the cycle space, or the cocycle space when `side = Cocycle`.
    pub fn parse(text: &str, side: Side) -> Result<BinaryMatroid> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty matroid file".into()))?;
        let (r, m) = parse_pair(header)?;
        check_capacity(m)?;
        let mut dense = Vec::with_capacity(r);
        for _ in 0..r {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {r} matrix rows")))?;
            let row = line
                .split_whitespace()
                .map(|t| match t {
                    "0" => Ok(0u8),
                    "1" => Ok(1u8),
                    other => Err(Error::Parse(format!("entry `{other}` is not 0/1"))),
                })
                .collect::<Result<Vec<u8>>>()?;
            dense.push(row);
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing lines after matrix".into()));
        }
        let matrix = Gf2Matrix::from_dense(m, &dense)?;
        match side {
            Side::Cycle => BinaryMatroid::from_cycle_space(&matrix),
            Side::Cocycle => BinaryMatroid::from_cocycle_space(&matrix),
        }
    }
}

/// `target ≅ M \ deleted / contracted` under `relabel` (minor element `i`
/// maps to target element `relabel[i]`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorWitness {
    pub deleted: Vec<usize>,
    pub contracted: Vec<usize>,
    pub relabel: Vec<usize>,
}

/// Packs the bits of `x` at the positions of `keep` into the low bits.
pub(crate) fn compress(x: Subset, keep: Subset) -> Subset {
    Subset::from_elements(
        keep.elements()
            .enumerate()
            .filter(|&(_, e)| x.contains(e))
            .map(|(i, _)| i),
    )
}

fn incident_edges(g: &Graph) -> Vec<Vec<(usize, usize)>> {
    let mut inc = vec![Vec::new(); g.n()];
    for (i, &(u, v)) in g.edges().iter().enumerate() {
        inc[u].push((v, i));
        inc[v].push((u, i));
    }
    inc
}

/// Edges of the unique forest path between `u` and `v`.
fn forest_path(g: &Graph, inc: &[Vec<(usize, usize)>], forest: Subset, u: usize, v: usize) -> Subset {
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; g.n()];
    let mut seen = vec![false; g.n()];
    seen[u] = true;
    let mut stack = vec![u];
    while let Some(x) = stack.pop() {
        if x == v {
            break;
        }
        for &(y, e) in &inc[x] {
            if forest.contains(e) && !seen[y] {
                seen[y] = true;
                parent[y] = Some((x, e));
                stack.push(y);
            }
        }
    }
    let mut path = Subset::EMPTY;
    let mut x = v;
    while let Some((p, e)) = parent[x] {
        path = path.with(e);
        x = p;
    }
    path
}
