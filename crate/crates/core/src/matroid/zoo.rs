//! Named graphs and matroids.
//!
//! Graph names: `K<n>`, `C<n>`, `W<n>` (rim of n vertices plus a hub),
//! `Path<n>`, `Star<n>` (n leaves), `K<a>,<b>`, `K5-e`, `Prism`,
//! `Octahedron`, `Petersen`. A graph used as a matroid means its cographic
//! matroid, whose cycles are the cuts.
//!
//! Matroid names: `F7`, `F7*`, `R10`, `P<r>`, `P<r>*`, and `M(<graph>)` /
//! `M*(<graph>)` for graphic and cographic matroids of any graph above.

use crate::error::{Error, Result};
use crate::gf2::{Gf2Matrix, Subset};

use super::{BinaryMatroid, Graph};

#[derive(Clone, Debug)]
pub enum ZooEntry {
    Graph(Graph),
    Matroid(BinaryMatroid),
}

impl ZooEntry {
    pub fn matroid(&self) -> BinaryMatroid {
        match self {
            ZooEntry::Graph(g) => BinaryMatroid::cographic(g),
            ZooEntry::Matroid(m) => m.clone(),
        }
    }

    pub fn graph(&self) -> Option<&Graph> {
        match self {
            ZooEntry::Graph(g) => Some(g),
            ZooEntry::Matroid(_) => None,
        }
    }
}

const CATALOG: &[&str] = &[
    "K3", "K4", "K5", "K6", "K7", "K8", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "W3", "W4",
    "W5", "W6", "W7", "W8", "Path5", "Star5", "K2,3", "K3,3", "K5-e", "Prism", "Octahedron",
    "Petersen", "F7", "F7*", "R10", "P2", "P2*", "P3", "P3*", "P4", "P4*", "M(K4)", "M(K5)",
    "M(K6)", "M(K3,3)", "M(W5)",
];

/// Names covered by the zoo-wide checks.
pub fn catalog() -> &'static [&'static str] {
    CATALOG
}

pub fn lookup(name: &str) -> Result<ZooEntry> {
    let name = name.trim();
    if let Some(inner) = strip_wrapper(name, "M*(") {
        return Ok(ZooEntry::Matroid(BinaryMatroid::cographic(&graph(inner)?)));
    }
    if let Some(inner) = strip_wrapper(name, "M(") {
        return Ok(ZooEntry::Matroid(BinaryMatroid::graphic(&graph(inner)?)));
    }
    match name {
        "F7" => return Ok(ZooEntry::Matroid(projective(3, false))),
        "F7*" => return Ok(ZooEntry::Matroid(projective(3, true))),
        "R10" => return Ok(ZooEntry::Matroid(r10())),
        _ => {}
    }
    if let Some(rest) = name.strip_prefix('P') {
        let (digits, dual) = match rest.strip_suffix('*') {
            Some(d) => (d, true),
            None => (rest, false),
        };
        if let Ok(r) = digits.parse::<usize>() {
            if (1..=6).contains(&r) {
                return Ok(ZooEntry::Matroid(projective(r, dual)));
            }
            return Err(Error::UnknownZoo(name.to_string()));
        }
    }
    graph(name).map(ZooEntry::Graph)
}

pub fn matroid(name: &str) -> Result<BinaryMatroid> {
    Ok(lookup(name)?.matroid())
}

pub fn graph(name: &str) -> Result<Graph> {
    let unknown = || Error::UnknownZoo(name.to_string());
    let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
    let g = match name {
        "Prism" => Graph::new(
            6,
            vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        )?,
        "Octahedron" => {
            let edges = (0..6)
                .flat_map(|u| (u + 1..6).map(move |v| (u, v)))
                .filter(|&(u, v)| v != u + 3)
                .collect();
            Graph::new(6, edges)?
        }
        "Petersen" => {
            let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
            edges.extend((0..5).map(|i| (i, i + 5)));
            edges.extend((0..5).map(|i| (5 + i, 5 + (i + 2) % 5)));
            Graph::new(10, edges)?
        }
        "K5-e" => {
            let edges = Graph::complete(5).edges()[1..].to_vec();
            Graph::new(5, edges)?
        }
        _ => {
            if let Some(rest) = name.strip_prefix("Path") {
                let n = num(rest)?;
                check_range(name, n, 1, 64)?;
                Graph::path(n)
            } else if let Some(rest) = name.strip_prefix("Star") {
                let n = num(rest)?;
                check_range(name, n, 1, 63)?;
                Graph::star(n)
            } else if let Some(rest) = name.strip_prefix('K') {
                if let Some((a, b)) = rest.split_once(',') {
                    let (a, b) = (num(a)?, num(b)?);
                    check_range(name, a * b, 1, 64)?;
                    Graph::complete_bipartite(a, b)
                } else {
                    let n = num(rest)?;
                    check_range(name, n, 1, 11)?;
                    Graph::complete(n)
                }
            } else if let Some(rest) = name.strip_prefix('C') {
                let n = num(rest)?;
                check_range(name, n, 3, 64)?;
                Graph::cycle(n)
            } else if let Some(rest) = name.strip_prefix('W') {
                let n = num(rest)?;
                check_range(name, n, 3, 32)?;
                Graph::wheel(n)
            } else {
                return Err(unknown());
            }
        }
    };
    Ok(g)
}

fn check_range(name: &str, v: usize, lo: usize, hi: usize) -> Result<()> {
    if v < lo || v > hi {
        return Err(Error::UnknownZoo(name.to_string()));
    }
    Ok(())
}

fn strip_wrapper<'a>(name: &'a str, prefix: &str) -> Option<&'a str> {
    name.strip_prefix(prefix)?.strip_suffix(')')
}

/// The `r × (2^r - 1)` matrix whose columns are all nonzero vectors of GF(2)^r.
pub fn projective_matrix(r: usize) -> Gf2Matrix {
    let ncols = (1usize << r) - 1;
    let rows = (0..r)
        .map(|i| Subset::from_elements((0..ncols).filter(|&j| (j + 1) >> i & 1 == 1)))
        .collect();
    Gf2Matrix::new(ncols, rows).expect("r ≤ 6")
}

/// `P_r` has the projective matrix as cocycle rows; `P_r*` as cycle rows.
fn projective(r: usize, dual: bool) -> BinaryMatroid {
    let m = projective_matrix(r);
    let out = if dual {
        BinaryMatroid::from_cycle_space(&m)
    } else {
        BinaryMatroid::from_cocycle_space(&m)
    };
    out.expect("r ≤ 6")
}

/// Columns in the order 34 35 45 23 24 25 13 14 15 12.
pub const R10_COLUMNS: [(usize, usize); 10] = [
    (3, 4),
    (3, 5),
    (4, 5),
    (2, 3),
    (2, 4),
    (2, 5),
    (1, 3),
    (1, 4),
    (1, 5),
    (1, 2),
];

pub fn r10_matrix() -> Gf2Matrix {
    let dense = [
        [1, 1, 1, 1, 1, 1, 0, 0, 0, 0],
        [1, 1, 1, 0, 0, 0, 1, 1, 1, 0],
        [1, 0, 0, 1, 1, 0, 1, 1, 0, 1],
        [0, 1, 0, 1, 0, 1, 1, 0, 1, 1],
        [0, 0, 1, 0, 1, 1, 0, 1, 1, 1],
    ];
    let dense: Vec<Vec<u8>> = dense.iter().map(|r| r.to_vec()).collect();
    Gf2Matrix::from_dense(10, &dense).expect("fixed matrix")
}

/// Cycles are the solutions of the matrix, i.e. the even cycles of `K_5`.
fn r10() -> BinaryMatroid {
    BinaryMatroid::from_cocycle_space(&r10_matrix()).expect("fixed matrix")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        for name in catalog() {
            lookup(name).unwrap();
        }
        for bad in ["", "K", "Q3", "C2", "P0", "M(F7)", "K12"] {
            assert!(lookup(bad).is_err(), "{bad}");
        }
        assert_eq!(graph("K3,3").unwrap().m(), 9);
        assert_eq!(graph("Petersen").unwrap().m(), 15);
        assert_eq!(graph("Octahedron").unwrap().m(), 12);
        assert_eq!(graph("W5").unwrap().m(), 10);
        assert_eq!(graph("K5-e").unwrap().m(), 9);
    }

    #[test]
    fn fano_pair() {
        let f7 = matroid("F7").unwrap();
        assert_eq!((f7.m(), f7.cycle_rank(), f7.cocycle_rank()), (7, 4, 3));
        let f7s = matroid("F7*").unwrap();
        assert!(f7s.same_cycle_space(&f7.dual()));
        // circuits of F7 are the 7 lines (size 3) and their 7 complements (size 4)
        let sizes: Vec<usize> = f7.circuits(None).unwrap().iter().map(|c| c.len()).collect();
        assert_eq!(sizes.iter().filter(|&&s| s == 3).count(), 7);
        assert_eq!(sizes.iter().filter(|&&s| s == 4).count(), 7);
        assert_eq!(sizes.len(), 14);
    }

    #[test]
    fn r10_cycles_are_even_eulerian_subgraphs() {
        let k5 = Graph::complete(5);
        let r10 = matroid("R10").unwrap();
        let label = |e: usize| {
            let (u, v) = R10_COLUMNS[e];
            k5.edge_index(u - 1, v - 1).unwrap()
        };
        for bits in 0..1u64 << 10 {
            let x = Subset(bits);
            let edges = Subset::from_elements(x.elements().map(label));
            let even_cycle = k5.odd_vertices(edges).is_empty() && x.len().is_multiple_of(2);
            assert_eq!(r10.is_cycle(x), even_cycle);
        }
        assert_eq!(r10.cycle_rank(), 5);
        let iso = r10.isomorphism(&r10.dual()).unwrap();
        assert!(iso.is_some());
    }

    #[test]
    fn projective_cocycle_sizes() {
        for r in 1..=4 {
            let p = matroid(&format!("P{r}")).unwrap();
            assert_eq!(p.m(), (1 << r) - 1);
            assert_eq!(p.cocycle_rank(), r);
            for d in p.cocycles().unwrap().into_iter().skip(1) {
                assert_eq!(d.len(), 1 << (r - 1));
            }
        }
    }
}
