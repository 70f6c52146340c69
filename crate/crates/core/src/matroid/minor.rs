//! Exhaustive minor and isomorphism search.

use std::collections::{HashMap, HashSet};

use itertools::Itertools;

use crate::budget;
use crate::error::{Error, Result};
use crate::gf2::Subset;

use super::{BinaryMatroid, MinorWitness, Side};

/// Precomputed circuit data for the matroid being matched against.
struct Profile {
    circuits: Vec<Subset>,
    set: HashSet<Subset>,
    histogram: Vec<usize>,
    signatures: Vec<Vec<usize>>,
}

impl Profile {
    fn new(m: &BinaryMatroid) -> Result<Profile> {
        let circuits = m.circuits(None)?;
        let mut histogram = vec![0; m.m() + 1];
        let mut signatures = vec![Vec::new(); m.m()];
        for c in &circuits {
            histogram[c.len()] += 1;
            for e in c.elements() {
                signatures[e].push(c.len());
            }
        }
        for s in &mut signatures {
            s.sort_unstable();
        }
        let set = circuits.iter().copied().collect();
        Ok(Profile {
            circuits,
            set,
            histogram,
            signatures,
        })
    }
}

pub(super) fn isomorphism(a: &BinaryMatroid, b: &BinaryMatroid) -> Result<Option<Vec<usize>>> {
    if a.m() != b.m() || a.cycle_rank() != b.cycle_rank() {
        return Ok(None);
    }
    let pa = Profile::new(a)?;
    let pb = Profile::new(b)?;
    Ok(match_profiles(&pa, &pb))
}

/// Ground-set bijection `perm` with `perm[e]` the image of `e`, mapping the
/// circuits of `a` onto those of `b`.
fn match_profiles(a: &Profile, b: &Profile) -> Option<Vec<usize>> {
    if a.histogram != b.histogram || a.signatures.len() != b.signatures.len() {
        return None;
    }
    let m = a.signatures.len();
    let mut sa: Vec<&Vec<usize>> = a.signatures.iter().collect();
    let mut sb: Vec<&Vec<usize>> = b.signatures.iter().collect();
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }

    let order = search_order(a, m);
    let mut position = vec![0; m];
    for (i, &e) in order.iter().enumerate() {
        position[e] = i;
    }
    let mut closing: Vec<Vec<Subset>> = vec![Vec::new(); m];
    for &c in &a.circuits {
        if let Some(last) = c.elements().map(|e| position[e]).max() {
            closing[last].push(c);
        }
    }
    let candidates: Vec<Vec<usize>> = order
        .iter()
        .map(|&e| (0..m).filter(|&f| b.signatures[f] == a.signatures[e]).collect())
        .collect();

    let mut perm = vec![usize::MAX; m];
    let mut used = vec![false; m];
    if extend(0, &order, &candidates, &closing, b, &mut perm, &mut used) {
        Some(perm)
    } else {
        None
    }
}

/// Rarest signature first, then elements sharing the most circuits with those already placed.
fn search_order(a: &Profile, m: usize) -> Vec<usize> {
    let mut class_size: HashMap<&Vec<usize>, usize> = HashMap::new();
    for s in &a.signatures {
        *class_size.entry(s).or_default() += 1;
    }
    let mut placed = Subset::EMPTY;
    let mut order = Vec::with_capacity(m);
    while order.len() < m {
        let next = (0..m)
            .filter(|&e| !placed.contains(e))
            .max_by_key(|&e| {
                let shared = a
                    .circuits
                    .iter()
                    .filter(|c| c.contains(e) && !(**c & placed).is_empty())
                    .count();
                (shared, std::cmp::Reverse(class_size[&a.signatures[e]]), std::cmp::Reverse(e))
            })
            .expect("unplaced element exists");
        placed = placed.with(next);
        order.push(next);
    }
    order
}

fn extend(
    step: usize,
    order: &[usize],
    candidates: &[Vec<usize>],
    closing: &[Vec<Subset>],
    b: &Profile,
    perm: &mut [usize],
    used: &mut [bool],
) -> bool {
    if step == order.len() {
        return true;
    }
    let e = order[step];
    for &f in &candidates[step] {
        if used[f] {
            continue;
        }
        perm[e] = f;
        if closing[step].iter().all(|c| b.set.contains(&c.permute(perm))) {
            used[f] = true;
            if extend(step + 1, order, candidates, closing, b, perm, used) {
                return true;
            }
            used[f] = false;
        }
    }
    perm[e] = usize::MAX;
    false
}

pub(super) fn find_minor(host: &BinaryMatroid, target: &BinaryMatroid) -> Result<Option<MinorWitness>> {
    if target.m() > host.m() {
        return Ok(None);
    }
    let s = host.m() - target.m();
    let limit = budget::current().minor_removals;
    if s > limit {
        return Err(Error::BudgetExceeded {
            what: "minor search removals",
            needed: s as u128,
            limit: limit as u128,
        });
    }
    // every minor is M \ X / Y with Y independent, so |Y| is the rank drop
    let host_rank = host.cocycle_rank();
    let target_rank = target.cocycle_rank();
    if target_rank > host_rank || s < host_rank - target_rank {
        return Ok(None);
    }
    let ncontract = host_rank - target_rank;
    let profile = Profile::new(target)?;
    let mut seen: HashSet<Vec<Subset>> = HashSet::new();
    for contract in (0..host.m()).combinations(ncontract) {
        let contract = Subset::from_elements(contract);
        if host.cycle_basis().restricted_to(contract).rank() != 0 {
            continue;
        }
        let rest: Vec<usize> = (0..host.m()).filter(|&e| !contract.contains(e)).collect();
        for delete in rest.into_iter().combinations(s - ncontract) {
            let delete = Subset::from_elements(delete);
            let minor = host.minor(delete, contract)?;
            if minor.cycle_rank() != target.cycle_rank() {
                continue;
            }
            if !seen.insert(minor.space(Side::Cycle).rows().to_vec()) {
                continue;
            }
            let candidate = Profile::new(&minor)?;
            if let Some(relabel) = match_profiles(&candidate, &profile) {
                return Ok(Some(MinorWitness {
                    deleted: delete.to_vec(),
                    contracted: contract.to_vec(),
                    relabel,
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use itertools::Itertools;

    use super::super::{zoo, Graph};
    use super::*;

    fn apply(m: &BinaryMatroid, perm: &[usize]) -> BinaryMatroid {
        let rows = m.cycle_basis().rows().iter().map(|r| r.permute(perm)).collect();
        BinaryMatroid::from_cycle_space(&crate::gf2::Gf2Matrix::new(m.m(), rows).unwrap()).unwrap()
    }

    /// Tries every permutation of the ground set.
    fn brute_isomorphic(a: &BinaryMatroid, b: &BinaryMatroid) -> bool {
        a.m() == b.m()
            && (0..a.m())
                .permutations(a.m())
                .any(|p| apply(a, &p).same_cycle_space(b))
    }

    #[test]
    fn isomorphism_witness_is_valid() {
        for name in ["F7", "R10", "K4", "M(K3,3)", "P4*"] {
            let m = zoo::matroid(name).unwrap();
            let shuffled: Vec<usize> = (0..m.m()).rev().collect();
            let other = apply(&m, &shuffled);
            let perm = m.isomorphism(&other).unwrap().expect(name);
            assert!(apply(&m, &perm).same_cycle_space(&other), "{name}");
        }
    }

    #[test]
    fn isomorphism_matches_permutation_oracle() {
        let names = ["K4", "M(K4)", "W3", "C6", "K2,3", "M(K2,3)", "P3", "F7*", "M(C7)"];
        for a in names {
            for b in names {
                let (ma, mb) = (zoo::matroid(a).unwrap(), zoo::matroid(b).unwrap());
                if ma.m() != mb.m() {
                    continue;
                }
                let fast = ma.isomorphism(&mb).unwrap().is_some();
                assert_eq!(fast, brute_isomorphic(&ma, &mb), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn minor_witness_reproduces_target() {
        let host = zoo::matroid("M(K5)").unwrap();
        let target = zoo::matroid("M(K4)").unwrap();
        let w = host.find_minor(&target).unwrap().unwrap();
        let minor = host
            .minor(Subset::from_elements(w.deleted.clone()), Subset::from_elements(w.contracted.clone()))
            .unwrap();
        assert!(apply(&minor, &w.relabel).same_cycle_space(&target));
    }

    #[test]
    fn known_minors() {
        let k4 = zoo::matroid("M(K4)").unwrap();
        assert!(k4.has_minor(&k4).unwrap());
        assert!(!k4.has_minor(&zoo::matroid("F7*").unwrap()).unwrap());
        let ck5 = zoo::matroid("K5").unwrap();
        assert!(ck5.has_minor(&zoo::matroid("M(K5)").unwrap().dual()).unwrap());
        let f7 = zoo::matroid("F7").unwrap();
        assert!(f7.has_minor(&k4).unwrap());
        assert!(!f7.has_minor(&zoo::matroid("F7*").unwrap()).unwrap());
        // graphic matroids are closed under minors
        let w5 = BinaryMatroid::graphic(&Graph::wheel(5));
        assert!(!w5.has_minor(&zoo::matroid("F7").unwrap()).unwrap());
        assert!(w5.has_minor(&k4).unwrap());
        let p4 = zoo::matroid("P4").unwrap();
        assert!(p4.has_minor(&f7).unwrap());
    }

    /// Every deletion/contraction split of every removal set.
    fn brute_has_minor(host: &BinaryMatroid, target: &BinaryMatroid) -> bool {
        let s = host.m() - target.m();
        (0..host.m()).combinations(s).any(|removed| {
            let removed = Subset::from_elements(removed);
            (0..1u64 << s).any(|bits| {
                let contract = Subset::from_elements(
                    removed.elements().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, e)| e),
                );
                let minor = host.minor(removed & !contract, contract).unwrap();
                brute_isomorphic(&minor, target)
            })
        })
    }

    #[test]
    fn standard_form_search_matches_exhaustive_search() {
        let hosts = ["M(K4)", "K4", "W3", "F7", "F7*", "C6", "K2,3"];
        let targets = ["M(K4)", "F7", "F7*", "C5", "M(C5)", "K2,3", "M(K2,3)"];
        for h in hosts {
            for t in targets {
                let (mh, mt) = (zoo::matroid(h).unwrap(), zoo::matroid(t).unwrap());
                if mt.m() > mh.m() {
                    continue;
                }
                assert_eq!(mh.has_minor(&mt).unwrap(), brute_has_minor(&mh, &mt), "{h} ≥ {t}");
            }
        }
    }

    #[test]
    fn budget_guard() {
        let big = zoo::matroid("K8").unwrap();
        let err = big.has_minor(&zoo::matroid("F7").unwrap()).unwrap_err();
        assert!(err.is_budget());
    }
}
