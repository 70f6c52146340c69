//! Acceptance suite: one PASS/FAIL line per criterion. Expected values come
//! from oracles written here (vertex-bipartition cut enumeration, syndrome
//! and span enumeration over GF(2), explicit outer products), not from the
//! library routines under test.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use faer::{Mat, Side as EigSide};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thetacut::analysis::{th1_exact_graph_cut_ideal, Verdict};
use thetacut::basis::RepresentativeBasis;
use thetacut::matroid::zoo;
use thetacut::moment::{MomentTemplate, Reduction};
use thetacut::sdp::{gw_bound, maxcut_bound, q2_bound, theta_bound, Sense, SolverSettings};
use thetacut::{BinaryMatroid, Gf2Matrix, Graph, Subset};

const TOL: f64 = 1e-4;

fn settings() -> SolverSettings {
    SolverSettings::with_tolerance(1e-6)
}

// ---------- oracles ----------

/// Maximum cut weight over all vertex bipartitions.
fn brute_cut(g: &Graph, w: &[f64]) -> f64 {
    cut_values(g, w).into_iter().fold(f64::NEG_INFINITY, f64::max)
}

/// Cut weight of every bipartition, the last vertex fixed to one side.
fn cut_values(g: &Graph, w: &[f64]) -> Vec<f64> {
    if g.n() == 0 {
        return vec![0.0];
    }
    (0..1u64 << (g.n() - 1))
        .map(|s| {
            g.edges()
                .iter()
                .zip(w)
                .filter(|((u, v), _)| (s >> u & 1) != (s >> v & 1))
                .map(|(_, w)| w)
                .sum()
        })
        .collect()
}

fn weights(rng: &mut ChaCha8Rng, m: usize) -> Vec<f64> {
    (0..m).map(|_| rng.gen_range(-5i32..=5) as f64).collect()
}

/// All members of the span of `rows`.
fn span(rows: &[u64]) -> HashSet<u64> {
    let mut out = HashSet::from([0u64]);
    for &r in rows {
        let shifted: Vec<u64> = out.iter().map(|x| x ^ r).collect();
        out.extend(shifted);
    }
    out
}

/// Every vector of length `m` orthogonal to all of `rows`.
fn orthogonal(rows: &[u64], m: usize) -> HashSet<u64> {
    (0..1u64 << m)
        .filter(|x| rows.iter().all(|r| (x & r).count_ones() % 2 == 0))
        .collect()
}

fn syndrome(x: u64, rows: &[u64]) -> u64 {
    rows.iter()
        .enumerate()
        .fold(0, |acc, (i, r)| acc | (((x & r).count_ones() as u64) & 1) << i)
}

fn rows_of(m: &BinaryMatroid) -> Vec<u64> {
    m.cycle_basis().rows().iter().map(|r| r.bits()).collect()
}

fn eigenvalues(a: &Mat<f64>) -> Vec<f64> {
    a.self_adjoint_eigenvalues(EigSide::Lower).expect("symmetric")
}

fn radius(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in g.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    (0..n)
        .map(|s| {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
            dist.into_iter().max()
        })
        .collect::<Option<Vec<usize>>>()
        .and_then(|e| e.into_iter().filter(|&d| d != usize::MAX).min())
        .filter(|_| g.is_connected())
}

/// Determinant by Gaussian elimination with partial pivoting.
fn determinant(mut a: Vec<Vec<f64>>) -> f64 {
    let n = a.len();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n).max_by(|&i, &j| a[i][c].abs().total_cmp(&a[j][c].abs())).unwrap();
        if a[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for r in c + 1..n {
            let f = a[r][c] / a[c][c];
            let pivot = a[c].clone();
            for (x, p) in a[r][c..].iter_mut().zip(&pivot[c..]) {
                *x -= f * p;
            }
        }
    }
    det
}

fn adjacency(g: &Graph) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; g.n()]; g.n()];
    for &(u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    adj
}

/// Some vertex subset of size >= 5 induces a cycle.
fn has_long_induced_cycle(g: &Graph) -> bool {
    let n = g.n();
    let adj = adjacency(g);
    (0..1u32 << n).filter(|s| s.count_ones() >= 5).any(|s| {
        let verts: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        let two_regular = verts
            .iter()
            .all(|&u| verts.iter().filter(|&&v| adj[u][v]).count() == 2);
        if !two_regular {
            return false;
        }
        // connected
        let mut seen = vec![verts[0]];
        let mut i = 0;
        while i < seen.len() {
            let u = seen[i];
            for &v in &verts {
                if adj[u][v] && !seen.contains(&v) {
                    seen.push(v);
                }
            }
            i += 1;
        }
        seen.len() == verts.len()
    })
}

/// K5 minor for graphs with at most 6 vertices: five branch sets are either
/// five single vertices, or one adjacent pair plus four singles.
fn has_k5_minor_small(g: &Graph) -> bool {
    let n = g.n();
    assert!(n <= 6);
    let adj = adjacency(g);
    let touches = |a: &[usize], b: &[usize]| a.iter().any(|&x| b.iter().any(|&y| adj[x][y]));
    let complete = |sets: &[Vec<usize>]| {
        (0..sets.len()).all(|i| (i + 1..sets.len()).all(|j| touches(&sets[i], &sets[j])))
    };
    for s in 0..1u32 << n {
        let verts: Vec<usize> = (0..n).filter(|&v| s >> v & 1 == 1).collect();
        if verts.len() == 5 && complete(&verts.iter().map(|&v| vec![v]).collect::<Vec<_>>()) {
            return true;
        }
        if verts.len() == 6 {
            for &(u, v) in g.edges() {
                let mut sets = vec![vec![u, v]];
                sets.extend(verts.iter().filter(|&&x| x != u && x != v).map(|&x| vec![x]));
                if complete(&sets) {
                    return true;
                }
            }
        }
    }
    false
}

// ---------- criteria ----------

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn solve_err(e: thetacut::Error) -> String {
    e.to_string()
}

/// maxcut TH_k(C_n) = n for k < ceil(n/4), brute = n-1 (odd) or n (even).
fn circuit_box_collapse() -> Outcome {
    let mut shown = Vec::new();
    for n in 5..=9usize {
        let g = Graph::cycle(n);
        let unit = vec![1.0; n];
        let brute = brute_cut(&g, &unit);
        let expected = if n % 2 == 1 { n - 1 } else { n } as f64;
        ensure(brute == expected, || format!("C{n}: brute {brute}, expected {expected}"))?;
        for k in 1..n.div_ceil(4) {
            let b = maxcut_bound(&g, &unit, k, &settings()).map_err(solve_err)?;
            ensure((b.bound - n as f64).abs() <= TOL && (b.value - n as f64).abs() <= TOL, || {
                format!("C{n} k={k}: bound {} value {}", b.bound, b.value)
            })?;
            shown.push(format!("C{n}/k{k}={:.5}", b.bound));
        }
    }
    Ok(shown.join(" "))
}

/// Zero gap at k = ceil(n/4); a unit-weight gap one level lower for odd n.
fn circuit_exactness_threshold() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut unit_gaps = Vec::new();
    for n in 4..=9usize {
        let g = Graph::cycle(n);
        let k = n.div_ceil(4);
        let mut rng = ChaCha8Rng::seed_from_u64(100 + n as u64);
        for trial in 0..20 {
            let w = weights(&mut rng, n);
            let b = maxcut_bound(&g, &w, k, &settings()).map_err(solve_err)?;
            let gap = b.bound - brute_cut(&g, &w);
            ensure(gap <= TOL, || format!("C{n} k={k} trial {trial}: gap {gap} for {w:?}"))?;
            ensure(gap >= -TOL, || format!("C{n} k={k}: bound below the optimum by {}", -gap))?;
            worst = worst.max(gap);
        }
        if n % 2 == 1 && k >= 2 {
            let unit = vec![1.0; n];
            let gap = maxcut_bound(&g, &unit, k - 1, &settings()).map_err(solve_err)?.bound - brute_cut(&g, &unit);
            ensure(gap >= 0.5, || format!("C{n} k={}: unit gap only {gap}", k - 1))?;
            unit_gaps.push(format!("C{n}/k{}={gap:.4}", k - 1));
        }
    }
    Ok(format!("max gap {worst:.2e}; unit gaps {}", unit_gaps.join(" ")))
}

/// Σ x_e over cuts of K5 is {-2, 2, 10}; TH_1 reaches -2.5.
fn k5_level_structure() -> Outcome {
    let g = Graph::complete(5);
    let unit = vec![1.0; 10];
    let values: BTreeSet<i64> = cut_values(&g, &unit)
        .into_iter()
        .map(|cut| (10.0 - 2.0 * cut) as i64)
        .collect();
    ensure(values == BTreeSet::from([-2, 2, 10]), || format!("values {values:?}"))?;
    let s = theta_bound(&BinaryMatroid::cographic(&g), &unit, 0.0, 1, Sense::Min, &settings()).map_err(solve_err)?;
    ensure(s.value < -2.0 - 1e-2, || format!("TH_1 min {} not below -2.01", s.value))?;
    ensure((s.value + 2.5).abs() <= TOL && (s.bound + 2.5).abs() <= TOL, || {
        format!("TH_1 min {} / bound {} differ from the pinned -2.5", s.value, s.bound)
    })?;
    Ok(format!("values {values:?}; TH_1 min {:.6}, certified {:.6}", s.value, s.bound))
}

/// TH_2 is exact for K5, K6, K7.
fn complete_graphs_level_two() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 5..=7 {
        let g = Graph::complete(n);
        let mut rng = ChaCha8Rng::seed_from_u64(200 + n as u64);
        for trial in 0..10 {
            let w = weights(&mut rng, g.m());
            let gap = maxcut_bound(&g, &w, 2, &settings()).map_err(solve_err)?.bound - brute_cut(&g, &w);
            ensure(gap.abs() <= TOL, || format!("K{n} trial {trial}: gap {gap}"))?;
            worst = worst.max(gap.abs());
        }
    }
    Ok(format!("max |gap| {worst:.2e} over 30 trials"))
}

/// The form with +1 on edges 12, 13, 14 and -1 elsewhere takes {-4, 0, 4} on R10.
fn r10_three_levels() -> Outcome {
    let dense = zoo::r10_matrix().to_dense();
    let rows: Vec<u64> = dense
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, &b)| b == 1).fold(0, |a, (j, _)| a | 1 << j))
        .collect();
    // the rows span the cocycles, so the cycles are their orthogonal complement
    let cycles = orthogonal(&rows, 10);
    ensure(cycles.len() == 32, || format!("{} cycles", cycles.len()))?;
    let lib: HashSet<u64> = zoo::matroid("R10")
        .map_err(solve_err)?
        .cycles()
        .map_err(solve_err)?
        .iter()
        .map(|c| c.bits())
        .collect();
    ensure(lib == cycles, || "library cycles differ from the orthogonal complement".into())?;
    let coef: Vec<i64> = zoo::R10_COLUMNS
        .iter()
        .map(|&(u, v)| if u == 1 && (2..=4).contains(&v) { 1 } else { -1 })
        .collect();
    let values: BTreeSet<i64> = cycles
        .iter()
        .map(|&c| (0..10).map(|e| if c >> e & 1 == 1 { -coef[e] } else { coef[e] }).sum())
        .collect();
    ensure(values == BTreeSet::from([-4, 0, 4]), || format!("values {values:?}"))?;
    Ok(format!("values {values:?} over 32 cycles"))
}

/// Class counts, cographic class counts, and the P3* simplex.
fn class_counting() -> Outcome {
    let mut matroids = 0;
    let mut graphs = 0;
    for name in zoo::catalog() {
        let entry = zoo::lookup(name).map_err(solve_err)?;
        let m = entry.matroid();
        if m.m() > 16 {
            continue;
        }
        let rows = rows_of(&m);
        let cocycles = orthogonal(&rows, m.m()).len();
        let syndromes: HashSet<u64> = (0..1u64 << m.m()).map(|x| syndrome(x, &rows)).collect();
        let classes = RepresentativeBasis::all_classes(&m).map_err(solve_err)?.reps_2k().len();
        ensure(classes == syndromes.len() && classes * cocycles == 1 << m.m(), || {
            format!("{name}: {classes} classes, {} syndromes, |C*| = {cocycles}", syndromes.len())
        })?;
        matroids += 1;
        if let Some(g) = entry.graph() {
            // cocycles of the cographic matroid are the even subgraphs of g
            let even = (0..1u64 << g.m())
                .filter(|&s| {
                    let mut deg = vec![0; g.n()];
                    for (i, &(u, v)) in g.edges().iter().enumerate() {
                        if s >> i & 1 == 1 {
                            deg[u] += 1;
                            deg[v] += 1;
                        }
                    }
                    deg.iter().all(|d| d % 2 == 0)
                })
                .count();
            ensure(even == cocycles, || format!("{name}: {even} even subgraphs vs {cocycles}"))?;
            if g.is_connected() {
                ensure(classes == 1 << (g.n() - 1), || format!("{name}: {classes} != 2^(n-1)"))?;
                graphs += 1;
            }
        }
    }
    // P3*: rows of the projective matrix span its cycle space
    let pm = zoo::projective_matrix(3).to_dense();
    let prow: Vec<u64> = pm
        .iter()
        .map(|r| r.iter().enumerate().filter(|(_, &b)| b == 1).fold(0, |a, (j, _)| a | 1 << j))
        .collect();
    let cycles: BTreeSet<u64> = span(&prow).into_iter().collect();
    let p3 = zoo::matroid("P3*").map_err(solve_err)?;
    let lib: BTreeSet<u64> = p3.cycles().map_err(solve_err)?.iter().map(|c| c.bits()).collect();
    ensure(cycles == lib && cycles.len() == 8, || format!("P3* cycles {cycles:?} vs {lib:?}"))?;
    let rows: Vec<Vec<f64>> = cycles
        .iter()
        .map(|&c| {
            let mut r: Vec<f64> = (0..7).map(|e| if c >> e & 1 == 1 { -1.0 } else { 1.0 }).collect();
            r.push(1.0);
            r
        })
        .collect();
    let det = determinant(rows);
    ensure(det.abs() > 0.5, || format!("P3* determinant {det}"))?;
    Ok(format!("{matroids} matroids, {graphs} connected graphs; P3* 8 cycles, |det| = {}", det.abs()))
}

/// (matX)(ii) on every zoo template at k <= 2, and rank-one lifted cycles.
fn moment_structure() -> Outcome {
    let mut templates = 0;
    let mut full_quadruples = 0;
    let mut lifted = 0;
    for name in zoo::catalog() {
        let red = Reduction::new(&zoo::matroid(name).map_err(solve_err)?);
        let m = red.reduced();
        if m.m() == 0 {
            continue;
        }
        let rows = rows_of(m);
        for k in 0..=2 {
            let t = MomentTemplate::build(m, k).map_err(solve_err)?;
            let reps: Vec<u64> = t.basis().reps_k().iter().map(|r| r.bits()).collect();
            let s = reps.len();
            if m.m() <= 10 {
                // F1 Δ F2 Δ F3 Δ F4 is a cocycle iff its syndrome against the cycles vanishes
                for a in 0..s {
                    for b in 0..s {
                        let ab = reps[a] ^ reps[b];
                        for c in 0..s {
                            for d in 0..s {
                                let equivalent = syndrome(ab ^ reps[c] ^ reps[d], &rows) == 0;
                                let same = t.var(a, b) == t.var(c, d);
                                ensure(equivalent == same, || {
                                    format!("{name} k={k}: ({a},{b}) vs ({c},{d}) equivalent={equivalent} same={same}")
                                })?;
                            }
                        }
                    }
                }
                full_quadruples += 1;
            } else {
                // same statement, grouped: variable and syndrome of F_a Δ F_b determine each other
                let mut by_syn: HashMap<u64, usize> = HashMap::new();
                let mut by_var: HashMap<usize, u64> = HashMap::new();
                for a in 0..s {
                    for b in 0..s {
                        let syn = syndrome(reps[a] ^ reps[b], &rows);
                        let v = t.var(a, b);
                        ensure(*by_syn.entry(syn).or_insert(v) == v && *by_var.entry(v).or_insert(syn) == syn, || {
                            format!("{name} k={k}: entry ({a},{b}) breaks the class/variable bijection")
                        })?;
                    }
                }
            }
            templates += 1;
            if k == 0 {
                continue;
            }
            for c in span(&rows) {
                let a = t.evaluate(&t.lift_cycle_vector(Subset(c)).map_err(solve_err)?).map_err(solve_err)?;
                let u: Vec<f64> = reps.iter().map(|&r| if (r & c).count_ones() % 2 == 1 { -1.0 } else { 1.0 }).collect();
                for i in 0..s {
                    for j in 0..s {
                        ensure(a[(i, j)] == u[i] * u[j], || format!("{name} k={k}: lift of {c:#x} is not u u^T"))?;
                    }
                }
                let ev = eigenvalues(&a);
                let trace = s as f64;
                let second = if s >= 2 { ev[s - 2] } else { 0.0 };
                ensure(second <= 1e-8 * trace && ev[0] >= -1e-10 * trace, || {
                    format!("{name} k={k}: eigenvalues {:?}", &ev[..ev.len().min(3)])
                })?;
                lifted += 1;
            }
        }
    }
    Ok(format!("{templates} templates ({full_quadruples} with all quadruples), {lifted} lifted cycles rank one"))
}

/// brute <= TH_2 <= TH_1, Q_2 <= TH_1, TH_1 <= GW at radius 1, Q_2(C5) = 4.
fn hierarchy_orderings() -> Outcome {
    const SLACK: f64 = 2e-4;
    let mut rng = ChaCha8Rng::seed_from_u64(300);
    let mut radius_one = 0;
    let mut made = 0;
    while made < 10 {
        let n = rng.gen_range(4..=7);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(0.6))
            .collect();
        if edges.is_empty() {
            continue;
        }
        let g = Graph::new(n, edges).map_err(solve_err)?;
        let w = weights(&mut rng, g.m());
        let brute = brute_cut(&g, &w);
        let th1 = maxcut_bound(&g, &w, 1, &settings()).map_err(solve_err)?.bound;
        let th2 = maxcut_bound(&g, &w, 2, &settings()).map_err(solve_err)?.bound;
        let q2 = q2_bound(&g, &w, &settings()).map_err(solve_err)?.bound;
        ensure(brute <= th2 + SLACK && th2 <= th1 + SLACK, || {
            format!("graph {made}: brute {brute}, TH_2 {th2}, TH_1 {th1}")
        })?;
        ensure(q2 <= th1 + SLACK && brute <= q2 + SLACK, || format!("graph {made}: Q_2 {q2}, TH_1 {th1}"))?;
        if radius(&g) == Some(1) {
            let gw = gw_bound(&g, &w, &settings()).map_err(solve_err)?.bound;
            ensure(th1 <= gw + SLACK, || format!("graph {made}: TH_1 {th1} > GW {gw}"))?;
            radius_one += 1;
        }
        made += 1;
    }
    let q2c5 = q2_bound(&Graph::cycle(5), &[1.0; 5], &settings()).map_err(solve_err)?.bound;
    ensure((q2c5 - 4.0).abs() <= TOL, || format!("Q_2(C5) = {q2c5}"))?;
    Ok(format!("10 graphs ordered, {radius_one} of radius 1; Q_2(C5) = {q2c5:.6}"))
}

/// Classifier vs the SDP-vs-brute gap search on graphs with n <= 6, m <= 12.
fn classifier_agreement() -> Outcome {
    let mut corpus: Vec<(String, Graph)> = [
        "Path5", "Star5", "C3", "C4", "C5", "C6", "K4", "K5", "K5-e", "W3", "W4", "W5", "K2,3", "K3,3", "Prism",
        "Octahedron",
    ]
    .iter()
    .map(|n| (n.to_string(), zoo::graph(n).unwrap()))
    .collect();
    corpus.push(("forest".into(), Graph::new(6, vec![(0, 1), (1, 2), (3, 4)]).unwrap()));
    corpus.push(("empty".into(), Graph::new(3, vec![]).unwrap()));
    let mut rng = ChaCha8Rng::seed_from_u64(400);
    let mut random_only_misses = Vec::new();
    let mut verdicts = Vec::new();
    for (name, g) in &corpus {
        assert!(g.n() <= 6 && g.m() <= 12);
        let verdict = th1_exact_graph_cut_ideal(g).map_err(solve_err)?.verdict;
        // the characterization, evaluated with the oracles above
        let expected_exact = !has_k5_minor_small(g) && !has_long_induced_cycle(g);
        ensure((verdict == Verdict::Exact) == expected_exact, || {
            format!("{name}: classifier {verdict:?}, oracle exact={expected_exact}")
        })?;

        let mut random_gap: f64 = 0.0;
        for _ in 0..30 {
            let w = weights(&mut rng, g.m());
            random_gap = random_gap.max(maxcut_bound(g, &w, 1, &settings()).map_err(solve_err)?.bound - brute_cut(g, &w));
        }
        let mut induced_gap: f64 = 0.0;
        for mask in 0u32..1 << g.n() {
            let w: Vec<f64> = g
                .edges()
                .iter()
                .map(|&(u, v)| if mask >> u & mask >> v & 1 == 1 { 1.0 } else { 0.0 })
                .collect();
            if w.iter().sum::<f64>() < 3.0 {
                continue;
            }
            induced_gap = induced_gap.max(maxcut_bound(g, &w, 1, &settings()).map_err(solve_err)?.bound - brute_cut(g, &w));
        }
        let gap = random_gap.max(induced_gap);
        if verdict == Verdict::Exact {
            ensure(gap <= TOL, || format!("{name}: classified exact but gap {gap}"))?;
        } else {
            ensure(gap > TOL, || format!("{name}: classified {verdict:?} but no gap found"))?;
            if random_gap <= TOL {
                random_only_misses.push(name.clone());
            }
        }
        verdicts.push(format!("{name}:{}", if verdict == Verdict::Exact { "exact" } else { "not" }));
    }
    for (name, exact) in [("forest", true), ("Path5", true), ("C4", true), ("C5", false), ("K4", true), ("K5", false)] {
        let tag = format!("{name}:{}", if exact { "exact" } else { "not" });
        ensure(verdicts.contains(&tag), || format!("expected {tag}"))?;
    }
    Ok(format!(
        "{} graphs agree; random weights alone miss the gap on {random_only_misses:?}",
        corpus.len()
    ))
}

fn random_rows(rng: &mut ChaCha8Rng, m: usize) -> Vec<u64> {
    let count = rng.gen_range(0..=m + 1);
    (0..count).map(|_| rng.gen::<u64>() & ((1u64 << m) - 1)).collect()
}

/// Checks one generator set against span/complement oracles; `exhaustive` also checks every pair of vectors.
fn gf2_case(rows: &[u64], m: usize, exhaustive: bool, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let a = Gf2Matrix::new(m, rows.iter().map(|&r| Subset(r)).collect()).map_err(solve_err)?;
    let e = a.row_reduce();
    let sp = span(rows);
    let orth = orthogonal(rows, m);
    let rank = sp.len().trailing_zeros() as usize;
    let d = e.complement();
    let dual_rows: Vec<u64> = d.rows().iter().map(|r| r.bits()).collect();
    ensure(e.rank() == rank, || format!("rank {} vs span size {}", e.rank(), sp.len()))?;
    ensure(e.rank() + d.rank() == m, || format!("ranks {} + {} != {m}", e.rank(), d.rank()))?;
    ensure(span(&dual_rows) == orth, || "complement does not span the orthogonal space".into())?;
    let back: Vec<u64> = d.complement().rows().iter().map(|r| r.bits()).collect();
    ensure(span(&back) == sp, || "complement of complement differs".into())?;
    let dual_rep: Vec<u64> = a.dual_representation().rows().iter().map(|r| r.bits()).collect();
    ensure(span(&dual_rep) == orth, || "dual representation differs".into())?;
    let form = |x: u64| e.canonical_form(Subset(x)).bits();
    if exhaustive {
        let forms: Vec<u64> = (0..1u64 << m).map(form).collect();
        for x in 0..1u64 << m {
            ensure(sp.contains(&(forms[x as usize] ^ x)), || format!("form of {x:#x} leaves its coset"))?;
            for y in 0..1u64 << m {
                let same = forms[x as usize] == forms[y as usize];
                ensure(same == sp.contains(&(x ^ y)), || format!("coset forms disagree on {x:#x}, {y:#x}"))?;
            }
        }
    } else {
        let mask = (1u64 << m) - 1;
        let members: Vec<u64> = sp.iter().copied().collect();
        for _ in 0..8 {
            let x = rng.gen::<u64>() & mask;
            let y = rng.gen::<u64>() & mask;
            let s = members[rng.gen_range(0..members.len())];
            ensure(form(x) == form(x ^ s), || "coset form not constant on a coset".into())?;
            ensure((form(x) == form(y)) == sp.contains(&(x ^ y)), || "coset forms disagree".into())?;
        }
    }
    Ok(())
}

/// Dual involution, rank complementarity, coset forms.
fn gf2_core() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let mut exhaustive = 0;
    // every generator pair for m <= 3, then random generator sets up to m = 10
    for m in 1..=3 {
        for r0 in 0..1u64 << m {
            for r1 in 0..1u64 << m {
                gf2_case(&[r0, r1], m, true, &mut rng)?;
                exhaustive += 1;
            }
        }
    }
    for m in 4..=10 {
        for _ in 0..6 {
            let rows = random_rows(&mut rng, m);
            gf2_case(&rows, m, true, &mut rng)?;
            exhaustive += 1;
        }
    }
    for _ in 0..1000 {
        let m = rng.gen_range(1..=20);
        let rows = random_rows(&mut rng, m);
        gf2_case(&rows, m, false, &mut rng)?;
    }
    for name in zoo::catalog() {
        let m = zoo::matroid(name).map_err(solve_err)?;
        ensure(m.dual().dual().same_cycle_space(&m), || format!("{name}: dual is not an involution"))?;
        ensure(m.cycle_rank() + m.cocycle_rank() == m.m(), || format!("{name}: ranks"))?;
    }
    Ok(format!("{exhaustive} generator sets exhaustive (m <= 10), 1000 random (m <= 20)"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("circuit box collapse", circuit_box_collapse),
        ("circuit exactness threshold", circuit_exactness_threshold),
        ("K5 level structure", k5_level_structure),
        ("TH_2-exact complete graphs", complete_graphs_level_two),
        ("R10 three-level form", r10_three_levels),
        ("class counting", class_counting),
        ("moment structure", moment_structure),
        ("hierarchy orderings", hierarchy_orderings),
        ("classifier agreement", classifier_agreement),
        ("GF(2) core properties", gf2_core),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let label = format!("criterion {:>2} {name}", i + 1);
        if !filter.is_empty() && !filter.iter().any(|f| label.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {label} ({secs:.1}s): {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {label} ({secs:.1}s): {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
