//! Exhaustive reference implementations, sized for test instances.
//!
//! Everything here trades speed for obviousness: colorability by canonical
//! backtracking, odd-set density by subset enumeration, configuration
//! discovery by literal scanning. The fast path never calls into this
//! module; tests use it as the source of expected values. Budgets keep
//! accidental misuse from burning hours.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::multigraph::{Multigraph, VertexId};
use crate::reducer::Configuration;

/// Hard size limits for the exponential searches.
#[derive(Debug, Clone, Copy)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_total_multiplicity: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_vertices: 10, max_total_multiplicity: 32 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("instance exceeds oracle budget: {quantity} {actual} > {limit}")]
    BudgetExceeded { quantity: &'static str, actual: u64, limit: u64 },
}

fn check_budget(g: &Multigraph, budget: &OracleBudget) -> Result<(), OracleError> {
    if g.vertex_count() > budget.max_vertices {
        return Err(OracleError::BudgetExceeded {
            quantity: "vertices",
            actual: g.vertex_count() as u64,
            limit: budget.max_vertices as u64,
        });
    }
    if g.total_multiplicity() > budget.max_total_multiplicity {
        return Err(OracleError::BudgetExceeded {
            quantity: "total multiplicity",
            actual: g.total_multiplicity(),
            limit: budget.max_total_multiplicity,
        });
    }
    Ok(())
}

/// Whether a proper k-edge-coloring exists, by backtracking over edge
/// classes. Color classes are interchangeable, so the search only ever
/// introduces the lowest unused color index; with the budget this keeps
/// per-vertex color sets in single words.
pub fn is_k_colorable_exact(
    g: &Multigraph,
    k: u64,
    budget: &OracleBudget,
) -> Result<bool, OracleError> {
    check_budget(g, budget)?;
    Ok(colorable_unchecked(g, k))
}

fn colorable_unchecked(g: &Multigraph, k: u64) -> bool {
    if g.max_degree() > k {
        return false;
    }
    let m = g.total_multiplicity();
    if k >= m {
        // Every edge can get its own color.
        return true;
    }
    // From here k < m <= 64, so color masks fit in u64.
    let mut order: Vec<usize> = (0..g.classes().len()).collect();
    order.sort_by_key(|&i| {
        let c = &g.classes()[i];
        (std::cmp::Reverse(g.degree(c.u).max(g.degree(c.v))), c.u, c.v)
    });
    // remaining[i][v]: total multiplicity still to color at v from classes
    // order[i..]; an endpoint short on free colors prunes the branch.
    let n = g.vertex_count();
    let mut remaining = vec![vec![0u64; n]; order.len() + 1];
    for i in (0..order.len()).rev() {
        let c = &g.classes()[order[i]];
        let mut row = remaining[i + 1].clone();
        row[c.u as usize] += c.mult;
        row[c.v as usize] += c.mult;
        remaining[i] = row;
    }
    let mut used = vec![0u64; n];
    search(g, &order, &remaining, 0, k, 0, &mut used)
}

fn search(
    g: &Multigraph,
    order: &[usize],
    remaining: &[Vec<u64>],
    idx: usize,
    k: u64,
    introduced: u64,
    used: &mut [u64],
) -> bool {
    if idx == order.len() {
        return true;
    }
    for (v, mask) in used.iter().enumerate() {
        if k - u64::from(mask.count_ones()) < remaining[idx][v] {
            return false;
        }
    }
    let c = &g.classes()[order[idx]];
    assign(g, order, remaining, idx, k, introduced, used, c.u as usize, c.v as usize, c.mult, 0)
}

/// Chooses `left` more colors for the class at `idx`, ascending from
/// `from`, then recurses into the next class. A color above every used one
/// must be exactly the next index.
#[allow(clippy::too_many_arguments)]
fn assign(
    g: &Multigraph,
    order: &[usize],
    remaining: &[Vec<u64>],
    idx: usize,
    k: u64,
    introduced: u64,
    used: &mut [u64],
    u: usize,
    v: usize,
    left: u64,
    from: u64,
) -> bool {
    if left == 0 {
        return search(g, order, remaining, idx + 1, k, introduced, used);
    }
    let blocked = used[u] | used[v];
    for color in from..=introduced.min(k - 1) {
        if blocked & (1 << color) != 0 {
            continue;
        }
        used[u] |= 1 << color;
        used[v] |= 1 << color;
        let intro = introduced.max(color + 1);
        if assign(g, order, remaining, idx, k, intro, used, u, v, left - 1, color + 1) {
            return true;
        }
        used[u] &= !(1 << color);
        used[v] &= !(1 << color);
    }
    false
}

/// Smallest k admitting a proper edge coloring. Starts at the maximum
/// degree and walks upward; the total multiplicity always suffices.
pub fn chi_exact(g: &Multigraph, budget: &OracleBudget) -> Result<u64, OracleError> {
    check_budget(g, budget)?;
    let mut k = g.max_degree();
    while !colorable_unchecked(g, k) {
        k += 1;
    }
    Ok(k)
}

/// Vertex cap for the subset enumeration in [`gamma_exact`].
pub const GAMMA_VERTEX_LIMIT: usize = 20;

/// A densest odd vertex set: `density = 2·edges_inside / (|vertices|−1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OddSetReport {
    pub vertices: Vec<VertexId>,
    pub edges_inside: u64,
    pub density: Ratio<u64>,
}

/// Maximizes the odd-set density over all odd sets of at least three
/// vertices; `None` when no set qualifies (the density is then zero by
/// convention). With `pruned`, sets whose induced underlying graph has a
/// vertex of degree at most one are skipped. Ties keep the first set in
/// subset-mask order.
pub fn gamma_exact(g: &Multigraph, pruned: bool) -> Result<Option<OddSetReport>, OracleError> {
    let n = g.vertex_count();
    if n > GAMMA_VERTEX_LIMIT {
        return Err(OracleError::BudgetExceeded {
            quantity: "vertices",
            actual: n as u64,
            limit: GAMMA_VERTEX_LIMIT as u64,
        });
    }
    let mut best: Option<OddSetReport> = None;
    for mask in 0u32..(1u32 << n) {
        let size = mask.count_ones();
        if size < 3 || size % 2 == 0 {
            continue;
        }
        let inside = |v: VertexId| mask & (1 << v) != 0;
        if pruned {
            let degenerate = (0..n as VertexId).any(|v| {
                inside(v)
                    && g.adjacency(v).iter().filter(|(w, _)| inside(*w)).count() <= 1
            });
            if degenerate {
                continue;
            }
        }
        let edges: u64 = g
            .classes()
            .iter()
            .filter(|c| inside(c.u) && inside(c.v))
            .map(|c| c.mult)
            .sum();
        let density = Ratio::new(2 * edges, u64::from(size) - 1);
        if best.as_ref().is_none_or(|b| density > b.density) {
            best = Some(OddSetReport {
                vertices: (0..n as VertexId).filter(|&v| inside(v)).collect(),
                edges_inside: edges,
                density,
            });
        }
    }
    Ok(best)
}

/// Adjacency/multiplicity view shared by the configuration scanner and
/// verifier; built either from a graph or from a labeled vertex/class list.
struct View {
    present: BTreeSet<VertexId>,
    mult: BTreeMap<(VertexId, VertexId), u64>,
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl View {
    fn of_graph(g: &Multigraph) -> View {
        View::of_labeled(
            &(0..g.vertex_count() as VertexId).collect::<Vec<_>>(),
            &g.classes().iter().map(|c| (c.u, c.v, c.mult)).collect::<Vec<_>>(),
        )
    }

    fn of_labeled(verts: &[VertexId], classes: &[(VertexId, VertexId, u64)]) -> View {
        let mut view = View {
            present: verts.iter().copied().collect(),
            mult: BTreeMap::new(),
            adj: verts.iter().map(|&v| (v, BTreeSet::new())).collect(),
        };
        for &(u, v, m) in classes {
            view.mult.insert((u.min(v), u.max(v)), m);
            view.adj.get_mut(&u).unwrap().insert(v);
            view.adj.get_mut(&v).unwrap().insert(u);
        }
        view
    }

    fn mult(&self, u: VertexId, v: VertexId) -> u64 {
        self.mult.get(&(u.min(v), u.max(v))).copied().unwrap_or(0)
    }

    fn adj(&self, v: VertexId) -> &BTreeSet<VertexId> {
        static EMPTY: BTreeSet<VertexId> = BTreeSet::new();
        self.adj.get(&v).unwrap_or(&EMPTY)
    }
}

/// Whether the configuration's stated neighborhoods and multiplicities hold
/// exactly in the given labeled graph. A named vertex must be present, its
/// neighbor set must equal the set implied by the nonzero multiplicity
/// letters, and every letter must equal the actual class multiplicity.
pub fn config_matches(
    labeled: &(Vec<VertexId>, Vec<(VertexId, VertexId, u64)>),
    conf: &Configuration,
) -> bool {
    let view = View::of_labeled(&labeled.0, &labeled.1);
    let neighbors = |v: VertexId, expected: &[(VertexId, u64)]| {
        let implied: BTreeSet<VertexId> =
            expected.iter().filter(|(_, m)| *m > 0).map(|(w, _)| *w).collect();
        view.adj(v) == &implied && expected.iter().all(|&(w, m)| view.mult(v, w) == m)
    };
    let distinct = |ids: &[VertexId]| {
        ids.iter().collect::<BTreeSet<_>>().len() == ids.len()
            && ids.iter().all(|v| view.present.contains(v))
    };
    match *conf {
        Configuration::Isolated { v } => distinct(&[v]) && view.adj(v).is_empty(),
        Configuration::PendantClass { v, x, m } => {
            distinct(&[v, x]) && m >= 1 && neighbors(v, &[(x, m)])
        }
        Configuration::TriplePath { w, u1, v1, a, b, c } => {
            distinct(&[w, u1, v1])
                && a >= 1
                && c >= 1
                && neighbors(v1, &[(u1, a), (w, c)])
                && neighbors(u1, &[(v1, a), (w, b)])
        }
        Configuration::TwinPair { x, y, u, v, a, b, c, d } => {
            distinct(&[x, y, u, v])
                && [a, b, c, d].iter().all(|&m| m >= 1)
                && neighbors(u, &[(x, a), (y, b)])
                && neighbors(v, &[(x, c), (y, d)])
        }
        Configuration::Fan { w, u1, u2, v1, v2, a, b, c, d, e, f } => {
            let mut ids = vec![w, u1, u2];
            ids.extend(v1);
            ids.extend(v2);
            if !distinct(&ids) || c + d < 1 {
                return false;
            }
            if v1.is_none() && (a, c) != (0, 0) || v2.is_none() && (d, f) != (0, 0) {
                return false;
            }
            let mut around_w = vec![(u1, b), (u2, e)];
            if let Some(v1) = v1 {
                if !(a >= 1 && c >= 1 && neighbors(v1, &[(u1, a), (w, c)])) {
                    return false;
                }
                around_w.push((v1, c));
            }
            if let Some(v2) = v2 {
                if !(f >= 1 && d >= 1 && neighbors(v2, &[(u2, f), (w, d)])) {
                    return false;
                }
                around_w.push((v2, d));
            }
            neighbors(w, &around_w)
        }
    }
}

/// Finds a reducible configuration by literal scanning, in a fixed case
/// order with ascending-id tie-breaks; `None` when the graph has none
/// (which certifies it is not series-parallel, unless it is null).
///
/// Case order: a vertex of degree at most one; two degree-two vertices
/// sharing both neighbors; a degree-two vertex whose second endpoint has no
/// outside neighbor (three-vertex path with a chord); the same with exactly
/// one outside neighbor (one-sided fan); a degree-four center with two
/// pendant-path neighbors (two-sided fan).
pub fn find_config_bruteforce(g: &Multigraph) -> Option<Configuration> {
    let view = View::of_graph(g);
    let verts: Vec<VertexId> = (0..g.vertex_count() as VertexId).collect();
    for &v in &verts {
        match view.adj(v).len() {
            0 => return Some(Configuration::Isolated { v }),
            1 => {
                let x = *view.adj(v).first().unwrap();
                return Some(Configuration::PendantClass { v, x, m: view.mult(v, x) });
            }
            _ => {}
        }
    }
    for &u in &verts {
        if view.adj(u).len() != 2 {
            continue;
        }
        for &v in verts.iter().filter(|&&v| v > u) {
            if view.adj(v).len() == 2 && view.adj(u) == view.adj(v) {
                let mut ends = view.adj(u).iter();
                let (x, y) = (*ends.next().unwrap(), *ends.next().unwrap());
                return Some(Configuration::TwinPair {
                    x,
                    y,
                    u,
                    v,
                    a: view.mult(u, x),
                    b: view.mult(u, y),
                    c: view.mult(v, x),
                    d: view.mult(v, y),
                });
            }
        }
    }
    // Degree-two vertices v with neighbors {u, w}; classify by how much of
    // u's neighborhood lies outside {v, w}.
    let two_paths = || {
        verts.iter().filter(|&&v| view.adj(v).len() == 2).flat_map(|&v| {
            let mut ns = view.adj(v).iter();
            let (p, q) = (*ns.next().unwrap(), *ns.next().unwrap());
            [(v, p, q), (v, q, p)]
        })
    };
    for (v, u, w) in two_paths() {
        let outside: Vec<VertexId> =
            view.adj(u).iter().copied().filter(|&t| t != v && t != w).collect();
        if outside.is_empty() {
            return Some(Configuration::TriplePath {
                w,
                u1: u,
                v1: v,
                a: view.mult(u, v),
                b: view.mult(u, w),
                c: view.mult(v, w),
            });
        }
    }
    for (v, u, w) in two_paths() {
        let outside: Vec<VertexId> =
            view.adj(u).iter().copied().filter(|&t| t != v && t != w).collect();
        if let [z] = outside[..] {
            return Some(Configuration::Fan {
                w: u,
                u1: w,
                u2: z,
                v1: Some(v),
                v2: None,
                a: view.mult(w, v),
                b: view.mult(w, u),
                c: view.mult(v, u),
                d: 0,
                e: view.mult(z, u),
                f: 0,
            });
        }
    }
    for &w in &verts {
        if view.adj(w).len() != 4 {
            continue;
        }
        let around: Vec<VertexId> = view.adj(w).iter().copied().collect();
        for &v1 in &around {
            for &v2 in around.iter().filter(|&&v2| v2 != v1) {
                let rim = |v: VertexId| {
                    (view.adj(v).len() == 2).then(|| {
                        view.adj(v).iter().copied().find(|&t| t != w)
                    })?
                };
                let (Some(u1), Some(u2)) = (rim(v1), rim(v2)) else { continue };
                let named: BTreeSet<VertexId> = [u1, u2, v1, v2].into_iter().collect();
                if named.len() == 4 && named == *view.adj(w) {
                    return Some(Configuration::Fan {
                        w,
                        u1,
                        u2,
                        v1: Some(v1),
                        v2: Some(v2),
                        a: view.mult(u1, v1),
                        b: view.mult(u1, w),
                        c: view.mult(v1, w),
                        d: view.mult(v2, w),
                        e: view.mult(u2, w),
                        f: view.mult(u2, v2),
                    });
                }
            }
        }
    }
    None
}

/// A random series-parallel multigraph with exactly `n` vertices and class
/// multiplicities in `1..=max_mult`; identical seeds give identical graphs.
///
/// Construction runs a job stack over (source, sink, vertex budget)
/// triples: a budget of two emits an edge; otherwise the job splits in
/// series around a fresh vertex, in parallel into two smaller jobs, or into
/// an edge parallel to a forced-series job. Parallel leaf edges between the
/// same pair collapse into one class, which changes no vertex count.
pub fn gen_sp(seed: u64, n: usize, max_mult: u64) -> Multigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
    if n >= 2 {
        let mut next_vertex: VertexId = 2;
        let mut jobs: Vec<(VertexId, VertexId, usize, bool)> = vec![(0, 1, n, false)];
        while let Some((s, t, budget, force_series)) = jobs.pop() {
            if budget == 2 {
                edges.insert((s.min(t), s.max(t)));
                continue;
            }
            // Series and parallel composition are equally likely; a parallel
            // step either splits the vertex budget across two branches or
            // lays a single edge beside a forced-series branch.
            if force_series || rng.gen_bool(0.5) {
                let mid = next_vertex;
                next_vertex += 1;
                let left = rng.gen_range(2..=budget - 1);
                jobs.push((s, mid, left, false));
                jobs.push((mid, t, budget + 1 - left, false));
            } else if budget >= 4 && rng.gen_bool(0.5) {
                let left = rng.gen_range(3..=budget - 1);
                jobs.push((s, t, left, false));
                jobs.push((s, t, budget + 2 - left, false));
            } else {
                edges.insert((s.min(t), s.max(t)));
                jobs.push((s, t, budget, true));
            }
        }
        debug_assert_eq!(next_vertex as usize, n);
    }
    let classes: Vec<(VertexId, VertexId, u64)> = edges
        .into_iter()
        .map(|(u, v)| (u, v, rng.gen_range(1..=max_mult.max(1))))
        .collect();
    Multigraph::build(n, classes).expect("generated classes are well formed")
}

/// A random multigraph without structural guarantees: each vertex pair
/// carries a class with probability one half. Exercises code paths that
/// must behave on non-series-parallel input.
pub fn gen_random(seed: u64, n: usize, max_mult: u64) -> Multigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut classes = Vec::new();
    for u in 0..n as VertexId {
        for v in u + 1..n as VertexId {
            if rng.gen_bool(0.5) {
                classes.push((u, v, rng.gen_range(1..=max_mult.max(1))));
            }
        }
    }
    Multigraph::build(n, classes).expect("generated classes are well formed")
}
