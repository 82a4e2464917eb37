//! Decoding of local structure, reduction rewrites, and the decision loop.
//!
//! The driver repeatedly pops a worklist vertex, normalizes its parallel
//! records, and classifies its local picture into one of the configurations
//! below. Each configuration either fails a local density check — settling
//! the answer as "no" — or rewrites the encoding to a strictly smaller
//! represented graph while preserving k-edge-colorability. The per-case
//! frames stack into a trace the colorer replays backwards.

use crate::encoding::{EncodingState, SubdivisionEntry, POTENTIAL_K};
use crate::multigraph::{Multigraph, VertexId};

/// A decoded local structure around an active vertex. Vertex names and
/// multiplicity letters follow a fixed scheme:
///
/// * `TwinPair`: `u` and `v` are both adjacent to exactly `x` and `y`, with
///   `a = mult(u,x)`, `b = mult(u,y)`, `c = mult(v,x)`, `d = mult(v,y)`.
/// * `TriplePath`: `v1`'s neighbors are `u1` and `w`; `u1`'s neighbors are
///   among `v1`, `w`. `a = mult(u1,v1)`, `b = mult(u1,w)`, `c = mult(v1,w)`.
/// * `Fan`: `w`'s neighbors are among `u1`, `u2`, `v1`, `v2`; each `vi` is
///   adjacent only to `w` and `ui`. `a = mult(u1,v1)`, `b = mult(u1,w)`,
///   `c = mult(v1,w)`, `d = mult(v2,w)`, `e = mult(u2,w)`,
///   `f = mult(u2,v2)`; an absent `vi` zeroes its two letters; `c + d ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Configuration {
    Isolated {
        v: VertexId,
    },
    PendantClass {
        v: VertexId,
        x: VertexId,
        m: u64,
    },
    TwinPair {
        x: VertexId,
        y: VertexId,
        u: VertexId,
        v: VertexId,
        a: u64,
        b: u64,
        c: u64,
        d: u64,
    },
    TriplePath {
        w: VertexId,
        u1: VertexId,
        v1: VertexId,
        a: u64,
        b: u64,
        c: u64,
    },
    Fan {
        w: VertexId,
        u1: VertexId,
        u2: VertexId,
        v1: Option<VertexId>,
        v2: Option<VertexId>,
        a: u64,
        b: u64,
        c: u64,
        d: u64,
        e: u64,
        f: u64,
    },
}

/// A violated local density check: the three-vertex set induces more than
/// `k` edges, i.e. `2|E| > k·(|U|−1)` with `|U| = 3`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub triple: [VertexId; 3],
    /// Number of edges induced by the triple (so the density reads
    /// `2·edges / 2 > k`).
    pub edges: u64,
    pub k: u64,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "2|E({{{},{},{}}})| = {} > {}*2",
            self.triple[0],
            self.triple[1],
            self.triple[2],
            2 * self.edges,
            self.k
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NoReason {
    /// A vertex exceeds the color budget outright; found by the upfront scan,
    /// never by a reduction.
    DegreeExceeded { v: VertexId, degree: u64 },
    /// A decoded configuration failed its density check after `frame_depth`
    /// reductions had already been applied.
    LocalCheck {
        configuration: Configuration,
        violation: Violation,
        frame_depth: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No(NoReason),
    /// The worklist drained with part of the graph still unreduced, which
    /// certifies the input was not series-parallel.
    NotSeriesParallel,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("graph is not series-parallel")]
pub struct NotSeriesParallelError;

/// One applied reduction, with everything the colorer needs to undo it.
/// `TwinPair` is stored role-normalized (`d` is the smallest of the four
/// multiplicities, so `a ≥ d`); `u_folded` marks that `u` degenerated to a
/// pendant (`a = d`) and was removed together with `v`. `FanBig` keeps the
/// split quantities and the ids of the fresh vertices `x`, `y` (which may
/// end up folded away or absent; their edge groups are derivable from the
/// payload).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionFrame {
    Isolated {
        v: VertexId,
    },
    PendantClass {
        v: VertexId,
        x: VertexId,
        m: u64,
    },
    TriplePath {
        w: VertexId,
        u1: VertexId,
        v1: VertexId,
        a: u64,
        b: u64,
        c: u64,
    },
    TwinPair {
        x: VertexId,
        y: VertexId,
        u: VertexId,
        v: VertexId,
        a: u64,
        b: u64,
        c: u64,
        d: u64,
        u_folded: bool,
    },
    FanSmall {
        w: VertexId,
        u1: VertexId,
        u2: VertexId,
        v1: Option<VertexId>,
        v2: Option<VertexId>,
        a: u64,
        b: u64,
        c: u64,
        d: u64,
        e: u64,
        f: u64,
    },
    FanBig {
        w: VertexId,
        u1: VertexId,
        u2: VertexId,
        v1: Option<VertexId>,
        v2: Option<VertexId>,
        a: u64,
        b: u64,
        c: u64,
        d: u64,
        e: u64,
        f: u64,
        z1: u64,
        z2: u64,
        s1: u64,
        s2: u64,
        x: VertexId,
        y: VertexId,
    },
}

/// Classification result for a popped vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DetectOutcome {
    Config(Configuration),
    /// Active with degree above two: parallel records must be merged first.
    NeedsDedupe,
    /// Plain degree-two vertex: series compression applies.
    NeedsCompress,
    /// Not active (possibly only after normalization); nothing to decode.
    NotLocal,
}

/// Internal decode: outcome plus the record/entry handles `apply_reduction`
/// needs. Entry positions are indices into the record's entry list (only 0
/// and 1 are ever addressed).
#[derive(Debug, Clone)]
enum Decoded {
    Config { conf: Configuration, handles: Handles },
    NeedsCompress,
    NotLocal,
    NeedsDedupe,
}

#[derive(Debug, Clone, Copy)]
struct Handles {
    /// Record carrying side 1 (or the single record).
    rec1: u32,
    /// Second record for fans; the twin record reuses `rec1`.
    rec2: Option<u32>,
}

fn decode(state: &mut EncodingState, v: VertexId) -> Result<Decoded, crate::encoding::EncodingError> {
    if !state.is_active(v)? {
        return Ok(Decoded::NotLocal);
    }
    if state.deg_h(v) > 2 {
        return Ok(Decoded::NeedsDedupe);
    }
    state.dedupe(v)?;
    let recs = state.live_records(v);
    match recs.len() {
        0 => Ok(Decoded::Config {
            conf: Configuration::Isolated { v },
            handles: Handles { rec1: 0, rec2: None },
        }),
        1 => {
            let r = recs[0];
            let (end0, _) = state.record(r).ends();
            let other = state.record(r).other_end(v);
            let mu = state.record(r).mu();
            let conf = match state.record(r).lambda_len() {
                0 => Configuration::PendantClass { v, x: other, m: mu },
                1 => {
                    let e = state.entry_at(r, 0);
                    let (toward_v, toward_other) = orient(e, end0, v);
                    Configuration::TriplePath {
                        w: other,
                        u1: v,
                        v1: e.vertex,
                        a: toward_v,
                        b: mu,
                        c: toward_other,
                    }
                }
                _ => twin_conf(state, r),
            };
            Ok(Decoded::Config { conf, handles: Handles { rec1: r, rec2: None } })
        }
        2 => {
            let (mut r1, mut r2) = (recs[0], recs[1]);
            for r in [r1, r2] {
                if state.record(r).lambda_len() >= 2 {
                    return Ok(Decoded::Config {
                        conf: twin_conf(state, r),
                        handles: Handles { rec1: r, rec2: None },
                    });
                }
            }
            if state.record(r1).lambda_len() == 0 && state.record(r2).lambda_len() == 0 {
                return Ok(Decoded::NeedsCompress);
            }
            // Normalize the entry-bearing record to side 1.
            if state.record(r1).lambda_len() == 0 {
                std::mem::swap(&mut r1, &mut r2);
            }
            let (e10, _) = state.record(r1).ends();
            let u1 = state.record(r1).other_end(v);
            let u2 = state.record(r2).other_end(v);
            let e1 = state.entry_at(r1, 0);
            let (c, a) = orient(e1, e10, v);
            let (v2, d, f) = if state.record(r2).lambda_len() == 1 {
                let e2 = state.entry_at(r2, 0);
                let (e20, _) = state.record(r2).ends();
                let (d, f) = orient(e2, e20, v);
                (Some(e2.vertex), d, f)
            } else {
                (None, 0, 0)
            };
            Ok(Decoded::Config {
                conf: Configuration::Fan {
                    w: v,
                    u1,
                    u2,
                    v1: Some(e1.vertex),
                    v2,
                    a,
                    b: state.record(r1).mu(),
                    c,
                    d,
                    e: state.record(r2).mu(),
                    f,
                },
                handles: Handles { rec1: r1, rec2: Some(r2) },
            })
        }
        _ => unreachable!("deduped active vertex has degree at most two"),
    }
}

/// Splits an entry's multiplicities into (toward `v`, toward the other end),
/// given the record's first end.
fn orient(e: SubdivisionEntry, end0: VertexId, v: VertexId) -> (u64, u64) {
    if end0 == v {
        (e.m0, e.m1)
    } else {
        (e.m1, e.m0)
    }
}

fn twin_conf(state: &EncodingState, r: u32) -> Configuration {
    let (x, y) = state.record(r).ends();
    let e0 = state.entry_at(r, 0);
    let e1 = state.entry_at(r, 1);
    Configuration::TwinPair {
        x,
        y,
        u: e0.vertex,
        v: e1.vertex,
        a: e0.m0,
        b: e0.m1,
        c: e1.m0,
        d: e1.m1,
    }
}

/// Classifies the local picture at `v`, merging its parallel records first
/// when the degree is at most two. Degree above two reports `NeedsDedupe`
/// without mutating.
pub fn detect(
    state: &mut EncodingState,
    v: VertexId,
) -> Result<DetectOutcome, crate::encoding::EncodingError> {
    Ok(match decode(state, v)? {
        Decoded::Config { conf, .. } => DetectOutcome::Config(conf),
        Decoded::NeedsCompress => DetectOutcome::NeedsCompress,
        Decoded::NeedsDedupe => DetectOutcome::NeedsDedupe,
        Decoded::NotLocal => DetectOutcome::NotLocal,
    })
}

/// Density check for the configuration: each constrained three-vertex set
/// may induce at most `k` edges. Everything beyond that is covered by the
/// global degree bound.
pub fn local_feasible(conf: &Configuration, k: u64) -> Result<(), Violation> {
    let triple_check = |p: VertexId, q: VertexId, r: VertexId, edges: u64| {
        if edges > k {
            let mut triple = [p, q, r];
            triple.sort_unstable();
            Err(Violation { triple, edges, k })
        } else {
            Ok(())
        }
    };
    match *conf {
        Configuration::TriplePath { w, u1, v1, a, b, c } => triple_check(u1, v1, w, a + b + c),
        Configuration::Fan { w, u1, u2, v1, v2, a, b, c, d, e, f } => {
            if a + b + c + d + e + f <= k {
                return Ok(());
            }
            if let Some(v1) = v1 {
                triple_check(u1, v1, w, a + b + c)?;
            }
            if let Some(v2) = v2 {
                triple_check(u2, v2, w, d + e + f)?;
            }
            // An absent side has two zero letters and its remaining letter is
            // a sub-sum of a vertex degree, which the global check bounds.
            debug_assert!(v1.is_some() || a + b + c <= k);
            debug_assert!(v2.is_some() || d + e + f <= k);
            Ok(())
        }
        _ => Ok(()),
    }
}

/// The split quantities of the big-sum fan rewrite. Requires the local
/// checks and the degree bound at `w` (`b+c+d+e ≤ k`) to hold.
pub(crate) fn fan_splits(a: u64, b: u64, c: u64, d: u64, e: u64, f: u64, k: u64) -> (u64, u64, u64, u64) {
    let z1 = (a + b + c + e).saturating_sub(k);
    let z2 = (b + d + e + f).saturating_sub(k);
    debug_assert!(b + c + d + e <= k);
    let s = k - (b + c + d + e);
    debug_assert!(z1 <= e && z1 <= a);
    debug_assert!(z2 <= b && z2 <= f);
    let s1 = s.min(a - z1);
    let s2 = s - s1;
    debug_assert!(s2 <= f - z2);
    (z1, z2, s1, s2)
}

fn apply_reduction(state: &mut EncodingState, decoded: &Decoded, k: u64) -> ReductionFrame {
    let (conf, handles) = match decoded {
        Decoded::Config { conf, handles } => (conf, handles),
        _ => unreachable!("apply_reduction requires a decoded configuration"),
    };
    match *conf {
        Configuration::Isolated { v } => {
            state.remove_vertex(v);
            ReductionFrame::Isolated { v }
        }
        Configuration::PendantClass { v, x, m } => {
            state.kill_record(handles.rec1, true);
            state.remove_vertex(v);
            ReductionFrame::PendantClass { v, x, m }
        }
        Configuration::TriplePath { w, u1, v1, a, b, c } => {
            state.remove_entry(handles.rec1, 0);
            if state.record(handles.rec1).mu() == 0 {
                state.kill_record(handles.rec1, true);
            } else {
                state.push_worklist(u1);
            }
            ReductionFrame::TriplePath { w, u1, v1, a, b, c }
        }
        Configuration::TwinPair { .. } => apply_twin_pair(state, handles.rec1),
        Configuration::Fan { w, u1, u2, v1, v2, a, b, c, d, e, f } => {
            if a + b + c + d + e + f <= k {
                // Remove both rim vertices; the records keep their direct
                // multiplicities and die only if nothing is left on them.
                state.remove_entry(handles.rec1, 0);
                let mut survived = false;
                for rec in [handles.rec1, handles.rec2.unwrap()] {
                    if state.record(rec).lambda_len() > 0 {
                        state.remove_entry(rec, 0);
                    }
                    if state.record(rec).mu() == 0 && state.record(rec).lambda_len() == 0 {
                        state.kill_record(rec, true);
                    } else {
                        survived = true;
                    }
                }
                if survived {
                    state.push_worklist(w);
                }
                ReductionFrame::FanSmall { w, u1, u2, v1, v2, a, b, c, d, e, f }
            } else {
                let (z1, z2, s1, s2) = fan_splits(a, b, c, d, e, f, k);
                state.remove_entry(handles.rec1, 0);
                let rec2 = handles.rec2.unwrap();
                if state.record(rec2).lambda_len() > 0 {
                    state.remove_entry(rec2, 0);
                }
                state.kill_record(handles.rec1, true);
                state.kill_record(rec2, true);
                state.remove_vertex(w);
                let x = state.alloc_fresh();
                let y = state.alloc_fresh();
                // One-sided residues are folded away rather than stored; a
                // fresh vertex survives only as a two-sided entry.
                let mut entries = Vec::new();
                let (gx0, gx1) = (a - z1 - s1, f - z2 - s2);
                if gx0 > 0 && gx1 > 0 {
                    entries.push(SubdivisionEntry { vertex: x, m0: gx0, m1: gx1 });
                }
                let (gy0, gy1) = (b - z2, e - z1);
                if gy0 > 0 && gy1 > 0 {
                    entries.push(SubdivisionEntry { vertex: y, m0: gy0, m1: gy1 });
                }
                debug_assert!(gx0 + gx1 <= k && gy0 + gy1 <= k);
                if z1 + z2 > 0 || !entries.is_empty() {
                    state.add_record(u1, u2, z1 + z2, entries, true);
                }
                ReductionFrame::FanBig {
                    w, u1, u2, v1, v2, a, b, c, d, e, f, z1, z2, s1, s2, x, y,
                }
            }
        }
    }
}

/// Role normalization and rewrite for the twin pair on record `rec`: the
/// globally smallest of the four multiplicities becomes `d` (ties broken by
/// entry position, then end), `v` is removed, and `d` of `u`'s edges move
/// from the `x` side to the `y` side. When that empties `u`'s `x` side, `u`
/// degenerates to a pendant and is folded out too.
fn apply_twin_pair(state: &mut EncodingState, rec: u32) -> ReductionFrame {
    let (end0, end1) = state.record(rec).ends();
    let e0 = state.entry_at(rec, 0);
    let e1 = state.entry_at(rec, 1);
    let m = [[e0.m0, e0.m1], [e1.m0, e1.m1]];
    let (mut vi, mut yj) = (0usize, 0usize);
    for i in 0..2 {
        for j in 0..2 {
            if m[i][j] < m[vi][yj] {
                vi = i;
                yj = j;
            }
        }
    }
    let ui = 1 - vi;
    let xj = 1 - yj;
    let frame = ReductionFrame::TwinPair {
        x: if xj == 0 { end0 } else { end1 },
        y: if yj == 0 { end0 } else { end1 },
        u: if ui == 0 { e0.vertex } else { e1.vertex },
        v: if vi == 0 { e0.vertex } else { e1.vertex },
        a: m[ui][xj],
        b: m[ui][yj],
        c: m[vi][xj],
        d: m[vi][yj],
        u_folded: m[ui][xj] == m[vi][yj],
    };
    let (a, d) = (m[ui][xj], m[vi][yj]);
    let (b_new_x, b_new_y) = (a - d, m[ui][yj] + d);
    state.remove_entry(rec, vi as u32);
    if b_new_x > 0 {
        // Entry mults are stored relative to (end0, end1); x is end `xj`.
        let (m0, m1) = if xj == 0 { (b_new_x, b_new_y) } else { (b_new_y, b_new_x) };
        state.set_entry_mults(rec, 0, m0, m1);
    } else {
        state.remove_entry(rec, 0);
    }
    if state.record(rec).mu() == 0 && state.record(rec).lambda_len() == 0 {
        state.kill_record(rec, true);
    } else {
        // Either end may have been the popped vertex; requeue both so the
        // surviving record keeps being reprocessed from the active side.
        state.push_worklist(end0);
        state.push_worklist(end1);
    }
    frame
}

#[derive(Debug, Clone, Default)]
pub struct DecideOptions {
    pub collect_trace: bool,
    /// Verify the potential strictly decreases at every iteration.
    pub check_potential: bool,
    /// Maintain a plain shadow graph and compare it against `expand` after
    /// every iteration (desk scale only).
    pub check_shadow: bool,
    /// Verify every decoded configuration's neighborhood conditions in the
    /// expanded graph before applying it (desk scale only).
    pub check_configs: bool,
}

#[derive(Debug, Clone)]
pub struct DecideReport {
    pub verdict: Verdict,
    pub trace: Vec<ReductionFrame>,
    pub iterations: u64,
    pub initial_potential: u64,
    pub final_potential: u64,
    pub potential_violations: u64,
    pub shadow_violations: u64,
    pub config_violations: u64,
}

/// Whether the represented multigraph is k-edge-colorable, decided without
/// ever materializing it. Linear in vertices plus edge classes and
/// independent of the multiplicity magnitudes.
pub fn decide(g: &Multigraph, k: u64) -> Verdict {
    decide_full(g, k, &DecideOptions::default()).verdict
}

pub fn decide_full(g: &Multigraph, k: u64, options: &DecideOptions) -> DecideReport {
    let mut report = DecideReport {
        verdict: Verdict::Yes,
        trace: Vec::new(),
        iterations: 0,
        initial_potential: 0,
        final_potential: 0,
        potential_violations: 0,
        shadow_violations: 0,
        config_violations: 0,
    };
    for v in 0..g.vertex_count() as VertexId {
        if g.degree(v) > k {
            report.verdict = Verdict::No(NoReason::DegreeExceeded { v, degree: g.degree(v) });
            return report;
        }
    }
    let mut state = EncodingState::from_multigraph(g);
    let mut shadow = options.check_shadow.then(|| ShadowGraph::of(g));
    let mut phi = state.potential(POTENTIAL_K);
    report.initial_potential = phi;
    let mut frames_applied = 0usize;
    while let Some(v) = state.pop_worklist() {
        report.iterations += 1;
        if state.is_live(v) {
            match decode(&mut state, v).expect("live vertex decodes") {
                Decoded::NotLocal => {}
                Decoded::NeedsDedupe => state.dedupe(v).expect("live vertex dedupes"),
                Decoded::NeedsCompress => {
                    state.series_compress(v).expect("decoded series vertex compresses")
                }
                decoded @ Decoded::Config { .. } => {
                    let Decoded::Config { conf, .. } = &decoded else { unreachable!() };
                    if options.check_configs
                        && !crate::oracle::config_matches(&state.expand_labeled(), conf)
                    {
                        report.config_violations += 1;
                    }
                    if let Err(violation) = local_feasible(conf, k) {
                        report.verdict = Verdict::No(NoReason::LocalCheck {
                            configuration: conf.clone(),
                            violation,
                            frame_depth: frames_applied,
                        });
                        report.final_potential = state.potential(POTENTIAL_K);
                        return report;
                    }
                    let frame = apply_reduction(&mut state, &decoded, k);
                    if let Some(sh) = shadow.as_mut() {
                        sh.apply(&frame);
                    }
                    frames_applied += 1;
                    if options.collect_trace {
                        report.trace.push(frame);
                    }
                }
            }
        }
        if options.check_potential {
            let now = state.potential(POTENTIAL_K);
            if now >= phi {
                report.potential_violations += 1;
            }
            phi = now;
        }
        if let Some(sh) = shadow.as_ref() {
            if sh.labeled() != state.expand_labeled() {
                report.shadow_violations += 1;
            }
        }
    }
    report.final_potential = state.potential(POTENTIAL_K);
    if state.live_vertex_count() > 0 {
        report.verdict = Verdict::NotSeriesParallel;
    }
    report
}

/// Minimum `k` for which [`decide`] answers yes: starts at the maximum
/// degree, doubles the step until a yes appears, then bisects.
pub fn chromatic_index(g: &Multigraph) -> Result<u64, NotSeriesParallelError> {
    let delta = g.max_degree();
    let answer = |k: u64| match decide(g, k) {
        Verdict::Yes => Ok(true),
        Verdict::No(_) => Ok(false),
        Verdict::NotSeriesParallel => Err(NotSeriesParallelError),
    };
    if answer(delta)? {
        return Ok(delta);
    }
    let mut step = 1;
    let mut lo = delta; // highest known no
    let mut hi = loop {
        let k = lo + step;
        if answer(k)? {
            break k;
        }
        lo = k;
        step *= 2;
    };
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if answer(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Plain class-map model of the represented graph, rewritten frame by frame
/// alongside the encoding to cross-check `expand`.
struct ShadowGraph {
    verts: std::collections::BTreeSet<VertexId>,
    classes: std::collections::BTreeMap<(VertexId, VertexId), u64>,
}

impl ShadowGraph {
    fn of(g: &Multigraph) -> ShadowGraph {
        ShadowGraph {
            verts: (0..g.vertex_count() as VertexId).collect(),
            classes: g
                .classes()
                .iter()
                .map(|c| ((c.u, c.v), c.mult))
                .collect(),
        }
    }

    fn labeled(&self) -> (Vec<VertexId>, Vec<(VertexId, VertexId, u64)>) {
        (
            self.verts.iter().copied().collect(),
            self.classes.iter().map(|(&(u, v), &m)| (u, v, m)).collect(),
        )
    }

    fn add(&mut self, a: VertexId, b: VertexId, m: u64) {
        if m > 0 {
            *self.classes.entry((a.min(b), a.max(b))).or_insert(0) += m;
        }
    }

    fn sub(&mut self, a: VertexId, b: VertexId, m: u64) {
        if m == 0 {
            return;
        }
        let key = (a.min(b), a.max(b));
        let slot = self.classes.get_mut(&key).expect("shadow class present");
        *slot -= m;
        if *slot == 0 {
            self.classes.remove(&key);
        }
    }

    fn apply(&mut self, frame: &ReductionFrame) {
        match *frame {
            ReductionFrame::Isolated { v } => {
                self.verts.remove(&v);
            }
            ReductionFrame::PendantClass { v, x, m } => {
                self.sub(v, x, m);
                self.verts.remove(&v);
            }
            ReductionFrame::TriplePath { w, u1, v1, a, c, .. } => {
                self.sub(u1, v1, a);
                self.sub(v1, w, c);
                self.verts.remove(&v1);
            }
            ReductionFrame::TwinPair { x, y, u, v, a, b, c, d, u_folded } => {
                self.sub(v, x, c);
                self.sub(v, y, d);
                self.verts.remove(&v);
                self.sub(u, x, d);
                self.add(u, y, d);
                if u_folded {
                    debug_assert_eq!(a, d);
                    self.sub(u, y, b + d);
                    self.verts.remove(&u);
                }
            }
            ReductionFrame::FanSmall { w, u1, u2, v1, v2, a, c, d, f, .. } => {
                if let Some(v1) = v1 {
                    self.sub(u1, v1, a);
                    self.sub(v1, w, c);
                    self.verts.remove(&v1);
                }
                if let Some(v2) = v2 {
                    self.sub(u2, v2, f);
                    self.sub(v2, w, d);
                    self.verts.remove(&v2);
                }
            }
            ReductionFrame::FanBig {
                w, u1, u2, v1, v2, a, b, c, d, e, f, z1, z2, s1, s2, x, y,
            } => {
                if let Some(v1) = v1 {
                    self.sub(u1, v1, a);
                    self.sub(v1, w, c);
                    self.verts.remove(&v1);
                }
                if let Some(v2) = v2 {
                    self.sub(u2, v2, f);
                    self.sub(v2, w, d);
                    self.verts.remove(&v2);
                }
                self.sub(w, u1, b);
                self.sub(w, u2, e);
                self.verts.remove(&w);
                let (gx0, gx1) = (a - z1 - s1, f - z2 - s2);
                if gx0 > 0 && gx1 > 0 {
                    self.verts.insert(x);
                    self.add(x, u1, gx0);
                    self.add(x, u2, gx1);
                }
                let (gy0, gy1) = (b - z2, e - z1);
                if gy0 > 0 && gy1 > 0 {
                    self.verts.insert(y);
                    self.add(y, u1, gy0);
                    self.add(y, u2, gy1);
                }
                self.add(u1, u2, z1 + z2);
            }
        }
    }
}
