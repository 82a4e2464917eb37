//! Compressed reduction state for the linear-time decision loop.
//!
//! The state is a multigraph `H` over the original vertex ids, where every
//! H-edge is a *record*: a vertex pair carrying a direct multiplicity `mu`
//! and a list of suppressed degree-two vertices (subdivision entries), each
//! with its own multiplicities toward the two record ends. Together with a
//! per-vertex work counter `C` and a FIFO worklist `L`, this represents the
//! current graph compactly: [`EncodingState::expand`] recovers it.
//!
//! Every mutation below either preserves the represented graph exactly
//! (dedupe, series compression) or is driven by the reducer, which rewrites
//! it on purpose. The potential `2K|V(H)| + K·Σ|λ| + |L| + 4·ΣC` strictly
//! decreases per reducer iteration, which is what bounds the total work.

use std::collections::VecDeque;

use crate::multigraph::{Multigraph, VertexId};

/// Instrumentation constant for [`EncodingState::potential`]: the smallest
/// power of two exceeding the worst per-iteration bookkeeping credit (10).
pub const POTENTIAL_K: u64 = 16;

/// A suppressed degree-two vertex riding on a record: `m0`/`m1` edges to the
/// record's `end0`/`end1`. Both multiplicities are at least one; a vertex
/// with edges toward only one side is never stored (it is folded away by the
/// reducer instead).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubdivisionEntry {
    pub vertex: VertexId,
    pub m0: u64,
    pub m1: u64,
}

#[derive(Debug, Clone, Copy)]
struct EntryNode {
    entry: SubdivisionEntry,
    next: Option<u32>,
}

/// One H-edge. Ends are stored in ascending id order, so parallel records
/// merge without reorienting their entries. `mu = 0` requires a non-empty
/// entry list; fully empty records are killed eagerly.
#[derive(Debug, Clone)]
pub struct HEdgeRecord {
    pub(crate) end0: VertexId,
    pub(crate) end1: VertexId,
    pub(crate) mu: u64,
    lambda_head: Option<u32>,
    lambda_tail: Option<u32>,
    pub(crate) lambda_len: u32,
    pub(crate) alive: bool,
}

impl HEdgeRecord {
    pub fn ends(&self) -> (VertexId, VertexId) {
        (self.end0, self.end1)
    }

    pub fn mu(&self) -> u64 {
        self.mu
    }

    pub fn lambda_len(&self) -> u32 {
        self.lambda_len
    }

    /// The end of this record that is not `v`.
    pub(crate) fn other_end(&self, v: VertexId) -> VertexId {
        if self.end0 == v {
            self.end1
        } else {
            self.end0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EncodingError {
    #[error("vertex {0} is not in the encoded graph")]
    VertexAbsent(VertexId),
    #[error("operation precondition violated: {0}")]
    PreconditionViolated(&'static str),
}

/// The worklist/encoding state. Vertex arrays are sized by the original
/// vertex count; fresh vertices created by reductions only ever appear as
/// subdivision entries, never as H-vertices, so the arrays never grow.
#[derive(Debug, Clone)]
pub struct EncodingState {
    vertex_span: usize,
    records: Vec<HEdgeRecord>,
    entry_arena: Vec<EntryNode>,
    /// Per-vertex record indices; may contain dead indices, compacted lazily
    /// whenever the list is scanned.
    adjacency: Vec<Vec<u32>>,
    degree: Vec<u32>,
    live: Vec<bool>,
    counter: Vec<u64>,
    worklist: VecDeque<VertexId>,
    live_count: usize,
    sum_lambda: u64,
    sum_counter: u64,
    next_fresh: VertexId,
}

impl EncodingState {
    /// Mirrors `g`: one record per edge class with empty entry list, all
    /// counters zero, worklist seeded with the active vertices in id order.
    pub fn from_multigraph(g: &Multigraph) -> EncodingState {
        let n = g.vertex_count();
        let mut state = EncodingState {
            vertex_span: n,
            records: Vec::with_capacity(g.class_count()),
            entry_arena: Vec::new(),
            adjacency: vec![Vec::new(); n],
            degree: vec![0; n],
            live: vec![true; n],
            counter: vec![0; n],
            worklist: VecDeque::new(),
            live_count: n,
            sum_lambda: 0,
            sum_counter: 0,
            next_fresh: n as VertexId,
        };
        for c in g.classes() {
            state.add_record(c.u, c.v, c.mult, Vec::new(), false);
        }
        for v in 0..n as VertexId {
            if state.active_unchecked(v) {
                state.worklist.push_back(v);
            }
        }
        state
    }

    pub fn vertex_span(&self) -> usize {
        self.vertex_span
    }

    pub fn is_live(&self, v: VertexId) -> bool {
        (v as usize) < self.vertex_span && self.live[v as usize]
    }

    pub fn live_vertex_count(&self) -> usize {
        self.live_count
    }

    pub fn deg_h(&self, v: VertexId) -> u32 {
        self.degree[v as usize]
    }

    pub fn counter(&self, v: VertexId) -> u64 {
        self.counter[v as usize]
    }

    pub fn worklist_len(&self) -> usize {
        self.worklist.len()
    }

    pub(crate) fn pop_worklist(&mut self) -> Option<VertexId> {
        self.worklist.pop_front()
    }

    pub(crate) fn push_worklist(&mut self, v: VertexId) {
        self.worklist.push_back(v);
    }

    pub fn record(&self, idx: u32) -> &HEdgeRecord {
        &self.records[idx as usize]
    }

    /// Allocates an id for a vertex created by a reduction. Fresh ids never
    /// collide with original ids and are never reused.
    pub(crate) fn alloc_fresh(&mut self) -> VertexId {
        let id = self.next_fresh;
        self.next_fresh += 1;
        id
    }

    fn active_unchecked(&self, v: VertexId) -> bool {
        let d = self.degree[v as usize] as u64;
        d <= 2 || d <= 3 * self.counter[v as usize]
    }

    /// `deg_H(v) ≤ 2` or `deg_H(v) ≤ 3·C(v)`.
    pub fn is_active(&self, v: VertexId) -> Result<bool, EncodingError> {
        if !self.is_live(v) {
            return Err(EncodingError::VertexAbsent(v));
        }
        Ok(self.active_unchecked(v))
    }

    /// `2K·|V(H)| + K·Σ|λ| + |L| + 4·ΣC`, evaluated in O(1) from maintained
    /// aggregates.
    pub fn potential(&self, k: u64) -> u64 {
        2 * k * self.live_count as u64
            + k * self.sum_lambda
            + self.worklist.len() as u64
            + 4 * self.sum_counter
    }

    /// Compacts `adjacency[v]` and returns the indices of the live records.
    pub(crate) fn live_records(&mut self, v: VertexId) -> Vec<u32> {
        self.adjacency[v as usize].retain(|&idx| self.records[idx as usize].alive);
        self.adjacency[v as usize].clone()
    }

    pub(crate) fn entry_at(&self, rec: u32, i: u32) -> SubdivisionEntry {
        let mut node = self.records[rec as usize].lambda_head;
        for _ in 0..i {
            node = self.entry_arena[node.unwrap() as usize].next;
        }
        self.entry_arena[node.unwrap() as usize].entry
    }

    /// Removes the `i`-th entry (only the first two are ever addressed).
    pub(crate) fn remove_entry(&mut self, rec: u32, i: u32) -> SubdivisionEntry {
        debug_assert!(i < 2);
        let r = &mut self.records[rec as usize];
        let head = r.lambda_head.unwrap();
        let removed = if i == 0 {
            let next = self.entry_arena[head as usize].next;
            r.lambda_head = next;
            if next.is_none() {
                r.lambda_tail = None;
            }
            head
        } else {
            let second = self.entry_arena[head as usize].next.unwrap();
            let next = self.entry_arena[second as usize].next;
            self.entry_arena[head as usize].next = next;
            if next.is_none() {
                r.lambda_tail = Some(head);
            }
            second
        };
        r.lambda_len -= 1;
        self.sum_lambda -= 1;
        self.entry_arena[removed as usize].entry
    }

    pub(crate) fn set_entry_mults(&mut self, rec: u32, i: u32, m0: u64, m1: u64) {
        debug_assert!(i < 2);
        let mut node = self.records[rec as usize].lambda_head;
        for _ in 0..i {
            node = self.entry_arena[node.unwrap() as usize].next;
        }
        let e = &mut self.entry_arena[node.unwrap() as usize].entry;
        e.m0 = m0;
        e.m1 = m1;
    }

    /// Adds a record with ends canonicalized to ascending order; entry
    /// multiplicities are given relative to `(u, v)` as passed and flipped
    /// when canonicalization swaps the ends. With `bump`, both ends receive
    /// a counter increment and a worklist append (the edge-added rule).
    pub(crate) fn add_record(
        &mut self,
        u: VertexId,
        v: VertexId,
        mu: u64,
        entries: Vec<SubdivisionEntry>,
        bump: bool,
    ) -> u32 {
        debug_assert!(u != v);
        debug_assert!((u as usize) < self.vertex_span && (v as usize) < self.vertex_span);
        let flip = u > v;
        let (end0, end1) = if flip { (v, u) } else { (u, v) };
        let idx = self.records.len() as u32;
        let mut rec = HEdgeRecord {
            end0,
            end1,
            mu,
            lambda_head: None,
            lambda_tail: None,
            lambda_len: 0,
            alive: true,
        };
        for mut e in entries {
            if flip {
                std::mem::swap(&mut e.m0, &mut e.m1);
            }
            let node = self.entry_arena.len() as u32;
            self.entry_arena.push(EntryNode { entry: e, next: None });
            match rec.lambda_tail {
                Some(t) => self.entry_arena[t as usize].next = Some(node),
                None => rec.lambda_head = Some(node),
            }
            rec.lambda_tail = Some(node);
            rec.lambda_len += 1;
            self.sum_lambda += 1;
        }
        self.records.push(rec);
        self.adjacency[end0 as usize].push(idx);
        self.adjacency[end1 as usize].push(idx);
        self.degree[end0 as usize] += 1;
        self.degree[end1 as usize] += 1;
        if bump {
            self.bump(end0);
            self.bump(end1);
        }
        idx
    }

    /// Counter increment plus worklist append: the bookkeeping rule applied
    /// to a vertex whose incident record set changed.
    pub(crate) fn bump(&mut self, v: VertexId) {
        self.counter[v as usize] += 1;
        self.sum_counter += 1;
        self.worklist.push_back(v);
    }

    /// Kills a record whose entry list has already been drained. With
    /// `bump`, every end still live gets the edge-deleted bookkeeping.
    pub(crate) fn kill_record(&mut self, idx: u32, bump: bool) {
        let (e0, e1) = {
            let r = &mut self.records[idx as usize];
            debug_assert!(r.alive);
            debug_assert_eq!(r.lambda_len, 0, "record killed with entries attached");
            r.alive = false;
            (r.end0, r.end1)
        };
        self.degree[e0 as usize] -= 1;
        self.degree[e1 as usize] -= 1;
        if bump {
            if self.live[e0 as usize] {
                self.bump(e0);
            }
            if self.live[e1 as usize] {
                self.bump(e1);
            }
        }
    }

    /// Removes a degree-zero vertex from `V(H)`; its counter leaves the sum.
    pub(crate) fn remove_vertex(&mut self, v: VertexId) {
        debug_assert!(self.is_live(v));
        debug_assert_eq!(self.degree[v as usize], 0);
        self.live[v as usize] = false;
        self.live_count -= 1;
        self.sum_counter -= self.counter[v as usize];
        self.counter[v as usize] = 0;
        self.adjacency[v as usize].clear();
    }

    /// Merges the parallel records at `v` (sum of `mu`, concatenated entry
    /// lists) and resets `C(v)`. Every vertex whose degree decreased is
    /// appended to the worklist: `v` first, then the affected neighbors in
    /// scan order. The represented graph is unchanged.
    pub fn dedupe(&mut self, v: VertexId) -> Result<(), EncodingError> {
        if !self.is_live(v) {
            return Err(EncodingError::VertexAbsent(v));
        }
        let indices = self.live_records(v);
        // first surviving record per neighbor, plus whether it absorbed any
        let mut survivor: std::collections::HashMap<VertexId, u32> = std::collections::HashMap::new();
        let mut merged_neighbors: Vec<VertexId> = Vec::new();
        let mut any_merge = false;
        for idx in indices {
            let other = self.records[idx as usize].other_end(v);
            match survivor.get(&other) {
                None => {
                    survivor.insert(other, idx);
                }
                Some(&keep) => {
                    self.merge_record_into(idx, keep);
                    if !merged_neighbors.contains(&other) {
                        merged_neighbors.push(other);
                    }
                    any_merge = true;
                }
            }
        }
        self.sum_counter -= self.counter[v as usize];
        self.counter[v as usize] = 0;
        if any_merge {
            self.worklist.push_back(v);
            for x in merged_neighbors {
                self.worklist.push_back(x);
            }
            self.adjacency[v as usize].retain(|&idx| self.records[idx as usize].alive);
        }
        Ok(())
    }

    /// Both records share canonical ends, so `mu` adds and the entry lists
    /// splice without reorientation.
    fn merge_record_into(&mut self, src: u32, dst: u32) {
        debug_assert_eq!(self.records[src as usize].end0, self.records[dst as usize].end0);
        debug_assert_eq!(self.records[src as usize].end1, self.records[dst as usize].end1);
        let src_rec = &mut self.records[src as usize];
        src_rec.alive = false;
        let (mu, head, tail, len) = (
            src_rec.mu,
            src_rec.lambda_head.take(),
            src_rec.lambda_tail.take(),
            std::mem::take(&mut src_rec.lambda_len),
        );
        let (e0, e1) = (src_rec.end0, src_rec.end1);
        self.degree[e0 as usize] -= 1;
        self.degree[e1 as usize] -= 1;
        let dst_rec = &mut self.records[dst as usize];
        dst_rec.mu += mu;
        if head.is_some() {
            match dst_rec.lambda_tail {
                Some(t) => {
                    let new_head = head;
                    dst_rec.lambda_tail = tail;
                    dst_rec.lambda_len += len;
                    self.entry_arena[t as usize].next = new_head;
                }
                None => {
                    dst_rec.lambda_head = head;
                    dst_rec.lambda_tail = tail;
                    dst_rec.lambda_len += len;
                }
            }
        }
    }

    /// Replaces a plain degree-two vertex by a subdivision entry on a new
    /// record joining its two neighbors; `C` of both neighbors increases and
    /// both join the worklist. The represented graph is unchanged.
    pub fn series_compress(&mut self, v: VertexId) -> Result<(), EncodingError> {
        if !self.is_live(v) {
            return Err(EncodingError::VertexAbsent(v));
        }
        let recs = self.live_records(v);
        if recs.len() != 2 {
            return Err(EncodingError::PreconditionViolated(
                "series compression needs exactly two incident records",
            ));
        }
        let (r0, r1) = (recs[0], recs[1]);
        if self.records[r0 as usize].lambda_len != 0 || self.records[r1 as usize].lambda_len != 0 {
            return Err(EncodingError::PreconditionViolated(
                "series compression needs empty entry lists",
            ));
        }
        let x = self.records[r0 as usize].other_end(v);
        let y = self.records[r1 as usize].other_end(v);
        if x == y {
            return Err(EncodingError::PreconditionViolated(
                "series compression needs two distinct neighbors",
            ));
        }
        let toward_x = self.records[r0 as usize].mu;
        let toward_y = self.records[r1 as usize].mu;
        debug_assert!(toward_x >= 1 && toward_y >= 1);
        self.kill_record(r0, false);
        self.kill_record(r1, false);
        self.remove_vertex(v);
        self.add_record(
            x,
            y,
            0,
            vec![SubdivisionEntry { vertex: v, m0: toward_x, m1: toward_y }],
            false,
        );
        self.bump(x);
        self.bump(y);
        Ok(())
    }

    /// The represented graph, with original ids: the sorted live vertex set
    /// (H-vertices plus entry vertices) and the merged class list.
    pub fn expand_labeled(&self) -> (Vec<VertexId>, Vec<(VertexId, VertexId, u64)>) {
        let mut verts: std::collections::BTreeSet<VertexId> = (0..self.vertex_span as VertexId)
            .filter(|&v| self.live[v as usize])
            .collect();
        let mut classes: std::collections::BTreeMap<(VertexId, VertexId), u64> =
            std::collections::BTreeMap::new();
        let mut acc = |a: VertexId, b: VertexId, m: u64| {
            if m > 0 {
                *classes.entry((a.min(b), a.max(b))).or_insert(0) += m;
            }
        };
        for r in &self.records {
            if !r.alive {
                continue;
            }
            acc(r.end0, r.end1, r.mu);
            let mut node = r.lambda_head;
            while let Some(i) = node {
                let e = self.entry_arena[i as usize].entry;
                verts.insert(e.vertex);
                acc(e.vertex, r.end0, e.m0);
                acc(e.vertex, r.end1, e.m1);
                node = self.entry_arena[i as usize].next;
            }
        }
        (
            verts.into_iter().collect(),
            classes.into_iter().map(|((u, v), m)| (u, v, m)).collect(),
        )
    }

    /// The represented graph as a [`Multigraph`], vertices relabeled densely
    /// in ascending id order. For a state fresh from [`from_multigraph`]
    /// this is the original graph, id for id.
    ///
    /// [`from_multigraph`]: EncodingState::from_multigraph
    pub fn expand(&self) -> Multigraph {
        let (verts, classes) = self.expand_labeled();
        let mut relabel = std::collections::HashMap::new();
        for (i, &v) in verts.iter().enumerate() {
            relabel.insert(v, i as VertexId);
        }
        Multigraph::build(
            verts.len(),
            classes.iter().map(|&(u, v, m)| (relabel[&u], relabel[&v], m)),
        )
        .expect("expanded encoding is a valid multigraph")
    }

    /// Debug dump: one line per record, `end0 end1 mu [p:m0:m1 ...]`,
    /// sorted by ends.
    pub fn dump(&self) -> String {
        let mut lines: Vec<(VertexId, VertexId, String)> = Vec::new();
        for r in &self.records {
            if !r.alive {
                continue;
            }
            let mut s = format!("{} {} {}", r.end0, r.end1, r.mu);
            let mut node = r.lambda_head;
            while let Some(i) = node {
                let e = self.entry_arena[i as usize].entry;
                s.push_str(&format!(" {}:{}:{}", e.vertex, e.m0, e.m1));
                node = self.entry_arena[i as usize].next;
            }
            lines.push((r.end0, r.end1, s));
        }
        lines.sort();
        lines
            .into_iter()
            .map(|(_, _, s)| s + "\n")
            .collect::<String>()
    }

    #[cfg(test)]
    pub(crate) fn from_parts(n: usize, records: Vec<RecordSpec>) -> EncodingState {
        let mut state = EncodingState {
            vertex_span: n,
            records: Vec::new(),
            entry_arena: Vec::new(),
            adjacency: vec![Vec::new(); n],
            degree: vec![0; n],
            live: vec![true; n],
            counter: vec![0; n],
            worklist: VecDeque::new(),
            live_count: n,
            sum_lambda: 0,
            sum_counter: 0,
            next_fresh: n as VertexId,
        };
        let mut max_entry = n as VertexId;
        for (u, v, mu, entries) in records {
            for &(p, _, _) in &entries {
                max_entry = max_entry.max(p + 1);
            }
            state.add_record(
                u,
                v,
                mu,
                entries
                    .into_iter()
                    .map(|(vertex, m0, m1)| SubdivisionEntry { vertex, m0, m1 })
                    .collect(),
                false,
            );
        }
        state.next_fresh = max_entry;
        for v in 0..n as VertexId {
            if state.active_unchecked(v) {
                state.worklist.push_back(v);
            }
        }
        state
    }

    #[cfg(test)]
    pub(crate) fn set_counter_for_test(&mut self, v: VertexId, c: u64) {
        self.sum_counter -= self.counter[v as usize];
        self.counter[v as usize] = c;
        self.sum_counter += c;
    }
}

/// Record description for test fixtures: ends, direct multiplicity, and the
/// entry list as `(vertex, m0, m1)` triples.
#[cfg(test)]
pub(crate) type RecordSpec = (VertexId, VertexId, u64, Vec<(VertexId, u64, u64)>);

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle111() -> Multigraph {
        Multigraph::build(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)]).unwrap()
    }

    fn path_graph(m1: u64, m2: u64) -> Multigraph {
        Multigraph::build(3, [(0, 1, m1), (1, 2, m2)]).unwrap()
    }

    #[test]
    fn from_multigraph_mirrors_classes() {
        let s = EncodingState::from_multigraph(&triangle111());
        assert_eq!(s.live_vertex_count(), 3);
        assert_eq!(s.deg_h(0), 2);
        assert_eq!(s.potential(POTENTIAL_K), 2 * 16 * 3 + 3);
        let wl: Vec<_> = (0..3).filter(|&v| s.is_active(v).unwrap()).collect();
        assert_eq!(wl, vec![0, 1, 2]);

        let single = Multigraph::build(2, [(0, 1, 7)]).unwrap();
        let s = EncodingState::from_multigraph(&single);
        assert_eq!(s.record(0).mu(), 7);
        assert_eq!(s.worklist_len(), 2);

        let empty = EncodingState::from_multigraph(&Multigraph::build(0, []).unwrap());
        assert_eq!(empty.potential(POTENTIAL_K), 0);
    }

    #[test]
    fn expand_round_trips() {
        for g in [triangle111(), path_graph(3, 2), Multigraph::build(4, [(0, 3, 9)]).unwrap()] {
            assert_eq!(EncodingState::from_multigraph(&g).expand(), g);
        }
    }

    #[test]
    fn series_compress_preserves_graph_and_drops_potential() {
        let g = path_graph(1, 1);
        let mut s = EncodingState::from_multigraph(&g);
        let before = s.potential(POTENTIAL_K);
        s.series_compress(1).unwrap();
        // |V(H)| 3→2, Σλ 0→1, |L| +2, ΣC +2: drop of 2K − K − 2 − 8.
        assert_eq!(before - s.potential(POTENTIAL_K), POTENTIAL_K - 10);
        assert_eq!(s.dump(), "0 2 0 1:1:1\n");
        assert_eq!(s.expand(), g);

        let g = path_graph(3, 2);
        let mut s = EncodingState::from_multigraph(&g);
        s.series_compress(1).unwrap();
        assert_eq!(s.dump(), "0 2 0 1:3:2\n");
        assert_eq!(s.expand(), g);
        assert_eq!(s.counter(0), 1);
        assert_eq!(s.counter(2), 1);
    }

    #[test]
    fn series_compress_rejects_bad_shapes() {
        // Entry already present on an incident record.
        let mut s = EncodingState::from_parts(3, vec![(0, 1, 1, vec![(3, 1, 1)]), (1, 2, 1, vec![])]);
        assert_eq!(
            s.series_compress(1),
            Err(EncodingError::PreconditionViolated(
                "series compression needs empty entry lists"
            ))
        );
        // Degree-two by parallel records: single neighbor.
        let mut s = EncodingState::from_parts(2, vec![(0, 1, 1, vec![]), (0, 1, 2, vec![])]);
        assert_eq!(
            s.series_compress(0),
            Err(EncodingError::PreconditionViolated(
                "series compression needs two distinct neighbors"
            ))
        );
        let mut s = EncodingState::from_parts(1, vec![]);
        s.live[0] = false;
        s.live_count = 0;
        assert_eq!(s.series_compress(0), Err(EncodingError::VertexAbsent(0)));
    }

    #[test]
    fn dedupe_merges_parallel_records() {
        // Two records between 0 and 1, the second written end-swapped: its
        // entry multiplicities arrive flipped into canonical order.
        let mut s = EncodingState::from_parts(
            2,
            vec![(0, 1, 1, vec![(2, 1, 1)]), (1, 0, 2, vec![(3, 2, 1)])],
        );
        let expanded = s.expand_labeled();
        s.dedupe(0).unwrap();
        assert_eq!(s.dump(), "0 1 3 2:1:1 3:1:2\n");
        assert_eq!(s.expand_labeled(), expanded);
        assert_eq!(s.deg_h(0), 1);
        assert_eq!(s.deg_h(1), 1);
        assert_eq!(s.counter(0), 0);
    }

    #[test]
    fn dedupe_without_parallels_only_resets_counter() {
        let mut s = EncodingState::from_multigraph(&triangle111());
        s.set_counter_for_test(0, 2);
        let len_before = s.worklist_len();
        s.dedupe(0).unwrap();
        assert_eq!(s.counter(0), 0);
        assert_eq!(s.worklist_len(), len_before);
        assert_eq!(s.dump(), "0 1 1\n0 2 1\n1 2 1\n");
    }

    #[test]
    fn activity_thresholds() {
        let mut s = EncodingState::from_parts(
            5,
            vec![
                (0, 1, 1, vec![]),
                (0, 2, 1, vec![]),
                (0, 3, 1, vec![]),
                (0, 4, 1, vec![]),
            ],
        );
        assert!(s.is_active(1).unwrap()); // degree 1
        assert!(!s.is_active(0).unwrap()); // degree 4, C = 0
        s.set_counter_for_test(0, 1);
        assert!(!s.is_active(0).unwrap()); // 4 > 3
        s.set_counter_for_test(0, 2);
        assert!(s.is_active(0).unwrap()); // 4 ≤ 6
        assert_eq!(s.is_active(9), Err(EncodingError::VertexAbsent(9)));
    }

    #[test]
    fn expand_keeps_isolated_vertices() {
        let g = Multigraph::build(4, [(1, 2, 5)]).unwrap();
        let s = EncodingState::from_multigraph(&g);
        let (verts, classes) = s.expand_labeled();
        assert_eq!(verts, vec![0, 1, 2, 3]);
        assert_eq!(classes, vec![(1, 2, 5)]);
        assert_eq!(s.expand(), g);
    }
}
