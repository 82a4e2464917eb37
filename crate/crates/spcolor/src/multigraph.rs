//! Loop-free multigraphs with dense vertex ids and explicit edge classes.
//!
//! A multigraph is stored as a set of *edge classes*: unordered vertex pairs
//! with a positive multiplicity. Parallel edges between the same pair always
//! belong to a single class, so the representation size is independent of the
//! multiplicity magnitudes.

use std::collections::HashSet;
use std::collections::VecDeque;

/// Dense vertex identifier, `0..vertex_count`.
pub type VertexId = u32;

/// An unordered vertex pair with multiplicity. Stored with `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeClass {
    pub u: VertexId,
    pub v: VertexId,
    pub mult: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("loop edge at vertex {0}")]
    LoopEdge(VertexId),
    #[error("duplicate edge class {{{0}, {1}}}")]
    DuplicateClass(VertexId, VertexId),
    #[error("vertex id {0} out of range (vertex count {1})")]
    BadVertexId(VertexId, usize),
    #[error("edge class {{{0}, {1}}} has zero multiplicity")]
    ZeroMultiplicity(VertexId, VertexId),
}

/// Immutable loop-free multigraph. Classes are kept sorted by endpoint pair,
/// so structurally equal graphs compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    vertex_count: usize,
    classes: Vec<EdgeClass>,
    degrees: Vec<u64>,
    adjacency: Vec<Vec<(VertexId, u64)>>,
}

impl Multigraph {
    /// Validates and normalizes a class list. Endpoint order within a pair is
    /// irrelevant; two classes on the same pair are rejected rather than merged.
    pub fn build(
        vertex_count: usize,
        classes: impl IntoIterator<Item = (VertexId, VertexId, u64)>,
    ) -> Result<Multigraph, GraphError> {
        let mut normalized: Vec<EdgeClass> = Vec::new();
        for (a, b, mult) in classes {
            if a as usize >= vertex_count {
                return Err(GraphError::BadVertexId(a, vertex_count));
            }
            if b as usize >= vertex_count {
                return Err(GraphError::BadVertexId(b, vertex_count));
            }
            if a == b {
                return Err(GraphError::LoopEdge(a));
            }
            if mult == 0 {
                return Err(GraphError::ZeroMultiplicity(a.min(b), a.max(b)));
            }
            normalized.push(EdgeClass {
                u: a.min(b),
                v: a.max(b),
                mult,
            });
        }
        normalized.sort_unstable();
        for w in normalized.windows(2) {
            if w[0].u == w[1].u && w[0].v == w[1].v {
                return Err(GraphError::DuplicateClass(w[0].u, w[0].v));
            }
        }
        let mut degrees = vec![0u64; vertex_count];
        let mut adjacency = vec![Vec::new(); vertex_count];
        for c in &normalized {
            degrees[c.u as usize] += c.mult;
            degrees[c.v as usize] += c.mult;
            adjacency[c.u as usize].push((c.v, c.mult));
            adjacency[c.v as usize].push((c.u, c.mult));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Multigraph {
            vertex_count,
            classes: normalized,
            degrees,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn classes(&self) -> &[EdgeClass] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Sum of all class multiplicities, i.e. the number of edge instances.
    pub fn total_multiplicity(&self) -> u64 {
        self.classes.iter().map(|c| c.mult).sum()
    }

    /// Degree of `v` counting multiplicities.
    pub fn degree(&self, v: VertexId) -> u64 {
        self.degrees[v as usize]
    }

    pub fn max_degree(&self) -> u64 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Neighbors of `v` with class multiplicities, sorted by neighbor id.
    pub fn adjacency(&self, v: VertexId) -> &[(VertexId, u64)] {
        &self.adjacency[v as usize]
    }

    /// Multiplicity of the class {u, v}, or 0 if the pair is not adjacent.
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> u64 {
        self.adjacency[u as usize]
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.adjacency[u as usize][i].1)
            .unwrap_or(0)
    }

    /// Same vertex set and adjacencies, every multiplicity replaced by 1.
    pub fn underlying_simple(&self) -> Multigraph {
        Multigraph::build(
            self.vertex_count,
            self.classes.iter().map(|c| (c.u, c.v, 1)),
        )
        .expect("simple projection of a valid graph is valid")
    }

    /// Subgraph induced on `vertices`, relabeled densely in ascending order of
    /// the selected ids. Multiplicities are preserved.
    pub fn induced(&self, vertices: &[VertexId]) -> Result<Multigraph, GraphError> {
        let mut selected: Vec<VertexId> = vertices.to_vec();
        selected.sort_unstable();
        selected.dedup();
        let mut relabel = vec![usize::MAX; self.vertex_count];
        for (i, &v) in selected.iter().enumerate() {
            if v as usize >= self.vertex_count {
                return Err(GraphError::BadVertexId(v, self.vertex_count));
            }
            relabel[v as usize] = i;
        }
        let classes = self.classes.iter().filter_map(|c| {
            let u = relabel[c.u as usize];
            let v = relabel[c.v as usize];
            if u != usize::MAX && v != usize::MAX {
                Some((u as VertexId, v as VertexId, c.mult))
            } else {
                None
            }
        });
        Multigraph::build(selected.len(), classes)
    }

    /// Whether the graph is series-parallel, i.e. contains no subdivision of
    /// K4 as a subgraph. Decided by exhaustively applying the confluent
    /// reduction rules: delete vertices of degree at most one, suppress
    /// degree-two vertices, and merge the parallel adjacencies that suppression
    /// creates. The graph is series-parallel exactly when this reaches the
    /// null graph. Only the underlying simple graph matters.
    pub fn is_series_parallel(&self) -> bool {
        let n = self.vertex_count;
        let mut adj: Vec<HashSet<VertexId>> = vec![HashSet::new(); n];
        for c in &self.classes {
            adj[c.u as usize].insert(c.v);
            adj[c.v as usize].insert(c.u);
        }
        let mut alive = vec![true; n];
        let mut remaining = n;
        let mut queue: VecDeque<VertexId> = (0..n as VertexId).collect();
        while let Some(v) = queue.pop_front() {
            if !alive[v as usize] {
                continue;
            }
            match adj[v as usize].len() {
                0 => {
                    alive[v as usize] = false;
                    remaining -= 1;
                }
                1 => {
                    let x = *adj[v as usize].iter().next().unwrap();
                    adj[x as usize].remove(&v);
                    adj[v as usize].clear();
                    alive[v as usize] = false;
                    remaining -= 1;
                    queue.push_back(x);
                }
                2 => {
                    let mut it = adj[v as usize].iter();
                    let x = *it.next().unwrap();
                    let y = *it.next().unwrap();
                    adj[x as usize].remove(&v);
                    adj[y as usize].remove(&v);
                    adj[v as usize].clear();
                    alive[v as usize] = false;
                    remaining -= 1;
                    // Inserting an already present pair is the parallel merge.
                    adj[x as usize].insert(y);
                    adj[y as usize].insert(x);
                    queue.push_back(x);
                    queue.push_back(y);
                }
                _ => {}
            }
        }
        remaining == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle211() -> Multigraph {
        Multigraph::build(3, [(0, 1, 2), (1, 2, 1), (0, 2, 1)]).unwrap()
    }

    fn k4() -> Multigraph {
        Multigraph::build(4, [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1)])
            .unwrap()
    }

    #[test]
    fn build_normalizes_and_computes_degrees() {
        let g = triangle211();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.class_count(), 3);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(1), 3);
        assert_eq!(g.degree(2), 2);
        assert_eq!(g.max_degree(), 3);
        assert_eq!(g.total_multiplicity(), 4);
        assert_eq!(g.multiplicity(1, 0), 2);
        assert_eq!(g.multiplicity(2, 0), 1);
        // Endpoint order within a pair does not matter.
        let h = Multigraph::build(3, [(2, 1, 1), (1, 0, 2), (2, 0, 1)]).unwrap();
        assert_eq!(g, h);
    }

    #[test]
    fn build_rejects_malformed_input() {
        assert_eq!(
            Multigraph::build(2, [(0, 0, 1)]),
            Err(GraphError::LoopEdge(0))
        );
        assert_eq!(
            Multigraph::build(2, [(0, 1, 1), (1, 0, 2)]),
            Err(GraphError::DuplicateClass(0, 1))
        );
        assert_eq!(
            Multigraph::build(2, [(0, 2, 1)]),
            Err(GraphError::BadVertexId(2, 2))
        );
        assert_eq!(
            Multigraph::build(2, [(1, 0, 0)]),
            Err(GraphError::ZeroMultiplicity(0, 1))
        );
    }

    #[test]
    fn underlying_simple_flattens_multiplicities() {
        let s = triangle211().underlying_simple();
        assert_eq!(s.total_multiplicity(), 3);
        assert_eq!(s.degree(0), 2);
        assert!(s.classes().iter().all(|c| c.mult == 1));
    }

    #[test]
    fn induced_keeps_inner_classes_only() {
        let g = triangle211();
        let sub = g.induced(&[0, 1]).unwrap();
        assert_eq!(sub.vertex_count(), 2);
        assert_eq!(sub.classes(), &[EdgeClass { u: 0, v: 1, mult: 2 }]);

        let empty = g.induced(&[]).unwrap();
        assert_eq!(empty.vertex_count(), 0);
        assert_eq!(empty.class_count(), 0);

        assert_eq!(g.induced(&[0, 7]), Err(GraphError::BadVertexId(7, 3)));
    }

    #[test]
    fn induced_relabels_densely() {
        let g = Multigraph::build(5, [(1, 3, 4), (3, 4, 2), (0, 2, 9)]).unwrap();
        let sub = g.induced(&[4, 1, 3]).unwrap();
        // Selection {1, 3, 4} maps to {0, 1, 2}.
        assert_eq!(
            sub.classes(),
            &[
                EdgeClass { u: 0, v: 1, mult: 4 },
                EdgeClass { u: 1, v: 2, mult: 2 }
            ]
        );
    }

    #[test]
    fn series_parallel_recognizer_accepts_reducible_graphs() {
        assert!(triangle211().is_series_parallel());
        assert!(Multigraph::build(0, []).unwrap().is_series_parallel());
        assert!(Multigraph::build(4, [(0, 1, 1), (1, 2, 1), (2, 3, 1)])
            .unwrap()
            .is_series_parallel());
        // Disconnected: two independent triangles.
        assert!(
            Multigraph::build(6, [(0, 1, 1), (1, 2, 1), (0, 2, 1), (3, 4, 1), (4, 5, 1), (3, 5, 1)])
                .unwrap()
                .is_series_parallel()
        );
        // Theta graph: three internally disjoint 0-1 paths.
        assert!(Multigraph::build(
            4,
            [(0, 1, 1), (0, 2, 1), (2, 1, 1), (0, 3, 1), (3, 1, 1)]
        )
        .unwrap()
        .is_series_parallel());
    }

    #[test]
    fn series_parallel_recognizer_rejects_k4_subdivisions() {
        assert!(!k4().is_series_parallel());
        // K4 with one edge subdivided.
        let sub = Multigraph::build(
            5,
            [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 4, 1), (4, 3, 1)],
        )
        .unwrap();
        assert!(!sub.is_series_parallel());
        // K4 plus a pendant path: the path reduces, the core does not.
        let with_tail = Multigraph::build(
            6,
            [(0, 1, 1), (0, 2, 1), (0, 3, 1), (1, 2, 1), (1, 3, 1), (2, 3, 1), (3, 4, 1), (4, 5, 1)],
        )
        .unwrap();
        assert!(!with_tail.is_series_parallel());
    }

    #[test]
    fn series_parallel_ignores_multiplicities() {
        let g = Multigraph::build(4, [(0, 1, 7), (1, 2, 3), (2, 3, 1), (0, 3, 2), (0, 2, 5)])
            .unwrap();
        assert_eq!(
            g.is_series_parallel(),
            g.underlying_simple().is_series_parallel()
        );
        assert!(g.is_series_parallel());
    }
}
