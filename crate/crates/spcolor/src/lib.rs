//! Edge coloring of series-parallel multigraphs.
//!
//! The chromatic index of a series-parallel multigraph equals the larger of
//! its maximum degree and the rounded-up odd-set density. This crate decides
//! `k`-edge-colorability in time linear in the number of vertices and edge
//! classes, constructs an explicit coloring when the answer is yes, and
//! reports a small witness when it is no. Exhaustive reference
//! implementations of every quantity live in [`oracle`] and back the tests.

pub mod colorer;
pub mod corpus;
pub mod encoding;
pub mod formats;
pub mod multigraph;
pub mod oracle;
pub mod reducer;

pub use colorer::{find_coloring, replay_color, verify_coloring, Coloring};
pub use multigraph::{EdgeClass, GraphError, Multigraph, VertexId};
pub use reducer::{chromatic_index, decide, decide_full, Verdict};
