//! Rainbow out-directed spanning trees in arc-colored tournaments.
//!
//! The anti-Ramsey number `h(T)` of a tournament `T` is the least `k` such
//! that every arc-coloring of `T` with exactly `k` colors contains an
//! out-directed spanning tree (arborescence) whose arcs all carry different
//! colors. For `n >= 3` it equals `C(n,2) - delta3(T) + 2`, where `delta3`
//! is the smallest in-degree sum over three vertices.
//!
//! The crate provides:
//!
//! * [`Tournament`] with degree queries, `delta3`, `h`, Hamiltonian paths,
//!   canonical forms and enumeration up to isomorphism;
//! * [`ArcColoring`] with color statistics, the vertex-type classifier, the
//!   extremal coloring and restricted-growth enumeration of colorings;
//! * a backtracking decision procedure for rainbow arborescences together with
//!   exhaustive enumeration and matrix-tree counting used as oracles;
//! * the [`verify`] module, which checks the formula for `h(T)` and the
//!   structure of the extremal colorings exhaustively or by sampling.

pub mod arborescence;
pub mod canon;
pub mod coloring;
pub mod error;
pub mod format;
pub mod matrix;
pub mod partition;
pub mod proof_digraph;
pub mod rng;
pub mod search;
pub mod tournament;
pub mod verify;

pub use arborescence::{count_arborescences, enumerate_arborescences, Arborescence, RainbowOracle};
pub use canon::{canonical_form, enumerate_tournaments, EnumerationLimits};
pub use coloring::{
    classify_vertex, color_stats, extremal_coloring, merge_colors, ArcColoring, ColorStats,
    VertexType,
};
pub use error::{Error, Result};
pub use partition::{enumerate_colorings, stirling2, RestrictedGrowth};
pub use proof_digraph::{proof_digraph, ProofDigraph};
pub use search::{has_rainbow_arborescence, SearchConfig, SearchOutcome, SearchStatus};
pub use tournament::{
    arc_count, arc_index, arc_pair, reachable_set, Orientation, Tournament, Triple, VertexSet,
    MAX_ORDER,
};
