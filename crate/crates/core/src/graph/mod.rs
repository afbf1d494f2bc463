//! Graphs, local Clifford frames, and the graph-state rewrite engine.

mod engine;
mod frame;
mod graph;
mod symbolic;

pub use engine::{
    apply_frame, apply_rule, basis_through, chain_right, rule_byproducts, rule_byproducts_via,
    rule_graph, rule_graph_via, x_basis_through, x_rule_neighbor, Byproduct, FramedGraphState,
    MeasureRecord,
};
pub use frame::{FrameGate, LocalFrame, SignedLetter};
pub use graph::Graph;
pub use symbolic::{Affine, SymbolicMeasurement, SymbolicState};
