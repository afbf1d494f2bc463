//! Graph-code standard form, logical operators and the augmented graph.

mod logical;
mod standard;

pub use logical::{
    augment, codeword, graph_generator, logical_operators, AugmentedGraph, LogicalOps, EXHAUSTIVE_K,
};
pub use standard::{
    graph_of, standard_form, GraphCode, LocalCliffordCircuit, LocalGate, StandardForm,
};
