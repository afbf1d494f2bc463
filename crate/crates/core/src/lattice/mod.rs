//! Compilation of graph states into measurement patterns on a 2D cluster
//! state.

mod compile;
mod layout;
mod pattern;

pub use compile::{choose_band, compile, compile_compact, lattice_graph};
pub use layout::{
    Arms, Layout, Role, Template, BOTTOM, CROSS, EDGE_LB, EDGE_RB, LEFT, PASS_H, RIGHT, TILE, TOP,
};
pub use pattern::{
    Correction, MeasId, MeasurementOp, MeasurementPattern, PatternMetrics, Signal, Site,
};
