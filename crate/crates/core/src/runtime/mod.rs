//! Pattern execution, verification and encoding by teleportation.

mod encode;
mod execute;

pub use encode::{encode_state, stabilizer_state, Encoding, EncodingJob};
pub use execute::{execute, verify_graph_state, ExecutionTrace, OutcomeRecord, SIM_BUDGET};
