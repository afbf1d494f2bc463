use std::collections::HashMap;
use std::fmt::Write as _;

use crate::codes::graph_generator;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lattice::{MeasId, MeasurementOp, MeasurementPattern, Site};
use crate::sim::{Basis, OutcomeSource, Tableau};
use crate::symplectic::Letter;

/// Largest number of simultaneously live qubits the executor accepts.
pub const SIM_BUDGET: usize = 4096;

/// One recorded measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OutcomeRecord {
    pub id: MeasId,
    /// Outcome after the sign signal.
    pub value: bool,
    pub deterministic: bool,
}

#[derive(Clone, Debug)]
pub struct ExecutionTrace {
    /// In pattern order.
    pub outcomes: Vec<OutcomeRecord>,
    /// Corrections whose signal evaluated to 1.
    pub applied: Vec<(Site, Letter)>,
    /// Output qubits in target-vertex order.
    pub tableau: Tableau,
    pub peak_qubits: usize,
}

impl ExecutionTrace {
    pub fn outcome(&self, id: MeasId) -> Option<bool> {
        self.outcomes.iter().find(|r| r.id == id).map(|r| r.value)
    }

    /// `outcome m<r>.<i> = b` lines, then the output check matrix.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for r in &self.outcomes {
            let _ = writeln!(out, "outcome {} = {}", r.id, u8::from(r.value));
        }
        if self.tableau.num_qubits() > 0 {
            out.push_str(&self.tableau.check_matrix().serialize());
        }
        out
    }
}

struct Live {
    t: Tableau,
    qubit_of: Vec<Option<usize>>,
    site_of: Vec<usize>,
}

impl Live {
    fn add(&mut self, s: usize) -> usize {
        let q = self.t.add_qubit();
        self.t.h(q);
        self.qubit_of[s] = Some(q);
        self.site_of.push(s);
        q
    }

    fn qubit(&self, s: usize) -> usize {
        self.qubit_of[s].expect("site is live")
    }

    /// Rotates a measured qubit to `Z` and drops it.
    fn retire(&mut self, s: usize, basis: Basis) -> Result<()> {
        let q = self.qubit(s);
        match basis {
            Basis::X => self.t.h(q),
            Basis::Y => {
                self.t.sdg(q);
                self.t.h(q);
            }
            Basis::Z => {}
        }
        self.t.remove_qubit(q)?;
        self.site_of.swap_remove(q);
        if let Some(&moved) = self.site_of.get(q) {
            self.qubit_of[moved] = Some(q);
        }
        self.qubit_of[s] = None;
        Ok(())
    }
}

/// Runs `p` on the simulator, growing the lattice row by row.
///
/// A site is measured once its neighbours exist and its signals resolve.
/// Measurements on distinct qubits commute, so the result matches running
/// the rounds in order. Scripted outcomes are keyed by the measurement's
/// position in pattern order.
pub fn execute(p: &MeasurementPattern, src: &mut OutcomeSource) -> Result<ExecutionTrace> {
    p.validate()?;
    let ops: Vec<(MeasId, &MeasurementOp)> = p.measurements().collect();
    let position: HashMap<MeasId, usize> = ops
        .iter()
        .enumerate()
        .map(|(i, (id, _))| (*id, i))
        .collect();
    let index = |s: Site| s.row * p.cols + s.col;
    let mut by_row: Vec<Vec<usize>> = vec![Vec::new(); p.rows];
    for (i, (_, op)) in ops.iter().enumerate() {
        by_row[op.site.row].push(i);
    }

    let mut live = Live {
        t: Tableau::new(0),
        qubit_of: vec![None; p.rows * p.cols],
        site_of: Vec::new(),
    };
    let mut outcomes: Vec<Option<(bool, bool)>> = vec![None; ops.len()];
    let mut pending: Vec<usize> = Vec::new();
    let mut peak = 0;

    let mut drain = |pending: &mut Vec<usize>,
                     live: &mut Live,
                     outcomes: &mut Vec<Option<(bool, bool)>>|
     -> Result<()> {
        pending.sort_unstable();
        loop {
            let before = pending.len();
            let mut i = 0;
            while i < pending.len() {
                let k = pending[i];
                let op = ops[k].1;
                let lookup = |id: MeasId| outcomes[position[&id]].map(|o| o.0);
                let (Some(flip), Some(sign)) = (op.flip.eval(lookup), op.sign.eval(lookup)) else {
                    i += 1;
                    continue;
                };
                let basis = op.effective_basis(flip);
                let q = live.qubit(index(op.site));
                let m = live.t.measure_keyed(basis, q, src, k)?;
                live.retire(index(op.site), basis)?;
                outcomes[k] = Some((m.outcome ^ sign, m.deterministic));
                pending.remove(i);
            }
            if pending.len() == before {
                return Ok(());
            }
        }
    };

    for r in 0..p.rows {
        for c in 0..p.cols {
            let s = r * p.cols + c;
            let q = live.add(s);
            if c > 0 {
                let left = live.qubit(s - 1);
                live.t.cz(q, left);
            }
            if r > 0 {
                let up = live.qubit(s - p.cols);
                live.t.cz(q, up);
            }
        }
        peak = peak.max(live.t.num_qubits());
        if live.t.num_qubits() > SIM_BUDGET {
            return Err(Error::Budget {
                needed: live.t.num_qubits(),
                limit: SIM_BUDGET,
            });
        }
        if r > 0 {
            pending.extend(&by_row[r - 1]);
            drain(&mut pending, &mut live, &mut outcomes)?;
        }
    }
    if let Some(last) = by_row.last() {
        pending.extend(last);
    }
    drain(&mut pending, &mut live, &mut outcomes)?;
    if let Some(&k) = pending.first() {
        return Err(Error::UnresolvedSignal(ops[k].0.to_string()));
    }

    let lookup = |id: MeasId| outcomes[position[&id]].map(|o| o.0);
    let mut applied = Vec::new();
    for c in &p.corrections {
        let on = c
            .signal
            .eval(lookup)
            .ok_or_else(|| Error::UnresolvedSignal(c.signal.to_string()))?;
        if on {
            let q = live.qubit(index(c.site));
            match c.pauli {
                Letter::X => live.t.x(q),
                Letter::Y => live.t.y(q),
                Letter::Z => live.t.z(q),
                Letter::I => {}
            }
            applied.push((c.site, c.pauli));
        }
    }

    let mut outputs = p.outputs.clone();
    outputs.sort_by_key(|&(_, v)| v);
    let order: Vec<usize> = outputs.iter().map(|&(s, _)| live.qubit(index(s))).collect();
    let tableau = live.t.permuted(&order)?;
    let outcomes = ops
        .iter()
        .zip(outcomes)
        .map(|((id, _), o)| {
            let (value, deterministic) = o.expect("every measurement ran");
            OutcomeRecord {
                id: *id,
                value,
                deterministic,
            }
        })
        .collect();
    Ok(ExecutionTrace {
        outcomes,
        applied,
        tableau,
        peak_qubits: peak,
    })
}

/// Whether every `+X_v Z_{N(v)}` stabilizes `t`.
pub fn verify_graph_state(t: &Tableau, g: &Graph) -> Result<bool> {
    if t.num_qubits() != g.capacity() {
        return Err(Error::Dimension {
            expected: g.capacity(),
            found: t.num_qubits(),
        });
    }
    for v in g.vertices() {
        if t.stabilizer_sign(&graph_generator(g, v))? != Some(false) {
            return Ok(false);
        }
    }
    Ok(true)
}
