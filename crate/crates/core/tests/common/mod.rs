#![allow(dead_code)]

use mbqc_encoder::graph::{apply_frame, Graph, SymbolicState};
use mbqc_encoder::lattice::{
    lattice_graph, Layout, MeasurementOp, MeasurementPattern, Role, Site, Template, TILE,
};
use mbqc_encoder::runtime::execute;
use mbqc_encoder::sim::{Basis, Gate, OutcomeSource, StateVector, Tableau};
use mbqc_encoder::symplectic::{BitVec, Letter};
use rand::Rng;

pub const AMP_TOL: f64 = 1e-9;

/// Step of a random Clifford circuit.
#[derive(Clone, Copy, Debug)]
pub enum Step {
    Gate(Gate),
    Measure(Basis, usize),
}

pub fn random_gate<R: Rng>(rng: &mut R, n: usize) -> Gate {
    let q = rng.gen_range(0..n);
    let two = n >= 2 && rng.gen_bool(0.3);
    if two {
        let mut t = rng.gen_range(0..n - 1);
        if t >= q {
            t += 1;
        }
        if rng.gen_bool(0.5) {
            Gate::Cnot(q, t)
        } else {
            Gate::Cz(q, t)
        }
    } else {
        match rng.gen_range(0..6) {
            0 => Gate::H(q),
            1 => Gate::S(q),
            2 => Gate::Sdg(q),
            3 => Gate::X(q),
            4 => Gate::Y(q),
            _ => Gate::Z(q),
        }
    }
}

pub fn random_basis<R: Rng>(rng: &mut R) -> Basis {
    [Basis::X, Basis::Y, Basis::Z][rng.gen_range(0..3)]
}

pub fn random_circuit<R: Rng>(rng: &mut R, n: usize, depth: usize) -> Vec<Step> {
    (0..depth)
        .map(|_| {
            if rng.gen_bool(0.2) {
                Step::Measure(random_basis(rng), rng.gen_range(0..n))
            } else {
                Step::Gate(random_gate(rng, n))
            }
        })
        .collect()
}

/// Counts gathered while replaying one circuit on both simulators.
#[derive(Default, Debug, Clone, Copy)]
pub struct OracleStats {
    pub deterministic: usize,
    pub random: usize,
}

/// Runs `steps` on a tableau and the dense oracle in lockstep. Fails on any
/// disagreement in determinism, forced outcome, or post-measurement ray.
pub fn replay_against_oracle(
    n: usize,
    steps: &[Step],
    src: &mut OutcomeSource,
) -> Result<(Tableau, OracleStats), String> {
    let mut t = Tableau::new(n);
    let mut psi = StateVector::zero(n).map_err(|e| e.to_string())?;
    let mut stats = OracleStats::default();
    for step in steps {
        match *step {
            Step::Gate(g) => {
                t.apply(g).map_err(|e| e.to_string())?;
                psi.apply(g).map_err(|e| e.to_string())?;
            }
            Step::Measure(b, q) => {
                let p1 = psi.probability(b, q, true).map_err(|e| e.to_string())?;
                let m = t.measure(b, q, src).map_err(|e| e.to_string())?;
                if m.deterministic {
                    stats.deterministic += 1;
                    let want = if m.outcome { 1.0 } else { 0.0 };
                    if (p1 - want).abs() > AMP_TOL {
                        return Err(format!(
                            "{step:?}: forced {} but oracle P(1)={p1}",
                            m.outcome as u8
                        ));
                    }
                } else {
                    stats.random += 1;
                    if (p1 - 0.5).abs() > AMP_TOL {
                        return Err(format!("{step:?}: random but oracle P(1)={p1}"));
                    }
                }
                psi.project(b, q, m.outcome).map_err(|e| e.to_string())?;
            }
        }
        let from_t = StateVector::from_tableau(&t).map_err(|e| e.to_string())?;
        if !from_t.approx_eq_ray(&psi, AMP_TOL) {
            return Err(format!("{step:?}: post-state differs from oracle"));
        }
    }
    Ok((t, stats))
}

/// Frequency of outcome 1 over `shots` independent measurements of a
/// non-deterministic observable, or `None` if every choice is deterministic.
pub fn sample_frequency(t: &Tableau, shots: usize, seed: u64) -> Option<(Basis, usize, usize)> {
    let mut src = OutcomeSource::seeded(seed);
    for q in 0..t.num_qubits() {
        for b in [Basis::Z, Basis::X, Basis::Y] {
            let mut probe = t.clone();
            if probe
                .measure(b, q, &mut OutcomeSource::Constant(false))
                .unwrap()
                .deterministic
            {
                continue;
            }
            let ones = (0..shots)
                .filter(|_| t.clone().measure(b, q, &mut src).unwrap().outcome)
                .count();
            return Some((b, q, ones));
        }
    }
    None
}

pub fn chain(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// The six-vertex graph of the worked example, 0-based.
pub fn worked_graph() -> Graph {
    Graph::from_edges(6, &[(0, 1), (0, 3), (0, 4), (1, 2), (2, 3), (2, 5), (3, 4)]).unwrap()
}

/// Drops measured qubits (each in an eigenstate of its basis) from `t` and
/// returns the remaining qubits in ascending original index.
pub fn drop_measured(t: &Tableau, measured: &[(usize, Basis)]) -> (Tableau, Vec<usize>) {
    let mut t = t.clone();
    for &(q, b) in measured {
        match b {
            Basis::Z => {}
            Basis::X => t.h(q),
            Basis::Y => {
                t.sdg(q);
                t.h(q);
            }
        }
    }
    let mut labels: Vec<usize> = (0..t.num_qubits()).collect();
    for &(q, _) in measured {
        let pos = labels.iter().position(|&l| l == q).unwrap();
        t.remove_qubit(pos).expect("measured qubit factors out");
        labels.swap_remove(pos);
    }
    let mut sorted = labels.clone();
    sorted.sort_unstable();
    let order: Vec<usize> = sorted
        .iter()
        .map(|l| labels.iter().position(|x| x == l).unwrap())
        .collect();
    (t.permuted(&order).unwrap(), sorted)
}

/// A single template measured through its three fixed rounds. Its terminals,
/// taken in the order `l, r, t, b`, are the outputs.
pub struct Gadget {
    pub pattern: MeasurementPattern,
    pub sym: SymbolicState,
    pub terminals: Vec<usize>,
}

pub fn gadget(t: &Template) -> Gadget {
    let mut layout = Layout::new(1, 1);
    layout.place(0, 0, t, 0, 1);
    let terminals: Vec<usize> = [(2, 0), (2, 4), (0, 2), (4, 2)]
        .into_iter()
        .filter(|&(r, c)| t.rows[r].as_bytes()[c] == b'T')
        .map(|(r, c)| r * TILE + c)
        .collect();
    let mut sym = SymbolicState::new(lattice_graph(TILE, TILE), TILE * TILE - terminals.len());
    let mut pattern = MeasurementPattern::empty(TILE, TILE);
    let mut var = 0;
    for (role, logical) in [
        (Role::Prune, Letter::Z),
        (Role::Junction, Letter::Y),
        (Role::Center, Letter::Y),
    ] {
        let mut ops = Vec::new();
        for (s, _) in layout.sites().filter(|&(_, r)| r == role) {
            let i = layout.index(s);
            let basis = sym.logical_basis(i, logical).unwrap();
            sym.measure(basis, i, var).unwrap();
            var += 1;
            ops.push(MeasurementOp::plain(s, basis));
        }
        pattern.rounds.push(ops);
    }
    pattern.outputs = terminals
        .iter()
        .enumerate()
        .map(|(v, &i)| (Site::new(i / TILE, i % TILE), v))
        .collect();
    Gadget {
        pattern,
        sym,
        terminals,
    }
}

impl Gadget {
    pub fn num_measurements(&self) -> usize {
        TILE * TILE - self.terminals.len()
    }

    /// Graph left on the terminals, relabelled in output order.
    pub fn terminal_graph(&self) -> Graph {
        let g = self.sym.graph();
        let k = self.terminals.len();
        let mut edges = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                if g.has_edge(self.terminals[a], self.terminals[b]) {
                    edges.push((a, b));
                }
            }
        }
        Graph::from_edges(k, &edges).unwrap()
    }

    /// Executes under `script` and strips the tracked frames from the outputs.
    pub fn run(&self, script: Vec<bool>) -> Tableau {
        let trace = execute(&self.pattern, &mut OutcomeSource::lenient_script(script)).unwrap();
        let bits = BitVec::from_bools(&trace.outcomes.iter().map(|r| r.value).collect::<Vec<_>>());
        let framed = self.sym.concretize(&bits);
        let mut t = trace.tableau;
        for (q, &v) in self.terminals.iter().enumerate() {
            apply_frame(&mut t, q, framed.frame(v).inverse());
        }
        t
    }
}
