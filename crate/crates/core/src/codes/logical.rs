use super::standard::{graph_of, GraphCode};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sim::StateVector;
use crate::symplectic::{BitMatrix, BitVec, PauliOp};

/// Largest `k` for which the minimum-weight basis search is exhaustive.
pub const EXHAUSTIVE_K: usize = 20;

/// Logical Pauli pairs of a code, indexed by logical qubit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogicalOps {
    pub x: Vec<PauliOp>,
    pub z: Vec<PauliOp>,
}

impl LogicalOps {
    pub fn k(&self) -> usize {
        self.x.len()
    }
}

/// Z-type logical X operators of minimum total weight, paired with logical Z
/// operators built from graph-state generators of the non-pivot vertices.
pub fn logical_operators(gc: &GraphCode) -> LogicalOps {
    let (d, k, n) = (gc.d(), gc.k(), gc.num_qubits());
    // Z^u commutes with every generator iff u_pivot = R u_rest.
    let support = |u: &BitVec| -> BitVec {
        let mut full = BitVec::zeros(n);
        for i in 0..d {
            full.set(i, gc.r.row(i).dot(u));
        }
        for j in u.iter_ones() {
            full.set(d + j, true);
        }
        full
    };
    let basis: Vec<BitVec> = if k <= EXHAUSTIVE_K {
        let mut cands: Vec<(usize, Vec<usize>, BitVec)> = (1u64..1 << k)
            .map(|bits| {
                let u = BitVec::from_ones(k, (0..k).filter(|j| bits >> j & 1 == 1));
                let s = support(&u);
                (s.count_ones(), s.iter_ones().collect(), u)
            })
            .collect();
        cands.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        let mut chosen: Vec<BitVec> = Vec::new();
        for (_, _, u) in cands {
            let mut rows = chosen.clone();
            rows.push(u.clone());
            if BitMatrix::from_rows(rows, k).rank() == chosen.len() + 1 {
                chosen.push(u);
                if chosen.len() == k {
                    break;
                }
            }
        }
        chosen
    } else {
        (0..k).map(|j| BitVec::unit(k, j)).collect()
    };

    let x = basis
        .iter()
        .map(|u| PauliOp::from_bits(BitVec::zeros(n), support(u), 0).expect("lengths agree"))
        .collect();

    // X_L[l] anticommutes with K_{d+j} iff u_l[j]; invert U to pair them.
    let g = graph_of(gc);
    let u = BitMatrix::from_rows(basis, k);
    let z = (0..k)
        .map(|m| {
            let w = u.solve(&BitVec::unit(k, m)).expect("basis is invertible");
            let mut op = PauliOp::identity(n);
            for j in w.iter_ones() {
                op.mul_assign_right(&graph_generator(&g, d + j));
            }
            op
        })
        .collect();
    LogicalOps { x, z }
}

/// `K_v = X_v Z_{N(v)}`.
pub fn graph_generator(g: &Graph, v: usize) -> PauliOp {
    let n = g.capacity();
    PauliOp::from_bits(BitVec::unit(n, v), g.neighbors(v).clone(), 0).expect("lengths agree")
}

/// Code graph plus one input vertex per logical qubit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentedGraph {
    pub base: Graph,
    /// Graph on `n + k` vertices; input `l` is vertex `n + l`.
    pub graph: Graph,
    pub k: usize,
}

impl AugmentedGraph {
    pub fn input_vertex(&self, l: usize) -> usize {
        self.base.capacity() + l
    }

    /// Non-pivot vertices followed by the inputs. With canonical logicals
    /// these induce a matching.
    pub fn sparse_vertices(&self) -> Vec<usize> {
        let n = self.base.capacity();
        (n - self.k..n + self.k).collect()
    }

    pub fn input_neighbors(&self, l: usize) -> Vec<usize> {
        self.graph.neighbor_list(self.input_vertex(l))
    }

    pub fn to_dot(&self, name: &str) -> String {
        let n = self.base.capacity();
        let mut out = format!("graph {name} {{\n");
        for v in 0..n {
            out.push_str(&format!("  {} [shape=circle];\n", v + 1));
        }
        for l in 0..self.k {
            out.push_str(&format!(
                "  in{} [shape=box, style=filled, fillcolor=lightgrey];\n",
                l + 1
            ));
        }
        let label = |v: usize| {
            if v < n {
                format!("{}", v + 1)
            } else {
                format!("in{}", v - n + 1)
            }
        };
        for (a, b) in self.graph.edges() {
            out.push_str(&format!("  {} -- {};\n", label(a), label(b)));
        }
        out.push_str("}\n");
        out
    }
}

/// Wires input `l` to the Z-support of `X_L[l]`.
pub fn augment(gc: &GraphCode, logicals: &LogicalOps) -> Result<AugmentedGraph> {
    let base = graph_of(gc);
    let n = gc.num_qubits();
    let k = logicals.k();
    if k != gc.k() {
        return Err(Error::Dimension {
            expected: gc.k(),
            found: k,
        });
    }
    let mut graph = base.clone();
    for (l, xl) in logicals.x.iter().enumerate() {
        if !xl.x_bits().is_zero() || xl.z_bits().is_zero() {
            return Err(Error::NonZTypeLogical(l + 1));
        }
        let v = graph.add_vertex();
        debug_assert_eq!(v, n + l);
        for q in xl.z_bits().iter_ones() {
            graph.add_edge(v, q)?;
        }
    }
    Ok(AugmentedGraph { base, graph, k })
}

/// `Π_l X_L[l]^{x_l} |G⟩` on the oracle.
pub fn codeword(gc: &GraphCode, x: &BitVec) -> Result<StateVector> {
    let logicals = logical_operators(gc);
    if x.len() != logicals.k() {
        return Err(Error::Dimension {
            expected: logicals.k(),
            found: x.len(),
        });
    }
    let mut sv = StateVector::graph_state(&graph_of(gc))?;
    for l in x.iter_ones() {
        sv.apply_pauli(&logicals.x[l])?;
    }
    Ok(sv)
}
