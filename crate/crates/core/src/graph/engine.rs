use super::frame::{FrameGate, LocalFrame, SignedLetter};
use super::graph::Graph;
use crate::error::{Error, Result};
use crate::sim::{Basis, Tableau};
use crate::symplectic::{BitVec, Letter};

/// Local Clifford left on one vertex by a graphical measurement rule.
///
/// For logical outcome `s` the vertex receives `pauli[s] ∘ clifford`
/// (the Clifford part acts first).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Byproduct {
    pub vertex: usize,
    pub clifford: LocalFrame,
    pub pauli: [Letter; 2],
}

impl Byproduct {
    pub fn frame(&self, outcome: bool) -> LocalFrame {
        LocalFrame::pauli(self.pauli[outcome as usize]).compose(self.clifford)
    }
}

/// Neighbour used by the `X` rule: the smallest label.
pub fn x_rule_neighbor(g: &Graph, a: usize) -> Option<usize> {
    g.neighbors(a).first_one()
}

/// Byproducts of measuring logical `letter` on vertex `a` of the bare graph
/// state `|G⟩`.
pub fn rule_byproducts(g: &Graph, letter: Letter, a: usize) -> Result<Vec<Byproduct>> {
    rule_byproducts_via(g, letter, a, x_rule_neighbor(g, a))
}

/// As [`rule_byproducts`], with an explicit neighbour `b0` for the `X` rule.
pub fn rule_byproducts_via(
    g: &Graph,
    letter: Letter,
    a: usize,
    b0: Option<usize>,
) -> Result<Vec<Byproduct>> {
    if !g.contains(a) {
        return Err(Error::UnknownVertex(a));
    }
    let id = LocalFrame::IDENTITY;
    let mut out = Vec::new();
    match letter {
        Letter::I => return Err(Error::Precondition("identity is not a measurement".into())),
        Letter::Z => {
            for b in g.neighbors(a).iter_ones() {
                out.push(Byproduct {
                    vertex: b,
                    clifford: id,
                    pauli: [Letter::I, Letter::Z],
                });
            }
        }
        Letter::Y => {
            for b in g.neighbors(a).iter_ones() {
                out.push(Byproduct {
                    vertex: b,
                    clifford: LocalFrame::s(),
                    pauli: [Letter::I, Letter::Z],
                });
            }
        }
        Letter::X => {
            let Some(b0) = b0 else {
                return Ok(out);
            };
            if !g.has_edge(a, b0) {
                return Err(Error::Precondition(format!(
                    "{b0} is not a neighbour of {a}"
                )));
            }
            let na = g.neighbors(a);
            let nb = g.neighbors(b0);
            out.push(Byproduct {
                vertex: b0,
                clifford: LocalFrame::sqrt_i(SignedLetter::pos(Letter::Y)),
                pauli: [Letter::I, Letter::Y],
            });
            for c in na.and_not(nb).iter_ones().filter(|&c| c != b0) {
                out.push(Byproduct {
                    vertex: c,
                    clifford: id,
                    pauli: [Letter::Z, Letter::I],
                });
            }
            for c in nb.and_not(na).iter_ones().filter(|&c| c != a) {
                out.push(Byproduct {
                    vertex: c,
                    clifford: id,
                    pauli: [Letter::I, Letter::Z],
                });
            }
        }
    }
    Ok(out)
}

/// Graph left after measuring logical `letter` on `a`.
pub fn rule_graph(g: &Graph, letter: Letter, a: usize) -> Result<Graph> {
    rule_graph_via(g, letter, a, x_rule_neighbor(g, a))
}

pub fn rule_graph_via(g: &Graph, letter: Letter, a: usize, b0: Option<usize>) -> Result<Graph> {
    let mut h = g.clone();
    apply_rule(&mut h, letter, a, b0)?;
    Ok(h)
}

/// In-place form of [`rule_graph_via`].
pub fn apply_rule(g: &mut Graph, letter: Letter, a: usize, b0: Option<usize>) -> Result<()> {
    match letter {
        Letter::I => return Err(Error::Precondition("identity is not a measurement".into())),
        Letter::Z => g.remove_vertex(a)?,
        Letter::Y => {
            g.local_complement(a)?;
            g.remove_vertex(a)?;
        }
        Letter::X => match b0 {
            None => g.remove_vertex(a)?,
            Some(b0) => {
                g.local_complement(b0)?;
                g.local_complement(a)?;
                g.remove_vertex(a)?;
                g.local_complement(b0)?;
            }
        },
    }
    Ok(())
}

/// Checks the shape `v – a – b` required by chain contraction and returns
/// `N(b) \ {a}`.
pub fn chain_right(g: &Graph, v: usize, a: usize, b: usize) -> Result<BitVec> {
    for w in [v, a, b] {
        if !g.contains(w) {
            return Err(Error::UnknownVertex(w));
        }
    }
    let na = g.neighbors(a);
    if g.degree(a) != 2 || !na.get(v) || !na.get(b) {
        return Err(Error::Precondition(format!(
            "vertex {a} must have exactly the neighbours {v} and {b}"
        )));
    }
    if g.has_edge(v, b) {
        return Err(Error::Precondition(format!("{v} and {b} are adjacent")));
    }
    let mut left = g.neighbors(v).clone();
    left.set(a, false);
    let mut right = g.neighbors(b).clone();
    right.set(a, false);
    if !left.and(&right).is_zero() {
        return Err(Error::Precondition(format!(
            "neighbourhoods of {v} and {b} overlap"
        )));
    }
    Ok(right)
}

/// One performed measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MeasureRecord {
    pub vertex: usize,
    pub basis: Basis,
    /// Physical outcome.
    pub outcome: bool,
}

/// A graph state dressed with a local Clifford frame on every vertex:
/// the physical state is `⊗_v F_v |G⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedGraphState {
    graph: Graph,
    frames: Vec<LocalFrame>,
    record: Vec<MeasureRecord>,
}

impl FramedGraphState {
    pub fn new(graph: Graph) -> Self {
        let frames = vec![LocalFrame::IDENTITY; graph.capacity()];
        Self {
            graph,
            frames,
            record: Vec::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn frame(&self, v: usize) -> LocalFrame {
        self.frames[v]
    }

    pub fn record(&self) -> &[MeasureRecord] {
        &self.record
    }

    fn check(&self, v: usize) -> Result<()> {
        if self.graph.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Applies the physical gate `u` after the current state: `F_v ← u ∘ F_v`.
    pub fn apply_local(&mut self, v: usize, u: LocalFrame) -> Result<()> {
        self.check(v)?;
        self.frames[v] = u.compose(self.frames[v]);
        Ok(())
    }

    /// `F_a† B F_a` for the physical basis `B`.
    pub fn logical(&self, basis: Basis, a: usize) -> Result<SignedLetter> {
        self.check(a)?;
        Ok(self.frames[a].conjugate_inverse(SignedLetter::pos(basis.letter())))
    }

    /// Physical outcome if the measurement is deterministic.
    pub fn forced_outcome(&self, basis: Basis, a: usize) -> Result<Option<bool>> {
        let l = self.logical(basis, a)?;
        Ok((l.letter == Letter::X && self.graph.degree(a) == 0).then_some(l.neg))
    }

    /// Measures physical `basis` on `a` with physical `outcome`.
    pub fn measure(&mut self, basis: Basis, a: usize, outcome: bool) -> Result<()> {
        let b0 = x_rule_neighbor(&self.graph, a);
        self.measure_via(basis, a, outcome, b0)
    }

    /// As [`measure`](Self::measure), using neighbour `b0` if the logical
    /// basis is `X`.
    pub fn measure_via(
        &mut self,
        basis: Basis,
        a: usize,
        outcome: bool,
        b0: Option<usize>,
    ) -> Result<()> {
        if let Some(f) = self.forced_outcome(basis, a)? {
            if f != outcome {
                return Err(Error::Precondition(format!(
                    "measurement of vertex {a} is forced to {}",
                    f as u8
                )));
            }
        }
        let l = self.logical(basis, a)?;
        let s = outcome ^ l.neg;
        let b0 = if self.graph.degree(a) == 0 { None } else { b0 };
        let byproducts = rule_byproducts_via(&self.graph, l.letter, a, b0)?;
        apply_rule(&mut self.graph, l.letter, a, b0)?;
        for bp in byproducts {
            self.frames[bp.vertex] = self.frames[bp.vertex].compose(bp.frame(s));
        }
        self.frames[a] = LocalFrame::IDENTITY;
        self.record.push(MeasureRecord {
            vertex: a,
            basis,
            outcome,
        });
        Ok(())
    }

    pub fn measure_z(&mut self, a: usize, outcome: bool) -> Result<()> {
        self.measure(Basis::Z, a, outcome)
    }

    pub fn measure_y(&mut self, a: usize, outcome: bool) -> Result<()> {
        self.measure(Basis::Y, a, outcome)
    }

    pub fn measure_x(&mut self, a: usize, outcome: bool) -> Result<()> {
        self.measure(Basis::X, a, outcome)
    }

    /// Physical basis that measures logical `X` on `v`.
    pub fn logical_x_basis(&self, v: usize) -> Result<Basis> {
        self.check(v)?;
        Ok(x_basis_through(self.frames[v]))
    }

    /// Logical `X` measurements on `a` (physical outcome `x`) and `b`
    /// (physical outcome `y`) of a chain segment `v – a – b`, splicing `b`'s
    /// other neighbours onto `v`. Each is measured in
    /// [`logical_x_basis`](Self::logical_x_basis).
    pub fn contract_chain(&mut self, v: usize, a: usize, b: usize, x: bool, y: bool) -> Result<()> {
        let right = chain_right(&self.graph, v, a, b)?;
        let (ba, bb) = (self.logical_x_basis(a)?, self.logical_x_basis(b)?);
        let la = self.logical(ba, a)?;
        let lb = self.logical(bb, b)?;
        let (xl, yl) = (x ^ la.neg, y ^ lb.neg);
        self.graph.remove_vertex(a)?;
        self.graph.remove_vertex(b)?;
        let z = LocalFrame::pauli(Letter::Z);
        for r in right.iter_ones() {
            self.graph.add_edge(v, r)?;
            if xl {
                self.frames[r] = self.frames[r].compose(z);
            }
        }
        if yl {
            self.frames[v] = self.frames[v].compose(z);
        }
        self.frames[a] = LocalFrame::IDENTITY;
        self.frames[b] = LocalFrame::IDENTITY;
        self.record.push(MeasureRecord {
            vertex: a,
            basis: ba,
            outcome: x,
        });
        self.record.push(MeasureRecord {
            vertex: b,
            basis: bb,
            outcome: y,
        });
        Ok(())
    }

    /// Tableau of the physical state on the present vertices, in ascending
    /// label order (returned alongside).
    pub fn realize(&self) -> Result<(Tableau, Vec<usize>)> {
        let labels: Vec<usize> = self.graph.vertices().collect();
        let compact = self.graph.induced(&labels)?;
        let mut t = Tableau::graph_state(&compact)?;
        for (q, &v) in labels.iter().enumerate() {
            apply_frame(&mut t, q, self.frames[v]);
        }
        Ok((t, labels))
    }
}

/// Physical basis `F P F†` up to sign, for a non-identity letter `P`.
pub fn basis_through(f: LocalFrame, logical: Letter) -> Basis {
    Basis::from_letter(f.conjugate(SignedLetter::pos(logical)).letter)
        .expect("image is not identity")
}

/// Physical basis `F X F†` up to sign.
pub fn x_basis_through(f: LocalFrame) -> Basis {
    basis_through(f, Letter::X)
}

/// Applies `f` to qubit `q` of a tableau as `H`/`S` gates.
pub fn apply_frame(t: &mut Tableau, q: usize, f: LocalFrame) {
    for g in f.gate_word() {
        match g {
            FrameGate::H => t.h(q),
            FrameGate::S => t.s(q),
        }
    }
}
