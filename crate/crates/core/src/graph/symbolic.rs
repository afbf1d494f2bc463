use std::fmt;

use super::engine::{
    apply_rule, basis_through, chain_right, rule_byproducts_via, x_basis_through, x_rule_neighbor,
    FramedGraphState,
};
use super::frame::{LocalFrame, SignedLetter};
use super::graph::Graph;
use crate::error::{Error, Result};
use crate::sim::Basis;
use crate::symplectic::{BitVec, Letter};

/// Affine GF(2) expression `constant ⊕ Σ_{i ∈ vars} m_i` over measurement
/// outcomes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Affine {
    pub vars: BitVec,
    pub constant: bool,
}

impl Affine {
    pub fn zero(nvars: usize) -> Self {
        Self {
            vars: BitVec::zeros(nvars),
            constant: false,
        }
    }

    pub fn constant(nvars: usize, c: bool) -> Self {
        Self {
            vars: BitVec::zeros(nvars),
            constant: c,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self {
            vars: BitVec::unit(nvars, i),
            constant: false,
        }
    }

    pub fn is_zero(&self) -> bool {
        !self.constant && self.vars.is_zero()
    }

    pub fn xor_assign(&mut self, other: &Affine) {
        self.vars.xor_assign(&other.vars);
        self.constant ^= other.constant;
    }

    pub fn xor(&self, other: &Affine) -> Affine {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    pub fn flip(&mut self) {
        self.constant ^= true;
    }

    pub fn eval(&self, outcomes: &BitVec) -> bool {
        self.constant ^ self.vars.dot(outcomes)
    }
}

impl fmt::Debug for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<String> = self.vars.iter_ones().map(|i| format!("m{i}")).collect();
        if self.constant {
            terms.push("1".into());
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

/// Outcome-independent facts about a tracked measurement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymbolicMeasurement {
    /// Basis measured on the underlying graph state.
    pub logical: Letter,
    /// Logical outcome as an affine function of the physical outcomes.
    pub outcome: Affine,
    /// Physical outcome, if forced.
    pub forced: Option<Affine>,
}

/// Framed graph state whose Pauli byproducts are symbolic in the outcomes.
///
/// The frame of vertex `v` is `X^{px_v} Z^{pz_v} ∘ C_v` up to phase, with
/// `C_v` a concrete local Clifford.
#[derive(Clone, Debug)]
pub struct SymbolicState {
    graph: Graph,
    cliff: Vec<LocalFrame>,
    px: Vec<Affine>,
    pz: Vec<Affine>,
    nvars: usize,
}

impl SymbolicState {
    pub fn new(graph: Graph, nvars: usize) -> Self {
        let cap = graph.capacity();
        Self {
            graph,
            cliff: vec![LocalFrame::IDENTITY; cap],
            px: vec![Affine::zero(nvars); cap],
            pz: vec![Affine::zero(nvars); cap],
            nvars,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn clifford(&self, v: usize) -> LocalFrame {
        self.cliff[v]
    }

    pub fn pauli_exprs(&self, v: usize) -> (&Affine, &Affine) {
        (&self.px[v], &self.pz[v])
    }

    fn check(&self, v: usize) -> Result<()> {
        if self.graph.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    fn check_var(&self, id: usize) -> Result<()> {
        if id < self.nvars {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "measurement id {id} beyond {}",
                self.nvars
            )))
        }
    }

    /// Multiplies `letter^{e}` into the Pauli part of vertex `v`.
    fn add_pauli(&mut self, v: usize, letter: Letter, e: &Affine) {
        let (x, z) = letter.encode();
        if x {
            self.px[v].xor_assign(e);
        }
        if z {
            self.pz[v].xor_assign(e);
        }
    }

    /// Exponent of the sign picked up by physical `basis` from the Pauli part.
    fn anti(&self, basis: Basis, v: usize) -> Affine {
        match basis {
            Basis::X => self.pz[v].clone(),
            Basis::Z => self.px[v].clone(),
            Basis::Y => self.px[v].xor(&self.pz[v]),
        }
    }

    /// Logical letter and outcome of measuring physical `basis` on `a`,
    /// without changing the state.
    pub fn preview(&self, basis: Basis, a: usize, id: usize) -> Result<SymbolicMeasurement> {
        self.check(a)?;
        self.check_var(id)?;
        let l = self.cliff[a].conjugate_inverse(SignedLetter::pos(basis.letter()));
        let mut corr = self.anti(basis, a);
        if l.neg {
            corr.flip();
        }
        let outcome = Affine::var(self.nvars, id).xor(&corr);
        let forced = (l.letter == Letter::X && self.graph.degree(a) == 0).then_some(corr);
        Ok(SymbolicMeasurement {
            logical: l.letter,
            outcome,
            forced,
        })
    }

    /// Physical measurement of `basis` on `a`, outcome variable `id`.
    pub fn measure(&mut self, basis: Basis, a: usize, id: usize) -> Result<SymbolicMeasurement> {
        let m = self.preview(basis, a, id)?;
        let b0 = x_rule_neighbor(&self.graph, a);
        let byproducts = rule_byproducts_via(&self.graph, m.logical, a, b0)?;
        apply_rule(&mut self.graph, m.logical, a, b0)?;
        let zero = Affine::zero(self.nvars);
        for bp in byproducts {
            let c = self.cliff[bp.vertex];
            let p0 = c.conjugate(SignedLetter::pos(bp.pauli[0])).letter;
            let p01 = letter_product(bp.pauli[0], bp.pauli[1]);
            let p1 = c.conjugate(SignedLetter::pos(p01)).letter;
            let mut one = zero.clone();
            one.flip();
            self.add_pauli(bp.vertex, p0, &one);
            self.add_pauli(bp.vertex, p1, &m.outcome);
            self.cliff[bp.vertex] = c.compose(bp.clifford);
        }
        self.clear(a);
        Ok(m)
    }

    fn clear(&mut self, a: usize) {
        self.cliff[a] = LocalFrame::IDENTITY;
        self.px[a] = Affine::zero(self.nvars);
        self.pz[a] = Affine::zero(self.nvars);
    }

    /// Physical basis that measures the logical letter `p` on `v`.
    pub fn logical_basis(&self, v: usize, p: Letter) -> Result<Basis> {
        self.check(v)?;
        if p == Letter::I {
            return Err(Error::Precondition("identity is not a measurement".into()));
        }
        Ok(basis_through(self.cliff[v], p))
    }

    /// Physical basis that measures logical `X` on `v`.
    pub fn logical_x_basis(&self, v: usize) -> Result<Basis> {
        self.check(v)?;
        Ok(x_basis_through(self.cliff[v]))
    }

    /// Logical `X` on `a` (variable `ia`) and `b` (variable `ib`) of a chain
    /// segment `v – a – b`; see [`FramedGraphState::contract_chain`].
    pub fn contract_chain(
        &mut self,
        v: usize,
        a: usize,
        b: usize,
        ia: usize,
        ib: usize,
    ) -> Result<(Basis, Basis)> {
        let right = chain_right(&self.graph, v, a, b)?;
        let (ba, bb) = (self.logical_x_basis(a)?, self.logical_x_basis(b)?);
        let x = self.preview(ba, a, ia)?.outcome;
        let y = self.preview(bb, b, ib)?.outcome;
        self.graph.remove_vertex(a)?;
        self.graph.remove_vertex(b)?;
        for r in right.iter_ones() {
            self.graph.add_edge(v, r)?;
            let l = self.cliff[r].conjugate(SignedLetter::pos(Letter::Z)).letter;
            self.add_pauli(r, l, &x);
        }
        let l = self.cliff[v].conjugate(SignedLetter::pos(Letter::Z)).letter;
        self.add_pauli(v, l, &y);
        self.clear(a);
        self.clear(b);
        Ok((ba, bb))
    }

    /// Pauli `X^{ex} Z^{ez}` that returns vertex `v` to the bare graph state,
    /// if its Clifford part is a Pauli.
    pub fn correction(&self, v: usize) -> Result<(Affine, Affine)> {
        self.check(v)?;
        let c = self.cliff[v].as_pauli().ok_or_else(|| {
            Error::Compile(format!(
                "vertex {v} ends with non-Pauli frame {}",
                self.cliff[v]
            ))
        })?;
        let (cx, cz) = c.encode();
        let mut ex = self.px[v].clone();
        let mut ez = self.pz[v].clone();
        ex.constant ^= cx;
        ez.constant ^= cz;
        Ok((ex, ez))
    }

    /// Concrete framed state for a given outcome assignment.
    pub fn concretize(&self, outcomes: &BitVec) -> FramedGraphState {
        let mut f = FramedGraphState::new(self.graph.clone());
        for v in self.graph.vertices() {
            let x = self.px[v].eval(outcomes);
            let z = self.pz[v].eval(outcomes);
            let p = LocalFrame::pauli(Letter::decode(x, z));
            f.apply_local(v, p.compose(self.cliff[v]))
                .expect("vertex present");
        }
        f
    }
}

/// Letter of `a · b` modulo phase.
fn letter_product(a: Letter, b: Letter) -> Letter {
    let (ax, az) = a.encode();
    let (bx, bz) = b.encode();
    Letter::decode(ax ^ bx, az ^ bz)
}
