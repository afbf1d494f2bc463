use std::fmt::{self, Write as _};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{Graph, LocalFrame, SignedLetter};
use crate::sim::Tableau;
use crate::symplectic::{BitMatrix, BitVec, CheckMatrix, Letter, PauliOp};

/// Graph code with generators `[I, R | A + R Cᵀ, C]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphCode {
    pub r: BitMatrix,
    pub a: BitMatrix,
    pub c: BitMatrix,
    /// Generator signs; bit set means `−1`.
    pub signs: BitVec,
}

impl GraphCode {
    /// Validates block shapes and the symmetric, zero-diagonal `A`.
    pub fn new(r: BitMatrix, a: BitMatrix, c: BitMatrix) -> Result<Self> {
        let d = a.nrows();
        let signs = BitVec::zeros(d);
        Self::with_signs(r, a, c, signs)
    }

    pub fn with_signs(r: BitMatrix, a: BitMatrix, c: BitMatrix, signs: BitVec) -> Result<Self> {
        let d = a.nrows();
        if a.ncols() != d
            || r.nrows() != d
            || c.nrows() != d
            || r.ncols() != c.ncols()
            || signs.len() != d
        {
            return Err(Error::InvalidStabilizer(
                "graph-code blocks have inconsistent shapes".into(),
            ));
        }
        if d == 0 && r.ncols() == 0 {
            return Err(Error::InvalidStabilizer("zero qubits".into()));
        }
        if !a.is_symmetric() || (0..d).any(|i| a.get(i, i)) {
            return Err(Error::InvalidStabilizer(
                "A must be symmetric with zero diagonal".into(),
            ));
        }
        Ok(Self { r, a, c, signs })
    }

    pub fn num_qubits(&self) -> usize {
        self.d() + self.k()
    }

    pub fn d(&self) -> usize {
        self.a.nrows()
    }

    pub fn k(&self) -> usize {
        self.r.ncols()
    }

    /// The Z block `[A + R Cᵀ, C]`.
    pub fn z_block(&self) -> BitMatrix {
        self.a.add(&self.r.mul(&self.c.transpose())).hstack(&self.c)
    }

    pub fn x_block(&self) -> BitMatrix {
        BitMatrix::identity(self.d()).hstack(&self.r)
    }

    pub fn check_matrix(&self) -> CheckMatrix {
        CheckMatrix::from_blocks(&self.x_block(), &self.z_block())
            .and_then(|m| m.with_signs(self.signs.clone()))
            .expect("blocks are consistent")
    }

    /// Adjacency `[[A, C], [Cᵀ, 0]]`.
    pub fn adjacency(&self) -> BitMatrix {
        let (d, k) = (self.d(), self.k());
        let top = self.a.hstack(&self.c);
        let bottom = self.c.transpose().hstack(&BitMatrix::zeros(k, k));
        let mut rows = top.into_rows();
        rows.extend(bottom.into_rows());
        BitMatrix::from_rows(rows, d + k)
    }

    /// Recovers the blocks from a check matrix already in graph-code form.
    pub fn from_check_matrix(m: &CheckMatrix) -> Result<Self> {
        let (n, d) = (m.num_qubits(), m.num_generators());
        let x = m.x_block();
        let z = m.z_block();
        if x.columns(0, d) != BitMatrix::identity(d) {
            return Err(Error::InvalidStabilizer(
                "X block does not start with I".into(),
            ));
        }
        let r = x.columns(d, n);
        let c = z.columns(d, n);
        let a = z.columns(0, d).add(&r.mul(&c.transpose()));
        let signs = m.signs().cloned().unwrap_or_else(|| BitVec::zeros(d));
        Self::with_signs(r, a, c, signs)
    }

    /// Check-matrix text with the blocks separated by spaces.
    pub fn serialize(&self) -> String {
        let (d, n) = (self.d(), self.num_qubits());
        let x = self.x_block();
        let z = self.z_block();
        let mut out = format!(
            "# graph code n={n} d={d} k={}\n# columns: I R | A+RC^T C\n{n} {d}\n",
            self.k()
        );
        for i in 0..d {
            let bits = |m: &BitMatrix, a: usize, b: usize| {
                (a..b)
                    .map(|j| if m.get(i, j) { '1' } else { '0' })
                    .collect::<String>()
            };
            let _ = writeln!(
                out,
                "{} {} | {} {} {}",
                bits(&x, 0, d),
                bits(&x, d, n),
                bits(&z, 0, d),
                bits(&z, d, n),
                if self.signs.get(i) { '-' } else { '+' }
            );
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::from_check_matrix(&CheckMatrix::parse(text)?)
    }
}

/// Graph with adjacency `[[A, C], [Cᵀ, 0]]`.
pub fn graph_of(gc: &GraphCode) -> Graph {
    Graph::from_adjacency(&gc.adjacency()).expect("adjacency is symmetric with zero diagonal")
}

/// Single-qubit gate in a local Clifford circuit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocalGate {
    H,
    S,
    Z,
    X,
}

impl LocalGate {
    pub fn frame(self) -> LocalFrame {
        match self {
            LocalGate::H => LocalFrame::h(),
            LocalGate::S => LocalFrame::s(),
            LocalGate::Z => LocalFrame::pauli(Letter::Z),
            LocalGate::X => LocalFrame::pauli(Letter::X),
        }
    }
}

impl fmt::Display for LocalGate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LocalGate::H => "H",
            LocalGate::S => "S",
            LocalGate::Z => "Z",
            LocalGate::X => "X",
        };
        f.write_str(s)
    }
}

impl FromStr for LocalGate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "H" => Ok(LocalGate::H),
            "S" => Ok(LocalGate::S),
            "Z" => Ok(LocalGate::Z),
            "X" => Ok(LocalGate::X),
            _ => Err(Error::parse(1, 1, format!("unknown gate {s:?}"))),
        }
    }
}

/// Ordered single-qubit gates; sites are 0-based.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LocalCliffordCircuit {
    pub gates: Vec<(LocalGate, usize)>,
}

impl LocalCliffordCircuit {
    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn push(&mut self, gate: LocalGate, site: usize) {
        self.gates.push((gate, site));
    }

    /// `U P U†` including the sign.
    pub fn conjugate(&self, p: &PauliOp) -> PauliOp {
        let mut out = p.clone();
        for &(g, q) in &self.gates {
            conjugate_site(&mut out, q, g.frame());
        }
        out
    }

    /// `U† P U` including the sign.
    pub fn conjugate_inverse(&self, p: &PauliOp) -> PauliOp {
        let mut out = p.clone();
        for &(g, q) in self.gates.iter().rev() {
            conjugate_site(&mut out, q, g.frame().inverse());
        }
        out
    }

    /// Applies `U†`.
    pub fn apply_inverse(&self, t: &mut Tableau) {
        for &(g, q) in self.gates.iter().rev() {
            match g {
                LocalGate::H => t.h(q),
                LocalGate::S => t.sdg(q),
                LocalGate::Z => t.z(q),
                LocalGate::X => t.x(q),
            }
        }
    }

    pub fn apply(&self, t: &mut Tableau) {
        for &(g, q) in &self.gates {
            match g {
                LocalGate::H => t.h(q),
                LocalGate::S => t.s(q),
                LocalGate::Z => t.z(q),
                LocalGate::X => t.x(q),
            }
        }
    }

    /// One `gate site` line per gate, sites 1-based.
    pub fn serialize(&self) -> String {
        self.gates
            .iter()
            .map(|(g, q)| format!("{g} {}\n", q + 1))
            .collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut c = Self::default();
        for (i, line) in text.lines().enumerate() {
            let body = line.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let mut parts = body.split_whitespace();
            let (Some(g), Some(q), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(Error::parse(i + 1, 1, "expected `gate site`"));
            };
            let gate = g
                .parse()
                .map_err(|_| Error::parse(i + 1, 1, format!("unknown gate {g:?}")))?;
            let site: usize = q
                .parse()
                .ok()
                .filter(|&s| s >= 1)
                .ok_or_else(|| Error::parse(i + 1, g.len() + 2, format!("bad site {q:?}")))?;
            c.push(gate, site - 1);
        }
        Ok(c)
    }
}

/// Conjugates qubit `q` of `p` by `f`, folding the sign into the phase.
pub(crate) fn conjugate_site(p: &mut PauliOp, q: usize, f: LocalFrame) {
    let l = p.letter(q);
    if l == Letter::I {
        return;
    }
    let img = f.conjugate(SignedLetter::pos(l));
    p.set_letter(q, img.letter);
    if img.neg {
        p.negate();
    }
}

/// Result of bringing a code to graph-code form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    pub code: GraphCode,
    /// Gates on the original qubits.
    pub circuit: LocalCliffordCircuit,
    /// Graph-code qubit `i` is original qubit `order[i]`.
    pub order: Vec<usize>,
}

impl StandardForm {
    /// Maps an operator on the original qubits to graph-code qubit order.
    pub fn reorder(&self, p: &PauliOp) -> PauliOp {
        let mut x = BitVec::zeros(self.order.len());
        let mut z = BitVec::zeros(self.order.len());
        for (i, &q) in self.order.iter().enumerate() {
            x.set(i, p.x_bits().get(q));
            z.set(i, p.z_bits().get(q));
        }
        let mut out = PauliOp::from_bits(x, z, 0).expect("lengths agree");
        out.set_phase(p.phase());
        out
    }

    /// Inverse of `reorder ∘ conjugate`: maps a graph-code operator back to
    /// the original qubits and frame.
    pub fn restore(&self, p: &PauliOp) -> PauliOp {
        let n = self.order.len();
        let mut x = BitVec::zeros(n);
        let mut z = BitVec::zeros(n);
        for (i, &q) in self.order.iter().enumerate() {
            x.set(q, p.x_bits().get(i));
            z.set(q, p.z_bits().get(i));
        }
        let mut out = PauliOp::from_bits(x, z, 0).expect("lengths agree");
        out.set_phase(p.phase());
        self.circuit.conjugate_inverse(&out)
    }

    /// Qubit order that undoes [`order`](Self::order).
    pub fn inverse_order(&self) -> Vec<usize> {
        let mut inv = vec![0; self.order.len()];
        for (i, &q) in self.order.iter().enumerate() {
            inv[q] = i;
        }
        inv
    }
}

/// Symplectic Gaussian elimination to `[I, R | A + R Cᵀ, C]`.
pub fn standard_form(code: &CheckMatrix) -> Result<StandardForm> {
    code.validate()?;
    let n = code.num_qubits();
    let d = code.num_generators();
    let mut rows = code.generators();
    let mut circuit = LocalCliffordCircuit::default();
    let mut pivots = Vec::with_capacity(d);

    for col in 0..n {
        let rank = pivots.len();
        if rank == d {
            break;
        }
        let p = match (rank..d).find(|&r| rows[r].x_bits().get(col)) {
            Some(p) => p,
            None => match (rank..d).find(|&r| rows[r].z_bits().get(col)) {
                Some(p) => {
                    for row in rows.iter_mut() {
                        conjugate_site(row, col, LocalFrame::h());
                    }
                    circuit.push(LocalGate::H, col);
                    p
                }
                None => continue,
            },
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.x_bits().get(col) {
                row.mul_assign_right(&pivot);
            }
        }
        pivots.push(col);
    }
    if pivots.len() != d {
        return Err(Error::InvalidStabilizer("generators are dependent".into()));
    }

    let rest: Vec<usize> = (0..n).filter(|q| !pivots.contains(q)).collect();
    let block = |rows: &[PauliOp], z: bool, cols: &[usize]| {
        let mut m = BitMatrix::zeros(d, cols.len());
        for (i, row) in rows.iter().enumerate() {
            let bits = if z { row.z_bits() } else { row.x_bits() };
            for (j, &q) in cols.iter().enumerate() {
                m.set(i, j, bits.get(q));
            }
        }
        m
    };
    let r = block(&rows, false, &rest);
    let c = block(&rows, true, &rest);
    let rct = r.mul(&c.transpose());
    for i in 0..d {
        let zii = rows[i].z_bits().get(pivots[i]);
        if zii ^ rct.get(i, i) {
            // only row i has X on this qubit
            for row in rows.iter_mut() {
                conjugate_site(row, pivots[i], LocalFrame::s());
            }
            circuit.push(LocalGate::S, pivots[i]);
        }
    }
    let a = block(&rows, true, &pivots).add(&rct);
    let signs = BitVec::from_bools(&rows.iter().map(|r| r.is_negative()).collect::<Vec<_>>());
    let mut order = pivots;
    order.extend(rest);
    Ok(StandardForm {
        code: GraphCode::with_signs(r, a, c, signs)?,
        circuit,
        order,
    })
}
