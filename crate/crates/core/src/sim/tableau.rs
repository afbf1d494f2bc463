use std::fmt;

use super::outcome::OutcomeSource;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::symplectic::{BitVec, CheckMatrix, Letter, PauliOp};

/// Single-qubit Pauli measurement basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    X,
    Y,
    Z,
}

impl Basis {
    pub fn letter(self) -> Letter {
        match self {
            Basis::X => Letter::X,
            Basis::Y => Letter::Y,
            Basis::Z => Letter::Z,
        }
    }

    pub fn from_letter(l: Letter) -> Option<Basis> {
        match l {
            Letter::X => Some(Basis::X),
            Letter::Y => Some(Basis::Y),
            Letter::Z => Some(Basis::Z),
            Letter::I => None,
        }
    }

    pub fn as_char(self) -> char {
        self.letter().as_char()
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Clifford gate with its target sites.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    X(usize),
    Y(usize),
    Z(usize),
    Cnot(usize, usize),
    Cz(usize, usize),
}

/// Result of a single measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Measurement {
    /// `0` for the `+1` eigenvalue.
    pub outcome: bool,
    pub deterministic: bool,
}

/// Stabilizer tableau with destabilizers and sign tracking.
///
/// Row `i` of `stab` and row `i` of `destab` form a conjugate pair; all other
/// pairs commute. Stabilizer phases are always `0` or `2`; destabilizer phases
/// carry no meaning.
#[derive(Clone)]
pub struct Tableau {
    n: usize,
    stab: Vec<PauliOp>,
    destab: Vec<PauliOp>,
}

#[inline]
fn flip_sign(p: &mut PauliOp) {
    p.set_phase(p.phase() ^ 2);
}

impl Tableau {
    /// `|0…0⟩`.
    pub fn new(n: usize) -> Self {
        Self {
            n,
            stab: (0..n).map(|q| PauliOp::single(n, q, Letter::Z)).collect(),
            destab: (0..n).map(|q| PauliOp::single(n, q, Letter::X)).collect(),
        }
    }

    /// `|0…0⟩`, then `H` on every qubit, then `CZ` on every edge.
    ///
    /// The graph must have labels `0..n` all present.
    pub fn graph_state(g: &Graph) -> Result<Self> {
        if g.num_vertices() != g.capacity() {
            return Err(Error::InvalidGraph("graph has deleted labels".into()));
        }
        let mut t = Tableau::new(g.capacity());
        for q in 0..t.n {
            t.h(q);
        }
        for (a, b) in g.edges() {
            t.cz(a, b);
        }
        Ok(t)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn stabilizers(&self) -> &[PauliOp] {
        &self.stab
    }

    pub fn destabilizers(&self) -> &[PauliOp] {
        &self.destab
    }

    fn check_site(&self, q: usize) -> Result<()> {
        if q < self.n {
            Ok(())
        } else {
            Err(Error::SiteOutOfRange { site: q, n: self.n })
        }
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        self.check_site(a)?;
        self.check_site(b)?;
        if a == b {
            return Err(Error::CoincidentSites(a));
        }
        Ok(())
    }

    pub fn apply(&mut self, gate: Gate) -> Result<()> {
        match gate {
            Gate::H(q) => self.check_site(q).map(|_| self.h(q)),
            Gate::S(q) => self.check_site(q).map(|_| self.s(q)),
            Gate::Sdg(q) => self.check_site(q).map(|_| self.sdg(q)),
            Gate::X(q) => self.check_site(q).map(|_| self.x(q)),
            Gate::Y(q) => self.check_site(q).map(|_| self.y(q)),
            Gate::Z(q) => self.check_site(q).map(|_| self.z(q)),
            Gate::Cnot(c, t) => self.check_pair(c, t).map(|_| self.cnot(c, t)),
            Gate::Cz(a, b) => self.check_pair(a, b).map(|_| self.cz(a, b)),
        }
    }

    fn rows_mut(&mut self) -> impl Iterator<Item = &mut PauliOp> {
        self.stab.iter_mut().chain(self.destab.iter_mut())
    }

    pub fn h(&mut self, q: usize) {
        for r in self.rows_mut() {
            let (x, z) = (r.x_bits().get(q), r.z_bits().get(q));
            if x && z {
                flip_sign(r);
            }
            r.x_bits_mut().set(q, z);
            r.z_bits_mut().set(q, x);
        }
    }

    pub fn s(&mut self, q: usize) {
        for r in self.rows_mut() {
            let (x, z) = (r.x_bits().get(q), r.z_bits().get(q));
            if x && z {
                flip_sign(r);
            }
            r.z_bits_mut().set(q, z ^ x);
        }
    }

    pub fn sdg(&mut self, q: usize) {
        for r in self.rows_mut() {
            let (x, z) = (r.x_bits().get(q), r.z_bits().get(q));
            if x && !z {
                flip_sign(r);
            }
            r.z_bits_mut().set(q, z ^ x);
        }
    }

    pub fn x(&mut self, q: usize) {
        for r in self.rows_mut() {
            if r.z_bits().get(q) {
                flip_sign(r);
            }
        }
    }

    pub fn y(&mut self, q: usize) {
        for r in self.rows_mut() {
            if r.x_bits().get(q) ^ r.z_bits().get(q) {
                flip_sign(r);
            }
        }
    }

    pub fn z(&mut self, q: usize) {
        for r in self.rows_mut() {
            if r.x_bits().get(q) {
                flip_sign(r);
            }
        }
    }

    pub fn cnot(&mut self, c: usize, t: usize) {
        for r in self.rows_mut() {
            let (xc, zc) = (r.x_bits().get(c), r.z_bits().get(c));
            let (xt, zt) = (r.x_bits().get(t), r.z_bits().get(t));
            if xc && zt && (xt == zc) {
                flip_sign(r);
            }
            r.x_bits_mut().set(t, xt ^ xc);
            r.z_bits_mut().set(c, zc ^ zt);
        }
    }

    pub fn cz(&mut self, a: usize, b: usize) {
        for r in self.rows_mut() {
            let (xa, za) = (r.x_bits().get(a), r.z_bits().get(a));
            let (xb, zb) = (r.x_bits().get(b), r.z_bits().get(b));
            if xa && xb && (za ^ zb) {
                flip_sign(r);
            }
            r.z_bits_mut().set(a, za ^ xb);
            r.z_bits_mut().set(b, zb ^ xa);
        }
    }

    /// Applies a Hermitian Pauli operator as a gate (signs only).
    pub fn apply_pauli(&mut self, p: &PauliOp) -> Result<()> {
        self.check_len(p)?;
        for r in self.rows_mut() {
            if r.symplectic_product(p)? {
                flip_sign(r);
            }
        }
        Ok(())
    }

    fn check_len(&self, p: &PauliOp) -> Result<()> {
        if p.num_qubits() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: p.num_qubits(),
            });
        }
        Ok(())
    }

    /// If `±p` lies in the stabilizer group, returns `Some(true)` when the
    /// group contains `-p` (eigenvalue `-1`) and `Some(false)` for `+p`.
    pub fn stabilizer_sign(&self, p: &PauliOp) -> Result<Option<bool>> {
        self.check_len(p)?;
        if !p.is_hermitian() {
            return Err(Error::Precondition(format!("{p} is not Hermitian")));
        }
        if self
            .stab
            .iter()
            .any(|s| s.x_bits().dot(p.z_bits()) ^ s.z_bits().dot(p.x_bits()))
        {
            return Ok(None);
        }
        let mut acc = PauliOp::identity(self.n);
        for (i, d) in self.destab.iter().enumerate() {
            if d.x_bits().dot(p.z_bits()) ^ d.z_bits().dot(p.x_bits()) {
                acc.mul_assign_right(&self.stab[i]);
            }
        }
        if acc.x_bits() != p.x_bits() || acc.z_bits() != p.z_bits() {
            return Ok(None);
        }
        Ok(Some((acc.phase() + 4 - p.phase()) % 4 == 2))
    }

    /// Measures the Hermitian Pauli observable `p`.
    pub fn measure_observable(
        &mut self,
        p: &PauliOp,
        src: &mut OutcomeSource,
    ) -> Result<Measurement> {
        self.measure_observable_keyed(p, src, None)
    }

    pub(crate) fn measure_observable_keyed(
        &mut self,
        p: &PauliOp,
        src: &mut OutcomeSource,
        key: Option<usize>,
    ) -> Result<Measurement> {
        self.check_len(p)?;
        if !p.is_hermitian() {
            return Err(Error::Precondition(format!("{p} is not Hermitian")));
        }
        let anti = |r: &PauliOp| r.x_bits().dot(p.z_bits()) ^ r.z_bits().dot(p.x_bits());
        let Some(pivot) = self.stab.iter().position(anti) else {
            let forced = self.stabilizer_sign(p)?.ok_or_else(|| {
                Error::Precondition("observable outside a full stabilizer group".into())
            })?;
            let outcome = src.resolve(key, Some(forced))?;
            return Ok(Measurement {
                outcome,
                deterministic: true,
            });
        };
        let pivot_row = self.stab[pivot].clone();
        for i in 0..self.n {
            if i != pivot && anti(&self.stab[i]) {
                self.stab[i].mul_assign_right(&pivot_row);
            }
            if anti(&self.destab[i]) {
                self.destab[i].mul_assign_right(&pivot_row);
                self.destab[i].set_phase(0);
            }
        }
        let outcome = src.resolve(key, None)?;
        self.destab[pivot] = pivot_row;
        self.destab[pivot].set_phase(0);
        let mut new = p.clone();
        new.set_phase(if outcome {
            (p.phase() + 2) % 4
        } else {
            p.phase()
        });
        self.stab[pivot] = new;
        Ok(Measurement {
            outcome,
            deterministic: false,
        })
    }

    /// Single-qubit Pauli measurement.
    pub fn measure(
        &mut self,
        basis: Basis,
        q: usize,
        src: &mut OutcomeSource,
    ) -> Result<Measurement> {
        self.check_site(q)?;
        self.measure_observable(&PauliOp::single(self.n, q, basis.letter()), src)
    }

    pub(crate) fn measure_keyed(
        &mut self,
        basis: Basis,
        q: usize,
        src: &mut OutcomeSource,
        key: usize,
    ) -> Result<Measurement> {
        self.check_site(q)?;
        self.measure_observable_keyed(&PauliOp::single(self.n, q, basis.letter()), src, Some(key))
    }

    /// `self ⊗ other`; the qubits of `other` follow those of `self`.
    pub fn tensor(&self, other: &Tableau) -> Tableau {
        let (n, m) = (self.n, other.n);
        let left = |p: &PauliOp| {
            let x = p.x_bits().concat(&BitVec::zeros(m));
            let z = p.z_bits().concat(&BitVec::zeros(m));
            PauliOp::from_bits(x, z, p.phase()).expect("lengths agree")
        };
        let right = |p: &PauliOp| {
            let x = BitVec::zeros(n).concat(p.x_bits());
            let z = BitVec::zeros(n).concat(p.z_bits());
            PauliOp::from_bits(x, z, p.phase()).expect("lengths agree")
        };
        Tableau {
            n: n + m,
            stab: self
                .stab
                .iter()
                .map(left)
                .chain(other.stab.iter().map(right))
                .collect(),
            destab: self
                .destab
                .iter()
                .map(left)
                .chain(other.destab.iter().map(right))
                .collect(),
        }
    }

    /// Appends a qubit in `|0⟩`; returns its index.
    pub fn add_qubit(&mut self) -> usize {
        for r in self.rows_mut() {
            r.push_qubit();
        }
        let q = self.n;
        self.n += 1;
        self.stab.push(PauliOp::single(self.n, q, Letter::Z));
        self.destab.push(PauliOp::single(self.n, q, Letter::X));
        q
    }

    /// Removes qubit `q`, which must be in a `Z` eigenstate. The last qubit
    /// takes index `q`. Returns the qubit's `Z` value.
    pub fn remove_qubit(&mut self, q: usize) -> Result<bool> {
        self.check_site(q)?;
        let zq = PauliOp::single(self.n, q, Letter::Z);
        let value = self
            .stabilizer_sign(&zq)?
            .ok_or_else(|| Error::Precondition(format!("qubit {q} is not in a Z eigenstate")))?;
        let members: Vec<usize> = (0..self.n)
            .filter(|&i| self.destab[i].x_bits().get(q))
            .collect();
        let p = members[0];
        let dp = self.destab[p].clone();
        let mut prod = PauliOp::identity(self.n);
        for &i in &members {
            prod.mul_assign_right(&self.stab[i]);
            if i != p {
                self.destab[i].mul_assign_right(&dp);
                self.destab[i].set_phase(0);
            }
        }
        self.stab[p] = prod;
        let sp = self.stab[p].clone();
        for i in 0..self.n {
            if i == p {
                continue;
            }
            if self.stab[i].z_bits().get(q) {
                self.stab[i].mul_assign_right(&sp);
            }
            if self.destab[i].z_bits().get(q) {
                self.destab[i].mul_assign_right(&sp);
                self.destab[i].set_phase(0);
            }
        }
        self.stab.swap_remove(p);
        self.destab.swap_remove(p);
        for r in self.rows_mut() {
            r.swap_remove_qubit(q);
        }
        self.n -= 1;
        Ok(value)
    }

    /// Reorders qubits: new qubit `i` is old qubit `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Tableau> {
        if order.len() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: order.len(),
            });
        }
        let mut seen = vec![false; self.n];
        for &q in order {
            self.check_site(q)?;
            if std::mem::replace(&mut seen[q], true) {
                return Err(Error::Precondition(format!(
                    "qubit {q} repeated in permutation"
                )));
            }
        }
        let perm = |r: &PauliOp| {
            let mut out = PauliOp::identity(self.n);
            for (i, &q) in order.iter().enumerate() {
                out.set_letter(i, r.letter(q));
            }
            out.set_phase(r.phase());
            out
        };
        Ok(Tableau {
            n: self.n,
            stab: self.stab.iter().map(perm).collect(),
            destab: self.destab.iter().map(perm).collect(),
        })
    }

    /// Stabilizer generators in a canonical reduced form: Gauss-Jordan over the
    /// column order `x_0, …, x_{n-1}, z_0, …, z_{n-1}` with signs carried along.
    pub fn canonical_stabilizers(&self) -> Vec<PauliOp> {
        canonical_form(self.stab.clone())
    }

    /// Signed check matrix of the canonical stabilizer generators.
    pub fn check_matrix(&self) -> CheckMatrix {
        CheckMatrix::from_signed(self.n, self.canonical_stabilizers())
            .expect("tableau rows are well formed")
    }

    /// Equal stabilizer groups, signs included.
    pub fn equiv(&self, other: &Tableau) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: other.n,
            });
        }
        for s in &other.stab {
            if self.stabilizer_sign(s)? != Some(false) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Internal consistency of the symplectic basis (used by tests).
    pub fn is_well_formed(&self) -> bool {
        let n = self.n;
        let sp = |a: &PauliOp, b: &PauliOp| a.x_bits().dot(b.z_bits()) ^ a.z_bits().dot(b.x_bits());
        (0..n).all(|i| {
            self.stab[i].is_hermitian()
                && (0..n).all(|j| {
                    !sp(&self.stab[i], &self.stab[j])
                        && sp(&self.destab[i], &self.stab[j]) == (i == j)
                })
        })
    }

    /// Sign bit of each stabilizer row.
    pub fn signs(&self) -> BitVec {
        BitVec::from_bools(
            &self
                .stab
                .iter()
                .map(PauliOp::is_negative)
                .collect::<Vec<_>>(),
        )
    }
}

/// Reduces commuting Hermitian rows to canonical form.
pub(crate) fn canonical_form(mut rows: Vec<PauliOp>) -> Vec<PauliOp> {
    let n = rows.first().map_or(0, PauliOp::num_qubits);
    let bit = |p: &PauliOp, c: usize| {
        if c < n {
            p.x_bits().get(c)
        } else {
            p.z_bits().get(c - n)
        }
    };
    let mut r = 0;
    for c in 0..2 * n {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| bit(&rows[i], c)) else {
            continue;
        };
        rows.swap(p, r);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && bit(row, c) {
                row.mul_assign_right(&pivot);
            }
        }
        r += 1;
    }
    rows
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Tableau({} qubits) [", self.n)?;
        for s in &self.stab {
            writeln!(f, "  {s}")?;
        }
        write!(f, "]")
    }
}
