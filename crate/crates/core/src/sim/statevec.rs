use num_complex::Complex64;

use super::tableau::{Basis, Gate, Tableau};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::symplectic::{BitMatrix, BitVec, Letter, PauliOp};

/// Largest qubit count the dense oracle accepts.
pub const ORACLE_LIMIT: usize = 12;

/// Dense state vector. Basis index bit `q` is the value of qubit `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n: usize,
    amps: Vec<Complex64>,
}

fn check_size(n: usize) -> Result<()> {
    if n > ORACLE_LIMIT {
        return Err(Error::OracleTooLarge {
            n,
            limit: ORACLE_LIMIT,
        });
    }
    Ok(())
}

/// `Σ_{i<j, (i,j) ∈ E} x_i x_j mod 2`.
pub fn quadratic_form(g: &Graph, x: &BitVec) -> Result<bool> {
    if x.len() != g.capacity() {
        return Err(Error::Dimension {
            expected: g.capacity(),
            found: x.len(),
        });
    }
    Ok(g.edges()
        .iter()
        .filter(|&&(a, b)| x.get(a) && x.get(b))
        .count()
        % 2
        == 1)
}

fn i_pow(k: u32) -> Complex64 {
    match k % 4 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

impl StateVector {
    pub fn zero(n: usize) -> Result<Self> {
        check_size(n)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_size(n)?;
        if amps.len() != 1 << n {
            return Err(Error::Dimension {
                expected: 1 << n,
                found: amps.len(),
            });
        }
        Ok(Self { n, amps })
    }

    /// `2^{-n/2} Σ_x (-1)^{q(x)} |x⟩`.
    pub fn graph_state(g: &Graph) -> Result<Self> {
        let n = g.capacity();
        check_size(n)?;
        let norm = (1u64 << n) as f64;
        let scale = 1.0 / norm.sqrt();
        let edges = g.edges();
        let amps = (0..1usize << n)
            .map(|x| {
                let q = edges
                    .iter()
                    .filter(|&&(a, b)| (x >> a) & (x >> b) & 1 == 1)
                    .count();
                Complex64::new(if q % 2 == 1 { -scale } else { scale }, 0.0)
            })
            .collect();
        Ok(Self { n, amps })
    }

    /// The state stabilized by every row of `t`, normalized so the first
    /// nonzero amplitude is positive real.
    pub fn from_tableau(t: &Tableau) -> Result<Self> {
        let n = t.num_qubits();
        check_size(n)?;
        let canon = t.canonical_stabilizers();
        let ztype: Vec<&PauliOp> = canon.iter().filter(|p| p.x_bits().is_zero()).collect();
        let x = if ztype.is_empty() {
            BitVec::zeros(n)
        } else {
            let m = BitMatrix::from_rows(ztype.iter().map(|p| p.z_bits().clone()).collect(), n);
            let rhs =
                BitVec::from_bools(&ztype.iter().map(|p| p.is_negative()).collect::<Vec<_>>());
            m.solve(&rhs)
                .ok_or_else(|| Error::InvalidStabilizer("inconsistent Z-type signs".into()))?
        };
        let mut index = 0usize;
        for q in x.iter_ones() {
            index |= 1 << q;
        }
        let mut psi = Self {
            n,
            amps: vec![Complex64::new(0.0, 0.0); 1 << n],
        };
        psi.amps[index] = Complex64::new(1.0, 0.0);
        for s in t.stabilizers() {
            let mut moved = psi.clone();
            moved.apply_pauli(s)?;
            for (a, b) in psi.amps.iter_mut().zip(&moved.amps) {
                *a = (*a + *b) * 0.5;
            }
        }
        psi.normalize();
        psi.fix_global_phase();
        Ok(psi)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) {
        let nrm = self.norm();
        if nrm > 0.0 {
            for a in &mut self.amps {
                *a /= nrm;
            }
        }
    }

    /// Rotates the global phase so the first amplitude above `1e-9` in
    /// magnitude is positive real.
    pub fn fix_global_phase(&mut self) {
        if let Some(a) = self.amps.iter().find(|a| a.norm() > 1e-9) {
            let rot = a.conj() / a.norm();
            for b in &mut self.amps {
                *b *= rot;
            }
        }
    }

    /// Equal as rays: after fixing both global phases, every amplitude agrees
    /// within `tol`.
    pub fn approx_eq_ray(&self, other: &StateVector, tol: f64) -> bool {
        if self.n != other.n {
            return false;
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        a.normalize();
        b.normalize();
        a.fix_global_phase();
        b.fix_global_phase();
        a.amps
            .iter()
            .zip(&b.amps)
            .all(|(x, y)| (x - y).norm() <= tol)
    }

    fn check_site(&self, q: usize) -> Result<()> {
        if q < self.n {
            Ok(())
        } else {
            Err(Error::SiteOutOfRange { site: q, n: self.n })
        }
    }

    pub fn apply(&mut self, gate: Gate) -> Result<()> {
        let one = |q| 1usize << q;
        match gate {
            Gate::H(q) => {
                self.check_site(q)?;
                let s = std::f64::consts::FRAC_1_SQRT_2;
                for i in 0..self.amps.len() {
                    if i & one(q) == 0 {
                        let (a, b) = (self.amps[i], self.amps[i | one(q)]);
                        self.amps[i] = (a + b) * s;
                        self.amps[i | one(q)] = (a - b) * s;
                    }
                }
            }
            Gate::S(q) | Gate::Sdg(q) | Gate::Z(q) => {
                self.check_site(q)?;
                let f = match gate {
                    Gate::S(_) => i_pow(1),
                    Gate::Sdg(_) => i_pow(3),
                    _ => i_pow(2),
                };
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & one(q) != 0 {
                        *a *= f;
                    }
                }
            }
            Gate::X(q) | Gate::Y(q) => {
                self.check_site(q)?;
                let letter = if matches!(gate, Gate::X(_)) {
                    Letter::X
                } else {
                    Letter::Y
                };
                self.apply_pauli(&PauliOp::single(self.n, q, letter))?;
            }
            Gate::Cnot(c, t) => {
                self.check_site(c)?;
                self.check_site(t)?;
                if c == t {
                    return Err(Error::CoincidentSites(c));
                }
                for i in 0..self.amps.len() {
                    if i & one(c) != 0 && i & one(t) == 0 {
                        self.amps.swap(i, i | one(t));
                    }
                }
            }
            Gate::Cz(a, b) => {
                self.check_site(a)?;
                self.check_site(b)?;
                if a == b {
                    return Err(Error::CoincidentSites(a));
                }
                for (i, amp) in self.amps.iter_mut().enumerate() {
                    if i & one(a) != 0 && i & one(b) != 0 {
                        *amp = -*amp;
                    }
                }
            }
        }
        Ok(())
    }

    /// Applies `p` including its phase.
    pub fn apply_pauli(&mut self, p: &PauliOp) -> Result<()> {
        if p.num_qubits() != self.n {
            return Err(Error::Dimension {
                expected: self.n,
                found: p.num_qubits(),
            });
        }
        let (mut xm, mut zm) = (0usize, 0usize);
        for q in p.x_bits().iter_ones() {
            xm |= 1 << q;
        }
        for q in p.z_bits().iter_ones() {
            zm |= 1 << q;
        }
        let ny = (xm & zm).count_ones();
        let base = p.phase() as u32 + ny;
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for (x, a) in self.amps.iter().enumerate() {
            let sign = (x & zm).count_ones() * 2;
            out[x ^ xm] = *a * i_pow(base + sign);
        }
        self.amps = out;
        Ok(())
    }

    /// `Some(false)` if `p|ψ⟩ = |ψ⟩`, `Some(true)` if `p|ψ⟩ = -|ψ⟩`, else `None`.
    pub fn eigenvalue(&self, p: &PauliOp, tol: f64) -> Result<Option<bool>> {
        let mut moved = self.clone();
        moved.apply_pauli(p)?;
        let close = |sign: f64| {
            self.amps
                .iter()
                .zip(&moved.amps)
                .all(|(a, b)| (*a * sign - b).norm() <= tol)
        };
        Ok(if close(1.0) {
            Some(false)
        } else if close(-1.0) {
            Some(true)
        } else {
            None
        })
    }

    fn rotate_to_z(&mut self, basis: Basis, q: usize, undo: bool) -> Result<()> {
        match (basis, undo) {
            (Basis::Z, _) => Ok(()),
            (Basis::X, _) => self.apply(Gate::H(q)),
            (Basis::Y, false) => {
                self.apply(Gate::Sdg(q))?;
                self.apply(Gate::H(q))
            }
            (Basis::Y, true) => {
                self.apply(Gate::H(q))?;
                self.apply(Gate::S(q))
            }
        }
    }

    /// Probability of `outcome` when measuring `basis` on qubit `q`.
    pub fn probability(&self, basis: Basis, q: usize, outcome: bool) -> Result<f64> {
        let mut r = self.clone();
        r.rotate_to_z(basis, q, false)?;
        Ok(r.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| ((i >> q) & 1 == 1) == outcome)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }

    /// Projects onto `outcome` and renormalizes; returns its probability.
    pub fn project(&mut self, basis: Basis, q: usize, outcome: bool) -> Result<f64> {
        self.rotate_to_z(basis, q, false)?;
        let mut p = 0.0;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if ((i >> q) & 1 == 1) != outcome {
                *a = Complex64::new(0.0, 0.0);
            } else {
                p += a.norm_sqr();
            }
        }
        self.rotate_to_z(basis, q, true)?;
        self.normalize();
        Ok(p)
    }
}

impl StateVector {
    /// Removes qubits known to be in the given eigenstates, keeping the rest
    /// in ascending order.
    pub fn drop_qubits(&self, qubits: &[(usize, Basis, bool)]) -> Result<StateVector> {
        let mut r = self.clone();
        let mut mask = 0usize;
        let mut want = 0usize;
        for &(q, b, o) in qubits {
            r.rotate_to_z(b, q, false)?;
            mask |= 1 << q;
            if o {
                want |= 1 << q;
            }
        }
        let keep: Vec<usize> = (0..self.n).filter(|q| mask & (1 << q) == 0).collect();
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << keep.len()];
        for (i, a) in r.amps.iter().enumerate() {
            if i & mask != want {
                continue;
            }
            let j = keep
                .iter()
                .enumerate()
                .fold(0usize, |acc, (k, &q)| acc | (((i >> q) & 1) << k));
            amps[j] = *a;
        }
        let mut out = StateVector {
            n: keep.len(),
            amps,
        };
        out.normalize();
        Ok(out)
    }
}
