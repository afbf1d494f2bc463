use std::fmt;
use std::str::FromStr;

use super::bits::BitVec;
use crate::error::{Error, Result};

/// Single-qubit Pauli letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];

    /// Binary image `(x, z)`: I→00, X→10, Y→11, Z→01.
    pub fn encode(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn decode(x: bool, z: bool) -> Letter {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    pub fn commutes_with(self, other: Letter) -> bool {
        let (a, b) = self.encode();
        let (c, d) = other.encode();
        !((a & d) ^ (b & c))
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        match c {
            'I' | '_' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Phase-tracked n-qubit Pauli operator `i^phase · P_0 ⊗ … ⊗ P_{n-1}`,
/// where each `P_j` is the letter with binary image `(x_j, z_j)`.
///
/// With this convention `Y = iXZ` and the phase is an exponent of `i` mod 4.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOp {
    x: BitVec,
    z: BitVec,
    phase: u8,
}

/// Per-word phase contribution when multiplying packed Pauli letters:
/// returns (count of +i factors, count of -i factors).
#[inline]
fn phase_counts(x1: u64, z1: u64, x2: u64, z2: u64) -> (u32, u32) {
    // XY = iZ, YZ = iX, ZX = iY and the reverses give -i.
    let pos = (x1 & !z1 & x2 & z2) | (x1 & z1 & !x2 & z2) | (!x1 & z1 & x2 & !z2);
    let neg = (x1 & z1 & x2 & !z2) | (!x1 & z1 & x2 & z2) | (x1 & !z1 & !x2 & z2);
    (pos.count_ones(), neg.count_ones())
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            phase: 0,
        }
    }

    pub fn from_bits(x: BitVec, z: BitVec, phase: u8) -> Result<Self> {
        if x.len() != z.len() {
            return Err(Error::Dimension {
                expected: x.len(),
                found: z.len(),
            });
        }
        Ok(Self {
            x,
            z,
            phase: phase & 3,
        })
    }

    /// Single-letter operator on qubit `q` of `n`.
    pub fn single(n: usize, q: usize, letter: Letter) -> Self {
        let mut p = Self::identity(n);
        p.set_letter(q, letter);
        p
    }

    /// Tensor product of `letter` over the qubits in `support`.
    pub fn uniform(n: usize, support: impl IntoIterator<Item = usize>, letter: Letter) -> Self {
        let mut p = Self::identity(n);
        for q in support {
            p.set_letter(q, letter);
        }
        p
    }

    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    pub fn x_bits_mut(&mut self) -> &mut BitVec {
        &mut self.x
    }

    pub fn z_bits_mut(&mut self) -> &mut BitVec {
        &mut self.z
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn set_phase(&mut self, phase: u8) {
        self.phase = phase & 3;
    }

    /// True for phase −1 (only meaningful on Hermitian operators).
    pub fn is_negative(&self) -> bool {
        self.phase == 2
    }

    pub fn is_hermitian(&self) -> bool {
        self.phase % 2 == 0
    }

    pub fn negate(&mut self) {
        self.phase = (self.phase + 2) & 3;
    }

    pub fn negated(&self) -> Self {
        let mut p = self.clone();
        p.negate();
        p
    }

    /// Same letters with phase reset to `+1`.
    pub fn unsigned(&self) -> Self {
        Self {
            x: self.x.clone(),
            z: self.z.clone(),
            phase: 0,
        }
    }

    pub fn letter(&self, q: usize) -> Letter {
        Letter::decode(self.x.get(q), self.z.get(q))
    }

    pub fn set_letter(&mut self, q: usize, letter: Letter) {
        let (x, z) = letter.encode();
        self.x.set(q, x);
        self.z.set(q, z);
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn weight(&self) -> usize {
        self.x
            .words()
            .iter()
            .zip(self.z.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.num_qubits())
            .filter(|&q| self.x.get(q) || self.z.get(q))
            .collect()
    }

    /// The `2n`-bit vector `(x | z)`.
    pub fn to_symplectic(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    pub fn from_symplectic(v: &BitVec) -> Self {
        let n = v.len() / 2;
        Self {
            x: v.slice(0, n),
            z: v.slice(n, 2 * n),
            phase: 0,
        }
    }

    fn check_len(&self, other: &PauliOp) -> Result<()> {
        if self.num_qubits() != other.num_qubits() {
            return Err(Error::Dimension {
                expected: self.num_qubits(),
                found: other.num_qubits(),
            });
        }
        Ok(())
    }

    /// `x·z' + x'·z mod 2`: zero iff the operators commute.
    pub fn symplectic_product(&self, other: &PauliOp) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.x.dot(&other.z) ^ other.x.dot(&self.z))
    }

    pub fn commutes_with(&self, other: &PauliOp) -> Result<bool> {
        Ok(!self.symplectic_product(other)?)
    }

    /// Phase exponent picked up when computing `self · other`.
    fn product_phase(&self, other: &PauliOp) -> u8 {
        let (mut pos, mut neg) = (0u32, 0u32);
        let words = self.x.words().len();
        for w in 0..words {
            let (p, n) = phase_counts(
                self.x.words()[w],
                self.z.words()[w],
                other.x.words()[w],
                other.z.words()[w],
            );
            pos += p;
            neg += n;
        }
        ((self.phase as u32 + other.phase as u32 + pos + 3 * neg) % 4) as u8
    }

    /// Operator product `self · other`.
    pub fn multiply(&self, other: &PauliOp) -> Result<PauliOp> {
        self.check_len(other)?;
        Ok(PauliOp {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
            phase: self.product_phase(other),
        })
    }

    /// In-place right multiplication `self ← self · other`; lengths must match.
    pub fn mul_assign_right(&mut self, other: &PauliOp) {
        debug_assert_eq!(self.num_qubits(), other.num_qubits());
        self.phase = self.product_phase(other);
        self.x.xor_assign(&other.x);
        self.z.xor_assign(&other.z);
    }

    /// Appends an identity qubit.
    pub(crate) fn push_qubit(&mut self) {
        self.x.push(false);
        self.z.push(false);
    }

    pub(crate) fn swap_remove_qubit(&mut self, q: usize) {
        self.x.swap_remove(q);
        self.z.swap_remove(q);
    }
}

/// Maps a Pauli letter to its binary image.
pub fn encode_pauli(letter: Letter) -> (bool, bool) {
    letter.encode()
}

/// Inverse of [`encode_pauli`].
pub fn decode_pauli(x: bool, z: bool) -> Letter {
    Letter::decode(x, z)
}

impl fmt::Display for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.phase {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        })?;
        for q in 0..self.num_qubits() {
            write!(f, "{}", self.letter(q))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOp({self})")
    }
}

impl FromStr for PauliOp {
    type Err = Error;

    /// Parses strings like `XIZY`, `-XZ`, `+iYY`.
    fn from_str(s: &str) -> Result<Self> {
        let (phase, body) = if let Some(rest) = s.strip_prefix("-i") {
            (3, rest)
        } else if let Some(rest) = s.strip_prefix("+i") {
            (1, rest)
        } else if let Some(rest) = s.strip_prefix('-') {
            (2, rest)
        } else if let Some(rest) = s.strip_prefix('+') {
            (0, rest)
        } else {
            (0, s)
        };
        let mut p = PauliOp::identity(body.chars().count());
        for (q, ch) in body.chars().enumerate() {
            let letter = Letter::from_char(ch)
                .ok_or_else(|| Error::parse(1, q + 1, format!("unexpected character {ch:?}")))?;
            p.set_letter(q, letter);
        }
        p.phase = phase;
        Ok(p)
    }
}
