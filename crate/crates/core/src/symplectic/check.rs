use std::fmt::Write as _;

use super::bits::BitVec;
use super::matrix::BitMatrix;
use super::pauli::PauliOp;
use crate::error::{Error, Result};

/// Generators of a stabilizer group, one per row, in binary `(X|Z)` form.
///
/// Rows are stored unsigned; the optional sign vector marks generators that
/// carry a `−1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckMatrix {
    n: usize,
    rows: Vec<PauliOp>,
    signs: Option<BitVec>,
}

impl CheckMatrix {
    pub fn new(n: usize, rows: Vec<PauliOp>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidStabilizer("zero qubits".into()));
        }
        if rows.len() > n {
            return Err(Error::InvalidStabilizer(format!(
                "{} generators on {n} qubits",
                rows.len()
            )));
        }
        for r in &rows {
            if r.num_qubits() != n {
                return Err(Error::Dimension {
                    expected: n,
                    found: r.num_qubits(),
                });
            }
        }
        let rows = rows.into_iter().map(|r| r.unsigned()).collect();
        Ok(Self {
            n,
            rows,
            signs: None,
        })
    }

    /// Takes the sign of each row from its phase (which must be ±1).
    pub fn from_signed(n: usize, rows: Vec<PauliOp>) -> Result<Self> {
        let mut signs = BitVec::zeros(rows.len());
        for (i, r) in rows.iter().enumerate() {
            if !r.is_hermitian() {
                return Err(Error::InvalidStabilizer(format!(
                    "row {i} is not Hermitian"
                )));
            }
            signs.set(i, r.is_negative());
        }
        let mut m = Self::new(n, rows)?;
        m.signs = Some(signs);
        Ok(m)
    }

    /// Builds `[x | z]` from two `d × n` blocks.
    pub fn from_blocks(x: &BitMatrix, z: &BitMatrix) -> Result<Self> {
        if x.nrows() != z.nrows() || x.ncols() != z.ncols() {
            return Err(Error::Dimension {
                expected: x.ncols(),
                found: z.ncols(),
            });
        }
        let rows = x
            .rows()
            .iter()
            .zip(z.rows())
            .map(|(xr, zr)| PauliOp::from_bits(xr.clone(), zr.clone(), 0))
            .collect::<Result<Vec<_>>>()?;
        Self::new(x.ncols(), rows)
    }

    pub fn with_signs(mut self, signs: BitVec) -> Result<Self> {
        if signs.len() != self.rows.len() {
            return Err(Error::Dimension {
                expected: self.rows.len(),
                found: signs.len(),
            });
        }
        self.signs = Some(signs);
        Ok(self)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn num_generators(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[PauliOp] {
        &self.rows
    }

    pub fn signs(&self) -> Option<&BitVec> {
        self.signs.as_ref()
    }

    /// Generator `i` with its sign applied.
    pub fn generator(&self, i: usize) -> PauliOp {
        let mut g = self.rows[i].clone();
        if self.signs.as_ref().is_some_and(|s| s.get(i)) {
            g.negate();
        }
        g
    }

    pub fn generators(&self) -> Vec<PauliOp> {
        (0..self.rows.len()).map(|i| self.generator(i)).collect()
    }

    pub fn x_block(&self) -> BitMatrix {
        BitMatrix::from_rows(
            self.rows.iter().map(|r| r.x_bits().clone()).collect(),
            self.n,
        )
    }

    pub fn z_block(&self) -> BitMatrix {
        BitMatrix::from_rows(
            self.rows.iter().map(|r| r.z_bits().clone()).collect(),
            self.n,
        )
    }

    /// The `d × 2n` matrix `[X | Z]`.
    pub fn symplectic_matrix(&self) -> BitMatrix {
        BitMatrix::from_rows(
            self.rows.iter().map(PauliOp::to_symplectic).collect(),
            2 * self.n,
        )
    }

    pub fn rank(&self) -> usize {
        self.symplectic_matrix().rank()
    }

    /// True iff the rows are independent and pairwise commuting.
    pub fn is_valid_stabilizer(&self) -> bool {
        self.validate().is_ok()
    }

    pub fn validate(&self) -> Result<()> {
        for i in 0..self.rows.len() {
            for j in i + 1..self.rows.len() {
                if self.rows[i].symplectic_product(&self.rows[j])? {
                    return Err(Error::InvalidStabilizer(format!(
                        "generators {} and {} anticommute",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        if self.rank() != self.rows.len() {
            return Err(Error::InvalidStabilizer("generators are dependent".into()));
        }
        Ok(())
    }

    /// Same row space (ignoring signs).
    pub fn same_group_unsigned(&self, other: &CheckMatrix) -> bool {
        self.n == other.n
            && self.num_generators() == other.num_generators()
            && self.symplectic_matrix().rref().matrix == other.symplectic_matrix().rref().matrix
    }

    /// Text form: `n d` header then one `x|z` line per generator.
    pub fn serialize(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.rows.len());
        for (i, r) in self.rows.iter().enumerate() {
            let _ = write!(out, "{}|{}", r.x_bits(), r.z_bits());
            if let Some(s) = &self.signs {
                out.push_str(if s.get(i) { " -" } else { " +" });
            }
            out.push('\n');
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            });
        let (hline, header) = lines
            .next()
            .ok_or_else(|| Error::parse(1, 1, "missing `n d` header"))?;
        let nums: Vec<&str> = header.split_whitespace().collect();
        if nums.len() != 2 {
            return Err(Error::parse(hline, 1, "header must be `n d`"));
        }
        let n: usize = nums[0]
            .parse()
            .map_err(|_| Error::parse(hline, 1, format!("bad qubit count {:?}", nums[0])))?;
        let d: usize = nums[1]
            .parse()
            .map_err(|_| Error::parse(hline, 1, format!("bad generator count {:?}", nums[1])))?;

        let mut rows = Vec::with_capacity(d);
        let mut signs = BitVec::zeros(d);
        let mut any_sign = false;
        for k in 0..d {
            let (lno, raw) = lines.next().ok_or_else(|| {
                Error::parse(hline, 1, format!("expected {d} generators, found {k}"))
            })?;
            let mut body = raw.trim_end();
            let sign = match body.chars().last() {
                Some(c @ ('+' | '-')) => {
                    body = body[..body.len() - 1].trim_end();
                    Some(c == '-')
                }
                _ => None,
            };
            if let Some(neg) = sign {
                any_sign = true;
                signs.set(k, neg);
            }
            let compact: String = body.chars().filter(|c| !c.is_whitespace()).collect();
            let Some((xs, zs)) = compact.split_once('|') else {
                return Err(Error::parse(lno, 1, "expected `x-bits|z-bits`"));
            };
            let col = raw.find('|').map_or(1, |c| c + 1);
            if xs.len() != n || zs.len() != n {
                return Err(Error::parse(
                    lno,
                    col,
                    format!("expected {n} bits on each side of `|`"),
                ));
            }
            let x = BitVec::from_str01(xs)
                .ok_or_else(|| Error::parse(lno, 1, "X block must be 0/1"))?;
            let z = BitVec::from_str01(zs)
                .ok_or_else(|| Error::parse(lno, col + 1, "Z block must be 0/1"))?;
            rows.push(PauliOp::from_bits(x, z, 0)?);
        }
        if let Some((lno, _)) = lines.next() {
            return Err(Error::parse(lno, 1, "trailing content after generators"));
        }
        let m = CheckMatrix::new(n, rows).map_err(|e| Error::parse(hline, 1, e.to_string()))?;
        if any_sign {
            m.with_signs(signs)
        } else {
            Ok(m)
        }
    }
}
