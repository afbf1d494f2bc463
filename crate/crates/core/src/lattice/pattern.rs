use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::sim::Basis;
use crate::symplectic::Letter;

/// Lattice site, 0-based; printed 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Site {
    pub row: usize,
    pub col: usize,
}

impl Site {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.row + 1, self.col + 1)
    }
}

/// Measurement identifier `m<round>.<index>`, both 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MeasId {
    pub round: usize,
    pub index: usize,
}

impl fmt::Display for MeasId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}.{}", self.round, self.index)
    }
}

impl MeasId {
    fn parse(tok: &str) -> Option<MeasId> {
        let (r, i) = tok.strip_prefix('m')?.split_once('.')?;
        let round: usize = r.parse().ok()?;
        let index: usize = i.parse().ok()?;
        (round >= 1 && index >= 1).then_some(MeasId { round, index })
    }
}

/// GF(2) sum of earlier outcomes plus a constant.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Signal {
    /// Sorted, without repeats.
    pub ids: Vec<MeasId>,
    pub constant: bool,
}

impl Signal {
    pub fn new(ids: impl IntoIterator<Item = MeasId>, constant: bool) -> Self {
        let mut odd: Vec<MeasId> = Vec::new();
        let mut all: Vec<MeasId> = ids.into_iter().collect();
        all.sort();
        for id in all {
            if odd.last() == Some(&id) {
                odd.pop();
            } else {
                odd.push(id);
            }
        }
        Self { ids: odd, constant }
    }

    pub fn is_zero(&self) -> bool {
        self.ids.is_empty() && !self.constant
    }

    /// Evaluates with `lookup`; `None` if an outcome is unknown.
    pub fn eval(&self, mut lookup: impl FnMut(MeasId) -> Option<bool>) -> Option<bool> {
        let mut v = self.constant;
        for &id in &self.ids {
            v ^= lookup(id)?;
        }
        Some(v)
    }

    fn parse(tok: &str) -> Option<Signal> {
        let mut ids = Vec::new();
        let mut constant = false;
        for part in tok.split(',') {
            match part {
                "1" => constant ^= true,
                "0" => {}
                _ => ids.push(MeasId::parse(part)?),
            }
        }
        Some(Signal::new(ids, constant))
    }
}

impl fmt::Display for Signal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.ids.iter().map(|id| id.to_string()).collect();
        if self.constant {
            parts.push("1".into());
        }
        if parts.is_empty() {
            parts.push("0".into());
        }
        f.write_str(&parts.join(","))
    }
}

/// Single-qubit measurement; a set `flip` swaps `X` and `Y`, a set `sign`
/// inverts the recorded outcome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurementOp {
    pub site: Site,
    pub basis: Basis,
    pub flip: Signal,
    pub sign: Signal,
}

impl MeasurementOp {
    pub fn plain(site: Site, basis: Basis) -> Self {
        Self {
            site,
            basis,
            flip: Signal::default(),
            sign: Signal::default(),
        }
    }

    /// Basis after applying a flip of value `flip`.
    pub fn effective_basis(&self, flip: bool) -> Basis {
        match (self.basis, flip) {
            (Basis::X, true) => Basis::Y,
            (Basis::Y, true) => Basis::X,
            (b, _) => b,
        }
    }
}

/// Final Pauli on an output site, applied when `signal` is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correction {
    pub site: Site,
    pub pauli: Letter,
    pub signal: Signal,
}

/// Compiler output: measurement rounds over a grid cluster state, a final
/// correction layer, and the placement of target vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasurementPattern {
    pub rows: usize,
    pub cols: usize,
    pub rounds: Vec<Vec<MeasurementOp>>,
    pub corrections: Vec<Correction>,
    /// `(site, vertex)`, vertex 0-based.
    pub outputs: Vec<(Site, usize)>,
}

/// Size and depth of a pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PatternMetrics {
    pub measurements: usize,
    pub rounds: usize,
    pub area: usize,
}

impl fmt::Display for PatternMetrics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "measurements={} rounds={} area={}",
            self.measurements, self.rounds, self.area
        )
    }
}

impl MeasurementPattern {
    /// Lattice with no measurements.
    pub fn empty(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            rounds: Vec::new(),
            corrections: Vec::new(),
            outputs: Vec::new(),
        }
    }

    pub fn area(&self) -> usize {
        self.rows * self.cols
    }

    pub fn metrics(&self) -> PatternMetrics {
        PatternMetrics {
            measurements: self.rounds.iter().map(Vec::len).sum(),
            rounds: self.rounds.iter().filter(|r| !r.is_empty()).count(),
            area: self.area(),
        }
    }

    /// Every measurement with its identifier, in round order.
    pub fn measurements(&self) -> impl Iterator<Item = (MeasId, &MeasurementOp)> {
        self.rounds.iter().enumerate().flat_map(|(r, ops)| {
            ops.iter().enumerate().map(move |(i, op)| {
                (
                    MeasId {
                        round: r + 1,
                        index: i + 1,
                    },
                    op,
                )
            })
        })
    }

    pub fn num_measurements(&self) -> usize {
        self.rounds.iter().map(Vec::len).sum()
    }

    /// Position of `id` in [`measurements`](Self::measurements) order.
    pub fn linear_index(&self, id: MeasId) -> Option<usize> {
        let ops = self.rounds.get(id.round.checked_sub(1)?)?;
        if id.index == 0 || id.index > ops.len() {
            return None;
        }
        Some(
            self.rounds[..id.round - 1]
                .iter()
                .map(Vec::len)
                .sum::<usize>()
                + id.index
                - 1,
        )
    }

    /// Checks the structural invariants: sites in range and used once,
    /// every site either measured or an output, and signals pointing only at
    /// earlier rounds.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Compile(m));
        if self.rows == 0 || self.cols == 0 {
            return bad("empty lattice".into());
        }
        let mut seen = HashSet::new();
        let in_range = |s: Site| s.row < self.rows && s.col < self.cols;
        for (id, op) in self.measurements() {
            if !in_range(op.site) {
                return bad(format!(
                    "{id} measures site ({}) outside the lattice",
                    op.site
                ));
            }
            if !seen.insert(op.site) {
                return bad(format!("site ({}) measured twice", op.site));
            }
            if op.basis == Basis::Z && !op.flip.is_zero() {
                return bad(format!("{id} flips a Z measurement"));
            }
            for s in [&op.flip, &op.sign] {
                for r in &s.ids {
                    if r.round >= id.round || self.linear_index(*r).is_none() {
                        return bad(format!(
                            "{id} depends on {r}, which is not in an earlier round"
                        ));
                    }
                }
            }
        }
        let mut out_sites = HashSet::new();
        let mut vertices = HashSet::new();
        for &(s, v) in &self.outputs {
            if !in_range(s) || seen.contains(&s) || !out_sites.insert(s) {
                return bad(format!("output site ({s}) is invalid"));
            }
            if !vertices.insert(v) {
                return bad(format!("vertex {} placed twice", v + 1));
            }
        }
        if seen.len() + out_sites.len() != self.area() {
            return bad("some sites are neither measured nor outputs".into());
        }
        for c in &self.corrections {
            if !out_sites.contains(&c.site) {
                return bad(format!("correction on non-output site ({})", c.site));
            }
            if let Some(r) = c
                .signal
                .ids
                .iter()
                .find(|r| self.linear_index(**r).is_none())
            {
                return bad(format!("correction refers to unknown {r}"));
            }
        }
        Ok(())
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("lattice {} {}\n", self.rows, self.cols);
        for (r, ops) in self.rounds.iter().enumerate() {
            let _ = writeln!(out, "round {}", r + 1);
            for op in ops {
                let _ = write!(out, "M {} {}", op.site, op.basis);
                if !op.flip.is_zero() {
                    let _ = write!(out, " flip:{}", op.flip);
                }
                if !op.sign.is_zero() {
                    let _ = write!(out, " sign:{}", op.sign);
                }
                out.push('\n');
            }
        }
        for c in &self.corrections {
            let _ = writeln!(out, "C {} {} {}", c.site, c.pauli, c.signal);
        }
        for (s, v) in &self.outputs {
            let _ = writeln!(out, "O {} {}", s, v + 1);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut pattern: Option<MeasurementPattern> = None;
        let mut pending: Vec<(usize, usize, MeasId)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let lno = i + 1;
            let body = raw.split('#').next().unwrap_or("");
            let toks: Vec<(usize, &str)> = tokens(body);
            let Some(&(_, head)) = toks.first() else {
                continue;
            };
            let err = |col: usize, msg: String| Error::parse(lno, col, msg);
            let num = |k: usize| -> Result<usize> {
                let &(col, t) = toks
                    .get(k)
                    .ok_or_else(|| err(raw.len() + 1, "missing field".into()))?;
                t.parse()
                    .map_err(|_| err(col, format!("expected a number, found {t:?}")))
            };
            let Some(p) = pattern.as_mut() else {
                if head != "lattice" || toks.len() != 3 {
                    return Err(err(1, "expected `lattice R C` header".into()));
                }
                let (rows, cols) = (num(1)?, num(2)?);
                if rows == 0 || cols == 0 {
                    return Err(err(toks[1].0, "lattice dimensions must be positive".into()));
                }
                pattern = Some(MeasurementPattern::empty(rows, cols));
                continue;
            };
            let site = |k: usize| -> Result<Site> {
                let (r, c) = (num(k)?, num(k + 1)?);
                if r == 0 || r > p.rows || c == 0 || c > p.cols {
                    return Err(err(
                        toks[k].0,
                        format!("site ({r} {c}) outside the lattice"),
                    ));
                }
                Ok(Site::new(r - 1, c - 1))
            };
            match head {
                "round" => {
                    if toks.len() != 2 || num(1)? != p.rounds.len() + 1 {
                        return Err(err(
                            toks[0].0,
                            format!("expected `round {}`", p.rounds.len() + 1),
                        ));
                    }
                    p.rounds.push(Vec::new());
                }
                "M" => {
                    let current = p.rounds.len();
                    if current == 0 {
                        return Err(err(1, "measurement before any `round`".into()));
                    }
                    let s = site(1)?;
                    let &(bcol, b) = toks
                        .get(3)
                        .ok_or_else(|| err(raw.len() + 1, "missing basis".into()))?;
                    let basis = single_letter(b)
                        .and_then(Basis::from_letter)
                        .ok_or_else(|| err(bcol, format!("bad basis {b:?}")))?;
                    let mut op = MeasurementOp::plain(s, basis);
                    for &(col, t) in &toks[4..] {
                        let (kind, list) = t.split_once(':').ok_or_else(|| {
                            err(
                                col,
                                format!("expected flip:<ids> or sign:<ids>, found {t:?}"),
                            )
                        })?;
                        let sig = Signal::parse(list)
                            .ok_or_else(|| err(col, format!("bad signal {list:?}")))?;
                        if let Some(r) = sig.ids.iter().find(|r| r.round >= current) {
                            return Err(err(col, format!("{r} is not from an earlier round")));
                        }
                        if let Some(r) = sig.ids.iter().find(|r| p.linear_index(**r).is_none()) {
                            return Err(err(col, format!("unknown measurement {r}")));
                        }
                        match kind {
                            "flip" => op.flip = sig,
                            "sign" => op.sign = sig,
                            _ => return Err(err(col, format!("unknown field {kind:?}"))),
                        }
                    }
                    p.rounds[current - 1].push(op);
                }
                "C" => {
                    if toks.len() != 5 {
                        return Err(err(1, "expected `C r c PAULI <ids>`".into()));
                    }
                    let s = site(1)?;
                    let pauli = single_letter(toks[3].1)
                        .filter(|l| *l != Letter::I)
                        .ok_or_else(|| err(toks[3].0, format!("bad Pauli {:?}", toks[3].1)))?;
                    let signal = Signal::parse(toks[4].1)
                        .ok_or_else(|| err(toks[4].0, format!("bad signal {:?}", toks[4].1)))?;
                    for id in &signal.ids {
                        pending.push((lno, toks[4].0, *id));
                    }
                    p.corrections.push(Correction {
                        site: s,
                        pauli,
                        signal,
                    });
                }
                "O" => {
                    if toks.len() != 4 {
                        return Err(err(1, "expected `O r c vertex`".into()));
                    }
                    let s = site(1)?;
                    let v = num(3)?;
                    if v == 0 {
                        return Err(err(toks[3].0, "vertices are 1-based".into()));
                    }
                    p.outputs.push((s, v - 1));
                }
                other => return Err(err(1, format!("unknown record {other:?}"))),
            }
        }
        let p = pattern.ok_or_else(|| Error::parse(1, 1, "missing `lattice R C` header"))?;
        for (lno, col, id) in pending {
            if p.linear_index(id).is_none() {
                return Err(Error::parse(lno, col, format!("unknown measurement {id}")));
            }
        }
        Ok(p)
    }

    /// Vertex placed at each output site.
    pub fn output_map(&self) -> HashMap<Site, usize> {
        self.outputs.iter().copied().collect()
    }
}

fn single_letter(s: &str) -> Option<Letter> {
    let mut cs = s.chars();
    let c = cs.next()?;
    cs.next().is_none().then(|| Letter::from_char(c)).flatten()
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}
