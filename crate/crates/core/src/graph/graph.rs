use std::fmt::Write as _;

use rand::Rng;

use crate::error::{Error, Result};
use crate::symplectic::{BitMatrix, BitVec};

/// Simple undirected graph over stable integer labels `0..capacity`.
///
/// Deleting a vertex keeps every other label unchanged.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    present: BitVec,
    adj: Vec<BitVec>,
}

impl Graph {
    /// `n` isolated vertices labelled `0..n`.
    pub fn new(n: usize) -> Self {
        let mut present = BitVec::zeros(n);
        for v in 0..n {
            present.set(v, true);
        }
        Self {
            present,
            adj: vec![BitVec::zeros(n); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Builds a graph from a symmetric, zero-diagonal adjacency matrix.
    pub fn from_adjacency(m: &BitMatrix) -> Result<Self> {
        let n = m.nrows();
        if m.ncols() != n {
            return Err(Error::Dimension {
                expected: n,
                found: m.ncols(),
            });
        }
        if !m.is_symmetric() {
            return Err(Error::InvalidGraph(
                "adjacency matrix is not symmetric".into(),
            ));
        }
        if (0..n).any(|i| m.get(i, i)) {
            return Err(Error::InvalidGraph("self-loop in adjacency matrix".into()));
        }
        Ok(Self {
            present: Self::new(n).present,
            adj: m.rows().to_vec(),
        })
    }

    /// Erdős–Rényi graph on `n` vertices with edge probability `p`.
    pub fn random<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut g = Self::new(n);
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(p) {
                    g.set_edge_unchecked(a, b, true);
                }
            }
        }
        g
    }

    /// Number of labels ever allocated.
    pub fn capacity(&self) -> usize {
        self.adj.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.present.count_ones()
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.capacity() && self.present.get(v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.present.iter_ones()
    }

    fn check(&self, v: usize) -> Result<()> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    fn check_pair(&self, a: usize, b: usize) -> Result<()> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {a}")));
        }
        Ok(())
    }

    fn set_edge_unchecked(&mut self, a: usize, b: usize, on: bool) {
        self.adj[a].set(b, on);
        self.adj[b].set(a, on);
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.capacity() && b < self.capacity() && self.adj[a].get(b)
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_pair(a, b)?;
        self.set_edge_unchecked(a, b, true);
        Ok(())
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_pair(a, b)?;
        self.set_edge_unchecked(a, b, false);
        Ok(())
    }

    pub fn toggle_edge(&mut self, a: usize, b: usize) -> Result<()> {
        self.check_pair(a, b)?;
        let on = !self.adj[a].get(b);
        self.set_edge_unchecked(a, b, on);
        Ok(())
    }

    /// Neighbourhood of `v` as a bit set over labels.
    pub fn neighbors(&self, v: usize) -> &BitVec {
        &self.adj[v]
    }

    pub fn neighbor_list(&self, v: usize) -> Vec<usize> {
        self.adj[v].iter_ones().collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones()
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in self.vertices() {
            for b in self.adj[a].iter_ones().filter(|&b| b > a) {
                out.push((a, b));
            }
        }
        out
    }

    pub fn num_edges(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Allocates a fresh isolated vertex and returns its label.
    pub fn add_vertex(&mut self) -> usize {
        let v = self.capacity();
        self.present.push(true);
        for row in &mut self.adj {
            row.push(false);
        }
        self.adj.push(BitVec::zeros(v + 1));
        v
    }

    /// Deletes `v` and its incident edges.
    pub fn remove_vertex(&mut self, v: usize) -> Result<()> {
        self.check(v)?;
        for u in self.adj[v].iter_ones().collect::<Vec<_>>() {
            self.adj[u].set(v, false);
        }
        self.adj[v] = BitVec::zeros(self.capacity());
        self.present.set(v, false);
        Ok(())
    }

    /// Complements the subgraph induced on the neighbourhood of `a`.
    pub fn local_complement(&mut self, a: usize) -> Result<()> {
        self.check(a)?;
        let nb = self.neighbor_list(a);
        for (i, &u) in nb.iter().enumerate() {
            for &w in &nb[i + 1..] {
                let on = !self.adj[u].get(w);
                self.set_edge_unchecked(u, w, on);
            }
        }
        Ok(())
    }

    pub fn local_complemented(&self, a: usize) -> Result<Graph> {
        let mut g = self.clone();
        g.local_complement(a)?;
        Ok(g)
    }

    /// Adjacency matrix over all labels (deleted vertices give zero rows).
    pub fn adjacency(&self) -> BitMatrix {
        BitMatrix::from_rows(self.adj.clone(), self.capacity())
    }

    /// Subgraph induced on `keep`, relabelled `0..keep.len()` in the given order.
    pub fn induced(&self, keep: &[usize]) -> Result<Graph> {
        let mut g = Graph::new(keep.len());
        for (i, &a) in keep.iter().enumerate() {
            self.check(a)?;
            for (j, &b) in keep.iter().enumerate().skip(i + 1) {
                if self.adj[a].get(b) {
                    g.set_edge_unchecked(i, j, true);
                }
            }
        }
        Ok(g)
    }

    /// Graph text form: `n m` then `i j` per edge, 1-based with `i < j`.
    pub fn serialize(&self) -> String {
        let edges = self.edges();
        let mut out = format!("{} {}\n", self.capacity(), edges.len());
        for (a, b) in edges {
            let _ = writeln!(out, "{} {}", a + 1, b + 1);
        }
        out
    }

    pub fn parse(text: &str) -> Result<Graph> {
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
            .ok_or_else(|| Error::parse(1, 1, "missing `n m` header"))?;
        let (n, m) = parse_pair(hline, header)?;
        let mut g = Graph::new(n);
        for k in 0..m {
            let (lno, line) = lines
                .next()
                .ok_or_else(|| Error::parse(hline, 1, format!("expected {m} edges, found {k}")))?;
            let (i, j) = parse_pair(lno, line)?;
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::parse(lno, 1, format!("vertex out of range 1..={n}")));
            }
            if i >= j {
                return Err(Error::parse(lno, 1, "edge must satisfy i < j"));
            }
            if g.has_edge(i - 1, j - 1) {
                return Err(Error::parse(lno, 1, format!("duplicate edge {i} {j}")));
            }
            g.set_edge_unchecked(i - 1, j - 1, true);
        }
        if let Some((lno, _)) = lines.next() {
            return Err(Error::parse(lno, 1, "trailing content after edges"));
        }
        Ok(g)
    }

    /// Graphviz rendering with 1-based labels.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph {name} {{\n");
        for v in self.vertices() {
            let _ = writeln!(out, "  {};", v + 1);
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "  {} -- {};", a + 1, b + 1);
        }
        out.push_str("}\n");
        out
    }
}

fn parse_pair(lno: usize, line: &str) -> Result<(usize, usize)> {
    let mut cols = Vec::new();
    let mut nums = Vec::new();
    let mut start = None;
    for (i, ch) in line
        .char_indices()
        .chain(std::iter::once((line.len(), ' ')))
    {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                cols.push(s + 1);
                nums.push(&line[s..i]);
                start = None;
            }
            _ => {}
        }
    }
    if nums.len() != 2 {
        return Err(Error::parse(lno, 1, "expected two integers"));
    }
    let a = nums[0]
        .parse()
        .map_err(|_| Error::parse(lno, cols[0], format!("not an integer: {:?}", nums[0])))?;
    let b = nums[1]
        .parse()
        .map_err(|_| Error::parse(lno, cols[1], format!("not an integer: {:?}", nums[1])))?;
    Ok((a, b))
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Graph(V={:?}, E={:?})",
            self.vertices().collect::<Vec<_>>(),
            self.edges()
        )
    }
}
