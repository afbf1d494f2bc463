use std::collections::HashMap;

use super::layout::{Arms, Layout, Role, CROSS, EDGE_LB, EDGE_RB, PASS_H};
use super::pattern::{Correction, MeasId, MeasurementOp, MeasurementPattern, Signal, Site};
use crate::error::{Error, Result};
use crate::graph::{Affine, Graph, SymbolicState};
use crate::symplectic::Letter;

/// Grid graph on `rows × cols` sites, row-major labels.
pub fn lattice_graph(rows: usize, cols: usize) -> Graph {
    let mut edges = Vec::with_capacity(2 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let i = r * cols + c;
            if c + 1 < cols {
                edges.push((i, i + 1));
            }
            if r + 1 < rows {
                edges.push((i, i + cols));
            }
        }
    }
    Graph::from_edges(rows * cols, &edges).expect("grid edges are valid")
}

fn check_target(g: &Graph) -> Result<usize> {
    let n = g.num_vertices();
    if n == 0 {
        return Err(Error::InvalidGraph("cannot compile an empty graph".into()));
    }
    if n != g.capacity() {
        return Err(Error::InvalidGraph(
            "vertex labels must be contiguous".into(),
        ));
    }
    Ok(n)
}

/// Compiles `g` onto a `5n × 5n` lattice.
///
/// Vertex `i` sits at the center of diagonal tile `(i, i)`. Its chain runs
/// left along tile row `i` and down tile column `i`; the tile where row `i`
/// meets column `j < i` holds an edge gadget if `ij` is an edge and a
/// crossing otherwise.
pub fn compile(g: &Graph) -> Result<MeasurementPattern> {
    let n = check_target(g)?;
    if n == 1 {
        return Ok(single_vertex());
    }
    let mut layout = Layout::new(n, n);
    for i in 0..n {
        let arms = Arms {
            left: true,
            right: false,
            down: true,
        };
        layout.place_vertex(i, i, i, arms);
        for j in 0..i {
            let t = if g.has_edge(i, j) { &EDGE_LB } else { &CROSS };
            layout.place(i, j, t, i, j);
        }
    }
    schedule(&layout, g)
}

/// Compiles `g` with the vertices of `band` sharing a single tile row.
///
/// The band must induce a matching. Every other vertex gets its own tile
/// row, so the lattice has `5(1 + |dense|)` rows and `5n` columns.
pub fn compile_compact(g: &Graph, band: &[usize]) -> Result<MeasurementPattern> {
    let n = check_target(g)?;
    if n == 1 {
        return Ok(single_vertex());
    }
    let mut in_band = vec![false; n];
    for &b in band {
        if b >= n || in_band[b] {
            return Err(Error::InvalidGraph(format!(
                "band vertex {} repeated or out of range",
                b + 1
            )));
        }
        in_band[b] = true;
    }
    let partner = |v: usize| g.neighbor_list(v).into_iter().find(|&u| in_band[u]);
    for &b in band {
        if g.neighbor_list(b).iter().filter(|&&u| in_band[u]).count() > 1 {
            return Err(Error::InvalidGraph(format!(
                "band vertex {} has two band neighbours",
                b + 1
            )));
        }
    }
    let dense: Vec<usize> = (0..n).filter(|&v| !in_band[v]).collect();
    let mut order: Vec<usize> = Vec::with_capacity(band.len());
    let mut sorted_band = band.to_vec();
    sorted_band.sort_unstable();
    for &b in &sorted_band {
        if order.contains(&b) {
            continue;
        }
        order.push(b);
        if let Some(p) = partner(b) {
            order.push(p);
        }
    }

    let top = usize::from(!order.is_empty());
    let nd = dense.len();
    let mut layout = Layout::new(top + nd, nd + order.len());
    for (p, &b) in order.iter().enumerate() {
        let right = p + 1 < order.len() && partner(b) == Some(order[p + 1]);
        let arms = Arms {
            left: false,
            right,
            down: true,
        };
        layout.place_vertex(0, nd + p, b, arms);
        if p > 0 && partner(b) == Some(order[p - 1]) {
            layout.give_left_arm(0, nd + p, order[p - 1]);
        }
    }
    for (i, &v) in dense.iter().enumerate() {
        let tr = top + i;
        let arms = Arms {
            left: true,
            right: true,
            down: true,
        };
        layout.place_vertex(tr, i, v, arms);
        for (j, &u) in dense.iter().enumerate() {
            if j < i {
                let t = if g.has_edge(v, u) { &EDGE_LB } else { &CROSS };
                layout.place(tr, j, t, v, u);
            } else if j > i {
                layout.place(tr, j, &PASS_H, v, v);
            }
        }
        for (p, &b) in order.iter().enumerate() {
            let t = if g.has_edge(v, b) { &EDGE_RB } else { &CROSS };
            layout.place(tr, nd + p, t, v, b);
        }
    }
    schedule(&layout, g)
}

/// Greedy band: vertices by increasing degree, kept while the band still
/// induces a matching.
pub fn choose_band(g: &Graph) -> Vec<usize> {
    let mut verts: Vec<usize> = g.vertices().collect();
    verts.sort_by_key(|&v| (g.degree(v), v));
    let mut band_deg: HashMap<usize, usize> = HashMap::new();
    let mut band = Vec::new();
    for v in verts {
        let nbrs: Vec<usize> = g
            .neighbor_list(v)
            .into_iter()
            .filter(|u| band_deg.contains_key(u))
            .collect();
        if nbrs.len() <= 1 && nbrs.iter().all(|u| band_deg[u] == 0) {
            for u in &nbrs {
                *band_deg.get_mut(u).unwrap() += 1;
            }
            band_deg.insert(v, nbrs.len());
            band.push(v);
        }
    }
    band.sort_unstable();
    band
}

fn single_vertex() -> MeasurementPattern {
    let mut p = MeasurementPattern::empty(1, 1);
    p.outputs.push((Site::new(0, 0), 0));
    p
}

/// Assigns rounds, tracks byproducts symbolically, and checks the result.
fn schedule(layout: &Layout, target: &Graph) -> Result<MeasurementPattern> {
    let lattice = lattice_graph(layout.rows, layout.cols);
    let mut outputs: Vec<(Site, usize)> = layout
        .sites()
        .filter_map(|(s, r)| match r {
            Role::Output(v) => Some((s, v)),
            _ => None,
        })
        .collect();
    outputs.sort_by_key(|&(_, v)| v);
    let nvars = layout.rows * layout.cols - outputs.len();
    let mut sym = SymbolicState::new(lattice, nvars);
    let mut pattern = MeasurementPattern::empty(layout.rows, layout.cols);
    let mut ids: Vec<MeasId> = Vec::with_capacity(nvars);

    // bases are chosen so the logical letter through the frame is as listed
    let fixed_rounds: [(fn(Role) -> bool, Letter); 3] = [
        (|r| r == Role::Prune, Letter::Z),
        (|r| r == Role::Junction, Letter::Y),
        (|r| r == Role::Center, Letter::Y),
    ];
    for (pick, logical) in fixed_rounds {
        let mut ops = Vec::new();
        for (s, _) in layout.sites().filter(|&(_, r)| pick(r)) {
            let basis = sym.logical_basis(layout.index(s), logical)?;
            sym.measure(basis, layout.index(s), ids.len())?;
            ops.push(MeasurementOp::plain(s, basis));
            ids.push(MeasId {
                round: pattern.rounds.len() + 1,
                index: ops.len(),
            });
        }
        pattern.rounds.push(ops);
    }

    let owner = |i: usize| match layout.role(layout.site(i)) {
        Role::Wire(v) => Some(v),
        _ => None,
    };
    let mut ops = Vec::new();
    for &(s, v) in &outputs {
        let vi = layout.index(s);
        while let Some(a) = sym
            .graph()
            .neighbor_list(vi)
            .into_iter()
            .find(|&a| owner(a) == Some(v))
        {
            let nbrs = sym.graph().neighbor_list(a);
            let b = match nbrs.as_slice() {
                [x, y] if *x == vi => *y,
                [x, y] if *y == vi => *x,
                _ => {
                    return Err(Error::Compile(format!(
                        "chain site ({}) of vertex {} has {} neighbours",
                        layout.site(a),
                        v + 1,
                        nbrs.len()
                    )))
                }
            };
            if owner(b) != Some(v) {
                return Err(Error::Compile(format!(
                    "chain of vertex {} ends at ({})",
                    v + 1,
                    layout.site(a)
                )));
            }
            let (ba, bb) = sym.contract_chain(vi, a, b, ids.len(), ids.len() + 1)?;
            for (site, basis) in [(a, ba), (b, bb)] {
                ops.push(MeasurementOp::plain(layout.site(site), basis));
                ids.push(MeasId {
                    round: 4,
                    index: ops.len(),
                });
            }
        }
    }
    pattern.rounds.push(ops);
    debug_assert_eq!(ids.len(), nvars);

    // the remaining graph on the output sites must be the target
    let remaining: Vec<usize> = sym.graph().vertices().collect();
    if remaining.len() != outputs.len() {
        return Err(Error::Compile(format!(
            "{} sites remain after contraction, expected {}",
            remaining.len(),
            outputs.len()
        )));
    }
    let vertex_of: HashMap<usize, usize> =
        outputs.iter().map(|&(s, v)| (layout.index(s), v)).collect();
    let mut got: Vec<(usize, usize)> = sym
        .graph()
        .edges()
        .into_iter()
        .map(|(a, b)| {
            let (x, y) = (vertex_of[&a], vertex_of[&b]);
            (x.min(y), x.max(y))
        })
        .collect();
    got.sort_unstable();
    if got != target.edges() {
        return Err(Error::Compile(
            "compiled graph differs from the target".into(),
        ));
    }

    let signal = |e: &Affine| Signal::new(e.vars.iter_ones().map(|i| ids[i]), e.constant);
    for &(s, _) in &outputs {
        let (ex, ez) = sym.correction(layout.index(s))?;
        for (pauli, e) in [(Letter::X, ex), (Letter::Z, ez)] {
            if !e.is_zero() {
                pattern.corrections.push(Correction {
                    site: s,
                    pauli,
                    signal: signal(&e),
                });
            }
        }
    }
    pattern.outputs = outputs;
    pattern.validate()?;
    Ok(pattern)
}
