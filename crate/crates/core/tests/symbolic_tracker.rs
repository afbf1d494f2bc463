use mbqc_encoder::graph::{FramedGraphState, Graph, LocalFrame, SymbolicState};
use mbqc_encoder::sim::Basis;
use mbqc_encoder::symplectic::BitVec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_basis(rng: &mut ChaCha8Rng) -> Basis {
    [Basis::X, Basis::Y, Basis::Z][rng.gen_range(0..3)]
}

/// Symbolic and concrete engines agree on every outcome assignment drawn.
#[test]
fn symbolic_matches_concrete() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for case in 0..300 {
        let n = rng.gen_range(3..9);
        let g = Graph::random(n, 0.45, &mut rng);
        let k = rng.gen_range(1..n);
        let mut order: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        let steps: Vec<(usize, Basis)> = order[..k]
            .iter()
            .map(|&v| (v, random_basis(&mut rng)))
            .collect();

        let mut sym = SymbolicState::new(g.clone(), k);
        let mut exprs = Vec::new();
        for (id, &(v, b)) in steps.iter().enumerate() {
            exprs.push(sym.measure(b, v, id).unwrap());
        }

        for _ in 0..4 {
            let mut conc = FramedGraphState::new(g.clone());
            let mut outcomes = BitVec::zeros(k);
            for (id, &(v, b)) in steps.iter().enumerate() {
                let o = match &exprs[id].forced {
                    Some(e) => e.eval(&outcomes),
                    None => rng.gen(),
                };
                outcomes.set(id, o);
                assert_eq!(
                    conc.logical(b, v).unwrap().letter,
                    exprs[id].logical,
                    "case {case}"
                );
                let logical = conc.logical(b, v).unwrap().neg ^ o;
                assert_eq!(exprs[id].outcome.eval(&outcomes), logical, "case {case}");
                conc.measure(b, v, o).unwrap();
            }
            let back = sym.concretize(&outcomes);
            assert_eq!(back.graph(), conc.graph(), "case {case}");
            for v in conc.graph().vertices() {
                assert_eq!(back.frame(v), conc.frame(v), "case {case} vertex {v}");
            }
        }
    }
}

/// Chain contraction on a 10-chain: corrections are the expected parities.
#[test]
fn symbolic_chain_contraction() {
    let edges: Vec<(usize, usize)> = (0..9).map(|i| (i, i + 1)).collect();
    let g = Graph::from_edges(10, &edges).unwrap();
    let mut sym = SymbolicState::new(g.clone(), 8);
    let mut id = 0;
    for (a, b) in [(1, 2), (3, 4), (5, 6), (7, 8)] {
        sym.contract_chain(0, a, b, id, id + 1).unwrap();
        id += 2;
    }
    assert!(sym.graph().has_edge(0, 9));
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..64 {
        let outcomes = BitVec::from_bools(&(0..8).map(|_| rng.gen()).collect::<Vec<bool>>());
        let mut conc = FramedGraphState::new(g.clone());
        for (j, (a, b)) in [(1, 2), (3, 4), (5, 6), (7, 8)].into_iter().enumerate() {
            conc.contract_chain(0, a, b, outcomes.get(2 * j), outcomes.get(2 * j + 1))
                .unwrap();
        }
        let back = sym.concretize(&outcomes);
        for v in [0, 9] {
            assert_eq!(back.frame(v), conc.frame(v));
            assert!(back.frame(v).is_pauli());
        }
        let (ex, ez) = sym.correction(9).unwrap();
        assert!(ex.is_zero());
        assert_eq!(ez.eval(&outcomes), conc.frame(9) != LocalFrame::IDENTITY);
    }
}
