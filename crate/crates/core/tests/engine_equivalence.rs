mod common;

use common::*;
use mbqc_encoder::graph::{FramedGraphState, Graph, LocalFrame};
use mbqc_encoder::sim::{Basis, OutcomeSource, StateVector, Tableau};
use mbqc_encoder::symplectic::Letter;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Measures the same physical qubits on the engine and on the simulator and
/// checks the surviving states agree.
fn dual_run(rng: &mut ChaCha8Rng, g: &Graph, steps: usize, random_frames: bool) {
    let n = g.capacity();
    let mut fgs = FramedGraphState::new(g.clone());
    if random_frames {
        for v in 0..n {
            let f = LocalFrame::from_index(rng.gen_range(0..24)).unwrap();
            fgs.apply_local(v, f).unwrap();
        }
    }
    let (mut t, _) = fgs.realize().unwrap();
    let mut measured = Vec::new();
    for _ in 0..steps.min(n) {
        let alive: Vec<usize> = fgs.graph().vertices().collect();
        let a = alive[rng.gen_range(0..alive.len())];
        let basis = random_basis(rng);
        let want = rng.gen_bool(0.5);
        let forced = fgs.forced_outcome(basis, a).unwrap();
        let m = t
            .measure(basis, a, &mut OutcomeSource::Constant(want))
            .unwrap();
        assert_eq!(
            forced.is_some(),
            m.deterministic,
            "determinism of {basis} on {a} in {g:?}"
        );
        if let Some(f) = forced {
            assert_eq!(f, m.outcome);
        }
        fgs.measure(basis, a, m.outcome).unwrap();
        measured.push((a, basis));
        let (reduced, labels) = drop_measured(&t, &measured);
        let (realized, rlabels) = fgs.realize().unwrap();
        assert_eq!(labels, rlabels);
        assert!(
            reduced.equiv(&realized).unwrap(),
            "engine and simulator differ after {:?} on {g:?}",
            fgs.record()
        );
    }
}

#[test]
fn engine_matches_simulator_on_random_sequences() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..500 {
        let n = rng.gen_range(1..=8);
        let g = Graph::random(n, rng.gen_range(0.2..0.8), &mut rng);
        dual_run(&mut rng, &g, 10, case % 2 == 1);
    }
}

#[test]
fn x_measurement_graph_is_outcome_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..200 {
        let n = rng.gen_range(2..=8);
        let g = Graph::random(n, 0.5, &mut rng);
        let a = rng.gen_range(0..n);
        if g.degree(a) == 0 {
            continue;
        }
        let mut zero = FramedGraphState::new(g.clone());
        let mut one = FramedGraphState::new(g.clone());
        zero.measure_x(a, false).unwrap();
        one.measure_x(a, true).unwrap();
        assert_eq!(zero.graph(), one.graph());
    }
}

#[test]
fn x_measurement_any_neighbor_gives_same_state() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    while checked < 100 {
        let n = rng.gen_range(2..=8);
        let g = Graph::random(n, 0.5, &mut rng);
        let a = rng.gen_range(0..n);
        if g.degree(a) == 0 {
            continue;
        }
        let outcome = rng.gen_bool(0.5);
        let states: Vec<Tableau> = g
            .neighbors(a)
            .iter_ones()
            .map(|b0| {
                let mut f = FramedGraphState::new(g.clone());
                f.measure_via(Basis::X, a, outcome, Some(b0)).unwrap();
                f.realize().unwrap().0
            })
            .collect();
        for s in &states[1..] {
            assert!(states[0].equiv(s).unwrap());
        }
        checked += 1;
    }
}

#[test]
fn z_measure_with_outcome_one_leaves_z_frames() {
    let mut f = FramedGraphState::new(chain(3));
    f.measure_z(1, true).unwrap();
    let z = LocalFrame::pauli(Letter::Z);
    assert_eq!((f.frame(0), f.frame(2)), (z, z));
    let mut t = Tableau::graph_state(&chain(3)).unwrap();
    t.measure(Basis::Z, 1, &mut OutcomeSource::Constant(true))
        .unwrap();
    let (reduced, _) = drop_measured(&t, &[(1, Basis::Z)]);
    assert!(reduced.equiv(&f.realize().unwrap().0).unwrap());
}

/// Pre-existing `Z` corrections `(u0, v0, x0, y0, w0)` on the chain
/// `L – v – a – b – R`, then `X` outcomes `(x, y)` on `a` and `b`.
fn contraction_case(u0: bool, v0: bool, x0: bool, y0: bool, w0: bool, x: bool, y: bool) -> bool {
    let z = LocalFrame::pauli(Letter::Z);
    let mut f = FramedGraphState::new(chain(5));
    for (v, on) in [(0, u0), (1, v0), (2, x0), (3, y0), (4, w0)] {
        if on {
            f.apply_local(v, z).unwrap();
        }
    }
    let (t0, _) = f.realize().unwrap();
    f.contract_chain(1, 2, 3, x, y).unwrap();
    assert_eq!(f.graph().edges(), vec![(0, 1), (1, 4)]);
    assert_eq!(f.frame(0), if u0 { z } else { LocalFrame::IDENTITY });
    assert_eq!(
        f.frame(1),
        if v0 ^ y0 ^ y { z } else { LocalFrame::IDENTITY }
    );
    assert_eq!(
        f.frame(4),
        if w0 ^ x0 ^ x { z } else { LocalFrame::IDENTITY }
    );

    let mut psi = StateVector::from_tableau(&t0).unwrap();
    psi.project(Basis::X, 2, x).unwrap();
    psi.project(Basis::X, 3, y).unwrap();
    let reduced = psi
        .drop_qubits(&[(2, Basis::X, x), (3, Basis::X, y)])
        .unwrap();
    let engine = StateVector::from_tableau(&f.realize().unwrap().0).unwrap();
    reduced.approx_eq_ray(&engine, AMP_TOL)
}

#[test]
fn contraction_matches_oracle_for_all_corrections_and_outcomes() {
    for bits in 0..128u32 {
        let b = |i: u32| (bits >> i) & 1 == 1;
        assert!(
            contraction_case(b(0), b(1), b(2), b(3), b(4), b(5), b(6)),
            "case {bits:07b}"
        );
    }
}

#[test]
fn contraction_equals_two_x_measurements() {
    for bits in 0..4u32 {
        let (x, y) = (bits & 1 == 1, bits & 2 == 2);
        let mut a = FramedGraphState::new(chain(5));
        a.contract_chain(1, 2, 3, x, y).unwrap();
        let mut b = FramedGraphState::new(chain(5));
        b.measure_x(2, x).unwrap();
        b.measure_x(3, y).unwrap();
        assert!(a
            .realize()
            .unwrap()
            .0
            .equiv(&b.realize().unwrap().0)
            .unwrap());
    }
}

/// Chain `0 – 1 – … – 9`: contracting pairs (1,2), (3,4), (5,6), (7,8) onto
/// vertex 0 one after another equals measuring all eight in one pass.
#[test]
fn simultaneous_contraction_matches_sequential() {
    for bits in 0..256u32 {
        let out = |i: u32| (bits >> i) & 1 == 1;
        let mut seq = FramedGraphState::new(chain(10));
        for k in 0..4u32 {
            let a = 1 + 2 * k as usize;
            seq.contract_chain(0, a, a + 1, out(2 * k), out(2 * k + 1))
                .unwrap();
        }
        let mut t = Tableau::graph_state(&chain(10)).unwrap();
        let mut measured = Vec::new();
        for q in 1..9u32 {
            let mut src = OutcomeSource::script(vec![out(q - 1)]);
            t.measure(Basis::X, q as usize, &mut src).unwrap();
            measured.push((q as usize, Basis::X));
        }
        let (reduced, labels) = drop_measured(&t, &measured);
        assert_eq!(labels, vec![0, 9]);
        assert!(
            reduced.equiv(&seq.realize().unwrap().0).unwrap(),
            "outcomes {bits:08b}"
        );
    }
}

/// Contraction under arbitrary local Clifford frames, measured in the bases
/// that realize logical `X`.
#[test]
fn contraction_with_clifford_frames_matches_simulator() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..300 {
        let mut f = FramedGraphState::new(chain(5));
        for v in 0..5 {
            f.apply_local(v, LocalFrame::from_index(rng.gen_range(0..24)).unwrap())
                .unwrap();
        }
        let (mut t, _) = f.realize().unwrap();
        let (ba, bb) = (f.logical_x_basis(2).unwrap(), f.logical_x_basis(3).unwrap());
        let mut src = OutcomeSource::seeded(rng.gen());
        let x = t.measure(ba, 2, &mut src).unwrap().outcome;
        let y = t.measure(bb, 3, &mut src).unwrap().outcome;
        f.contract_chain(1, 2, 3, x, y).unwrap();
        let (reduced, _) = drop_measured(&t, &[(2, ba), (3, bb)]);
        assert!(reduced.equiv(&f.realize().unwrap().0).unwrap());
    }
}
