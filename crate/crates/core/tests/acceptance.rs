//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use common::*;
use mbqc_encoder::codes::{
    augment, codeword, graph_generator, graph_of, logical_operators, standard_form, GraphCode,
};
use mbqc_encoder::graph::{FramedGraphState, Graph, LocalFrame};
use mbqc_encoder::lattice::{
    choose_band, compile, compile_compact, MeasurementPattern, CROSS, EDGE_LB, EDGE_RB,
};
use mbqc_encoder::runtime::{encode_state, execute, verify_graph_state, EncodingJob};
use mbqc_encoder::sim::{Basis, OutcomeSource, StateVector, Tableau};
use mbqc_encoder::symplectic::{BitMatrix, BitVec, CheckMatrix, Letter, PauliOp};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Scripts per gadget template.
const GADGET_SCRIPTS: usize = 200;
/// Random graphs per vertex count in the pipeline sweep.
const PIPELINE_GRAPHS: usize = 50;
/// Outcome seeds per pipeline graph.
const PIPELINE_SEEDS: u64 = 20;
/// Edge probability of random graphs.
const EDGE_P: f64 = 0.5;
/// Largest accepted `measurements / n²` for the default layout.
const C_MAX: f64 = 25.0;
/// Largest accepted `measurements / (n d)` for the compact layout.
const C_COMPACT_MAX: f64 = 100.0;
/// Shots per frequency test.
const SHOTS: usize = 10_000;
/// Allowed deviation of a frequency, in binomial standard deviations.
const SIGMA: f64 = 3.0;
/// Random Clifford circuits checked against the oracle.
const CIRCUITS: usize = 200;

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name]
        .iter()
        .collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn worked_code() -> CheckMatrix {
    CheckMatrix::parse(&fixture("worked_code.txt")).unwrap()
}

fn op(s: &str) -> PauliOp {
    s.parse().unwrap()
}

fn generator_relations() -> Verdict {
    let g = worked_graph();
    let k: Vec<PauliOp> = (0..6).map(|v| graph_generator(&g, v)).collect();
    let code = worked_code().generators();
    let prod = |a: usize, b: usize| k[a].multiply(&k[b]).unwrap();
    let relations = [
        ("g'1 = g1 g6", prod(0, 5), &code[0]),
        ("g'2 = g2", k[1].clone(), &code[1]),
        ("g'3 = g3 g5", prod(2, 4), &code[2]),
        ("g'4 = g4 g5", prod(3, 4), &code[3]),
    ];
    for (name, got, want) in &relations {
        ensure(got == *want, || format!("{name}: {got} vs {want}"))?;
    }
    Ok("4 relations bit-exact".into())
}

fn block_identity() -> Verdict {
    let printed = worked_code();
    let sf = standard_form(&printed).map_err(|e| e.to_string())?;
    let gc = &sf.code;
    ensure(
        sf.circuit.is_empty() && sf.order == (0..6).collect::<Vec<_>>(),
        || "worked code needed local gates".into(),
    )?;
    ensure(
        gc.r == BitMatrix::from_strs(&["01", "00", "10", "10"]),
        || format!("R = {:?}", gc.r),
    )?;
    ensure(
        gc.c == BitMatrix::from_strs(&["10", "00", "01", "10"]),
        || format!("C = {:?}", gc.c),
    )?;
    ensure(gc.z_block() == printed.z_block(), || {
        "A + RC^T | C differs from the Z block".into()
    })?;
    Ok("Z block = [A + RC^T | C] bit-exact".into())
}

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
    if f.graph().edges() != vec![(0, 1), (1, 4)] {
        return false;
    }
    let mut psi = StateVector::from_tableau(&t0).unwrap();
    psi.project(Basis::X, 2, x).unwrap();
    psi.project(Basis::X, 3, y).unwrap();
    let reduced = psi
        .drop_qubits(&[(2, Basis::X, x), (3, Basis::X, y)])
        .unwrap();
    let engine = StateVector::from_tableau(&f.realize().unwrap().0).unwrap();
    reduced.approx_eq_ray(&engine, AMP_TOL)
}

fn chain_contraction() -> Verdict {
    for bits in 0..128u32 {
        let b = |i: u32| (bits >> i) & 1 == 1;
        ensure(
            contraction_case(b(0), b(1), b(2), b(3), b(4), b(5), b(6)),
            || format!("case {bits:07b}"),
        )?;
    }
    Ok(format!("128 cases within {AMP_TOL:e}"))
}

fn crossing_gadgets() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let cases = [
        (CROSS, vec![(0, 1), (2, 3)]),
        (EDGE_LB, vec![(0, 1), (0, 3), (2, 3)]),
        (EDGE_RB, vec![(0, 1), (1, 3), (2, 3)]),
    ];
    for (t, edges) in &cases {
        let want = Tableau::graph_state(&Graph::from_edges(4, edges).unwrap()).unwrap();
        let gd = gadget(t);
        for i in 0..GADGET_SCRIPTS {
            let script: Vec<bool> = (0..gd.num_measurements()).map(|_| rng.gen()).collect();
            ensure(gd.run(script).equiv(&want).unwrap(), || {
                format!("{} script {i}", t.name)
            })?;
        }
    }
    Ok(format!(
        "{GADGET_SCRIPTS} scripts each on cross, edge-lb, edge-rb"
    ))
}

fn pipeline() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut jobs = Vec::new();
    for n in 3..=7 {
        for i in 0..PIPELINE_GRAPHS {
            jobs.push((n, i, Graph::random(n, EDGE_P, &mut rng)));
        }
    }
    let patterns: Vec<(usize, usize, Graph, MeasurementPattern)> = jobs
        .into_par_iter()
        .map(|(n, i, g)| {
            let p = compile(&g).unwrap();
            (n, i, g, p)
        })
        .collect();
    let runs: Vec<(usize, usize, u64)> = patterns
        .iter()
        .enumerate()
        .flat_map(|(j, _)| (0..PIPELINE_SEEDS).map(move |s| (j, 0, s)))
        .collect();
    let failures: Vec<String> = runs
        .par_iter()
        .filter_map(|&(j, _, seed)| {
            let (n, i, g, p) = &patterns[j];
            let tr = execute(p, &mut OutcomeSource::seeded(seed)).unwrap();
            (!verify_graph_state(&tr.tableau, g).unwrap())
                .then(|| format!("n={n} graph {i} seed {seed}"))
        })
        .collect();
    ensure(failures.is_empty(), || {
        format!(
            "{} of {} runs failed, first {}",
            failures.len(),
            runs.len(),
            failures[0]
        )
    })?;
    Ok(format!("{} runs verified sign-inclusively", runs.len()))
}

fn random_code(rng: &mut ChaCha8Rng, n: usize, d: usize) -> CheckMatrix {
    let mut t = Tableau::new(n);
    for _ in 0..(6 * n) {
        t.apply(random_gate(rng, n)).unwrap();
    }
    let mut rows: Vec<PauliOp> = t.stabilizers().to_vec();
    for _ in 0..n {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            let other = rows[b].clone();
            rows[a].mul_assign_right(&other);
        }
    }
    rows.truncate(d);
    CheckMatrix::from_signed(n, rows).unwrap()
}

fn constant_depth() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut rounds = std::collections::BTreeSet::new();
    let mut c: f64 = 0.0;
    let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
    rounds.insert(compile(&k3).unwrap().metrics().rounds);
    for n in 2..=10 {
        for _ in 0..5 {
            let m = compile(&Graph::random(n, EDGE_P, &mut rng))
                .unwrap()
                .metrics();
            rounds.insert(m.rounds);
            if n >= 3 {
                c = c.max(m.measurements as f64 / (n * n) as f64);
            }
        }
    }
    ensure(rounds.len() == 1, || format!("round counts {rounds:?}"))?;
    ensure(c <= C_MAX, || format!("c = {c:.3} exceeds {C_MAX}"))?;

    let mut c_compact: f64 = 0.0;
    let mut codes = 0;
    for n in 3..=8 {
        for d in 1..=n {
            let code = random_code(&mut rng, n, d);
            let sf = standard_form(&code).unwrap();
            let aug = augment(&sf.code, &logical_operators(&sf.code)).map_err(|e| e.to_string())?;
            let band = aug.sparse_vertices();
            let p = compile_compact(&aug.graph, &band)
                .or_else(|_| compile_compact(&aug.graph, &choose_band(&aug.graph)))
                .unwrap();
            let m = p.metrics();
            rounds.insert(m.rounds);
            c_compact = c_compact.max(m.measurements as f64 / (n * d) as f64);
            for seed in 0..2 {
                let tr = execute(&p, &mut OutcomeSource::seeded(seed)).unwrap();
                ensure(verify_graph_state(&tr.tableau, &aug.graph).unwrap(), || {
                    format!("compact n={n} d={d} seed {seed}")
                })?;
            }
            codes += 1;
        }
    }
    ensure(rounds.len() == 1, || {
        format!("compact round counts {rounds:?}")
    })?;
    ensure(c_compact <= C_COMPACT_MAX, || {
        format!("c' = {c_compact:.3} exceeds {C_COMPACT_MAX}")
    })?;
    Ok(format!(
        "rounds = {} for n = 2..10; c = {c:.3} (n = 3..10); compact c' = {c_compact:.3} over {codes} codes",
        rounds.iter().next().unwrap()
    ))
}

fn encoding() -> Verdict {
    let code = worked_code();
    let sf = standard_form(&code).unwrap();
    let gc = &sf.code;
    let logicals = logical_operators(gc);
    let gens = gc.check_matrix().generators();

    // recorded verdicts on the candidate logical operators
    let mut accepted = 0;
    for line in fixture("worked_logicals.txt")
        .lines()
        .filter(|l| !l.starts_with('#'))
    {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let (reject, kind, idx, p) = match parts.as_slice() {
            ["reject", k, i, p] => (true, *k, i.parse::<usize>().unwrap() - 1, op(p)),
            [k, i, p] => (false, *k, i.parse::<usize>().unwrap() - 1, op(p)),
            _ => return Err(format!("bad fixture line {line:?}")),
        };
        let mut base = StateVector::graph_state(&graph_of(gc)).unwrap();
        base.apply_pauli(&p).unwrap();
        let in_code = gens
            .iter()
            .all(|g| base.eigenvalue(g, AMP_TOL).unwrap() == Some(false));
        ensure(in_code != reject, || {
            format!("verdict for {line:?} disagrees with the oracle")
        })?;
        if reject {
            continue;
        }
        accepted += 1;
        // the operator acts as the named logical on every codeword
        for x in 0..4u8 {
            let bits = [x & 1 == 1, x & 2 == 2];
            let cw = codeword(gc, &BitVec::from_bools(&bits)).unwrap();
            let mut moved = cw.clone();
            moved.apply_pauli(&p).unwrap();
            let ok = match kind {
                "x" => {
                    let mut flipped = bits;
                    flipped[idx] ^= true;
                    moved.approx_eq_ray(
                        &codeword(gc, &BitVec::from_bools(&flipped)).unwrap(),
                        AMP_TOL,
                    )
                }
                _ => cw.eigenvalue(&p, AMP_TOL).unwrap() == Some(bits[idx]),
            };
            ensure(ok, || format!("{line:?} on codeword {bits:?}"))?;
        }
        if kind == "x" {
            ensure(logicals.x[idx] == p, || {
                format!("computed X_L{} = {}", idx + 1, logicals.x[idx])
            })?;
        }
    }

    for x in 0..4u8 {
        let bits = [x & 1 == 1, x & 2 == 2];
        let want = codeword(gc, &BitVec::from_bools(&bits)).unwrap();
        for (seed, through_pattern) in [(0, false), (1, false), (2, true)] {
            let mut input = Tableau::new(2);
            for (q, &b) in bits.iter().enumerate() {
                if b {
                    input.x(q);
                }
            }
            let enc = encode_state(&EncodingJob {
                code: code.clone(),
                input,
                seed,
                through_pattern,
            })
            .map_err(|e| e.to_string())?;
            let got = StateVector::from_tableau(&enc.tableau).unwrap();
            ensure(got.approx_eq_ray(&want, AMP_TOL), || {
                format!("input {bits:?} seed {seed}")
            })?;
        }
    }
    Ok(format!(
        "4 basis inputs match codewords within {AMP_TOL:e}; {accepted} recorded logicals confirmed"
    ))
}

fn simulator_soundness() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut det = 0;
    let mut freq_tests = 0;
    let bound = SIGMA * (SHOTS as f64 * 0.25).sqrt();
    for case in 0..CIRCUITS {
        let n = rng.gen_range(1..=5);
        let depth = rng.gen_range(1..=30);
        let steps = random_circuit(&mut rng, n, depth);
        let (t, stats) = replay_against_oracle(n, &steps, &mut OutcomeSource::seeded(case as u64))
            .map_err(|e| format!("case {case}: {e}"))?;
        det += stats.deterministic;
        if let Some((b, q, ones)) = sample_frequency(&t, SHOTS, case as u64) {
            freq_tests += 1;
            let dev = (ones as f64 - SHOTS as f64 / 2.0).abs();
            ensure(dev <= bound, || {
                format!("case {case}: {b:?} on {q} gave {ones}/{SHOTS}")
            })?;
        }
    }
    Ok(format!(
        "{CIRCUITS} circuits, {det} deterministic outcomes exact, {freq_tests} frequency tests within {SIGMA} sigma at {SHOTS} shots"
    ))
}

fn round_trips() -> Verdict {
    let mut count = 0;
    for name in [
        "worked_code.txt",
        "input_00.txt",
        "input_01.txt",
        "input_10.txt",
        "input_11.txt",
    ] {
        let text = fixture(name);
        ensure(
            CheckMatrix::parse(&text).unwrap().serialize() == text,
            || name.into(),
        )?;
        count += 1;
    }
    for name in [
        "worked_graph.txt",
        "worked_augmented.txt",
        "k3.txt",
        "single.txt",
    ] {
        let text = fixture(name);
        ensure(Graph::parse(&text).unwrap().serialize() == text, || {
            name.into()
        })?;
        count += 1;
    }
    for name in ["k3.pattern", "single.pattern"] {
        let text = fixture(name);
        ensure(
            MeasurementPattern::parse(&text).unwrap().serialize() == text,
            || name.into(),
        )?;
        count += 1;
    }
    let text = fixture("worked_code.convert");
    let body = GraphCode::parse(&text).unwrap().serialize();
    ensure(text.starts_with(&body), || "worked_code.convert".into())?;
    let sf = standard_form(&worked_code()).unwrap();
    ensure(sf.code.serialize() == body, || {
        "converted worked code differs from golden".into()
    })?;
    count += 1;
    let k3 = Graph::parse(&fixture("k3.txt")).unwrap();
    ensure(
        compile(&k3).unwrap().serialize() == fixture("k3.pattern"),
        || "compiled k3 differs from golden".into(),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in 2..=6 {
        let p = compile_compact(&Graph::random(n, EDGE_P, &mut rng), &[]).unwrap();
        ensure(
            MeasurementPattern::parse(&p.serialize())
                .unwrap()
                .serialize()
                == p.serialize(),
            || format!("random pattern n={n}"),
        )?;
    }
    Ok(format!(
        "{count} fixtures byte-exact; k3 pattern golden; 5 generated patterns"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Verdict); 9] = [
        (
            "generator relations of the worked code",
            generator_relations,
        ),
        ("block identity Z = A + RC^T", block_identity),
        ("chain contraction against the oracle", chain_contraction),
        ("crossing gadgets", crossing_gadgets),
        ("compiled graph states verify", pipeline),
        ("constant depth and size bounds", constant_depth),
        ("teleportation encoding", encoding),
        ("simulator soundness", simulator_soundness),
        ("file round trips", round_trips),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {} PASS {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} FAIL {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
