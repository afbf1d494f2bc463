mod common;

use common::gadget;
use mbqc_encoder::graph::Graph;
use mbqc_encoder::lattice::{CROSS, EDGE_LB, EDGE_RB, PASS_H};
use mbqc_encoder::runtime::verify_graph_state;
use mbqc_encoder::sim::Tableau;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// terminals: 0 = l, 1 = r, 2 = t, 3 = b
#[test]
fn templates_leave_the_intended_terminal_graph() {
    let cases = [
        (CROSS, vec![(0, 1), (2, 3)]),
        (EDGE_LB, vec![(0, 1), (0, 3), (2, 3)]),
        (EDGE_RB, vec![(0, 1), (1, 3), (2, 3)]),
    ];
    for (t, edges) in cases {
        let want = Graph::from_edges(4, &edges).unwrap();
        let gd = gadget(&t);
        assert_eq!(gd.terminal_graph().edges(), want.edges(), "{}", t.name);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let script: Vec<bool> = (0..gd.num_measurements()).map(|_| rng.gen()).collect();
            let out = gd.run(script);
            assert!(
                out.equiv(&Tableau::graph_state(&want).unwrap()).unwrap(),
                "{}",
                t.name
            );
        }
    }
}

#[test]
fn pass_template_is_a_single_wire() {
    let gd = gadget(&PASS_H);
    assert_eq!(gd.terminal_graph().edges(), vec![(0, 1)]);
    let want = Graph::from_edges(2, &[(0, 1)]).unwrap();
    for bits in 0..8u32 {
        let script: Vec<bool> = (0..gd.num_measurements())
            .map(|i| (bits >> (i % 3)) & 1 == 1)
            .collect();
        assert!(verify_graph_state(&gd.run(script), &want).unwrap());
    }
}
