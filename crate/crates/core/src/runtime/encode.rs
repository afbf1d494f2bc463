use super::execute::execute;
use crate::codes::{
    augment, logical_operators, standard_form, AugmentedGraph, LogicalOps, StandardForm,
};
use crate::error::{Error, Result};
use crate::lattice::compile;
use crate::sim::{Basis, OutcomeSource, Tableau};
use crate::symplectic::{BitMatrix, BitVec, CheckMatrix, PauliOp};

/// A `k`-qubit state to be encoded in `code`.
#[derive(Clone, Debug)]
pub struct EncodingJob {
    pub code: CheckMatrix,
    pub input: Tableau,
    pub seed: u64,
    /// Prepare the augmented graph state by running its compiled pattern.
    pub through_pattern: bool,
}

#[derive(Clone, Debug)]
pub struct Encoding {
    /// Encoded state on the original qubits.
    pub tableau: Tableau,
    /// Encoded state before undoing the standard-form circuit and order.
    pub graph_frame: Tableau,
    /// Bell outcomes `(m1, m2)` per input qubit.
    pub bell: Vec<(bool, bool)>,
    pub form: StandardForm,
    pub logicals: LogicalOps,
    pub augmented: AugmentedGraph,
}

/// Teleports `job.input` into the code through the augmented graph state.
///
/// Input `l` is Bell-measured against augmented vertex `n + l` with a
/// `CNOT`, an `H` and two `Z` measurements; outcomes `(m1, m2)` are undone
/// by `Z_L^{m1} X_L^{m2}`.
pub fn encode_state(job: &EncodingJob) -> Result<Encoding> {
    let form = standard_form(&job.code)?;
    let gc = &form.code;
    let (n, d, k) = (gc.num_qubits(), gc.d(), gc.k());
    if job.input.num_qubits() != k {
        return Err(Error::Dimension {
            expected: k,
            found: job.input.num_qubits(),
        });
    }
    let logicals = logical_operators(gc);
    let augmented = augment(gc, &logicals)?;
    let mut src = OutcomeSource::seeded(job.seed);
    let resource = if job.through_pattern {
        execute(&compile(&augmented.graph)?, &mut src)?.tableau
    } else {
        Tableau::graph_state(&augmented.graph)?
    };

    let mut t = resource.tensor(&job.input);
    let mut bell = Vec::with_capacity(k);
    for l in 0..k {
        let (node, psi) = (n + l, n + k + l);
        t.cnot(psi, node);
        t.h(psi);
        let m1 = t.measure(Basis::Z, psi, &mut src)?.outcome;
        let m2 = t.measure(Basis::Z, node, &mut src)?.outcome;
        bell.push((m1, m2));
    }
    for q in (n..n + 2 * k).rev() {
        t.remove_qubit(q)?;
    }
    for (l, &(m1, m2)) in bell.iter().enumerate() {
        if m2 {
            t.apply_pauli(&logicals.x[l])?;
        }
        if m1 {
            t.apply_pauli(&logicals.z[l])?;
        }
    }
    // Z on pivot i anticommutes with generator i only and commutes with
    // every logical operator
    let gens = gc.check_matrix().generators();
    for (i, g) in gens.iter().enumerate().take(d) {
        match t.stabilizer_sign(g)? {
            Some(false) => {}
            Some(true) => t.z(i),
            None => {
                return Err(Error::Precondition(format!(
                    "generator {} does not stabilize the encoded state",
                    i + 1
                )))
            }
        }
    }

    let graph_frame = t.clone();
    let mut tableau = t.permuted(&form.inverse_order())?;
    form.circuit.apply_inverse(&mut tableau);
    Ok(Encoding {
        tableau,
        graph_frame,
        bell,
        form,
        logicals,
        augmented,
    })
}

/// The stabilizer state whose signed generators are the rows of `m`.
pub fn stabilizer_state(m: &CheckMatrix) -> Result<Tableau> {
    m.validate()?;
    let n = m.num_qubits();
    if m.num_generators() != n {
        return Err(Error::InvalidStabilizer(format!(
            "a state on {n} qubits needs {n} generators, found {}",
            m.num_generators()
        )));
    }
    let gens = m.generators();
    let mut t = Tableau::new(n);
    let mut src = OutcomeSource::Constant(false);
    for g in &gens {
        t.measure_observable(g, &mut src)?;
    }
    // a Pauli anticommuting with generator i alone flips its sign
    let swapped = BitMatrix::from_rows(
        gens.iter().map(|g| g.z_bits().concat(g.x_bits())).collect(),
        2 * n,
    );
    for (i, g) in gens.iter().enumerate() {
        if t.stabilizer_sign(g)? == Some(true) {
            let v = swapped
                .solve(&BitVec::unit(n, i))
                .expect("generators are independent");
            t.apply_pauli(&PauliOp::from_bits(v.slice(0, n), v.slice(n, 2 * n), 0)?)?;
        }
    }
    Ok(t)
}
