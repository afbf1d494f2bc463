use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use mbqc_encoder::codes::{augment, logical_operators, standard_form};
use mbqc_encoder::error::{Error, Result};
use mbqc_encoder::graph::Graph;
use mbqc_encoder::lattice::{choose_band, compile, compile_compact, MeasurementPattern};
use mbqc_encoder::runtime::{
    encode_state, execute, stabilizer_state, verify_graph_state, EncodingJob,
};
use mbqc_encoder::sim::OutcomeSource;
use mbqc_encoder::symplectic::CheckMatrix;

#[derive(Parser)]
#[command(
    name = "mbqc-encoder",
    version,
    about = "Stabilizer-code encoders as measurement patterns on a 2D cluster state"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Bring a check matrix to graph-code form.
    Convert {
        code: PathBuf,
        /// Write the local Clifford circuit to this file.
        #[arg(long)]
        circuit: Option<PathBuf>,
    },
    /// Print the augmented graph of a code.
    Graph {
        code: PathBuf,
        /// Graphviz output.
        #[arg(long)]
        dot: bool,
    },
    /// Compile a graph into a measurement pattern.
    Compile {
        graph: PathBuf,
        /// Share one tile row between sparse vertices.
        #[arg(long)]
        compact: bool,
        /// Vertices (1-based) sharing the band row; defaults to a greedy choice.
        #[arg(long, value_delimiter = ',', requires = "compact")]
        band: Option<Vec<usize>>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Execute a pattern and print its trace.
    Run {
        pattern: PathBuf,
        #[arg(long, conflicts_with = "script")]
        seed: Option<u64>,
        /// One bit per measurement in pattern order.
        #[arg(long)]
        script: Option<PathBuf>,
        /// Take deterministic outcomes from the simulator instead of the script.
        #[arg(long, requires = "script")]
        lenient: bool,
    },
    /// Execute a pattern and check its output against a graph.
    Verify {
        pattern: PathBuf,
        graph: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of consecutive seeds to try.
        #[arg(long, default_value_t = 1)]
        runs: u64,
    },
    /// Print pattern metrics.
    Stats { pattern: PathBuf },
    /// Encode a stabilizer state into a code by teleportation.
    Encode {
        code: PathBuf,
        /// Check matrix with as many generators as qubits.
        input: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Prepare the resource state by executing its compiled pattern.
        #[arg(long)]
        through_pattern: bool,
    },
}

fn load<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T>) -> Result<T> {
    let wrap = |source: Error| Error::File {
        path: path.display().to_string(),
        source: Box::new(source),
    };
    let text = fs::read_to_string(path).map_err(|e| wrap(e.into()))?;
    parse(&text).map_err(wrap)
}

fn emit(text: &str) -> Result<()> {
    std::io::stdout().lock().write_all(text.as_bytes())?;
    Ok(())
}

fn run(cmd: Cmd) -> Result<bool> {
    match cmd {
        Cmd::Convert { code, circuit } => {
            let m = load(&code, CheckMatrix::parse)?;
            let sf = standard_form(&m)?;
            let mut out = sf.code.serialize();
            for (name, block) in [("R", &sf.code.r), ("A", &sf.code.a), ("C", &sf.code.c)] {
                out.push_str(&format!("# {name}\n"));
                for row in block.rows() {
                    out.push_str(&format!("#   {row}\n"));
                }
            }
            let order: Vec<String> = sf.order.iter().map(|q| (q + 1).to_string()).collect();
            out.push_str(&format!("# order {}\n", order.join(" ")));
            for line in sf.circuit.serialize().lines() {
                out.push_str(&format!("# gate {line}\n"));
            }
            emit(&out)?;
            if let Some(path) = circuit {
                fs::write(path, sf.circuit.serialize())?;
            }
        }
        Cmd::Graph { code, dot } => {
            let m = load(&code, CheckMatrix::parse)?;
            let sf = standard_form(&m)?;
            let aug = augment(&sf.code, &logical_operators(&sf.code))?;
            if dot {
                emit(&aug.to_dot("augmented"))?;
            } else {
                let n = aug.base.capacity();
                let band: Vec<String> = aug
                    .sparse_vertices()
                    .iter()
                    .map(|v| (v + 1).to_string())
                    .collect();
                emit(&format!(
                    "# inputs {}..={}\n# band {}\n{}",
                    n + 1,
                    n + aug.k,
                    band.join(","),
                    aug.graph.serialize()
                ))?;
            }
        }
        Cmd::Compile {
            graph,
            compact,
            band,
            output,
        } => {
            let g = load(&graph, Graph::parse)?;
            let p = if compact {
                let band = match band {
                    Some(b) => b
                        .iter()
                        .map(|&v| v.checked_sub(1).ok_or(Error::UnknownVertex(0)))
                        .collect::<Result<Vec<_>>>()?,
                    None => choose_band(&g),
                };
                compile_compact(&g, &band)?
            } else {
                compile(&g)?
            };
            match output {
                Some(path) => fs::write(path, p.serialize())?,
                None => emit(&p.serialize())?,
            }
        }
        Cmd::Run {
            pattern,
            seed,
            script,
            lenient,
        } => {
            let p = load(&pattern, MeasurementPattern::parse)?;
            let mut src = match script {
                Some(path) => {
                    let bits = load(&path, OutcomeSource::parse_script)?;
                    if lenient {
                        OutcomeSource::lenient_script(bits)
                    } else {
                        OutcomeSource::script(bits)
                    }
                }
                None => OutcomeSource::seeded(seed.unwrap_or(0)),
            };
            emit(&execute(&p, &mut src)?.dump())?;
        }
        Cmd::Verify {
            pattern,
            graph,
            seed,
            runs,
        } => {
            let p = load(&pattern, MeasurementPattern::parse)?;
            let g = load(&graph, Graph::parse)?;
            for s in seed..seed + runs {
                let trace = execute(&p, &mut OutcomeSource::seeded(s))?;
                if !verify_graph_state(&trace.tableau, &g)? {
                    emit(&format!("fail seed={s}\n"))?;
                    return Ok(false);
                }
            }
            emit(&format!("pass runs={runs}\n"))?;
        }
        Cmd::Stats { pattern } => {
            let p = load(&pattern, MeasurementPattern::parse)?;
            let m = p.metrics();
            emit(&format!(
                "measurements={}\nrounds={}\narea={}\nrows={}\ncols={}\noutputs={}\n",
                m.measurements,
                m.rounds,
                m.area,
                p.rows,
                p.cols,
                p.outputs.len()
            ))?;
        }
        Cmd::Encode {
            code,
            input,
            seed,
            through_pattern,
        } => {
            let code = load(&code, CheckMatrix::parse)?;
            let input = load(&input, |t| stabilizer_state(&CheckMatrix::parse(t)?))?;
            let enc = encode_state(&EncodingJob {
                code,
                input,
                seed,
                through_pattern,
            })?;
            let mut out = String::new();
            for (l, (m1, m2)) in enc.bell.iter().enumerate() {
                out.push_str(&format!(
                    "# bell {} = {}{}\n",
                    l + 1,
                    u8::from(*m1),
                    u8::from(*m2)
                ));
            }
            out.push_str(&enc.tableau.check_matrix().serialize());
            emit(&out)?;
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.cmd) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::File { .. } => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}
