use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use clifford_core::error::{Error, ParseError};
use clifford_core::{graph, io as store, verify, Clifford2, GateMatrix};

const EXIT_VERIFY_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_NOT_CLIFFORD: u8 = 4;

/// Two-qubit Clifford group: local-Clifford cosets, CZ connectivity and
/// minimal-CZ synthesis.
#[derive(Parser)]
#[command(name = "clifford", version)]
struct Cli {
    /// Directory holding c1.tbl, lc2.tbl and c2.tbl.
    #[arg(long, global = true, env = "CLIFFORD_ATLAS_DIR", default_value = "clifford-atlas")]
    out_dir: PathBuf,

    /// Fail instead of regenerating missing tables.
    #[arg(long, global = true)]
    no_regen: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the group tables and write them to the output directory.
    Generate,
    /// Write the orbit map and orbit summary, and print the summary.
    Orbits,
    /// Print the CZ quotient graph.
    Graph {
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Print a minimal-CZ circuit for a matrix file or a c2 element id.
    Synth {
        /// Matrix text file, `-` for standard input.
        #[arg(required_unless_present = "id", conflicts_with = "id")]
        matrix: Option<PathBuf>,
        /// c2 element id (record position in c2.tbl, from 0).
        #[arg(long)]
        id: Option<usize>,
        /// Print gates in time order instead of matrix-product order.
        #[arg(long)]
        time_order: bool,
        /// Re-evaluate the circuit and check it reproduces the input exactly.
        #[arg(long)]
        verify: bool,
    },
    /// Report membership, orbit and layer of a matrix.
    Lookup {
        /// Matrix text file, `-` for standard input.
        matrix: PathBuf,
    },
    /// Run every check and print a report.
    Verify,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Json,
}

fn read_matrix(path: &Path) -> Result<GateMatrix, Error> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        s
    } else {
        fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?
    };
    Ok(text.parse::<GateMatrix>()?)
}

/// Rejects inputs that cannot be two-qubit Cliffords, most specific first.
fn check_candidate(m: &GateMatrix) -> Result<(), Error> {
    if m.dim() != 4 {
        return Err(Error::Dimension(4, m.dim()));
    }
    if !m.is_unitary() {
        return Err(Error::NotUnitary);
    }
    Ok(())
}

fn load(cli: &Cli) -> Result<Clifford2, Error> {
    store::load_or_generate(&cli.out_dir, !cli.no_regen)
}

fn run(cli: &Cli, out: &mut impl Write) -> Result<u8, Error> {
    let stdout_err = |source| Error::Io { path: PathBuf::from("<stdout>"), source };
    match &cli.command {
        Command::Generate => {
            let data = Clifford2::build()?;
            for path in store::save_tables(&cli.out_dir, &data)? {
                writeln!(out, "wrote {}", path.display()).map_err(stdout_err)?;
            }
        }
        Command::Orbits => {
            let data = load(cli)?;
            store::save_orbits(&cli.out_dir, &data)?;
            write!(out, "{}", store::orbit_summary_text(&data.atlas, &data.c2)).map_err(stdout_err)?;
        }
        Command::Graph { format } => {
            let data = load(cli)?;
            let text = match format {
                Format::Dot => graph::to_dot(&data.graph, &data.atlas),
                Format::Json => {
                    let labels = data.reference_labels();
                    graph::to_json(&data.graph, &data.atlas, labels.as_deref())
                }
            };
            write!(out, "{text}").map_err(stdout_err)?;
        }
        Command::Synth { matrix, id, time_order, verify } => {
            let from_file = match matrix {
                Some(path) => {
                    let m = read_matrix(path)?;
                    check_candidate(&m)?;
                    Some(m)
                }
                None => None,
            };
            let data = load(cli)?;
            let target = match (from_file, id) {
                (Some(m), _) => m,
                (None, Some(id)) => data.c2.element(*id)?.clone(),
                (None, None) => unreachable!("clap requires a matrix or --id"),
            };
            let synth = data.synthesizer()?;
            let circuit = synth.synthesize(&target)?;
            if *verify && circuit.evaluate() != target {
                return Err(Error::Verification("synthesized circuit does not reproduce the input".into()));
            }
            let circuit = if *time_order { circuit.time_order() } else { circuit };
            write!(out, "{circuit}").map_err(stdout_err)?;
        }
        Command::Lookup { matrix } => {
            let m = read_matrix(matrix)?;
            check_candidate(&m)?;
            let data = load(cli)?;
            let Some(id) = data.c2.contains(&m) else {
                writeln!(out, "in-c2 no").map_err(stdout_err)?;
                return Err(Error::NotClifford);
            };
            let orbit = data.atlas.orbit_of(id);
            writeln!(out, "in-c2 yes").map_err(stdout_err)?;
            writeln!(out, "element-id {id}").map_err(stdout_err)?;
            writeln!(out, "orbit {orbit}").map_err(stdout_err)?;
            if let Some(labels) = data.reference_labels() {
                writeln!(out, "paper-label {}", labels[orbit.index()]).map_err(stdout_err)?;
            }
            writeln!(out, "layer {}", data.atlas.layer(orbit).unwrap()).map_err(stdout_err)?;
        }
        Command::Verify => {
            let data = load(cli)?;
            let report = verify::run(&data);
            write!(out, "{report}").map_err(stdout_err)?;
            if !report.overall() {
                return Ok(EXIT_VERIFY_FAILED);
            }
        }
    }
    Ok(0)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) | Error::CorruptTable { .. } | Error::Io { .. } => EXIT_INPUT,
        Error::NotClifford | Error::NotUnitary | Error::Dimension(..) => EXIT_NOT_CLIFFORD,
        Error::InvalidId(_) => EXIT_USAGE,
        Error::Verification(_) | Error::ClosureCap(_) => EXIT_VERIFY_FAILED,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(&cli, &mut out) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let _ = out.flush();
            match &e {
                Error::Dimension(..) => eprintln!("error: expected a 4x4 matrix"),
                Error::Parse(ParseError::Entry(_)) => eprintln!("error: {e} (entry is not in Z[ω, 1/√2])"),
                _ => eprintln!("error: {e}"),
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
