use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use corelabel::canonical::{canonical_join_complex_with, CoverLabels, OrdinalLabels};
use corelabel::congruence::{congruence_uniformity, Uniformity};
use corelabel::verify::{self, Summary};
use corelabel::{export, CoreLabelData, DoublingScript, Exec, Lattice};

#[derive(Parser)]
#[command(name = "corelabel", version, about = "Core label orders and canonical join complexes of finite lattices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report lattice properties and run every characterization check.
    Check {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the core label order as "poset v1" with a label block.
    Clo {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the canonical join complex, one face per line.
    Canonical {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check all characterizations on every small lattice or on random
    /// doubling scripts.
    Verify {
        #[arg(long, value_enum, default_value_t = Mode::Census)]
        mode: Mode,
        /// Largest lattice size in census mode.
        #[arg(long, default_value_t = 7)]
        nmax: usize,
        /// Scripts of each kind in scripts mode.
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run on one thread.
        #[arg(long)]
        sequential: bool,
        /// Print only failing reports and the summary.
        #[arg(long)]
        quiet: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graphviz rendering of the Hasse diagram, core label order or complex.
    Dot {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = What::Hasse)]
        what: What,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Census,
    Scripts,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Hasse,
    Clo,
    Complex,
}

/// Ok / some check failed / bad input.
enum Failure {
    Check,
    Input(String),
}

const CENSUS_LIMIT: usize = 8;
const SCRIPT_COUNT_LIMIT: usize = 1_000_000;
const SCRIPT_LENGTH_LIMIT: usize = 10;

fn load(path: &Path) -> Result<Lattice, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    let lattice = if first.split_whitespace().next() == Some("poset") {
        Lattice::parse(&text).map_err(|e| e.to_string())
    } else {
        DoublingScript::parse(&text)
            .and_then(|s| s.build())
            .map(|o| o.lattice)
            .map_err(|e| e.to_string())
    };
    lattice.map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Input(e.to_string()))
        }
    }
}

fn require_uniform(l: &Lattice) -> Result<CoverLabels, Failure> {
    match congruence_uniformity(l) {
        Uniformity::Uniform => CoverLabels::gamma(l).map_err(|e| Failure::Input(e.to_string())),
        Uniformity::NotUniform(f) => Err(Failure::Input(format!("not congruence uniform: {f}"))),
    }
}

fn cmd_check(file: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let l = load(file)?;
    let report = verify::report(file.display().to_string(), &l);
    emit(out, &report.to_string())?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

/// Whether the core label order is isomorphic to the face poset, on stderr.
fn note_isomorphism(l: &Lattice, labels: &CoverLabels) -> Result<(), Failure> {
    let data = CoreLabelData::with_labels(l, labels, Exec::Sequential);
    let order = data.order().map_err(|e| Failure::Input(e.to_string()))?;
    let complex = canonical_join_complex_with(l, labels).map_err(|e| Failure::Input(e.to_string()))?;
    let iso = order.poset.is_isomorphic(&complex.face_poset().0).is_some();
    let fv: Vec<String> = complex.f_vector().iter().map(usize::to_string).collect();
    eprintln!(
        "distributive={} f-vector=({}) clo-isomorphic-to-face-poset={iso}",
        l.is_distributive_law(),
        fv.join(",")
    );
    Ok(())
}

fn cmd_clo(file: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let l = load(file)?;
    let labels = require_uniform(&l)?;
    let ord = OrdinalLabels::new(&l);
    let order = CoreLabelData::with_labels(&l, &labels, Exec::Sequential)
        .order()
        .map_err(|e| Failure::Input(e.to_string()))?;
    emit(out, &order.to_text(|j| ord.of(j)))?;
    note_isomorphism(&l, &labels)
}

fn cmd_canonical(file: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let l = load(file)?;
    let labels = require_uniform(&l)?;
    let ord = OrdinalLabels::new(&l);
    let complex = canonical_join_complex_with(&l, &labels).map_err(|e| Failure::Input(e.to_string()))?;
    emit(out, &complex.to_text(|j| ord.of(j).to_string()))?;
    note_isomorphism(&l, &labels)
}

fn cmd_dot(file: &Path, what: What, out: Option<&Path>) -> Result<(), Failure> {
    let l = load(file)?;
    let text = match what {
        What::Hasse => {
            let labels = congruence_uniformity(&l).is_uniform().then(|| CoverLabels::gamma(&l)).transpose();
            let labels = labels.map_err(|e| Failure::Input(e.to_string()))?;
            export::hasse_dot(&l, labels.as_ref())
        }
        What::Clo => {
            let labels = require_uniform(&l)?;
            let order = CoreLabelData::with_labels(&l, &labels, Exec::Sequential)
                .order()
                .map_err(|e| Failure::Input(e.to_string()))?;
            export::clo_dot(&l, &order)
        }
        What::Complex => {
            let labels = require_uniform(&l)?;
            let complex = canonical_join_complex_with(&l, &labels).map_err(|e| Failure::Input(e.to_string()))?;
            export::complex_dot(&l, &complex)
        }
    };
    emit(out, &text)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    mode: Mode,
    nmax: usize,
    count: usize,
    max_len: usize,
    seed: u64,
    exec: Exec,
    quiet: bool,
    out: Option<&Path>,
) -> Result<(), Failure> {
    let reports = match mode {
        Mode::Census => {
            if nmax > CENSUS_LIMIT {
                return Err(Failure::Input(format!("--nmax is limited to {CENSUS_LIMIT}")));
            }
            verify::verify_census(nmax, exec).map_err(|e| Failure::Input(e.to_string()))?
        }
        Mode::Scripts => {
            if count > SCRIPT_COUNT_LIMIT || max_len > SCRIPT_LENGTH_LIMIT {
                return Err(Failure::Input(format!(
                    "--count is limited to {SCRIPT_COUNT_LIMIT} and --max-len to {SCRIPT_LENGTH_LIMIT}"
                )));
            }
            verify::verify_scripts(count, max_len, seed, exec)
        }
    };
    let summary = Summary::of(&reports);
    let text = if quiet {
        let failing: Vec<_> = reports.iter().filter(|r| !r.passed()).cloned().collect();
        let mut s: String = failing.iter().map(ToString::to_string).collect();
        s.push_str(&format!("{summary}\n"));
        s
    } else {
        verify::render(&reports)
    };
    emit(out, &text)?;
    if summary.fail == 0 {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { file, out } => cmd_check(&file, out.as_deref()),
        Command::Clo { file, out } => cmd_clo(&file, out.as_deref()),
        Command::Canonical { file, out } => cmd_canonical(&file, out.as_deref()),
        Command::Dot { file, what, out } => cmd_dot(&file, what, out.as_deref()),
        Command::Verify {
            mode,
            nmax,
            count,
            max_len,
            seed,
            sequential,
            quiet,
            out,
        } => {
            let exec = if sequential { Exec::Sequential } else { Exec::Parallel };
            cmd_verify(mode, nmax, count, max_len, seed, exec, quiet, out.as_deref())
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
