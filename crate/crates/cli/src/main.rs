use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use a2kt::cktwo::{check_conditions, homology_complex, k_theory_a2, k_theory_general, CkError};
use a2kt::presentation::{
    builtin_text, parse_presentation, validate, PresentationError, ValidatedPresentation,
};
use a2kt::report::{digest, AnalysisDocument, GroupReport, KTheoryDocument, VERSION};
use a2kt::transition::{build_check, build_hat};
use a2kt::zmat::{read_matrix, write_matrix_with_comments, IntMatrix, ZmatError};
use clap::{Args, Parser, Subcommand, ValueEnum};

/// K-theory of boundary algebras of A2-tilde groups from triangle presentations.
#[derive(Parser)]
#[command(name = "a2kt", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a file is a valid triangle presentation.
    Validate { file: PathBuf },
    /// Compute K0, K1 and the order of the identity class.
    Ktheory {
        #[command(flatten)]
        input: Input,
        /// Print the machine report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Write one of the transition matrices in the sparse text format.
    Matrices {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum)]
        which: Which,
        /// Output file (standard output if absent).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the rank-2 Cuntz-Krieger conditions for a pair of {0,1} matrices
    /// and compute homology and K-groups when they commute.
    Analyze {
        #[arg(long)]
        m1: PathBuf,
        #[arg(long)]
        m2: PathBuf,
        /// Largest |p1|, |p2| searched for (H3).
        #[arg(long, default_value_t = 4)]
        h3_window: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Presentation file.
    file: Option<PathBuf>,
    /// Use a bundled presentation (B.2 or C.1).
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Hat1,
    Hat2,
    Check1,
    Check2,
}

/// Exit status and message.
struct Failure(u8, String);

const CONSISTENCY: u8 = 1;
const SYNTAX: u8 = 2;
const INVALID: u8 = 3;
const USAGE: u8 = 4;

impl From<PresentationError> for Failure {
    fn from(e: PresentationError) -> Self {
        let code = match e {
            PresentationError::Syntax { .. }
            | PresentationError::UnknownGenerator { .. }
            | PresentationError::WrongArity { .. } => SYNTAX,
            PresentationError::UnknownBuiltin(_) => USAGE,
            _ => INVALID,
        };
        Failure(code, e.to_string())
    }
}

impl From<CkError> for Failure {
    fn from(e: CkError) -> Self {
        match e {
            CkError::Presentation(p) => p.into(),
            CkError::DimensionMismatch(..) => Failure(USAGE, e.to_string()),
            CkError::NotZeroOne { .. } | CkError::NotCommuting(..) | CkError::Transition(_) => {
                Failure(INVALID, e.to_string())
            }
            _ => Failure(CONSISTENCY, e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(USAGE, format!("{}: {e}", path.display())))
}

/// Text, label and validated form of the requested presentation.
fn load(input: &Input) -> Result<(String, String, ValidatedPresentation), Failure> {
    let (text, label) = match (&input.file, &input.builtin) {
        (_, Some(name)) => (builtin_text(name)?.to_string(), name.clone()),
        (Some(path), None) => (read(path)?, path.display().to_string()),
        (None, None) => unreachable!("clap requires one input"),
    };
    let vp = validate(&parse_presentation(&text)?)?;
    Ok((text, label, vp))
}

/// Writes to standard output; a closed pipe is not an error.
fn emit(text: &str) -> Result<(), Failure> {
    match io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
            Err(Failure(USAGE, format!("standard output: {e}")))
        }
        _ => Ok(()),
    }
}

fn read_pair_matrix(path: &Path) -> Result<IntMatrix, Failure> {
    read_matrix(&read(path)?).map_err(|e| {
        let code = match e {
            ZmatError::Parse { .. } => SYNTAX,
            _ => USAGE,
        };
        Failure(code, format!("{}: {e}", path.display()))
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { file } => {
            let text = read(&file)?;
            let vp = validate(&parse_presentation(&text)?)?;
            emit(&format!(
                "valid, q={}, |Â|={}\n",
                vp.q(),
                vp.closure().len()
            ))?;
        }
        Command::Ktheory { input, json } => {
            let start = Instant::now();
            let (text, label, vp) = load(&input)?;
            let mut report = k_theory_a2(&vp)?;
            report.source = label;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let doc = KTheoryDocument::new(&report, &text, ms);
            if json {
                emit(&(doc.to_json() + "\n"))?;
            } else {
                emit(&doc.to_text())?;
            }
        }
        Command::Matrices {
            input,
            which,
            output,
        } => {
            let (text, label, vp) = load(&input)?;
            let (name, m) = match which {
                Which::Hat1 => ("hat1", build_hat(&vp).map_err(CkError::from)?.m1),
                Which::Hat2 => ("hat2", build_hat(&vp).map_err(CkError::from)?.m2),
                Which::Check1 => ("check1", build_check(&vp).map_err(CkError::from)?.m1),
                Which::Check2 => ("check2", build_check(&vp).map_err(CkError::from)?.m2),
            };
            let mut comments = vec![
                format!("{name} of {label}, a2kt {VERSION}"),
                format!("presentation sha256 {}", digest(&text)),
                "rows b, columns a; letters are the closure triples in lexicographic order:"
                    .to_string(),
            ];
            for (i, &t) in vp.closure().iter().enumerate() {
                comments.push(format!("{i} {}", vp.display_triple(t)));
            }
            let out = write_matrix_with_comments(&m, &comments);
            match output {
                Some(path) => fs::write(&path, out)
                    .map_err(|e| Failure(USAGE, format!("{}: {e}", path.display())))?,
                None => emit(&out)?,
            }
        }
        Command::Analyze {
            m1,
            m2,
            h3_window,
            json,
        } => {
            let start = Instant::now();
            let (t1, t2) = (read(&m1)?, read(&m2)?);
            let (a, b) = (read_pair_matrix(&m1)?, read_pair_matrix(&m2)?);
            let conditions = check_conditions(&a, &b, h3_window)?;
            let (homology, k, notice) = if conditions.h1a {
                let h = homology_complex(&a, &b)?;
                let k = k_theory_general(&a, &b)?;
                (Some(h), Some(k), None)
            } else {
                let (i, j) = conditions.h1a_witness.unwrap_or_default();
                let msg =
                    format!("homology skipped: M1 M2 != M2 M1 (first difference at ({i}, {j}))");
                eprintln!("{msg}");
                (None, None, Some(msg))
            };
            let doc = AnalysisDocument {
                version: VERSION.to_string(),
                input_digest: digest(&format!("{t1}\n{t2}")),
                size: a.rows(),
                conditions,
                homology,
                k0: k.as_ref().map(|(k0, _)| GroupReport::from(k0)),
                k1: k.as_ref().map(|(_, k1)| GroupReport::from(k1)),
                notice,
                timing_ms: start.elapsed().as_secs_f64() * 1e3,
            };
            if json {
                emit(&(doc.to_json() + "\n"))?;
            } else {
                emit(&doc.to_text())?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
