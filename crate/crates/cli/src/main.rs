use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use knotmod::acmoves::{
    ac_trivialize_search, kill_meridian, moves_to_text, ACPresentation, SearchBounds, SearchOutcome,
};
use knotmod::constructions::{
    parse_poly_line, realize_cyclic, realize_sum, realize_t_action, realize_t_minus_one, realize_trotter,
    KnotModuleSpec, RealizationResult,
};
use knotmod::covers::{compare_presentation, cover_homology};
use knotmod::enumerate::{todd_coxeter, EnumerationStatus};
use knotmod::fox::{alexander_matrix, alexander_polynomial};
use knotmod::intlinalg::IntMatrix;
use knotmod::laurent::LaurentPoly;
use knotmod::presentations::{Presentation, TietzeScript};
use knotmod::verify::{verify, VerifyOptions};
use knotmod::words::{Generator, Word};

const EXIT_OK: u8 = 0;
const EXIT_MISMATCH: u8 = 1;
const EXIT_INCONCLUSIVE: u8 = 2;
const EXIT_INPUT: u8 = 3;

const FORMATS: &str = "\
File formats:
  presentation  `gens a b ...` then one `rel <word>` or `rel <word> = <word>` per line;
                words are space-separated letters such as `a`, `b^-1`, `t^3`
  matrix        `<rows> <cols>` then one row of integers per line
  module        `module cyclic <poly>` | `module trotter <matrix-file>` |
                `module tminus1 <matrix-file>` | `module taction <matrix-file>` |
                `module sum <poly>;<poly>;...`   (matrix paths relative to the module file)
  polynomial    `poly <low> <c0> <c1> ...` or comma-separated `c0,c1,...` (low = 0)
  tietze script `intro <name> <word>` | `elim <name> <replacement word> <relator number>`
  move list     `inv i` | `conj i <gen> <±1>` | `mul i j` | `add <name> <word>` | `rm <name>`
  '#' starts a comment in every format.

Exit codes: 0 success, 1 verification mismatch, 2 inconclusive, 3 input error.";

#[derive(Parser, Debug)]
#[command(name = "knotmod", version, about = "Ribbon 2-knot group presentations realizing knot modules", after_help = FORMATS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a presentation whose knot module is the given one
    Realize(RealizeArgs),
    /// Alexander matrix and polynomial of a deficiency-one presentation
    Alex { pres: PathBuf },
    /// First homology of finite cyclic covers, optionally compared to a module
    Covers {
        pres: PathBuf,
        #[arg(short = 'N', value_delimiter = ',', required = true)]
        degrees: Vec<usize>,
        #[arg(long)]
        module: Option<PathBuf>,
        /// Largest cover degree accepted
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
    /// Todd-Coxeter coset enumeration
    Tc {
        pres: PathBuf,
        /// Subgroup generators separated by ';'
        #[arg(long, default_value = "")]
        subgroup: String,
        #[arg(long)]
        max_cosets: usize,
        /// Print the full coset table when enumeration closes
        #[arg(long)]
        table: bool,
    },
    /// Breadth-first Andrews-Curtis trivialization search
    AcSearch {
        pres: PathBuf,
        /// Add this generator as a relator first (deficiency-one input)
        #[arg(long)]
        kill: Option<String>,
        #[arg(long)]
        max_len: usize,
        #[arg(long)]
        max_depth: usize,
        #[arg(long)]
        emit_moves: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, default_value_t = 2_000_000)]
        max_states: usize,
    },
    /// Labelled oriented graph of a Wirtinger presentation
    Lot {
        pres: PathBuf,
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Expand labels to single letters first
        #[arg(long)]
        expand: bool,
    },
    /// Run a Tietze script
    Tietze {
        pres: PathBuf,
        #[arg(long)]
        script: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a presentation against a module
    Verify {
        pres: PathBuf,
        #[arg(long)]
        module: PathBuf,
        #[arg(short = 'N', value_delimiter = ',', default_value = "2,3,4")]
        degrees: Vec<usize>,
        #[arg(long, default_value = "t")]
        meridian: String,
        #[arg(long, default_value_t = 1000)]
        max_cosets: usize,
        #[arg(long, default_value_t = 12)]
        max_n: usize,
    },
}

#[derive(Args, Debug)]
struct RealizeArgs {
    #[command(subcommand)]
    kind: RealizeKind,
    /// Which presentation to write; defaults to the Wirtinger one when available
    #[arg(long, value_enum, global = true)]
    emit: Option<Emit>,
    /// Output file; with `--emit both` a stem for `<stem>.hnn.pres` and `<stem>.wirtinger.pres`
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Write the graph of the Wirtinger presentation as DOT
    #[arg(long, global = true)]
    dot: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum RealizeKind {
    /// Λ/(α)
    Cyclic {
        #[arg(long, conflicts_with = "poly", required_unless_present = "poly")]
        coeffs: Option<String>,
        #[arg(long)]
        poly: Option<String>,
    },
    /// Trotter matrix M with det M and det(M - I) nonzero
    Trotter {
        #[arg(short = 'm', long = "matrix")]
        matrix: PathBuf,
    },
    /// (t - 1)X = MX with det M and det(I + M) equal to ±1
    #[command(name = "tminus1", alias = "lemma4")]
    TMinusOne {
        #[arg(short = 'm', long = "matrix")]
        matrix: PathBuf,
    },
    /// tX = TX with T and T - I unimodular
    #[command(name = "taction", alias = "lemma3")]
    TAction {
        #[arg(short = 'm', long = "matrix")]
        matrix: PathBuf,
    },
    /// Direct sum of cyclic modules
    Sum {
        /// Polynomials separated by ';'
        #[arg(long)]
        summands: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Hnn,
    Wirtinger,
    Both,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn load_presentation(path: &Path) -> Result<Presentation> {
    Presentation::parse(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_matrix(path: &Path) -> Result<IntMatrix> {
    IntMatrix::parse(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn load_module(path: &Path) -> Result<KnotModuleSpec> {
    KnotModuleSpec::load(path).with_context(|| format!("in {}", path.display()))
}

fn generator(name: &str) -> Result<Generator> {
    Generator::new(name).map_err(|e| anyhow!("{e}"))
}

fn check_degrees(ns: &[usize], max_n: usize) -> Result<()> {
    if ns.is_empty() {
        bail!("no cover degrees given");
    }
    if let Some(n) = ns.iter().find(|n| **n < 2 || **n > max_n) {
        bail!("cover degree {n} outside 2..={max_n}");
    }
    Ok(())
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Realize(args) => realize(args),
        Command::Alex { pres } => {
            let p = load_presentation(&pres)?;
            let matrix = alexander_matrix(&p)?;
            let poly = alexander_polynomial(&p)?;
            print!("# Alexander matrix\n{}# Alexander polynomial\n{}\n", matrix.to_text(), poly.to_text());
            Ok(EXIT_OK)
        }
        Command::Covers { pres, degrees, module, max_n } => {
            check_degrees(&degrees, max_n)?;
            let p = load_presentation(&pres)?;
            match module {
                None => {
                    for &n in &degrees {
                        println!("N={n} {}", cover_homology(&p, n)?);
                    }
                    Ok(EXIT_OK)
                }
                Some(m) => {
                    let spec = load_module(&m)?;
                    let reports = compare_presentation(&p, &spec, &degrees)?;
                    for r in &reports {
                        if r.matches {
                            println!("N={} MATCH {}", r.n, r.from_presentation);
                        } else {
                            println!(
                                "N={} MISMATCH presentation {} module {}",
                                r.n, r.from_presentation, r.from_module
                            );
                        }
                    }
                    Ok(if reports.iter().all(|r| r.matches) { EXIT_OK } else { EXIT_MISMATCH })
                }
            }
        }
        Command::Tc { pres, subgroup, max_cosets, table } => {
            let p = load_presentation(&pres)?;
            let words = subgroup
                .split(';')
                .filter(|s| !s.trim().is_empty())
                .map(|s| Word::parse(s).map_err(|e| anyhow!("subgroup word `{}`: {e}", s.trim())))
                .collect::<Result<Vec<_>>>()?;
            let result = todd_coxeter(&p, &words, max_cosets)?;
            if table {
                print!("{}", result.to_text());
            } else {
                println!("{}", result.status);
            }
            Ok(match result.status {
                EnumerationStatus::Closed(_) => EXIT_OK,
                EnumerationStatus::Overflow(_) => EXIT_INCONCLUSIVE,
            })
        }
        Command::AcSearch { pres, kill, max_len, max_depth, emit_moves, workers, max_states } => {
            if max_len == 0 || max_depth == 0 {
                bail!("search bounds must be positive");
            }
            let p = load_presentation(&pres)?;
            let start = match kill {
                Some(g) => kill_meridian(&p, &generator(&g)?)?,
                None => ACPresentation::from_presentation(&p)?,
            };
            let bounds = SearchBounds { max_states, workers, ..SearchBounds::new(max_len, max_depth) };
            match ac_trivialize_search(&start, &bounds) {
                SearchOutcome::Found { moves, depth } => {
                    println!("FOUND depth {depth} moves {}", moves.len());
                    match emit_moves {
                        Some(path) => write(&path, &moves_to_text(&moves))?,
                        None => print!("{}", moves_to_text(&moves)),
                    }
                    Ok(EXIT_OK)
                }
                SearchOutcome::Exhausted => {
                    println!("EXHAUSTED");
                    Ok(EXIT_INCONCLUSIVE)
                }
                SearchOutcome::Budget => {
                    println!("BUDGET");
                    Ok(EXIT_INCONCLUSIVE)
                }
            }
        }
        Command::Lot { pres, dot, expand } => {
            let mut p = load_presentation(&pres)?;
            if expand {
                p = p.expand_length1()?;
            }
            let log = match p.is_wirtinger() {
                Ok(log) => log,
                Err(e) => {
                    eprintln!("not a Wirtinger presentation: {e}");
                    return Ok(EXIT_MISMATCH);
                }
            };
            println!("vertices {}", log.vertices.len());
            println!("edges {}", log.edges.len());
            println!("tree {}", if log.is_tree { "yes" } else { "no" });
            println!("max-label {}", log.max_label_len());
            if let Some(path) = dot {
                write(&path, &log.dot_export())?;
            }
            Ok(EXIT_OK)
        }
        Command::Tietze { pres, script, out } => {
            let p = load_presentation(&pres)?;
            let s = TietzeScript::parse(&read(&script)?).with_context(|| format!("in {}", script.display()))?;
            let q = s.run(&p)?;
            emit_text(out.as_deref(), &q.to_text())?;
            Ok(EXIT_OK)
        }
        Command::Verify { pres, module, degrees, meridian, max_cosets, max_n } => {
            check_degrees(&degrees, max_n)?;
            let p = load_presentation(&pres)?;
            let spec = load_module(&module)?;
            let opts = VerifyOptions { cover_degrees: degrees, meridian: generator(&meridian)?, max_cosets };
            let report = verify(&p, &spec, &opts)?;
            print!("{}", report.to_table());
            Ok(report.exit_code() as u8)
        }
    }
}

fn emit_text(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => write(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn realize(args: RealizeArgs) -> Result<u8> {
    let result = match &args.kind {
        RealizeKind::Cyclic { coeffs, poly } => {
            let alpha = match (coeffs, poly) {
                (Some(c), _) => LaurentPoly::parse_coeffs(c)?,
                (None, Some(p)) => LaurentPoly::parse_text(p)?,
                (None, None) => bail!("give --coeffs or --poly"),
            };
            realize_cyclic(&alpha)?
        }
        RealizeKind::Trotter { matrix } => realize_trotter(&load_matrix(matrix)?)?,
        RealizeKind::TMinusOne { matrix } => realize_t_minus_one(&load_matrix(matrix)?)?,
        RealizeKind::TAction { matrix } => realize_t_action(&load_matrix(matrix)?)?,
        RealizeKind::Sum { summands } => {
            let polys = summands.split(';').map(|s| parse_poly_line(s.trim())).collect::<knotmod::Result<Vec<_>>>()?;
            realize_sum(&polys)?
        }
    };
    report_notes(&result);

    let emit = args.emit.unwrap_or(if result.wirtinger_presentation.is_some() { Emit::Wirtinger } else { Emit::Hnn });
    let wirtinger = || {
        result
            .wirtinger_presentation
            .as_ref()
            .ok_or_else(|| anyhow!("this construction has no Wirtinger form; use --emit hnn"))
    };
    match emit {
        Emit::Hnn => emit_text(args.out.as_deref(), &result.primary_presentation.to_text())?,
        Emit::Wirtinger => emit_text(args.out.as_deref(), &wirtinger()?.to_text())?,
        Emit::Both => {
            let stem = args.out.as_ref().ok_or_else(|| anyhow!("--emit both needs --out <stem>"))?;
            let w = wirtinger()?;
            write(&with_suffix(stem, ".hnn.pres"), &result.primary_presentation.to_text())?;
            write(&with_suffix(stem, ".wirtinger.pres"), &w.to_text())?;
        }
    }
    if let Some(path) = &args.dot {
        let log = wirtinger()?.is_wirtinger().map_err(|e| anyhow!("{e}"))?;
        write(path, &log.dot_export())?;
    }
    Ok(EXIT_OK)
}

fn with_suffix(stem: &Path, suffix: &str) -> PathBuf {
    let mut s = stem.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn report_notes(result: &RealizationResult) {
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    eprintln!("module: {}", result.module_spec);
    eprintln!("meridian: {}", result.meridian);
    eprintln!(
        "finitely generated commutator subgroup: {}; ascending HNN: {}; Wirtinger form: {}",
        yes_no(result.notes.fg_commutator),
        yes_no(result.notes.is_ascending_hnn),
        yes_no(result.notes.wirtinger_available)
    );
}
