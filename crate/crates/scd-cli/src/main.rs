//! Command line driver: generate, verify, search, tabulate, and convert
//! chain decompositions of the n-cube and the necklace poset.
//!
//! Exit codes: 0 success / all checks pass; 1 a check failed; 2 the
//! search formula is unsatisfiable; 3 the search hit its iteration cap;
//! 4 usage, I/O, or parse errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use scd::sat::{search_loop, SearchConfig, SearchMode, SearchOutcome, SolverBackend};
use scd::{
    chain_size_profile, check_almost_orthogonal_with_cap, check_edge_disjoint_with_cap, check_good,
    check_orthogonal_with_cap, check_scd_with_cap, check_unimodal, count_table, gks_scd,
    jordan_scd, necklace_chain_profile, standard_scd, to_orthogonal, try_unroll_family, unroll_scd,
    CertificateFile, ChainDecomposition, FamilyUnroll, NecklaceScd, UnrollMode, VerificationReport,
    DEFAULT_WITNESS_CAP,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "scd",
    about = "Symmetric chain decompositions of the n-cube",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a decomposition and write it as a certificate file.
    Generate(GenerateArgs),
    /// Check properties of certificate files.
    Verify(VerifyArgs),
    /// Search a family of decompositions with a SAT solver.
    Search(SearchArgs),
    /// Print width, bound, and chain-profile tables.
    Table(TableArgs),
    /// Transformations between certificate files.
    Convert(ConvertArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Standard,
    Gks,
    Jordan,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    construction: Construction,
    #[arg(short)]
    n: u32,
    /// Unroll a necklace decomposition to the cube.
    #[arg(long)]
    unroll: bool,
    /// Also emit the complement decomposition.
    #[arg(long)]
    complement: bool,
    /// Output path (stdout when absent).
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Check {
    Scd,
    Orthogonal,
    AlmostOrthogonal,
    EdgeDisjoint,
    Good,
    Unimodal,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    check: Check,
    /// Certificate files; their decompositions are pooled.
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Report every witness instead of the first 32.
    #[arg(long)]
    all_witnesses: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    /// Edge-disjoint SCDs.
    Edge,
    /// Good almost-orthogonal SCDs.
    Ortho,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(short)]
    n: u32,
    #[arg(short)]
    s: usize,
    #[arg(long, value_enum)]
    mode: Mode,
    /// Pin a decomposition: INDEX:gks, INDEX:jordan, or INDEX:@FILE
    /// (1-based index, necklace certificate).
    #[arg(long)]
    pin: Vec<String>,
    /// Couple two decompositions as complements: LEADER:FOLLOWER
    /// (1-based).
    #[arg(long)]
    couple: Vec<String>,
    /// Start from a fully free formula instead of the default pinned and
    /// coupled configuration.
    #[arg(long)]
    raw: bool,
    /// External DIMACS solver command (defaults to SCD_SOLVER, then the
    /// built-in solver).
    #[arg(long)]
    solver: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    /// Disable the diamond clauses.
    #[arg(long)]
    no_diamonds: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, default_value_t = 25)]
    max: u32,
}

#[derive(Args)]
struct ConvertArgs {
    /// Move the empty set out of the longest chains to make an
    /// almost-orthogonal family orthogonal.
    #[arg(long)]
    to_orthogonal: bool,
    file: PathBuf,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Generate(args) => generate(args),
        Command::Verify(args) => verify(args),
        Command::Search(args) => search(args),
        Command::Table(args) => table(args),
        Command::Convert(args) => convert(args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(4)
        }
    }
}

fn write_output(path: &Option<PathBuf>, content: &str) -> Result<(), scd::Error> {
    match path {
        Some(p) => std::fs::write(p, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn generate(args: GenerateArgs) -> Result<ExitCode, scd::Error> {
    let n = args.n;
    let file = match args.construction {
        Construction::Standard => {
            if args.unroll {
                return Err(scd::Error::Precondition(
                    "the standard decomposition already lives in the cube".into(),
                ));
            }
            let d = standard_scd(n);
            let mut family = vec![d];
            if args.complement {
                let c = family[0].complement();
                family.push(c);
            }
            CertificateFile::from_cube(&family)?
        }
        Construction::Gks | Construction::Jordan => {
            let scd = match args.construction {
                Construction::Gks => gks_scd(n)?,
                _ => jordan_scd(n)?,
            };
            let mut family = vec![scd];
            if args.complement {
                let c = family[0].complement();
                family.push(c);
            }
            if args.unroll {
                let unrolled = unroll_family(&family)?;
                CertificateFile::from_cube(&unrolled)?
            } else {
                CertificateFile::from_necklace(&family)?
            }
        }
    };
    write_output(&args.output, &file.to_string())?;
    Ok(ExitCode::SUCCESS)
}

/// Unroll a family coherently: a complement pair becomes an
/// almost-orthogonal pair, a single decomposition unrolls directly.
fn unroll_family(family: &[NecklaceScd]) -> Result<Vec<ChainDecomposition>, scd::Error> {
    if family.len() == 1 {
        return Ok(vec![unroll_scd(&family[0])?]);
    }
    match try_unroll_family(family, UnrollMode::AlmostOrthogonal)? {
        FamilyUnroll::Unrolled(out) => Ok(out),
        FamilyUnroll::Conflict(pair) => Err(scd::Error::Precondition(format!(
            "chains {}:{} and {}:{} cannot be unrolled together",
            pair.scd_a + 1,
            pair.chain_a + 1,
            pair.scd_b + 1,
            pair.chain_b + 1
        ))),
    }
}

fn load_files(files: &[PathBuf]) -> Result<CertificateFile, scd::Error> {
    let mut merged: Option<CertificateFile> = None;
    for path in files {
        let text = std::fs::read_to_string(path)?;
        let parsed = CertificateFile::parse(&text)?;
        match merged.as_mut() {
            None => merged = Some(parsed),
            Some(acc) => {
                if acc.n != parsed.n {
                    return Err(scd::Error::DimensionMismatch {
                        expected: acc.n,
                        got: parsed.n,
                    });
                }
                if acc.kind != parsed.kind {
                    return Err(scd::Error::Precondition(
                        "certificates mix cube and necklace kinds".into(),
                    ));
                }
                acc.decompositions.extend(parsed.decompositions);
            }
        }
    }
    merged.ok_or_else(|| scd::Error::Precondition("no input files".into()))
}

fn report_line(label: &str, report: &VerificationReport) -> bool {
    if report.pass {
        println!("PASS {label}");
    } else {
        let witness = &report.witnesses[0];
        println!("FAIL {label} witness={witness}");
        for extra in &report.witnesses[1..] {
            println!("     {label} witness={extra}");
        }
        if report.truncated {
            println!("     {label} (witness list truncated)");
        }
    }
    report.pass
}

fn verify(args: VerifyArgs) -> Result<ExitCode, scd::Error> {
    let cap = if args.all_witnesses {
        None
    } else {
        Some(DEFAULT_WITNESS_CAP)
    };
    let merged = load_files(&args.files)?;
    let mut all_pass = true;

    match args.check {
        Check::Unimodal => {
            let scds = merged.necklace_scds()?;
            for (i, scd) in scds.iter().enumerate() {
                all_pass &= report_line(&format!("unimodal[{}]", i + 1), &check_unimodal(scd));
            }
        }
        Check::Scd => {
            let family = merged.cube_decompositions()?;
            for (i, d) in family.iter().enumerate() {
                all_pass &= report_line(&format!("scd[{}]", i + 1), &check_scd_with_cap(d, cap));
            }
        }
        Check::Orthogonal | Check::AlmostOrthogonal => {
            let family = merged.cube_decompositions()?;
            if family.len() < 2 {
                return Err(scd::Error::Precondition(
                    "pairwise checks need at least two decompositions".into(),
                ));
            }
            if matches!(args.check, Check::AlmostOrthogonal) {
                for (i, d) in family.iter().enumerate() {
                    all_pass &=
                        report_line(&format!("scd[{}]", i + 1), &check_scd_with_cap(d, cap));
                }
            }
            for a in 0..family.len() {
                for b in a + 1..family.len() {
                    let (label, report) = match args.check {
                        Check::Orthogonal => (
                            format!("orthogonal[{},{}]", a + 1, b + 1),
                            check_orthogonal_with_cap(&family[a], &family[b], cap),
                        ),
                        _ => (
                            format!("almost-orthogonal[{},{}]", a + 1, b + 1),
                            check_almost_orthogonal_with_cap(&family[a], &family[b], cap),
                        ),
                    };
                    all_pass &= report_line(&label, &report);
                }
            }
        }
        Check::EdgeDisjoint => {
            let family = merged.cube_decompositions()?;
            for (i, d) in family.iter().enumerate() {
                all_pass &= report_line(&format!("scd[{}]", i + 1), &check_scd_with_cap(d, cap));
            }
            all_pass &= report_line("edge-disjoint", &check_edge_disjoint_with_cap(&family, cap));
        }
        Check::Good => {
            let family = merged.cube_decompositions()?;
            for (i, d) in family.iter().enumerate() {
                all_pass &= report_line(&format!("scd[{}]", i + 1), &check_scd_with_cap(d, cap));
            }
            for a in 0..family.len() {
                for b in a + 1..family.len() {
                    all_pass &= report_line(
                        &format!("almost-orthogonal[{},{}]", a + 1, b + 1),
                        &check_almost_orthogonal_with_cap(&family[a], &family[b], cap),
                    );
                }
            }
            let outcome = check_good(&family)?;
            all_pass &= report_line("good", &outcome.report);
            for shape in &outcome.components {
                println!("     component: {shape}");
            }
        }
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn parse_pin(spec: &str, n: u32) -> Result<(usize, NecklaceScd), scd::Error> {
    let (idx, what) = spec.split_once(':').ok_or_else(|| {
        scd::Error::Precondition(format!("pin {spec:?} is not INDEX:CONSTRUCTION"))
    })?;
    let idx: usize = idx
        .parse()
        .map_err(|_| scd::Error::Precondition(format!("bad pin index in {spec:?}")))?;
    if idx == 0 {
        return Err(scd::Error::Precondition("pin indices are 1-based".into()));
    }
    let scd = match what {
        "gks" => gks_scd(n)?,
        "jordan" => jordan_scd(n)?,
        file => {
            let path = file.strip_prefix('@').unwrap_or(file);
            let text = std::fs::read_to_string(path)?;
            let parsed = CertificateFile::parse(&text)?;
            if parsed.n != n {
                return Err(scd::Error::DimensionMismatch {
                    expected: n,
                    got: parsed.n,
                });
            }
            parsed.necklace_scds()?.into_iter().next().ok_or_else(|| {
                scd::Error::Precondition("pin certificate holds no decomposition".into())
            })?
        }
    };
    Ok((idx - 1, scd))
}

fn search(args: SearchArgs) -> Result<ExitCode, scd::Error> {
    let mode = match args.mode {
        Mode::Edge => SearchMode::EdgeDisjoint,
        Mode::Ortho => SearchMode::AlmostOrthogonalGood,
    };
    let mut cfg = if args.raw || !args.pin.is_empty() || !args.couple.is_empty() {
        SearchConfig::new(args.n, args.s, mode)
    } else {
        SearchConfig::recommended(args.n, args.s, mode)?
    };
    for spec in &args.pin {
        cfg.fixed.push(parse_pin(spec, args.n)?);
    }
    for spec in &args.couple {
        let (a, b) = spec.split_once(':').ok_or_else(|| {
            scd::Error::Precondition(format!("couple {spec:?} is not LEADER:FOLLOWER"))
        })?;
        let a: usize = a
            .parse()
            .map_err(|_| scd::Error::Precondition(format!("bad couple index in {spec:?}")))?;
        let b: usize = b
            .parse()
            .map_err(|_| scd::Error::Precondition(format!("bad couple index in {spec:?}")))?;
        if a == 0 || b == 0 {
            return Err(scd::Error::Precondition(
                "couple indices are 1-based".into(),
            ));
        }
        cfg.coupled.push((a - 1, b - 1));
    }
    cfg.solver = match args.solver.or_else(|| std::env::var("SCD_SOLVER").ok()) {
        Some(cmd) => SolverBackend::Command(cmd),
        None => SolverBackend::Internal,
    };
    cfg.max_iterations = args.max_iter;
    if args.no_diamonds {
        cfg.diamonds = false;
    }

    match search_loop(&cfg)? {
        SearchOutcome::Found(family) => {
            let file = CertificateFile::from_cube(&family)?;
            write_output(&args.output, &file.to_string())?;
            eprintln!("found {} decompositions", family.len());
            Ok(ExitCode::SUCCESS)
        }
        SearchOutcome::Unsat => {
            eprintln!("unsatisfiable");
            Ok(ExitCode::from(2))
        }
        SearchOutcome::Inconclusive { iterations } => {
            eprintln!("inconclusive after {iterations} iterations");
            Ok(ExitCode::from(3))
        }
    }
}

fn table(args: TableArgs) -> Result<ExitCode, scd::Error> {
    let max = args.max.min(32);
    let mut header = String::from("n:  ");
    let mut widths = String::from("a_n:");
    let mut bounds = String::from("b_n:");
    let mut chains = String::from("c_n:");
    for n in 1..=max {
        let t = count_table(n)?;
        let (c_n, _) = necklace_chain_profile(n)?;
        header.push_str(&format!(" {n}"));
        widths.push_str(&format!(" {}", t.width));
        bounds.push_str(&format!(" {}", t.bound));
        chains.push_str(&format!(" {c_n}"));
    }
    println!("{header}");
    println!("{widths}");
    println!("{bounds}");
    println!("{chains}");
    for n in 1..=max {
        let profile = chain_size_profile(n)?;
        let parts: Vec<String> = profile
            .iter()
            .map(|(size, count)| format!("{size}x{count}"))
            .collect();
        println!("profile n={n}: {}", parts.join(" "));
    }
    Ok(ExitCode::SUCCESS)
}

fn convert(args: ConvertArgs) -> Result<ExitCode, scd::Error> {
    if !args.to_orthogonal {
        return Err(scd::Error::Precondition(
            "nothing to do: pass --to-orthogonal".into(),
        ));
    }
    let text = std::fs::read_to_string(&args.file)?;
    let parsed = CertificateFile::parse(&text)?;
    let family = parsed.cube_decompositions()?;
    let out = to_orthogonal(&family)?;
    let file = CertificateFile::from_cube(&out)?;
    write_output(&args.output, &file.to_string())?;
    Ok(ExitCode::SUCCESS)
}
