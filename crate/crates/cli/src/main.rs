use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use vkh::bracket::JonesResult;
use vkh::code::corpus::{load_corpus, parse_corpus};
use vkh::homology::{homology, thickness};
use vkh::khovanov::convention::Defect;
use vkh::khovanov::{build_complex_with, BuildOptions, Convention};
use vkh::verify::{random_batch, verify_all, VerifyOptions, VerifyReport};
use vkh::{Atom, Error, Ring, VirtualLinkDiagram, DEFAULT_CROSSING_CAP};

/// Stdout writes; a closed pipe ends the process quietly.
macro_rules! out {
    ($($arg:tt)*) => {
        emit(format_args!($($arg)*))
    };
}

macro_rules! outln {
    ($($arg:tt)*) => {
        emit(format_args!("{}\n", format_args!($($arg)*)))
    };
}

fn emit(args: std::fmt::Arguments) {
    if let Err(e) = std::io::stdout().lock().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}

#[derive(Parser)]
#[command(name = "kh", version, about = "Khovanov homology, Jones polynomial and atoms of virtual links")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,

    /// Crossing cap for cube work; for `verify --random`, the largest random diagram
    #[arg(long, global = true)]
    max_crossings: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Var {
    Q,
    A,
}

#[derive(Clone, Copy, ValueEnum)]
enum DefectArg {
    FlipNegative,
    FirstAtNe,
}

#[derive(Subcommand)]
enum Command {
    /// Kauffman bracket, normalized Jones polynomial and X(a)
    Jones {
        /// Gauss code, or a corpus file
        input: String,
        #[arg(long, value_enum, default_value_t = Var::Q)]
        var: Var,
    },
    /// Homology table and thickness
    Homology {
        input: String,
        /// z, q, z2, gfp:<p> or frob:<h>,<t>
        #[arg(long, default_value = "z")]
        ring: Ring,
    },
    /// Atom of the diagram
    Atom { input: String },
    /// Run the structural checks on a corpus or on random diagrams
    Verify {
        /// Gauss codes to check
        codes: Vec<String>,
        /// Corpus file or directory of .txt files
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Number of random diagrams
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Skip the seeded move checks
        #[arg(long)]
        no_moves: bool,
        #[arg(long, value_enum, hide = true)]
        defect: Option<DefectArg>,
    },
    /// Bases and differentials of the complex
    CubeDump {
        input: String,
        #[arg(long, default_value = "z")]
        ring: Ring,
    },
}

enum Failure {
    Usage(String),
    Parse(String),
    Verification(String),
    Cap(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::EmptyDiagram => Failure::Parse(e.to_string()),
            Error::StateSpaceTooLarge { .. } => Failure::Cap(e.to_string()),
            Error::AnticommutativityViolation { .. } => {
                Failure::Verification(format!("{e}\nplease report the diagram together with the convention table in use"))
            }
            _ => Failure::Verification(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

/// An inline code, or every entry of a corpus file.
fn inputs(input: &str) -> Result<Vec<(String, VirtualLinkDiagram)>, Failure> {
    let entries = if Path::new(input).is_file() {
        load_corpus(Path::new(input)).map_err(|e| Failure::Usage(format!("{input}: {e}")))?
    } else {
        parse_corpus(input)
    };
    if entries.is_empty() {
        return Err(Failure::Parse("no diagram in input".into()));
    }
    entries
        .into_iter()
        .map(|e| match e.diagram {
            Ok(d) => Ok((e.code, d)),
            Err(err) => Err(Failure::Parse(format!("{}: {err}", e.code))),
        })
        .collect()
}

fn emit_json(values: Vec<Value>) {
    let v = if values.len() == 1 { values.into_iter().next().unwrap() } else { Value::Array(values) };
    outln!("{}", serde_json::to_string_pretty(&v).expect("values serialize"));
}

fn jones(cli: &Cli, input: &str, var: Var) -> Outcome {
    let cap = cli.max_crossings.unwrap_or(DEFAULT_CROSSING_CAP);
    let mut out = vec![];
    for (code, d) in inputs(input)? {
        let r = JonesResult::compute(&d, cap)?;
        if cli.format == Format::Json {
            let mut v = serde_json::to_value(&r).expect("serializable");
            v["code"] = json!(code);
            out.push(v);
            continue;
        }
        let show = |p: &Option<vkh::LaurentPolynomial>, var: &str| p.as_ref().map_or("-".to_string(), |p| p.to_text(var));
        outln!("code     {code}");
        match var {
            Var::Q => {
                outln!("bracket  {}", r.bracket.to_text("q"));
                outln!("J-hat    {}", r.jones_hat.to_text("q"));
                outln!("J        {}", show(&r.jones, "q"));
            }
            Var::A => outln!("X        {}", show(&r.kauffman_x, "a")),
        }
        outln!("writhe   {} (n+ {}, n- {})", r.writhe, r.n_plus, r.n_minus);
    }
    if cli.format == Format::Json {
        emit_json(out);
    }
    Ok(())
}

fn homology_cmd(cli: &Cli, input: &str, ring: Ring) -> Outcome {
    let cap = cli.max_crossings.unwrap_or(DEFAULT_CROSSING_CAP);
    let mut out = vec![];
    for (code, d) in inputs(input)? {
        let opts = BuildOptions { frobenius: ring.frobenius(), cap, ..BuildOptions::default() };
        let mut c = build_complex_with(&d, &opts)?;
        c.ring = ring;
        let table = homology(&c)?;
        let report = if c.quantum_graded && d.crossing_count() > 0 { Some(thickness(&table, &Atom::build(&d)?)) } else { None };
        if cli.format == Format::Json {
            let mut v = serde_json::to_value(&table).expect("serializable");
            v["code"] = json!(code);
            v["thickness"] = serde_json::to_value(&report).expect("serializable");
            out.push(v);
        } else {
            outln!("code {code}");
            out!("{table}");
            if let Some(r) = report {
                outln!("{r}");
            }
        }
    }
    if cli.format == Format::Json {
        emit_json(out);
    }
    Ok(())
}

fn atom_cmd(cli: &Cli, input: &str) -> Outcome {
    let mut out = vec![];
    for (code, d) in inputs(input)? {
        let a = Atom::build(&d)?;
        if cli.format == Format::Json {
            let mut v = serde_json::to_value(a.to_json()).expect("serializable");
            v["code"] = json!(code);
            out.push(v);
            continue;
        }
        outln!("code         {code}");
        outln!("vertices     {}", a.vertex_count());
        outln!("edges        {}", a.edges().len());
        outln!("black cells  {}", a.black_cells().len());
        outln!("white cells  {}", a.white_cells().len());
        outln!("free loops   {}", a.free_loops());
        outln!("euler char   {}", a.euler_char());
        outln!("orientable   {}", a.orientable());
        outln!("genus        {}", a.genus());
    }
    if cli.format == Format::Json {
        emit_json(out);
    }
    Ok(())
}

fn print_report(report: &VerifyReport) {
    for d in &report.diagrams {
        let name = d.name.as_deref().map(|n| format!("  ({n})")).unwrap_or_default();
        outln!("{} {}{name}", if d.passed() { "PASS" } else { "FAIL" }, d.code);
        for c in d.checks.iter().filter(|c| !c.passed) {
            outln!("     {}: {}", c.check, c.detail);
        }
    }
    let passed = report.diagrams.iter().filter(|d| d.passed()).count();
    outln!("{passed}/{} diagrams passed", report.diagrams.len());
}

#[allow(clippy::too_many_arguments)]
fn verify_cmd(
    cli: &Cli,
    codes: &[String],
    corpus: Option<&Path>,
    random: Option<usize>,
    seed: u64,
    no_moves: bool,
    defect: Option<DefectArg>,
) -> Outcome {
    let mut items = vec![];
    for code in codes {
        items.extend(inputs(code)?.into_iter().map(|(_, d)| (d, None)));
    }
    if let Some(path) = corpus {
        for e in load_corpus(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))? {
            let d = e.diagram.map_err(|err| Failure::Parse(format!("{}: {err}", path.display())))?;
            items.push((d, e.name));
        }
    }
    let largest = cli.max_crossings.unwrap_or(6);
    if let Some(n) = random {
        items.extend(random_batch(n, largest, seed));
    }
    if items.is_empty() {
        return Err(Failure::Usage("nothing to verify: give codes, --corpus or --random".into()));
    }
    let convention = Convention {
        defect: defect.map(|d| match d {
            DefectArg::FlipNegative => Defect::FlipNegativeOrientation,
            DefectArg::FirstAtNe => Defect::FirstAtNeOnNegative,
        }),
        ..Convention::default()
    };
    let cap = match (random, cli.max_crossings) {
        (Some(_), Some(k)) => DEFAULT_CROSSING_CAP.max(k + 3),
        (None, Some(k)) => k,
        _ => DEFAULT_CROSSING_CAP,
    };
    let opts = VerifyOptions { cap, seed, convention, moves: !no_moves, ..VerifyOptions::default() };
    let report = verify_all(&items, &opts)?;
    if cli.format == Format::Json {
        outln!("{}", serde_json::to_string_pretty(&report).expect("serializable"));
    } else {
        print_report(&report);
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verification("some checks failed".into()))
    }
}

fn cube_dump(cli: &Cli, input: &str, ring: Ring) -> Outcome {
    let cap = cli.max_crossings.unwrap_or(DEFAULT_CROSSING_CAP);
    let mut out = vec![];
    for (code, d) in inputs(input)? {
        let opts = BuildOptions { frobenius: ring.frobenius(), cap, check: false, ..BuildOptions::default() };
        let mut c = build_complex_with(&d, &opts)?;
        c.ring = ring;
        if cli.format == Format::Json {
            let mut v = serde_json::to_value(c.dump()).expect("serializable");
            v["code"] = json!(code);
            out.push(v);
            continue;
        }
        outln!("code {code}  ring {}  crossings {} (n+ {}, n- {})", c.ring, c.crossings, c.n_plus, c.n_minus);
        outln!("{:>5} {:>5} {:>6} {:>8}", "i", "j", "dim", "nnz(d)");
        for g in c.groups() {
            let j = g.j.map_or("-".to_string(), |j| j.to_string());
            outln!("{:>5} {:>5} {:>6} {:>8}", g.i, j, g.dim(), g.differential.nnz());
        }
        let defects = c.d_squared_defects();
        if !defects.is_empty() {
            outln!("d∘d ≠ 0 at {defects:?}");
        }
    }
    if cli.format == Format::Json {
        emit_json(out);
    }
    Ok(())
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Jones { input, var } => jones(cli, input, *var),
        Command::Homology { input, ring } => homology_cmd(cli, input, *ring),
        Command::Atom { input } => atom_cmd(cli, input),
        Command::Verify { codes, corpus, random, seed, no_moves, defect } => {
            verify_cmd(cli, codes, corpus.as_deref(), *random, *seed, *no_moves, *defect)
        }
        Command::CubeDump { input, ring } => cube_dump(cli, input, *ring),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.max_crossings == Some(0) {
        eprintln!("error: --max-crossings must be at least 1");
        return ExitCode::from(1);
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (1, m),
                Failure::Parse(m) => (2, m),
                Failure::Verification(m) => (3, m),
                Failure::Cap(m) => (4, m),
            };
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
