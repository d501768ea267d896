//! Command-line front end for the exact billiard kernel.
//!
//! Every subcommand resolves a polygon (or a lattice case), runs the exact
//! machinery from `billiard-core`, and emits one table as CSV or JSON.
//! Identical invocations produce byte-identical output. Exit codes follow
//! a scripting contract: 0 all checks pass, 1 an identity or tolerance
//! check failed (the table is still emitted), 2 bad input, 3 a resource
//! cap was hit.

use std::env;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use billiard_core::diagonal::{
    self, cell_constant, enumerate_diagonals, DiagonalError, DiagonalOptions,
};
use billiard_core::language::{
    bispecial_words, enumerate_language, verify_difference_identity, EnumMode, EnumOptions,
    LanguageError,
};
use billiard_core::lattice::{estimate_limit, LatticeError, LimitCase};
use billiard_core::sampling::random_convex_quadrilateral;
use billiard_core::{CatalogEntry, Polygon};

const DEFAULT_WORD_CAP: u64 = 10_000_000;

#[derive(Parser)]
#[command(
    name = "billiard",
    version,
    about = "Exact word counts, diagonal censuses, and growth constants for \
             billiards in convex polygons"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count the coding words of each length up to a bound
    Complexity(ComplexityArgs),
    /// Check the counting identities exactly and report every row
    Verify(VerifyArgs),
    /// Census of generalized diagonals by link count
    Diagonals(DiagonalsArgs),
    /// List the bispecial words of one length with their extension data
    Bispecial(BispecialArgs),
    /// Track a closed-form count against its cubic growth constant
    Asymptotics(AsymptoticsArgs),
}

/// Which table to run on. Catalog names cover the classical shapes;
/// `random-quad` derives a convex rational quadrilateral from `--seed`,
/// and a file supplies arbitrary vertices.
#[derive(Args)]
#[command(group(
    ArgGroup::new("source").required(true).args(["polygon", "polygon_file"])
))]
struct PolygonArgs {
    /// Catalog name: square, equilateral, right-isosceles, half-equilateral,
    /// or random-quad
    #[arg(long)]
    polygon: Option<String>,

    /// Path to a polygon file: optional `QFIELD d` line, then `V x y` lines
    /// with exact coordinates
    #[arg(long)]
    polygon_file: Option<PathBuf>,

    /// Seed for the random-quad source; ignored otherwise
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Write the table here instead of standard output
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct ComplexityArgs {
    #[command(flatten)]
    polygon: PolygonArgs,

    /// Longest word length to count
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_n: u64,

    /// Worker threads for the enumeration
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=64))]
    threads: u64,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    polygon: PolygonArgs,

    /// Largest length at which each identity is checked
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_n: u64,

    /// Worker threads for the enumerations
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=64))]
    threads: u64,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct DiagonalsArgs {
    #[command(flatten)]
    polygon: PolygonArgs,

    /// Largest link count in the census
    #[arg(long)]
    max_links: u64,

    /// Worker threads for the sweep
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=64))]
    threads: u64,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct BispecialArgs {
    #[command(flatten)]
    polygon: PolygonArgs,

    /// Word length to list (0 lists the empty word)
    #[arg(long)]
    n: u64,

    /// Worker threads for the enumeration
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..=64))]
    threads: u64,

    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct AsymptoticsArgs {
    /// Lattice case: square, equilateral, or right-isosceles
    #[arg(long)]
    case: String,

    /// Largest n on the sampling grid n/8, n/4, n/2, n
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    max_n: u64,

    /// Relative deviation allowed at the final grid point
    #[arg(long, default_value_t = 0.01)]
    tol: f64,

    #[command(flatten)]
    output: OutputArgs,
}

/// Failures carry their exit code; everything else unwinds through them.
enum Failure {
    /// Invalid input of any kind: exit 2.
    Input(String),
    /// An exact identity or a tolerance was violated: exit 1.
    Check(String),
    /// A resource cap stopped the computation: exit 3.
    Cap(String),
}

impl Failure {
    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Check(m) | Failure::Cap(m) => m,
        }
    }

    fn code(&self) -> u8 {
        match self {
            Failure::Check(_) => 1,
            Failure::Input(_) => 2,
            Failure::Cap(_) => 3,
        }
    }
}

impl From<LanguageError> for Failure {
    fn from(e: LanguageError) -> Self {
        match e {
            LanguageError::CapExceeded(_) => Failure::Cap(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<DiagonalError> for Failure {
    fn from(e: DiagonalError) -> Self {
        match e {
            DiagonalError::CapExceeded(_) => Failure::Cap(e.to_string()),
            DiagonalError::Language(inner) => inner.into(),
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        Failure::Input(e.to_string())
    }
}

/// One rectangular result table; the only thing a subcommand may print.
struct Table {
    columns: &'static [&'static str],
    rows: Vec<Vec<Cell>>,
}

enum Cell {
    UInt(u64),
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Table {
    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let fields: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::UInt(v) => v.to_string(),
                    Cell::Int(v) => v.to_string(),
                    Cell::Float(v) => v.to_string(),
                    Cell::Text(v) => {
                        debug_assert!(!v.contains(',') && !v.contains('\n'));
                        v.clone()
                    }
                    Cell::Bool(v) => v.to_string(),
                    Cell::Empty => String::new(),
                })
                .collect();
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> String {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let value = match cell {
                        Cell::UInt(v) => serde_json::Value::from(*v),
                        Cell::Int(v) => serde_json::Value::from(*v),
                        Cell::Float(v) => serde_json::Value::from(*v),
                        Cell::Text(v) => serde_json::Value::from(v.as_str()),
                        Cell::Bool(v) => serde_json::Value::from(*v),
                        Cell::Empty => serde_json::Value::Null,
                    };
                    obj.insert((*name).to_string(), value);
                }
                serde_json::Value::Object(obj)
            })
            .collect();
        let mut out = serde_json::to_string_pretty(&serde_json::Value::Array(rows))
            .expect("tables serialize");
        out.push('\n');
        out
    }
}

fn emit(table: &Table, output: &OutputArgs) -> Result<(), Failure> {
    let text = table.render(output.format);
    match &output.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn word_cap() -> Result<u64, Failure> {
    match env::var("BILLIARD_MAX_WORDS") {
        Ok(raw) => raw.parse::<u64>().map_err(|_| {
            Failure::Input(format!("BILLIARD_MAX_WORDS must be a count, got {raw:?}"))
        }),
        Err(env::VarError::NotPresent) => Ok(DEFAULT_WORD_CAP),
        Err(e) => Err(Failure::Input(format!("BILLIARD_MAX_WORDS: {e}"))),
    }
}

fn resolve_polygon(args: &PolygonArgs) -> Result<Polygon, Failure> {
    if let Some(name) = &args.polygon {
        if name == "random-quad" {
            return Ok(random_convex_quadrilateral(args.seed));
        }
        return CatalogEntry::from_name(name)
            .map(CatalogEntry::polygon)
            .ok_or_else(|| {
                let known: Vec<&str> = CatalogEntry::ALL.iter().map(|c| c.name()).collect();
                Failure::Input(format!(
                    "unknown polygon {name:?}; expected one of {}, random-quad",
                    known.join(", ")
                ))
            });
    }
    let path = args.polygon_file.as_ref().expect("clap enforces the source group");
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    text.parse::<Polygon>()
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn enum_options(mode: EnumMode, threads: u64, cap: u64) -> EnumOptions {
    EnumOptions {
        mode,
        threads: threads as usize,
        max_words: cap,
    }
}

fn cmd_complexity(args: &ComplexityArgs) -> Result<(), Failure> {
    let poly = resolve_polygon(&args.polygon)?;
    let cap = word_cap()?;
    let table = enumerate_language(
        &poly,
        args.max_n as usize,
        &enum_options(EnumMode::Count, args.threads, cap),
    )?;
    let rows = (1..=args.max_n as usize)
        .map(|n| {
            let growth = match table.s(n) {
                Some(s) => Cell::UInt(s),
                None => Cell::Empty,
            };
            vec![Cell::UInt(n as u64), Cell::UInt(table.p(n)), growth]
        })
        .collect();
    emit(
        &Table {
            columns: &["n", "p", "s"],
            rows,
        },
        &args.output,
    )
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let poly = resolve_polygon(&args.polygon)?;
    let cap = word_cap()?;
    let max_n = args.max_n as usize;
    let threads = args.threads as usize;

    let census = diagonal::verify_complexity_census(&poly, max_n, threads, cap)?;
    let store = enumerate_language(
        &poly,
        max_n + 2,
        &enum_options(EnumMode::Store, args.threads, cap),
    )?;

    let mut rows = Vec::new();
    let mut witnesses = Vec::new();
    for row in &census.rows {
        if !row.holds() {
            witnesses.push(format!("census at n = {}", row.n));
        }
        rows.push(vec![
            Cell::Text("census".into()),
            Cell::UInt(row.n as u64),
            Cell::Int(row.p as i64),
            Cell::Int(row.nc_sum as i64),
            Cell::Bool(row.holds()),
        ]);
    }
    for n in 1..=max_n {
        let check = verify_difference_identity(&store, n);
        if !check.holds() {
            witnesses.push(format!("difference at n = {n}"));
        }
        rows.push(vec![
            Cell::Text("difference".into()),
            Cell::UInt(n as u64),
            Cell::Int(check.lhs),
            Cell::Int(check.rhs),
            Cell::Bool(check.holds()),
        ]);
    }
    for n in 0..=max_n {
        let mut lhs = 0i64;
        let mut rhs = 0i64;
        let mut ok = true;
        for (word, c) in bispecial_words(&store, n) {
            let gd = diagonal::gd(&poly, &word) as i64;
            let want = (c.m_l as i64 - 1) + (c.m_r as i64 - 1) + gd + cell_constant(n);
            lhs += c.m_b as i64;
            rhs += want;
            ok &= c.m_b as i64 == want;
        }
        if !ok {
            witnesses.push(format!("cell at n = {n}"));
        }
        rows.push(vec![
            Cell::Text("cell".into()),
            Cell::UInt(n as u64),
            Cell::Int(lhs),
            Cell::Int(rhs),
            Cell::Bool(ok),
        ]);
    }

    emit(
        &Table {
            columns: &["check", "n", "lhs", "rhs", "ok"],
            rows,
        },
        &args.output,
    )?;
    if witnesses.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "{} identity rows failed: {}",
            witnesses.len(),
            witnesses.join("; ")
        )))
    }
}

fn cmd_diagonals(args: &DiagonalsArgs) -> Result<(), Failure> {
    let poly = resolve_polygon(&args.polygon)?;
    let cap = word_cap()?;
    let census = enumerate_diagonals(
        &poly,
        args.max_links as usize,
        &DiagonalOptions {
            threads: args.threads as usize,
            max_nodes: cap,
            keep_records: false,
        },
    )?;
    let rows = (0..=args.max_links as usize)
        .map(|j| {
            let exact = if j == 0 {
                poly.sides() as u64
            } else {
                census.table.exact_links(j)
            };
            vec![
                Cell::UInt(j as u64),
                Cell::UInt(exact),
                Cell::UInt(census.table.nc(j)),
            ]
        })
        .collect();
    emit(
        &Table {
            columns: &["links", "count", "cumulative"],
            rows,
        },
        &args.output,
    )
}

fn cmd_bispecial(args: &BispecialArgs) -> Result<(), Failure> {
    let poly = resolve_polygon(&args.polygon)?;
    let cap = word_cap()?;
    let n = args.n as usize;
    let store = enumerate_language(
        &poly,
        n + 2,
        &enum_options(EnumMode::Store, args.threads, cap),
    )?;
    let mut rows = Vec::new();
    let mut bad = 0usize;
    for (word, c) in bispecial_words(&store, n) {
        let gd = diagonal::gd(&poly, &word);
        let ok = c.m_b as i64
            == (c.m_l as i64 - 1) + (c.m_r as i64 - 1) + gd as i64 + cell_constant(n);
        bad += usize::from(!ok);
        let spelled = if word.is_empty() {
            Cell::Empty
        } else {
            Cell::Text(word.join("-"))
        };
        rows.push(vec![
            Cell::UInt(n as u64),
            spelled,
            Cell::UInt(c.m_l as u64),
            Cell::UInt(c.m_r as u64),
            Cell::UInt(c.m_b as u64),
            Cell::UInt(gd),
            Cell::Bool(ok),
        ]);
    }
    emit(
        &Table {
            columns: &["n", "word", "m_l", "m_r", "m_b", "gd", "ok"],
            rows,
        },
        &args.output,
    )?;
    if bad == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "{bad} bispecial words violate the cell identity at n = {n}"
        )))
    }
}

fn cmd_asymptotics(args: &AsymptoticsArgs) -> Result<(), Failure> {
    let case = LimitCase::from_name(&args.case)?;
    if !(args.tol > 0.0) {
        return Err(Failure::Input(format!(
            "--tol must be positive, got {}",
            args.tol
        )));
    }
    let mut grid: Vec<u64> = [args.max_n / 8, args.max_n / 4, args.max_n / 2, args.max_n]
        .iter()
        .map(|&g| g.max(1))
        .collect();
    grid.dedup();
    let mut final_dev = 0.0;
    let rows = grid
        .iter()
        .map(|&n| {
            let report = estimate_limit(case, n);
            final_dev = report.rel_dev;
            vec![
                Cell::UInt(report.n),
                Cell::UInt(report.count),
                Cell::Float(report.prediction),
                Cell::Float(report.rel_dev),
            ]
        })
        .collect();
    emit(
        &Table {
            columns: &["n", "count", "prediction", "rel_dev"],
            rows,
        },
        &args.output,
    )?;
    if final_dev <= args.tol {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "final deviation {final_dev} exceeds tolerance {}",
            args.tol
        )))
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.cmd {
        Cmd::Complexity(args) => cmd_complexity(args),
        Cmd::Verify(args) => cmd_verify(args),
        Cmd::Diagonals(args) => cmd_diagonals(args),
        Cmd::Bispecial(args) => cmd_bispecial(args),
        Cmd::Asymptotics(args) => cmd_asymptotics(args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.code())
        }
    }
}
