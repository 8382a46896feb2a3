//! The `gerst` command line.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gerst_core::chains::{cellular_complex, format_homology, subcomplex_iprime, HomologyGroup, IntChainComplex};
use gerst_core::formula::{enumerate, parse, Formula};
use gerst_core::hochschild::{cohomology, set_size_cap, size_cap, BraceConvention, Complex};
use gerst_core::posets::{enumerate_tn, order_pairs, OrderPair};
use serde_json::json;

use crate::error::{Error, Result};
use crate::io::{complex_to_json, homology_to_csv, homology_to_json, resolve_algebra, resolve_monoid};
use crate::{suites, svg};

/// Exit code when every checked identity holds.
pub const EXIT_OK: i32 = 0;
/// Exit code when a verification finds a counterexample.
pub const EXIT_FAILED: i32 = 1;
/// Exit code for usage errors and unreadable input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "gerst", version, about = "Brace operations on Hochschild cochains and the cell complexes indexing them")]
struct Cli {
    /// Maximum number of coefficients d^(p+1) stored for one cochain; overrides GERST_SIZE_CAP.
    #[arg(long, global = true)]
    size_cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate and manipulate formulas.
    #[command(subcommand)]
    Formulas(FormulasCmd),
    /// Hochschild cohomology of a finite algebra.
    #[command(subcommand)]
    Hochschild(HochschildCmd),
    /// Run a verification suite.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Integral homology tables.
    #[command(subcommand)]
    Homology(HomologyCmd),
    /// Consistent order pairs.
    #[command(subcommand)]
    Posets(PosetsCmd),
    /// Draw the prismatic or fiberwise subdivision.
    Subdivide(SubdivideArgs),
    /// Check that the braid hexagon bounds.
    BraidCheck,
    /// Cosimplicial objects of operads with multiplication.
    #[command(subcommand)]
    Cosimplicial(CosimplicialCmd),
}

#[derive(Subcommand, Debug)]
enum FormulasCmd {
    /// All formulas of type n, one per line.
    Enumerate {
        n: usize,
        #[arg(long)]
        dim: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// The faces of a formula with their boundary signs.
    Faces { expr: String },
    /// The k-thickenings of a formula.
    Thicken {
        expr: String,
        k: usize,
        /// Only thickenings of top dimension.
        #[arg(long)]
        top: bool,
    },
    /// Substitute g into symbol k of f.
    Substitute { f: String, k: usize, g: String },
}

#[derive(Subcommand, Debug)]
enum HochschildCmd {
    /// Ranks and torsion of HH^p for p up to the maximum degree.
    Cohomology {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        max_degree: usize,
        #[arg(long)]
        unnormalized: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Convention {
    Composed,
    Outer,
}

impl From<Convention> for BraceConvention {
    fn from(c: Convention) -> BraceConvention {
        match c {
            Convention::Composed => BraceConvention::ComposedSlots,
            Convention::Outer => BraceConvention::OuterSlots,
        }
    }
}

#[derive(Args, Debug)]
struct CosimplicialArgs {
    /// `hochschild:<algebra>` or `cobar:<monoid>`.
    #[arg(long)]
    instance: String,
    #[arg(long, default_value_t = 4)]
    max_level: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random cochains per level for hochschild instances.
    #[arg(long, default_value_t = 200)]
    samples: usize,
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// The brace and cup relations on random normalized cochains.
    Relations {
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = Convention::Composed)]
        convention: Convention,
    },
    /// Cosimplicial identities and cup-pairing clauses.
    Cosimplicial(CosimplicialArgs),
    /// Cell composition and cochain evaluation are chain maps.
    Chainmap {
        #[arg(long, default_value = "dual(2)")]
        algebra: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        tuples: usize,
        /// Largest type sum for cell composition.
        #[arg(long, default_value_t = 5)]
        max_sum: usize,
        /// Formulas to evaluate; defaults to 1(2), 1(2,3), 1(2(3)), 1(2,3,4).
        #[arg(long = "formula")]
        formulas: Vec<String>,
    },
    /// Round trips and associativity of the subdivisions.
    Subdivision {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        points: usize,
        #[arg(long, default_value_t = 5)]
        max_sum: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Same as `--format json`.
    #[arg(long)]
    json: bool,
    /// Also write the chain complex as JSON to this path.
    #[arg(long)]
    export: Option<String>,
}

#[derive(Subcommand, Debug)]
enum HomologyCmd {
    /// Cellular complex of formulas of type n.
    Cells(TableArgs),
    /// Nerve of the poset of consistent order pairs on n symbols.
    Nerve(TableArgs),
    /// Subcomplex of cells below an order pair.
    Subcomplex {
        #[command(flatten)]
        table: TableArgs,
        /// Total order, e.g. `3142`.
        #[arg(long)]
        t: String,
        /// Generating pairs, e.g. `3<1,3<4`.
        #[arg(long, default_value = "")]
        p: String,
    },
}

#[derive(Subcommand, Debug)]
enum PosetsCmd {
    /// All consistent order pairs on n symbols.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
#[command(args_conflicts_with_subcommands = true)]
struct SubdivideArgs {
    #[command(subcommand)]
    fiberwise: Option<FiberwiseCmd>,
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long, default_value_t = 0.5)]
    u: f64,
    #[arg(long, default_value_t = 16)]
    samples: usize,
    #[arg(long)]
    svg: Option<String>,
}

#[derive(Subcommand, Debug)]
enum FiberwiseCmd {
    /// The square subdividing Δᵏ × (cell of f).
    Fiberwise {
        #[arg(long)]
        formula: String,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[arg(long)]
        svg: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
enum CosimplicialCmd {
    /// Cosimplicial identities and cup-pairing clauses.
    Verify(CosimplicialArgs),
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code. Output goes to `out`, diagnostics to `err`.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{text}");
            } else {
                let _ = write!(err, "{text}");
            }
            return if code == 0 { EXIT_OK } else { EXIT_USAGE };
        }
    };
    let cap = cli.size_cap.or_else(|| std::env::var("GERST_SIZE_CAP").ok().and_then(|v| v.parse().ok()));
    if let Some(cap) = cap {
        set_size_cap(cap);
    }
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

fn formula(text: &str) -> Result<Formula> {
    Ok(parse(text)?)
}

fn header(out: &mut dyn Write, what: &str, seed: Option<u64>) -> Result<()> {
    match seed {
        Some(s) => writeln!(out, "# {what} seed={s} size_cap={}", size_cap())?,
        None => writeln!(out, "# {what} size_cap={}", size_cap())?,
    }
    Ok(())
}

fn report(out: &mut dyn Write, outcomes: &[suites::Outcome]) -> Result<i32> {
    for o in outcomes {
        writeln!(out, "{o}")?;
    }
    Ok(if outcomes.iter().all(|o| o.passed) { EXIT_OK } else { EXIT_FAILED })
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Formulas(cmd) => formulas(cmd, out),
        Command::Hochschild(HochschildCmd::Cohomology { algebra, max_degree, unnormalized, json }) => {
            let alg = resolve_algebra(&algebra)?;
            let complex = if unnormalized { Complex::Unnormalized } else { Complex::Normalized };
            let reports = (0..=max_degree).map(|p| cohomology(&alg, p, complex)).collect::<std::result::Result<Vec<_>, _>>()?;
            if json {
                let degrees: Vec<_> = reports
                    .iter()
                    .map(|r| json!({"degree": r.degree, "rank": r.rank, "torsion": r.torsion.iter().map(ToString::to_string).collect::<Vec<_>>()}))
                    .collect();
                let doc = json!({"algebra": alg.name(), "modulus": alg.ring().modulus(), "normalized": !unnormalized, "size_cap": size_cap(), "cohomology": degrees});
                writeln!(out, "{doc}")?;
            } else {
                header(out, &format!("hochschild cohomology of {}", alg.name()), None)?;
                for r in &reports {
                    let torsion: Vec<String> = r.torsion.iter().map(|t| format!(" + Z/{t}")).collect();
                    writeln!(out, "HH^{}: rank {}{}", r.degree, r.rank, torsion.concat())?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Verify(cmd) => verify(cmd, out),
        Command::Homology(cmd) => homology(cmd, out),
        Command::Posets(PosetsCmd::Enumerate { n, json }) => {
            let items = order_pairs(n)?;
            if json {
                let list: Vec<_> = items.iter().map(|op| json!({"t": op.total(), "p": op.covers()})).collect();
                writeln!(out, "{}", serde_json::Value::Array(list))?;
            } else {
                for op in items {
                    writeln!(out, "{op}")?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Subdivide(args) => subdivide(args, out),
        Command::BraidCheck => report(out, &[suites::braid()]),
        Command::Cosimplicial(CosimplicialCmd::Verify(args)) => cosimplicial(args, out),
    }
}

fn formulas(cmd: FormulasCmd, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        FormulasCmd::Enumerate { n, dim, json } => {
            let fs = enumerate(n, dim)?;
            if json {
                let list: Vec<String> = fs.iter().map(ToString::to_string).collect();
                writeln!(out, "{}", serde_json::to_string(&list)?)?;
            } else {
                for f in fs {
                    writeln!(out, "{f}")?;
                }
            }
        }
        FormulasCmd::Faces { expr } => {
            let f = formula(&expr)?;
            let mut before = 0;
            for (idx, v) in f.valences().into_iter().enumerate() {
                for j in 0..=v {
                    if v > 0 {
                        let sign = if (j + before) % 2 == 0 { '+' } else { '-' };
                        writeln!(out, "d[{},{j}] {sign} {}", idx + 1, f.face(idx + 1, j)?)?;
                    }
                }
                before += v;
            }
        }
        FormulasCmd::Thicken { expr, k, top } => {
            let f = formula(&expr)?;
            let gs = if top { f.top_thickenings(k) } else { f.thickenings(k) };
            for g in gs {
                writeln!(out, "{g}")?;
            }
        }
        FormulasCmd::Substitute { f, k, g } => {
            writeln!(out, "{}", formula(&f)?.substitute(k, &formula(&g)?)?)?;
        }
    }
    Ok(EXIT_OK)
}

fn verify(cmd: VerifyCmd, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        VerifyCmd::Relations { algebra, seed, trials, convention } => {
            let alg = resolve_algebra(&algebra)?;
            header(out, &format!("verify relations over {} trials={trials}", alg.name()), Some(seed))?;
            report(out, &[suites::relation_suite_with(&alg, trials, seed, convention.into())?])
        }
        VerifyCmd::Cosimplicial(args) => cosimplicial(args, out),
        VerifyCmd::Chainmap { algebra, seed, tuples, max_sum, formulas } => {
            let alg = resolve_algebra(&algebra)?;
            let fs = if formulas.is_empty() {
                suites::evaluation_formulas()
            } else {
                formulas.iter().map(|t| formula(t)).collect::<Result<_>>()?
            };
            header(out, &format!("verify chainmap over {} tuples={tuples} max_sum={max_sum}", alg.name()), Some(seed))?;
            report(out, &[suites::condensation(max_sum, 3)?, suites::evaluation_chain_map(&[alg], &fs, tuples, seed)?])
        }
        VerifyCmd::Subdivision { seed, points, max_sum } => {
            header(out, &format!("verify subdivision points={points} max_sum={max_sum}"), Some(seed))?;
            report(out, &[suites::subdivision(points, max_sum, seed)?])
        }
    }
}

fn cosimplicial(args: CosimplicialArgs, out: &mut dyn Write) -> Result<i32> {
    let CosimplicialArgs { instance, max_level, seed, samples } = args;
    let outcome = if let Some(spec) = instance.strip_prefix("hochschild:") {
        let alg = resolve_algebra(spec)?;
        header(out, &format!("cosimplicial {instance} max_level={max_level} samples={samples}"), Some(seed))?;
        suites::cosimplicial_endomorphism(&alg, max_level, samples, seed)?
    } else if let Some(spec) = instance.strip_prefix("cobar:") {
        let monoid = resolve_monoid(spec)?;
        header(out, &format!("cosimplicial {instance} max_level={max_level}"), Some(seed))?;
        suites::cosimplicial_cobar(&monoid, max_level)?
    } else {
        return Err(Error::Usage(format!("instance `{instance}` must start with `hochschild:` or `cobar:`")));
    };
    report(out, &[outcome])
}

fn homology(cmd: HomologyCmd, out: &mut dyn Write) -> Result<i32> {
    let (complex, args): (IntChainComplex, TableArgs) = match cmd {
        HomologyCmd::Cells(args) => (cellular_complex(args.n)?, args),
        HomologyCmd::Nerve(args) => (enumerate_tn(args.n)?.nerve()?, args),
        HomologyCmd::Subcomplex { table, t, p } => {
            let op: OrderPair = format!("t={t};p={p}").parse()?;
            (subcomplex_iprime(table.n, &op)?, table)
        }
    };
    let h: Vec<HomologyGroup> = complex.homology()?;
    if let Some(path) = &args.export {
        std::fs::write(path, complex_to_json(&complex))?;
    }
    let format = if args.json { Format::Json } else { args.format };
    match format {
        Format::Text => writeln!(out, "{}", format_homology(&h))?,
        Format::Json => writeln!(out, "{}", homology_to_json(&h))?,
        Format::Csv => write!(out, "{}", homology_to_csv(&h))?,
    }
    Ok(EXIT_OK)
}

fn write_or_print(out: &mut dyn Write, path: Option<&str>, text: &str) -> Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, text)?;
            writeln!(out, "wrote {p}")?;
        }
        None => write!(out, "{text}")?,
    }
    Ok(())
}

fn subdivide(args: SubdivideArgs, out: &mut dyn Write) -> Result<i32> {
    match args.fiberwise {
        Some(FiberwiseCmd::Fiberwise { formula: text, k, samples, svg: path }) => {
            let f = formula(&text)?;
            write_or_print(out, path.as_deref(), &svg::fiberwise(&f, k, samples)?)?;
        }
        None => match args.svg {
            Some(path) => write_or_print(out, Some(&path), &svg::prismatic(args.n, args.u, args.samples)?)?,
            None => write!(out, "{}", svg::prismatic_vertices(args.n, args.u)?)?,
        },
    }
    Ok(EXIT_OK)
}
