//! Command-line front end over the workspace: Pell enumeration, system
//! generation and transformation, polynomial lowering, bounded solving,
//! verification, and the exhaustive checks.
//!
//! Every report ends with a single `RESULT:` line; exit codes are 0 for
//! success/holds/verified, 1 for a verification failure or counterexample,
//! 2 for usage or parse errors, and 3 when a search exhausted its cap.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Signed;

use en_constructions::{
    doubling_tuple, property4_tuple, theorem1_system, theorem1_witness, theorem2_layout,
    theorem2_system, theorem2_witness,
};
use en_core::{sci_notation, EnSystem, IntTuple};
use en_pell::{enumerate_5, find_divisible_index};
use en_poly_compiler::{
    card_t, compile_compact, compile_full_t_with_ceiling, parse_polynomial, CompiledSystem,
    Variant, DEFAULT_FULL_T_CEILING,
};
use en_search::{
    check_property4, check_psi, rigidity_by_propagation, solve_in_order, SearchVerdict,
    DEFAULT_Y_SHELL_CAP,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

/// What a command run produced: the full stdout report (ending in a
/// `RESULT:` line) and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub report: String,
}

#[derive(Parser)]
#[command(
    name = "ensys",
    version,
    about = "Systems of x_i = 1, x_i + x_j = x_k, x_i * x_j = x_k: generate, compile, solve, verify"
)]
struct Cli {
    /// Worker threads for the parallel scans (0 keeps the pool default).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the first solutions of x^2 - 5*y^2 = -1 in increasing order.
    PellEnumerate {
        /// How many solutions to print.
        #[arg(long)]
        limit: usize,
    },
    /// Indices k <= limit whose k-th solution has y divisible by the modulus.
    PellFindDiv {
        #[arg(long)]
        modulus: BigInt,
        #[arg(long)]
        limit: usize,
    },
    /// Generate the n-variable system whose solutions exceed 2^(2^(n-1)).
    Theorem1 {
        /// Variable count, at least 12.
        #[arg(long)]
        n: usize,
        /// Also construct and verify a solution.
        #[arg(long)]
        witness: bool,
        /// Which solution of x^2 - 5^9*y^2 = -1 to use (1 = minimal).
        #[arg(long, default_value_t = 1)]
        lift: u64,
    },
    /// Replace every unit equation by the n products x_i * x_j = x_j.
    Tilde {
        /// System file ("-" for standard input).
        #[arg(long)]
        file: String,
    },
    /// Lower a polynomial equation D = 0 to an equivalent system.
    Compile {
        /// Polynomial expression, e.g. "x1^2 - 5*x2^2 + 1".
        #[arg(long)]
        poly: Option<String>,
        /// Read the polynomial from a file ("-" for standard input).
        #[arg(long)]
        file: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Compact)]
        mode: ModeArg,
        /// Coefficient-bound variant; full-t always uses doubled.
        #[arg(long, value_enum)]
        variant: Option<VariantArg>,
        /// Variable budget for full-t mode.
        #[arg(long, default_value_t = DEFAULT_FULL_T_CEILING)]
        ceiling: usize,
        /// Write the system here instead of standard output.
        #[arg(long)]
        out: Option<String>,
        /// Write the index-to-polynomial sidecar here instead of standard output.
        #[arg(long)]
        map: Option<String>,
    },
    /// Brute-force the least solution in the shell-lexicographic order.
    Solve {
        /// System file ("-" for standard input).
        #[arg(long)]
        file: String,
        /// Largest max-norm to scan.
        #[arg(long, default_value_t = 10)]
        cap: u64,
    },
    /// Check every tuple of a solutions file against a system.
    Verify {
        /// System file ("-" for standard input).
        system: String,
        /// Tuple file, one comma-separated tuple per line.
        solutions: String,
    },
    /// Check the finitized height statement for dimension n.
    CheckPsi {
        /// Dimension (1 or 2 are practical; 3 runs very long).
        #[arg(long)]
        n: u32,
        /// Witness-search shell cap.
        #[arg(long, default_value_t = DEFAULT_Y_SHELL_CAP)]
        cap: u64,
    },
    /// Search for a tuple preserving all relations but changing x_1.
    CheckProp4 {
        /// Tuple literal, e.g. "2,1".
        #[arg(long)]
        tuple: Option<String>,
        /// Read the tuple from a file instead.
        #[arg(long)]
        file: Option<String>,
        #[arg(long, default_value_t = 100)]
        cap: u64,
    },
    /// Print an extremal tuple, optionally with its propagation closure.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        kind: ExtremalKind,
        /// Also compute the full set of relation-preserving tuples.
        #[arg(long)]
        rigidity: bool,
    },
    /// Assemble the n-variable system pinning x_1 = f(n) for a represented f.
    Theorem2 {
        /// Representation polynomial W(x1..xr) with x1 = f(x2).
        #[arg(long)]
        poly: Option<String>,
        /// Read the polynomial from a file instead.
        #[arg(long)]
        file: Option<String>,
        #[arg(long)]
        n: usize,
        /// Nonnegative tuple (x1..xr) with W = 0 and x2 = n; builds and
        /// verifies a full solution.
        #[arg(long)]
        witness: Option<String>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Compact,
    FullT,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    Doubled,
    Halved,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExtremalKind {
    Doubling,
    Prop4,
}

enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    fn outcome(self) -> CommandOutcome {
        let (code, msg) = match self {
            CliError::Usage(msg) => (EXIT_USAGE, msg),
            CliError::Failure(msg) => (EXIT_FAIL, msg),
        };
        CommandOutcome {
            exit_code: code,
            report: format!("RESULT: ERROR {}\n", msg),
        }
    }
}

fn usage<E: std::fmt::Display>(err: E) -> CliError {
    CliError::Usage(err.to_string())
}

/// Parse and dispatch one invocation. The report is everything that
/// belongs on standard output.
pub fn run<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            if err.use_stderr() {
                eprint!("{}", err);
                return CommandOutcome {
                    exit_code: EXIT_USAGE,
                    report: "RESULT: ERROR usage\n".to_string(),
                };
            }
            // --help / --version
            return CommandOutcome {
                exit_code: EXIT_OK,
                report: err.to_string(),
            };
        }
    };

    configure_jobs(cli.jobs);

    let result = match cli.command {
        Command::PellEnumerate { limit } => pell_enumerate(limit),
        Command::PellFindDiv { modulus, limit } => pell_find_div(&modulus, limit),
        Command::Theorem1 { n, witness, lift } => theorem1(n, witness, lift),
        Command::Tilde { file } => tilde(&file),
        Command::Compile {
            poly,
            file,
            mode,
            variant,
            ceiling,
            out,
            map,
        } => compile(poly, file, mode, variant, ceiling, out, map),
        Command::Solve { file, cap } => solve(&file, cap),
        Command::Verify { system, solutions } => verify(&system, &solutions),
        Command::CheckPsi { n, cap } => psi(n, cap),
        Command::CheckProp4 { tuple, file, cap } => prop4(tuple, file, cap),
        Command::Extremal { n, kind, rigidity } => extremal(n, kind, rigidity),
        Command::Theorem2 {
            poly,
            file,
            n,
            witness,
        } => theorem2(poly, file, n, witness),
    };
    result.unwrap_or_else(CliError::outcome)
}

#[cfg(feature = "parallel")]
fn configure_jobs(jobs: usize) {
    if jobs > 0 {
        // Ignore the error when a pool already exists (repeated calls in
        // the same process).
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
}

#[cfg(not(feature = "parallel"))]
fn configure_jobs(jobs: usize) {
    if jobs > 0 {
        eprintln!("warning: built without the parallel feature; --jobs ignored");
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::Usage(format!("cannot read standard input: {}", e)))?;
        Ok(text)
    } else {
        fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {}", path, e)))
    }
}

fn text_or_file(
    literal: Option<String>,
    file: Option<String>,
    what: &str,
) -> Result<String, CliError> {
    match (literal, file) {
        (Some(text), None) => Ok(text),
        (None, Some(path)) => read_input(&path),
        _ => Err(CliError::Usage(format!(
            "provide exactly one of --{what} or --file"
        ))),
    }
}

/// Exact decimal, annotated with ten-digit scientific notation once it
/// stops fitting at a glance.
fn fmt_int(v: &BigInt) -> String {
    let exact = v.to_string();
    let digits = if v.is_negative() {
        exact.len() - 1
    } else {
        exact.len()
    };
    if digits > 40 {
        format!("{} (~{})", exact, sci_notation(v, 10))
    } else {
        exact
    }
}

fn write_or_buffer(
    target: &Option<String>,
    content: &str,
    buffer: &mut String,
) -> Result<(), CliError> {
    match target {
        Some(path) => fs::write(path, content)
            .map_err(|e| CliError::Usage(format!("cannot write {}: {}", path, e))),
        None => {
            buffer.push_str(content);
            Ok(())
        }
    }
}

fn ok(report: String) -> Result<CommandOutcome, CliError> {
    Ok(CommandOutcome {
        exit_code: EXIT_OK,
        report,
    })
}

fn with_code(exit_code: i32, report: String) -> Result<CommandOutcome, CliError> {
    Ok(CommandOutcome { exit_code, report })
}

fn pell_enumerate(limit: usize) -> Result<CommandOutcome, CliError> {
    let mut report = String::new();
    for (pos, pair) in enumerate_5(limit).iter().enumerate() {
        writeln!(
            report,
            "{}: x={} y={}",
            pos + 1,
            fmt_int(&pair.x),
            fmt_int(&pair.y)
        )
        .unwrap();
    }
    writeln!(
        report,
        "RESULT: enumerated {} solution(s) of x^2 - 5*y^2 = -1",
        limit
    )
    .unwrap();
    ok(report)
}

fn pell_find_div(modulus: &BigInt, limit: usize) -> Result<CommandOutcome, CliError> {
    if !modulus.is_positive() {
        return Err(CliError::Usage("modulus must be positive".to_string()));
    }
    let indices = find_divisible_index(modulus, limit);
    let mut report = String::new();
    for k in &indices {
        writeln!(report, "k={}", k).unwrap();
    }
    let list = indices
        .iter()
        .map(|k| k.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    writeln!(
        report,
        "RESULT: {} index(es) k <= {} with {} | y(k): [{}]",
        indices.len(),
        limit,
        modulus,
        list
    )
    .unwrap();
    ok(report)
}

fn theorem1(n: usize, with_witness: bool, lift: u64) -> Result<CommandOutcome, CliError> {
    let system = theorem1_system(n).map_err(usage)?;
    let mut report = system.render();
    if with_witness {
        let witness = theorem1_witness(n, lift).map_err(usage)?;
        writeln!(report, "witness:").unwrap();
        for i in 1..=n {
            writeln!(report, "x{} = {}", i, fmt_int(witness.coord(i))).unwrap();
        }
        let solves = system
            .check_solution(&witness)
            .map_err(|e| CliError::Failure(e.to_string()))?;
        if !solves {
            return Err(CliError::Failure(
                "constructed witness does not solve the system".to_string(),
            ));
        }
        writeln!(
            report,
            "RESULT: witness solves the system (n={}, lift={})",
            n, lift
        )
        .unwrap();
    } else {
        writeln!(
            report,
            "RESULT: system with {} variables, {} equations",
            n,
            system.len()
        )
        .unwrap();
    }
    ok(report)
}

fn tilde(file: &str) -> Result<CommandOutcome, CliError> {
    let system = EnSystem::parse(&read_input(file)?).map_err(usage)?;
    let transformed = system.tilde();
    let mut report = transformed.render();
    writeln!(
        report,
        "RESULT: unit equations replaced; {} -> {} equations",
        system.len(),
        transformed.len()
    )
    .unwrap();
    ok(report)
}

fn compile(
    poly_text: Option<String>,
    file: Option<String>,
    mode: ModeArg,
    variant: Option<VariantArg>,
    ceiling: usize,
    out: Option<String>,
    map: Option<String>,
) -> Result<CommandOutcome, CliError> {
    let text = text_or_file(poly_text, file, "poly")?;
    let poly = parse_polynomial(&text).map_err(usage)?;

    let compiled: CompiledSystem = match mode {
        ModeArg::Compact => {
            let variant = match variant {
                Some(VariantArg::Doubled) => Variant::Doubled,
                Some(VariantArg::Halved) | None => Variant::Halved,
            };
            compile_compact(&poly, variant).map_err(usage)?
        }
        ModeArg::FullT => {
            if variant == Some(VariantArg::Halved) {
                return Err(CliError::Usage(
                    "full-t mode always uses the doubled bound".to_string(),
                ));
            }
            compile_full_t_with_ceiling(&poly, ceiling).map_err(usage)?
        }
    };

    let mut report = String::new();
    write_or_buffer(&out, &compiled.system.render(), &mut report)?;
    if out.is_none() && map.is_none() {
        report.push('\n');
    }
    write_or_buffer(&map, &compiled.sidecar(), &mut report)?;
    let mode_name = match mode {
        ModeArg::Compact => "compact",
        ModeArg::FullT => "full-t",
    };
    writeln!(
        report,
        "RESULT: compiled {} ({}): {} variables, {} equations, q={}, family size {}",
        mode_name,
        compiled.variant,
        compiled.system.n(),
        compiled.system.len(),
        compiled.q,
        card_t(&poly, compiled.variant).map_err(usage)?,
    )
    .unwrap();
    ok(report)
}

fn solve(file: &str, cap: u64) -> Result<CommandOutcome, CliError> {
    let system = EnSystem::parse(&read_input(file)?).map_err(usage)?;
    match solve_in_order(&system, cap) {
        SearchVerdict::Found(t) => ok(format!("solution: {}\nRESULT: FOUND {}\n", t, t)),
        SearchVerdict::NoneUpToCap { shell_cap } => {
            with_code(EXIT_CAP, format!("RESULT: NONE_UP_TO_CAP {}\n", shell_cap))
        }
        other => Err(CliError::Failure(format!("unexpected verdict {}", other))),
    }
}

fn verify(system_path: &str, solutions_path: &str) -> Result<CommandOutcome, CliError> {
    let system = EnSystem::parse(&read_input(system_path)?).map_err(usage)?;
    let tuples = IntTuple::parse_tuples(&read_input(solutions_path)?).map_err(usage)?;
    let mut report = String::new();
    let mut failures = 0usize;
    for (pos, tuple) in tuples.iter().enumerate() {
        let solves = system.check_solution(tuple).map_err(usage)?;
        if !solves {
            failures += 1;
        }
        writeln!(
            report,
            "tuple {}: {}",
            pos + 1,
            if solves { "OK" } else { "FAIL" }
        )
        .unwrap();
    }
    if failures == 0 {
        writeln!(report, "RESULT: all {} tuple(s) verified", tuples.len()).unwrap();
        ok(report)
    } else {
        writeln!(
            report,
            "RESULT: {} of {} tuple(s) fail",
            failures,
            tuples.len()
        )
        .unwrap();
        with_code(EXIT_FAIL, report)
    }
}

fn psi(n: u32, cap: u64) -> Result<CommandOutcome, CliError> {
    if !(1..=3).contains(&n) {
        return Err(CliError::Usage(
            "only n in 1..=3 is checkable (n = 3 runs very long)".to_string(),
        ));
    }
    match check_psi(n, cap) {
        SearchVerdict::Holds => ok(format!("RESULT: HOLDS (n={}, cap={})\n", n, cap)),
        SearchVerdict::Counterexample(x) => with_code(
            EXIT_FAIL,
            format!("counterexample: {}\nRESULT: COUNTEREXAMPLE {}\n", x, x),
        ),
        SearchVerdict::UnknownCapExhausted { shell_cap } => with_code(
            EXIT_CAP,
            format!(
                "RESULT: UNKNOWN_CAP_EXHAUSTED (n={}, cap={})\n",
                n, shell_cap
            ),
        ),
        other => Err(CliError::Failure(format!("unexpected verdict {}", other))),
    }
}

fn prop4(
    tuple: Option<String>,
    file: Option<String>,
    cap: u64,
) -> Result<CommandOutcome, CliError> {
    let text = text_or_file(tuple, file, "tuple")?;
    let x = IntTuple::parse_line(text.trim()).map_err(usage)?;
    match check_property4(&x, cap) {
        SearchVerdict::NoneUpToCap { shell_cap } => ok(format!(
            "RESULT: NONE_UP_TO_CAP {} (first coordinate of {} is rigid up to the cap)\n",
            shell_cap, x
        )),
        SearchVerdict::Counterexample(y) => with_code(
            EXIT_FAIL,
            format!("counterexample: {}\nRESULT: COUNTEREXAMPLE {}\n", y, y),
        ),
        other => Err(CliError::Failure(format!("unexpected verdict {}", other))),
    }
}

fn extremal(n: usize, kind: ExtremalKind, rigidity: bool) -> Result<CommandOutcome, CliError> {
    let (tuple, include_units) = match kind {
        ExtremalKind::Doubling => (doubling_tuple(n).map_err(usage)?, false),
        ExtremalKind::Prop4 => (property4_tuple(n).map_err(usage)?, true),
    };
    let mut report = String::new();
    for i in 1..=n {
        writeln!(report, "x{} = {}", i, fmt_int(tuple.coord(i))).unwrap();
    }
    if !rigidity {
        writeln!(report, "RESULT: tuple of length {}", n).unwrap();
        return ok(report);
    }
    match rigidity_by_propagation(&tuple, include_units) {
        SearchVerdict::Determined(set) => {
            writeln!(report, "closure ({} tuple(s)):", set.len()).unwrap();
            for member in &set {
                writeln!(report, "  {}", member).unwrap();
            }
            writeln!(
                report,
                "RESULT: DETERMINED {} relation-preserving tuple(s)",
                set.len()
            )
            .unwrap();
            ok(report)
        }
        SearchVerdict::Indeterminate => {
            writeln!(report, "RESULT: INDETERMINATE").unwrap();
            with_code(EXIT_CAP, report)
        }
        other => Err(CliError::Failure(format!("unexpected verdict {}", other))),
    }
}

fn theorem2(
    poly_text: Option<String>,
    file: Option<String>,
    n: usize,
    witness: Option<String>,
) -> Result<CommandOutcome, CliError> {
    let text = text_or_file(poly_text, file, "poly")?;
    let poly = parse_polynomial(&text).map_err(usage)?;
    let layout = theorem2_layout(&poly, n).map_err(usage)?;
    let system = theorem2_system(&poly, n).map_err(usage)?;

    let mut report = String::new();
    writeln!(report, "s = {}", layout.s).unwrap();
    writeln!(report, "m_f = {}", layout.m_f).unwrap();
    writeln!(
        report,
        "layout: psi=1..={} padding={}..={} chain={}..={} w={} y={} u={} v={}",
        layout.s,
        layout.padding.start(),
        layout.padding.end(),
        layout.chain.start(),
        layout.chain.end(),
        layout.w,
        layout.y,
        layout.u,
        layout.v
    )
    .unwrap();
    report.push_str(&system.render());

    match witness {
        None => {
            writeln!(
                report,
                "RESULT: system with {} variables, {} equations",
                system.n(),
                system.len()
            )
            .unwrap();
            ok(report)
        }
        Some(text) => {
            let input = IntTuple::parse_line(text.trim()).map_err(usage)?;
            let full =
                theorem2_witness(&poly, n, &input).map_err(|e| CliError::Failure(e.to_string()))?;
            let solves = system
                .check_solution(&full)
                .map_err(|e| CliError::Failure(e.to_string()))?;
            if !solves {
                return Err(CliError::Failure(
                    "assembled witness does not solve the system".to_string(),
                ));
            }
            writeln!(report, "witness: {}", full).unwrap();
            writeln!(
                report,
                "RESULT: witness verified; x1 = {}",
                fmt_int(full.coord(1))
            )
            .unwrap();
            ok(report)
        }
    }
}
