//! Command-line tool for p-adic valuation trees of polynomial sequences:
//! evaluate valuations, print digit expansions, report roots over Z_p, and
//! build trees in ASCII, DOT, JSON, or LaTeX form.

mod document;
mod render;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use padic::{
    build_analytic_tree, build_empirical_tree, build_partial_tree, diff_trees, digits_from_zero,
    expand, is_padic_integer, parse, valuation_rat, zp_root_prefixes, FactoredPolynomial, Prime,
    Rational, TreeError,
};
use render::{render, Format, RenderConfig};
use std::collections::BTreeSet;
use std::process::ExitCode;

const EXIT_PARSE: u8 = 2;
const EXIT_PRIME: u8 = 3;
const EXIT_MISMATCH: u8 = 4;
const EXIT_DISAGREEMENT: u8 = 5;

#[derive(Parser)]
#[command(
    name = "padic",
    version,
    about = "Valuation trees of polynomial sequences over the p-adic integers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the p-adic valuation of f(n)
    Val {
        /// Polynomial in n, e.g. "3/2*(n-9)*(3n+1)"
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Integer to evaluate at
        #[arg(long, allow_hyphen_values = true)]
        at: String,
        /// Prime p
        #[arg(short, long)]
        prime: u64,
    },
    /// Print the digit expansion of a rational number
    Expand {
        /// Rational number, e.g. "5/2"
        #[arg(allow_hyphen_values = true)]
        rational: String,
        /// Prime p
        #[arg(short, long)]
        prime: u64,
        /// Number of digits to print
        #[arg(long, default_value_t = 5)]
        digits: usize,
    },
    /// Build a valuation tree and render it
    Tree {
        /// Polynomial in n
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Prime p
        #[arg(short, long)]
        prime: u64,
        /// Node classification engine
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
        /// Tree depth in digit levels
        #[arg(long, default_value_t = 5)]
        depth: usize,
        /// Output format
        #[arg(long, value_enum, default_value_t = FormatArg::Ascii)]
        format: FormatArg,
        /// Extra levels the empirical certificates may descend
        #[arg(long = "extra-depth", default_value_t = 4)]
        extra_depth: usize,
        /// Omit branch labels from ascii, dot, and latex output
        #[arg(long)]
        no_branch_labels: bool,
    },
    /// Compare the analytic and empirical trees of a factorable polynomial
    Diff {
        /// Polynomial in n
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Prime p
        #[arg(short, long)]
        prime: u64,
        /// Tree depth in digit levels
        #[arg(long, default_value_t = 5)]
        depth: usize,
    },
    /// Report rational roots and lifted residual root prefixes
    Roots {
        /// Polynomial in n
        #[arg(allow_hyphen_values = true)]
        expr: String,
        /// Prime p
        #[arg(short, long)]
        prime: u64,
        /// Digits of each root to display
        #[arg(long, default_value_t = 5)]
        depth: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum EngineArg {
    Auto,
    Analytic,
    Empirical,
    Partial,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Ascii,
    Dot,
    Json,
    Latex,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Ascii => Format::Ascii,
            FormatArg::Dot => Format::Dot,
            FormatArg::Json => Format::Json,
            FormatArg::Latex => Format::Latex,
        }
    }
}

type CmdError = (u8, String);

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err((code, msg)) => {
            if !msg.is_empty() {
                eprintln!("error: {msg}");
            }
            ExitCode::from(code)
        }
    }
}

fn checked_prime(p: u64) -> Result<Prime, CmdError> {
    Prime::new(p).map_err(|e| (EXIT_PRIME, e.to_string()))
}

fn parse_expr(text: &str) -> Result<FactoredPolynomial, CmdError> {
    parse(text).map_err(|e| (EXIT_PARSE, e.to_string()))
}

fn parse_rational(text: &str) -> Result<Rational, CmdError> {
    let (n, d) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let bad = || (EXIT_PARSE, format!("invalid rational number '{text}'"));
    let numer: BigInt = n.trim().parse().map_err(|_| bad())?;
    let denom: BigInt = d.trim().parse().map_err(|_| bad())?;
    if denom.is_zero() {
        return Err((EXIT_PARSE, format!("zero denominator in '{text}'")));
    }
    Ok(Rational::new(numer, denom))
}

fn tree_error(e: TreeError) -> CmdError {
    match e {
        TreeError::ZeroPolynomial | TreeError::ZeroDepth => (EXIT_PARSE, e.to_string()),
        other => (EXIT_MISMATCH, other.to_string()),
    }
}

/// Branch labels and witnesses are emitted as 64-bit integers; reject
/// prime/depth combinations whose class representatives could overflow them.
fn labels_fit(p: u64, depth: usize, extra_depth: usize) -> bool {
    u32::try_from(depth + extra_depth + 3)
        .ok()
        .and_then(|exp| (p as u128).checked_pow(exp))
        .map(|bound| bound <= u64::MAX as u128)
        .unwrap_or(false)
}

fn fmt_digits(digits: &[u64]) -> String {
    let parts: Vec<String> = digits.iter().map(u64::to_string).collect();
    format!("[{}]", parts.join(", "))
}

fn run(cli: Cli) -> Result<(), CmdError> {
    match cli.command {
        Command::Val { expr, at, prime } => {
            let p = checked_prime(prime)?;
            let f = parse_expr(&expr)?;
            let n: BigInt = at
                .trim()
                .parse()
                .map_err(|_| (EXIT_PARSE, format!("invalid integer '{at}'")))?;
            let value = f.evaluate(&Rational::from(n));
            println!("{}", valuation_rat(&value, p));
            Ok(())
        }
        Command::Expand {
            rational,
            prime,
            digits,
        } => {
            let p = checked_prime(prime)?;
            let r = parse_rational(&rational)?;
            let e = expand(&r, p, digits).map_err(|e| (EXIT_PARSE, e.to_string()))?;
            println!("{e}");
            Ok(())
        }
        Command::Tree {
            expr,
            prime,
            engine,
            depth,
            format,
            extra_depth,
            no_branch_labels,
        } => {
            let p = checked_prime(prime)?;
            let f = parse_expr(&expr)?;
            if !labels_fit(prime, depth, extra_depth) {
                return Err((
                    EXIT_MISMATCH,
                    format!("branch labels for p={prime} at depth {depth} overflow 64-bit integers; reduce --depth or --extra-depth"),
                ));
            }
            let config = RenderConfig {
                format: format.into(),
                depth,
                show_branch_labels: !no_branch_labels,
                max_extra_depth: extra_depth,
            };
            let engine = match engine {
                EngineArg::Auto => {
                    if f.is_completely_factored() {
                        EngineArg::Analytic
                    } else {
                        EngineArg::Partial
                    }
                }
                chosen => chosen,
            };
            let tree = match engine {
                EngineArg::Analytic => build_analytic_tree(&f, p, config.depth),
                EngineArg::Empirical => {
                    build_empirical_tree(&f.expand(), p, config.depth, config.max_extra_depth)
                }
                EngineArg::Partial => build_partial_tree(
                    &f,
                    p,
                    config.depth,
                    config.depth + 2,
                    config.max_extra_depth,
                ),
                EngineArg::Auto => unreachable!("auto resolved above"),
            }
            .map_err(tree_error)?;
            print!("{}", render(&tree, &config));
            Ok(())
        }
        Command::Diff { expr, prime, depth } => {
            let p = checked_prime(prime)?;
            let f = parse_expr(&expr)?;
            if !f.is_completely_factored() {
                return Err((
                    EXIT_MISMATCH,
                    "comparison requires a completely factorable polynomial".to_owned(),
                ));
            }
            let analytic = build_analytic_tree(&f, p, depth).map_err(tree_error)?;
            let empirical = build_empirical_tree(&f.expand(), p, depth, 4).map_err(tree_error)?;
            let diff = diff_trees(&analytic, &empirical).map_err(tree_error)?;
            for (id, a, b) in &diff.disagreements {
                println!("node {id}: analytic {a}, empirical {b}");
            }
            if !diff.incomparable.is_empty() {
                println!("{} unresolved nodes skipped", diff.incomparable.len());
            }
            println!("{} disagreements", diff.disagreements.len());
            if diff.is_agreement() {
                Ok(())
            } else {
                Err((EXIT_DISAGREEMENT, String::new()))
            }
        }
        Command::Roots { expr, prime, depth } => {
            let p = checked_prime(prime)?;
            let f = parse_expr(&expr)?;
            if f.is_zero() {
                return Err((
                    EXIT_PARSE,
                    "the zero polynomial has no root list".to_owned(),
                ));
            }
            if depth == 0 {
                return Err((EXIT_PARSE, "depth must be at least 1".to_owned()));
            }
            let mut printed = false;
            let distinct: BTreeSet<Rational> =
                f.linear_factors().iter().map(|fac| fac.root()).collect();
            for root in &distinct {
                printed = true;
                if is_padic_integer(root, p) {
                    let digits = digits_from_zero(root, p, depth).expect("p-adic integer");
                    println!("{root}: in Z_{}, digits {}", p.get(), fmt_digits(&digits));
                } else {
                    println!("{root}: not in Z_{}", p.get());
                }
            }
            if !f.is_completely_factored() {
                printed = true;
                let prefixes = zp_root_prefixes(f.residual(), p, depth)
                    .map_err(|e| (EXIT_MISMATCH, e.to_string()))?;
                if prefixes.is_empty() {
                    println!("residual: no root prefixes mod {}^{depth}", p.get());
                }
                for prefix in &prefixes {
                    println!(
                        "residual prefix {}: {}",
                        fmt_digits(prefix.digits()),
                        if prefix.certified() {
                            "certified"
                        } else {
                            "uncertified"
                        }
                    );
                }
            }
            if !printed {
                println!("no roots");
            }
            Ok(())
        }
    }
}
