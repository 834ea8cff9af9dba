//! `g2-minaff`: exact computations around graded limits of minimal
//! affinizations in type G2.
//!
//! Every subcommand is a pure function of its arguments: output is
//! deterministic and byte-identical across runs. `--json` switches to a
//! machine-readable rendering of the same numbers; `--quiet` drops
//! informational text (headers, per-check progress) but never results.
//!
//! Exit codes: 0 success, 1 computation error (e.g. integer overflow),
//! 2 usage error, 3 self-test failure.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use g2_minaff::affine::{demazure_sequence, rho_table};
use g2_minaff::character::{weyl_dimension, IrrDecomposition};
use g2_minaff::limit::{convergence_check, product_series};
use g2_minaff::minaff::{
    decompose_graded_limit, factorial_matrix_det, graded_limit_character, graded_limit_dimension,
    highest_l_weight_monomial, kr_decomposition, relations_of_m, HighestWeight, MonomialVariant,
};
use g2_minaff::selftest;
use g2_minaff::{Error, Node};

#[derive(Parser)]
#[command(
    name = "g2-minaff",
    version,
    about = "Decompositions, characters and limit characters of graded limits \
             of minimal affinizations in type G2, in exact arithmetic"
)]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Suppress informational lines; results are still printed.
    #[arg(long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decompose the graded limit L(k, l) into irreducible G2-modules.
    Decompose { k: u32, l: u32 },
    /// Print the formal character of L(k, l), one weight per line.
    Character { k: u32, l: u32 },
    /// Print the dimension of L(k, l).
    Dim { k: u32, l: u32 },
    /// Print the highest ℓ-weight monomial of the minimal affinization.
    Monomial {
        k: u32,
        l: u32,
        #[arg(long, value_enum, default_value_t = VariantArg::First)]
        variant: VariantArg,
    },
    /// List the defining relations of the graded limit.
    Relations { k: u32, l: u32 },
    /// Tabulate ρ(γ) over positive real affine roots with δ-coefficient ≤ p.
    RhoTable {
        k: u32,
        l: u32,
        /// Largest δ-coefficient to tabulate.
        #[arg(long, default_value_t = 4, value_parser = clap::value_parser!(i64).range(1..))]
        p_max: i64,
    },
    /// Print the Demazure factor sequence (ξ1, …, ξp) attached to L(k, l).
    DemazureSeq { k: u32, l: u32 },
    /// Decompose the Kirillov–Reshetikhin graded limit at one node.
    Kr {
        /// Dynkin node (1 = long simple root, 2 = short simple root).
        #[arg(value_parser = clap::value_parser!(u8).range(1..=2))]
        node: u8,
        n: u32,
    },
    /// Check stabilization of normalized characters against the limit
    /// product series on a truncation box.
    LimitCheck {
        /// Dynkin nodes spanning the growing direction (1, 2, or both).
        #[arg(required = true, num_args = 1..=2, value_parser = clap::value_parser!(u8).range(1..=2))]
        nodes: Vec<u8>,
        /// Truncation box degree D: keep e^{-(m α1 + n α2)} with m, n ≤ D.
        #[arg(long = "box", default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
        box_degree: u32,
        /// Largest n to try when searching for two consecutive matches.
        #[arg(long, default_value_t = 12, value_parser = clap::value_parser!(u32).range(1..))]
        n_max: u32,
    },
    /// Determinant of the (r+1)×(r+1) reciprocal-factorial matrix.
    Lemma46 {
        #[arg(value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
    },
    /// Run the library's invariant suite at a given scale.
    Selftest {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        scale: u32,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum VariantArg {
    First,
    Second,
}

impl From<VariantArg> for MonomialVariant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::First => MonomialVariant::First,
            VariantArg::Second => MonomialVariant::Second,
        }
    }
}

fn node_of(raw: u8) -> Node {
    match raw {
        1 => Node::One,
        2 => Node::Two,
        _ => unreachable!("validated by clap"),
    }
}

fn print_json(value: &serde_json::Value) {
    println!("{value}");
}

/// Shared renderer for `decompose` and `kr`.
fn render_decomposition(dec: &IrrDecomposition, cli: &Cli) -> Result<(), Error> {
    let total = dec.total_dimension()?;
    if cli.json {
        let mut summands = Vec::new();
        for (w, m) in dec.iter_desc() {
            summands.push(json!({
                "weight": w,
                "mult": m,
                "dim": weyl_dimension(w)?,
            }));
        }
        print_json(&json!({ "summands": summands, "total_dim": total }));
    } else {
        for (w, m) in dec.iter_desc() {
            println!("V({w}) × {m}  (dim {})", weyl_dimension(w)?);
        }
        println!("total: {total}");
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.cmd {
        Cmd::Decompose { k, l } => {
            let dec = decompose_graded_limit(HighestWeight::new(*k, *l));
            render_decomposition(&dec, cli)?;
        }
        Cmd::Character { k, l } => {
            let ch = graded_limit_character(HighestWeight::new(*k, *l))?;
            if cli.json {
                print_json(&serde_json::to_value(&ch).expect("character serializes"));
            } else {
                if !cli.quiet {
                    println!("character of L({k}, {l}): {} weights", ch.support_len());
                }
                for (w, c) in ch.iter_desc() {
                    println!("{w}: {c}");
                }
            }
        }
        Cmd::Dim { k, l } => {
            let dim = graded_limit_dimension(HighestWeight::new(*k, *l))?;
            if cli.json {
                print_json(&json!({ "k": k, "l": l, "dim": dim }));
            } else {
                println!("{dim}");
            }
        }
        Cmd::Monomial { k, l, variant } => {
            let m = highest_l_weight_monomial(HighestWeight::new(*k, *l), (*variant).into());
            if cli.json {
                print_json(&serde_json::to_value(&m).expect("monomial serializes"));
            } else {
                println!("{m}");
            }
        }
        Cmd::Relations { k, l } => {
            let rels = relations_of_m(HighestWeight::new(*k, *l));
            if cli.json {
                print_json(&serde_json::to_value(&rels).expect("relations serialize"));
            } else {
                for r in &rels {
                    println!("{r}");
                }
            }
        }
        Cmd::RhoTable { k, l, p_max } => {
            let lambda = HighestWeight::new(*k, *l);
            let table = rho_table(lambda, *p_max);
            if cli.json {
                let rows: Vec<_> = table
                    .iter()
                    .map(|(g, v)| json!({ "root": g, "rho": v }))
                    .collect();
                print_json(&json!({ "k": k, "l": l, "p_max": p_max, "rows": rows }));
            } else {
                let mut nonzero = 0u32;
                for (g, v) in &table {
                    if *v != 0 {
                        println!("ρ({g}) = {v}");
                        nonzero += 1;
                    }
                }
                if nonzero == 0 && !cli.quiet {
                    println!("all ρ values vanish for δ-coefficient ≤ {p_max}");
                }
            }
        }
        Cmd::DemazureSeq { k, l } => {
            let seq = demazure_sequence(HighestWeight::new(*k, *l));
            if cli.json {
                print_json(&serde_json::to_value(&seq).expect("sequence serializes"));
            } else if seq.factors().is_empty() {
                println!("(empty sequence)");
            } else {
                for f in seq.factors() {
                    println!("({}, level {})", f.weight, f.level);
                }
            }
        }
        Cmd::Kr { node, n } => {
            let dec = kr_decomposition(node_of(*node), *n);
            render_decomposition(&dec, cli)?;
        }
        Cmd::LimitCheck {
            nodes,
            box_degree,
            n_max,
        } => {
            let mut js: Vec<Node> = nodes.iter().map(|&v| node_of(v)).collect();
            js.sort_unstable_by_key(|n| n.index());
            js.dedup();
            let stabilized = convergence_check(&js, *box_degree, *n_max)?;
            let series = product_series(&js, *box_degree)?;
            if cli.json {
                let coeffs: Vec<_> = series
                    .terms()
                    .map(|(m, n, c)| json!({ "m": m, "n": n, "c": c }))
                    .collect();
                print_json(&json!({
                    "nodes": js.iter().map(|n| n.index()).collect::<Vec<_>>(),
                    "box": box_degree,
                    "n_max": n_max,
                    "stabilized_at": stabilized,
                    "series": { "D": box_degree, "coeffs": coeffs },
                }));
            } else {
                if !cli.quiet {
                    let labels: Vec<String> =
                        js.iter().map(|n| n.index().to_string()).collect();
                    println!(
                        "nodes {{{}}}, box degree {box_degree}, n ≤ {n_max}",
                        labels.join(", ")
                    );
                }
                match stabilized {
                    Some(n) => println!("stabilized at n = {n}"),
                    None => println!("no stabilization for n ≤ {n_max}"),
                }
                if !cli.quiet {
                    println!("limit product series coefficients (m, n) → c:");
                }
                for (m, n, c) in series.terms() {
                    println!("({m}, {n}): {c}");
                }
            }
        }
        Cmd::Lemma46 { r } => {
            let det = factorial_matrix_det(*r);
            let nonzero = !num_traits::Zero::is_zero(&det);
            if cli.json {
                print_json(&json!({ "r": r, "det": det.to_string(), "nonzero": nonzero }));
            } else {
                println!("det = {det}, nonzero: {nonzero}");
            }
        }
        Cmd::Selftest { scale } => {
            let checks = selftest::run_all(*scale);
            let all_passed = checks.iter().all(|c| c.passed);
            if cli.json {
                let rows: Vec<_> = checks
                    .iter()
                    .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                    .collect();
                print_json(&json!({ "scale": scale, "passed": all_passed, "checks": rows }));
            } else {
                for c in &checks {
                    if c.passed {
                        if !cli.quiet {
                            println!("ok   {}", c.name);
                        }
                    } else {
                        println!("FAIL {}: {}", c.name, c.detail);
                    }
                }
                let passed = checks.iter().filter(|c| c.passed).count();
                println!(
                    "selftest: {passed}/{} checks passed (scale {scale})",
                    checks.len()
                );
            }
            if !all_passed {
                return Ok(ExitCode::from(3));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Die silently on a closed pipe (e.g. `g2-minaff character 9 9 | head`)
/// instead of panicking mid-print.
#[cfg(unix)]
fn reset_sigpipe() {
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
