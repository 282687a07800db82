//! Command-line front end: Eulerian tables, cylinder dimensions with
//! oracle cross-checks, ratio experiments, the path/permutation codec,
//! seeded samplers, measure checks, and reinforced walks.
//!
//! Exit codes: 0 on success, 1 on usage or parse errors, 2 when a check or
//! oracle comparison fails.

use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;

use euler_adic::codec::{path_to_perm, perm_to_path, Permutation};
use euler_adic::combinatorics::{factorial, EulerianTable};
use euler_adic::dimension::{
    diagonal_schedule, dim_formula, dim_oracle_graph, dim_oracle_permutations, ratio_table,
    DimQuery, FormulaVariant, RatioRow,
};
use euler_adic::graph::{Cylinder, Turn, Vertex};
use euler_adic::measure::{
    check_consistency, check_invariance, permutation_frequency_test, reinforced_walk,
    AlphaSequence, CheckReport, MeasureSpec, PathSampler, WalkMode,
};
use euler_adic::{BigRational, BigUint};

const EXIT_CHECK_FAILURE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "euler-adic",
    version,
    about = "Exact combinatorics of the Euler graph: Eulerian numbers, adic order, cylinder dimensions, and invariant measures"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    #[default]
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum VariantArg {
    #[default]
    SlotCorrected,
    PaperLiteral,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum OracleArg {
    #[default]
    None,
    Perm,
    Graph,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum SpecArg {
    #[default]
    Symmetric,
    FiniteRank,
}

#[derive(Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum CheckArg {
    Invariance,
    Consistency,
    #[default]
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Negative,
    Positive,
}

#[derive(Subcommand)]
enum Command {
    /// Print the triangle of Eulerian numbers A(n,k) with a factorial
    /// row-sum cross-check
    Eulerian {
        /// Highest level to print
        #[arg(long, default_value_t = 10)]
        max_n: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// dim(F,(n,k)) by the regrouped formula, with optional oracles
    Dim {
        /// Cylinder as comma-separated L<i>/R<i> tokens, e.g. L1,R1,R1
        #[arg(long)]
        cylinder: String,
        /// Target level n
        #[arg(long)]
        n: u32,
        /// Target column k
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value_t)]
        variant: VariantArg,
        /// Independent recounts: perm enumerates permutations, graph counts
        /// paths
        #[arg(long, value_enum, default_value_t)]
        oracle: OracleArg,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Exact dimension ratios dim(F,.)/dim(F',.) along a schedule
    Ratio {
        #[arg(long)]
        cylinder_a: String,
        #[arg(long)]
        cylinder_b: String,
        /// Diagonal schedule levels; each target is (n, floor(n/2))
        #[arg(long, value_delimiter = ',', default_values_t = [10u32, 20, 40, 80])]
        diagonal: Vec<u32>,
        /// Explicit schedule as n:k pairs, e.g. 10:5,20:10 (overrides
        /// --diagonal)
        #[arg(long)]
        schedule: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Decode a permutation into its cylinder
    Perm2path {
        /// Digits for sizes up to 9 (e.g. 2341), comma-separated beyond
        permutation: String,
    },
    /// Encode a cylinder as its permutation
    Path2perm {
        /// Cylinder as L<i>/R<i> tokens; empty for the root
        #[arg(default_value = "")]
        cylinder: String,
    },
    /// Draw seeded random paths or permutations from a measure
    Sample {
        #[arg(long, value_enum, default_value_t)]
        spec: SpecArg,
        /// Sample root paths of this length
        #[arg(long, conflicts_with = "size")]
        length: Option<u32>,
        /// Sample permutations of {1,...,size}
        #[arg(long)]
        size: Option<u32>,
        #[arg(long, default_value_t = 1)]
        count: u64,
        /// Seed for the reproducible generator
        #[arg(long)]
        seed: u64,
        /// Tally permutation frequencies and run a uniformity chi-square
        /// test (requires --size)
        #[arg(long, requires = "size")]
        chi_square: bool,
        #[arg(long, default_value_t = 0.01)]
        significance: f64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Invariance and consistency checks for a measure
    Check {
        #[arg(long, value_enum, default_value_t)]
        spec: SpecArg,
        #[arg(long, default_value_t = 7)]
        depth: u32,
        /// Finite-rank weights alpha_1,alpha_2,... as p/q values,
        /// overriding the invariant sequence 1/(2(n+1))
        #[arg(long)]
        alphas: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        check: CheckArg,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Two-loop reinforced random walk; k_n counts how often the right
    /// loop was chosen among the first n steps
    Walk {
        /// negative = uniform steps on the standard graph (repeating a loop
        /// gets less likely), positive = on the reverse graph (more likely)
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        steps: u32,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version displays are successes; everything else is a
            // usage error.
            let code: u8 = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Eulerian { max_n, format } => cmd_eulerian(max_n, format),
        Command::Dim {
            cylinder,
            n,
            k,
            variant,
            oracle,
            format,
        } => cmd_dim(&cylinder, n, k, variant, oracle, format),
        Command::Ratio {
            cylinder_a,
            cylinder_b,
            diagonal,
            schedule,
            format,
        } => cmd_ratio(&cylinder_a, &cylinder_b, &diagonal, schedule.as_deref(), format),
        Command::Perm2path { permutation } => {
            let perm = Permutation::from_str(&permutation)?;
            let path = perm_to_path(&perm)?;
            println!("{path}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Path2perm { cylinder } => {
            let path = Cylinder::from_str(&cylinder)?;
            println!("{}", path_to_perm(&path));
            Ok(ExitCode::SUCCESS)
        }
        Command::Sample {
            spec,
            length,
            size,
            count,
            seed,
            chi_square,
            significance,
            format,
        } => cmd_sample(spec, length, size, count, seed, chi_square, significance, format),
        Command::Check {
            spec,
            depth,
            alphas,
            check,
            format,
        } => cmd_check(spec, depth, alphas.as_deref(), check, format),
        Command::Walk {
            mode,
            steps,
            seed,
            format,
        } => cmd_walk(mode, steps, seed, format),
    }
}

fn cmd_eulerian(max_n: u32, format: Format) -> Result<ExitCode> {
    let table = EulerianTable::with_max_level(max_n as usize);
    match format {
        Format::Table => {
            for n in 0..=max_n {
                let row = table.row(n);
                let sum: BigUint = row.iter().cloned().sum();
                let check = if sum == factorial(n as u64 + 1) { "ok" } else { "MISMATCH" };
                let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
                println!("n={n:<3} [{}]  row sum {sum} = (n+1)! {check}", cells.join(", "));
            }
        }
        Format::Csv => {
            println!("n,k,value");
            for n in 0..=max_n {
                for (k, value) in table.row(n).iter().enumerate() {
                    println!("{n},{k},{value}");
                }
            }
        }
        Format::Json => {
            let rows: Vec<Vec<String>> = (0..=max_n)
                .map(|n| table.row(n).iter().map(ToString::to_string).collect())
                .collect();
            println!("{}", serde_json::json!({ "max_n": max_n, "rows": rows }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_dim(
    cylinder: &str,
    n: u32,
    k: u32,
    variant: VariantArg,
    oracle: OracleArg,
    format: Format,
) -> Result<ExitCode> {
    let cylinder = Cylinder::from_str(cylinder)?;
    let target = Vertex::new(n, k)?;
    let query = DimQuery::new(cylinder, target)?;

    let mut values: Vec<(&str, BigUint)> = Vec::new();
    if matches!(variant, VariantArg::SlotCorrected | VariantArg::Both) {
        values.push((
            "formula(slot-corrected)",
            dim_formula(&query, FormulaVariant::SlotCorrected),
        ));
    }
    if matches!(variant, VariantArg::PaperLiteral | VariantArg::Both) {
        values.push((
            "formula(paper-literal)",
            dim_formula(&query, FormulaVariant::PaperLiteral),
        ));
    }

    let mut oracles: Vec<(&str, BigUint)> = Vec::new();
    if matches!(oracle, OracleArg::Perm | OracleArg::Both) {
        oracles.push((
            "oracle(permutations)",
            dim_oracle_permutations(&query).context("permutation oracle")?,
        ));
    }
    if matches!(oracle, OracleArg::Graph | OracleArg::Both) {
        oracles.push(("oracle(graph)", dim_oracle_graph(&query)));
    }

    let mut mismatch = false;
    if let Some((_, reference)) = oracles.first() {
        mismatch |= oracles.iter().any(|(_, v)| v != reference);
        mismatch |= values.iter().any(|(_, v)| v != reference);
    }

    match format {
        Format::Json => {
            let mut object = serde_json::Map::new();
            object.insert("cylinder".into(), query.cylinder().to_string().into());
            object.insert("pattern".into(), query.pattern().to_string().into());
            object.insert("n".into(), n.into());
            object.insert("k".into(), k.into());
            for (name, value) in values.iter().chain(&oracles) {
                object.insert((*name).into(), value.to_string().into());
            }
            object.insert("mismatch".into(), mismatch.into());
            println!("{}", serde_json::Value::Object(object));
        }
        _ => {
            println!(
                "cylinder {} (pattern {}) at ({n},{k})",
                query.cylinder(),
                query.pattern()
            );
            for (name, value) in values.iter().chain(&oracles) {
                println!("  {name} = {value}");
            }
            if mismatch {
                println!("  MISMATCH against oracle value");
            }
        }
    }
    Ok(if mismatch {
        ExitCode::from(EXIT_CHECK_FAILURE)
    } else {
        ExitCode::SUCCESS
    })
}

fn parse_schedule(text: &str) -> Result<Vec<Vertex>> {
    text.split(',')
        .map(|pair| {
            let (n, k) = pair
                .trim()
                .split_once(':')
                .ok_or_else(|| anyhow!("schedule entries are n:k, got {pair:?}"))?;
            Ok(Vertex::new(n.trim().parse()?, k.trim().parse()?)?)
        })
        .collect()
}

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

fn ratio_row_csv(row: &RatioRow) -> String {
    let (num, den, dev) = match (&row.ratio, &row.deviation) {
        (Some(ratio), Some(dev)) => (
            ratio.numer().to_string(),
            ratio.denom().to_string(),
            format!("{:e}", ratio_to_f64(dev)),
        ),
        _ => (String::new(), String::new(), String::new()),
    };
    format!(
        "{},{},{},{},{},{},{}",
        row.target.level(),
        row.target.column(),
        row.dim_a,
        row.dim_b,
        num,
        den,
        dev
    )
}

fn cmd_ratio(
    cylinder_a: &str,
    cylinder_b: &str,
    diagonal: &[u32],
    schedule: Option<&str>,
    format: Format,
) -> Result<ExitCode> {
    let a = Cylinder::from_str(cylinder_a)?;
    let b = Cylinder::from_str(cylinder_b)?;
    let schedule = match schedule {
        Some(text) => parse_schedule(text)?,
        None => diagonal_schedule(diagonal),
    };
    let rows = ratio_table(&a, &b, &schedule)?;

    match format {
        Format::Json => {
            let rows: Vec<serde_json::Value> = rows
                .iter()
                .map(|row| {
                    serde_json::json!({
                        "n": row.target.level(),
                        "k": row.target.column(),
                        "dim_a": row.dim_a.to_string(),
                        "dim_b": row.dim_b.to_string(),
                        "ratio": row.ratio.as_ref().map(ToString::to_string),
                        "abs_deviation": row.deviation.as_ref().map(ToString::to_string),
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::json!({ "cylinder_a": a.to_string(), "cylinder_b": b.to_string(), "rows": rows })
            );
        }
        _ => {
            println!("n,k,dim_F,dim_Fprime,ratio_num,ratio_den,abs_dev");
            for row in &rows {
                println!("{}", ratio_row_csv(row));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn measure_spec(spec: SpecArg, depth: u32, alphas: Option<&str>) -> Result<MeasureSpec> {
    Ok(match spec {
        SpecArg::Symmetric => MeasureSpec::Symmetric,
        SpecArg::FiniteRank => match alphas {
            None => MeasureSpec::finite_rank_harmonic(depth.max(1) as usize),
            Some(text) => {
                let alphas: Vec<BigRational> = text
                    .split(',')
                    .map(|t| {
                        BigRational::from_str(t.trim())
                            .map_err(|e| anyhow!("bad alpha {t:?}: {e}"))
                    })
                    .collect::<Result<_>>()?;
                MeasureSpec::FiniteRank(AlphaSequence::from_alphas(alphas)?)
            }
        },
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_sample(
    spec: SpecArg,
    length: Option<u32>,
    size: Option<u32>,
    count: u64,
    seed: u64,
    chi_square: bool,
    significance: f64,
    format: Format,
) -> Result<ExitCode> {
    let needed_depth = length.or(size.map(|s| s.saturating_sub(1))).unwrap_or(0);
    let spec = measure_spec(spec, needed_depth.max(1), None)?;

    if chi_square {
        let size = size.expect("clap enforces --size with --chi-square");
        if size > 6 {
            bail!("chi-square tallies all size! permutations; --size is capped at 6");
        }
        let (rows, test) = permutation_frequency_test(&spec, size, count, seed)?;
        let pass = test.passes_at(significance);
        match format {
            Format::Json => {
                let counts: Vec<serde_json::Value> = rows
                    .iter()
                    .map(|(p, c)| serde_json::json!({ "permutation": p.to_string(), "count": c }))
                    .collect();
                println!(
                    "{}",
                    serde_json::json!({
                        "spec": spec.name(),
                        "size": size,
                        "samples": count,
                        "seed": seed,
                        "statistic": test.statistic,
                        "degrees_of_freedom": test.degrees_of_freedom,
                        "p_value": test.p_value,
                        "significance": significance,
                        "status": if pass { "pass" } else { "fail" },
                        "counts": counts,
                    })
                );
            }
            _ => {
                for (perm, c) in &rows {
                    println!("{perm},{c}");
                }
                println!(
                    "chi-square statistic {:.4}, df {}, p {:.6} -> {}",
                    test.statistic,
                    test.degrees_of_freedom,
                    test.p_value,
                    if pass { "pass" } else { "fail" }
                );
            }
        }
        return Ok(if pass {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(EXIT_CHECK_FAILURE)
        });
    }

    let mut sampler = PathSampler::new(spec, seed);
    for _ in 0..count {
        match (length, size) {
            (Some(len), None) => println!("{}", sampler.sample_path(len)?),
            (None, Some(size)) => println!("{}", sampler.sample_permutation(size)?),
            _ => bail!("pass exactly one of --length (paths) or --size (permutations)"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_check(
    spec_arg: SpecArg,
    depth: u32,
    alphas: Option<&str>,
    check: CheckArg,
    format: Format,
) -> Result<ExitCode> {
    let spec = measure_spec(spec_arg, depth, alphas)?;
    let mut reports: Vec<CheckReport> = Vec::new();
    if matches!(check, CheckArg::Invariance | CheckArg::Both) {
        reports.push(check_invariance(&spec, depth)?);
    }
    if matches!(check, CheckArg::Consistency | CheckArg::Both) {
        reports.push(check_consistency(&spec, depth)?);
    }
    let all_passed = reports.iter().all(CheckReport::passed);

    match format {
        Format::Json => {
            let values: Vec<serde_json::Value> =
                reports.iter().map(CheckReport::to_json).collect();
            println!("{}", serde_json::Value::Array(values));
        }
        _ => {
            for report in &reports {
                println!(
                    "{} check on {} to depth {}: {}",
                    report.kind,
                    report.spec_name,
                    report.depth,
                    if report.passed() { "pass" } else { "fail" }
                );
                for violation in &report.violations {
                    let measures: Vec<String> =
                        violation.measures.iter().map(ToString::to_string).collect();
                    println!(
                        "  violation at {}: measures {}",
                        violation.vertex,
                        measures.join(" vs ")
                    );
                }
            }
        }
    }
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_CHECK_FAILURE)
    })
}

fn cmd_walk(mode: ModeArg, steps: u32, seed: u64, format: Format) -> Result<ExitCode> {
    let mode = match mode {
        ModeArg::Negative => WalkMode::Negative,
        ModeArg::Positive => WalkMode::Positive,
    };
    let walk = reinforced_walk(steps, mode, seed);
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::json!({
                    "mode": match mode { WalkMode::Negative => "negative", WalkMode::Positive => "positive" },
                    "seed": seed,
                    "steps": walk.steps(),
                    "final_column": walk.final_column(),
                    "final_ratio": walk.final_ratio(),
                    "columns": walk.columns,
                })
            );
        }
        Format::Csv => {
            println!("step,choice,k_n");
            for (i, (turn, column)) in walk.choices.iter().zip(&walk.columns).enumerate() {
                let label = match turn {
                    Turn::Left => "L",
                    Turn::Right => "R",
                };
                println!("{},{label},{column}", i + 1);
            }
        }
        Format::Table => {
            println!(
                "{} walk, {} steps, seed {}: final column {} (k_n/n = {:.4})",
                match mode {
                    WalkMode::Negative => "negative",
                    WalkMode::Positive => "positive",
                },
                walk.steps(),
                seed,
                walk.final_column(),
                walk.final_ratio()
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn schedule_parser() {
        let schedule = parse_schedule("10:5, 20:10").unwrap();
        assert_eq!(schedule.len(), 2);
        assert_eq!(schedule[1], Vertex::new(20, 10).unwrap());
        assert!(parse_schedule("10-5").is_err());
        assert!(parse_schedule("5:9").is_err());
    }
}
