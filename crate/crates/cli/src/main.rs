//! `asep` — exact stationary distributions of finite exclusion processes,
//! their partition polynomials by three independent routes, and stability
//! and negative-dependence reports. All rationals are exact `p/q` values;
//! every subcommand is deterministic given its flags and seed.

use asep_core::analysis::{
    concentration_comparison, negative_association_exact, pairwise_negative_correlation,
    particle_count, rayleigh_difference, rayleigh_negative_witness, stability_sample,
    sturm_real_rooted,
};
use asep_core::ansatz::{ansatz_partition, BracketTable};
use asep_core::checks::{all_passed, default_q_grid, explore_q, run_suite, SuiteOptions, SUITE_NAMES};
use asep_core::eulerian::{asep_partition_perm, excedance_partition, f_direct, f_recursive};
use asep_core::json::{
    arcs_to_csv, chain_spec_from_json, distribution_to_csv, distribution_to_json,
    param_poly_to_json, site_poly_from_json, site_poly_to_json, stability_report_to_json,
    tree_from_json, tree_to_json,
};
use asep_core::markov::{gillespie, stationary_exact, total_variation, ChainSpec, Distribution};
use asep_core::perm::{format_permutation, parse_permutation};
use asep_core::rational::{format_rat, int, parse_rat, Rat};
use asep_core::tree::AltTree;
use asep_core::word::OccupancyWord;
use asep_core::SitePoly;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;

fn rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

#[derive(Parser)]
#[command(
    name = "asep",
    about = "Exact exclusion-process stationary distributions, partition polynomials, and dependence checks",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct ChainArgs {
    /// Number of sites
    #[arg(long)]
    n: usize,
    /// Leftward hop rate
    #[arg(long, value_parser = rat_arg, default_value = "1")]
    q: Rat,
    /// Entry rate at site 1
    #[arg(long, value_parser = rat_arg, default_value = "1")]
    alpha: Rat,
    /// Exit rate at site n
    #[arg(long, value_parser = rat_arg, default_value = "1")]
    beta: Rat,
    /// Exit rate at site 1
    #[arg(long, value_parser = rat_arg, default_value = "0")]
    gamma: Rat,
    /// Entry rate at site n
    #[arg(long, value_parser = rat_arg, default_value = "0")]
    delta: Rat,
    /// Read the full rate specification from a chain JSON file instead
    #[arg(long, conflicts_with_all = ["q", "alpha", "beta", "gamma", "delta"])]
    chain: Option<PathBuf>,
}

impl ChainArgs {
    fn spec(&self) -> Result<ChainSpec, String> {
        match &self.chain {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
                let value: serde_json::Value =
                    serde_json::from_str(&text).map_err(|e| e.to_string())?;
                chain_spec_from_json(&value).map_err(|e| e.to_string())
            }
            None => ChainSpec::asep_line(
                self.n,
                &self.q,
                &self.alpha,
                &self.beta,
                &self.gamma,
                &self.delta,
            )
            .map_err(|e| e.to_string()),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Exact stationary distribution of the chain
    Stationary {
        #[command(flatten)]
        chain: ChainArgs,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Stochastic simulation of the chain
    Simulate {
        #[command(flatten)]
        chain: ChainArgs,
        /// Burn-in time before the first sample
        #[arg(long, value_parser = rat_arg, default_value = "50")]
        burn: Rat,
        /// Number of recorded samples
        #[arg(long, default_value = "10000")]
        samples: usize,
        /// Time between samples
        #[arg(long, value_parser = rat_arg, default_value = "1/2")]
        gap: Rat,
        #[arg(long, default_value = "0")]
        seed: u64,
        /// Also print the exact total-variation distance to the exact
        /// stationary distribution
        #[arg(long)]
        compare: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Bracket value of one occupancy word
    Ansatz {
        /// 0/1 word, e.g. 0110
        #[arg(long)]
        word: String,
        #[arg(long, value_parser = rat_arg)]
        alpha: Option<Rat>,
        #[arg(long, value_parser = rat_arg)]
        beta: Option<Rat>,
        #[arg(long, value_parser = rat_arg)]
        q: Option<Rat>,
        #[arg(long, value_parser = rat_arg, default_value = "1")]
        xi: Rat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Partition polynomial by one of the independent routes
    Partition {
        #[arg(long, value_enum)]
        method: PartitionMethod,
        #[arg(long)]
        n: usize,
        /// Color count for the colored route
        #[arg(long, default_value = "2")]
        r: u32,
        #[arg(long, value_parser = rat_arg)]
        alpha: Option<Rat>,
        #[arg(long, value_parser = rat_arg)]
        beta: Option<Rat>,
        #[arg(long, value_parser = rat_arg)]
        q: Option<Rat>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Two-variable Eulerian polynomial for colored permutations
    Eulerian {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "2")]
        r: u32,
        /// Compute through the derivative recursion instead of the sum
        #[arg(long)]
        recursive: bool,
        /// Keep the anti-excedance variables (y); default sets y = 1
        #[arg(long)]
        y: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Stability / dependence checks on a polynomial file
    Analyze {
        /// Polynomial JSON file
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        check: AnalysisCheck,
        /// Substitute a parameter before the check, e.g. --set a=1/2
        #[arg(long = "set", value_name = "NAME=VALUE")]
        set: Vec<String>,
        #[arg(long, default_value = "10000")]
        samples: usize,
        #[arg(long, default_value = "0")]
        seed: u64,
        /// Variable pair for the rayleigh check
        #[arg(long, default_value = "1")]
        i: usize,
        #[arg(long, default_value = "2")]
        j: usize,
        /// Deviation for the concentration check
        #[arg(long, value_parser = rat_arg, default_value = "1")]
        a: Rat,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run a named verification suite; exit code 0 means every check passed
    Verify {
        /// One of the named suites, or "all"
        #[arg(long)]
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: Option<u32>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Per-q verdict table for the open stability question
    ExploreQ {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = rat_arg, default_value = "1")]
        alpha: Rat,
        #[arg(long, value_parser = rat_arg, default_value = "1")]
        beta: Rat,
        /// Comma-separated q values; defaults to a 10-point grid
        #[arg(long)]
        grid: Option<String>,
        #[arg(long, default_value = "2000")]
        samples: usize,
        #[arg(long, default_value = "0")]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Arc diagram of a permutation's tree
    Diagram {
        /// Permutation in cycle or one-line notation
        #[arg(long)]
        perm: String,
        /// Color count (1 = plain)
        #[arg(long, default_value = "1")]
        r: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Tree of a permutation, or permutation of a tree file
    Tree {
        #[arg(long, conflicts_with = "input")]
        perm: Option<String>,
        /// Tree JSON file to invert back to a permutation
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value = "1")]
        r: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PartitionMethod {
    /// Exact linear solve of the chain
    Solve,
    /// Word-bracket recursion
    Ansatz,
    /// Plain permutation sum
    Perm,
    /// Colored permutation sum
    Colored,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AnalysisCheck {
    /// Exact real-rootedness of the diagonal restriction
    Sturm,
    /// Upper-half-plane zero search
    Stability,
    /// Rayleigh difference nonnegativity (sampled)
    Rayleigh,
    /// Exact pairwise negative correlation
    Pairwise,
    /// Exhaustive negative association
    Na,
    /// Concentration tail against the exponential bound
    Pp,
}

fn write_output(path: &Option<PathBuf>, content: &str) -> Result<(), String> {
    match path {
        Some(p) => std::fs::write(p, content).map_err(|e| e.to_string()),
        None => {
            print!("{content}");
            if !content.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn load_poly(
    input: &PathBuf,
    substitutions: &[String],
) -> Result<SitePoly, String> {
    let text = std::fs::read_to_string(input).map_err(|e| e.to_string())?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    let poly = site_poly_from_json(&value).map_err(|e| e.to_string())?;
    if substitutions.is_empty() {
        return Ok(poly);
    }
    let mut values: Vec<Option<Rat>> = vec![None; poly.params().len()];
    for item in substitutions {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| format!("--set wants NAME=VALUE, got {item}"))?;
        let idx = poly
            .params()
            .index(name.trim())
            .ok_or_else(|| format!("unknown parameter {name}"))?;
        values[idx] = Some(parse_rat(value.trim()).map_err(|e| e.to_string())?);
    }
    poly.substitute_params(&values).map_err(|e| e.to_string())
}

fn distribution_of(poly: &SitePoly) -> Result<Distribution, String> {
    if poly.has_y() {
        return Err("distribution checks need an x-only polynomial".into());
    }
    let weights: Result<Vec<Rat>, String> = (0..1u64 << poly.n())
        .map(|s| {
            poly.coefficient(s, 0)
                .constant_value()
                .map_err(|e| e.to_string())
        })
        .collect();
    Distribution::new(poly.n(), weights?)
        .map_err(|e| e.to_string())?
        .normalized()
        .map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Stationary {
            chain,
            format,
            output,
        } => {
            let spec = chain.spec()?;
            let dist = stationary_exact(&spec).map_err(|e| e.to_string())?;
            let content = match format {
                OutputFormat::Csv => distribution_to_csv(&dist),
                OutputFormat::Json => pretty(&distribution_to_json(&dist)),
            };
            write_output(&output, &content)?;
        }
        Command::Simulate {
            chain,
            burn,
            samples,
            gap,
            seed,
            compare,
            output,
        } => {
            let spec = chain.spec()?;
            let result = gillespie(&spec, &burn, samples, &gap, seed).map_err(|e| e.to_string())?;
            let mut content = distribution_to_csv(&result.distribution);
            if let Some(state) = result.absorbed_at {
                content.push_str(&format!(
                    "# absorbed at {}\n",
                    OccupancyWord::from_mask(state, spec.n())
                ));
            }
            if compare {
                let exact = stationary_exact(&spec).map_err(|e| e.to_string())?;
                let tv =
                    total_variation(&result.distribution, &exact).map_err(|e| e.to_string())?;
                content.push_str(&format!("# total-variation,{}\n", format_rat(&tv)));
            }
            write_output(&output, &content)?;
        }
        Command::Ansatz {
            word,
            alpha,
            beta,
            q,
            xi,
            output,
        } => {
            let word: OccupancyWord = word.parse().map_err(|e| format!("{e}"))?;
            let mut table = BracketTable::new();
            let value = table.bracket(&word);
            let content = match (alpha, beta, q) {
                (Some(alpha), Some(beta), Some(q)) => {
                    let v = value
                        .eval(&[alpha, beta, q, xi])
                        .map_err(|e| e.to_string())?;
                    format!("{}\n", format_rat(&v))
                }
                (None, None, None) => pretty(&json!({
                    "word": word.to_string(),
                    "params": table.params().names(),
                    "coeff": param_poly_to_json(&value),
                })),
                _ => return Err("give all of --alpha, --beta, --q or none".into()),
            };
            write_output(&output, &content)?;
        }
        Command::Partition {
            method,
            n,
            r,
            alpha,
            beta,
            q,
            output,
        } => {
            let poly = match method {
                PartitionMethod::Solve => {
                    let alpha = alpha.ok_or("solve needs --alpha")?;
                    let beta = beta.ok_or("solve needs --beta")?;
                    let q = q.ok_or("solve needs --q")?;
                    let zero = int(0);
                    let spec = ChainSpec::asep_line(n, &q, &alpha, &beta, &zero, &zero)
                        .map_err(|e| e.to_string())?;
                    stationary_exact(&spec)
                        .map_err(|e| e.to_string())?
                        .partition_polynomial()
                }
                PartitionMethod::Ansatz => {
                    let mut table = BracketTable::new();
                    let sym = ansatz_partition(n, &mut table);
                    match (alpha, beta, q) {
                        (Some(alpha), Some(beta), Some(q)) => sym
                            .to_numeric(&[alpha, beta, q, int(1)])
                            .map_err(|e| e.to_string())?,
                        _ => sym,
                    }
                }
                PartitionMethod::Perm | PartitionMethod::Colored => {
                    let r = if method == PartitionMethod::Perm { 1 } else { r };
                    if method == PartitionMethod::Colored && r < 2 {
                        return Err("colored needs --r at least 2".into());
                    }
                    let sym = asep_partition_perm(n, r);
                    match (alpha, beta, q) {
                        (Some(alpha), Some(beta), Some(q)) => sym
                            .to_numeric(&[alpha.recip(), beta.recip(), q])
                            .map_err(|e| e.to_string())?,
                        _ => sym,
                    }
                }
            };
            write_output(&output, &pretty(&site_poly_to_json(&poly)))?;
        }
        Command::Eulerian {
            n,
            r,
            recursive,
            y,
            output,
        } => {
            let poly = if recursive {
                f_recursive(n, r)
            } else {
                f_direct(n, r)
            };
            let poly = if y { poly } else { excedance_partition(n, r) };
            write_output(&output, &pretty(&site_poly_to_json(&poly)))?;
        }
        Command::Analyze {
            input,
            check,
            set,
            samples,
            seed,
            i,
            j,
            a,
            output,
        } => {
            let poly = load_poly(&input, &set)?;
            let report = match check {
                AnalysisCheck::Sturm => {
                    let diag = poly
                        .diagonal()
                        .univariate_in_x()
                        .map_err(|e| e.to_string())?;
                    let verdict = sturm_real_rooted(&diag).map_err(|e| e.to_string())?;
                    json!({ "check": "sturm", "real_rooted": verdict })
                }
                AnalysisCheck::Stability => {
                    let report =
                        stability_sample(&poly, samples, seed).map_err(|e| e.to_string())?;
                    let mut v = stability_report_to_json(&report);
                    v["check"] = json!("stability");
                    v
                }
                AnalysisCheck::Rayleigh => {
                    let delta = rayleigh_difference(&poly, i, j).map_err(|e| e.to_string())?;
                    let witness = rayleigh_negative_witness(&delta, samples, seed);
                    json!({
                        "check": "rayleigh",
                        "i": i,
                        "j": j,
                        "difference": param_poly_to_json(&delta),
                        "negative_witness": witness
                            .map(|w| w.iter().map(format_rat).collect::<Vec<_>>()),
                    })
                }
                AnalysisCheck::Pairwise => {
                    let mu = distribution_of(&poly)?;
                    let report = pairwise_negative_correlation(&mu).map_err(|e| e.to_string())?;
                    json!({
                        "check": "pairwise",
                        "holds": report.holds,
                        "witness": report.witness.map(|(i, j, joint, prod)| json!({
                            "i": i, "j": j,
                            "joint": format_rat(&joint),
                            "product": format_rat(&prod),
                        })),
                    })
                }
                AnalysisCheck::Na => {
                    let mu = distribution_of(&poly)?;
                    let report = negative_association_exact(&mu).map_err(|e| e.to_string())?;
                    json!({
                        "check": "na",
                        "holds": report.holds,
                        "witness": report.witness.map(|w| json!({
                            "block_a": w.block_a,
                            "block_b": w.block_b,
                            "covariance": format_rat(&w.covariance),
                        })),
                    })
                }
                AnalysisCheck::Pp => {
                    let mu = distribution_of(&poly)?;
                    let f = particle_count(mu.n());
                    let (tail, bound) =
                        concentration_comparison(&mu, &f, &a).map_err(|e| e.to_string())?;
                    json!({
                        "check": "pp",
                        "a": format_rat(&a),
                        "tail": format_rat(&tail),
                        "bound_upper": format_rat(&bound),
                        "tail_within_bound": tail <= bound,
                    })
                }
            };
            write_output(&output, &pretty(&report))?;
        }
        Command::Verify {
            suite,
            n,
            r,
            samples,
            seed,
            output,
        } => {
            let opts = SuiteOptions {
                n_max: n,
                r_max: r,
                samples,
                seed,
            };
            let Some(results) = run_suite(&suite, &opts) else {
                return Err(format!(
                    "unknown suite {suite}; available: {}",
                    SUITE_NAMES.join(", ")
                ));
            };
            let mut content = String::new();
            for r in &results {
                content.push_str(&format!(
                    "{} {} — {}\n",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.label,
                    r.detail
                ));
            }
            let ok = all_passed(&results);
            content.push_str(&format!(
                "{}: {} of {} checks passed\n",
                if ok { "OK" } else { "FAILED" },
                results.iter().filter(|r| r.passed).count(),
                results.len()
            ));
            write_output(&output, &content)?;
            return Ok(ok);
        }
        Command::ExploreQ {
            n,
            alpha,
            beta,
            grid,
            samples,
            seed,
            output,
        } => {
            let grid: Vec<Rat> = match grid {
                None => default_q_grid(),
                Some(text) => text
                    .split(',')
                    .map(|s| parse_rat(s.trim()).map_err(|e| e.to_string()))
                    .collect::<Result<_, _>>()?,
            };
            let rows = explore_q(n, &alpha, &beta, &grid, samples, seed);
            let mut content = String::from("q,real_rooted,stability,pairwise_nc\n");
            for row in rows {
                content.push_str(&format!(
                    "{},{},{},{}\n",
                    format_rat(&row.q),
                    row.real_rooted,
                    row.stability,
                    row.pairwise
                ));
            }
            write_output(&output, &content)?;
        }
        Command::Diagram { perm, r, output } => {
            let pi = parse_permutation(&perm, r, 0).map_err(|e| e.to_string())?;
            let tree = if pi.r() == 1 {
                AltTree::from_permutation(&pi).map_err(|e| e.to_string())?
            } else {
                AltTree::from_colored_permutation(&pi).map_err(|e| e.to_string())?
            };
            write_output(&output, &arcs_to_csv(&tree.arcs()))?;
        }
        Command::Tree {
            perm,
            input,
            r,
            output,
        } => match (perm, input) {
            (Some(perm), None) => {
                let pi = parse_permutation(&perm, r, 0).map_err(|e| e.to_string())?;
                let tree = if pi.r() == 1 {
                    AltTree::from_permutation(&pi).map_err(|e| e.to_string())?
                } else {
                    AltTree::from_colored_permutation(&pi).map_err(|e| e.to_string())?
                };
                write_output(&output, &pretty(&tree_to_json(&tree)))?;
            }
            (None, Some(path)) => {
                let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
                let value: serde_json::Value =
                    serde_json::from_str(&text).map_err(|e| e.to_string())?;
                let tree = tree_from_json(&value).map_err(|e| e.to_string())?;
                let pi = tree.to_permutation().map_err(|e| e.to_string())?;
                write_output(&output, &format!("{}\n", format_permutation(&pi)))?;
            }
            _ => return Err("give exactly one of --perm or --input".into()),
        },
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
