use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use spechtvar::checks::run_check;
use spechtvar::ffalg::{field, Fe};
use spechtvar::jordan::{generic_type, jordan_at_point, GenericMode};
use spechtvar::partitions::{dim_specht, p_core_weight, Partition};
use spechtvar::phimap::{all_hypotheses, classify_hypothesis, phi_chain, predict};
use spechtvar::spechtmod::{perm_module_actions, restricted_actions_cached, tabloid_count};
use spechtvar::variety::{classify_stable, sweep_points, table9, TABLE9_HEADER};
use spechtvar::youngdec::{verify_cor_multiple, verify_cor_psquare, young_summands};

#[derive(Parser)]
#[command(name = "spechtvar", version, about = "Specht modules, Jordan types and rank varieties over GF(p)")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Worker threads for point sweeps (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Seed for randomized generic-type sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample points per randomized generic-type run.
    #[arg(long, global = true, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    samples: u64,
    /// Extension degree k of GF(p^k) (default: 1 for `jordan --alpha`, 3 for `variety`).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..=12))]
    ext: Option<u32>,
    #[arg(long, global = true, value_enum, default_value = "random")]
    mode: Mode,
    /// Directory for cached module actions; overrides SPECHTVAR_CACHE.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
}

/// Settings echoed into every JSON report.
#[derive(Serialize)]
struct RunConfig {
    version: &'static str,
    p: u32,
    ext_degree: Option<u32>,
    samples: u64,
    seed: u64,
    mode: Mode,
    threads: usize,
    cache_dir: Option<String>,
}

impl RunConfig {
    fn new(g: &Global, p: u32, ext_degree: Option<u32>) -> Self {
        RunConfig {
            version: env!("CARGO_PKG_VERSION"),
            p,
            ext_degree,
            samples: g.samples,
            seed: g.seed,
            mode: g.mode,
            threads: g.threads,
            cache_dir: std::env::var("SPECHTVAR_CACHE").ok(),
        }
    }
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Mode {
    Random,
    Exact,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum OutFormat {
    Json,
    Tsv,
}

#[derive(Args, Clone, Serialize)]
struct MuP {
    /// Partition, e.g. "(4,3,2)".
    #[arg(long, value_parser = parse_partition)]
    mu: Partition,
    #[arg(long, value_parser = parse_prime)]
    p: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension, core, weight and tabloid count of a partition.
    Info(MuP),
    /// The φ-chain, its limit Φ and the hypothesis it satisfies.
    Phi(MuP),
    /// Predicted variety and complexity.
    Predict(MuP),
    /// Generic Jordan type of S^μ (or M^μ) restricted to E_n.
    Jordan {
        #[command(flatten)]
        mp: MuP,
        /// Use the permutation module M^μ instead of S^μ.
        #[arg(long)]
        perm: bool,
        /// Evaluate at this point instead, e.g. "1,1,0" (codes in GF(p^ext)).
        #[arg(long)]
        alpha: Option<String>,
    },
    /// Non-free locus over GF(p^ext) and its classification.
    Variety {
        #[command(flatten)]
        mp: MuP,
        #[arg(long, value_enum, default_value = "json")]
        out: OutFormat,
    },
    /// The p = 3, |μ| = 9 table as TSV.
    Table9,
    /// Young summands of M^{(r-m,m)}.
    Young {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, value_parser = parse_prime)]
        p: u32,
    },
    /// Runs the acceptance checks; exits nonzero if any fails.
    Verify {
        /// Run only these checks (1-8).
        #[arg(long, value_delimiter = ',')]
        only: Vec<u32>,
    },
}

fn parse_partition(s: &str) -> Result<Partition, String> {
    s.parse().map_err(|e: spechtvar::Error| e.to_string())
}

fn parse_prime(s: &str) -> Result<u32, String> {
    let p: u32 = s.parse().map_err(|_| format!("{s} is not an integer"))?;
    if spechtvar::ffalg::is_prime(p as u64) {
        Ok(p)
    } else {
        Err(format!("{p} is not prime"))
    }
}

/// Module constructions are supported for p in {2, 3, 5} and |μ| = np.
fn module_rank(mp: &MuP) -> anyhow::Result<usize> {
    if ![2, 3, 5].contains(&mp.p) {
        return Err(usage("module commands need p in {2, 3, 5}"));
    }
    if mp.mu.size() == 0 || !mp.mu.size().is_multiple_of(mp.p as usize) {
        return Err(usage(format_args!("|{}| is not a positive multiple of {}", mp.mu, mp.p)));
    }
    Ok(mp.mu.size() / mp.p as usize)
}

fn emit(config: RunConfig, body: Value) -> anyhow::Result<()> {
    let mut obj = json!({ "config": config });
    if let (Some(o), Value::Object(b)) = (obj.as_object_mut(), body) {
        o.extend(b);
    }
    println!("{}", serde_json::to_string_pretty(&obj)?);
    Ok(())
}

fn usage(msg: impl std::fmt::Display) -> anyhow::Error {
    clap::Error::raw(clap::error::ErrorKind::InvalidValue, format!("{msg}\n")).into()
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let g = &cli.global;
    match cli.command {
        Command::Info(mp) => {
            let cd = p_core_weight(&mp.mu, mp.p as usize);
            emit(
                RunConfig::new(g, mp.p, None),
                json!({
                    "mu": mp.mu,
                    "conjugate": mp.mu.conjugate(),
                    "size": mp.mu.size(),
                    "dim": dim_specht(&mp.mu).to_string(),
                    "tabloids": tabloid_count(&mp.mu).to_string(),
                    "core": cd.core,
                    "weight": cd.weight,
                    "pxp_blocks": mp.mu.is_pxp_blocks(mp.p as usize),
                }),
            )?;
        }
        Command::Phi(mp) | Command::Predict(mp) => {
            let p = mp.p as usize;
            let cd = p_core_weight(&mp.mu, p);
            let n = mp.mu.size() / p;
            let in_domain = mp.mu.len() <= p && cd.core.is_empty();
            let chain = if in_domain { Some(phi_chain(&mp.mu, p)?) } else { None };
            let hypothesis = if in_domain && mp.mu.size() == n * p { classify_hypothesis(&mp.mu, p, n)? } else { None };
            let all = if in_domain && mp.mu.size() == n * p { all_hypotheses(&mp.mu, p, n)? } else { Vec::new() };
            emit(
                RunConfig::new(g, mp.p, None),
                json!({
                    "mu": mp.mu,
                    "core": cd.core,
                    "weight": cd.weight,
                    "phi_chain": chain,
                    "Phi": chain.as_ref().and_then(|c| c.last()),
                    "hypothesis": hypothesis,
                    "all_hypotheses": all,
                    "prediction": predict(&mp.mu, p),
                }),
            )?;
        }
        Command::Jordan { mp, perm, alpha } => {
            let n = module_rank(&mp)?;
            let acts = if perm {
                perm_module_actions(&mp.mu, n, mp.p)?
            } else {
                restricted_actions_cached(&mp.mu, n, mp.p, true)?
            };
            let module = json!({ "kind": acts.kind, "n": n, "computed_on": acts.computed_on, "dim": acts.dim });
            if let Some(a) = alpha {
                let ext = g.ext.unwrap_or(1);
                let cfg = RunConfig::new(g, mp.p, Some(ext));
                let ctx = field(mp.p, ext)?;
                let point = a
                    .split(',')
                    .map(|x| x.trim().parse::<u32>().ok().filter(|&v| v < ctx.order()).map(Fe))
                    .collect::<Option<Vec<Fe>>>()
                    .context("alpha must be comma-separated field codes")?;
                let t = jordan_at_point(&acts, &ctx, &point)?;
                emit(cfg, json!({ "mu": mp.mu, "module": module, "alpha": point, "jordan": t, "jordan_string": t.to_string(), "free": t.is_free() }))?;
            } else {
                let mode = match g.mode {
                    Mode::Random => GenericMode::Random,
                    Mode::Exact => GenericMode::Exact,
                };
                let rep = generic_type(&acts, mode, g.seed, g.samples as usize)?;
                emit(RunConfig::new(g, mp.p, None), json!({ "mu": mp.mu, "module": module, "report": rep, "stable": rep.jordan.stable().to_string() }))?;
            }
        }
        Command::Variety { mp, out } => {
            let n = module_rank(&mp)?;
            let ext = g.ext.unwrap_or(3);
            if ext < 2 {
                return Err(usage("variety needs --ext >= 2 to confirm stability"));
            }
            let acts = restricted_actions_cached(&mp.mu, n, mp.p, true)?;
            match out {
                OutFormat::Json => {
                    let stable = classify_stable(&acts, ext)?;
                    emit(
                        RunConfig::new(g, mp.p, Some(ext)),
                        json!({
                            "mu": mp.mu,
                            "n": n,
                            "computed_on": acts.computed_on,
                            "dim": acts.dim,
                            "class": stable.class,
                            "class_string": stable.class.kind.to_string(),
                            "checked_degrees": stable.checked_degrees,
                            "locus": stable.sample,
                        }),
                    )?;
                }
                OutFormat::Tsv => {
                    let recs = sweep_points(&acts, ext)?;
                    let mut out = std::io::stdout().lock();
                    let coords: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
                    writeln!(out, "{}\tfree\tranks", coords.join("\t"))?;
                    for r in recs {
                        let c: Vec<String> = r.point.iter().map(|a| a.0.to_string()).collect();
                        let ranks: Vec<String> = r.ranks.ranks.iter().map(ToString::to_string).collect();
                        writeln!(out, "{}\t{}\t{}", c.join("\t"), r.free, ranks.join(","))?;
                    }
                }
            }
        }
        Command::Table9 => {
            let ext = g.ext.unwrap_or(3);
            if !(2..=4).contains(&ext) {
                return Err(usage("table9 supports --ext 2, 3 or 4"));
            }
            let rows = if ext == 3 {
                table9()?
            } else {
                spechtvar::variety::TABLE9
                    .iter()
                    .map(|(mu, e)| spechtvar::variety::table9_row(&mu.parse()?, *e, ext))
                    .collect::<spechtvar::Result<_>>()?
            };
            println!("{TABLE9_HEADER}");
            for r in &rows {
                println!("{}", r.tsv());
            }
        }
        Command::Young { r, m, p } => {
            if m > r {
                return Err(usage("need m <= r"));
            }
            let set = young_summands(r, m, p as u64)?;
            emit(RunConfig::new(g, p, None), json!({ "summands": set }))?;
        }
        Command::Verify { only } => {
            let ids: Vec<u32> = if only.is_empty() { (1..=8).collect() } else { only };
            let mut all = true;
            for id in ids {
                let r = run_check(id, g.seed);
                println!("{r}");
                all &= r.passed;
            }
            let sweeps = [verify_cor_psquare(3)?, verify_cor_psquare(5)?];
            for rep in &sweeps {
                println!("corollary p-square, p={}: {}", rep.p, if rep.all_hold() { "holds" } else { "FAILS" });
                all &= rep.all_hold();
            }
            for n in 3..=12 {
                let rep = verify_cor_multiple(n, 3)?;
                let status = match &rep.cases[0].skipped {
                    Some(why) => format!("skipped ({why})"),
                    None if rep.all_hold() => "holds".into(),
                    None => "FAILS".into(),
                };
                println!("corollary multiple-of-p, n={n}, p=3: {status}");
                all &= rep.all_hold();
            }
            return Ok(all);
        }
    }
    Ok(true)
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(dir) = &cli.global.cache_dir {
        std::env::set_var("SPECHTVAR_CACHE", dir);
    }
    if cli.global.threads > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.global.threads).build_global();
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => match e.downcast_ref::<clap::Error>() {
            Some(ce) => {
                let _ = ce.print();
                ExitCode::from(2)
            }
            None if is_broken_pipe(&e) => ExitCode::SUCCESS,
            None => {
                eprintln!("error: {e:#}");
                ExitCode::from(1)
            }
        },
    }
}
