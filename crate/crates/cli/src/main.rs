//! Command-line driver: solves the qKZ system, runs the verification
//! batteries, and emits JSON artifacts. Every verification failure exits
//! nonzero; all sampling is seeded and deterministic.

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand};
use qkz_core::qkz::{solution_to_json, solve, QkzParams};
use qkz_core::ring::{rat, Mode, Rat, Scalar};
use qkz_core::suite;
use qkz_core::tower;
use qkz_core::transfer::{self, XSpec};
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "qkz", version, about = "Exact qKZ tower computations on punctured link-pattern modules")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Scalar mode: symbolic | rational:p/q | cyclotomic
    #[arg(long, default_value = "symbolic")]
    mode: String,
    /// RNG seed for all sampled points
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of random samples for sampled checks
    #[arg(long, default_value_t = 10)]
    samples: usize,
    /// Write the JSON artifact here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the cleared qKZ system and emit the solution as JSON
    Solve {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Solve and check every qKZ equation, degree, and seed component
    Verify {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Nullspace dimensions: 1 at the standard twist, 0 at random q
    Oracle {
        #[arg(long)]
        n: usize,
        /// Number of random q values away from t^{3/2}
        #[arg(long, default_value_t = 5)]
        q_samples: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Braid recursion g^{(n+1)}(z,0) against the lifted solution, n = 0..n-max
    TowerBraid {
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Dual (inverted-variable) recursion, n = 0..n-max
    TowerDual {
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Commutativity of the arc-insertion diagram on generators, n = 0..n-max
    NuCheck {
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Transfer-operator exchange relations, size recursion, and tile limits
    TransferCheck {
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Ground-state eigen-identity and stochasticity at s = zeta_6
    O1Check {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Weight vectors Q_n / D_J, pairing sums, and principal-series structure
    HeckeWeights {
        #[arg(long)]
        n_max: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Dual Macdonald polynomial at the staircase weight: existence and symmetries
    Macdonald {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Cherednik-Matsuo image of the Macdonald polynomial vs the qKZ solution
    CmCompare {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Full acceptance battery up to n-max
    Suite {
        #[arg(long)]
        n_max: usize,
        /// Worker-pool width for independent checks
        #[arg(long, default_value_t = 4)]
        parallelism: usize,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_mode(s: &str) -> Result<Mode> {
    match s {
        "symbolic" => Ok(Mode::Symbolic),
        "cyclotomic" => Ok(Mode::Cyclotomic),
        _ => {
            let body = s
                .strip_prefix("rational:")
                .ok_or_else(|| anyhow!("unknown mode '{}'; use symbolic, cyclotomic, or rational:p/q", s))?;
            let (p, q) = body.split_once('/').unwrap_or((body, "1"));
            let p: i64 = p.parse().map_err(|_| anyhow!("bad rational '{}'", body))?;
            let q: i64 = q.parse().map_err(|_| anyhow!("bad rational '{}'", body))?;
            if q == 0 || p == 0 {
                bail!("rational mode needs a nonzero value of s");
            }
            Ok(Mode::Rational(rat(p, q)))
        }
    }
}

fn mode_rat(mode: &Mode, what: &str) -> Result<Rat> {
    match mode {
        Mode::Rational(r) => Ok(r.clone()),
        _ => bail!(
            "{} requires exact rational linear algebra at a fixed s; pass --mode rational:p/q (e.g. rational:2/1)",
            what
        ),
    }
}

fn emit(common: &Common, value: serde_json::Value) -> Result<()> {
    let text = serde_json::to_string_pretty(&value)?;
    match &common.out {
        Some(path) => {
            let mut f = std::fs::File::create(path)?;
            writeln!(f, "{}", text)?;
        }
        None => println!("{}", text),
    }
    Ok(())
}

fn check_feasible_n(n: usize) -> Result<()> {
    if n == 0 || n > 6 {
        bail!("n must be between 1 and 6 (desk scale); got {}", n);
    }
    Ok(())
}

/// A simple deterministic generator for auxiliary rational samples.
struct Lcg(u64);
impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }
    fn rat(&mut self, lo: i64, hi: i64) -> Rat {
        let p = lo + (self.next() % (hi - lo) as u64) as i64;
        let q = 1 + (self.next() % 6) as i64;
        rat(p, q)
    }
}

type Task = (String, usize, Box<dyn Fn() -> Result<(), String> + Send + Sync>);

fn suite_tasks(n_max: usize, samples: usize, seed: u64) -> Vec<Task> {
    let mut tasks: Vec<Task> = Vec::new();
    let mut add = |name: &str, n: usize, f: Box<dyn Fn() -> Result<(), String> + Send + Sync>| {
        tasks.push((name.to_string(), n, f));
    };
    for n in 1..=n_max.min(5) {
        add("solve", n, Box::new(move || suite::solve_check(n, &Mode::Symbolic)));
    }
    if n_max >= 6 {
        add("solve", 6, Box::new(|| suite::solve_check(6, &Mode::Rational(rat(2, 1)))));
    }
    for n in 2..=n_max.min(4) {
        add("oracle", n, Box::new(move || suite::oracle_check(n, rat(2, 1), 5, seed)));
    }
    for n in 0..=n_max.min(4) {
        add("braid", n, Box::new(move || tower::braid_verify(n, &Mode::Symbolic)));
        add("braid-zeta6", n, Box::new(move || tower::braid_verify(n, &Mode::Cyclotomic)));
    }
    for n in 0..=n_max.min(4) {
        add("dual", n, Box::new(move || tower::dual_verify(n, &Mode::Symbolic)));
    }
    for n in 1..=n_max.min(5) {
        add(
            "intertwiner",
            n,
            Box::new(move || suite::intertwiner_tower_check(n, &Mode::Symbolic, &[seed, seed + 1])),
        );
    }
    for n in 2..=n_max.min(6) {
        add("tl-relations", n, Box::new(move || suite::tl_relations_check(n)));
    }
    for n in 2..=n_max.min(5) {
        add("hecke-relations", n, Box::new(move || suite::hecke_relations_check(n)));
    }
    for n in 2..=n_max.min(5) {
        add("ybe", n, Box::new(move || suite::ybe_check(n, samples, seed)));
    }
    for n in 0..=n_max.min(4) {
        add("nu-diagram", n, Box::new(move || tower::nu_diagram_check(n, &Mode::Symbolic)));
    }
    for n in 2..=n_max.min(5) {
        add(
            "transfer-relations",
            n,
            Box::new(move || transfer::transfer_relations_check(n, samples.max(10), seed)),
        );
        add(
            "transfer-recursion",
            n,
            Box::new(move || transfer::tmat_conjugated_check(n, samples.max(10), seed)),
        );
    }
    add("tile-limits", 0, Box::new(tile_limit_check));
    for n in 1..=n_max.min(4) {
        add("o1-groundstate", n, Box::new(move || transfer::o1_groundstate_check(n, &XSpec::Var)));
    }
    if n_max >= 5 {
        add(
            "o1-groundstate",
            5,
            Box::new(move || {
                let mut lcg = Lcg(seed.wrapping_add(99));
                for _ in 0..3 {
                    let x = Scalar::Cyc(lcg.rat(1, 20), lcg.rat(1, 20));
                    transfer::o1_groundstate_check(5, &XSpec::Const(x))?;
                }
                Ok(())
            }),
        );
    }
    for n in 1..=n_max.min(4) {
        add(
            "o1-stochastic",
            n,
            Box::new(move || transfer::stochastic_check(n, 100, seed, 1e-12)),
        );
    }
    for n in 2..=n_max.min(6) {
        add("weight-vectors", n, Box::new(move || suite::weight_vector_check(n)));
    }
    for k in 1..=(n_max / 2).min(3) {
        add("pairing", 2 * k, Box::new(move || suite::pairing_check(k)));
    }
    for n in 2..=n_max.min(5) {
        add(
            "principal-series",
            n,
            Box::new(move || suite::principal_series_check(n, &Mode::Rational(rat(5, 3)))),
        );
        add(
            "intertwiner-squares",
            n,
            Box::new(move || suite::intertwiner_square_check(n, 3, &Mode::Rational(rat(5, 3)))),
        );
    }
    for n in 2..=n_max.min(3) {
        add(
            "macdonald",
            n,
            Box::new(move || suite::macdonald_check(n, &Mode::Symbolic, 20, seed)),
        );
    }
    if n_max >= 4 {
        add(
            "macdonald",
            4,
            Box::new(move || suite::macdonald_check(4, &Mode::Rational(rat(3, 1)), 20, seed)),
        );
    }
    for n in 2..=n_max.min(3) {
        add("b-relation", n, Box::new(move || suite::brelation_check(n, 3, rat(3, 1), rat(7, 2))));
        add("cm-compare", n, Box::new(move || suite::cm_compare_check(n, &Mode::Symbolic)));
    }
    if n_max >= 4 {
        add(
            "cm-compare",
            4,
            Box::new(|| suite::cm_compare_check(4, &Mode::Rational(rat(3, 1)))),
        );
    }
    for n in 2..=n_max.min(4) {
        add("basic-rep", n, Box::new(move || suite::basic_rep_check(n, &Mode::Symbolic)));
    }
    tasks
}

/// Tile weights in the z -> 0 limit are (-t^{1/2}, -t).
fn tile_limit_check() -> Result<(), String> {
    let m = Mode::Rational(rat(3, 1));
    let x = Scalar::Rat(rat(7, 2));
    let zero = m.zero();
    let den = m.s_pow(2).mul(&zero).sub(&m.s_pow(-2).mul(&x));
    let a = x.sub(&zero).div(&den).map_err(|e| e.to_string())?;
    let b = m
        .s_pow(2)
        .mul(&x)
        .sub(&m.s_pow(-2).mul(&zero))
        .div(&den)
        .map_err(|e| e.to_string())?;
    if a != m.s_pow(2).neg() || b != m.s_pow(4).neg() {
        return Err("tile limit weights differ from (-t^(1/2), -t)".to_string());
    }
    Ok(())
}

fn run_suite(n_max: usize, parallelism: usize, common: &Common) -> Result<bool> {
    let tasks = suite_tasks(n_max, common.samples, common.seed);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism)
        .build()?;
    use rayon::prelude::*;
    let results: Vec<(String, usize, Result<(), String>, u128)> = pool.install(|| {
        tasks
            .par_iter()
            .map(|(name, n, f)| {
                let t0 = Instant::now();
                let r = f();
                (name.clone(), *n, r, t0.elapsed().as_millis())
            })
            .collect()
    });
    let mut all_ok = true;
    let mut lines = Vec::new();
    for (name, n, r, millis) in results {
        let status = match &r {
            Ok(()) => "pass".to_string(),
            Err(e) => {
                all_ok = false;
                format!("fail: {}", e)
            }
        };
        lines.push(json!({"check": name, "n": n, "status": status, "millis": millis}));
    }
    emit(common, serde_json::Value::Array(lines))?;
    Ok(all_ok)
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Solve { n, common } => {
            check_feasible_n(n)?;
            let mode = parse_mode(&common.mode)?;
            if n == 6 && mode == Mode::Symbolic {
                bail!("symbolic n=6 solve is beyond desk scale; use --mode rational:p/q");
            }
            let params = QkzParams::standard(n, &mode);
            let f = solve(&params).map_err(|e| anyhow!(e.to_string()))?;
            emit(&common, solution_to_json(&f, &params))?;
            Ok(true)
        }
        Command::Verify { n, common } => {
            check_feasible_n(n)?;
            let mode = parse_mode(&common.mode)?;
            if n == 6 && mode == Mode::Symbolic {
                bail!("symbolic n=6 verify is beyond desk scale; use --mode rational:p/q");
            }
            let r = suite::solve_check(n, &mode);
            report(&common, "verify", n, r)
        }
        Command::Oracle { n, q_samples, common } => {
            check_feasible_n(n)?;
            if n > 4 {
                bail!("the dense nullspace oracle is limited to n <= 4 (the n=5 system already has thousands of rows)");
            }
            let mode = parse_mode(&common.mode)?;
            let s0 = mode_rat(&mode, "oracle")?;
            let r = suite::oracle_check(n, s0, q_samples, common.seed);
            report(&common, "oracle", n, r)
        }
        Command::TowerBraid { n_max, common } => {
            let mode = parse_mode(&common.mode)?;
            let mut results = Vec::new();
            let mut ok = true;
            for n in 0..=n_max {
                let r = tower::braid_verify(n, &mode);
                ok &= r.is_ok();
                results.push(json!({"n": n, "status": status_of(&r)}));
            }
            emit(&common, json!({"command": "tower-braid", "results": results}))?;
            Ok(ok)
        }
        Command::TowerDual { n_max, common } => {
            let mode = parse_mode(&common.mode)?;
            let mut results = Vec::new();
            let mut ok = true;
            for n in 0..=n_max {
                let r = tower::dual_verify(n, &mode);
                ok &= r.is_ok();
                results.push(json!({"n": n, "status": status_of(&r)}));
            }
            emit(&common, json!({"command": "tower-dual", "results": results}))?;
            Ok(ok)
        }
        Command::NuCheck { n_max, common } => {
            let mode = parse_mode(&common.mode)?;
            let mut results = Vec::new();
            let mut ok = true;
            for n in 0..=n_max {
                let r = tower::nu_diagram_check(n, &mode);
                ok &= r.is_ok();
                results.push(json!({"n": n, "status": status_of(&r)}));
            }
            emit(&common, json!({"command": "nu-check", "results": results}))?;
            Ok(ok)
        }
        Command::TransferCheck { n_max, common } => {
            let mut results = Vec::new();
            let mut ok = true;
            for n in 2..=n_max {
                let r = transfer::transfer_relations_check(n, common.samples, common.seed)
                    .and_then(|()| transfer::tmat_conjugated_check(n, common.samples, common.seed));
                ok &= r.is_ok();
                results.push(json!({"n": n, "status": status_of(&r)}));
            }
            let r = tile_limit_check();
            ok &= r.is_ok();
            results.push(json!({"n": 0, "check": "tile-limits", "status": status_of(&r)}));
            emit(&common, json!({"command": "transfer-check", "results": results}))?;
            Ok(ok)
        }
        Command::O1Check { n, common } => {
            check_feasible_n(n)?;
            if common.mode != "symbolic" && common.mode != "cyclotomic" {
                bail!("o1-check works at s = zeta_6; it accepts only the cyclotomic mode");
            }
            let eig = if n <= 4 {
                transfer::o1_groundstate_check(n, &XSpec::Var)
            } else {
                let mut lcg = Lcg(common.seed.wrapping_add(99));
                (0..3).try_for_each(|_| {
                    let x = Scalar::Cyc(lcg.rat(1, 20), lcg.rat(1, 20));
                    transfer::o1_groundstate_check(n, &XSpec::Const(x))
                })
            };
            let sto = transfer::stochastic_check(n, common.samples.max(100), common.seed, 1e-12);
            let ok = eig.is_ok() && sto.is_ok();
            emit(
                &common,
                json!({
                    "command": "o1-check", "n": n,
                    "eigen": status_of(&eig), "stochastic": status_of(&sto)
                }),
            )?;
            Ok(ok)
        }
        Command::HeckeWeights { n_max, common } => {
            let mut results = Vec::new();
            let mut ok = true;
            for n in 2..=n_max {
                let r = suite::weight_vector_check(n);
                ok &= r.is_ok();
                results.push(json!({"check": "weight-vectors", "n": n, "status": status_of(&r)}));
            }
            for k in 1..=(n_max / 2).min(3) {
                let r = suite::pairing_check(k);
                ok &= r.is_ok();
                results.push(json!({"check": "pairing", "n": 2 * k, "status": status_of(&r)}));
            }
            for n in 2..=n_max.min(5) {
                let r = suite::principal_series_check(n, &Mode::Rational(rat(5, 3)));
                ok &= r.is_ok();
                results.push(json!({"check": "principal-series", "n": n, "status": status_of(&r)}));
            }
            emit(&common, json!({"command": "hecke-weights", "results": results}))?;
            Ok(ok)
        }
        Command::Macdonald { n, common } => {
            check_feasible_n(n)?;
            let mode = parse_mode(&common.mode)?;
            if n >= 4 && mode == Mode::Symbolic {
                bail!("the n >= 4 joint eigenproblem is too large symbolically; use --mode rational:p/q");
            }
            let r = suite::macdonald_check(n, &mode, 20, common.seed);
            report(&common, "macdonald", n, r)
        }
        Command::CmCompare { n, common } => {
            check_feasible_n(n)?;
            let mode = parse_mode(&common.mode)?;
            if n >= 4 && mode == Mode::Symbolic {
                bail!("the n >= 4 comparison is too large symbolically; use --mode rational:p/q");
            }
            let r = suite::cm_compare_check(n, &mode);
            report(&common, "cm-compare", n, r)
        }
        Command::Suite { n_max, parallelism, common } => run_suite(n_max, parallelism, &common),
    }
}

fn status_of(r: &Result<(), String>) -> String {
    match r {
        Ok(()) => "pass".to_string(),
        Err(e) => format!("fail: {}", e),
    }
}

fn report(common: &Common, command: &str, n: usize, r: Result<(), String>) -> Result<bool> {
    let ok = r.is_ok();
    emit(common, json!({"command": command, "n": n, "status": status_of(&r)}))?;
    Ok(ok)
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => {}
        Ok(false) => std::process::exit(1),
        Err(e) => {
            eprintln!("error: {}", e);
            std::process::exit(2);
        }
    }
}
