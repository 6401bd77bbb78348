use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use brtrade::galois::{FieldMatrix, FieldSpec};
use brtrade::mds::make_mds;
use brtrade::mincut::OracleOptions;
use brtrade::repair_sim::{
    self, build_example2_plan, execute_broadcast_repair, verify_any_k, SimReport,
};
use brtrade::sweep::{run_sweep, summarize, SweepConfig};
use brtrade::tradeoff::{self, format_cell};
use brtrade::{ExtendedRational as Q, SystemParams};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "brtrade",
    version,
    about = "Storage versus repair-bandwidth trade-off for partially failing caches"
)]
#[command(args_override_self = true)]
struct Cli {
    /// Key-value file whose entries act as default flags (`key = value`).
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Emit the trade-off curve as CSV.
    Curve(CurveArgs),
    /// Print the corner points and answer one query.
    Point(PointArgs),
    /// Compare the closed form with the min-cut oracle over a range.
    Verify(VerifyArgs),
    /// Run the coded cache simulator.
    Simulate(SimulateArgs),
}

#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// File size.
    #[arg(long = "M", default_value = "1")]
    file_size: Q,
    /// Number of nodes.
    #[arg(long, conflicts_with = "helpers")]
    n: Option<usize>,
    /// Complete nodes per round (n − r); alternative to --n.
    #[arg(long)]
    helpers: Option<usize>,
    #[arg(long)]
    k: usize,
    /// Nodes failing per round.
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// Surviving fraction, e.g. `1/2` or `0.5`.
    #[arg(long)]
    rho: Q,
}

impl ParamArgs {
    fn params(&self) -> Result<SystemParams, String> {
        let n = match (self.n, self.helpers) {
            (Some(n), _) => n,
            (None, Some(h)) => h + self.r,
            (None, None) => return Err("one of --n or --helpers is required".into()),
        };
        SystemParams::new(n, self.k, self.r, self.rho.clone(), self.file_size.clone())
            .map_err(|e| e.to_string())
    }
}

#[derive(Args, Debug)]
struct CurveArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Evenly spaced γ samples between the two corners (thresholds are added).
    #[arg(long, default_value_t = 50)]
    points: usize,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PointArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Total repair bandwidth to query α* at.
    #[arg(long, conflicts_with = "alpha")]
    gamma: Option<Q>,
    /// Per-node storage to query γ* at.
    #[arg(long)]
    alpha: Option<Q>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    n_min: usize,
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    /// Restrict k (comma separated).
    #[arg(long, value_delimiter = ',')]
    k: Option<Vec<usize>>,
    /// Restrict r (comma separated).
    #[arg(long, value_delimiter = ',')]
    r: Option<Vec<usize>>,
    #[arg(long, value_delimiter = ',', default_value = "0,1/4,1/2,3/4")]
    rho: Vec<Q>,
    #[arg(long = "M", default_value = "1")]
    file_size: Q,
    /// γ grid points per instance.
    #[arg(long, default_value_t = 8)]
    points: usize,
    /// Graph budget per oracle evaluation.
    #[arg(long, default_value_t = 200_000)]
    budget: u128,
    /// Longest failure pattern; defaults to ⌈k/r⌉.
    #[arg(long)]
    max_rounds: Option<usize>,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Example2,
    Rlnc,
}

#[derive(Args, Debug)]
struct SimulateArgs {
    #[arg(long, value_enum, default_value_t = Mode::Example2)]
    mode: Mode,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Independent randomized trials (rlnc mode).
    #[arg(long, default_value_t = 100)]
    trials: u64,
    /// Prime field order.
    #[arg(long, default_value_t = 257)]
    q: u32,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value = "1/2")]
    rho: Q,
    /// Storage per node (rlnc mode); defaults to the minimum-storage point.
    #[arg(long)]
    alpha: Option<Q>,
    /// Total repair bandwidth (rlnc mode); defaults to the minimum-storage point.
    #[arg(long)]
    gamma: Option<Q>,
    /// Failed node, 1-based (example2 mode).
    #[arg(long, default_value_t = 1)]
    node: usize,
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// Failure that maps to an exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }
}

type Outcome = Result<bool, Failure>;

/// Reads `key = value` lines into `--key value` arguments.
fn config_args(path: &PathBuf) -> Result<Vec<String>, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Failure::usage(format!(
                "{}:{}: expected key = value",
                path.display(),
                lineno + 1
            )));
        };
        let key = key.trim().replace('_', "-");
        let key = if key.eq_ignore_ascii_case("m") {
            "M".to_string()
        } else {
            key
        };
        out.push(format!("--{key}"));
        out.push(value.trim().to_string());
    }
    Ok(out)
}

/// Splices config entries in right after the subcommand so that explicit
/// flags, which come later, win.
fn expand_config(argv: Vec<String>) -> Result<Vec<String>, Failure> {
    let mut path = None;
    let mut rest = Vec::with_capacity(argv.len());
    let mut it = argv.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            path = Some(
                it.next()
                    .ok_or_else(|| Failure::usage("--config needs a value"))?,
            );
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(path) = path else { return Ok(rest) };
    let extra = config_args(&PathBuf::from(path))?;
    let sub = rest
        .iter()
        .skip(1)
        .position(|a| !a.starts_with('-'))
        .map(|i| i + 2);
    match sub {
        Some(at) => {
            rest.splice(at..at, extra);
            Ok(rest)
        }
        None => Err(Failure::usage("--config given without a subcommand")),
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text)
            .map_err(|e| Failure::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::usage(e.to_string()))
        }
    }
}

fn cmd_curve(args: &CurveArgs) -> Outcome {
    let params = args.params.params().map_err(Failure::usage)?;
    let grid = tradeoff::default_gamma_grid(&params, args.points)
        .map_err(|e| Failure::usage(e.to_string()))?;
    let curve =
        tradeoff::sample_curve(&params, &grid).map_err(|e| Failure::usage(e.to_string()))?;
    emit(&args.output, &tradeoff::curve_csv(&curve))?;
    Ok(true)
}

fn describe(params: &SystemParams) -> String {
    format!(
        "n={} k={} r={} rho={} M={}",
        params.n(),
        params.k(),
        params.r(),
        params.rho(),
        params.file_size()
    )
}

fn cmd_point(args: &PointArgs) -> Outcome {
    let params = args.params.params().map_err(Failure::usage)?;
    let e = |e: tradeoff::TradeoffError| Failure::usage(e.to_string());
    let mut out = format!("params {}\n", describe(&params));
    let msr = tradeoff::msr_point(&params).map_err(e)?;
    let mbr = tradeoff::mbr_point(&params).map_err(e)?;
    out += &format!(
        "msr alpha={} gamma={}\n",
        format_cell(&msr.alpha),
        format_cell(&msr.gamma)
    );
    out += &format!(
        "mbr alpha={} gamma={}\n",
        format_cell(&mbr.alpha),
        format_cell(&mbr.gamma)
    );
    if let Some(gamma) = &args.gamma {
        let p = tradeoff::point_at(&params, gamma).map_err(e)?;
        if p.alpha.is_infinite() {
            out += &format!("query gamma={} alpha*=inf infeasible\n", format_cell(gamma));
        } else {
            out += &format!(
                "query gamma={} alpha*={} regime={}\n",
                format_cell(gamma),
                format_cell(&p.alpha),
                p.regime
            );
        }
    }
    if let Some(alpha) = &args.alpha {
        let g = tradeoff::gamma_star(&params, alpha).map_err(e)?;
        if g.is_infinite() {
            out += &format!("query alpha={} gamma*=inf infeasible\n", format_cell(alpha));
        } else {
            out += &format!(
                "query alpha={} gamma*={}\n",
                format_cell(alpha),
                format_cell(&g)
            );
        }
    }
    emit(&None, &out)?;
    Ok(true)
}

fn cmd_verify(args: &VerifyArgs) -> Outcome {
    let config = SweepConfig {
        n_min: args.n_min,
        n_max: args.n_max,
        k_values: args.k.clone(),
        r_values: args.r.clone(),
        rhos: args.rho.clone(),
        file_size: args.file_size.clone(),
        grid_points: args.points,
        oracle: OracleOptions {
            max_rounds: args.max_rounds,
            budget: args.budget,
        },
    };
    let results = run_sweep(&config);
    let summary = summarize(&results);
    let mut out = String::new();
    for r in &results {
        out += &format!("{r}\n");
    }
    out += &format!(
        "summary pass={} fail={} skipped={}\n",
        summary.pass, summary.fail, summary.skipped
    );
    emit(&args.output, &out)?;
    Ok(summary.fail == 0)
}

fn cmd_simulate(args: &SimulateArgs) -> Outcome {
    let field = FieldSpec::prime(args.q).map_err(|e| Failure::usage(e.to_string()))?;
    match args.mode {
        Mode::Example2 => simulate_example2(args, field),
        Mode::Rlnc => simulate_rlnc(args, field),
    }
}

fn simulate_example2(args: &SimulateArgs, field: FieldSpec) -> Outcome {
    use rand::{Rng, SeedableRng};
    let params = SystemParams::unit(args.n, args.k, args.r, args.rho.clone())
        .map_err(|e| Failure::usage(e.to_string()))?;
    if args.node == 0 || args.node > params.n() {
        return Err(Failure::usage(format!(
            "--node must be in 1..={}",
            params.n()
        )));
    }
    let usage = |e: repair_sim::SimError| Failure::usage(e.to_string());
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(args.seed);
    let code = make_mds(8, 4 * params.n(), field).map_err(|e| Failure::usage(e.to_string()))?;
    let file = FieldMatrix::random(field, 4, 8, &mut rng);
    let mut state = repair_sim::init_system(&params, code, file).map_err(usage)?;
    let original = state.clone();
    let node = args.node - 1;
    let first = rng.gen_range(0..4);
    let second = (first + rng.gen_range(1..4)) % 4;
    let mut lost = [first, second];
    lost.sort_unstable();
    state.inject_losses(node, &lost).map_err(usage)?;
    let before = verify_any_k(&state);
    let plan = build_example2_plan(&state, &mut rng).map_err(usage)?;
    let tally = execute_broadcast_repair(&mut state, &plan).map_err(usage)?;
    let after = verify_any_k(&state);
    let exact = state.node(node) == original.node(node);

    let mut report = SimReport::default();
    report.push("mode example2");
    report.push(format!("params {} q={}", describe(&params), field.order()));
    report.push(format!("seed {}", args.seed));
    report.push(format!(
        "failed node {} lost packets p{} p{}",
        args.node,
        lost[0] + 1,
        lost[1] + 1
    ));
    report.push(format!("any-k before repair {}", verdict_text(&before)));
    report.push(format!(
        "plan helpers {} gammas ({}, {}) after {} attempt(s)",
        plan.helpers
            .iter()
            .map(|h| (h + 1).to_string())
            .collect::<Vec<_>>()
            .join(","),
        plan.gammas.0,
        plan.gammas.1,
        plan.attempts
    ));
    report.push(format!(
        "bandwidth {} packets from {} nodes = {} of M",
        tally.packets, tally.senders, tally.fraction_of_file
    ));
    report.push(format!("exact recovery {exact}"));
    report.push(format!("any-k after repair {}", verdict_text(&after)));
    emit(&args.output, &report.to_string())?;
    Ok(exact && after.ok)
}

fn verdict_text(v: &repair_sim::AnyKVerdict) -> String {
    match (&v.witness, v.witness_rank) {
        (Some(w), Some(rank)) => format!(
            "false (nodes {} have rank {rank})",
            w.iter()
                .map(|i| (i + 1).to_string())
                .collect::<Vec<_>>()
                .join(",")
        ),
        _ => format!("true ({} subsets)", v.subsets_checked),
    }
}

fn simulate_rlnc(args: &SimulateArgs, field: FieldSpec) -> Outcome {
    let params = SystemParams::unit(args.n, args.k, args.r, args.rho.clone())
        .map_err(|e| Failure::usage(e.to_string()))?;
    let msr = tradeoff::msr_point(&params).map_err(|e| Failure::usage(e.to_string()))?;
    let alpha = args.alpha.clone().unwrap_or(msr.alpha);
    let gamma = args.gamma.clone().unwrap_or(msr.gamma);
    let beta = params.beta_for(&gamma);
    let mut report = SimReport::default();
    report.push("mode rlnc");
    report.push(format!("params {} q={}", describe(&params), field.order()));
    report.push(format!(
        "point alpha={} gamma={}",
        format_cell(&alpha),
        format_cell(&gamma)
    ));
    if args.trials == 0 {
        report.push("trials 0 (nothing to do)");
        emit(&args.output, &report.to_string())?;
        return Ok(true);
    }
    let summary = repair_sim::rlnc_trials(&params, &alpha, &beta, field, args.trials, args.seed)
        .map_err(|e| Failure::usage(e.to_string()))?;
    let l = summary.layout;
    report.push(format!(
        "layout file={} alpha={} alpha1={} beta={} packets",
        l.file, l.alpha, l.alpha1, l.beta
    ));
    if summary.below_curve {
        report.push("warning: operating point lies below the trade-off curve");
    }
    report.push(format!("seeds {}..{}", args.seed, args.seed + args.trials));
    report.push(format!(
        "bandwidth per round {} packets = {} of M",
        summary.packets_per_round,
        Q::ratio(summary.packets_per_round as i64, l.file as i64)
    ));
    report.push(format!(
        "any-k held in {}/{} trials",
        summary.successes, summary.trials
    ));
    if !summary.failing_seeds.is_empty() {
        report.push(format!(
            "failing seeds {}",
            summary
                .failing_seeds
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(",")
        ));
    }
    emit(&args.output, &report.to_string())?;
    Ok(summary.failing_seeds.is_empty())
}

fn run(argv: Vec<String>) -> Result<bool, Failure> {
    let argv = expand_config(argv)?;
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return if code == 0 {
                Ok(true)
            } else {
                Err(Failure {
                    code,
                    message: String::new(),
                })
            };
        }
    };
    match &cli.command {
        Command::Curve(a) => cmd_curve(a),
        Command::Point(a) => cmd_point(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Simulate(a) => cmd_simulate(a),
    }
}

fn main() -> ExitCode {
    match run(std::env::args().collect()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_VERIFY),
        Err(f) => {
            if !f.message.is_empty() {
                eprintln!("error: {}", f.message);
            }
            ExitCode::from(f.code)
        }
    }
}
