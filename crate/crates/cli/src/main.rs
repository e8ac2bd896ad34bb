use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use coxthick::bounds;
use coxthick::census::{self, CensusError, CensusOptions};
use coxthick::coxeter::{parse_coxeter, CoxeterMatrix};
use coxthick::general::{self, GeneralError, RhReport};
use coxthick::graph::{parse_graph, VertexSet};
use coxthick::racg::classify_racg;
use coxthick::random_lab::{run_sweep, DensitySchedule, LabError, SweepConfig};
use coxthick::Status;
use serde_json::json;

#[derive(Parser)]
#[command(name = "coxthick", version, about = "Thickness and relative hyperbolicity of Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the right-angled Coxeter group of a graph file.
    ClassifyRacg {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Classify a Coxeter system given by a matrix file.
    ClassifyCoxeter {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Monte Carlo sweep over G(n, p(n)).
    Sweep {
        /// Comma-separated vertex counts.
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// Density expression in n, e.g. "10*log(n)/n".
        #[arg(long)]
        p: String,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        /// Output directory for trials.csv and aggregate.csv.
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Count thick labelled graphs and their cliques.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        workers: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Indices per checkpointed range.
        #[arg(long, default_value_t = census::DEFAULT_CHUNK)]
        chunk: u64,
    },
    /// Evaluate the analytic bounds.
    #[command(group(ArgGroup::new("which").required(true).args(["f", "pi_bound", "pi9", "tail", "fsmall"])))]
    Bounds {
        /// f(n).
        #[arg(long, value_name = "N")]
        f: Option<usize>,
        /// The bound on pi_{2n} from t(n), c(n) (defaults: n = 9 constants).
        #[arg(long)]
        pi_bound: bool,
        /// pi_9 = 1 - t(9)/2^36.
        #[arg(long)]
        pi9: bool,
        /// Sum of f(i) for i = N .. N+K-1.
        #[arg(long, num_args = 2, value_names = ["N", "K"])]
        tail: Option<Vec<usize>>,
        /// The three-term bound on f(N).
        #[arg(long, value_name = "N")]
        fsmall: Option<usize>,
        #[arg(long, default_value_t = 9)]
        n: usize,
        #[arg(long, default_value_t = bounds::T9)]
        t: u64,
        #[arg(long, default_value_t = bounds::C9)]
        c: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

const IO: u8 = 1;
const MALFORMED: u8 = 2;
const GUARD: u8 = 3;
const CHECKPOINT: u8 = 4;
const INTERNAL: u8 = 5;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::new(IO, format!("{}: {e}", path.display())))
}

fn general_failure(e: GeneralError) -> Failure {
    match e {
        GeneralError::TooLarge { .. } => Failure::new(GUARD, e.to_string()),
        GeneralError::Coxeter(_) | GeneralError::ImproperPeripheral(_) => Failure::new(MALFORMED, e.to_string()),
        GeneralError::Inconsistent(_) => Failure::new(INTERNAL, e.to_string()),
    }
}

fn set_list(sets: &[VertexSet]) -> String {
    let parts: Vec<String> = sets.iter().map(|s| s.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

fn json_sets(sets: &[VertexSet]) -> serde_json::Value {
    json!(sets.iter().map(VertexSet::to_vec).collect::<Vec<_>>())
}

fn rh_summary(rh: &RhReport) -> String {
    let flag = |b: bool| if b { "ok" } else { "FAIL" };
    format!("RH1 {}, RH2 {}, RH3 {}", flag(rh.rh1_ok), flag(rh.rh2_ok), flag(rh.rh3_ok))
}

fn classify_racg_cmd(path: &Path, as_json: bool) -> Result<String, Failure> {
    let g = parse_graph(&read(path)?).map_err(|e| Failure::new(MALFORMED, format!("{}: {e}", path.display())))?;
    let r = classify_racg(&g);
    // Peripherals of a relatively hyperbolic group are re-certified on the
    // Coxeter matrix when it is small enough to enumerate.
    let certificate = if r.status != Status::RelativelyHyperbolic {
        None
    } else if g.n() > general::ENUMERATION_GUARD {
        Some("skipped (too many vertices to enumerate)".to_string())
    } else {
        let rh = general::verify_rh(&CoxeterMatrix::from_racg(&g), &r.peripherals).map_err(general_failure)?;
        if !rh.passed() {
            return Err(Failure::new(INTERNAL, format!("peripherals fail the certificate: {}", rh_summary(&rh))));
        }
        Some(rh_summary(&rh))
    };
    if as_json {
        let v = json!({
            "status": r.status.to_string(),
            "order0": r.order0,
            "peripherals": json_sets(&r.peripherals),
            "rh_certificate": certificate,
        });
        return Ok(format!("{v}\n"));
    }
    let mut out = format!("status: {}\norder0: {}\nperipherals: {}\n", r.status, r.order0, set_list(&r.peripherals));
    if let Some(c) = certificate {
        let _ = writeln!(out, "rh_certificate: {c}");
    }
    Ok(out)
}

fn classify_coxeter_cmd(path: &Path, as_json: bool) -> Result<String, Failure> {
    let m = parse_coxeter(&read(path)?).map_err(|e| Failure::new(MALFORMED, format!("{}: {e}", path.display())))?;
    let r = general::classify_coxeter(&m).map_err(general_failure)?;
    let p = &r.peripherals;
    if as_json {
        let v = json!({
            "status": r.status.to_string(),
            "peripherals": json_sets(&p.j_list),
            "spans_all": p.spans_all,
            "rh": r.rh.as_ref().map(|rh| json!({
                "rh1": rh.rh1_ok,
                "rh2": rh.rh2_ok,
                "rh3": rh.rh3_ok,
            })),
            "witnesses": p.witnesses.iter().map(|w| w.render()).collect::<Vec<_>>(),
        });
        return Ok(format!("{v}\n"));
    }
    let mut out = format!("status: {}\nperipherals: {}\n", r.status, set_list(&p.j_list));
    if let Some(rh) = &r.rh {
        let _ = writeln!(out, "rh_certificate: {}", rh_summary(rh));
    }
    if !p.witnesses.is_empty() {
        out.push_str("witnesses:\n");
        for (j, w) in p.j_list.iter().zip(&p.witnesses) {
            let _ = writeln!(out, "  {j}");
            for line in w.render().lines() {
                let _ = writeln!(out, "    {line}");
            }
        }
    }
    Ok(out)
}

fn sweep_cmd(config: SweepConfig, out: &Path) -> Result<String, Failure> {
    let lab = |e: LabError| match e {
        LabError::Density(_) | LabError::Config(_) => Failure::new(MALFORMED, e.to_string()),
        LabError::Csv(_) | LabError::Io(_) => Failure::new(IO, e.to_string()),
    };
    let report = run_sweep(&config).map_err(lab)?;
    report.write_to_dir(out).map_err(lab)?;
    let mut text = String::from("n,p,trials,prop_thick,prop_relhyp,prop_hyperbolic,prop_finite,prop_virtz\n");
    for a in &report.aggregates {
        let _ = writeln!(
            text,
            "{},{},{},{},{},{},{},{}",
            a.n, a.p, a.trials, a.prop_thick, a.prop_relhyp, a.prop_hyperbolic, a.prop_finite, a.prop_virtz
        );
    }
    let _ = writeln!(text, "wrote {} and {}", out.join("trials.csv").display(), out.join("aggregate.csv").display());
    Ok(text)
}

fn census_cmd(n: usize, opts: CensusOptions) -> Result<String, Failure> {
    let r = census::census_with(n, &opts).map_err(|e| match e {
        CensusError::TooLarge(_) => Failure::new(GUARD, e.to_string()),
        CensusError::Mismatch { .. } => Failure::new(CHECKPOINT, e.to_string()),
        CensusError::Checkpoint { .. } => Failure::new(MALFORMED, e.to_string()),
        CensusError::Io(_) => Failure::new(IO, e.to_string()),
    })?;
    Ok(format!(
        "There are {} thick graphs on {} labelled vertices, with {} cliques in total (empty clique and singletons included).\nRESULT {} {} {}\n",
        r.t, r.n, r.c, r.n, r.t, r.c
    ))
}

fn bounds_cmd(cmd: Command) -> Result<String, Failure> {
    let Command::Bounds {
        f,
        pi_bound,
        pi9,
        tail,
        fsmall,
        n,
        t,
        c,
    } = cmd
    else {
        unreachable!()
    };
    let domain = |e: bounds::BoundsError| Failure::new(MALFORMED, e.to_string());
    let mut out = String::new();
    if let Some(k) = f {
        if k >= 1 && k <= bounds::F_EXACT_LIMIT {
            let exact = bounds::f_exact(k).map_err(domain)?;
            let _ = writeln!(out, "f({k}) = {} (exact rational, 15 significant digits)", bounds::render_decimal(&exact, 15));
        } else {
            let log10 = bounds::ln_f(k).map_err(domain)? / std::f64::consts::LN_10;
            let exp = log10.floor();
            let mantissa = 10f64.powf(log10 - exp);
            let _ = writeln!(out, "f({k}) = {mantissa:.10}e{exp} (log-space double precision, about 10 significant digits)");
        }
    }
    if pi9 {
        let exact = bounds::pi9_exact(t);
        let _ = writeln!(out, "pi9 = {} (exact: 1 - {t}/2^36, 15 significant digits)", bounds::render_decimal(&exact, 15));
    }
    if pi_bound {
        let pi = if n == 9 {
            bounds::pi9_exact(t)
        } else {
            return Err(Failure::new(MALFORMED, "--pi-bound needs pi_n, which is only known for n = 9"));
        };
        let alpha = bounds::pi_2n_bound_exact(n, t, c, &pi).map_err(domain)?;
        let a = bounds::to_f64(&alpha);
        let _ = writeln!(out, "pi_{} bound = {} (exact rational, 15 significant digits)", 2 * n, bounds::render_decimal(&alpha, 15));
        let _ = writeln!(
            out,
            "alpha^2 + {} < alpha: {}",
            bounds::BETA,
            bounds::contraction_holds(a, bounds::BETA)
        );
    }
    if let Some(nk) = tail {
        let v = bounds::additive_tail(nk[0], nk[1]).map_err(domain)?;
        let _ = writeln!(out, "sum f(i), i = {}..{} = {v:.12e} (double precision)", nk[0], nk[0] + nk[1]);
    }
    if let Some(k) = fsmall {
        let b = bounds::fsmall_breakdown(k).map_err(domain)?;
        let _ = writeln!(out, "upper tail            = {:.6e}", b.upper_tail);
        let _ = writeln!(out, "hoeffding term        = {:.6e} (closed-form g)", b.hoeffding_term);
        let _ = writeln!(out, "hoeffding term, exact = {:.6e}", b.hoeffding_term_exact_g);
        let _ = writeln!(out, "small cliques         = {:.6e}", b.small_cliques);
        let _ = writeln!(out, "total                 = {:.6e} (double precision)", b.total);
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::ClassifyRacg { path, json } => classify_racg_cmd(&path, json),
        Command::ClassifyCoxeter { path, json } => classify_coxeter_cmd(&path, json),
        Command::Sweep {
            n,
            p,
            trials,
            seed,
            out,
            workers,
        } => {
            let schedule = DensitySchedule::parse(&p).map_err(|e| Failure::new(MALFORMED, e.to_string()))?;
            let config = SweepConfig {
                n_values: n,
                schedule,
                trials,
                master_seed: seed,
                workers,
            };
            sweep_cmd(config, &out)
        }
        Command::Census {
            n,
            workers,
            checkpoint,
            chunk,
        } => census_cmd(n, CensusOptions { workers, checkpoint, chunk }),
        cmd @ Command::Bounds { .. } => bounds_cmd(cmd),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
