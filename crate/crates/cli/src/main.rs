//! Command-line surface: bound evaluation, resource estimation, sweep data,
//! and the exact verification suite.

use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use hubest::gate_costs::GateCost;
use hubest::lattice::LatticeSpec;
use hubest::oracle::{run_suite, CheckReport};
use hubest::pe_estimator::{estimate, EstimateOptions, Method, ResourceEstimate, XStrategy};
use hubest::report::{alpha_sweep, bounds_table, lattice_sweep, round_2sf, BoundsRow, SweepRow};
use hubest::trotter_bounds::{w_plaq, w_so1, w_so2, TrotterBound};

/// Environment variable prefixed to relative `--out` paths.
const OUT_DIR_ENV: &str = "HUBEST_OUT_DIR";

#[derive(Parser)]
#[command(
    name = "hubest",
    about = "Trotter error bounds and fault-tolerant resource estimates for Hubbard-model phase estimation",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Plaq,
    SoFfftPlus,
    SoFfftLegacy,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Plaq => Method::Plaq,
            MethodArg::SoFfftPlus => Method::SoFfftPlus,
            MethodArg::SoFfftLegacy => Method::SoFfftLegacy,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    So1,
    So2,
    Plaq,
    All,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
    /// Write to this file instead of stdout. Relative paths are joined with
    /// $HUBEST_OUT_DIR when it is set.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Trotter error constants W and per-step gate costs.
    Bounds {
        /// Lattice side length.
        #[arg(long, short = 'l')]
        l: Option<usize>,
        /// Interaction strength over hopping, u/tau.
        #[arg(long, default_value_t = 4.0)]
        u: f64,
        /// Hopping amplitude.
        #[arg(long, default_value_t = 1.0)]
        tau: f64,
        /// Which product-formula ordering to evaluate.
        #[arg(long, value_enum, default_value = "all")]
        scheme: SchemeArg,
        /// Reproduce the full scheme-comparison table (argument must be 1).
        #[arg(long)]
        table: Option<u8>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// End-to-end phase-estimation resource estimate.
    Estimate {
        #[arg(long, short = 'l')]
        l: Option<usize>,
        #[arg(long, default_value_t = 4.0)]
        u: f64,
        #[arg(long, default_value_t = 1.0)]
        tau: f64,
        /// Estimation pipeline.
        #[arg(long, value_enum, default_value = "plaq")]
        method: MethodArg,
        /// Hamming-weight-phasing batch size; defaults to L^2/2.
        #[arg(long)]
        hwp_m: Option<u64>,
        /// Fix the synthesis fraction instead of optimizing it.
        #[arg(long)]
        x: Option<f64>,
        /// Override the additive error target.
        #[arg(long)]
        epsilon: Option<f64>,
        /// Count the extra qubit holding the T-catalysis state.
        #[arg(long)]
        catalysis_qubit: bool,
        /// Reproduce the full resource table (argument must be 2).
        #[arg(long)]
        table: Option<u8>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Trade-off curves: Toffoli totals against ancilla budget or lattice
    /// size.
    Sweep {
        /// alpha: vary the ancilla budget at fixed L.
        /// lattice: vary L at the default L^2/2 allotment.
        #[arg(long)]
        mode: SweepMode,
        #[arg(long, short = 'l', default_value_t = 8)]
        l: usize,
        #[arg(long, default_value_t = 4.0)]
        u: f64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the exact verification suite; nonzero exit on any failure.
    Verify {
        /// Run a single named check (e.g. hhop-table) instead of the suite.
        #[arg(long)]
        check: Option<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SweepMode {
    Alpha,
    Lattice,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(exit) => std::process::exit(exit),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Bounds { l, u, tau, scheme, table, output } => {
            let rows = match table {
                Some(1) => bounds_table(u)?,
                Some(n) => bail!("only the scheme-comparison table (--table 1) exists, got {n}"),
                None => {
                    let l = l.context("--l is required without --table")?;
                    single_bounds(l, u, tau, scheme)?
                }
            };
            emit(&output, &bounds_text(&rows), &bounds_csv(&rows), || {
                serde_json::to_string_pretty(&rows).map_err(Into::into)
            })?;
            Ok(0)
        }
        Command::Estimate {
            l,
            u,
            tau,
            method,
            hwp_m,
            x,
            epsilon,
            catalysis_qubit,
            table,
            output,
        } => {
            let rows = match table {
                Some(2) => hubest::report::resource_table()?,
                Some(n) => bail!("only the resource table (--table 2) exists, got {n}"),
                None => {
                    let l = l.context("--l is required without --table")?;
                    let spec = LatticeSpec::new(l, u * tau, tau)?;
                    let opts = EstimateOptions {
                        hwp_m,
                        x: match x {
                            Some(v) => XStrategy::Fixed(v),
                            None => XStrategy::Optimize,
                        },
                        epsilon,
                        catalysis_qubit,
                    };
                    vec![estimate(&spec, method.into(), &opts)?]
                }
            };
            emit(&output, &estimate_text(&rows), &estimate_csv(&rows), || {
                serde_json::to_string_pretty(&rows).map_err(Into::into)
            })?;
            Ok(0)
        }
        Command::Sweep { mode, l, u, output } => {
            let rows = match mode {
                SweepMode::Alpha => alpha_sweep(l, u)?,
                SweepMode::Lattice => lattice_sweep(u)?,
            };
            emit(&output, &sweep_csv(&rows), &sweep_csv(&rows), || {
                serde_json::to_string_pretty(&rows).map_err(Into::into)
            })?;
            Ok(0)
        }
        Command::Verify { check, output } => {
            let reports = run_suite(check.as_deref())?;
            let all_passed = reports.iter().all(|r| r.passed);
            emit(&output, &verify_text(&reports), &verify_csv(&reports), || {
                serde_json::to_string_pretty(&reports).map_err(Into::into)
            })?;
            Ok(if all_passed { 0 } else { 1 })
        }
    }
}

fn single_bounds(l: usize, u: f64, tau: f64, scheme: SchemeArg) -> Result<Vec<BoundsRow>> {
    let spec = LatticeSpec::new(l, u * tau, tau)?;
    let mut rows = Vec::new();
    let mut push = |method: Method, bound: TrotterBound, per_step: GateCost| {
        rows.push(BoundsRow { method, l, u_over_tau: u, bound, per_step });
    };
    // split-operator orderings run on the Fourier-transform circuit, which
    // exists only at L in {4, 8, 16}; the plaquette bound needs even L
    let ffft_step = || {
        hubest::gate_costs::so_ffft_plus_step_cost(l)
            .context("split-operator bounds apply to L in {4, 8, 16} where the transform exists")
    };
    let plaq_parts = || -> Result<(TrotterBound, GateCost)> {
        let part =
            hubest::lattice::plaquette_partition(&hubest::lattice::build_square_lattice(&spec)?)?;
        Ok((w_plaq(&spec, &part)?, hubest::gate_costs::plaq_step_cost(l)?))
    };
    match scheme {
        SchemeArg::So1 => push(Method::SoFfftPlus, w_so1(&spec)?, ffft_step()?),
        SchemeArg::So2 => push(Method::SoFfftPlus, w_so2(&spec)?, ffft_step()?),
        SchemeArg::Plaq => {
            let (bound, step) = plaq_parts()?;
            push(Method::Plaq, bound, step);
        }
        SchemeArg::All => {
            if let Ok(step) = hubest::gate_costs::so_ffft_plus_step_cost(l) {
                push(Method::SoFfftPlus, w_so1(&spec)?, step);
                push(Method::SoFfftPlus, w_so2(&spec)?, step);
            }
            if l.is_multiple_of(2) {
                let (bound, step) = plaq_parts()?;
                push(Method::Plaq, bound, step);
            }
            if rows.is_empty() {
                bail!("no scheme applies at L={l}: split-operator needs L in {{4, 8, 16}}, the plaquette partition needs even L");
            }
        }
    }
    Ok(rows)
}

// --- rendering ------------------------------------------------------------

fn bounds_text(rows: &[BoundsRow]) -> String {
    let mut s = String::from("method          scheme  L   u/tau  W (2 s.f.)   N_TOF  N_T    N_R\n");
    for r in rows {
        s.push_str(&format!(
            "{:<15} {:<7} {:<3} {:<6} {:<12} {:<6} {:<6} {}\n",
            r.method.to_string(),
            r.bound.scheme.to_string(),
            r.l,
            r.u_over_tau,
            round_2sf(r.bound.w),
            r.per_step.n_tof,
            r.per_step.n_t,
            r.per_step.n_rot
        ));
    }
    s
}

fn bounds_csv(rows: &[BoundsRow]) -> String {
    let mut s =
        String::from("method,scheme,l,u_over_tau,tau,w,lemma1_term,lemma2_term,plaquette_extra,step_tof,step_t,step_rot\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},1,{},{},{},{},{},{},{}\n",
            r.method,
            r.bound.scheme,
            r.l,
            r.u_over_tau,
            r.bound.w,
            r.bound.lemma1_term,
            r.bound.lemma2_term,
            r.bound.plaquette_extra,
            r.per_step.n_tof,
            r.per_step.n_t,
            r.per_step.n_rot
        ));
    }
    s
}

fn estimate_text(rows: &[ResourceEstimate]) -> String {
    let mut s = String::from(
        "method  L   u/tau  n_q    N_TOF     N_T       Toffoli-eq  t         n_pe   x\n",
    );
    let mut warned = false;
    for r in rows {
        warned |= r.solution.validity_warning;
        s.push_str(&format!(
            "{:<7} {:<3} {:<6} {:<6} {:<9} {:<9} {:<11} {:<9.4e} {:<6} {:.4}{}\n",
            r.method.to_string(),
            r.l,
            r.u / r.tau,
            r.n_q,
            format_2sf(r.solution.total_tof),
            format_2sf(r.solution.total_t),
            format_2sf(r.solution.total_toffoli_equivalent),
            r.solution.t,
            r.solution.n_pe,
            r.solution.budget.x,
            if r.solution.validity_warning { "  !" } else { "" },
        ));
    }
    if warned {
        s.push_str("!: W t^3 exceeds 0.1; the step-error model assumes it is small\n");
    }
    s
}

fn format_2sf(v: u64) -> String {
    format!("{:.1e}", round_2sf(v as f64))
}

fn estimate_csv(rows: &[ResourceEstimate]) -> String {
    let mut s = String::from(
        "method,l,u_over_tau,tau,epsilon,x,w,t,n_pe,hwp_m,hwp_alpha,step_tof,step_t,step_rot,\
         n_ht,total_tof,total_t,total_toffoli_equivalent,n_q,validity\n",
    );
    for r in rows {
        let (m, alpha) = r.hwp.map(|h| (h.m, h.alpha)).unwrap_or((1, 0));
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
            r.method,
            r.l,
            r.u / r.tau,
            r.tau,
            r.epsilon,
            r.solution.budget.x,
            r.bound.w,
            r.solution.t,
            r.solution.n_pe,
            m,
            alpha,
            r.per_step.n_tof,
            r.per_step.n_t,
            r.per_step.n_rot,
            r.solution.n_ht,
            r.solution.total_tof,
            r.solution.total_t,
            r.solution.total_toffoli_equivalent,
            r.n_q,
            r.solution.validity
        ));
    }
    s
}

fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from("l,u_over_tau,method,alpha,hwp_m,total_toffoli_equivalent\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.l, r.u_over_tau, r.method, r.alpha, r.hwp_m, r.total_toffoli_equivalent
        ));
    }
    s
}

fn verify_text(reports: &[CheckReport]) -> String {
    let mut s = String::new();
    for r in reports {
        s.push_str(&format!(
            "{} {:<22} {:<22} dev {:9.2e} tol {:8.1e} {:6.2}s  {}\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.instance,
            r.deviation,
            r.tolerance,
            r.seconds,
            r.detail
        ));
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    s.push_str(&format!("{} checks, {} failed\n", reports.len(), failed));
    s
}

fn verify_csv(reports: &[CheckReport]) -> String {
    let mut s = String::from("name,instance,passed,deviation,tolerance,seconds\n");
    for r in reports {
        s.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.name, r.instance, r.passed, r.deviation, r.tolerance, r.seconds
        ));
    }
    s
}

fn emit(
    output: &OutputArgs,
    table: &str,
    csv: &str,
    json: impl FnOnce() -> Result<String>,
) -> Result<()> {
    let mut text = match output.format {
        Format::Table => table.to_string(),
        Format::Csv => csv.to_string(),
        Format::Json => json()?,
    };
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match &output.out {
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
        }
        Some(path) => {
            let path = match (path.is_relative(), std::env::var_os(OUT_DIR_ENV)) {
                (true, Some(dir)) => PathBuf::from(dir).join(path),
                _ => path.clone(),
            };
            if let Some(parent) = path.parent() {
                if !parent.as_os_str().is_empty() {
                    std::fs::create_dir_all(parent)?;
                }
            }
            std::fs::write(&path, text)
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }
    Ok(())
}
