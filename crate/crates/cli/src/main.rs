//! `jsp`: command-line front end over the jsp-core pipelines.
//!
//! Result data (CSV, QUBO text, reports) goes to `--out` or stdout; progress
//! and summary lines go to stderr. Exit codes: 0 success, 1 finished but no
//! solution found, 2 usage or input error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use jsp_core::{
    build_qubo, confirm_ground_state, dummy_problem, exhaustive_csv, exhaustive_search,
    export_qubo, greedy_guess, histogram, parse_instance, random_csv, random_sample_search,
    sample_uniform, scatter_data, simulated_anneal, sweep, sweep_range, AnnealParams,
    CoeffInputs, CoefficientSet, JspInstance, Route, SampleSet, SolverConfig, DEFAULT_C_P,
    DEFAULT_OAM_MULTIPLIER, DEFAULT_OPS_MULTIPLIER, DEFAULT_P_GUESS, DEFAULT_SEED,
};

const EXIT_OK: u8 = 0;
const EXIT_NO_SOLUTION: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "jsp",
    version,
    about = "Route-selection toolkit: exhaustive, random and annealing solvers over a QUBO encoding"
)]
struct Cli {
    /// Worker threads for parallel pipelines (0 or omitted: all cores).
    /// Results are identical for every worker count.
    #[arg(long, global = true)]
    workers: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Parse an instance file and report whether it is valid.
    Validate {
        /// Instance file.
        instance: PathBuf,
    },

    /// Enumerate every route for each step count and report the optima.
    Exhaustive {
        /// Instance file.
        instance: PathBuf,

        /// Step count or inclusive range, e.g. `6` or `4:8`.
        #[arg(long, value_parser = parse_step_range)]
        steps: StepRange,

        /// CSV output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Draw uniformly random routes and count hits on the exhaustive optimum.
    Random {
        /// Instance file.
        instance: PathBuf,

        /// Step count or inclusive range, e.g. `6` or `4:8`.
        #[arg(long, value_parser = parse_step_range)]
        steps: StepRange,

        /// Routes drawn per step count.
        #[arg(long, default_value_t = 10_000)]
        reads: u64,

        /// Base RNG seed; the run for step count xi uses seed + xi.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,

        /// CSV output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Build the QUBO for one step count and write it in sparse text form.
    Qubo {
        /// Instance file.
        instance: PathBuf,

        /// Step count.
        #[arg(long)]
        steps: usize,

        #[command(flatten)]
        coeffs: CoeffArgs,

        /// Output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Anneal the QUBO over a range of step counts and pick the best route.
    Anneal {
        /// Instance file.
        instance: PathBuf,

        /// Step count or inclusive range, e.g. `6` or `4:8`.
        #[arg(long, value_parser = parse_step_range)]
        steps: StepRange,

        #[command(flatten)]
        coeffs: CoeffArgs,

        #[command(flatten)]
        anneal: AnnealArgs,

        /// RNG seed.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,

        /// CSV output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Check that the QUBO ground state matches the exhaustive optimum.
    Confirm {
        /// Instance file.
        instance: PathBuf,

        /// Step count.
        #[arg(long)]
        steps: usize,

        #[command(flatten)]
        coeffs: CoeffArgs,

        /// Report output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Histogram the route-quality term over all routes of one step count.
    Hist {
        /// Instance file.
        instance: PathBuf,

        /// Step count.
        #[arg(long)]
        steps: usize,

        /// Number of histogram bins.
        #[arg(long, default_value_t = 30)]
        bins: usize,

        #[command(flatten)]
        coeffs: CoeffArgs,

        /// CSV output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Centre a solver window on the greedy step-count guess and run it.
    Sweep {
        /// Instance file.
        instance: PathBuf,

        /// Half-width of the step-count window around the greedy guess.
        #[arg(long, default_value_t = 2)]
        delta: usize,

        /// Solver to run on each step count.
        #[arg(long, value_enum, default_value_t = SolverKind::Anneal)]
        solver: SolverKind,

        #[command(flatten)]
        coeffs: CoeffArgs,

        #[command(flatten)]
        anneal: AnnealArgs,

        /// RNG seed.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,

        /// CSV output file (stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Sample the k-hot benchmark problem uniformly and by annealing.
    Dummy {
        /// Number of binary variables.
        #[arg(long, default_value_t = 20)]
        vars: usize,

        /// Target number of set bits.
        #[arg(long, default_value_t = 5)]
        ones: usize,

        /// Number of histogram bins.
        #[arg(long, default_value_t = 30)]
        bins: usize,

        #[command(flatten)]
        anneal: AnnealArgs,

        /// RNG seed; the annealer uses seed + 1 so both samplers draw
        /// independent streams.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,

        /// Output prefix: writes <prefix>_uniform.csv and <prefix>_anneal.csv
        /// (both histograms go to stdout if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Inclusive step-count window, parsed from `lo:hi` or a single value.
#[derive(Clone, Copy, Debug)]
struct StepRange {
    lo: usize,
    hi: usize,
}

fn parse_step_range(s: &str) -> Result<StepRange, String> {
    let part = |p: &str| {
        p.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid step count '{p}'"))
    };
    let range = match s.split_once(':') {
        Some((lo, hi)) => StepRange {
            lo: part(lo)?,
            hi: part(hi)?,
        },
        None => {
            let v = part(s)?;
            StepRange { lo: v, hi: v }
        }
    };
    if range.lo < 1 || range.lo > range.hi {
        return Err(format!("invalid range '{s}': want lo:hi with 1 <= lo <= hi"));
    }
    Ok(range)
}

/// Hamiltonian coefficient knobs shared by the QUBO-based subcommands.
#[derive(Args, Clone, Copy)]
struct CoeffArgs {
    /// Priority weight.
    #[arg(long, default_value_t = DEFAULT_C_P)]
    c_p: f64,

    /// Priority total the travel and visit weights are balanced against.
    #[arg(long, default_value_t = DEFAULT_P_GUESS)]
    p_guess: f64,

    /// One-place-per-step penalty as a multiple of the priority weight.
    #[arg(long, default_value_t = DEFAULT_OPS_MULTIPLIER)]
    ops_mult: f64,

    /// At-most-once-per-place penalty as a multiple of the priority weight.
    #[arg(long, default_value_t = DEFAULT_OAM_MULTIPLIER)]
    oam_mult: f64,
}

impl CoeffArgs {
    fn inputs(&self) -> CoeffInputs {
        CoeffInputs {
            c_p: self.c_p,
            p_guess: self.p_guess,
            ops_multiplier: self.ops_mult,
            oam_multiplier: self.oam_mult,
        }
    }

    /// Derives the coefficient set and enforces penalty dominance.
    fn resolve(&self, instance: &JspInstance) -> Result<CoefficientSet, String> {
        let coeffs = self.inputs().derive(instance).map_err(|e| e.to_string())?;
        coeffs
            .check_penalty_dominance(instance)
            .map_err(|e| e.to_string())?;
        Ok(coeffs)
    }
}

/// Annealer schedule knobs.
#[derive(Args, Clone, Copy)]
struct AnnealArgs {
    /// Independent reads per step count.
    #[arg(long, default_value_t = 10_000)]
    reads: u64,

    /// Metropolis sweeps per read (0 degenerates to uniform sampling).
    #[arg(long, default_value_t = 1000)]
    sweeps: u32,

    /// Target acceptance probability at the hot end, strictly in (0, 1).
    #[arg(long, default_value_t = 0.8)]
    hot_acceptance: f64,

    /// Cold temperature as a fraction of the smallest nonzero probe step.
    #[arg(long, default_value_t = 0.1)]
    cold_factor: f64,
}

impl AnnealArgs {
    fn solver(&self) -> SolverConfig {
        SolverConfig::Anneal {
            reads: self.reads,
            sweeps: self.sweeps,
            hot_acceptance: self.hot_acceptance,
            cold_factor: self.cold_factor,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SolverKind {
    /// Simulated annealing.
    Anneal,
    /// Uniform random bitstrings.
    Uniform,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        // A later repeat fails once the global pool exists; the explicit
        // build only needs to win when it runs before any parallel work.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global();
    }
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn run(cmd: Cmd) -> Result<u8, String> {
    match cmd {
        Cmd::Validate { instance } => run_validate(&instance),
        Cmd::Exhaustive {
            instance,
            steps,
            out,
        } => run_exhaustive(&instance, steps, out.as_deref()),
        Cmd::Random {
            instance,
            steps,
            reads,
            seed,
            out,
        } => run_random(&instance, steps, reads, seed, out.as_deref()),
        Cmd::Qubo {
            instance,
            steps,
            coeffs,
            out,
        } => run_qubo(&instance, steps, &coeffs, out.as_deref()),
        Cmd::Anneal {
            instance,
            steps,
            coeffs,
            anneal,
            seed,
            out,
        } => run_anneal(&instance, steps, &coeffs, &anneal, seed, out.as_deref()),
        Cmd::Confirm {
            instance,
            steps,
            coeffs,
            out,
        } => run_confirm(&instance, steps, &coeffs, out.as_deref()),
        Cmd::Hist {
            instance,
            steps,
            bins,
            coeffs,
            out,
        } => run_hist(&instance, steps, bins, &coeffs, out.as_deref()),
        Cmd::Sweep {
            instance,
            delta,
            solver,
            coeffs,
            anneal,
            seed,
            out,
        } => run_sweep(&instance, delta, solver, &coeffs, &anneal, seed, out.as_deref()),
        Cmd::Dummy {
            vars,
            ones,
            bins,
            anneal,
            seed,
            out,
        } => run_dummy(vars, ones, bins, &anneal, seed, out.as_deref()),
    }
}

fn load_instance(path: &Path) -> Result<JspInstance, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_output(out: Option<&Path>, content: &str) -> Result<(), String> {
    match out {
        Some(path) => {
            fs::write(path, content).map_err(|e| format!("{}: {e}", path.display()))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn check_steps(range: StepRange, instance: &JspInstance) -> Result<(), String> {
    let n = instance.num_places();
    if range.hi > n {
        return Err(format!(
            "step range {}:{} exceeds the {} places in the instance",
            range.lo, range.hi, n
        ));
    }
    Ok(())
}

fn route_summary(route: &Route, instance: &JspInstance) -> String {
    format!(
        "{}  p_tot={} t_tot={}",
        route.label(instance),
        route.p_tot,
        route.t_tot
    )
}

fn run_validate(path: &Path) -> Result<u8, String> {
    let instance = load_instance(path)?;
    println!(
        "ok: {} ({} places, home {}, t_max {} days, speed {} leagues/day)",
        instance.name(),
        instance.num_places(),
        instance.home_id(),
        instance.t_max(),
        instance.speed()
    );
    Ok(EXIT_OK)
}

fn run_exhaustive(path: &Path, steps: StepRange, out: Option<&Path>) -> Result<u8, String> {
    let instance = load_instance(path)?;
    check_steps(steps, &instance)?;
    let mut reports = Vec::new();
    for xi in steps.lo..=steps.hi {
        let report = exhaustive_search(&instance, xi).map_err(|e| e.to_string())?;
        let best = report
            .best_priority
            .map_or_else(|| "none".to_owned(), |p| p.to_string());
        eprintln!(
            "xi={} best={} optima={} checked={} runtime={:.3}s",
            report.xi,
            best,
            report.optima_count(),
            report.routes_checked,
            report.runtime_s
        );
        reports.push(report);
    }
    let found_any = reports.iter().any(|r| r.best_priority.is_some());
    write_output(out, &exhaustive_csv(&reports, &instance))?;
    Ok(if found_any { EXIT_OK } else { EXIT_NO_SOLUTION })
}

fn run_random(
    path: &Path,
    steps: StepRange,
    reads: u64,
    seed: u64,
    out: Option<&Path>,
) -> Result<u8, String> {
    let instance = load_instance(path)?;
    check_steps(steps, &instance)?;
    let mut reports = Vec::new();
    for xi in steps.lo..=steps.hi {
        let leg_seed = seed.wrapping_add(xi as u64);
        let report =
            random_sample_search(&instance, xi, reads, leg_seed).map_err(|e| e.to_string())?;
        eprintln!(
            "xi={} hits={} expected={:.4} best={}",
            report.xi,
            report.found_optimal,
            report.expected,
            report
                .best_found
                .as_ref()
                .map_or_else(|| "none".to_owned(), |r| route_summary(r, &instance)),
        );
        reports.push(report);
    }
    let found_any = reports.iter().any(|r| r.best_found.is_some());
    write_output(out, &random_csv(&reports, &instance))?;
    Ok(if found_any { EXIT_OK } else { EXIT_NO_SOLUTION })
}

fn run_qubo(
    path: &Path,
    steps: usize,
    coeffs: &CoeffArgs,
    out: Option<&Path>,
) -> Result<u8, String> {
    let instance = load_instance(path)?;
    let coeffs = coeffs.resolve(&instance)?;
    let model = build_qubo(&instance, steps, &coeffs).map_err(|e| e.to_string())?;
    eprintln!(
        "{} variables, {} nonzero entries, offset {}",
        model.num_vars(),
        model.coefficients().len(),
        model.offset()
    );
    write_output(out, &export_qubo(&model))?;
    Ok(EXIT_OK)
}

fn run_anneal(
    path: &Path,
    steps: StepRange,
    coeffs: &CoeffArgs,
    anneal: &AnnealArgs,
    seed: u64,
    out: Option<&Path>,
) -> Result<u8, String> {
    let instance = load_instance(path)?;
    check_steps(steps, &instance)?;
    coeffs.resolve(&instance)?;
    let result = sweep_range(
        &instance,
        steps.lo,
        steps.hi,
        &anneal.solver(),
        &coeffs.inputs(),
        seed,
    )
    .map_err(|e| e.to_string())?;
    for leg in &result.per_xi {
        eprintln!(
            "xi={} reads={} valid={} feasible={} best={}",
            leg.xi,
            leg.reads,
            leg.valid,
            leg.feasible,
            leg.best
                .as_ref()
                .map_or_else(|| "none".to_owned(), |r| route_summary(r, &instance)),
        );
    }
    report_winner(result.winner.as_ref(), &instance);
    let code = exit_for(result.winner.is_some());
    write_output(out, &result.to_csv(&instance))?;
    Ok(code)
}

fn run_confirm(
    path: &Path,
    steps: usize,
    coeffs: &CoeffArgs,
    out: Option<&Path>,
) -> Result<u8, String> {
    let instance = load_instance(path)?;
    let coeffs = coeffs.resolve(&instance)?;
    let report = confirm_ground_state(&instance, steps, &coeffs).map_err(|e| e.to_string())?;
    eprintln!(
        "xi={} agrees={}",
        report.xi,
        if report.agrees { "yes" } else { "no" }
    );
    write_output(out, &report.to_text(&instance))?;
    Ok(EXIT_OK)
}

fn run_hist(
    path: &Path,
    steps: usize,
    bins: usize,
    coeffs: &CoeffArgs,
    out: Option<&Path>,
) -> Result<u8, String> {
    let instance = load_instance(path)?;
    let coeffs = coeffs.resolve(&instance)?;
    let scatter = scatter_data(&instance, steps, &coeffs).map_err(|e| e.to_string())?;
    let values: Vec<(f64, u64)> = scatter.points.iter().map(|&(_, _, h)| (h, 1)).collect();
    let hist = histogram(&values, bins).map_err(|e| e.to_string())?;
    eprintln!(
        "xi={} routes={} bins={}",
        steps,
        hist.total,
        hist.counts.len()
    );
    write_output(out, &hist.to_csv())?;
    Ok(EXIT_OK)
}

fn run_sweep(
    path: &Path,
    delta: usize,
    solver: SolverKind,
    coeffs: &CoeffArgs,
    anneal: &AnnealArgs,
    seed: u64,
    out: Option<&Path>,
) -> Result<u8, String> {
    let instance = load_instance(path)?;
    coeffs.resolve(&instance)?;
    let solver = match solver {
        SolverKind::Anneal => anneal.solver(),
        SolverKind::Uniform => SolverConfig::Uniform {
            reads: anneal.reads,
        },
    };
    let guess = greedy_guess(&instance);
    eprintln!(
        "greedy guess: {} ({} steps)",
        route_summary(&guess, &instance),
        guess.places.len()
    );
    let result = sweep(&instance, delta, &solver, &coeffs.inputs(), seed)
        .map_err(|e| e.to_string())?;
    for leg in &result.per_xi {
        eprintln!(
            "xi={} reads={} valid={} feasible={} best={}",
            leg.xi,
            leg.reads,
            leg.valid,
            leg.feasible,
            leg.best
                .as_ref()
                .map_or_else(|| "none".to_owned(), |r| route_summary(r, &instance)),
        );
    }
    report_winner(result.winner.as_ref(), &instance);
    let code = exit_for(result.winner.is_some());
    write_output(out, &result.to_csv(&instance))?;
    Ok(code)
}

fn run_dummy(
    vars: usize,
    ones: usize,
    bins: usize,
    anneal: &AnnealArgs,
    seed: u64,
    out: Option<&Path>,
) -> Result<u8, String> {
    let model = dummy_problem(vars, ones).map_err(|e| e.to_string())?;
    let uniform = sample_uniform(&model, anneal.reads, seed).map_err(|e| e.to_string())?;
    let params = AnnealParams {
        reads: anneal.reads,
        sweeps: anneal.sweeps,
        hot_acceptance: anneal.hot_acceptance,
        cold_factor: anneal.cold_factor,
        seed: seed.wrapping_add(1),
    };
    let annealed = simulated_anneal(&model, &params).map_err(|e| e.to_string())?;
    report_ground(&uniform);
    report_ground(&annealed);
    let uniform_csv = energy_histogram(&uniform, bins)?;
    let anneal_csv = energy_histogram(&annealed, bins)?;
    match out {
        Some(prefix) => {
            let stem = prefix.with_extension("");
            let base = stem.display();
            write_output(
                Some(Path::new(&format!("{base}_uniform.csv"))),
                &uniform_csv,
            )?;
            write_output(Some(Path::new(&format!("{base}_anneal.csv"))), &anneal_csv)?;
        }
        None => {
            print!("# sampler uniform\n{uniform_csv}# sampler anneal\n{anneal_csv}");
        }
    }
    Ok(EXIT_OK)
}

fn energy_histogram(samples: &SampleSet, bins: usize) -> Result<String, String> {
    let values: Vec<(f64, u64)> = samples
        .records
        .iter()
        .map(|r| (r.energy, r.occurrences))
        .collect();
    let hist = histogram(&values, bins).map_err(|e| e.to_string())?;
    Ok(hist.to_csv())
}

fn report_ground(samples: &SampleSet) {
    match samples.ground_hits() {
        Some((energy, hits)) => eprintln!(
            "{}: lowest energy {} in {}/{} reads ({:.4})",
            samples.sampler_label,
            energy,
            hits,
            samples.total_reads,
            hits as f64 / samples.total_reads as f64
        ),
        None => eprintln!("{}: no reads", samples.sampler_label),
    }
}

fn report_winner(winner: Option<&Route>, instance: &JspInstance) {
    match winner {
        Some(route) => eprintln!("winner: {}", route_summary(route, instance)),
        None => eprintln!("winner: none (no feasible route sampled)"),
    }
}

fn exit_for(found: bool) -> u8 {
    if found {
        EXIT_OK
    } else {
        EXIT_NO_SOLUTION
    }
}
