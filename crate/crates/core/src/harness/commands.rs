//! Subcommands and their flags.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::analysis::csv::{write_degree_csv, write_spectral_csv, write_sweep_csv};
use crate::analysis::{
    degree_histogram_experiment, pe_sweep, required_ebn0, run_trial, spectral_efficiency_curve,
    ScenarioConfig, SnrAxis, SweepResult,
};
use crate::error::{invalid, Error, Result};
use crate::euler::export::{to_grid, to_triplets};
use crate::euler::{
    build_mapping_matrix, check_partial_geometry, connectivity, construct_euler_square,
    count_cycles, extract_protograph, girth, verify_properties,
};
use crate::receiver::format_trace;
use crate::scalar::Real;
use crate::signatures::PhaseMode;

use super::config::{parse_grid, parse_usize_list, RunConfig};
use super::manifest::{unix_now, RunManifest};

#[derive(Debug, Parser)]
#[command(
    name = "eulersig",
    version,
    about = "Euler-square sparse signatures: design, simulation and analysis"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a design and write its matrices and a properties report.
    Construct(ConstructArgs),
    /// Monte-Carlo error probability sweep or required-Eb/N0 search.
    Simulate(SimulateArgs),
    /// Degree histograms before and after structural peeling.
    AnalyzeGraph(GraphArgs),
    /// Spectral efficiency of the signature matrices against Cover-Wyner.
    Spectral(SpectralArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// TOML config file or a run manifest.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory.
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Worker threads; 0 uses every available core.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub gamma: Option<usize>,
    #[arg(long)]
    pub rho: Option<usize>,
    /// prime, field or macneish.
    #[arg(long)]
    pub method: Option<String>,
    /// Search-step budget per cycle length.
    #[arg(long, default_value_t = 20_000_000)]
    pub cycle_budget: u64,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub gamma: Option<usize>,
    #[arg(long)]
    pub rho: Option<usize>,
    /// Block length, which is also the codeword length.
    #[arg(long)]
    pub ell: Option<usize>,
    #[arg(long)]
    pub ka: Option<usize>,
    /// scheduled, grant-free or unsourced.
    #[arg(long)]
    pub mode: Option<String>,
    /// Maximum trials per grid point.
    #[arg(long)]
    pub trials: Option<usize>,
    /// `a,b,c` or `lo:step:hi` in dB.
    #[arg(long)]
    pub ebn0_grid: Option<String>,
    /// Search for the Eb/N0 reaching this error probability.
    #[arg(long)]
    pub target: Option<f64>,
    /// Write the receiver trace of trial 0 at the first grid point.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[arg(long)]
    pub gamma: Option<usize>,
    #[arg(long)]
    pub rho: Option<usize>,
    /// Comma separated numbers of active users.
    #[arg(long)]
    pub ka: Option<String>,
    /// Activity draws per K_a.
    #[arg(long)]
    pub seeds: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SpectralArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    /// Comma separated orders.
    #[arg(long)]
    pub gamma: Option<String>,
    /// Comma separated degrees.
    #[arg(long)]
    pub rho: Option<String>,
    /// Operating points in dB, `a,b,c` or `lo:step:hi`.
    #[arg(long)]
    pub ebn0_grid: Option<String>,
    /// snr or ebn0.
    #[arg(long)]
    pub axis: Option<String>,
}

fn load_config(common: &CommonArgs) -> Result<RunConfig> {
    let mut cfg = match &common.config {
        Some(path) => RunConfig::from_toml(&fs::read_to_string(path)?)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = common.seed {
        cfg.seed = seed;
    }
    Ok(cfg)
}

fn with_pool<R: Send>(jobs: usize, f: impl FnOnce() -> Result<R> + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Io(std::io::Error::other(e.to_string())))?;
    pool.install(f)
}

fn finish(
    command: &str,
    cfg: &RunConfig,
    out: &Path,
    started: u64,
    outputs: Vec<String>,
) -> Result<()> {
    RunManifest::new(command, cfg, started, outputs).write(&out.join("manifest.toml"))
}

/// Runs one parsed command line, printing a short summary to stdout.
pub fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Construct(a) => construct(a),
        Command::Simulate(a) => simulate(a),
        Command::AnalyzeGraph(a) => analyze_graph(a),
        Command::Spectral(a) => spectral(a),
    }
}

fn construct(a: ConstructArgs) -> Result<()> {
    let started = unix_now();
    let mut cfg = load_config(&a.common)?;
    if let Some(g) = a.gamma {
        cfg.design.gamma = g;
    }
    if let Some(r) = a.rho {
        cfg.design.rho = r;
    }
    if let Some(m) = a.method {
        cfg.design.method = m;
    }
    let (gamma, rho) = (cfg.design.gamma, cfg.design.rho);
    let sq = construct_euler_square(gamma, rho, cfg.method()?)?;
    let f = build_mapping_matrix(&sq);
    let props = verify_properties(&f);
    let pag = check_partial_geometry(&f);

    let mut report = String::new();
    let _ = writeln!(
        report,
        "gamma {gamma}\nrho {rho}\nmethod {}",
        cfg.design.method
    );
    let _ = writeln!(
        report,
        "n_s {}\nK {}\nload {}",
        f.n_s(),
        f.num_users(),
        f.load()
    );
    let _ = writeln!(report, "biregular {}", props.biregular);
    let _ = writeln!(report, "rc_constrained {}", props.rc_constrained);
    let _ = writeln!(report, "cpm_array {}", props.cpm_array);
    let _ = writeln!(
        report,
        "partial_geometry {} (delta {})",
        pag.holds(),
        pag.delta
    );
    match girth(f.matrix()) {
        Some(g) => writeln!(report, "girth {g}"),
        None => writeln!(report, "girth none"),
    }
    .ok();
    let _ = writeln!(report, "connectivity {}", connectivity(f.matrix()));
    for len in [4, 6, 8] {
        match count_cycles(f.matrix(), len, a.cycle_budget) {
            Ok(c) => writeln!(report, "cycles_{len} {c}"),
            Err(Error::BudgetExceeded { .. }) => writeln!(report, "cycles_{len} skipped (budget)"),
            Err(e) => return Err(e),
        }
        .ok();
    }

    let out = &a.common.out;
    fs::create_dir_all(out)?;
    let mut files = vec![
        ("square.txt", sq.render()),
        ("mapping_triplets.txt", to_triplets(&f)),
        ("mapping_grid.txt", to_grid(&f)),
    ];
    match extract_protograph(&f) {
        Ok(p) => files.push(("protograph.txt", p.render())),
        Err(Error::NotCpm { .. }) => {}
        Err(e) => return Err(e),
    }
    files.push(("report.txt", report.clone()));
    for (name, text) in &files {
        fs::write(out.join(name), text)?;
    }
    print!("{report}");
    finish(
        "construct",
        &cfg,
        out,
        started,
        files.iter().map(|(n, _)| n.to_string()).collect(),
    )
}

fn scenario_id(c: &ScenarioConfig) -> String {
    format!(
        "E{}_{}_{}_n{}_ka{}",
        c.gamma,
        c.rho,
        c.mode.as_str(),
        c.n,
        c.activity_label()
    )
}

fn simulate(a: SimulateArgs) -> Result<()> {
    let started = unix_now();
    let mut cfg = load_config(&a.common)?;
    if let Some(g) = a.gamma {
        cfg.design.gamma = g;
    }
    if let Some(r) = a.rho {
        cfg.design.rho = r;
    }
    if let Some(n) = a.ell {
        cfg.fec.n = n;
    }
    if let Some(ka) = a.ka {
        cfg.activity.ka = Some(ka);
        cfg.activity.alpha = None;
        cfg.activity.users = None;
    }
    if let Some(m) = a.mode {
        cfg.channel.mode = m;
    }
    if let Some(t) = a.trials {
        cfg.sweep.max_trials = t;
    }
    if let Some(g) = &a.ebn0_grid {
        cfg.sweep.ebn0_grid = parse_grid(g)?;
    }
    if a.target.is_some() {
        cfg.sweep.target = a.target;
    }
    let sc = cfg.scenario()?;
    let out = a.common.out.clone();
    fs::create_dir_all(&out)?;
    let outputs = if cfg.use_f32()? {
        with_pool(a.common.jobs, || {
            simulate_with::<f32>(&cfg, &sc, &out, a.trace)
        })?
    } else {
        with_pool(a.common.jobs, || {
            simulate_with::<f64>(&cfg, &sc, &out, a.trace)
        })?
    };
    finish("simulate", &cfg, &out, started, outputs)
}

fn simulate_with<T: Real>(
    cfg: &RunConfig,
    sc: &ScenarioConfig,
    out: &Path,
    trace: bool,
) -> Result<Vec<String>> {
    let id = scenario_id(sc);
    let mut outputs = Vec::new();
    if trace {
        let first = cfg.sweep.ebn0_grid.first().copied().unwrap_or(0.0);
        let link = sc.build::<T>()?;
        let snr = crate::channel::ebn0_to_snr(first, link.ell(), link.code().k())?;
        let text = format_trace(&run_trial(&link, sc, snr, 0)?.outcome);
        fs::write(out.join("trace.txt"), &text)?;
        print!("{text}");
        outputs.push("trace.txt".to_string());
    }
    let result = match cfg.sweep.target {
        Some(target) => {
            let r = required_ebn0::<T>(sc, target, &cfg.search_grid(), &cfg.budget())?;
            let value = r.ebn0_db.map_or_else(String::new, |v| v.to_string());
            fs::write(
                out.join("required.csv"),
                format!("scenario_id,target,required_ebn0_db\n{id},{target},{value}\n"),
            )?;
            println!(
                "{id} required_ebn0_db {}",
                if value.is_empty() { "none" } else { &value }
            );
            outputs.push("required.csv".to_string());
            SweepResult {
                config: sc.clone(),
                points: r.evaluations,
            }
        }
        None => pe_sweep::<T>(sc, &cfg.sweep.ebn0_grid, &cfg.budget())?,
    };
    for p in &result.points {
        println!("{id} ebn0_db {} trials {} pe {}", p.ebn0_db, p.trials, p.pe);
    }
    write_sweep_csv(fs::File::create(out.join("sweep.csv"))?, &id, &result)?;
    outputs.push("sweep.csv".to_string());
    Ok(outputs)
}

fn analyze_graph(a: GraphArgs) -> Result<()> {
    let started = unix_now();
    let mut cfg = load_config(&a.common)?;
    if let Some(g) = a.gamma {
        cfg.design.gamma = g;
    }
    if let Some(r) = a.rho {
        cfg.design.rho = r;
    }
    if let Some(ka) = &a.ka {
        cfg.graph.ka = parse_usize_list(ka)?;
    }
    if let Some(s) = a.seeds {
        cfg.graph.seeds = s;
    }
    if cfg.graph.ka.is_empty() {
        return Err(invalid("no K_a values given"));
    }
    let f = build_mapping_matrix(&construct_euler_square(
        cfg.design.gamma,
        cfg.design.rho,
        cfg.method()?,
    )?);
    let panels = with_pool(a.common.jobs, || {
        degree_histogram_experiment(&f, &cfg.graph.ka, cfg.graph.seeds, cfg.seed)
    })?;
    let out = &a.common.out;
    fs::create_dir_all(out)?;
    write_degree_csv(
        fs::File::create(out.join("degree.csv"))?,
        f.gamma(),
        f.rho(),
        &panels,
    )?;
    for p in &panels {
        println!(
            "ka {} single_tons_mean {} peeled_frac_mean {}",
            p.ka, p.initial_single_tons_mean, p.peeled_fraction_mean
        );
    }
    finish(
        "analyze-graph",
        &cfg,
        out,
        started,
        vec!["degree.csv".to_string()],
    )
}

fn spectral(a: SpectralArgs) -> Result<()> {
    let started = unix_now();
    let mut cfg = load_config(&a.common)?;
    if let Some(g) = &a.gamma {
        cfg.spectral.gammas = parse_usize_list(g)?;
    }
    if let Some(r) = &a.rho {
        cfg.spectral.rhos = parse_usize_list(r)?;
    }
    if let Some(x) = &a.ebn0_grid {
        cfg.spectral.x_db = parse_grid(x)?;
    }
    if let Some(axis) = a.axis {
        cfg.spectral.axis = axis;
    }
    let axis = match cfg.spectral.axis.as_str() {
        "snr" => SnrAxis::PerUserSnr,
        "ebn0" => SnrAxis::SumRateEbN0,
        other => return Err(invalid(format!("axis must be snr or ebn0, got '{other}'"))),
    };
    let phase: PhaseMode = cfg.design.phase.parse()?;
    let constructions: Vec<(usize, usize)> = cfg
        .spectral
        .gammas
        .iter()
        .flat_map(|&g| cfg.spectral.rhos.iter().map(move |&r| (g, r)))
        .collect();
    let mut rows = Vec::new();
    for &x in &cfg.spectral.x_db {
        rows.extend(spectral_efficiency_curve(
            &constructions,
            x,
            axis,
            phase,
            cfg.seed,
        )?);
    }
    let out = &a.common.out;
    fs::create_dir_all(out)?;
    write_spectral_csv(fs::File::create(out.join("spectral.csv"))?, &rows)?;
    println!("{} rows", rows.len());
    finish(
        "spectral",
        &cfg,
        out,
        started,
        vec!["spectral.csv".to_string()],
    )
}
