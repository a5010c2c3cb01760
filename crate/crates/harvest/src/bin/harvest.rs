use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use harvest::cache::GeneratorCache;
use harvest::cavity::{
    cavity_correlation_function, initial_state, CavityConfig, FieldTemperature,
};
use harvest::decomposition::{
    beam_split, mode_function_couplings, passive_entanglement_criterion,
};
use harvest::error::HarvestError;
use harvest::evolution::{
    detector_state, evolve, integrate_propagator, PropagatorGenerator,
};
use harvest::gaussian::{symplectic_defect, symplectic_eigenvalues};
use harvest::sweep::{
    self, convergence_drift, figure_checks, figure_recipe, figure_recipes, format_sig,
    run_sweep, RunOptions,
};

/// Correlation harvesting simulator: two oscillator detectors in a thermal
/// cavity field, evolved exactly in the Gaussian formalism.
#[derive(Parser)]
#[command(name = "harvest", version, about)]
struct Cli {
    /// Worker thread count (output is identical for any value).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Disable the generator disk cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Generator cache directory (overrides HARVEST_CACHE_DIR).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep described by a JSON config file.
    Sweep {
        config: PathBuf,
        /// Output file (default: the config's `output`, else stdout).
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Rerun with twice the mode cutoff and report the largest relative
        /// change of any emitted value.
        #[arg(long)]
        convergence_check: bool,
    },
    /// Run a named figure preset (fig1..fig8) and its assertions.
    Figure {
        name: String,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// List the available presets instead of running one.
        #[arg(long)]
        list: bool,
    },
    /// Tabulate the equal-time field correlation function C(r).
    Corrfunc {
        #[arg(long, default_value_t = 100.0)]
        length: f64,
        #[arg(long, default_value_t = 80)]
        modes: usize,
        #[arg(long, default_value_t = 0.0)]
        temperature: f64,
        #[arg(long, default_value_t = 0.5)]
        r_min: f64,
        #[arg(long, default_value_t = 50.0)]
        r_max: f64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Decompose an evolved detector state into its (+)/(-) modes and list
    /// the per-mode effective couplings.
    Decompose {
        #[arg(long, default_value_t = 4.0)]
        r: f64,
        #[arg(long, default_value_t = 2.0)]
        t: f64,
        #[arg(long, default_value_t = 0.0)]
        temperature: f64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Run the numerical invariant suite (symplecticity, oracle
    /// equivalence, purity).
    Validate,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(err) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: could not configure thread pool: {err}");
            return ExitCode::from(2);
        }
    }
    let options = RunOptions {
        cache: cache_from(&cli),
    };
    match run(cli.command, &options) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                HarvestError::Io { .. } | HarvestError::Json { .. }
                | HarvestError::InvalidConfig(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn cache_from(cli: &Cli) -> Option<GeneratorCache> {
    if cli.no_cache {
        return None;
    }
    let dir = cli
        .cache_dir
        .clone()
        .or_else(|| std::env::var_os("HARVEST_CACHE_DIR").map(PathBuf::from))?;
    Some(GeneratorCache::new(dir))
}

fn write_or_print(text: &str, output: Option<&PathBuf>) -> harvest::Result<()> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|source| HarvestError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn render(
    reports: &[harvest::CorrelationReport],
    format: Format,
    digits: usize,
) -> harvest::Result<String> {
    match format {
        Format::Csv => Ok(sweep::render_csv(reports, digits)),
        Format::Json => sweep::render_json(reports, digits),
    }
}

fn run(command: Command, options: &RunOptions) -> harvest::Result<ExitCode> {
    match command {
        Command::Sweep {
            config,
            output,
            format,
            convergence_check,
        } => {
            let spec = sweep::read_spec(&config)?;
            let reports = run_sweep(&spec, options)?;
            let text = render(&reports, format, spec.precision)?;
            let output = output.or_else(|| spec.output.clone().map(PathBuf::from));
            write_or_print(&text, output.as_ref())?;
            if convergence_check {
                let drift = convergence_drift(&spec, options)?;
                eprintln!(
                    "convergence check: max relative drift at doubled cutoff = {}",
                    format_sig(drift, 3)
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Figure {
            name,
            output,
            format,
            list,
        } => {
            if list {
                for recipe in figure_recipes() {
                    println!("{}: {}", recipe.name, recipe.note);
                }
                return Ok(ExitCode::SUCCESS);
            }
            let recipe = figure_recipe(&name).ok_or_else(|| {
                HarvestError::InvalidConfig(format!(
                    "no figure preset named `{name}` (try --list)"
                ))
            })?;
            let reports = run_sweep(&recipe.spec, options)?;
            let text = render(&reports, format, recipe.spec.precision)?;
            write_or_print(&text, output.as_ref())?;
            let mut failed = false;
            for check in figure_checks(&name, &reports) {
                let status = if check.passed { "ok" } else { "FAIL" };
                eprintln!("{status}: {} ({})", check.label, check.detail);
                failed |= !check.passed;
            }
            Ok(if failed {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Corrfunc {
            length,
            modes,
            temperature,
            r_min,
            r_max,
            count,
            output,
        } => {
            if count < 2 || !(r_max > r_min) {
                return Err(HarvestError::InvalidConfig(
                    "corrfunc needs count >= 2 and r_max > r_min".into(),
                ));
            }
            let cfg = CavityConfig::new(
                length,
                modes,
                40.0 * std::f64::consts::PI / length,
                0.0,
                0.0,
                0.0,
            )?;
            let temp = FieldTemperature::new(temperature)?;
            let mut text = String::from("r,C\n");
            let step = (r_max - r_min) / (count as f64 - 1.0);
            for i in 0..count {
                let r = r_min + step * i as f64;
                let c = cavity_correlation_function(r, temp, &cfg);
                text.push_str(&format!(
                    "{},{}\n",
                    format_sig(r, 12),
                    format_sig(c, 12)
                ));
            }
            write_or_print(&text, output.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose {
            r,
            t,
            temperature,
            output,
        } => {
            let cfg = CavityConfig::reference(r);
            let temp = FieldTemperature::new(temperature)?;
            let generator = match &options.cache {
                Some(cache) => cache.load_or_build(&cfg)?,
                None => PropagatorGenerator::build(&cfg)?,
            };
            let sigma = evolve(&initial_state(&cfg, temp), &generator.propagator(t)?)?;
            let state = detector_state(&sigma)?;
            let split = beam_split(&state)?;
            let (entangling, product) = passive_entanglement_criterion(&split);
            eprintln!(
                "r={r} t={t} T={temperature}: nu_minus={}, nu_plus={}, \
                 lambda1*lambda2={} (entangling passive operation exists: {entangling})",
                format_sig(split.nu_minus(), 12),
                format_sig(split.nu_plus(), 12),
                format_sig(product, 12),
            );
            let mut text = String::from("n,omega,c_plus,c_minus\n");
            for mode in mode_function_couplings(r, &cfg) {
                text.push_str(&format!(
                    "{},{},{},{}\n",
                    mode.n,
                    format_sig(mode.frequency, 12),
                    format_sig(mode.c_plus, 12),
                    format_sig(mode.c_minus, 12)
                ));
            }
            write_or_print(&text, output.as_ref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Validate => validate(options),
    }
}

fn validate(options: &RunOptions) -> harvest::Result<ExitCode> {
    let mut failed = false;
    let mut report = |label: &str, passed: bool, detail: String| {
        let status = if passed { "ok" } else { "FAIL" };
        println!("{status}: {label} ({detail})");
        failed |= !passed;
    };

    let cfg = CavityConfig::reference(4.0);
    let generator = match &options.cache {
        Some(cache) => cache.load_or_build(&cfg)?,
        None => PropagatorGenerator::build(&cfg)?,
    };

    let mut worst_defect: f64 = 0.0;
    for t in [0.5, 1.0, 2.0, 5.0, 10.0, 50.0] {
        let s = generator.propagator(t)?;
        worst_defect = worst_defect.max(symplectic_defect(&s));
    }
    report(
        "propagators symplectic over t in {0.5..50}",
        worst_defect < 1e-9,
        format!("max defect {worst_defect:.3e}"),
    );

    let mut worst_purity: f64 = 0.0;
    for t in [2.0, 50.0] {
        let sigma = evolve(
            &initial_state(&cfg, FieldTemperature::ZERO),
            &generator.propagator(t)?,
        )?;
        for nu in symplectic_eigenvalues(&sigma)? {
            worst_purity = worst_purity.max((nu - 1.0).abs());
        }
    }
    report(
        "global evolution of the vacuum stays pure",
        worst_purity < 1e-6,
        format!("max |nu - 1| = {worst_purity:.3e}"),
    );

    let small = CavityConfig::reference_with_modes(4.0, 10);
    let spectral = PropagatorGenerator::build(&small)?.propagator(2.0)?;
    let integrated = integrate_propagator(&small, 2.0, 1e-3)?;
    let mut worst_oracle: f64 = 0.0;
    for i in 0..spectral.nrows() {
        for j in 0..spectral.ncols() {
            worst_oracle = worst_oracle.max((spectral[(i, j)] - integrated[(i, j)]).abs());
        }
    }
    report(
        "spectral propagator matches the RK4 oracle",
        worst_oracle < 1e-6,
        format!("max deviation {worst_oracle:.3e}"),
    );

    Ok(if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    })
}
