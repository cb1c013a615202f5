use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use indfourier::io::{self, SpectralOutput};
use indfourier::transform;
use indfourier::verify::{self, VerifyConfig};
use indfourier::{CosetStructure, InducedRep, Subgroup};

#[derive(Parser)]
#[command(
    name = "indfourier",
    version,
    about = "Fourier-Stieltjes transforms over induced representations of finite groups"
)]
struct Cli {
    /// Tolerance used when validating input representations.
    #[arg(
        long,
        global = true,
        env = "INDFOURIER_TOLERANCE",
        default_value_t = 1e-9
    )]
    tolerance: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a group table and describe the subgroup generated by `--subgroup`.
    Validate {
        /// Group JSON file or `builtin:<name>`.
        group: String,
        /// Comma-separated generators or a subgroup JSON file.
        #[arg(long)]
        subgroup: Option<String>,
    },
    /// Transform a measure (or a function) over the inductions of the given representations.
    Transform {
        #[arg(long)]
        group: String,
        #[arg(long, default_value = "")]
        subgroup: String,
        /// Catalog name or representation file; repeat for several.
        #[arg(long, required = true)]
        sigma: Vec<String>,
        /// Measure JSON file.
        #[arg(long)]
        measure: PathBuf,
        /// Output file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Read the atoms as function values and integrate against the Haar measure.
        #[arg(long)]
        as_function: bool,
    },
    /// Run the claim-verification suite.
    Verify {
        #[arg(long)]
        config: PathBuf,
        /// Also write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Print the JSON report instead of the table.
        #[arg(long)]
        json_stdout: bool,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if cli.tolerance.is_nan() || cli.tolerance <= 0.0 {
        bail!("tolerance must be positive, got {}", cli.tolerance);
    }
    match cli.command {
        Command::Validate { group, subgroup } => validate(&group, subgroup.as_deref()),
        Command::Transform {
            group,
            subgroup,
            sigma,
            measure,
            out,
            as_function,
        } => transform_cmd(
            &group,
            &subgroup,
            &sigma,
            &measure,
            out.as_ref(),
            as_function,
            cli.tolerance,
        ),
        Command::Verify {
            config,
            json,
            json_stdout,
        } => verify_cmd(&config, json.as_ref(), json_stdout, cli.tolerance),
    }
}

fn validate(source: &str, subgroup: Option<&str>) -> Result<ExitCode> {
    let g = Arc::new(io::load_group(source).with_context(|| format!("invalid group `{source}`"))?);
    println!("group {}: order {}", g.name(), g.order());
    let Some(spec) = subgroup else {
        return Ok(ExitCode::SUCCESS);
    };
    let gens = io::load_generators(spec)?;
    for &x in &gens {
        g.check_index(x)?;
        let cyclic = Subgroup::closure(g.clone(), &[x])?;
        println!("  <{x}>: order {}", cyclic.order());
    }
    let k = Arc::new(Subgroup::closure(g.clone(), &gens)?);
    let cosets = CosetStructure::new(k.clone());
    println!(
        "subgroup <{}>: order {}, [G:K]={}",
        gens.iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(", "),
        k.order(),
        cosets.count()
    );
    println!(
        "coset representatives: {}",
        cosets
            .reps()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ")
    );
    Ok(ExitCode::SUCCESS)
}

fn transform_cmd(
    group: &str,
    subgroup: &str,
    sigmas: &[String],
    measure: &Path,
    out: Option<&PathBuf>,
    as_function: bool,
    tol: f64,
) -> Result<ExitCode> {
    let g = Arc::new(io::load_group(group).with_context(|| format!("invalid group `{group}`"))?);
    let k = Arc::new(Subgroup::closure(
        g.clone(),
        &io::load_generators(subgroup)?,
    )?);
    let mut reps = Vec::new();
    for s in sigmas {
        let rep = io::load_rep(s, k.clone(), tol).with_context(|| format!("sigma `{s}`"))?;
        reps.push(Arc::new(InducedRep::new(Arc::new(rep))));
    }
    let file = io::load_measure_file(measure)?;
    let context = measure.display().to_string();
    let field = if as_function {
        let f = file.into_function(&context, g.order())?;
        transform::transform_function(&f, &reps)?
    } else {
        let m = file.into_measure(&context, g.order())?;
        transform::transform_measure(&m, &reps)?
    };
    let text = SpectralOutput::from_field(&field).to_json();
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn verify_cmd(
    config: &Path,
    json: Option<&PathBuf>,
    json_stdout: bool,
    tol: f64,
) -> Result<ExitCode> {
    let cfg =
        VerifyConfig::load(config).with_context(|| format!("loading {}", config.display()))?;
    let report = verify::run_verify(&cfg, tol)?;
    if let Some(path) = json {
        std::fs::write(path, report.to_json())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if json_stdout {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.table());
    }
    Ok(if report.success() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}
