//! `compare`: map-vs-walk exponent comparison at one β.

use clap::Args;
use slicer_core::analysis::{compare_slicer_levy, CompareBudgets};

use super::{parse_p_list, require_at_least_one, require_positive};
use crate::error::CliError;
use crate::output::{OutputSet, RunManifest};
use crate::Context;

#[derive(Debug, Args)]
pub struct CompareArgs {
    /// Walk gap exponent (positive)
    #[arg(long)]
    pub beta: f64,
    /// Comma-separated moment orders to compare
    #[arg(long, default_value = "2")]
    pub p_list: String,
    /// Largest closed-form series time
    #[arg(long, default_value_t = 100_000)]
    pub slicer_n_max: u64,
    /// Walk time span
    #[arg(long, default_value_t = 100_000.0)]
    pub t_max: f64,
    /// Number of frozen environments
    #[arg(long, default_value_t = 200)]
    pub n_env: u64,
    /// Walkers per environment
    #[arg(long, default_value_t = 50)]
    pub n_walkers: u64,
    /// Seed (default: config `seed`, then 1)
    #[arg(long)]
    pub seed: Option<u64>,
}

pub fn run(ctx: &Context, args: CompareArgs) -> Result<(), CliError> {
    require_positive("--beta", args.beta)?;
    require_positive("--t-max", args.t_max)?;
    require_at_least_one("--slicer-n-max", args.slicer_n_max)?;
    require_at_least_one("--n-env", args.n_env)?;
    require_at_least_one("--n-walkers", args.n_walkers)?;
    let p_list = parse_p_list("--p-list", &args.p_list)?;
    let seed = ctx.resolve_seed(args.seed)?;

    let budgets = CompareBudgets {
        slicer_n_max: args.slicer_n_max,
        levy_t_max: args.t_max,
        n_env: args.n_env,
        n_walkers: args.n_walkers,
        velocity: 1.0,
        r0: 1.0,
        seed,
    };
    let report = compare_slicer_levy(args.beta, &p_list, &budgets)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    ctx.budget.check("compare")?;

    let mut manifest = RunManifest::new("compare");
    manifest.param("beta", args.beta);
    manifest.param("p-list", &args.p_list);
    manifest.param("slicer-n-max", args.slicer_n_max);
    manifest.param("t-max", args.t_max);
    manifest.param("n-env", args.n_env);
    manifest.param("n-walkers", args.n_walkers);
    manifest.param("seed", seed);

    let mut out = OutputSet::new(&ctx.out_dir, manifest);
    let mut json = serde_json::to_string_pretty(&report).expect("serializable");
    json.push('\n');
    out.add("compare_report.json", json.into_bytes());
    out.add("compare_report.txt", report.to_string().into_bytes());

    print!("{report}");
    for path in out.commit()? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
