//! `levy`: quenched Lévy walk ensemble with moment and visited-site series.

use clap::Args;
use slicer_core::levy::{ensemble_moments, visited_sites, WalkConfig};

use super::{require_at_least_one, require_positive};
use crate::error::CliError;
use crate::output::{fmt_f64, CsvFile, OutputSet, RunManifest};
use crate::Context;

#[derive(Debug, Args)]
pub struct LevyArgs {
    /// Gap distribution exponent (positive)
    #[arg(long)]
    pub beta: f64,
    /// Minimum gap length
    #[arg(long, default_value_t = 1.0)]
    pub r0: f64,
    /// Walker speed
    #[arg(long = "v", default_value_t = 1.0)]
    pub velocity: f64,
    /// Simulated time span
    #[arg(long)]
    pub t_max: f64,
    /// Number of frozen environments
    #[arg(long, default_value_t = 200)]
    pub n_env: u64,
    /// Walkers per environment
    #[arg(long, default_value_t = 50)]
    pub n_walkers: u64,
    /// Moment order for the moment series
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    /// Seed (default: config `seed`, then 1)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Sample points per decade of the geometric time grid
    #[arg(long, default_value_t = 20)]
    pub per_decade: usize,
    /// Number of decades the grid spans
    #[arg(long, default_value_t = 3.0)]
    pub decades: f64,
}

pub fn run(ctx: &Context, args: LevyArgs) -> Result<(), CliError> {
    require_positive("--beta", args.beta)?;
    require_positive("--r0", args.r0)?;
    require_positive("--v", args.velocity)?;
    require_positive("--t-max", args.t_max)?;
    require_positive("--p", args.p)?;
    require_at_least_one("--n-env", args.n_env)?;
    require_at_least_one("--n-walkers", args.n_walkers)?;
    if args.per_decade == 0 || !(args.decades > 0.0) {
        return Err(CliError::Usage(
            "--per-decade and --decades must be positive".into(),
        ));
    }
    let seed = ctx.resolve_seed(args.seed)?;

    let cfg = WalkConfig {
        velocity: args.velocity,
        t_max: args.t_max,
        sample_times: WalkConfig::geometric_times(args.t_max, args.decades, args.per_decade),
        n_env: args.n_env,
        n_walkers: args.n_walkers,
        seed,
    };

    let moments =
        ensemble_moments(&cfg, args.beta, args.r0, args.p).map_err(|e| CliError::Usage(e.to_string()))?;
    ctx.budget.check("levy moments")?;
    let visits =
        visited_sites(&cfg, args.beta, args.r0).map_err(|e| CliError::Usage(e.to_string()))?;
    ctx.budget.check("levy visited sites")?;

    let mut manifest = RunManifest::new("levy");
    manifest.param("beta", args.beta);
    manifest.param("r0", args.r0);
    manifest.param("v", args.velocity);
    manifest.param("t-max", args.t_max);
    manifest.param("n-env", args.n_env);
    manifest.param("n-walkers", args.n_walkers);
    manifest.param("p", args.p);
    manifest.param("seed", seed);
    manifest.param("per-decade", args.per_decade);
    manifest.param("decades", args.decades);

    let mut out = OutputSet::new(&ctx.out_dir, manifest);

    let mut mom_csv = CsvFile::new("t,moment");
    for (t, m) in &moments {
        mom_csv.row(&[fmt_f64(*t), fmt_f64(*m)]);
    }
    out.add_csv("levy_moments.csv", mom_csv);

    let mut vis_csv = CsvFile::new("t,n_visited");
    for (t, n) in &visits {
        vis_csv.row(&[fmt_f64(*t), fmt_f64(*n)]);
    }
    out.add_csv("levy_visited.csv", vis_csv);

    for path in out.commit()? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
