//! `mc`: Monte Carlo ensemble of map trajectories with histogram, MSD and
//! optional higher-moment outputs.

use clap::Args;
use slicer_core::analysis::geometric_steps;
use slicer_core::ensemble::{run_ensemble, EnsembleConfig};

use super::{parse_p_list, require_at_least_one, require_positive};
use crate::error::CliError;
use crate::output::{fmt_f64, CsvFile, OutputSet, RunManifest};
use crate::Context;

#[derive(Debug, Args)]
pub struct McArgs {
    /// Map parameter (positive)
    #[arg(long)]
    pub alpha: f64,
    /// Ensemble size
    #[arg(long = "N")]
    pub particles: u64,
    /// Number of time steps
    #[arg(long = "n")]
    pub steps: u64,
    /// Seed (default: config `seed`, then 1)
    #[arg(long)]
    pub seed: Option<u64>,
    /// Additional moment orders to tabulate, e.g. 1,2,4
    #[arg(long)]
    pub p_list: Option<String>,
    /// Sample points per decade for the time series outputs
    #[arg(long, default_value_t = 20)]
    pub per_decade: usize,
}

pub fn run(ctx: &Context, args: McArgs) -> Result<(), CliError> {
    require_positive("--alpha", args.alpha)?;
    require_at_least_one("--N", args.particles)?;
    require_at_least_one("--n", args.steps)?;
    if args.per_decade == 0 {
        return Err(CliError::Usage("--per-decade must be at least 1".into()));
    }
    let seed = ctx.resolve_seed(args.seed)?;
    let p_list = match &args.p_list {
        Some(raw) => parse_p_list("--p-list", raw)?,
        None => Vec::new(),
    };

    let mut sample_times = geometric_steps(args.steps, 3.0, args.per_decade);
    sample_times.retain(|&t| t <= args.steps);
    sample_times.push(args.steps);
    sample_times.dedup();

    let config = EnsembleConfig {
        alpha: args.alpha,
        particles: args.particles,
        steps: args.steps,
        seed,
        sample_times,
    };
    let histograms = run_ensemble(&config).map_err(|e| CliError::Usage(e.to_string()))?;
    ctx.budget.check("mc ensemble")?;

    let mut manifest = RunManifest::new("mc");
    manifest.param("alpha", args.alpha);
    manifest.param("N", args.particles);
    manifest.param("n", args.steps);
    manifest.param("seed", seed);
    if let Some(raw) = &args.p_list {
        manifest.param("p-list", raw);
    }
    manifest.param("per-decade", args.per_decade);

    let mut out = OutputSet::new(&ctx.out_dir, manifest);

    // histogram at the final time
    let last = histograms.last().expect("at least one sample time");
    let mut hist_csv = CsvFile::new("j,count,frequency");
    for (&j, &count) in &last.counts {
        hist_csv.row(&[
            j.to_string(),
            count.to_string(),
            fmt_f64(count as f64 / args.particles as f64),
        ]);
    }
    out.add_csv("mc_histogram.csv", hist_csv);

    let mut msd_csv = CsvFile::new("n,msd");
    for h in &histograms {
        msd_csv.row(&[h.time.to_string(), fmt_f64(h.moment(2))]);
    }
    out.add_csv("mc_msd.csv", msd_csv);

    if !p_list.is_empty() {
        let mut mom_csv = CsvFile::new("n,p,moment");
        for &p in &p_list {
            for h in &histograms {
                mom_csv.row(&[h.time.to_string(), p.to_string(), fmt_f64(h.moment(p))]);
            }
        }
        out.add_csv("mc_moments.csv", mom_csv);
    }

    for path in out.commit()? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
