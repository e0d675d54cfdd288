//! `slicer-msd` and `slicer-moments`: closed-form moment series on a
//! geometric time grid, with normalized columns for reading off the
//! transport coefficients.

use clap::Args;
use serde::Serialize;
use slicer_core::analysis::geometric_steps;
use slicer_core::{closed_form, SlicerFamily};

use super::{alpha_in_closed_form_range, parse_p_list, require_at_least_one};
use crate::error::CliError;
use crate::output::{fmt_f64, CsvFile, OutputSet, RunManifest};
use crate::Context;

#[derive(Debug, Args)]
pub struct MsdArgs {
    /// Map parameter in (0, 2]
    #[arg(long)]
    pub alpha: f64,
    /// Largest time in the series
    #[arg(long)]
    pub n_max: u64,
    /// Sample points per decade of the geometric grid
    #[arg(long, default_value_t = 20)]
    pub per_decade: usize,
    /// Number of decades the grid spans
    #[arg(long, default_value_t = 3.0)]
    pub decades: f64,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    /// Map parameter in (0, 2]
    #[arg(long)]
    pub alpha: f64,
    /// Largest time in the series
    #[arg(long)]
    pub n_max: u64,
    /// Comma-separated moment orders, e.g. 2,4,6
    #[arg(long, default_value = "2")]
    pub p_list: String,
    #[arg(long, default_value_t = 20)]
    pub per_decade: usize,
    #[arg(long, default_value_t = 3.0)]
    pub decades: f64,
    /// Output format
    #[arg(long, default_value = "csv")]
    pub format: MomentFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MomentFormat {
    Csv,
    Json,
}

/// JSON record shape for one moment value.
#[derive(Serialize)]
struct MomentRecord {
    alpha: f64,
    n: u64,
    p: u32,
    value: f64,
}

fn grid(args_n_max: u64, per_decade: usize, decades: f64) -> Result<Vec<u64>, CliError> {
    if per_decade == 0 {
        return Err(CliError::Usage("--per-decade must be at least 1".into()));
    }
    if !(decades > 0.0) {
        return Err(CliError::Usage("--decades must be positive".into()));
    }
    Ok(geometric_steps(args_n_max, decades, per_decade))
}

pub fn run_msd(ctx: &Context, args: MsdArgs) -> Result<(), CliError> {
    alpha_in_closed_form_range("--alpha", args.alpha)?;
    require_at_least_one("--n-max", args.n_max)?;
    let times = grid(args.n_max, args.per_decade, args.decades)?;

    let family = SlicerFamily::new(args.alpha).expect("validated");
    let series = closed_form::msd_series(&family, &times);
    let logarithmic = args.alpha == 2.0;

    let mut manifest = RunManifest::new("slicer-msd");
    manifest.param("alpha", args.alpha);
    manifest.param("n-max", args.n_max);
    manifest.param("per-decade", args.per_decade);
    manifest.param("decades", args.decades);

    let mut csv = CsvFile::new(if logarithmic {
        "n,msd,msd_over_log_n"
    } else {
        "n,msd,msd_over_n_gamma"
    });
    let gamma = 2.0 - args.alpha;
    for (n, msd) in series {
        let normalized = if logarithmic {
            msd / (n as f64).ln()
        } else {
            msd / (n as f64).powf(gamma)
        };
        csv.row(&[n.to_string(), fmt_f64(msd), fmt_f64(normalized)]);
    }

    let mut out = OutputSet::new(&ctx.out_dir, manifest);
    out.add_csv("slicer_msd.csv", csv);
    for path in out.commit()? {
        println!("wrote {}", path.display());
    }
    Ok(())
}

pub fn run_moments(ctx: &Context, args: MomentsArgs) -> Result<(), CliError> {
    alpha_in_closed_form_range("--alpha", args.alpha)?;
    require_at_least_one("--n-max", args.n_max)?;
    let p_list = parse_p_list("--p-list", &args.p_list)?;
    let times = grid(args.n_max, args.per_decade, args.decades)?;

    let family = SlicerFamily::new(args.alpha).expect("validated");
    let logarithmic = args.alpha == 2.0;

    let mut manifest = RunManifest::new("slicer-moments");
    manifest.param("alpha", args.alpha);
    manifest.param("n-max", args.n_max);
    manifest.param("p-list", &args.p_list);
    manifest.param("per-decade", args.per_decade);
    manifest.param("decades", args.decades);
    manifest.param(
        "format",
        match args.format {
            MomentFormat::Csv => "csv",
            MomentFormat::Json => "json",
        },
    );

    let mut out = OutputSet::new(&ctx.out_dir, manifest);
    match args.format {
        MomentFormat::Csv => {
            let mut csv = CsvFile::new(if logarithmic {
                "n,p,moment,moment_over_n_gamma,moment_over_log_n"
            } else {
                "n,p,moment,moment_over_n_gamma"
            });
            for &p in &p_list {
                for &n in &times {
                    let value = closed_form::moment(&family, n, p).expect("validated").value;
                    let gamma = p as f64 - args.alpha;
                    let mut row = vec![
                        n.to_string(),
                        p.to_string(),
                        fmt_f64(value),
                        fmt_f64(value / (n as f64).powf(gamma)),
                    ];
                    if logarithmic {
                        row.push(fmt_f64(value / (n as f64).ln()));
                    }
                    csv.row(&row);
                }
            }
            out.add_csv("slicer_moments.csv", csv);
        }
        MomentFormat::Json => {
            let mut records = Vec::new();
            for &p in &p_list {
                for &n in &times {
                    records.push(MomentRecord {
                        alpha: args.alpha,
                        n,
                        p,
                        value: closed_form::moment(&family, n, p).expect("validated").value,
                    });
                }
            }
            let mut text = serde_json::to_string_pretty(&records).expect("serializable");
            text.push('\n');
            out.add("slicer_moments.json", text.into_bytes());
        }
    }

    for path in out.commit()? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
