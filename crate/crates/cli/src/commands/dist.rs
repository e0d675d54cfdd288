//! `slicer-dist`: the closed-form coarse-grained distribution at one time.

use clap::Args;
use serde::Serialize;
use slicer_core::{closed_form, SlicerFamily};

use super::{alpha_in_closed_form_range, require_at_least_one};
use crate::error::CliError;
use crate::output::{fmt_f64, CsvFile, OutputSet, RunManifest};
use crate::Context;

#[derive(Debug, Args)]
pub struct DistArgs {
    /// Map parameter in (0, 2]
    #[arg(long)]
    pub alpha: f64,
    /// Time step at which the distribution is taken
    #[arg(long)]
    pub n: u64,
    /// Add a power-law tail overlay column with this amplitude
    #[arg(long)]
    pub tail_amplitude: Option<f64>,
    /// Output format
    #[arg(long, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Serialize)]
struct JsonRow {
    j: i64,
    mass: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    tail: Option<f64>,
}

#[derive(Serialize)]
struct JsonDoc {
    alpha: f64,
    n: u64,
    rows: Vec<JsonRow>,
}

pub fn run(ctx: &Context, args: DistArgs) -> Result<(), CliError> {
    alpha_in_closed_form_range("--alpha", args.alpha)?;
    require_at_least_one("--n", args.n)?;
    if let Some(c) = args.tail_amplitude {
        if !c.is_finite() || c <= 0.0 {
            return Err(CliError::Usage(format!(
                "--tail-amplitude must be positive, got {c}"
            )));
        }
    }

    let family = SlicerFamily::new(args.alpha).expect("validated");
    let dist = closed_form::coarse_distribution(&family, args.n).expect("validated n");

    let mut manifest = RunManifest::new("slicer-dist");
    manifest.param("alpha", args.alpha);
    manifest.param("n", args.n);
    if let Some(c) = args.tail_amplitude {
        manifest.param("tail-amplitude", c);
    }
    manifest.param(
        "format",
        match args.format {
            Format::Csv => "csv",
            Format::Json => "json",
        },
    );

    let tail = |j: i64| {
        args.tail_amplitude
            .map(|c| closed_form::asymptotic_tail(&family, j.unsigned_abs(), c))
    };

    let mut out = OutputSet::new(&ctx.out_dir, manifest);
    match args.format {
        Format::Csv => {
            let mut csv = CsvFile::new(if args.tail_amplitude.is_some() {
                "j,mass,tail"
            } else {
                "j,mass"
            });
            for (&j, &mass) in dist.masses() {
                let mut row = vec![j.to_string(), fmt_f64(mass)];
                if let Some(t) = tail(j) {
                    row.push(fmt_f64(t));
                }
                csv.row(&row);
            }
            out.add_csv("slicer_dist.csv", csv);
        }
        Format::Json => {
            let doc = JsonDoc {
                alpha: args.alpha,
                n: args.n,
                rows: dist
                    .masses()
                    .iter()
                    .map(|(&j, &mass)| JsonRow {
                        j,
                        mass,
                        tail: tail(j),
                    })
                    .collect(),
            };
            let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
            text.push('\n');
            out.add("slicer_dist.json", text.into_bytes());
        }
    }

    for path in out.commit()? {
        println!("wrote {}", path.display());
    }
    Ok(())
}
