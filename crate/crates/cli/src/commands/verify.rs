//! `verify`: drives the exact interval engine against the closed-form
//! distribution and reports the worst deviations.

use clap::Args;
use slicer_core::measure::CellOccupancy;
use slicer_core::{closed_form, SlicerFamily};

use crate::error::CliError;
use crate::Context;

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Number of steps to verify per parameter value
    #[arg(long, default_value_t = 200)]
    pub n_max: u64,
}

pub fn run(_ctx: &Context, args: VerifyArgs) -> Result<(), CliError> {
    let alphas = [1.0 / 3.0, 0.5, 1.0, 1.5, 2.0];
    let mut failed = false;

    for alpha in alphas {
        let family = SlicerFamily::new(alpha).expect("grid alpha is valid");
        let mut occ = CellOccupancy::uniform_initial();
        let mut worst_entry = 0.0f64;
        let mut worst_mass = 0.0f64;

        for n in 1..=args.n_max {
            occ = occ.evolve(&family);
            let areas = occ.areas();
            let dist = closed_form::coarse_distribution(&family, n).expect("n >= 1");
            for (&j, &mass) in dist.masses() {
                let engine = areas.get(&j).copied().unwrap_or(0.0);
                worst_entry = worst_entry.max((engine - mass).abs());
            }
            for (&j, &engine) in &areas {
                worst_entry = worst_entry.max((engine - dist.mass(j)).abs());
            }
            worst_mass = worst_mass.max((occ.total_mass() - 1.0).abs());
        }

        let ok = worst_entry <= 1e-13 && worst_mass <= 1e-12;
        failed |= !ok;
        println!(
            "alpha={alpha:<8.5} n<=: {:>5}  max entry deviation {worst_entry:.2e}  max mass deviation {worst_mass:.2e}  {}",
            args.n_max,
            if ok { "ok" } else { "FAIL" }
        );
    }

    if failed {
        return Err(CliError::Verification(
            "interval engine and closed form disagree beyond tolerance".into(),
        ));
    }
    println!("verification passed");
    Ok(())
}
