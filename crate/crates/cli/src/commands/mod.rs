pub mod compare;
pub mod dist;
pub mod levy;
pub mod mc;
pub mod moments;
pub mod verify;

use crate::error::CliError;

/// Validates `alpha` against the closed-form analysis range `(0, 2]`.
pub fn alpha_in_closed_form_range(flag: &str, alpha: f64) -> Result<(), CliError> {
    if !alpha.is_finite() || alpha <= 0.0 || alpha > 2.0 {
        return Err(CliError::Usage(format!(
            "{flag} must lie in (0, 2], got {alpha}"
        )));
    }
    Ok(())
}

pub fn require_positive(flag: &str, v: f64) -> Result<(), CliError> {
    if !v.is_finite() || v <= 0.0 {
        return Err(CliError::Usage(format!("{flag} must be positive, got {v}")));
    }
    Ok(())
}

pub fn require_at_least_one(flag: &str, v: u64) -> Result<(), CliError> {
    if v == 0 {
        return Err(CliError::Usage(format!("{flag} must be at least 1")));
    }
    Ok(())
}

/// Parses a comma-separated list of moment orders.
pub fn parse_p_list(flag: &str, raw: &str) -> Result<Vec<u32>, CliError> {
    let mut out = Vec::new();
    for part in raw.split(',') {
        let p: u32 = part
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{flag}: invalid moment order '{part}'")))?;
        if p == 0 {
            return Err(CliError::Usage(format!("{flag}: moment orders start at 1")));
        }
        out.push(p);
    }
    Ok(out)
}
