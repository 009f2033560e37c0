//! Working-precision policy.

use ortho_bounds_core::{FamilyId, DEFAULT_PRECISION};

pub const PRECISION_ENV: &str = "ORTHO_BOUNDS_PRECISION";
pub const MIN_PRECISION: usize = 64;
pub const MAX_PRECISION: usize = ortho_bounds_core::zeros::MAX_PRECISION;
/// Precision floor for q-families at high degree.
pub const HIGH_DEGREE_PRECISION: usize = 512;
pub const HIGH_DEGREE: usize = 70;

/// Flag, then environment variable, then the default.
pub fn base_precision(flag: Option<usize>) -> Result<usize, String> {
    let bits = match flag {
        Some(b) => b,
        None => match std::env::var(PRECISION_ENV) {
            Ok(s) => s
                .trim()
                .parse::<usize>()
                .map_err(|_| format!("{PRECISION_ENV}={s:?} is not a bit count"))?,
            Err(_) => DEFAULT_PRECISION,
        },
    };
    if !(MIN_PRECISION..=MAX_PRECISION).contains(&bits) {
        return Err(format!("precision {bits} outside [{MIN_PRECISION}, {MAX_PRECISION}] bits"));
    }
    Ok(bits)
}

/// q-families at degree 70 and above need at least 512 bits: their zeros
/// span dozens of decades.
pub fn effective_precision(base: usize, family: FamilyId, n: usize) -> usize {
    if family.is_q_family() && n >= HIGH_DEGREE {
        base.max(HIGH_DEGREE_PRECISION)
    } else {
        base
    }
}
