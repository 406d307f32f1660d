//! Process-wide settings.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const DEFAULT_DIM_BOUND: usize = 4;

/// Environment variable overriding the dimension cap.
pub const DIM_BOUND_ENV: &str = "CGLAB_DIM_BOUND";

static DIM_BOUND: OnceLock<usize> = OnceLock::new();

/// The dimension cap: an explicit [`set_dim_bound`] call, else
/// `CGLAB_DIM_BOUND`, else 4. Fixed on first read.
pub fn dim_bound() -> usize {
    *DIM_BOUND.get_or_init(|| {
        std::env::var(DIM_BOUND_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&n: &usize| n >= 1)
            .unwrap_or(DEFAULT_DIM_BOUND)
    })
}

/// Sets the cap. Returns false if it was already fixed to another value.
pub fn set_dim_bound(n: usize) -> bool {
    DIM_BOUND.set(n).is_ok() || dim_bound() == n
}

pub fn check_dim(dim: usize) -> Result<()> {
    let bound = dim_bound();
    if dim > bound {
        return Err(Error::DimensionBound { dim, bound });
    }
    Ok(())
}
