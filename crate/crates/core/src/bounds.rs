//! When do `n` general points on a curve impose independent conditions on
//! sections of a line bundle? By Serre duality it suffices that
//! `omega_C (x) L^{-1}(points)` has negative degree.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("plane curves need degree at least 3, got {0}")]
    DegreeTooSmall(u32),
    #[error("splitting type f1 = {f1} is not the smaller summand for genus {g} (need 2 f1 <= g + 3)")]
    SplittingInvalid { g: u32, f1: u32 },
}

impl BoundError {
    pub fn name(&self) -> &'static str {
        match self {
            BoundError::DegreeTooSmall(_) => "DegreeTooSmall",
            BoundError::SplittingInvalid { .. } => "SplittingInvalid",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LineBundleOnCurve {
    pub genus: u32,
    pub degree: i64,
}

/// Largest `n` with `2g - 2 - deg L + n < 0`. Negative means the criterion
/// guarantees nothing.
pub fn independence_bound(bundle: LineBundleOnCurve) -> i64 {
    bundle.degree - 2 * i64::from(bundle.genus) + 1
}

/// Arithmetic genus of a plane curve of degree `d`.
pub fn plane_genus(d: u32) -> u32 {
    d.saturating_sub(1) * d.saturating_sub(2) / 2
}

/// `(g, bound)` for a nodal plane curve of degree `d`, using `O(d)` twisted
/// to degree `d^2`.
pub fn plane_bound(d: u32) -> Result<(u32, i64), BoundError> {
    if d < 3 {
        return Err(BoundError::DegreeTooSmall(d));
    }
    let g = plane_genus(d);
    let bound = independence_bound(LineBundleOnCurve { genus: g, degree: i64::from(d) * i64::from(d) });
    debug_assert_eq!(bound, 3 * i64::from(d) - 1);
    Ok((g, bound))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TrigonalBound {
    pub bound: i64,
    /// `h^0` of the degree `3g + 6` bundle.
    pub h0: i64,
}

pub fn trigonal_bound(g: u32) -> TrigonalBound {
    let degree = 3 * i64::from(g) + 6;
    let bound = independence_bound(LineBundleOnCurve { genus: g, degree });
    // nonspecial, so h0 = chi = deg - g + 1
    TrigonalBound { bound, h0: degree - i64::from(g) + 1 }
}

/// Bound from the per-summand degrees `4g + 12 - 4 f_i`, given arbitrary
/// `f1`, `f2`.
pub fn tetragonal_bound_summands(g: u32, f1: u32, f2: u32) -> i64 {
    [f1, f2]
        .iter()
        .map(|&f| {
            let degree = 4 * i64::from(g) + 12 - 4 * i64::from(f);
            independence_bound(LineBundleOnCurve { genus: g, degree })
        })
        .min()
        .expect("two summands")
}

/// `4 f1 - 2g + 1`, with `f2 = g + 3 - f1`.
pub fn tetragonal_bound(g: u32, f1: u32) -> Result<i64, BoundError> {
    if 2 * f1 > g + 3 {
        return Err(BoundError::SplittingInvalid { g, f1 });
    }
    let bound = tetragonal_bound_summands(g, f1, g + 3 - f1);
    debug_assert_eq!(bound, 4 * i64::from(f1) - 2 * i64::from(g) + 1);
    Ok(bound)
}
