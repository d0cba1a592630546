//! Majorization `x ≺ y` and the Karamata inequality `Σ f(x_i) <= Σ f(y_i)` for convex `f`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on total and partial sums.
pub const MAJORIZATION_TOL: f64 = 1e-10;

fn sorted_desc(x: &[f64]) -> Vec<f64> {
    let mut s = x.to_vec();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Whether `x ≺ y`: equal sums and `Σ_{i<=k} x*_i <= Σ_{i<=k} y*_i` for every `k`,
/// where `*` is the decreasing rearrangement.
pub fn majorizes(x: &[f64], y: &[f64]) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            found: y.len(),
        });
    }
    let (xs, ys) = (sorted_desc(x), sorted_desc(y));
    let (mut sx, mut sy) = (0.0, 0.0);
    for (a, b) in xs.iter().zip(&ys) {
        sx += a;
        sy += b;
        if sx > sy + MAJORIZATION_TOL {
            return Ok(false);
        }
    }
    Ok((sx - sy).abs() <= MAJORIZATION_TOL)
}

/// A pair with `x ≺ y`, checked at construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MajorizationPair {
    x: Vec<f64>,
    y: Vec<f64>,
}

impl MajorizationPair {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<MajorizationPair> {
        if majorizes(&x, &y)? {
            Ok(MajorizationPair { x, y })
        } else {
            Err(Error::NotMajorized)
        }
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }
}

/// Convex test function for [`karamata_gap`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvexFn {
    /// `|t|^p`, `p >= 1`.
    AbsPower(f64),
    /// Piecewise-linear interpolation of `(t, f(t))` samples, sorted by `t`.
    Table(Vec<(f64, f64)>),
}

impl ConvexFn {
    /// Validates the function: `p >= 1`, or a table with increasing abscissae and
    /// nondecreasing slopes.
    pub fn check(&self) -> Result<()> {
        match self {
            ConvexFn::AbsPower(p) => {
                if p.is_finite() && *p >= 1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidOrder(*p))
                }
            }
            ConvexFn::Table(pts) => {
                if pts.len() < 2 || pts.windows(2).any(|w| !(w[1].0 > w[0].0)) {
                    return Err(Error::InvalidArgument(
                        "table needs at least two samples with increasing abscissae".into(),
                    ));
                }
                let slopes: Vec<f64> = pts
                    .windows(2)
                    .map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0))
                    .collect();
                if slopes.windows(2).any(|s| s[1] < s[0] - 1e-12 * (1.0 + s[0].abs())) {
                    return Err(Error::NotConvex);
                }
                Ok(())
            }
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        match self {
            ConvexFn::AbsPower(p) => Ok(t.abs().powf(*p)),
            ConvexFn::Table(pts) => {
                let (first, last) = (pts[0], pts[pts.len() - 1]);
                if t < first.0 || t > last.0 {
                    return Err(Error::OutOfTableRange(t));
                }
                let i = pts.partition_point(|q| q.0 <= t).clamp(1, pts.len() - 1);
                let (a, b) = (pts[i - 1], pts[i]);
                Ok(a.1 + (t - a.0) * (b.1 - a.1) / (b.0 - a.0))
            }
        }
    }
}

/// `Σ f(y_i) - Σ f(x_i)`, nonnegative by Karamata's inequality.
pub fn karamata_gap(pair: &MajorizationPair, f: &ConvexFn) -> Result<f64> {
    f.check()?;
    let mut gap = 0.0;
    for (a, b) in pair.x.iter().zip(&pair.y) {
        gap += f.eval(*b)? - f.eval(*a)?;
    }
    Ok(gap)
}
