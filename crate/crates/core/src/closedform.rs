//! Closed-form shadow volumes, widths and facet data for the regular simplex,
//! the volume-one cube `Q_n = [-1/2, 1/2]^n` and the cross-polytope `B_1^n`.
//!
//! The simplex is the standard one, `conv{e_1, ..., e_{n+1}}` in `R^{n+1}`, so
//! every direction fed to a simplex formula has `n + 1` coordinates and must
//! lie in the zero-sum hyperplane.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, norm1, project_zero_sum, Direction, OrthoPair};

/// Cross-polytope facet enumeration is limited to `2^20` facets.
pub const MAX_CROSS_DIM: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BodyTag {
    Cube,
    Cross,
    SimplexCentered,
}

impl fmt::Display for BodyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BodyTag::Cube => "cube",
            BodyTag::Cross => "cross",
            BodyTag::SimplexCentered => "simplex_centered",
        })
    }
}

impl FromStr for BodyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cube" => Ok(BodyTag::Cube),
            "cross" => Ok(BodyTag::Cross),
            "simplex" | "simplex_centered" | "simplex-centered" => Ok(BodyTag::SimplexCentered),
            other => Err(Error::UnsupportedBody(other.to_string())),
        }
    }
}

/// `k!` in floating point. The running product stays within a few ulps of the
/// exact value and is finite for `k <= 170`.
pub fn factorial(k: usize) -> f64 {
    (2..=k).fold(1.0, |acc, i| acc * i as f64)
}

/// Volumes attached to dimension `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BodyVolumeConstants {
    pub n: usize,
    /// `vol_n(Δ_n) = sqrt(n+1)/n!`
    pub simplex_volume: f64,
    /// `vol_{n-1}` of a simplex facet, `sqrt(n)/(n-1)!`
    pub simplex_facet_volume: f64,
    /// `vol_{n-1}` of a cross-polytope facet, `sqrt(n)/(n-1)!`
    pub cross_facet_volume: f64,
}

impl BodyVolumeConstants {
    pub fn new(n: usize) -> Result<Self> {
        check_min("dimension", 2, n)?;
        let facet = (n as f64).sqrt() / factorial(n - 1);
        Ok(BodyVolumeConstants {
            n,
            simplex_volume: ((n + 1) as f64).sqrt() / factorial(n),
            simplex_facet_volume: facet,
            cross_facet_volume: facet,
        })
    }
}

pub(crate) fn check_min(what: &'static str, min: usize, got: usize) -> Result<()> {
    if got < min {
        Err(Error::DimensionTooSmall { what, min, got })
    } else {
        Ok(())
    }
}

/// Unit facet normals with facet volumes, i.e. the surface area measure of a polytope.
#[derive(Debug, Clone, PartialEq)]
pub struct FacetData {
    pub normals: Vec<Vec<f64>>,
    pub volumes: Vec<f64>,
    pub body: BodyTag,
    /// Dimension of the ambient space the normals live in.
    pub ambient_dim: usize,
}

impl FacetData {
    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.normals.is_empty()
    }

    /// `Σ_F vol(F) n(F)`, which vanishes for a closed polytope.
    pub fn weighted_normal_sum(&self) -> Vec<f64> {
        let mut acc = vec![0.0; self.ambient_dim];
        for (nrm, vol) in self.normals.iter().zip(&self.volumes) {
            for (a, c) in acc.iter_mut().zip(nrm) {
                *a += vol * c;
            }
        }
        acc
    }
}

/// Complete facet list of `Q_n`, `B_1^n` or the centered simplex `Δ_n - bar(Δ_n)`
/// (the latter in `R^{n+1}`).
pub fn facet_data(body: BodyTag, n: usize) -> Result<FacetData> {
    check_min("dimension", 2, n)?;
    let consts = BodyVolumeConstants::new(n)?;
    let fd = match body {
        BodyTag::Cube => {
            let mut normals = Vec::with_capacity(2 * n);
            for j in 0..n {
                for sign in [1.0, -1.0] {
                    let mut e = vec![0.0; n];
                    e[j] = sign;
                    normals.push(e);
                }
            }
            FacetData {
                volumes: vec![1.0; 2 * n],
                normals,
                body,
                ambient_dim: n,
            }
        }
        BodyTag::Cross => {
            if n > MAX_CROSS_DIM {
                return Err(Error::DimensionTooLarge {
                    what: "cross-polytope facet enumeration",
                    max: MAX_CROSS_DIM,
                    got: n,
                });
            }
            let c = 1.0 / (n as f64).sqrt();
            let normals: Vec<Vec<f64>> = (0..1usize << n)
                .map(|mask| {
                    (0..n)
                        .map(|j| if mask >> j & 1 == 1 { -c } else { c })
                        .collect()
                })
                .collect();
            FacetData {
                volumes: vec![consts.cross_facet_volume; normals.len()],
                normals,
                body,
                ambient_dim: n,
            }
        }
        BodyTag::SimplexCentered => {
            let scale = 1.0 / ((n * (n + 1)) as f64).sqrt();
            let normals: Vec<Vec<f64>> = (0..=n)
                .map(|i| {
                    (0..=n)
                        .map(|j| if i == j { -(n as f64) * scale } else { scale })
                        .collect()
                })
                .collect();
            FacetData {
                volumes: vec![consts.simplex_facet_volume; n + 1],
                normals,
                body,
                ambient_dim: n + 1,
            }
        }
    };
    Ok(fd)
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        Err(Error::DimensionMismatch { expected, found })
    } else {
        Ok(())
    }
}

/// Cauchy's projection formula for polytopes: `½ Σ_F vol(F) |<a, n(F)>|`.
pub fn cauchy_shadow(facets: &FacetData, a: &Direction) -> Result<f64> {
    check_dim(facets.ambient_dim, a.dim())?;
    if facets.body == BodyTag::SimplexCentered {
        a.require_zero_sum()?;
    }
    let sum: f64 = facets
        .normals
        .iter()
        .zip(&facets.volumes)
        .map(|(nrm, vol)| vol * dot(a.coords(), nrm).abs())
        .sum();
    Ok(0.5 * sum)
}

/// `vol_{n-1}` of the shadow of `Δ_n` on `a^⊥ ∩ H`:
/// `½ sqrt(n+1)/(n-1)! Σ_j |a_j|`, for a zero-sum unit `a` in `R^{n+1}`.
pub fn simplex_hyperplane_shadow(a: &Direction) -> Result<f64> {
    check_min("simplex direction length", 3, a.dim())?;
    a.require_zero_sum()?;
    let n = a.dim() - 1;
    Ok(0.5 * ((n + 1) as f64).sqrt() / factorial(n - 1) * norm1(a.coords()))
}

/// As [`simplex_hyperplane_shadow`], but mean-subtracts and normalizes the raw
/// input first instead of rejecting directions off the zero-sum hyperplane.
pub fn simplex_hyperplane_shadow_projected(x: &[f64]) -> Result<f64> {
    simplex_hyperplane_shadow(&project_zero_sum(x)?)
}

/// `vol_{n-1}` of the shadow of `Q_n` on `a^⊥`, which is `Σ_j |a_j|`.
pub fn cube_hyperplane_shadow(a: &Direction) -> f64 {
    norm1(a.coords())
}

/// Area of the shadow of `Q_n` on `span{u, v}`: `Σ_{i<j} |u_i v_j - u_j v_i|`.
/// The same number is the `(n-2)`-volume of the shadow on the orthogonal complement.
pub fn cube_planar_shadow(pair: &OrthoPair) -> f64 {
    pair.minors().map(f64::abs).sum()
}

/// `Σ_{i<j} (u_i v_j - u_j v_i)^2`, equal to 1 for orthonormal pairs.
pub fn lagrange_sum(pair: &OrthoPair) -> f64 {
    pair.minors().map(|m| m * m).sum()
}

/// Width of `Δ_n` in direction `a`, `h(a) + h(-a) = max_j a_j - min_j a_j`.
pub fn simplex_width(a: &Direction) -> Result<f64> {
    a.require_zero_sum()?;
    let (lo, hi) = a
        .coords()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &c| {
            (lo.min(c), hi.max(c))
        });
    Ok(hi - lo)
}

/// Gauge of the difference body `Δ_n - Δ_n` at `a`, which is `½ Σ_j |a_j|`.
pub fn simplex_gauge_diff_body(a: &Direction) -> Result<f64> {
    a.require_zero_sum()?;
    Ok(0.5 * norm1(a.coords()))
}

/// Shadow volume divided by the difference-body gauge; constant
/// `n vol_n(Δ_n) = sqrt(n+1)/(n-1)!` on the zero-sum sphere.
pub fn width_projection_ratio(a: &Direction) -> Result<f64> {
    let shadow = simplex_hyperplane_shadow(a)?;
    let gauge = simplex_gauge_diff_body(a)?;
    Ok(shadow / gauge)
}
