//! Brute-force shadow volumes that never touch the closed forms: exact planar
//! shadows through convex hulls, and Monte-Carlo volumes with linear-feasibility
//! membership for shadows of dimension 3 to 6.

mod hull;
mod membership;

use rayon::prelude::*;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{dot, OrthoPair, Seed, COMPOUND_TOL};

pub use hull::{cross, hausdorff_distance, hull_area_2d, Point2, Polygon2, CROSS_TOL};
pub use membership::{membership_in_hull, HullMembership, MEMBERSHIP_TOL};

/// Cube vertex enumeration is limited to `2^20` corners.
pub const MAX_CUBE_DIM: usize = 20;

/// Largest shadow dimension handled by the Monte-Carlo oracle.
pub const MAX_MC_DIM: usize = 6;

/// Samples per deterministic chunk (one ChaCha stream each).
const MC_CHUNK: usize = 4096;

/// Bounding boxes are inflated by this much on every side.
const BOX_PAD: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BodyKind {
    /// `conv{e_1, ..., e_{n+1}}` in `R^{n+1}`.
    Simplex,
    /// The simplex translated so its barycenter is the origin.
    SimplexCentered,
    /// `[-1/2, 1/2]^n`.
    Cube,
    /// `conv{±e_1, ..., ±e_n}`.
    Cross,
}

/// A polytope given by its vertex list.
#[derive(Debug, Clone, PartialEq)]
pub struct VPolytope {
    pub vertices: Vec<Vec<f64>>,
    pub tag: Option<BodyKind>,
}

impl VPolytope {
    pub fn new(vertices: Vec<Vec<f64>>) -> Result<VPolytope> {
        let d = vertices
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidArgument("polytope without vertices".into()))?;
        for v in &vertices {
            if v.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: v.len(),
                });
            }
            if v.iter().any(|c| !c.is_finite()) {
                return Err(Error::InvalidArgument("non-finite vertex coordinate".into()));
            }
        }
        Ok(VPolytope { vertices, tag: None })
    }

    pub fn ambient_dim(&self) -> usize {
        self.vertices.first().map_or(0, Vec::len)
    }

    pub fn simplex(n: usize) -> Result<VPolytope> {
        crate::closedform::check_min("dimension", 2, n)?;
        let vertices = (0..=n).map(|i| crate::linalg::unit_vector(n + 1, i)).collect();
        Ok(VPolytope {
            vertices,
            tag: Some(BodyKind::Simplex),
        })
    }

    /// Vertices are the permutations of `(n, -1, ..., -1)/(n+1)`.
    pub fn simplex_centered(n: usize) -> Result<VPolytope> {
        crate::closedform::check_min("dimension", 2, n)?;
        let d = (n + 1) as f64;
        let vertices = (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| if i == j { n as f64 / d } else { -1.0 / d })
                    .collect()
            })
            .collect();
        Ok(VPolytope {
            vertices,
            tag: Some(BodyKind::SimplexCentered),
        })
    }

    pub fn cube(n: usize) -> Result<VPolytope> {
        crate::closedform::check_min("dimension", 1, n)?;
        if n > MAX_CUBE_DIM {
            return Err(Error::DimensionTooLarge {
                what: "cube vertex enumeration",
                max: MAX_CUBE_DIM,
                got: n,
            });
        }
        let vertices = (0..1usize << n)
            .map(|mask| {
                (0..n)
                    .map(|j| if mask >> j & 1 == 1 { 0.5 } else { -0.5 })
                    .collect()
            })
            .collect();
        Ok(VPolytope {
            vertices,
            tag: Some(BodyKind::Cube),
        })
    }

    pub fn cross(n: usize) -> Result<VPolytope> {
        crate::closedform::check_min("dimension", 1, n)?;
        let mut vertices = Vec::with_capacity(2 * n);
        for j in 0..n {
            for s in [1.0, -1.0] {
                let mut e = vec![0.0; n];
                e[j] = s;
                vertices.push(e);
            }
        }
        Ok(VPolytope {
            vertices,
            tag: Some(BodyKind::Cross),
        })
    }

    /// Support function `h(u) = max_x <x, u>`.
    pub fn support(&self, u: &[f64]) -> f64 {
        self.vertices
            .iter()
            .map(|x| dot(x, u))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StandardBodies {
    pub simplex: VPolytope,
    pub simplex_centered: VPolytope,
    pub cube: VPolytope,
    pub cross: VPolytope,
}

pub fn standard_bodies(n: usize) -> Result<StandardBodies> {
    crate::closedform::check_min("dimension", 2, n)?;
    Ok(StandardBodies {
        simplex: VPolytope::simplex(n)?,
        simplex_centered: VPolytope::simplex_centered(n)?,
        cube: VPolytope::cube(n)?,
        cross: VPolytope::cross(n)?,
    })
}

fn check_basis(basis: &[Vec<f64>], dim: usize) -> Result<()> {
    for (i, a) in basis.iter().enumerate() {
        if a.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: a.len(),
            });
        }
        for b in &basis[i..] {
            let target = if std::ptr::eq(a, b) { 1.0 } else { 0.0 };
            let deviation = (dot(a, b) - target).abs();
            if deviation > COMPOUND_TOL {
                return Err(Error::NotOrthonormal { deviation });
            }
        }
    }
    Ok(())
}

/// Coordinates of the projected vertices in the given orthonormal basis.
pub fn shadow_vertices(p: &VPolytope, basis: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    check_basis(basis, p.ambient_dim())?;
    Ok(p.vertices
        .iter()
        .map(|x| basis.iter().map(|b| dot(x, b)).collect())
        .collect())
}

/// Exact area of the shadow of `p` on `span{u, v}`.
pub fn shadow_area_2d(p: &VPolytope, pair: &OrthoPair) -> Result<f64> {
    if pair.dim() != p.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: p.ambient_dim(),
            found: pair.dim(),
        });
    }
    let pts: Vec<Point2> = p.vertices.iter().map(|x| pair.coords_of(x)).collect();
    Ok(hull_area_2d(&pts)?.0)
}

/// The planar shadow polygon of `p` in the `(u, v)` frame of `pair`.
pub fn shadow_polygon_2d(p: &VPolytope, pair: &OrthoPair) -> Result<Polygon2> {
    if pair.dim() != p.ambient_dim() {
        return Err(Error::DimensionMismatch {
            expected: p.ambient_dim(),
            found: pair.dim(),
        });
    }
    let pts: Vec<Point2> = p.vertices.iter().map(|x| pair.coords_of(x)).collect();
    Ok(hull_area_2d(&pts)?.1)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: usize,
    pub hits: usize,
    pub seed: Seed,
    pub box_volume: f64,
}

/// Monte-Carlo volume of the shadow of `p` on `span(basis)`, computed entirely in
/// shadow coordinates. Chunk `c` of [`MC_CHUNK`] samples draws from
/// `seed.stream(c)`, so the estimate does not depend on thread scheduling.
pub fn shadow_volume_mc(
    p: &VPolytope,
    basis: &[Vec<f64>],
    samples: usize,
    seed: Seed,
) -> Result<McEstimate> {
    let k = basis.len();
    if k == 0 || k > MAX_MC_DIM {
        return Err(Error::InvalidArgument(format!(
            "Monte-Carlo shadow dimension must be in 1..={MAX_MC_DIM}, got {k}"
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument("need at least one sample".into()));
    }
    let pts = shadow_vertices(p, basis)?;
    let mut lo = vec![f64::INFINITY; k];
    let mut hi = vec![f64::NEG_INFINITY; k];
    for q in &pts {
        for j in 0..k {
            lo[j] = lo[j].min(q[j]);
            hi[j] = hi[j].max(q[j]);
        }
    }
    lo.iter_mut().for_each(|x| *x -= BOX_PAD);
    hi.iter_mut().for_each(|x| *x += BOX_PAD);
    let box_volume: f64 = lo.iter().zip(&hi).map(|(l, h)| h - l).product();

    let proto = HullMembership::new(&pts)?;
    let chunks = samples.div_ceil(MC_CHUNK);
    let counts: Vec<Result<usize>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = seed.stream(c as u64);
            let mut hull = proto.clone();
            let take = MC_CHUNK.min(samples - c * MC_CHUNK);
            let mut q = vec![0.0; k];
            let mut hits = 0;
            for _ in 0..take {
                for j in 0..k {
                    q[j] = rng.random_range(lo[j]..hi[j]);
                }
                if hull.contains(&q)? {
                    hits += 1;
                }
            }
            Ok(hits)
        })
        .collect();
    let mut hits = 0;
    for c in counts {
        hits += c?;
    }
    let rate = hits as f64 / samples as f64;
    Ok(McEstimate {
        value: box_volume * rate,
        stderr: box_volume * (rate * (1.0 - rate) / samples as f64).sqrt(),
        samples,
        hits,
        seed,
        box_volume,
    })
}

/// Result of [`shadow_volume`]: exact for shadows of dimension one or two.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleValue {
    pub value: f64,
    /// Zero for exact values.
    pub stderr: f64,
    pub exact: bool,
}

/// Volume of the shadow of `p` on `span(basis)`: interval length for one basis
/// vector, hull area for two, Monte Carlo for three to six.
pub fn shadow_volume(
    p: &VPolytope,
    basis: &[Vec<f64>],
    samples: usize,
    seed: Seed,
) -> Result<OracleValue> {
    match basis.len() {
        1 => {
            let pts = shadow_vertices(p, basis)?;
            let (lo, hi) = pts.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), q| {
                (lo.min(q[0]), hi.max(q[0]))
            });
            Ok(OracleValue {
                value: hi - lo,
                stderr: 0.0,
                exact: true,
            })
        }
        2 => {
            let pts: Vec<Point2> = shadow_vertices(p, basis)?
                .into_iter()
                .map(|q| [q[0], q[1]])
                .collect();
            Ok(OracleValue {
                value: hull_area_2d(&pts)?.0,
                stderr: 0.0,
                exact: true,
            })
        }
        _ => {
            let est = shadow_volume_mc(p, basis, samples, seed)?;
            Ok(OracleValue {
                value: est.value,
                stderr: est.stderr,
                exact: false,
            })
        }
    }
}

/// Orthonormal basis of `a^⊥` (cube, cross) or of `a^⊥ ∩ {Σ x = 0}` (simplex),
/// the subspace a hyperplane shadow lives in.
pub fn hyperplane_shadow_basis(a: &[f64], zero_sum: bool) -> Result<Vec<Vec<f64>>> {
    let m = a.len();
    let mut given = vec![a.to_vec()];
    if zero_sum {
        let c = 1.0 / (m as f64).sqrt();
        given.push(vec![c; m]);
    }
    crate::linalg::orthobasis_of_complement(&given, m)
}
