//! Point-in-convex-hull by linear feasibility.
//!
//! `q ∈ conv{p_1, ..., p_N}` iff there are weights `λ >= 0` with `Σ λ_i = 1` and
//! `Σ λ_i p_i = q`. We solve the phase-one problem of the simplex method,
//! minimizing the total artificial slack, with Bland's rule so the pivot
//! sequence (and hence the answer) is deterministic.

use crate::error::{Error, Result};

/// Tolerance on the optimal total slack; the point is reported inside when the
/// feasibility system can be met up to this ℓ1 residual.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

const PIVOT_TOL: f64 = 1e-12;

/// Reusable dense tableau for repeated membership queries against one point set.
#[derive(Debug, Clone)]
pub struct HullMembership {
    dim: usize,
    points: Vec<Vec<f64>>,
    rows: usize,
    cols: usize,
    tableau: Vec<f64>,
    cost: Vec<f64>,
    basis: Vec<usize>,
}

impl HullMembership {
    pub fn new(points: &[Vec<f64>]) -> Result<Self> {
        let dim = points
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::InvalidArgument("membership against an empty point set".into()))?;
        if let Some(p) = points.iter().find(|p| p.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: p.len(),
            });
        }
        let rows = dim + 1;
        // λ columns, artificial columns, right-hand side
        let cols = points.len() + rows + 1;
        Ok(HullMembership {
            dim,
            points: points.to_vec(),
            rows,
            cols,
            tableau: vec![0.0; rows * cols],
            cost: vec![0.0; cols],
            basis: vec![0; rows],
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Minimal total ℓ1 residual of the feasibility system for `q`.
    pub fn residual(&mut self, q: &[f64]) -> Result<f64> {
        if q.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: q.len(),
            });
        }
        let npts = self.points.len();
        let (rows, cols) = (self.rows, self.cols);
        let rhs = cols - 1;
        let t = &mut self.tableau;
        t.iter_mut().for_each(|x| *x = 0.0);

        for r in 0..rows {
            let b = if r < self.dim { q[r] } else { 1.0 };
            let sign = if b < 0.0 { -1.0 } else { 1.0 };
            let row = &mut t[r * cols..(r + 1) * cols];
            for (j, p) in self.points.iter().enumerate() {
                row[j] = sign * if r < self.dim { p[r] } else { 1.0 };
            }
            row[npts + r] = 1.0;
            row[rhs] = sign * b;
            self.basis[r] = npts + r;
        }
        // reduced costs of the phase-one objective Σ artificials
        for j in 0..cols {
            let col_sum: f64 = (0..rows).map(|r| t[r * cols + j]).sum();
            self.cost[j] = if j >= npts && j < npts + rows { 0.0 } else { -col_sum };
        }
        // cost[rhs] holds -objective

        let max_iter = 50 * cols;
        for _ in 0..max_iter {
            let entering = (0..npts + rows).find(|&j| self.cost[j] < -PIVOT_TOL);
            let Some(e) = entering else {
                return Ok((-self.cost[rhs]).max(0.0));
            };
            let mut leave: Option<(usize, f64)> = None;
            for r in 0..rows {
                let a = t[r * cols + e];
                if a > PIVOT_TOL {
                    let ratio = t[r * cols + rhs] / a;
                    let better = match leave {
                        None => true,
                        Some((lr, best)) => {
                            ratio < best - PIVOT_TOL
                                || (ratio <= best + PIVOT_TOL && self.basis[r] < self.basis[lr])
                        }
                    };
                    if better {
                        leave = Some((r, ratio));
                    }
                }
            }
            let Some((l, _)) = leave else {
                // the phase-one objective is bounded below by zero
                return Err(Error::SolverFailure(format!(
                    "unbounded phase-one column {e} ({} points, dim {})",
                    npts, self.dim
                )));
            };
            let piv = t[l * cols + e];
            for j in 0..cols {
                t[l * cols + j] /= piv;
            }
            for r in 0..rows {
                if r != l {
                    let f = t[r * cols + e];
                    if f != 0.0 {
                        for j in 0..cols {
                            t[r * cols + j] -= f * t[l * cols + j];
                        }
                    }
                }
            }
            let f = self.cost[e];
            for j in 0..cols {
                self.cost[j] -= f * t[l * cols + j];
            }
            self.basis[l] = e;
        }
        Err(Error::SolverFailure(format!(
            "no convergence after {max_iter} pivots ({} points, dim {}, objective {:.3e})",
            npts,
            self.dim,
            -self.cost[rhs]
        )))
    }

    pub fn contains(&mut self, q: &[f64]) -> Result<bool> {
        Ok(self.residual(q)? <= MEMBERSHIP_TOL)
    }
}

/// Whether `q` lies in the convex hull of `points` (boundary inclusive).
pub fn membership_in_hull(q: &[f64], points: &[Vec<f64>]) -> Result<bool> {
    HullMembership::new(points)?.contains(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{gaussian_vector, Seed};

    fn cube3() -> Vec<Vec<f64>> {
        (0..8)
            .map(|m| (0..3).map(|j| if m >> j & 1 == 1 { 0.5 } else { -0.5 }).collect())
            .collect()
    }

    #[test]
    fn centroid_vertex_and_outside() {
        let pts = vec![vec![0.0, 0.0, 0.0], vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]];
        let c = vec![0.25, 0.25, 0.25];
        assert!(membership_in_hull(&c, &pts).unwrap());
        assert!(membership_in_hull(&pts[2], &pts).unwrap());
        assert!(!membership_in_hull(&[2.0, 0.0, 0.0], &pts).unwrap());
        assert!(!membership_in_hull(&[0.5, 0.5, 0.5], &pts).unwrap());
        assert!(membership_in_hull(&[0.5, 0.5, 0.0], &pts).unwrap());
    }

    #[test]
    fn matches_box_test_for_cube() {
        let pts = cube3();
        let mut hull = HullMembership::new(&pts).unwrap();
        let mut rng = Seed(1).rng();
        for _ in 0..2000 {
            let q: Vec<f64> = gaussian_vector(&mut rng, 3).iter().map(|x| 0.4 * x).collect();
            let inside = q.iter().all(|x| x.abs() <= 0.5);
            let margin = q.iter().map(|x| (x.abs() - 0.5).abs()).fold(f64::INFINITY, f64::min);
            if margin > 1e-8 {
                assert_eq!(hull.contains(&q).unwrap(), inside, "{q:?}");
            }
        }
    }

    #[test]
    fn degenerate_point_sets() {
        // segment in the plane
        let pts = vec![vec![0.0, 0.0], vec![1.0, 1.0]];
        assert!(membership_in_hull(&[0.5, 0.5], &pts).unwrap());
        assert!(!membership_in_hull(&[0.5, 0.6], &pts).unwrap());
        // repeated points
        let pts = vec![vec![1.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, -1.0], vec![-1.0, -1.0]];
        assert!(membership_in_hull(&[0.0, 0.0], &pts).unwrap());
        assert!(membership_in_hull(&[1.0, 0.0], &pts).unwrap());
        assert!(membership_in_hull(&[]  as &[f64], &[]).is_err());
        assert!(membership_in_hull(&[0.0], &pts).is_err());
    }

    #[test]
    fn deterministic() {
        let pts = cube3();
        let mut a = HullMembership::new(&pts).unwrap();
        let mut b = HullMembership::new(&pts).unwrap();
        let q = [0.1, -0.49999, 0.3];
        assert_eq!(a.residual(&q).unwrap().to_bits(), b.residual(&q).unwrap().to_bits());
    }
}
