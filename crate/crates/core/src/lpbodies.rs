//! Support functions of L_p projection bodies of the cube, the cross-polytope and
//! the centered simplex.
//!
//! All `*_support_p` functions return the p-th power `h^p`, matching
//! `h^p(a) = ½ Σ_F vol(F) |<a, ν_F>|^p h_P(ν_F)^{1-p}`; use [`support_from_power`]
//! for `h` itself.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::closedform::{factorial, FacetData};
use crate::error::{Error, Result};
use crate::linalg::{dot, Direction, Seed};

/// Exact sign enumeration is limited to `2^20` sign vectors.
pub const MAX_ENUMERATION_DIM: usize = 20;

const SIGN_CHUNK: usize = 8192;

/// Order `p >= 1` of an L_p projection body.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct LpOrder(f64);

impl LpOrder {
    pub fn new(p: f64) -> Result<LpOrder> {
        if p.is_finite() && p >= 1.0 {
            Ok(LpOrder(p))
        } else {
            Err(Error::InvalidOrder(p))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for LpOrder {
    type Error = Error;
    fn try_from(p: f64) -> Result<Self> {
        LpOrder::new(p)
    }
}

impl From<LpOrder> for f64 {
    fn from(p: LpOrder) -> f64 {
        p.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignMethod {
    ExactEnumeration,
    MonteCarlo,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignAverage {
    pub value: f64,
    pub method: SignMethod,
    /// Zero for exact enumeration.
    pub samples: usize,
    /// Zero for exact enumeration.
    pub stderr: f64,
}

/// How to evaluate `E|Σ a_j ε_j|^p`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MomentMode {
    Exact,
    MonteCarlo { samples: usize, seed: Seed },
}

/// `h = (h^p)^{1/p}`.
pub fn support_from_power(h_p: f64, p: LpOrder) -> f64 {
    h_p.powf(1.0 / p.get())
}

/// `h^p_{Π_p Q_n}(a) = 2^{p-1} Σ_j |a_j|^p`.
pub fn lp_cube_support_p(a: &Direction, p: LpOrder) -> f64 {
    let p = p.get();
    2f64.powf(p - 1.0) * a.coords().iter().map(|x| x.abs().powf(p)).sum::<f64>()
}

/// `E|Σ_j a_j ε_j|^p` over independent uniform signs.
pub fn rademacher_moment(a: &Direction, p: LpOrder, mode: MomentMode) -> Result<SignAverage> {
    let n = a.dim();
    let coords = a.coords();
    let pw = p.get();
    match mode {
        MomentMode::Exact => {
            if n > MAX_ENUMERATION_DIM {
                return Err(Error::EnumerationTooLarge { n });
            }
            // ε and -ε give the same value: enumerate with ε_1 = +1 only
            let half = 1usize << (n - 1);
            let total: f64 = (0..half)
                .map(|mask| {
                    let s: f64 = coords
                        .iter()
                        .enumerate()
                        .map(|(j, &x)| if j > 0 && mask >> (j - 1) & 1 == 1 { -x } else { x })
                        .sum();
                    s.abs().powf(pw)
                })
                .sum();
            Ok(SignAverage {
                value: total / half as f64,
                method: SignMethod::ExactEnumeration,
                samples: 0,
                stderr: 0.0,
            })
        }
        MomentMode::MonteCarlo { samples, seed } => {
            if samples < 2 {
                return Err(Error::InvalidArgument(
                    "Monte-Carlo sign average needs at least two samples".into(),
                ));
            }
            let chunks = samples.div_ceil(SIGN_CHUNK);
            let partial: Vec<(f64, f64)> = (0..chunks)
                .into_par_iter()
                .map(|c| {
                    let mut rng = seed.stream(c as u64);
                    let take = SIGN_CHUNK.min(samples - c * SIGN_CHUNK);
                    let mut sum = 0.0;
                    let mut sumsq = 0.0;
                    for _ in 0..take {
                        let s: f64 = coords
                            .iter()
                            .map(|&x| if rng.random::<bool>() { x } else { -x })
                            .sum();
                        let v = s.abs().powf(pw);
                        sum += v;
                        sumsq += v * v;
                    }
                    (sum, sumsq)
                })
                .collect();
            let (sum, sumsq) = partial
                .iter()
                .fold((0.0, 0.0), |(s, q), (a, b)| (s + a, q + b));
            let nf = samples as f64;
            let mean = sum / nf;
            let var = ((sumsq - nf * mean * mean) / (nf - 1.0)).max(0.0);
            Ok(SignAverage {
                value: mean,
                method: SignMethod::MonteCarlo,
                samples,
                stderr: (var / nf).sqrt(),
            })
        }
    }
}

/// `h^p_{Π_p B_1^n}(a) = 2^{n-1}/(n-1)! · E|Σ_j a_j ε_j|^p`.
pub fn lp_cross_support_p(a: &Direction, p: LpOrder, mode: MomentMode) -> Result<f64> {
    Ok(cross_coefficient(a.dim()) * rademacher_moment(a, p, mode)?.value)
}

/// `2^{n-1}/(n-1)!`
pub fn cross_coefficient(n: usize) -> f64 {
    2f64.powi(n as i32 - 1) / factorial(n.saturating_sub(1))
}

/// `h^p_{Π_p Δ_c^n}(a) = (n+1)^{(2p-1)/2} / (2 (n-1)!) · Σ_j |a_j|^p` for a zero-sum
/// unit `a` in `R^{n+1}`.
pub fn lp_simplex_support_p(a: &Direction, p: LpOrder) -> Result<f64> {
    crate::closedform::check_min("simplex direction length", 3, a.dim())?;
    a.require_zero_sum()?;
    let n = a.dim() - 1;
    let pw = p.get();
    let coef = ((n + 1) as f64).powf((2.0 * pw - 1.0) / 2.0) / (2.0 * factorial(n - 1));
    Ok(coef * a.coords().iter().map(|x| x.abs().powf(pw)).sum::<f64>())
}

/// Facet-sum route `½ Σ_F vol(F) |<a, ν_F>|^p h_P(ν_F)^{1-p}` with the support
/// values supplied per facet.
pub fn lp_support_via_facets(
    facets: &FacetData,
    support_values: &[f64],
    a: &Direction,
    p: LpOrder,
) -> Result<f64> {
    if support_values.len() != facets.len() {
        return Err(Error::DimensionMismatch {
            expected: facets.len(),
            found: support_values.len(),
        });
    }
    if a.dim() != facets.ambient_dim {
        return Err(Error::DimensionMismatch {
            expected: facets.ambient_dim,
            found: a.dim(),
        });
    }
    if support_values.iter().any(|&h| !(h > 0.0)) {
        return Err(Error::OriginNotInterior);
    }
    let pw = p.get();
    let sum: f64 = facets
        .normals
        .iter()
        .zip(&facets.volumes)
        .zip(support_values)
        .map(|((nrm, vol), h)| vol * dot(a.coords(), nrm).abs().powf(pw) * h.powf(1.0 - pw))
        .sum();
    Ok(0.5 * sum)
}

/// `h_P(ν_F) = max_x <x, ν_F>` over the vertices of `p`, one value per facet.
pub fn facet_support_values(facets: &FacetData, p: &crate::oracle::VPolytope) -> Vec<f64> {
    facets.normals.iter().map(|nrm| p.support(nrm)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::{
        cauchy_shadow, cube_hyperplane_shadow, facet_data, simplex_hyperplane_shadow, BodyTag,
    };
    use crate::linalg::{normalize, random_direction};
    use crate::oracle::VPolytope;
    use approx::assert_abs_diff_eq;

    fn order(p: f64) -> LpOrder {
        LpOrder::new(p).unwrap()
    }

    #[test]
    fn order_validation() {
        assert!(LpOrder::new(0.5).is_err());
        assert!(LpOrder::new(f64::NAN).is_err());
        assert!(LpOrder::new(f64::INFINITY).is_err());
        assert_eq!(LpOrder::new(1.0).unwrap().get(), 1.0);
    }

    #[test]
    fn cube_examples() {
        let mut rng = Seed(1).rng();
        for _ in 0..20 {
            let a = random_direction(&mut rng, 6, false).unwrap();
            assert_abs_diff_eq!(lp_cube_support_p(&a, order(1.0)), cube_hyperplane_shadow(&a), epsilon = 1e-12);
            assert_abs_diff_eq!(lp_cube_support_p(&a, order(2.0)), 2.0, epsilon = 1e-12);
        }
        let e1 = normalize(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(lp_cube_support_p(&e1, order(1.0)), 1.0);
        assert_eq!(lp_cube_support_p(&e1, order(2.0)), 2.0);
    }

    #[test]
    fn rademacher_examples() {
        let a = normalize(&[1.0, 1.0]).unwrap();
        // sign sums {√2, 0, 0, -√2}
        let m = rademacher_moment(&a, order(1.0), MomentMode::Exact).unwrap();
        assert_abs_diff_eq!(m.value, 1.0 / 2f64.sqrt(), epsilon = 1e-15);
        assert_eq!(m.method, SignMethod::ExactEnumeration);
        assert_eq!(m.stderr, 0.0);

        let mut rng = Seed(2).rng();
        for n in 1..=10 {
            let a = if n == 1 {
                normalize(&[1.0]).unwrap()
            } else {
                random_direction(&mut rng, n, false).unwrap()
            };
            let m = rademacher_moment(&a, order(2.0), MomentMode::Exact).unwrap();
            assert_abs_diff_eq!(m.value, 1.0, epsilon = 1e-12);
        }
        let e1 = normalize(&[1.0, 0.0, 0.0, 0.0]).unwrap();
        for p in [1.0, 1.5, 3.0, 7.0] {
            let m = rademacher_moment(&e1, order(p), MomentMode::Exact).unwrap();
            assert_eq!(m.value, 1.0);
        }
        let big = normalize(&[1.0; 21]).unwrap();
        assert_eq!(
            rademacher_moment(&big, order(1.0), MomentMode::Exact),
            Err(Error::EnumerationTooLarge { n: 21 })
        );
    }

    #[test]
    fn rademacher_mc_is_deterministic_and_close() {
        let a = random_direction(&mut Seed(4).rng(), 8, false).unwrap();
        let mode = MomentMode::MonteCarlo {
            samples: 50_000,
            seed: Seed(10),
        };
        let x = rademacher_moment(&a, order(3.0), mode).unwrap();
        let y = rademacher_moment(&a, order(3.0), mode).unwrap();
        assert_eq!(x, y);
        let exact = rademacher_moment(&a, order(3.0), MomentMode::Exact).unwrap();
        assert!((x.value - exact.value).abs() <= 4.0 * x.stderr);
        assert!(x.stderr > 0.0);
    }

    #[test]
    fn power_means_increase_with_p() {
        let mut rng = Seed(6).rng();
        for _ in 0..50 {
            let a = random_direction(&mut rng, 7, false).unwrap();
            let mut prev = 0.0;
            for p in [1.0, 1.5, 2.0, 3.0, 4.0] {
                let m = rademacher_moment(&a, order(p), MomentMode::Exact).unwrap();
                let mean = m.value.powf(1.0 / p);
                assert!(mean >= prev - 1e-12);
                prev = mean;
            }
        }
    }

    #[test]
    fn cross_examples() {
        let e1 = normalize(&[1.0, 0.0, 0.0]).unwrap();
        assert_abs_diff_eq!(lp_cross_support_p(&e1, order(1.0), MomentMode::Exact).unwrap(), 2.0, epsilon = 1e-15);

        let cross = facet_data(BodyTag::Cross, 3).unwrap();
        let mut rng = Seed(7).rng();
        for _ in 0..20 {
            let a = random_direction(&mut rng, 3, false).unwrap();
            assert_abs_diff_eq!(
                lp_cross_support_p(&a, order(1.0), MomentMode::Exact).unwrap(),
                cauchy_shadow(&cross, &a).unwrap(),
                epsilon = 1e-12
            );
        }
        let a = normalize(&[1.0, 1.0]).unwrap();
        assert_abs_diff_eq!(
            lp_cross_support_p(&a, order(1.0), MomentMode::Exact).unwrap(),
            2f64.sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn simplex_examples() {
        let mut rng = Seed(8).rng();
        for _ in 0..20 {
            let a = random_direction(&mut rng, 5, true).unwrap();
            assert_abs_diff_eq!(
                lp_simplex_support_p(&a, order(1.0)).unwrap(),
                simplex_hyperplane_shadow(&a).unwrap(),
                epsilon = 1e-12
            );
            let b = random_direction(&mut rng, 3, true).unwrap();
            assert_abs_diff_eq!(
                lp_simplex_support_p(&b, order(2.0)).unwrap(),
                3f64.powf(1.5) / 2.0,
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(
                lp_simplex_support_p(&a, order(2.5)).unwrap(),
                lp_simplex_support_p(&a.neg(), order(2.5)).unwrap(),
                epsilon = 1e-15
            );
        }
        assert_eq!(
            lp_simplex_support_p(&normalize(&[1.0, 0.0, 0.0]).unwrap(), order(1.0)),
            Err(Error::NotZeroSum)
        );
    }

    #[test]
    fn facet_route_examples() {
        let mut rng = Seed(9).rng();
        let cube_f = facet_data(BodyTag::Cube, 4).unwrap();
        let cube_h = facet_support_values(&cube_f, &VPolytope::cube(4).unwrap());
        assert!(cube_h.iter().all(|&h| h == 0.5));
        let simplex_f = facet_data(BodyTag::SimplexCentered, 3).unwrap();
        let simplex_h = facet_support_values(&simplex_f, &VPolytope::simplex_centered(3).unwrap());
        for h in &simplex_h {
            assert_abs_diff_eq!(*h, 1.0 / 12f64.sqrt(), epsilon = 1e-15);
        }
        for _ in 0..20 {
            let a = random_direction(&mut rng, 4, false).unwrap();
            assert_abs_diff_eq!(
                lp_support_via_facets(&cube_f, &cube_h, &a, order(1.0)).unwrap(),
                cube_hyperplane_shadow(&a),
                epsilon = 1e-12
            );
            let sq: f64 = a.coords().iter().map(|x| x * x).sum();
            assert_abs_diff_eq!(
                lp_support_via_facets(&cube_f, &cube_h, &a, order(2.0)).unwrap(),
                2.0 * sq,
                epsilon = 1e-12
            );
            let b = random_direction(&mut rng, 4, true).unwrap();
            assert_abs_diff_eq!(
                lp_support_via_facets(&simplex_f, &simplex_h, &b, order(3.0)).unwrap(),
                lp_simplex_support_p(&b, order(3.0)).unwrap(),
                epsilon = 1e-10
            );
        }
        let mut bad = cube_h.clone();
        bad[0] = 0.0;
        let a = random_direction(&mut rng, 4, false).unwrap();
        assert_eq!(
            lp_support_via_facets(&cube_f, &bad, &a, order(2.0)),
            Err(Error::OriginNotInterior)
        );
    }
}
