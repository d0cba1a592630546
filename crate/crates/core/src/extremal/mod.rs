//! Closed-form extremizers on constrained spheres, the extremal simplex volumes and
//! widths, the planar cube bounds, and a numeric optimizer that rediscovers them.

mod majorization;
mod search;

pub use majorization::{karamata_gap, majorizes, ConvexFn, MajorizationPair};
pub use search::{canonical_form, numeric_search, Constraint, Objective, SearchOptions};

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::closedform::{check_min, cube_planar_shadow, simplex_hyperplane_shadow, simplex_width};
use crate::error::{Error, Result};
use crate::linalg::{normalize, unit_vector, Direction, OrthoPair};
use crate::lpbodies::LpOrder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extremum {
    Min,
    Max,
}

impl fmt::Display for Extremum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Extremum::Min => "min",
            Extremum::Max => "max",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Argument {
    Direction(Direction),
    Pair(OrthoPair),
}

impl Argument {
    pub fn direction(&self) -> Option<&Direction> {
        match self {
            Argument::Direction(d) => Some(d),
            Argument::Pair(_) => None,
        }
    }

    pub fn pair(&self) -> Option<&OrthoPair> {
        match self {
            Argument::Pair(p) => Some(p),
            Argument::Direction(_) => None,
        }
    }
}

/// An extremal value with a point attaining it. `certified` is true only for
/// closed forms; numeric search results never carry it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalResult {
    pub value: f64,
    pub argument: Argument,
    pub kind: Extremum,
    pub certified: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ExtremalResult {
    fn certified(value: f64, argument: Argument, kind: Extremum) -> ExtremalResult {
        ExtremalResult {
            value,
            argument,
            kind,
            certified: true,
            note: None,
        }
    }
}

/// `(1/√2, -1/√2, 0, ..., 0)`, minimizing `Σ|a_j|` on the zero-sum sphere with value `√2`.
pub fn l1_min_zero_sum(m: usize) -> Result<ExtremalResult> {
    check_min("dimension", 2, m)?;
    let mut a = vec![0.0; m];
    a[0] = FRAC_1_SQRT_2;
    a[1] = -FRAC_1_SQRT_2;
    Ok(ExtremalResult::certified(SQRT_2, Argument::Direction(normalize(&a)?), Extremum::Min))
}

/// Maximizer of `Σ|a_j|` on the zero-sum sphere: the half/half vector for even `m`,
/// value `√m`; for odd `m`, `(m-1)/2` coordinates `√((m+1)/(m(m-1)))` and `(m+1)/2`
/// coordinates `-√((m-1)/(m(m+1)))`, value `√((m²-1)/m)`.
pub fn l1_max_zero_sum(m: usize) -> Result<ExtremalResult> {
    check_min("dimension", 2, m)?;
    let mf = m as f64;
    if m.is_multiple_of(2) {
        let c = 1.0 / mf.sqrt();
        let a: Vec<f64> = (0..m).map(|j| if j < m / 2 { c } else { -c }).collect();
        return Ok(ExtremalResult::certified(mf.sqrt(), Argument::Direction(normalize(&a)?), Extremum::Max));
    }
    let k = (m - 1) / 2;
    let pos = ((mf + 1.0) / (mf * (mf - 1.0))).sqrt();
    let neg = -((mf - 1.0) / (mf * (mf + 1.0))).sqrt();
    let a: Vec<f64> = (0..m).map(|j| if j < k { pos } else { neg }).collect();
    let mut r = ExtremalResult::certified(
        ((mf * mf - 1.0) / mf).sqrt(),
        Argument::Direction(normalize(&a)?),
        Extremum::Max,
    );
    r.note = Some(format!(
        "{k} and {} positive coordinates attain the same value; reported with {k}",
        k + 1
    ));
    Ok(r)
}

fn direction_of(r: &ExtremalResult) -> &Direction {
    r.argument
        .direction()
        .expect("closed-form sphere extremizers are directions")
}

/// Smallest and largest `vol_{n-1}` shadows of `Δ_n` on hyperplanes.
pub fn simplex_extremal_volumes(n: usize) -> Result<(ExtremalResult, ExtremalResult)> {
    check_min("dimension", 2, n)?;
    let mut lo = l1_min_zero_sum(n + 1)?;
    let mut hi = l1_max_zero_sum(n + 1)?;
    lo.value = simplex_hyperplane_shadow(direction_of(&lo))?;
    hi.value = simplex_hyperplane_shadow(direction_of(&hi))?;
    Ok((lo, hi))
}

/// Smallest and largest widths of `Δ_n` over zero-sum directions. The roles of the
/// `ℓ1` extremizers swap: the `ℓ1` minimizer has the largest width.
pub fn simplex_extremal_widths(n: usize) -> Result<(ExtremalResult, ExtremalResult)> {
    check_min("dimension", 2, n)?;
    let mut lo = l1_max_zero_sum(n + 1)?;
    let mut hi = l1_min_zero_sum(n + 1)?;
    lo.kind = Extremum::Min;
    hi.kind = Extremum::Max;
    lo.value = simplex_width(direction_of(&lo))?;
    hi.value = simplex_width(direction_of(&hi))?;
    Ok((lo, hi))
}

/// Planar cube shadow bounds: `1` at `(e_1, e_2)` and `cot(π/2n)` at the regular pair.
pub fn planar_cube_bounds(n: usize) -> Result<(ExtremalResult, ExtremalResult)> {
    check_min("dimension", 2, n)?;
    let coord = OrthoPair::coordinate(n, 0, 1)?;
    let lower = ExtremalResult::certified(cube_planar_shadow(&coord), Argument::Pair(coord), Extremum::Min);
    let upper = ExtremalResult::certified(
        1.0 / (PI / (2.0 * n as f64)).tan(),
        Argument::Pair(OrthoPair::regular(n)?),
        Extremum::Max,
    );
    Ok((lower, upper))
}

/// `F_p(a) = Σ_j |a_j|^p` on the unit sphere of `R^m`.
pub fn fp_value(a: &[f64], p: LpOrder) -> f64 {
    let p = p.get();
    a.iter().map(|x| x.abs().powf(p)).sum()
}

/// Extrema of `F_p` on the unit sphere: `1` at `e_1` and `m^{1-p/2}` at the uniform
/// vector, the former being the minimum for `p < 2` and the maximum for `p > 2`.
pub fn fp_extrema_sphere(m: usize, p: LpOrder) -> Result<(ExtremalResult, ExtremalResult)> {
    check_min("dimension", 2, m)?;
    let pv = p.get();
    if pv == 2.0 {
        return Err(Error::NoExtremalProblem);
    }
    let corner = normalize(&unit_vector(m, 0))?;
    let uniform = normalize(&vec![1.0; m])?;
    let at_corner = fp_value(corner.coords(), p);
    let at_uniform = fp_value(uniform.coords(), p);
    let (min_arg, min_val, max_arg, max_val) = if pv < 2.0 {
        (corner, at_corner, uniform, at_uniform)
    } else {
        (uniform, at_uniform, corner, at_corner)
    };
    Ok((
        ExtremalResult::certified(min_val, Argument::Direction(min_arg), Extremum::Min),
        ExtremalResult::certified(max_val, Argument::Direction(max_arg), Extremum::Max),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::{lagrange_sum, simplex_gauge_diff_body};
    use crate::linalg::{dot, random_direction, random_pair, Seed, UNIT_TOL};
    use approx::assert_abs_diff_eq;

    fn check_direction(d: &Direction, zero_sum: bool) {
        assert_abs_diff_eq!(dot(d.coords(), d.coords()).sqrt(), 1.0, epsilon = UNIT_TOL);
        if zero_sum {
            assert!(d.is_zero_sum());
            assert!(d.coords().iter().sum::<f64>().abs() <= UNIT_TOL);
        }
    }

    fn l1(d: &Direction) -> f64 {
        d.coords().iter().map(|x| x.abs()).sum()
    }

    #[test]
    fn l1_extremizers() {
        for m in 2..=30 {
            let lo = l1_min_zero_sum(m).unwrap();
            let hi = l1_max_zero_sum(m).unwrap();
            check_direction(direction_of(&lo), true);
            check_direction(direction_of(&hi), true);
            assert_abs_diff_eq!(l1(direction_of(&lo)), lo.value, epsilon = 1e-12);
            assert_abs_diff_eq!(l1(direction_of(&hi)), hi.value, epsilon = 1e-12);
            assert_eq!(lo.value, SQRT_2);
            // 2 √(k(m-k)/m) with k = floor(m/2)
            let k = (m / 2) as f64;
            let mf = m as f64;
            assert_abs_diff_eq!(hi.value, 2.0 * (k * (mf - k) / mf).sqrt(), epsilon = 1e-12);
            assert_eq!(hi.note.is_some(), m % 2 == 1);
        }
        assert_abs_diff_eq!(l1_max_zero_sum(4).unwrap().value, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(l1_max_zero_sum(5).unwrap().value, (24.0f64 / 5.0).sqrt(), epsilon = 1e-15);
        assert!(l1_min_zero_sum(1).is_err());
        assert!(l1_max_zero_sum(1).is_err());
    }

    #[test]
    fn extremal_volumes_match_displays() {
        for n in 2..=20 {
            let (lo, hi) = simplex_extremal_volumes(n).unwrap();
            let nf = n as f64;
            let f = crate::closedform::factorial(n - 1);
            let vmin = (nf + 1.0).sqrt() / (SQRT_2 * f);
            let vmax = if n % 2 == 1 {
                (nf + 1.0) / (2.0 * f)
            } else {
                (nf * (nf + 2.0)).sqrt() / (2.0 * f)
            };
            assert_abs_diff_eq!(lo.value, vmin, epsilon = 1e-12 * vmin.max(1.0));
            assert_abs_diff_eq!(hi.value, vmax, epsilon = 1e-12 * vmax.max(1.0));
        }
        let (lo, hi) = simplex_extremal_volumes(3).unwrap();
        assert_abs_diff_eq!(lo.value, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(hi.value, 1.0, epsilon = 1e-15);
        let (lo, hi) = simplex_extremal_volumes(2).unwrap();
        assert_abs_diff_eq!(lo.value, 1.5f64.sqrt(), epsilon = 1e-15);
        assert_abs_diff_eq!(hi.value, SQRT_2, epsilon = 1e-15);
    }

    #[test]
    fn extremal_widths_match_remark() {
        for n in 2..=20 {
            let (lo, hi) = simplex_extremal_widths(n).unwrap();
            let nf = n as f64;
            let wmin = if n % 2 == 1 {
                2.0 / (nf + 1.0).sqrt()
            } else {
                2.0 * ((nf + 1.0) / (nf * (nf + 2.0))).sqrt()
            };
            assert_abs_diff_eq!(lo.value, wmin, epsilon = 1e-12);
            assert_abs_diff_eq!(hi.value, SQRT_2, epsilon = 1e-12);
            for r in [&lo, &hi] {
                let g = simplex_gauge_diff_body(direction_of(r)).unwrap();
                assert_abs_diff_eq!(r.value * g, 1.0, epsilon = 1e-10);
            }
        }
        assert_abs_diff_eq!(simplex_extremal_widths(3).unwrap().0.value, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            simplex_extremal_widths(4).unwrap().0.value,
            2.0 * (5.0f64 / 24.0).sqrt(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn planar_bounds() {
        let (lo, hi) = planar_cube_bounds(2).unwrap();
        assert_abs_diff_eq!(lo.value, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(hi.value, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(planar_cube_bounds(3).unwrap().1.value, 3f64.sqrt(), epsilon = 1e-15);
        for n in 2..=50 {
            let (lo, hi) = planar_cube_bounds(n).unwrap();
            let pair = hi.argument.pair().unwrap();
            assert_abs_diff_eq!(dot(pair.u(), pair.u()), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(dot(pair.v(), pair.v()), 1.0, epsilon = 1e-12);
            assert!(dot(pair.u(), pair.v()).abs() <= 1e-12);
            assert_abs_diff_eq!(cube_planar_shadow(pair), hi.value, epsilon = 1e-9);
            assert_abs_diff_eq!(lagrange_sum(pair), 1.0, epsilon = 1e-12);
            assert_eq!(lo.value, 1.0);
        }
    }

    #[test]
    fn fp_extrema() {
        let p = |x| LpOrder::new(x).unwrap();
        let (_, hi) = fp_extrema_sphere(4, p(1.5)).unwrap();
        assert_abs_diff_eq!(hi.value, 4f64.powf(0.25), epsilon = 1e-14);
        let (lo, hi) = fp_extrema_sphere(4, p(4.0)).unwrap();
        assert_abs_diff_eq!(lo.value, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(hi.value, 1.0, epsilon = 1e-15);
        let (lo, hi) = fp_extrema_sphere(4, p(3.0)).unwrap();
        assert_abs_diff_eq!(lo.value, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(hi.value, 1.0, epsilon = 1e-15);
        let (lo, hi) = fp_extrema_sphere(6, p(1.0)).unwrap();
        assert_eq!(lo.value, 1.0);
        assert_abs_diff_eq!(hi.value, 6f64.sqrt(), epsilon = 1e-14);
        assert_eq!(fp_extrema_sphere(4, p(2.0)), Err(Error::NoExtremalProblem));
        assert!(fp_extrema_sphere(1, p(3.0)).is_err());
    }

    #[test]
    fn random_points_never_beat_closed_forms() {
        let mut rng = Seed(21).rng();
        for m in 3..=8 {
            let lo = l1_min_zero_sum(m).unwrap().value;
            let hi = l1_max_zero_sum(m).unwrap().value;
            for _ in 0..2000 {
                let a = random_direction(&mut rng, m, true).unwrap();
                let v = l1(&a);
                assert!(v >= lo - 1e-9 && v <= hi + 1e-9);
            }
            let (plo, phi) = planar_cube_bounds(m).unwrap();
            for _ in 0..500 {
                let v = cube_planar_shadow(&random_pair(&mut rng, m).unwrap());
                assert!(v >= plo.value - 1e-9 && v <= phi.value + 1e-9);
            }
            for pv in [1.2, 1.5, 3.0, 4.0] {
                let p = LpOrder::new(pv).unwrap();
                let (flo, fhi) = fp_extrema_sphere(m, p).unwrap();
                for _ in 0..500 {
                    let v = fp_value(random_direction(&mut rng, m, false).unwrap().coords(), p);
                    assert!(v >= flo.value - 1e-9 && v <= fhi.value + 1e-9);
                }
            }
        }
    }
}
