//! Projected local search over constrained spheres and orthonormal pairs.
//!
//! Each restart starts from a uniformly random admissible point and takes steps of
//! length `η` along the normalized (sub)gradient, projected onto the tangent space,
//! followed by re-projection onto the constraint set. A step is kept only if it
//! improves the objective; otherwise `η` is halved. For `Σ|a_j|`-type objectives
//! minimized on a sphere, a coordinate that would change sign is pinned to zero for
//! the rest of the restart, which lets the iterate reach the sparse minimizers.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{Argument, ExtremalResult, Extremum};
use crate::closedform::factorial;
use crate::error::{Error, Result};
use crate::linalg::{dot, norm2, normalize, orthonormal_pair, random_direction, random_pair, OrthoPair, Seed};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    /// `Σ_j |a_j|`
    L1Norm,
    /// `vol_{n-1}` of the simplex shadow on `a^⊥`, for `a` in `R^{n+1}`.
    SimplexShadow,
    /// `Σ_j |a_j|^p`
    PowerSum(f64),
    /// `Σ_{i<j} |u_i v_j - u_j v_i|`
    PlanarMinorSum,
}

impl Objective {
    fn name(self) -> &'static str {
        match self {
            Objective::L1Norm => "l1_norm",
            Objective::SimplexShadow => "simplex_shadow",
            Objective::PowerSum(_) => "power_sum",
            Objective::PlanarMinorSum => "planar_minor_sum",
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Objective::PowerSum(p) => write!(f, "power_sum(p={p})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Constraint {
    UnitSphere,
    ZeroSumUnitSphere,
    OrthonormalPair,
}

impl Constraint {
    fn name(self) -> &'static str {
        match self {
            Constraint::UnitSphere => "unit_sphere",
            Constraint::ZeroSumUnitSphere => "zero_sum_unit_sphere",
            Constraint::OrthonormalPair => "orthonormal_pair",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchOptions {
    pub initial_step: f64,
    pub min_step: f64,
    pub max_iter: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            initial_step: 0.5,
            min_step: 1e-10,
            max_iter: 10_000,
        }
    }
}

/// Representative of `x` up to permutations and a global sign: coordinates sorted
/// decreasingly, choosing between `x` and `-x` the lexicographically larger.
pub fn canonical_form(x: &[f64]) -> Vec<f64> {
    let sort = |v: Vec<f64>| {
        let mut v = v;
        v.sort_by(|a, b| b.total_cmp(a));
        v
    };
    let plus = sort(x.to_vec());
    let minus = sort(x.iter().map(|v| -v).collect());
    let cmp = plus
        .iter()
        .zip(&minus)
        .map(|(a, b)| a.total_cmp(b))
        .find(|o| o.is_ne())
        .unwrap_or(std::cmp::Ordering::Equal);
    if cmp.is_lt() {
        minus
    } else {
        plus
    }
}

fn sign(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

struct SphereProblem {
    objective: Objective,
    zero_sum: bool,
    /// Pin coordinates that change sign.
    clamp: bool,
    scale: f64,
}

impl SphereProblem {
    fn value(&self, a: &[f64]) -> f64 {
        match self.objective {
            Objective::PowerSum(p) => a.iter().map(|x| x.abs().powf(p)).sum(),
            _ => self.scale * a.iter().map(|x| x.abs()).sum::<f64>(),
        }
    }

    fn gradient(&self, a: &[f64], g: &mut [f64]) {
        for (gj, &x) in g.iter_mut().zip(a) {
            *gj = match self.objective {
                Objective::PowerSum(p) => p * x.abs().powf(p - 1.0) * sign(x),
                _ => self.scale * sign(x),
            };
        }
    }

    /// Mean-subtract over free coordinates (zero-sum case), zero the pinned ones,
    /// normalize. `None` if nothing of length is left.
    fn project(&self, x: &mut [f64], pinned: &[bool]) -> Option<()> {
        let free = pinned.iter().filter(|p| !**p).count();
        if free == 0 {
            return None;
        }
        if self.zero_sum {
            let mean = x
                .iter()
                .zip(pinned)
                .filter(|(_, p)| !**p)
                .map(|(v, _)| v)
                .sum::<f64>()
                / free as f64;
            x.iter_mut().zip(pinned).for_each(|(v, p)| {
                if !*p {
                    *v -= mean;
                }
            });
        }
        x.iter_mut().zip(pinned).for_each(|(v, p)| {
            if *p {
                *v = 0.0;
            }
        });
        let len = norm2(x);
        if !(len > 0.0) {
            return None;
        }
        x.iter_mut().for_each(|v| *v /= len);
        Some(())
    }

    fn run(&self, start: Vec<f64>, sense: f64, opts: &SearchOptions) -> (f64, Vec<f64>) {
        let m = start.len();
        let min_free = if self.zero_sum { 2 } else { 1 };
        let mut a = start;
        let mut pinned = vec![false; m];
        let mut f = self.value(&a);
        let mut eta = opts.initial_step;
        let mut g = vec![0.0; m];
        for _ in 0..opts.max_iter {
            if eta < opts.min_step {
                break;
            }
            self.gradient(&a, &mut g);
            g.iter_mut().zip(&pinned).for_each(|(v, p)| *v = if *p { 0.0 } else { sense * *v });
            if self.zero_sum {
                let free = pinned.iter().filter(|p| !**p).count() as f64;
                let mean = g.iter().sum::<f64>() / free;
                g.iter_mut().zip(&pinned).for_each(|(v, p)| {
                    if !*p {
                        *v -= mean;
                    }
                });
            }
            let radial = dot(&g, &a);
            g.iter_mut().zip(&a).for_each(|(v, x)| *v -= radial * x);
            let len = norm2(&g);
            if !(len > 1e-15) {
                break;
            }

            let mut trial: Vec<f64> = a.iter().zip(&g).map(|(x, d)| x + eta * d / len).collect();
            let mut trial_pinned = pinned.clone();
            let mut ok = self.project(&mut trial, &trial_pinned).is_some();
            while ok && self.clamp {
                let mut flipped = false;
                for j in 0..m {
                    if !trial_pinned[j] && a[j] != 0.0 && trial[j] * a[j] < 0.0 {
                        trial_pinned[j] = true;
                        flipped = true;
                    }
                }
                if !flipped {
                    break;
                }
                ok = trial_pinned.iter().filter(|p| !**p).count() >= min_free
                    && self.project(&mut trial, &trial_pinned).is_some();
            }
            if !ok {
                eta *= 0.5;
                continue;
            }
            let ft = self.value(&trial);
            if sense * ft > sense * f {
                a = trial;
                f = ft;
                pinned = trial_pinned;
            } else {
                eta *= 0.5;
            }
        }
        (f, a)
    }
}

fn minor_sum(u: &[f64], v: &[f64]) -> f64 {
    let n = u.len();
    let mut s = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            s += (u[i] * v[j] - u[j] * v[i]).abs();
        }
    }
    s
}

fn run_pair(start: OrthoPair, sense: f64, opts: &SearchOptions) -> (f64, OrthoPair) {
    let n = start.dim();
    let mut pair = start;
    let mut f = minor_sum(pair.u(), pair.v());
    let mut eta = opts.initial_step;
    let mut gu = vec![0.0; n];
    let mut gv = vec![0.0; n];
    for _ in 0..opts.max_iter {
        if eta < opts.min_step {
            break;
        }
        let (u, v) = (pair.u(), pair.v());
        gu.iter_mut().for_each(|x| *x = 0.0);
        gv.iter_mut().for_each(|x| *x = 0.0);
        for i in 0..n {
            for j in i + 1..n {
                let s = sense * sign(u[i] * v[j] - u[j] * v[i]);
                gu[i] += s * v[j];
                gu[j] -= s * v[i];
                gv[j] += s * u[i];
                gv[i] -= s * u[j];
            }
        }
        // tangent space of the Stiefel manifold: G - X sym(X^T G)
        let s11 = dot(u, &gu);
        let s22 = dot(v, &gv);
        let s12 = 0.5 * (dot(u, &gv) + dot(v, &gu));
        for i in 0..n {
            let (a, b) = (u[i], v[i]);
            gu[i] -= a * s11 + b * s12;
            gv[i] -= a * s12 + b * s22;
        }
        let len = (dot(&gu, &gu) + dot(&gv, &gv)).sqrt();
        if !(len > 1e-15) {
            break;
        }
        let tu: Vec<f64> = u.iter().zip(&gu).map(|(x, d)| x + eta * d / len).collect();
        let tv: Vec<f64> = v.iter().zip(&gv).map(|(x, d)| x + eta * d / len).collect();
        match orthonormal_pair(&tu, &tv) {
            Ok(trial) => {
                let ft = minor_sum(trial.u(), trial.v());
                if sense * ft > sense * f {
                    pair = trial;
                    f = ft;
                } else {
                    eta *= 0.5;
                }
            }
            Err(_) => eta *= 0.5,
        }
    }
    (f, pair)
}

fn check_compatible(objective: Objective, constraint: Constraint) -> Result<()> {
    let ok = matches!(
        (objective, constraint),
        (Objective::L1Norm, Constraint::UnitSphere | Constraint::ZeroSumUnitSphere)
            | (Objective::SimplexShadow, Constraint::ZeroSumUnitSphere)
            | (Objective::PowerSum(_), Constraint::UnitSphere | Constraint::ZeroSumUnitSphere)
            | (Objective::PlanarMinorSum, Constraint::OrthonormalPair)
    );
    if ok {
        Ok(())
    } else {
        Err(Error::IncompatibleObjective {
            objective: objective.name(),
            constraint: constraint.name(),
        })
    }
}

/// Best value of `objective` over `restarts` local searches with default options.
/// Restart `r` draws its starting point from `seed.stream(r)`; the best restart
/// wins, ties going to the lowest index. Results are never certified.
pub fn numeric_search(
    objective: Objective,
    m: usize,
    constraint: Constraint,
    kind: Extremum,
    restarts: usize,
    seed: Seed,
) -> Result<ExtremalResult> {
    numeric_search_with(objective, m, constraint, kind, restarts, seed, &SearchOptions::default())
}

pub fn numeric_search_with(
    objective: Objective,
    m: usize,
    constraint: Constraint,
    kind: Extremum,
    restarts: usize,
    seed: Seed,
    opts: &SearchOptions,
) -> Result<ExtremalResult> {
    check_compatible(objective, constraint)?;
    if restarts == 0 {
        return Err(Error::InvalidArgument("numeric search needs at least one restart".into()));
    }
    let min_m = match (objective, constraint) {
        (Objective::SimplexShadow, _) => 3,
        (_, Constraint::ZeroSumUnitSphere | Constraint::OrthonormalPair) => 2,
        _ => 1,
    };
    crate::closedform::check_min("dimension", min_m, m)?;
    if let Objective::PowerSum(p) = objective {
        if !(p.is_finite() && p >= 1.0) {
            return Err(Error::InvalidOrder(p));
        }
    }
    let sense = match kind {
        Extremum::Max => 1.0,
        Extremum::Min => -1.0,
    };

    let (value, argument) = if constraint == Constraint::OrthonormalPair {
        let runs: Vec<Result<(f64, OrthoPair)>> = (0..restarts)
            .into_par_iter()
            .map(|r| {
                let start = random_pair(&mut seed.stream(r as u64), m)?;
                Ok(run_pair(start, sense, opts))
            })
            .collect();
        let (v, p) = best(runs, sense)?;
        (v, Argument::Pair(p))
    } else {
        let zero_sum = constraint == Constraint::ZeroSumUnitSphere;
        let problem = SphereProblem {
            objective,
            zero_sum,
            clamp: kind == Extremum::Min && matches!(objective, Objective::L1Norm | Objective::SimplexShadow),
            scale: match objective {
                Objective::SimplexShadow => 0.5 * (m as f64).sqrt() / factorial(m - 2),
                _ => 1.0,
            },
        };
        let runs: Vec<Result<(f64, Vec<f64>)>> = (0..restarts)
            .into_par_iter()
            .map(|r| {
                let start = random_direction(&mut seed.stream(r as u64), m, zero_sum)?;
                Ok(problem.run(start.into_coords(), sense, opts))
            })
            .collect();
        let (v, a) = best(runs, sense)?;
        (v, Argument::Direction(normalize(&canonical_form(&a))?))
    };
    Ok(ExtremalResult {
        value,
        argument,
        kind,
        certified: false,
        note: Some(format!("{objective} on {}, {restarts} restarts, seed {seed}", constraint.name())),
    })
}

fn best<T>(runs: Vec<Result<(f64, T)>>, sense: f64) -> Result<(f64, T)> {
    let mut out: Option<(f64, T)> = None;
    for r in runs {
        let (v, x) = r?;
        if out.as_ref().is_none_or(|(bv, _)| sense * v > sense * bv) {
            out = Some((v, x));
        }
    }
    Ok(out.expect("at least one restart"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::{fp_extrema_sphere, l1_max_zero_sum, l1_min_zero_sum, planar_cube_bounds};
    use crate::lpbodies::LpOrder;
    use std::f64::consts::{PI, SQRT_2};

    #[test]
    fn canonical_examples() {
        assert_eq!(canonical_form(&[0.0, -1.0, 0.0]), vec![1.0, 0.0, 0.0]);
        assert_eq!(canonical_form(&[-0.5, 2.0, -1.0]), vec![2.0, -0.5, -1.0]);
        assert_eq!(canonical_form(&[-2.0, 0.5, 1.0]), vec![2.0, -0.5, -1.0]);
        assert_eq!(canonical_form(&[1.0, -1.0]), vec![1.0, -1.0]);
    }

    #[test]
    fn l1_max_m7() {
        let r = numeric_search(Objective::L1Norm, 7, Constraint::ZeroSumUnitSphere, Extremum::Max, 200, Seed(1)).unwrap();
        let exact = l1_max_zero_sum(7).unwrap();
        assert!((r.value - exact.value).abs() <= 1e-6, "{}", r.value);
        assert!(!r.certified);
        let got = r.argument.direction().unwrap().coords().to_vec();
        let want = canonical_form(exact.argument.direction().unwrap().coords());
        for (a, b) in got.iter().zip(&want) {
            assert!((a - b).abs() <= 1e-4, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn l1_min_m3_and_m6() {
        for m in [3, 6] {
            let r = numeric_search(Objective::L1Norm, m, Constraint::ZeroSumUnitSphere, Extremum::Min, 20, Seed(2)).unwrap();
            assert!((r.value - SQRT_2).abs() <= 1e-6, "m={m} {}", r.value);
            let want = canonical_form(l1_min_zero_sum(m).unwrap().argument.direction().unwrap().coords());
            let got = r.argument.direction().unwrap().coords();
            assert!(got.iter().zip(&want).all(|(a, b)| (a - b).abs() <= 1e-4));
        }
    }

    #[test]
    fn planar_max_n4() {
        let r = numeric_search(Objective::PlanarMinorSum, 4, Constraint::OrthonormalPair, Extremum::Max, 50, Seed(3)).unwrap();
        let cot = 1.0 / (PI / 8.0).tan();
        assert!((r.value - cot).abs() <= 1e-5, "{}", r.value);
        assert!(r.value <= planar_cube_bounds(4).unwrap().1.value + 1e-9);
        let lo = numeric_search(Objective::PlanarMinorSum, 4, Constraint::OrthonormalPair, Extremum::Min, 50, Seed(3)).unwrap();
        assert!(lo.value >= 1.0 - 1e-9 && lo.value <= 1.0 + 1e-5, "{}", lo.value);
    }

    #[test]
    fn power_sum() {
        for p in [1.5, 3.0] {
            let (lo, hi) = fp_extrema_sphere(5, LpOrder::new(p).unwrap()).unwrap();
            let rmin = numeric_search(Objective::PowerSum(p), 5, Constraint::UnitSphere, Extremum::Min, 20, Seed(4)).unwrap();
            let rmax = numeric_search(Objective::PowerSum(p), 5, Constraint::UnitSphere, Extremum::Max, 20, Seed(4)).unwrap();
            assert!((rmin.value - lo.value).abs() <= 1e-6, "p={p} {}", rmin.value);
            assert!((rmax.value - hi.value).abs() <= 1e-6, "p={p} {}", rmax.value);
            assert!(rmin.value >= lo.value - 1e-9 && rmax.value <= hi.value + 1e-9);
        }
    }

    #[test]
    fn deterministic_and_validated() {
        let run = || numeric_search(Objective::SimplexShadow, 5, Constraint::ZeroSumUnitSphere, Extremum::Max, 16, Seed(9)).unwrap();
        assert_eq!(run(), run());
        assert!(matches!(
            numeric_search(Objective::PlanarMinorSum, 4, Constraint::UnitSphere, Extremum::Max, 1, Seed(0)),
            Err(Error::IncompatibleObjective { .. })
        ));
        assert!(numeric_search(Objective::L1Norm, 4, Constraint::UnitSphere, Extremum::Max, 0, Seed(0)).is_err());
        assert!(numeric_search(Objective::SimplexShadow, 2, Constraint::ZeroSumUnitSphere, Extremum::Max, 1, Seed(0)).is_err());
    }
}
