//! Verification suites: every closed form against an independent oracle or bound.
//!
//! Within a suite, dimension `n` draws its random inputs from
//! `seed.derive(suite).stream(n)`, and dimensions run in parallel, so a report
//! depends only on the configuration.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::closedform::{
    cauchy_shadow, cube_hyperplane_shadow, cube_planar_shadow, facet_data, factorial, lagrange_sum,
    simplex_gauge_diff_body, simplex_hyperplane_shadow, simplex_width, width_projection_ratio, BodyTag,
};
use crate::error::{Error, Result};
use crate::extremal::{
    canonical_form, fp_extrema_sphere, fp_value, karamata_gap, l1_max_zero_sum, l1_min_zero_sum,
    numeric_search, planar_cube_bounds, simplex_extremal_volumes, simplex_extremal_widths, Constraint,
    ConvexFn, Extremum, MajorizationPair, Objective,
};
use crate::linalg::{random_direction, random_pair, Direction, OrthoPair, Seed};
use crate::lpbodies::{
    facet_support_values, lp_cross_support_p, lp_cube_support_p, lp_simplex_support_p, lp_support_via_facets,
    rademacher_moment, LpOrder, MomentMode,
};
use crate::oracle::{hyperplane_shadow_basis, shadow_area_2d, shadow_volume, VPolytope};
use crate::report::{Case, Inputs, VerificationReport};
use crate::sections::{
    cross_section_polygon, mahler_bound, mahler_chain_check, mahler_product, nazarov_bound,
    shadow_section_duality_check,
};

/// Standard errors allowed between a Monte-Carlo estimate and the exact value.
pub const SIGMAS: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    SimplexHyperplane,
    CubeHyperplane,
    CubePlanar,
    Duality,
    Mahler,
    Nazarov,
    LpReduction,
    Width,
    Extremal,
    Fp,
    All,
}

impl Suite {
    /// Every concrete suite, in report order.
    pub const EACH: [Suite; 10] = [
        Suite::SimplexHyperplane,
        Suite::CubeHyperplane,
        Suite::CubePlanar,
        Suite::Duality,
        Suite::Mahler,
        Suite::Nazarov,
        Suite::LpReduction,
        Suite::Width,
        Suite::Extremal,
        Suite::Fp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::SimplexHyperplane => "simplex-hyperplane",
            Suite::CubeHyperplane => "cube-hyperplane",
            Suite::CubePlanar => "cube-planar",
            Suite::Duality => "duality",
            Suite::Mahler => "mahler",
            Suite::Nazarov => "nazarov",
            Suite::LpReduction => "lp-reduction",
            Suite::Width => "width",
            Suite::Extremal => "extremal",
            Suite::Fp => "fp",
            Suite::All => "all",
        }
    }

    /// Default dimensions and the admissible range.
    fn dims(self) -> ((usize, usize), (usize, usize)) {
        match self {
            Suite::SimplexHyperplane => ((2, 5), (2, 7)),
            Suite::CubeHyperplane => ((2, 5), (2, 7)),
            Suite::CubePlanar => ((2, 8), (2, 50)),
            Suite::Duality => ((2, 8), (2, 50)),
            Suite::Mahler => ((2, 8), (2, 50)),
            Suite::Nazarov => ((3, 12), (3, 50)),
            Suite::LpReduction => ((2, 8), (2, 12)),
            Suite::Width => ((2, 10), (2, 50)),
            Suite::Extremal => ((2, 6), (2, 20)),
            Suite::Fp => ((3, 8), (2, 50)),
            Suite::All => ((2, 12), (2, 50)),
        }
    }

    fn index(self) -> u64 {
        Suite::EACH.iter().position(|s| *s == self).unwrap_or(Suite::EACH.len()) as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::EACH
            .iter()
            .chain(std::iter::once(&Suite::All))
            .find(|x| x.name() == s)
            .copied()
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite `{s}`")))
    }
}

/// Options shared by all suites; `None` picks the suite default.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VerifyConfig {
    pub n: Option<(usize, usize)>,
    pub trials: Option<usize>,
    pub samples: Option<usize>,
    pub restarts: Option<usize>,
    pub seed: Seed,
}

pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_SAMPLES: usize = 20_000;
pub const DEFAULT_RESTARTS: usize = 40;
/// Monte-Carlo cases per dimension are capped at this many trials.
pub const MC_TRIALS: usize = 20;

struct Ctx {
    dims: Vec<usize>,
    trials: usize,
    samples: usize,
    restarts: usize,
    seed: Seed,
}

impl Ctx {
    fn rng(&self, n: usize) -> ChaCha8Rng {
        self.seed.stream(n as u64)
    }

    /// Runs `f` for every dimension in parallel, concatenating in dimension order.
    fn per_dim<F>(&self, f: F) -> Result<Vec<Case>>
    where
        F: Fn(usize, &mut ChaCha8Rng) -> Result<Vec<Case>> + Sync,
    {
        let parts: Vec<Result<Vec<Case>>> = self.dims.par_iter().map(|&n| f(n, &mut self.rng(n))).collect();
        let mut out = Vec::new();
        for p in parts {
            out.extend(p?);
        }
        Ok(out)
    }
}

fn next_seed(rng: &mut ChaCha8Rng) -> Seed {
    Seed(rng.random())
}

fn context(suite: Suite, cfg: &VerifyConfig, strict: bool) -> Result<Option<Ctx>> {
    let (default, (lo_ok, hi_ok)) = suite.dims();
    let (lo, hi) = cfg.n.unwrap_or(default);
    if lo > hi {
        return Err(Error::InvalidArgument(format!("empty dimension range {lo}..{hi}")));
    }
    let (lo, hi) = (lo.max(lo_ok), hi.min(hi_ok));
    if lo > hi {
        if strict {
            return Err(Error::InvalidArgument(format!(
                "suite {suite} supports dimensions {lo_ok}..{hi_ok}"
            )));
        }
        return Ok(None);
    }
    Ok(Some(Ctx {
        dims: (lo..=hi).collect(),
        trials: cfg.trials.unwrap_or(DEFAULT_TRIALS),
        samples: cfg.samples.unwrap_or(DEFAULT_SAMPLES),
        restarts: cfg.restarts.unwrap_or(DEFAULT_RESTARTS),
        seed: cfg.seed.derive(suite.index()),
    }))
}

/// Runs one suite, or all of them for [`Suite::All`].
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let selected: Vec<Suite> = if suite == Suite::All { Suite::EACH.to_vec() } else { vec![suite] };
    let mut parts = Vec::new();
    for s in selected {
        if let Some(ctx) = context(s, cfg, suite != Suite::All)? {
            parts.push((s.name().to_string(), run_one(s, &ctx)?));
        }
    }
    Ok(VerificationReport::from_suites(suite.name(), cfg.seed, parts))
}

fn run_one(suite: Suite, ctx: &Ctx) -> Result<Vec<Case>> {
    match suite {
        Suite::SimplexHyperplane => simplex_hyperplane(ctx),
        Suite::CubeHyperplane => cube_hyperplane(ctx),
        Suite::CubePlanar => cube_planar(ctx),
        Suite::Duality => duality(ctx),
        Suite::Mahler => mahler(ctx),
        Suite::Nazarov => nazarov(ctx),
        Suite::LpReduction => lp_reduction(ctx),
        Suite::Width => width(ctx),
        Suite::Extremal => extremal(ctx),
        Suite::Fp => fp(ctx),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

fn coords(d: &Direction) -> Vec<f64> {
    d.coords().to_vec()
}

/// Closed form against the shadow oracle for one hyperplane direction.
fn hyperplane_case(n: usize, body: &VPolytope, a: &Direction, formula: f64, samples: usize, seed: Seed) -> Result<Case> {
    let basis = hyperplane_shadow_basis(a.coords(), a.is_zero_sum())?;
    let oracle = shadow_volume(body, &basis, samples, seed)?;
    let inputs = Inputs::new().with("n", n).with("direction", coords(a));
    Ok(if oracle.exact {
        Case::two_sided(inputs, formula, oracle.value, 1e-9)
    } else {
        Case::statistical(inputs.with("samples", samples).with("mc_seed", seed.0), formula, oracle.value, oracle.stderr, SIGMAS)
    })
}

fn trials_for(n_exact: bool, ctx: &Ctx) -> usize {
    if n_exact {
        ctx.trials
    } else {
        ctx.trials.min(MC_TRIALS)
    }
}

fn simplex_hyperplane(ctx: &Ctx) -> Result<Vec<Case>> {
    ctx.per_dim(|n, rng| {
        let body = VPolytope::simplex(n)?;
        let mut out = Vec::new();
        for _ in 0..trials_for(n <= 3, ctx) {
            let a = random_direction(rng, n + 1, true)?;
            let seed = next_seed(rng);
            out.push(hyperplane_case(n, &body, &a, simplex_hyperplane_shadow(&a)?, ctx.samples, seed)?);
        }
        Ok(out)
    })
}

fn cube_hyperplane(ctx: &Ctx) -> Result<Vec<Case>> {
    ctx.per_dim(|n, rng| {
        let body = VPolytope::cube(n)?;
        let mut out = Vec::new();
        for _ in 0..trials_for(n <= 3, ctx) {
            let a = random_direction(rng, n, false)?;
            let seed = next_seed(rng);
            let s = cube_hyperplane_shadow(&a);
            out.push(hyperplane_case(n, &body, &a, s, ctx.samples, seed)?);
            let inputs = || Inputs::new().with("n", n).with("direction", coords(&a));
            out.push(Case::lower_bound(inputs().with("check", "shadow >= 1"), s, 1.0, 1e-12));
            out.push(Case::upper_bound(inputs().with("check", "shadow <= sqrt(n)"), s, (n as f64).sqrt(), 1e-12));
        }
        Ok(out)
    })
}

fn pair_inputs(n: usize, pair: &OrthoPair) -> Inputs {
    Inputs::new().with("n", n).with("u", pair.u().to_vec()).with("v", pair.v().to_vec())
}

fn cube_planar(ctx: &Ctx) -> Result<Vec<Case>> {
    ctx.per_dim(|n, rng| {
        let cube = VPolytope::cube(n.min(crate::oracle::MAX_CUBE_DIM))?;
        let mut out = Vec::new();
        let trig = OrthoPair::regular(n)?;
        let cot = 1.0 / (PI / (2.0 * n as f64)).tan();
        out.push(Case::two_sided(
            Inputs::new().with("n", n).with("pair", "trig").with("check", "cot(pi/2n)"),
            cube_planar_shadow(&trig),
            cot,
            1e-9,
        ));
        let coord = OrthoPair::coordinate(n, 0, 1)?;
        out.push(Case::two_sided(
            Inputs::new().with("n", n).with("pair", "e1,e2"),
            cube_planar_shadow(&coord),
            1.0,
            0.0,
        ));
        if n > crate::oracle::MAX_CUBE_DIM {
            return Ok(out);
        }
        for _ in 0..ctx.trials {
            let pair = random_pair(rng, n)?;
            let formula = cube_planar_shadow(&pair);
            out.push(Case::two_sided(pair_inputs(n, &pair), formula, shadow_area_2d(&cube, &pair)?, 1e-9));
            out.push(Case::two_sided(
                pair_inputs(n, &pair).with("check", "lagrange identity"),
                lagrange_sum(&pair),
                1.0,
                1e-12,
            ));
        }
        Ok(out)
    })
}

fn duality(ctx: &Ctx) -> Result<Vec<Case>> {
    ctx.per_dim(|n, rng| {
        let mut out = Vec::new();
        let trig = OrthoPair::regular(n)?;
        out.push(shadow_section_duality_check(&trig)?.case(n).with_input("pair", "trig"));
        for _ in 0..ctx.trials {
            let pair = random_pair(rng, n)?;
            out.push(shadow_section_duality_check(&pair)?.case(n));
        }
        Ok(out)
    })
}

fn mahler(ctx: &Ctx) -> Result<Vec<Case>> {
    ctx.per_dim(|n, rng| {
        let mut out = Vec::new();
        let trig = OrthoPair::regular(n)?;
        if n >= 3 {
            let c = mahler_chain_check(&trig)?;
            out.push(Case::two_sided(
                Inputs::new().with("n", n).with("pair", "trig").with("check", "A*S = n^2 sin^2(pi/2n)"),
                c.product(),
                c.bound_n,
                1e-8,
            ));
        }
        for _ in 0..ctx.trials {
            let pair = random_pair(rng, n)?;
            let section = cross_section_polygon(&pair)?;
            let k = section.vertex_count() / 2;
            out.push(Case::upper_bound(
                pair_inputs(n, &pair).with("k", k).with("check", "mahler <= 4k^2 sin^2(pi/2k)"),
                mahler_product(&section.polygon)?,
                mahler_bound(k),
                1e-9,
            ));
            if n >= 3 {
                out.extend(mahler_chain_check(&pair)?.cases());
            }
        }
        Ok(out)
    })
}

fn nazarov(ctx: &Ctx) -> Result<Vec<Case>> {
    ctx.per_dim(|n, rng| {
        let bound = nazarov_bound(n)?;
        let mut out = vec![Case::two_sided(
            Inputs::new().with("n", n).with("pair", "trig").with("check", "area = bound"),
            cross_section_polygon(&OrthoPair::regular(n)?)?.area(),
            bound,
            1e-6,
        )];
        for _ in 0..ctx.trials {
            let pair = random_pair(rng, n)?;
            out.push(Case::lower_bound(
                pair_inputs(n, &pair).with("check", "area >= bound"),
                cross_section_polygon(&pair)?.area(),
                bound,
                1e-9,
            ));
        }
        Ok(out)
    })
}

const LP_ORDERS: [f64; 4] = [1.0, 1.5, 2.0, 3.0];
const MC_ORDERS: [f64; 3] = [1.0, 1.5, 3.0];

fn lp_reduction(ctx: &Ctx) -> Result<Vec<Case>> {
    ctx.per_dim(|n, rng| {
        let one = LpOrder::new(1.0)?;
        let cube_f = facet_data(BodyTag::Cube, n)?;
        let cross_f = facet_data(BodyTag::Cross, n)?;
        let simp_f = facet_data(BodyTag::SimplexCentered, n)?;
        let cube_h = facet_support_values(&cube_f, &VPolytope::cube(n)?);
        let cross_h = facet_support_values(&cross_f, &VPolytope::cross(n)?);
        let simp_h = facet_support_values(&simp_f, &VPolytope::simplex_centered(n)?);
        let mut out = Vec::new();
        for _ in 0..ctx.trials.min(MC_TRIALS) {
            let a = random_direction(rng, n, false)?;
            let z = random_direction(rng, n + 1, true)?;
            let ia = || Inputs::new().with("n", n).with("direction", coords(&a));
            let iz = || Inputs::new().with("n", n).with("direction", coords(&z));
            out.push(Case::two_sided(
                ia().with("body", "cube").with("p", 1.0),
                lp_cube_support_p(&a, one),
                cube_hyperplane_shadow(&a),
                1e-12,
            ));
            out.push(Case::two_sided(
                ia().with("body", "cross").with("p", 1.0),
                lp_cross_support_p(&a, one, MomentMode::Exact)?,
                cauchy_shadow(&cross_f, &a)?,
                1e-12,
            ));
            out.push(Case::two_sided(
                iz().with("body", "simplex").with("p", 1.0),
                lp_simplex_support_p(&z, one)?,
                simplex_hyperplane_shadow(&z)?,
                1e-12,
            ));
            out.push(Case::two_sided(
                ia().with("body", "cube").with("p", 2.0).with("check", "constant 2"),
                lp_cube_support_p(&a, LpOrder::new(2.0)?),
                2.0,
                1e-12,
            ));
            for pv in LP_ORDERS {
                let p = LpOrder::new(pv)?;
                out.push(Case::two_sided(
                    ia().with("body", "cube").with("p", pv).with("check", "facet sum"),
                    lp_cube_support_p(&a, p),
                    lp_support_via_facets(&cube_f, &cube_h, &a, p)?,
                    1e-10,
                ));
                out.push(Case::two_sided(
                    ia().with("body", "cross").with("p", pv).with("check", "facet sum"),
                    lp_cross_support_p(&a, p, MomentMode::Exact)?,
                    lp_support_via_facets(&cross_f, &cross_h, &a, p)?,
                    1e-10,
                ));
                out.push(Case::two_sided(
                    iz().with("body", "simplex").with("p", pv).with("check", "facet sum"),
                    lp_simplex_support_p(&z, p)?,
                    lp_support_via_facets(&simp_f, &simp_h, &z, p)?,
                    1e-10,
                ));
            }
            for pv in MC_ORDERS {
                let p = LpOrder::new(pv)?;
                let seed = next_seed(rng);
                let exact = rademacher_moment(&a, p, MomentMode::Exact)?;
                let mc = rademacher_moment(&a, p, MomentMode::MonteCarlo { samples: ctx.samples, seed })?;
                out.push(Case::statistical(
                    ia().with("p", pv).with("samples", ctx.samples).with("mc_seed", seed.0).with("check", "rademacher mc"),
                    exact.value,
                    mc.value,
                    mc.stderr,
                    SIGMAS,
                ));
            }
        }
        Ok(out)
    })
}

fn width(ctx: &Ctx) -> Result<Vec<Case>> {
    ctx.per_dim(|n, rng| {
        let nf = n as f64;
        let ratio = (nf + 1.0).sqrt() / factorial(n - 1);
        let mut out = Vec::new();
        let (wlo, whi) = simplex_extremal_widths(n)?;
        let display_min = if n % 2 == 1 {
            2.0 / (nf + 1.0).sqrt()
        } else {
            2.0 * ((nf + 1.0) / (nf * (nf + 2.0))).sqrt()
        };
        out.push(Case::two_sided(Inputs::new().with("n", n).with("check", "min width"), wlo.value, display_min, 1e-10));
        out.push(Case::two_sided(Inputs::new().with("n", n).with("check", "max width"), whi.value, SQRT_2, 1e-10));
        for r in [l1_min_zero_sum(n + 1)?, l1_max_zero_sum(n + 1)?] {
            let a = r.argument.direction().expect("direction");
            out.push(Case::two_sided(
                Inputs::new().with("n", n).with("direction", coords(a)).with("check", "width*gauge = 1"),
                simplex_width(a)? * simplex_gauge_diff_body(a)?,
                1.0,
                1e-10,
            ));
        }
        for _ in 0..ctx.trials {
            let a = random_direction(rng, n + 1, true)?;
            let inputs = || Inputs::new().with("n", n).with("direction", coords(&a));
            out.push(Case::two_sided(
                inputs().with("check", "vol/gauge"),
                width_projection_ratio(&a)?,
                ratio,
                1e-12,
            ));
            out.push(Case::lower_bound(
                inputs().with("check", "width*gauge >= 1"),
                simplex_width(&a)? * simplex_gauge_diff_body(&a)?,
                1.0,
                1e-12,
            ));
        }
        Ok(out)
    })
}

/// L∞ distance after canonicalization.
pub fn canonical_distance(a: &[f64], b: &[f64]) -> f64 {
    canonical_form(a)
        .iter()
        .zip(canonical_form(b))
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn extremal(ctx: &Ctx) -> Result<Vec<Case>> {
    ctx.per_dim(|n, rng| {
        let mut out = Vec::new();
        let (vlo, vhi) = simplex_extremal_volumes(n)?;
        for (exact, kind) in [(vlo, Extremum::Min), (vhi, Extremum::Max)] {
            let found = numeric_search(Objective::SimplexShadow, n + 1, Constraint::ZeroSumUnitSphere, kind, ctx.restarts, next_seed(rng))?;
            let inputs = || Inputs::new().with("n", n).with("kind", kind.to_string()).with("restarts", ctx.restarts);
            out.push(Case::two_sided(inputs().with("check", "numeric value"), found.value, exact.value, 1e-6));
            let sense = if kind == Extremum::Max { 1.0 } else { -1.0 };
            out.push(Case::upper_bound(inputs().with("check", "numeric never beats closed form"), sense * found.value, sense * exact.value, 1e-9));
            out.push(Case::two_sided(
                inputs().with("check", "canonical argument (linf)"),
                canonical_distance(
                    found.argument.direction().expect("direction").coords(),
                    exact.argument.direction().expect("direction").coords(),
                ),
                0.0,
                1e-4,
            ));
        }
        if n >= 3 {
            let (_, upper) = planar_cube_bounds(n)?;
            let found = numeric_search(Objective::PlanarMinorSum, n, Constraint::OrthonormalPair, Extremum::Max, ctx.restarts, next_seed(rng))?;
            let inputs = || Inputs::new().with("n", n).with("restarts", ctx.restarts);
            out.push(Case::two_sided(inputs().with("check", "numeric planar max"), found.value, upper.value, 1e-5));
            out.push(Case::upper_bound(inputs().with("check", "planar max never beaten"), found.value, upper.value, 1e-9));
        }
        Ok(out)
    })
}

const FP_ORDERS: [f64; 4] = [1.2, 1.5, 3.0, 4.0];

fn fp(ctx: &Ctx) -> Result<Vec<Case>> {
    ctx.per_dim(|m, rng| {
        let mut out = Vec::new();
        let samples = ctx.samples;
        for pv in FP_ORDERS {
            let p = LpOrder::new(pv)?;
            let (lo, hi) = fp_extrema_sphere(m, p)?;
            let (mut smin, mut smax) = (f64::INFINITY, f64::NEG_INFINITY);
            for _ in 0..samples {
                let v = fp_value(random_direction(rng, m, false)?.coords(), p);
                smin = smin.min(v);
                smax = smax.max(v);
            }
            let inputs = || Inputs::new().with("m", m).with("p", pv).with("samples", samples);
            out.push(Case::lower_bound(inputs().with("check", "sampled min >= closed min"), smin, lo.value, 1e-9));
            out.push(Case::upper_bound(inputs().with("check", "sampled max <= closed max"), smax, hi.value, 1e-9));
        }
        let mut worst = f64::INFINITY;
        for t in 0..ctx.trials {
            let pair = robin_hood_pair(rng, m)?;
            let f = ConvexFn::AbsPower([2.0, 1.5, 3.0][t % 3]);
            worst = worst.min(karamata_gap(&pair, &f)?);
        }
        out.push(Case::lower_bound(
            Inputs::new().with("m", m).with("pairs", ctx.trials).with("check", "min karamata gap >= 0"),
            worst,
            0.0,
            1e-10,
        ));
        Ok(out)
    })
}

/// A random vector and the result of a few transfers from smaller to larger
/// coordinates, so that the first is majorized by the second.
pub fn robin_hood_pair<R: Rng + ?Sized>(rng: &mut R, m: usize) -> Result<MajorizationPair> {
    let x: Vec<f64> = (0..m).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut y = x.clone();
    for _ in 0..rng.random_range(1..=3) {
        let (mut i, mut j) = (rng.random_range(0..m), rng.random_range(0..m));
        if i == j {
            continue;
        }
        if y[i] < y[j] {
            std::mem::swap(&mut i, &mut j);
        }
        let delta = rng.random_range(0.0..0.5);
        y[i] += delta;
        y[j] -= delta;
    }
    MajorizationPair::new(x, y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(n: (usize, usize)) -> VerifyConfig {
        VerifyConfig {
            n: Some(n),
            trials: Some(10),
            samples: Some(4000),
            restarts: Some(10),
            seed: Seed(5),
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.iter().chain([Suite::All].iter()) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), *s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn every_suite_passes_small() {
        for s in Suite::EACH {
            let r = run_suite(s, &small((2, 4))).unwrap_or_else(|e| panic!("{s}: {e}"));
            assert!(!r.cases.is_empty(), "{s}");
            let bad: Vec<_> = r.cases.iter().filter(|c| !c.pass).collect();
            assert!(r.passed, "{s}: {bad:?}");
        }
    }

    #[test]
    fn deterministic() {
        let a = run_suite(Suite::SimplexHyperplane, &small((3, 4))).unwrap();
        let b = run_suite(Suite::SimplexHyperplane, &small((3, 4))).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn range_validation() {
        assert!(run_suite(Suite::Nazarov, &small((2, 2))).is_err());
        assert!(run_suite(Suite::Duality, &small((5, 3))).is_err());
        let r = run_suite(Suite::All, &small((2, 2))).unwrap();
        assert!(r.summary.iter().all(|s| s.suite != "nazarov"));
    }
}
