//! Planar sections of the cross-polytope, polar polygons and Mahler products.
//!
//! For an orthonormal pair `(u, v)` the section `B_1^n ∩ span{u, v}` is, in the
//! `(s, t)` frame, the unit ball of `N(s, t) = Σ_i |s u_i + t v_i|`. `N` is linear
//! between consecutive rays where one term changes sign, so the section is the
//! polygon through the boundary points on those rays. Its polar is the planar
//! shadow of `[-1, 1]^n = 2 Q_n`.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::closedform::cube_planar_shadow;
use crate::error::{Error, Result};
use crate::linalg::OrthoPair;
use crate::oracle::{cross, hausdorff_distance, shadow_polygon_2d, Polygon2, VPolytope};
use crate::report::{Case, Inputs};

/// Angular tolerance for merging coincident breakpoint rays.
pub const ANGLE_TOL: f64 = 1e-12;

/// Rows `(u_i, v_i)` shorter than this contribute nothing.
const ZERO_ROW: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SectionPolygon {
    /// Counterclockwise, in `(s, t)` coordinates of `span{u, v}`.
    pub polygon: Polygon2,
    pub pair: OrthoPair,
    /// Ray angles in `[0, 2π)`, one per vertex.
    pub breakpoints: Vec<f64>,
}

impl SectionPolygon {
    pub fn area(&self) -> f64 {
        self.polygon.area()
    }

    pub fn vertex_count(&self) -> usize {
        self.polygon.len()
    }
}

/// `N(s, t) = Σ_i |s u_i + t v_i|`.
pub fn section_norm(pair: &OrthoPair, s: f64, t: f64) -> f64 {
    pair.u()
        .iter()
        .zip(pair.v())
        .map(|(ui, vi)| (s * ui + t * vi).abs())
        .sum()
}

/// Exact section `B_1^n ∩ span{u, v}` as a polygon.
pub fn cross_section_polygon(pair: &OrthoPair) -> Result<SectionPolygon> {
    crate::closedform::check_min("dimension", 2, pair.dim())?;
    let mut angles: Vec<f64> = Vec::with_capacity(2 * pair.dim());
    for (&ui, &vi) in pair.u().iter().zip(pair.v()) {
        if ui.hypot(vi) <= ZERO_ROW {
            continue;
        }
        // the term vanishes along ±(v_i, -u_i)
        let phi = (-ui).atan2(vi).rem_euclid(TAU);
        angles.push(phi);
        angles.push((phi + PI).rem_euclid(TAU));
    }
    angles.sort_by(f64::total_cmp);
    let mut rays: Vec<f64> = Vec::with_capacity(angles.len());
    for a in angles {
        match rays.last() {
            Some(&last) if a - last <= ANGLE_TOL => {}
            _ => rays.push(a),
        }
    }
    if rays.len() > 1 && rays[0] + TAU - rays[rays.len() - 1] <= ANGLE_TOL {
        rays.pop();
    }
    if rays.len() < 4 {
        return Err(Error::DegenerateSection);
    }
    let vertices = rays
        .iter()
        .map(|&phi| {
            let (s, t) = (phi.cos(), phi.sin());
            let r = section_norm(pair, s, t);
            [s / r, t / r]
        })
        .collect();
    Ok(SectionPolygon {
        polygon: Polygon2::new(vertices),
        pair: pair.clone(),
        breakpoints: rays,
    })
}

/// Shoelace area; degenerate polygons have area zero and the flag set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Area {
    pub value: f64,
    pub degenerate: bool,
}

pub fn polygon_area(p: &Polygon2) -> Area {
    if p.len() < 3 {
        return Area {
            value: 0.0,
            degenerate: true,
        };
    }
    let value = p.area();
    Area {
        value,
        degenerate: !p.convex || value <= 0.0,
    }
}

/// Minimal distance from the origin to the supporting lines of a counterclockwise
/// polygon's edges; negative if the origin lies outside some edge.
fn origin_margin(p: &Polygon2) -> f64 {
    let n = p.len();
    (0..n)
        .map(|i| {
            let a = p.vertices[i];
            let b = p.vertices[(i + 1) % n];
            let len = (b[0] - a[0]).hypot(b[1] - a[1]);
            if len == 0.0 {
                f64::NEG_INFINITY
            } else {
                cross(a, b, [0.0, 0.0]) / len
            }
        })
        .fold(f64::INFINITY, f64::min)
}

/// Polar polygon: one vertex per edge, solving `<y, p_j> = <y, p_{j+1}> = 1`.
pub fn polar_polygon(p: &Polygon2) -> Result<Polygon2> {
    if p.len() < 3 || !(origin_margin(p) > 1e-10) {
        return Err(Error::OriginNotInterior);
    }
    let n = p.len();
    let vertices = (0..n)
        .map(|i| {
            let a = p.vertices[i];
            let b = p.vertices[(i + 1) % n];
            let det = a[0] * b[1] - a[1] * b[0];
            [(b[1] - a[1]) / det, (a[0] - b[0]) / det]
        })
        .collect();
    Ok(Polygon2::new(vertices))
}

/// `vol(P) · vol(P°)`.
pub fn mahler_product(p: &Polygon2) -> Result<f64> {
    let polar = polar_polygon(p)?;
    Ok(p.area() * polar.area())
}

/// Upper bound `4k² sin²(π/2k)` for the Mahler product of a symmetric `2k`-gon.
pub fn mahler_bound(k: usize) -> f64 {
    let k = k as f64;
    4.0 * k * k * (PI / (2.0 * k)).sin().powi(2)
}

/// Lower bound `n² sin³(π/2n) / cos(π/2n)` on planar sections of `B_1^n`, `n >= 3`.
pub fn nazarov_bound(n: usize) -> Result<f64> {
    crate::closedform::check_min("dimension", 3, n)?;
    let x = PI / (2.0 * n as f64);
    let nf = n as f64;
    Ok(nf * nf * x.sin().powi(3) / x.cos())
}

/// `cot(π/2n)`, the largest planar shadow of `Q_n`.
pub fn cot_bound(n: usize) -> f64 {
    1.0 / (PI / (2.0 * n as f64)).tan()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualityCheck {
    pub polar_of_section: Polygon2,
    pub doubled_shadow: Polygon2,
    pub hausdorff: f64,
    pub diameter: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl DualityCheck {
    pub fn case(&self, n: usize) -> Case {
        Case::two_sided(
            Inputs::new().with("n", n).with("check", "polar(section) vs 2 shadow"),
            self.hausdorff,
            0.0,
            self.tolerance,
        )
    }
}

/// Compares the polar of `B_1^n ∩ H` with `2 Proj_H Q_n`, both in the `(s, t)`
/// frame of `pair`, by Hausdorff distance.
pub fn shadow_section_duality_check(pair: &OrthoPair) -> Result<DualityCheck> {
    let section = cross_section_polygon(pair)?;
    let polar = polar_polygon(&section.polygon)?;
    let shadow = shadow_polygon_2d(&VPolytope::cube(pair.dim())?, pair)?.scaled(2.0);
    let hausdorff = hausdorff_distance(&polar, &shadow);
    let diameter = polar.diameter().max(shadow.diameter());
    let tolerance = 1e-8 * (1.0 + diameter);
    Ok(DualityCheck {
        pass: hausdorff <= tolerance,
        polar_of_section: polar,
        doubled_shadow: shadow,
        hausdorff,
        diameter,
        tolerance,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChainCheck {
    pub n: usize,
    /// Half the vertex count of the section.
    pub k: usize,
    pub section_area: f64,
    pub shadow_area: f64,
    /// `k² sin²(π/2k)`
    pub bound_k: f64,
    /// `n² sin²(π/2n)`
    pub bound_n: f64,
    pub cot: f64,
    pub pass: bool,
}

impl ChainCheck {
    pub fn product(&self) -> f64 {
        self.section_area * self.shadow_area
    }

    pub fn cases(&self) -> Vec<Case> {
        let base = || Inputs::new().with("n", self.n).with("k", self.k);
        vec![
            Case::upper_bound(base().with("check", "A*S <= k^2 sin^2(pi/2k)"), self.product(), self.bound_k, CHAIN_SLACK),
            Case::upper_bound(base().with("check", "k^2 sin^2(pi/2k) <= n^2 sin^2(pi/2n)"), self.bound_k, self.bound_n, CHAIN_SLACK),
            Case::upper_bound(base().with("check", "S <= cot(pi/2n)"), self.shadow_area, self.cot, CHAIN_SLACK),
        ]
    }
}

pub const CHAIN_SLACK: f64 = 1e-9;

/// The chain `A·S <= k² sin²(π/2k) <= n² sin²(π/2n)` and `S <= cot(π/2n)`, where
/// `A` is the section area and `S` the planar cube shadow.
pub fn mahler_chain_check(pair: &OrthoPair) -> Result<ChainCheck> {
    let n = pair.dim();
    let section = cross_section_polygon(pair)?;
    let k = section.vertex_count() / 2;
    let section_area = section.area();
    let shadow_area = cube_planar_shadow(pair);
    let bound_k = mahler_bound(k) / 4.0;
    let bound_n = mahler_bound(n) / 4.0;
    let cot = cot_bound(n);
    let pass = section_area * shadow_area <= bound_k + CHAIN_SLACK
        && bound_k <= bound_n + CHAIN_SLACK
        && shadow_area <= cot + CHAIN_SLACK;
    Ok(ChainCheck {
        n,
        k,
        section_area,
        shadow_area,
        bound_k,
        bound_n,
        cot,
        pass,
    })
}
