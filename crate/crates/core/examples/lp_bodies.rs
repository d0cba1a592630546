//! Support functions of L_p projection bodies: closed forms against the facet sum.

use polyshadow::closedform::{facet_data, BodyTag};
use polyshadow::linalg::{random_direction, Seed};
use polyshadow::lpbodies::{
    facet_support_values, lp_cross_support_p, lp_cube_support_p, lp_support_via_facets, LpOrder, MomentMode,
};
use polyshadow::oracle::VPolytope;

fn main() -> polyshadow::Result<()> {
    let n = 5;
    let a = random_direction(&mut Seed(3).rng(), n, false)?;
    let cube = facet_data(BodyTag::Cube, n)?;
    let cube_h = facet_support_values(&cube, &VPolytope::cube(n)?);
    let cross = facet_data(BodyTag::Cross, n)?;
    let cross_h = facet_support_values(&cross, &VPolytope::cross(n)?);
    println!("   p  cube        facets      cross       facets      cross (MC)");
    for p in [1.0, 1.5, 2.0, 3.0, 4.0] {
        let q = LpOrder::new(p)?;
        let mc = lp_cross_support_p(&a, q, MomentMode::MonteCarlo { samples: 100_000, seed: Seed(4) })?;
        println!(
            "{p:>4}  {:<10.7}  {:<10.7}  {:<10.7}  {:<10.7}  {mc:.4}",
            lp_cube_support_p(&a, q),
            lp_support_via_facets(&cube, &cube_h, &a, q)?,
            lp_cross_support_p(&a, q, MomentMode::Exact)?,
            lp_support_via_facets(&cross, &cross_h, &a, q)?,
        );
    }
    Ok(())
}
