//! Hyperplane shadows of the regular simplex, checked against the convex-hull oracle.

use polyshadow::closedform::simplex_hyperplane_shadow;
use polyshadow::linalg::{normalize, random_direction, Seed};
use polyshadow::oracle::{hyperplane_shadow_basis, shadow_volume, VPolytope};

fn main() -> polyshadow::Result<()> {
    let body = VPolytope::simplex(3)?;
    let mut rng = Seed(1).rng();
    let mut dirs = vec![normalize(&[1.0, -1.0, 0.0, 0.0])?];
    for _ in 0..4 {
        dirs.push(random_direction(&mut rng, 4, true)?);
    }
    println!("{:>44}  {:>12}  {:>12}", "direction", "formula", "hull");
    for a in &dirs {
        let basis = hyperplane_shadow_basis(a.coords(), true)?;
        let oracle = shadow_volume(&body, &basis, 1, Seed(0))?;
        println!(
            "{:>44}  {:>12.9}  {:>12.9}",
            format!("{:.3?}", a.coords()),
            simplex_hyperplane_shadow(a)?,
            oracle.value
        );
    }
    Ok(())
}
