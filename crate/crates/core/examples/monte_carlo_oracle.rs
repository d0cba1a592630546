//! The Monte-Carlo shadow oracle in dimension five, with its standard error.

use polyshadow::closedform::{cube_hyperplane_shadow, simplex_hyperplane_shadow};
use polyshadow::linalg::{random_direction, Seed};
use polyshadow::oracle::{hyperplane_shadow_basis, shadow_volume, VPolytope};

fn main() -> polyshadow::Result<()> {
    let n = 5;
    let mut rng = Seed(5).rng();
    let simplex = VPolytope::simplex(n)?;
    let cube = VPolytope::cube(n)?;
    for samples in [10_000, 100_000, 400_000] {
        let a = random_direction(&mut rng, n + 1, true)?;
        let est = shadow_volume(&simplex, &hyperplane_shadow_basis(a.coords(), true)?, samples, Seed(6))?;
        let exact = simplex_hyperplane_shadow(&a)?;
        println!("simplex  samples {samples:>6}  exact {exact:.6}  mc {:.6} +- {:.6}", est.value, est.stderr);

        let b = random_direction(&mut rng, n, false)?;
        let est = shadow_volume(&cube, &hyperplane_shadow_basis(b.coords(), false)?, samples, Seed(7))?;
        println!("cube     samples {samples:>6}  exact {:.6}  mc {:.6} +- {:.6}", cube_hyperplane_shadow(&b), est.value, est.stderr);
    }
    Ok(())
}
