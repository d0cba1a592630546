//! Planar shadows of the cube: coordinate planes give 1, the trigonometric plane
//! reaches cot(pi/2n).

use std::f64::consts::PI;

use polyshadow::closedform::{cube_planar_shadow, lagrange_sum};
use polyshadow::linalg::{random_pair, OrthoPair, Seed};

fn main() -> polyshadow::Result<()> {
    let mut rng = Seed(2).rng();
    println!(" n  coordinate  random      trig        cot(pi/2n)");
    for n in 2..=10 {
        let coord = cube_planar_shadow(&OrthoPair::coordinate(n, 0, 1)?);
        let random = random_pair(&mut rng, n)?;
        let trig = OrthoPair::regular(n)?;
        assert!((lagrange_sum(&random) - 1.0).abs() < 1e-12);
        println!(
            "{n:>2}  {coord:<10.6}  {:<10.6}  {:<10.6}  {:.6}",
            cube_planar_shadow(&random),
            cube_planar_shadow(&trig),
            1.0 / (PI / (2.0 * n as f64)).tan()
        );
    }
    Ok(())
}
