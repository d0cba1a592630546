//! Rediscovers the extremal simplex shadows by projected-gradient search with restarts.

use polyshadow::extremal::{numeric_search, simplex_extremal_volumes, Constraint, Extremum, Objective};
use polyshadow::linalg::Seed;

fn main() -> polyshadow::Result<()> {
    for n in 2..=7 {
        let (vmin, vmax) = simplex_extremal_volumes(n)?;
        let lo = numeric_search(Objective::SimplexShadow, n + 1, Constraint::ZeroSumUnitSphere, Extremum::Min, 100, Seed(n as u64))?;
        let hi = numeric_search(Objective::SimplexShadow, n + 1, Constraint::ZeroSumUnitSphere, Extremum::Max, 100, Seed(n as u64))?;
        println!(
            "n={n}  min {:.9} (search {:.9})  max {:.9} (search {:.9})",
            vmin.value, lo.value, vmax.value, hi.value
        );
        println!("      argmax {:.4?}", hi.argument.direction().map(|d| d.coords()).unwrap_or(&[]));
    }
    Ok(())
}
