//! Cross-polytope sections through the trigonometric plane: Nazarov's bound and the
//! Mahler chain are attained.

use polyshadow::linalg::OrthoPair;
use polyshadow::sections::{cross_section_polygon, mahler_chain_check, nazarov_bound, shadow_section_duality_check};

fn main() -> polyshadow::Result<()> {
    println!(" n  area        nazarov     A*S         bound       hausdorff");
    for n in 3..=10 {
        let pair = OrthoPair::regular(n)?;
        let section = cross_section_polygon(&pair)?;
        let chain = mahler_chain_check(&pair)?;
        let duality = shadow_section_duality_check(&pair)?;
        println!(
            "{n:>2}  {:<10.7}  {:<10.7}  {:<10.7}  {:<10.7}  {:.1e}",
            section.area(),
            nazarov_bound(n)?,
            chain.product(),
            chain.bound_n,
            duality.hausdorff
        );
    }
    Ok(())
}
