//! Restriction of cohomology classes to the maximal elementary abelian
//! subgroups, and the Quillen check that a system is an hsop.
//!
//!     cargo run --release --example restriction -- d8xc2

use modcoh::completion::{drive_to_completion, quillen_hsop_check, DriverConfig};
use modcoh::fixtures;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "d8".into());
    let g = fixtures::group(&name)?;
    println!("{name}: order {}, p-rank {}, centre rank {}", g.order(), g.prank(), g.omega1_centre().rank);
    let c = drive_to_completion(&g, &DriverConfig::default())?.into_complete()?;
    let p = &c.presentation;
    for v in p.restrictions.iter().filter(|v| v.maximal) {
        let t = v.ring();
        println!("V{} (rank {}):", v.id, v.rank);
        for (gen, img) in p.generators.iter().zip(&v.images) {
            println!("  {} ↦ {}", gen.name, t.format(img));
        }
    }
    if let Some(sys) = &c.params {
        let names: Vec<String> = sys.elements.iter().map(|z| p.ring.format(z)).collect();
        println!("parameters [{}] restrict to an hsop everywhere: {}", names.join(", "), quillen_hsop_check(p, &sys.elements));
    }
    Ok(())
}
