//! Generators and relations of H*(G; F₂) through a fixed degree, with the
//! restrictions to elementary abelian subgroups above the centre.
//!
//!     cargo run --release --example presentation -- d8xc2 6

use modcoh::cohomring::CohomologyBuilder;
use modcoh::fixtures;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "q8".into());
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(6);

    let g = fixtures::group(&name)?;
    let mut b = CohomologyBuilder::new(&g);
    b.extend_to(n)?;
    let p = b.presentation();
    println!("{}", p.summary());
    println!("ranks {:?}", p.ranks);
    for gen in &p.generators {
        println!("  generator {} in degree {}", gen.name, gen.degree);
    }
    for r in &p.relations {
        println!("  relation {}", p.ring.format(r));
    }
    for v in &p.restrictions {
        let t = v.ring();
        let images: Vec<String> = v.images.iter().map(|i| t.format(i)).collect();
        let tag = if v.maximal { " (maximal)" } else { "" };
        println!("  restriction to V{} of rank {}{tag}: {}", v.id, v.rank, images.join(", "));
    }
    Ok(())
}
