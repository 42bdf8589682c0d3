//! Minimal resolution ranks of a bundled group.
//!
//!     cargo run --release --example minimal_resolution -- d8 6

use std::time::Instant;

use modcoh::fixtures;
use modcoh::resolution::Resolution;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "d8".into());
    let degree: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(6);

    let g = fixtures::group(&name)?;
    let mut r = Resolution::for_group(&g);
    let start = Instant::now();
    for n in 1..=degree {
        r.extend(n)?;
        println!("b_{n:<2} = {:>4}   ({:.2?})", r.rank(n), start.elapsed());
    }
    Ok(())
}
