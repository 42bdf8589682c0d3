//! Dickson invariants of rank s, and their restriction to a hyperplane.
//!
//!     cargo run --example dickson -- 3

use modcoh::cohomring::{dickson, t_ring};
use modcoh::poly::Poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(3);
    let d = dickson(s);
    println!("rank {s}: degrees {:?}", d.degrees());
    for (i, c) in d.polynomials.iter().enumerate() {
        println!("  c_{{{s},{}}} has {} terms", i + 1, c.len());
    }
    if s < 2 {
        return Ok(());
    }
    // restrict along t_s ↦ 0: c_{s,s} dies, the rest become squares
    let small = t_ring(s - 1);
    let mut images: Vec<Poly> = (0..s - 1).map(|i| small.var(i)).collect();
    images.push(Poly::zero());
    let lower = dickson(s - 1);
    for (i, c) in d.polynomials.iter().enumerate() {
        let r = c.substitute(&images);
        let square = lower.polynomials.get(i).is_some_and(|l| l.square() == r);
        println!("  c_{{{s},{}}} on t{s} = 0: {}", i + 1, if r.is_zero() { "0".into() } else if square { format!("c_{{{},{}}}²", s - 1, i + 1) } else { small.format(&r) });
    }
    Ok(())
}
