//! Filter-regular parameters of a completed ring: construction, divisor
//! improvement, annihilator tops and type.
//!
//!     cargo run --release --example parameters -- d8xc2

use modcoh::completion::{drive_to_completion, DriverConfig};
use modcoh::fixtures;
use modcoh::params::{construct_parameters, existence_degrees, factor_improve};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "d8".into());
    let g = fixtures::group(&name)?;
    let c = drive_to_completion(&g, &DriverConfig::default())?.into_complete()?;
    let p = &c.presentation;
    let ring = p.graded_ring()?;

    let sys = construct_parameters(p, &ring)?;
    println!("constructed:");
    for l in sys.to_lines(&ring) {
        println!("  {l}");
    }
    let better = factor_improve(&ring, &sys)?;
    println!("after divisor improvement:");
    for l in better.to_lines(&ring) {
        println!("  {l}");
    }
    for k in 0..=better.len() {
        let degs = existence_degrees(&ring, &better.elements[..k])?;
        println!("  existence degrees after a prefix of length {k}: {degs:?}");
    }
    Ok(())
}
