//! Drives a bundled group to a completion certificate.
//!
//!     cargo run --release --example completion -- d8xc2 12

use std::time::Instant;

use modcoh::completion::{drive_to_completion, DriverConfig};
use modcoh::fixtures;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    env_logger::init();
    let mut args = std::env::args().skip(1);
    let name = args.next().unwrap_or_else(|| "d8".into());
    let max_degree: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(12);

    let g = fixtures::group(&name)?;
    let start = Instant::now();
    let c = drive_to_completion(&g, &DriverConfig { max_degree, ..Default::default() })?;
    println!("{}", c.presentation.summary());
    for line in c.certificate.to_lines() {
        println!("  {line}");
    }
    println!("elapsed {:.2?}", start.elapsed());
    Ok(())
}
