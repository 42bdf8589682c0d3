//! Depth, defect, a-invariants and regularity of a bundled group.
//!
//!     cargo run --release --example invariants_report -- extraspecial_plus_32

use modcoh::batch;
use modcoh::completion::DriverConfig;
use modcoh::fixtures;
use modcoh::invariants::conjecture_status;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "d8".into());
    let g = fixtures::group(&name)?;
    let (c, rep) = batch::analyse_group(&g, &DriverConfig::default())?;
    let Some(rep) = rep else {
        println!("{name}: incomplete at N = {}", c.certificate.n);
        return Ok(());
    };
    for l in rep.to_lines() {
        println!("{l}");
    }
    println!("a-invariants {}", rep.a_display());
    println!("regularity conjecture: {}", conjecture_status(&rep));
    Ok(())
}
