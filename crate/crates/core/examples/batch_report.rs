//! Runs every bundled group of order ≤ 32 through the batch driver and
//! prints the δ/e table with any non-monotone a-invariants.
//!
//!     cargo run --release --example batch_report -- 4

use std::fs;

use modcoh::batch::{self, JobConfig};
use modcoh::fixtures::GROUP_FILES;
use modcoh::invariants::{monotonicity_exceptions, DefectTable};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let workers: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(2);
    let dir = std::env::temp_dir().join(format!("modcoh-batch-{}", std::process::id()));
    fs::create_dir_all(&dir)?;
    let mut files = Vec::new();
    for (name, text) in GROUP_FILES {
        if !name.contains("128") && !name.contains("64") {
            let f = dir.join(format!("{name}.grp"));
            fs::write(&f, text)?;
            files.push(f);
        }
    }
    let cfg = JobConfig { max_degree: 24, workers, cache: Some(dir.join("cache")), out: Some(dir.join("out")) };
    let results = batch::run_batch(&files, &cfg)?;
    print!("{}", batch::manifest(&results));
    let reports: Vec<_> = results.iter().filter_map(|r| r.report.clone()).collect();
    println!();
    print!("{}", DefectTable::from_reports(&reports).render());
    let exceptions = monotonicity_exceptions(&reports);
    if !exceptions.is_empty() {
        print!("\n{exceptions}");
    }
    fs::remove_dir_all(&dir)?;
    Ok(())
}
