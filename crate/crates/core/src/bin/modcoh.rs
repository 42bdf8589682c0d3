use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use modcoh::batch::{self, JobConfig, Status, CACHE_ENV};
use modcoh::group::Group;
use modcoh::invariants::{monotonicity_exceptions, InvariantReport};
use modcoh::resolution::ResolutionCache;

#[derive(Parser)]
#[command(name = "modcoh", version, about = "Mod-2 cohomology rings of finite 2-groups")]
struct Cli {
    /// Highest truncation degree to try.
    #[arg(long, global = true, default_value_t = 24, value_parser = clap::value_parser!(u64).range(1..))]
    max_degree: u64,
    /// Groups processed concurrently.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,
    /// Resolution cache directory.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache: Option<PathBuf>,
    /// Output directory for result files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Table,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Compute cohomology rings of group files (or directories of them).
    Compute { paths: Vec<PathBuf> },
    /// Tabulate stored results: CSV rows or the δ/e distribution.
    Report { paths: Vec<PathBuf> },
    /// Re-verify stored result files.
    Check { files: Vec<PathBuf> },
    /// Construct parameters for stored presentations.
    Params { files: Vec<PathBuf> },
    /// Invariants of group files (computed) or stored results.
    Invariants { paths: Vec<PathBuf> },
}

fn print_reports(reports: &[InvariantReport], format: Format) {
    match format {
        Format::Csv => {
            println!("{}", InvariantReport::CSV_HEADER);
            for r in reports {
                println!("{}", r.csv_row());
            }
        }
        Format::Table => {
            println!("{:<32} {:>5} {:>3} {:>5} {:>2} {:>2} {:>3}  a-invariants", "group", "order", "dim", "depth", "δ", "e", "reg");
            for r in reports {
                println!(
                    "{:<32} {:>5} {:>3} {:>5} {:>2} {:>2} {:>3}  {}",
                    r.group_name, r.order, r.dim, r.depth, r.delta, r.excess, r.regularity, r.a_display()
                );
            }
        }
        Format::Text => {
            for r in reports {
                println!("{}", r.group_name);
                for l in r.to_lines() {
                    println!("  {l}");
                }
            }
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let config = JobConfig {
        max_degree: cli.max_degree as usize,
        workers: cli.workers as usize,
        cache: cli.cache.clone(),
        out: cli.out.clone(),
    };
    match cli.command {
        Command::Compute { paths } => {
            let files = batch::group_files(&paths)?;
            let results = batch::run_batch(&files, &config)?;
            let reports: Vec<InvariantReport> = results.iter().filter_map(|r| r.report.clone()).collect();
            match cli.format {
                Format::Text => {
                    for r in &results {
                        println!("{}: {} ({})", r.stem, r.status.as_str(), r.message);
                        if let Some(c) = &r.completion {
                            println!("  {}", c.presentation.summary());
                        }
                    }
                }
                f => print_reports(&reports, f),
            }
            Ok(results.iter().all(|r| r.status == Status::Complete))
        }
        Command::Report { paths } => {
            let files = batch::result_files(&paths)?;
            let (table, reports, skipped) = batch::defect_table(&files);
            match cli.format {
                Format::Csv => print_reports(&reports, Format::Csv),
                _ => {
                    print!("{}", table.render());
                    let exceptions = monotonicity_exceptions(&reports);
                    if !exceptions.is_empty() {
                        println!("\nnot weakly increasing:");
                        print!("{exceptions}");
                    }
                }
            }
            for (f, why) in &skipped {
                eprintln!("skipped {}: {why}", f.display());
            }
            Ok(true)
        }
        Command::Check { files } => {
            let cache = config.cache.as_ref().map(ResolutionCache::new);
            let mut all = true;
            for f in batch::result_files(&files)? {
                let text = std::fs::read_to_string(&f).with_context(|| format!("reading {}", f.display()))?;
                match batch::check_stored(&text, cache.as_ref())? {
                    Ok(()) => println!("{}: pass", f.display()),
                    Err(why) => {
                        all = false;
                        println!("{}: fail: {why}", f.display());
                    }
                }
            }
            Ok(all)
        }
        Command::Params { files } => {
            for f in batch::result_files(&files)? {
                let stored = batch::load_stored(&f)?;
                let sys = batch::params_for_stored(&stored, true)?;
                let ring = stored.completion.presentation.graded_ring()?;
                println!("{}", stored.completion.presentation.group_name);
                for l in sys.to_lines(&ring) {
                    println!("  {l}");
                }
            }
            Ok(true)
        }
        Command::Invariants { paths } => {
            let mut reports = Vec::new();
            let mut ok = true;
            for f in batch::group_files(&paths)? {
                if f.extension().is_some_and(|e| e == batch::RESULT_EXT) {
                    match batch::load_stored(&f)?.report {
                        Some(r) => reports.push(r),
                        None => {
                            ok = false;
                            eprintln!("{}: no invariants recorded", f.display());
                        }
                    }
                } else {
                    let g = Group::load(&f)?;
                    let cfg = modcoh::completion::DriverConfig {
                        max_degree: config.max_degree,
                        cache: config.cache.clone(),
                        ..Default::default()
                    };
                    match batch::analyse_group(&g, &cfg)? {
                        (_, Some(r)) => reports.push(r),
                        (c, None) => {
                            ok = false;
                            eprintln!("{}: incomplete at N = {}", f.display(), c.certificate.n);
                        }
                    }
                }
            }
            print_reports(&reports, cli.format);
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
