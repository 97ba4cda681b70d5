//! Runs every acceptance criterion and prints one PASS/FAIL line for each.
//! `IPOLAR_CRITERIA=1,4,7` restricts the run to a subset.

use ipolar::repro::{run_criterion, CRITERIA};

fn main() {
    let only: Option<Vec<u8>> = std::env::var("IPOLAR_CRITERIA")
        .ok()
        .map(|s| s.split(',').filter_map(|t| t.trim().parse().ok()).collect());
    let mut failed = 0;
    for (id, title) in CRITERIA {
        if only.as_ref().is_some_and(|o| !o.contains(&id)) {
            continue;
        }
        match run_criterion(id) {
            Ok(report) => {
                println!("{report}");
                for line in &report.details {
                    println!("       {line}");
                }
                failed += !report.passed as usize;
            }
            Err(e) => {
                println!("[FAIL] criterion {id:>2}: {title} (error: {e})");
                failed += 1;
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
