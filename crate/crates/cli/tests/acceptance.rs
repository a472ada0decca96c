//! Prints one PASS/FAIL line per acceptance criterion, across all tiers.
//! Runs without the libtest harness so the lines are never captured.

use std::time::Instant;

use oddpts_cli::reproduce::CHECKS;

fn main() {
    let mut failed = Vec::new();
    for def in CHECKS.iter() {
        let t = Instant::now();
        let (tag, msg) = match (def.run)() {
            Ok(msg) => ("PASS", msg),
            Err(msg) => {
                failed.push(def.id);
                ("FAIL", msg)
            }
        };
        println!("{tag} [{}] {} ({:?}, {:.1?}): {msg}", def.id, def.name, def.tier, t.elapsed());
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", CHECKS.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
