//! Recompute every built-in reference table and report mismatches.

use padic_limits::cli::tables;

fn main() {
    let mut failed = 0;
    for outcome in tables::run_all() {
        let status = if outcome.passed() { "ok" } else { "MISMATCH" };
        println!("{:<14} {status}", outcome.id);
        for m in &outcome.mismatches {
            println!("    {} / {}: expected {}, computed {}", m.row, m.column, m.expected, m.computed);
        }
        if let Err(e) = &outcome.computed {
            println!("    error: {e}");
        }
        failed += usize::from(!outcome.passed());
    }
    std::process::exit(i32::from(failed > 0));
}
