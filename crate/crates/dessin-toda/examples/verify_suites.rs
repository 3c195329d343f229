//! Run verification suites from code, the same way `dessin-toda verify` does.

use dessin_toda::verify::{run_suite, Orders, Suite};

fn main() {
    let orders = Orders { weight: 5, lambda_order: 6, eps_order: 4, max_parts: 5 };
    for s in [Suite::Oracles, Suite::Toda, Suite::Barnes] {
        let (rep, timings) = run_suite(s, &orders).unwrap();
        println!("{} {}", if rep.passed() { "PASS" } else { "FAIL" }, s);
        for c in &rep.checks {
            println!("  {} {}", if c.passed { "ok  " } else { "FAIL" }, c.name);
        }
        let total: f64 = timings.iter().map(|t| t.1.as_secs_f64()).sum();
        println!("  ({:.2}s)", total);
    }
}
